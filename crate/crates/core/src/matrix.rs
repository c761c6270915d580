//! Dense row-major complex matrix used by the linear-algebra kernels.

use num_complex::Complex;

use crate::scalar::Real;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(R::zero(), R::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(R::one(), R::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Complex<R>>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex<R>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex<R>] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Borrow two distinct rows mutably (used by pivoting and rotations).
    pub fn two_rows_mut(&mut self, i: usize, k: usize) -> (&mut [Complex<R>], &mut [Complex<R>]) {
        assert!(i != k);
        let (lo, hi) = (i.min(k), i.max(k));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        let row_lo = &mut head[lo * self.cols..(lo + 1) * self.cols];
        let row_hi = &mut tail[..self.cols];
        if i < k {
            (row_lo, row_hi)
        } else {
            (row_hi, row_lo)
        }
    }

    pub fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        let (a, b) = self.two_rows_mut(i, k);
        a.swap_with_slice(b);
    }

    pub fn mul_vec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex::new(R::zero(), R::zero());
                for (a, x) in self.row(i).iter().zip(v) {
                    acc = acc + a * x;
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + a * s;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: Complex<R>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self − z·I`, the shifted matrix at the heart of every resolvent query.
    pub fn shifted(&self, z: Complex<R>) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = m[(i, i)] - z;
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> R {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(R::zero(), |acc, z| acc + z.norm())
            })
            .fold(R::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn norm_frobenius(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn trace(&self) -> Complex<R> {
        assert!(self.is_square());
        (0..self.rows).fold(Complex::new(R::zero(), R::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn data(&self) -> &[Complex<R>] {
        &self.data
    }
}

impl<R: Real> std::ops::Index<(usize, usize)> for CMatrix<R> {
    type Output = Complex<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> std::ops::IndexMut<(usize, usize)> for CMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        &mut self.data[i * self.cols + j]
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<R: Real>(v: &[Complex<R>]) -> R {
    v.iter()
        .fold(R::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Conjugated dot product `aᴴ·b`.
pub fn vec_dot<R: Real>(a: &[Complex<R>], b: &[Complex<R>]) -> Complex<R> {
    a.iter()
        .zip(b)
        .fold(Complex::new(R::zero(), R::zero()), |acc, (x, y)| {
            acc + x.conj() * y
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn mul_vec_identity() {
        let id = CMatrix::<f64>::identity(3);
        let v = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        assert_eq!(id.mul_vec(&v), v);
    }

    #[test]
    fn shifted_subtracts_diagonal() {
        let m = CMatrix::<f64>::identity(2).scale(c(3.0, 0.0));
        let s = m.shifted(c(1.0, 1.0));
        assert_eq!(s[(0, 0)], c(2.0, -1.0));
        assert_eq!(s[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn conj_transpose_involution() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 0.5), c(-2.0, 0.0)],
        ]);
        assert_eq!(m.conj_transpose().conj_transpose(), m);
        assert_eq!(m.conj_transpose()[(1, 0)], c(3.0, 1.0));
    }

    #[test]
    fn norms() {
        let m = CMatrix::from_rows(&[vec![c(3.0, 4.0), c(0.0, 0.0)]]);
        assert!((m.norm_inf() - 5.0).abs() < 1e-15);
        assert!((m.norm_frobenius() - 5.0).abs() < 1e-15);
    }
}
