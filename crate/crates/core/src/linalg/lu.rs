//! Complex LU factorization with partial pivoting.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;

/// Packed LU factors of a square complex matrix, `P·A = L·U`.
///
/// `L` (unit lower triangular) and `U` share the storage of `lu`; `pivots[k]`
/// is the row swapped into position `k` at elimination step `k`. A pivot of
/// magnitude ≤ `n·ε·‖A‖_∞` stops the factorization and records the step in
/// `singular_pivot`; callers treat such a shift as exactly singular.
#[derive(Debug, Clone)]
pub struct LuFactors<R: Real> {
    lu: CMatrix<R>,
    pivots: Vec<usize>,
    singular_pivot: Option<usize>,
    norm_inf: R,
}

impl<R: Real> LuFactors<R> {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn singular_pivot(&self) -> Option<usize> {
        self.singular_pivot
    }

    pub fn is_singular(&self) -> bool {
        self.singular_pivot.is_some()
    }

    /// Unit lower-triangular factor, materialized.
    pub fn lower(&self) -> CMatrix<R> {
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(R::one(), R::zero())
            } else if i > j {
                self.lu[(i, j)]
            } else {
                Complex::new(R::zero(), R::zero())
            }
        })
    }

    /// Upper-triangular factor, materialized.
    pub fn upper(&self) -> CMatrix<R> {
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| {
            if i <= j {
                self.lu[(i, j)]
            } else {
                Complex::new(R::zero(), R::zero())
            }
        })
    }

    /// Apply the recorded row swaps to a copy of `m` (computes `P·m`).
    pub fn permute_rows(&self, m: &CMatrix<R>) -> CMatrix<R> {
        let mut out = m.clone();
        for (k, &p) in self.pivots.iter().enumerate() {
            out.swap_rows(k, p);
        }
        out
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        if let Some(pivot) = self.singular_pivot {
            return Err(Error::SingularMatrix { pivot });
        }
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            x.swap(k, p);
        }
        // Ly = Pb (unit diagonal), then Ux = y.
        for i in 1..n {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for j in 0..i {
                acc = acc - row[j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - row[j] * x[j];
            }
            x[i] = acc / row[i];
        }
        Ok(x)
    }

    /// Solve `Aᴴ x = b` reusing the same factorization
    /// (`Aᴴ = Uᴴ Lᴴ P`, so: forward with `Uᴴ`, back with `Lᴴ`, then `Pᵀ`).
    pub fn solve_adjoint(&self, b: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        if let Some(pivot) = self.singular_pivot {
            return Err(Error::SingularMatrix { pivot });
        }
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        // Uᴴ w = b: Uᴴ is lower triangular with diagonal conj(U_ii).
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc = acc - self.lu[(j, i)].conj() * x[j];
            }
            x[i] = acc / self.lu[(i, i)].conj();
        }
        // Lᴴ v = w: Lᴴ is unit upper triangular.
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - self.lu[(j, i)].conj() * x[j];
            }
            x[i] = acc;
        }
        // x = Pᵀ v: undo the swaps in reverse order.
        for (k, &p) in self.pivots.iter().enumerate().rev() {
            x.swap(k, p);
        }
        Ok(x)
    }
}

/// Factor `P·A = L·U` with partial pivoting.
pub fn lu_decompose<R: Real>(a: &CMatrix<R>) -> Result<LuFactors<R>> {
    if !a.is_square() {
        return Err(Error::invalid("LU requires a square matrix"));
    }
    if !a.is_finite() {
        return Err(Error::invalid("LU requires finite entries"));
    }
    let n = a.rows();
    let norm_inf = a.norm_inf();
    let threshold = R::of_usize(n.max(1)) * R::epsilon() * norm_inf;
    let mut lu = a.clone();
    let mut pivots = vec![0usize; n];
    let mut singular_pivot = None;

    'outer: for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let mag = lu[(i, k)].norm();
            if mag > best {
                best = mag;
                p = i;
            }
        }
        pivots[k] = p;
        lu.swap_rows(k, p);
        if best <= threshold {
            singular_pivot = Some(k);
            break 'outer;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let mult = lu[(i, k)] / pivot;
            lu[(i, k)] = mult;
            let (row_k, row_i) = lu.two_rows_mut(k, i);
            for j in k + 1..n {
                row_i[j] = row_i[j] - mult * row_k[j];
            }
        }
    }
    pivots.truncate(if let Some(k) = singular_pivot { k + 1 } else { n });

    Ok(LuFactors {
        lu,
        pivots,
        singular_pivot,
        norm_inf,
    })
}

impl<R: Real> LuFactors<R> {
    pub fn norm_inf(&self) -> R {
        self.norm_inf
    }
}
