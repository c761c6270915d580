//! Dense non-Hermitian complex eigenvalues: balancing, Householder
//! Hessenberg reduction, and single-shift QR iteration with Wilkinson
//! shifts. Iteration budget is `30·n` for the whole matrix; exhausting it
//! reports the index of the block that failed to deflate.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;

const MAX_SWEEPS_PER_N: usize = 30;
const EXCEPTIONAL_EVERY: usize = 10;

/// Eigenvalues of a complex matrix, in a canonical deterministic order
/// (ascending modulus, ties by real then imaginary part).
#[derive(Debug, Clone)]
pub struct EigenDecomposition<R: Real> {
    eigenvalues: Vec<Complex<R>>,
}

impl<R: Real> EigenDecomposition<R> {
    pub fn eigenvalues(&self) -> &[Complex<R>] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Backward errors `σ_min(A − λI)/‖A‖₂`, computed on demand.
    pub fn backward_errors(&self, a: &CMatrix<R>) -> Vec<R> {
        let scale = super::sigma::matrix_two_norm(a);
        self.eigenvalues
            .iter()
            .map(|&lambda| {
                let sigma = super::sigma::smallest_singular_value(&a.shifted(lambda));
                if scale > R::zero() {
                    sigma / scale
                } else {
                    sigma
                }
            })
            .collect()
    }
}

/// All eigenvalues of a square complex matrix.
pub fn eigenvalues<R: Real>(a: &CMatrix<R>) -> Result<EigenDecomposition<R>> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::invalid("eigenvalues require a nonempty square matrix"));
    }
    if !a.is_finite() {
        return Err(Error::invalid("eigenvalues require finite entries"));
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let mut eigs = qr_hessenberg(&mut h)?;
    eigs.sort_by(|x, y| {
        let mx = x.norm();
        let my = y.norm();
        mx.partial_cmp(&my)
            .unwrap()
            .then(x.re.partial_cmp(&y.re).unwrap())
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
    Ok(EigenDecomposition { eigenvalues: eigs })
}

/// Parlett–Reinsch balancing: diagonal similarity by powers of two so row
/// and column 1-norms roughly match. The oscillator matrix mixes entries of
/// order `N⁴/L²` with entries of order `|c|L²`; balancing protects the small
/// eigenvalues from that disparity.
fn balance<R: Real>(a: &mut CMatrix<R>) {
    let n = a.rows();
    let radix = R::cst(2.0);
    let b2 = radix * radix;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut col = R::zero();
            let mut row = R::zero();
            for j in 0..n {
                if j != i {
                    col += a[(j, i)].norm();
                    row += a[(i, j)].norm();
                }
            }
            if col.is_zero() || row.is_zero() {
                continue;
            }
            let s = col + row;
            let mut c = col;
            let mut f = R::one();
            let mut g = row / radix;
            while c < g {
                f *= radix;
                c *= b2;
            }
            g = row * radix;
            while c >= g {
                f /= radix;
                c /= b2;
            }
            if (c + row) / f < R::cst(0.95) * s {
                converged = false;
                let inv = R::one() / f;
                for j in 0..n {
                    let v = a[(i, j)];
                    a[(i, j)] = Complex::new(v.re * inv, v.im * inv);
                }
                for j in 0..n {
                    let v = a[(j, i)];
                    a[(j, i)] = Complex::new(v.re * f, v.im * f);
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place reduction to upper Hessenberg form by complex Householder
/// reflectors.
fn hessenberg<R: Real>(a: &mut CMatrix<R>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let zero = Complex::new(R::zero(), R::zero());
    for k in 0..n - 2 {
        let mut xnorm_sqr = R::zero();
        for i in k + 1..n {
            xnorm_sqr += a[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm.is_zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let alpha = if x0.norm().is_zero() {
            Complex::new(-xnorm, R::zero())
        } else {
            -(x0 / x0.norm()) * xnorm
        };
        // v = x − α·e1; this choice makes vᴴx real, so P = I − β vvᴴ is the
        // Hermitian unitary reflector with Px = α·e1.
        let mut v: Vec<Complex<R>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm_sqr = v.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr());
        if vnorm_sqr.is_zero() {
            continue;
        }
        let beta = R::cst(2.0) / vnorm_sqr;

        // Left: rows k+1..n, columns k..n.
        for j in k..n {
            let mut dot = zero;
            for (off, vi) in v.iter().enumerate() {
                dot = dot + vi.conj() * a[(k + 1 + off, j)];
            }
            let scaled = Complex::new(dot.re * beta, dot.im * beta);
            for (off, vi) in v.iter().enumerate() {
                let idx = (k + 1 + off, j);
                a[idx] = a[idx] - vi * scaled;
            }
        }
        // Right: all rows, columns k+1..n.
        for i in 0..n {
            let mut dot = zero;
            for (off, vi) in v.iter().enumerate() {
                dot = dot + a[(i, k + 1 + off)] * vi;
            }
            let scaled = Complex::new(dot.re * beta, dot.im * beta);
            for (off, vi) in v.iter().enumerate() {
                let idx = (i, k + 1 + off);
                a[idx] = a[idx] - scaled * vi.conj();
            }
        }
        // Entries below the subdiagonal are now numerically zero; make it exact.
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = zero;
        }
    }
}

/// Wilkinson shift: eigenvalue of the trailing 2×2 closest to its bottom
/// right entry.
fn wilkinson_shift<R: Real>(
    a: Complex<R>,
    b: Complex<R>,
    c: Complex<R>,
    d: Complex<R>,
) -> Complex<R> {
    let two = R::cst(2.0);
    let tr_half = (a + d) / two;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn eig_2x2<R: Real>(
    a: Complex<R>,
    b: Complex<R>,
    c: Complex<R>,
    d: Complex<R>,
) -> (Complex<R>, Complex<R>) {
    let two = R::cst(2.0);
    let tr_half = (a + d) / two;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    (tr_half + disc, tr_half - disc)
}

/// Shifted QR on an upper Hessenberg matrix; returns the eigenvalues.
fn qr_hessenberg<R: Real>(h: &mut CMatrix<R>) -> Result<Vec<Complex<R>>> {
    let n = h.rows();
    let zero = Complex::new(R::zero(), R::zero());
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut total_iters = 0usize;
    let mut block_iters = 0usize;
    let budget = MAX_SWEEPS_PER_N * n;

    loop {
        // Deflate converged subdiagonal entries from the bottom up.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= R::epsilon() * local {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eigs.push(h[(hi, hi)]);
            block_iters = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig_2x2(
                h[(lo, lo)],
                h[(lo, hi)],
                h[(hi, lo)],
                h[(hi, hi)],
            );
            eigs.push(l1);
            eigs.push(l2);
            block_iters = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }

        if total_iters >= budget {
            return Err(Error::NoConvergence {
                algorithm: "shifted QR",
                index: hi,
            });
        }
        total_iters += 1;
        block_iters += 1;

        let shift = if block_iters % EXCEPTIONAL_EVERY == 0 {
            // Ad hoc exceptional shift to break rare limit cycles.
            h[(hi, hi)] + Complex::new(R::cst(0.75) * h[(hi, hi - 1)].norm(), R::zero())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        qr_step(h, lo, hi, shift);
    }

    Ok(eigs)
}

/// One explicit single-shift QR sweep on the active block `[lo, hi]`:
/// `H − σI = QR`, `H ← RQ + σI`, with Q a product of complex Givens
/// rotations.
fn qr_step<R: Real>(h: &mut CMatrix<R>, lo: usize, hi: usize, shift: Complex<R>) {
    let zero = Complex::new(R::zero(), R::zero());
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] - shift;
    }

    let mut rot: Vec<(Complex<R>, Complex<R>)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let f = h[(k, k)];
        let g = h[(k + 1, k)];
        let r = (f.norm_sqr() + g.norm_sqr()).sqrt();
        let (c, s) = if r.is_zero() {
            (Complex::new(R::one(), R::zero()), zero)
        } else {
            (f / r, g / r)
        };
        rot.push((c, s));
        for j in k..=hi {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = c.conj() * a + s.conj() * b;
            h[(k + 1, j)] = -s * a + c * b;
        }
        h[(k + 1, k)] = zero;
    }
    for (k, &(c, s)) in (lo..hi).zip(&rot) {
        let top = (k + 1).min(hi);
        for i in lo..=top {
            let a = h[(i, k)];
            let b = h[(i, k + 1)];
            h[(i, k)] = a * c + b * s;
            h[(i, k + 1)] = -a * s.conj() + b * c.conj();
        }
    }

    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] + shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::reference;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn diagonal_eigenvalues() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(3.0, 0.0)]]);
        let e = eigenvalues(&a).unwrap();
        assert!((e.eigenvalues()[0] - c(1.0, 1.0)).norm() < 1e-14);
        assert!((e.eigenvalues()[1] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_matrix_gives_plus_minus_i() {
        let a = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]]);
        let e = eigenvalues(&a).unwrap();
        let mut expected = [c(0.0, 1.0), c(0.0, -1.0)];
        expected.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        let mut got = e.eigenvalues().to_vec();
        got.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        for (g, w) in got.iter().zip(expected) {
            assert!((g - w).norm() < 1e-14, "{g} vs {w}");
        }
    }

    #[test]
    fn matches_characteristic_polynomial_oracle() {
        for seed in [1u64, 2, 3, 4] {
            let n = 8;
            let a = random_matrix(n, seed);
            let computed = eigenvalues(&a).unwrap().eigenvalues().to_vec();
            let oracle = reference::characteristic_roots(&a).unwrap();
            let err = reference::multiset_distance(&computed, &oracle);
            assert!(err < 1e-6, "seed {seed}: multiset distance {err:e}");
        }
    }

    #[test]
    fn trace_consistency() {
        for seed in [5u64, 6] {
            let n = 30;
            let a = random_matrix(n, seed);
            let e = eigenvalues(&a).unwrap();
            let sum = e
                .eigenvalues()
                .iter()
                .fold(c(0.0, 0.0), |acc, z| acc + z);
            let tr = a.trace();
            let scale = super::super::sigma::matrix_two_norm(&a);
            assert!(
                (sum - tr).norm() <= 1e-8 * n as f64 * scale,
                "trace mismatch {:?} vs {:?}",
                sum,
                tr
            );
        }
    }

    #[test]
    fn permutation_similarity_invariance() {
        let a = random_matrix(6, 9);
        // Reverse-order permutation similarity.
        let n = a.rows();
        let p = CMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 - i {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let b = p.mul_mat(&a).mul_mat(&p.conj_transpose());
        let ea = eigenvalues(&a).unwrap().eigenvalues().to_vec();
        let eb = eigenvalues(&b).unwrap().eigenvalues().to_vec();
        assert!(reference::multiset_distance(&ea, &eb) < 1e-9);
    }
}
