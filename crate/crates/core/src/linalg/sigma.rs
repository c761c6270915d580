//! Extremal singular values.
//!
//! `smallest_singular_value` runs inverse power iteration on `AᴴA` using one
//! LU of `A` per call (each step solves once with `Aᴴ`, once with `A`);
//! `matrix_two_norm` runs forward power iteration on `AᴴA`. Both use a fixed
//! seeded starting vector so every caller gets bit-reproducible output, a
//! relative-change convergence test of `1e-11`, and an iteration cap of 300;
//! hitting the cap returns the current estimate.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{vec_norm, CMatrix};
use crate::scalar::Real;

use super::lu::lu_decompose;

const MAX_ITERATIONS: usize = 300;
const START_SEED: u64 = 0x5EED_0051;

fn relative_tolerance<R: Real>() -> R {
    // 1e-11 for f64; proportionally looser for narrower scalars.
    R::epsilon() * R::cst(4.5e4)
}

/// Deterministic pseudo-random unit start vector for the power iterations.
fn start_vector<R: Real>(n: usize) -> Vec<Complex<R>> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v: Vec<Complex<R>> = (0..n)
        .map(|_| {
            Complex::new(
                R::cst(rng.gen_range(-1.0..1.0)),
                R::cst(rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    let norm = vec_norm(&v);
    for z in &mut v {
        *z = *z / norm;
    }
    v
}

fn normalize<R: Real>(v: &mut [Complex<R>]) -> R {
    let norm = vec_norm(v);
    if norm > R::zero() {
        for z in v.iter_mut() {
            *z = *z / norm;
        }
    }
    norm
}

/// Smallest singular value of a square complex matrix.
///
/// Returns exactly 0 when the LU factorization reports numerical
/// singularity (pivot below `n·ε·‖A‖_∞`).
pub fn smallest_singular_value<R: Real>(a: &CMatrix<R>) -> R {
    assert!(a.is_square(), "σ_min requires a square matrix");
    assert!(a.is_finite(), "σ_min requires finite entries");
    let n = a.rows();
    if n == 0 {
        return R::zero();
    }
    let factors = match lu_decompose(a) {
        Ok(f) => f,
        Err(_) => return R::zero(),
    };
    if factors.is_singular() {
        return R::zero();
    }

    let tol = relative_tolerance::<R>();
    let mut x = start_vector::<R>(n);
    let mut estimate = R::zero();
    for _ in 0..MAX_ITERATIONS {
        // y = A⁻ᴴ x, z = A⁻¹ y, so z = (AᴴA)⁻¹ x; ‖y‖² is the Rayleigh
        // quotient of (AᴴA)⁻¹ at the unit vector x.
        let y = factors.solve_adjoint(&x).expect("factors checked nonsingular");
        let mut z = factors.solve(&y).expect("factors checked nonsingular");
        let rayleigh = y.iter().fold(R::zero(), |acc, v| acc + v.norm_sqr());
        if !(rayleigh > R::zero()) || !rayleigh.is_finite() {
            // Start vector annihilated or overflow: the matrix is singular to
            // working precision.
            return R::zero();
        }
        let sigma = R::one() / rayleigh.sqrt();
        let change = (sigma - estimate).abs();
        estimate = sigma;
        if change <= tol * sigma {
            break;
        }
        if normalize(&mut z).is_zero() {
            return R::zero();
        }
        x = z;
    }
    estimate
}

/// Largest singular value (spectral norm) via power iteration on `AᴴA`.
/// Works for rectangular matrices.
pub fn matrix_two_norm<R: Real>(a: &CMatrix<R>) -> R {
    assert!(a.is_finite(), "‖A‖₂ requires finite entries");
    if a.rows() == 0 || a.cols() == 0 {
        return R::zero();
    }
    let ah = a.conj_transpose();
    let tol = relative_tolerance::<R>();
    let mut v = start_vector::<R>(a.cols());
    let mut estimate = R::zero();
    for _ in 0..MAX_ITERATIONS {
        let y = a.mul_vec(&v);
        let rayleigh = y.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr());
        if rayleigh.is_zero() {
            return R::zero();
        }
        let sigma = rayleigh.sqrt();
        let change = (sigma - estimate).abs();
        estimate = sigma;
        if change <= tol * sigma {
            break;
        }
        let mut w = ah.mul_vec(&y);
        if normalize(&mut w).is_zero() {
            return R::zero();
        }
        v = w;
    }
    estimate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig::eigenvalues;
    use crate::linalg::reference;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn sigma_min_of_diagonal() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 2.0)]]);
        assert!((smallest_singular_value(&a) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sigma_min_jordan_block() {
        // AᴴA of [[1,1],[0,1]] has eigenvalues (3±√5)/2.
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]);
        let expected = ((3.0 - 5.0f64.sqrt()) / 2.0).sqrt();
        assert!((smallest_singular_value(&a) - expected).abs() < 1e-10);
        let expected_max = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((matrix_two_norm(&a) - expected_max).abs() < 1e-10);
    }

    #[test]
    fn two_norm_basics() {
        let a = CMatrix::from_rows(&[vec![c(3.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]);
        assert!((matrix_two_norm(&a) - 3.0).abs() < 1e-10);
        let z = CMatrix::<f64>::zeros(4, 4);
        assert_eq!(matrix_two_norm(&z), 0.0);
        assert_eq!(smallest_singular_value(&z), 0.0);
    }

    #[test]
    fn matches_reference_svd_on_random_matrices() {
        for seed in [21u64, 22, 23] {
            for n in [5usize, 17, 40] {
                let a = random_matrix(n, seed * 100 + n as u64);
                let sv = reference::singular_values(&a);
                let smallest = *sv.last().unwrap();
                let largest = sv[0];
                let got_min = smallest_singular_value(&a);
                let got_max = matrix_two_norm(&a);
                assert!(
                    (got_min - smallest).abs() <= 1e-8 * smallest,
                    "n={n} seed={seed}: {got_min} vs {smallest}"
                );
                assert!((got_max - largest).abs() <= 1e-8 * largest);
            }
        }
    }

    #[test]
    fn sigma_min_vanishes_at_computed_eigenvalue() {
        let a = random_matrix(12, 3);
        let scale = matrix_two_norm(&a);
        for &lambda in eigenvalues(&a).unwrap().eigenvalues() {
            let sigma = smallest_singular_value(&a.shifted(lambda));
            assert!(sigma <= 1e-8 * scale, "sigma {sigma:e} vs scale {scale:e}");
        }
    }

    #[test]
    fn sigma_min_inverse_norm_duality() {
        let a = random_matrix(15, 8);
        let f = lu_decompose(&a).unwrap();
        // Power iteration for ‖A⁻¹‖₂ through the solves.
        let mut v = start_vector::<f64>(15);
        let mut est = 0.0f64;
        for _ in 0..200 {
            let y = f.solve(&v).unwrap();
            let norm = vec_norm(&y);
            let mut w = f.solve_adjoint(&y).unwrap();
            let wn = vec_norm(&w);
            for z in &mut w {
                *z /= wn;
            }
            v = w;
            if (norm - est).abs() <= 1e-12 * norm {
                est = norm;
                break;
            }
            est = norm;
        }
        let inv_norm = est;
        let product = smallest_singular_value(&a) * inv_norm;
        assert!((product - 1.0).abs() < 1e-6, "duality product {product}");
    }

    #[test]
    fn disk_bound_against_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in [31u64, 32, 33] {
            let a = random_matrix(10, seed);
            let eigs = eigenvalues(&a).unwrap();
            for _ in 0..5 {
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let sigma = smallest_singular_value(&a.shifted(z));
                let dist = eigs
                    .eigenvalues()
                    .iter()
                    .map(|l| (l - z).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(sigma <= dist + 1e-10, "sigma {sigma} > dist {dist}");
            }
        }
    }

    #[test]
    fn unitary_diagonal_invariance() {
        let a = random_matrix(9, 77);
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        let d = CMatrix::from_fn(9, 9, |i, j| {
            if i == j {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                c(theta.cos(), theta.sin())
            } else {
                c(0.0, 0.0)
            }
        });
        let da = d.mul_mat(&a);
        assert!((smallest_singular_value(&a) - smallest_singular_value(&da)).abs() < 1e-10);
        assert!((matrix_two_norm(&a) - matrix_two_norm(&da)).abs() < 1e-10);
    }
}
