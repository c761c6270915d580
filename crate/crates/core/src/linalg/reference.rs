//! Slow reference paths used to validate the production kernels.
//!
//! These are deliberately independent of the LU/inverse-iteration and QR
//! code: singular values come from Householder bidiagonalization plus the
//! Golub–Kahan–Reinsch bidiagonal QR sweep, and eigenvalue checks come from
//! the characteristic polynomial (Leverrier–Faddeev) solved by
//! Durand–Kerner iteration. Intended for n ≲ 100.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;

/// All singular values, descending, via bidiagonalization + bidiagonal QR.
pub fn singular_values<R: Real>(a: &CMatrix<R>) -> Vec<R> {
    let (d, e) = bidiagonalize(a);
    let mut sv = bidiagonal_svd(d, e);
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Householder bidiagonalization, magnitudes only.
///
/// Returns `(d, e)` with `d[k] = |B[k][k]|` and `e[k] = |B[k-1][k]|`
/// (`e[0] = 0`); a diagonal phase similarity makes any complex bidiagonal
/// real without changing singular values.
fn bidiagonalize<R: Real>(a: &CMatrix<R>) -> (Vec<R>, Vec<R>) {
    let mut a = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.conj_transpose()
    };
    let (m, n) = (a.rows(), a.cols());
    let zero = Complex::new(R::zero(), R::zero());
    let mut d = vec![R::zero(); n];
    let mut e = vec![R::zero(); n];

    for k in 0..n {
        // Left reflector: clear column k below the diagonal.
        let norm = (k..m)
            .map(|i| a[(i, k)].norm_sqr())
            .fold(R::zero(), |s, v| s + v)
            .sqrt();
        if norm > R::zero() {
            let x0 = a[(k, k)];
            let alpha = if x0.norm().is_zero() {
                Complex::new(-norm, R::zero())
            } else {
                -(x0 / x0.norm()) * norm
            };
            let mut v: Vec<Complex<R>> = (k..m).map(|i| a[(i, k)]).collect();
            v[0] = v[0] - alpha;
            let vnorm_sqr = v.iter().fold(R::zero(), |s, z| s + z.norm_sqr());
            if vnorm_sqr > R::zero() {
                let beta = R::cst(2.0) / vnorm_sqr;
                for j in k..n {
                    let mut dot = zero;
                    for (off, vi) in v.iter().enumerate() {
                        dot = dot + vi.conj() * a[(k + off, j)];
                    }
                    let scaled = Complex::new(dot.re * beta, dot.im * beta);
                    for (off, vi) in v.iter().enumerate() {
                        let idx = (k + off, j);
                        a[idx] = a[idx] - vi * scaled;
                    }
                }
                a[(k, k)] = alpha;
                for i in k + 1..m {
                    a[(i, k)] = zero;
                }
            }
        }
        d[k] = a[(k, k)].norm();

        // Right reflector: clear row k to the right of the superdiagonal.
        if k + 2 < n {
            let norm = (k + 1..n)
                .map(|j| a[(k, j)].norm_sqr())
                .fold(R::zero(), |s, v| s + v)
                .sqrt();
            if norm > R::zero() {
                let x0 = a[(k, k + 1)].conj();
                let alpha = if x0.norm().is_zero() {
                    Complex::new(-norm, R::zero())
                } else {
                    -(x0 / x0.norm()) * norm
                };
                // v built from the conjugated row; applying I − β·v·vᴴ from
                // the right maps the row to conj(α)·e1.
                let mut v: Vec<Complex<R>> = (k + 1..n).map(|j| a[(k, j)].conj()).collect();
                v[0] = v[0] - alpha;
                let vnorm_sqr = v.iter().fold(R::zero(), |s, z| s + z.norm_sqr());
                if vnorm_sqr > R::zero() {
                    let beta = R::cst(2.0) / vnorm_sqr;
                    for i in k..m {
                        let mut dot = zero;
                        for (off, vj) in v.iter().enumerate() {
                            dot = dot + a[(i, k + 1 + off)] * vj;
                        }
                        let scaled = Complex::new(dot.re * beta, dot.im * beta);
                        for (off, vj) in v.iter().enumerate() {
                            let idx = (i, k + 1 + off);
                            a[idx] = a[idx] - scaled * vj.conj();
                        }
                    }
                }
            }
        }
        if k + 1 < n {
            e[k + 1] = a[(k, k + 1)].norm();
        }
    }
    (d, e)
}

/// Singular values of a real bidiagonal matrix (diagonal `d`, superdiagonal
/// `e` with `e[0] = 0`), by the shifted bidiagonal QR sweep.
fn bidiagonal_svd<R: Real>(mut d: Vec<R>, mut e: Vec<R>) -> Vec<R> {
    let n = d.len();
    if n == 0 {
        return d;
    }
    let eps = R::epsilon();
    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs())
        .fold(R::zero(), |a, b| if b > a { b } else { a });
    if anorm.is_zero() {
        return d;
    }

    for k in (0..n).rev() {
        for its in 0.. {
            assert!(its < 75, "bidiagonal QR failed to converge");
            // Split: find l with negligible e[l]; if d[l-1] is negligible
            // first, the leading diagonal entry must be annihilated.
            let mut l = k;
            let mut cancel = true;
            loop {
                if e[l].abs() <= eps * anorm {
                    cancel = false;
                    break;
                }
                if d[l - 1].abs() <= eps * anorm {
                    break;
                }
                l -= 1;
            }
            if cancel {
                let mut c = R::zero();
                let mut s = R::one();
                for i in l..=k {
                    let f = s * e[i];
                    e[i] = c * e[i];
                    if f.abs() <= eps * anorm {
                        break;
                    }
                    let g = d[i];
                    let h = f.hypot(g);
                    d[i] = h;
                    c = g / h;
                    s = -f / h;
                }
            }
            let z = d[k];
            if l == k {
                if z < R::zero() {
                    d[k] = -z;
                }
                break;
            }
            // Shift from the trailing 2×2 of BᵀB.
            let x = d[l];
            let y = d[k - 1];
            let g = e[k - 1];
            let h = e[k];
            let two = R::cst(2.0);
            let mut f = ((y - z) * (y + z) + (g - h) * (g + h)) / (two * h * y);
            let gg = f.hypot(R::one());
            let denom = f + if f >= R::zero() { gg } else { -gg };
            f = ((x - z) * (x + z) + h * (y / denom - h)) / x;

            let mut c = R::one();
            let mut s = R::one();
            let mut x = x;
            for j in l..k {
                let i = j + 1;
                let mut g = e[i];
                let mut y = d[i];
                let h = s * g;
                g = c * g;
                let zz = f.hypot(h);
                e[j] = zz;
                c = f / zz;
                s = h / zz;
                f = x * c + g * s;
                g = g * c - x * s;
                let h = y * s;
                y = y * c;
                let zz = f.hypot(h);
                d[j] = zz;
                if zz > R::zero() {
                    c = f / zz;
                    s = h / zz;
                }
                f = c * g + s * y;
                x = c * y - s * g;
            }
            e[l] = R::zero();
            e[k] = f;
            d[k] = x;
        }
    }
    d
}

/// Coefficients `[1, c₁, …, cₙ]` of the characteristic polynomial
/// `λⁿ + c₁λⁿ⁻¹ + … + cₙ` by the Leverrier–Faddeev recursion.
pub fn characteristic_polynomial<R: Real>(a: &CMatrix<R>) -> Vec<Complex<R>> {
    assert!(a.is_square());
    let n = a.rows();
    let one = Complex::new(R::one(), R::zero());
    let mut coeffs = vec![one];
    let mut m = CMatrix::<R>::identity(n);
    for k in 1..=n {
        let am = a.mul_mat(&m);
        let ck = -am.trace() / Complex::new(R::of_usize(k), R::zero());
        coeffs.push(ck);
        m = am;
        for i in 0..n {
            m[(i, i)] = m[(i, i)] + ck;
        }
    }
    coeffs
}

/// Roots of the characteristic polynomial by Durand–Kerner iteration.
pub fn characteristic_roots<R: Real>(a: &CMatrix<R>) -> Result<Vec<Complex<R>>> {
    let coeffs = characteristic_polynomial(a);
    polynomial_roots(&coeffs)
}

/// Durand–Kerner roots of a monic polynomial given `[1, c₁, …, cₙ]`.
pub fn polynomial_roots<R: Real>(coeffs: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let eval = |z: Complex<R>| coeffs.iter().fold(Complex::new(R::zero(), R::zero()), |acc, c| acc * z + c);
    // Cauchy bound keeps all starting points on a circle enclosing the roots.
    let radius = coeffs[1..]
        .iter()
        .map(|c| c.norm())
        .fold(R::zero(), |a, b| if b > a { b } else { a })
        + R::one();
    let seed = Complex::new(R::cst(0.4), R::cst(0.9));
    let mut roots: Vec<Complex<R>> = (0..n)
        .map(|i| {
            let mut z = Complex::new(R::one(), R::zero());
            for _ in 0..=i {
                z = z * seed;
            }
            z * radius / seed.norm()
        })
        .collect();

    let tol = R::epsilon() * R::cst(64.0);
    for _ in 0..1000 {
        let mut max_step = R::zero();
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex::new(R::one(), R::zero());
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    denom = denom * (zi - zj);
                }
            }
            if denom.norm().is_zero() {
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            let rel = step.norm() / (R::one() + zi.norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step <= tol {
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence {
        algorithm: "Durand-Kerner",
        index: 0,
    })
}

/// Bottleneck distance between two complex multisets (greedy closest-pair
/// matching; adequate when values are well separated relative to `tol`).
pub fn multiset_distance<R: Real>(xs: &[Complex<R>], ys: &[Complex<R>]) -> R {
    assert_eq!(xs.len(), ys.len());
    let mut xs: Vec<Complex<R>> = xs.to_vec();
    let mut ys: Vec<Complex<R>> = ys.to_vec();
    let mut worst = R::zero();
    while !xs.is_empty() {
        let mut best = (R::infinity(), 0usize, 0usize);
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in ys.iter().enumerate() {
                let dist = (x - y).norm();
                if dist < best.0 {
                    best = (dist, i, j);
                }
            }
        }
        if best.0 > worst {
            worst = best.0;
        }
        xs.swap_remove(best.1);
        ys.swap_remove(best.2);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn singular_values_of_jordan_block() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]);
        let sv = singular_values(&a);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((sv[0] - phi).abs() < 1e-12);
        assert!((sv[1] - (phi - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diagonal_are_moduli() {
        let a = CMatrix::from_rows(&[
            vec![c(0.0, -3.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        ]);
        let sv = singular_values(&a);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((sv[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn frobenius_consistency_on_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = CMatrix::from_fn(12, 12, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let sv = singular_values(&a);
        let fro_sq: f64 = sv.iter().map(|s| s * s).sum();
        let direct = a.norm_frobenius();
        assert!((fro_sq.sqrt() - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn characteristic_roots_of_known_matrix() {
        // Companion-style matrix of (λ-1)(λ-2)(λ-3).
        let a = CMatrix::from_rows(&[
            vec![c(6.0, 0.0), c(-11.0, 0.0), c(6.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let roots = characteristic_roots(&a).unwrap();
        let expected = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert!(multiset_distance(&roots, &expected) < 1e-9);
    }
}
