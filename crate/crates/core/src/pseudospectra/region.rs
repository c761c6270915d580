//! Membership predicates for the regions organizing the pseudospectral
//! picture: the critical sector `|Im z| ≤ C₀·(Re z)^{1/3}` and the enclosure
//! region Ω_{m,p} swept by the curves `z_η = b_{m,p}·η + c·η^p` for
//! `0 < p < 1/3`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::operator::{exact_eigenvalue, OscillatorParams};
use crate::scalar::Real;

use super::curve::curve_point;

/// True iff `Re(z) > 0` and `|Im(z)| ≤ C₀·(Re z)^{1/3}` (boundary included).
pub fn sector_membership<R: Real>(z: Complex<R>, c0: R) -> bool {
    z.re > R::zero() && z.im.abs() <= c0 * z.re.cbrt()
}

/// Membership in Ω_{m,p}: points `|z_η|·e^{iθ}` with `η ≥ E` and
/// `arg(z_η) ≤ θ ≤ arg(c·conj(z_η)/|c|)`.
///
/// `(b_mp, E)` must satisfy the anchoring condition `b_mp·E + c·E^p = λ_m`
/// (checked to 1e-10 relative); the paper ties the pair together without
/// fixing a convention, so both are explicit inputs here. The radial
/// equation `|z_η| = |z|` is solved by bisection, valid because `|z_η]`
/// grows monotonically in η.
pub fn omega_region_membership<R: Real>(
    z: Complex<R>,
    m: usize,
    p: R,
    params: &OscillatorParams<R>,
    b_mp: R,
    big_e: R,
) -> Result<bool> {
    if !(p > R::zero()) || !(p < R::cst(1.0 / 3.0)) {
        return Err(Error::invalid(format!(
            "omega region requires 0 < p < 1/3, got {p}"
        )));
    }
    if !(b_mp > R::zero()) || !(big_e > R::zero()) {
        return Err(Error::invalid("need b_mp > 0 and E > 0"));
    }
    let c = params.c();
    let lambda_m = exact_eigenvalue(params, m);
    let anchor = curve_point(b_mp, p, c, big_e);
    let tol = R::cst(1e-10);
    if (anchor - lambda_m).norm() > tol * (R::one() + lambda_m.norm()) {
        return Err(Error::invalid(format!(
            "b_mp·E + c·E^p = {anchor} does not reach λ_{m} = {lambda_m}"
        )));
    }

    let target = z.norm();
    let inner = anchor.norm();
    if target < inner {
        return Ok(false);
    }

    // Bracket the radius, then bisect |z_η| = |z|.
    let mut eta_hi = big_e;
    let two = R::cst(2.0);
    let mut guard = 0;
    while curve_point(b_mp, p, c, eta_hi).norm() < target {
        eta_hi = eta_hi * two;
        guard += 1;
        if guard > 200 {
            return Err(Error::NoConvergence {
                algorithm: "omega radial bracket",
                index: 0,
            });
        }
    }
    let mut lo = big_e;
    let mut hi = eta_hi;
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if curve_point(b_mp, p, c, mid).norm() < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= R::epsilon() * hi * R::cst(4.0) {
            break;
        }
    }
    let z_eta = curve_point(b_mp, p, c, (lo + hi) / two);

    let theta = z.arg();
    let theta_lo = z_eta.arg();
    let theta_hi = (c * z_eta.conj() / c.norm()).arg();
    let slack = R::cst(1e-12);
    Ok(theta >= theta_lo - slack && theta <= theta_hi + slack)
}

/// Solve the anchoring condition for `(b_mp, E)` given `(m, p)`:
/// `Im(c)·E^p = Im(λ_m)` fixes E, then `b_mp = (Re λ_m − Re(c)·E^p)/E`.
/// Requires `Im(c) ≠ 0` and a positive resulting slope.
pub fn omega_anchor<R: Real>(params: &OscillatorParams<R>, m: usize, p: R) -> Result<(R, R)> {
    let c = params.c();
    if c.im.is_zero() {
        return Err(Error::invalid("omega anchor needs Im(c) != 0"));
    }
    let lambda_m = exact_eigenvalue(params, m);
    let ratio = lambda_m.im / c.im;
    if !(ratio > R::zero()) {
        return Err(Error::invalid("lambda_m and c must lie in the same half-plane"));
    }
    let big_e = ratio.powf(R::one() / p);
    let b_mp = (lambda_m.re - c.re * ratio) / big_e;
    if !(b_mp > R::zero()) {
        return Err(Error::invalid("anchoring produced a nonpositive slope"));
    }
    Ok((b_mp, big_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn sector_boundary_cases() {
        // (Re z)^{1/3} = 2 at Re z = 8.
        assert!(sector_membership(c(8.0, 2.0), 1.0));
        assert!(!sector_membership(c(8.0, 3.0), 1.0));
        assert!(!sector_membership(c(-1.0, 0.0), 1.0));
        assert!(!sector_membership(c(-1.0, 0.0), 100.0));
        assert!(sector_membership(c(8.0, -2.0), 1.0));
    }

    #[test]
    fn omega_anchor_consistency() {
        let params = OscillatorParams::new(c(1.0, 5.0)).unwrap();
        let p = 0.2;
        let (b, e) = omega_anchor(&params, 0, p).unwrap();
        assert!(b > 0.0 && e > 0.0);
        let z = curve_point(b, p, c(1.0, 5.0), e);
        let l0 = exact_eigenvalue(&params, 0);
        assert!((z - l0).norm() < 1e-12 * l0.norm());
    }

    #[test]
    fn omega_membership_basics() {
        let params = OscillatorParams::new(c(1.0, 5.0)).unwrap();
        let p = 0.2;
        let (b, e) = omega_anchor(&params, 0, p).unwrap();
        let l0 = exact_eigenvalue(&params, 0);

        // λ_m itself is the inner boundary point.
        assert!(omega_region_membership(l0, 0, p, &params, b, e).unwrap());
        // Below the inner radius: out.
        assert!(!omega_region_membership(l0 * 0.5, 0, p, &params, b, e).unwrap());

        // Matched modulus, angle inside / outside the bracket.
        let eta = 4.0 * e;
        let z_eta = curve_point(b, p, c(1.0, 5.0), eta);
        let theta_lo = z_eta.arg();
        let theta_hi = (c(1.0, 5.0) * z_eta.conj() / c(1.0, 5.0).norm()).arg();
        assert!(theta_hi > theta_lo);
        let mid = C::from_polar(z_eta.norm(), (theta_lo + theta_hi) / 2.0);
        assert!(omega_region_membership(mid, 0, p, &params, b, e).unwrap());
        let outside = C::from_polar(z_eta.norm(), theta_hi + 0.1);
        assert!(!omega_region_membership(outside, 0, p, &params, b, e).unwrap());
        let below = C::from_polar(z_eta.norm(), theta_lo - 0.1);
        assert!(!omega_region_membership(below, 0, p, &params, b, e).unwrap());
    }

    #[test]
    fn omega_rejects_bad_exponent_and_anchor() {
        let params = OscillatorParams::new(c(1.0, 5.0)).unwrap();
        let (b, e) = omega_anchor(&params, 0, 0.2).unwrap();
        let z = c(3.0, 1.0);
        assert!(omega_region_membership(z, 0, 0.5, &params, b, e).is_err());
        assert!(omega_region_membership(z, 0, -0.1, &params, b, e).is_err());
        // Inconsistent (b, E) pair.
        assert!(omega_region_membership(z, 0, 0.2, &params, b * 2.0, e).is_err());
    }
}
