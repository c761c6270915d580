//! Chebyshev collocation nodes and spectral differentiation matrices on
//! `[-L, L]`.
//!
//! Nodes follow the Gauss–Lobatto convention `x_j = L·cos(jπ/N)`, stored in
//! descending order (`x_0 = L` first); all downstream indexing relies on this
//! ordering. The first-derivative matrix is the classical collocation matrix
//! with the negative-sum trick for the diagonal; the second-derivative matrix
//! is formed as `D⁽¹⁾·D⁽¹⁾`, which keeps the whole suite exact on polynomials
//! of degree ≤ N.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{neumaier_sum, Real};

/// Collocation grid: `N+1` Chebyshev–Lobatto nodes on `[-L, L]`, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid<R: Real> {
    n_intervals: usize,
    half_width: R,
    points: Vec<R>,
}

impl<R: Real> ChebGrid<R> {
    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    pub fn half_width(&self) -> R {
        self.half_width
    }

    pub fn points(&self) -> &[R] {
        &self.points
    }

    /// Interior nodes `x_1..x_{N-1}` (Dirichlet truncation drops both ends).
    pub fn interior_points(&self) -> &[R] {
        &self.points[1..self.n_intervals]
    }
}

/// Spectral differentiation matrix of order 1 or 2 on the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix<R: Real> {
    order: u32,
    n_intervals: usize,
    half_width: R,
    entries: Vec<R>, // (N+1)×(N+1), row-major
}

impl<R: Real> DiffMatrix<R> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    pub fn half_width(&self) -> R {
        self.half_width
    }

    pub fn size(&self) -> usize {
        self.n_intervals + 1
    }

    pub fn entry(&self, i: usize, j: usize) -> R {
        self.entries[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        let n = self.size();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Apply to nodal samples: returns the sampled derivative.
    pub fn apply(&self, values: &[R]) -> Vec<R> {
        assert_eq!(values.len(), self.size());
        (0..self.size())
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(values)
                    .fold(R::zero(), |acc, (d, v)| acc + *d * *v)
            })
            .collect()
    }

    fn mul(&self, other: &Self) -> Vec<R> {
        let n = self.size();
        let mut out = vec![R::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * *s;
                }
            }
        }
        out
    }
}

/// Chebyshev–Lobatto nodes `L·cos(jπ/N)`, `j = 0..N`.
///
/// Nodes are computed for the upper half and mirrored so that the
/// antisymmetry `x_j + x_{N-j} = 0` holds exactly.
pub fn cheb_points<R: Real>(n: usize, half_width: R) -> Result<ChebGrid<R>> {
    if n < 2 {
        return Err(Error::invalid(format!("need N >= 2 intervals, got {n}")));
    }
    if !(half_width > R::zero()) || !half_width.is_finite() {
        return Err(Error::invalid("half-width L must be positive and finite"));
    }
    let mut points = vec![R::zero(); n + 1];
    for j in 0..=n / 2 {
        let theta = R::PI() * R::of_usize(j) / R::of_usize(n);
        let x = half_width * theta.cos();
        points[j] = x;
        points[n - j] = -x;
    }
    if n % 2 == 0 {
        points[n / 2] = R::zero();
    }
    Ok(ChebGrid {
        n_intervals: n,
        half_width,
        points,
    })
}

/// Differentiation matrix of the given order on the `cheb_points(n, L)` grid.
///
/// Order 1 uses the closed-form off-diagonal entries
/// `D_ij = (c_i/c_j)(−1)^{i+j}/(x_i − x_j)` with the diagonal set to the
/// negative row sum (compensated); order 2 is the square of order 1. Both
/// are assembled on the unit interval and divided by `L^order` entrywise,
/// which makes the scaling covariance exact.
pub fn diff_matrix<R: Real>(n: usize, order: u32, half_width: R) -> Result<DiffMatrix<R>> {
    if !(order == 1 || order == 2) {
        return Err(Error::invalid(format!(
            "derivative order must be 1 or 2, got {order}"
        )));
    }
    let grid = cheb_points(n, R::one())?;
    if !(half_width > R::zero()) || !half_width.is_finite() {
        return Err(Error::invalid("half-width L must be positive and finite"));
    }
    let x = grid.points();
    let size = n + 1;
    let mut entries = vec![R::zero(); size * size];

    let c_weight = |i: usize| {
        if i == 0 || i == n {
            R::cst(2.0)
        } else {
            R::one()
        }
    };
    for i in 0..size {
        for j in 0..size {
            if i == j {
                continue;
            }
            let sign = if (i + j) % 2 == 0 { R::one() } else { -R::one() };
            entries[i * size + j] = sign * c_weight(i) / (c_weight(j) * (x[i] - x[j]));
        }
    }
    for i in 0..size {
        let row = &entries[i * size..(i + 1) * size];
        let diag = -neumaier_sum(row.iter().copied());
        entries[i * size + i] = diag;
    }

    let mut out = DiffMatrix {
        order: 1,
        n_intervals: n,
        half_width,
        entries,
    };
    if order == 2 {
        out.entries = out.mul(&out);
        out.order = 2;
    }
    if half_width != R::one() {
        let factor = half_width.powi(order as i32);
        for e in &mut out.entries {
            *e = *e / factor;
        }
    }
    Ok(out)
}

/// Evaluate the degree-≤N interpolant of nodal `values` at `x` by the
/// barycentric formula (weights `(−1)^j δ_j`, halved at the endpoints).
pub fn barycentric_eval<R: Real>(
    grid: &ChebGrid<R>,
    values: &[Complex<R>],
    x: R,
) -> Result<Complex<R>> {
    let n = grid.n_intervals();
    if values.len() != n + 1 {
        return Err(Error::invalid(format!(
            "expected {} nodal values, got {}",
            n + 1,
            values.len()
        )));
    }
    if x.abs() > grid.half_width() || !x.is_finite() {
        return Err(Error::invalid(format!(
            "evaluation point {x} outside [-{l}, {l}]",
            l = grid.half_width()
        )));
    }
    let pts = grid.points();
    // Exact at nodes.
    if let Some(j) = pts.iter().position(|&p| p == x) {
        return Ok(values[j]);
    }
    let mut num = Complex::new(R::zero(), R::zero());
    let mut den = R::zero();
    for j in 0..=n {
        let mut w = if j % 2 == 0 { R::one() } else { -R::one() };
        if j == 0 || j == n {
            w = w * R::cst(0.5);
        }
        let t = w / (x - pts[j]);
        num = num + values[j] * t;
        den += t;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} != {b} (tol {tol})");
    }

    #[test]
    fn nodes_n4_unit() {
        let g = cheb_points::<f64>(4, 1.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [1.0, s, 0.0, -s, -1.0];
        for (p, e) in g.points().iter().zip(expected) {
            assert_close(*p, e, 1e-15);
        }
    }

    #[test]
    fn nodes_n2_scaled() {
        let g = cheb_points::<f64>(2, 1.0).unwrap();
        assert_eq!(g.points(), &[1.0, 0.0, -1.0]);
        let g6 = cheb_points::<f64>(2, 6.0).unwrap();
        assert_eq!(g6.points(), &[6.0, 0.0, -6.0]);
    }

    #[test]
    fn nodes_antisymmetric_exactly() {
        for n in [2usize, 5, 16, 33, 64] {
            let g = cheb_points::<f64>(n, 2.5).unwrap();
            for j in 0..=n {
                assert_eq!(g.points()[j] + g.points()[n - j], 0.0);
            }
            assert_eq!(g.points()[0], 2.5);
            assert_eq!(g.points()[n], -2.5);
        }
    }

    #[test]
    fn rejects_bad_grid_parameters() {
        assert!(cheb_points::<f64>(1, 1.0).is_err());
        assert!(cheb_points::<f64>(4, 0.0).is_err());
        assert!(cheb_points::<f64>(4, -2.0).is_err());
        assert!(diff_matrix::<f64>(4, 3, 1.0).is_err());
        assert!(diff_matrix::<f64>(4, 0, 1.0).is_err());
    }

    #[test]
    fn d1_n2_exact() {
        // Differentiating the quadratic interpolant through nodes (1, 0, -1)
        // by hand gives these nine entries.
        let d = diff_matrix::<f64>(2, 1, 1.0).unwrap();
        let expected = [[1.5, -2.0, 0.5], [0.5, 0.0, -0.5], [-0.5, 2.0, -1.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert_close(d.entry(i, j), expected[i][j], 1e-14);
            }
        }
    }

    #[test]
    fn d2_n2_is_d1_squared() {
        // Squaring the hand-computed 3×3 first-derivative matrix gives the
        // constant-row matrix with every row (1, -2, 1); consistent with
        // D²·(x² samples) = 2.
        let d2 = diff_matrix::<f64>(2, 2, 1.0).unwrap();
        for i in 0..3 {
            assert_close(d2.entry(i, 0), 1.0, 1e-13);
            assert_close(d2.entry(i, 1), -2.0, 1e-13);
            assert_close(d2.entry(i, 2), 1.0, 1e-13);
        }
    }

    #[test]
    fn second_derivative_of_square_is_two() {
        for n in [2usize, 7, 24] {
            for l in [1.0, 6.0] {
                let g = cheb_points::<f64>(n, l).unwrap();
                let d2 = diff_matrix::<f64>(n, 2, l).unwrap();
                let samples: Vec<f64> = g.points().iter().map(|x| x * x).collect();
                for v in d2.apply(&samples) {
                    assert_close(v, 2.0, 1e-9 * (1.0 + (n * n) as f64));
                }
            }
        }
    }

    #[test]
    fn d1_rows_sum_to_zero() {
        for n in [8usize, 32, 64] {
            let d = diff_matrix::<f64>(n, 1, 1.0).unwrap();
            for i in 0..=n {
                let s = neumaier_sum(d.row(i).iter().copied());
                assert!(s.abs() <= 1e-12, "row {i} of N={n} sums to {s}");
            }
        }
    }

    fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn poly_deriv(coeffs: &[f64]) -> Vec<f64> {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn polynomial_exactness(
            n in prop::sample::select(vec![4usize, 16, 64]),
            order in 1u32..=2,
            coeffs in prop::collection::vec(-1.0f64..1.0, 1..=12),
        ) {
            let deg = coeffs.len().saturating_sub(1);
            prop_assume!(deg <= n);
            let g = cheb_points::<f64>(n, 1.0).unwrap();
            let d = diff_matrix::<f64>(n, order, 1.0).unwrap();
            let samples: Vec<f64> = g.points().iter().map(|&x| poly_eval(&coeffs, x)).collect();
            let mut dc = coeffs.clone();
            for _ in 0..order {
                dc = poly_deriv(&dc);
            }
            let exact: Vec<f64> = g.points().iter().map(|&x| poly_eval(&dc, x)).collect();
            let sup = exact.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            for (got, want) in d.apply(&samples).iter().zip(&exact) {
                prop_assert!((got - want).abs() <= 1e-8 * (1.0 + sup));
            }
        }

        #[test]
        fn scaling_covariance(
            n in prop::sample::select(vec![3usize, 9, 20]),
            order in 1u32..=2,
            l in 0.5f64..20.0,
        ) {
            let unit = diff_matrix::<f64>(n, order, 1.0).unwrap();
            let scaled = diff_matrix::<f64>(n, order, l).unwrap();
            let factor = l.powi(order as i32);
            for i in 0..=n {
                for j in 0..=n {
                    let want = unit.entry(i, j) / factor;
                    let got = scaled.entry(i, j);
                    prop_assert!((got - want).abs() <= 1e-14 * (1.0 + want.abs()));
                }
            }
        }

        #[test]
        fn barycentric_matches_interpolation_property(
            n in prop::sample::select(vec![4usize, 9]),
            j in 0usize..5,
        ) {
            prop_assume!(j <= n);
            let g = cheb_points::<f64>(n, 2.0).unwrap();
            let values: Vec<Complex<f64>> = (0..=n)
                .map(|k| Complex::new(k as f64, -(k as f64) * 0.5))
                .collect();
            let at_node = barycentric_eval(&g, &values, g.points()[j]).unwrap();
            prop_assert_eq!(at_node, values[j]);
        }
    }

    #[test]
    fn barycentric_constant_and_cubic() {
        let g = cheb_points::<f64>(4, 1.0).unwrap();
        let ones: Vec<Complex<f64>> = vec![Complex::new(1.0, 0.0); 5];
        for x in [-1.0, -0.3, 0.0, 0.77, 1.0] {
            let v = barycentric_eval(&g, &ones, x).unwrap();
            assert_close(v.re, 1.0, 1e-14);
            assert_close(v.im, 0.0, 1e-14);
        }
        let cubic: Vec<Complex<f64>> = g
            .points()
            .iter()
            .map(|&x| Complex::new(x * x * x, 0.0))
            .collect();
        let v = barycentric_eval(&g, &cubic, 0.5).unwrap();
        assert_close(v.re, 0.125, 1e-14);
    }

    #[test]
    fn barycentric_rejects_outside_domain() {
        let g = cheb_points::<f64>(2, 1.0).unwrap();
        let vals = vec![Complex::new(0.0, 0.0); 3];
        assert!(barycentric_eval(&g, &vals, 1.5).is_err());
        assert!(barycentric_eval(&g, &vals, -1.0000001).is_err());
    }
}
