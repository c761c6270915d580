//! Level-set extraction from σ_min fields by marching squares.
//!
//! Contouring runs on `log10(σ_min)` with σ_min clamped below at 1e-16: the
//! requested ε levels span many decades and the clamp avoids `log(0)` at
//! eigenvalues. Crossing points are linearly interpolated in log space and
//! shared edges are keyed so adjacent cells chain into polylines exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::field::PseudospectrumField;

const SIGMA_CLAMP: f64 = 1e-16;

/// Polylines of one ε level, in complex-plane coordinates `(re, im)`.
#[derive(Debug, Clone)]
pub struct LevelContours<R: Real> {
    pub level: R,
    pub polylines: Vec<Vec<(R, R)>>,
}

/// Edge of the sampling grid: (ix, iy, horizontal?) identifies the segment
/// from node (ix, iy) to (ix+1, iy) or (ix, iy+1).
type EdgeKey = (usize, usize, bool);

/// Extract the ε-level boundaries for each level (positive, descending).
///
/// A level below the whole field yields no polylines; a level above the
/// whole field yields the window boundary rectangle.
pub fn contours<R: Real>(
    field: &PseudospectrumField<R>,
    levels: &[R],
) -> Result<Vec<LevelContours<R>>> {
    if levels.is_empty() {
        return Err(Error::invalid("need at least one contour level"));
    }
    if levels.iter().any(|l| !(*l > R::zero()) || !l.is_finite()) {
        return Err(Error::invalid("contour levels must be positive and finite"));
    }
    if levels.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid("contour levels must be strictly descending"));
    }
    assert_nested(field, levels)?;

    let clamp = R::cst(SIGMA_CLAMP);
    let logs: Vec<R> = field
        .values()
        .iter()
        .map(|&v| v.max(clamp).log10())
        .collect();

    Ok(levels
        .iter()
        .map(|&level| LevelContours {
            level,
            polylines: march_level(field, &logs, level.log10()),
        })
        .collect())
}

/// Nesting is definitional for sublevel sets of one field; assert it anyway
/// so every computed field carries the check.
fn assert_nested<R: Real>(field: &PseudospectrumField<R>, levels: &[R]) -> Result<()> {
    for pair in levels.windows(2) {
        let (big, small) = (pair[0], pair[1]);
        for &v in field.values() {
            if v <= small && !(v <= big) {
                return Err(Error::PropertyViolation(format!(
                    "nesting violated: σ={v} inside ε={small} but outside ε={big}"
                )));
            }
        }
    }
    Ok(())
}

fn march_level<R: Real>(
    field: &PseudospectrumField<R>,
    logs: &[R],
    threshold: R,
) -> Vec<Vec<(R, R)>> {
    let window = field.window();
    let (nx, ny) = (window.nx, window.ny);
    let at = |ix: usize, iy: usize| logs[iy * nx + ix];
    let inside = |ix: usize, iy: usize| at(ix, iy) <= threshold;

    if logs.iter().all(|&v| v <= threshold) {
        // Whole window inside the level set: boundary is the window frame.
        let rect = vec![
            (window.re_min, window.im_min),
            (window.re_max, window.im_min),
            (window.re_max, window.im_max),
            (window.re_min, window.im_max),
            (window.re_min, window.im_min),
        ];
        return vec![rect];
    }

    // Collect undirected segments between crossing edges.
    let mut adjacency: BTreeMap<EdgeKey, Vec<EdgeKey>> = BTreeMap::new();
    let mut push = |a: EdgeKey, b: EdgeKey| {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    };
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let mut case = 0u8;
            if inside(ix, iy) {
                case |= 1;
            }
            if inside(ix + 1, iy) {
                case |= 2;
            }
            if inside(ix + 1, iy + 1) {
                case |= 4;
            }
            if inside(ix, iy + 1) {
                case |= 8;
            }
            let bottom: EdgeKey = (ix, iy, true);
            let top: EdgeKey = (ix, iy + 1, true);
            let left: EdgeKey = (ix, iy, false);
            let right: EdgeKey = (ix + 1, iy, false);
            match case {
                0 | 15 => {}
                1 | 14 => push(left, bottom),
                2 | 13 => push(bottom, right),
                3 | 12 => push(left, right),
                4 | 11 => push(right, top),
                6 | 9 => push(bottom, top),
                7 | 8 => push(left, top),
                5 | 10 => {
                    // Saddle: resolve by the cell-center mean.
                    let four = R::cst(4.0);
                    let center =
                        (at(ix, iy) + at(ix + 1, iy) + at(ix, iy + 1) + at(ix + 1, iy + 1)) / four;
                    let center_inside = center <= threshold;
                    if (case == 5) == center_inside {
                        push(left, top);
                        push(bottom, right);
                    } else {
                        push(left, bottom);
                        push(right, top);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let edge_point = |edge: EdgeKey| -> (R, R) {
        let (ix, iy, horizontal) = edge;
        let (v0, v1) = if horizontal {
            (at(ix, iy), at(ix + 1, iy))
        } else {
            (at(ix, iy), at(ix, iy + 1))
        };
        let denom = v1 - v0;
        let t = if denom.is_zero() {
            R::cst(0.5)
        } else {
            ((threshold - v0) / denom).max(R::zero()).min(R::one())
        };
        if horizontal {
            let re = window.re_at(ix) + (window.re_at(ix + 1) - window.re_at(ix)) * t;
            (re, window.im_at(iy))
        } else {
            let im = window.im_at(iy) + (window.im_at(iy + 1) - window.im_at(iy)) * t;
            (window.re_at(ix), im)
        }
    };

    chain_segments(adjacency, edge_point)
}

/// Walk the edge adjacency into polylines: open paths first (starting from
/// degree-1 edges in key order), then closed loops.
fn chain_segments<R: Real>(
    mut adjacency: BTreeMap<EdgeKey, Vec<EdgeKey>>,
    edge_point: impl Fn(EdgeKey) -> (R, R),
) -> Vec<Vec<(R, R)>> {
    let mut polylines = Vec::new();
    loop {
        let start = adjacency
            .iter()
            .find(|(_, nbrs)| nbrs.len() == 1)
            .map(|(&k, _)| k)
            .or_else(|| adjacency.keys().next().copied());
        let Some(start) = start else { break };

        let mut path = vec![start];
        let mut current = start;
        loop {
            let Some(nbrs) = adjacency.get_mut(&current) else {
                break;
            };
            let Some(next) = nbrs.pop() else {
                adjacency.remove(&current);
                break;
            };
            if nbrs.is_empty() {
                adjacency.remove(&current);
            }
            // Remove the reverse direction.
            if let Some(back) = adjacency.get_mut(&next) {
                if let Some(pos) = back.iter().position(|&e| e == current) {
                    back.swap_remove(pos);
                }
                if back.is_empty() {
                    adjacency.remove(&next);
                }
            }
            path.push(next);
            current = next;
        }
        polylines.push(path.into_iter().map(&edge_point).collect());
    }
    polylines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{discretize, OscillatorParams};
    use crate::pseudospectra::field::{compute_field, ComplexWindow};
    use num_complex::Complex;

    fn scalar_field(nx: usize, ny: usize) -> PseudospectrumField<f64> {
        // Field of the 1×1 operator [[2]]: σ_min(z) = |2 − z|.
        let op = discretize(&OscillatorParams::new(Complex::new(1.0, 5.0)).unwrap(), 2, 1.0)
            .unwrap();
        let window = ComplexWindow::new(0.5, 3.5, -1.5, 1.5, nx, ny).unwrap();
        compute_field(&op, &window).unwrap()
    }

    #[test]
    fn scalar_level_set_is_a_circle() {
        let field = scalar_field(41, 41);
        let sets = contours(&field, &[0.5]).unwrap();
        let polys = &sets[0].polylines;
        assert_eq!(polys.len(), 1, "expected a single closed contour");
        let poly = &polys[0];
        assert!(poly.len() > 8);
        let (dre, dim) = field.window().spacing();
        let cell = dre.max(dim);
        for &(re, im) in poly {
            let r = ((re - 2.0).powi(2) + im * im).sqrt();
            assert!((r - 0.5).abs() <= 2.0 * cell, "radius {r}");
        }
        // Closed: endpoints coincide.
        let first = poly.first().unwrap();
        let last = poly.last().unwrap();
        assert!((first.0 - last.0).abs() < 1e-12 && (first.1 - last.1).abs() < 1e-12);
    }

    #[test]
    fn level_above_field_gives_window_rectangle() {
        let field = scalar_field(11, 11);
        let huge = 1e6;
        let sets = contours(&field, &[huge]).unwrap();
        assert_eq!(sets[0].polylines.len(), 1);
        let rect = &sets[0].polylines[0];
        assert_eq!(rect.len(), 5);
        assert_eq!(rect[0], (0.5, -1.5));
        assert_eq!(rect[2], (3.5, 1.5));
    }

    #[test]
    fn empty_level_set_is_valid() {
        // Even grid counts keep z=2 off the sampling grid, so every sampled
        // σ_min stays above the level.
        let field = scalar_field(10, 10);
        let sets = contours(&field, &[1e-9]).unwrap();
        assert!(sets[0].polylines.is_empty());
    }

    #[test]
    fn levels_must_descend_and_be_positive() {
        let field = scalar_field(5, 5);
        assert!(contours(&field, &[]).is_err());
        assert!(contours(&field, &[0.1, 0.5]).is_err());
        assert!(contours(&field, &[0.5, -0.1]).is_err());
    }

    #[test]
    fn inner_contour_lies_inside_outer_region() {
        let field = scalar_field(61, 61);
        let sets = contours(&field, &[0.8, 0.3]).unwrap();
        let inner = &sets[1].polylines;
        assert!(!inner.is_empty());
        // Every point of the ε=0.3 contour must satisfy σ ≤ 0.8 (nesting).
        for poly in inner {
            for &(re, im) in poly {
                let v = field.interpolate(Complex::new(re, im));
                assert!(v <= 0.8, "σ={v} at ({re},{im})");
            }
        }
    }
}
