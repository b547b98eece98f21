//! Frenet apparatus by Gram–Schmidt on successive derivatives.
//!
//! With `u_i` the Gram–Schmidt residual of `x^(i)` and `e_i = u_i / |u_i|`,
//! the only component of `e_i'` along `e_{i+1}` comes from `x^(i+1)`, so
//! `k_i = <e_i', e_{i+1}> / |x'| = |u_{i+1}| / (|u_i| |x'|)`.
//! The curvatures are therefore read off the pivot norms directly.

use serde::{Deserialize, Serialize};

use crate::curve::ParametricCurve;
use crate::error::{CurveError, Result};
use crate::linalg;

/// Relative pivot threshold: `|u_i| <= PIVOT_TOLERANCE * |x^(i)|` marks the
/// first `i` derivatives as linearly dependent.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrenetApparatus {
    pub t: f64,
    pub speed: f64,
    /// Orthonormal `e_1..e_r`.
    pub frame: Vec<Vec<f64>>,
    /// `k_1..k_{r-1}`; the last one is unsigned (the orientation of `e_r`
    /// follows `x^(r)`).
    pub curvatures: Vec<f64>,
}

/// Pivot norms and curvatures that survive degeneracy: curvatures past the
/// first vanishing pivot are reported as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub t: f64,
    pub speed: f64,
    pub pivots: Vec<f64>,
    pub curvatures: Vec<f64>,
    /// 1-based index of the first degenerate pivot.
    pub degenerate_at: Option<usize>,
}

impl CurvatureProfile {
    /// `k_index` (1-based), or zero when out of range.
    pub fn k(&self, index: usize) -> f64 {
        index
            .checked_sub(1)
            .and_then(|i| self.curvatures.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    /// `sqrt(k_{j-1}^2 + k_j^2 + k_{j+1}^2)`.
    pub fn mixed(&self, j: usize) -> f64 {
        let a = self.k(j - 1);
        let b = self.k(j);
        let c = self.k(j + 1);
        (a * a + b * b + c * c).sqrt()
    }
}

struct GramSchmidt {
    frame: Vec<Vec<f64>>,
    pivots: Vec<f64>,
    degenerate_at: Option<usize>,
}

fn gram_schmidt(derivs: &[Vec<f64>]) -> GramSchmidt {
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(derivs.len());
    let mut pivots = Vec::with_capacity(derivs.len());
    let mut degenerate_at = None;
    for (i, d) in derivs.iter().enumerate() {
        let mut u = d.clone();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for e in &frame {
                let c = linalg::dot(&u, e);
                linalg::sub_scaled(&mut u, c, e);
            }
        }
        let pivot = linalg::norm(&u);
        let reference = linalg::norm(d);
        if reference == 0.0 || pivot <= PIVOT_TOLERANCE * reference {
            degenerate_at = Some(i + 1);
            pivots.push(pivot);
            break;
        }
        u.iter_mut().for_each(|x| *x /= pivot);
        frame.push(u);
        pivots.push(pivot);
    }
    GramSchmidt {
        frame,
        pivots,
        degenerate_at,
    }
}

fn check_levels(curve: &ParametricCurve, levels: usize) -> Result<()> {
    if levels == 0 || levels > curve.dimension() {
        return Err(CurveError::InvalidArgument(format!(
            "frame levels {levels} must lie in 1..={}",
            curve.dimension()
        )));
    }
    Ok(())
}

/// Frenet frame `e_1..e_r` and curvatures `k_1..k_{r-1}` at `t`.
pub fn frenet_at(curve: &ParametricCurve, t: f64, levels: usize) -> Result<FrenetApparatus> {
    check_levels(curve, levels)?;
    let jet = curve.jet(t, levels)?;
    let gs = gram_schmidt(&jet[1..]);
    if let Some(level) = gs.degenerate_at {
        return Err(CurveError::DegenerateFrame {
            t,
            level,
            pivot: gs.pivots[level - 1],
        });
    }
    let speed = gs.pivots[0];
    let curvatures = gs
        .pivots
        .windows(2)
        .map(|w| w[1] / (w[0] * speed))
        .collect();
    Ok(FrenetApparatus {
        t,
        speed,
        frame: gs.frame,
        curvatures,
    })
}

/// Like [`frenet_at`] without the frame, and tolerant of degeneracy beyond
/// the first pivot. A vanishing speed is still an error.
pub fn curvature_profile(
    curve: &ParametricCurve,
    t: f64,
    levels: usize,
) -> Result<CurvatureProfile> {
    check_levels(curve, levels)?;
    let jet = curve.jet(t, levels)?;
    let gs = gram_schmidt(&jet[1..]);
    if gs.degenerate_at == Some(1) {
        return Err(CurveError::DegenerateFrame {
            t,
            level: 1,
            pivot: gs.pivots[0],
        });
    }
    let speed = gs.pivots[0];
    let mut curvatures = vec![0.0; levels - 1];
    let usable = gs.frame.len();
    for i in 1..usable {
        curvatures[i - 1] = gs.pivots[i] / (gs.pivots[i - 1] * speed);
    }
    Ok(CurvatureProfile {
        t,
        speed,
        pivots: gs.pivots,
        curvatures,
        degenerate_at: gs.degenerate_at,
    })
}

/// `max |<e_i, e_j> - delta_ij|`.
pub fn orthonormality_defect(frame: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in frame.iter().enumerate() {
        for (j, b) in frame.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((linalg::dot(a, b) - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle_in(dim: usize, r: f64) -> ParametricCurve {
        ParametricCurve::analytic(dim, 2.0 * PI, move |t, k| {
            (0..=k)
                .map(|j| {
                    let phase = t + j as f64 * PI / 2.0;
                    let mut v = vec![0.0; dim];
                    v[0] = r * phase.cos();
                    v[1] = r * phase.sin();
                    v
                })
                .collect()
        })
    }

    #[test]
    fn circle_of_radius_two() {
        let f = frenet_at(&circle_in(2, 2.0), 0.4, 2).unwrap();
        assert!((f.speed - 2.0).abs() < 1e-14);
        assert!((f.curvatures[0] - 0.5).abs() < 1e-14);
        assert!(orthonormality_defect(&f.frame) < 1e-14);
    }

    #[test]
    fn planar_circle_in_r4_is_degenerate_at_level_three() {
        let c = circle_in(4, 1.0);
        match frenet_at(&c, 0.3, 3) {
            Err(CurveError::DegenerateFrame { level, .. }) => assert_eq!(level, 3),
            other => panic!("expected degeneracy, got {other:?}"),
        }
        let p = curvature_profile(&c, 0.3, 4).unwrap();
        assert_eq!(p.degenerate_at, Some(3));
        assert!((p.k(1) - 1.0).abs() < 1e-14);
        assert_eq!(p.k(2), 0.0);
        assert_eq!(p.k(3), 0.0);
    }

    #[test]
    fn straight_line_has_zero_curvature_profile() {
        let line = ParametricCurve::analytic(3, 1.0, |t, k| {
            let mut jet = vec![vec![t, 2.0 * t, 0.0]];
            for j in 1..=k {
                jet.push(if j == 1 {
                    vec![1.0, 2.0, 0.0]
                } else {
                    vec![0.0; 3]
                });
            }
            jet
        });
        let p = curvature_profile(&line, 0.0, 3).unwrap();
        assert_eq!(p.degenerate_at, Some(2));
        assert_eq!(p.curvatures, vec![0.0, 0.0]);
    }

    #[test]
    fn stationary_point_is_an_error() {
        let point = ParametricCurve::analytic(2, 1.0, |_, k| vec![vec![0.0, 0.0]; k + 1]);
        assert!(curvature_profile(&point, 0.0, 2).is_err());
    }

    #[test]
    fn levels_are_bounded_by_dimension() {
        assert!(frenet_at(&circle_in(2, 1.0), 0.0, 3).is_err());
        assert!(frenet_at(&circle_in(2, 1.0), 0.0, 0).is_err());
    }

    #[test]
    fn helix_curvature_and_torsion() {
        // (a cos t, a sin t, b t): k1 = a/(a^2+b^2), k2 = b/(a^2+b^2)
        let (a, b) = (2.0_f64, 0.5_f64);
        let helix = ParametricCurve::analytic(3, 2.0 * PI, move |t, k| {
            (0..=k)
                .map(|j| {
                    let phase = t + j as f64 * PI / 2.0;
                    let z = match j {
                        0 => b * t,
                        1 => b,
                        _ => 0.0,
                    };
                    vec![a * phase.cos(), a * phase.sin(), z]
                })
                .collect()
        });
        let f = frenet_at(&helix, 1.1, 3).unwrap();
        let d = a * a + b * b;
        assert!((f.curvatures[0] - a / d).abs() < 1e-14);
        assert!((f.curvatures[1] - b / d).abs() < 1e-14);
    }
}
