//! Adaptive tensor-product quadrature over rectangles.
//!
//! Cells are estimated with a 3×3 tensor Gauss–Legendre rule and refined by
//! quadrisection; the Richardson-style error estimate is the difference
//! between a cell's rule value and the sum over its four children. Traversal
//! and summation order are fixed, so results are deterministic.

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Tolerances and refinement budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub max_depth: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            max_depth: 12,
            rel_tol: 1e-6,
            abs_tol: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn new(max_depth: usize, rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            max_depth,
            rel_tol,
            abs_tol,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::NonPositive {
                name: "rel_tol",
                value: self.rel_tol,
            });
        }
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::NonPositive {
                name: "abs_tol",
                value: self.abs_tol,
            });
        }
        Ok(())
    }
}

/// Values that can be accumulated by the quadrature (scalars and vectors).
pub trait QuadValue: Copy {
    const ZERO: Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    const ZERO: Self = 0.0;
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline]
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Vec2 {
    const ZERO: Self = Vec2::ZERO;
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline]
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Quadrature value with its accumulated error estimate and evaluation count.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 3-point Gauss-Legendre nodes/weights on [-1, 1].
const GL_NODES: [f64; 3] = [-0.7745966692414834, 0.0, 0.7745966692414834];
const GL_WEIGHTS: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    depth: usize,
}

fn rule<T: QuadValue>(f: &mut impl FnMut(f64, f64) -> T, c: &Cell, evals: &mut usize) -> T {
    let hx = 0.5 * (c.x1 - c.x0);
    let hy = 0.5 * (c.y1 - c.y0);
    let cx = 0.5 * (c.x0 + c.x1);
    let cy = 0.5 * (c.y0 + c.y1);
    let mut acc = T::ZERO;
    for (xi, wi) in GL_NODES.iter().zip(GL_WEIGHTS) {
        for (yj, wj) in GL_NODES.iter().zip(GL_WEIGHTS) {
            acc = acc.add(f(cx + hx * xi, cy + hy * yj).scale(wi * wj));
        }
    }
    *evals += 9;
    acc.scale(hx * hy)
}

/// Adaptively integrate `f` over the rectangle [x0, x1] × [y0, y1].
///
/// Fails with `QuadratureNotConverged` when the accumulated error estimate
/// of depth-exhausted cells exceeds max(abs_tol, rel_tol·|value|).
pub fn adaptive_quad_2d<T: QuadValue>(
    mut f: impl FnMut(f64, f64) -> T,
    x_range: (f64, f64),
    y_range: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    spec.validate()?;
    let total_area = (x_range.1 - x_range.0) * (y_range.1 - y_range.0);
    if !(total_area.is_finite() && total_area > 0.0) {
        return Err(Error::NonPositive {
            name: "quadrature domain area",
            value: total_area,
        });
    }

    let root = Cell {
        x0: x_range.0,
        x1: x_range.1,
        y0: y_range.0,
        y1: y_range.1,
        depth: 0,
    };
    let mut evals = 0usize;
    let root_value = rule(&mut f, &root, &mut evals);
    // Coarse magnitude scale for apportioning the local tolerance.
    let scale = root_value.magnitude().max(spec.abs_tol);

    let mut value = T::ZERO;
    let mut err_total = 0.0;
    let mut stack = vec![(root, root_value)];
    while let Some((cell, coarse)) = stack.pop() {
        let xm = 0.5 * (cell.x0 + cell.x1);
        let ym = 0.5 * (cell.y0 + cell.y1);
        let children = [
            Cell { x0: cell.x0, x1: xm, y0: cell.y0, y1: ym, depth: cell.depth + 1 },
            Cell { x0: xm, x1: cell.x1, y0: cell.y0, y1: ym, depth: cell.depth + 1 },
            Cell { x0: cell.x0, x1: xm, y0: ym, y1: cell.y1, depth: cell.depth + 1 },
            Cell { x0: xm, x1: cell.x1, y0: ym, y1: cell.y1, depth: cell.depth + 1 },
        ];
        let fine: Vec<T> = children.iter().map(|c| rule(&mut f, c, &mut evals)).collect();
        let refined = fine.iter().fold(T::ZERO, |a, &b| a.add(b));
        let diff = refined.add(coarse.scale(-1.0)).magnitude();

        let cell_area = (cell.x1 - cell.x0) * (cell.y1 - cell.y0);
        let local_tol =
            (spec.abs_tol + spec.rel_tol * scale) * (cell_area / total_area).max(f64::MIN_POSITIVE);

        if diff <= local_tol || cell.depth >= spec.max_depth {
            value = value.add(refined);
            err_total += diff;
        } else {
            for (c, v) in children.into_iter().zip(fine) {
                stack.push((c, v));
            }
        }
    }

    let tolerance = spec.abs_tol.max(spec.rel_tol * value.magnitude());
    if err_total > tolerance {
        return Err(Error::QuadratureNotConverged {
            estimate: err_total,
            tolerance,
        });
    }
    Ok(QuadResult {
        value,
        error_estimate: err_total,
        evaluations: evals,
    })
}

/// Integrate `f(point)` over the disk of radius `radius` centered at
/// `center`, in polar coordinates (the Jacobian is applied internally).
pub fn integrate_disk<T: QuadValue>(
    mut f: impl FnMut(Vec2) -> T,
    center: Vec2,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    adaptive_quad_2d(
        |rho, theta| {
            let p = center + rho * Vec2::from_angle(theta);
            f(p).scale(rho)
        },
        (0.0, radius),
        (0.0, std::f64::consts::TAU),
        spec,
    )
}
