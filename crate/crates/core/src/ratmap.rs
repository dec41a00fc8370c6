//! The real rational map `f(x) = (x^2 - a)/(x^2 - b)` on the one-point
//! compactification of the reals.
//!
//! `f` is total on `ExtReal`: the poles `x = +-sqrt(b)` go to infinity and
//! infinity goes to `1` (ratio of the leading coefficients). Huge finite
//! values are never clamped; only an exact infinity takes the compactified
//! branch, since `f(huge) ~ 1` is the correct dynamics.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::{poly, Error, Result};

/// A finite point is treated as a pole hit iff `|x^2 - b| < POLE_REL_TOL * max(1, b)`.
/// Exact hits occur only from exact inputs; near-misses legitimately produce
/// huge finite values that the map then sends near 1.
pub const POLE_REL_TOL: f64 = 1e-13;

/// Residual tolerance for the fixed-point solver.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// The parameter pair `(a, b)` with `a > b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    a: f64,
    b: f64,
}

impl Params {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a > b && b > 0.0 {
            Ok(Params { a, b })
        } else {
            Err(Error::InvalidParams { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub(crate) fn pole_tol(&self) -> f64 {
        POLE_REL_TOL * self.b.max(1.0)
    }

    /// True iff `x^2` is within pole tolerance of `b`.
    pub fn is_pole(&self, x: f64) -> bool {
        (x * x - self.b).abs() < self.pole_tol()
    }
}

/// A point of the one-point compactification `R u {inf}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    /// Bounded chordal-like metric `|x - y| / (1 + |xy|)` under which the
    /// point at infinity participates symmetrically.
    pub fn dist(self, other: ExtReal) -> f64 {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => 0.0,
            (ExtReal::Finite(x), ExtReal::Infinity)
            | (ExtReal::Infinity, ExtReal::Finite(x)) => {
                if x == 0.0 {
                    f64::infinity()
                } else {
                    1.0 / x.abs()
                }
            }
            (ExtReal::Finite(x), ExtReal::Finite(y)) => (x - y).abs() / (1.0 + (x * y).abs()),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::Finite(v)
    }
}

/// One application of `f`, total on `ExtReal`.
pub fn eval_map(p: &Params, x: ExtReal) -> ExtReal {
    match x {
        ExtReal::Infinity => ExtReal::Finite(1.0),
        ExtReal::Finite(v) => {
            let den = v * v - p.b;
            if den.abs() < p.pole_tol() {
                ExtReal::Infinity
            } else {
                ExtReal::Finite((v * v - p.a) / den)
            }
        }
    }
}

/// Zeros, poles and critical points of `f` in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialPoints {
    pub zeros: [f64; 2],
    pub poles: [f64; 2],
    /// `f'(x) = 2x(a - b)/(x^2 - b)^2` vanishes only at the origin; infinity
    /// is critical by the degree-2 symmetry.
    pub critical: (f64, ExtReal),
}

pub fn special_points(p: &Params) -> SpecialPoints {
    let sa = p.a.sqrt();
    let sb = p.b.sqrt();
    SpecialPoints {
        zeros: [-sa, sa],
        poles: [-sb, sb],
        critical: (0.0, ExtReal::Infinity),
    }
}

/// All real solutions of `f(x) = sign * x`, ascending.
///
/// These are the real roots of `x^3 - sign x^2 - b x + sign a`, found by
/// bracketed bisection over a Cauchy bound and Newton-polished; every output
/// satisfies its defining equation to [`FIXED_POINT_TOL`].
pub fn fixed_points(p: &Params, sign: i8) -> Vec<f64> {
    let s = if sign >= 0 { 1.0 } else { -1.0 };
    // ascending coefficients of x^3 - s x^2 - b x + s a
    let coeffs = [s * p.a, -p.b, -s, 1.0];
    let mut roots = poly::real_roots(&coeffs);
    roots.retain(|&x| {
        let fx = eval_map(p, ExtReal::Finite(x));
        matches!(fx, ExtReal::Finite(v) if (v - s * x).abs() < FIXED_POINT_TOL)
    });
    roots
}

/// A forward orbit under `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub start: ExtReal,
    /// `points[k+1] = eval_map(points[k])`; length `n + 1`.
    pub points: Vec<ExtReal>,
    /// Indices of points that landed on a pole `+-sqrt(b)`.
    pub pole_hits: Vec<usize>,
}

/// Iterates `f` for `n` steps from `x0`.
pub fn iterate(p: &Params, x0: ExtReal, n: usize) -> Orbit {
    let mut points = Vec::with_capacity(n + 1);
    let mut pole_hits = Vec::new();
    points.push(x0);
    for k in 0..=n {
        if let ExtReal::Finite(v) = points[k] {
            if p.is_pole(v) {
                pole_hits.push(k);
            }
        }
        if k < n {
            let next = eval_map(p, points[k]);
            points.push(next);
        }
    }
    Orbit {
        start: x0,
        points,
        pole_hits,
    }
}

/// True iff `y` belongs to the range of `f` over the compactified line:
/// `(-inf, 1) u [a/b, +inf)`, with the value 1 attained only at infinity.
pub fn range_membership(p: &Params, y: f64) -> bool {
    y < 1.0 || y >= p.a / p.b
}
