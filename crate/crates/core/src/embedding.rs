//! The embedding `z(x) = g(x) + i h(x)` of the compactified real line onto
//! the ellipse `Omega`.
//!
//! With `u = x^2` the components are rational with the common denominator
//! `D(x) = a^2 + (b^2 - 2a)x^2 + (1 - 2b)x^4 + x^6`, which also factors as
//! `x^2 (x^2 - b)^2 + (x^2 - a)^2` and is therefore strictly positive for
//! every real `x` once `a != b`. The exceptional points use closed-form
//! values: `z(+-sqrt(b)) = -b` and `z(inf) = 1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_complex::Complex64;
// required for the float math methods without std; test and dev builds
// link std, whose inherent methods shadow the trait and make this "unused"
#[allow(unused_imports)]
use num_traits::Float;

use crate::ratmap::{ExtReal, Params};
use crate::{poly, Error, Result};

/// Points claimed to sit on `Omega` must have residual below this before
/// angle or arc logic applies.
pub const ON_ELLIPSE_TOL: f64 = 1e-6;

/// Match tolerance for preimage solving, `|z(x) - w| < PREIMAGE_TOL`.
pub const PREIMAGE_TOL: f64 = 1e-8;

/// The ellipse `Omega`: center `((1-b)/2, 0)`, horizontal semi-axis
/// `(1+b)/2`, vertical semi-axis `(1+a)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaEllipse {
    pub center_x: f64,
    pub rx: f64,
    pub ry: f64,
}

impl OmegaEllipse {
    /// The point at parameter angle `t` (axis-frame convention).
    pub fn point(&self, t: f64) -> Complex64 {
        Complex64::new(self.center_x + self.rx * t.cos(), self.ry * t.sin())
    }

    /// `((Re w - cx)/rx)^2 + (Im w / ry)^2 - 1`.
    pub fn residual(&self, w: Complex64) -> f64 {
        let du = (w.re - self.center_x) / self.rx;
        let dv = w.im / self.ry;
        du * du + dv * dv - 1.0
    }

    /// Axis-frame angle in `[0, 2pi)`, counterclockwise increasing.
    pub fn angle_of(&self, w: Complex64) -> Result<f64> {
        let res = self.residual(w);
        if res.abs() >= ON_ELLIPSE_TOL {
            let mut msg = String::new();
            let _ = write!(msg, "point ({}, {}) off Omega, residual {res}", w.re, w.im);
            return Err(Error::Domain(msg));
        }
        let t = f64::atan2(w.im / self.ry, (w.re - self.center_x) / self.rx);
        Ok(if t < 0.0 {
            t + 2.0 * core::f64::consts::PI
        } else {
            t
        })
    }

    /// The four vertices: `(1, 0)`, `(-b, 0)` horizontally and
    /// `(cx, +-(1+a)/2)` vertically.
    pub fn vertices(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.center_x + self.rx, 0.0),
            Complex64::new(self.center_x - self.rx, 0.0),
            Complex64::new(self.center_x, self.ry),
            Complex64::new(self.center_x, -self.ry),
        ]
    }
}

/// The ellipse `Omega` for a parameter pair.
pub fn omega(p: &Params) -> OmegaEllipse {
    OmegaEllipse {
        center_x: 0.5 * (1.0 - p.b()),
        rx: 0.5 * (1.0 + p.b()),
        ry: 0.5 * (1.0 + p.a()),
    }
}

/// Ascending coefficients (in `u = x^2`) of the numerator of `g`.
pub(crate) fn g_num_coeffs(p: &Params) -> [f64; 4] {
    let (a, b) = (p.a(), p.b());
    [-a * a * b, (2.0 * a + b) * b, -3.0 * b, 1.0]
}

/// Ascending coefficients (in `u = x^2`) of the common denominator `D`.
pub(crate) fn denom_coeffs(p: &Params) -> [f64; 4] {
    let (a, b) = (p.a(), p.b());
    [a * a, b * b - 2.0 * a, 1.0 - 2.0 * b, 1.0]
}

/// `(g(x), h(x))` for finite `x`.
///
/// `h` also admits the factored form `-(a+1) x (x^2-a)(x^2-b) / D(x)`, and
/// `D` the factored form `x^2 (x^2-b)^2 + (x^2-a)^2`; both agree with the
/// expanded evaluation to rounding.
pub fn gh_eval(p: &Params, x: f64) -> (f64, f64) {
    let (a, b) = (p.a(), p.b());
    let u = x * x;
    let d = poly::eval(&denom_coeffs(p), u);
    let g = poly::eval(&g_num_coeffs(p), u) / d;
    let h = (a + 1.0) * (-a * b * x + (a + b) * x * u - x * u * u) / d;
    (g, h)
}

/// The embedding `z` on the compactified line.
///
/// The exceptional points take their closed-form limits: `z(inf) = 1` and
/// `z(+-sqrt(b)) = -b` exactly.
pub fn z_eval(p: &Params, x: ExtReal) -> Complex64 {
    match x {
        ExtReal::Infinity => Complex64::new(1.0, 0.0),
        ExtReal::Finite(v) => {
            if p.is_pole(v) {
                return Complex64::new(-p.b(), 0.0);
            }
            let (g, h) = gh_eval(p, v);
            Complex64::new(g, h)
        }
    }
}

/// Residual of `w` against `Omega(p)`.
pub fn omega_residual(p: &Params, w: Complex64) -> f64 {
    omega(p).residual(w)
}

/// Canonical angle of an on-ellipse point.
pub fn angle_of(p: &Params, w: Complex64) -> Result<f64> {
    omega(p).angle_of(w)
}

/// Images of the distinguished points of `f` on `Omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexImages {
    /// Image of the solutions of `f(x) = x`: `(1-b)/2 - i(1+a)/2`.
    pub fix_plus: Complex64,
    /// Image of the solutions of `f(x) = -x`: `(1-b)/2 + i(1+a)/2`.
    pub fix_minus: Complex64,
    /// Image of the poles and of the origin: `-b`.
    pub pole_img: Complex64,
    /// Image of the zeros of `f` and of infinity: `1`.
    pub zero_img: Complex64,
}

pub fn vertex_images(p: &Params) -> VertexImages {
    let re = 0.5 * (1.0 - p.b());
    let im = 0.5 * (1.0 + p.a());
    VertexImages {
        fix_plus: Complex64::new(re, -im),
        fix_minus: Complex64::new(re, im),
        pole_img: Complex64::new(-p.b(), 0.0),
        zero_img: Complex64::new(1.0, 0.0),
    }
}

/// The real shift-coincidence points, where `z(x + 1) = z(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftPoints {
    /// Real solutions among the four radical sign combinations, ascending.
    pub xs: Vec<f64>,
    /// How many of the four sign combinations were complex and dropped.
    pub complex_dropped: usize,
}

/// Evaluates `x = (-1 +- sqrt(1 + 6a - 2b +- 2 sqrt(4a + 9a^2 - 10ab + b^2)))/2`
/// for all four sign combinations, keeping the real ones.
///
/// Each surviving value is Gauss-Newton polished on the residual
/// `z(x+1) - z(x)`, which protects the half-power sensitivity of the outer
/// radical near zero.
pub fn shift_points(p: &Params) -> ShiftPoints {
    let (a, b) = (p.a(), p.b());
    let inner = 4.0 * a + 9.0 * a * a - 10.0 * a * b + b * b;
    let mut xs = Vec::new();
    let mut dropped = 0usize;
    if inner < 0.0 {
        return ShiftPoints {
            xs,
            complex_dropped: 4,
        };
    }
    let sq_inner = inner.sqrt();
    for inner_sign in [1.0, -1.0] {
        let outer_arg = 1.0 + 6.0 * a - 2.0 * b + 2.0 * inner_sign * sq_inner;
        if outer_arg < 0.0 {
            dropped += 2;
            continue;
        }
        let sq_outer = outer_arg.sqrt();
        for outer_sign in [1.0, -1.0] {
            let x0 = 0.5 * (-1.0 + outer_sign * sq_outer);
            xs.push(polish_shift_point(p, x0));
        }
    }
    xs.sort_by(|u, v| u.partial_cmp(v).unwrap());
    ShiftPoints {
        xs,
        complex_dropped: dropped,
    }
}

fn shift_residual(p: &Params, x: f64) -> Complex64 {
    z_eval(p, ExtReal::Finite(x + 1.0)) - z_eval(p, ExtReal::Finite(x))
}

fn polish_shift_point(p: &Params, mut x: f64) -> f64 {
    let step = 1e-7 * (1.0 + x.abs());
    for _ in 0..4 {
        let r = shift_residual(p, x);
        if r.norm() < 1e-13 {
            break;
        }
        let dr = (shift_residual(p, x + step) - shift_residual(p, x - step)) / (2.0 * step);
        let denom = dr.norm_sqr();
        if denom == 0.0 {
            break;
        }
        let delta = (dr.conj() * r).re / denom;
        if !delta.is_finite() {
            break;
        }
        x -= delta;
    }
    x
}

/// All `x` in `[lo, hi]` with `|z(x) - w| <` [`PREIMAGE_TOL`], ascending.
///
/// Works in `u = x^2`: matching the real part reduces to a cubic
/// `g_num(u) - Re(w) D(u) = 0`; the sign of `h` then filters the `+-sqrt(u)`
/// candidates. Requires `w` to lie on `Omega` (residual below
/// [`ON_ELLIPSE_TOL`]).
pub fn z_preimages(p: &Params, w: Complex64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if lo >= hi {
        return Err(Error::Domain(String::from("empty interval: lo >= hi")));
    }
    let res = omega_residual(p, w);
    if res.abs() >= ON_ELLIPSE_TOL {
        let mut msg = String::new();
        let _ = write!(msg, "preimage target off Omega, residual {res}");
        return Err(Error::Domain(msg));
    }
    let gn = g_num_coeffs(p);
    let dn = denom_coeffs(p);
    let cubic: Vec<f64> = (0..4).map(|k| gn[k] - w.re * dn[k]).collect();
    let mut out: Vec<f64> = Vec::new();
    for u in poly::real_roots(&cubic) {
        if u < -1e-10 {
            continue;
        }
        let root = u.max(0.0).sqrt();
        let candidates = if root == 0.0 {
            alloc::vec![0.0]
        } else {
            alloc::vec![-root, root]
        };
        for c in candidates {
            let x = polish_preimage(p, w.re, c);
            if x < lo - 1e-12 || x > hi + 1e-12 {
                continue;
            }
            if (z_eval(p, ExtReal::Finite(x)) - w).norm() < PREIMAGE_TOL {
                out.push(x);
            }
        }
    }
    out.sort_by(|u, v| u.partial_cmp(v).unwrap());
    out.dedup_by(|u, v| (*u - *v).abs() <= 1e-10 * (1.0 + v.abs()));
    Ok(out)
}

/// Newton polish in `x` on `F(x) = g_num(x^2) - Re(w) D(x^2)`.
fn polish_preimage(p: &Params, re_w: f64, mut x: f64) -> f64 {
    let gn = g_num_coeffs(p);
    let dn = denom_coeffs(p);
    let f = |u: f64| poly::eval(&gn, u) - re_w * poly::eval(&dn, u);
    let gn_d = poly::deriv(&gn);
    let dn_d = poly::deriv(&dn);
    let fu = |u: f64| poly::eval(&gn_d, u) - re_w * poly::eval(&dn_d, u);
    for _ in 0..3 {
        let u = x * x;
        let df = 2.0 * x * fu(u);
        if df == 0.0 {
            break;
        }
        let step = f(u) / df;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}
