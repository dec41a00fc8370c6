//! The thirteen partition points `x1 < ... < x13`, the interval partition of
//! the real line, the arc partition of `Omega`, and the involutory transfer
//! matrix `T14`.
//!
//! Nine of the points are the critical points of `g` (the zeros and poles of
//! `f`, the origin, and two turning pairs `+-sqrt(u-)`, `+-sqrt(u+)`); the
//! remaining four are coincidence points defined by equality of `z`-values:
//! `z(x1) = z(x11)`, `z(x6) = z(x10)`, `z(x8) = z(x4)`, `z(x13) = z(x3)`.
//!
//! Arc orientation: the interval-to-arc sign table says `z` traverses `J_i`
//! counterclockwise (`+1`) or clockwise (`-1`) as `x` increases. Arc
//! membership uses the arc actually swept, i.e. for `-1` entries the
//! counterclockwise arc from `z(x_i)` back to `z(x_{i-1})`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_complex::Complex64;
// required for the float math methods without std; test and dev builds
// link std, whose inherent methods shadow the trait and make this "unused"
#[allow(unused_imports)]
use num_traits::Float;

use crate::embedding::{self, z_eval};
use crate::poly;
use crate::ratmap::{ExtReal, Params};
use crate::{Error, Result};

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// `|x - x_i| < BOUNDARY_REL_TOL * max(1, |x_i|)` flags a boundary hit:
/// orbits that analytically hit partition points are reported, not binned.
pub const BOUNDARY_REL_TOL: f64 = 1e-10;

/// Residual tolerance for the coincidence identities.
pub const COINCIDENCE_TOL: f64 = 1e-8;

/// Residual tolerance for `|g'|` at the returned critical points.
pub const G_PRIME_TOL: f64 = 1e-9;

/// Angular slack when testing closed-arc membership.
pub const ARC_ANGLE_TOL: f64 = 1e-9;

/// Interval symbol over the alphabet `{I1, ..., I14}` with boundary markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolI {
    /// Open interval `I_i`, `1 <= i <= 14`.
    Interval(u8),
    /// Exact hit (within tolerance) of the partition point `x_i`.
    Boundary(u8),
    /// The point at infinity: the `I14`/`I1` junction.
    Junction,
}

impl SymbolI {
    pub fn index(self) -> Option<u8> {
        match self {
            SymbolI::Interval(i) => Some(i),
            _ => None,
        }
    }
}

/// How a partition point was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    GCritical,
    Coincidence,
}

/// What the point is, dynamically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantic {
    ZeroOfF,
    Pole,
    Origin,
    Turning,
    Coincidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Role {
    pub class: PointClass,
    pub semantic: Semantic,
}

/// The ordered partition data: `xs[i-1]` holds `x_i` in the conventional
/// 1-based numbering, and `ss[i-1] = z(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionPoints {
    pub xs: Vec<f64>,
    pub ss: Vec<Complex64>,
    pub roles: Vec<Role>,
}

impl PartitionPoints {
    /// 1-based accessor matching the `x1..x13` numbering.
    pub fn x(&self, i: usize) -> f64 {
        self.xs[i - 1]
    }

    /// 1-based accessor for `S_i = z(x_i)`.
    pub fn s(&self, i: usize) -> Complex64 {
        self.ss[i - 1]
    }
}

/// The nine solutions of `g'(x) = 0`, ascending:
/// `{-sqrt(u+), -sqrt(a), -sqrt(b), -sqrt(u-), 0, sqrt(u-), sqrt(b), sqrt(a), sqrt(u+)}`.
///
/// The numerator of `dg/du` is built by structured convolution of the even
/// numerator `P` and denominator `Q` of `g`; the known roots `u = a` and
/// `u = b` are deflated and the residual polynomial solved by bracketing.
pub fn g_critical_points(p: &Params) -> Result<Vec<f64>> {
    let gn = embedding::g_num_coeffs(p);
    let dn = embedding::denom_coeffs(p);
    let r = conv_sub(&poly::deriv(&gn), &dn, &gn, &poly::deriv(&dn));
    let r = poly::trim(&r).to_vec();
    let scale = r.iter().fold(0.0f64, |m, &v| m.max(v.abs()));

    let (q1, rem1) = poly::deflate(&r, p.a());
    if rem1.abs() > 1e-8 * scale.max(1.0) {
        return Err(structural(p, "u = a is not a root of the g' numerator"));
    }
    let (q2, rem2) = poly::deflate(&q1, p.b());
    if rem2.abs() > 1e-8 * scale.max(1.0) {
        return Err(structural(p, "u = b is not a root of the g' numerator"));
    }

    let upper = (4.0 * p.a()).max(4.0 * (1.0 + p.a() + p.b()));
    let mut residual_roots: Vec<f64> = poly::real_roots(&q2)
        .into_iter()
        .filter(|&u| u > 1e-12 && u <= upper)
        .collect();
    residual_roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-10 * (1.0 + y.abs()));
    if residual_roots.len() != 2 {
        let mut msg = String::new();
        let _ = write!(
            msg,
            "expected exactly 2 positive residual roots of the g' numerator, found {} (a={}, b={})",
            residual_roots.len(),
            p.a(),
            p.b()
        );
        return Err(Error::Structural(msg));
    }

    let (sa, sb) = (p.a().sqrt(), p.b().sqrt());
    let (tm, tp) = (residual_roots[0].sqrt(), residual_roots[1].sqrt());
    let mut xs = alloc::vec![-tp, -sa, -sb, -tm, 0.0, tm, sb, sa, tp];
    for x in xs.iter_mut() {
        *x = polish_on_g_prime(&r, *x);
    }
    xs.sort_by(|u, v| u.partial_cmp(v).unwrap());

    // backward-error check on the numerator N(x) = x R(x^2): the raw
    // quotient g' = 2x R / Q^2 blows up as b -> a, where Q nearly vanishes
    for &x in &xs {
        let u = x * x;
        let num = x * poly::eval(&r, u);
        let mut mag = 0.0f64;
        let mut upow = 1.0f64;
        for &c in &r {
            mag += (c * upow).abs();
            upow *= u;
        }
        let rel = num.abs() / (1.0 + x.abs() * mag);
        if rel > G_PRIME_TOL {
            let mut msg = String::new();
            let _ = write!(
                msg,
                "normalized g' numerator residual {rel} at x={x} above tolerance (a={}, b={})",
                p.a(),
                p.b()
            );
            return Err(Error::Numerical(msg));
        }
    }
    Ok(xs)
}

/// `a(u) c(u) - b(u) d(u)` by convolution, ascending coefficients.
fn conv_sub(a: &[f64], c: &[f64], b: &[f64], d: &[f64]) -> Vec<f64> {
    let n = (a.len() + c.len()).max(b.len() + d.len());
    let mut out = alloc::vec![0.0; n.saturating_sub(1)];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            out[i + j] += ai * cj;
        }
    }
    for (i, &bi) in b.iter().enumerate() {
        for (j, &dj) in d.iter().enumerate() {
            out[i + j] -= bi * dj;
        }
    }
    out
}

/// Newton polish on `N(x) = x R(x^2)`; `N'(x) = R(u) + 2u R'(u)`.
fn polish_on_g_prime(r: &[f64], mut x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let rd = poly::deriv(r);
    for _ in 0..3 {
        let u = x * x;
        let n = x * poly::eval(r, u);
        let dn = poly::eval(r, u) + 2.0 * u * poly::eval(&rd, u);
        if dn == 0.0 {
            break;
        }
        let step = n / dn;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

fn structural(p: &Params, what: &str) -> Error {
    let mut msg = String::new();
    let _ = write!(msg, "{what} (a={}, b={})", p.a(), p.b());
    Error::Structural(msg)
}

/// The four coincidence points `(x3, x4, x10, x11)` given the nine critical
/// points, each found as the unique new preimage of the matching `z`-value:
/// `x3, x4` in `(-sqrt(a), -sqrt(b))` and `x10, x11` in `(sqrt(b), sqrt(a))`.
pub fn coincidence_points(p: &Params, nine: &[f64]) -> Result<[f64; 4]> {
    if nine.len() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: nine.len(),
        });
    }
    // nine = [x1, x2, x5, x6, x7, x8, x9, x12, x13]
    let (x1, x6, x8, x13) = (nine[0], nine[3], nine[5], nine[8]);
    let (sb, sa) = (p.b().sqrt(), p.a().sqrt());
    let x11 = unique_preimage(p, z_eval(p, x1.into()), sb, sa)?;
    let x10 = unique_preimage(p, z_eval(p, x6.into()), sb, sa)?;
    let x4 = unique_preimage(p, z_eval(p, x8.into()), -sa, -sb)?;
    let x3 = unique_preimage(p, z_eval(p, x13.into()), -sa, -sb)?;
    Ok([x3, x4, x10, x11])
}

fn unique_preimage(p: &Params, target: Complex64, lo: f64, hi: f64) -> Result<f64> {
    // exclude the bracketing critical points themselves
    let margin = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
    let candidates = embedding::z_preimages(p, target, lo + margin, hi - margin)?;
    if candidates.len() != 1 {
        let mut msg = String::new();
        let _ = write!(
            msg,
            "expected one coincidence preimage in ({lo}, {hi}), found {} (a={}, b={})",
            candidates.len(),
            p.a(),
            p.b()
        );
        return Err(Error::Structural(msg));
    }
    Ok(candidates[0])
}

/// Builds and validates the full thirteen-point partition.
///
/// Validation failures are reported as structural errors, never silently
/// repaired.
pub fn build_partition(p: &Params) -> Result<PartitionPoints> {
    let nine = g_critical_points(p)?;
    let four = coincidence_points(p, &nine)?;
    let (sa, sb) = (p.a().sqrt(), p.b().sqrt());

    let mut tagged: Vec<(f64, Role)> = Vec::with_capacity(13);
    for &x in &nine {
        let semantic = if x == 0.0 {
            Semantic::Origin
        } else if (x.abs() - sa).abs() < 1e-9 * (1.0 + sa) {
            Semantic::ZeroOfF
        } else if (x.abs() - sb).abs() < 1e-9 * (1.0 + sb) {
            Semantic::Pole
        } else {
            Semantic::Turning
        };
        tagged.push((
            x,
            Role {
                class: PointClass::GCritical,
                semantic,
            },
        ));
    }
    for &x in &four {
        tagged.push((
            x,
            Role {
                class: PointClass::Coincidence,
                semantic: Semantic::Coincidence,
            },
        ));
    }
    tagged.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());

    let xs: Vec<f64> = tagged.iter().map(|t| t.0).collect();
    let roles: Vec<Role> = tagged.iter().map(|t| t.1).collect();
    let ss: Vec<Complex64> = xs.iter().map(|&x| z_eval(p, x.into())).collect();
    let pp = PartitionPoints { xs, ss, roles };

    for w in pp.xs.windows(2) {
        if w[0] >= w[1] {
            return Err(structural(p, "partition points not strictly increasing"));
        }
    }
    let expected = [
        Semantic::Turning,
        Semantic::ZeroOfF,
        Semantic::Coincidence,
        Semantic::Coincidence,
        Semantic::Pole,
        Semantic::Turning,
        Semantic::Origin,
        Semantic::Turning,
        Semantic::Pole,
        Semantic::Coincidence,
        Semantic::Coincidence,
        Semantic::ZeroOfF,
        Semantic::Turning,
    ];
    for (i, want) in expected.iter().enumerate() {
        if pp.roles[i].semantic != *want {
            return Err(structural(p, "partition points in unexpected order"));
        }
    }
    // coincidence identities
    for (i, j) in [(1usize, 11usize), (6, 10), (8, 4), (13, 3)] {
        let res = (pp.s(i) - pp.s(j)).norm();
        if res >= COINCIDENCE_TOL {
            let mut msg = String::new();
            let _ = write!(
                msg,
                "coincidence identity z(x{i}) = z(x{j}) failed, residual {res} (a={}, b={})",
                p.a(),
                p.b()
            );
            return Err(Error::Structural(msg));
        }
    }
    // mirror antisymmetry (g even, h odd)
    for i in 1..=13usize {
        let mirror = pp.x(14 - i);
        if (pp.x(i) + mirror).abs() > 1e-9 * (1.0 + mirror.abs()) {
            return Err(structural(p, "partition points not antisymmetric"));
        }
    }
    Ok(pp)
}

/// The interval partition function `pa`, with boundary detection.
pub fn classify_pa(pp: &PartitionPoints, x: ExtReal) -> SymbolI {
    let v = match x {
        ExtReal::Infinity => return SymbolI::Junction,
        ExtReal::Finite(v) => v,
    };
    for (idx, &xi) in pp.xs.iter().enumerate() {
        if (v - xi).abs() < BOUNDARY_REL_TOL * xi.abs().max(1.0) {
            return SymbolI::Boundary(idx as u8 + 1);
        }
    }
    let pos = pp.xs.iter().take_while(|&&xi| xi < v).count();
    SymbolI::Interval(pos as u8 + 1)
}

/// Orientation of `z` over each interval: `+1` means the arc `J_i` is swept
/// counterclockwise as `x` increases, `-1` clockwise.
pub fn sign_table() -> [i8; 14] {
    [1, -1, -1, -1, -1, -1, 1, 1, -1, -1, -1, -1, -1, 1]
}

/// The involutory transfer matrix `T14 = diag(N7, N7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferMatrix {
    pub signs: [i8; 14],
}

impl TransferMatrix {
    /// `T * T` computed in integer arithmetic.
    pub fn is_involutory(&self) -> bool {
        self.signs.iter().all(|&s| i32::from(s) * i32::from(s) == 1)
    }

    pub fn det(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).product()
    }

    pub fn trace(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).sum()
    }

    /// The diagonal of the `N7` block (first seven entries).
    pub fn n7_diagonal(&self) -> [i8; 7] {
        let mut out = [0i8; 7];
        out.copy_from_slice(&self.signs[..7]);
        out
    }
}

pub fn t_matrix() -> TransferMatrix {
    TransferMatrix {
        signs: sign_table(),
    }
}

/// Counterclockwise arc endpoints `(start, span)` for each `J_i`, oriented so
/// that the stored arc is the one actually swept by `z` (see module docs).
pub fn arc_table(p: &Params, pp: &PartitionPoints) -> Result<[(f64, f64); 14]> {
    let o = embedding::omega(p);
    let mut angles = [0.0f64; 15]; // angles[0] = z(inf), angles[i] = angle(S_i)
    for i in 1..=13 {
        angles[i] = o.angle_of(pp.s(i))?;
    }
    angles[14] = TAU; // z(inf) again, as the closing endpoint
    let signs = sign_table();
    let mut out = [(0.0, 0.0); 14];
    for i in 1..=14usize {
        let (raw_start, raw_end) = (angles[i - 1], angles[i]);
        let (t0, t1) = if signs[i - 1] > 0 {
            (raw_start, raw_end)
        } else {
            (raw_end, raw_start)
        };
        let span = wrap_tau(t1 - t0);
        out[i - 1] = (wrap_tau(t0), span);
    }
    Ok(out)
}

fn wrap_tau(t: f64) -> f64 {
    let r = t % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn on_ccw_arc(start: f64, span: f64, t: f64, tol: f64) -> bool {
    let d = wrap_tau(t - start);
    d <= span + tol || d >= TAU - tol
}

/// All arc indices `i` whose closed arc `J_i` contains the on-ellipse point
/// `w`. Generally non-singleton: distinct intervals map onto the same arc.
pub fn arc_membership(p: &Params, pp: &PartitionPoints, w: Complex64) -> Result<BTreeSet<u8>> {
    let t = embedding::angle_of(p, w)?;
    let arcs = arc_table(p, pp)?;
    let mut out = BTreeSet::new();
    for (i, &(start, span)) in arcs.iter().enumerate() {
        if on_ccw_arc(start, span, t, ARC_ANGLE_TOL) {
            out.insert(i as u8 + 1);
        }
    }
    Ok(out)
}

/// Aggregated consistency report for a built partition.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub ordering_ok: bool,
    /// Residuals of z(x1)=z(x11), z(x6)=z(x10), z(x8)=z(x4), z(x13)=z(x3).
    pub coincidence_residuals: [f64; 4],
    pub coincidence_ok: bool,
    /// Intervals whose sampled image left the closed arc `J_i`.
    pub arc_coverage_failures: Vec<u8>,
    /// Intervals whose sampled image angle was not strictly monotone in the
    /// direction of the sign table.
    pub orientation_failures: Vec<u8>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.ordering_ok
            && self.coincidence_ok
            && self.arc_coverage_failures.is_empty()
            && self.orientation_failures.is_empty()
    }
}

/// Number of interior samples per interval in [`verify_partition`].
pub const VERIFY_SAMPLES: usize = 32;

/// Re-checks ordering, coincidence identities, arc coverage and orientation
/// on a (possibly tampered) partition. Failures are reported, not fixed.
pub fn verify_partition(p: &Params, pp: &PartitionPoints) -> PartitionReport {
    let ordering_ok = pp.xs.len() == 13 && pp.xs.windows(2).all(|w| w[0] < w[1]);

    let pairs = [(1usize, 11usize), (6, 10), (8, 4), (13, 3)];
    let mut coincidence_residuals = [0.0f64; 4];
    for (k, (i, j)) in pairs.iter().enumerate() {
        coincidence_residuals[k] = (pp.s(*i) - pp.s(*j)).norm();
    }
    let coincidence_ok = coincidence_residuals.iter().all(|&r| r < COINCIDENCE_TOL);

    let mut arc_coverage_failures = Vec::new();
    let mut orientation_failures = Vec::new();
    if ordering_ok {
        if let Ok(arcs) = arc_table(p, pp) {
            let signs = sign_table();
            let window = (pp.x(13) - pp.x(1)).max(2.0);
            let o = embedding::omega(p);
            for i in 1..=14usize {
                let (lo, hi) = match i {
                    1 => (pp.x(1) - window, pp.x(1)),
                    14 => (pp.x(13), pp.x(13) + window),
                    _ => (pp.x(i - 1), pp.x(i)),
                };
                let mut prev: Option<f64> = None;
                let mut monotone = true;
                let mut covered = true;
                for k in 0..VERIFY_SAMPLES {
                    let x = lo + (hi - lo) * (k as f64 + 0.5) / VERIFY_SAMPLES as f64;
                    let t = match o.angle_of(z_eval(p, x.into())) {
                        Ok(t) => t,
                        Err(_) => {
                            covered = false;
                            break;
                        }
                    };
                    let (start, span) = arcs[i - 1];
                    if !on_ccw_arc(start, span, t, ARC_ANGLE_TOL) {
                        covered = false;
                    }
                    if let Some(tp) = prev {
                        // unwrap the step into (-pi, pi]
                        let mut dt = t - tp;
                        if dt > core::f64::consts::PI {
                            dt -= TAU;
                        } else if dt < -core::f64::consts::PI {
                            dt += TAU;
                        }
                        let expect_positive = signs[i - 1] > 0;
                        if (dt > 0.0) != expect_positive || dt == 0.0 {
                            monotone = false;
                        }
                    }
                    prev = Some(t);
                }
                if !covered {
                    arc_coverage_failures.push(i as u8);
                }
                if !monotone {
                    orientation_failures.push(i as u8);
                }
            }
        } else {
            arc_coverage_failures.extend(1..=14u8);
        }
    }

    PartitionReport {
        ordering_ok,
        coincidence_residuals,
        coincidence_ok,
        arc_coverage_failures,
        orientation_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p42() -> Params {
        Params::new(4.0, 2.0).unwrap()
    }

    #[test]
    fn nine_critical_points_42() {
        let p = p42();
        let nine = g_critical_points(&p).unwrap();
        assert_eq!(nine.len(), 9);
        // closed-form oracle: residual quadratic u^2 + (b-3a)u + ab
        let disc = (3.0 * 4.0 - 2.0f64) * (3.0 * 4.0 - 2.0) - 4.0 * 4.0 * 2.0;
        let um = 0.5 * ((3.0 * 4.0 - 2.0) - disc.sqrt());
        let up = 0.5 * ((3.0 * 4.0 - 2.0) + disc.sqrt());
        let expected = [
            -up.sqrt(),
            -2.0,
            -2.0f64.sqrt(),
            -um.sqrt(),
            0.0,
            um.sqrt(),
            2.0f64.sqrt(),
            2.0,
            up.sqrt(),
        ];
        for (got, want) in nine.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        // closed under negation
        for &x in &nine {
            assert!(nine.iter().any(|&y| (y + x).abs() < 1e-10));
        }
    }

    #[test]
    fn nine_critical_points_counts() {
        for (a, b) in [(4.0, 2.0), (4.01, 2.5)] {
            let p = Params::new(a, b).unwrap();
            assert_eq!(g_critical_points(&p).unwrap().len(), 9);
        }
    }

    #[test]
    fn coincidence_antisymmetry() {
        let p = p42();
        let nine = g_critical_points(&p).unwrap();
        let [x3, x4, x10, x11] = coincidence_points(&p, &nine).unwrap();
        assert!((x3 + x11).abs() < 1e-10);
        assert!((x4 + x10).abs() < 1e-10);
        let (sa, sb) = (2.0, 2.0f64.sqrt());
        for x in [x3, x4, x10, x11] {
            assert!(x.abs() > sb && x.abs() < sa);
        }
        // the defining identity for x11
        let x1 = nine[0];
        assert!((z_eval(&p, x11.into()) - z_eval(&p, x1.into())).norm() < COINCIDENCE_TOL);
    }

    #[test]
    fn build_partition_42() {
        let p = p42();
        let pp = build_partition(&p).unwrap();
        assert_eq!(pp.xs.len(), 13);
        assert_eq!(pp.x(7), 0.0);
        assert!((pp.x(5) + 2.0f64.sqrt()).abs() < 1e-12);
        assert!((pp.x(12) - 2.0).abs() < 1e-12);
        // S2 = S12 = (1,0); S5 = S7 = S9 = (-2,0)
        for i in [2, 12] {
            assert!((pp.s(i) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
        for i in [5, 7, 9] {
            assert!((pp.s(i) - Complex64::new(-2.0, 0.0)).norm() < 1e-9);
        }
        // conjugate pairs
        for i in [1usize, 6] {
            assert!((pp.s(i) - pp.s(14 - i).conj()).norm() < 1e-9);
        }
    }

    #[test]
    fn build_partition_401() {
        let pp = build_partition(&Params::new(4.01, 2.5).unwrap()).unwrap();
        assert_eq!(pp.xs.len(), 13);
        assert!(pp.xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classify_midpoints_and_boundaries() {
        let p = p42();
        let pp = build_partition(&p).unwrap();
        let mid = 0.5 * (pp.x(6) + pp.x(7));
        assert_eq!(classify_pa(&pp, mid.into()), SymbolI::Interval(7));
        assert_eq!(classify_pa(&pp, 0.0.into()), SymbolI::Boundary(7));
        assert_eq!(
            classify_pa(&pp, (pp.x(13) + 1.0).into()),
            SymbolI::Interval(14)
        );
        assert_eq!(
            classify_pa(&pp, (pp.x(1) - 1.0).into()),
            SymbolI::Interval(1)
        );
        assert_eq!(classify_pa(&pp, ExtReal::Infinity), SymbolI::Junction);
    }

    #[test]
    fn sign_table_entries() {
        let s = sign_table();
        assert_eq!(s[0], 1);
        assert_eq!(s[3], -1);
        assert_eq!(s[7], 1);
        assert_eq!(s[13], 1);
    }

    #[test]
    fn transfer_matrix_properties() {
        let t = t_matrix();
        assert!(t.is_involutory());
        assert_eq!(t.det(), 1);
        assert_eq!(t.trace(), -6); // 2 * trace(N7) = 2 * (-3)
        assert_eq!(t.n7_diagonal(), [1, -1, -1, -1, -1, -1, 1]);
        assert_eq!(&t.signs[..7], &t.signs[7..]); // diag(N7, N7)
    }

    #[test]
    fn arc_membership_shared_endpoint() {
        let p = p42();
        let pp = build_partition(&p).unwrap();
        let set = arc_membership(&p, &pp, Complex64::new(1.0, 0.0)).unwrap();
        assert!(set.contains(&1) && set.contains(&14));
        let mid = 0.5 * (pp.x(6) + pp.x(7));
        let set = arc_membership(&p, &pp, z_eval(&p, mid.into())).unwrap();
        assert!(set.contains(&7));
        assert!(arc_membership(&p, &pp, Complex64::new(9.0, 9.0)).is_err());
    }

    #[test]
    fn verify_passes_for_both_showcase_pairs() {
        for (a, b) in [(4.0, 2.0), (4.01, 2.5)] {
            let p = Params::new(a, b).unwrap();
            let pp = build_partition(&p).unwrap();
            let report = verify_partition(&p, &pp);
            assert!(report.passed(), "{report:?} for a={a}, b={b}");
        }
    }

    #[test]
    fn verify_flags_tampered_partition() {
        let p = p42();
        let mut pp = build_partition(&p).unwrap();
        pp.xs.swap(3, 9);
        let report = verify_partition(&p, &pp);
        assert!(!report.ordering_ok);
        assert!(!report.passed());
    }
}
