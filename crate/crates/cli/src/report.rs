//! JSON report builders for the CLI commands.

use num_complex::Complex64;
use serde::Serialize;

use nrdyn_core::embedding::{omega, omega_residual, shift_points, vertex_images, z_eval};
use nrdyn_core::numrange::{
    coefficient_matrix, ellipse_contains, numerical_range_2x2, resultant_matrix,
    support_function,
};
use nrdyn_core::partition::{
    build_partition, sign_table, t_matrix, verify_partition, PointClass, Semantic, SymbolI,
};
use nrdyn_core::ratmap::{fixed_points, ExtReal, Params};
use nrdyn_core::symdyn::{
    detect_periodicity, itinerary_arc, itinerary_interval, Itinerary, PeriodicityReport, SymbolJ,
};
use nrdyn_core::Result;

#[derive(Serialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct ParamsOut {
    pub a: f64,
    pub b: f64,
}

fn params_out(p: &Params) -> ParamsOut {
    ParamsOut { a: p.a(), b: p.b() }
}

#[derive(Serialize)]
pub struct OmegaOut {
    pub center_x: f64,
    pub rx: f64,
    pub ry: f64,
}

#[derive(Serialize)]
pub struct EllipseOut {
    pub center: C,
    pub semi_axis_major: f64,
    pub semi_axis_minor: f64,
    pub axis_angle: f64,
    pub foci: [C; 2],
}

#[derive(Serialize)]
pub struct MatrixOut {
    pub det_b: f64,
    pub a2_range: EllipseOut,
}

#[derive(Serialize)]
pub struct PartitionOut {
    pub xs: Vec<f64>,
    pub ss: Vec<C>,
    pub roles: Vec<String>,
}

#[derive(Serialize)]
pub struct TransferOut {
    pub signs: Vec<i8>,
    pub involutory: bool,
    pub det: i64,
    pub trace: i64,
}

#[derive(Serialize)]
pub struct VertexImagesOut {
    pub fix_plus: C,
    pub fix_minus: C,
    pub pole_img: C,
    pub zero_img: C,
}

#[derive(Serialize)]
pub struct ShiftPointsOut {
    pub xs: Vec<f64>,
    pub complex_dropped: usize,
    pub residuals: Vec<f64>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub params: ParamsOut,
    pub omega: OmegaOut,
    pub matrices: MatrixOut,
    pub partition: PartitionOut,
    pub t14: TransferOut,
    pub vertex_images: VertexImagesOut,
    pub shift_points: ShiftPointsOut,
}

fn role_name(class: PointClass, semantic: Semantic) -> String {
    let sem = match semantic {
        Semantic::ZeroOfF => "zero",
        Semantic::Pole => "pole",
        Semantic::Origin => "origin",
        Semantic::Turning => "turning",
        Semantic::Coincidence => "coincidence",
    };
    let cls = match class {
        PointClass::GCritical => "critical",
        PointClass::Coincidence => "coincidence",
    };
    format!("{cls}:{sem}")
}

pub fn analyze(p: &Params) -> Result<AnalysisReport> {
    let om = omega(p);
    let a2 = coefficient_matrix(p.a(), p.b());
    let range = numerical_range_2x2(&a2)?;
    let det_b = resultant_matrix(p.a(), p.b()).det().re;
    let pp = build_partition(p)?;
    let t = t_matrix();
    let v = vertex_images(p);
    let sp = shift_points(p);
    let residuals = sp
        .xs
        .iter()
        .map(|&x| (z_eval(p, (x + 1.0).into()) - z_eval(p, x.into())).norm())
        .collect();
    Ok(AnalysisReport {
        params: params_out(p),
        omega: OmegaOut {
            center_x: om.center_x,
            rx: om.rx,
            ry: om.ry,
        },
        matrices: MatrixOut {
            det_b,
            a2_range: EllipseOut {
                center: range.center.into(),
                semi_axis_major: range.semi_axis_u,
                semi_axis_minor: range.semi_axis_v,
                axis_angle: range.axis_angle,
                foci: [range.foci.0.into(), range.foci.1.into()],
            },
        },
        partition: PartitionOut {
            xs: pp.xs.clone(),
            ss: pp.ss.iter().map(|&z| z.into()).collect(),
            roles: pp
                .roles
                .iter()
                .map(|r| role_name(r.class, r.semantic))
                .collect(),
        },
        t14: TransferOut {
            signs: sign_table().to_vec(),
            involutory: t.is_involutory(),
            det: t.det(),
            trace: t.trace(),
        },
        vertex_images: VertexImagesOut {
            fix_plus: v.fix_plus.into(),
            fix_minus: v.fix_minus.into(),
            pole_img: v.pole_img.into(),
            zero_img: v.zero_img.into(),
        },
        shift_points: ShiftPointsOut {
            xs: sp.xs,
            complex_dropped: sp.complex_dropped,
            residuals,
        },
    })
}

#[derive(Serialize)]
pub struct VerificationOut {
    pub ordering_ok: bool,
    pub coincidence_residuals: Vec<f64>,
    pub coincidence_ok: bool,
    pub arc_coverage_failures: Vec<u8>,
    pub orientation_failures: Vec<u8>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct PartitionReportOut {
    pub params: ParamsOut,
    pub partition: PartitionOut,
    pub verification: VerificationOut,
}

pub fn partition(p: &Params) -> Result<PartitionReportOut> {
    let pp = build_partition(p)?;
    let rep = verify_partition(p, &pp);
    Ok(PartitionReportOut {
        params: params_out(p),
        partition: PartitionOut {
            xs: pp.xs.clone(),
            ss: pp.ss.iter().map(|&z| z.into()).collect(),
            roles: pp
                .roles
                .iter()
                .map(|r| role_name(r.class, r.semantic))
                .collect(),
        },
        verification: VerificationOut {
            ordering_ok: rep.ordering_ok,
            coincidence_residuals: rep.coincidence_residuals.to_vec(),
            coincidence_ok: rep.coincidence_ok,
            arc_coverage_failures: rep.arc_coverage_failures.clone(),
            orientation_failures: rep.orientation_failures.clone(),
            passed: rep.passed(),
        },
    })
}

fn ext_real_json(x: ExtReal) -> serde_json::Value {
    match x {
        ExtReal::Finite(v) => serde_json::json!(v),
        ExtReal::Infinity => serde_json::json!("inf"),
    }
}

fn symbol_i_name(s: SymbolI) -> String {
    match s {
        SymbolI::Interval(i) => format!("I{i}"),
        SymbolI::Boundary(i) => format!("x{i}"),
        SymbolI::Junction => String::from("junction"),
    }
}

fn symbol_j_name(s: SymbolJ) -> String {
    match s {
        SymbolJ::Arc(i) => format!("J{i}"),
        SymbolJ::Boundary(i) => format!("S{i}"),
        SymbolJ::Junction => String::from("junction"),
    }
}

#[derive(Serialize)]
pub struct PeriodicityOut {
    pub eventually_periodic: bool,
    pub preperiod: usize,
    pub period: usize,
    pub numeric: Option<(usize, usize)>,
    pub symbolic: Option<(usize, usize)>,
    pub tolerance: f64,
}

fn periodicity_out(rep: &PeriodicityReport) -> PeriodicityOut {
    PeriodicityOut {
        eventually_periodic: rep.eventually_periodic,
        preperiod: rep.preperiod,
        period: rep.period,
        numeric: rep.numeric,
        symbolic: rep.symbolic,
        tolerance: rep.tolerance,
    }
}

#[derive(Serialize)]
pub struct EncodingOut {
    pub symbols: Vec<String>,
    pub periodicity: PeriodicityOut,
}

#[derive(Serialize)]
pub struct ItineraryReport {
    pub params: ParamsOut,
    pub x0: serde_json::Value,
    pub n: usize,
    pub orbit: Vec<serde_json::Value>,
    pub pole_hits: Vec<usize>,
    pub interval: EncodingOut,
    pub arc: EncodingOut,
    pub encodings_agree: bool,
}

pub fn itinerary(p: &Params, x0: ExtReal, n: usize, tol: f64) -> Result<ItineraryReport> {
    let pp = build_partition(p)?;
    let iti: Itinerary<SymbolI> = itinerary_interval(p, &pp, x0, n);
    let itj: Itinerary<SymbolJ> = itinerary_arc(p, &pp, x0, n);
    let rep_i = detect_periodicity(&iti.source_orbit, &iti.symbols, tol);
    let rep_j = detect_periodicity(&itj.source_orbit, &itj.symbols, tol);
    let agree = rep_i.eventually_periodic == rep_j.eventually_periodic
        && rep_i.period == rep_j.period;
    Ok(ItineraryReport {
        params: params_out(p),
        x0: ext_real_json(x0),
        n,
        orbit: iti.source_orbit.points.iter().map(|&x| ext_real_json(x)).collect(),
        pole_hits: iti.source_orbit.pole_hits.clone(),
        interval: EncodingOut {
            symbols: iti.symbols.iter().map(|&s| symbol_i_name(s)).collect(),
            periodicity: periodicity_out(&rep_i),
        },
        arc: EncodingOut {
            symbols: itj.symbols.iter().map(|&s| symbol_j_name(s)).collect(),
            periodicity: periodicity_out(&rep_j),
        },
        encodings_agree: agree,
    })
}

#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub params: ParamsOut,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Small deterministic generator (xorshift64*) so the check command needs no
/// extra dependency; quality is ample for sampling test points.
struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> Self {
        XorShift(seed.wrapping_mul(2685821657736338717).max(1))
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(2685821657736338717)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

pub fn check(p: &Params, tol_ellipse: f64, seed: u64) -> CheckReport {
    let mut rng = XorShift::new(seed ^ 0x9e3779b97f4a7c15);
    let mut checks = Vec::new();
    let a2 = coefficient_matrix(p.a(), p.b());
    let b4 = resultant_matrix(p.a(), p.b());
    let range = numerical_range_2x2(&a2).ok();

    // ellipse membership of embedded points
    let mut worst = 0.0f64;
    let mut xs: Vec<ExtReal> = (0..2000)
        .map(|_| ExtReal::Finite(rng.uniform(-40.0, 40.0)))
        .collect();
    xs.extend([
        ExtReal::Finite(0.0),
        ExtReal::Finite(p.b().sqrt()),
        ExtReal::Finite(-p.b().sqrt()),
        ExtReal::Infinity,
    ]);
    for &x in &xs {
        worst = worst.max(omega_residual(p, z_eval(p, x)));
    }
    checks.push(CheckResult {
        name: String::from("ellipse-membership"),
        passed: worst <= tol_ellipse,
        worst,
        tolerance: tol_ellipse,
    });

    // conjugation symmetry z(-x) = conj(z(x))
    let mut worst = 0.0f64;
    for &x in &xs {
        if let ExtReal::Finite(v) = x {
            let w = z_eval(p, v.into());
            worst = worst.max((z_eval(p, (-v).into()) - w.conj()).norm() / (1.0 + w.norm()));
        }
    }
    checks.push(CheckResult {
        name: String::from("conjugation-symmetry"),
        passed: worst <= 1e-9,
        worst,
        tolerance: 1e-9,
    });

    // support-function equality of the 4x4 and 2x2 ranges
    let mut worst = 0.0f64;
    for k in 0..360 {
        let theta = std::f64::consts::TAU * k as f64 / 360.0;
        worst = worst.max((support_function(&b4, theta) - support_function(&a2, theta)).abs());
    }
    checks.push(CheckResult {
        name: String::from("support-function-equality"),
        passed: worst <= 1e-9,
        worst,
        tolerance: 1e-9,
    });

    // containment of the embedded curve in the numerical range
    let (contained, worst) = match &range {
        Some(e) => {
            let mut failures = 0usize;
            for &x in &xs {
                if !ellipse_contains(e, z_eval(p, x), 1e-8) {
                    failures += 1;
                }
            }
            (failures == 0, failures as f64)
        }
        None => (false, f64::NAN),
    };
    checks.push(CheckResult {
        name: String::from("curve-inside-range"),
        passed: contained,
        worst,
        tolerance: 0.0,
    });

    // extremum lemmas: images of the f(x) = +-x solutions
    let v = vertex_images(p);
    let mut worst = 0.0f64;
    for (sign, target) in [(1i8, v.fix_plus), (-1, v.fix_minus)] {
        for x in fixed_points(p, sign) {
            worst = worst.max((z_eval(p, x.into()) - target).norm());
        }
    }
    checks.push(CheckResult {
        name: String::from("vertex-images"),
        passed: worst <= 1e-9,
        worst,
        tolerance: 1e-9,
    });

    // partition construction and verification
    let (part_ok, worst) = match build_partition(p) {
        Ok(pp) => {
            let rep = verify_partition(p, &pp);
            let w = rep
                .coincidence_residuals
                .iter()
                .fold(0.0f64, |m, &r| m.max(r));
            (rep.passed(), w)
        }
        Err(_) => (false, f64::NAN),
    };
    checks.push(CheckResult {
        name: String::from("partition"),
        passed: part_ok,
        worst,
        tolerance: 1e-8,
    });

    // transfer-matrix integer identities
    let t = t_matrix();
    let t_ok = t.is_involutory() && t.det() == 1 && t.trace() == -6;
    checks.push(CheckResult {
        name: String::from("transfer-matrix"),
        passed: t_ok,
        worst: if t_ok { 0.0 } else { 1.0 },
        tolerance: 0.0,
    });

    // shift identity at the radical points
    let sp = shift_points(p);
    let mut worst = 0.0f64;
    for &x in &sp.xs {
        worst = worst.max((z_eval(p, (x + 1.0).into()) - z_eval(p, x.into())).norm());
    }
    checks.push(CheckResult {
        name: String::from("shift-identity"),
        passed: worst <= 1e-9,
        worst,
        tolerance: 1e-9,
    });

    let passed = checks.iter().all(|c| c.passed);
    CheckReport {
        params: params_out(p),
        seed,
        checks,
        passed,
    }
}
