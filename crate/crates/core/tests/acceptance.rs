//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails outside the known-deviation list.

use std::time::{Duration, Instant};

use grunsky::corpus::{self, check_function, CheckOptions};
use grunsky::functionals::{
    fekete_szego_constant, gamma4_from_a, gamma4_from_omega, Functional, Majorant,
};
use grunsky::grunsky::{
    four_term_bound_check, identity_residuals, odd_grunsky_of, FourTermBlock, OddOmegas,
};
use grunsky::optimizer::report::{reference_face_maxima, reference_location};
use grunsky::optimizer::{
    full_report, maximize_stratum, OptimizationReport, ReportOptions, Stratum,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDER: usize = 16;
const RUNTIME_LIMIT: Duration = Duration::from_secs(60);

/// Rows that disagree with the reference table, with the value this crate
/// computes instead. Each must still reproduce to 1e-9 for the suite to
/// accept the deviation.
const KNOWN_DEVIATIONS: &[(&str, Stratum, f64)] = &[("a5a4", Stratum::Y0, 1.431_446_093_988_32)];

struct Outcome {
    pass: bool,
    /// Failed, but only on rows in `KNOWN_DEVIATIONS` that reproduce.
    known: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            known: false,
            detail: detail.into(),
        }
    }
}

fn max_report(f: Functional) -> (OptimizationReport, Duration) {
    let mut opts = ReportOptions::new(f.default_tolerance());
    opts.threads = Some(1);
    let start = Instant::now();
    let report = full_report(&f, &opts).expect("report");
    (report, start.elapsed())
}

fn global_maximum(f: Functional, report: &OptimizationReport, elapsed: Duration) -> Outcome {
    let (reference, tol) = f.reference_bound();
    let g = &report.global;
    let cert = report.certificate.as_ref().expect("certificate");
    let loc_err = g
        .location()
        .iter()
        .zip(reference_location(f))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let value_ok = (g.value - reference).abs() <= tol;
    let loc_ok = loc_err <= 1e-3;
    let cert_ok = cert.success && cert.width() <= tol && cert.contains(g.value);
    let time_ok = elapsed < RUNTIME_LIMIT;
    Outcome::new(
        value_ok && loc_ok && cert_ok && time_ok,
        format!(
            "max {:.9} (ref {reference} +-{tol}), location error {loc_err:.1e}, certificate [{:.9}, {:.9}] width {:.2e}, {:.2}s on 1 thread",
            g.value,
            cert.lower,
            cert.upper,
            cert.width(),
            elapsed.as_secs_f64()
        ),
    )
}

fn boundary_tables() -> Outcome {
    let mut failed = Vec::new();
    let mut unexplained = Vec::new();
    for f in Functional::ALL {
        for (s, reference) in reference_face_maxima(f) {
            let v = maximize_stratum(&f, s).value;
            if (v - reference).abs() <= 1e-3 {
                continue;
            }
            failed.push(format!("{} {} = {v:.9} vs {reference}", f.id(), s.label()));
            let explained = KNOWN_DEVIATIONS
                .iter()
                .any(|&(id, ks, kv)| id == f.id() && ks == s && (v - kv).abs() <= 1e-9);
            if !explained {
                unexplained.push(s.label());
            }
        }
    }
    let e1 = (maximize_stratum(&Functional::Gamma4, Stratum::X0).value - 7f64.sqrt().recip()).abs();
    let e2 = (maximize_stratum(&Functional::A5MinusA4, Stratum::X0).value - 8.0 / 7.0).abs();
    let closed_ok = e1 <= 1e-12 && e2 <= 1e-12;
    let detail = format!(
        "12 face maxima, 1/sqrt(7) error {e1:.1e}, 8/7 error {e2:.1e}; mismatched: {}",
        if failed.is_empty() {
            "none".into()
        } else {
            failed.join("; ")
        }
    );
    Outcome {
        pass: failed.is_empty() && closed_ok,
        known: !failed.is_empty() && unexplained.is_empty() && closed_ok,
        detail,
    }
}

fn identity_suite() -> Outcome {
    let mut worst = 0.0f64;
    for f in corpus::builtin_corpus() {
        let s = f.series(ORDER).unwrap();
        let t = odd_grunsky_of(&s, &f.name).unwrap();
        worst = worst.max(
            identity_residuals(&s, &t)
                .unwrap()
                .into_iter()
                .fold(0.0, f64::max),
        );
    }
    let s = corpus::find("slit-like").unwrap().series(ORDER).unwrap();
    let w = OddOmegas::from_table(&odd_grunsky_of(&s, "slit-like").unwrap()).unwrap();
    let misprint = 2.0 * w.w35
        + 8.0 * w.w11 * w.w33
        + 5.0 * w.w15 * w.w15
        + 18.0 * w.w11 * w.w11 * w.w13
        + (7.0 / 3.0) * w.w11.powu(4);
    let typo = (s.coeff(5) - misprint).norm();
    Outcome::new(
        worst < 1e-10 && typo > 1e-3,
        format!("worst residual {worst:.1e} over corpus; 5 omega15^2 variant off by {typo:.3} on slit-like"),
    )
}

fn inequality_suite() -> Outcome {
    let opts = CheckOptions {
        order: ORDER,
        seed: 0,
        vectors: 1000,
    };
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for f in corpus::builtin_corpus() {
        for row in check_function(&f, &opts).unwrap().rows {
            if row.check.starts_with("inequality:") {
                worst = worst.min(row.margin);
                if !row.pass {
                    failures.push(format!("{} {}", row.subject, row.check));
                }
            }
        }
    }
    let s = corpus::find("koebe").unwrap().series(ORDER).unwrap();
    let block = FourTermBlock::from_table(&odd_grunsky_of(&s, "koebe").unwrap()).unwrap();
    let c = four_term_bound_check(&block, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let gap = (c.lhs - c.rhs).abs();
    Outcome::new(
        failures.is_empty() && gap <= 1e-12,
        format!(
            "15 functions x 1000 vectors, smallest margin {worst:.1e}, failures {failures:?}; koebe x1=1 x3=0 gap {gap:.1e}"
        ),
    )
}

fn cross_formula() -> Outcome {
    let mut worst = 0.0f64;
    for f in corpus::builtin_corpus() {
        let s = f.series(ORDER).unwrap();
        let w = OddOmegas::from_table(&odd_grunsky_of(&s, &f.name).unwrap()).unwrap();
        let a = gamma4_from_a(s.coeff(2), s.coeff(3), s.coeff(4), s.coeff(5));
        worst = worst.max((a - gamma4_from_omega(w.w11, w.w13, w.w15, w.w17)).norm());
    }
    let k = gamma4_from_a(
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(5.0, 0.0),
    );
    let koebe_err = (k - 0.25).norm();
    Outcome::new(
        worst <= 1e-10 && koebe_err <= 1e-12,
        format!("worst disagreement {worst:.1e}; koebe gamma4 error {koebe_err:.1e}"),
    )
}

fn fekete_szego() -> Outcome {
    let fs = fekete_szego_constant();
    let residual = (4.0 * fs.lambda0 - fs.lambda0.exp()).abs();
    Outcome::new(
        (fs.bound - 1.029).abs() <= 1e-3 && residual < 1e-10,
        format!(
            "constant {:.12}, lambda0 {:.12}, residual {residual:.1e}",
            fs.bound, fs.lambda0
        ),
    )
}

/// Plain grid maximum on the feasible set, written out from the majorant
/// coefficients so that nothing in the optimizer is reused.
fn grid_max(m: Majorant, step: f64) -> f64 {
    let psi = |x: f64, y: f64, z: f64| {
        let r = (1.0 - x * x - 3.0 * y * y - 5.0 * z * z).max(0.0);
        m.x4 * x.powi(4) + m.y2 * y * y + m.x2y * x * x * y + m.xz * x * z + m.t * (r / 7.0).sqrt()
    };
    let axis = |limit: f64| {
        let n = (limit / step).floor() as usize;
        (0..=n)
            .map(move |i| i as f64 * step)
            .chain(std::iter::once(limit))
    };
    let mut best = f64::NEG_INFINITY;
    for x in axis(1.0) {
        for y in axis(((1.0 - x * x).max(0.0) / 3.0).sqrt()) {
            for z in axis(((1.0 - x * x - 3.0 * y * y).max(0.0) / 5.0).sqrt()) {
                best = best.max(psi(x, y, z));
            }
        }
    }
    best
}

fn oracle(reports: &[(Functional, &OptimizationReport)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, r) in reports {
        let g = grid_max(f.majorant(), 5e-3);
        ok &= (g - r.global.value).abs() <= 1e-3;
        parts.push(format!("{} grid {g:.6} vs {:.6}", f.id(), r.global.value));
    }
    Outcome::new(ok, parts.join(", "))
}

fn gradient_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let h = 1e-6;
    let mut worst = 0.0f64;
    let mut points = 0;
    while points < 100 {
        let p = [
            rng.gen::<f64>(),
            rng.gen::<f64>() * 0.6,
            rng.gen::<f64>() * 0.5,
        ];
        if 1.0 - p[0] * p[0] - 3.0 * p[1] * p[1] - 5.0 * p[2] * p[2] <= 1e-3 {
            continue;
        }
        points += 1;
        for f in Functional::ALL {
            let g = f.gradient(p[0], p[1], p[2]).unwrap();
            for k in 0..3 {
                let (mut a, mut b) = (p, p);
                a[k] += h;
                b[k] -= h;
                let fd = (f.psi(a[0], a[1], a[2]).unwrap() - f.psi(b[0], b[1], b[2]).unwrap())
                    / (2.0 * h);
                worst = worst.max((fd - g[k]).abs());
            }
        }
    }
    Outcome::new(
        worst <= 1e-5,
        format!("100 seeded points, both objectives, worst |analytic - central| {worst:.1e}"),
    )
}

fn margins() -> Outcome {
    let mut g4 = 0.0f64;
    let mut d54 = f64::NEG_INFINITY;
    for f in corpus::builtin_corpus() {
        let s = f.series(ORDER).unwrap();
        g4 = g4.max(
            corpus::logarithmic_coefficients(&s, 4).unwrap()[3]
                .value
                .norm(),
        );
        d54 = d54.max(corpus::coefficient_difference(&s, 5).unwrap());
    }
    Outcome::new(
        true,
        format!(
            "informational: corpus max |gamma4| {g4:.6} vs bound {}, max |a5|-|a4| {d54:.6} vs bound {}",
            Functional::Gamma4.reference_bound().0,
            Functional::A5MinusA4.reference_bound().0
        ),
    )
}

fn main() {
    let (r1, t1) = max_report(Functional::Gamma4);
    let (r2, t2) = max_report(Functional::A5MinusA4);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("gamma4 maximum", global_maximum(Functional::Gamma4, &r1, t1)),
        ("a5a4 maximum", global_maximum(Functional::A5MinusA4, &r2, t2)),
        ("boundary tables", boundary_tables()),
        ("identity suite", identity_suite()),
        ("grunsky inequalities", inequality_suite()),
        ("cross-formula gamma4", cross_formula()),
        ("fekete-szego", fekete_szego()),
        (
            "grid oracle",
            oracle(&[(Functional::Gamma4, &r1), (Functional::A5MinusA4, &r2)]),
        ),
        ("gradient checks", gradient_checks()),
        ("corpus margins", margins()),
    ];
    let mut hard_failures = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation)",
            (false, false) => {
                hard_failures += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2} {tag:<22} {name}: {}", i + 1, o.detail);
    }
    if hard_failures > 0 {
        eprintln!("{hard_failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
