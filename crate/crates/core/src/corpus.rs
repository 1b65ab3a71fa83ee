//! Univalent functions with closed-form coefficients, and the battery of
//! checks every member of the class must pass.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{
    a5_minus_a4_majorant, gamma4_from_a, gamma4_from_omega, Functional, GammaCoefficient,
};
use crate::grunsky::{
    cascade_bounds, compute_grunsky, four_term_bound_check, grunsky_quadratic_check,
    identity_residuals, odd_grunsky_of, FourTermBlock, OddOmegas, TestVector, IDENTITY_LABELS,
};
use crate::series::UniSeries;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 16;
/// Residual bound for the coefficient identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Slack on the truncated Grunsky inequalities.
pub const INEQUALITY_SLACK: f64 = 1e-12;
/// Slack on the cascade bounds and the majorant chains.
pub const CHAIN_SLACK: f64 = 1e-10;
/// Slack on the two proven bounds.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
enum Rule {
    Closed(fn(usize) -> f64),
    Rotated { base: fn(usize) -> f64, theta: f64 },
    Explicit(UniSeries),
}

/// A normalized function given by a rule for its Taylor coefficients.
#[derive(Clone, Debug)]
pub struct NamedFunction {
    pub name: String,
    pub formula: String,
    /// `true` for user-supplied coefficients whose univalence is not known.
    pub assumed_univalent: bool,
    /// `(|gamma_4|, |a_4|, |a_5|)` where known in closed form.
    pub known: Option<(f64, f64, f64)>,
    rule: Rule,
}

impl NamedFunction {
    /// Wraps a user series; the bounds only apply if it is univalent.
    pub fn from_series(name: &str, f: UniSeries) -> Result<Self> {
        if !f.is_normalized() {
            return Err(Error::Domain(format!(
                "{name}: coefficients must start 0, 1"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            formula: "user coefficients".into(),
            assumed_univalent: true,
            known: None,
            rule: Rule::Explicit(f),
        })
    }

    /// `a_n`, zero beyond an explicit series' truncation.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        match &self.rule {
            Rule::Closed(a) => Complex64::new(a(n), 0.0),
            // e^{-i theta} f(e^{i theta} z) has a_n e^{i (n-1) theta}
            Rule::Rotated { base, theta } => {
                if n == 0 {
                    Complex64::default()
                } else {
                    base(n) * Complex64::from_polar(1.0, (n - 1) as f64 * theta)
                }
            }
            Rule::Explicit(s) => s.coeff(n),
        }
    }

    /// Number of coefficients a file supplied; `None` for closed forms.
    pub fn given_order(&self) -> Option<usize> {
        match &self.rule {
            Rule::Explicit(s) => Some(s.order()),
            _ => None,
        }
    }

    /// Series truncated at `order`. A file is read as a polynomial, so
    /// coefficients past its last line are zero.
    pub fn series(&self, order: usize) -> Result<UniSeries> {
        Ok(UniSeries::from_fn(order, |n| self.coefficient(n)))
    }
}

fn koebe(n: usize) -> f64 {
    n as f64
}

fn half_plane(n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        1.0
    }
}

fn odd_koebe(n: usize) -> f64 {
    (n % 2) as f64
}

fn quadratic(n: usize) -> f64 {
    // 1/(1 - z + z^2) = (1 + z)/(1 + z^3): period 6 in the exponent
    if n == 0 {
        0.0
    } else {
        [1.0, 1.0, 0.0, -1.0, -1.0, 0.0][(n - 1) % 6]
    }
}

fn identity(n: usize) -> f64 {
    if n == 1 {
        1.0
    } else {
        0.0
    }
}

/// Name, formula, coefficient rule and the known `(|gamma_4|, |a_4|, |a_5|)`.
type Base = (
    &'static str,
    &'static str,
    fn(usize) -> f64,
    Option<(f64, f64, f64)>,
);

/// The built-in test functions, each followed by its rotations by `pi/4`
/// and `pi/2`.
pub fn builtin_corpus() -> Vec<NamedFunction> {
    let bases: [Base; 5] = [
        ("koebe", "z/(1-z)^2", koebe, Some((0.25, 4.0, 5.0))),
        ("slit-like", "z/(1-z)", half_plane, Some((0.125, 1.0, 1.0))),
        ("odd-koebe", "z/(1-z^2)", odd_koebe, Some((0.25, 0.0, 1.0))),
        ("starlike-quad", "z/(1-z+z^2)", quadratic, None),
        ("id", "z", identity, Some((0.0, 0.0, 0.0))),
    ];
    let mut out = Vec::new();
    for (name, formula, rule, known) in bases {
        out.push(NamedFunction {
            name: name.into(),
            formula: formula.into(),
            assumed_univalent: false,
            known,
            rule: Rule::Closed(rule),
        });
        for (tag, theta) in [("pi/4", PI / 4.0), ("pi/2", PI / 2.0)] {
            out.push(NamedFunction {
                name: format!("{name}@{tag}"),
                formula: format!("e^(-i {tag}) f(e^(i {tag}) z), f = {formula}"),
                assumed_univalent: false,
                known,
                rule: Rule::Rotated { base: rule, theta },
            });
        }
    }
    out
}

pub fn find(name: &str) -> Option<NamedFunction> {
    builtin_corpus().into_iter().find(|f| f.name == name)
}

/// `gamma_1, ..., gamma_count` from `log(f(z)/z) = 2 sum gamma_n z^n`.
pub fn logarithmic_coefficients(f: &UniSeries, count: usize) -> Result<Vec<GammaCoefficient>> {
    if !f.is_normalized() {
        return Err(Error::Domain(
            "logarithmic coefficients need a normalized series".into(),
        ));
    }
    if f.order() < count + 1 {
        return Err(Error::Usage(format!(
            "gamma_{count} needs series order {}, got {}",
            count + 1,
            f.order()
        )));
    }
    let log = f.div_z()?.log1()?;
    Ok((1..=count)
        .map(|n| GammaCoefficient {
            index: n,
            value: 0.5 * log.coeff(n),
        })
        .collect())
}

/// `|a_{n+1}| - |a_n|`.
pub fn coefficient_difference(f: &UniSeries, n: usize) -> Result<f64> {
    if f.order() < n + 1 {
        return Err(Error::Usage(format!(
            "a_{} needs series order {}",
            n + 1,
            n + 1
        )));
    }
    Ok(f.coeff(n + 1).norm() - f.coeff(n).norm())
}

/// One line of a check report; also the CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub subject: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
}

impl CheckRow {
    /// Passes when `value <= bound`.
    pub fn at_most(check: impl Into<String>, subject: &str, value: f64, bound: f64) -> Self {
        Self {
            check: check.into(),
            subject: subject.to_string(),
            value,
            bound,
            margin: bound - value,
            pass: value <= bound,
        }
    }

    /// Passes when `|value - target| <= tol`; `bound` holds the target.
    pub fn near(
        check: impl Into<String>,
        subject: &str,
        value: f64,
        target: f64,
        tol: f64,
    ) -> Self {
        let dev = (value - target).abs();
        Self {
            check: check.into(),
            subject: subject.to_string(),
            value,
            bound: target,
            margin: tol - dev,
            pass: dev <= tol,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub assumed_univalent: bool,
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub order: usize,
    pub seed: u64,
    pub vectors: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            seed: 0,
            vectors: 1000,
        }
    }
}

/// Worst `lhs - rhs` of the truncated Grunsky forms over random vectors.
fn worst_inequality_gaps(
    general: &crate::grunsky::GrunskyTable,
    odd: &crate::grunsky::GrunskyTable,
    opts: &CheckOptions,
) -> Result<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let block = FourTermBlock::from_table(odd)?;
    // largest row count and vector length whose entries are all known
    let general_len = general.total_order() / 2;
    let general_rows = general.total_order() - general_len;
    let odd_rows = (odd.total_order() / 2).div_ceil(2);
    let odd_len = odd.total_order() - (2 * odd_rows - 1);
    let mut gaps = [f64::NEG_INFINITY; 3];
    for _ in 0..opts.vectors {
        let x = TestVector::random(&mut rng, general_len.min(general.order()));
        let c = grunsky_quadratic_check(general, &x, general_rows.min(general.order()))?;
        gaps[0] = gaps[0].max(c.lhs - c.rhs);
        let x = TestVector::random(&mut rng, odd_len.min(odd.order()));
        let c = grunsky_quadratic_check(odd, &x, odd_rows)?;
        gaps[1] = gaps[1].max(c.lhs - c.rhs);
        let c = four_term_bound_check(&block, x.get(1), x.get(3));
        gaps[2] = gaps[2].max(c.lhs - c.rhs);
    }
    Ok(gaps)
}

/// Runs every check on one function.
pub fn check_function(f: &NamedFunction, opts: &CheckOptions) -> Result<CheckReport> {
    let s = f.series(opts.order)?;
    if opts.order < 8 {
        return Err(Error::Usage("checks need truncation order >= 8".into()));
    }
    let name = f.name.as_str();
    let odd = odd_grunsky_of(&s, name)?;
    let general = compute_grunsky(&s, (s.order() - 1) / 2, name)?;
    let mut rows = Vec::new();

    for (label, r) in IDENTITY_LABELS.iter().zip(identity_residuals(&s, &odd)?) {
        rows.push(CheckRow::at_most(
            format!("identity:{label}"),
            name,
            r,
            IDENTITY_TOL,
        ));
    }
    let cascade = cascade_bounds(&odd)?;
    for (k, label) in ["omega13", "omega15", "omega17"].iter().enumerate() {
        rows.push(CheckRow::at_most(
            format!("cascade:{label}"),
            name,
            cascade.moduli[k],
            cascade.limits[k] + CHAIN_SLACK,
        ));
    }
    let gaps = worst_inequality_gaps(&general, &odd, opts)?;
    for (label, gap) in ["grunsky", "grunsky-odd", "grunsky-four-term"]
        .iter()
        .zip(gaps)
    {
        rows.push(CheckRow::at_most(
            format!("inequality:{label}"),
            name,
            gap,
            INEQUALITY_SLACK,
        ));
    }

    let w = OddOmegas::from_table(&odd)?;
    let a = [s.coeff(2), s.coeff(3), s.coeff(4), s.coeff(5)];
    let g_a = gamma4_from_a(a[0], a[1], a[2], a[3]);
    let g_w = gamma4_from_omega(w.w11, w.w13, w.w15, w.w17);
    let g_log = logarithmic_coefficients(&s, 4)?[3].value;
    rows.push(CheckRow::at_most(
        "gamma4:formula-agreement",
        name,
        (g_a - g_w).norm(),
        IDENTITY_TOL,
    ));
    rows.push(CheckRow::at_most(
        "gamma4:series-agreement",
        name,
        (g_a - g_log).norm(),
        IDENTITY_TOL,
    ));

    let moduli = [w.w11.norm(), w.w13.norm(), w.w15.norm(), w.w17.norm()];
    let phi = |f: Functional| f.majorant().phi(moduli[0], moduli[1], moduli[2], moduli[3]);
    let gamma4 = g_a.norm();
    let diff = coefficient_difference(&s, 4)?;
    let majorant = a5_minus_a4_majorant(w.w11, w.w13, w.w15, w.w17);
    rows.push(CheckRow::at_most(
        "chain:gamma4<=phi1",
        name,
        gamma4,
        phi(Functional::Gamma4) + CHAIN_SLACK,
    ));
    rows.push(CheckRow::at_most(
        "chain:a5a4<=majorant",
        name,
        diff,
        majorant + CHAIN_SLACK,
    ));
    rows.push(CheckRow::at_most(
        "chain:majorant<=phi2",
        name,
        majorant,
        phi(Functional::A5MinusA4) + CHAIN_SLACK,
    ));
    let (g_ref, _) = Functional::Gamma4.reference_bound();
    let (d_ref, _) = Functional::A5MinusA4.reference_bound();
    rows.push(CheckRow::at_most(
        "bound:gamma4",
        name,
        gamma4,
        g_ref + BOUND_SLACK,
    ));
    rows.push(CheckRow::at_most(
        "bound:a5a4",
        name,
        diff,
        d_ref + BOUND_SLACK,
    ));

    Ok(CheckReport {
        subject: f.name.clone(),
        assumed_univalent: f.assumed_univalent,
        rows,
    })
}

/// Reads one `re im` pair per line, line `k` holding `a_k` from `a_0`.
/// Blank lines and `#` comments are skipped.
pub fn parse_coefficients(text: &str) -> Result<UniSeries> {
    let mut coeffs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Input(format!(
                "line {}: expected \"re im\", got {line:?}",
                lineno + 1
            )));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Input(format!("line {}: bad number {s:?}", lineno + 1)))
        };
        coeffs.push(Complex64::new(num(fields[0])?, num(fields[1])?));
    }
    if coeffs.len() < 2 {
        return Err(Error::Input("need at least a_0 and a_1".into()));
    }
    UniSeries::new(coeffs)
}
