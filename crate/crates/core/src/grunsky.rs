//! Grunsky coefficients `omega_{p,q}` and the checks built on them.
//!
//! `log((f(t) - f(z)) / (t - z)) = sum omega_{p,q} t^p z^q`. For an odd
//! function such as `f2 = sqrt(f(z^2))` only odd `(p, q)` survive, and the
//! indices below are the actual powers of `t` and `z` (so `omega(1, 3)` is
//! the coefficient of `t z^3`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::UniSeries;

/// Tolerance for the symmetry and parity invariants of a table.
pub const TABLE_TOL: f64 = 1e-12;

/// Matrix of Grunsky coefficients `omega_{p,q}` for `1 <= p, q <= order`.
///
/// Built from a series of total order `K`, so entries with `p + q > K` are
/// unavailable.
#[derive(Clone, Debug, PartialEq)]
pub struct GrunskyTable {
    source: String,
    order: usize,
    total_order: usize,
    odd: bool,
    omega: Vec<Complex64>,
}

impl GrunskyTable {
    fn from_parts(
        source: String,
        order: usize,
        total_order: usize,
        odd: bool,
        omega: Vec<Complex64>,
    ) -> Result<Self> {
        let table = Self {
            source,
            order,
            total_order,
            odd,
            omega,
        };
        let asym = table.asymmetry();
        if asym > TABLE_TOL {
            return Err(Error::Domain(format!(
                "table is not symmetric (deviation {asym:e})"
            )));
        }
        if odd {
            let parity = table.parity_violation();
            if parity > TABLE_TOL {
                return Err(Error::Domain(format!(
                    "odd table has nonzero even-parity entries ({parity:e})"
                )));
            }
        }
        Ok(table)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Largest index `M`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest `p + q` for which entries are known.
    pub fn total_order(&self) -> usize {
        self.total_order
    }

    /// Whether the table comes from an odd function.
    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn get(&self, p: usize, q: usize) -> Option<Complex64> {
        if p == 0 || q == 0 || p > self.order || q > self.order || p + q > self.total_order {
            None
        } else {
            Some(self.omega[(p - 1) * self.order + (q - 1)])
        }
    }

    /// Like [`get`](Self::get) but reports a missing entry as a usage error.
    pub fn omega(&self, p: usize, q: usize) -> Result<Complex64> {
        self.get(p, q).ok_or_else(|| {
            Error::Usage(format!(
                "omega({p},{q}) is outside the table (order {}, total order {})",
                self.order, self.total_order
            ))
        })
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (1..=self.order).flat_map(move |p| {
            (1..=self.order).filter_map(move |q| self.get(p, q).map(|w| (p, q, w)))
        })
    }

    pub fn asymmetry(&self) -> f64 {
        self.entries()
            .map(|(p, q, w)| (w - self.get(q, p).unwrap_or(w)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|omega_{p,q}|` with `p + q` odd.
    pub fn parity_violation(&self) -> f64 {
        self.entries()
            .filter(|(p, q, _)| (p + q) % 2 == 1)
            .map(|(_, _, w)| w.norm())
            .fold(0.0, f64::max)
    }

    pub fn to_document(&self) -> TableDocument {
        let omega = (1..=self.order)
            .map(|p| {
                (1..=self.order)
                    .map(|q| self.get(p, q).map(|w| [w.re, w.im]))
                    .collect()
            })
            .collect();
        TableDocument {
            source: self.source.clone(),
            order: self.order,
            total_order: self.total_order,
            odd: self.odd,
            omega,
        }
    }

    pub fn from_document(doc: &TableDocument) -> Result<Self> {
        let m = doc.order;
        if doc.omega.len() != m || doc.omega.iter().any(|row| row.len() != m) {
            return Err(Error::Input(format!("omega must be a {m}x{m} matrix")));
        }
        let mut omega = vec![Complex64::default(); m * m];
        for (p, row) in doc.omega.iter().enumerate() {
            for (q, entry) in row.iter().enumerate() {
                let known = p + q + 2 <= doc.total_order;
                match (entry, known) {
                    (Some([re, im]), true) => omega[p * m + q] = Complex64::new(*re, *im),
                    (None, false) => {}
                    _ => {
                        return Err(Error::Input(format!(
                            "entry ({},{}) does not match total order {}",
                            p + 1,
                            q + 1,
                            doc.total_order
                        )))
                    }
                }
            }
        }
        Self::from_parts(doc.source.clone(), m, doc.total_order, doc.odd, omega)
    }
}

/// JSON form of a [`GrunskyTable`]; unavailable entries are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub source: String,
    pub order: usize,
    pub total_order: usize,
    pub odd: bool,
    pub omega: Vec<Vec<Option<[f64; 2]>>>,
}

/// Grunsky table of `f` up to index `order`.
pub fn compute_grunsky(f: &UniSeries, order: usize, source: &str) -> Result<GrunskyTable> {
    compute_table(f, order, source, false)
}

fn compute_table(f: &UniSeries, order: usize, source: &str, odd: bool) -> Result<GrunskyTable> {
    if order == 0 {
        return Err(Error::Usage("table order must be at least 1".into()));
    }
    let log = f.divided_difference()?.log()?;
    let total = log.order();
    if total < order + 1 {
        return Err(Error::Usage(format!(
            "series of order {} only determines omega_(p,q) for p + q <= {total}; \
             order {order} needs series order >= {}",
            f.order(),
            order + 2
        )));
    }
    let mut omega = vec![Complex64::default(); order * order];
    for p in 1..=order {
        for q in 1..=order {
            if p + q <= total {
                omega[(p - 1) * order + (q - 1)] = log.coeff(p, q);
            }
        }
    }
    GrunskyTable::from_parts(source.to_string(), order, total, odd, omega)
}

/// Table of the odd function `sqrt(f(z^2))`, at the largest index its
/// truncation supports.
pub fn odd_grunsky_of(f: &UniSeries, source: &str) -> Result<GrunskyTable> {
    let f2 = f.sqrt_transform()?;
    // f2 has order 2N - 1, its divided difference total order 2N - 2
    let order = f2.order() - 2;
    compute_table(&f2, order, source, true)
}

/// Same as [`odd_grunsky_of`] with an explicit index bound.
pub fn odd_grunsky_with_order(f: &UniSeries, order: usize, source: &str) -> Result<GrunskyTable> {
    compute_table(&f.sqrt_transform()?, order, source, true)
}

/// The odd entries used by the coefficient identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OddOmegas {
    pub w11: Complex64,
    pub w13: Complex64,
    pub w15: Complex64,
    pub w17: Complex64,
    pub w33: Complex64,
    pub w35: Complex64,
}

impl OddOmegas {
    pub fn from_table(t: &GrunskyTable) -> Result<Self> {
        if !t.is_odd() {
            return Err(Error::Usage(
                "identities need the table of sqrt(f(z^2))".into(),
            ));
        }
        Ok(Self {
            w11: t.omega(1, 1)?,
            w13: t.omega(1, 3)?,
            w15: t.omega(1, 5)?,
            w17: t.omega(1, 7)?,
            w33: t.omega(3, 3)?,
            w35: t.omega(3, 5)?,
        })
    }

    /// `a2..a5` rebuilt from the odd Grunsky coefficients.
    pub fn coefficients(&self) -> [Complex64; 4] {
        let Self {
            w11, w13, w33, w35, ..
        } = *self;
        [
            2.0 * w11,
            2.0 * w13 + 3.0 * w11 * w11,
            2.0 * w33 + 8.0 * w11 * w13 + (10.0 / 3.0) * w11.powu(3),
            2.0 * w35
                + 8.0 * w11 * w33
                + 5.0 * w13 * w13
                + 18.0 * w11 * w11 * w13
                + (7.0 / 3.0) * w11.powu(4),
        ]
    }

    /// `3 w15 - 3 w11 w13 + w11^3 - 3 w33`, zero for every f in S.
    pub fn first_constraint(&self) -> Complex64 {
        let Self {
            w11, w13, w15, w33, ..
        } = *self;
        3.0 * w15 - 3.0 * w11 * w13 + w11.powu(3) - 3.0 * w33
    }

    /// `w17 - w35 - w11 w33 - w13^2 + w11^4 / 3`, zero for every f in S.
    pub fn second_constraint(&self) -> Complex64 {
        let Self {
            w11,
            w13,
            w17,
            w33,
            w35,
            ..
        } = *self;
        w17 - w35 - w11 * w33 - w13 * w13 + w11.powu(4) / 3.0
    }
}

pub const IDENTITY_LABELS: [&str; 6] = [
    "a2",
    "a3",
    "a4",
    "a5",
    "omega15-constraint",
    "omega17-constraint",
];

/// Absolute residuals of the six coefficient identities, in the order of
/// [`IDENTITY_LABELS`].
pub fn identity_residuals(f: &UniSeries, t: &GrunskyTable) -> Result<[f64; 6]> {
    if f.order() < 5 {
        return Err(Error::Usage(format!(
            "identities need a2..a5, series order is {}",
            f.order()
        )));
    }
    let w = OddOmegas::from_table(t)?;
    let rebuilt = w.coefficients();
    let mut out = [0.0; 6];
    for (k, a) in rebuilt.iter().enumerate() {
        out[k] = (f.coeff(k + 2) - a).norm();
    }
    out[4] = w.first_constraint().norm();
    out[5] = w.second_constraint().norm();
    Ok(out)
}

/// `omega33` eliminated through the first constraint.
pub fn eliminate_omega33(w11: Complex64, w13: Complex64, w15: Complex64) -> Complex64 {
    w15 - w11 * w13 + w11.powu(3) / 3.0
}

/// `omega35` eliminated through both constraints.
pub fn eliminate_omega35(
    w11: Complex64,
    w13: Complex64,
    w15: Complex64,
    w17: Complex64,
) -> Complex64 {
    w17 - w11 * w15 + w11 * w11 * w13 - w13 * w13
}

/// Coefficients `x_p` of the Grunsky quadratic form; `x[0]` is `x_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TestVector {
    x: Vec<Complex64>,
}

impl TestVector {
    pub fn new(x: Vec<Complex64>) -> Result<Self> {
        if x.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::Usage("test vector needs a nonzero entry".into()));
        }
        Ok(Self { x })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `x_p` (1-based), zero past the end.
    pub fn get(&self, p: usize) -> Complex64 {
        self.x.get(p.wrapping_sub(1)).copied().unwrap_or_default()
    }

    /// Random vector with `|x_p| <= 1`.
    pub fn random(rng: &mut impl rand::Rng, len: usize) -> Self {
        loop {
            let x: Vec<Complex64> = (0..len)
                .map(|_| {
                    Complex64::from_polar(
                        rng.gen::<f64>(),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect();
            if let Ok(v) = Self::new(x) {
                return v;
            }
        }
    }
}

/// Two sides of a truncated Grunsky inequality; `lhs <= rhs` is necessary
/// for univalence because the dropped rows are nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadraticCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl QuadraticCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

/// Evaluates `sum_q q |sum_p omega_{p,q} x_p|^2` against `sum_p |x_p|^2 / p`
/// over the first `rows` rows.
///
/// For an odd table only odd indices take part: rows `q = 1, 3, ..., 2 rows - 1`
/// and the odd entries of `x`; even entries of `x` are ignored.
pub fn grunsky_quadratic_check(
    t: &GrunskyTable,
    x: &TestVector,
    rows: usize,
) -> Result<QuadraticCheck> {
    let indices: Vec<usize> = if t.is_odd() {
        (1..=rows).map(|q| 2 * q - 1).collect()
    } else {
        (1..=rows).collect()
    };
    let p_indices: Vec<usize> = (1..=x.len())
        .filter(|p| !t.is_odd() || p % 2 == 1)
        .collect();
    let max_row = indices.last().copied().unwrap_or(0);
    let max_p = p_indices.last().copied().unwrap_or(0);
    if rows == 0 || max_row > t.order() || x.len() > t.order() {
        return Err(Error::Usage(format!(
            "{rows} rows and a vector of length {} do not fit a table of order {}",
            x.len(),
            t.order()
        )));
    }
    if max_row + max_p > t.total_order() {
        return Err(Error::Usage(format!(
            "need omega up to p + q = {}, table is known to {}",
            max_row + max_p,
            t.total_order()
        )));
    }
    let mut lhs = 0.0;
    for &q in &indices {
        let inner: Complex64 = p_indices
            .iter()
            .map(|&p| t.get(p, q).unwrap() * x.get(p))
            .sum();
        lhs += q as f64 * inner.norm_sqr();
    }
    let rhs = p_indices
        .iter()
        .map(|&p| x.get(p).norm_sqr() / p as f64)
        .sum();
    Ok(QuadraticCheck { lhs, rhs })
}

/// The odd entries `omega_{1,q}` and `omega_{3,q}`, `q = 1, 3, 5, 7`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourTermBlock {
    pub w11: Complex64,
    pub w13: Complex64,
    pub w15: Complex64,
    pub w17: Complex64,
    pub w31: Complex64,
    pub w33: Complex64,
    pub w35: Complex64,
    pub w37: Complex64,
}

impl FourTermBlock {
    pub fn from_table(t: &GrunskyTable) -> Result<Self> {
        Ok(Self {
            w11: t.omega(1, 1)?,
            w13: t.omega(1, 3)?,
            w15: t.omega(1, 5)?,
            w17: t.omega(1, 7)?,
            w31: t.omega(3, 1)?,
            w33: t.omega(3, 3)?,
            w35: t.omega(3, 5)?,
            w37: t.omega(3, 7)?,
        })
    }
}

/// Odd Grunsky inequality with only `x1`, `x3` nonzero, truncated after
/// the row of weight 7.
pub fn four_term_bound_check(b: &FourTermBlock, x1: Complex64, x3: Complex64) -> QuadraticCheck {
    let lhs = (b.w11 * x1 + b.w31 * x3).norm_sqr()
        + 3.0 * (b.w13 * x1 + b.w33 * x3).norm_sqr()
        + 5.0 * (b.w15 * x1 + b.w35 * x3).norm_sqr()
        + 7.0 * (b.w17 * x1 + b.w37 * x3).norm_sqr();
    let rhs = x1.norm_sqr() + x3.norm_sqr() / 3.0;
    QuadraticCheck { lhs, rhs }
}

/// Upper limits on `|omega13|`, `|omega15|`, `|omega17|` from the four-term
/// inequality at `x1 = 1, x3 = 0`, paired with the actual moduli.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CascadeBounds {
    pub moduli: [f64; 3],
    pub limits: [f64; 3],
}

impl CascadeBounds {
    /// Smallest `limit - modulus` (negative when a bound is violated).
    pub fn worst_margin(&self) -> f64 {
        (0..3)
            .map(|k| self.limits[k] - self.moduli[k])
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn cascade_bounds(t: &GrunskyTable) -> Result<CascadeBounds> {
    let x = t.omega(1, 1)?.norm();
    let y = t.omega(1, 3)?.norm();
    let z = t.omega(1, 5)?.norm();
    let w = t.omega(1, 7)?.norm();
    let root = |r: f64, d: f64| (r.max(0.0) / d).sqrt();
    Ok(CascadeBounds {
        moduli: [y, z, w],
        limits: [
            root(1.0 - x * x, 3.0),
            root(1.0 - x * x - 3.0 * y * y, 5.0),
            root(1.0 - x * x - 3.0 * y * y - 5.0 * z * z, 7.0),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn koebe(n: usize) -> UniSeries {
        UniSeries::from_fn(n, |k| c(k as f64))
    }

    fn half_plane(n: usize) -> UniSeries {
        UniSeries::from_fn(n, |k| c(if k == 0 { 0.0 } else { 1.0 }))
    }

    fn identity(n: usize) -> UniSeries {
        UniSeries::from_fn(n, |k| c(if k == 1 { 1.0 } else { 0.0 }))
    }

    #[test]
    fn koebe_table_is_minus_one_over_p_diagonal() {
        let t = compute_grunsky(&koebe(16), 7, "koebe").unwrap();
        assert_eq!(t.total_order(), 15);
        for p in 1..=7 {
            for q in 1..=7 {
                let want = if p == q { -1.0 / p as f64 } else { 0.0 };
                assert!(
                    (t.omega(p, q).unwrap() - c(want)).norm() < 1e-12,
                    "({p},{q})"
                );
            }
        }
    }

    #[test]
    fn identity_table_is_zero() {
        let t = compute_grunsky(&identity(16), 7, "id").unwrap();
        assert!(t.entries().all(|(_, _, w)| w.norm() == 0.0));
        let t = odd_grunsky_of(&identity(16), "id").unwrap();
        assert!(t.entries().all(|(_, _, w)| w.norm() == 0.0));
    }

    #[test]
    fn odd_koebe_table() {
        // log(1 + tz) - log(1 - t^2) - log(1 - z^2)
        let t = odd_grunsky_of(&koebe(16), "koebe").unwrap();
        assert!(t.is_odd());
        assert_eq!(t.order(), 29);
        for p in 1..=15 {
            for q in 1..=15 {
                let want = if p == q {
                    (-1f64).powi(p as i32 + 1) / p as f64
                } else {
                    0.0
                };
                assert!(
                    (t.omega(p, q).unwrap() - c(want)).norm() < 1e-12,
                    "({p},{q})"
                );
            }
        }
        assert_eq!(t.omega(1, 1).unwrap(), c(1.0));
        assert!((t.omega(3, 3).unwrap() - c(1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn half_plane_omega11_is_half_a2() {
        let t = odd_grunsky_of(&half_plane(16), "slit-like").unwrap();
        assert!((t.omega(1, 1).unwrap() - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn insufficient_order_is_usage_error() {
        assert!(matches!(
            compute_grunsky(&koebe(8), 7, "k"),
            Err(Error::Usage(_))
        ));
        let t = compute_grunsky(&koebe(9), 7, "k").unwrap();
        assert!(t.get(7, 7).is_none());
        assert!(matches!(t.omega(7, 7), Err(Error::Usage(_))));
    }

    #[test]
    fn residuals_vanish_on_closed_forms() {
        for f in [koebe(16), identity(16), half_plane(16)] {
            let t = odd_grunsky_of(&f, "f").unwrap();
            let r = identity_residuals(&f, &t).unwrap();
            assert!(r.iter().all(|&v| v < 1e-12), "{r:?}");
        }
        // exact hand substitution for Koebe: a5 = 8/3 + 7/3
        let t = odd_grunsky_of(&koebe(16), "koebe").unwrap();
        let rebuilt = OddOmegas::from_table(&t).unwrap().coefficients();
        for (k, a) in rebuilt.iter().enumerate() {
            assert!((a - c(k as f64 + 2.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn residuals_work_at_minimal_order() {
        let f = half_plane(5);
        let t = odd_grunsky_of(&f, "slit-like").unwrap();
        assert_eq!(t.total_order(), 8);
        let r = identity_residuals(&f, &t).unwrap();
        assert!(r.iter().all(|&v| v < 1e-12), "{r:?}");
        assert!(matches!(
            identity_residuals(&half_plane(4), &t),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn misprinted_a5_formula_fails() {
        // 5 omega15^2 in place of 5 omega13^2
        let f = half_plane(16);
        let w = OddOmegas::from_table(&odd_grunsky_of(&f, "slit-like").unwrap()).unwrap();
        let wrong = 2.0 * w.w35
            + 8.0 * w.w11 * w.w33
            + 5.0 * w.w15 * w.w15
            + 18.0 * w.w11 * w.w11 * w.w13
            + (7.0 / 3.0) * w.w11.powu(4);
        assert!((f.coeff(5) - wrong).norm() > 1e-3);
    }

    #[test]
    fn eliminations_match_tables() {
        assert_eq!(eliminate_omega33(c(1.0), c(0.0), c(0.0)), c(1.0 / 3.0));
        assert_eq!(eliminate_omega33(c(0.0), c(0.0), c(0.0)), c(0.0));
        assert_eq!(eliminate_omega35(c(1.0), c(0.0), c(0.0), c(0.0)), c(0.0));
        assert_eq!(eliminate_omega35(c(0.0), c(0.0), c(0.0), c(0.0)), c(0.0));

        let t = odd_grunsky_of(&half_plane(16), "slit-like").unwrap();
        let w = OddOmegas::from_table(&t).unwrap();
        assert!((eliminate_omega33(w.w11, w.w13, w.w15) - w.w33).norm() < 1e-12);
        assert!((eliminate_omega35(w.w11, w.w13, w.w15, w.w17) - w.w35).norm() < 1e-12);
    }

    #[test]
    fn koebe_saturates_first_row() {
        let t = odd_grunsky_of(&koebe(16), "koebe").unwrap();
        let x = TestVector::new(vec![c(1.0)]).unwrap();
        let chk = grunsky_quadratic_check(&t, &x, 7).unwrap();
        assert!((chk.lhs - 1.0).abs() < 1e-12 && (chk.rhs - 1.0).abs() < 1e-15);

        let b = FourTermBlock::from_table(&t).unwrap();
        let chk = four_term_bound_check(&b, c(1.0), c(0.0));
        assert!((chk.lhs - 1.0).abs() < 1e-12 && chk.rhs == 1.0);
    }

    #[test]
    fn zero_table_gives_zero_lhs() {
        let t = odd_grunsky_of(&identity(16), "id").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = TestVector::random(&mut rng, 9);
        let chk = grunsky_quadratic_check(&t, &x, 5).unwrap();
        assert_eq!(chk.lhs, 0.0);
        let b = FourTermBlock::from_table(&t).unwrap();
        assert_eq!(four_term_bound_check(&b, c(0.3), c(-2.0)).lhs, 0.0);
    }

    #[test]
    fn quadratic_check_dimension_errors() {
        let t = compute_grunsky(&koebe(16), 7, "koebe").unwrap();
        let x = TestVector::new(vec![c(1.0); 8]).unwrap();
        assert!(matches!(
            grunsky_quadratic_check(&t, &x, 3),
            Err(Error::Usage(_))
        ));
        let x = TestVector::new(vec![c(1.0); 7]).unwrap();
        // 7 + 7 = 14 <= 15
        assert!(grunsky_quadratic_check(&t, &x, 7).is_ok());
        assert!(matches!(
            grunsky_quadratic_check(&t, &x, 0),
            Err(Error::Usage(_))
        ));
        assert!(TestVector::new(vec![c(0.0); 3]).is_err());
    }

    #[test]
    fn cascade_bounds_hold_for_closed_forms() {
        for f in [koebe(16), identity(16), half_plane(16)] {
            let b = cascade_bounds(&odd_grunsky_of(&f, "f").unwrap()).unwrap();
            assert!(b.worst_margin() >= -1e-10, "{b:?}");
        }
    }

    #[test]
    fn document_round_trip() {
        let t = odd_grunsky_with_order(&half_plane(8), 9, "slit-like").unwrap();
        let json = serde_json::to_string(&t.to_document()).unwrap();
        let back: TableDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(GrunskyTable::from_document(&back).unwrap(), t);
    }

    #[test]
    fn asymmetric_document_is_rejected() {
        let mut doc = compute_grunsky(&koebe(8), 3, "k").unwrap().to_document();
        doc.omega[0][1] = Some([0.5, 0.0]);
        assert!(matches!(
            GrunskyTable::from_document(&doc),
            Err(Error::Domain(_))
        ));
    }

    proptest! {
        #[test]
        fn half_plane_satisfies_odd_inequality(seed in any::<u64>()) {
            let t = odd_grunsky_of(&half_plane(16), "slit-like").unwrap();
            let b = FourTermBlock::from_table(&t).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = TestVector::random(&mut rng, 15);
            prop_assert!(grunsky_quadratic_check(&t, &x, 8).unwrap().holds(1e-12));
            prop_assert!(four_term_bound_check(&b, x.get(1), x.get(3)).holds(1e-12));
        }
    }
}
