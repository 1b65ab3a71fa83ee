//! Truncated power series in one and two complex variables.
//!
//! [`UniSeries`] of order `N` stores the coefficients of `1, z, ..., z^N`.
//! [`BiSeries`] of order `N` stores the coefficients of `t^p z^q` with
//! `p + q <= N` in a dense `(N+1) x (N+1)` grid; entries above the total
//! degree are kept at zero. Every operation here is exact for all monomials
//! inside the truncation, so a coefficient of degree `d` never depends on
//! input coefficients of degree greater than `d`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when checking `a0 = 0`, `a1 = 1` and unit constant terms.
pub const HEAD_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries {
    coeffs: Vec<Complex64>,
}

impl UniSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |k| self.coeff(k))
    }

    /// `a0 = 0` and `a1 = 1` (within [`HEAD_TOL`]).
    pub fn is_normalized(&self) -> bool {
        self.order() >= 1
            && self.coeffs[0].norm() <= HEAD_TOL
            && (self.coeffs[1] - 1.0).norm() <= HEAD_TOL
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "series is not normalized: a0 = {}, a1 = {}",
                self.coeff(0),
                self.coeff(1)
            )))
        }
    }

    fn require_unit_head(&self) -> Result<()> {
        if (self.coeffs[0] - 1.0).norm() <= HEAD_TOL {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "constant term must be 1, got {}",
                self.coeffs[0]
            )))
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        Ok(Self::from_fn(self.order(), |k| {
            self.coeffs[k] + other.coeffs[k]
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        Ok(Self::from_fn(self.order(), |k| {
            self.coeffs[k] - other.coeffs[k]
        }))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        Ok(Self::from_fn(self.order(), |n| {
            (0..=n).map(|k| self.coeffs[k] * other.coeffs[n - k]).sum()
        }))
    }

    /// Logarithm of a series with constant term 1, from `v' u = u'`.
    pub fn log1(&self) -> Result<Self> {
        self.require_unit_head()?;
        let u = &self.coeffs;
        let mut v = vec![Complex64::default(); u.len()];
        for n in 1..u.len() {
            let mut acc = u[n] * n as f64;
            for k in 1..n {
                acc -= v[k] * u[n - k] * k as f64;
            }
            v[n] = acc / n as f64;
        }
        Ok(Self { coeffs: v })
    }

    /// Exponential of a series with zero constant term, from `w' = v' w`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].norm() > HEAD_TOL {
            return Err(Error::Domain(format!(
                "exp needs a zero constant term, got {}",
                self.coeffs[0]
            )));
        }
        let v = &self.coeffs;
        let mut w = vec![Complex64::default(); v.len()];
        w[0] = Complex64::new(1.0, 0.0);
        for n in 1..v.len() {
            let acc: Complex64 = (1..=n).map(|k| v[k] * w[n - k] * k as f64).sum();
            w[n] = acc / n as f64;
        }
        Ok(Self { coeffs: w })
    }

    /// Principal square root of a series with constant term 1.
    pub fn sqrt1(&self) -> Result<Self> {
        self.require_unit_head()?;
        let u = &self.coeffs;
        let mut s = vec![Complex64::default(); u.len()];
        s[0] = Complex64::new(1.0, 0.0);
        for n in 1..u.len() {
            let cross: Complex64 = (1..n).map(|k| s[k] * s[n - k]).sum();
            s[n] = (u[n] - cross) * 0.5;
        }
        Ok(Self { coeffs: s })
    }

    /// `f(z)/z` for a series with `a0 = 0`; the order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        if self.order() == 0 || self.coeffs[0].norm() > HEAD_TOL {
            return Err(Error::Domain("f(z)/z needs a0 = 0 and order >= 1".into()));
        }
        Self::new(self.coeffs[1..].to_vec())
    }

    /// The odd function `sqrt(f(z^2)) = z + c3 z^3 + c5 z^5 + ...`.
    ///
    /// An order-`N` input determines the result up to `z^(2N-1)`, which is
    /// the order of the returned series.
    pub fn sqrt_transform(&self) -> Result<Self> {
        self.require_normalized()?;
        let root = self.div_z()?.sqrt1()?;
        let order = 2 * self.order() - 1;
        let mut g = Self::zero(order);
        for (k, &c) in root.coeffs.iter().enumerate() {
            g.coeffs[2 * k + 1] = c;
        }
        Ok(g)
    }

    /// `f(z^2)` at order `2N`.
    pub fn compose_square(&self) -> Self {
        let mut g = Self::zero(2 * self.order());
        for (k, &c) in self.coeffs.iter().enumerate() {
            g.coeffs[2 * k] = c;
        }
        g
    }

    /// `(f(t) - f(z)) / (t - z) = sum_n a_n sum_{i+j=n-1} t^i z^j`.
    ///
    /// Returned with total order `N - 1`, the highest degree fixed by `a_N`.
    pub fn divided_difference(&self) -> Result<BiSeries> {
        self.require_normalized()?;
        let order = self.order() - 1;
        Ok(BiSeries::from_fn(order, |p, q| self.coeffs[p + q + 1]))
    }
}

fn same_order(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Usage(format!("series orders differ: {a} vs {b}")))
    }
}

/// Bivariate series truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Complex64::default(); (order + 1) * (order + 1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// Fills every `(p, q)` with `p + q <= order`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut s = Self::zero(order);
        for p in 0..=order {
            for q in 0..=order - p {
                s.coeffs[p * (order + 1) + q] = f(p, q);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^p z^q`, zero outside the truncation.
    pub fn coeff(&self, p: usize, q: usize) -> Complex64 {
        if p + q > self.order {
            Complex64::default()
        } else {
            self.coeffs[p * (self.order + 1) + q]
        }
    }

    fn set(&mut self, p: usize, q: usize, c: Complex64) {
        self.coeffs[p * (self.order + 1) + q] = c;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_order(self.order, other.order)?;
        Ok(Self::from_fn(self.order, |p, q| {
            let mut acc = Complex64::default();
            for i in 0..=p {
                for j in 0..=q {
                    acc += self.coeff(i, j) * other.coeff(p - i, q - j);
                }
            }
            acc
        }))
    }

    /// Largest `|c[p][q] - c[q][p]|` over the stored coefficients.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for p in 0..=self.order {
            for q in 0..=self.order - p {
                worst = worst.max((self.coeff(p, q) - self.coeff(q, p)).norm());
            }
        }
        worst
    }

    /// Logarithm of a series with constant term 1.
    ///
    /// Uses the Euler operator `E = t d/dt + z d/dz`, which scales a term of
    /// total degree `d` by `d`: from `E v * u = E u`,
    /// `d v_pq = d u_pq - sum (i+j) v_ij u_(p-i)(q-j)` over proper sub-indices,
    /// which is the univariate log recurrence run along total degree.
    pub fn log(&self) -> Result<Self> {
        if (self.coeff(0, 0) - 1.0).norm() > HEAD_TOL {
            return Err(Error::Domain(format!(
                "constant term must be 1, got {}",
                self.coeff(0, 0)
            )));
        }
        let mut v = Self::zero(self.order);
        for d in 1..=self.order {
            for p in 0..=d {
                let q = d - p;
                let mut acc = self.coeff(p, q) * d as f64;
                for i in 0..=p {
                    for j in 0..=q {
                        let k = i + j;
                        if k == 0 || k == d {
                            continue;
                        }
                        acc -= v.coeff(i, j) * self.coeff(p - i, q - j) * k as f64;
                    }
                }
                v.set(p, q, acc / d as f64);
            }
        }
        Ok(v)
    }
}
