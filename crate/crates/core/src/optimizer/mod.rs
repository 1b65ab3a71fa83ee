//! Maximization of the majorants over the reduced feasible set
//! `{(x, y, z) : x, y, z >= 0, x^2 + 3y^2 + 5z^2 <= 1}`.
//!
//! Three independent routes are combined: Newton on the gradient system in
//! the interior ([`newton`]), face-by-face search on the six boundary strata
//! ([`strata`]), and an interval branch-and-bound enclosure of the global
//! maximum ([`certify`]). [`report::full_report`] runs all of them.

pub mod certify;
pub mod newton;
pub mod report;
pub mod strata;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{radicand, Functional};
use crate::interval::{IBox, Interval};

pub use certify::{certify_global_max, CertifyOptions, Enclosure};
pub use newton::{multistart_interior, newton_interior, Multistart};
pub use report::{full_report, OptimizationReport, ReportOptions};
pub use strata::{maximize_stratum, Stratum};

/// A function of `(x, y, z)` to be maximized over the reduced domain.
pub trait Objective: Sync {
    fn id(&self) -> String;

    /// Value at a feasible point.
    fn value(&self, p: [f64; 3]) -> f64;

    fn gradient(&self, p: [f64; 3]) -> Result<[f64; 3]>;

    /// Defaults to central differences of [`gradient`](Self::gradient).
    fn hessian(&self, p: [f64; 3]) -> Result<[[f64; 3]; 3]> {
        let h = 1e-7;
        let mut out = [[0.0; 3]; 3];
        for j in 0..3 {
            let mut a = p;
            let mut b = p;
            a[j] += h;
            b[j] -= h;
            let (ga, gb) = (self.gradient(a)?, self.gradient(b)?);
            for i in 0..3 {
                out[i][j] = (ga[i] - gb[i]) / (2.0 * h);
            }
        }
        Ok(out)
    }

    /// Interval containing every value on the feasible part of `b`.
    fn enclose(&self, b: &IBox) -> Interval;
}

/// A maximizer candidate on one stratum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub stratum: Stratum,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub value: f64,
    /// Norm of the (projected) gradient in the stratum's own coordinates.
    pub gradient_norm: f64,
}

impl CriticalPoint {
    pub fn location(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

pub(crate) fn radicand_interval(b: &IBox) -> Interval {
    Interval::point(1.0) - b.x.sqr() - b.y.sqr().scale(3.0) - b.z.sqr().scale(5.0)
}

fn inv_sqrt7() -> Interval {
    Interval::point(7.0)
        .sqrt()
        .and_then(|s| s.recip())
        .expect("sqrt(7) > 0")
}

impl Objective for Functional {
    fn id(&self) -> String {
        Functional::id(*self).to_string()
    }

    fn value(&self, p: [f64; 3]) -> f64 {
        self.majorant().psi(p[0], p[1], p[2])
    }

    fn gradient(&self, p: [f64; 3]) -> Result<[f64; 3]> {
        self.majorant().gradient(p[0], p[1], p[2])
    }

    fn hessian(&self, p: [f64; 3]) -> Result<[[f64; 3]; 3]> {
        self.majorant().hessian(p[0], p[1], p[2])
    }

    /// Natural interval extension, intersected with the mean-value form
    /// whenever the radicand stays positive on the box.
    fn enclose(&self, b: &IBox) -> Interval {
        let m = self.majorant();
        let r = radicand_interval(b);
        let root = r.max_with(0.0).sqrt().expect("clamped radicand");
        let k = inv_sqrt7();
        let x2 = b.x.sqr();
        let poly = x2.sqr().scale(m.x4)
            + b.y.sqr().scale(m.y2)
            + (x2 * b.y).scale(m.x2y)
            + (b.x * b.z).scale(m.xz);
        let natural = poly + (root * k).scale(m.t);
        if r.lo <= 0.0 || b.max_width() == 0.0 {
            return natural;
        }
        // psi(B) in psi(c) + grad(B) . (B - c)
        let c = b.mid();
        let centre = self.enclose(&IBox::point(c));
        let s = (root.recip().expect("positive radicand") * k).scale(m.t);
        let gx = (b.x * x2).scale(4.0 * m.x4) + (b.x * b.y).scale(2.0 * m.x2y) + b.z.scale(m.xz)
            - s * b.x;
        let gy = b.y.scale(2.0 * m.y2) + x2.scale(m.x2y) - (s * b.y).scale(3.0);
        let gz = b.x.scale(m.xz) - (s * b.z).scale(5.0);
        let dx = b.x - Interval::point(c[0]);
        let dy = b.y - Interval::point(c[1]);
        let dz = b.z - Interval::point(c[2]);
        let mean_value = centre + gx * dx + gy * dy + gz * dz;
        natural.intersect(&mean_value).unwrap_or(natural)
    }
}

/// Objectives with known maxima, for exercising the machinery.
pub mod hooks {
    use super::*;

    /// The constant function.
    #[derive(Clone, Copy, Debug)]
    pub struct Constant(pub f64);

    impl Objective for Constant {
        fn id(&self) -> String {
            format!("constant({})", self.0)
        }

        fn value(&self, _: [f64; 3]) -> f64 {
            self.0
        }

        fn gradient(&self, _: [f64; 3]) -> Result<[f64; 3]> {
            Ok([0.0; 3])
        }

        fn enclose(&self, _: &IBox) -> Interval {
            Interval::point(self.0)
        }
    }

    /// `-(x^2 + y^2 + z^2)`, maximal at the origin.
    #[derive(Clone, Copy, Debug)]
    pub struct NegSquaredNorm;

    impl Objective for NegSquaredNorm {
        fn id(&self) -> String {
            "neg-squared-norm".into()
        }

        fn value(&self, p: [f64; 3]) -> f64 {
            -(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
        }

        fn gradient(&self, p: [f64; 3]) -> Result<[f64; 3]> {
            Ok([-2.0 * p[0], -2.0 * p[1], -2.0 * p[2]])
        }

        fn hessian(&self, _: [f64; 3]) -> Result<[[f64; 3]; 3]> {
            Ok([[-2.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, -2.0]])
        }

        fn enclose(&self, b: &IBox) -> Interval {
            -(b.x.sqr() + b.y.sqr() + b.z.sqr())
        }
    }
}

/// Rejects points outside the reduced domain (no slack).
pub(crate) fn strictly_feasible(p: [f64; 3]) -> bool {
    p.iter().all(|&v| v >= 0.0) && p[0] <= 1.0 && radicand(p[0], p[1], p[2]) >= 0.0
}

pub(crate) fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Result<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col].abs() < 1e-300 {
            return Err(Error::NoConvergence("singular Hessian".into()));
        }
        m.swap(col, piv);
        for row in col + 1..3 {
            let pivot = m[col];
            let f = m[row][col] / pivot[col];
            for (v, p) in m[row].iter_mut().zip(pivot).skip(col) {
                *v -= f * p;
            }
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][3] - s) / m[i][i];
    }
    Ok(x)
}
