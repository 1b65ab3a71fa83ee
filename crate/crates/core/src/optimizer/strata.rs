//! The six boundary faces of the reduced domain and their maximization.
//!
//! Each face is parametrized over the unit square (or segment) by
//! `x = u` and a fraction `v` of the remaining upper limit, so the grid
//! covers the curved faces uniformly and always stays feasible.

use serde::{Deserialize, Serialize};

use super::{CriticalPoint, Objective};
use crate::functionals::{radicand, y_limit, z_limit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    #[serde(rename = "INTERIOR")]
    Interior,
    /// `x = 0`.
    #[serde(rename = "X0")]
    X0,
    /// `x = 1`, which forces `y = z = 0`.
    #[serde(rename = "X1")]
    X1,
    /// `y = 0`.
    #[serde(rename = "Y0")]
    Y0,
    /// `y` at its limit, which forces `z = 0`.
    #[serde(rename = "YMAX")]
    YMax,
    /// `z = 0`.
    #[serde(rename = "Z0")]
    Z0,
    /// `z` at its limit (the radicand vanishes).
    #[serde(rename = "ZMAX")]
    ZMax,
}

impl Stratum {
    /// Boundary faces in report order.
    pub const BOUNDARY: [Stratum; 6] = [
        Stratum::X0,
        Stratum::X1,
        Stratum::Y0,
        Stratum::YMax,
        Stratum::Z0,
        Stratum::ZMax,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Stratum::Interior => "INTERIOR",
            Stratum::X0 => "X0",
            Stratum::X1 => "X1",
            Stratum::Y0 => "Y0",
            Stratum::YMax => "YMAX",
            Stratum::Z0 => "Z0",
            Stratum::ZMax => "ZMAX",
        }
    }

    pub fn free_variables(self) -> &'static [&'static str] {
        match self {
            Stratum::Interior => &["x", "y", "z"],
            Stratum::X0 => &["y", "z"],
            Stratum::X1 => &[],
            Stratum::Y0 => &["x", "z"],
            Stratum::YMax => &["x"],
            Stratum::Z0 | Stratum::ZMax => &["x", "y"],
        }
    }

    pub fn restriction(self) -> &'static str {
        match self {
            Stratum::Interior => "x^2 + 3y^2 + 5z^2 < 1, x, y, z > 0",
            Stratum::X0 => "x = 0",
            Stratum::X1 => "x = 1, y = z = 0",
            Stratum::Y0 => "y = 0",
            Stratum::YMax => "y = sqrt((1 - x^2)/3), z = 0",
            Stratum::Z0 => "z = 0",
            Stratum::ZMax => "z = sqrt((1 - x^2 - 3y^2)/5)",
        }
    }

    /// Point of the face at parameters `(u, v)` in the unit square.
    ///
    /// On the two curved faces the last coordinate is rounded up until the
    /// radicand is exactly nonpositive (an overshoot of a few ulps), so the
    /// eliminated `sqrt` term is exactly zero instead of rounding noise.
    pub fn embed(self, u: f64, v: f64) -> [f64; 3] {
        match self {
            Stratum::Interior => {
                let y = v * y_limit(u);
                [u, y, 0.5 * z_limit(u, y)]
            }
            Stratum::X0 => {
                let y = u * y_limit(0.0);
                [0.0, y, v * z_limit(0.0, y)]
            }
            Stratum::X1 => [1.0, 0.0, 0.0],
            Stratum::Y0 => [u, 0.0, v * z_limit(u, 0.0)],
            Stratum::YMax => {
                let mut y = y_limit(u);
                while radicand(u, y, 0.0) > 0.0 {
                    y = y.next_up();
                }
                [u, y, 0.0]
            }
            Stratum::Z0 => [u, v * y_limit(u), 0.0],
            Stratum::ZMax => {
                let y = v * y_limit(u);
                let mut z = z_limit(u, y);
                while radicand(u, y, z) > 0.0 {
                    z = z.next_up();
                }
                [u, y, z]
            }
        }
    }

    fn dimension(self) -> usize {
        match self {
            Stratum::X1 => 0,
            Stratum::YMax => 1,
            _ => 2,
        }
    }
}

/// Grid spacing of the initial scan on each face.
pub const GRID_STEP: f64 = 1e-3;

/// Maximum of `obj` on the closed face `s` (including its edges).
///
/// Dense grid at [`GRID_STEP`] in the face parameters, then golden-section
/// (one free variable) or a shrinking pattern search (two) around the best
/// grid point.
pub fn maximize_stratum(obj: &dyn Objective, s: Stratum) -> CriticalPoint {
    assert!(s != Stratum::Interior, "the interior is handled by Newton");
    let f = |u: f64, v: f64| obj.value(s.embed(u, v));
    let n = (1.0 / GRID_STEP).round() as usize;
    let (u, v) = match s.dimension() {
        0 => (1.0, 0.0),
        1 => {
            let mut best = (f64::NEG_INFINITY, 0.0);
            for i in 0..=n {
                let u = i as f64 / n as f64;
                let val = f(u, 0.0);
                if val > best.0 {
                    best = (val, u);
                }
            }
            (golden_section(|u| f(u, 0.0), best.1, GRID_STEP), 0.0)
        }
        _ => {
            let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
            for i in 0..=n {
                let u = i as f64 / n as f64;
                for j in 0..=n {
                    let v = j as f64 / n as f64;
                    let val = f(u, v);
                    if val > best.0 {
                        best = (val, u, v);
                    }
                }
            }
            pattern_search(&f, best.1, best.2, GRID_STEP)
        }
    };
    let p = s.embed(u, v);
    CriticalPoint {
        stratum: s,
        x: p[0],
        y: p[1],
        z: p[2],
        value: obj.value(p),
        gradient_norm: projected_gradient(&f, u, v, s.dimension()),
    }
}

/// Golden-section maximization on `[centre - radius, centre + radius]`
/// clipped to `[0, 1]`, keeping the best of the final bracket and its ends.
fn golden_section(f: impl Fn(f64) -> f64, centre: f64, radius: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (lo0, hi0) = ((centre - radius).max(0.0), (centre + radius).min(1.0));
    let (mut a, mut b) = (lo0, hi0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a < 1e-15 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    [lo0, hi0, 0.5 * (a + b), centre]
        .into_iter()
        .max_by(|&p, &q| f(p).total_cmp(&f(q)))
        .unwrap()
}

/// Compass search on the unit square: a 9x9 stencil around the incumbent,
/// recentred when it moves and shrunk by 4 when it does not.
fn pattern_search(f: &impl Fn(f64, f64) -> f64, u0: f64, v0: f64, step: f64) -> (f64, f64) {
    let (mut u, mut v, mut h) = (u0, v0, step);
    let mut best = f(u, v);
    for _ in 0..2000 {
        if h < 1e-14 {
            break;
        }
        let mut moved = false;
        let (cu, cv) = (u, v);
        for i in -4i32..=4 {
            for j in -4i32..=4 {
                let a = (cu + i as f64 * h / 4.0).clamp(0.0, 1.0);
                let b = (cv + j as f64 * h / 4.0).clamp(0.0, 1.0);
                let val = f(a, b);
                if val > best {
                    best = val;
                    u = a;
                    v = b;
                    moved = true;
                }
            }
        }
        if !moved {
            h /= 4.0;
        }
    }
    (u, v)
}

/// Gradient norm in the face parameters, dropping components that point
/// out of `[0, 1]` at an active bound.
fn projected_gradient(f: &impl Fn(f64, f64) -> f64, u: f64, v: f64, dim: usize) -> f64 {
    let h = 1e-7;
    let partial = |at: f64, eval: &dyn Fn(f64) -> f64| -> f64 {
        let d = if at - h < 0.0 {
            (eval(at + h) - eval(at)) / h
        } else if at + h > 1.0 {
            (eval(at) - eval(at - h)) / h
        } else {
            (eval(at + h) - eval(at - h)) / (2.0 * h)
        };
        if (at <= 0.0 && d < 0.0) || (at >= 1.0 && d > 0.0) {
            0.0
        } else {
            d
        }
    };
    let mut sq = 0.0;
    if dim >= 1 {
        sq += partial(u, &|a| f(a, v)).powi(2);
    }
    if dim >= 2 {
        sq += partial(v, &|b| f(u, b)).powi(2);
    }
    sq.sqrt()
}
