use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{solve3, CriticalPoint, Objective, Stratum};
use crate::error::{Error, Result};
use crate::functionals::{radicand, y_limit, z_limit};

/// Newton iterates must keep the radicand above this value.
pub const RADICAND_GUARD: f64 = 1e-6;
/// Converged points closer than this to a coordinate plane are not interior.
pub const INTERIOR_MARGIN: f64 = 1e-6;
pub const GRADIENT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 200;

fn norm(g: &[f64; 3]) -> f64 {
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn admissible(p: [f64; 3]) -> bool {
    p.iter().all(|&v| v > 0.0) && radicand(p[0], p[1], p[2]) > RADICAND_GUARD
}

/// Damped Newton on `grad = 0`, backtracking on the gradient norm and on
/// staying inside the guarded interior.
pub fn newton_interior(obj: &dyn Objective, start: [f64; 3]) -> Result<CriticalPoint> {
    if !admissible(start) {
        return Err(Error::Usage(format!(
            "start {start:?} is not strictly interior"
        )));
    }
    let mut p = start;
    let mut g = obj.gradient(p)?;
    for _ in 0..MAX_ITERATIONS {
        let gn = norm(&g);
        if gn < GRADIENT_TOL {
            if p.iter().any(|&v| v < INTERIOR_MARGIN) {
                return Err(Error::NoConvergence(format!(
                    "critical point {p:?} is on the boundary"
                )));
            }
            return Ok(CriticalPoint {
                stratum: Stratum::Interior,
                x: p[0],
                y: p[1],
                z: p[2],
                value: obj.value(p),
                gradient_norm: gn,
            });
        }
        let h = obj.hessian(p)?;
        let d = solve3(h, [-g[0], -g[1], -g[2]])?;
        let mut step = 1.0;
        loop {
            let q = [p[0] + step * d[0], p[1] + step * d[1], p[2] + step * d[2]];
            if admissible(q) {
                let gq = obj.gradient(q)?;
                if norm(&gq) < gn {
                    p = q;
                    g = gq;
                    break;
                }
            }
            step *= 0.5;
            if step < 1e-12 {
                return Err(Error::NoConvergence(format!(
                    "line search stalled at {p:?}"
                )));
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "{MAX_ITERATIONS} iterations without convergence"
    )))
}

/// Outcome of Newton from many random interior starts.
#[derive(Clone, Debug, Serialize)]
pub struct Multistart {
    pub runs: usize,
    pub converged: usize,
    /// Distinct converged points (merged within `1e-6`).
    pub distinct: Vec<CriticalPoint>,
}

impl Multistart {
    pub fn best(&self) -> Option<CriticalPoint> {
        self.distinct
            .iter()
            .copied()
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }
}

pub fn random_interior_point(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let x: f64 = rng.gen();
        let y = rng.gen::<f64>() * y_limit(x);
        let z = rng.gen::<f64>() * z_limit(x, y);
        let p = [x, y, z];
        if admissible(p) {
            return p;
        }
    }
}

pub fn multistart_interior(obj: &dyn Objective, runs: usize, seed: u64) -> Multistart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut distinct: Vec<CriticalPoint> = Vec::new();
    let mut converged = 0;
    for _ in 0..runs {
        let start = random_interior_point(&mut rng);
        if let Ok(cp) = newton_interior(obj, start) {
            converged += 1;
            let loc = cp.location();
            let known = distinct.iter().any(|d| {
                d.location()
                    .iter()
                    .zip(loc)
                    .all(|(a, b)| (a - b).abs() < 1e-6)
            });
            if !known {
                distinct.push(cp);
            }
        }
    }
    Multistart {
        runs,
        converged,
        distinct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::Functional;
    use crate::optimizer::hooks::NegSquaredNorm;

    #[test]
    fn gamma4_critical_point() {
        let cp = newton_interior(&Functional::Gamma4, [0.8, 0.2, 0.1]).unwrap();
        let want = [0.81907, 0.233235, 0.126778];
        for (a, b) in cp.location().iter().zip(want) {
            assert!((a - b).abs() < 1e-3);
        }
        assert!((cp.value - 0.51059).abs() < 1e-5);
        assert!(cp.gradient_norm < GRADIENT_TOL);
    }

    #[test]
    fn a5a4_critical_point() {
        let cp = newton_interior(&Functional::A5MinusA4, [0.8, 0.3, 0.1]).unwrap();
        let want = [0.82745, 0.29092, 0.098698];
        for (a, b) in cp.location().iter().zip(want) {
            assert!((a - b).abs() < 1e-3);
        }
        assert!((cp.value - 2.3297).abs() < 1e-4);
    }

    #[test]
    fn multistart_finds_a_single_interior_point() {
        for f in Functional::ALL {
            let ms = multistart_interior(&f, 50, 7);
            assert!(ms.converged > 0);
            assert_eq!(ms.distinct.len(), 1, "{f:?}: {:?}", ms.distinct);
        }
    }

    #[test]
    fn boundary_start_is_rejected() {
        assert!(matches!(
            newton_interior(&Functional::Gamma4, [0.0, 0.1, 0.1]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            newton_interior(&Functional::Gamma4, [0.9, 0.25, 0.0]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn maximum_at_the_corner_is_not_interior() {
        assert!(matches!(
            newton_interior(&NegSquaredNorm, [0.3, 0.2, 0.1]),
            Err(Error::NoConvergence(_))
        ));
    }
}
