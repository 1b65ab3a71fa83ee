//! Interval branch-and-bound enclosure of the global maximum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{radicand_interval, Objective};
use crate::error::{Error, Result};
use crate::interval::{IBox, Interval};

/// Default cap on the number of boxes evaluated.
pub const DEFAULT_BOX_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub tolerance: f64,
    pub budget: u64,
    /// Worker threads; `None` uses rayon's default pool.
    pub threads: Option<usize>,
    /// A feasible point whose value seeds the lower bound.
    pub incumbent: Option<[f64; 3]>,
}

impl CertifyOptions {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            budget: DEFAULT_BOX_BUDGET,
            threads: None,
            incumbent: None,
        }
    }
}

/// Certified bracket `[lower, upper]` around the global maximum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    /// Value attained at `argmax` (rounded down).
    pub lower: f64,
    /// No feasible point has a larger value.
    pub upper: f64,
    pub boxes: u64,
    pub tolerance: f64,
    /// `false` when the box budget ran out before `upper - lower <= tolerance`.
    pub success: bool,
    pub argmax: [f64; 3],
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Bounding box of the reduced domain, rounded outward.
pub fn root_box() -> IBox {
    let hi = |d: f64| {
        Interval::point(d)
            .sqrt()
            .and_then(|r| r.recip())
            .expect("positive")
            .hi
    };
    IBox {
        x: Interval::new(0.0, 1.0),
        y: Interval::new(0.0, hi(3.0)),
        z: Interval::new(0.0, hi(5.0)),
    }
}

struct Evaluated {
    bounds: Interval,
    /// Rigorous lower value at a feasible point of the box.
    witness: Option<(f64, [f64; 3])>,
}

fn evaluate(obj: &dyn Objective, b: &IBox) -> Option<Evaluated> {
    // x, y, z >= 0 on the box, so the radicand is largest at the lower corner
    if radicand_interval(b).hi < 0.0 {
        return None;
    }
    let bounds = obj.enclose(b);
    let witness = [b.mid(), b.lower_corner()]
        .into_iter()
        .filter(|&p| radicand_interval(&IBox::point(p)).lo >= 0.0)
        .map(|p| (obj.enclose(&IBox::point(p)).lo, p))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    Some(Evaluated { bounds, witness })
}

/// Branch-and-bound over the bounding box of the reduced domain.
///
/// Boxes are processed in rounds: a round is evaluated in parallel and then
/// pruned, settled or bisected sequentially in a fixed order, so the
/// enclosure does not depend on the number of threads.
pub fn certify_global_max(obj: &dyn Objective, opts: &CertifyOptions) -> Result<Enclosure> {
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Error::Usage(format!(
            "tolerance must be positive, got {}",
            opts.tolerance
        )));
    }
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = opts.threads {
            builder = builder.num_threads(n.max(1));
        }
        builder.build().map_err(|e| Error::Usage(e.to_string()))?
    };

    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    if let Some(p) = opts.incumbent {
        if super::strictly_feasible(p) {
            best = (obj.enclose(&IBox::point(p)).lo, p);
        }
    }
    let mut settled = f64::NEG_INFINITY;
    let mut active = vec![root_box()];
    let mut processed: u64 = 0;
    let mut exhausted = false;

    while !active.is_empty() {
        if processed + active.len() as u64 > opts.budget {
            exhausted = true;
            break;
        }
        let results: Vec<Option<Evaluated>> =
            pool.install(|| active.par_iter().map(|b| evaluate(obj, b)).collect());
        processed += active.len() as u64;

        for e in results.iter().flatten() {
            if let Some((v, p)) = e.witness {
                if v > best.0 {
                    best = (v, p);
                }
            }
        }
        let mut next = Vec::new();
        for (b, e) in active.iter().zip(&results) {
            let Some(e) = e else { continue };
            if e.bounds.hi < best.0 {
                continue;
            }
            if e.bounds.hi <= best.0 + opts.tolerance || b.max_width() == 0.0 {
                settled = settled.max(e.bounds.hi);
            } else {
                let (l, r) = b.bisect();
                next.push(l);
                next.push(r);
            }
        }
        active = next;
    }

    let mut upper = settled.max(best.0);
    if exhausted {
        for b in &active {
            if let Some(e) = evaluate(obj, b) {
                upper = upper.max(e.bounds.hi);
            }
        }
    }
    Ok(Enclosure {
        lower: best.0,
        upper,
        boxes: processed,
        tolerance: opts.tolerance,
        success: !exhausted && upper - best.0 <= opts.tolerance,
        argmax: best.1,
    })
}
