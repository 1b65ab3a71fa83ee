use serde::{Deserialize, Serialize};

use super::certify::{certify_global_max, CertifyOptions, Enclosure, DEFAULT_BOX_BUDGET};
use super::newton::multistart_interior;
use super::strata::{maximize_stratum, Stratum};
use super::{CriticalPoint, Objective};
use crate::error::{Error, Result};
use crate::functionals::Functional;

/// Values closer than this count as a tie; the earlier candidate wins.
pub const TIE_TOL: f64 = 1e-9;

/// Agreement required between a face maximum and its reference value.
pub const FACE_TOL: f64 = 1e-3;
/// Agreement required between the maximizer and its reference location.
pub const LOCATION_TOL: f64 = 1e-3;

/// Reference maxima of each boundary face.
pub fn reference_face_maxima(f: Functional) -> [(Stratum, f64); 6] {
    match f {
        Functional::Gamma4 => [
            (Stratum::X0, 0.37796),
            (Stratum::X1, 0.25),
            (Stratum::Y0, 0.414666),
            (Stratum::YMax, 0.4000),
            (Stratum::Z0, 0.4561),
            (Stratum::ZMax, 0.4570),
        ],
        Functional::A5MinusA4 => [
            (Stratum::X0, 1.142857),
            (Stratum::X1, 1.0),
            (Stratum::Y0, 1.3614),
            (Stratum::YMax, 2.118588),
            (Stratum::Z0, 2.162),
            (Stratum::ZMax, 2.287),
        ],
    }
}

/// Reference location of the interior maximizer.
pub fn reference_location(f: Functional) -> [f64; 3] {
    match f {
        Functional::Gamma4 => [0.81907, 0.233235, 0.126778],
        Functional::A5MinusA4 => [0.82745, 0.29092, 0.098698],
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub tolerance: f64,
    pub starts: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    pub budget: u64,
    /// Skip Newton and the certificate; only the boundary faces.
    pub strata_only: bool,
}

impl ReportOptions {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            starts: 50,
            seed: 0,
            threads: None,
            budget: DEFAULT_BOX_BUDGET,
            strata_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteriorSummary {
    pub starts: usize,
    pub converged: usize,
    pub distinct: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub objective: String,
    pub global: CriticalPoint,
    pub interior: Option<CriticalPoint>,
    pub interior_runs: Option<InteriorSummary>,
    /// One maximum per boundary face, in [`Stratum::BOUNDARY`] order.
    pub strata: Vec<CriticalPoint>,
    pub certificate: Option<Enclosure>,
}

impl OptimizationReport {
    pub fn stratum(&self, s: Stratum) -> Option<&CriticalPoint> {
        self.strata.iter().find(|c| c.stratum == s)
    }

    /// How far the interior maximum clears the best boundary face.
    pub fn interior_margin(&self) -> Option<f64> {
        let best_face = self
            .strata
            .iter()
            .map(|c| c.value)
            .fold(f64::NEG_INFINITY, f64::max);
        self.interior.map(|i| i.value - best_face)
    }
}

/// Newton multistart, all six faces and the branch-and-bound certificate.
pub fn full_report(obj: &dyn Objective, opts: &ReportOptions) -> Result<OptimizationReport> {
    let strata: Vec<CriticalPoint> = Stratum::BOUNDARY
        .iter()
        .map(|&s| maximize_stratum(obj, s))
        .collect();

    let (interior, interior_runs) = if opts.strata_only {
        (None, None)
    } else {
        let ms = multistart_interior(obj, opts.starts, opts.seed);
        let summary = InteriorSummary {
            starts: ms.runs,
            converged: ms.converged,
            distinct: ms.distinct.len(),
        };
        (ms.best(), Some(summary))
    };

    let mut global: Option<CriticalPoint> = None;
    for cand in interior.iter().chain(&strata) {
        match global {
            Some(g) if cand.value <= g.value + TIE_TOL => {}
            _ => global = Some(*cand),
        }
    }
    let global = global.expect("six boundary faces");

    let certificate = if opts.strata_only {
        None
    } else {
        let copts = CertifyOptions {
            tolerance: opts.tolerance,
            budget: opts.budget,
            threads: opts.threads,
            incumbent: Some(global.location()),
        };
        let enc = certify_global_max(obj, &copts)?;
        if enc.success && enc.upper < global.value - TIE_TOL {
            return Err(Error::NoConvergence(format!(
                "certificate upper bound {} is below the located maximum {}",
                enc.upper, global.value
            )));
        }
        Some(enc)
    };

    Ok(OptimizationReport {
        objective: obj.id(),
        global,
        interior,
        interior_runs,
        strata,
        certificate,
    })
}
