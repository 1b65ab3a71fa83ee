//! Certified maximum of the gamma_4 majorant: interior Newton, the six
//! boundary faces, and the interval branch-and-bound bracket.

use grunsky::functionals::Functional;
use grunsky::optimizer::{full_report, ReportOptions, Stratum};

fn main() -> grunsky::Result<()> {
    let f = Functional::Gamma4;
    let report = full_report(&f, &ReportOptions::new(f.default_tolerance()))?;

    if let Some(cp) = &report.interior {
        println!(
            "interior critical point ({:.9}, {:.9}, {:.9}) value {:.12}, |grad| {:.1e}",
            cp.x, cp.y, cp.z, cp.value, cp.gradient_norm
        );
    }
    if let Some(runs) = &report.interior_runs {
        println!(
            "{} Newton starts, {} converged, {} distinct",
            runs.starts, runs.converged, runs.distinct
        );
    }
    for s in Stratum::BOUNDARY {
        let cp = report.stratum(s).unwrap();
        println!(
            "  {:<5} {:<8} max {:.9} at ({:.6}, {:.6}, {:.6})",
            s.label(),
            s.restriction(),
            cp.value,
            cp.x,
            cp.y,
            cp.z
        );
    }
    let cert = report.certificate.as_ref().unwrap();
    println!(
        "certified: {:.9} <= max <= {:.9} ({} boxes, success {})",
        cert.lower, cert.upper, cert.boxes, cert.success
    );
    println!(
        "interior beats best face by {:.6}",
        report.interior_margin().unwrap()
    );
    Ok(())
}
