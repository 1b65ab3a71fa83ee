//! Plugging a user objective into the same Newton, strata and
//! branch-and-bound machinery.

use grunsky::interval::{IBox, Interval};
use grunsky::optimizer::{full_report, Objective, ReportOptions};

/// `x y - z^2`, maximal on the edge where the radicand vanishes.
struct Saddle;

impl Objective for Saddle {
    fn id(&self) -> String {
        "saddle".into()
    }

    fn value(&self, p: [f64; 3]) -> f64 {
        p[0] * p[1] - p[2] * p[2]
    }

    fn gradient(&self, p: [f64; 3]) -> grunsky::Result<[f64; 3]> {
        Ok([p[1], p[0], -2.0 * p[2]])
    }

    fn enclose(&self, b: &IBox) -> Interval {
        b.x * b.y - b.z.sqr()
    }
}

fn main() -> grunsky::Result<()> {
    let mut opts = ReportOptions::new(1e-4);
    opts.starts = 20;
    let r = full_report(&Saddle, &opts)?;
    println!(
        "global {:.9} on {:?} at ({:.6}, {:.6}, {:.6})",
        r.global.value, r.global.stratum, r.global.x, r.global.y, r.global.z
    );
    let cert = r.certificate.unwrap();
    println!("certified [{:.9}, {:.9}]", cert.lower, cert.upper);
    // Max of x y on x^2 + 3 y^2 = 1 is 1/(2 sqrt 3).
    println!("closed form {:.9}", 0.5 / 3f64.sqrt());
    Ok(())
}
