//! Bound for |a5| - |a4| through the psi_2 majorant, run with explicit
//! branch-and-bound options.

use grunsky::functionals::Functional;
use grunsky::optimizer::{certify_global_max, multistart_interior, CertifyOptions};

fn main() -> grunsky::Result<()> {
    let f = Functional::A5MinusA4;
    let starts = multistart_interior(&f, 50, 0);
    let best = starts.best().expect("some start converges");
    println!(
        "interior maximum {:.12} at ({:.9}, {:.9}, {:.9})",
        best.value, best.x, best.y, best.z
    );

    for tol in [1e-1, 1e-2, 1e-3] {
        let mut opts = CertifyOptions::new(tol);
        opts.incumbent = Some(best.location());
        opts.threads = Some(1);
        let e = certify_global_max(&f, &opts)?;
        println!(
            "tol {tol:.0e}: [{:.9}, {:.9}] width {:.2e}, {} boxes",
            e.lower,
            e.upper,
            e.width(),
            e.boxes
        );
    }
    Ok(())
}
