//! Face-by-face maxima of both majorants, with the closed-form edge values.

use grunsky::functionals::Functional;
use grunsky::optimizer::{maximize_stratum, Stratum};

fn main() {
    println!(
        "closed forms: X0 of psi1 = 1/sqrt(7) = {:.15}, X0 of psi2 = 8/7 = {:.15}",
        7f64.sqrt().recip(),
        8.0 / 7.0
    );
    for f in Functional::ALL {
        println!("{}:", f.id());
        for s in Stratum::BOUNDARY {
            let cp = maximize_stratum(&f, s);
            println!(
                "  {:<5} free {:?}: {:.12} at ({:.6}, {:.6}, {:.6}), projected |grad| {:.1e}",
                s.label(),
                s.free_variables(),
                cp.value,
                cp.x,
                cp.y,
                cp.z,
                cp.gradient_norm
            );
        }
    }
}
