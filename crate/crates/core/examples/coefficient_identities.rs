//! The four coefficients a2..a5 recovered from odd Grunsky coefficients,
//! checked on every built-in function.

use grunsky::corpus::{self, IDENTITY_TOL};
use grunsky::grunsky::{
    eliminate_omega33, identity_residuals, odd_grunsky_of, OddOmegas, IDENTITY_LABELS,
};

fn main() -> grunsky::Result<()> {
    for f in corpus::builtin_corpus() {
        let s = f.series(16)?;
        let t = odd_grunsky_of(&s, &f.name)?;
        let r = identity_residuals(&s, &t)?;
        let worst = r.iter().copied().fold(0.0, f64::max);
        println!(
            "{:<22} max residual {:.1e} {}",
            f.name,
            worst,
            if worst <= IDENTITY_TOL {
                "ok"
            } else {
                "FAILED"
            }
        );
    }

    let s = corpus::find("starlike-quad").unwrap().series(16)?;
    let w = OddOmegas::from_table(&odd_grunsky_of(&s, "starlike-quad")?)?;
    println!("starlike-quad:");
    for (label, a) in IDENTITY_LABELS.iter().zip(w.coefficients()) {
        println!("  {label} = {:.12}", a);
    }
    println!(
        "  omega33 = {:.12}, eliminated {:.12}",
        w.w33,
        eliminate_omega33(w.w11, w.w13, w.w15)
    );
    Ok(())
}
