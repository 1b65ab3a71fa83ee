//! Sharp constant for |a3| - |a2|, with a check against the Koebe function.

use grunsky::corpus;
use grunsky::functionals::fekete_szego_constant;

fn main() -> grunsky::Result<()> {
    let fs = fekete_szego_constant();
    println!("lambda0 = {:.15} (root of 4 lambda = e^lambda)", fs.lambda0);
    println!("bound   = {:.15}", fs.bound);
    for f in corpus::builtin_corpus() {
        let d = corpus::coefficient_difference(&f.series(8)?, 3)?;
        println!("  {:<22} |a3|-|a2| = {:+.6}", f.name, d);
    }
    Ok(())
}
