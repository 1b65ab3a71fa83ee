//! Truncated series arithmetic: log, exp, the odd square-root transform and
//! the bivariate divided difference.

use grunsky::series::UniSeries;

fn main() -> grunsky::Result<()> {
    // Koebe function z / (1 - z)^2, a_n = n.
    let koebe = UniSeries::from_real(&(0..=8).map(|n| n as f64).collect::<Vec<_>>())?;

    let q = koebe.div_z()?;
    let log_q = q.log1()?;
    println!("log(f/z) coefficients (expected 2/n):");
    for n in 1..=log_q.order() {
        println!("  {n}: {:.12}", log_q.coeff(n).re);
    }

    let back = log_q.exp()?;
    let err = (0..=back.order())
        .map(|n| (back.coeff(n) - q.coeff(n)).norm())
        .fold(0.0, f64::max);
    println!("exp(log q) - q, max error: {err:.2e}");

    let odd = koebe.sqrt_transform()?;
    println!("sqrt(f(z^2)) up to z^{}:", odd.order());
    for n in (1..=odd.order()).step_by(2) {
        println!("  z^{n}: {:.12}", odd.coeff(n).re);
    }

    let bi = koebe.divided_difference()?;
    println!(
        "divided difference total order {}, asymmetry {:.1e}, c(1,2) = {:.6}",
        bi.order(),
        bi.asymmetry(),
        bi.coeff(1, 2).re
    );
    Ok(())
}
