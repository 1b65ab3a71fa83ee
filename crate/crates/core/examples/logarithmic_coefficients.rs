//! Logarithmic coefficients, gamma_4 two ways, and the |a5| - |a4| majorant.

use grunsky::corpus;
use grunsky::functionals::{
    a5_minus_a4_majorant, gamma4_from_a, gamma4_from_omega, psi1, FeasiblePoint, Functional,
};
use grunsky::grunsky::{odd_grunsky_of, OddOmegas};

fn main() -> grunsky::Result<()> {
    for name in ["koebe", "slit-like", "starlike-quad", "odd-koebe@pi/4"] {
        let s = corpus::find(name).unwrap().series(16)?;
        let gammas = corpus::logarithmic_coefficients(&s, 4)?;
        let w = OddOmegas::from_table(&odd_grunsky_of(&s, name)?)?;
        let a = |n: usize| s.coeff(n);
        let g4 = gammas[3].value;
        let from_a = gamma4_from_a(a(2), a(3), a(4), a(5));
        let from_w = gamma4_from_omega(w.w11, w.w13, w.w15, w.w17);
        let p = FeasiblePoint::from_omegas(&w)?;
        println!("{name}:");
        for g in &gammas {
            println!("  gamma_{} = {:.12}", g.index, g.value);
        }
        println!(
            "  gamma_4 via a_n {:.3e} off, via omega {:.3e} off",
            (from_a - g4).norm(),
            (from_w - g4).norm()
        );
        println!(
            "  |gamma_4| = {:.6} <= phi1 {:.6} <= psi1 {:.6}",
            g4.norm(),
            Functional::Gamma4.phi(&p),
            psi1(p.x, p.y, p.z)?
        );
        println!(
            "  |a5|-|a4| = {:.6} <= majorant {:.6}",
            a(5).norm() - a(4).norm(),
            a5_minus_a4_majorant(w.w11, w.w13, w.w15, w.w17)
        );
    }
    Ok(())
}
