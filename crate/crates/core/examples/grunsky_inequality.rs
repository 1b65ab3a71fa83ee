//! Truncated Grunsky inequality on seeded random vectors. Equality holds
//! for the Koebe function on the first row.

use grunsky::corpus;
use grunsky::grunsky::{
    cascade_bounds, compute_grunsky, four_term_bound_check, grunsky_quadratic_check,
    odd_grunsky_of, FourTermBlock, TestVector,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grunsky::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["koebe", "slit-like", "starlike-quad@pi/4"] {
        let s = corpus::find(name).unwrap().series(16)?;
        let t = compute_grunsky(&s, 6, name)?;
        let odd = odd_grunsky_of(&s, name)?;
        let block = FourTermBlock::from_table(&odd)?;
        let mut worst = f64::NEG_INFINITY;
        let mut worst4 = f64::NEG_INFINITY;
        for _ in 0..1000 {
            let x = TestVector::random(&mut rng, 6);
            let c = grunsky_quadratic_check(&t, &x, 3)?;
            worst = worst.max(c.lhs - c.rhs);
            let c4 = four_term_bound_check(&block, x.get(1), x.get(3));
            worst4 = worst4.max(c4.lhs - c4.rhs);
        }
        let cascade = cascade_bounds(&odd)?;
        println!(
            "{name:<20} max(lhs-rhs) {worst:+.3e}  four-term {worst4:+.3e}  cascade margin {:+.3e}",
            cascade.worst_margin()
        );
    }

    let s = corpus::find("koebe").unwrap().series(16)?;
    let t = compute_grunsky(&s, 6, "koebe")?;
    let x1 = TestVector::new(vec![Complex64::new(1.0, 0.0)])?;
    let c = grunsky_quadratic_check(&t, &x1, 1)?;
    println!("koebe with x = (1): lhs {:.15} rhs {:.15}", c.lhs, c.rhs);
    Ok(())
}
