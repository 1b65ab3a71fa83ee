//! Grunsky coefficient tables of the Koebe function and of its odd
//! square-root transform, plus a JSON round trip.

use grunsky::corpus;
use grunsky::grunsky::{compute_grunsky, odd_grunsky_of, GrunskyTable};

fn print_table(t: &GrunskyTable, max: usize) {
    for p in 1..=max {
        let row: Vec<String> = (1..=max)
            .map(|q| match t.get(p, q) {
                Some(w) => format!("{:>9.5}", w.re),
                None => format!("{:>9}", "-"),
            })
            .collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> grunsky::Result<()> {
    let koebe = corpus::find("koebe").expect("built in").series(16)?;

    let t = compute_grunsky(&koebe, 7, "koebe")?;
    println!("koebe, 7x7 (diagonal -1/p):");
    print_table(&t, 7);

    let odd = odd_grunsky_of(&koebe, "koebe")?;
    println!("odd transform, order {} (odd indices only):", odd.order());
    print_table(&odd, 7);
    println!("parity violation {:.1e}", odd.parity_violation());

    let json = serde_json::to_string(&t.to_document()).expect("serializes");
    let back = GrunskyTable::from_document(&serde_json::from_str(&json).expect("parses"))?;
    println!("JSON round trip equal: {}", back == t);
    Ok(())
}
