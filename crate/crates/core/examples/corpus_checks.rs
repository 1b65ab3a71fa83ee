//! Full check table for every built-in function, and for a user series
//! read from a coefficient file.

use grunsky::corpus::{self, check_function, CheckOptions, NamedFunction};

const USER_FILE: &str = "\
# z + z^2/2 + z^3/6, truncated exponential shape
0 0
1 0
0.5 0
0.16666666666666666 0
";

fn main() -> grunsky::Result<()> {
    let opts = CheckOptions::default();
    for f in corpus::builtin_corpus() {
        let r = check_function(&f, &opts)?;
        let failed: Vec<&str> = r
            .rows
            .iter()
            .filter(|row| !row.pass)
            .map(|row| row.check.as_str())
            .collect();
        println!(
            "{:<22} {} rows, failed: {:?}",
            r.subject,
            r.rows.len(),
            failed
        );
    }

    let user = NamedFunction::from_series("user", corpus::parse_coefficients(USER_FILE)?)?;
    let r = check_function(&user, &opts)?;
    println!("user file (assumed univalent: {}):", r.assumed_univalent);
    for row in &r.rows {
        println!(
            "  {:<5} {:<32} {:+.3e}",
            if row.pass { "PASS" } else { "FAIL" },
            row.check,
            row.margin
        );
    }
    Ok(())
}
