//! Driving the command-line front end in-process and parsing its JSON.

use grunsky::cli;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("grunsky").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap(),
    )
}

fn main() {
    let (code, text) = run(&["identities", "koebe"]);
    println!("identities koebe -> exit {code}\n{text}");

    let (code, json) = run(&["--format", "json", "--threads", "2", "maximize", "gamma4"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    println!(
        "maximize gamma4 -> exit {code}, certificate {}",
        v["certificate"]
    );

    let (code, csv) = run(&["--format", "csv", "maximize", "a5a4", "--strata-only"]);
    println!("maximize a5a4 --strata-only -> exit {code}\n{csv}");

    let (code, text) = run(&["--order", "4", "corpus"]);
    println!("--order 4 -> exit {code}: {}", text.trim());
}
