//! Checks Hilbert derivations and shows the per-line diagnostics.

use fuzzy_doxastic::hilbert::{load_derivation, verify_derivation};

const DERIVATIONS: [(&str, &str); 3] = [
    (
        "conj_intro",
        include_str!("../fixtures/derivations/conj_intro.json"),
    ),
    ("bl_k", include_str!("../fixtures/derivations/bl_k.json")),
    (
        "gen_premise",
        include_str!("../fixtures/derivations/gen_premise.json"),
    ),
];

fn main() {
    for (name, text) in DERIVATIONS {
        let (sys, d) = load_derivation(text).unwrap();
        let report = verify_derivation(&d, &sys);
        println!(
            "{name} in {sys}: {}",
            if report.ok { "verified" } else { "rejected" }
        );
        for (line, diag) in d.lines.iter().zip(&report.lines) {
            let mark = if diag.ok { " " } else { "!" };
            let dep = if diag.premise_dependent { "*" } else { " " };
            println!("  {mark}{dep}{:>2}. {}", diag.line, line.formula);
            if let Some(msg) = &diag.message {
                println!("        {msg}");
            }
        }
    }
}
