//! Parsing formulas, printing them back, and expanding derived connectives.

use fuzzy_doxastic::formula::{parse_formula, print_formula};

fn main() {
    for text in [
        "B{a} p -> B{a} B{a} p",
        "!S{bob} (p & q) <-> (p + !q)",
        "p ^ q v bot",
        "B{a} (p -> q",
    ] {
        match parse_formula(text) {
            Ok(f) => {
                println!("{text}");
                println!("  printed:  {}", print_formula(&f));
                println!("  expanded: {}", f.expand_derived());
                println!("  depth {}, agents {:?}", f.depth(), f.agents());
            }
            Err(e) => println!("{text}\n  error: {e}"),
        }
    }
}
