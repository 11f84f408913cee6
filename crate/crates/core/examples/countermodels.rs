//! Evaluates introspection formulas on the small three-state model and
//! compares the two readings of skeptical belief.

use fuzzy_doxastic::fixtures;
use fuzzy_doxastic::formula::parse_formula;
use fuzzy_doxastic::semantics::{eval_all_states, EvalContext, SkepticalVariant};

fn main() {
    let m = fixtures::m1();
    let formulas = [
        "B{a} p",
        "B{a} B{a} p",
        "B{a} p -> B{a} B{a} p",
        "!B{a} bot",
        "S{a} p -> S{a} S{a} p",
        "!S{a} p -> S{a} !S{a} p",
    ];
    for variant in [SkepticalVariant::SourceState, SkepticalVariant::TargetState] {
        println!("skeptical reading: {variant}");
        let ctx = EvalContext::with_variant(&m, variant);
        for text in formulas {
            let values = eval_all_states(&ctx, &parse_formula(text).unwrap()).unwrap();
            let row: Vec<String> = values.iter().map(|(s, v)| format!("{s}={v}")).collect();
            println!("  {text:<28} {}", row.join("  "));
        }
    }
}
