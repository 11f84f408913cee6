//! Builds the fuzzy muddy children model and asks what each child believes
//! about their own forehead.

use fuzzy_doxastic::formula::parse_formula;
use fuzzy_doxastic::model::Rational01;
use fuzzy_doxastic::scenarios::{build_muddy_model, muddy_agent, muddy_prop, MuddyConfig};
use fuzzy_doxastic::semantics::EvalContext;

fn main() {
    let cfg = MuddyConfig::new(
        3,
        vec![Rational01::from_ratio(4, 5), Rational01::one()],
        Rational01::half(),
    );
    let m = build_muddy_model(&cfg).unwrap();
    println!(
        "{} states: {}",
        m.num_states(),
        m.states()
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let ctx = EvalContext::new(&m);
    for i in 0..2 {
        let (a, own) = (muddy_agent(i), muddy_prop(i));
        let other = muddy_prop(1 - i);
        for text in [
            format!("B{{{a}}} {own}"),
            format!("B{{{a}}} {other}"),
            format!("S{{{a}}} {other}"),
        ] {
            let values = ctx.values(&parse_formula(&text).unwrap()).unwrap();
            println!(
                "{text:<14} {}",
                values
                    .iter()
                    .map(|v| format!("{:>6}", v.to_string()))
                    .collect::<Vec<_>>()
                    .join("")
            );
        }
    }
}
