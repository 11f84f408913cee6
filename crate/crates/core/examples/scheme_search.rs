//! Random counterexample search for introspection schemes, with and without
//! the frame property that validates them.

use fuzzy_doxastic::model::{FrameProperty, SamplerConfig};
use fuzzy_doxastic::semantics::SkepticalVariant;
use fuzzy_doxastic::validity::{search_counterexample, Scheme, SearchConfig};

fn config(constraints: &[FrameProperty]) -> SearchConfig {
    SearchConfig {
        sampler: SamplerConfig {
            states: 3,
            agents: 1,
            props: vec!["p".into(), "q".into()],
            denominator: 10,
            seed: 1,
            constraints: constraints.iter().copied().collect(),
        },
        depth: 2,
        trials: 2000,
        variant: SkepticalVariant::SourceState,
    }
}

fn main() {
    let cases = [
        ("!B bot", FrameProperty::Serial),
        ("B ?phi -> ?phi", FrameProperty::Reflexive),
        ("B ?phi -> B B ?phi", FrameProperty::Transitive),
        ("!B ?phi -> B !B ?phi", FrameProperty::Recognizable),
    ];
    for (text, prop) in cases {
        let scheme = Scheme::parse(text).unwrap();
        match search_counterexample(&scheme, &config(&[])).unwrap() {
            Some(r) => println!(
                "{text}: refuted by {} = {} at {} (trial {})",
                r.formula, r.value, r.state, r.trial
            ),
            None => println!("{text}: no counterexample"),
        }
        let constrained = search_counterexample(&scheme, &config(&[prop])).unwrap();
        println!(
            "  on {prop} frames: {}",
            if constrained.is_some() {
                "refuted"
            } else {
                "no counterexample in 2000 trials"
            }
        );
    }
}
