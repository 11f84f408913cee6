//! Frame property checks, constrained sampling, and min-transitive closure.

use fuzzy_doxastic::fixtures;
use fuzzy_doxastic::model::{
    check_frame_property, min_transitive_closure, sample_model, FrameProperty, SamplerConfig,
};

fn main() {
    for (name, m) in [("m1", fixtures::m1()), ("cpa", fixtures::cpa_two_bit())] {
        for prop in FrameProperty::ALL {
            let check = check_frame_property(&m, prop);
            match check.witness {
                None => println!("{name}: {prop} holds"),
                Some(w) => println!("{name}: {prop} fails at {w}"),
            }
        }
    }

    let cfg = SamplerConfig {
        states: 4,
        agents: 1,
        props: vec!["p".into()],
        denominator: 10,
        seed: 7,
        constraints: [FrameProperty::Reflexive, FrameProperty::Transitive]
            .into_iter()
            .collect(),
    };
    let m = sample_model(&cfg).unwrap();
    println!("sampled reflexive, transitive model:");
    for row in m.access_matrix(0) {
        println!(
            "  {}",
            row.iter()
                .map(|r| format!("{:>5}", r.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    let raw = sample_model(&SamplerConfig {
        constraints: Default::default(),
        ..cfg
    })
    .unwrap();
    let mut closed = raw.access_matrix(0).to_vec();
    min_transitive_closure(&mut closed);
    let closed = raw.with_access(0, closed);
    println!(
        "closure of an unconstrained sample: transitive before {}, after {}",
        check_frame_property(&raw, FrameProperty::Transitive).holds,
        check_frame_property(&closed, FrameProperty::Transitive).holds
    );
}
