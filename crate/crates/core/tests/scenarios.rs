mod common;

use common::q;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use fuzzy_doxastic::model::{check_frame_property, FrameProperty, Rational01};
use fuzzy_doxastic::scenarios::{
    belief_success_statistic, build_cpa_model, build_muddy_model, cpa_statistic_analytic,
    load_cpa_config, load_muddy_config, CpaConfig, MuddyConfig,
};
use fuzzy_doxastic::semantics::SkepticalVariant;

/// `r_{a_i}(s,t)` recomputed from mud levels given as plain fractions.
fn muddy_oracle(
    v: &BigRational,
    alpha: &BigRational,
    s: &[BigRational],
    t: &[BigRational],
) -> BigRational {
    s.iter()
        .zip(t)
        .map(|(x, y)| {
            if x == y {
                v.clone()
            } else {
                v * (BigRational::one() - alpha * (x - y).abs())
            }
        })
        .min()
        .unwrap()
}

fn grid_point(index: &str, n: usize) -> Vec<BigRational> {
    index
        .trim_start_matches('s')
        .split('_')
        .map(|i| BigRational::new(i.parse::<i64>().unwrap().into(), ((n - 1) as i64).into()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn muddy_invariants(
        k in 1usize..=3,
        n in 2usize..=4,
        imp in proptest::collection::vec((0i64..=5, 1i64..=5), 3),
        alpha in (1i64..=4, 5i64..=5),
    ) {
        let impairments: Vec<Rational01> = imp.iter().take(k).map(|&(a, b)| q(a.min(b), b)).collect();
        let cfg = MuddyConfig::new(n, impairments.clone(), q(alpha.0, alpha.1));
        let m = build_muddy_model(&cfg).unwrap();
        prop_assert_eq!(m.num_states(), n.pow(k as u32));
        for (i, vi) in impairments.iter().enumerate() {
            let v = vi.as_big();
            for s in 0..m.num_states() {
                prop_assert_eq!(m.access(i, s, s), vi);
                for t in 0..m.num_states() {
                    let r = m.access(i, s, t);
                    prop_assert_eq!(r, m.access(i, t, s));
                    prop_assert!(r <= vi);
                    let expected = muddy_oracle(
                        v,
                        cfg.alpha.as_big(),
                        &grid_point(m.states()[s].as_str(), n),
                        &grid_point(m.states()[t].as_str(), n),
                    );
                    prop_assert_eq!(r.as_big(), &expected);
                }
            }
        }
    }

    #[test]
    fn cpa_models_are_crisp_and_bounded(n in 1u32..=6, mask in any::<u64>(), pick in any::<u64>()) {
        let size = 1u64 << n;
        let queried: Vec<u64> = (0..size).filter(|r| mask & (1 << (r % 64)) != 0).collect();
        let challenge = pick % size;
        let cfg = CpaConfig::new(n, queried.iter().copied(), challenge);
        let m = build_cpa_model(&cfg).unwrap();
        prop_assert!(check_frame_property(&m, FrameProperty::RCrisp).holds);
        let stat = belief_success_statistic(&m, "a", "p", SkepticalVariant::SourceState).unwrap();
        prop_assert!(stat.ratio <= cpa_statistic_analytic(n, queried.len() as u64));
        prop_assert_eq!(stat.ratio.as_big(), &BigRational::new((stat.count_above as i64).into(), (size as i64).into()));
    }
}

#[test]
fn muddy_example_values() {
    let cfg = load_muddy_config(r#"{"k": 1, "n": 2, "impairments": {"a1": "1"}, "alpha": "0.5"}"#)
        .unwrap();
    let m = build_muddy_model(&cfg).unwrap();
    assert_eq!(m.access(0, 0, 1), &q(1, 2));
}

#[test]
fn cpa_config_files() {
    let cfg = load_cpa_config(r#"{"n_bits": 2, "queried": ["11"], "challenge_r": "00"}"#).unwrap();
    assert!(!cfg.challenge_reused());
    assert!(load_cpa_config(r#"{"n_bits": 2, "queried": ["111"], "challenge_r": "00"}"#).is_err());
    assert!(load_cpa_config(r#"{"n_bits": 2, "challenge_r": "00", "extra": 1}"#).is_err());
}
