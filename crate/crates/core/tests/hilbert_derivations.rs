mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fuzzy_doxastic::formula::{random_formula, AgentId, BeliefKind, FormulaGen};
use fuzzy_doxastic::hilbert::{
    load_derivation, match_scheme, verify_derivation, AxiomSystem, Base, Extension, SchemeCatalog,
};
use fuzzy_doxastic::model::sample_model;
use fuzzy_doxastic::semantics::SkepticalVariant;
use fuzzy_doxastic::validity::{check_validity_in_model, instantiate, Substitution};

fn corpus() -> BTreeMap<String, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/derivations");
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(path).unwrap())
        })
        .collect()
}

#[test]
fn corpus_verdicts() {
    for (name, text) in corpus() {
        let (sys, d) = load_derivation(&text).unwrap();
        let report = verify_derivation(&d, &sys);
        assert_eq!(
            report.ok,
            name != "gen_premise",
            "{name}: {:?}",
            report.first_error()
        );
    }
}

#[test]
fn conj_intro_dependence() {
    let (sys, d) = load_derivation(&corpus()["conj_intro"]).unwrap();
    let report = verify_derivation(&d, &sys);
    let dependent: Vec<bool> = report.lines.iter().map(|l| l.premise_dependent).collect();
    assert_eq!(dependent, [false, false, false, true, true, true, true]);
}

#[test]
fn generalizing_a_premise_is_rejected() {
    let (sys, d) = load_derivation(&corpus()["gen_premise"]).unwrap();
    let err = verify_derivation(&d, &sys).first_error().cloned().unwrap();
    assert_eq!(
        (err.line, err.message.as_deref()),
        (2, Some("generalization over premise-dependent line"))
    );
}

/// The skeptical variant under which a system's axioms are sound. The star
/// extension needs the target-state reading.
fn sound_variant(sys: &AxiomSystem) -> SkepticalVariant {
    if sys.extensions.contains(&Extension::Star) {
        SkepticalVariant::TargetState
    } else {
        SkepticalVariant::SourceState
    }
}

#[test]
fn theorems_hold_on_matching_frames() {
    for (name, text) in corpus() {
        let (sys, d) = load_derivation(&text).unwrap();
        if !d.premises.is_empty() || !verify_derivation(&d, &sys).ok {
            continue;
        }
        let conclusion = d.conclusion().unwrap();
        let constraints: Vec<_> = sys.frame_constraints().into_iter().collect();
        for seed in 0..100u64 {
            let cfg = common::sampler(1 + (seed % 4) as usize, 12, seed, &constraints);
            let m = sample_model(&cfg).unwrap();
            let check = check_validity_in_model(&m, conclusion, sound_variant(&sys)).unwrap();
            assert!(
                check.valid,
                "{name}: {conclusion} = {} at {} (seed {seed})",
                check.min_value, check.argmin_state
            );
        }
    }
}

fn instance_gen(kind: Option<BeliefKind>) -> FormulaGen {
    let mut gen = FormulaGen::new(&["p", "q"], &["a", "b"]);
    gen.kinds = kind.into_iter().collect();
    gen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn match_inverts_instantiate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, scheme) in SchemeCatalog::standard().iter() {
            let kind = scheme.template().belief_kinds().into_iter().next();
            let gen = instance_gen(kind);
            let mut sub = Substitution::new();
            for v in scheme.formula_vars() {
                sub.formulas.insert(v, random_formula(&mut rng, &gen, 3));
            }
            for v in scheme.agent_vars() {
                sub.agents.insert(v, AgentId::new(if seed % 2 == 0 { "a" } else { "b" }).unwrap());
            }
            let f = instantiate(scheme, &sub).unwrap();
            let found = match_scheme(&f, scheme);
            prop_assert_eq!(found.as_ref(), Some(&sub), "{}", name);
            prop_assert_eq!(instantiate(scheme, &found.unwrap()).unwrap(), f);
        }
    }
}

#[test]
fn system_bases() {
    assert_eq!(
        "SBL_star".parse::<AxiomSystem>().unwrap().base,
        Base::Skeptical
    );
    assert_eq!("BL_D45".parse::<AxiomSystem>().unwrap().base, Base::Pseudo);
}
