use fuzzy_doxastic::fixtures;
use fuzzy_doxastic::formula::parse_formula;
use fuzzy_doxastic::model::{check_frame_property, FrameProperty, Rational01};
use fuzzy_doxastic::semantics::{eval_all_states, EvalContext, SkepticalVariant};
use fuzzy_doxastic::validity::check_validity_in_model;

fn q(n: i64, d: i64) -> Rational01 {
    Rational01::from_ratio(n, d)
}

fn eval(
    m: &fuzzy_doxastic::model::Model,
    variant: SkepticalVariant,
    state: &str,
    f: &str,
) -> Rational01 {
    EvalContext::with_variant(m, variant)
        .eval(state, &parse_formula(f).unwrap())
        .unwrap()
}

#[test]
fn m1_pseudo_classical_values() {
    let m = fixtures::m1();
    let v = |f| eval(&m, SkepticalVariant::SourceState, "s0", f);
    assert_eq!(v("B{a} p"), q(4, 5));
    assert_eq!(v("B{a} B{a} p"), q(7, 10));
    assert_eq!(v("!B{a} bot"), q(3, 5));
    assert_eq!(v("B{a} p -> B{a} B{a} p"), q(9, 10));
    assert_eq!(v("B{a} !B{a} p"), q(2, 5));
    // the published 0.6 adds V(¬Bp) to V(B¬Bp) instead of taking the residuum
    assert_eq!(v("!B{a} p -> B{a} !B{a} p"), q(1, 1));
    let mq = fixtures::m1_with_q();
    assert_eq!(
        eval(&mq, SkepticalVariant::SourceState, "s0", "B{a} q -> q"),
        q(4, 5)
    );
}

#[test]
fn m1_skeptical_target_values() {
    let m = fixtures::m1();
    let v = |f| eval(&m, SkepticalVariant::TargetState, "s0", f);
    assert_eq!(v("S{a} p"), q(12, 25));
    assert_eq!(v("S{a} S{a} p"), q(63, 250));
    assert_eq!(v("!S{a} p"), q(13, 25));
    assert_eq!(v("S{a} !S{a} p"), q(39, 125));
    assert_eq!(v("!S{a} p -> S{a} !S{a} p"), q(99, 125));
    assert_eq!(v("S{a} p -> S{a} S{a} p"), q(193, 250));
}

#[test]
fn m1_skeptical_source_differs_from_target() {
    let m = fixtures::m1();
    assert_eq!(
        eval(&m, SkepticalVariant::SourceState, "s0", "S{a} p"),
        q(12, 25)
    );
    assert_eq!(
        eval(&m, SkepticalVariant::SourceState, "s0", "S{a} S{a} p"),
        q(36, 125)
    );
}

#[test]
fn cpa_two_bit_values() {
    let m = fixtures::cpa_two_bit();
    let ctx = EvalContext::with_variant(&m, SkepticalVariant::SourceState);
    let all = eval_all_states(&ctx, &parse_formula("S{a} p").unwrap()).unwrap();
    let got: Vec<(String, Rational01)> = all.into_iter().map(|(s, v)| (s.to_string(), v)).collect();
    assert_eq!(
        got,
        vec![
            ("s00".into(), q(1, 2)),
            ("s01".into(), q(1, 2)),
            ("s10".into(), q(1, 2)),
            ("s11".into(), q(1, 1))
        ]
    );
    assert_eq!(
        eval(&m, SkepticalVariant::SourceState, "s11", "B{a} p"),
        q(1, 2)
    );
}

#[test]
fn frame_checks_on_fixtures() {
    let m = fixtures::m1();
    let t = check_frame_property(&m, FrameProperty::Transitive);
    assert!(!t.holds);
    assert_eq!(t.witness.unwrap().to_string(), "(a, s0, s1, s2)");
    let r = check_frame_property(&m, FrameProperty::Recognizable);
    assert_eq!(r.witness.unwrap().to_string(), "(a, s0, s0)");
    assert!(check_frame_property(&fixtures::cpa_two_bit(), FrameProperty::RCrisp).holds);
}

#[test]
fn validity_in_m1() {
    let m = fixtures::m1();
    let c = check_validity_in_model(
        &m,
        &parse_formula("B{a} p -> B{a} B{a} p").unwrap(),
        SkepticalVariant::SourceState,
    )
    .unwrap();
    assert!(!c.valid);
    assert_eq!((c.min_value, c.argmin_state.as_str()), (q(9, 10), "s0"));
    let c = check_validity_in_model(
        &m,
        &parse_formula("(B{a} p & B{a}(p -> q)) -> B{a} q").unwrap(),
        SkepticalVariant::SourceState,
    );
    // q is not in M1's universe
    assert!(c.is_err());
    let mq = fixtures::m1_with_q();
    let c = check_validity_in_model(
        &mq,
        &parse_formula("(B{a} p & B{a}(p -> q)) -> B{a} q").unwrap(),
        SkepticalVariant::SourceState,
    )
    .unwrap();
    assert!(c.valid);
    let c = check_validity_in_model(
        &m,
        &parse_formula("S{a} p -> S{a} S{a} p").unwrap(),
        SkepticalVariant::TargetState,
    )
    .unwrap();
    assert_eq!(
        (c.valid, c.min_value, c.argmin_state.as_str()),
        (false, q(193, 250), "s0")
    );
}
