//! Plays a toy CPA game, turns the transcript into a belief model, and sweeps
//! the success statistic over the security parameter.

use fuzzy_doxastic::model::Rational01;
use fuzzy_doxastic::scenarios::{
    belief_success_statistic, bits, build_cpa_model, cpa_security_sweep, learned_from_transcript,
    toy_encrypt, CpaConfig, SweepConfig, SweepMode, CPA_AGENT, CPA_PROP,
};
use fuzzy_doxastic::semantics::SkepticalVariant;

fn main() {
    let n = 4;
    let key = 0b1011;
    let transcript: Vec<_> = [(0b0001, 0b0110)]
        .into_iter()
        .map(|(m, r)| (m, toy_encrypt(key, r, m)))
        .collect();
    let learned = learned_from_transcript(&transcript);
    for (r, f) in &learned {
        println!("learned F_k({}) = {}", bits(*r, n), bits(*f, n));
    }

    for challenge in [0b0110, 0b1000] {
        let cfg = CpaConfig::new(n, learned.keys().copied(), challenge);
        let m = build_cpa_model(&cfg).unwrap();
        let stat = belief_success_statistic(&m, CPA_AGENT, CPA_PROP, SkepticalVariant::SourceState)
            .unwrap();
        let reused = if cfg.challenge_reused() {
            "reused"
        } else {
            "fresh"
        };
        println!(
            "challenge r = {} ({reused}): {} of {} states above 1/2, statistic {}",
            bits(challenge, n),
            stat.count_above,
            stat.total_states,
            stat.ratio
        );
    }

    let sweep = SweepConfig {
        n_min: 2,
        n_max: 10,
        n0: 1,
        reuse: true,
        mode: SweepMode::Explicit,
        variant: SkepticalVariant::SourceState,
    };
    for row in cpa_security_sweep(&sweep, |n| Rational01::from_ratio(1, i64::from(n * n))).unwrap()
    {
        println!(
            "n = {:>2}: {:<7} vs 1/n^2 = {:<6} {}",
            row.n,
            row.statistic.to_string(),
            row.bound.to_string(),
            if row.pass { "ok" } else { "above" }
        );
    }
}
