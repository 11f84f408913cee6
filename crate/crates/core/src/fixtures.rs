//! The two small published models used throughout the tests and examples.

use crate::model::{Model, Rational01};

fn dec(s: &str) -> Rational01 {
    s.parse().expect("literal value")
}

/// Three-state, one-agent countermodel for the introspection, seriality and
/// truth schemes. Edge labels follow the published diagram:
///
/// ```text
///        s0    s1    s2
///  s0   0.6   0.6   0
///  s1   0     0.6   0.6
///  s2   0.6   0     0.6
/// ```
///
/// with `π(p) = (0.8, 0.9, 0.7)`.
pub fn m1() -> Model {
    let states = ["s0", "s1", "s2"];
    let access = [
        ["0.6", "0.6", "0"],
        ["0", "0.6", "0.6"],
        ["0.6", "0", "0.6"],
    ];
    let p = ["0.8", "0.9", "0.7"];
    let mut b = Model::builder(&states, &["a"], &["p"]).expect("fixture ids");
    for (i, row) in access.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            b.set_access_idx(0, i, j, dec(v));
        }
        b.set_value_idx(i, 0, dec(p[i]));
    }
    b.build().expect("fixture is total")
}

/// [`m1`] extended with `q = 0.2` at every state.
pub fn m1_with_q() -> Model {
    m1().with_prop("q", &[dec("0.2"), dec("0.2"), dec("0.2")])
        .expect("q is fresh")
}

/// The 2-bit CPA experiment model: one query revealed `F_k(11)` and the
/// challenge reuses `r = 11`. Every state perfectly distinguishes `s11`
/// (`r(·, s11) = 0`), all other pairs are indistinguishable (`r = 1`);
/// `π(s11, p) = 1` and `π(s, p) = 1/2` elsewhere.
pub fn cpa_two_bit() -> Model {
    let states = ["s00", "s01", "s10", "s11"];
    let mut b = Model::builder(&states, &["a"], &["p"]).expect("fixture ids");
    for (i, _) in states.iter().enumerate() {
        for (j, to) in states.iter().enumerate() {
            let v = if *to == "s11" {
                Rational01::zero()
            } else {
                Rational01::one()
            };
            b.set_access_idx(0, i, j, v);
        }
        let p = if states[i] == "s11" {
            Rational01::one()
        } else {
            Rational01::half()
        };
        b.set_value_idx(i, 0, p);
    }
    b.build().expect("fixture is total")
}
