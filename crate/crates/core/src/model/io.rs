//! JSON model files.
//!
//! ```json
//! {"states": ["s0", "s1"], "agents": ["a"], "props": ["p"],
//!  "access": {"a": {"s0": {"s0": "0.6", "s1": "3/5"}, "s1": {...}}},
//!  "valuation": {"s0": {"p": "0.8"}, "s1": {"p": "1"}}}
//! ```
//!
//! Values are strings holding a decimal or a fraction and are read exactly.
//! Every access and valuation entry must be present.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::kripke::{Model, ModelBuilder, ModelError};
use super::rational::Rational01;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    states: Vec<String>,
    agents: Vec<String>,
    props: Vec<String>,
    access: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    valuation: BTreeMap<String, BTreeMap<String, String>>,
}

fn value(text: &str, context: impl FnOnce() -> String) -> Result<Rational01, ModelError> {
    text.parse().map_err(|source| ModelError::Value {
        context: context(),
        source,
    })
}

pub fn load_model(text: &str) -> Result<Model, ModelError> {
    let file: ModelFile = serde_json::from_str(text)?;
    let mut b = ModelBuilder::new(&file.states, &file.agents, &file.props)?;
    for (agent, rows) in &file.access {
        for (from, row) in rows {
            for (to, v) in row {
                let v = value(v, || format!("access[{agent}][{from}][{to}]"))?;
                b.set_access(agent, from, to, v)?;
            }
        }
    }
    for (state, row) in &file.valuation {
        for (prop, v) in row {
            let v = value(v, || format!("valuation[{state}][{prop}]"))?;
            b.set_value(state, prop, v)?;
        }
    }
    b.build()
}

fn render(v: &Rational01) -> String {
    if v.is_zero() {
        "0".into()
    } else if v.is_one() {
        "1".into()
    } else {
        v.to_string()
    }
}

pub fn save_model(m: &Model) -> String {
    let mut access = BTreeMap::new();
    for (a, agent) in m.agents().iter().enumerate() {
        let mut rows = BTreeMap::new();
        for (i, from) in m.states().iter().enumerate() {
            let row: BTreeMap<_, _> = m
                .states()
                .iter()
                .enumerate()
                .map(|(j, to)| (to.to_string(), render(m.access(a, i, j))))
                .collect();
            rows.insert(from.to_string(), row);
        }
        access.insert(agent.to_string(), rows);
    }
    let valuation = m
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let row = m
                .props()
                .iter()
                .enumerate()
                .map(|(p, prop)| (prop.to_string(), render(m.value(i, p))))
                .collect();
            (s.to_string(), row)
        })
        .collect();
    let file = ModelFile {
        states: m.states().iter().map(ToString::to_string).collect(),
        agents: m.agents().iter().map(ToString::to_string).collect(),
        props: m.props().iter().map(ToString::to_string).collect(),
        access,
        valuation,
    };
    serde_json::to_string_pretty(&file).expect("model file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "states": ["s0", "s1"], "agents": ["a"], "props": ["p"],
        "access": {"a": {"s0": {"s0": "1", "s1": "0.6"}, "s1": {"s0": "0", "s1": "2/7"}}},
        "valuation": {"s0": {"p": "0.8"}, "s1": {"p": "1/3"}}
    }"#;

    #[test]
    fn loads_exact_values() {
        let m = load_model(SMALL).unwrap();
        assert_eq!(m.access(0, 0, 1), &Rational01::from_ratio(3, 5));
        assert_eq!(m.value(1, 0), &Rational01::from_ratio(1, 3));
    }

    #[test]
    fn save_then_load_is_identity() {
        let m = load_model(SMALL).unwrap();
        assert_eq!(load_model(&save_model(&m)).unwrap(), m);
    }

    #[test]
    fn error_cases() {
        let empty =
            r#"{"states": [], "agents": ["a"], "props": [], "access": {"a": {}}, "valuation": {}}"#;
        assert_eq!(
            load_model(empty).unwrap_err().to_string(),
            "at least one state required"
        );

        let missing = SMALL.replace(r#", "s1": "2/7""#, "");
        assert!(matches!(
            load_model(&missing),
            Err(ModelError::MissingAccess { .. })
        ));

        let out_of_range = SMALL.replace("0.8", "1.5");
        assert!(matches!(
            load_model(&out_of_range),
            Err(ModelError::Value { .. })
        ));

        let dup = SMALL.replace(r#""props": ["p"]"#, r#""props": ["p", "p"]"#);
        assert!(matches!(
            load_model(&dup),
            Err(ModelError::Duplicate { .. })
        ));

        let unknown = SMALL.replace(
            r#""valuation": {"s0""#,
            r#""valuation": {"s9": {"p": "0"}, "s0""#,
        );
        assert!(matches!(
            load_model(&unknown),
            Err(ModelError::Unknown { .. })
        ));

        assert!(matches!(
            load_model("{\"states\": 3}"),
            Err(ModelError::Json(_))
        ));
    }
}
