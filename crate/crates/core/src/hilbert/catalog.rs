use std::sync::OnceLock;

use crate::validity::Scheme;

const SCHEMES: &[(&str, &str)] = &[
    ("A1", "(?phi -> ?psi) -> ((?psi -> ?chi) -> (?phi -> ?chi))"),
    ("A2", "(?phi & ?psi) -> ?phi"),
    ("A3", "(?phi & ?psi) -> (?psi & ?phi)"),
    ("A4", "(?phi & (?phi -> ?psi)) -> (?psi & (?psi -> ?phi))"),
    ("A5", "(?phi -> (?psi -> ?chi)) <-> ((?phi & ?psi) -> ?chi)"),
    (
        "A6",
        "((?phi -> ?psi) -> ?chi) -> (((?psi -> ?phi) -> ?chi) -> ?chi)",
    ),
    ("A7", "bot -> ?phi"),
    ("L1", "?phi -> (?psi -> ?phi)"),
    ("L2", "(?phi -> ?psi) -> ((?psi -> ?chi) -> (?phi -> ?chi))"),
    ("L3", "(!?phi -> !?psi) -> (?psi -> ?phi)"),
    ("L4", "((?phi -> ?psi) -> ?psi) -> ((?psi -> ?phi) -> ?phi)"),
    ("L5", "!(?phi & ?psi) <-> (!?phi + !?psi)"),
    ("L6", "!(?phi + ?psi) <-> (!?phi & !?psi)"),
    ("L7", "(?phi + ?psi) <-> (!?phi -> ?psi)"),
    ("L8", "?phi -> (?phi + ?psi)"),
    ("L9", "(?phi & (?phi -> ?psi)) -> ?psi"),
    (
        "L10",
        "((?phi1 -> ?psi1) & (?phi2 -> ?psi2)) -> ((?phi1 & ?phi2) -> (?psi1 & ?psi2))",
    ),
    ("L11", "!!?phi <-> ?phi"),
    (
        "L12",
        "(?phi <-> ?psi) -> ((?phi -> ?chi) <-> (?psi -> ?chi))",
    ),
    (
        "L13",
        "(?phi <-> ?psi) -> ((?chi -> ?phi) <-> (?chi -> ?psi))",
    ),
    (
        "L14",
        "(?phi <-> ?psi) -> ((?phi & ?chi) <-> (?psi & ?chi))",
    ),
    ("L15", "(?phi -> bot) <-> !?phi"),
    ("LB1", "(B{?a} ?phi & B{?a} (?phi -> ?psi)) -> B{?a} ?psi"),
    ("LB2", "!B{?a} bot"),
    ("LB3", "B{?a} ?phi -> B{?a} B{?a} ?phi"),
    ("LB4", "!B{?a} ?phi -> B{?a} !B{?a} ?phi"),
    ("LB5", "B{?a} ?phi -> ?phi"),
    ("SB1", "(S{?a} ?phi & S{?a} (?phi -> ?psi)) -> S{?a} ?psi"),
    ("SB2", "!S{?a} bot"),
    ("SB3", "S{?a} ?phi -> ?phi"),
    ("SBplus", "S{?a} ?phi -> S{?a} S{?a} ?phi"),
    ("SBminus", "!S{?a} ?phi -> S{?a} !S{?a} ?phi"),
];

/// Schemes whose main connective is `<->`. Each also gets the one-way halves
/// `NAME_lr` and `NAME_rl`, since modus ponens only detaches implications.
const BICONDITIONALS: &[&str] = &["A5", "L5", "L6", "L7", "L11", "L15"];

/// The propositional schemes, without the one-way halves.
pub const PROPOSITIONAL: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9",
    "L10", "L11", "L12", "L13", "L14", "L15",
];

/// Every named axiom scheme, in catalog order.
#[derive(Debug)]
pub struct SchemeCatalog {
    entries: Vec<(String, Scheme)>,
}

impl SchemeCatalog {
    pub fn standard() -> &'static SchemeCatalog {
        static CATALOG: OnceLock<SchemeCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let mut entries = Vec::new();
            for (name, text) in SCHEMES {
                let scheme = Scheme::parse(text).expect("catalog schemes parse");
                if BICONDITIONALS.contains(name) {
                    let (_, l, r) = scheme.template().as_binary().expect("biconditional scheme");
                    let lr = crate::formula::Formula::implies(l.clone(), r.clone());
                    let rl = crate::formula::Formula::implies(r.clone(), l.clone());
                    entries.push((name.to_string(), scheme));
                    entries.push((format!("{name}_lr"), Scheme::new(lr)));
                    entries.push((format!("{name}_rl"), Scheme::new(rl)));
                } else {
                    entries.push((name.to_string(), scheme));
                }
            }
            SchemeCatalog { entries }
        })
    }

    pub fn get(&self, name: &str) -> Option<&Scheme> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Scheme)> {
        self.entries.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The scheme family a catalog name belongs to, with any `_lr`/`_rl`
/// suffix removed.
pub(crate) fn base_name(name: &str) -> &str {
    name.strip_suffix("_lr")
        .or_else(|| name.strip_suffix("_rl"))
        .unwrap_or(name)
}
