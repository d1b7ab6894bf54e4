//! JSON schemas of every subcommand's output, shipped with the binary.

use serde_json::{Map, Value};

/// `(subcommand, schema text)` pairs, plus the shared error schema.
pub const SCHEMAS: [(&str, &str); 13] = [
    ("sn-dim", include_str!("../schemas/sn-dim.json")),
    ("sphere", include_str!("../schemas/sphere.json")),
    ("torus-basis", include_str!("../schemas/torus-basis.json")),
    ("bp-operator", include_str!("../schemas/bp-operator.json")),
    ("annulus", include_str!("../schemas/annulus.json")),
    ("rspin-count", include_str!("../schemas/rspin-count.json")),
    ("rspin-enumerate", include_str!("../schemas/rspin-enumerate.json")),
    ("rspin-check", include_str!("../schemas/rspin-check.json")),
    ("sigma-f", include_str!("../schemas/sigma-f.json")),
    ("frobenius-check", include_str!("../schemas/frobenius-check.json")),
    ("charge", include_str!("../schemas/charge.json")),
    ("validate-modular", include_str!("../schemas/validate-modular.json")),
    ("error", include_str!("../schemas/error.json")),
];

/// The schema of one subcommand as parsed JSON.
pub fn schema(name: &str) -> Option<Value> {
    SCHEMAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| serde_json::from_str(text).expect("shipped schemas are valid JSON"))
}

/// The text printed by `--json-schema NAME`; `all` prints every schema keyed
/// by subcommand.
pub fn schema_text(name: &str) -> Option<String> {
    if name == "all" {
        let all: Map<String, Value> = SCHEMAS
            .iter()
            .map(|(n, _)| (n.to_string(), schema(n).expect("listed")))
            .collect();
        return Some(serde_json::to_string_pretty(&Value::Object(all)).expect("serialisable"));
    }
    schema(name).map(|v| serde_json::to_string_pretty(&v).expect("serialisable"))
}
