//! Machine files: JSON documents holding a [`MachineSpec`].

use std::path::Path;

use thiserror::Error;

use crate::machine::{validate_machine, Machine, MachineSpec, ValidationErrors};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("decode error at {path}: {message}")]
    Decode { path: String, message: String },
    #[error("{0}")]
    Invalid(#[from] ValidationErrors),
}

/// Decodes a machine file without validating it.
pub fn parse_spec(text: &str) -> Result<MachineSpec, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| LoadError::Decode {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Decodes and validates machine file text.
pub fn parse_machine(text: &str) -> Result<Machine, LoadError> {
    Ok(validate_machine(&parse_spec(text)?)?)
}

pub fn load_machine(path: impl AsRef<Path>) -> Result<Machine, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_machine(&text)
}

/// Canonical pretty-printed JSON for `m`, newline terminated.
pub fn machine_to_json(m: &Machine) -> String {
    let mut s = serde_json::to_string_pretty(&m.to_spec()).expect("spec serialises");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::machine::Violation;
    use crate::rules::RuleSet;

    #[test]
    fn fixtures_load() {
        let m1 = parse_machine(fixtures::EXAMPLE1_JSON).unwrap();
        assert_eq!(*m1.rules(), RuleSet::new(1, 6, 6, 54).unwrap());
        let m2 = parse_machine(fixtures::EXAMPLE2_JSON).unwrap();
        assert_eq!(*m2.rules(), RuleSet::new(2, 14, 14, 122).unwrap());
        assert_eq!(m1.quiver(), m2.quiver());
        assert_eq!(m1.initial_configuration(), m2.initial_configuration());
    }

    #[test]
    fn switching_rules_by_name() {
        let text = fixtures::EXAMPLE1_JSON
            .replace("\"NOT\"", "\"ID\"")
            .replace("\"XOR\"", "\"OR\"")
            .replace("\"RULE54\"", "\"RULE122\"");
        assert_eq!(parse_machine(&text).unwrap(), fixtures::example2());
    }

    #[test]
    fn missing_state_is_incomplete() {
        let text = fixtures::EXAMPLE1_JSON.replace("\"a7\": 1,", "");
        assert_ne!(text, fixtures::EXAMPLE1_JSON);
        match parse_machine(&text) {
            Err(LoadError::Invalid(v)) => assert!(matches!(
                v.violations(),
                [Violation::IncompleteConfiguration(missing)] if missing[0].as_str() == "a7"
            )),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decode_errors_carry_a_path() {
        let text = fixtures::EXAMPLE1_JSON.replacen("\"dom\": \"d1\"", "\"dom\": 5", 1);
        match parse_spec(&text) {
            Err(LoadError::Decode { path, .. }) => assert_eq!(path, "computons[0].dom"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec("{"), Err(LoadError::Decode { .. })));
        assert!(matches!(
            load_machine("/nonexistent/machine.json"),
            Err(LoadError::Io { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        for m in [
            fixtures::example1(),
            fixtures::example2(),
            fixtures::walkthrough(),
        ] {
            let text = machine_to_json(&m);
            let again = parse_machine(&text).unwrap();
            assert_eq!(again, m);
            assert_eq!(machine_to_json(&again), text);
        }
    }
}
