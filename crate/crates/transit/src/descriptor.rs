//! System descriptor files: a tagged JSON union covering every presentation
//! the toolkit accepts, with strict field validation and exact rationals
//! carried as strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::interval::{parse_rat, PLMap};
use crate::lang::{LanguageOracle, Substitution};
use crate::sft::{higher_block_recode, Sidedness, SftGraph};
use crate::types::{Alphabet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

fn invalid(path: &str, message: impl Into<String>) -> DescriptorError {
    DescriptorError::Validation {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SystemDescriptor {
    Sft {
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
        sided: Sidedness,
    },
    ForbiddenWords {
        alphabet: Vec<String>,
        words: Vec<String>,
    },
    Substitution {
        rules: BTreeMap<String, String>,
    },
    GapShift {
        base: u64,
    },
    Lindenstrauss {
        base_rules: BTreeMap<String, String>,
    },
    PlMap {
        domain: (String, String),
        breakpoints: Vec<String>,
        values: Vec<String>,
    },
    Ladder {},
    Product {
        factors: Vec<SystemDescriptor>,
    },
}

const FIELDS: &[(&str, &[&str])] = &[
    ("sft", &["type", "vertices", "edges", "sided"]),
    ("forbidden_words", &["type", "alphabet", "words"]),
    ("substitution", &["type", "rules"]),
    ("gap_shift", &["type", "base"]),
    ("lindenstrauss", &["type", "base_rules"]),
    ("pl_map", &["type", "domain", "breakpoints", "values"]),
    ("ladder", &["type"]),
    ("product", &["type", "factors"]),
];

fn check_fields(value: &Value, path: &str) -> Result<(), DescriptorError> {
    let obj = value
        .as_object()
        .ok_or_else(|| invalid(path, "expected a JSON object"))?;
    let tag = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid(path, "missing string field `type`"))?;
    let allowed = FIELDS
        .iter()
        .find(|(t, _)| *t == tag)
        .map(|(_, f)| *f)
        .ok_or_else(|| invalid(path, format!("unknown system type `{tag}`")))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(invalid(
                &format!("{path}.{key}"),
                format!("unknown field for type `{tag}`"),
            ));
        }
    }
    if tag == "product" {
        if let Some(factors) = obj.get("factors").and_then(Value::as_array) {
            for (i, f) in factors.iter().enumerate() {
                check_fields(f, &format!("{path}.factors[{i}]"))?;
            }
        }
    }
    Ok(())
}

/// Parses and validates a descriptor document. Unknown fields are rejected.
pub fn parse_system_file(text: &str) -> Result<SystemDescriptor, DescriptorError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        DescriptorError::Parse(format!(
            "line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    check_fields(&value, "$")?;
    let d: SystemDescriptor = serde_json::from_value(value)
        .map_err(|e| invalid("$", e.to_string()))?;
    validate(&d)?;
    Ok(d)
}

fn validate(d: &SystemDescriptor) -> Result<(), DescriptorError> {
    match d {
        SystemDescriptor::Sft { vertices, edges, .. } => {
            if vertices.is_empty() {
                return Err(invalid("$.vertices", "at least one vertex required"));
            }
            for (i, (a, b)) in edges.iter().enumerate() {
                for v in [a, b] {
                    if !vertices.contains(v) {
                        return Err(invalid(
                            &format!("$.edges[{i}]"),
                            format!("`{v}` is not a vertex"),
                        ));
                    }
                }
            }
        }
        SystemDescriptor::ForbiddenWords { alphabet, words } => {
            if alphabet.is_empty() {
                return Err(invalid("$.alphabet", "at least one symbol required"));
            }
            if words.is_empty() {
                return Err(invalid("$.words", "at least one forbidden word required"));
            }
        }
        SystemDescriptor::Substitution { rules } => {
            if rules.is_empty() {
                return Err(invalid("$.rules", "at least one rule required"));
            }
        }
        SystemDescriptor::GapShift { base } => {
            if *base < 2 {
                return Err(invalid("$.base", "base must be at least 2"));
            }
        }
        SystemDescriptor::Lindenstrauss { base_rules } => {
            if base_rules.is_empty() {
                return Err(invalid("$.base_rules", "at least one rule required"));
            }
        }
        SystemDescriptor::PlMap {
            domain,
            breakpoints,
            values,
        } => {
            if breakpoints.len() < 2 || breakpoints.len() != values.len() {
                return Err(invalid(
                    "$.breakpoints",
                    "need matching breakpoint and value lists with at least two entries",
                ));
            }
            for (label, s) in [("domain.0", &domain.0), ("domain.1", &domain.1)] {
                parse_rat(s).map_err(|e| invalid(&format!("$.{label}"), e.to_string()))?;
            }
        }
        SystemDescriptor::Ladder {} => {}
        SystemDescriptor::Product { factors } => {
            if factors.len() < 2 {
                return Err(invalid("$.factors", "a product needs at least two factors"));
            }
            for f in factors {
                validate(f)?;
            }
        }
    }
    Ok(())
}

/// A descriptor realized as one of the engine-level systems.
#[derive(Debug, Clone)]
pub enum BuiltSystem {
    Sft(SftGraph),
    Oracle {
        oracle: LanguageOracle,
        kind: OracleSystemKind,
    },
    Interval(PLMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleSystemKind {
    /// primitive substitution subshift: minimality is certified
    Substitution,
    GapShift { base: u64 },
    Lindenstrauss,
    Product,
    Wrapped,
}

fn parse_substitution(
    rules: &BTreeMap<String, String>,
    path: &str,
) -> Result<Substitution, DescriptorError> {
    let alphabet = Alphabet::new(rules.keys().cloned())
        .map_err(|e| invalid(path, e.to_string()))?;
    let mut images = Vec::new();
    for sym in alphabet.symbols() {
        let image = &rules[sym];
        let w = alphabet
            .parse_word(image)
            .map_err(|e| invalid(&format!("{path}.{sym}"), e.to_string()))?;
        images.push(w);
    }
    Substitution::new(alphabet, images).map_err(|e| invalid(path, e.to_string()))
}

/// Realizes a descriptor. Products of shift systems become product oracles
/// (or a product graph when every factor is a vertex shift); interval maps
/// and subshifts never mix.
pub fn build_system(d: &SystemDescriptor) -> Result<BuiltSystem, DescriptorError> {
    match d {
        SystemDescriptor::Sft {
            vertices,
            edges,
            sided,
        } => {
            let alphabet =
                Alphabet::new(vertices.clone()).map_err(|e| invalid("$.vertices", e.to_string()))?;
            let idx_edges: Vec<(usize, usize)> = edges
                .iter()
                .map(|(a, b)| {
                    (
                        alphabet.index_of(a).expect("validated"),
                        alphabet.index_of(b).expect("validated"),
                    )
                })
                .collect();
            let g = SftGraph::new(alphabet, &idx_edges, *sided)
                .and_then(|g| g.essentialize())
                .map_err(|e| invalid("$", e.to_string()))?;
            Ok(BuiltSystem::Sft(g))
        }
        SystemDescriptor::ForbiddenWords { alphabet, words } => {
            let a = Alphabet::new(alphabet.clone())
                .map_err(|e| invalid("$.alphabet", e.to_string()))?;
            let mut parsed = Vec::new();
            for (i, w) in words.iter().enumerate() {
                let word = a
                    .parse_word(w)
                    .map_err(|e| invalid(&format!("$.words[{i}]"), e.to_string()))?;
                if word.is_empty() {
                    return Err(invalid(
                        &format!("$.words[{i}]"),
                        "forbidden words must be nonempty",
                    ));
                }
                parsed.push(word);
            }
            let g = higher_block_recode(&a, &parsed).map_err(|e| invalid("$", e.to_string()))?;
            Ok(BuiltSystem::Sft(g))
        }
        SystemDescriptor::Substitution { rules } => {
            let s = parse_substitution(rules, "$.rules")?;
            let oracle = LanguageOracle::substitution(&s)
                .map_err(|e| invalid("$.rules", e.to_string()))?;
            Ok(BuiltSystem::Oracle {
                oracle,
                kind: OracleSystemKind::Substitution,
            })
        }
        SystemDescriptor::GapShift { base } => {
            let oracle =
                LanguageOracle::gap_shift(*base).map_err(|e| invalid("$.base", e.to_string()))?;
            Ok(BuiltSystem::Oracle {
                oracle,
                kind: OracleSystemKind::GapShift { base: *base },
            })
        }
        SystemDescriptor::Lindenstrauss { base_rules } => {
            let s = parse_substitution(base_rules, "$.base_rules")?;
            let oracle = LanguageOracle::lindenstrauss(&s)
                .map_err(|e| invalid("$.base_rules", e.to_string()))?;
            Ok(BuiltSystem::Oracle {
                oracle,
                kind: OracleSystemKind::Lindenstrauss,
            })
        }
        SystemDescriptor::PlMap {
            domain,
            breakpoints,
            values,
        } => {
            let xs: Result<Vec<_>, _> = breakpoints.iter().map(|s| parse_rat(s)).collect();
            let ys: Result<Vec<_>, _> = values.iter().map(|s| parse_rat(s)).collect();
            let xs = xs.map_err(|e| invalid("$.breakpoints", e.to_string()))?;
            let ys = ys.map_err(|e| invalid("$.values", e.to_string()))?;
            let lo = parse_rat(&domain.0).expect("validated");
            let hi = parse_rat(&domain.1).expect("validated");
            if xs.first() != Some(&lo) || xs.last() != Some(&hi) {
                return Err(invalid(
                    "$.domain",
                    "domain endpoints must equal the outer breakpoints",
                ));
            }
            let f = PLMap::explicit(xs, ys).map_err(|e| invalid("$", e.to_string()))?;
            Ok(BuiltSystem::Interval(f))
        }
        SystemDescriptor::Ladder {} => Ok(BuiltSystem::Interval(PLMap::Ladder)),
        SystemDescriptor::Product { factors } => {
            let mut graphs = Vec::new();
            let mut all_sft = true;
            for f in factors {
                match build_system(f)? {
                    BuiltSystem::Sft(g) => graphs.push(g),
                    BuiltSystem::Oracle { .. } => {
                        all_sft = false;
                        break;
                    }
                    BuiltSystem::Interval(_) => {
                        return Err(invalid(
                            "$.factors",
                            "interval maps cannot enter shift products",
                        ))
                    }
                }
            }
            if all_sft {
                let mut iter = graphs.into_iter();
                let mut acc = iter.next().expect("at least two factors");
                for g in iter {
                    acc = acc.product(&g).map_err(|e| invalid("$.factors", e.to_string()))?;
                }
                return Ok(BuiltSystem::Sft(acc));
            }
            // mixed or oracle factors: wrap everything as oracles
            let mut oracles = Vec::new();
            for f in factors {
                let o = match build_system(f)? {
                    BuiltSystem::Sft(g) => LanguageOracle::from_sft(g),
                    BuiltSystem::Oracle { oracle, .. } => oracle,
                    BuiltSystem::Interval(_) => unreachable!("rejected above"),
                };
                oracles.push(o);
            }
            let mut iter = oracles.into_iter();
            let mut acc = iter.next().expect("at least two factors");
            for o in iter {
                acc = LanguageOracle::product(acc, o)
                    .map_err(|e| invalid("$.factors", e.to_string()))?;
            }
            Ok(BuiltSystem::Oracle {
                oracle: acc,
                kind: OracleSystemKind::Product,
            })
        }
    }
}

/// Word parsing against whatever alphabet the built system uses.
pub fn system_alphabet(b: &BuiltSystem) -> Option<Alphabet> {
    match b {
        BuiltSystem::Sft(g) => Some(g.alphabet().clone()),
        BuiltSystem::Oracle { oracle, .. } => Some(oracle.alphabet().clone()),
        BuiltSystem::Interval(_) => None,
    }
}

pub fn parse_word_for(b: &BuiltSystem, text: &str) -> Result<Word, DescriptorError> {
    let a = system_alphabet(b).ok_or_else(|| {
        invalid("$", "interval systems have no word alphabet")
    })?;
    a.parse_word(text)
        .map_err(|e| invalid("$", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_golden_mean_sft() {
        let text = r#"{"type":"sft","vertices":["0","1"],"edges":[["0","0"],["0","1"],["1","0"]],"sided":"one"}"#;
        let d = parse_system_file(text).unwrap();
        let BuiltSystem::Sft(g) = build_system(&d).unwrap() else {
            panic!("expected a graph");
        };
        assert_eq!(g.vertex_count(), 2);
        assert!(g.is_primitive());
    }

    #[test]
    fn parses_gap_shift() {
        let d = parse_system_file(r#"{"type":"gap_shift","base":3}"#).unwrap();
        assert_eq!(d, SystemDescriptor::GapShift { base: 3 });
    }

    #[test]
    fn parses_pl_map_with_rationals() {
        let text = r#"{"type":"pl_map","domain":["-1","1"],"breakpoints":["-1","-1/2","1/2","1"],"values":["0","-1","1","0"]}"#;
        let d = parse_system_file(text).unwrap();
        let BuiltSystem::Interval(f) = build_system(&d).unwrap() else {
            panic!("expected an interval map");
        };
        assert_eq!(f, PLMap::double_tent());
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"type":"gap_shift","base":3,"extra":1}"#;
        assert!(matches!(
            parse_system_file(text),
            Err(DescriptorError::Validation { .. })
        ));
    }

    #[test]
    fn rejects_syntax_errors_with_position() {
        let err = parse_system_file("{not json").unwrap_err();
        match err {
            DescriptorError::Parse(msg) => assert!(msg.contains("line 1")),
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn rejects_edges_to_unknown_vertices() {
        let text = r#"{"type":"sft","vertices":["a"],"edges":[["a","b"]],"sided":"one"}"#;
        assert!(matches!(
            parse_system_file(text),
            Err(DescriptorError::Validation { .. })
        ));
    }

    #[test]
    fn descriptor_round_trips_through_json() {
        let d = SystemDescriptor::Product {
            factors: vec![
                SystemDescriptor::GapShift { base: 3 },
                SystemDescriptor::Sft {
                    vertices: vec!["0".into(), "1".into()],
                    edges: vec![
                        ("0".into(), "0".into()),
                        ("0".into(), "1".into()),
                        ("1".into(), "0".into()),
                        ("1".into(), "1".into()),
                    ],
                    sided: Sidedness::One,
                },
            ],
        };
        let text = serde_json::to_string(&d).unwrap();
        let back = parse_system_file(&text).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn builds_product_of_graphs_as_a_graph() {
        let d = SystemDescriptor::Product {
            factors: vec![
                SystemDescriptor::ForbiddenWords {
                    alphabet: vec!["0".into(), "1".into()],
                    words: vec!["11".into()],
                },
                SystemDescriptor::Sft {
                    vertices: vec!["a".into()],
                    edges: vec![("a".into(), "a".into())],
                    sided: Sidedness::One,
                },
            ],
        };
        let BuiltSystem::Sft(g) = build_system(&d).unwrap() else {
            panic!("expected a graph product");
        };
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn non_primitive_substitution_is_rejected() {
        let mut rules = BTreeMap::new();
        rules.insert("a".to_string(), "aa".to_string());
        rules.insert("b".to_string(), "bb".to_string());
        let d = SystemDescriptor::Substitution { rules };
        assert!(build_system(&d).is_err());
    }
}
