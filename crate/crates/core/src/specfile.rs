//! JSON action-spec documents.
//!
//! ```json
//! { "field": {"kind": "prime", "p": 7},
//!   "rank": 2,
//!   "group_likes": [{"name": "g", "matrix": [["1", "0"], ["0", "-1"]]}],
//!   "skew_primitives": [{"name": "d", "sigma": "1", "tau": "g", "matrix": [["0", "1"], ["0", "0"]]}],
//!   "group_table": {"g,g": "1"} }
//! ```
//!
//! Matrices are row-major with entry `[i][j]` the coefficient of `x_{i+1}`
//! in `h·x_{j+1}`. Entries are scalar literals (strings); bare JSON
//! integers are accepted on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::action::{has_errors, validate_spec, ActionSpec, Finding, GroupLikeGen, GroupTable, Matrix, SkewPrimitiveGen};
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawField {
    Rational,
    Prime { p: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Text(String),
    Int(i64),
}

type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupLike {
    name: String,
    matrix: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSkewPrimitive {
    name: String,
    sigma: String,
    tau: String,
    matrix: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: RawField,
    rank: usize,
    #[serde(default)]
    group_likes: Vec<RawGroupLike>,
    #[serde(default)]
    skew_primitives: Vec<RawSkewPrimitive>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group_table: Option<BTreeMap<String, String>>,
}

fn matrix_from_raw(raw: &RawMatrix, field: FieldSpec, owner: &str) -> Result<Matrix> {
    let n = raw.len();
    if raw.iter().any(|row| row.len() != n) {
        return Err(Error::Parse(format!(
            "matrix of {owner:?}: row-length mismatch (rows must have {n} entries)"
        )));
    }
    let rows = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|entry| match entry {
                    RawScalar::Text(t) => field.parse_scalar(t),
                    RawScalar::Int(v) => Ok(field.from_i64(*v)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Parse(format!("matrix of {owner:?}: {e}")))?;
    Matrix::new(rows)
}

fn matrix_to_raw(m: &Matrix) -> RawMatrix {
    m.rows()
        .iter()
        .map(|row| row.iter().map(|a| RawScalar::Text(a.to_string())).collect())
        .collect()
}

/// Builds an [`ActionSpec`] without validating it.
pub fn parse_unvalidated(text: &str) -> Result<ActionSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let field = match raw.field {
        RawField::Rational => FieldSpec::Rational,
        RawField::Prime { p } => FieldSpec::prime(p).map_err(|e| Error::Parse(e.to_string()))?,
    };
    let group_likes = raw
        .group_likes
        .iter()
        .map(|g| {
            Ok(GroupLikeGen {
                name: g.name.clone(),
                matrix: matrix_from_raw(&g.matrix, field, &g.name)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let skew_primitives = raw
        .skew_primitives
        .iter()
        .map(|d| {
            Ok(SkewPrimitiveGen {
                name: d.name.clone(),
                sigma: d.sigma.clone(),
                tau: d.tau.clone(),
                matrix: matrix_from_raw(&d.matrix, field, &d.name)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let group_table = raw
        .group_table
        .map(|t| {
            t.into_iter()
                .map(|(key, value)| {
                    let (a, b) = key
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("group table key {key:?} is not \"a,b\"")))?;
                    Ok(((a.trim().to_string(), b.trim().to_string()), value.trim().to_string()))
                })
                .collect::<Result<GroupTable>>()
        })
        .transpose()?;
    Ok(ActionSpec {
        field,
        rank: raw.rank,
        group_likes,
        skew_primitives,
        group_table,
    })
}

/// Parses and validates; error findings abort with [`Error::Validation`].
/// Warnings are returned alongside the spec.
pub fn parse_spec_file(text: &str) -> Result<(ActionSpec, Vec<Finding>)> {
    let spec = parse_unvalidated(text)?;
    let findings = validate_spec(&spec);
    if has_errors(&findings) {
        return Err(Error::Validation(findings));
    }
    Ok((spec, findings))
}

pub fn serialize_spec(s: &ActionSpec) -> String {
    let raw = RawSpec {
        field: match s.field {
            FieldSpec::Rational => RawField::Rational,
            FieldSpec::Prime(p) => RawField::Prime { p },
        },
        rank: s.rank,
        group_likes: s
            .group_likes
            .iter()
            .map(|g| RawGroupLike {
                name: g.name.clone(),
                matrix: matrix_to_raw(&g.matrix),
            })
            .collect(),
        skew_primitives: s
            .skew_primitives
            .iter()
            .map(|d| RawSkewPrimitive {
                name: d.name.clone(),
                sigma: d.sigma.clone(),
                tau: d.tau.clone(),
                matrix: matrix_to_raw(&d.matrix),
            })
            .collect(),
        group_table: s.group_table.as_ref().map(|t| {
            t.iter()
                .map(|((a, b), c)| (format!("{a},{b}"), c.clone()))
                .collect()
        }),
    };
    serde_json::to_string_pretty(&raw).expect("spec serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    #[test]
    fn minimal_document() {
        let (spec, findings) = parse_spec_file(
            r#"{"field": {"kind": "rational"}, "rank": 1,
                "group_likes": [{"name": "g", "matrix": [["-1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(spec, presets::scalar(FieldSpec::Rational, 1, -1));
        assert_eq!(findings.len(), 1);
    }

    #[test]
    fn sweedler_document() {
        let text = r#"{
            "field": {"kind": "rational"},
            "rank": 2,
            "group_likes": [{"name": "g", "matrix": [["1", "0"], ["0", "-1"]]}],
            "skew_primitives": [{"name": "d", "sigma": "1", "tau": "g", "matrix": [["0", "1"], [0, 0]]}]
        }"#;
        let (spec, _) = parse_spec_file(text).unwrap();
        assert_eq!(spec, presets::sweedler());
    }

    #[test]
    fn malformed_documents() {
        let ragged = r#"{"field": {"kind": "rational"}, "rank": 2,
            "group_likes": [{"name": "g", "matrix": [["1", "0"], ["0"]]}]}"#;
        assert!(matches!(parse_spec_file(ragged), Err(Error::Parse(_))));
        let bad_literal = r#"{"field": {"kind": "rational"}, "rank": 1,
            "group_likes": [{"name": "g", "matrix": [["1.5"]]}]}"#;
        assert!(matches!(parse_spec_file(bad_literal), Err(Error::Parse(_))));
        let bad_prime = r#"{"field": {"kind": "prime", "p": 8}, "rank": 1}"#;
        assert!(matches!(parse_spec_file(bad_prime), Err(Error::Parse(_))));
        assert!(matches!(parse_spec_file("{"), Err(Error::Parse(_))));
        let extra = r#"{"field": {"kind": "rational"}, "rank": 1, "colour": 3}"#;
        assert!(matches!(parse_spec_file(extra), Err(Error::Parse(_))));
        let bad_key = r#"{"field": {"kind": "rational"}, "rank": 1, "group_table": {"gg": "1"}}"#;
        assert!(matches!(parse_spec_file(bad_key), Err(Error::Parse(_))));
    }

    #[test]
    fn validation_errors_abort() {
        let singular = r#"{"field": {"kind": "prime", "p": 5}, "rank": 2,
            "group_likes": [{"name": "g", "matrix": [["1", "2"], ["2", "4"]]}]}"#;
        match parse_spec_file(singular) {
            Err(Error::Validation(findings)) => {
                assert!(findings[0].message.starts_with("group-like matrix not invertible"))
            }
            other => panic!("{other:?}"),
        }
    }

    fn arb_spec() -> impl Strategy<Value = ActionSpec> {
        let field = prop::sample::select(vec![FieldSpec::Rational, FieldSpec::Prime(5), FieldSpec::Prime(7)]);
        (field, 1usize..4).prop_flat_map(|(field, rank)| {
            let entry = (-4i64..5, 1i64..4).prop_map(move |(n, d)| {
                let d = field.from_i64(d);
                field.from_i64(n) * d.inv().unwrap_or_else(|_| field.one())
            });
            let matrix = prop::collection::vec(prop::collection::vec(entry, rank), rank)
                .prop_map(|rows| Matrix::new(rows).unwrap());
            let gens = prop::collection::vec(matrix.clone(), 0..3);
            let skews = prop::collection::vec((matrix, 0usize..3, 0usize..3), 0..3);
            (gens, skews, any::<bool>()).prop_map(move |(gens, skews, with_table)| {
                let mut s = ActionSpec::trivial(rank, field);
                for (k, m) in gens.into_iter().enumerate() {
                    s = s.with_group_like(&format!("g{k}"), m);
                }
                let names: Vec<String> = std::iter::once("1".to_string())
                    .chain(s.group_likes.iter().map(|g| g.name.clone()))
                    .collect();
                for (k, (m, a, b)) in skews.into_iter().enumerate() {
                    let sigma = names[a % names.len()].clone();
                    let tau = names[b % names.len()].clone();
                    s = s.with_skew_primitive(&format!("d{k}"), &sigma, &tau, m);
                }
                if with_table {
                    let mut t = GroupTable::new();
                    for a in &names {
                        t.insert((a.clone(), "1".into()), a.clone());
                    }
                    s.group_table = Some(t);
                }
                s
            })
        })
    }

    proptest! {
        #[test]
        fn serialize_round_trip(s in arb_spec()) {
            prop_assert_eq!(parse_unvalidated(&serialize_spec(&s)).unwrap(), s);
        }
    }
}
