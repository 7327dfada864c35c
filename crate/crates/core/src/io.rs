//! JSON interchange for matroids.
//!
//! ```json
//! {"kind": "linear", "field": {"p": 2, "k": 1, "modulus": [0, 1]}, "columns": [[1, 0], [0, 1]]}
//! {"kind": "bases", "rank": 2, "n": 3, "bases": [[0, 1], [0, 2], [1, 2]]}
//! ```
//!
//! Field elements are canonical indices. Matroids that are neither linear
//! nor explicit-bases are written by listing their bases.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, SchemaErrorKind};
use crate::field::{FieldSpec, FieldSpecRepr};
use crate::matroid::{Backend, BasesBackend, LinearBackend, Matroid};
use crate::subset::Subset;
use crate::FieldElement;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum MatroidRepr {
    Linear {
        field: FieldSpecRepr,
        columns: Vec<Vec<u32>>,
    },
    Bases {
        rank: usize,
        n: usize,
        bases: Vec<Vec<usize>>,
    },
}

fn field_error(e: Error) -> Error {
    let kind = match e {
        Error::NotPrimePower(p) => SchemaErrorKind::NotPrimePower(p),
        Error::SizeCapExceeded { .. } => SchemaErrorKind::Invalid(e.to_string()),
        _ => SchemaErrorKind::BadModulus,
    };
    Error::schema("field", kind)
}

fn from_repr(repr: MatroidRepr) -> Result<Matroid> {
    match repr {
        MatroidRepr::Linear { field, columns } => {
            let field = FieldSpec::try_from(field).map_err(field_error)?;
            let dim = columns.first().map_or(0, Vec::len);
            let mut cols = Vec::with_capacity(columns.len());
            for (i, c) in columns.into_iter().enumerate() {
                let bad = |msg: String| Error::schema(format!("columns[{i}]"), SchemaErrorKind::Invalid(msg));
                if c.len() != dim {
                    return Err(bad(format!("length {} differs from {dim}", c.len())));
                }
                if let Some(&x) = c.iter().find(|&&x| x >= field.q()) {
                    return Err(bad(format!("entry {x} is not an element of GF({})", field.q())));
                }
                cols.push(c.into_iter().map(|x| field.element(x)).collect::<Vec<FieldElement>>());
            }
            Ok(LinearBackend::new(field, dim, cols)?.into())
        }
        MatroidRepr::Bases { rank, n, bases } => {
            let bases = bases.into_iter().map(|b| b.into_iter().collect::<Subset>()).collect();
            Ok(BasesBackend::new(n, rank, bases)?.into())
        }
    }
}

fn to_repr(m: &Matroid) -> Result<MatroidRepr> {
    if let Some(lin) = m.as_linear() {
        let f = lin.field();
        return Ok(MatroidRepr::Linear {
            field: FieldSpecRepr {
                p: f.p() as u64,
                k: f.k(),
                modulus: f.modulus().to_vec(),
            },
            columns: lin
                .columns()
                .iter()
                .map(|c| c.iter().map(|x| x.index() as u32).collect())
                .collect(),
        });
    }
    let materialized;
    let b = match m.backend() {
        Backend::Bases(b) => b,
        _ => {
            materialized = m.to_bases()?;
            match materialized.backend() {
                Backend::Bases(b) => b,
                _ => unreachable!("to_bases yields a bases backend"),
            }
        }
    };
    Ok(MatroidRepr::Bases {
        rank: b.rank_total(),
        n: b.ground_size(),
        bases: b.bases().map(|s| s.to_vec()).collect(),
    })
}

/// Parses a matroid, reporting the position of syntax errors.
pub fn from_json(text: &str) -> Result<Matroid> {
    let repr: MatroidRepr = serde_json::from_str(text).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            SchemaErrorKind::Syntax(e.to_string()),
        )
    })?;
    from_repr(repr)
}

pub fn to_json(m: &Matroid) -> Result<String> {
    Ok(serde_json::to_string(&to_repr(m)?).expect("plain data serializes"))
}

/// The JSON value form, for embedding in reports.
pub fn to_value(m: &Matroid) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(to_repr(m)?).expect("plain data serializes"))
}

pub fn read_matroid(path: &Path) -> Result<Matroid> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write_matroid(m: &Matroid, path: &Path) -> Result<()> {
    let mut text = to_json(m)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_swirl, pg, uniform};

    #[test]
    fn roundtrip_linear() {
        let fano = pg(3, 2).unwrap().matroid;
        let text = to_json(&fano).unwrap();
        assert!(text.starts_with(r#"{"kind":"linear","field":{"p":2,"k":1,"modulus":[0,1]}"#));
        let back = from_json(&text).unwrap();
        assert!(back.rank_agrees(&fano));
        assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn roundtrip_views_through_bases() {
        let s = free_swirl(4).unwrap().matroid;
        let text = to_json(&s).unwrap();
        let back = from_json(&text).unwrap();
        assert!(matches!(back.backend(), Backend::Bases(_)));
        assert!(back.rank_agrees(&s));
        assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn schema_errors() {
        let err = from_json(r#"{"kind":"bases","rank":2,"n":4,"bases":[[0,1],[2,3]]}"#).unwrap_err();
        assert_eq!(err, Error::schema("bases", SchemaErrorKind::ExchangeAxiom));
        let err = from_json(r#"{"kind":"linear","field":{"p":6,"k":1,"modulus":[0,1]},"columns":[[1]]}"#)
            .unwrap_err();
        assert_eq!(err, Error::schema("field", SchemaErrorKind::NotPrimePower(6)));
        let err = from_json(r#"{"kind":"linear","field":{"p":2,"k":2,"modulus":[1,0,1]},"columns":[]}"#)
            .unwrap_err();
        assert_eq!(err, Error::schema("field", SchemaErrorKind::BadModulus));
        let err = from_json(r#"{"kind":"bases","rank":1,"n":1,"bases":[[0]],"extra":1}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { kind: SchemaErrorKind::Syntax(_), .. }));
        let err = from_json("{\n  \"kind\": \"bases\",\n  oops\n}").unwrap_err();
        let Error::Schema { location, .. } = err else { panic!() };
        assert_eq!(location, "line 3 column 3");
        let err = from_json(r#"{"kind":"linear","field":{"p":3,"k":1,"modulus":[0,1]},"columns":[[1,3]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Schema { kind: SchemaErrorKind::Invalid(_), .. }));
    }

    #[test]
    fn file_roundtrip() {
        let dir = std::env::temp_dir().join(format!("mforge-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("u24.json");
        let u = uniform(2, 4).unwrap().matroid;
        write_matroid(&u, &path).unwrap();
        assert!(read_matroid(&path).unwrap().rank_agrees(&u));
        fs::remove_dir_all(&dir).unwrap();
        assert!(matches!(read_matroid(&path), Err(Error::Io(_))));
    }
}
