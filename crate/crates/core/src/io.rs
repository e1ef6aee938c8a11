//! JSON documents: context families in, space dumps out.
//!
//! A family document looks like
//!
//! ```json
//! { "m": 2, "n": 2, "model": "singlet",
//!   "angles_a": [0.0, 1.5707963267948966],
//!   "angles_b": [0.7853981633974483, -0.7853981633974483] }
//! ```
//!
//! or, for explicit tables keyed by `"i,j"` in canonical outcome order,
//!
//! ```json
//! { "m": 1, "n": 1, "model": "explicit",
//!   "tables": { "1,1": [0.25, 0.25, 0.25, 0.25] } }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{AtomMass, KolmogorovSpace};
use crate::tables::{validate_table, Angle, ContextFamily, Model, Side};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub m: usize,
    pub n: usize,
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles_a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles_b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<BTreeMap<String, [f64; 4]>>,
}

fn parse_key(key: &str, m: usize, n: usize) -> Result<(usize, usize)> {
    let unknown = || Error::UnknownContext { key: key.to_string() };
    let (i, j) = key.split_once(',').ok_or_else(unknown)?;
    let i: usize = i.trim().parse().map_err(|_| unknown())?;
    let j: usize = j.trim().parse().map_err(|_| unknown())?;
    if i == 0 || i > m || j == 0 || j > n {
        return Err(unknown());
    }
    Ok((i, j))
}

fn angles(side: Side, raw: &[f64], expected: usize) -> Result<Vec<Angle>> {
    if raw.len() != expected {
        return Err(Error::DimensionMismatch {
            side,
            expected,
            got: raw.len(),
        });
    }
    raw.iter().map(|&x| Angle::new(x)).collect()
}

/// Validates a document and builds its family.
pub fn build_family(doc: &FamilyDocument) -> Result<ContextFamily> {
    if doc.m == 0 || doc.n == 0 {
        return Err(Error::EmptyGrid { m: doc.m, n: doc.n });
    }
    match doc.model {
        Model::Singlet => {
            if doc.tables.is_some() {
                return Err(Error::ModelMismatch(
                    "model \"singlet\" takes angles, not tables".into(),
                ));
            }
            let (Some(a), Some(b)) = (&doc.angles_a, &doc.angles_b) else {
                return Err(Error::ModelMismatch(
                    "model \"singlet\" needs angles_a and angles_b".into(),
                ));
            };
            ContextFamily::singlet(&angles(Side::A, a, doc.m)?, &angles(Side::B, b, doc.n)?)
        }
        Model::Explicit => {
            if doc.angles_a.is_some() || doc.angles_b.is_some() {
                return Err(Error::ModelMismatch(
                    "model \"explicit\" takes tables, not angles".into(),
                ));
            }
            let Some(raw) = &doc.tables else {
                return Err(Error::ModelMismatch("model \"explicit\" needs tables".into()));
            };
            let mut tables = BTreeMap::new();
            for (key, entries) in raw {
                let (i, j) = parse_key(key, doc.m, doc.n)?;
                let table = validate_table(*entries).map_err(|e| e.in_context(i, j))?;
                if tables.insert((i, j), table).is_some() {
                    return Err(Error::ModelMismatch(format!("context ({i},{j}) is given twice")));
                }
            }
            ContextFamily::from_tables(doc.m, doc.n, &tables)
        }
    }
}

/// Parses and builds a family from JSON text.
pub fn parse_family(json: &str) -> Result<ContextFamily> {
    build_family(&serde_json::from_str(json)?)
}

/// The document describing `family`: angles for singlet families, tables
/// otherwise.
pub fn family_document(family: &ContextFamily) -> FamilyDocument {
    match family.angles() {
        Some((a, b)) => FamilyDocument {
            m: family.m(),
            n: family.n(),
            model: Model::Singlet,
            angles_a: Some(a.iter().map(|x| x.radians()).collect()),
            angles_b: Some(b.iter().map(|x| x.radians()).collect()),
            tables: None,
        },
        None => FamilyDocument {
            m: family.m(),
            n: family.n(),
            model: Model::Explicit,
            angles_a: None,
            angles_b: None,
            tables: Some(
                family
                    .contexts()
                    .map(|(i, j, t)| (format!("{i},{j}"), t.entries()))
                    .collect(),
            ),
        },
    }
}

/// The sorted atom dump as a JSON array.
pub fn dump_json(space: &KolmogorovSpace) -> Result<String> {
    Ok(serde_json::to_string_pretty(&space.dump())?)
}

pub fn parse_dump(json: &str) -> Result<Vec<AtomMass>> {
    Ok(serde_json::from_str(json)?)
}
