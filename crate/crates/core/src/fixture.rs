//! Fixture files: one Tate normal form example over an explicit number field.
//!
//! ```json
//! {
//!   "label": "X1(37)-deg6",
//!   "N": 37,
//!   "generators": [
//!     {"name":"alpha","minpoly":["-1","-2","1","1"]},
//!     {"name":"tau","minpoly":["-1","-1","1"]}
//!   ],
//!   "b": [["-3","5"],["-8","14"],["-3","6"]],
//!   "c": [["1","0"],["0","2"],["0","1"]],
//!   "expected_order": 37,
//!   "gonality": 18
//! }
//! ```
//!
//! Minimal polynomials are constant term first. `b` and `c` use the nested
//! element text form: the outer index runs over powers of the first
//! generator. An optional `note` records the unexpanded expressions.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elliptic::TateParams;
use crate::field::{Element, FieldDescriptor, Generator, Nested, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}: {location}: {message}")]
    Invalid {
        origin: String,
        location: String,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub minpoly: Vec<String>,
}

/// The on-disk shape, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(rename = "N")]
    pub n: u64,
    pub generators: Vec<GeneratorSpec>,
    pub b: Nested,
    pub c: Nested,
    pub expected_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gonality: Option<u64>,
}

/// A validated fixture with its field and Tate parameters built.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub label: String,
    pub note: Option<String>,
    pub n: u64,
    pub expected_order: u64,
    pub gonality: Option<u64>,
    pub field: Arc<FieldDescriptor<Rational>>,
    pub params: TateParams<Element<Rational>>,
}

impl Fixture {
    pub fn parse(text: &str, origin: &str) -> Result<Self, FixtureError> {
        let invalid = |location: &str, message: String| FixtureError::Invalid {
            origin: origin.to_string(),
            location: location.to_string(),
            message,
        };
        let raw: FixtureFile = serde_json::from_str(text).map_err(|e| {
            invalid(
                &format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;

        if raw.n == 0 {
            return Err(invalid("N", "level must be positive".into()));
        }
        if raw.expected_order != raw.n {
            return Err(invalid(
                "expected_order",
                format!(
                    "expected_order {} differs from N {}",
                    raw.expected_order, raw.n
                ),
            ));
        }

        let mut generators = Vec::with_capacity(raw.generators.len());
        for (i, g) in raw.generators.iter().enumerate() {
            let minpoly = g
                .minpoly
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    Rational::parse(&(), s).map_err(|e| {
                        invalid(&format!("generators[{i}].minpoly[{j}]"), e.to_string())
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            generators.push(Generator {
                name: g.name.clone(),
                minpoly,
            });
        }
        let field = FieldDescriptor::new((), generators)
            .map_err(|e| invalid("generators", e.to_string()))?;
        let b = field
            .from_nested(&raw.b)
            .map_err(|e| invalid("b", e.to_string()))?;
        let c = field
            .from_nested(&raw.c)
            .map_err(|e| invalid("c", e.to_string()))?;

        Ok(Fixture {
            label: raw.label,
            note: raw.note,
            n: raw.n,
            expected_order: raw.expected_order,
            gonality: raw.gonality,
            field,
            params: TateParams { b, c },
        })
    }

    /// Absolute degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.field.dimension()
    }

    pub fn to_file(&self) -> FixtureFile {
        FixtureFile {
            label: self.label.clone(),
            note: self.note.clone(),
            n: self.n,
            generators: self
                .field
                .generators()
                .iter()
                .map(|g| GeneratorSpec {
                    name: g.name.clone(),
                    minpoly: g.minpoly.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            b: self.params.b.to_nested(),
            c: self.params.c.to_nested(),
            expected_order: self.expected_order,
            gonality: self.gonality,
        }
    }

    /// Canonical text: fixed key order, one generator per line, compact arrays.
    pub fn to_canonical_string(&self) -> String {
        self.to_file().to_canonical_string()
    }
}

impl FixtureFile {
    pub fn to_canonical_string(&self) -> String {
        let mut fields = vec![format!("  \"label\": {}", compact(&self.label))];
        if let Some(note) = &self.note {
            fields.push(format!("  \"note\": {}", compact(note)));
        }
        fields.push(format!("  \"N\": {}", self.n));
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("    {}", compact(g)))
            .collect();
        if gens.is_empty() {
            fields.push("  \"generators\": []".to_string());
        } else {
            fields.push(format!("  \"generators\": [\n{}\n  ]", gens.join(",\n")));
        }
        fields.push(format!("  \"b\": {}", compact(&self.b)));
        fields.push(format!("  \"c\": {}", compact(&self.c)));
        fields.push(format!("  \"expected_order\": {}", self.expected_order));
        if let Some(g) = self.gonality {
            fields.push(format!("  \"gonality\": {g}"));
        }
        let mut out = String::from("{\n");
        let _ = write!(out, "{}\n}}\n", fields.join(",\n"));
        out
    }
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("fixture fields serialize")
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<Fixture, FixtureError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| FixtureError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Fixture::parse(&text, &path.display().to_string())
}

/// `*.json` files of a directory in name order, or the path itself for a file.
pub fn fixture_paths(path: impl AsRef<Path>) -> Result<Vec<PathBuf>, FixtureError> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| FixtureError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path.is_dir() {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(io_err)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        Ok(paths)
    } else if path.exists() {
        Ok(vec![path.to_path_buf()])
    } else {
        Err(io_err(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            "no such file or directory",
        )))
    }
}

/// Directory holding the shipped fixtures.
pub fn shipped_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
