//! Dense nested-array text form of field elements.
//!
//! Each array level runs over the powers `0..deg` of one generator, outermost
//! generator first; leaves are base-field values written as strings
//! (`"num/den"` for rationals, denominator omitted when it is 1).

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nested {
    Leaf(String),
    List(Vec<Nested>),
}

impl Nested {
    pub fn depth(&self) -> usize {
        match self {
            Nested::Leaf(_) => 0,
            Nested::List(items) => 1 + items.first().map_or(0, Nested::depth),
        }
    }

    pub fn leaves(&self) -> Vec<&String> {
        match self {
            Nested::Leaf(s) => vec![s],
            Nested::List(items) => items.iter().flat_map(Nested::leaves).collect(),
        }
    }

    pub fn leaves_mut(&mut self) -> Vec<&mut String> {
        match self {
            Nested::Leaf(s) => vec![s],
            Nested::List(items) => items.iter_mut().flat_map(Nested::leaves_mut).collect(),
        }
    }
}

impl fmt::Display for Nested {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&s)
    }
}
