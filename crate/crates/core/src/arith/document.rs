//! JSON polynomial documents.
//!
//! ```text
//! {"vars":["r","t"],"terms":[{"c":"1/8","e":[0,1]},{"c":"-1/1","e":[1,0]},{"c":"3/4","e":[0,0]}]}
//! ```
//!
//! `e` is `[deg_r, deg_t]`; coefficients are exact `num/den` strings; terms are
//! written in canonical `(deg_t, deg_r)`-descending order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::rational::{parse_rational, to_fraction_string};
use super::BiPoly;
use crate::error::ParseError;

pub const VARS: [&str; 2] = ["r", "t"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub c: String,
    pub e: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub vars: Vec<String>,
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn from_poly(p: &BiPoly) -> Self {
        PolyDoc {
            vars: VARS.iter().map(|v| v.to_string()).collect(),
            terms: p.terms().map(|((dr, dt), c)| TermDoc { c: to_fraction_string(c), e: [dr, dt] }).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<BiPoly, ParseError> {
        if self.vars != VARS {
            return Err(ParseError::new(0, format!("vars must be [\"r\",\"t\"], got {:?}", self.vars)));
        }
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, term) in self.terms.iter().enumerate() {
            if !seen.insert(term.e) {
                return Err(ParseError::new(i, format!("duplicate exponent {:?} in term {i}", term.e)));
            }
            let c = parse_rational(&term.c).map_err(|e| ParseError::new(i, format!("term {i}: {}", e.message)))?;
            terms.push(((term.e[0], term.e[1]), c));
        }
        Ok(BiPoly::from_terms(terms))
    }
}

/// Compact canonical JSON text of a polynomial.
pub fn serialize(p: &BiPoly) -> String {
    serde_json::to_string(&PolyDoc::from_poly(p)).expect("polynomial documents always serialize")
}

pub fn deserialize(text: &str) -> Result<BiPoly, ParseError> {
    let doc: PolyDoc = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    doc.to_poly()
}

/// Converts a serde_json error into a byte-offset `ParseError`.
pub(crate) fn json_error(text: &str, e: &serde_json::Error) -> ParseError {
    let mut offset = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i + 1 == e.line() {
            offset += e.column().saturating_sub(1).min(line.len());
            break;
        }
        offset += line.len();
    }
    ParseError::new(offset, e.to_string())
}
