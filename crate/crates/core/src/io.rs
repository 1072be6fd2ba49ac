//! JSON documents for semigroups, matrices, groupoids and reports, and the
//! DOT rendering of a groupoid. Rationals are always `"p/q"` strings.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::ring::matrix::RMatrix;
use crate::semigroup::{Id, StarSemigroup, WeylPair};
use crate::set::ElementSet;
use crate::topology::{Carrier, TopGroupoid};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// A `*`-semigroup, optionally with the distinguished subset `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub mult: Vec<Vec<Id>>,
    pub star: Vec<Id>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<Id>,
    #[serde(default, rename = "E", alias = "e", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Id>>,
}

impl SemigroupDoc {
    pub fn from_pair(name: Option<&str>, pair: &WeylPair) -> Self {
        let s = pair.s();
        SemigroupDoc {
            name: name.map(str::to_owned),
            n: Some(s.n()),
            mult: s.mult_table(),
            star: s.star_table(),
            zero: s.zero(),
            e: Some(pair.e().to_vec()),
        }
    }

    /// Validated tables; law violations and shape errors are reported.
    pub fn star_semigroup(&self) -> Result<StarSemigroup> {
        self.check_size()?;
        StarSemigroup::new(self.mult.clone(), self.star.clone(), self.zero)
    }

    /// The declared `n`, when present, must match the table.
    pub fn check_size(&self) -> Result<()> {
        match self.n {
            Some(n) if n != self.mult.len() => {
                Err(Error::Structure(format!("n = {n} but the multiplication table has {} rows", self.mult.len())))
            }
            _ => Ok(()),
        }
    }

    pub fn e_set(&self, n: usize) -> Result<ElementSet> {
        let ids = self.e.as_ref().ok_or_else(|| Error::Structure("the document has no \"E\" field".into()))?;
        if let Some(&bad) = ids.iter().find(|&&x| x >= n) {
            return Err(Error::Structure(format!("E contains {bad}, outside 0..{n}")));
        }
        Ok(ElementSet::from_ids(n, ids.iter().copied()))
    }

    pub fn pair(&self) -> Result<WeylPair> {
        let s = self.star_semigroup()?;
        let e = self.e_set(s.n())?;
        WeylPair::new(s, e)
    }
}

pub fn parse_semigroup(text: &str) -> Result<SemigroupDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("semigroup document: {e}")))
}

/// A `d×d` rational matrix with entries as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub d: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &RMatrix) -> Self {
        MatrixDoc { d: m.dim(), entries: m.to_strings() }
    }

    pub fn matrix(&self) -> Result<RMatrix> {
        if self.d == 0 || self.entries.len() != self.d || self.entries.iter().any(|r| r.len() != self.d) {
            return Err(Error::Structure(format!("entries must form a {0}×{0} array with d ≥ 1", self.d)));
        }
        RMatrix::from_strings(&self.entries)
    }
}

pub fn parse_matrix(text: &str) -> Result<RMatrix> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix document: {e}")))?;
    doc.matrix()
}

/// A topological groupoid: points (as subsets of `S` when built from a
/// pair), units, involution, partial product and the basis of its topology.
#[derive(Clone, Debug, Serialize)]
pub struct GroupoidDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Carrier>,
    pub points: Vec<ElementSet>,
    pub units: ElementSet,
    pub star: Vec<usize>,
    pub product: Vec<Vec<Option<usize>>>,
    pub opens: Vec<ElementSet>,
    pub open_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

impl GroupoidDoc {
    pub fn from_groupoid(g: &TopGroupoid) -> Self {
        GroupoidDoc {
            carrier: g.carrier,
            points: g.points.clone(),
            units: g.units.clone(),
            star: g.star.clone(),
            product: g.product.clone(),
            opens: g.topology.basis(),
            open_count: g.topology.open_count(),
            report: None,
        }
    }
}

/// One node per point in id order, labelled `s→r` by the positions of its
/// source and range among the units; edges join each non-self-inverse point
/// to its inverse.
pub fn groupoid_dot(g: &TopGroupoid) -> String {
    let units = g.units.to_vec();
    let pos = |u: usize| units.iter().position(|&v| v == u).expect("source and range are units");
    let mut out = String::from("digraph weyl {\n");
    for p in 0..g.n() {
        let shape = if g.units.contains(p) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  p{p} [label=\"{p}: {}→{}\", shape={shape}];", pos(g.source(p)), pos(g.range(p)));
    }
    for p in 0..g.n() {
        if g.star[p] > p {
            let _ = writeln!(out, "  p{p} -> p{} [dir=both, label=\"*\"];", g.star[p]);
        }
    }
    out.push_str("}\n");
    out
}

/// A command's report: its checks, its facts and the overall verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDoc {
    pub command: String,
    pub passed: bool,
    #[serde(flatten)]
    pub report: Report,
}

impl ReportDoc {
    pub fn new(command: &str, report: Report) -> Self {
        ReportDoc { command: command.to_owned(), passed: report.passed(), report }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}
