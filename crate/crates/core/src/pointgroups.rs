//! The twelve two-dimensional point groups.
//!
//! Finite groups are enumerated by closing their generators under products.
//! Elements come out in a canonical order (identity, rotations by increasing
//! angle, reflections by increasing axis angle) so Cayley tables are
//! reproducible. The continuous groups are only ever sampled.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::tensor2d::{OrthKind, OrthTransform};
use crate::{Error, Result};

/// Matrix distance below which two elements are the same.
pub const DEDUP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    C1,
    C2,
    C1v,
    C2v,
    C3,
    C3v,
    C4,
    C4v,
    C6,
    C6v,
    #[serde(rename = "Cinf")]
    Cinf,
    #[serde(rename = "Cinf_v")]
    CinfV,
}

impl GroupId {
    pub const ALL: [GroupId; 12] = [
        GroupId::C1,
        GroupId::C2,
        GroupId::C1v,
        GroupId::C2v,
        GroupId::C3,
        GroupId::C3v,
        GroupId::C4,
        GroupId::C4v,
        GroupId::C6,
        GroupId::C6v,
        GroupId::Cinf,
        GroupId::CinfV,
    ];

    pub const FINITE: [GroupId; 10] = [
        GroupId::C1,
        GroupId::C2,
        GroupId::C1v,
        GroupId::C2v,
        GroupId::C3,
        GroupId::C3v,
        GroupId::C4,
        GroupId::C4v,
        GroupId::C6,
        GroupId::C6v,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GroupId::C1 => "C1",
            GroupId::C2 => "C2",
            GroupId::C1v => "C1v",
            GroupId::C2v => "C2v",
            GroupId::C3 => "C3",
            GroupId::C3v => "C3v",
            GroupId::C4 => "C4",
            GroupId::C4v => "C4v",
            GroupId::C6 => "C6",
            GroupId::C6v => "C6v",
            GroupId::Cinf => "Cinf",
            GroupId::CinfV => "Cinf_v",
        }
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, GroupId::Cinf | GroupId::CinfV)
    }

    /// Group order; `None` for the continuous groups.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupId::C1 => 1,
            GroupId::C2 | GroupId::C1v => 2,
            GroupId::C3 => 3,
            GroupId::C2v | GroupId::C4 => 4,
            GroupId::C3v | GroupId::C6 => 6,
            GroupId::C4v => 8,
            GroupId::C6v => 12,
            GroupId::Cinf | GroupId::CinfV => return None,
        })
    }

    pub fn generators(&self) -> Vec<OrthTransform> {
        let rot = OrthTransform::rotation;
        let refl = OrthTransform::reflection;
        match self {
            GroupId::C1 | GroupId::Cinf | GroupId::CinfV => vec![],
            GroupId::C2 => vec![rot(PI)],
            GroupId::C1v => vec![refl(0.0)],
            GroupId::C2v => vec![rot(PI), refl(0.0)],
            GroupId::C3 => vec![rot(2.0 * FRAC_PI_3)],
            GroupId::C3v => vec![rot(2.0 * FRAC_PI_3), refl(FRAC_PI_2)],
            GroupId::C4 => vec![rot(FRAC_PI_2)],
            GroupId::C4v => vec![rot(FRAC_PI_2), refl(0.0)],
            GroupId::C6 => vec![rot(FRAC_PI_3)],
            GroupId::C6v => vec![rot(FRAC_PI_3), refl(FRAC_PI_2)],
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupId::ALL
            .into_iter()
            .find(|g| g.as_str().eq_ignore_ascii_case(s))
            .or(match s {
                "CinfV" | "Cinfv" | "Cinf-v" => Some(GroupId::CinfV),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct PointGroup {
    pub id: GroupId,
    pub generators: Vec<OrthTransform>,
    /// Canonically ordered elements; empty for continuous groups.
    pub elements: Vec<OrthTransform>,
    pub continuous: bool,
}

/// Builds the group, enumerating elements for the finite ones.
pub fn group(id: GroupId) -> PointGroup {
    let generators = id.generators();
    let continuous = id.is_continuous();
    let elements = if continuous { Vec::new() } else { close_generators(&generators) };
    PointGroup { id, generators, elements, continuous }
}

fn canonical_key(q: &OrthTransform) -> (u8, f64) {
    match q.kind {
        OrthKind::Rotation => (0, q.angle),
        OrthKind::Reflection => (1, q.angle),
    }
}

fn sort_canonical(elements: &mut [OrthTransform]) {
    elements.sort_by(|a, b| {
        let (ka, kb) = (canonical_key(a), canonical_key(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

/// Fixed-point closure of `generators` under products, canonically ordered.
pub fn close_generators(generators: &[OrthTransform]) -> Vec<OrthTransform> {
    let mut elements = vec![OrthTransform::identity()];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in generators {
                let p = g.compose(a);
                let known = elements.iter().chain(&next).any(|e| e.distance(&p) < DEDUP_TOL);
                if !known {
                    next.push(p);
                }
            }
        }
        elements.extend_from_slice(&next);
        frontier = next;
    }
    sort_canonical(&mut elements);
    elements
}

impl PointGroup {
    pub fn enumerate_elements(&self) -> Result<Vec<OrthTransform>> {
        if self.continuous {
            return Err(Error::ContinuousGroup(self.id));
        }
        Ok(close_generators(&self.generators))
    }

    /// Index of the element within `DEDUP_TOL` of `q`.
    pub fn index_of(&self, q: &OrthTransform) -> Option<usize> {
        self.elements.iter().position(|e| e.distance(q) < DEDUP_TOL)
    }

    pub fn cayley_table(&self) -> Result<CayleyTable> {
        if self.continuous {
            return Err(Error::ContinuousGroup(self.id));
        }
        let n = self.elements.len();
        let mut entries = vec![vec![0; n]; n];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                entries[i][j] = self
                    .index_of(&a.compose(b))
                    .expect("enumerated elements are closed under products");
            }
        }
        Ok(CayleyTable {
            group: self.id,
            names: self.elements.iter().map(OrthTransform::name).collect(),
            entries,
        })
    }

    pub fn contains(&self, q: &OrthTransform, tol: f64) -> bool {
        match self.id {
            GroupId::Cinf => q.kind == OrthKind::Rotation,
            GroupId::CinfV => true,
            _ => self.elements.iter().any(|e| e.distance(q) <= tol),
        }
    }

    /// Elements to check "for all Q" conditions against. Finite groups return
    /// every element and ignore `n`; `Cinf` gives `n` random rotations and
    /// `Cinf_v` adds `n` random reflections.
    pub fn sample_elements<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<OrthTransform> {
        let mut out: Vec<OrthTransform> = match self.id {
            GroupId::Cinf | GroupId::CinfV => {
                (0..n).map(|_| OrthTransform::rotation(rng.gen_range(0.0..TAU))).collect()
            }
            _ => return self.elements.clone(),
        };
        if self.id == GroupId::CinfV {
            out.extend((0..n).map(|_| OrthTransform::reflection(rng.gen_range(0.0..PI))));
        }
        out
    }

    /// Order of each element in the group.
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|e| {
                let mut p = *e;
                let mut k = 1;
                while !p.is_identity(DEDUP_TOL) {
                    p = e.compose(&p);
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// Group multiplication table: `entries[i][j]` is the index of
/// `element_i · element_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub group: GroupId,
    pub names: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let is_perm = |items: Vec<usize>| {
            let mut seen = vec![false; n];
            items.len() == n && items.into_iter().all(|k| k < n && !std::mem::replace(&mut seen[k], true))
        };
        self.entries.len() == n
            && self.entries.iter().all(|row| is_perm(row.clone()))
            && (0..n).all(|j| is_perm(self.entries.iter().map(|row| row[j]).collect()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Always)
            .from_writer(Vec::new());
        let header = std::iter::once("").chain(self.names.iter().map(String::as_str));
        w.write_record(header).map_err(csv_err)?;
        for (name, row) in self.names.iter().zip(&self.entries) {
            let cells = std::iter::once(name.as_str())
                .chain(row.iter().map(|&k| self.names[k].as_str()));
            w.write_record(cells).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
