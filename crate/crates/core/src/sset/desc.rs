use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::map::SSetMap;
use super::operator::SimplicialOperator;
use super::simplicial::{FinSSet, NdEntry, SSetSpec};

/// A simplicial set in a file: a named standard object or an explicit spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SSetDesc {
    Standard {
        /// `delta:n`, `boundary:n`, `horn:n:k`, `circle` or `sphere:n`.
        standard: String,
        dim: usize,
    },
    Spec(SSetSpec),
}

/// Flat mirror of [`SSetDesc`], read without buffering so errors keep
/// their location.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSSet {
    standard: Option<String>,
    dim: usize,
    nondegenerate: Option<BTreeMap<String, Vec<NdEntry>>>,
}

impl<'de> Deserialize<'de> for SSetDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RawSSet::deserialize(d)?;
        match (r.standard, r.nondegenerate) {
            (Some(standard), None) => Ok(SSetDesc::Standard { standard, dim: r.dim }),
            (None, Some(nondegenerate)) => Ok(SSetDesc::Spec(SSetSpec {
                dim: r.dim,
                nondegenerate,
            })),
            _ => Err(D::Error::custom("expected exactly one of `standard` or `nondegenerate`")),
        }
    }
}

impl SSetDesc {
    pub fn build(&self) -> Result<FinSSet> {
        match self {
            SSetDesc::Spec(s) => FinSSet::build("X", s),
            SSetDesc::Standard { standard, dim } => {
                let parts: Vec<&str> = standard.split(':').collect();
                let num = |i: usize| -> Result<usize> {
                    parts
                        .get(i)
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| Error::InvalidSpec(format!("bad standard object {standard:?}")))
                };
                match parts[0] {
                    "delta" => FinSSet::delta(num(1)?, *dim),
                    "boundary" => FinSSet::boundary(num(1)?, *dim),
                    "horn" => FinSSet::horn(num(1)?, num(2)?, *dim),
                    "circle" => FinSSet::circle(*dim),
                    "sphere" => FinSSet::sphere(num(1)?, *dim),
                    _ => Err(Error::InvalidSpec(format!("unknown standard object {standard:?}"))),
                }
            }
        }
    }
}

/// A simplex of `X_m`: an index, a nondegenerate name, or `name·(σ values)`
/// (also written `name*(…)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimplexRef {
    Index(usize),
    Label(String),
}

impl SimplexRef {
    pub fn resolve(&self, x: &FinSSet, m: usize) -> Result<usize> {
        let bad = |why: String| Error::InvalidSpec(why);
        match self {
            SimplexRef::Index(i) if *i < x.count(m) => Ok(*i),
            SimplexRef::Index(i) => Err(bad(format!("{i} is not a {m}-simplex of {}", x.name()))),
            SimplexRef::Label(l) => {
                let (name, op) = match l.split_once('·').or_else(|| l.split_once('*')) {
                    Some((n, rest)) => (n, Some(rest)),
                    None => (l.as_str(), None),
                };
                let (k, y) = x.nd_index(name).ok_or_else(|| bad(format!("no simplex named {name:?}")))?;
                let sigma = match op {
                    None => SimplicialOperator::identity(k),
                    Some(rest) => {
                        let vals = rest
                            .strip_prefix('(')
                            .and_then(|r| r.strip_suffix(')'))
                            .map(|r| r.split(',').map(|v| v.trim().parse().ok()).collect::<Option<Vec<usize>>>())
                            .flatten()
                            .ok_or_else(|| bad(format!("bad operator in {l:?}")))?;
                        SimplicialOperator::new(k, vals).ok_or_else(|| bad(format!("bad operator in {l:?}")))?
                    }
                };
                if sigma.source() != m {
                    return Err(bad(format!("{l:?} is not a {m}-simplex")));
                }
                Ok(x.act(k, y, &sigma))
            }
        }
    }
}

/// Images of the nondegenerate simplices of the source, keyed by dimension
/// and then by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetMapDesc {
    pub source: SSetDesc,
    pub target: SSetDesc,
    pub images: BTreeMap<String, BTreeMap<String, SimplexRef>>,
}

impl SSetMapDesc {
    pub fn build(&self) -> Result<SSetMap> {
        let x = Arc::new(self.source.build()?.with_name("source"));
        let y = Arc::new(self.target.build()?.with_name("target"));
        build_map(x, y, &self.images)
    }
}

pub fn build_map(x: Arc<FinSSet>, y: Arc<FinSSet>, images: &BTreeMap<String, BTreeMap<String, SimplexRef>>) -> Result<SSetMap> {
    let mut out: Vec<Vec<usize>> = (0..=x.dim()).map(|m| vec![usize::MAX; x.nondegenerate(m).len()]).collect();
    for (k, assign) in images {
        let m: usize = k.parse().map_err(|_| Error::InvalidSpec(format!("dimension key {k:?} is not a number")))?;
        if m > x.dim() {
            return Err(Error::TruncationTooLow(format!("image given in dimension {m} above truncation {}", x.dim())));
        }
        for (name, r) in assign {
            let (dm, s) = x
                .nd_index(name)
                .filter(|&(dm, _)| dm == m)
                .ok_or_else(|| Error::InvalidSpec(format!("source has no nondegenerate {m}-simplex {name:?}")))?;
            let pos = x.nondegenerate(dm).binary_search(&s).expect("nondegenerate");
            out[m][pos] = r.resolve(&y, m)?;
        }
    }
    for m in 0..=x.dim() {
        if let Some(pos) = out[m].iter().position(|&v| v == usize::MAX) {
            let s = x.nondegenerate(m)[pos];
            return Err(Error::InvalidSpec(format!("no image for {}", x.label(m, s))));
        }
    }
    SSetMap::from_nd_images(x, y, &out)
}
