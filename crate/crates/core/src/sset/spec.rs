use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::orth::nisnevich_filter;
use crate::poset::Poset;

use super::map::{find_section, maps_between, SSetMap};
use super::simplicial::FinSSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    Raw,
    DeltaNis,
}

impl CoverMode {
    pub const ALL: [CoverMode; 2] = [CoverMode::Raw, CoverMode::DeltaNis];

    pub fn as_str(self) -> &'static str {
        match self {
            CoverMode::Raw => "raw",
            CoverMode::DeltaNis => "delta-nis",
        }
    }
}

impl fmt::Display for CoverMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoverMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(CoverMode::Raw),
            "delta-nis" | "deltanis" => Ok(CoverMode::DeltaNis),
            _ => Err(Error::InvalidSpec(format!("unknown cover mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSetCoverResult {
    pub covers: bool,
    /// The first simplex (by dimension, then index) that does not lift.
    pub obstruction: Option<String>,
}

fn check_members(x: &FinSSet, family: &[SSetMap]) -> Result<()> {
    for (i, f) in family.iter().enumerate() {
        if **f.target() != *x {
            return Err(Error::InvalidFamily(format!("member {i} does not map into {}", x.name())));
        }
        if !f.is_nondegenerate_map() {
            return Err(Error::InvalidFamily(format!("member {i} sends a nondegenerate simplex to a degenerate one")));
        }
    }
    Ok(())
}

/// Simplices of `X_m` hit by no member.
fn unlifted(x: &FinSSet, family: &[SSetMap], m: usize) -> Vec<usize> {
    let mut hit = vec![false; x.count(m)];
    for f in family {
        f.tables()[m].iter().for_each(|&t| hit[t] = true);
    }
    (0..x.count(m)).filter(|&s| !hit[s]).collect()
}

/// raw: jointly surjective on vertices. delta-nis: additionally every
/// `Δ[n] → X` lifts, which is the raw condition filtered by forcing with the
/// simplices `Δ[0..=d]` (a simplex lifts through a member iff it is in its image).
pub fn cover_check(x: &FinSSet, family: &[SSetMap], mode: CoverMode) -> Result<SSetCoverResult> {
    check_members(x, family)?;
    let fail = |m: usize, s: usize| SSetCoverResult {
        covers: false,
        obstruction: Some(format!("{}-simplex {} does not lift", m, x.label(m, s))),
    };
    if let Some(&v) = unlifted(x, family, 0).first() {
        return Ok(fail(0, v));
    }
    if mode == CoverMode::Raw {
        return Ok(SSetCoverResult {
            covers: true,
            obstruction: None,
        });
    }
    let forcing: Vec<usize> = (0..=x.dim()).collect();
    let fams = [family.to_vec()];
    let kept = nisnevich_filter(&fams, &forcing, |&n, fam| unlifted(x, fam, n).is_empty());
    if kept.is_empty() {
        let (m, s) = (0..=x.dim())
            .find_map(|m| unlifted(x, family, m).first().map(|&s| (m, s)))
            .expect("some simplex fails to lift");
        return Ok(fail(m, s));
    }
    Ok(SSetCoverResult {
        covers: true,
        obstruction: None,
    })
}

/// `Δ[m] → X` for every nondegenerate simplex of dimension `m < dim`.
pub fn simplex_family(x: &Arc<FinSSet>) -> Result<Vec<SSetMap>> {
    let mut out = Vec::new();
    for m in 0..x.dim() {
        for &s in x.nondegenerate(m) {
            out.push(SSetMap::simplex(x.clone(), m, s)?);
        }
    }
    Ok(out)
}

/// The simplices of [`simplex_family`] that are not a proper face of another.
pub fn maximal_simplex_family(x: &Arc<FinSSet>) -> Result<Vec<SSetMap>> {
    let p = spec_delta_nis(x);
    let maximal = p.maximal_elements();
    let mut out = Vec::new();
    let mut id = 0;
    for m in 0..x.dim() {
        for &s in x.nondegenerate(m) {
            if maximal.contains(&id) {
                out.push(SSetMap::simplex(x.clone(), m, s)?);
            }
            id += 1;
        }
    }
    Ok(out)
}

/// `id_X` lifts through some member.
pub fn self_lifts(family: &[SSetMap], budget: &Budget) -> Result<bool> {
    for f in family {
        if find_section(f, budget)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Nondegenerate simplices, `x ≤ y` iff `x` is an iterated face of `y`.
pub fn spec_delta_nis(x: &FinSSet) -> Poset {
    let cells: Vec<(usize, usize)> = (0..=x.dim()).flat_map(|m| x.nondegenerate(m).iter().map(move |&s| (m, s))).collect();
    let labels = cells.iter().map(|&(m, s)| x.label(m, s)).collect();
    let faces: Vec<Vec<(usize, usize)>> = cells.iter().map(|&(m, s)| x.faces_of(m, s)).collect();
    Poset::from_fn(labels, |a, b| faces[b].contains(&cells[a])).expect("face order is a partial order")
}

pub fn spec_raw(x: &FinSSet) -> Poset {
    Poset::discrete((0..x.count(0)).map(|v| x.label(0, v)).collect())
}

/// Outcome of testing `X` against the covers available for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub local: bool,
    pub covers_tested: usize,
    pub failing_cover: Option<String>,
}

/// Tests self-lifting through the covers of `X` built from: all nondegenerate
/// simplices, the maximal ones, the vertices (raw only), and every single
/// nondegenerate map from a pool object that covers on its own.
pub fn local_check(x: &Arc<FinSSet>, mode: CoverMode, pool: &[Arc<FinSSet>], budget: &Budget) -> Result<LocalReport> {
    let mut covers: Vec<(String, Vec<SSetMap>)> = vec![
        ("all simplices".into(), simplex_family(x)?),
        ("maximal simplices".into(), maximal_simplex_family(x)?),
    ];
    if mode == CoverMode::Raw {
        let verts = x.nondegenerate(0).iter().map(|&v| SSetMap::simplex(x.clone(), 0, v)).collect::<Result<Vec<_>>>()?;
        covers.push(("vertices".into(), verts));
    }
    for y in pool {
        if y.dim() != x.dim() {
            continue;
        }
        for f in maps_between(y, x, MAPS_PER_OBJECT, budget)? {
            if f.is_nondegenerate_map() {
                covers.push((format!("{} -> {}", y.name(), x.name()), vec![f]));
            }
        }
    }
    let mut tested = 0;
    for (name, fam) in covers {
        if fam.iter().any(|f| !f.is_nondegenerate_map()) {
            continue;
        }
        if !cover_check(x, &fam, mode)?.covers {
            continue;
        }
        tested += 1;
        if !self_lifts(&fam, budget)? {
            return Ok(LocalReport {
                local: false,
                covers_tested: tested,
                failing_cover: Some(name),
            });
        }
    }
    Ok(LocalReport {
        local: true,
        covers_tested: tested,
        failing_cover: None,
    })
}

const MAPS_PER_OBJECT: usize = 64;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::face_poset;

    fn arc(x: Result<FinSSet>) -> Arc<FinSSet> {
        Arc::new(x.unwrap())
    }

    #[test]
    fn vertices_of_interval() {
        let d1 = arc(FinSSet::delta(1, 3));
        let verts: Vec<SSetMap> = d1.nondegenerate(0).iter().map(|&v| SSetMap::simplex(d1.clone(), 0, v).unwrap()).collect();
        assert!(cover_check(&d1, &verts, CoverMode::Raw).unwrap().covers);
        let r = cover_check(&d1, &verts, CoverMode::DeltaNis).unwrap();
        assert!(!r.covers);
        assert_eq!(r.obstruction.as_deref(), Some("1-simplex 01 does not lift"));
    }

    #[test]
    fn all_simplices_cover() {
        for x in [arc(FinSSet::boundary(3, 4)), arc(FinSSet::circle(3)), arc(FinSSet::horn(3, 2, 4))] {
            let fam = simplex_family(&x).unwrap();
            assert!(cover_check(&x, &fam, CoverMode::DeltaNis).unwrap().covers);
            assert!(cover_check(&x, &maximal_simplex_family(&x).unwrap(), CoverMode::DeltaNis).unwrap().covers);
        }
    }

    #[test]
    fn degenerate_member_rejected() {
        let d1 = arc(FinSSet::delta(1, 3));
        let d2 = arc(FinSSet::delta(2, 3));
        let squash = maps_between(&d2, &d1, usize::MAX, &Budget::default())
            .unwrap()
            .into_iter()
            .find(|f| !f.is_nondegenerate_map())
            .unwrap();
        assert!(matches!(cover_check(&d1, &[squash], CoverMode::Raw), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn face_posets() {
        for n in 0..=3 {
            let p = spec_delta_nis(&FinSSet::delta(n, n + 1).unwrap());
            assert_eq!(p.len(), (1 << (n + 1)) - 1);
            assert!(p.find_isomorphism(&face_poset(n)).is_some());
        }
        let b = spec_delta_nis(&FinSSet::boundary(2, 3).unwrap());
        assert_eq!(b.len(), 6);
        assert!(b.top().is_none());
        assert!(spec_raw(&FinSSet::delta(2, 3).unwrap()).is_discrete());
    }

    #[test]
    fn local_objects_small() {
        let b = Budget::default();
        let pool = vec![arc(FinSSet::delta(0, 3)), arc(FinSSet::delta(1, 3))];
        assert!(local_check(&arc(FinSSet::delta(2, 3)), CoverMode::DeltaNis, &pool, &b).unwrap().local);
        assert!(!local_check(&arc(FinSSet::boundary(2, 3)), CoverMode::DeltaNis, &pool, &b).unwrap().local);
        let u = arc(FinSSet::disjoint_union(&FinSSet::delta(1, 3).unwrap(), &FinSSet::delta(0, 3).unwrap()));
        assert!(!local_check(&u, CoverMode::DeltaNis, &pool, &b).unwrap().local);
        // raw: only the point
        assert!(local_check(&arc(FinSSet::delta(0, 3)), CoverMode::Raw, &pool, &b).unwrap().local);
        assert!(!local_check(&arc(FinSSet::delta(1, 3)), CoverMode::Raw, &pool, &b).unwrap().local);
    }
}
