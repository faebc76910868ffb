use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::FinCat;

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// Functor file: maps keyed by source ids, valued by target ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorDesc {
    pub obj_map: std::collections::BTreeMap<String, String>,
    pub mor_map: std::collections::BTreeMap<String, String>,
}

impl Functor {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<usize>, mor_map: Vec<usize>) -> Result<Self> {
        let f = Functor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn from_desc(source: Arc<FinCat>, target: Arc<FinCat>, desc: &FunctorDesc) -> Result<Self> {
        let mut obj_map = Vec::with_capacity(source.num_objects());
        for o in source.objects() {
            let img = desc
                .obj_map
                .get(o)
                .ok_or_else(|| Error::NotAFunctor(format!("object {o} has no image")))?;
            obj_map.push(
                target
                    .object_index(img)
                    .ok_or_else(|| Error::NotAFunctor(format!("unknown target object {img}")))?,
            );
        }
        let mut mor_map = Vec::with_capacity(source.num_morphisms());
        for m in 0..source.num_morphisms() {
            let name = source.morphism_name(m);
            let img = match desc.mor_map.get(name) {
                Some(img) => target
                    .morphism_index(img)
                    .ok_or_else(|| Error::NotAFunctor(format!("unknown target morphism {img}")))?,
                None if source.is_identity(m) => target.id(obj_map[source.src(m)]),
                None => return Err(Error::NotAFunctor(format!("morphism {name} has no image"))),
            };
            mor_map.push(img);
        }
        Functor::new(source, target, obj_map, mor_map)
    }

    pub fn to_desc(&self) -> FunctorDesc {
        FunctorDesc {
            obj_map: (0..self.source.num_objects())
                .map(|o| {
                    (
                        self.source.object_name(o).to_string(),
                        self.target.object_name(self.obj_map[o]).to_string(),
                    )
                })
                .collect(),
            mor_map: (0..self.source.num_morphisms())
                .map(|m| {
                    (
                        self.source.morphism_name(m).to_string(),
                        self.target.morphism_name(self.mor_map[m]).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj_map = (0..c.num_objects()).collect();
        let mor_map = (0..c.num_morphisms()).collect();
        Functor {
            source: c.clone(),
            target: c,
            obj_map,
            mor_map,
        }
    }

    /// Preservation of endpoints, identities and composition, checked exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&*self.source, &*self.target);
        if self.obj_map.len() != c.num_objects() || self.mor_map.len() != c.num_morphisms() {
            return Err(Error::NotAFunctor("maps have the wrong length".into()));
        }
        if self.obj_map.iter().any(|&o| o >= d.num_objects()) || self.mor_map.iter().any(|&m| m >= d.num_morphisms()) {
            return Err(Error::NotAFunctor("image out of range".into()));
        }
        for m in 0..c.num_morphisms() {
            let fm = self.mor_map[m];
            if d.src(fm) != self.obj_map[c.src(m)] || d.tgt(fm) != self.obj_map[c.tgt(m)] {
                return Err(Error::NotAFunctor(format!("endpoints of {} not preserved", c.morphism_name(m))));
            }
        }
        for o in 0..c.num_objects() {
            if self.mor_map[c.id(o)] != d.id(self.obj_map[o]) {
                return Err(Error::NotAFunctor(format!("identity of {} not preserved", c.object_name(o))));
            }
        }
        for g in 0..c.num_morphisms() {
            for f in c.morphisms_into(c.src(g)) {
                if self.mor_map[c.compose(g, f)] != d.compose(self.mor_map[g], self.mor_map[f]) {
                    return Err(Error::NotAFunctor(format!(
                        "composite {} ∘ {} not preserved",
                        c.morphism_name(g),
                        c.morphism_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor> {
        if *self.target != *other.source {
            return Err(Error::NotAFunctor("functors are not composable".into()));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor_map[m]).collect(),
        })
    }

    /// The induced functor between opposite categories (same index maps).
    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let bij = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        bij(&self.obj_map, self.target.num_objects()) && bij(&self.mor_map, self.target.num_morphisms())
    }

    pub fn same_maps(&self, other: &Functor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }
}

/// Enumerates every functor `c -> d` by backtracking on morphism images.
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: &Budget) -> Result<Vec<Functor>> {
    search_functors(c, d, budget, None, false)
}

/// Finds an isomorphism of categories `c -> d`, optionally required to commute
/// with given projections to a common base (`over = Some((pc, pd))`).
pub fn find_isomorphism(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    over: Option<(&Functor, &Functor)>,
    budget: &Budget,
) -> Result<Option<Functor>> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return Ok(None);
    }
    Ok(search_functors(c, d, budget, over, true)?.into_iter().next())
}

fn search_functors(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    budget: &Budget,
    over: Option<(&Functor, &Functor)>,
    bijective: bool,
) -> Result<Vec<Functor>> {
    struct Ctx<'a> {
        c: &'a FinCat,
        d: &'a FinCat,
        over: Option<(&'a Functor, &'a Functor)>,
        bijective: bool,
        budget: &'a Budget,
        obj: Vec<Option<usize>>,
        mor: Vec<Option<usize>>,
        used_obj: Vec<bool>,
        used_mor: Vec<bool>,
        order: Vec<usize>,
        factorings: Vec<Vec<(usize, usize)>>,
        out: Vec<(Vec<usize>, Vec<usize>)>,
        first_only: bool,
    }
    impl Ctx<'_> {
        fn obj_ok(&self, o: usize, t: usize) -> bool {
            if self.bijective && self.used_obj[t] {
                return false;
            }
            if let Some((pc, pd)) = self.over {
                if pc.obj_map[o] != pd.obj_map[t] {
                    return false;
                }
            }
            if self.bijective {
                let sig = |cat: &FinCat, x: usize| {
                    (
                        cat.morphisms_from(x).count(),
                        cat.morphisms_into(x).count(),
                        cat.hom(x, x).len(),
                    )
                };
                if sig(self.c, o) != sig(self.d, t) {
                    return false;
                }
            }
            true
        }
        fn assign_obj(&mut self, o: usize, t: usize, newly: &mut Vec<usize>) -> bool {
            match self.obj[o] {
                Some(x) => x == t,
                None => {
                    if !self.obj_ok(o, t) {
                        return false;
                    }
                    self.obj[o] = Some(t);
                    self.used_obj[t] = true;
                    newly.push(o);
                    true
                }
            }
        }
        fn consistent(&self, m: usize) -> bool {
            let fm = self.mor[m].unwrap();
            for &k in &self.order {
                let Some(fk) = self.mor[k] else { continue };
                if let Some(h) = self.c.try_compose(m, k) {
                    if let Some(fh) = self.mor[h] {
                        if self.d.compose(fm, fk) != fh {
                            return false;
                        }
                    }
                }
                if let Some(h) = self.c.try_compose(k, m) {
                    if let Some(fh) = self.mor[h] {
                        if self.d.compose(fk, fm) != fh {
                            return false;
                        }
                    }
                }
            }
            self.factorings[m].iter().all(|&(g, f)| match (self.mor[g], self.mor[f]) {
                (Some(fg), Some(ff)) => self.d.compose(fg, ff) == fm,
                _ => true,
            })
        }
        fn go(&mut self, i: usize) -> Result<bool> {
            self.budget.tick()?;
            if i == self.order.len() {
                let obj: Vec<usize> = self.obj.iter().map(|o| o.unwrap()).collect();
                let mor: Vec<usize> = self.mor.iter().map(|m| m.unwrap()).collect();
                self.out.push((obj, mor));
                return Ok(self.first_only);
            }
            let m = self.order[i];
            let (s, t) = (self.c.src(m), self.c.tgt(m));
            let cands: Vec<usize> = if self.c.is_identity(m) {
                (0..self.d.num_objects()).map(|o| self.d.id(o)).collect()
            } else {
                (0..self.d.num_morphisms()).collect()
            };
            for fm in cands {
                if self.bijective && self.used_mor[fm] {
                    continue;
                }
                if let Some((pc, pd)) = self.over {
                    if pc.mor_map[m] != pd.mor_map[fm] {
                        continue;
                    }
                }
                let mut newly = Vec::new();
                let (us, ut) = (self.d.src(fm), self.d.tgt(fm));
                if self.assign_obj(s, us, &mut newly) && self.assign_obj(t, ut, &mut newly) {
                    self.mor[m] = Some(fm);
                    self.used_mor[fm] = true;
                    if self.consistent(m) && self.go(i + 1)? {
                        return Ok(true);
                    }
                    self.mor[m] = None;
                    self.used_mor[fm] = false;
                }
                for o in newly {
                    self.used_obj[self.obj[o].unwrap()] = false;
                    self.obj[o] = None;
                }
            }
            Ok(false)
        }
    }

    // identities first (fix objects), then the rest
    let mut order: Vec<usize> = (0..c.num_objects()).map(|o| c.id(o)).collect();
    order.extend((0..c.num_morphisms()).filter(|&m| !c.is_identity(m)));
    let mut factorings = vec![Vec::new(); c.num_morphisms()];
    for g in 0..c.num_morphisms() {
        for f in c.morphisms_into(c.src(g)) {
            factorings[c.compose(g, f)].push((g, f));
        }
    }
    let mut ctx = Ctx {
        c,
        d,
        over,
        bijective,
        budget,
        obj: vec![None; c.num_objects()],
        mor: vec![None; c.num_morphisms()],
        used_obj: vec![false; d.num_objects()],
        used_mor: vec![false; d.num_morphisms()],
        order,
        factorings,
        out: Vec::new(),
        first_only: bijective,
    };
    ctx.go(0)?;
    ctx.out
        .into_iter()
        .map(|(o, m)| Functor::new(c.clone(), d.clone(), o, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functors_from_interval() {
        let i = Arc::new(FinCat::ordinal(1));
        let t = Arc::new(FinCat::terminal());
        assert_eq!(enumerate_functors(&i, &t, &Budget::default()).unwrap().len(), 1);
        // functors [1] -> [1] are monotone maps: 3
        assert_eq!(enumerate_functors(&i, &i, &Budget::default()).unwrap().len(), 3);
        // functors [1] -> [2]: monotone maps [1] -> [2] = 6
        let two = Arc::new(FinCat::ordinal(2));
        assert_eq!(enumerate_functors(&i, &two, &Budget::default()).unwrap().len(), 6);
    }

    #[test]
    fn monoid_endofunctors_are_endomorphisms() {
        // Z/3 as a one-object category: endomorphisms of Z/3 are x -> kx, k = 0,1,2
        let z3 = Arc::new(
            FinCat::from_monoid(
                "*",
                vec!["0".into(), "1".into(), "2".into()],
                (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect(),
            )
            .unwrap(),
        );
        assert_eq!(enumerate_functors(&z3, &z3, &Budget::default()).unwrap().len(), 3);
        let iso = find_isomorphism(&z3, &z3, None, &Budget::default()).unwrap();
        assert!(iso.unwrap().is_bijective());
    }

    #[test]
    fn non_iso_categories() {
        let a = Arc::new(FinCat::ordinal(1));
        let b = Arc::new(FinCat::from_monoid("*", vec!["1".into(), "a".into()], vec![vec![0, 1], vec![1, 0]]).unwrap());
        assert!(find_isomorphism(&a, &b, None, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn bad_functor_rejected() {
        let i = Arc::new(FinCat::ordinal(1));
        // send 0 -> 1 and 1 -> 0 with the arrow mapped backwards: endpoints break
        let f = i.hom(0, 1)[0];
        let mut mor = vec![0; 3];
        mor[i.id(0)] = i.id(1);
        mor[i.id(1)] = i.id(0);
        mor[f] = f;
        assert!(Functor::new(i.clone(), i.clone(), vec![1, 0], mor).is_err());
    }
}
