use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::{FinRing, Ideal};

/// A unital ring homomorphism, stored by its full element map.
#[derive(Clone, PartialEq, Eq)]
pub struct RingHom {
    source: Arc<FinRing>,
    target: Arc<FinRing>,
    map: Vec<usize>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {}, {:?})", self.source.name(), self.target.name(), self.map)
    }
}

impl RingHom {
    pub fn new(source: Arc<FinRing>, target: Arc<FinRing>, map: Vec<usize>) -> Result<RingHom> {
        let h = RingHom { source, target, map };
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: Arc<FinRing>, target: Arc<FinRing>, map: Vec<usize>) -> RingHom {
        debug_assert!(RingHom {
            source: source.clone(),
            target: target.clone(),
            map: map.clone()
        }
        .validate()
        .is_ok());
        RingHom { source, target, map }
    }

    /// The unique hom extending the given generator images, if any.
    pub fn from_images(source: Arc<FinRing>, target: Arc<FinRing>, images: &[(usize, usize)]) -> Result<RingHom> {
        let mut ext = Extender::new(&source, &target);
        for &(g, y) in images {
            if g >= source.order() || y >= target.order() || !ext.assign(g, y) {
                return Err(Error::NotAHom("generator images are inconsistent".into()));
            }
        }
        if !ext.propagate(&Budget::unlimited())? {
            return Err(Error::NotAHom("generator images are inconsistent".into()));
        }
        let map = ext
            .total()
            .ok_or_else(|| Error::NotAHom("images do not determine the map on all elements".into()))?;
        RingHom::new(source, target, map)
    }

    pub fn identity(a: &Arc<FinRing>) -> RingHom {
        RingHom {
            source: a.clone(),
            target: a.clone(),
            map: a.elements().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&*self.source, &*self.target);
        if self.map.len() != a.order() || self.map.iter().any(|&y| y >= b.order()) {
            return Err(Error::NotAHom("map must be total into the target".into()));
        }
        let m = &self.map;
        if m[a.one()] != b.one() {
            return Err(Error::NotAHom("1 is not sent to 1".into()));
        }
        for x in a.elements() {
            for y in a.elements() {
                if m[a.add(x, y)] != b.add(m[x], m[y]) {
                    return Err(Error::NotAHom(format!("addition not preserved on ({}, {})", a.label(x), a.label(y))));
                }
                if m[a.mul(x, y)] != b.mul(m[x], m[y]) {
                    return Err(Error::NotAHom(format!(
                        "multiplication not preserved on ({}, {})",
                        a.label(x),
                        a.label(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinRing> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> RingHom {
        assert_eq!(*self.target, *other.source, "homs not composable");
        RingHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }

    pub fn same_map(&self, other: &RingHom) -> bool {
        self.map == other.map && *self.source == *other.source && *self.target == *other.target
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<RingHom> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    pub fn kernel(&self) -> Ideal {
        let z = self.target.zero();
        Ideal::from_mask(self.map.iter().map(|&y| y == z).collect())
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.target.order()];
        for &y in &self.map {
            mask[y] = true;
        }
        mask
    }

    /// Ideal of the target generated by the image of `i`.
    pub fn extend_ideal(&self, i: &Ideal) -> Ideal {
        let gens: Vec<usize> = i.elements().map(|x| self.map[x]).collect();
        Ideal::generated(&self.target, &gens)
    }

    pub fn contract_ideal(&self, j: &Ideal) -> Ideal {
        Ideal::from_mask(self.map.iter().map(|&y| j.contains(y)).collect())
    }

    /// Same map with source and target replaced by equal rings.
    pub fn retarget(&self, source: Arc<FinRing>, target: Arc<FinRing>) -> RingHom {
        assert!(*source == *self.source && *target == *self.target);
        RingHom {
            source,
            target,
            map: self.map.clone(),
        }
    }
}

/// Consistency propagation for partial maps `A -> B`.
struct Extender<'a> {
    a: &'a FinRing,
    b: &'a FinRing,
    image: Vec<Option<usize>>,
    known: Vec<usize>,
    done: usize,
}

impl<'a> Extender<'a> {
    fn new(a: &'a FinRing, b: &'a FinRing) -> Self {
        let mut e = Extender {
            a,
            b,
            image: vec![None; a.order()],
            known: Vec::new(),
            done: 0,
        };
        // 0 and 1 are forced; their consistency shows up in propagation
        e.assign(a.zero(), b.zero());
        e.assign(a.one(), b.one());
        e
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        match self.image[x] {
            Some(z) => z == y,
            None => {
                self.image[x] = Some(y);
                self.known.push(x);
                true
            }
        }
    }

    fn propagate(&mut self, budget: &Budget) -> Result<bool> {
        let (a, b) = (self.a, self.b);
        while self.done < self.known.len() {
            let i = self.done;
            let x = self.known[i];
            let fx = self.image[x].unwrap();
            budget.charge(i as u64 + 1)?;
            for j in 0..=i {
                let y = self.known[j];
                let fy = self.image[y].unwrap();
                if !self.assign(a.add(x, y), b.add(fx, fy)) || !self.assign(a.mul(x, y), b.mul(fx, fy)) {
                    return Ok(false);
                }
            }
            if !self.assign(a.neg(x), b.neg(fx)) {
                return Ok(false);
            }
            self.done += 1;
        }
        Ok(true)
    }

    fn mark(&self) -> usize {
        self.known.len()
    }

    fn undo(&mut self, mark: usize) {
        for &x in &self.known[mark..] {
            self.image[x] = None;
        }
        self.known.truncate(mark);
        self.done = self.done.min(mark);
    }

    fn total(&self) -> Option<Vec<usize>> {
        self.image.iter().copied().collect()
    }
}

fn search_homs(
    a: &Arc<FinRing>,
    b: &Arc<FinRing>,
    bijective: bool,
    first_only: bool,
    budget: &Budget,
) -> Result<Vec<RingHom>> {
    let mut out = Vec::new();
    let mut ext = Extender::new(a, b);
    if !ext.propagate(budget)? {
        return Ok(out);
    }
    let gens = a.generators().to_vec();
    fn go(
        k: usize,
        gens: &[usize],
        ext: &mut Extender<'_>,
        a: &Arc<FinRing>,
        b: &Arc<FinRing>,
        bijective: bool,
        first_only: bool,
        budget: &Budget,
        out: &mut Vec<RingHom>,
    ) -> Result<()> {
        if first_only && !out.is_empty() {
            return Ok(());
        }
        if k == gens.len() {
            let map = ext.total().expect("generators determine the map");
            let h = RingHom {
                source: a.clone(),
                target: b.clone(),
                map,
            };
            budget.charge(a.order() as u64)?;
            if h.validate().is_ok() && (!bijective || h.is_iso()) {
                out.push(h);
            }
            return Ok(());
        }
        let g = gens[k];
        if ext.image[g].is_some() {
            return go(k + 1, gens, ext, a, b, bijective, first_only, budget, out);
        }
        for y in b.elements() {
            budget.tick()?;
            let mark = ext.mark();
            if ext.assign(g, y) && ext.propagate(budget)? {
                go(k + 1, gens, ext, a, b, bijective, first_only, budget, out)?;
            }
            ext.undo(mark);
            if first_only && !out.is_empty() {
                break;
            }
        }
        Ok(())
    }
    go(0, &gens, &mut ext, a, b, bijective, first_only, budget, &mut out)?;
    Ok(out)
}

/// Every unital hom `A -> B`, in lexicographic order of generator images.
pub fn enumerate_homs(a: &Arc<FinRing>, b: &Arc<FinRing>, budget: &Budget) -> Result<Vec<RingHom>> {
    search_homs(a, b, false, false, budget)
}

/// An isomorphism `A -> B` by backtracking, after cheap invariant checks.
pub fn find_isomorphism(a: &Arc<FinRing>, b: &Arc<FinRing>, budget: &Budget) -> Result<Option<RingHom>> {
    if invariants(a) != invariants(b) {
        return Ok(None);
    }
    Ok(search_homs(a, b, true, true, budget)?.into_iter().next())
}

fn invariants(a: &FinRing) -> (usize, usize, usize, usize, usize) {
    let units = a.elements().filter(|&x| a.is_unit(x)).count();
    let idem = a.elements().filter(|&x| a.is_idempotent(x)).count();
    let sq_zero = a.elements().filter(|&x| a.mul(x, x) == a.zero()).count();
    (a.order(), a.characteristic(), units, idem, sq_zero)
}

/// Iso-invariant normal form: the lexicographically least pair of tables
/// over all labellings produced by breadth-first closure from a minimal
/// generating tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
}

/// Returns the canonical tables and the relabelling `perm` of `a` that
/// produces them (`perm[x]` is the canonical index of `x`).
pub fn canonical_form(a: &FinRing) -> (CanonicalForm, Vec<usize>) {
    let n = a.order();
    let mut best: Option<(CanonicalForm, Vec<usize>)> = None;
    for k in 0..=a.generators().len() {
        let mut tuple = Vec::with_capacity(k);
        let mut consider = |tuple: &[usize]| {
            if let Some(order) = closure_order(a, tuple) {
                let mut perm = vec![0; n];
                for (i, &x) in order.iter().enumerate() {
                    perm[x] = i;
                }
                let mut add = vec![0; n * n];
                let mut mul = vec![0; n * n];
                for x in 0..n {
                    for y in 0..n {
                        add[perm[x] * n + perm[y]] = perm[a.add(x, y)];
                        mul[perm[x] * n + perm[y]] = perm[a.mul(x, y)];
                    }
                }
                let cf = CanonicalForm { add, mul };
                if best.as_ref().map_or(true, |(b, _)| cf < *b) {
                    best = Some((cf, perm));
                }
            }
        };
        tuples(n, k, &mut tuple, &mut consider);
        if best.is_some() {
            break;
        }
    }
    best.expect("the declared generators give a generating tuple")
}

fn tuples(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for x in 0..n {
        cur.push(x);
        tuples(n, k, cur, f);
        cur.pop();
    }
}

/// Breadth-first labelling from `[0, 1, gens...]`; `None` unless it reaches
/// every element.
fn closure_order(a: &FinRing, gens: &[usize]) -> Option<Vec<usize>> {
    let n = a.order();
    let mut seen = vec![false; n];
    let mut list = Vec::with_capacity(n);
    let push = |x: usize, seen: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !seen[x] {
            seen[x] = true;
            list.push(x);
        }
    };
    push(a.zero(), &mut seen, &mut list);
    push(a.one(), &mut seen, &mut list);
    for &g in gens {
        push(g, &mut seen, &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            push(a.add(x, y), &mut seen, &mut list);
            push(a.mul(x, y), &mut seen, &mut list);
        }
        push(a.neg(x), &mut seen, &mut list);
        i += 1;
    }
    (list.len() == n).then_some(list)
}

/// Exact isomorphism test through canonical forms.
pub fn is_isomorphic(a: &FinRing, b: &FinRing) -> bool {
    a.order() == b.order() && canonical_form(a).0 == canonical_form(b).0
}

/// An explicit isomorphism assembled from the two canonical relabellings.
pub fn canonical_isomorphism(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Option<RingHom> {
    if a.order() != b.order() {
        return None;
    }
    let (ca, pa) = canonical_form(a);
    let (cb, pb) = canonical_form(b);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; b.order()];
    for (x, &p) in pb.iter().enumerate() {
        inv_b[p] = x;
    }
    let map = pa.iter().map(|&p| inv_b[p]).collect();
    Some(RingHom::new_unchecked(a.clone(), b.clone(), map))
}

/// The canonical relabelling of `a` as a ring in its own right.
pub fn canonical_ring(a: &FinRing) -> FinRing {
    let (_, perm) = canonical_form(a);
    a.permuted(&perm)
}
