use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::operator::SimplicialOperator;
use super::simplicial::FinSSet;

/// A simplicial map stored as one table per dimension.
#[derive(Clone)]
pub struct SSetMap {
    source: Arc<FinSSet>,
    target: Arc<FinSSet>,
    tables: Vec<Vec<usize>>,
}

impl fmt::Debug for SSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source.name(), self.target.name())
    }
}

impl SSetMap {
    pub fn new(source: Arc<FinSSet>, target: Arc<FinSSet>, tables: Vec<Vec<usize>>) -> Result<SSetMap> {
        let f = SSetMap { source, target, tables };
        f.validate()?;
        Ok(f)
    }

    /// Extends images of the nondegenerate simplices (`images[m][k]` for the
    /// `k`-th nondegenerate `m`-simplex) along degeneracies.
    pub fn from_nd_images(source: Arc<FinSSet>, target: Arc<FinSSet>, images: &[Vec<usize>]) -> Result<SSetMap> {
        let tables = extend(&source, &target, images)?;
        SSetMap::new(source, target, tables)
    }

    pub fn identity(x: Arc<FinSSet>) -> SSetMap {
        let tables = x.counts().iter().map(|&n| (0..n).collect()).collect();
        SSetMap {
            source: x.clone(),
            target: x,
            tables,
        }
    }

    /// The map `Δ[m] → X` classifying `x ∈ X_m`; `Δ[m]` is truncated like `X`.
    pub fn simplex(x: Arc<FinSSet>, m: usize, s: usize) -> Result<SSetMap> {
        let delta = Arc::new(FinSSet::delta(m, x.dim())?);
        // the nondegenerate simplices of Δ[m] are its injections, in build order
        let images: Vec<Vec<usize>> = (0..=x.dim())
            .map(|k| SimplicialOperator::injections(k, m).iter().map(|o| x.act(m, s, o)).collect())
            .collect();
        SSetMap::from_nd_images(delta, x, &images)
    }

    fn validate(&self) -> Result<()> {
        let (x, y) = (&*self.source, &*self.target);
        if x.dim() != y.dim() {
            return Err(Error::NotSimplicial(format!(
                "{} is truncated at {} but {} at {}",
                x.name(),
                x.dim(),
                y.name(),
                y.dim()
            )));
        }
        if self.tables.len() != x.dim() + 1
            || self
                .tables
                .iter()
                .enumerate()
                .any(|(m, t)| t.len() != x.count(m) || t.iter().any(|&v| v >= y.count(m)))
        {
            return Err(Error::NotSimplicial("table shape does not match the simplicial sets".into()));
        }
        for m in 0..=x.dim() {
            for s in 0..x.count(m) {
                let fs = self.tables[m][s];
                if m >= 1 {
                    for i in 0..=m {
                        if self.tables[m - 1][x.d(m, i, s)] != y.d(m, i, fs) {
                            return Err(Error::NotSimplicial(format!("does not commute with d{i} at {}", x.label(m, s))));
                        }
                    }
                }
                if m < x.dim() {
                    for j in 0..=m {
                        if self.tables[m + 1][x.s(m, j, s)] != y.s(m, j, fs) {
                            return Err(Error::NotSimplicial(format!("does not commute with s{j} at {}", x.label(m, s))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSSet> {
        &self.target
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn apply(&self, m: usize, s: usize) -> usize {
        self.tables[m][s]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SSetMap) -> Result<SSetMap> {
        if *self.target != *other.source {
            return Err(Error::NotSimplicial("maps are not composable".into()));
        }
        let tables = self
            .tables
            .iter()
            .enumerate()
            .map(|(m, t)| t.iter().map(|&s| other.tables[m][s]).collect())
            .collect();
        Ok(SSetMap {
            source: self.source.clone(),
            target: other.target.clone(),
            tables,
        })
    }

    pub fn same_tables(&self, other: &SSetMap) -> bool {
        self.tables == other.tables
    }

    pub fn is_surjective(&self) -> bool {
        self.tables.iter().enumerate().all(|(m, t)| {
            let mut hit = vec![false; self.target.count(m)];
            t.iter().for_each(|&v| hit[v] = true);
            hit.into_iter().all(|h| h)
        })
    }

    pub fn is_injective(&self) -> bool {
        self.tables.iter().all(|t| {
            let mut seen = t.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Nondegenerate simplices go to nondegenerate simplices.
    pub fn is_nondegenerate_map(&self) -> bool {
        (0..=self.source.dim()).all(|m| {
            self.source
                .nondegenerate(m)
                .iter()
                .all(|&s| self.target.is_nondegenerate(m, self.tables[m][s]))
        })
    }

    /// Images of the nondegenerate simplices, as accepted by [`SSetMap::from_nd_images`].
    pub fn nd_images(&self) -> Vec<Vec<usize>> {
        (0..=self.source.dim())
            .map(|m| self.source.nondegenerate(m).iter().map(|&s| self.tables[m][s]).collect())
            .collect()
    }
}

fn extend(x: &FinSSet, y: &FinSSet, images: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    if x.dim() != y.dim() {
        return Err(Error::NotSimplicial("source and target truncations differ".into()));
    }
    if images.len() != x.dim() + 1 || (0..=x.dim()).any(|m| images[m].len() != x.nondegenerate(m).len()) {
        return Err(Error::NotSimplicial("one image per nondegenerate simplex is required".into()));
    }
    if (0..=x.dim()).any(|m| images[m].iter().any(|&v| v >= y.count(m))) {
        return Err(Error::NotSimplicial("image out of range".into()));
    }
    Ok((0..=x.dim())
        .map(|m| {
            (0..x.count(m))
                .map(|s| {
                    let ez = x.eilenberg_zilber(m, s);
                    let k = x.nondegenerate(ez.dim).binary_search(&ez.nondeg).expect("nondegenerate");
                    y.act(ez.dim, images[ez.dim][k], &ez.surjection)
                })
                .collect()
        })
        .collect())
}

/// Candidate images for the nondegenerate simplices, tried in increasing
/// dimension; `accept(m, s, t)` can veto `s ↦ t`, and `injective` forbids
/// reusing a target among nondegenerate images.
fn search(
    x: &Arc<FinSSet>,
    y: &Arc<FinSSet>,
    budget: &Budget,
    limit: usize,
    accept: impl Fn(usize, usize, usize) -> bool,
    injective: bool,
    mut shuffle: Option<&mut ChaCha8Rng>,
) -> Result<Vec<SSetMap>> {
    if x.dim() != y.dim() {
        return Err(Error::NotSimplicial("source and target truncations differ".into()));
    }
    let order: Vec<(usize, usize, usize)> = (0..=x.dim())
        .flat_map(|m| x.nondegenerate(m).iter().enumerate().map(move |(k, &s)| (m, k, s)).collect::<Vec<_>>())
        .collect();
    let mut images: Vec<Vec<usize>> = (0..=x.dim()).map(|m| vec![usize::MAX; x.nondegenerate(m).len()]).collect();
    let mut out = Vec::new();
    let mut used: Option<Vec<Vec<bool>>> = injective.then(|| (0..=y.dim()).map(|m| vec![false; y.count(m)]).collect());
    // image of an arbitrary simplex of dimension < current, through its EZ form
    fn image_of(x: &FinSSet, y: &FinSSet, images: &[Vec<usize>], m: usize, s: usize) -> usize {
        let ez = x.eilenberg_zilber(m, s);
        let k = x.nondegenerate(ez.dim).binary_search(&ez.nondeg).expect("nondegenerate");
        y.act(ez.dim, images[ez.dim][k], &ez.surjection)
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: &Arc<FinSSet>,
        y: &Arc<FinSSet>,
        order: &[(usize, usize, usize)],
        pos: usize,
        images: &mut Vec<Vec<usize>>,
        out: &mut Vec<SSetMap>,
        limit: usize,
        budget: &Budget,
        accept: &impl Fn(usize, usize, usize) -> bool,
        used: &mut Option<Vec<Vec<bool>>>,
        shuffle: &mut Option<&mut ChaCha8Rng>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let Some(&(m, k, s)) = order.get(pos) else {
            out.push(SSetMap::from_nd_images(x.clone(), y.clone(), images)?);
            return Ok(());
        };
        let faces: Vec<usize> = if m == 0 {
            Vec::new()
        } else {
            (0..=m).map(|i| image_of(x, y, images, m - 1, x.d(m, i, s))).collect()
        };
        let mut cands: Vec<usize> = (0..y.count(m))
            .filter(|&t| faces.iter().enumerate().all(|(i, &f)| y.d(m, i, t) == f))
            .collect();
        if let Some(rng) = shuffle.as_deref_mut() {
            cands.shuffle(rng);
        }
        for t in cands {
            budget.charge(1)?;
            if !accept(m, s, t) || used.as_ref().is_some_and(|u| u[m][t]) {
                continue;
            }
            images[m][k] = t;
            if let Some(u) = used.as_mut() {
                u[m][t] = true;
            }
            go(x, y, order, pos + 1, images, out, limit, budget, accept, used, shuffle)?;
            if let Some(u) = used.as_mut() {
                u[m][t] = false;
            }
            if out.len() >= limit {
                break;
            }
        }
        images[m][k] = usize::MAX;
        Ok(())
    }
    go(x, y, &order, 0, &mut images, &mut out, limit, budget, &accept, &mut used, &mut shuffle)?;
    Ok(out)
}

/// Up to `limit` simplicial maps `X → Y` in search order.
pub fn maps_between(x: &Arc<FinSSet>, y: &Arc<FinSSet>, limit: usize, budget: &Budget) -> Result<Vec<SSetMap>> {
    search(x, y, budget, limit, |_, _, _| true, false, None)
}

/// A uniformly shuffled search; returns the first map found, if any.
pub fn random_map(x: &Arc<FinSSet>, y: &Arc<FinSSet>, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<Option<SSetMap>> {
    Ok(search(x, y, budget, 1, |_, _, _| true, false, Some(rng))?.into_iter().next())
}

pub fn find_isomorphism(x: &Arc<FinSSet>, y: &Arc<FinSSet>, budget: &Budget) -> Result<Option<SSetMap>> {
    if x.counts() != y.counts() || (0..=x.dim()).any(|m| x.nondegenerate(m).len() != y.nondegenerate(m).len()) {
        return Ok(None);
    }
    let found = search(x, y, budget, usize::MAX, |m, _, t| y.is_nondegenerate(m, t), true, None)?;
    Ok(found.into_iter().find(|f| f.is_iso()))
}

/// A map `g` with `f ∘ g = id`, if any.
pub fn find_section(f: &SSetMap, budget: &Budget) -> Result<Option<SSetMap>> {
    let target = f.target.clone();
    let source = f.source.clone();
    let found = search(&target, &source, budget, 1, |m, s, t| f.tables[m][t] == s, false, None)?;
    Ok(found.into_iter().next())
}

/// Result of the (Deg, NDeg) factorization `f = right ∘ left`.
#[derive(Debug, Clone)]
pub struct SSetFactorization {
    pub left: SSetMap,
    pub middle: Arc<FinSSet>,
    pub right: SSetMap,
}

impl SSetFactorization {
    pub fn composite(&self) -> SSetMap {
        self.left.then(&self.right).expect("legs compose")
    }
}

struct Congruence {
    parent: Vec<Vec<usize>>,
}

impl Congruence {
    fn find(&mut self, m: usize, a: usize) -> usize {
        let mut r = a;
        while self.parent[m][r] != r {
            r = self.parent[m][r];
        }
        let mut c = a;
        while self.parent[m][c] != r {
            let next = self.parent[m][c];
            self.parent[m][c] = r;
            c = next;
        }
        r
    }

    /// Identifies `a ~ b` in `Y_m` and closes under faces and degeneracies.
    fn glue(&mut self, y: &FinSSet, m: usize, a: usize, b: usize) {
        let mut work = vec![(m, a, b)];
        while let Some((m, a, b)) = work.pop() {
            let (ra, rb) = (self.find(m, a), self.find(m, b));
            if ra == rb {
                continue;
            }
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[m][hi] = lo;
            if m >= 1 {
                work.extend((0..=m).map(|i| (m - 1, y.d(m, i, a), y.d(m, i, b))));
            }
            if m < y.dim() {
                work.extend((0..=m).map(|j| (m + 1, y.s(m, j, a), y.s(m, j, b))));
            }
        }
    }
}

/// The quotient `Y/~` with the class map and the induced map to `X`.
fn quotient_by(f: &SSetMap, cong: &mut Congruence) -> Result<SSetFactorization> {
    let y = &*f.source;
    let d = y.dim();
    let mut class: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut idx = vec![usize::MAX; y.count(m)];
        let mut rs = Vec::new();
        for s in 0..y.count(m) {
            let r = cong.find(m, s);
            if idx[r] == usize::MAX {
                idx[r] = rs.len();
                rs.push(s);
            }
            idx[s] = idx[r];
        }
        class.push(idx);
        reps.push(rs);
    }
    let counts: Vec<usize> = reps.iter().map(|r| r.len()).collect();
    let face: Vec<Vec<Vec<usize>>> = (0..=d)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m).map(|i| reps[m].iter().map(|&s| class[m - 1][y.d(m, i, s)]).collect()).collect()
        })
        .collect();
    let degen: Vec<Vec<Vec<usize>>> = (0..=d)
        .map(|m| {
            if m == d {
                return Vec::new();
            }
            (0..=m).map(|j| reps[m].iter().map(|&s| class[m + 1][y.s(m, j, s)]).collect()).collect()
        })
        .collect();
    let name = |m: usize, c: usize| {
        (0..y.count(m))
            .find(|&s| class[m][s] == c && y.is_nondegenerate(m, s))
            .map(|s| y.label(m, s))
            .unwrap_or_else(|| format!("[{m}:{c}]"))
    };
    let z = Arc::new(FinSSet::from_tables(format!("im {}", y.name()), counts, face, degen, name)?);
    let left = SSetMap::new(f.source.clone(), z.clone(), class)?;
    let right_tables = reps.iter().enumerate().map(|(m, rs)| rs.iter().map(|&s| f.tables[m][s]).collect()).collect();
    let right = SSetMap::new(z.clone(), f.target.clone(), right_tables)?;
    Ok(SSetFactorization { left, middle: z, right })
}

/// Glues `y ~ (y·ι)·σ` whenever a nondegenerate class `y` has degenerate image
/// `x'·σ` (`ι` the least section of `σ`) until the induced map is
/// nondegenerate. With a seed, the next class to glue is drawn at random.
pub fn deg_ndeg_factorize_ordered(f: &SSetMap, seed: Option<u64>) -> Result<SSetFactorization> {
    let y = &*f.source;
    let x = &*f.target;
    let mut cong = Congruence {
        parent: y.counts().iter().map(|&n| (0..n).collect()).collect(),
    };
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    loop {
        let fac = quotient_by(f, &mut cong)?;
        let z = &*fac.middle;
        let mut bad: Vec<(usize, usize)> = Vec::new();
        for m in 0..=z.dim() {
            for &c in z.nondegenerate(m) {
                if !x.is_nondegenerate(m, fac.right.apply(m, c)) {
                    bad.push((m, c));
                }
            }
        }
        if bad.is_empty() {
            return Ok(fac);
        }
        let pick = match rng.as_mut() {
            Some(r) => r.gen_range(0..bad.len()),
            None => 0,
        };
        let (m, c) = bad[pick];
        // a Y-simplex in class c
        let s = (0..y.count(m)).find(|&s| fac.left.apply(m, s) == c).expect("class map is surjective");
        let ez = x.eilenberg_zilber(m, f.apply(m, s));
        let iota = ez.surjection.least_section();
        let w = y.act(m, s, &iota);
        let glued = y.act(ez.dim, w, &ez.surjection);
        cong.glue(y, m, s, glued);
    }
}

pub fn deg_ndeg_factorize(f: &SSetMap) -> Result<SSetFactorization> {
    if f.is_nondegenerate_map() {
        return Ok(SSetFactorization {
            left: SSetMap::identity(f.source.clone()),
            middle: f.source.clone(),
            right: f.clone(),
        });
    }
    deg_ndeg_factorize_ordered(f, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(x: Result<FinSSet>) -> Arc<FinSSet> {
        Arc::new(x.unwrap())
    }

    #[test]
    fn simplex_maps_are_nondegenerate_iff_simplex_is() {
        let x = arc(FinSSet::sphere(2, 3));
        for m in 0..3 {
            for s in 0..x.count(m) {
                let f = SSetMap::simplex(x.clone(), m, s).unwrap();
                assert_eq!(f.apply(m, f.source().nondegenerate(m)[0]), s);
                if x.is_regular() || m == 0 {
                    assert_eq!(f.is_nondegenerate_map(), x.is_nondegenerate(m, s));
                }
            }
        }
        let d2 = arc(FinSSet::delta(2, 3));
        for m in 0..3 {
            for s in 0..d2.count(m) {
                let f = SSetMap::simplex(d2.clone(), m, s).unwrap();
                assert_eq!(f.is_nondegenerate_map(), d2.is_nondegenerate(m, s));
            }
        }
    }

    #[test]
    fn maps_from_delta_are_simplices() {
        // Yoneda: maps Δ[1] → Δ[2] are the 6 edges
        let d1 = arc(FinSSet::delta(1, 3));
        let d2 = arc(FinSSet::delta(2, 3));
        assert_eq!(maps_between(&d1, &d2, usize::MAX, &Budget::default()).unwrap().len(), 6);
        let s1 = arc(FinSSet::circle(3));
        assert_eq!(maps_between(&d1, &s1, usize::MAX, &Budget::default()).unwrap().len(), s1.count(1));
    }

    #[test]
    fn bad_tables_rejected() {
        let d1 = arc(FinSSet::delta(1, 2));
        let d0 = arc(FinSSet::delta(0, 2));
        // swap the two endpoints but keep the edge: not simplicial
        let mut t = SSetMap::identity(d1.clone()).tables().to_vec();
        t[0] = vec![1, 0];
        assert!(matches!(SSetMap::new(d1.clone(), d1.clone(), t), Err(Error::NotSimplicial(_))));
        let col = SSetMap::from_nd_images(d1, d0, &[vec![0, 0], vec![0], vec![]]).unwrap();
        assert!(!col.is_nondegenerate_map());
    }

    #[test]
    fn collapse_edge() {
        let d1 = arc(FinSSet::delta(1, 3));
        let d0 = arc(FinSSet::delta(0, 3));
        let f = SSetMap::from_nd_images(d1, d0.clone(), &[vec![0, 0], vec![0], vec![], vec![]]).unwrap();
        let fac = deg_ndeg_factorize(&f).unwrap();
        assert!(find_isomorphism(&fac.middle, &d0, &Budget::default()).unwrap().is_some());
        assert!(fac.right.is_iso());
        assert!(fac.composite().same_tables(&f));
    }

    #[test]
    fn degeneracy_triangle_to_edge() {
        let d2 = arc(FinSSet::delta(2, 3));
        let d1 = arc(FinSSet::delta(1, 3));
        // vertices 0,1,2 ↦ 0,0,1
        let f = maps_between(&d2, &d1, usize::MAX, &Budget::default())
            .unwrap()
            .into_iter()
            .find(|g| g.tables()[0] == vec![0, 0, 1])
            .unwrap();
        let fac = deg_ndeg_factorize(&f).unwrap();
        assert!(find_isomorphism(&fac.middle, &d1, &Budget::default()).unwrap().is_some());
        assert!(fac.right.is_nondegenerate_map());
        assert!(fac.composite().same_tables(&f));
    }

    #[test]
    fn nondegenerate_maps_factor_trivially() {
        let b = arc(FinSSet::boundary(2, 3));
        let d2 = arc(FinSSet::delta(2, 3));
        let inc = maps_between(&b, &d2, usize::MAX, &Budget::default())
            .unwrap()
            .into_iter()
            .find(|g| g.is_injective())
            .unwrap();
        let fac = deg_ndeg_factorize(&inc).unwrap();
        assert!(fac.left.same_tables(&SSetMap::identity(b)));
    }

    #[test]
    fn circle_to_point_collapses_everything() {
        let s1 = arc(FinSSet::circle(3));
        let d0 = arc(FinSSet::delta(0, 3));
        let f = maps_between(&s1, &d0, 1, &Budget::default()).unwrap().remove(0);
        for seed in [None, Some(1), Some(2)] {
            let fac = deg_ndeg_factorize_ordered(&f, seed).unwrap();
            assert!(find_isomorphism(&fac.middle, &d0, &Budget::default()).unwrap().is_some());
        }
    }

    #[test]
    fn sections() {
        let d1 = arc(FinSSet::delta(1, 3));
        let d0 = arc(FinSSet::delta(0, 3));
        let f = maps_between(&d1, &d0, 1, &Budget::default()).unwrap().remove(0);
        assert!(find_section(&f, &Budget::default()).unwrap().is_some());
        let g = maps_between(&d0, &d1, 1, &Budget::default()).unwrap().remove(0);
        assert!(find_section(&g, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn isomorphism_search() {
        let b = Budget::default();
        let h0 = arc(FinSSet::horn(2, 0, 3));
        let h2 = arc(FinSSet::horn(2, 2, 3));
        let h1 = arc(FinSSet::horn(2, 1, 3));
        // Λ[2,0] and Λ[2,2] are both a pair of edges with a common source or target
        assert!(find_isomorphism(&h0, &h2, &b).unwrap().is_none());
        assert!(find_isomorphism(&h1, &h1, &b).unwrap().is_some());
        let s = arc(FinSSet::sphere(2, 3));
        assert!(find_isomorphism(&s, &h1, &b).unwrap().is_none());
    }
}
