use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by explicit hom-sets and a composition table.
///
/// Objects and morphisms are addressed by dense indices. `compose(g, f)` is
/// `g ∘ f` and is defined exactly when `tgt(f) == src(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

/// Raw category description as read from a file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryDesc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDesc>,
    pub identities: HashMap<String, String>,
    /// Entries `[g, f, g∘f]`. Composites with an identity may be omitted.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDesc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl FinCat {
    /// Assembles and validates a category. Composites involving an identity
    /// are filled in when absent from `table`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        if identities.len() != n {
            return Err(Error::NotACategory("every object needs exactly one identity".into()));
        }
        for (o, &i) in identities.iter().enumerate() {
            let mo = morphisms
                .get(i)
                .ok_or_else(|| Error::NotACategory(format!("identity of {} out of range", objects[o])))?;
            if mo.src != o || mo.tgt != o {
                return Err(Error::NotACategory(format!("identity {} is not an endomorphism of {}", mo.id, objects[o])));
            }
        }
        for mo in &morphisms {
            if mo.src >= n || mo.tgt >= n {
                return Err(Error::NotACategory(format!("morphism {} has an unknown endpoint", mo.id)));
            }
        }
        let mut tab = vec![None; m * m];
        for (g, f, h) in table {
            if g >= m || f >= m || h >= m {
                return Err(Error::NotACategory("composition entry out of range".into()));
            }
            if morphisms[f].tgt != morphisms[g].src {
                return Err(Error::NotACategory(format!(
                    "composite {} ∘ {} given for non-composable pair",
                    morphisms[g].id, morphisms[f].id
                )));
            }
            if let Some(prev) = tab[g * m + f] {
                if prev != h {
                    return Err(Error::NotACategory(format!(
                        "composite {} ∘ {} given twice with different values",
                        morphisms[g].id, morphisms[f].id
                    )));
                }
            }
            tab[g * m + f] = Some(h);
        }
        for f in 0..m {
            let it = identities[morphisms[f].tgt];
            let is = identities[morphisms[f].src];
            tab[it * m + f].get_or_insert(f);
            tab[f * m + is].get_or_insert(f);
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, mo) in morphisms.iter().enumerate() {
            homs[mo.src * n + mo.tgt].push(i);
        }
        let c = FinCat {
            objects,
            morphisms,
            identities,
            table: tab,
            homs,
        };
        c.validate()?;
        Ok(c)
    }

    /// Parses and validates a file-level description.
    pub fn from_desc(desc: &CategoryDesc) -> Result<Self> {
        let obj_idx: HashMap<&str, usize> = desc.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_idx.len() != desc.objects.len() {
            return Err(Error::NotACategory("duplicate object id".into()));
        }
        let obj = |s: &str| {
            obj_idx
                .get(s)
                .copied()
                .ok_or_else(|| Error::NotACategory(format!("unknown object {s}")))
        };
        let mut morphisms = Vec::new();
        let mut mor_idx = HashMap::new();
        for md in &desc.morphisms {
            if mor_idx.insert(md.id.clone(), morphisms.len()).is_some() {
                return Err(Error::NotACategory(format!("duplicate morphism id {}", md.id)));
            }
            morphisms.push(Morphism {
                id: md.id.clone(),
                src: obj(&md.src)?,
                tgt: obj(&md.tgt)?,
            });
        }
        let mor = |s: &str| {
            mor_idx
                .get(s)
                .copied()
                .ok_or_else(|| Error::NotACategory(format!("unknown morphism {s}")))
        };
        let mut identities = Vec::with_capacity(desc.objects.len());
        for o in &desc.objects {
            let id = desc
                .identities
                .get(o)
                .ok_or_else(|| Error::NotACategory(format!("object {o} has no identity")))?;
            identities.push(mor(id)?);
        }
        let mut table = Vec::new();
        for [g, f, h] in &desc.compose {
            table.push((mor(g)?, mor(f)?, mor(h)?));
        }
        FinCat::new(desc.objects.clone(), morphisms, identities, table)
    }

    pub fn to_desc(&self) -> CategoryDesc {
        let mut compose = Vec::new();
        for g in 0..self.num_morphisms() {
            for f in 0..self.num_morphisms() {
                if let Some(h) = self.try_compose(g, f) {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        compose.push([
                            self.morphisms[g].id.clone(),
                            self.morphisms[f].id.clone(),
                            self.morphisms[h].id.clone(),
                        ]);
                    }
                }
            }
        }
        CategoryDesc {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDesc {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .zip(&self.identities)
                .map(|(o, &i)| (o.clone(), self.morphisms[i].id.clone()))
                .collect(),
            compose,
        }
    }

    /// Exhaustive check of totality, unit laws and associativity.
    pub fn validate(&self) -> Result<()> {
        let m = self.num_morphisms();
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                match (composable, self.table[g * m + f]) {
                    (true, None) => {
                        return Err(Error::NotACategory(format!(
                            "composite {} ∘ {} undefined",
                            self.morphisms[g].id, self.morphisms[f].id
                        )))
                    }
                    (true, Some(h)) => {
                        let (hs, ht) = (self.morphisms[h].src, self.morphisms[h].tgt);
                        if hs != self.morphisms[f].src || ht != self.morphisms[g].tgt {
                            return Err(Error::NotACategory(format!(
                                "composite {} ∘ {} has wrong endpoints",
                                self.morphisms[g].id, self.morphisms[f].id
                            )));
                        }
                    }
                    _ => {}
                }
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].src, self.morphisms[f].tgt);
            if self.compose(self.identities[t], f) != f || self.compose(f, self.identities[s]) != f {
                return Err(Error::NotACategory(format!("identity law fails for {}", self.morphisms[f].id)));
            }
        }
        for h in 0..m {
            for g in self.morphisms_from(self.morphisms[h].tgt) {
                let gh = self.compose(g, h);
                for f in self.morphisms_from(self.morphisms[g].tgt) {
                    if self.compose(f, gh) != self.compose(self.compose(f, g), h) {
                        return Err(Error::NotACategory(format!(
                            "associativity fails on ({}, {}, {})",
                            self.morphisms[f].id, self.morphisms[g].id, self.morphisms[h].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a category from concrete morphism values.
    ///
    /// `homs[a][b]` lists the distinct morphisms `a -> b`; `compose(g, f)`
    /// must return a value already present in the target hom-set.
    pub fn from_concrete<T, C, N>(
        objects: Vec<String>,
        homs: Vec<Vec<Vec<T>>>,
        identity: impl Fn(usize) -> T,
        compose: C,
        name: N,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        C: Fn(&T, &T) -> T,
        N: Fn(usize, usize, &T) -> String,
    {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut values = Vec::new();
        let mut index: HashMap<(usize, usize, T), usize> = HashMap::new();
        for (a, row) in homs.iter().enumerate() {
            for (b, list) in row.iter().enumerate() {
                for v in list {
                    if index.insert((a, b, v.clone()), morphisms.len()).is_some() {
                        return Err(Error::NotACategory(format!("duplicate morphism {}", name(a, b, v))));
                    }
                    morphisms.push(Morphism {
                        id: name(a, b, v),
                        src: a,
                        tgt: b,
                    });
                    values.push(v.clone());
                }
            }
        }
        let mut identities = Vec::with_capacity(n);
        for a in 0..n {
            let id = index
                .get(&(a, a, identity(a)))
                .copied()
                .ok_or_else(|| Error::NotACategory(format!("identity of {} missing", objects[a])))?;
            identities.push(id);
        }
        let m = morphisms.len();
        let mut table = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].tgt != morphisms[g].src {
                    continue;
                }
                let v = compose(&values[g], &values[f]);
                let key = (morphisms[f].src, morphisms[g].tgt, v);
                let h = index.get(&key).copied().ok_or_else(|| {
                    Error::NotACategory(format!(
                        "composite {} ∘ {} is not among the listed morphisms",
                        morphisms[g].id, morphisms[f].id
                    ))
                })?;
                table.push((g, f, h));
            }
        }
        Ok((FinCat::new(objects, morphisms, identities, table)?, values))
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        FinCat::new(
            vec!["*".into()],
            vec![Morphism {
                id: "id_*".into(),
                src: 0,
                tgt: 0,
            }],
            vec![0],
            [],
        )
        .expect("terminal category")
    }

    pub fn empty() -> Self {
        FinCat::new(vec![], vec![], vec![], []).expect("empty category")
    }

    /// A poset viewed as a thin category.
    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let homs = (0..n)
            .map(|a| (0..n).map(|b| if p.leq(a, b) { vec![()] } else { vec![] }).collect())
            .collect();
        let labels = p.labels().to_vec();
        let names = labels.clone();
        FinCat::from_concrete(labels, homs, |_| (), |_, _| (), |a, b, _| {
            if a == b {
                format!("id_{}", names[a])
            } else {
                format!("{}<{}", names[a], names[b])
            }
        })
        .expect("thin category")
        .0
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}` as a category.
    pub fn ordinal(n: usize) -> Self {
        let p = Poset::from_fn((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("chain");
        FinCat::from_poset(&p)
    }

    /// A finite monoid as a one-object category; `table[a][b] = a·b`, unit `0`.
    pub fn from_monoid(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let k = elements.len();
        if k == 0 || table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::NotACategory("monoid table has wrong shape".into()));
        }
        let morphisms = elements
            .iter()
            .map(|e| Morphism {
                id: e.clone(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mut tab = Vec::new();
        for g in 0..k {
            for f in 0..k {
                tab.push((g, f, table[g][f]));
            }
        }
        FinCat::new(vec![name.to_string()], morphisms, vec![0], tab)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.morphisms[m].id
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == name)
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    pub fn id(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.src(m)] == m
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.num_objects() + b]
    }

    pub fn morphisms_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_morphisms()).filter(move |&m| self.morphisms[m].src == a)
    }

    pub fn morphisms_into(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_morphisms()).filter(move |&m| self.morphisms[m].tgt == b)
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.num_morphisms() + f]
    }

    /// `g ∘ f`. Panics when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("{} ∘ {} is not composable", self.morphisms[g].id, self.morphisms[f].id)
        })
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (s, t) = (self.src(m), self.tgt(m));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.compose(g, m) == self.id(s) && self.compose(m, g) == self.id(t))
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    pub fn are_isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom(a, b).iter().any(|&m| self.is_iso(m))
    }

    pub fn opposite(&self) -> FinCat {
        let m = self.num_morphisms();
        let mut table = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.try_compose(g, f) {
                    // (g ∘ f)^op = f^op ∘ g^op
                    table.push((f, g, h));
                }
            }
        }
        let morphisms = self
            .morphisms
            .iter()
            .map(|mo| Morphism {
                id: mo.id.clone(),
                src: mo.tgt,
                tgt: mo.src,
            })
            .collect();
        FinCat::new(self.objects.clone(), morphisms, self.identities.clone(), table).expect("opposite category")
    }

    pub fn is_terminal(&self, o: usize) -> bool {
        (0..self.num_objects()).all(|a| self.hom(a, o).len() == 1)
    }

    pub fn is_initial(&self, o: usize) -> bool {
        (0..self.num_objects()).all(|a| self.hom(o, a).len() == 1)
    }

    /// Connected components of the underlying undirected graph, labelled by
    /// the least object index in each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_objects();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for mo in &self.morphisms {
            let (a, b) = (find(&mut parent, mo.src), find(&mut parent, mo.tgt));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        (0..n).map(|o| find(&mut parent, o)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let c = self.components();
        !c.is_empty() && c.iter().all(|&x| x == c[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_and_interval_are_valid() {
        let t = FinCat::terminal();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        let i = FinCat::ordinal(1);
        assert_eq!((i.num_objects(), i.num_morphisms()), (2, 3));
    }

    #[test]
    fn non_associative_table_rejected() {
        // monoid {1, a, b} with a·a = b, a·b = 1, b·a = a violates associativity
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 2]];
        let err = FinCat::from_monoid("M", vec!["1".into(), "a".into(), "b".into()], table).unwrap_err();
        match err {
            Error::NotACategory(msg) => assert!(msg.contains("associativity"), "{msg}"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn bad_identity_rejected() {
        // declares the unit-row wrongly: 1·a = 1
        let table = vec![vec![0, 0], vec![1, 1]];
        let err = FinCat::from_monoid("M", vec!["1".into(), "a".into()], table).unwrap_err();
        assert!(matches!(err, Error::NotACategory(_)));
    }

    #[test]
    fn desc_round_trip() {
        let c = FinCat::ordinal(2);
        let d = c.to_desc();
        let json = serde_json::to_string(&d).unwrap();
        let back: CategoryDesc = serde_json::from_str(&json).unwrap();
        assert_eq!(FinCat::from_desc(&back).unwrap(), c);
    }

    #[test]
    fn missing_composite_reported() {
        let desc: CategoryDesc = serde_json::from_str(
            r#"{"objects":["a","b","c"],
                "morphisms":[{"id":"ia","src":"a","tgt":"a"},{"id":"ib","src":"b","tgt":"b"},
                             {"id":"ic","src":"c","tgt":"c"},{"id":"f","src":"a","tgt":"b"},
                             {"id":"g","src":"b","tgt":"c"}],
                "identities":{"a":"ia","b":"ib","c":"ic"}}"#,
        )
        .unwrap();
        let err = FinCat::from_desc(&desc).unwrap_err();
        assert!(matches!(err, Error::NotACategory(ref m) if m.contains("undefined")));
    }

    #[test]
    fn opposite_swaps_endpoints() {
        let c = FinCat::ordinal(1);
        let op = c.opposite();
        let f = c.hom(0, 1)[0];
        assert_eq!((op.src(f), op.tgt(f)), (1, 0));
        assert!(op.opposite() == c);
    }
}
