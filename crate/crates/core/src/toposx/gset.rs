use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A finite group by its Cayley table, `table[g][h] = g·h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FinGroup> {
        let n = labels.len();
        let bad = |why: String| Err(Error::InvalidSpec(format!("not a group: {why}")));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("table shape".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity".into());
        };
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{a} has no inverse")),
            }
        }
        Ok(FinGroup {
            name: name.into(),
            labels,
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Result<FinGroup> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(format!("Z/{n}"), (0..n).map(|i| i.to_string()).collect(), table)
    }

    /// The symmetric group on `0..n`, elements as permutations in
    /// lexicographic order; `g·h` applies `h` first.
    pub fn symmetric(n: usize) -> Result<FinGroup> {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut k = 0;
        while k < perms.len() {
            let p = perms[k].clone();
            k += 1;
            for i in 0..n.saturating_sub(1) {
                let mut q = p.clone();
                q.swap(i, i + 1);
                if !perms.contains(&q) {
                    perms.push(q);
                }
            }
        }
        perms.sort();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index(&h.iter().map(|&x| g[x]).collect())).collect())
            .collect();
        let labels = perms.iter().map(|p| p.iter().map(|v| v.to_string()).collect::<String>()).collect();
        FinGroup::new(format!("S{n}"), labels, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A finite set with a right action, `action[x][g] = x·g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGSet {
    group: Arc<FinGroup>,
    carrier: Vec<String>,
    action: Vec<Vec<usize>>,
}

impl FinGSet {
    pub fn new(group: Arc<FinGroup>, carrier: Vec<String>, action: Vec<Vec<usize>>) -> Result<FinGSet> {
        let n = carrier.len();
        let k = group.order();
        let bad = |why: String| Err(Error::NotAGSet(why));
        if action.len() != n || action.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= n)) {
            return bad("action table shape".into());
        }
        for x in 0..n {
            if action[x][group.identity()] != x {
                return bad(format!("{}·e ≠ {}", carrier[x], carrier[x]));
            }
            for g in 0..k {
                for h in 0..k {
                    if action[action[x][g]][h] != action[x][group.mul(g, h)] {
                        return bad(format!("({}·{})·{} ≠ {}·({}{})", carrier[x], g, h, carrier[x], g, h));
                    }
                }
            }
        }
        Ok(FinGSet { group, carrier, action })
    }

    pub fn from_fn(group: Arc<FinGroup>, carrier: Vec<String>, act: impl Fn(usize, usize) -> usize) -> Result<FinGSet> {
        let action = (0..carrier.len()).map(|x| (0..group.order()).map(|g| act(x, g)).collect()).collect();
        FinGSet::new(group, carrier, action)
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: Arc<FinGroup>) -> FinGSet {
        let carrier = group.labels().to_vec();
        let g2 = group.clone();
        FinGSet::from_fn(group, carrier, |x, g| g2.mul(x, g)).expect("regular action")
    }

    pub fn trivial(group: Arc<FinGroup>, n: usize) -> FinGSet {
        FinGSet::from_fn(group, (0..n).map(|i| i.to_string()).collect(), |x, _| x).expect("trivial action")
    }

    /// Functions `Z/n → {0..k-1}` (words of length `n`) with `Z/n` rotating
    /// positions: `(w·g)(i) = w(i + g)`.
    pub fn necklaces(n: usize, k: usize) -> Result<FinGSet> {
        let group = Arc::new(FinGroup::cyclic(n)?);
        let size = k.checked_pow(n as u32).ok_or_else(|| Error::InvalidSpec("too many words".into()))?;
        let digits = |w: usize| -> Vec<usize> { (0..n).map(|i| (w / k.pow(i as u32)) % k).collect() };
        let encode = |d: &[usize]| -> usize { d.iter().enumerate().map(|(i, &v)| v * k.pow(i as u32)).sum() };
        let carrier = (0..size).map(|w| digits(w).iter().map(|v| v.to_string()).collect::<String>()).collect();
        FinGSet::from_fn(group, carrier, |w, g| {
            let d = digits(w);
            let r: Vec<usize> = (0..n).map(|i| d[(i + g) % n]).collect();
            encode(&r)
        })
    }

    pub fn disjoint_union(a: &FinGSet, b: &FinGSet) -> Result<FinGSet> {
        if a.group != b.group {
            return Err(Error::NotAGSet("disjoint union over different groups".into()));
        }
        let off = a.len();
        let carrier = a
            .carrier
            .iter()
            .map(|c| format!("a.{c}"))
            .chain(b.carrier.iter().map(|c| format!("b.{c}")))
            .collect();
        let action = a
            .action
            .iter()
            .cloned()
            .chain(b.action.iter().map(|r| r.iter().map(|&v| v + off).collect()))
            .collect();
        FinGSet::new(a.group.clone(), carrier, action)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// The sub-G-set on `elems` (closed under the action), in the given order.
    pub fn restrict(&self, elems: &[usize]) -> Result<FinGSet> {
        let pos = |x: usize| elems.iter().position(|&e| e == x);
        let mut action = Vec::with_capacity(elems.len());
        for &x in elems {
            let row = (0..self.group.order())
                .map(|g| pos(self.act(x, g)).ok_or_else(|| Error::NotAGSet(format!("{} leaves the subset", self.carrier[x]))))
                .collect::<Result<Vec<_>>>()?;
            action.push(row);
        }
        FinGSet::new(self.group.clone(), elems.iter().map(|&x| self.carrier[x].clone()).collect(), action)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.action[x].clone();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn is_transitive(&self) -> bool {
        !self.is_empty() && self.orbit(0).len() == self.len()
    }

    /// Points fixed by `g`.
    pub fn fixed_points(&self, g: usize) -> usize {
        (0..self.len()).filter(|&x| self.act(x, g) == x).count()
    }
}

/// An equivariant map, `map[x] = f(x)`.
#[derive(Debug, Clone)]
pub struct GSetMap {
    pub source: Arc<FinGSet>,
    pub target: Arc<FinGSet>,
    pub map: Vec<usize>,
}

impl GSetMap {
    pub fn new(source: Arc<FinGSet>, target: Arc<FinGSet>, map: Vec<usize>) -> Result<GSetMap> {
        if source.group != target.group {
            return Err(Error::NotEquivariant("source and target have different groups".into()));
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::NotEquivariant("map table shape".into()));
        }
        for x in 0..source.len() {
            for g in 0..source.group.order() {
                if map[source.act(x, g)] != target.act(map[x], g) {
                    return Err(Error::NotEquivariant(format!(
                        "f({}·{}) ≠ f({})·{}",
                        source.carrier[x], source.group.labels[g], source.carrier[x], source.group.labels[g]
                    )));
                }
            }
        }
        Ok(GSetMap { source, target, map })
    }

    pub fn identity(x: Arc<FinGSet>) -> GSetMap {
        let map = (0..x.len()).collect();
        GSetMap {
            source: x.clone(),
            target: x,
            map,
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().for_each(|&y| hit[y] = true);
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn then(&self, other: &GSetMap) -> Vec<usize> {
        self.map.iter().map(|&y| other.map[y]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GSetFactorization {
    pub surjection: GSetMap,
    pub image: Arc<FinGSet>,
    pub injection: GSetMap,
}

/// Middle is the set-image with the restricted action, elements in target order.
pub fn epi_mono_gset(f: &GSetMap) -> Result<GSetFactorization> {
    let mut image: Vec<usize> = f.map.clone();
    image.sort_unstable();
    image.dedup();
    let middle = Arc::new(f.target.restrict(&image)?);
    let surj = f.map.iter().map(|y| image.binary_search(y).expect("in image")).collect();
    Ok(GSetFactorization {
        surjection: GSetMap::new(f.source.clone(), middle.clone(), surj)?,
        injection: GSetMap::new(middle.clone(), f.target.clone(), image)?,
        image: middle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
    pub transitive: bool,
    /// No proper nonempty sub-G-set.
    pub atom: bool,
}

/// Orbit partition ordered by least element; each orbit is checked to be a
/// transitive sub-G-set and an atom. The orbits form the finest point cover.
pub fn atoms_and_orbits(x: &FinGSet) -> Vec<Orbit> {
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for a in 0..x.len() {
        if seen[a] {
            continue;
        }
        let elems = x.orbit(a);
        elems.iter().for_each(|&e| seen[e] = true);
        let sub = x.restrict(&elems).expect("orbits are closed");
        // an atom: the sub-G-set generated by any element is everything
        let atom = (0..sub.len()).all(|e| sub.orbit(e).len() == sub.len());
        out.push(Orbit {
            labels: elems.iter().map(|&e| x.carrier[e].clone()).collect(),
            transitive: sub.is_transitive(),
            atom,
            elements: elems,
        });
    }
    out
}

/// Orbits ordered as points (all incomparable).
pub fn orbit_poset(x: &FinGSet) -> Poset {
    let labels = atoms_and_orbits(x).into_iter().map(|o| format!("{{{}}}", o.labels.join(","))).collect();
    Poset::discrete(labels)
}

/// Burnside count `|X/G| = (1/|G|) Σ_g |Fix(g)|`.
pub fn burnside_count(x: &FinGSet) -> usize {
    let total: usize = (0..x.group.order()).map(|g| x.fixed_points(g)).sum();
    total / x.group.order()
}

/// Closed form for the number of necklaces of length `n` over `k` colours
/// up to rotation: `(1/n) Σ_{d | n} φ(d) k^{n/d}`.
pub fn necklace_count(n: usize, k: usize) -> usize {
    let phi = |d: usize| (1..=d).filter(|&i| gcd(i, d) == 1).count();
    let total: usize = (1..=n).filter(|d| n % d == 0).map(|d| phi(d) * k.pow((n / d) as u32)).sum();
    total / n
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// File format: `{"group":{"table":…, "labels"?:…}, "carrier":[…], "action":[[…]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetDesc {
    pub group: GroupDesc,
    pub carrier: Vec<String>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDesc {
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl GSetDesc {
    pub fn build(&self) -> Result<FinGSet> {
        let n = self.group.table.len();
        let labels = self.group.labels.clone().unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let group = Arc::new(FinGroup::new("G", labels, self.group.table.clone())?);
        FinGSet::new(group, self.carrier.clone(), self.action.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetMapDesc {
    pub source: GSetDesc,
    pub target: GSetDesc,
    pub map: Vec<usize>,
}

impl GSetMapDesc {
    pub fn build(&self) -> Result<GSetMap> {
        let s = Arc::new(self.source.build()?);
        let mut t = self.target.build()?;
        // both files spell out the group; share it when the tables agree
        if t.group.table == s.group.table {
            t.group = s.group.clone();
        }
        GSetMap::new(s, Arc::new(t), self.map.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FinGroup> {
        Arc::new(FinGroup::cyclic(n).unwrap())
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(atoms_and_orbits(&FinGSet::regular(z(2))).len(), 1);
        assert_eq!(atoms_and_orbits(&FinGSet::trivial(z(2), 2)).len(), 2);
        let x = FinGSet::disjoint_union(&FinGSet::regular(z(3)), &FinGSet::trivial(z(3), 1)).unwrap();
        let sizes: Vec<usize> = atoms_and_orbits(&x).iter().map(|o| o.elements.len()).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert!(atoms_and_orbits(&x).iter().all(|o| o.transitive && o.atom));
    }

    #[test]
    fn bad_action_rejected() {
        // a left action of S3 on 0..3 is not a right action
        let s3 = Arc::new(FinGroup::symmetric(3).unwrap());
        let perms: Vec<Vec<usize>> = s3.labels().iter().map(|l| l.bytes().map(|b| (b - b'0') as usize).collect()).collect();
        let left = FinGSet::from_fn(s3.clone(), vec!["0".into(), "1".into(), "2".into()], |x, g| perms[g][x]);
        assert!(matches!(left, Err(Error::NotAGSet(_))));
        let inv = |g: usize| s3.inverse(g);
        assert!(FinGSet::from_fn(s3.clone(), vec!["0".into(), "1".into(), "2".into()], |x, g| perms[inv(g)][x]).is_ok());
    }

    #[test]
    fn collapse_two_orbits() {
        let g = z(2);
        let x = Arc::new(FinGSet::disjoint_union(&FinGSet::regular(g.clone()), &FinGSet::regular(g.clone())).unwrap());
        let y = Arc::new(FinGSet::disjoint_union(&FinGSet::regular(g.clone()), &FinGSet::trivial(g.clone(), 1)).unwrap());
        let f = GSetMap::new(x.clone(), y.clone(), vec![0, 1, 0, 1]).unwrap();
        let fac = epi_mono_gset(&f).unwrap();
        assert_eq!(fac.image.len(), 2);
        assert!(fac.surjection.is_surjective() && fac.injection.is_injective());
        assert_eq!(fac.surjection.then(&fac.injection), f.map);
        assert!(matches!(GSetMap::new(x, y, vec![0, 0, 0, 0]), Err(Error::NotEquivariant(_))));
        let id = GSetMap::identity(Arc::new(FinGSet::regular(g)));
        assert_eq!(epi_mono_gset(&id).unwrap().image.len(), 2);
    }

    #[test]
    fn burnside_matches_necklaces() {
        for n in 1..=5 {
            for k in 1..=3 {
                let x = FinGSet::necklaces(n, k).unwrap();
                assert_eq!(atoms_and_orbits(&x).len(), necklace_count(n, k));
                assert_eq!(burnside_count(&x), necklace_count(n, k));
            }
        }
    }
}
