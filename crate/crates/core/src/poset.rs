//! Finite posets: validation, Hasse diagrams, lattice operations,
//! order-isomorphism search and DOT/JSON export.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite partial order stored as a dense `leq` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` and checks antisymmetry.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidSpec(format!("order pair ({a},{b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { labels, leq };
        p.check_antisymmetric()?;
        Ok(p)
    }

    /// Builds the order from a predicate and validates all three order axioms.
    pub fn from_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = le(i, j);
            }
        }
        let p = Poset { labels, leq };
        p.validate()?;
        Ok(p)
    }

    pub fn discrete(labels: Vec<String>) -> Self {
        Poset::from_relation(labels, &[]).expect("discrete order is antisymmetric")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::InvalidSpec(format!("order not reflexive at {}", self.labels[i])));
            }
        }
        self.check_antisymmetric()?;
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::InvalidSpec(format!(
                            "order not transitive on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::InvalidSpec(format!(
                        "order not antisymmetric on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// All pairs `(a, b)` with `a < b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    /// Covering relations only: `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|k| self.lt(a, k) && self.lt(k, b)))
            .collect()
    }

    pub fn opposite(&self) -> Poset {
        Poset::from_fn(self.labels.clone(), |a, b| self.leq(b, a)).expect("opposite of a poset")
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(b, a))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(a, b))).collect()
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|a| self.leq(a, t)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|a| self.leq(t, a)))
    }

    /// Greatest lower bound, when it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&c| self.leq(c, m)))
    }

    /// Least upper bound, when it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&c| self.leq(m, c)))
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    /// Order-theoretic meet and join tables, if this is a lattice.
    pub fn lattice_tables(&self) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        let n = self.len();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = self.meet(a, b)?;
                join[a][b] = self.join(a, b)?;
            }
        }
        Some((meet, join))
    }

    /// An order isomorphism `self -> other` (`a <= b` iff `f(a) <= f(b)`).
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        self.search_iso(other, false)
    }

    /// An order-reversing bijection `self -> other`.
    pub fn find_anti_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        self.search_iso(other, true)
    }

    fn search_iso(&self, other: &Poset, reverse: bool) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let rel = |p: &Poset, a: usize, b: usize| p.leq(a, b);
        let down = |p: &Poset, a: usize| (0..p.len()).filter(|&c| p.leq(c, a)).count();
        let up = |p: &Poset, a: usize| (0..p.len()).filter(|&c| p.leq(a, c)).count();
        let sig_self: Vec<(usize, usize)> = (0..n).map(|a| (down(self, a), up(self, a))).collect();
        let sig_other: Vec<(usize, usize)> = (0..n)
            .map(|a| if reverse { (up(other, a), down(other, a)) } else { (down(other, a), up(other, a)) })
            .collect();
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            n: usize,
            p: &Poset,
            q: &Poset,
            reverse: bool,
            sig_p: &[(usize, usize)],
            sig_q: &[(usize, usize)],
            assign: &mut Vec<usize>,
            used: &mut Vec<bool>,
            rel: &dyn Fn(&Poset, usize, usize) -> bool,
        ) -> bool {
            if i == n {
                return true;
            }
            for c in 0..n {
                if used[c] || sig_p[i] != sig_q[c] {
                    continue;
                }
                let ok = (0..i).all(|j| {
                    let d = assign[j];
                    let (qa, qb) = if reverse { ((c, d), (d, c)) } else { ((d, c), (c, d)) };
                    rel(p, j, i) == rel(q, qa.0, qa.1) && rel(p, i, j) == rel(q, qb.0, qb.1)
                });
                if !ok {
                    continue;
                }
                assign[i] = c;
                used[c] = true;
                if go(i + 1, n, p, q, reverse, sig_p, sig_q, assign, used, rel) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        if go(0, n, self, other, reverse, &sig_self, &sig_other, &mut assign, &mut used, &rel) {
            Some(assign)
        } else {
            None
        }
    }

    /// Hasse diagram in Graphviz DOT syntax; edges point upwards (`a -> b` for `a ⋖ b`).
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, escape(l));
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            order: self.strict_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub order: Vec<[usize; 2]>,
}

/// Checks idempotence, commutativity, associativity, absorption and
/// distributivity of a pair of binary tables exhaustively.
pub fn check_lattice_laws(meet: &[Vec<usize>], join: &[Vec<usize>]) -> std::result::Result<(), String> {
    let n = meet.len();
    for a in 0..n {
        if meet[a][a] != a || join[a][a] != a {
            return Err(format!("idempotence fails at {a}"));
        }
        for b in 0..n {
            if meet[a][b] != meet[b][a] || join[a][b] != join[b][a] {
                return Err(format!("commutativity fails at ({a},{b})"));
            }
            if meet[a][join[a][b]] != a || join[a][meet[a][b]] != a {
                return Err(format!("absorption fails at ({a},{b})"));
            }
            for c in 0..n {
                if meet[meet[a][b]][c] != meet[a][meet[b][c]] || join[join[a][b]][c] != join[a][join[b][c]] {
                    return Err(format!("associativity fails at ({a},{b},{c})"));
                }
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                    return Err(format!("distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

/// The poset of nonempty subsets of `{0..=n}` ordered by inclusion.
pub fn face_poset(n: usize) -> Poset {
    let subsets: Vec<u32> = (1u32..(1u32 << (n + 1))).collect();
    let labels = subsets
        .iter()
        .map(|&s| {
            let vs: Vec<String> = (0..=n).filter(|&i| s & (1 << i) != 0).map(|i| i.to_string()).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect();
    Poset::from_fn(labels, |a, b| subsets[a] & !subsets[b] == 0).expect("inclusion order")
}
