use serde::{Deserialize, Serialize};

use crate::orth::FinCat;

/// A monotone map `[m] -> [n]`, stored by its values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialOperator {
    pub target: usize,
    pub values: Vec<usize>,
}

impl SimplicialOperator {
    pub fn new(target: usize, values: Vec<usize>) -> Option<Self> {
        if values.is_empty() || values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return None;
        }
        Some(SimplicialOperator { target, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplicialOperator {
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.target && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &SimplicialOperator) -> SimplicialOperator {
        assert_eq!(other.target, self.source(), "operators not composable");
        SimplicialOperator {
            target: self.target,
            values: other.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    /// The unique factorization `self = mono ∘ surj`.
    pub fn epi_mono(&self) -> (SimplicialOperator, SimplicialOperator) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let surj = self
            .values
            .iter()
            .map(|v| image.iter().position(|w| w == v).unwrap())
            .collect();
        (
            SimplicialOperator {
                target: image.len() - 1,
                values: surj,
            },
            SimplicialOperator {
                target: self.target,
                values: image,
            },
        )
    }

    /// For a surjection, the section picking the least preimage of each vertex.
    pub fn least_section(&self) -> SimplicialOperator {
        debug_assert!(self.is_surjective());
        SimplicialOperator {
            target: self.source(),
            values: (0..=self.target).map(|j| self.values.iter().position(|&v| v == j).unwrap()).collect(),
        }
    }

    pub fn name(&self) -> String {
        let vs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("[{}]->[{}]:({})", self.source(), self.target, vs.join(","))
    }

    pub fn parse_name(s: &str) -> Option<SimplicialOperator> {
        let (dims, vals) = s.split_once(":(")?;
        let (_, tgt) = dims.split_once("->[")?;
        let target: usize = tgt.strip_suffix(']')?.parse().ok()?;
        let values = vals
            .strip_suffix(')')?
            .split(',')
            .map(|v| v.parse().ok())
            .collect::<Option<Vec<usize>>>()?;
        SimplicialOperator::new(target, values)
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<SimplicialOperator> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplicialOperator>) {
            if cur.len() == m + 1 {
                out.push(SimplicialOperator {
                    target: n,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                go(m, n, v, cur, out);
                cur.pop();
            }
        }
        go(m, n, 0, &mut cur, &mut out);
        out
    }

    pub fn surjections(m: usize, n: usize) -> Vec<SimplicialOperator> {
        Self::all(m, n).into_iter().filter(|o| o.is_surjective()).collect()
    }

    pub fn injections(m: usize, n: usize) -> Vec<SimplicialOperator> {
        if m > n {
            return Vec::new();
        }
        Self::all(m, n).into_iter().filter(|o| o.is_injective()).collect()
    }

    /// Coface `δ_i: [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> SimplicialOperator {
        SimplicialOperator {
            target: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    /// Codegeneracy `σ_j: [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> SimplicialOperator {
        SimplicialOperator {
            target: n,
            values: (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect(),
        }
    }
}

/// The full subcategory of the simplex category on `[0], ..., [max]`.
pub fn delta_category(max: usize) -> FinCat {
    let objects = (0..=max).map(|i| format!("[{i}]")).collect();
    let homs = (0..=max)
        .map(|a| (0..=max).map(|b| SimplicialOperator::all(a, b)).collect())
        .collect();
    FinCat::from_concrete(
        objects,
        homs,
        SimplicialOperator::identity,
        |g: &SimplicialOperator, f: &SimplicialOperator| g.after(f),
        |_, _, o| o.name(),
    )
    .expect("simplex category")
    .0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn monotone_map_counts() {
        // monotone [m] -> [n] = C(m+n+1, m+1)
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(SimplicialOperator::all(m, n).len(), binom(m + n + 1, m + 1));
                assert_eq!(SimplicialOperator::surjections(m, n).len(), if n <= m { binom(m, n) } else { 0 });
            }
        }
    }

    #[test]
    fn epi_mono_reassembles() {
        for o in SimplicialOperator::all(3, 3) {
            let (s, i) = o.epi_mono();
            assert!(s.is_surjective() && i.is_injective());
            assert_eq!(i.after(&s), o);
        }
    }

    #[test]
    fn name_round_trip() {
        let o = SimplicialOperator::new(2, vec![0, 0, 2]).unwrap();
        assert_eq!(SimplicialOperator::parse_name(&o.name()), Some(o));
    }

    #[test]
    fn delta_fragment_shape() {
        let d = delta_category(2);
        assert_eq!(d.num_objects(), 3);
        // total monotone maps among [0],[1],[2]
        let total: usize = (0..3).flat_map(|a| (0..3).map(move |b| binom(a + b + 1, a + 1))).sum();
        assert_eq!(d.num_morphisms(), total);
    }
}
