use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finring::{prime_power, FinRing};
use crate::poset::Poset;

/// `F_q^n`, vectors indexed by their coordinates read as base-`q` digits
/// with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqVecSpace {
    field: Arc<FinRing>,
    n: usize,
}

impl FqVecSpace {
    pub fn new(q: usize, n: usize) -> Result<FqVecSpace> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidSpec(format!("{q} is not a prime power")))?;
        Ok(FqVecSpace {
            field: Arc::new(FinRing::gf(p, k)?),
            n,
        })
    }

    pub fn over(field: Arc<FinRing>, n: usize) -> FqVecSpace {
        FqVecSpace { field, n }
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FinRing> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.q().pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let q = self.q();
        (0..self.n).map(|i| (v / q.pow((self.n - 1 - i) as u32)) % q).collect()
    }

    pub fn vector(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.q() + c)
    }

    pub fn zero(&self) -> usize {
        self.vector(&vec![self.field.zero(); self.n])
    }

    pub fn add(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.coords(u), self.coords(v));
        self.vector(&a.iter().zip(&b).map(|(&x, &y)| self.field.add(x, y)).collect::<Vec<_>>())
    }

    pub fn scale(&self, c: usize, v: usize) -> usize {
        self.vector(&self.coords(v).iter().map(|&x| self.field.mul(c, x)).collect::<Vec<_>>())
    }

    pub fn basis(&self, i: usize) -> usize {
        let mut c = vec![self.field.zero(); self.n];
        c[i] = self.field.one();
        self.vector(&c)
    }

    pub fn label(&self, v: usize) -> String {
        let cs: Vec<&str> = self.coords(v).iter().map(|&c| self.field.label(c)).collect();
        format!("({})", cs.join(","))
    }

    /// Span of the given vectors, sorted.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut out = vec![self.zero()];
        for &g in gens {
            if out.contains(&g) {
                continue;
            }
            let mut next = Vec::new();
            for c in self.field.elements() {
                let cg = self.scale(c, g);
                next.extend(out.iter().map(|&u| self.add(u, cg)));
            }
            next.sort_unstable();
            next.dedup();
            out = next;
        }
        out.sort_unstable();
        out
    }

    /// The 1-dimensional subspaces, each named by its vector whose first
    /// nonzero coordinate is 1.
    pub fn lines(&self) -> Vec<(usize, Vec<usize>)> {
        let z = self.field.zero();
        let one = self.field.one();
        (0..self.len())
            .filter(|&v| self.coords(v).into_iter().find(|&c| c != z) == Some(one))
            .map(|v| (v, self.span(&[v])))
            .collect()
    }
}

/// A linear map stored on every vector.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub source: Arc<FqVecSpace>,
    pub target: Arc<FqVecSpace>,
    pub table: Vec<usize>,
}

impl LinearMap {
    pub fn new(source: Arc<FqVecSpace>, target: Arc<FqVecSpace>, table: Vec<usize>) -> Result<LinearMap> {
        if source.field != target.field {
            return Err(Error::NotLinear("spaces over different fields".into()));
        }
        if table.len() != source.len() || table.iter().any(|&w| w >= target.len()) {
            return Err(Error::NotLinear("table shape".into()));
        }
        for u in 0..source.len() {
            for v in 0..source.len() {
                if table[source.add(u, v)] != target.add(table[u], table[v]) {
                    return Err(Error::NotLinear(format!("not additive at {} + {}", source.label(u), source.label(v))));
                }
            }
            for c in source.field.elements() {
                if table[source.scale(c, u)] != target.scale(c, table[u]) {
                    return Err(Error::NotLinear(format!("not homogeneous at {}", source.label(u))));
                }
            }
        }
        Ok(LinearMap { source, target, table })
    }

    /// `columns[j]` is the image of the `j`-th basis vector in target coordinates.
    pub fn from_columns(source: Arc<FqVecSpace>, target: Arc<FqVecSpace>, columns: &[Vec<usize>]) -> Result<LinearMap> {
        if columns.len() != source.dim() || columns.iter().any(|c| c.len() != target.dim() || c.iter().any(|&x| x >= target.q())) {
            return Err(Error::NotLinear("matrix shape".into()));
        }
        let imgs: Vec<usize> = columns.iter().map(|c| target.vector(c)).collect();
        let table = (0..source.len())
            .map(|v| {
                source
                    .coords(v)
                    .iter()
                    .zip(&imgs)
                    .fold(target.zero(), |acc, (&c, &w)| target.add(acc, target.scale(c, w)))
            })
            .collect();
        LinearMap::new(source, target, table)
    }

    pub fn identity(v: Arc<FqVecSpace>) -> LinearMap {
        let table = (0..v.len()).collect();
        LinearMap {
            source: v.clone(),
            target: v,
            table,
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.table.iter().for_each(|&w| hit[w] = true);
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let z = self.source.zero();
        (0..self.source.len()).all(|v| v == z || self.table[v] != self.target.zero())
    }

    pub fn then(&self, other: &LinearMap) -> Vec<usize> {
        self.table.iter().map(|&w| other.table[w]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct LinearFactorization {
    pub surjection: LinearMap,
    pub image: Arc<FqVecSpace>,
    /// Basis of the image in the target, images of basis vectors taken greedily.
    pub basis: Vec<usize>,
    pub injection: LinearMap,
}

/// Middle is `F_q^r` for `r` the rank, coordinates taken in a basis of the image.
pub fn epi_mono_linear(f: &LinearMap) -> Result<LinearFactorization> {
    let (v, w) = (&f.source, &f.target);
    let mut basis: Vec<usize> = Vec::new();
    let mut span = w.span(&[]);
    for j in 0..v.dim() {
        let img = f.table[v.basis(j)];
        if span.binary_search(&img).is_err() {
            basis.push(img);
            span = w.span(&basis);
        }
    }
    let middle = Arc::new(FqVecSpace::over(v.field.clone(), basis.len()));
    let columns: Vec<Vec<usize>> = basis.iter().map(|&b| w.coords(b)).collect();
    let injection = LinearMap::from_columns(middle.clone(), w.clone(), &columns)?;
    let mut coord = vec![usize::MAX; w.len()];
    for m in 0..middle.len() {
        coord[injection.table[m]] = m;
    }
    let surj = f.table.iter().map(|&y| coord[y]).collect();
    Ok(LinearFactorization {
        surjection: LinearMap::new(v.clone(), middle.clone(), surj)?,
        image: middle,
        basis,
        injection,
    })
}

/// The zero subobject below every line.
pub fn simple_points(v: &FqVecSpace) -> Poset {
    let mut labels = vec!["0".to_string()];
    labels.extend(v.lines().into_iter().map(|(g, _)| format!("<{}>", v.label(g))));
    Poset::from_fn(labels, |a, b| a == b || a == 0).expect("generic point below lines")
}

/// Simple quotients `V → V/H`, one per hyperplane, plus `V → 0`: the lines of
/// the dual space, each labelled by the hyperplane it cuts out.
pub fn simple_quotients(v: &FqVecSpace) -> Poset {
    let dual = FqVecSpace::over(v.field.clone(), v.n);
    let f = &v.field;
    let pair = |phi: usize, x: usize| {
        dual.coords(phi)
            .iter()
            .zip(v.coords(x))
            .fold(f.zero(), |acc, (&a, b)| f.add(acc, f.mul(a, b)))
    };
    let mut labels = vec!["0".to_string()];
    for (phi, _) in dual.lines() {
        let kernel: Vec<String> = (0..v.len()).filter(|&x| pair(phi, x) == f.zero()).map(|x| v.label(x)).collect();
        labels.push(format!("V/{{{}}}", kernel.join(",")));
    }
    Poset::from_fn(labels, |a, b| a == b || a == 0).expect("generic point below quotients")
}

/// `(qⁿ − 1)/(q − 1)`.
pub fn line_count(q: usize, n: usize) -> usize {
    (q.pow(n as u32) - 1) / (q - 1)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VecSpaceDesc {
    pub q: usize,
    pub n: usize,
}

impl VecSpaceDesc {
    pub fn build(&self) -> Result<FqVecSpace> {
        FqVecSpace::new(self.q, self.n)
    }
}

/// `columns[j]` lists the target coordinates (field element indices) of the
/// image of the `j`-th basis vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMapDesc {
    pub source: VecSpaceDesc,
    pub target: VecSpaceDesc,
    pub columns: Vec<Vec<usize>>,
}

impl LinearMapDesc {
    pub fn build(&self) -> Result<LinearMap> {
        let s = Arc::new(self.source.build()?);
        if self.source.q != self.target.q {
            return Err(Error::NotLinear("spaces over different fields".into()));
        }
        let t = Arc::new(FqVecSpace::over(s.field.clone(), self.target.n));
        LinearMap::from_columns(s, t, &self.columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_examples() {
        assert_eq!(simple_points(&FqVecSpace::new(2, 2).unwrap()).len(), 4);
        assert_eq!(simple_points(&FqVecSpace::new(3, 1).unwrap()).len(), 2);
        assert_eq!(simple_points(&FqVecSpace::new(2, 3).unwrap()).len(), 8);
        for q in [2, 3, 4] {
            for n in 0..=3 {
                let v = FqVecSpace::new(q, n).unwrap();
                assert_eq!(v.lines().len(), line_count(q, n));
                assert_eq!(simple_quotients(&v).len(), line_count(q, n) + 1);
            }
        }
    }

    #[test]
    fn generic_point_below() {
        let p = simple_points(&FqVecSpace::new(2, 2).unwrap());
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.maximal_elements().len(), 3);
    }

    #[test]
    fn rank_one_map() {
        let v = Arc::new(FqVecSpace::new(2, 2).unwrap());
        let f = LinearMap::from_columns(v.clone(), v.clone(), &[vec![1, 0], vec![1, 0]]).unwrap();
        let fac = epi_mono_linear(&f).unwrap();
        assert_eq!(fac.image.dim(), 1);
        assert!(fac.surjection.is_surjective() && fac.injection.is_injective());
        assert_eq!(fac.surjection.then(&fac.injection), f.table);
        let id = epi_mono_linear(&LinearMap::identity(v.clone())).unwrap();
        assert_eq!(id.image.dim(), 2);
    }

    #[test]
    fn nonlinear_rejected() {
        let v = Arc::new(FqVecSpace::new(3, 1).unwrap());
        // x ↦ x² is not additive over F_3
        let t: Vec<usize> = (0..3).map(|x| (x * x) % 3).collect();
        assert!(matches!(LinearMap::new(v.clone(), v, t), Err(Error::NotLinear(_))));
    }
}
