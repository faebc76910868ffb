use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::operator::SimplicialOperator;

/// A simplicial set truncated at dimension `dim`, stored by its full face and
/// degeneracy tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FinSSet {
    name: String,
    dim: usize,
    counts: Vec<usize>,
    /// `face[m][i][x]` is `d_i x` for `x ∈ X_m`, `m ≥ 1`.
    face: Vec<Vec<Vec<usize>>>,
    /// `degen[m][j][x]` is `s_j x` for `x ∈ X_m`, `m < dim`.
    degen: Vec<Vec<Vec<usize>>>,
    nd: Vec<Vec<usize>>,
    nd_names: Vec<Vec<String>>,
}

impl fmt::Debug for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nd: Vec<usize> = self.nd.iter().map(|v| v.len()).collect();
        write!(f, "FinSSet({}, dim {}, nondegenerate {:?})", self.name, self.dim, nd)
    }
}

/// Description by nondegenerate simplices; see [`FinSSet::build`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetSpec {
    pub dim: usize,
    /// Keyed by dimension (as a decimal string in JSON).
    pub nondegenerate: BTreeMap<String, Vec<NdEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NdEntry {
    Name(String),
    Full {
        name: String,
        #[serde(default)]
        faces: Vec<FaceRef>,
    },
}

impl NdEntry {
    pub fn name(&self) -> &str {
        match self {
            NdEntry::Name(n) | NdEntry::Full { name: n, .. } => n,
        }
    }

    fn faces(&self) -> &[FaceRef] {
        match self {
            NdEntry::Name(_) => &[],
            NdEntry::Full { faces, .. } => faces,
        }
    }
}

/// A face `d_i y`: a nondegenerate simplex, or a degeneracy operator (a
/// surjection given by its values) applied to one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FaceRef {
    Name(String),
    Degenerate { op: Vec<usize>, of: String },
}

impl FaceRef {
    pub fn of(name: impl Into<String>) -> FaceRef {
        FaceRef::Name(name.into())
    }
}

struct NdData {
    dim: usize,
    /// `d_i y = y'·σ` as `(σ, y')`.
    faces: Vec<(SimplicialOperator, usize)>,
}

/// Normal form `(σ, y)` of `y·θ` for nondegenerate `y`.
fn act_nd(nds: &[NdData], y: usize, theta: &SimplicialOperator) -> (SimplicialOperator, usize) {
    let (tau, delta) = theta.epi_mono();
    let (sigma, z) = nd_face(nds, y, &delta);
    (sigma.after(&tau), z)
}

fn nd_face(nds: &[NdData], y: usize, delta: &SimplicialOperator) -> (SimplicialOperator, usize) {
    if delta.is_identity() {
        return (delta.clone(), y);
    }
    let n = delta.target;
    let j = (0..=n).rev().find(|v| !delta.values.contains(v)).expect("non-identity injection misses a vertex");
    let inner = SimplicialOperator {
        target: n - 1,
        values: delta.values.iter().map(|&v| if v > j { v - 1 } else { v }).collect(),
    };
    let (s1, y1) = &nds[y].faces[j];
    act_nd(nds, *y1, &s1.after(&inner))
}

impl FinSSet {
    /// Generates the truncated simplicial set freely by degeneracies from its
    /// nondegenerate simplices and checks every simplicial identity.
    pub fn build(name: impl Into<String>, spec: &SSetSpec) -> Result<FinSSet> {
        let d = spec.dim;
        let mut by_dim: Vec<Vec<&NdEntry>> = vec![Vec::new(); d + 1];
        for (k, entries) in &spec.nondegenerate {
            let m: usize = k
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("dimension key {k:?} is not a number")))?;
            if !entries.is_empty() && m + 1 > d {
                return Err(Error::TruncationTooLow(format!(
                    "nondegenerate simplices in dimension {m} need truncation at least {}, got {d}",
                    m + 1
                )));
            }
            by_dim[m].extend(entries.iter());
        }
        let mut global: HashMap<String, usize> = HashMap::new();
        let mut nds: Vec<NdData> = Vec::new();
        let mut nd_names: Vec<Vec<String>> = vec![Vec::new(); d + 1];
        let mut nd_global: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
        for (m, entries) in by_dim.iter().enumerate() {
            for e in entries {
                let name = e.name().to_string();
                if global.contains_key(&name) {
                    return Err(Error::InvalidSpec(format!("duplicate simplex name {name:?}")));
                }
                let faces = e.faces();
                if faces.len() != if m == 0 { 0 } else { m + 1 } {
                    return Err(Error::InvalidSpec(format!(
                        "{name} has {} faces, a {m}-simplex needs {}",
                        faces.len(),
                        if m == 0 { 0 } else { m + 1 }
                    )));
                }
                let mut fs = Vec::with_capacity(faces.len());
                for f in faces {
                    let (op, of) = match f {
                        FaceRef::Name(of) => (None, of),
                        FaceRef::Degenerate { op, of } => (Some(op), of),
                    };
                    let &y = global
                        .get(of)
                        .ok_or_else(|| Error::InvalidSpec(format!("face {of:?} of {name} is not declared in a lower dimension")))?;
                    let k = nds[y].dim;
                    let sigma = match op {
                        None => SimplicialOperator::identity(k),
                        Some(vals) => SimplicialOperator::new(k, vals.clone())
                            .filter(|s| s.is_surjective())
                            .ok_or_else(|| Error::InvalidSpec(format!("face operator {vals:?} of {name} is not a surjection onto [{k}]")))?,
                    };
                    if sigma.source() + 1 != m {
                        return Err(Error::InvalidSpec(format!("face of {name} has dimension {}, expected {}", sigma.source(), m - 1)));
                    }
                    fs.push((sigma, y));
                }
                global.insert(name.clone(), nds.len());
                nd_global[m].push(nds.len());
                nd_names[m].push(name);
                nds.push(NdData { dim: m, faces: fs });
            }
        }

        // X_m lists (σ, y) by decreasing dim y, then σ, then y
        let mut simplices: Vec<Vec<(SimplicialOperator, usize)>> = Vec::with_capacity(d + 1);
        let mut index: Vec<HashMap<(Vec<usize>, usize), usize>> = Vec::with_capacity(d + 1);
        for m in 0..=d {
            let mut list = Vec::new();
            for k in (0..=m).rev() {
                for sigma in SimplicialOperator::surjections(m, k) {
                    for &y in &nd_global[k] {
                        list.push((sigma.clone(), y));
                    }
                }
            }
            index.push(list.iter().enumerate().map(|(i, (s, y))| ((s.values.clone(), *y), i)).collect());
            simplices.push(list);
        }
        let lookup = |m: usize, nf: (SimplicialOperator, usize)| index[m][&(nf.0.values, nf.1)];
        let mut face = vec![Vec::new(); d + 1];
        let mut degen = vec![Vec::new(); d + 1];
        for m in 0..=d {
            if m >= 1 {
                face[m] = (0..=m)
                    .map(|i| {
                        let di = SimplicialOperator::coface(m, i);
                        simplices[m]
                            .iter()
                            .map(|(s, y)| lookup(m - 1, act_nd(&nds, *y, &s.after(&di))))
                            .collect()
                    })
                    .collect();
            }
            if m < d {
                degen[m] = (0..=m)
                    .map(|j| {
                        let sj = SimplicialOperator::codegeneracy(m, j);
                        simplices[m]
                            .iter()
                            .map(|(s, y)| lookup(m + 1, act_nd(&nds, *y, &s.after(&sj))))
                            .collect()
                    })
                    .collect();
            }
        }
        let counts = simplices.iter().map(|l| l.len()).collect();
        // nondegenerate simplices come first in each X_m
        let nd = nd_names.iter().map(|v| (0..v.len()).collect()).collect();
        let x = FinSSet {
            name: name.into(),
            dim: d,
            counts,
            face,
            degen,
            nd,
            nd_names,
        };
        x.check_identities()?;
        Ok(x)
    }

    /// From explicit tables; nondegenerate simplices are recomputed and
    /// `names[m]` labels them in increasing index order.
    pub fn from_tables(
        name: impl Into<String>,
        counts: Vec<usize>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
        names: impl Fn(usize, usize) -> String,
    ) -> Result<FinSSet> {
        let d = counts.len().checked_sub(1).ok_or_else(|| Error::InvalidSpec("no dimensions".into()))?;
        if face.len() != d + 1 || degen.len() != d + 1 {
            return Err(Error::InvalidSpec("table shape does not match counts".into()));
        }
        for m in 0..=d {
            let fshape = m == 0 || (face[m].len() == m + 1 && face[m].iter().all(|t| t.len() == counts[m] && t.iter().all(|&v| v < counts[m - 1])));
            let dshape = m == d
                || (degen[m].len() == m + 1 && degen[m].iter().all(|t| t.len() == counts[m] && t.iter().all(|&v| v < counts[m + 1])));
            if !fshape || !dshape {
                return Err(Error::InvalidSpec(format!("tables in dimension {m} have the wrong shape")));
            }
        }
        let mut x = FinSSet {
            name: name.into(),
            dim: d,
            counts,
            face,
            degen,
            nd: Vec::new(),
            nd_names: Vec::new(),
        };
        x.check_identities()?;
        x.nd = (0..=d).map(|m| (0..x.counts[m]).filter(|&s| x.is_nondegenerate(m, s)).collect()).collect();
        x.nd_names = x.nd.iter().enumerate().map(|(m, v)| v.iter().map(|&s| names(m, s)).collect()).collect();
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        let d = self.dim;
        let bad = |what: String| Err(Error::IdentityViolation(what));
        for m in 0..=d {
            for x in 0..self.counts[m] {
                // d_i d_j = d_{j-1} d_i for i < j
                if m >= 2 {
                    for j in 0..=m {
                        for i in 0..j {
                            if self.d(m - 1, i, self.d(m, j, x)) != self.d(m - 1, j - 1, self.d(m, i, x)) {
                                return bad(format!("d{i} d{j} ≠ d{} d{i} on {}", j - 1, self.label(m, x)));
                            }
                        }
                    }
                }
                if m < d {
                    for j in 0..=m {
                        let sx = self.s(m, j, x);
                        for i in 0..=m + 1 {
                            let lhs = self.d(m + 1, i, sx);
                            let rhs = if i < j {
                                self.s(m - 1, j - 1, self.d(m, i, x))
                            } else if i == j || i == j + 1 {
                                x
                            } else {
                                self.s(m - 1, j, self.d(m, i - 1, x))
                            };
                            if lhs != rhs {
                                return bad(format!("d{i} s{j} identity fails on {}", self.label(m, x)));
                            }
                        }
                        // s_i s_j = s_{j+1} s_i for i ≤ j
                        if m + 1 < d {
                            for i in 0..=j {
                                if self.s(m + 1, i, sx) != self.s(m + 1, j + 1, self.s(m, i, x)) {
                                    return bad(format!("s{i} s{j} ≠ s{} s{i} on {}", j + 1, self.label(m, x)));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, m: usize) -> usize {
        self.counts[m]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `d_i x` for `x ∈ X_m`.
    pub fn d(&self, m: usize, i: usize, x: usize) -> usize {
        self.face[m][i][x]
    }

    /// `s_j x` for `x ∈ X_m`, `m < dim`.
    pub fn s(&self, m: usize, j: usize, x: usize) -> usize {
        self.degen[m][j][x]
    }

    pub fn face_table(&self) -> &[Vec<Vec<usize>>] {
        &self.face
    }

    pub fn degen_table(&self) -> &[Vec<Vec<usize>>] {
        &self.degen
    }

    /// Nondegenerate simplices of dimension `m`, increasing.
    pub fn nondegenerate(&self, m: usize) -> &[usize] {
        &self.nd[m]
    }

    pub fn nondegenerate_count(&self) -> usize {
        self.nd.iter().map(|v| v.len()).sum()
    }

    /// Largest dimension holding a nondegenerate simplex.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.dim).rev().find(|&m| !self.nd[m].is_empty())
    }

    /// Table test: `x` is degenerate iff `x = s_j d_j x` for some `j`.
    pub fn is_nondegenerate(&self, m: usize, x: usize) -> bool {
        m == 0 || (0..m).all(|j| self.s(m - 1, j, self.d(m, j, x)) != x)
    }

    pub fn nd_name(&self, m: usize, x: usize) -> Option<&str> {
        self.nd[m].binary_search(&x).ok().map(|k| self.nd_names[m][k].as_str())
    }

    pub fn nd_index(&self, name: &str) -> Option<(usize, usize)> {
        self.nd_names
            .iter()
            .enumerate()
            .find_map(|(m, ns)| ns.iter().position(|n| n == name).map(|k| (m, self.nd[m][k])))
    }

    /// Printed form: a nondegenerate name, or `name·(σ values)`.
    pub fn label(&self, m: usize, x: usize) -> String {
        if let Some(n) = self.nd_name(m, x) {
            return n.to_string();
        }
        let ez = self.eilenberg_zilber(m, x);
        let vs: Vec<String> = ez.surjection.values.iter().map(|v| v.to_string()).collect();
        format!("{}·({})", self.nd_name(ez.dim, ez.nondeg).unwrap_or("?"), vs.join(","))
    }

    /// `x·θ` for `θ: [p] → [m]`, through faces and degeneracies: a repeated
    /// value at `t` peels off `s_t`, a missing vertex `j` peels off `d_j`.
    pub fn act(&self, m: usize, x: usize, theta: &SimplicialOperator) -> usize {
        debug_assert_eq!(theta.target, m);
        let p = theta.source();
        if let Some(t) = (0..p).find(|&t| theta.values[t] == theta.values[t + 1]) {
            let mut vals = theta.values.clone();
            vals.remove(t + 1);
            let inner = SimplicialOperator { target: m, values: vals };
            return self.s(p - 1, t, self.act(m, x, &inner));
        }
        if theta.is_identity() {
            return x;
        }
        let j = (0..=m).rev().find(|v| !theta.values.contains(v)).expect("injective non-identity");
        let inner = SimplicialOperator {
            target: m - 1,
            values: theta.values.iter().map(|&v| if v > j { v - 1 } else { v }).collect(),
        };
        self.act(m - 1, self.d(m, j, x), &inner)
    }

    /// The vertices of `x` in order.
    pub fn vertices(&self, m: usize, x: usize) -> Vec<usize> {
        (0..=m)
            .map(|v| self.act(m, x, &SimplicialOperator { target: m, values: vec![v] }))
            .collect()
    }

    /// `x ≤ y` in the face order: `x` is an iterated face of `y`.
    pub fn faces_of(&self, m: usize, y: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 0..=m {
            for delta in SimplicialOperator::injections(k, m) {
                let f = self.act(m, y, &delta);
                if !out.contains(&(k, f)) {
                    out.push((k, f));
                }
            }
        }
        out
    }

    /// Every face of a nondegenerate simplex is nondegenerate.
    pub fn is_regular(&self) -> bool {
        (0..=self.dim).all(|m| {
            self.nd[m]
                .iter()
                .all(|&y| self.faces_of(m, y).into_iter().all(|(k, f)| self.is_nondegenerate(k, f)))
        })
    }

    /// A description listing the nondegenerate simplices with their faces.
    pub fn to_spec(&self) -> SSetSpec {
        let mut nondegenerate = BTreeMap::new();
        for m in 0..=self.dim {
            if self.nd[m].is_empty() {
                continue;
            }
            let entries = self.nd[m]
                .iter()
                .zip(&self.nd_names[m])
                .map(|(&y, n)| {
                    if m == 0 {
                        return NdEntry::Name(n.clone());
                    }
                    let faces = (0..=m)
                        .map(|i| {
                            let f = self.d(m, i, y);
                            let ez = self.eilenberg_zilber(m - 1, f);
                            let of = self.nd_name(ez.dim, ez.nondeg).expect("nondegenerate").to_string();
                            if ez.surjection.is_identity() {
                                FaceRef::Name(of)
                            } else {
                                FaceRef::Degenerate {
                                    op: ez.surjection.values,
                                    of,
                                }
                            }
                        })
                        .collect();
                    NdEntry::Full { name: n.clone(), faces }
                })
                .collect();
            nondegenerate.insert(m.to_string(), entries);
        }
        SSetSpec {
            dim: self.dim,
            nondegenerate,
        }
    }
}

/// Result of the Eilenberg–Zilber decomposition `x = y·σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EZDecomposition {
    pub surjection: SimplicialOperator,
    pub dim: usize,
    pub nondeg: usize,
}

impl FinSSet {
    /// Strips degeneracies with the table test `x = s_j d_j x` until a
    /// nondegenerate simplex remains.
    pub fn eilenberg_zilber(&self, m: usize, x: usize) -> EZDecomposition {
        let mut sigma = SimplicialOperator::identity(m);
        let (mut k, mut cur) = (m, x);
        while let Some(j) = (0..k).find(|&j| self.s(k - 1, j, self.d(k, j, cur)) == cur) {
            // cur = s_j(d_j cur) = (d_j cur)·σ_j
            sigma = SimplicialOperator::codegeneracy(k - 1, j).after(&sigma);
            cur = self.d(k, j, cur);
            k -= 1;
        }
        EZDecomposition {
            surjection: sigma,
            dim: k,
            nondeg: cur,
        }
    }

    /// Exhaustive check: exactly one pair (surjection, nondegenerate simplex)
    /// reproduces `x`.
    pub fn ez_pairs(&self, m: usize, x: usize) -> Vec<(SimplicialOperator, usize)> {
        let mut out = Vec::new();
        for k in 0..=m {
            let nds: Vec<usize> = (0..self.counts[k]).filter(|&y| self.is_nondegenerate(k, y)).collect();
            for sigma in SimplicialOperator::surjections(m, k) {
                for &y in &nds {
                    if self.act(k, y, &sigma) == x {
                        out.push((sigma.clone(), y));
                    }
                }
            }
        }
        out
    }
}

// ---- standard objects ----

fn simplex_name(vs: &[usize]) -> String {
    let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    s.concat()
}

/// Nondegenerate data of `Δ[n]` restricted to the faces accepted by `keep`.
fn simplex_spec(n: usize, dim: usize, keep: impl Fn(&[usize]) -> bool) -> SSetSpec {
    let mut nondegenerate = BTreeMap::new();
    for k in 0..=n {
        let entries: Vec<NdEntry> = SimplicialOperator::injections(k, n)
            .into_iter()
            .filter(|o| keep(&o.values))
            .map(|o| {
                let name = simplex_name(&o.values);
                if k == 0 {
                    NdEntry::Name(name)
                } else {
                    let faces = (0..=k)
                        .map(|i| {
                            let mut vs = o.values.clone();
                            vs.remove(i);
                            FaceRef::Name(simplex_name(&vs))
                        })
                        .collect();
                    NdEntry::Full { name, faces }
                }
            })
            .collect();
        if !entries.is_empty() {
            nondegenerate.insert(k.to_string(), entries);
        }
    }
    SSetSpec { dim, nondegenerate }
}

fn truncation(name: &str, top: usize, dim: usize) -> Result<()> {
    if dim < top + 1 {
        return Err(Error::TruncationTooLow(format!("{name} needs truncation at least {}, got {dim}", top + 1)));
    }
    Ok(())
}

impl FinSSet {
    /// The standard `n`-simplex, vertices named `0..n` and faces by their vertex strings.
    pub fn delta(n: usize, dim: usize) -> Result<FinSSet> {
        truncation("Δ[n]", n, dim)?;
        FinSSet::build(format!("Δ[{n}]"), &simplex_spec(n, dim, |_| true))
    }

    pub fn boundary(n: usize, dim: usize) -> Result<FinSSet> {
        if n == 0 {
            return FinSSet::build("∂Δ[0]", &SSetSpec {
                dim,
                nondegenerate: BTreeMap::new(),
            });
        }
        truncation("∂Δ[n]", n - 1, dim)?;
        FinSSet::build(format!("∂Δ[{n}]"), &simplex_spec(n, dim, |vs| vs.len() <= n))
    }

    /// The horn `Λ^n_k`: the boundary without the face opposite vertex `k`.
    pub fn horn(n: usize, k: usize, dim: usize) -> Result<FinSSet> {
        if n == 0 || k > n {
            return Err(Error::InvalidSpec("horn needs n ≥ 1 and k ≤ n".into()));
        }
        truncation("Λ^n_k", n - 1, dim)?;
        FinSSet::build(
            format!("Λ[{n},{k}]"),
            &simplex_spec(n, dim, |vs| vs.len() < n || (vs.len() == n && vs.contains(&k))),
        )
    }

    /// One vertex and one edge from it to itself.
    pub fn circle(dim: usize) -> Result<FinSSet> {
        truncation("S¹", 1, dim)?;
        let mut nd = BTreeMap::new();
        nd.insert("0".into(), vec![NdEntry::Name("v".into())]);
        nd.insert(
            "1".into(),
            vec![NdEntry::Full {
                name: "e".into(),
                faces: vec![FaceRef::of("v"), FaceRef::of("v")],
            }],
        );
        FinSSet::build("S¹", &SSetSpec { dim, nondegenerate: nd })
    }

    /// `Δ[n]/∂Δ[n]`: one vertex and one `n`-simplex with degenerate faces.
    pub fn sphere(n: usize, dim: usize) -> Result<FinSSet> {
        if n == 0 {
            return Err(Error::InvalidSpec("sphere needs n ≥ 1".into()));
        }
        truncation("S^n", n, dim)?;
        let mut nd = BTreeMap::new();
        nd.insert("0".into(), vec![NdEntry::Name("v".into())]);
        let face = if n == 1 {
            FaceRef::of("v")
        } else {
            FaceRef::Degenerate {
                op: vec![0; n],
                of: "v".into(),
            }
        };
        nd.insert(
            n.to_string(),
            vec![NdEntry::Full {
                name: "c".into(),
                faces: vec![face; n + 1],
            }],
        );
        FinSSet::build(format!("S^{n}"), &SSetSpec { dim, nondegenerate: nd })
    }

    /// Disjoint union; simplex names get the prefix `a.` or `b.`.
    pub fn disjoint_union(x: &FinSSet, y: &FinSSet) -> Result<FinSSet> {
        if x.dim != y.dim {
            return Err(Error::TruncationTooLow("disjoint union needs equal truncations".into()));
        }
        let mut nondegenerate: BTreeMap<String, Vec<NdEntry>> = BTreeMap::new();
        for (prefix, s) in [("a.", x), ("b.", y)] {
            for (k, entries) in s.to_spec().nondegenerate {
                let renamed = entries.into_iter().map(|e| prefix_entry(prefix, e));
                nondegenerate.entry(k).or_default().extend(renamed);
            }
        }
        FinSSet::build(format!("{} ⊔ {}", x.name, y.name), &SSetSpec {
            dim: x.dim,
            nondegenerate,
        })
    }
}

fn prefix_entry(p: &str, e: NdEntry) -> NdEntry {
    let pf = |f: FaceRef| match f {
        FaceRef::Name(n) => FaceRef::Name(format!("{p}{n}")),
        FaceRef::Degenerate { op, of } => FaceRef::Degenerate { op, of: format!("{p}{of}") },
    };
    match e {
        NdEntry::Name(n) => NdEntry::Name(format!("{p}{n}")),
        NdEntry::Full { name, faces } => NdEntry::Full {
            name: format!("{p}{name}"),
            faces: faces.into_iter().map(pf).collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn delta_counts_are_monotone_maps() {
        let d2 = FinSSet::delta(2, 3).unwrap();
        assert_eq!(d2.counts(), &[3, 6, 10, 15]);
        for m in 0..=3 {
            assert_eq!(d2.count(m), binom(m + 3, m + 1));
        }
        let d0 = FinSSet::delta(0, 3).unwrap();
        assert_eq!(d0.counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn boundary_of_triangle() {
        let b = FinSSet::boundary(2, 3).unwrap();
        assert_eq!(b.nondegenerate(0).len(), 3);
        assert_eq!(b.nondegenerate(1).len(), 3);
        assert_eq!(b.nondegenerate(2).len(), 0);
    }

    #[test]
    fn truncation_too_low() {
        assert!(matches!(FinSSet::delta(2, 2), Err(Error::TruncationTooLow(_))));
    }

    #[test]
    fn ez_examples() {
        let d1 = FinSSet::delta(1, 3).unwrap();
        let (_, e) = d1.nd_index("01").unwrap();
        let s0e = d1.s(1, 0, e);
        let ez = d1.eilenberg_zilber(2, s0e);
        assert_eq!(ez.surjection.values, vec![0, 0, 1]);
        assert_eq!((ez.dim, ez.nondeg), (1, e));
        let (_, v) = d1.nd_index("0").unwrap();
        let x = d1.s(1, 1, d1.s(0, 0, v));
        let ez = d1.eilenberg_zilber(2, x);
        assert_eq!(ez.surjection.values, vec![0, 0, 0]);
        assert_eq!(ez.nondeg, v);
        let ez = d1.eilenberg_zilber(1, e);
        assert!(ez.surjection.is_identity());
    }

    #[test]
    fn ez_unique_on_sphere_and_circle() {
        for x in [FinSSet::circle(4).unwrap(), FinSSet::sphere(2, 4).unwrap(), FinSSet::horn(3, 1, 4).unwrap()] {
            for m in 0..=x.dim() {
                for s in 0..x.count(m) {
                    let pairs = x.ez_pairs(m, s);
                    assert_eq!(pairs.len(), 1, "{} {m} {s}", x.name());
                    let ez = x.eilenberg_zilber(m, s);
                    assert_eq!(pairs[0], (ez.surjection, ez.nondeg));
                }
            }
        }
    }

    #[test]
    fn inconsistent_faces_rejected() {
        // a triangle whose edges do not meet correctly
        let text = r#"{"dim":3,"nondegenerate":{"0":["a","b","c"],
            "1":[{"name":"ab","faces":["b","a"]},{"name":"bc","faces":["c","b"]},{"name":"ac","faces":["c","a"]}],
            "2":[{"name":"t","faces":["bc","ab","ac"]}]}}"#;
        let spec: SSetSpec = serde_json::from_str(text).unwrap();
        assert!(matches!(FinSSet::build("bad", &spec), Err(Error::IdentityViolation(_))));
    }

    #[test]
    fn regularity() {
        assert!(FinSSet::delta(3, 4).unwrap().is_regular());
        assert!(FinSSet::circle(3).unwrap().is_regular());
        assert!(!FinSSet::sphere(2, 3).unwrap().is_regular());
    }

    #[test]
    fn from_tables_round_trip() {
        let x = FinSSet::horn(2, 0, 3).unwrap();
        let y = FinSSet::from_tables("copy", x.counts().to_vec(), x.face_table().to_vec(), x.degen_table().to_vec(), |m, s| {
            x.nd_name(m, s).unwrap().to_string()
        })
        .unwrap();
        assert_eq!(x.nondegenerate_count(), y.nondegenerate_count());
        let back = FinSSet::build("again", &y.to_spec()).unwrap();
        assert_eq!(back.counts(), x.counts());
    }
}
