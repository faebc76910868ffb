use std::fmt;

use crate::error::{Error, Result};

/// A finite commutative unital ring with enumerated carrier.
///
/// Elements are dense indices `0..order()`; `labels` gives their printed
/// names. For `Z/n` the index of an element is its least residue.
#[derive(Clone, PartialEq, Eq)]
pub struct FinRing {
    name: String,
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    generators: Vec<usize>,
}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRing({}, order {})", self.name, self.order())
    }
}

impl fmt::Display for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FinRing {
    /// Validates the commutative ring axioms exhaustively. The additive
    /// identity is discovered from the table. When `generators` is `None`
    /// a generating set is chosen greedily in index order.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotARing("empty carrier".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(Error::NotARing("tables must be |A| x |A|".into()));
        }
        if add.iter().chain(&mul).any(|&x| x >= n) || one >= n {
            return Err(Error::NotARing("table entry out of range".into()));
        }
        let l = |i: usize| labels[i].clone();
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z * n + a] == a))
            .ok_or_else(|| Error::NotARing("no additive identity".into()))?;
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            neg[a] = (0..n)
                .find(|&b| add[a * n + b] == zero)
                .ok_or_else(|| Error::NotARing(format!("{} has no additive inverse", l(a))))?;
        }
        for a in 0..n {
            if mul[one * n + a] != a {
                return Err(Error::NotARing(format!("1·{} ≠ {}", l(a), l(a))));
            }
            for b in 0..n {
                if add[a * n + b] != add[b * n + a] {
                    return Err(Error::NotARing(format!("addition not commutative on ({}, {})", l(a), l(b))));
                }
                if mul[a * n + b] != mul[b * n + a] {
                    return Err(Error::NotARing(format!("multiplication not commutative on ({}, {})", l(a), l(b))));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = add[a * n + b];
                let mab = mul[a * n + b];
                for c in 0..n {
                    if add[ab * n + c] != add[a * n + add[b * n + c]] {
                        return Err(Error::NotARing(format!(
                            "addition not associative on ({}, {}, {})",
                            l(a),
                            l(b),
                            l(c)
                        )));
                    }
                    if mul[mab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::NotARing(format!(
                            "multiplication not associative on ({}, {}, {})",
                            l(a),
                            l(b),
                            l(c)
                        )));
                    }
                    if mul[a * n + add[b * n + c]] != add[mab * n + mul[a * n + c]] {
                        return Err(Error::NotARing(format!(
                            "distributivity fails on ({}, {}, {})",
                            l(a),
                            l(b),
                            l(c)
                        )));
                    }
                }
            }
        }
        let mut r = FinRing {
            name: name.into(),
            labels,
            add,
            mul,
            neg,
            zero,
            one,
            generators: Vec::new(),
        };
        match generators {
            Some(g) => {
                if g.iter().any(|&x| x >= n) {
                    return Err(Error::NotARing("generator out of range".into()));
                }
                if r.generated_subring(&g).iter().any(|&b| !b) {
                    return Err(Error::NotARing("declared generators do not generate the carrier".into()));
                }
                r.generators = g;
            }
            None => r.generators = r.greedy_generators(),
        }
        Ok(r)
    }

    /// Builds tables from closures; used by the structured constructors,
    /// which pass through full validation as well.
    pub(crate) fn from_fns(
        name: impl Into<String>,
        labels: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        one: usize,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                at.push(add(a, b));
                mt.push(mul(a, b));
            }
        }
        FinRing::from_tables(name, labels, at, mt, one, generators)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated_subring(&gens);
        for a in 0..self.order() {
            if !span[a] {
                gens.push(a);
                span = self.generated_subring(&gens);
            }
        }
        gens
    }

    /// Membership mask of the subring generated by `gens` (1 is always included).
    pub fn generated_subring(&self, gens: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut inside = vec![false; n];
        let mut list = vec![self.zero];
        inside[self.zero] = true;
        for &g in std::iter::once(&self.one).chain(gens) {
            if !inside[g] {
                inside[g] = true;
                list.push(g);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            let mut fresh = Vec::new();
            for j in 0..=i {
                let b = list[j];
                for c in [self.add(a, b), self.mul(a, b), self.neg(a)] {
                    if !inside[c] {
                        inside[c] = true;
                        fresh.push(c);
                    }
                }
            }
            list.extend(fresh);
            i += 1;
        }
        inside
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order() == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// `k · 1` for small non-negative `k`.
    pub fn from_int(&self, k: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// Least `k ≥ 1` with `k·1 = 0`.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            k += 1;
        }
        k
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// The same ring with carrier relabelled: element `a` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> FinRing {
        let n = self.order();
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let labels = (0..n).map(|i| self.labels[inv[i]].clone()).collect();
        let gens = self.generators.iter().map(|&g| perm[g]).collect();
        FinRing::from_fns(
            self.name.clone(),
            labels,
            |a, b| perm[self.add(inv[a], inv[b])],
            |a, b| perm[self.mul(inv[a], inv[b])],
            perm[self.one],
            Some(gens),
        )
        .expect("relabelling preserves the axioms")
    }

    // ---- constructors ----

    /// `Z/n`; `zmod(1)` is the zero ring.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("zmod needs n ≥ 1".into()));
        }
        FinRing::from_fns(
            format!("Z/{n}"),
            (0..n).map(|i| i.to_string()).collect(),
            |a, b| (a + b) % n,
            |a, b| (a * b) % n,
            1 % n,
            Some(vec![]),
        )
    }

    /// `base[x]/(f)` for a monic `f` given by its coefficients below the
    /// leading one, lowest degree first.
    pub fn polynomial_quotient(base: &FinRing, lower_coeffs: &[usize], var: &str) -> Result<Self> {
        if base.zero() != 0 {
            return Err(Error::InvalidSpec("base ring must have zero at index 0".into()));
        }
        let k = lower_coeffs.len();
        if k == 0 {
            return Err(Error::InvalidSpec("modulus must have degree ≥ 1".into()));
        }
        let q = base.order();
        let size = q
            .checked_pow(k as u32)
            .filter(|&s| s <= 4096)
            .ok_or_else(|| Error::InvalidSpec("polynomial quotient too large".into()))?;
        let digits = |mut i: usize| {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = i % q;
                i /= q;
            }
            d
        };
        let index = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * q + c);
        let mul_poly = |a: &[usize], b: &[usize]| {
            let mut prod = vec![base.zero(); 2 * k - 1];
            for (i, &ai) in a.iter().enumerate() {
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(ai, bj));
                }
            }
            // reduce x^k = -(c_0 + ... + c_{k-1} x^{k-1})
            for deg in (k..prod.len()).rev() {
                let c = prod[deg];
                if c == base.zero() {
                    continue;
                }
                prod[deg] = base.zero();
                for (i, &fi) in lower_coeffs.iter().enumerate() {
                    let t = base.mul(c, fi);
                    prod[deg - k + i] = base.sub(prod[deg - k + i], t);
                }
            }
            prod.truncate(k);
            prod
        };
        let labels = (0..size)
            .map(|i| poly_label(base, &digits(i), var))
            .collect::<Vec<_>>();
        let mut one_d = vec![base.zero(); k];
        one_d[0] = base.one();
        let one = index(&one_d);
        // coefficient digits are base element indices
        let enc = digits;
        let gens = if k >= 2 {
            let mut xd = vec![base.zero(); k];
            xd[1] = base.one();
            let mut g: Vec<usize> = base
                .generators()
                .iter()
                .map(|&c| {
                    let mut d = vec![base.zero(); k];
                    d[0] = c;
                    index(&d)
                })
                .collect();
            g.push(index(&xd));
            g
        } else {
            // degree one: x ≡ -c_0 lies in the base
            base.generators()
                .iter()
                .map(|&c| {
                    let mut d = vec![base.zero(); k];
                    d[0] = c;
                    index(&d)
                })
                .collect()
        };
        let name = format!("{}[{}]/({})", base.name(), var, modulus_label(base, lower_coeffs, var));
        FinRing::from_fns(
            name,
            labels,
            |a, b| {
                let (da, db) = (enc(a), enc(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| base.add(x, y)).collect();
                index(&s)
            },
            |a, b| index(&mul_poly(&enc(a), &enc(b))),
            one,
            Some(gens),
        )
    }

    /// `F_{p^k}` built from the lexicographically least monic irreducible
    /// polynomial of degree `k` over `F_p` (coefficients compared from the
    /// leading term down).
    pub fn gf(p: usize, k: usize) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidSpec(format!("gf: {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("gf: degree must be ≥ 1".into()));
        }
        let fp = FinRing::zmod(p)?;
        if k == 1 {
            return Ok(fp.with_name(format!("F_{p}")));
        }
        let f = least_irreducible(p, k).ok_or_else(|| Error::InvalidSpec("no irreducible polynomial".into()))?;
        let q = p.pow(k as u32);
        Ok(FinRing::polynomial_quotient(&fp, &f, "x")?.with_name(format!("F_{q}")))
    }

    /// Componentwise product; the first factor is the most significant digit
    /// of the element index. The empty product is the zero ring.
    pub fn product(factors: &[FinRing]) -> Result<Self> {
        if factors.is_empty() {
            return FinRing::zmod(1);
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let total = sizes
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&t| t <= 4096))
            .ok_or_else(|| Error::InvalidSpec("product too large".into()))?;
        let split = |mut i: usize| {
            let mut d = vec![0; sizes.len()];
            for (slot, &s) in d.iter_mut().zip(&sizes).rev() {
                *slot = i % s;
                i /= s;
            }
            d
        };
        let join = |d: &[usize]| d.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c);
        let labels = (0..total)
            .map(|i| {
                let parts: Vec<&str> = split(i).iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let one = join(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
        let mut gens = Vec::new();
        for (slot, f) in factors.iter().enumerate() {
            let mut e: Vec<usize> = factors.iter().map(|g| g.zero()).collect();
            e[slot] = f.one();
            gens.push(join(&e));
            for &g in f.generators() {
                let mut v: Vec<usize> = factors.iter().map(|h| h.zero()).collect();
                v[slot] = g;
                gens.push(join(&v));
            }
        }
        let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(" x ");
        FinRing::from_fns(
            name,
            labels,
            |a, b| {
                let (x, y) = (split(a), split(b));
                join(&x.iter().zip(&y).zip(factors).map(|((&u, &v), f)| f.add(u, v)).collect::<Vec<_>>())
            },
            |a, b| {
                let (x, y) = (split(a), split(b));
                join(&x.iter().zip(&y).zip(factors).map(|((&u, &v), f)| f.mul(u, v)).collect::<Vec<_>>())
            },
            one,
            Some(gens),
        )
    }

    /// The subring on the elements of `mask` (must contain 0, 1 and be closed).
    pub fn subring(&self, mask: &[bool]) -> Result<(FinRing, Vec<usize>)> {
        let elems: Vec<usize> = self.elements().filter(|&a| mask[a]).collect();
        let pos = |x: usize| elems.iter().position(|&e| e == x);
        for &a in &elems {
            for &b in &elems {
                if pos(self.add(a, b)).is_none() || pos(self.mul(a, b)).is_none() {
                    return Err(Error::NotARing("subset is not closed".into()));
                }
            }
        }
        let one = pos(self.one).ok_or_else(|| Error::NotARing("subset misses 1".into()))?;
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let r = FinRing::from_fns(
            format!("sub({})", self.name),
            labels,
            |a, b| pos(self.add(elems[a], elems[b])).unwrap(),
            |a, b| pos(self.mul(elems[a], elems[b])).unwrap(),
            one,
            None,
        )?;
        Ok((r, elems))
    }
}

fn poly_label(base: &FinRing, digits: &[usize], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in digits.iter().enumerate().rev() {
        if c == base.zero() {
            continue;
        }
        let coeff = base.label(c);
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            d => format!("{var}^{d}"),
        };
        terms.push(match (deg, c == base.one()) {
            (0, _) => coeff.to_string(),
            (_, true) => mono,
            _ => format!("{coeff}{mono}"),
        });
    }
    if terms.is_empty() {
        base.label(base.zero()).to_string()
    } else {
        terms.join("+")
    }
}

fn modulus_label(base: &FinRing, lower: &[usize], var: &str) -> String {
    let k = lower.len();
    let mut terms = vec![if k == 1 { var.to_string() } else { format!("{var}^{k}") }];
    let rest = poly_label(base, lower, var);
    if lower.iter().any(|&c| c != base.zero()) {
        terms.push(rest);
    }
    terms.join("+")
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime power decomposition `q = p^k`, if any.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Lower coefficients (lowest degree first) of the least monic irreducible
/// polynomial of degree `k` over `F_p`.
pub(crate) fn least_irreducible(p: usize, k: usize) -> Option<Vec<usize>> {
    // enumerate monic polynomials by their coefficient list from the leading
    // term down; the counter below runs c_{k-1}, ..., c_0 as digits with
    // c_{k-1} most significant
    let total = p.pow(k as u32);
    (0..total)
        .map(|mut i| {
            let mut lower = vec![0; k];
            for deg in 0..k {
                lower[deg] = i % p;
                i /= p;
            }
            lower
        })
        .find(|lower| is_irreducible(p, lower))
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(p: usize, lower: &[usize]) -> bool {
    let k = lower.len();
    let mut f = lower.to_vec();
    f.push(1);
    for d in 1..=k / 2 {
        for mut i in 0..p.pow(d as u32) {
            let mut g = vec![0; d + 1];
            for slot in g.iter_mut().take(d) {
                *slot = i % p;
                i /= p;
            }
            g[d] = 1;
            if poly_rem(p, &f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: usize, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * gi % p) % p;
            }
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_orders() {
        assert_eq!(FinRing::zmod(12).unwrap().order(), 12);
        let z = FinRing::zmod(1).unwrap();
        assert!(z.is_zero_ring());
        assert_eq!(z.zero(), z.one());
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f4 = FinRing::gf(2, 2).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(least_irreducible(2, 2), Some(vec![1, 1]));
        let x = f4.element("x").unwrap();
        let x1 = f4.element("x+1").unwrap();
        assert_eq!(f4.mul(x, x), x1);
        assert!(f4.elements().filter(|&a| a != f4.zero()).all(|a| f4.is_unit(a)));
    }

    #[test]
    fn least_irreducibles_match_hand_search() {
        // x^3 + x + 1 precedes x^3 + x^2 + 1
        assert_eq!(least_irreducible(2, 3), Some(vec![1, 1, 0]));
        assert_eq!(least_irreducible(2, 4), Some(vec![1, 1, 0, 0]));
        // x^2 + 1 over F_3
        assert_eq!(least_irreducible(3, 2), Some(vec![1, 0]));
        for (p, k) in [(2, 3), (2, 4), (3, 2)] {
            let f = FinRing::gf(p, k).unwrap();
            assert!(f.elements().filter(|&a| a != f.zero()).all(|a| f.is_unit(a)), "{f}");
        }
    }

    #[test]
    fn product_order_and_idempotents() {
        let r = FinRing::product(&[FinRing::zmod(4).unwrap(), FinRing::gf(2, 1).unwrap()]).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.elements().filter(|&a| r.is_idempotent(a)).count(), 4);
    }

    #[test]
    fn broken_distributivity_is_rejected() {
        // Z/2 with multiplication replaced by xnor: a unital monoid, not distributive
        let err = FinRing::from_tables("bad", vec!["0".into(), "1".into()], vec![0, 1, 1, 0], vec![1, 0, 0, 1], 1, None)
            .unwrap_err();
        assert!(matches!(err, Error::NotARing(m) if m.contains("distributivity")));
    }

    #[test]
    fn generators_generate() {
        for r in [
            FinRing::gf(2, 3).unwrap(),
            FinRing::product(&[FinRing::gf(2, 1).unwrap(), FinRing::gf(2, 2).unwrap()]).unwrap(),
        ] {
            assert!(r.generated_subring(r.generators()).iter().all(|&b| b));
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
    }
}
