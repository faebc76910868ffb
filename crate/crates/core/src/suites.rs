//! Executable property suites over the fixed catalogues.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::catalogue;
use crate::catfib::{
    comma, comprehensive_factorize, is_discrete_left_fibration, is_discrete_right_fibration, is_final, is_initial,
    slice_factorize, CommaSide, Side,
};
use crate::error::{Error, Result};
use crate::finring::{all_ideals, is_isomorphic, nilradical, prime_ideals, FinRing, Ideal, RingHom};
use crate::orth::{enumerate_functors, find_isomorphism as cat_isomorphism, is_orthogonal, FinCat, Functor};
use crate::poset::face_poset;
use crate::ringfacto::{
    classify_ring, cover_check, dom_family_maps, finite_fields, lifts_through, points_of, self_lifts, zar_family_maps, Family,
    RingSystem, RingUniverse, Topology,
};
use crate::ringspec::{check_duality, stalk};
use crate::sset::{
    deg_ndeg_factorize_ordered, find_isomorphism as sset_isomorphism, local_check, random_map, spec_delta_nis, CoverMode,
    FinSSet,
};
use crate::toposx::{
    atoms_and_orbits, burnside_count, epi_mono_gset, epi_mono_linear, line_count, necklace_count, simple_points,
    simple_quotients, FinGSet, FinGroup, FqVecSpace, GSetMap, LinearMap,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    RingOracles,
    Duality,
    Ez,
    Catfib,
    Toposx,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Axioms, Suite::RingOracles, Suite::Duality, Suite::Ez, Suite::Catfib, Suite::Toposx];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::RingOracles => "ring-oracles",
            Suite::Duality => "duality",
            Suite::Ez => "ez",
            Suite::Catfib => "catfib",
            Suite::Toposx => "toposx",
            Suite::All => "all",
        }
    }

    fn salt(self) -> u64 {
        Suite::EACH.iter().position(|&s| s == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .copied()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.property == name)
    }
}

struct Props {
    suite: &'static str,
    out: Vec<PropertyResult>,
}

impl Props {
    fn start(&mut self, property: &'static str) -> &mut PropertyResult {
        self.out.push(PropertyResult {
            suite: self.suite,
            property,
            passed: true,
            checked: 0,
            counterexample: None,
        });
        self.out.last_mut().expect("just pushed")
    }
}

impl PropertyResult {
    /// Records one case; only the first counterexample is kept.
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(what());
        }
    }

    fn at_least(&mut self, n: usize) {
        if self.passed && self.checked < n {
            self.passed = false;
            self.counterexample = Some(format!("only {} cases, {} required", self.checked, n));
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, budget: &Budget) -> Result<SuiteReport> {
    let mut properties = Vec::new();
    let which: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in which {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(s.salt()));
        let mut props = Props {
            suite: s.as_str(),
            out: Vec::new(),
        };
        match s {
            Suite::Axioms => axioms(&mut props, &mut rng, budget)?,
            Suite::RingOracles => ring_oracles(&mut props, &mut rng, budget)?,
            Suite::Duality => duality(&mut props)?,
            Suite::Ez => ez(&mut props, &mut rng, budget)?,
            Suite::Catfib => catfib(&mut props, &mut rng, budget)?,
            Suite::Toposx => toposx(&mut props, &mut rng)?,
            Suite::All => unreachable!("expanded above"),
        }
        properties.extend(props.out);
    }
    Ok(SuiteReport {
        suite,
        seed,
        passed: properties.iter().all(|p| p.passed),
        properties,
    })
}

// ---- axioms ----

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `u` transported along relabellings of its source and target.
fn relabel(u: &RingHom, rng: &mut ChaCha8Rng) -> RingHom {
    let (pa, pb) = (random_perm(u.source().order(), rng), random_perm(u.target().order(), rng));
    let a = Arc::new(u.source().permuted(&pa));
    let b = Arc::new(u.target().permuted(&pb));
    let mut map = vec![0; a.order()];
    for x in u.source().elements() {
        map[pa[x]] = pb[u.apply(x)];
    }
    RingHom::new(a, b, map).expect("relabelled hom")
}

fn axioms(props: &mut Props, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<()> {
    let rings = catalogue::rings();
    let p = props.start("catalogue-size");
    p.case(rings.len() >= 10, || format!("{} rings", rings.len()));
    for r in &rings {
        p.case(r.order() <= 16, || format!("{} has order {}", r, r.order()));
    }
    let u = RingUniverse::new(&rings, budget)?;
    for sys in RingSystem::ALL {
        let name = match sys {
            RingSystem::LocCons => "loc-cons-axioms",
            RingSystem::SurjMono => "surj-mono-axioms",
            RingSystem::IntIntclo => "int-intclo-axioms",
        };
        let report = u.verify(sys, budget)?;
        let p = props.start(name);
        for a in &report.axioms {
            let failed = a.status != crate::orth::AxiomStatus::Pass
                && !matches!(a.status, crate::orth::AxiomStatus::NotApplicable { .. });
            p.case(!failed, || format!("{}: {:?}", a.axiom, a.status));
        }
        p.checked = report.morphisms;
    }
    let p = props.start("middle-invariant-under-relabelling");
    for h in &u.homs {
        let v = relabel(h, rng);
        for sys in RingSystem::ALL {
            let (f, g) = (sys.factorize(h), sys.factorize(&v));
            let same_classes = sys.in_left(h) == sys.in_left(&v) && sys.in_right(h) == sys.in_right(&v);
            p.case(same_classes && is_isomorphic(&f.middle, &g.middle) && g.check(&v).is_ok(), || {
                format!("{sys} on {} -> {} {:?}", h.source(), h.target(), h.map())
            });
        }
    }
    Ok(())
}

// ---- ring oracles ----

/// Definitional primality: proper, and `ab ∈ p` forces `a ∈ p` or `b ∈ p`.
fn brute_force_primes(a: &FinRing) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = all_ideals(a)
        .into_iter()
        .filter(|p| {
            p.is_proper() && a.elements().all(|x| a.elements().all(|y| !p.contains(a.mul(x, y)) || p.contains(x) || p.contains(y)))
        })
        .collect();
    out.sort();
    out
}

fn ring_oracles(props: &mut Props, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<()> {
    let rings = catalogue::rings();
    let fields = finite_fields(16);
    let fat: Vec<Arc<FinRing>> = rings.iter().filter(|r| classify_ring(r).is_fat_field.holds).cloned().collect();

    let p = props.start("prime-ideals-match-brute-force");
    for a in &rings {
        let mut ps = prime_ideals(a);
        ps.sort();
        p.case(ps == brute_force_primes(a), || format!("{a}"));
    }

    let p = props.start("points-equal-primes");
    for a in &rings {
        let n = prime_ideals(a).len();
        for t in [Topology::Zar, Topology::Dom, Topology::Fin] {
            let k = points_of(a, t, budget)?.len();
            p.case(k == n, || format!("{a} {t}: {k} points, {n} primes"));
        }
    }

    const FAMILIES: usize = 200;
    let p = props.start("zar-cover-criterion");
    for _ in 0..FAMILIES {
        let a = rings.choose(rng).expect("catalogue");
        let size = rng.gen_range(0..=3);
        let xs: Vec<usize> = (0..size).map(|_| rng.gen_range(0..a.order())).collect();
        let computed = cover_check(a, &Family::Elements(xs.clone()), Topology::Zar, &fields, budget)?.covers;
        let unit_ideal = Ideal::generated(a, &xs).contains(a.one());
        let lifting = lifts_through(a, &zar_family_maps(a, &xs), &fat, budget)?;
        p.case(computed == unit_ideal && unit_ideal == lifting, || {
            format!("{a} {xs:?}: check {computed}, 1∈(a_i) {unit_ideal}, lifting {lifting}")
        });
    }
    let p = props.start("dom-cover-criterion");
    for _ in 0..FAMILIES {
        let a = rings.choose(rng).expect("catalogue");
        let ideals = all_ideals(a);
        let size = rng.gen_range(0..=3);
        let is: Vec<Ideal> = (0..size).map(|_| ideals.choose(rng).expect("ideals").clone()).collect();
        let computed = cover_check(a, &Family::Ideals(is.clone()), Topology::Dom, &fields, budget)?.covers;
        let meet = is.iter().fold(Ideal::unit(a), |acc, i| acc.intersection(i));
        let in_radical = meet.is_subset(&nilradical(a));
        let lifting = lifts_through(a, &dom_family_maps(a, &is), &fields, budget)?;
        p.case(computed == in_radical && in_radical == lifting, || {
            let shown: Vec<Vec<String>> = is.iter().map(|i| i.labels(a)).collect();
            format!("{a} {shown:?}: check {computed}, ∩I⊆√0 {in_radical}, lifting {lifting}")
        });
    }

    let p = props.start("zar-local-objects");
    for a in &rings {
        let local = classify_ring(a).is_local.holds;
        let lifts = lifts_through_all_covers(a, Topology::Zar, &fields, budget)?;
        p.case(local == lifts, || format!("{a}: local {local}, self-lifts {lifts}"));
    }
    let p = props.start("dom-local-objects");
    for a in &rings {
        let domain = classify_ring(a).is_domain.holds;
        let lifts = lifts_through_all_covers(a, Topology::Dom, &fields, budget)?;
        p.case(domain == lifts, || format!("{a}: domain {domain}, self-lifts {lifts}"));
    }

    let p = props.start("stalks-local-and-domains");
    for a in &rings {
        for q in prime_ideals(a) {
            for t in [Topology::Zar, Topology::Dom] {
                let s = stalk(a, &q, t)?;
                let r = s.check();
                p.case(r.is_ok(), || format!("{a} at {:?} ({t}): {}", q.labels(a), r.unwrap_err()));
            }
        }
    }
    let p = props.start("z12-stalks");
    let z12 = Arc::new(FinRing::zmod(12)?);
    let two = Ideal::generated(&z12, &[2]);
    for (t, expect) in [(Topology::Zar, FinRing::zmod(4)?), (Topology::Dom, FinRing::zmod(2)?)] {
        let s = stalk(&z12, &two, t)?;
        p.case(is_isomorphic(&s.ring, &expect), || format!("stalk at (2), {t}: {}", s.ring));
    }
    Ok(())
}

/// Members are the distinct maps of the topology (localizations at single
/// elements, or quotients by ideals, deduplicated by kernel); every subset
/// that covers is tested. A family self-lifts iff one member has a section.
fn lifts_through_all_covers(a: &Arc<FinRing>, t: Topology, fields: &[Arc<FinRing>], budget: &Budget) -> Result<bool> {
    let members: Vec<(Family, RingHom)> = match t {
        Topology::Zar => {
            let mut seen: Vec<Ideal> = Vec::new();
            let mut out = Vec::new();
            for x in a.elements() {
                let m = zar_family_maps(a, &[x]).remove(0);
                if !seen.contains(&m.kernel()) {
                    seen.push(m.kernel());
                    out.push((Family::Elements(vec![x]), m));
                }
            }
            out
        }
        _ => all_ideals(a)
            .into_iter()
            .map(|i| {
                let m = dom_family_maps(a, std::slice::from_ref(&i)).remove(0);
                (Family::Ideals(vec![i]), m)
            })
            .collect(),
    };
    let sections: Vec<bool> = members
        .iter()
        .map(|(_, m)| self_lifts(a, std::slice::from_ref(m), budget))
        .collect::<Result<_>>()?;
    let n = members.len();
    for mask in 0u32..(1u32 << n) {
        budget.tick()?;
        let chosen: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let fam = match t {
            Topology::Zar => Family::Elements(
                chosen
                    .iter()
                    .flat_map(|&i| match &members[i].0 {
                        Family::Elements(x) => x.clone(),
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
            _ => Family::Ideals(
                chosen
                    .iter()
                    .flat_map(|&i| match &members[i].0 {
                        Family::Ideals(x) => x.clone(),
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
        };
        if cover_check(a, &fam, t, fields, budget)?.covers && !chosen.iter().any(|&i| sections[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---- duality ----

fn duality(props: &mut Props) -> Result<()> {
    let p = props.start("duality-catalogue");
    for a in catalogue::duality_rings() {
        let d = check_duality(&a)?;
        p.case(d.holds && d.witness.is_some(), || format!("{a}"));
    }
    let p = props.start("duality-named-rings");
    let named = [
        FinRing::zmod(12)?,
        FinRing::zmod(36)?,
        FinRing::zmod(8)?,
        FinRing::product(&[FinRing::zmod(2)?, FinRing::gf(2, 2)?])?,
    ];
    for a in named {
        let a = Arc::new(a);
        let d = check_duality(&a)?;
        p.case(d.holds && d.witness.is_some(), || format!("{a}"));
    }
    Ok(())
}

// ---- simplicial sets ----

pub const SSET_DIM: usize = 5;

fn ez(props: &mut Props, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<()> {
    let corpus = catalogue::ssets(SSET_DIM);
    let p = props.start("ez-unique-decomposition");
    for x in &corpus {
        for m in 0..=x.dim() {
            for s in 0..x.count(m) {
                let pairs = x.ez_pairs(m, s);
                let ez = x.eilenberg_zilber(m, s);
                let ok = pairs.len() == 1
                    && pairs[0] == (ez.surjection.clone(), ez.nondeg)
                    && x.act(ez.dim, ez.nondeg, &ez.surjection) == s;
                p.case(ok, || format!("{} {m}-simplex {s}: {} decompositions", x.name(), pairs.len()));
            }
        }
    }
    let objects = corpus.len();
    let p = props.start("ez-corpus-size");
    p.case(objects >= 20, || format!("{objects} objects"));

    let p = props.start("face-poset-of-simplex");
    for n in 0..=4 {
        let sp = spec_delta_nis(&FinSSet::delta(n, SSET_DIM)?);
        let ok = sp.len() == (1 << (n + 1)) - 1 && sp.find_isomorphism(&face_poset(n)).is_some();
        p.case(ok, || format!("Δ[{n}]: {} elements", sp.len()));
    }

    let p = props.start("deg-ndeg-factorization");
    let small: Vec<&Arc<FinSSet>> = corpus.iter().filter(|x| x.nondegenerate_count() <= 30).collect();
    let mut tries = 0;
    while p.checked < 24 && tries < 500 {
        tries += 1;
        let y = *small.choose(rng).expect("corpus");
        let x = *small.choose(rng).expect("corpus");
        let Some(f) = random_map(y, x, rng, budget)? else { continue };
        let (s1, s2) = (rng.gen::<u64>(), rng.gen::<u64>());
        let a = deg_ndeg_factorize_ordered(&f, Some(s1))?;
        let b = deg_ndeg_factorize_ordered(&f, Some(s2))?;
        let ok = a.composite().same_tables(&f)
            && b.composite().same_tables(&f)
            && a.right.is_nondegenerate_map()
            && b.right.is_nondegenerate_map()
            && a.left.is_surjective()
            && sset_isomorphism(&a.middle, &b.middle, budget)?.is_some();
        p.case(ok, || format!("{} -> {} with orders {s1}, {s2}", y.name(), x.name()));
    }
    p.at_least(20);

    let regular: Vec<Arc<FinSSet>> = corpus.iter().filter(|x| x.is_regular()).cloned().collect();
    let pool: Vec<Arc<FinSSet>> = regular.iter().filter(|x| x.nondegenerate_count() <= 16).cloned().collect();
    let p = props.start("delta-nis-local-objects");
    for x in &regular {
        let local = local_check(x, CoverMode::DeltaNis, &pool, budget)?.local;
        let simplex = is_a_simplex(x, budget)?;
        p.case(local == simplex, || format!("{}: local {local}, simplex {simplex}", x.name()));
    }
    let p = props.start("raw-local-objects");
    let point = Arc::new(FinSSet::delta(0, SSET_DIM)?);
    for x in &regular {
        let local = local_check(x, CoverMode::Raw, &pool, budget)?.local;
        let is_point = sset_isomorphism(x, &point, budget)?.is_some();
        p.case(local == is_point, || format!("{}: local {local}, point {is_point}", x.name()));
    }
    Ok(())
}

fn is_a_simplex(x: &Arc<FinSSet>, budget: &Budget) -> Result<bool> {
    let Some(top) = x.top_dim() else { return Ok(false) };
    let d = Arc::new(FinSSet::delta(top, x.dim())?);
    Ok(sset_isomorphism(x, &d, budget)?.is_some())
}

// ---- categories ----

fn catfib(props: &mut Props, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<()> {
    let cats = catalogue::categories();
    let p = props.start("slice-legs");
    for c in &cats {
        for o in 0..c.num_objects() {
            for side in [Side::Right, Side::Left] {
                let s = slice_factorize(c, o, side)?;
                let ok = match side {
                    Side::Right => is_discrete_right_fibration(&s.projection) && is_final(&s.point)?,
                    Side::Left => is_discrete_left_fibration(&s.projection) && is_initial(&s.point)?,
                };
                p.case(ok, || format!("{} at {} ({side})", c.objects().join(","), c.object_name(o)));
            }
        }
    }

    let p = props.start("object-case-is-slice");
    for c in &cats {
        for o in 0..c.num_objects() {
            let f = Functor::new(Arc::new(FinCat::terminal()), c.clone(), vec![o], vec![c.id(o)])?;
            let fac = comprehensive_factorize(&f, Side::Right)?;
            let s = slice_factorize(c, o, Side::Right)?;
            let iso = cat_isomorphism(&fac.middle.total, &s.comma.cat, Some((&fac.second, &s.projection)), budget)?;
            p.case(iso.is_some(), || format!("{} at {}", c.objects().join(","), c.object_name(o)));
        }
    }

    let mut functors: Vec<Functor> = Vec::new();
    let mut tries = 0;
    while functors.len() < 40 && tries < 400 {
        tries += 1;
        let (c, d) = (cats.choose(rng).expect("catalogue"), cats.choose(rng).expect("catalogue"));
        let all = enumerate_functors(c, d, budget)?;
        if let Some(f) = all.choose(rng) {
            functors.push(f.clone());
        }
    }
    let p = props.start("comprehensive-factorization");
    for f in &functors {
        for side in [Side::Right, Side::Left] {
            let fac = comprehensive_factorize(f, side)?;
            let legs = match side {
                Side::Right => is_final(&fac.first)? && is_discrete_right_fibration(&fac.second),
                Side::Left => is_initial(&fac.first)? && is_discrete_left_fibration(&fac.second),
            };
            let exact = fac.composite()?.same_maps(f);
            p.case(legs && exact, || format!("{f:?} ({side}): legs {legs}, composite exact {exact}"));
        }
    }
    p.at_least(60);

    let p = props.start("fibration-duality-law");
    for f in &functors {
        let op = f.opposite();
        let ok = is_final(f)? == is_initial(&op)?
            && is_initial(f)? == is_final(&op)?
            && is_discrete_right_fibration(f) == is_discrete_left_fibration(&op)
            && is_discrete_left_fibration(f) == is_discrete_right_fibration(&op);
        p.case(ok, || format!("{f:?}"));
    }

    let p = props.start("comma-of-identity-is-slice");
    for c in &cats {
        let id = Functor::identity(c.clone());
        for o in 0..c.num_objects() {
            let over = comma(&id, o, CommaSide::Over)?;
            let n: usize = (0..c.num_objects()).map(|x| c.hom(x, o).len()).sum();
            p.case(over.cat.num_objects() == n, || format!("{} at {}", c.objects().join(","), c.object_name(o)));
        }
    }

    final_orthogonality(props.start("final-orthogonal-to-drfib"), budget)?;
    Ok(())
}

/// Every final functor is orthogonal to every discrete right fibration in
/// the category of all functors among a few small categories.
fn final_orthogonality(p: &mut PropertyResult, budget: &Budget) -> Result<()> {
    let cats = catalogue::categories();
    let small: Vec<Arc<FinCat>> = cats.into_iter().filter(|c| c.num_morphisms() <= 5).take(6).collect();
    let n = small.len();
    let mut homs: Vec<Vec<Vec<(Vec<usize>, Vec<usize>)>>> = vec![vec![Vec::new(); n]; n];
    let mut functors: Vec<Vec<Vec<Functor>>> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let fs = enumerate_functors(&small[a], &small[b], budget)?;
            homs[a][b] = fs.iter().map(|f| (f.obj_map.clone(), f.mor_map.clone())).collect();
            functors[a][b] = fs;
        }
    }
    let (universe, values) = FinCat::from_concrete(
        (0..n).map(|i| format!("C{i}")).collect(),
        homs,
        |a| ((0..small[a].num_objects()).collect(), (0..small[a].num_morphisms()).collect()),
        |g: &(Vec<usize>, Vec<usize>), f: &(Vec<usize>, Vec<usize>)| {
            (f.0.iter().map(|&x| g.0[x]).collect(), f.1.iter().map(|&x| g.1[x]).collect())
        },
        |a, b, v| format!("C{a}->C{b} {:?} {:?}", v.0, v.1),
    )?;
    let functor_of = |m: usize| {
        let (a, b) = (universe.src(m), universe.tgt(m));
        Functor::new(small[a].clone(), small[b].clone(), values[m].0.clone(), values[m].1.clone())
    };
    let mut finals = Vec::new();
    let mut fibs = Vec::new();
    for m in 0..universe.num_morphisms() {
        let f = functor_of(m)?;
        if is_final(&f)? {
            finals.push(m);
        }
        if is_discrete_right_fibration(&f) {
            fibs.push(m);
        }
    }
    for &u in &finals {
        for &f in &fibs {
            let ok = is_orthogonal(&universe, u, f, budget)?;
            p.case(ok, || format!("{} ⊥ {}", universe.morphism_name(u), universe.morphism_name(f)));
        }
    }
    Ok(())
}

// ---- G-sets and vector spaces ----

fn toposx(props: &mut Props, rng: &mut ChaCha8Rng) -> Result<()> {
    let p = props.start("orbit-counts");
    for n in 1..=4 {
        for k in [2, 3, 4] {
            let x = FinGSet::necklaces(n, k)?;
            let scanned = atoms_and_orbits(&x).len();
            let closed = necklace_count(n, k);
            p.case(scanned == closed && burnside_count(&x) == closed, || {
                format!("necklaces n={n} k={k}: scan {scanned}, closed form {closed}")
            });
        }
    }
    let p = props.start("atoms-are-transitive-subsets");
    for x in [FinGSet::necklaces(3, 2)?, FinGSet::necklaces(4, 2)?, gset_s3_on_pairs()?] {
        let orbits = atoms_and_orbits(&x);
        let mut reported: Vec<Vec<usize>> = orbits.iter().map(|o| o.elements.clone()).collect();
        reported.sort();
        let mut transitive: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1u32 << x.len()) {
            let sub: Vec<usize> = (0..x.len()).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = sub.iter().all(|&e| (0..x.group().order()).all(|g| sub.contains(&x.act(e, g))));
            if closed && x.orbit(sub[0]).len() == sub.len() {
                transitive.push(sub);
            }
        }
        transitive.sort();
        let flags = orbits.iter().all(|o| o.transitive && o.atom);
        p.case(flags && reported == transitive, || format!("{} elements", x.len()));
    }

    let p = props.start("line-counts");
    for q in [2, 3, 4] {
        for n in 1..=4 {
            let v = FqVecSpace::new(q, n)?;
            // distinct spans of nonzero vectors, independently of normalization
            let mut spans: Vec<Vec<usize>> = (0..v.len()).filter(|&x| x != v.zero()).map(|x| v.span(&[x])).collect();
            spans.sort();
            spans.dedup();
            let closed = line_count(q, n);
            let pts = simple_points(&v);
            let ok = spans.len() == closed
                && pts.len() == closed + 1
                && pts.bottom() == Some(0)
                && simple_quotients(&v).len() == closed + 1;
            p.case(ok, || format!("q={q} n={n}: {} lines, closed form {closed}", spans.len()));
        }
    }

    let p = props.start("epi-mono-gset");
    for g in [FinGroup::cyclic(2)?, FinGroup::cyclic(3)?, FinGroup::symmetric(3)?] {
        let g = Arc::new(g);
        let reg = FinGSet::regular(g.clone());
        let src = Arc::new(FinGSet::disjoint_union(&reg, &reg)?);
        let targets = [
            FinGSet::disjoint_union(&reg, &FinGSet::trivial(g.clone(), 2))?,
            FinGSet::trivial(g.clone(), 3),
            reg.clone(),
        ];
        for t in targets {
            let t = Arc::new(t);
            for _ in 0..4 {
                let (x1, x2) = (rng.gen_range(0..t.len()), rng.gen_range(0..t.len()));
                let k = g.order();
                let map = (0..src.len()).map(|i| t.act(if i < k { x1 } else { x2 }, i % k)).collect();
                let f = GSetMap::new(src.clone(), t.clone(), map)?;
                let fac = epi_mono_gset(&f)?;
                let mut image = f.map.clone();
                image.sort_unstable();
                image.dedup();
                let ok = fac.surjection.is_surjective()
                    && fac.injection.is_injective()
                    && fac.surjection.then(&fac.injection) == f.map
                    && fac.image.len() == image.len();
                p.case(ok, || format!("{} into {} elements", g.name(), t.len()));
            }
        }
    }
    let p = props.start("epi-mono-linear");
    for q in [2, 3, 4] {
        for _ in 0..6 {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let v = Arc::new(FqVecSpace::new(q, n)?);
            let w = Arc::new(FqVecSpace::over(v.field().clone(), m));
            let cols: Vec<Vec<usize>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..q)).collect()).collect();
            let f = LinearMap::from_columns(v, w.clone(), &cols)?;
            let fac = epi_mono_linear(&f)?;
            let mut image = f.table.clone();
            image.sort_unstable();
            image.dedup();
            let ok = fac.surjection.is_surjective()
                && fac.injection.is_injective()
                && fac.surjection.then(&fac.injection) == f.table
                && q.pow(fac.image.dim() as u32) == image.len();
            p.case(ok, || format!("q={q} columns {cols:?}"));
        }
    }
    Ok(())
}

/// `S3` acting on the 2-element subsets of `{0,1,2}` together with the 6 ordered pairs.
fn gset_s3_on_pairs() -> Result<FinGSet> {
    let g = Arc::new(FinGroup::symmetric(3)?);
    let perms: Vec<Vec<usize>> = g.labels().iter().map(|l| l.bytes().map(|b| (b - b'0') as usize).collect()).collect();
    let mut pts: Vec<Vec<usize>> = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            pts.push(vec![a, b]);
        }
    }
    let pairs_start = pts.len();
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                pts.push(vec![a, b]);
            }
        }
    }
    let carrier = pts.iter().map(|p| format!("{p:?}")).collect();
    let g2 = g.clone();
    FinGSet::from_fn(g, carrier, |x, h| {
        // right action through the inverse permutation
        let inv = &perms[g2.inverse(h)];
        let mut img: Vec<usize> = pts[x].iter().map(|&v| inv[v]).collect();
        if x < pairs_start {
            img.sort_unstable();
            pts[..pairs_start].iter().position(|p| *p == img).expect("subset")
        } else {
            pairs_start + pts[pairs_start..].iter().position(|p| *p == img).expect("pair")
        }
    })
}
