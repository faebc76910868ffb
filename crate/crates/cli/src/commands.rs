use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use facto_core::catalogue;
use facto_core::catfib::{
    comprehensive_factorize, is_discrete_left_fibration, is_discrete_right_fibration, is_final, is_initial,
    right_cover_check, Side,
};
use facto_core::error::Error;
use facto_core::finring::{canonical_isomorphism, prime_ideals, ElemRef, FinRing, HomDesc, Ideal, RingDesc, RingHom};
use facto_core::orth::{orthogonality_witness, squares, CategoryDesc, FinCat, Functor, FunctorDesc};
use facto_core::ringfacto::{
    classify_ring, cover_check, finite_fields, points_of, triple_factorize, Family, RingSystem, RingUniverse, Topology,
};
use facto_core::ringspec::{check_duality, dom_lattice, spec_points, zar_lattice};
use facto_core::sset::{
    build_map, cover_check as sset_cover_check, deg_ndeg_factorize, find_isomorphism, local_check, spec_delta_nis,
    spec_raw, CoverMode, FinSSet, SSetDesc, SSetMapDesc, SimplexRef,
};
use facto_core::suites::run_suite;
use facto_core::toposx::{
    atoms_and_orbits, epi_mono_gset, epi_mono_linear, orbit_poset, simple_points, simple_quotients, GSetDesc,
    GSetMapDesc, LinearMapDesc, VecSpaceDesc,
};

use crate::error::CliError;
use crate::input::{load, Loaded};
use crate::render;
use crate::{Command, CoverTopology, FactorSystem, Outcome, RunConfig, SSetTopology, SpecTopology};

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::Factorize { system, hom } => factorize(*system, hom),
        Command::Classify {
            ring,
            object,
            functor,
            topology,
        } => match (ring, object, functor) {
            (Some(p), None, None) => classify_ring_file(p, cfg),
            (None, Some(p), None) => classify_sset(p, *topology, cfg),
            (None, None, Some(p)) => classify_functor(p),
            _ => Err(CliError::Usage("classify needs exactly one of --ring, --object or --functor".into())),
        },
        Command::Cover { topology, base, family } => cover(*topology, base, family, cfg),
        Command::Spectrum {
            topology,
            object,
            lattice,
        } => spectrum(*topology, object, *lattice, cfg),
        Command::Orthogonal { category, u, f } => match category {
            Some(c) => orthogonal_in_category(c, u, f, cfg),
            None => orthogonal_rings(Path::new(u), Path::new(f), cfg),
        },
        Command::Verify { suite } => {
            let report = run_suite((*suite).into(), cfg.seed, &cfg.budget)?;
            Ok(json_only(serde_json::to_value(report).expect("serializable")))
        }
    }
}

fn json_only(result: Value) -> Outcome {
    Outcome { result, dot: None }
}

/// A functor file spells out both categories.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorFile {
    source: CategoryDesc,
    target: CategoryDesc,
    obj_map: BTreeMap<String, String>,
    #[serde(default)]
    mor_map: BTreeMap<String, String>,
}

impl FunctorFile {
    fn build(self) -> Result<Functor, CliError> {
        let s = Arc::new(FinCat::from_desc(&self.source)?);
        let t = Arc::new(FinCat::from_desc(&self.target)?);
        let desc = FunctorDesc {
            obj_map: self.obj_map,
            mor_map: self.mor_map,
        };
        Ok(Functor::from_desc(s, t, &desc)?)
    }
}


fn load_ring(p: &Path) -> Result<Arc<FinRing>, CliError> {
    let d: RingDesc = load(p)?;
    Ok(Arc::new(d.build()?))
}

fn load_sset(p: &Path) -> Result<Arc<FinSSet>, CliError> {
    let d: SSetDesc = load(p)?;
    Ok(Arc::new(d.build()?))
}

// ---- factorize ----

fn factorize(system: FactorSystem, path: &Path) -> Result<Outcome, CliError> {
    let ring_system = match system {
        FactorSystem::LocCons => Some(RingSystem::LocCons),
        FactorSystem::SurjMono => Some(RingSystem::SurjMono),
        FactorSystem::IntIntclo => Some(RingSystem::IntIntclo),
        _ => None,
    };
    if let Some(sys) = ring_system {
        let u = load::<HomDesc>(path)?.build()?;
        let f = sys.factorize(&u);
        let check = f.check(&u);
        return Ok(json_only(json!({
            "system": sys.as_str(),
            "input": render::hom(&u),
            "left": render::hom(&f.left),
            "middle": render::ring_with_table(&f.middle),
            "right": render::hom(&f.right),
            "left_in_class": sys.in_left(&f.left),
            "right_in_class": sys.in_right(&f.right),
            "composite_exact": f.composite().map() == u.map(),
            "check": check.err(),
        })));
    }
    match system {
        FactorSystem::Triple => {
            let u = load::<HomDesc>(path)?.build()?;
            let t = triple_factorize(&u);
            Ok(json_only(json!({
                "system": "triple",
                "input": render::hom(&u),
                "surj": render::hom(&t.surj),
                "monoint": render::hom(&t.monoint),
                "intclo": render::hom(&t.intclo),
                "middles": [render::ring(t.surj.target()), render::ring(t.monoint.target())],
                "composite_exact": t.composite().map() == u.map(),
            })))
        }
        FactorSystem::DegNdeg => {
            let f = load::<SSetMapDesc>(path)?.build()?;
            let fac = deg_ndeg_factorize(&f)?;
            Ok(json_only(json!({
                "system": "deg-ndeg",
                "input": render::sset_map(&f),
                "left": render::sset_map(&fac.left),
                "middle": render::sset(&fac.middle),
                "right": render::sset_map(&fac.right),
                "left_surjective": fac.left.is_surjective(),
                "right_nondegenerate": fac.right.is_nondegenerate_map(),
                "composite_exact": fac.composite().same_tables(&f),
            })))
        }
        FactorSystem::FinDrfib | FactorSystem::IniDlfib => {
            let side = if system == FactorSystem::FinDrfib { Side::Right } else { Side::Left };
            let f = load::<FunctorFile>(path)?.build()?;
            let fac = comprehensive_factorize(&f, side)?;
            let (first_ok, second_ok) = match side {
                Side::Right => (is_final(&fac.first)?, is_discrete_right_fibration(&fac.second)),
                Side::Left => (is_initial(&fac.first)?, is_discrete_left_fibration(&fac.second)),
            };
            let sets: BTreeMap<&str, usize> = (0..f.target.num_objects())
                .map(|d| (f.target.object_name(d), fac.middle.sets[d].len()))
                .collect();
            Ok(json_only(json!({
                "system": if side == Side::Right { "fin-drfib" } else { "ini-dlfib" },
                "input": render::functor(&f),
                "first": render::functor(&fac.first),
                "middle": { "category": render::category(&fac.middle.total), "components": sets },
                "second": render::functor(&fac.second),
                "first_in_class": first_ok,
                "second_in_class": second_ok,
                "composite_exact": fac.composite()?.same_maps(&f),
            })))
        }
        FactorSystem::EpiMono => {
            let file = Loaded::read(path)?;
            if !file.has_key("columns") {
                let f = file.parse::<GSetMapDesc>()?.build()?;
                let fac = epi_mono_gset(&f)?;
                Ok(json_only(json!({
                    "system": "epi-mono",
                    "input": render::gset_map(&f),
                    "surjection": render::gset_map(&fac.surjection),
                    "image": render::gset(&fac.image),
                    "injection": render::gset_map(&fac.injection),
                    "composite_exact": fac.surjection.then(&fac.injection) == f.map,
                })))
            } else {
                let f = file.parse::<LinearMapDesc>()?.build()?;
                let fac = epi_mono_linear(&f)?;
                let basis: Vec<String> = fac.basis.iter().map(|&b| f.target.label(b)).collect();
                Ok(json_only(json!({
                    "system": "epi-mono",
                    "input": render::linear_map(&f),
                    "surjection": render::linear_map(&fac.surjection),
                    "image": { "rank": fac.image.dim(), "basis": basis },
                    "injection": render::linear_map(&fac.injection),
                    "composite_exact": fac.surjection.then(&fac.injection) == f.table,
                })))
            }
        }
        _ => unreachable!("ring systems handled above"),
    }
}

// ---- classify ----

fn classify_ring_file(path: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = load_ring(path)?;
    let primes: Vec<Vec<String>> = prime_ideals(&a).iter().map(|p| p.labels(&a)).collect();
    let mut points = BTreeMap::new();
    for t in Topology::ALL {
        points.insert(t.as_str(), points_of(&a, t, &cfg.budget)?.len());
    }
    Ok(json_only(json!({
        "ring": render::ring(&a),
        "classification": classify_ring(&a),
        "primes": primes,
        "points": points,
        "duality": check_duality(&a)?,
    })))
}

fn sset_mode(t: SSetTopology) -> CoverMode {
    match t {
        SSetTopology::DeltaNis => CoverMode::DeltaNis,
        SSetTopology::Raw => CoverMode::Raw,
    }
}

/// Cover pool for the local check: the regular catalogue objects with at most
/// 16 nondegenerate simplices, at the truncation of `x`.
fn sset_pool(x: &FinSSet) -> Vec<Arc<FinSSet>> {
    catalogue::ssets(x.dim())
        .into_iter()
        .filter(|y| y.is_regular() && y.nondegenerate_count() <= 16)
        .collect()
}

fn classify_sset(path: &Path, t: SSetTopology, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let x = load_sset(path)?;
    let mode = sset_mode(t);
    let report = local_check(&x, mode, &sset_pool(&x), &cfg.budget)?;
    let simplex = match x.top_dim() {
        Some(n) => {
            let d = Arc::new(FinSSet::delta(n, x.dim())?);
            find_isomorphism(&x, &d, &cfg.budget)?.map(|_| n)
        }
        None => None,
    };
    Ok(json_only(json!({
        "object": render::sset(&x),
        "mode": mode.as_str(),
        "local": report,
        "isomorphic_to_simplex": simplex,
    })))
}

fn classify_functor(path: &Path) -> Result<Outcome, CliError> {
    let f = load::<FunctorFile>(path)?.build()?;
    Ok(json_only(json!({
        "functor": render::functor(&f),
        "final": is_final(&f)?,
        "initial": is_initial(&f)?,
        "discrete_right_fibration": is_discrete_right_fibration(&f),
        "discrete_left_fibration": is_discrete_left_fibration(&f),
    })))
}

// ---- cover ----

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFields {
    elements: Option<Vec<ElemRef>>,
    ideals: Option<Vec<Vec<ElemRef>>>,
    homs: Option<Vec<MemberHom>>,
    maps: Option<Vec<MemberMap>>,
    functors: Option<Vec<MemberFunctor>>,
}

/// A hom out of the base ring.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberHom {
    target: RingDesc,
    #[serde(default)]
    images: Option<BTreeMap<String, ElemRef>>,
    #[serde(default)]
    map: Option<Vec<ElemRef>>,
}

/// A simplicial map into the base.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberMap {
    source: SSetDesc,
    images: BTreeMap<String, BTreeMap<String, SimplexRef>>,
}

/// A functor into the base category.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberFunctor {
    source: CategoryDesc,
    obj_map: BTreeMap<String, String>,
    #[serde(default)]
    mor_map: BTreeMap<String, String>,
}

/// A bare list is a zar family of elements, a list of lists a dom family
/// of ideal generators.
fn read_family(path: &Path) -> Result<FamilyFields, CliError> {
    let file = Loaded::read(path)?;
    match &file.value {
        Value::Array(items) if items.first().is_some_and(Value::is_array) => Ok(FamilyFields {
            ideals: Some(file.parse()?),
            ..FamilyFields::default()
        }),
        Value::Array(_) => Ok(FamilyFields {
            elements: Some(file.parse()?),
            ..FamilyFields::default()
        }),
        _ => file.parse(),
    }
}

fn missing(what: &str, topology: &str) -> CliError {
    CliError::Usage(format!("a {topology} family file needs `{what}`"))
}

fn cover(t: CoverTopology, base: &Path, family: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fam = read_family(family)?;
    match t {
        CoverTopology::Zar | CoverTopology::Dom | CoverTopology::Fin | CoverTopology::Nfin => {
            let desc: RingDesc = load(base)?;
            let a = Arc::new(desc.build()?);
            let (topology, family) = match t {
                CoverTopology::Zar => {
                    let xs = fam.elements.ok_or_else(|| missing("elements", "zar"))?;
                    let xs = xs.iter().map(|x| x.resolve(&a)).collect::<Result<Vec<_>, Error>>()?;
                    (Topology::Zar, Family::Elements(xs))
                }
                CoverTopology::Dom => {
                    let is = fam.ideals.ok_or_else(|| missing("ideals", "dom"))?;
                    let is = is
                        .iter()
                        .map(|gens| {
                            let g = gens.iter().map(|x| x.resolve(&a)).collect::<Result<Vec<_>, Error>>()?;
                            Ok(Ideal::generated(&a, &g))
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    (Topology::Dom, Family::Ideals(is))
                }
                _ => {
                    let name = if t == CoverTopology::Fin { "fin" } else { "nfin" };
                    let hs = fam.homs.ok_or_else(|| missing("homs", name))?;
                    let hs = hs
                        .into_iter()
                        .map(|h| {
                            HomDesc {
                                source: desc.clone(),
                                target: h.target,
                                images: h.images,
                                map: h.map,
                            }
                            .build()
                        })
                        .collect::<Result<Vec<RingHom>, Error>>()?;
                    let topology = if t == CoverTopology::Fin { Topology::Fin } else { Topology::Nfin };
                    (topology, Family::Homs(hs))
                }
            };
            let fields = finite_fields(cfg.field_bound);
            let r = cover_check(&a, &family, topology, &fields, &cfg.budget)?;
            Ok(json_only(serde_json::to_value(r).expect("serializable")))
        }
        CoverTopology::DeltaNis | CoverTopology::Raw => {
            let x = load_sset(base)?;
            let maps = fam.maps.ok_or_else(|| missing("maps", "simplicial"))?;
            let family = maps
                .into_iter()
                .map(|m| build_map(Arc::new(m.source.build()?), x.clone(), &m.images))
                .collect::<Result<Vec<_>, Error>>()?;
            let mode = if t == CoverTopology::Raw { CoverMode::Raw } else { CoverMode::DeltaNis };
            let r = sset_cover_check(&x, &family, mode)?;
            Ok(json_only(serde_json::to_value(r).expect("serializable")))
        }
        CoverTopology::FinDrfib | CoverTopology::IniDlfib => {
            let side = if t == CoverTopology::FinDrfib { Side::Right } else { Side::Left };
            let desc: CategoryDesc = load(base)?;
            let c = Arc::new(FinCat::from_desc(&desc)?);
            let fs = fam.functors.ok_or_else(|| missing("functors", "categorical"))?;
            let family = fs
                .into_iter()
                .map(|m| {
                    let s = Arc::new(FinCat::from_desc(&m.source)?);
                    Functor::from_desc(
                        s,
                        c.clone(),
                        &FunctorDesc {
                            obj_map: m.obj_map,
                            mor_map: m.mor_map,
                        },
                    )
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let covers = right_cover_check(&c, &family, side)?;
            Ok(json_only(json!({ "covers": covers })))
        }
    }
}

// ---- spectrum ----

fn spectrum(t: SpecTopology, path: &Path, lattice: bool, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ring_topology = match t {
        SpecTopology::Zar => Some(Topology::Zar),
        SpecTopology::Dom => Some(Topology::Dom),
        SpecTopology::Fin => Some(Topology::Fin),
        SpecTopology::Nfin => Some(Topology::Nfin),
        _ => None,
    };
    if lattice && !matches!(t, SpecTopology::Zar | SpecTopology::Dom) {
        return Err(CliError::Usage("--lattice applies to zar and dom only".into()));
    }
    if let Some(topology) = ring_topology {
        let a = load_ring(path)?;
        let title = format!("{}({})", topology, a.name());
        if lattice {
            let l = if topology == Topology::Zar { zar_lattice(&a)? } else { dom_lattice(&a)? };
            return Ok(Outcome {
                result: serde_json::to_value(l.to_json(&a)).expect("serializable"),
                dot: Some(l.poset.to_dot(&title)),
            });
        }
        let s = spec_points(&a, topology, &cfg.budget)?;
        return Ok(Outcome {
            result: serde_json::to_value(s.to_json(&a)).expect("serializable"),
            dot: Some(s.poset.to_dot(&title)),
        });
    }
    match t {
        SpecTopology::DeltaNis | SpecTopology::Raw => {
            let x = load_sset(path)?;
            let (p, mode) = if t == SpecTopology::Raw {
                (spec_raw(&x), CoverMode::Raw)
            } else {
                (spec_delta_nis(&x), CoverMode::DeltaNis)
            };
            let title = format!("{}({})", mode, x.name());
            Ok(Outcome {
                result: render::poset(&p),
                dot: Some(p.to_dot(&title)),
            })
        }
        SpecTopology::EpiMono => {
            let file = Loaded::read(path)?;
            if file.has_key("group") {
                let x = file.parse::<GSetDesc>()?.build()?;
                let p = orbit_poset(&x);
                let mut result = render::poset(&p);
                result["orbits"] = serde_json::to_value(atoms_and_orbits(&x)).expect("serializable");
                Ok(Outcome {
                    result,
                    dot: Some(p.to_dot("orbits")),
                })
            } else {
                let v = file.parse::<VecSpaceDesc>()?.build()?;
                let p = simple_points(&v);
                let mut result = render::poset(&p);
                result["quotients"] = render::poset(&simple_quotients(&v));
                Ok(Outcome {
                    result,
                    dot: Some(p.to_dot(&format!("lines(F_{}^{})", v.q(), v.dim()))),
                })
            }
        }
        _ => unreachable!("ring topologies handled above"),
    }
}

// ---- orthogonal ----

fn orthogonal_in_category(path: &Path, u: &str, f: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let desc: CategoryDesc = load(path)?;
    let c = FinCat::from_desc(&desc)?;
    let find = |name: &str| {
        c.morphism_index(name)
            .ok_or_else(|| CliError::Usage(format!("no morphism {name:?} in {}", path.display())))
    };
    let (u, f) = (find(u)?, find(f)?);
    let names = |ms: &[usize]| ms.iter().map(|&m| c.morphism_name(m).to_string()).collect::<Vec<_>>();
    orthogonality_report(&c, u, f, cfg, &names)
}

fn orthogonality_report(
    c: &FinCat,
    u: usize,
    f: usize,
    cfg: &RunConfig,
    names: &dyn Fn(&[usize]) -> Vec<String>,
) -> Result<Outcome, CliError> {
    let count = squares(c, u, f, &cfg.budget)?.len();
    let witness = orthogonality_witness(c, u, f, &cfg.budget)?.map(|(sq, lifts)| {
        json!({
            "top": names(&[sq.top])[0],
            "bottom": names(&[sq.bottom])[0],
            "lifts": names(&lifts),
        })
    });
    Ok(json_only(json!({
        "u": names(&[u])[0],
        "f": names(&[f])[0],
        "squares": count,
        "orthogonal": witness.is_none(),
        "witness": witness,
    })))
}

/// The universe of all homs among the rings involved (and their quotients);
/// a hom whose rings were merged with isomorphic ones is transported.
fn orthogonal_rings(u_path: &Path, f_path: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let u = load::<HomDesc>(u_path)?.build()?;
    let f = load::<HomDesc>(f_path)?.build()?;
    let seeds = [u.source().clone(), u.target().clone(), f.source().clone(), f.target().clone()];
    let universe = RingUniverse::new(&seeds, &cfg.budget)?;
    let locate = |h: &RingHom| -> Result<usize, CliError> {
        let lost = || CliError::Core(Error::InvalidSpec("hom is not in the ring universe".into()));
        let s = universe.object_of(h.source()).ok_or_else(lost)?;
        let t = universe.object_of(h.target()).ok_or_else(lost)?;
        let into = canonical_isomorphism(h.source(), &universe.rings[s]).ok_or_else(lost)?;
        let out = canonical_isomorphism(h.target(), &universe.rings[t]).ok_or_else(lost)?;
        let moved = into.inverse().ok_or_else(lost)?.then(h).then(&out);
        universe.morphism_of(&moved).ok_or_else(lost)
    };
    let (ui, fi) = (locate(&u)?, locate(&f)?);
    let names = |ms: &[usize]| {
        ms.iter()
            .map(|&m| {
                let h = &universe.homs[m];
                let map: Vec<&str> = h.map().iter().map(|&y| h.target().label(y)).collect();
                format!("{} -> {} [{}]", h.source().name(), h.target().name(), map.join(","))
            })
            .collect::<Vec<_>>()
    };
    let mut out = orthogonality_report(&universe.cat, ui, fi, cfg, &names)?;
    out.result["universe"] = json!(universe.rings.iter().map(|r| r.name()).collect::<Vec<_>>());
    Ok(out)
}
