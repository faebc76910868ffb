//! Comma categories, final functors and discrete fibrations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orth::{FinCat, Functor};

/// `Under` is `d/F` (arrows `d → F c`), `Over` is `F/d` (arrows `F c → d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommaSide {
    Under,
    Over,
}

/// `Right` pairs final functors with discrete right fibrations, `Left`
/// pairs initial functors with discrete left fibrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::InvalidSpec(format!("unknown side {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub anchor: usize,
    pub side: CommaSide,
    /// Objects `(c, g)` with `g` a morphism of the target category.
    pub objects: Vec<(usize, usize)>,
    pub cat: Arc<FinCat>,
    /// The forgetful functor to the source of `F`.
    pub projection: Functor,
    index: HashMap<(usize, usize), usize>,
}

impl CommaCategory {
    pub fn object_of(&self, c: usize, g: usize) -> Option<usize> {
        self.index.get(&(c, g)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

pub fn comma(f: &Functor, d: usize, side: CommaSide) -> Result<CommaCategory> {
    let (c_cat, d_cat) = (&*f.source, &*f.target);
    if d >= d_cat.num_objects() {
        return Err(Error::NotAFunctor(format!("anchor {d} is not an object of the target")));
    }
    let mut objects = Vec::new();
    for c in 0..c_cat.num_objects() {
        let fc = f.obj_map[c];
        let arrows = match side {
            CommaSide::Under => d_cat.hom(d, fc),
            CommaSide::Over => d_cat.hom(fc, d),
        };
        objects.extend(arrows.iter().map(|&g| (c, g)));
    }
    let index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let n = objects.len();
    let homs: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let ((c, g), (c2, g2)) = (objects[a], objects[b]);
                    c_cat
                        .hom(c, c2)
                        .iter()
                        .copied()
                        .filter(|&h| {
                            let fh = f.mor_map[h];
                            match side {
                                CommaSide::Under => d_cat.compose(fh, g) == g2,
                                CommaSide::Over => d_cat.compose(g2, fh) == g,
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(c, g)| format!("({}, {})", c_cat.object_name(c), d_cat.morphism_name(g)))
        .collect();
    let (cat, values) = FinCat::from_concrete(
        names.clone(),
        homs,
        |a| c_cat.id(objects[a].0),
        |&g: &usize, &h: &usize| c_cat.compose(g, h),
        |a, b, &h| {
            if a == b && c_cat.is_identity(h) {
                format!("id_{}", names[a])
            } else {
                format!("{}: {} -> {}", c_cat.morphism_name(h), names[a], names[b])
            }
        },
    )?;
    let cat = Arc::new(cat);
    let projection = Functor::new(cat.clone(), f.source.clone(), objects.iter().map(|o| o.0).collect(), values)?;
    Ok(CommaCategory {
        anchor: d,
        side,
        objects,
        cat,
        projection,
        index,
    })
}

/// Every `d/F` is nonempty and connected (undirected zig-zags).
pub fn is_final(f: &Functor) -> Result<bool> {
    for d in 0..f.target.num_objects() {
        if !comma(f, d, CommaSide::Under)?.cat.is_connected() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_initial(f: &Functor) -> Result<bool> {
    for d in 0..f.target.num_objects() {
        if !comma(f, d, CommaSide::Over)?.cat.is_connected() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every `e` and `g: c → F e` exactly one morphism into `e` maps to `g`.
pub fn is_discrete_right_fibration(f: &Functor) -> bool {
    let (e_cat, c_cat) = (&*f.source, &*f.target);
    (0..e_cat.num_objects()).all(|e| {
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for m in e_cat.morphisms_into(e) {
            *hits.entry(f.mor_map[m]).or_default() += 1;
        }
        c_cat.morphisms_into(f.obj_map[e]).all(|g| hits.get(&g) == Some(&1))
    })
}

pub fn is_discrete_left_fibration(f: &Functor) -> bool {
    let (e_cat, c_cat) = (&*f.source, &*f.target);
    (0..e_cat.num_objects()).all(|e| {
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for m in e_cat.morphisms_from(e) {
            *hits.entry(f.mor_map[m]).or_default() += 1;
        }
        c_cat.morphisms_from(f.obj_map[e]).all(|g| hits.get(&g) == Some(&1))
    })
}

pub fn is_left_class(f: &Functor, side: Side) -> Result<bool> {
    match side {
        Side::Right => is_final(f),
        Side::Left => is_initial(f),
    }
}

pub fn is_right_class(f: &Functor, side: Side) -> bool {
    match side {
        Side::Right => is_discrete_right_fibration(f),
        Side::Left => is_discrete_left_fibration(f),
    }
}

#[derive(Debug, Clone)]
pub struct SliceFactorization {
    /// `[0] → C/c` picking `(c, id)`.
    pub point: Functor,
    pub comma: CommaCategory,
    pub projection: Functor,
}

/// `[0] → C/c → C` (right) or `[0] → c/C → C` (left).
pub fn slice_factorize(c_cat: &Arc<FinCat>, c: usize, side: Side) -> Result<SliceFactorization> {
    let id = Functor::identity(c_cat.clone());
    let cs = match side {
        Side::Right => CommaSide::Over,
        Side::Left => CommaSide::Under,
    };
    let comma = comma(&id, c, cs)?;
    let o = comma.object_of(c, c_cat.id(c)).expect("identity object");
    let special = match side {
        Side::Right => comma.cat.is_terminal(o),
        Side::Left => comma.cat.is_initial(o),
    };
    if !special {
        return Err(Error::FactorizerContractViolation {
            morphism: format!("[0] -> {}", c_cat.object_name(c)),
            reason: "the identity object of the slice is not terminal/initial".into(),
        });
    }
    let point = Functor::new(Arc::new(FinCat::terminal()), comma.cat.clone(), vec![o], vec![comma.cat.id(o)])?;
    Ok(SliceFactorization {
        point,
        projection: comma.projection.clone(),
        comma,
    })
}

/// The category of elements of `P(d) = π₀(d/F)`, with `P` contravariant.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    /// For every object `d`, its components, each named by the least object
    /// of `d/F` in it.
    pub sets: Vec<Vec<usize>>,
    /// `objects[i] = (d, x)` with `x` an index into `sets[d]`.
    pub objects: Vec<(usize, usize)>,
    pub total: Arc<FinCat>,
    pub projection: Functor,
}

#[derive(Debug, Clone)]
pub struct ComprehensiveFactorization {
    pub side: Side,
    pub first: Functor,
    pub middle: ElementsCategory,
    pub second: Functor,
}

impl ComprehensiveFactorization {
    pub fn composite(&self) -> Result<Functor> {
        self.first.then(&self.second)
    }
}

/// Right side: `C → el(π₀(−/F)) → D`; the left side is computed on opposites.
pub fn comprehensive_factorize(f: &Functor, side: Side) -> Result<ComprehensiveFactorization> {
    match side {
        Side::Right => comprehensive_right(f),
        Side::Left => {
            let r = comprehensive_right(&f.opposite())?;
            let total = Arc::new(r.middle.total.opposite());
            let first = Functor::new(f.source.clone(), total.clone(), r.first.obj_map, r.first.mor_map)?;
            let second = Functor::new(total.clone(), f.target.clone(), r.second.obj_map, r.second.mor_map)?;
            Ok(ComprehensiveFactorization {
                side,
                first,
                middle: ElementsCategory {
                    sets: r.middle.sets,
                    objects: r.middle.objects,
                    total,
                    projection: second.clone(),
                },
                second,
            })
        }
    }
}

fn comprehensive_right(f: &Functor) -> Result<ComprehensiveFactorization> {
    let (c_cat, d_cat) = (&*f.source, &*f.target);
    let commas: Vec<CommaCategory> = (0..d_cat.num_objects())
        .map(|d| comma(f, d, CommaSide::Under))
        .collect::<Result<_>>()?;
    let comps: Vec<Vec<usize>> = commas.iter().map(|k| k.cat.components()).collect();
    let sets: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    // component of the object (c, g) of d/F, as an index into sets[d]
    let elem = |d: usize, c: usize, g: usize| -> usize {
        let o = commas[d].object_of(c, g).expect("object of the comma");
        sets[d].binary_search(&comps[d][o]).expect("component")
    };
    // P(k: d' → d) sends [(c, g)] ∈ P(d) to [(c, g∘k)] ∈ P(d')
    let act = |k: usize, x: usize| -> usize {
        let (d2, d) = (d_cat.src(k), d_cat.tgt(k));
        let (c, g) = commas[d].objects[sets[d][x]];
        elem(d2, c, d_cat.compose(g, k))
    };
    let objects: Vec<(usize, usize)> = (0..d_cat.num_objects()).flat_map(|d| (0..sets[d].len()).map(move |x| (d, x))).collect();
    let index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let n = objects.len();
    let homs: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let ((d2, x2), (d, x)) = (objects[a], objects[b]);
                    d_cat.hom(d2, d).iter().copied().filter(|&k| act(k, x) == x2).collect()
                })
                .collect()
        })
        .collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(d, x)| {
            let (c, g) = commas[d].objects[sets[d][x]];
            format!("({}, [{}, {}])", d_cat.object_name(d), c_cat.object_name(c), d_cat.morphism_name(g))
        })
        .collect();
    let (total, values) = FinCat::from_concrete(
        names.clone(),
        homs,
        |a| d_cat.id(objects[a].0),
        |&g: &usize, &h: &usize| d_cat.compose(g, h),
        |a, b, &k| {
            if a == b && d_cat.is_identity(k) {
                format!("id_{}", names[a])
            } else {
                format!("{}: {} -> {}", d_cat.morphism_name(k), names[a], names[b])
            }
        },
    )?;
    let total = Arc::new(total);
    let second = Functor::new(total.clone(), f.target.clone(), objects.iter().map(|o| o.0).collect(), values)?;
    let obj_of = |c: usize| {
        let d = f.obj_map[c];
        index[&(d, elem(d, c, d_cat.id(d)))]
    };
    let first_obj: Vec<usize> = (0..c_cat.num_objects()).map(obj_of).collect();
    let first_mor: Vec<usize> = (0..c_cat.num_morphisms())
        .map(|h| {
            let (a, b) = (first_obj[c_cat.src(h)], first_obj[c_cat.tgt(h)]);
            let k = f.mor_map[h];
            total
                .hom(a, b)
                .iter()
                .copied()
                .find(|&m| second.mor_map[m] == k)
                .ok_or_else(|| Error::FactorizerContractViolation {
                    morphism: c_cat.morphism_name(h).to_string(),
                    reason: "no lift into the category of elements".into(),
                })
        })
        .collect::<Result<_>>()?;
    let first = Functor::new(f.source.clone(), total.clone(), first_obj, first_mor)?;
    Ok(ComprehensiveFactorization {
        side: Side::Right,
        first,
        middle: ElementsCategory {
            sets,
            objects,
            total,
            projection: second.clone(),
        },
        second,
    })
}

/// Members must be discrete fibrations into `C` of the given side; covers
/// when their object images exhaust `ob(C)`.
pub fn right_cover_check(c: &FinCat, family: &[Functor], side: Side) -> Result<bool> {
    let mut hit = vec![false; c.num_objects()];
    for (i, f) in family.iter().enumerate() {
        if *f.target != *c {
            return Err(Error::InvalidFamily(format!("member {i} does not land in the base category")));
        }
        if !is_right_class(f, side) {
            return Err(Error::InvalidFamily(format!("member {i} is not a discrete {side} fibration")));
        }
        f.obj_map.iter().for_each(|&o| hit[o] = true);
    }
    Ok(hit.into_iter().all(|h| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orth::find_isomorphism;
    use crate::poset::Poset;
    use crate::Budget;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    fn inclusion(c: &Arc<FinCat>, o: usize) -> Functor {
        Functor::new(arc(FinCat::terminal()), c.clone(), vec![o], vec![c.id(o)]).unwrap()
    }

    fn cospan() -> Arc<FinCat> {
        let p = Poset::from_relation(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
        arc(FinCat::from_poset(&p))
    }

    #[test]
    fn comma_examples() {
        let i1 = arc(FinCat::ordinal(1));
        let id = Functor::identity(i1.clone());
        let k = comma(&id, 1, CommaSide::Over).unwrap();
        assert!(find_isomorphism(&k.cat, &i1, None, &Budget::default()).unwrap().is_some());
        let p = inclusion(&i1, 1);
        assert!(comma(&p, 0, CommaSide::Over).unwrap().is_empty());
        let hom = comma(&p, 1, CommaSide::Over).unwrap();
        assert_eq!((hom.cat.num_objects(), hom.cat.num_morphisms()), (1, 1));
    }

    #[test]
    fn finality_of_endpoints() {
        let i1 = arc(FinCat::ordinal(1));
        let top = inclusion(&i1, 1);
        let bottom = inclusion(&i1, 0);
        assert!(is_final(&top).unwrap() && !is_initial(&top).unwrap());
        assert!(is_initial(&bottom).unwrap() && !is_final(&bottom).unwrap());
        let id = Functor::identity(i1.clone());
        assert!(is_final(&id).unwrap() && is_initial(&id).unwrap());
        assert!(is_discrete_right_fibration(&id) && is_discrete_left_fibration(&id));
    }

    #[test]
    fn collapse_is_not_a_fibration() {
        let i1 = arc(FinCat::ordinal(1));
        let t = arc(FinCat::terminal());
        let f = Functor::new(i1, t, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert!(!is_discrete_right_fibration(&f));
        assert!(!is_discrete_left_fibration(&f));
    }

    #[test]
    fn slices() {
        let c = cospan();
        let s = slice_factorize(&c, 2, Side::Right).unwrap();
        assert_eq!(s.comma.cat.num_objects(), 3);
        assert!(is_discrete_right_fibration(&s.projection));
        assert!(is_final(&s.point).unwrap());
        let l = slice_factorize(&c, 0, Side::Left).unwrap();
        assert!(is_discrete_left_fibration(&l.projection));
        assert!(is_initial(&l.point).unwrap());
    }

    #[test]
    fn comprehensive_object_case_is_the_slice() {
        let c = cospan();
        for o in 0..3 {
            let fac = comprehensive_factorize(&inclusion(&c, o), Side::Right).unwrap();
            let s = slice_factorize(&c, o, Side::Right).unwrap();
            assert!(find_isomorphism(&fac.middle.total, &s.comma.cat, Some((&fac.second, &s.projection)), &Budget::default())
                .unwrap()
                .is_some());
            assert!(is_final(&fac.first).unwrap());
            assert!(is_discrete_right_fibration(&fac.second));
            assert!(fac.composite().unwrap().same_maps(&inclusion(&c, o)));
        }
    }

    #[test]
    fn left_side_by_opposites() {
        let c = cospan();
        let f = inclusion(&c, 2);
        let fac = comprehensive_factorize(&f, Side::Left).unwrap();
        assert!(is_initial(&fac.first).unwrap());
        assert!(is_discrete_left_fibration(&fac.second));
        assert!(fac.composite().unwrap().same_maps(&f));
    }

    #[test]
    fn covers() {
        let c = cospan();
        let slices: Vec<Functor> = (0..3).map(|o| slice_factorize(&c, o, Side::Right).unwrap().projection).collect();
        assert!(right_cover_check(&c, &slices, Side::Right).unwrap());
        assert!(!right_cover_check(&c, &[], Side::Right).unwrap());
        assert!(right_cover_check(&c, &[Functor::identity(c.clone())], Side::Right).unwrap());
        let bad = inclusion(&c, 2);
        assert!(matches!(right_cover_check(&c, &[bad], Side::Right), Err(Error::InvalidFamily(_))));
    }
}
