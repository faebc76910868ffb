use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;

use super::FinCat;

/// A commuting square `f ∘ top = bottom ∘ u`:
///
/// ```text
///   P --top--> U
///   |          |
///   u          f
///   v          v
///   N -bottom> X
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LiftingSquare {
    pub u: usize,
    pub f: usize,
    pub top: usize,
    pub bottom: usize,
}

impl LiftingSquare {
    pub fn commutes(&self, cat: &FinCat) -> bool {
        cat.src(self.top) == cat.src(self.u)
            && cat.tgt(self.top) == cat.src(self.f)
            && cat.src(self.bottom) == cat.tgt(self.u)
            && cat.tgt(self.bottom) == cat.tgt(self.f)
            && cat.compose(self.f, self.top) == cat.compose(self.bottom, self.u)
    }
}

/// Every diagonal `l: N -> U` with `l ∘ u = top` and `f ∘ l = bottom`.
pub fn enumerate_lifts(cat: &FinCat, sq: &LiftingSquare) -> Vec<usize> {
    let (n, uu) = (cat.tgt(sq.u), cat.src(sq.f));
    cat.hom(n, uu)
        .iter()
        .copied()
        .filter(|&l| cat.compose(l, sq.u) == sq.top && cat.compose(sq.f, l) == sq.bottom)
        .collect()
}

/// All commuting squares with `u` on the left and `f` on the right.
pub fn squares(cat: &FinCat, u: usize, f: usize, budget: &Budget) -> Result<Vec<LiftingSquare>> {
    let (p, n) = (cat.src(u), cat.tgt(u));
    let (uo, x) = (cat.src(f), cat.tgt(f));
    let mut out = Vec::new();
    for &top in cat.hom(p, uo) {
        let ft = cat.compose(f, top);
        for &bottom in cat.hom(n, x) {
            budget.tick()?;
            if cat.compose(bottom, u) == ft {
                out.push(LiftingSquare { u, f, top, bottom });
            }
        }
    }
    Ok(out)
}

/// A square on `(u, f)` without exactly one lift, with the lifts it has.
pub fn orthogonality_witness(
    cat: &FinCat,
    u: usize,
    f: usize,
    budget: &Budget,
) -> Result<Option<(LiftingSquare, Vec<usize>)>> {
    for sq in squares(cat, u, f, budget)? {
        budget.charge(cat.hom(cat.tgt(u), cat.src(f)).len() as u64)?;
        let lifts = enumerate_lifts(cat, &sq);
        if lifts.len() != 1 {
            return Ok(Some((sq, lifts)));
        }
    }
    Ok(None)
}

/// True iff every commuting square on `(u, f)` has exactly one diagonal.
pub fn is_orthogonal(cat: &FinCat, u: usize, f: usize, budget: &Budget) -> Result<bool> {
    Ok(orthogonality_witness(cat, u, f, budget)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::sset::operator::delta_category;

    #[test]
    fn identity_is_orthogonal_to_everything() {
        let d = delta_category(2);
        let b = Budget::default();
        for o in 0..d.num_objects() {
            for f in 0..d.num_morphisms() {
                assert!(is_orthogonal(&d, d.id(o), f, &b).unwrap());
            }
        }
    }

    #[test]
    fn identity_square_has_top_as_only_lift() {
        let d = delta_category(1);
        let b = Budget::default();
        let f = d.hom(0, 1)[0];
        let u = d.id(0);
        for sq in squares(&d, u, f, &b).unwrap() {
            assert_eq!(enumerate_lifts(&d, &sq), vec![sq.top]);
        }
    }

    #[test]
    fn surjection_against_vertex_inclusion() {
        // u = [1] -> [0], f = vertex 0: [0] -> [1], top and bottom constant at 0
        let d = delta_category(1);
        let u = d.hom(1, 0)[0];
        let f = d.morphism_index("[0]->[1]:(0)").unwrap();
        let top = d.hom(1, 0)[0];
        let bottom = f;
        let sq = LiftingSquare { u, f, top, bottom };
        assert!(sq.commutes(&d));
        assert_eq!(enumerate_lifts(&d, &sq), vec![d.id(0)]);
    }

    #[test]
    fn surjection_not_orthogonal_to_itself() {
        let d = delta_category(1);
        let s = d.hom(1, 0)[0];
        let (sq, lifts) = orthogonality_witness(&d, s, s, &Budget::default()).unwrap().unwrap();
        assert_ne!(lifts.len(), 1);
        assert!(sq.commutes(&d));
    }

    #[test]
    fn empty_hom_gives_no_lift() {
        // u: [0] -> [1] (vertex 1), f: [0] -> [1] (vertex 0); a lift [1] -> [0] exists,
        // but in the thin category [1] there is no arrow 1 -> 0.
        let c = FinCat::ordinal(1);
        let f01 = c.hom(0, 1)[0];
        let sq = LiftingSquare {
            u: f01,
            f: f01,
            top: c.id(0),
            bottom: c.id(1),
        };
        assert!(sq.commutes(&c));
        assert!(enumerate_lifts(&c, &sq).is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let d = delta_category(3);
        let s = d.hom(3, 0)[0];
        let err = is_orthogonal(&d, s, s, &Budget::new(2)).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudgetExceeded { .. }));
    }
}
