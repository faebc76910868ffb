//! JSON views of core values; maps are keyed by name so output is stable.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use facto_core::finring::{FinRing, RingDesc, RingHom};
use facto_core::orth::{FinCat, Functor};
use facto_core::poset::Poset;
use facto_core::sset::{FinSSet, SSetMap};
use facto_core::toposx::{FinGSet, FqVecSpace, GSetMap, LinearMap};

pub fn ring(r: &FinRing) -> Value {
    json!({ "name": r.name(), "order": r.order(), "elements": r.labels() })
}

pub fn ring_with_table(r: &FinRing) -> Value {
    let mut v = ring(r);
    v["table"] = serde_json::to_value(RingDesc::table_of(r)).expect("serializable");
    v
}

pub fn hom(h: &RingHom) -> Value {
    let t = h.target();
    let map: Vec<&str> = h.map().iter().map(|&y| t.label(y)).collect();
    json!({ "source": h.source().name(), "target": t.name(), "map": map })
}

pub fn poset(p: &Poset) -> Value {
    serde_json::to_value(p.to_json()).expect("serializable")
}

pub fn category(c: &FinCat) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| json!({ "id": m.id, "src": c.object_name(m.src), "tgt": c.object_name(m.tgt) }))
        .collect();
    json!({ "objects": c.objects(), "morphisms": morphisms })
}

pub fn functor(f: &Functor) -> Value {
    let (s, t) = (&f.source, &f.target);
    let obj_map: BTreeMap<&str, &str> = (0..s.num_objects())
        .map(|o| (s.object_name(o), t.object_name(f.obj_map[o])))
        .collect();
    let mor_map: BTreeMap<&str, &str> = (0..s.num_morphisms())
        .map(|m| (s.morphism_name(m), t.morphism_name(f.mor_map[m])))
        .collect();
    json!({ "obj_map": obj_map, "mor_map": mor_map })
}

pub fn sset(x: &FinSSet) -> Value {
    json!({
        "name": x.name(),
        "dim": x.dim(),
        "counts": x.counts(),
        "nondegenerate": x.nondegenerate_count(),
        "regular": x.is_regular(),
        "spec": x.to_spec(),
    })
}

/// Images of the nondegenerate simplices of the source, by dimension and name.
pub fn sset_map(f: &SSetMap) -> Value {
    let (x, y) = (f.source(), f.target());
    let mut images: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (m, row) in f.nd_images().into_iter().enumerate() {
        for (k, t) in row.into_iter().enumerate() {
            let s = x.nondegenerate(m)[k];
            images.entry(m.to_string()).or_default().insert(x.label(m, s), y.label(m, t));
        }
    }
    json!({ "source": x.name(), "target": y.name(), "images": images })
}

pub fn gset(x: &FinGSet) -> Value {
    json!({ "carrier": x.carrier(), "action": x.action() })
}

pub fn gset_map(f: &GSetMap) -> Value {
    let labels: Vec<&String> = f.map.iter().map(|&y| &f.target.carrier()[y]).collect();
    json!({ "source": f.source.len(), "target": f.target.len(), "map": labels })
}

pub fn vect(v: &FqVecSpace) -> Value {
    json!({ "q": v.q(), "n": v.dim() })
}

pub fn linear_map(f: &LinearMap) -> Value {
    let columns: Vec<Vec<usize>> = (0..f.source.dim()).map(|j| f.target.coords(f.table[f.source.basis(j)])).collect();
    json!({ "source": vect(&f.source), "target": vect(&f.target), "columns": columns })
}
