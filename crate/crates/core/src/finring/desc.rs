use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{quotient, FinRing, Ideal, RingHom};

/// An element given either by index or by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Label(String),
}

impl ElemRef {
    pub fn resolve(&self, a: &FinRing) -> Result<usize> {
        match self {
            ElemRef::Index(i) if *i < a.order() => Ok(*i),
            ElemRef::Index(i) => Err(Error::InvalidSpec(format!("element index {i} out of range for {a}"))),
            ElemRef::Label(l) => a
                .element(l)
                .ok_or_else(|| Error::InvalidSpec(format!("no element labelled {l:?} in {a}"))),
        }
    }
}

impl From<usize> for ElemRef {
    fn from(i: usize) -> Self {
        ElemRef::Index(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingDesc {
    Zmod {
        n: usize,
    },
    Gf {
        p: usize,
        k: usize,
    },
    Product {
        factors: Vec<RingDesc>,
    },
    Quotient {
        base: Box<RingDesc>,
        ideal_gens: Vec<ElemRef>,
    },
    Table {
        elements: Vec<String>,
        add: Vec<Vec<ElemRef>>,
        mul: Vec<Vec<ElemRef>>,
        one: ElemRef,
        #[serde(skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<ElemRef>>,
    },
}

/// Flat mirror of [`RingDesc`]; reading through it keeps field paths and
/// line numbers in errors, which a tagged enum would lose.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    kind: String,
    n: Option<usize>,
    p: Option<usize>,
    k: Option<usize>,
    factors: Option<Vec<RingDesc>>,
    base: Option<Box<RingDesc>>,
    ideal_gens: Option<Vec<ElemRef>>,
    elements: Option<Vec<String>>,
    add: Option<Vec<Vec<ElemRef>>>,
    mul: Option<Vec<Vec<ElemRef>>>,
    one: Option<ElemRef>,
    generators: Option<Vec<ElemRef>>,
}

impl<'de> Deserialize<'de> for RingDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RawRing::deserialize(d)?;
        let need = |what: &'static str| D::Error::missing_field(what);
        let allowed: &[&str] = match r.kind.as_str() {
            "zmod" => &["n"],
            "gf" => &["p", "k"],
            "product" => &["factors"],
            "quotient" => &["base", "ideal_gens"],
            "table" => &["elements", "add", "mul", "one", "generators"],
            other => {
                return Err(D::Error::unknown_variant(other, &["zmod", "gf", "product", "quotient", "table"]));
            }
        };
        let present = [
            ("n", r.n.is_some()),
            ("p", r.p.is_some()),
            ("k", r.k.is_some()),
            ("factors", r.factors.is_some()),
            ("base", r.base.is_some()),
            ("ideal_gens", r.ideal_gens.is_some()),
            ("elements", r.elements.is_some()),
            ("add", r.add.is_some()),
            ("mul", r.mul.is_some()),
            ("one", r.one.is_some()),
            ("generators", r.generators.is_some()),
        ];
        if let Some((f, _)) = present.iter().find(|(f, here)| *here && !allowed.contains(f)) {
            return Err(D::Error::custom(format!("field `{f}` does not apply to kind {:?}", r.kind)));
        }
        Ok(match r.kind.as_str() {
            "zmod" => RingDesc::Zmod { n: r.n.ok_or_else(|| need("n"))? },
            "gf" => RingDesc::Gf {
                p: r.p.ok_or_else(|| need("p"))?,
                k: r.k.ok_or_else(|| need("k"))?,
            },
            "product" => RingDesc::Product {
                factors: r.factors.ok_or_else(|| need("factors"))?,
            },
            "quotient" => RingDesc::Quotient {
                base: r.base.ok_or_else(|| need("base"))?,
                ideal_gens: r.ideal_gens.ok_or_else(|| need("ideal_gens"))?,
            },
            _ => RingDesc::Table {
                elements: r.elements.ok_or_else(|| need("elements"))?,
                add: r.add.ok_or_else(|| need("add"))?,
                mul: r.mul.ok_or_else(|| need("mul"))?,
                one: r.one.ok_or_else(|| need("one"))?,
                generators: r.generators,
            },
        })
    }
}

impl RingDesc {
    pub fn build(&self) -> Result<FinRing> {
        match self {
            RingDesc::Zmod { n } => FinRing::zmod(*n),
            RingDesc::Gf { p, k } => FinRing::gf(*p, *k),
            RingDesc::Product { factors } => {
                let fs = factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                FinRing::product(&fs)
            }
            RingDesc::Quotient { base, ideal_gens } => {
                let b = Arc::new(base.build()?);
                let gens = ideal_gens.iter().map(|g| g.resolve(&b)).collect::<Result<Vec<_>>>()?;
                let labels: Vec<&str> = gens.iter().map(|&g| b.label(g)).collect();
                let q = quotient(&b, &Ideal::generated(&b, &gens));
                Ok((*q.ring).clone().with_name(format!("{}/({})", b.name(), labels.join(","))))
            }
            RingDesc::Table {
                elements,
                add,
                mul,
                one,
                generators,
            } => {
                let n = elements.len();
                let index = |r: &ElemRef| -> Result<usize> {
                    match r {
                        ElemRef::Index(i) if *i < n => Ok(*i),
                        ElemRef::Index(i) => Err(Error::InvalidSpec(format!("element index {i} out of range"))),
                        ElemRef::Label(l) => elements
                            .iter()
                            .position(|e| e == l)
                            .ok_or_else(|| Error::InvalidSpec(format!("unknown element {l:?}"))),
                    }
                };
                let flat = |t: &Vec<Vec<ElemRef>>, what: &str| -> Result<Vec<usize>> {
                    if t.len() != n || t.iter().any(|row| row.len() != n) {
                        return Err(Error::NotARing(format!("{what} table must be {n} x {n}")));
                    }
                    t.iter().flatten().map(index).collect()
                };
                let mut seen = std::collections::HashSet::new();
                if let Some(dup) = elements.iter().find(|e| !seen.insert(*e)) {
                    return Err(Error::InvalidSpec(format!("duplicate element {dup:?}")));
                }
                let gens = generators
                    .as_ref()
                    .map(|g| g.iter().map(index).collect::<Result<Vec<_>>>())
                    .transpose()?;
                FinRing::from_tables("table", elements.clone(), flat(add, "add")?, flat(mul, "mul")?, index(one)?, gens)
            }
        }
    }

    /// The explicit-table description of an already built ring.
    pub fn table_of(a: &FinRing) -> RingDesc {
        let rows = |t: Vec<Vec<usize>>| t.into_iter().map(|r| r.into_iter().map(ElemRef::Index).collect()).collect();
        RingDesc::Table {
            elements: a.labels().to_vec(),
            add: rows(a.add_table()),
            mul: rows(a.mul_table()),
            one: ElemRef::Index(a.one()),
            generators: Some(a.generators().iter().map(|&g| ElemRef::Index(g)).collect()),
        }
    }
}

/// A hom either by generator images or by its full map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDesc {
    pub source: RingDesc,
    pub target: RingDesc,
    #[serde(default)]
    pub images: Option<BTreeMap<String, ElemRef>>,
    #[serde(default)]
    pub map: Option<Vec<ElemRef>>,
}

impl HomDesc {
    pub fn build(&self) -> Result<RingHom> {
        let a = Arc::new(self.source.build()?);
        let b = Arc::new(self.target.build()?);
        match (&self.images, &self.map) {
            (Some(images), None) => {
                let pairs = images
                    .iter()
                    .map(|(g, y)| {
                        let x = a
                            .element(g)
                            .or_else(|| g.parse().ok().filter(|&i: &usize| i < a.order()))
                            .ok_or_else(|| Error::InvalidSpec(format!("unknown source element {g:?}")))?;
                        Ok((x, y.resolve(&b)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                RingHom::from_images(a, b, &pairs)
            }
            (None, Some(map)) => {
                let m = map.iter().map(|y| y.resolve(&b)).collect::<Result<Vec<_>>>()?;
                RingHom::new(a, b, m)
            }
            _ => Err(Error::InvalidSpec("hom needs exactly one of `images` or `map`".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        let r: RingDesc = serde_json::from_str(r#"{"kind":"zmod","n":12}"#).unwrap();
        assert_eq!(r.build().unwrap().order(), 12);
        let r: RingDesc = serde_json::from_str(r#"{"kind":"gf","p":2,"k":2}"#).unwrap();
        assert_eq!(r.build().unwrap().order(), 4);
        let r: RingDesc =
            serde_json::from_str(r#"{"kind":"product","factors":[{"kind":"zmod","n":4},{"kind":"gf","p":2,"k":1}]}"#).unwrap();
        assert_eq!(r.build().unwrap().order(), 8);
        let r: RingDesc = serde_json::from_str(r#"{"kind":"quotient","base":{"kind":"zmod","n":12},"ideal_gens":[3]}"#).unwrap();
        assert_eq!(r.build().unwrap().order(), 3);
    }

    #[test]
    fn table_round_trip() {
        let a = FinRing::gf(2, 2).unwrap();
        let d = RingDesc::table_of(&a);
        let text = serde_json::to_string(&d).unwrap();
        let back: RingDesc = serde_json::from_str(&text).unwrap();
        let b = back.build().unwrap();
        assert_eq!(b.add_table(), a.add_table());
        assert_eq!(b.mul_table(), a.mul_table());
    }

    #[test]
    fn broken_table_reports_triple() {
        let text = r#"{"kind":"table","elements":["0","1"],"add":[[0,1],[1,0]],"mul":[[1,0],[0,1]],"one":"1"}"#;
        let d: RingDesc = serde_json::from_str(text).unwrap();
        assert!(matches!(d.build(), Err(Error::NotARing(m)) if m.contains("distributivity")));
    }

    #[test]
    fn hom_by_images() {
        let text = r#"{"source":{"kind":"zmod","n":12},"target":{"kind":"gf","p":2,"k":2},"images":{}}"#;
        let h: HomDesc = serde_json::from_str(text).unwrap();
        let h = h.build().unwrap();
        assert_eq!(h.kernel().len(), 6);
    }
}
