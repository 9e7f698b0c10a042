//! JSON interchange for complexes, quivers, categories, cochains, twisted
//! complexes and group actions.
//!
//! Everything is referenced by name. Rationals are `"num/den"` strings.
//! Structure-map inputs are listed in key order, rightmost input applied
//! first: `["q", "p"]` is `μ₂(s q ⊗ s p)`.

use std::collections::{BTreeMap, HashMap};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::ainf::category::{AInf, AInfCategory};
use crate::ainf::hochschild::{Cochain, HochschildCohomology};
use crate::error::{Error, Result};
use crate::orbit::GroupAction;
use crate::quiver::{path_algebra_category, GradedQuiver, MonomialAlgebra, QuiverJson};
use crate::scalar::{format_q, one, parse_q, Q};
use crate::surface::complex::{Corner, CornerKind, OrbifoldKind, OrbifoldPoint, Polygon, PolygonComplex, Side};
use crate::twisted::{make_twisted_complex, ShiftedObject, TwistedComplex};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SideJson {
    pub arc: String,
    /// Endpoint of the arc at which the side finishes.
    pub end: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum CornerKindJson {
    Boundary,
    Orbifold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CornerJson {
    pub kind: CornerKindJson,
    pub winding: i64,
    #[serde(default)]
    pub stop: bool,
    /// Orbifold point of an orbifold angle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbifold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct PolygonJson {
    pub sides: Vec<SideJson>,
    /// Corner `i` sits between side `i` and side `i + 1`.
    pub corners: Vec<CornerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_orbifold: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct OrbifoldPointJson {
    pub id: String,
    /// `"dissected"` or `"interior"`.
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ComplexJson {
    pub arcs: Vec<String>,
    pub polygons: Vec<PolygonJson>,
    #[serde(default)]
    pub orbifold_points: Vec<OrbifoldPointJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &PolygonComplex) -> Self {
        let point = |i: usize| c.orbifold_points[i].id.clone();
        ComplexJson {
            arcs: c.arcs.clone(),
            polygons: c
                .polygons
                .iter()
                .map(|p| PolygonJson {
                    sides: p.sides.iter().map(|s| SideJson { arc: c.arcs[s.arc].clone(), end: s.end }).collect(),
                    corners: p
                        .corners
                        .iter()
                        .map(|k| CornerJson {
                            kind: match k.kind {
                                CornerKind::Boundary => CornerKindJson::Boundary,
                                CornerKind::Orbifold(_) => CornerKindJson::Orbifold,
                            },
                            winding: k.winding,
                            stop: k.stop,
                            orbifold: match k.kind {
                                CornerKind::Orbifold(x) => Some(point(x)),
                                CornerKind::Boundary => None,
                            },
                            label: k.label.clone(),
                        })
                        .collect(),
                    interior_orbifold: p.interior_orbifold.map(point),
                })
                .collect(),
            orbifold_points: c
                .orbifold_points
                .iter()
                .map(|o| OrbifoldPointJson {
                    id: o.id.clone(),
                    kind: match o.kind {
                        OrbifoldKind::Dissected => "dissected".into(),
                        OrbifoldKind::Interior => "interior".into(),
                    },
                })
                .collect(),
        }
    }

    /// Resolves names; topological validity is left to
    /// [`PolygonComplex::validate`].
    pub fn to_complex(&self) -> Result<PolygonComplex> {
        let arcs: HashMap<&str, usize> = self.arcs.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        if arcs.len() != self.arcs.len() {
            return Err(Error::Malformed("duplicate arc name".into()));
        }
        let mut orbifold_points = Vec::new();
        for o in &self.orbifold_points {
            let kind = match o.kind.as_str() {
                "dissected" => OrbifoldKind::Dissected,
                "interior" => OrbifoldKind::Interior,
                k => return Err(Error::Malformed(format!("orbifold point kind `{}`", k))),
            };
            orbifold_points.push(OrbifoldPoint { id: o.id.clone(), kind });
        }
        let point = |id: &str| {
            orbifold_points
                .iter()
                .position(|o| o.id == id)
                .ok_or_else(|| Error::Malformed(format!("unknown orbifold point `{}`", id)))
        };
        let mut polygons = Vec::new();
        for p in &self.polygons {
            let sides = p
                .sides
                .iter()
                .map(|s| {
                    let arc = *arcs.get(s.arc.as_str()).ok_or_else(|| Error::Malformed(format!("unknown arc `{}`", s.arc)))?;
                    if s.end > 1 {
                        return Err(Error::Malformed(format!("arc end {} is not 0 or 1", s.end)));
                    }
                    Ok(Side { arc, end: s.end })
                })
                .collect::<Result<Vec<_>>>()?;
            let corners = p
                .corners
                .iter()
                .map(|k| {
                    let kind = match (k.kind, &k.orbifold) {
                        (CornerKindJson::Boundary, None) => CornerKind::Boundary,
                        (CornerKindJson::Orbifold, Some(id)) => CornerKind::Orbifold(point(id)?),
                        (CornerKindJson::Orbifold, None) => CornerKind::Orbifold(point("x")?),
                        (CornerKindJson::Boundary, Some(_)) => {
                            return Err(Error::Malformed("boundary corner names an orbifold point".into()))
                        }
                    };
                    Ok(Corner { kind, winding: k.winding, stop: k.stop, label: k.label.clone() })
                })
                .collect::<Result<Vec<_>>>()?;
            if sides.len() != corners.len() {
                return Err(Error::Malformed("a polygon needs as many corners as sides".into()));
            }
            let interior_orbifold = p.interior_orbifold.as_deref().map(point).transpose()?;
            polygons.push(Polygon { sides, corners, interior_orbifold });
        }
        Ok(PolygonComplex { arcs: self.arcs.clone(), polygons, orbifold_points })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit: bool,
}

/// One term `coeff · output` of `μ_n(inputs)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct EntryJson {
    pub n: usize,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub mu: Vec<EntryJson>,
}

fn coeff(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::Json(format!("bad rational `{}`", s)))
}

fn entries_of(cat: &AInfCategory, inputs: &[usize], v: &Vector) -> Vec<EntryJson> {
    v.iter()
        .map(|(o, c)| EntryJson {
            n: inputs.len(),
            inputs: inputs.iter().map(|&i| cat.name(i).to_string()).collect(),
            output: cat.name(o).to_string(),
            coeff: format_q(c),
        })
        .collect()
}

fn lookup(cat: &AInfCategory, name: &str) -> Result<usize> {
    cat.index(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
}

impl CategoryJson {
    pub fn from_category(cat: &AInfCategory) -> Self {
        let o = cat.objects();
        CategoryJson {
            objects: o.to_vec(),
            morphisms: cat
                .basis()
                .iter()
                .enumerate()
                .map(|(i, m)| MorphismJson {
                    name: m.name.clone(),
                    src: o[m.src].clone(),
                    tgt: o[m.tgt].clone(),
                    deg: m.deg,
                    unit: cat.is_unit(i),
                })
                .collect(),
            mu: cat.sorted_entries().into_iter().flat_map(|(k, v)| entries_of(cat, k, v)).collect(),
        }
    }

    pub fn to_category(&self) -> Result<AInfCategory> {
        let mut cat = AInfCategory::new(self.objects.clone());
        let obj = |name: &str| {
            self.objects.iter().position(|o| o == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        for m in &self.morphisms {
            let (s, t) = (obj(&m.src)?, obj(&m.tgt)?);
            if m.unit {
                if s != t || m.deg != 0 {
                    return Err(Error::Malformed(format!("unit `{}` must be a degree-0 loop", m.name)));
                }
                if cat.unit_index(s).is_some() {
                    return Err(Error::Malformed(format!("object `{}` has two units", m.src)));
                }
                cat.add_unit(s, &m.name)?;
            } else {
                cat.add_morphism(&m.name, s, t, m.deg)?;
            }
        }
        for e in &self.mu {
            if e.n != e.inputs.len() {
                return Err(Error::Malformed(format!("entry with n = {} has {} inputs", e.n, e.inputs.len())));
            }
            let inputs = e.inputs.iter().map(|n| lookup(&cat, n)).collect::<Result<Vec<_>>>()?;
            let v = Vector::term(lookup(&cat, &e.output)?, coeff(&e.coeff)?);
            cat.add_entry(inputs, v)?;
        }
        Ok(cat)
    }
}

/// A degree-`degree` Hochschild cochain. Arity-0 terms name their object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CochainJson {
    pub degree: i64,
    pub entries: Vec<CochainEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CochainEntryJson {
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub output: String,
    pub coeff: String,
}

impl CochainJson {
    pub fn from_cochain(cat: &AInfCategory, f: &Cochain) -> Self {
        let mut entries = Vec::new();
        for ((x, inputs), v) in &f.comps {
            for (o, c) in v.iter() {
                entries.push(CochainEntryJson {
                    inputs: inputs.iter().map(|&i| cat.name(i).to_string()).collect(),
                    object: inputs.is_empty().then(|| cat.objects()[*x].clone()),
                    output: cat.name(o).to_string(),
                    coeff: format_q(c),
                });
            }
        }
        CochainJson { degree: f.degree, entries }
    }

    pub fn to_cochain(&self, cat: &AInfCategory) -> Result<Cochain> {
        let mut f = Cochain::zero(self.degree);
        for e in &self.entries {
            let inputs = e.inputs.iter().map(|n| lookup(cat, n)).collect::<Result<Vec<_>>>()?;
            if !cat.composable(&inputs) {
                return Err(Error::NotComposable);
            }
            let x = match (inputs.last(), &e.object) {
                (Some(&i), _) => cat.basis()[i].src,
                (None, Some(o)) => cat.object_index(o).ok_or_else(|| Error::UnknownVertex(o.clone()))?,
                (None, None) => return Err(Error::Malformed("arity-0 cochain term needs an object".into())),
            };
            let o = lookup(cat, &e.output)?;
            f.add_term((x, inputs), &Vector::basis(o), &coeff(&e.coeff)?);
        }
        Ok(f)
    }
}

/// `HH^degree` with cocycle representatives of its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct HochschildJson {
    pub degree: i64,
    pub dimension: usize,
    pub by_arity: Vec<usize>,
    pub truncated: bool,
    pub representatives: Vec<CochainJson>,
}

impl HochschildJson {
    pub fn from_cohomology(cat: &AInfCategory, hh: &HochschildCohomology) -> Self {
        HochschildJson {
            degree: hh.degree,
            dimension: hh.dimension,
            by_arity: hh.by_arity.clone(),
            truncated: hh.truncated,
            representatives: hh.representatives.iter().map(|f| CochainJson::from_cochain(cat, f)).collect(),
        }
    }
}

/// A cochain, or a Hochschild document standing for its first
/// representative.
#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum CochainSourceJson {
    Cochain(CochainJson),
    Hochschild(HochschildJson),
}

impl CochainSourceJson {
    pub fn to_cochain(&self, cat: &AInfCategory) -> Result<Cochain> {
        match self {
            CochainSourceJson::Cochain(c) => c.to_cochain(cat),
            CochainSourceJson::Hochschild(h) => h
                .representatives
                .first()
                .ok_or_else(|| Error::Malformed("the Hochschild document has no representative".into()))?
                .to_cochain(cat),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ShiftedJson {
    pub object: String,
    #[serde(default)]
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct TermJson {
    pub morphism: String,
    pub coeff: String,
}

/// The component of `δ` from entry `from` to entry `to`, `from < to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeltaJson {
    pub from: usize,
    pub to: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct TwistedJson {
    pub name: String,
    pub entries: Vec<ShiftedJson>,
    #[serde(default)]
    pub delta: Vec<DeltaJson>,
}

impl TwistedJson {
    pub fn from_complex(cat: &AInfCategory, x: &TwistedComplex) -> Self {
        TwistedJson {
            name: x.name.clone(),
            entries: x
                .entries
                .iter()
                .map(|e| ShiftedJson { object: cat.objects()[e.object].clone(), shift: e.shift })
                .collect(),
            delta: x
                .delta
                .iter()
                .map(|(&(from, to), v)| DeltaJson {
                    from,
                    to,
                    terms: v.iter().map(|(i, c)| TermJson { morphism: cat.name(i).to_string(), coeff: format_q(c) }).collect(),
                })
                .collect(),
        }
    }

    /// Builds and verifies the complex with [`make_twisted_complex`].
    pub fn to_complex(&self, cat: &AInfCategory) -> Result<TwistedComplex> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let x = cat.object_index(&e.object).ok_or_else(|| Error::UnknownVertex(e.object.clone()))?;
                Ok(ShiftedObject::new(x, e.shift))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut delta = BTreeMap::new();
        for d in &self.delta {
            let v: &mut Vector = delta.entry((d.from, d.to)).or_default();
            for t in &d.terms {
                v.add_term(lookup(cat, &t.morphism)?, coeff(&t.coeff)?);
            }
        }
        make_twisted_complex(cat, &self.name, entries, delta)
    }
}

/// A category together with twisted complexes over it.
#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct TwDocumentJson {
    pub base: SourceJson,
    pub complexes: Vec<TwistedJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ObjectImageJson {
    pub object: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct MorphismImageJson {
    pub morphism: String,
    pub image: String,
    #[serde(default = "default_coeff")]
    pub coeff: String,
}

fn default_coeff() -> String {
    "1".into()
}

/// The generator of a ℤ₂ action. Objects and morphisms that are not listed
/// are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
pub struct ActionJson {
    #[serde(default)]
    pub objects: Vec<ObjectImageJson>,
    #[serde(default)]
    pub morphisms: Vec<MorphismImageJson>,
}

impl ActionJson {
    /// Lists only the objects and morphisms that move.
    pub fn from_action<C: AInf + ?Sized>(cat: &C, g: &GroupAction) -> Self {
        let (o, b) = (cat.objects(), cat.basis());
        ActionJson {
            objects: g
                .objects
                .iter()
                .enumerate()
                .filter(|(x, y)| x != *y)
                .map(|(x, &y)| ObjectImageJson { object: o[x].clone(), image: o[y].clone() })
                .collect(),
            morphisms: g
                .morphisms
                .iter()
                .enumerate()
                .filter(|(i, (j, c))| i != j || *c != one())
                .map(|(i, (j, c))| MorphismImageJson {
                    morphism: b[i].name.clone(),
                    image: b[*j].name.clone(),
                    coeff: format_q(c),
                })
                .collect(),
        }
    }

    pub fn to_action<C: AInf + ?Sized>(&self, cat: &C) -> Result<GroupAction> {
        let mut g = GroupAction::trivial(cat);
        let obj = |n: &str| cat.objects().iter().position(|o| o == n).ok_or_else(|| Error::UnknownVertex(n.to_string()));
        let mor = |n: &str| cat.basis().iter().position(|m| m.name == n).ok_or_else(|| Error::UnknownArrow(n.to_string()));
        for e in &self.objects {
            g.objects[obj(&e.object)?] = obj(&e.image)?;
        }
        for e in &self.morphisms {
            g.morphisms[mor(&e.morphism)?] = (mor(&e.image)?, coeff(&e.coeff)?);
        }
        Ok(g)
    }
}

/// Any document that determines an A∞ category: a category table, a
/// polygon complex (built with [`crate::fukaya::build_category`]) or a
/// quiver (its path algebra).
#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum SourceJson {
    Category(CategoryJson),
    Complex(ComplexJson),
    Quiver(QuiverJson),
}

impl SourceJson {
    pub fn kind(&self) -> &'static str {
        match self {
            SourceJson::Category(_) => "category",
            SourceJson::Complex(_) => "complex",
            SourceJson::Quiver(_) => "quiver",
        }
    }

    pub fn category(&self) -> Result<AInfCategory> {
        match self {
            SourceJson::Category(c) => c.to_category(),
            SourceJson::Complex(c) => crate::fukaya::build_category(&c.to_complex()?),
            SourceJson::Quiver(q) => path_algebra_category(&MonomialAlgebra::finite(GradedQuiver::from_json(q)?)?),
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

/// JSON Schema of a document type, pretty-printed.
pub fn schema<T: JsonSchema>() -> String {
    to_string(&schemars::schema_for!(T))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fukaya::build_category;
    use crate::surface::builders::{example_dissection, orbifold_disk_star};

    #[test]
    fn complex_round_trip() {
        for k in 1..=6 {
            let c = example_dissection(k).unwrap();
            let j = ComplexJson::from_complex(&c);
            let back = parse::<ComplexJson>(&to_string(&j)).unwrap().to_complex().unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn category_round_trip() {
        let cat = build_category(&example_dissection(4).unwrap()).unwrap();
        let j = CategoryJson::from_category(&cat);
        let back = parse::<CategoryJson>(&to_string(&j)).unwrap().to_category().unwrap();
        assert_eq!(CategoryJson::from_category(&back), j);
    }

    #[test]
    fn source_is_detected() {
        let c = ComplexJson::from_complex(&orbifold_disk_star(3).unwrap());
        let s: SourceJson = parse(&to_string(&c)).unwrap();
        assert_eq!(s.kind(), "complex");
        let cat = s.category().unwrap();
        let s: SourceJson = parse(&to_string(&CategoryJson::from_category(&cat))).unwrap();
        assert_eq!(s.kind(), "category");
        let q = r#"{"vertices":["a","b"],"arrows":[{"name":"x","src":"a","tgt":"b","deg":0}]}"#;
        let s: SourceJson = parse(q).unwrap();
        assert_eq!(s.kind(), "quiver");
        assert_eq!(s.category().unwrap().basis().len(), 3);
    }

    #[test]
    fn rationals_are_strings() {
        let mut cat = AInfCategory::new(vec!["x".into()]);
        let e = cat.add_morphism("e", 0, 0, 0).unwrap();
        cat.add_entry(vec![e, e], Vector::term(e, crate::scalar::qf(-3, 4))).unwrap();
        let text = to_string(&CategoryJson::from_category(&cat));
        assert!(text.contains("\"-3/4\""));
    }
}
