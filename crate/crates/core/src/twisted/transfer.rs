//! Hom-complex cohomology and minimal models by homotopy transfer.
//!
//! Each hom complex is split as `H ⊕ im μ₁ ⊕ C` by elimination in the basis
//! order (degree, name). The homotopy `h` inverts `μ₁` from `im μ₁` onto `C`
//! and kills `H ⊕ C`, so `μ₁h + hμ₁ = 1 − ιπ`, `h² = 0`, `hι = 0`, `πh = 0`.
//! Transferred products are the planar-tree sums
//!
//! `p₁ = ι`, `p_n = −h Σ μ_k(p_{n_k} ⊗ ⋯ ⊗ p_{n_1})`,
//! `m_n = π Σ μ_k(p_{n_k} ⊗ ⋯ ⊗ p_{n_1})`,
//!
//! summed over ordered splittings `n = n_1 + ⋯ + n_k`, `k ≥ 2`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::ainf::category::{composable_tuples, AInf, AInfCategory};
use crate::linalg::{Matrix, Span};
use crate::scalar::{format_q, one};
use crate::vector::Vector;

/// A special deformation retract of one hom complex, in coordinates of the
/// ambient basis.
#[derive(Clone, Debug, Default)]
pub struct HomContraction {
    /// Ambient basis of the hom space, in elimination order.
    pub basis: Vec<usize>,
    /// `ι` of the cohomology basis, with degrees.
    pub representatives: Vec<(i64, Vector)>,
    /// Pairs `(c, μ₁c)` spanning `C` and `im μ₁`.
    pub pairs: Vec<(Vector, Vector)>,
    /// Inverse of the change of basis to `[H | im | C]`, column by ambient
    /// basis element.
    coords: HashMap<usize, Vector>,
}

impl HomContraction {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (d, _) in &self.representatives {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    fn coordinates(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.coords[&i], c);
        }
        out
    }

    /// `π`, as coordinates in the cohomology basis.
    pub fn project(&self, v: &Vector) -> Vector {
        let h = self.representatives.len();
        self.coordinates(v).iter().filter(|(k, _)| *k < h).map(|(k, c)| (k, c.clone())).collect()
    }

    pub fn homotopy(&self, v: &Vector) -> Vector {
        let h = self.representatives.len();
        let mut out = Vector::new();
        for (k, c) in self.coordinates(v).iter() {
            if k >= h && k < h + self.pairs.len() {
                out.add_scaled(&self.pairs[k - h].0, c);
            }
        }
        out
    }

    pub fn include(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (k, c) in v.iter() {
            out.add_scaled(&self.representatives[k].1, c);
        }
        out
    }
}

/// Splits `hom(x, y)`. The unit of `x`, when `x = y`, is taken as the first
/// degree-0 representative.
pub fn contract<C: AInf + ?Sized>(cat: &C, x: usize, y: usize) -> HomContraction {
    let b = cat.basis();
    let mut basis: Vec<usize> = cat.hom(x, y).to_vec();
    basis.sort_by(|&i, &j| b[i].deg.cmp(&b[j].deg).then_with(|| b[i].name.cmp(&b[j].name)));
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let d: Vec<Vector> = basis.iter().map(|&i| cat.mu(&[i])).collect();
    let unit = if x == y { cat.unit(x) } else { None };

    let mut degrees: Vec<i64> = basis.iter().map(|&i| b[i].deg).collect();
    degrees.dedup();
    let mut pairs = Vec::new();
    let mut image = Span::new();
    for &i in &basis {
        let v = cat.mu(&[i]);
        if !v.is_zero() && image.insert(&v) {
            pairs.push((Vector::basis(i), v));
        }
    }
    let mut representatives = Vec::new();
    for &deg in &degrees {
        let cols: Vec<usize> = (0..basis.len()).filter(|&k| b[basis[k]].deg == deg).collect();
        let mut span = Span::new();
        for (_, v) in &pairs {
            if v.iter().next().is_some_and(|(i, _)| b[i].deg == deg) {
                span.insert(v);
            }
        }
        let mut candidates: Vec<Vector> = Vec::new();
        if deg == 0 {
            candidates.extend(unit.clone());
        }
        candidates.extend(cols.iter().filter(|&&k| d[k].is_zero()).map(|&k| Vector::basis(basis[k])));
        // the kernel of μ₁ restricted to this degree, in local coordinates
        let targets: Vec<usize> = {
            let mut t: Vec<usize> = cols.iter().flat_map(|&k| d[k].support().collect::<Vec<_>>()).collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let row: HashMap<usize, usize> = targets.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let local: Vec<Vector> = cols.iter().map(|&k| d[k].map_indices(|i| row.get(&i).copied())).collect();
        let m = Matrix::from_columns(targets.len(), &local);
        for z in m.nullspace() {
            candidates.push(z.iter().map(|(c, x)| (basis[cols[c]], x.clone())).collect());
        }
        for v in candidates {
            if span.insert(&v) {
                representatives.push((deg, v));
            }
        }
    }

    // change of basis [H | im | C] and its inverse
    let mut columns: Vec<Vector> = representatives.iter().map(|(_, v)| v.clone()).collect();
    columns.extend(pairs.iter().map(|(_, v)| v.clone()));
    columns.extend(pairs.iter().map(|(c, _)| c.clone()));
    debug_assert_eq!(columns.len(), basis.len());
    let local: Vec<Vector> = columns.iter().map(|v| v.map_indices(|i| pos.get(&i).copied())).collect();
    let m = Matrix::from_columns(basis.len(), &local);
    let coords = basis
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, m.solve(&Vector::basis(k)).expect("change of basis is invertible")))
        .collect();
    HomContraction { basis, representatives, pairs, coords }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomCohomology {
    pub dims: BTreeMap<i64, usize>,
    pub representatives: Vec<String>,
}

pub fn hom_cohomology<C: AInf + ?Sized>(cat: &C, x: usize, y: usize) -> HomCohomology {
    let h = contract(cat, x, y);
    HomCohomology {
        dims: h.dims(),
        representatives: h.representatives.iter().map(|(_, v)| crate::ainf::category::vector_name(cat.basis(), v)).collect(),
    }
}

pub struct MinimalModel {
    pub category: AInfCategory,
    /// The ambient objects in the order of `category`'s objects.
    pub objects: Vec<usize>,
    pub contraction: BTreeMap<(usize, usize), HomContraction>,
    /// `ι` of each basis element of `category`.
    pub representatives: Vec<Vector>,
}

pub(crate) fn rep_name(cat_basis: &[crate::ainf::category::Morphism], v: &Vector) -> String {
    if v.len() == 1 {
        let (i, c) = v.iter().next().unwrap();
        if *c == one() {
            return cat_basis[i].name.clone();
        }
    }
    v.iter()
        .map(|(i, c)| if *c == one() { cat_basis[i].name.clone() } else { format!("{}{}", format_q(c), cat_basis[i].name) })
        .collect::<Vec<_>>()
        .join("+")
}

/// The minimal model of the full subcategory on `objects`, with products up
/// to arity `max_arity`.
pub fn minimal_model<C: AInf + ?Sized>(cat: &C, objects: &[usize], max_arity: usize) -> MinimalModel {
    let cb = cat.basis();
    let mut contraction = BTreeMap::new();
    for &x in objects {
        for &y in objects {
            contraction.insert((x, y), contract(cat, x, y));
        }
    }
    let names: Vec<String> = objects.iter().map(|&x| cat.objects()[x].clone()).collect();
    let mut out = AInfCategory::new(names);
    let local: HashMap<usize, usize> = objects.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let mut representatives = Vec::new();
    // (x, y, k) ↦ new basis index
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut used = HashSet::new();
    for (&(x, y), h) in &contraction {
        let unit = if x == y { cat.unit(x) } else { None };
        for (k, (deg, v)) in h.representatives.iter().enumerate() {
            let mut name = rep_name(cb, v);
            while !used.insert(name.clone()) {
                name.push('\'');
            }
            let i = if unit.as_ref() == Some(v) {
                out.add_unit(local[&x], &name)
            } else {
                out.add_morphism(&name, local[&x], local[&y], *deg)
            }
            .expect("names are unique");
            index.insert((x, y, k), i);
            representatives.push(v.clone());
        }
    }
    let to_model = |x: usize, y: usize, coords: &Vector| -> Vector {
        coords.iter().map(|(k, c)| (index[&(x, y, k)], c.clone())).collect()
    };

    let tuples = composable_tuples(&out, max_arity, |i| !out.is_unit(i));
    let mut by_len: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for t in tuples {
        by_len.entry(t.len()).or_default().push(t);
    }
    let ob = out.basis().to_vec();
    let obj = |i: usize| objects[i];
    // p-values on tuples of model basis elements, in ambient coordinates
    let mut p: HashMap<Vec<usize>, Vector> = HashMap::new();
    for ts in by_len.values() {
        let results: Vec<(Vec<usize>, Vector, Vector)> = ts
            .par_iter()
            .map(|t| {
                let n = t.len();
                let x = obj(ob[*t.last().unwrap()].src);
                let y = obj(ob[t[0]].tgt);
                if n == 1 {
                    return (t.clone(), representatives[t[0]].clone(), Vector::new());
                }
                let mut sum = Vector::new();
                // splittings of t into k ≥ 2 consecutive nonempty blocks
                for mask in 0..(1u64 << (n - 1)) - 1 {
                    let mut blocks: Vec<&Vector> = Vec::new();
                    let mut start = 0;
                    let mut zero = false;
                    for cut in 0..n {
                        if cut == n - 1 || mask & (1 << cut) == 0 {
                            let v = &p[&t[start..=cut].to_vec()];
                            if v.is_zero() {
                                zero = true;
                                break;
                            }
                            blocks.push(v);
                            start = cut + 1;
                        }
                    }
                    if zero || blocks.len() > cat.max_arity() {
                        continue;
                    }
                    sum.add(&cat.mu_vec(&blocks));
                }
                let h = &contraction[&(x, y)];
                let pv = h.homotopy(&sum).neg();
                let m = to_model(x, y, &h.project(&sum));
                (t.clone(), pv, m)
            })
            .collect();
        for (t, pv, m) in results {
            if !m.is_zero() {
                out.add_entry(t.clone(), m).expect("transferred products respect degrees");
            }
            p.insert(t, pv);
        }
    }
    MinimalModel { category: out, objects: objects.to_vec(), contraction, representatives }
}

/// True if `μ₁` vanishes on every hom space among `objects`.
pub fn is_minimal<C: AInf + ?Sized>(cat: &C, objects: &[usize]) -> bool {
    objects.iter().all(|&x| objects.iter().all(|&y| cat.hom(x, y).iter().all(|&i| cat.mu(&[i]).is_zero())))
}
