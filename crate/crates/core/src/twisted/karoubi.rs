//! Splitting strict idempotents.
//!
//! For summands `(X, e)` and `(Y, f)` the hom space is `f ∘ hom(X, Y) ∘ e`,
//! where `b ∘ a = (−1)^{|a|} μ₂(b, a)`. Products are those of the ambient
//! category; closure of every product in the projected spaces and strictness
//! of the new units are verified rather than assumed.

use std::collections::HashMap;

use crate::ainf::category::{composable_tuples, AInf, AInfCategory};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::scalar::sign;
use crate::vector::Vector;

#[derive(Clone, Debug)]
pub struct Summand {
    pub name: String,
    pub object: usize,
    pub idempotent: Vector,
}

impl Summand {
    pub fn new(name: &str, object: usize, idempotent: Vector) -> Self {
        Summand { name: name.to_string(), object, idempotent }
    }
}

pub struct Split {
    pub category: AInfCategory,
    /// Ambient vector of each basis element of `category`.
    pub embeddings: Vec<Vector>,
}

fn compose<C: AInf + ?Sized>(cat: &C, b: &Vector, a: &Vector) -> Vector {
    let mut out = Vector::new();
    for (i, c) in a.iter() {
        let v = cat.mu_vec(&[b, &Vector::basis(i)]);
        out.add_scaled(&v, &(c * &sign(cat.basis()[i].deg)));
    }
    out
}

/// Checks that `e` is a closed degree-0 idempotent endomorphism of `x`.
pub fn check_idempotent<C: AInf + ?Sized>(cat: &C, x: usize, e: &Vector) -> Result<()> {
    let b = cat.basis();
    if e.iter().any(|(i, _)| b[i].src != x || b[i].tgt != x || b[i].deg != 0) {
        return Err(Error::NotIdempotent);
    }
    if !cat.mu_vec(&[e]).is_zero() || compose(cat, e, e) != *e {
        return Err(Error::NotIdempotent);
    }
    Ok(())
}

/// `e` and `1 − e` as the two summands of `x`.
pub fn complementary<C: AInf + ?Sized>(cat: &C, x: usize, e: &Vector, names: (&str, &str)) -> Result<[Summand; 2]> {
    let unit = cat.unit(x).ok_or_else(|| Error::BadParameter("object has no strict unit".into()))?;
    Ok([Summand::new(names.0, x, e.clone()), Summand::new(names.1, x, unit.sub(e))])
}

// ambient positions, the matrix of chosen basis vectors, and their output indices
type Solver = (HashMap<usize, usize>, Matrix, Vec<usize>);

/// The full subcategory of the idempotent completion on `summands`, with
/// products up to `max_arity`.
pub fn split_idempotents<C: AInf + ?Sized>(cat: &C, summands: &[Summand], max_arity: usize) -> Result<Split> {
    let cb = cat.basis();
    for s in summands {
        check_idempotent(cat, s.object, &s.idempotent)?;
    }
    let mut out = AInfCategory::new(summands.iter().map(|s| s.name.clone()).collect());
    let mut embeddings: Vec<Vector> = Vec::new();
    // per (s, t): ambient positions and the matrix of chosen basis vectors
    let mut solvers: HashMap<(usize, usize), Solver> = HashMap::new();
    for (si, s) in summands.iter().enumerate() {
        for (ti, t) in summands.iter().enumerate() {
            let mut hom: Vec<usize> = cat.hom(s.object, t.object).to_vec();
            hom.sort_by(|&i, &j| cb[i].deg.cmp(&cb[j].deg).then_with(|| cb[i].name.cmp(&cb[j].name)));
            let mut candidates: Vec<Vector> = Vec::new();
            if si == ti {
                candidates.push(s.idempotent.clone());
            }
            for &b in &hom {
                let v = compose(cat, &compose(cat, &t.idempotent, &Vector::basis(b)), &s.idempotent);
                candidates.push(v);
            }
            let mut span = Span::new();
            let mut chosen = Vec::new();
            for v in candidates {
                if v.is_zero() || !span.insert(&v) {
                    continue;
                }
                let p = compose(cat, &compose(cat, &t.idempotent, &v), &s.idempotent);
                if p != v {
                    return Err(Error::HigherProductObstruction(format!(
                        "projection onto {} → {} is not idempotent",
                        s.name, t.name
                    )));
                }
                let deg = cb[v.iter().next().unwrap().0].deg;
                let idx = if si == ti && chosen.is_empty() {
                    out.add_unit(si, &format!("id_{}", s.name))?
                } else {
                    let base = crate::twisted::transfer::rep_name(cb, &v);
                    let mut name = format!("{}:{}>{}", base, s.name, t.name);
                    while out.index(&name).is_some() {
                        name.push('\'');
                    }
                    out.add_morphism(&name, si, ti, deg)?
                };
                embeddings.push(v);
                chosen.push(idx);
            }
            let pos: HashMap<usize, usize> = hom.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let cols: Vec<Vector> = chosen.iter().map(|&i| embeddings[i].map_indices(|j| pos.get(&j).copied())).collect();
            solvers.insert((si, ti), (pos, Matrix::from_columns(hom.len(), &cols), chosen));
        }
    }

    let tuples = composable_tuples(&out, max_arity, |_| true);
    let ob = out.basis().to_vec();
    for t in tuples {
        let inputs: Vec<&Vector> = t.iter().map(|&i| &embeddings[i]).collect();
        let v = cat.mu_vec(&inputs);
        let (si, ti) = (ob[*t.last().unwrap()].src, ob[t[0]].tgt);
        let (pos, m, chosen) = &solvers[&(si, ti)];
        let local = v.map_indices(|j| pos.get(&j).copied());
        if local.len() != v.len() {
            return Err(Error::HigherProductObstruction(format!("μ{} leaves the hom space", t.len())));
        }
        let coords = m.solve(&local).ok_or_else(|| {
            Error::HigherProductObstruction(format!("μ{}({}) is not in the projected hom space", t.len(), out.tuple_name(&t)))
        })?;
        let value: Vector = coords.iter().map(|(k, c)| (chosen[k], c.clone())).collect();
        if t.iter().any(|&i| out.is_unit(i)) {
            if out.mu(&t) != value {
                return Err(Error::HigherProductObstruction(format!(
                    "the unit of a summand is not strict on {}",
                    out.tuple_name(&t)
                )));
            }
            continue;
        }
        out.add_entry(t, value)?;
    }
    Ok(Split { category: out, embeddings })
}
