//! Reduced Hochschild cochains of a graded category, the Gerstenhaber
//! bracket, and Hochschild cohomology by exact linear algebra.
//!
//! A cochain component is keyed by `(x, [a_n, …, a_1])` where the inputs are
//! composable non-unit basis elements and `x` is the source object (for
//! `n = 0` the object the component lives at). Cochains vanish on units.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ainf::category::{composable_tuples, shifted_degree, AInf, AInfCategory};
use crate::linalg::{Matrix, Span};
use crate::scalar::{one, qf, sign, Q};
use crate::vector::Vector;

pub type Key = (usize, Vec<usize>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    /// `|f|`: the output of `f(s a_n ⊗ ⋯ ⊗ s a_1)` has degree
    /// `|f| + Σ(|a_i| − 1)`.
    pub degree: i64,
    pub comps: BTreeMap<Key, Vector>,
}

impl Cochain {
    pub fn zero(degree: i64) -> Self {
        Cochain { degree, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_term(&mut self, key: Key, v: &Vector, c: &Q) {
        let slot = self.comps.entry(key.clone()).or_default();
        slot.add_scaled(v, c);
        if slot.is_zero() {
            self.comps.remove(&key);
        }
    }

    pub fn add(&mut self, other: &Cochain, c: &Q) {
        for (k, v) in &other.comps {
            self.add_term(k.clone(), v, c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        out.add(self, c);
        out
    }

    pub fn get(&self, key: &Key) -> Option<&Vector> {
        self.comps.get(key)
    }

    pub fn arities(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.comps.keys().map(|k| k.1.len()).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// The arity-2 cochain `μ(sa ⊗ sb) = (−1)^{|b|} ab` of a graded
    /// category. Unlike reduced cochains it has components on units.
    pub fn multiplication(cat: &AInfCategory) -> Cochain {
        let mut out = Cochain::zero(2);
        for (k, v) in cat.entries() {
            if k.len() == 2 {
                out.add_term(key_of(cat, k), v, &one());
            }
        }
        let b = cat.basis();
        for x in 0..cat.objects().len() {
            let Some(u) = cat.unit_index(x) else { continue };
            for (i, m) in b.iter().enumerate() {
                if m.tgt == x {
                    out.add_term((m.src, vec![u, i]), &cat.mu(&[u, i]), &one());
                }
                if m.src == x && i != u {
                    out.add_term((x, vec![i, u]), &cat.mu(&[i, u]), &one());
                }
            }
        }
        out
    }

    /// The structure maps of arity `≥ 1` other than the binary products of
    /// `base`, i.e. `μ − μ₂^{base}` as a cochain of degree 2.
    pub fn perturbation(cat: &AInfCategory, base: &AInfCategory) -> Cochain {
        let mut out = Cochain::zero(2);
        for (k, v) in cat.entries() {
            out.add_term(key_of(cat, k), v, &one());
        }
        for (k, v) in base.entries() {
            out.add_term(key_of(base, k), v, &-one());
        }
        out
    }
}

fn key_of<C: AInf + ?Sized>(cat: &C, inputs: &[usize]) -> Key {
    (cat.basis()[*inputs.last().unwrap()].src, inputs.to_vec())
}

/// Hochschild calculus over a graded category given by its binary products.
pub struct Hochschild<'a> {
    cat: &'a AInfCategory,
    non_units: Vec<usize>,
    /// `o ↦ [(x, y, c)]` with `c` the coefficient of `o` in `xy`.
    factorizations: HashMap<usize, Vec<(usize, usize, Q)>>,
}

impl<'a> Hochschild<'a> {
    pub fn new(cat: &'a AInfCategory) -> Self {
        let non_units: Vec<usize> = (0..cat.basis().len()).filter(|&i| !cat.is_unit(i)).collect();
        let mut factorizations: HashMap<usize, Vec<(usize, usize, Q)>> = HashMap::new();
        for (k, v) in cat.entries() {
            if k.len() == 2 {
                let (x, y) = (k[0], k[1]);
                // xy = (−1)^{|y|} μ₂(x, y)
                let s = sign(cat.basis()[y].deg);
                for (o, c) in v.iter() {
                    factorizations.entry(o).or_default().push((x, y, c * &s));
                }
            }
        }
        Hochschild { cat, non_units, factorizations }
    }

    pub fn category(&self) -> &AInfCategory {
        self.cat
    }

    fn deg(&self, i: usize) -> i64 {
        self.cat.basis()[i].deg
    }

    /// Algebra product `xy` of basis elements.
    fn product(&self, x: usize, y: usize) -> Vector {
        self.cat.mu(&[x, y]).scaled(&sign(self.deg(y)))
    }

    fn vec_times(&self, v: &Vector, y: usize) -> Vector {
        let mut out = Vector::new();
        for (o, c) in v.iter() {
            out.add_scaled(&self.product(o, y), c);
        }
        out
    }

    fn times_vec(&self, x: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (o, c) in v.iter() {
            out.add_scaled(&self.product(x, o), c);
        }
        out
    }

    fn key_tgt(&self, key: &Key) -> usize {
        match key.1.first() {
            Some(&a) => self.cat.basis()[a].tgt,
            None => key.0,
        }
    }

    /// The Hochschild differential.
    pub fn differential(&self, f: &Cochain) -> Cochain {
        let b = self.cat.basis();
        let d = f.degree;
        let mut out = Cochain::zero(d + 1);
        for (key, val) in &f.comps {
            let (src, inputs) = key;
            let tgt = self.key_tgt(key);
            let n = inputs.len();
            // −(−1)^{✠₁|f|} f(s a_{n+1..2}) a₁
            for &a1 in &self.non_units {
                if b[a1].tgt != *src {
                    continue;
                }
                let v = self.vec_times(val, a1);
                if v.is_zero() {
                    continue;
                }
                let s = -sign((b[a1].deg - 1) * d);
                let mut t = inputs.clone();
                t.push(a1);
                out.add_term((b[a1].src, t), &v, &s);
            }
            // (−1)^{|f|+✠ₙ} a_{n+1} f(s a_{n..1})
            let sh = shifted_degree(b, inputs);
            for &a in &self.non_units {
                if b[a].src != tgt {
                    continue;
                }
                let v = self.times_vec(a, val);
                if v.is_zero() {
                    continue;
                }
                let s = sign(d + sh);
                let mut t = vec![a];
                t.extend_from_slice(inputs);
                out.add_term((*src, t), &v, &s);
            }
            // −Σ (−1)^{|f|+✠_{i−1}} f(… ⊗ s(a_i a_{i−1}) ⊗ …)
            for j in 0..n {
                let Some(facts) = self.factorizations.get(&inputs[j]) else { continue };
                let sh_right = shifted_degree(b, &inputs[j + 1..]);
                for (x, y, c) in facts {
                    if self.cat.is_unit(*x) || self.cat.is_unit(*y) {
                        continue;
                    }
                    // ✠_{i−1} counts a_{i−1} = y and everything to its right
                    let s = -sign(d + sh_right + b[*y].deg - 1);
                    let mut t = inputs[..j].to_vec();
                    t.push(*x);
                    t.push(*y);
                    t.extend_from_slice(&inputs[j + 1..]);
                    out.add_term((*src, t), val, &(c * &s));
                }
            }
        }
        out
    }

    /// `f • g`.
    pub fn circle(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let b = self.cat.basis();
        let mut out = Cochain::zero(f.degree + g.degree - 1);
        // g components indexed by output element
        let mut by_out: HashMap<usize, Vec<(&Key, Q)>> = HashMap::new();
        for (k, v) in &g.comps {
            for (o, c) in v.iter() {
                by_out.entry(o).or_default().push((k, c.clone()));
            }
        }
        for (fkey, fval) in &f.comps {
            let inputs = &fkey.1;
            for j in 0..inputs.len() {
                let Some(gs) = by_out.get(&inputs[j]) else { continue };
                let sh = shifted_degree(b, &inputs[j + 1..]);
                let s = sign(sh * (g.degree - 1));
                for (gkey, c) in gs {
                    let mut t = inputs[..j].to_vec();
                    t.extend_from_slice(&gkey.1);
                    t.extend_from_slice(&inputs[j + 1..]);
                    if t.is_empty() || !self.cat.composable(&t) {
                        continue;
                    }
                    if gkey.1.is_empty() {
                        let o = inputs[j];
                        if b[o].src != gkey.0 {
                            continue;
                        }
                    }
                    let src = b[*t.last().unwrap()].src;
                    out.add_term((src, t), fval, &(c * &s));
                }
            }
        }
        out
    }

    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let mut out = self.circle(f, g);
        let s = -sign((f.degree - 1) * (g.degree - 1));
        out.add(&self.circle(g, f), &s);
        out
    }

    /// `δ(μ̃) + ½[μ̃, μ̃]`.
    pub fn maurer_cartan(&self, mt: &Cochain) -> Cochain {
        let mut out = self.differential(mt);
        out.add(&self.bracket(mt, mt), &qf(1, 2));
        out
    }

    /// Basis of the cochains of the given arity and degree: pairs of an input
    /// key and a parallel output basis element.
    pub fn cochain_basis(&self, arity: usize, degree: i64) -> Vec<(Key, usize)> {
        let b = self.cat.basis();
        let keys: Vec<Key> = if arity == 0 {
            (0..self.cat.objects().len()).map(|x| (x, Vec::new())).collect()
        } else {
            composable_tuples(self.cat, arity, |i| !self.cat.is_unit(i))
                .into_iter()
                .filter(|t| t.len() == arity)
                .map(|t| (b[*t.last().unwrap()].src, t))
                .collect()
        };
        let mut out = Vec::new();
        for key in keys {
            let src = key.0;
            let tgt = self.key_tgt(&key);
            let want = degree + shifted_degree(b, &key.1);
            for &o in self.cat.hom(src, tgt) {
                if b[o].deg == want {
                    out.push((key.clone(), o));
                }
            }
        }
        out.sort();
        out
    }

    /// Longest composable chain of non-unit elements, if bounded by `cap`.
    pub fn max_chain(&self, cap: usize) -> Option<usize> {
        let tuples = composable_tuples(self.cat, cap + 1, |i| !self.cat.is_unit(i));
        let m = tuples.iter().map(|t| t.len()).max().unwrap_or(0);
        (m <= cap).then_some(m)
    }

    fn as_cochain(&self, degree: i64, basis: &[(Key, usize)], v: &Vector) -> Cochain {
        let mut f = Cochain::zero(degree);
        for (i, c) in v.iter() {
            let (k, o) = &basis[i];
            f.add_term(k.clone(), &Vector::basis(*o), c);
        }
        f
    }

    fn coords(&self, f: &Cochain, index: &HashMap<(Key, usize), usize>) -> Option<Vector> {
        let mut v = Vector::new();
        for (k, val) in &f.comps {
            for (o, c) in val.iter() {
                v.add_term(*index.get(&(k.clone(), o))?, c.clone());
            }
        }
        Some(v)
    }

    /// Matrix of `δ` from arity `n`, degree `d` into arity `n + 1`.
    fn differential_matrix(&self, src: &[(Key, usize)], tgt: &[(Key, usize)], degree: i64) -> Matrix {
        let index: HashMap<(Key, usize), usize> = tgt.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let cols: Vec<Vector> = (0..src.len())
            .map(|i| {
                let f = self.as_cochain(degree, src, &Vector::basis(i));
                self.coords(&self.differential(&f), &index).expect("δ lands in the reduced complex")
            })
            .collect();
        Matrix::from_columns(tgt.len(), &cols)
    }

    /// `HH^degree` restricted to cochains of arity at most `max_arity`.
    pub fn cohomology(&self, degree: i64, max_arity: usize) -> HochschildCohomology {
        let longest = self.max_chain(max_arity + 1);
        let truncated = longest.is_none_or(|m| m > max_arity);
        let mut by_arity = Vec::new();
        let mut reps = Vec::new();
        for n in 0..=max_arity {
            let cur = self.cochain_basis(n, degree);
            if cur.is_empty() {
                by_arity.push(0);
                continue;
            }
            let next = self.cochain_basis(n + 1, degree + 1);
            let d_n = self.differential_matrix(&cur, &next, degree);
            let kernel = d_n.nullspace();
            let mut image = Span::new();
            if n > 0 {
                let prev = self.cochain_basis(n - 1, degree - 1);
                let d_prev = self.differential_matrix(&prev, &cur, degree - 1);
                for j in 0..d_prev.cols {
                    image.insert(&d_prev.column(j));
                }
            }
            let dim = kernel.len() - image.dim();
            by_arity.push(dim);
            // prefer single-entry cocycles as representatives
            let mut span = image.clone();
            let singles: Vec<Vector> = (0..cur.len())
                .filter(|&i| (0..d_n.rows).all(|r| d_n.data[r][i] == Q::from_integer(0.into())))
                .map(Vector::basis)
                .collect();
            for v in singles.iter().chain(kernel.iter()) {
                if span.dim() - image.dim() == dim {
                    break;
                }
                if span.insert(v) {
                    reps.push(self.as_cochain(degree, &cur, v));
                }
            }
        }
        HochschildCohomology { degree, dimension: by_arity.iter().sum(), by_arity, representatives: reps, truncated }
    }
}

#[derive(Clone, Debug)]
pub struct HochschildCohomology {
    pub degree: i64,
    pub dimension: usize,
    pub by_arity: Vec<usize>,
    pub representatives: Vec<Cochain>,
    /// Longer composable chains exist than the arity bound covers.
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CochainEntry {
    pub inputs: Vec<String>,
    pub object: String,
    pub output: Vec<(String, String)>,
}

pub fn describe(cat: &AInfCategory, f: &Cochain) -> Vec<CochainEntry> {
    f.comps
        .iter()
        .map(|((x, inputs), v)| CochainEntry {
            inputs: inputs.iter().map(|&i| cat.name(i).to_string()).collect(),
            object: cat.objects()[*x].clone(),
            output: v.iter().map(|(o, c)| (cat.name(o).to_string(), crate::scalar::format_q(c))).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{path_algebra_category, GradedQuiver, MonomialAlgebra};
    use crate::scalar::q;

    fn alg(q: GradedQuiver) -> AInfCategory {
        path_algebra_category(&MonomialAlgebra::finite(q).unwrap()).unwrap()
    }

    fn a2() -> AInfCategory {
        alg(GradedQuiver::build(&["1", "2"], &[("p", "1", "2", 0)], &[], &[]).unwrap())
    }

    fn graded_a3() -> AInfCategory {
        alg(GradedQuiver::build(&["1", "2", "3"], &[("p", "1", "2", 1), ("q", "2", "3", -2)], &[], &[]).unwrap())
    }

    #[test]
    fn unit_cochain_is_closed() {
        let c = graded_a3();
        let h = Hochschild::new(&c);
        let mut f = Cochain::zero(0);
        for x in 0..3 {
            f.add_term((x, vec![]), &Vector::basis(c.unit_index(x).unwrap()), &one());
        }
        assert!(h.differential(&f).is_zero());
    }

    #[test]
    fn inner_derivation_is_closed() {
        // a ↦ [x, a] with x = e_1: the coboundary of an arity-0 cochain
        let c = a2();
        let h = Hochschild::new(&c);
        let mut x = Cochain::zero(0);
        x.add_term((0, vec![]), &Vector::basis(c.index("e_1").unwrap()), &one());
        let d = h.differential(&x);
        let p = c.index("p").unwrap();
        // δ(x)(p) = p x − x p = p
        assert_eq!(d.get(&(0, vec![p])), Some(&Vector::basis(p)));
        assert!(h.differential(&d).is_zero());
    }

    #[test]
    fn differential_is_bracket_with_mu() {
        let c = graded_a3();
        let h = Hochschild::new(&c);
        let mu = Cochain::multiplication(&c);
        for n in 0..=2 {
            for d in -3..=3 {
                for (k, o) in h.cochain_basis(n, d) {
                    let mut f = Cochain::zero(d);
                    f.add_term(k, &Vector::basis(o), &one());
                    assert_eq!(h.differential(&f), h.bracket(&mu, &f));
                    assert!(h.differential(&h.differential(&f)).is_zero());
                }
            }
        }
    }

    #[test]
    fn associative_mu_brackets_to_zero() {
        let c = graded_a3();
        let h = Hochschild::new(&c);
        let mu = Cochain::multiplication(&c);
        assert!(h.bracket(&mu, &mu).is_zero());
        assert_eq!(h.bracket(&mu, &mu), h.circle(&mu, &mu).scaled(&q(2)));
    }

    #[test]
    fn a2_hh() {
        let c = a2();
        let h = Hochschild::new(&c);
        assert_eq!(h.cohomology(2, 4).dimension, 0);
        let hh0 = h.cohomology(0, 4);
        assert_eq!(hh0.dimension, 1);
        assert!(!hh0.truncated);
    }
}
