//! A∞ categories over shifted hom spaces.
//!
//! Inputs of a structure map are written right to left: the key
//! `[a_n, ..., a_1]` stands for `s a_n ⊗ ⋯ ⊗ s a_1`, so `a_1` is applied
//! first and `src(key[i]) = tgt(key[i + 1])`. Degrees are unshifted; the
//! output of `μ_n` has degree `Σ|a_i| − n + 2`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{sign, Q};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

/// Read access to an A∞ category with finite hom bases.
pub trait AInf: Sync {
    fn objects(&self) -> &[String];
    fn basis(&self) -> &[Morphism];
    fn hom(&self, x: usize, y: usize) -> &[usize];
    /// `μ_n` on a composable tuple of basis elements.
    fn mu(&self, inputs: &[usize]) -> Vector;
    /// The strict unit of `x`, if the category has one.
    fn unit(&self, x: usize) -> Option<Vector>;
    /// Largest `n` for which `μ_n` may be nonzero.
    fn max_arity(&self) -> usize;

    fn composable(&self, inputs: &[usize]) -> bool {
        let b = self.basis();
        inputs.windows(2).all(|w| b[w[0]].src == b[w[1]].tgt)
    }

    /// Multilinear extension of `μ_n`. The coefficients carry no degree so no
    /// Koszul signs appear.
    fn mu_vec(&self, inputs: &[&Vector]) -> Vector {
        let mut out = Vector::new();
        let mut key = Vec::with_capacity(inputs.len());
        expand(self, inputs, &mut key, Q::from_integer(1.into()), &mut out);
        out
    }
}

fn expand<C: AInf + ?Sized>(cat: &C, inputs: &[&Vector], key: &mut Vec<usize>, c: Q, out: &mut Vector) {
    if key.len() == inputs.len() {
        if cat.composable(key) {
            out.add_scaled(&cat.mu(key), &c);
        }
        return;
    }
    for (i, x) in inputs[key.len()].iter() {
        if let Some(&prev) = key.last() {
            if cat.basis()[prev].src != cat.basis()[i].tgt {
                continue;
            }
        }
        key.push(i);
        expand(cat, inputs, key, &c * x, out);
        key.pop();
    }
}

/// Shifted degree sum `✠` of a tuple.
pub fn shifted_degree(basis: &[Morphism], inputs: &[usize]) -> i64 {
    inputs.iter().map(|&i| basis[i].deg - 1).sum()
}

/// An A∞ category stored as a sparse table of structure-map entries.
///
/// Units are formal basis elements; their products follow the strict
/// unitality rules `μ₂(s id ⊗ s p) = (−1)^{|p|} s p`, `μ₂(s p ⊗ s id) = s p`
/// and `μ_n = 0` on tuples containing a unit for `n ≠ 2`. Entries involving
/// units are never stored.
#[derive(Clone, Debug, Default)]
pub struct AInfCategory {
    objects: Vec<String>,
    basis: Vec<Morphism>,
    units: Vec<Option<usize>>,
    table: HashMap<Vec<usize>, Vector>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    names: HashMap<String, usize>,
    max_arity: usize,
}

impl AInfCategory {
    pub fn new(objects: Vec<String>) -> Self {
        let units = vec![None; objects.len()];
        AInfCategory { objects, units, ..Default::default() }
    }

    pub fn add_object(&mut self, name: &str) -> usize {
        self.objects.push(name.to_string());
        self.units.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, name: &str, src: usize, tgt: usize, deg: i64) -> Result<usize> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let i = self.basis.len();
        self.basis.push(Morphism { name: name.to_string(), src, tgt, deg });
        self.names.insert(name.to_string(), i);
        self.homs.entry((src, tgt)).or_default().push(i);
        Ok(i)
    }

    /// Adds a degree-0 identity at `x` and marks it as the strict unit.
    pub fn add_unit(&mut self, x: usize, name: &str) -> Result<usize> {
        let i = self.add_morphism(name, x, x, 0)?;
        self.units[x] = Some(i);
        Ok(i)
    }

    pub fn unit_index(&self, x: usize) -> Option<usize> {
        self.units[x]
    }

    pub fn is_unit(&self, i: usize) -> bool {
        self.units[self.basis[i].tgt] == Some(i)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Records `μ_n(inputs) += value`, checking composability and degree.
    pub fn add_entry(&mut self, inputs: Vec<usize>, value: Vector) -> Result<()> {
        self.validate_entry(&inputs, &value)?;
        if value.is_zero() {
            return Ok(());
        }
        self.max_arity = self.max_arity.max(inputs.len());
        let slot = self.table.entry(inputs).or_default();
        slot.add(&value);
        Ok(())
    }

    /// Overwrites an entry; a zero value removes it.
    pub fn set_entry(&mut self, inputs: Vec<usize>, value: Vector) -> Result<()> {
        self.validate_entry(&inputs, &value)?;
        if value.is_zero() {
            self.table.remove(&inputs);
        } else {
            self.max_arity = self.max_arity.max(inputs.len());
            self.table.insert(inputs, value);
        }
        Ok(())
    }

    fn validate_entry(&self, inputs: &[usize], value: &Vector) -> Result<()> {
        if inputs.is_empty() || !self.composable(inputs) {
            return Err(Error::NotComposable);
        }
        if inputs.iter().any(|&i| self.is_unit(i)) {
            return Err(Error::DegreeMismatch("entries on units are implicit".into()));
        }
        let src = self.basis[*inputs.last().unwrap()].src;
        let tgt = self.basis[inputs[0]].tgt;
        let deg = self.output_degree(inputs);
        for (o, _) in value.iter() {
            let m = &self.basis[o];
            if m.src != src || m.tgt != tgt || m.deg != deg {
                return Err(Error::DegreeMismatch(format!(
                    "μ{}({}) has a term {} of degree {}, expected {}",
                    inputs.len(),
                    self.tuple_name(inputs),
                    m.name,
                    m.deg,
                    deg
                )));
            }
        }
        Ok(())
    }

    pub fn output_degree(&self, inputs: &[usize]) -> i64 {
        inputs.iter().map(|&i| self.basis[i].deg).sum::<i64>() - inputs.len() as i64 + 2
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    /// Entries in a deterministic order.
    pub fn sorted_entries(&self) -> Vec<(&Vec<usize>, &Vector)> {
        let mut v: Vec<_> = self.table.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn num_entries(&self) -> usize {
        self.table.len()
    }

    pub fn stored(&self, inputs: &[usize]) -> Option<&Vector> {
        self.table.get(inputs)
    }

    /// Arities with at least one nonzero stored entry.
    pub fn arities(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.table.keys().map(|k| k.len()).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Arities `≥ 3` carrying nonzero products.
    pub fn higher_arities(&self) -> Vec<usize> {
        self.arities().into_iter().filter(|&n| n >= 3).collect()
    }

    pub fn drop_arities_above(&mut self, n: usize) {
        self.table.retain(|k, _| k.len() <= n);
        self.max_arity = self.table.keys().map(|k| k.len()).max().unwrap_or(0);
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn tuple_name(&self, inputs: &[usize]) -> String {
        inputs.iter().map(|&i| self.basis[i].name.as_str()).collect::<Vec<_>>().join(" ⊗ ")
    }

    pub fn vector_name(&self, v: &Vector) -> String {
        vector_name(&self.basis, v)
    }

    /// Graded dimensions of `hom(x, y)`, as a map degree → dimension.
    pub fn graded_dims(&self, x: usize, y: usize) -> BTreeMap<i64, usize> {
        graded_dims(self, x, y)
    }

    pub fn units(&self) -> &[Option<usize>] {
        &self.units
    }
}

pub fn vector_name(basis: &[Morphism], v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("({})·{}", crate::scalar::format_q(c), basis[i].name))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn graded_dims<C: AInf + ?Sized>(cat: &C, x: usize, y: usize) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &i in cat.hom(x, y) {
        *out.entry(cat.basis()[i].deg).or_insert(0) += 1;
    }
    out
}

impl AInf for AInfCategory {
    fn objects(&self) -> &[String] {
        &self.objects
    }

    fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn mu(&self, inputs: &[usize]) -> Vector {
        let units: Vec<usize> = inputs.iter().copied().filter(|&i| self.is_unit(i)).collect();
        if !units.is_empty() {
            if inputs.len() != 2 {
                return Vector::new();
            }
            let (a2, a1) = (inputs[0], inputs[1]);
            return if self.is_unit(a2) {
                Vector::term(a1, sign(self.basis[a1].deg))
            } else {
                Vector::basis(a2)
            };
        }
        self.table.get(inputs).cloned().unwrap_or_default()
    }

    fn unit(&self, x: usize) -> Option<Vector> {
        self.units[x].map(Vector::basis)
    }

    fn max_arity(&self) -> usize {
        self.max_arity.max(2)
    }
}

/// Stores every nonzero `μ_n`, `n ≤ max_arity`, of `cat` on composable basis
/// tuples avoiding units. Unit elements of `cat` must be single basis
/// elements for them to be recognised.
pub fn materialize<C: AInf + ?Sized>(cat: &C, max_arity: usize) -> AInfCategory {
    let mut out = AInfCategory::new(cat.objects().to_vec());
    let basis = cat.basis();
    let mut unit_set = vec![false; basis.len()];
    for x in 0..cat.objects().len() {
        if let Some(u) = cat.unit(x) {
            if u.len() == 1 {
                let (i, c) = u.iter().next().unwrap();
                if *c == Q::from_integer(1.into()) {
                    unit_set[i] = true;
                }
            }
        }
    }
    for (i, m) in basis.iter().enumerate() {
        let r = if unit_set[i] { out.add_unit(m.src, &m.name) } else { out.add_morphism(&m.name, m.src, m.tgt, m.deg) };
        r.expect("basis names are unique");
    }
    let tuples = composable_tuples(cat, max_arity, |i| !unit_set[i]);
    let values: Vec<(Vec<usize>, Vector)> = {
        use rayon::prelude::*;
        tuples.into_par_iter().map(|t| {
            let v = cat.mu(&t);
            (t, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect()
    };
    for (t, v) in values {
        out.add_entry(t, v).expect("materialized entries are well-formed");
    }
    out
}

/// All composable tuples `[a_n, …, a_1]` with `1 ≤ n ≤ max_len` drawn from
/// basis elements accepted by `keep`.
pub fn composable_tuples<C: AInf + ?Sized>(cat: &C, max_len: usize, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let basis = cat.basis();
    let n_obj = cat.objects().len();
    // by_tgt[x] lists morphisms ending at x
    let mut by_tgt: Vec<Vec<usize>> = vec![Vec::new(); n_obj];
    for (i, m) in basis.iter().enumerate() {
        if keep(i) {
            by_tgt[m.tgt].push(i);
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..basis.len()).filter(|&i| keep(i)).map(|i| vec![i]).collect();
    while let Some(t) = stack.pop() {
        if t.len() < max_len {
            let src = basis[*t.last().unwrap()].src;
            for &j in &by_tgt[src] {
                let mut u = t.clone();
                u.push(j);
                stack.push(u);
            }
        }
        out.push(t);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn arrow_cat() -> (AInfCategory, usize, usize, usize) {
        let mut c = AInfCategory::new(vec!["x".into(), "y".into()]);
        let ix = c.add_unit(0, "id_x").unwrap();
        let iy = c.add_unit(1, "id_y").unwrap();
        let p = c.add_morphism("p", 0, 1, 3).unwrap();
        (c, ix, iy, p)
    }

    #[test]
    fn unit_rules() {
        let (c, ix, iy, p) = arrow_cat();
        assert_eq!(c.mu(&[iy, p]), Vector::term(p, q(-1)));
        assert_eq!(c.mu(&[p, ix]), Vector::basis(p));
        assert!(c.mu(&[iy, p, ix]).is_zero());
    }

    #[test]
    fn rejects_bad_entries() {
        let (mut c, ix, _, p) = arrow_cat();
        assert!(c.add_entry(vec![p, ix], Vector::basis(p)).is_err());
        assert!(c.add_entry(vec![p, p], Vector::basis(p)).is_err());
        // μ₁(p) must have degree 4
        assert!(c.add_entry(vec![p], Vector::basis(p)).is_err());
        assert!(c.add_morphism("p", 0, 1, 0).is_err());
    }

    #[test]
    fn multilinear_extension() {
        let (c, _, iy, p) = arrow_cat();
        let u = Vector::term(iy, q(2));
        let v = Vector::term(p, q(3));
        assert_eq!(c.mu_vec(&[&u, &v]), Vector::term(p, q(-6)));
    }

    #[test]
    fn tuples_are_composable() {
        let (c, _, _, _) = arrow_cat();
        let t = composable_tuples(&c, 3, |_| true);
        assert!(t.iter().all(|t| c.composable(t)));
        // x→x: id_x chains; p then id_y chains etc.
        assert!(t.contains(&vec![1, 2, 0]));
    }
}
