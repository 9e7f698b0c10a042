//! One-sided twisted complexes and the category `tw(A)` they span.
//!
//! A morphism `s^m X → s^l Y` of the shift closure `ℤA` is an element `b` of
//! `A(X, Y)` of degree `|b| + m − l`. Products in `ℤA` are those of `A`
//! multiplied by `(−1)^{m_0 + ⋯ + m_{n−1}}`, the sum of the source shifts of
//! the inputs; with this sign the identity of `X` is also the strict unit of
//! every shift `s^m X`.
//!
//! The connection of a complex is stored by `(source entry, target entry)`
//! and must point strictly forward.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::ainf::category::{AInf, Morphism};
use crate::error::{Error, Result};
use crate::scalar::{one, sign, Q};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedObject {
    pub object: usize,
    pub shift: i64,
}

impl ShiftedObject {
    pub fn new(object: usize, shift: i64) -> Self {
        ShiftedObject { object, shift }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub name: String,
    pub entries: Vec<ShiftedObject>,
    /// `(i, j) ↦ δ` with `δ ∈ ℤA(X^i, X^j)` and `i < j`.
    pub delta: BTreeMap<(usize, usize), Vector>,
}

/// A δ-path: inputs in application order as `(base element, source shift)`,
/// with the product of the coefficients.
type DeltaPath = (Vec<(usize, i64)>, Q);

impl TwistedComplex {
    /// The one-term complex `(X, 0)`.
    pub fn object<C: AInf + ?Sized>(base: &C, x: usize) -> Self {
        TwistedComplex {
            name: base.objects()[x].clone(),
            entries: vec![ShiftedObject::new(x, 0)],
            delta: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All δ-paths from entry `u` to entry `v`, including the empty path
    /// when `u = v`.
    fn paths(&self, u: usize, v: usize) -> Vec<DeltaPath> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, DeltaPath)> = vec![(u, (Vec::new(), one()))];
        while let Some((at, (path, c))) = stack.pop() {
            if at == v {
                out.push((path.clone(), c.clone()));
            }
            if at >= v {
                continue;
            }
            for ((i, j), d) in self.delta.range((at, 0)..(at + 1, 0)) {
                debug_assert_eq!(*i, at);
                for (b, x) in d.iter() {
                    let mut p = path.clone();
                    p.push((b, self.entries[at].shift));
                    stack.push((*j, (p, &c * x)));
                }
            }
        }
        out
    }

    /// Longest possible δ-path; bounds the number of δ insertions per slot.
    pub fn max_insertions(&self) -> usize {
        self.len().saturating_sub(1)
    }

    /// Length of the longest δ-path actually present.
    pub fn longest_delta_path(&self) -> usize {
        (0..self.len())
            .flat_map(|u| (u..self.len()).map(move |v| (u, v)))
            .flat_map(|(u, v)| self.paths(u, v))
            .map(|(p, _)| p.len())
            .max()
            .unwrap_or(0)
    }
}

/// `μ^{ℤA}` on inputs given in application order.
fn mu_za<C: AInf + ?Sized>(base: &C, seq: &[(usize, i64)], c: &Q, out: &mut Vector) {
    if seq.is_empty() || seq.len() > base.max_arity() {
        return;
    }
    let key: Vec<usize> = seq.iter().rev().map(|(b, _)| *b).collect();
    let v = base.mu(&key);
    if v.is_zero() {
        return;
    }
    let s = sign(seq.iter().map(|(_, m)| m).sum());
    out.add_scaled(&v, &(c * &s));
}

/// Validates degrees, triangularity and the Maurer–Cartan equation.
pub fn make_twisted_complex<C: AInf + ?Sized>(
    base: &C,
    name: &str,
    entries: Vec<ShiftedObject>,
    delta: BTreeMap<(usize, usize), Vector>,
) -> Result<TwistedComplex> {
    let basis = base.basis();
    for (&(i, j), d) in &delta {
        if i >= j || j >= entries.len() {
            return Err(Error::NotUpperTriangular(i, j));
        }
        for (b, _) in d.iter() {
            let m = &basis[b];
            if m.src != entries[i].object || m.tgt != entries[j].object {
                return Err(Error::DegreeMismatch(format!("δ({i},{j}) has a term {} with wrong endpoints", m.name)));
            }
            let deg = m.deg + entries[i].shift - entries[j].shift;
            if deg != 1 {
                return Err(Error::DegreeMismatch(format!("δ({i},{j}) has a term {} of degree {deg}", m.name)));
            }
        }
    }
    let delta = delta.into_iter().filter(|(_, d)| !d.is_zero()).collect();
    let x = TwistedComplex { name: name.to_string(), entries, delta };
    for u in 0..x.len() {
        for v in u + 1..x.len() {
            let mut sum = Vector::new();
            for (p, c) in x.paths(u, v) {
                mu_za(base, &p, &c, &mut sum);
            }
            if !sum.is_zero() {
                return Err(Error::MaurerCartanFailure(format!(
                    "component ({u},{v}) of {name} is {}",
                    crate::ainf::category::vector_name(basis, &sum)
                )));
            }
        }
    }
    Ok(x)
}

/// The cone `(sX, Y)` of a closed degree-0 morphism `f: X → Y`, with
/// connection `−f`.
pub fn cone<C: AInf + ?Sized>(base: &C, name: &str, f: &Vector) -> Result<TwistedComplex> {
    let basis = base.basis();
    let Some((b0, _)) = f.iter().next() else {
        return Err(Error::BadParameter("cone of the zero morphism needs explicit objects".into()));
    };
    let (x, y) = (basis[b0].src, basis[b0].tgt);
    if f.iter().any(|(b, _)| basis[b].src != x || basis[b].tgt != y) {
        return Err(Error::NotComposable);
    }
    if f.iter().any(|(b, _)| basis[b].deg != 0) || !base.mu_vec(&[f]).is_zero() {
        return Err(Error::NotClosed);
    }
    let entries = vec![ShiftedObject::new(x, 1), ShiftedObject::new(y, 0)];
    make_twisted_complex(base, name, entries, BTreeMap::from([((0, 1), f.neg())]))
}

/// The full subcategory of `tw(A)` on a finite list of twisted complexes.
///
/// A basis element of `hom(X, Y)` is a triple `(i, j, b)`: a base element
/// `b` from entry `i` of `X` to entry `j` of `Y`.
pub struct TwCategory<'a, C: AInf + ?Sized> {
    base: &'a C,
    complexes: Vec<TwistedComplex>,
    names: Vec<String>,
    basis: Vec<Morphism>,
    parts: Vec<(usize, usize, usize)>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    lookup: HashMap<(usize, usize, usize, usize, usize), usize>,
    paths: Vec<Vec<Vec<Vec<DeltaPath>>>>,
    cache: RwLock<HashMap<Vec<usize>, Vector>>,
}

impl<'a, C: AInf + ?Sized> TwCategory<'a, C> {
    pub fn new(base: &'a C, complexes: Vec<TwistedComplex>) -> Self {
        let names: Vec<String> = complexes.iter().map(|x| x.name.clone()).collect();
        let bb = base.basis();
        let mut basis = Vec::new();
        let mut parts = Vec::new();
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut lookup = HashMap::new();
        for (xi, x) in complexes.iter().enumerate() {
            for (yi, y) in complexes.iter().enumerate() {
                let plain = x.len() == 1 && y.len() == 1 && x.entries[0].shift == 0 && y.entries[0].shift == 0;
                for (i, ex) in x.entries.iter().enumerate() {
                    for (j, ey) in y.entries.iter().enumerate() {
                        for &b in base.hom(ex.object, ey.object) {
                            let name = if plain && x.name == base.objects()[ex.object] && y.name == base.objects()[ey.object] {
                                bb[b].name.clone()
                            } else {
                                format!("{}[{}.{}>{}.{}]", bb[b].name, x.name, i, y.name, j)
                            };
                            let k = basis.len();
                            basis.push(Morphism { name, src: xi, tgt: yi, deg: bb[b].deg + ex.shift - ey.shift });
                            parts.push((i, j, b));
                            homs.entry((xi, yi)).or_default().push(k);
                            lookup.insert((xi, yi, i, j, b), k);
                        }
                    }
                }
            }
        }
        let paths = complexes
            .iter()
            .map(|x| (0..x.len()).map(|u| (0..x.len()).map(|v| x.paths(u, v)).collect()).collect())
            .collect();
        TwCategory { base, complexes, names, basis, parts, homs, lookup, paths, cache: RwLock::new(HashMap::new()) }
    }

    pub fn base(&self) -> &C {
        self.base
    }

    pub fn complexes(&self) -> &[TwistedComplex] {
        &self.complexes
    }

    pub fn complex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `(source entry, target entry, base element)` of a basis element.
    pub fn part(&self, k: usize) -> (usize, usize, usize) {
        self.parts[k]
    }

    pub fn element(&self, x: usize, y: usize, i: usize, j: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(x, y, i, j, b)).copied()
    }

    /// Embeds a base vector from entry `i` of `x` to entry `j` of `y`.
    pub fn embed(&self, x: usize, y: usize, i: usize, j: usize, v: &Vector) -> Vector {
        v.iter().map(|(b, c)| (self.lookup[&(x, y, i, j, b)], c.clone())).collect()
    }

    fn compute(&self, inputs: &[usize]) -> Vector {
        let k = inputs.len();
        let first = inputs[k - 1];
        let last = inputs[0];
        let x0 = self.basis[first].src;
        let xk = self.basis[last].tgt;
        // slots[t]: δ-path choices in the gap before input t+1 (application
        // order), with the final slot after the last input
        let mut slots: Vec<Vec<&DeltaPath>> = Vec::with_capacity(k + 1);
        let (i1, _, _) = self.parts[first];
        let mut starts = Vec::new();
        let mut first_slot = Vec::new();
        for s in 0..self.complexes[x0].len() {
            for p in &self.paths[x0][s][i1] {
                starts.push(s);
                first_slot.push(p);
            }
        }
        slots.push(first_slot);
        for t in 0..k - 1 {
            let a = inputs[k - 1 - t];
            let b = inputs[k - 2 - t];
            let xt = self.basis[a].tgt;
            let (_, ja, _) = self.parts[a];
            let (ib, _, _) = self.parts[b];
            let ps: Vec<&DeltaPath> = self.paths[xt][ja][ib].iter().collect();
            if ps.is_empty() {
                return Vector::new();
            }
            slots.push(ps);
        }
        let (_, jk, _) = self.parts[last];
        let mut ends = Vec::new();
        let mut last_slot = Vec::new();
        for e in 0..self.complexes[xk].len() {
            for p in &self.paths[xk][jk][e] {
                ends.push(e);
                last_slot.push(p);
            }
        }
        slots.push(last_slot);

        let shift_of = |input: usize| -> i64 {
            let m = &self.basis[input];
            self.complexes[m.src].entries[self.parts[input].0].shift
        };
        let mut out = Vector::new();
        let mut seq: Vec<(usize, i64)> = Vec::new();
        let mut choice = vec![0usize; k + 1];
        // odometer over slot choices
        'outer: loop {
            seq.clear();
            let mut c = one();
            for t in 0..=k {
                let (p, pc) = slots[t][choice[t]];
                seq.extend_from_slice(p);
                c = &c * pc;
                if t < k {
                    let a = inputs[k - 1 - t];
                    seq.push((self.parts[a].2, shift_of(a)));
                }
            }
            let mut v = Vector::new();
            mu_za(self.base, &seq, &c, &mut v);
            if !v.is_zero() {
                let s = starts[choice[0]];
                let e = ends[choice[k]];
                for (b, x) in v.iter() {
                    out.add_term(self.lookup[&(x0, xk, s, e, b)], x.clone());
                }
            }
            for t in 0..=k {
                choice[t] += 1;
                if choice[t] < slots[t].len() {
                    continue 'outer;
                }
                choice[t] = 0;
            }
            break;
        }
        out
    }
}

impl<C: AInf + ?Sized> AInf for TwCategory<'_, C> {
    fn objects(&self) -> &[String] {
        &self.names
    }

    fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn mu(&self, inputs: &[usize]) -> Vector {
        if inputs.is_empty() {
            return Vector::new();
        }
        if let Some(v) = self.cache.read().unwrap().get(inputs) {
            return v.clone();
        }
        let v = self.compute(inputs);
        self.cache.write().unwrap().insert(inputs.to_vec(), v.clone());
        v
    }

    fn unit(&self, x: usize) -> Option<Vector> {
        let mut out = Vector::new();
        for (i, e) in self.complexes[x].entries.iter().enumerate() {
            let u = self.base.unit(e.object)?;
            out.add(&self.embed(x, x, i, i, &u));
        }
        Some(out)
    }

    fn max_arity(&self) -> usize {
        self.base.max_arity()
    }
}
