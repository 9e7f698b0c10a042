//! The orbit category `A/ℤ₂`: `hom(X, Y) = A(X, Y) ⊕ A(X, gY)` with
//! `μ_n((g_n, φ_n), …, (g_1, φ_1)) = (g_1⋯g_n, μ_n(F_{g_1⋯g_{n−1}} φ_n, …, F_{g_1} φ_2, φ_1))`.

use std::collections::{BTreeMap, HashMap};

use crate::ainf::category::{AInf, Morphism};
use crate::error::Result;
use crate::orbit::action::GroupAction;
use crate::vector::Vector;

pub struct OrbitCategory<'a, C: AInf + ?Sized> {
    base: &'a C,
    action: GroupAction,
    basis: Vec<Morphism>,
    /// `(twisted, base element)`; a twisted element lies in `A(X, gY)`.
    parts: Vec<(bool, usize)>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    lookup: HashMap<(bool, usize), usize>,
}

impl<'a, C: AInf + ?Sized> OrbitCategory<'a, C> {
    pub fn new(base: &'a C, action: GroupAction) -> Result<Self> {
        let n = base.objects().len();
        let bb = base.basis();
        let mut basis = Vec::new();
        let mut parts = Vec::new();
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut lookup = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for twisted in [false, true] {
                    let gy = if twisted { action.act_object(y) } else { y };
                    for &b in base.hom(x, gy) {
                        let name = if twisted { format!("{}@g", bb[b].name) } else { bb[b].name.clone() };
                        let k = basis.len();
                        basis.push(Morphism { name, src: x, tgt: y, deg: bb[b].deg });
                        parts.push((twisted, b));
                        homs.entry((x, y)).or_default().push(k);
                        lookup.insert((twisted, b), k);
                    }
                }
            }
        }
        Ok(OrbitCategory { base, action, basis, parts, homs, lookup })
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// The element `(g, φ)` for a base vector `φ ∈ A(X, gY)`.
    pub fn embed(&self, twisted: bool, v: &Vector) -> Vector {
        v.iter().map(|(b, c)| (self.lookup[&(twisted, b)], c.clone())).collect()
    }

    pub fn part(&self, k: usize) -> (bool, usize) {
        self.parts[k]
    }
}

impl<C: AInf + ?Sized> AInf for OrbitCategory<'_, C> {
    fn objects(&self) -> &[String] {
        self.base.objects()
    }

    fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn mu(&self, inputs: &[usize]) -> Vector {
        let n = inputs.len();
        let mut twisted = false;
        let mut args: Vec<Vector> = vec![Vector::new(); n];
        for k in (0..n).rev() {
            let (t, b) = self.parts[inputs[k]];
            let v = Vector::basis(b);
            args[k] = if twisted { self.action.act(&v) } else { v };
            twisted ^= t;
        }
        let refs: Vec<&Vector> = args.iter().collect();
        let v = self.base.mu_vec(&refs);
        v.iter().map(|(b, c)| (self.lookup[&(twisted, b)], c.clone())).collect()
    }

    fn unit(&self, x: usize) -> Option<Vector> {
        self.base.unit(x).map(|u| self.embed(false, &u))
    }

    fn max_arity(&self) -> usize {
        self.base.max_arity()
    }
}
