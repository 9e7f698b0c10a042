//! The A∞ relation checker.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::ainf::category::{composable_tuples, shifted_degree, AInf, AInfCategory};
use crate::scalar::sign;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub max_arity: usize,
    pub max_chain: usize,
}

impl CheckOptions {
    pub fn new(max_arity: usize, max_chain: usize) -> Self {
        CheckOptions { max_arity, max_chain }
    }

    /// `max_chain = max_arity + 2`.
    pub fn for_arity(max_arity: usize) -> Self {
        CheckOptions { max_arity, max_chain: max_arity + 2 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub chain: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub chains_checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Σ (−1)^{✠_i} μ(a_n..a_{i+j+1}, μ_j(a_{i+j}..a_{i+1}), a_i..a_1)` on one
/// chain, with structure maps truncated above `max_arity`.
pub fn relation<C: AInf + ?Sized>(cat: &C, chain: &[usize], max_arity: usize) -> Vector {
    let n = chain.len();
    let basis = cat.basis();
    let mut out = Vector::new();
    for j in 1..=n.min(max_arity) {
        if n - j + 1 > max_arity {
            continue;
        }
        for i in 0..=(n - j) {
            // inner block occupies key positions n-i-j .. n-i
            let lo = n - i - j;
            let hi = n - i;
            let inner = cat.mu(&chain[lo..hi]);
            if inner.is_zero() {
                continue;
            }
            let s = sign(shifted_degree(basis, &chain[hi..]));
            let mut key: Vec<usize> = Vec::with_capacity(n - j + 1);
            key.extend_from_slice(&chain[..lo]);
            key.push(0);
            key.extend_from_slice(&chain[hi..]);
            for (o, c) in inner.iter() {
                key[lo] = o;
                if !cat.composable(&key) {
                    continue;
                }
                let v = cat.mu(&key);
                out.add_scaled(&v, &(c * &s));
            }
        }
    }
    out
}

/// Checks an explicit table. Candidate chains are generated from pairs of
/// entries (an outer entry with one input replaced by the inputs of an
/// inner entry whose output contains it) and from unit insertions; every
/// other chain has all terms zero.
pub fn check_relations(cat: &AInfCategory, opts: CheckOptions) -> CheckReport {
    let chains = candidate_chains(cat, opts);
    run(cat, chains, opts.max_arity)
}

/// Checks every composable chain up to `max_chain`; for categories without
/// an explicit table.
pub fn check_relations_exhaustive<C: AInf + ?Sized>(cat: &C, opts: CheckOptions) -> CheckReport {
    let chains = composable_tuples(cat, opts.max_chain, |_| true);
    run(cat, chains, opts.max_arity)
}

fn run<C: AInf + ?Sized>(cat: &C, chains: Vec<Vec<usize>>, max_arity: usize) -> CheckReport {
    let basis = cat.basis();
    let mut violations: Vec<(Vec<usize>, Vector)> = chains
        .par_iter()
        .filter_map(|ch| {
            let v = relation(cat, ch, max_arity);
            (!v.is_zero()).then(|| (ch.clone(), v))
        })
        .collect();
    violations.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    CheckReport {
        chains_checked: chains.len(),
        violations: violations
            .into_iter()
            .map(|(ch, v)| Violation {
                chain: ch.iter().map(|&i| basis[i].name.clone()).collect(),
                value: crate::ainf::category::vector_name(basis, &v),
            })
            .collect(),
    }
}

fn candidate_chains(cat: &AInfCategory, opts: CheckOptions) -> Vec<Vec<usize>> {
    let basis = cat.basis();
    let entries: Vec<(&Vec<usize>, &Vector)> =
        cat.entries().filter(|(k, _)| k.len() <= opts.max_arity).collect();
    // inputs by element: (entry, position)
    let mut by_elem: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (e, (k, _)) in entries.iter().enumerate() {
        for (pos, &a) in k.iter().enumerate() {
            by_elem.entry(a).or_default().push((e, pos));
        }
    }
    let mut chains: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut push = |c: Vec<usize>| {
        if c.len() <= opts.max_chain && cat.composable(&c) {
            chains.insert(c);
        }
    };
    for (inner, out) in &entries {
        for (o, _) in out.iter() {
            if let Some(uses) = by_elem.get(&o) {
                for &(e, pos) in uses {
                    let outer = entries[e].0;
                    let mut c = outer[..pos].to_vec();
                    c.extend_from_slice(inner);
                    c.extend_from_slice(&outer[pos + 1..]);
                    push(c);
                }
            }
            if cat.is_unit(o) {
                // outer is the implicit μ₂ with the unit
                let src = basis[*inner.last().unwrap()].src;
                let tgt = basis[inner[0]].tgt;
                for (x, m) in basis.iter().enumerate() {
                    if m.src == tgt {
                        let mut c = vec![x];
                        c.extend_from_slice(inner);
                        push(c);
                    }
                    if m.tgt == src {
                        let mut c = inner.to_vec();
                        c.push(x);
                        push(c);
                    }
                }
            }
        }
    }
    // unit insertions: inner or outer is the implicit μ₂ with a unit
    for (k, _) in &entries {
        for gap in 0..=k.len() {
            let obj = if gap == 0 { basis[k[0]].tgt } else { basis[k[gap - 1]].src };
            if let Some(u) = cat.unit_index(obj) {
                let mut c = k.to_vec();
                c.insert(gap, u);
                push(c);
            }
        }
    }
    chains.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    /// Two arcs with boundary paths p₁: x→y, p₂: y→x of degree 0 and
    /// μ₂(p₂,p₁) = id_x, μ₂(p₁,p₂) = id_y.
    fn a1_tilde(flip: bool) -> AInfCategory {
        let mut c = AInfCategory::new(vec!["x".into(), "y".into()]);
        let ix = c.add_unit(0, "id_x").unwrap();
        let iy = c.add_unit(1, "id_y").unwrap();
        let p1 = c.add_morphism("p1", 0, 1, 0).unwrap();
        let p2 = c.add_morphism("p2", 1, 0, 0).unwrap();
        c.add_entry(vec![p2, p1], Vector::basis(ix)).unwrap();
        let s = if flip { q(-1) } else { q(1) };
        c.add_entry(vec![p1, p2], Vector::term(iy, s)).unwrap();
        c
    }

    #[test]
    fn a1_tilde_passes() {
        let c = a1_tilde(false);
        let r = check_relations(&c, CheckOptions::new(2, 4));
        assert!(r.passed(), "{:?}", r.violations);
        let r = check_relations_exhaustive(&c, CheckOptions::new(2, 4));
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn a1_tilde_sign_flip_fails_at_length_three() {
        let c = a1_tilde(true);
        let r = check_relations(&c, CheckOptions::new(2, 4));
        assert!(!r.passed());
        assert_eq!(r.violations[0].chain.len(), 3);
        let ex = check_relations_exhaustive(&c, CheckOptions::new(2, 4));
        assert_eq!(ex.violations.len(), r.violations.len());
    }
}
