//! Strict A∞ deformations `(A, μ₂ + μ̃)` of graded categories.

use crate::ainf::category::{AInf, AInfCategory};
use crate::ainf::hochschild::{Cochain, Hochschild};
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Adds the components of `mt` to the structure maps of `base`.
pub fn deform(base: &AInfCategory, mt: &Cochain) -> Result<AInfCategory> {
    if mt.degree != 2 {
        return Err(Error::DegreeMismatch(format!("perturbation has degree {}, expected 2", mt.degree)));
    }
    let mut out = base.clone();
    for ((_, inputs), v) in &mt.comps {
        if inputs.is_empty() {
            return Err(Error::DegreeMismatch("curved perturbations are not supported".into()));
        }
        out.add_entry(inputs.clone(), v.clone())?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MaurerCartan {
    pub holds: bool,
    /// `δ(μ̃) + ½[μ̃, μ̃]`.
    pub residual: Cochain,
}

impl MaurerCartan {
    pub fn witness(&self, cat: &AInfCategory) -> Option<String> {
        let ((_, inputs), v) = self.residual.comps.iter().next()?;
        Some(format!("{} ↦ {}", cat.tuple_name(inputs), cat.vector_name(v)))
    }
}

pub fn maurer_cartan_check(base: &AInfCategory, mt: &Cochain) -> MaurerCartan {
    let residual = Hochschild::new(base).maurer_cartan(mt);
    MaurerCartan { holds: residual.is_zero(), residual }
}

/// `(inputs, output terms)` by name.
pub type NamedEntry<'a> = (&'a [&'a str], &'a [(&'a str, crate::Q)]);

/// Builds a degree-2 cochain from `(inputs, output)` name pairs.
pub fn cochain_from_names(cat: &AInfCategory, entries: &[NamedEntry<'_>]) -> Result<Cochain> {
    let mut f = Cochain::zero(2);
    for (inputs, out) in entries {
        let idx: Vec<usize> = inputs
            .iter()
            .map(|n| cat.index(n).ok_or_else(|| Error::UnknownArrow(n.to_string())))
            .collect::<Result<_>>()?;
        let mut v = Vector::new();
        for (n, c) in out.iter() {
            v.add_term(cat.index(n).ok_or_else(|| Error::UnknownArrow(n.to_string()))?, c.clone());
        }
        let src = cat.basis()[*idx.last().ok_or(Error::NotComposable)?].src;
        f.add_term((src, idx), &v, &crate::scalar::one());
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{check_relations, CheckOptions};
    use crate::quiver::{path_algebra_category, GradedQuiver, MonomialAlgebra};
    use crate::scalar::q;

    fn a4() -> AInfCategory {
        let quiver = GradedQuiver::build(
            &["1", "2", "3", "4"],
            &[("p1", "1", "2", 0), ("p2", "2", "3", 0), ("p3", "3", "4", 0)],
            &[],
            &[],
        )
        .unwrap();
        path_algebra_category(&MonomialAlgebra::finite(quiver).unwrap()).unwrap()
    }

    #[test]
    fn zero_perturbation() {
        let base = a4();
        let mc = maurer_cartan_check(&base, &Cochain::zero(2));
        assert!(mc.holds);
        assert_eq!(deform(&base, &Cochain::zero(2)).unwrap().num_entries(), base.num_entries());
    }

    #[test]
    fn non_cocycle_fails_both_ways() {
        let base = a4();
        let f = cochain_from_names(&base, &[(&["p2", "p1"], &[("p2*p1", q(1))])]).unwrap();
        let mc = maurer_cartan_check(&base, &f);
        assert!(!mc.holds);
        assert!(mc.witness(&base).unwrap().contains("p3"));
        let cat = deform(&base, &f).unwrap();
        assert!(!check_relations(&cat, CheckOptions::new(3, 5)).passed());
    }

    #[test]
    fn degree_checked() {
        let base = a4();
        let f = cochain_from_names(&base, &[(&["p2", "p1"], &[("p2*p1", q(1))])]).unwrap();
        let mut g = f.clone();
        g.degree = 3;
        assert!(deform(&base, &g).is_err());
        let bad = cochain_from_names(&base, &[(&["p1"], &[("p1", q(1))])]).unwrap();
        assert!(deform(&base, &bad).is_err());
    }
}
