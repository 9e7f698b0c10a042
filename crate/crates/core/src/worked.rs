//! The six worked dissections of D₄^×, with their classification and the
//! recorded shape of each minimal model, and the cylinder deformation.
//!
//! The twisted complex `γ₀` over the Γ′ dissection of `Dₙ^×` is checked
//! against the skew-gentle algebra with `ε² = id`.
//!
//! All six categories are derived equivalent to the path algebra of a D₅
//! quiver. This is checked through the Coxeter polynomial of the Euler form
//! of the minimal model, after splitting `(id ± ε)/2` for the sixth.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::ainf::category::{AInf, AInfCategory};
use crate::ainf::check::{check_relations, CheckOptions};
use crate::ainf::deform::{deform, maurer_cartan_check};
use crate::ainf::hochschild::{describe, Cochain, CochainEntry, Hochschild};
use crate::error::{Error, Result};
use crate::fukaya::{build_category, build_fukaya};
use crate::quiver::{path_algebra_category, GradedQuiver, MonomialAlgebra};
use crate::report::{check, Check};
use crate::scalar::{format_q, qf};
use crate::surface::builders::{cylinder_one_stop, example_dissection, orbifold_disk_gamma_prime, orbifold_disk_star};
use crate::surface::DissectionClass;
use crate::twisted::{
    complementary, contract, make_twisted_complex, minimal_model, split_idempotents, Arrow, Presentation, ShiftedObject,
    Summand, TwCategory, TwistedComplex,
};
use crate::vector::Vector;

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub k: usize,
    pub class: DissectionClass,
    pub summary: String,
    pub built_arities: Vec<usize>,
    pub minimal_model_arities: Vec<usize>,
    pub arrows: Vec<Arrow>,
    pub higher_products: Vec<String>,
    pub coxeter_polynomial: Vec<String>,
    pub checks: Vec<Check>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The path algebra of `1 → 2 → 3 → 4`, `3 → 5`.
pub fn d5_path_algebra() -> AInfCategory {
    let q = GradedQuiver::build(
        &["1", "2", "3", "4", "5"],
        &[("a", "1", "2", 0), ("b", "2", "3", 0), ("c", "3", "4", 0), ("d", "3", "5", 0)],
        &[],
        &[],
    )
    .expect("the D5 quiver is well formed");
    path_algebra_category(&MonomialAlgebra::finite(q).expect("D5 has finitely many paths")).expect("D5 is finite")
}

pub fn expected_class(k: usize) -> Option<DissectionClass> {
    use DissectionClass::*;
    [Formal, Formal, Formal, DG, Formal, NewWithOrbifoldPolygons].get(k.wrapping_sub(1)).copied()
}

fn poly_string(p: &[crate::Q]) -> Vec<String> {
    p.iter().map(format_q).collect()
}

fn element(cat: &AInfCategory, name: &str) -> Result<usize> {
    cat.index(name).ok_or_else(|| Error::Malformed(format!("example has no morphism {}", name)))
}

/// Regenerates worked example `k` and checks its documented facts, with transferred
/// products up to `max_arity`.
pub fn worked_example(k: usize, max_arity: usize) -> Result<ExampleReport> {
    let expected = expected_class(k).ok_or_else(|| Error::BadParameter(format!("examples are numbered 1 to 6, got {}", k)))?;
    let f = build_fukaya(&example_dissection(k)?)?;
    let a = &f.category;
    let class = f.classification.class;
    let mut checks = Vec::new();
    check(&mut checks, "classification", class == expected, format!("{}, expected {}", class.name(), expected.name()));
    let rel = check_relations(a, CheckOptions::for_arity(a.max_arity().max(2) * 2));
    check(&mut checks, "A∞ relations of A_Δ", rel.passed(), format!("{} chains", rel.chains_checked));

    let objects: Vec<usize> = (0..a.objects().len()).collect();
    let mm = minimal_model(a, &objects, max_arity);
    let h = &mm.category;
    let rel = check_relations(h, CheckOptions::new(max_arity, max_arity + 1));
    check(&mut checks, "A∞ relations of the minimal model", rel.passed(), format!("{} chains", rel.chains_checked));
    let pres = Presentation::of(h)?;
    let higher: Vec<usize> = h.higher_arities();
    let higher_products: Vec<String> = h
        .sorted_entries()
        .into_iter()
        .filter(|(t, _)| t.len() > 2)
        .map(|(t, v)| format!("μ{}({}) = {}", t.len(), h.tuple_name(t), h.vector_name(v)))
        .collect();
    let degrees: Vec<i64> = h.basis().iter().map(|b| b.deg).collect();
    let in_degree_zero = degrees.iter().all(|&d| d == 0);
    let orbifold_unary = a.arities().contains(&1);

    let d5 = Presentation::of(&d5_path_algebra())?;
    let d5_poly = d5.coxeter_polynomial().expect("the D5 Euler form is unimodular");

    let summary;
    match k {
        1 | 2 | 3 | 5 => {
            summary = "formal; no transferred higher products".to_string();
            check(&mut checks, "formal", higher.is_empty(), format!("higher arities {:?}", higher));
            check(&mut checks, "cohomology in degree 0", in_degree_zero, format!("degrees {:?}", degrees));
        }
        4 => {
            summary = "DG, not formal; transferred μ₃ present".to_string();
            let curved: Vec<&Arrow> = pres.arrows.iter().filter(|x| x.deg == -1).collect();
            check(&mut checks, "transferred μ₃", higher == vec![3], format!("higher arities {:?}", higher));
            check(&mut checks, "curved arrow of degree −1", curved.len() == 1, format!("{} arrows of degree −1", curved.len()));
        }
        _ => summary = "orbifold 1-gon with ε² = id; splits to D₅".to_string(),
    }
    match k {
        1 => {
            let (p1, p2, q) = (element(a, "p1")?, element(a, "p2")?, element(a, "q3*q2*q1")?);
            let v = a.mu(&[p2, p1]);
            let ok = v.len() == 1 && !v.get(q).is_zero();
            check(&mut checks, "μ×₂", ok && !orbifold_unary, format!("μ2(p2, p1) = {}", a.vector_name(&v)));
        }
        2..=5 => {
            let unary: Vec<String> = a
                .sorted_entries()
                .into_iter()
                .filter(|(t, _)| t.len() == 1)
                .map(|(t, v)| format!("μ1({}) = {}", a.tuple_name(t), a.vector_name(v)))
                .collect();
            check(&mut checks, "μ×₁", unary.len() == 1, unary.join("; "));
        }
        _ => {}
    }
    if k == 5 {
        let q = element(a, "q")?;
        check(&mut checks, "curved arrow of degree +1", a.basis()[q].deg == 1, format!("|q| = {}", a.basis()[q].deg));
        check(&mut checks, "presentation of D₅", pres.isomorphism(&d5).is_some(), "minimal model against the D5 path algebra".into());
    }

    let mut poly = pres.coxeter_polynomial();
    if k == 6 {
        let e = element(a, "e")?;
        let x = a.basis()[e].src;
        let unit = a.unit(x).expect("arcs have units");
        let ee = a.mu(&[e, e]);
        check(
            &mut checks,
            "μ⊗₂(ε, ε) = id",
            a.basis()[e].deg == 0 && ee == unit,
            format!("|ε| = {}, μ2(ε, ε) = {}", a.basis()[e].deg, a.vector_name(&ee)),
        );
        let mut plus = unit.scaled(&qf(1, 2));
        plus.add_scaled(&Vector::basis(e), &qf(1, 2));
        let name = a.objects()[x].clone();
        let mut summands: Vec<Summand> = (0..a.objects().len())
            .filter(|&y| y != x)
            .map(|y| Summand::new(&a.objects()[y], y, a.unit(y).unwrap()))
            .collect();
        summands.extend(complementary(a, x, &plus, (&format!("{}+", name), &format!("{}-", name)))?);
        let split = split_idempotents(a, &summands, max_arity)?;
        let sp = Presentation::of(&split.category)?;
        check(&mut checks, "presentation of D₅ after splitting", sp.isomorphism(&d5).is_some(), "(id ± ε)/2".into());
        poly = sp.coxeter_polynomial();
    }
    let poly = poly.ok_or_else(|| Error::BadParameter("singular Euler form".into()))?;
    check(&mut checks, "Coxeter polynomial of D₅", poly == d5_poly, format!("{:?}", poly_string(&poly)));

    Ok(ExampleReport {
        k,
        class,
        summary,
        built_arities: a.arities(),
        minimal_model_arities: h.arities(),
        arrows: pres.arrows,
        higher_products,
        coxeter_polynomial: poly_string(&poly),
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderReport {
    pub n: usize,
    pub hh2_dimension: usize,
    pub hh2_by_arity: Vec<usize>,
    pub representative: Vec<CochainEntry>,
    pub checks: Vec<Check>,
}

impl CylinderReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `HH²` of the cylinder with one stop on the inner boundary, and the
/// deformation by its generator compared with the orbifold disk.
pub fn cylinder_deformation(n: usize) -> Result<CylinderReport> {
    if n < 2 {
        return Err(Error::BadParameter("the cylinder needs n ≥ 2".into()));
    }
    let cyl = build_category(&cylinder_one_stop(n)?)?;
    let mut checks = Vec::new();
    let graded_zero = cyl.basis().iter().all(|b| b.deg == 0);
    check(&mut checks, "concentrated in degree 0", graded_zero, "degree-2 cochains then have arity 2".into());
    let hh = Hochschild::new(&cyl).cohomology(2, 4);
    check(&mut checks, "dim HH² = 1", hh.dimension == 1, format!("by arity {:?}", hh.by_arity));
    let mt = hh.representatives.first().cloned().unwrap_or_else(|| Cochain::zero(2));
    let q_path: Vec<String> = (1..n).rev().map(|i| format!("q{}", i)).collect();
    let full = cyl.index(&q_path.join("*"));
    let (p1, p2) = (element(&cyl, "p1")?, element(&cyl, "p2")?);
    let supported = mt.comps.len() == 1
        && mt.comps.iter().all(|((_, k), v)| *k == vec![p2, p1] && v.len() == 1 && full.is_some_and(|q| !v.get(q).is_zero()));
    check(&mut checks, "cocycle on (p2, p1)", supported, format!("full q-path {}", q_path.join("*")));
    let mc = maurer_cartan_check(&cyl, &mt);
    check(&mut checks, "Maurer–Cartan", mc.holds, mc.witness(&cyl).unwrap_or_else(|| "residual 0".into()));
    let deformed = deform(&cyl, &mt)?;
    let rel = check_relations(&deformed, CheckOptions::new(4, 6));
    check(&mut checks, "A∞ relations of the deformation", rel.passed(), format!("{} chains", rel.chains_checked));
    let star = build_category(&orbifold_disk_star(n)?)?;
    let (pd, ps, pc) = (Presentation::of(&deformed)?, Presentation::of(&star)?, Presentation::of(&cyl)?);
    check(&mut checks, "deformation ≅ orbifold disk", pd.isomorphism(&ps).is_some(), "presentation isomorphism".into());
    check(&mut checks, "cylinder ≇ orbifold disk", pc.isomorphism(&ps).is_none(), "the undeformed algebra differs".into());
    Ok(CylinderReport {
        n,
        hh2_dimension: hh.dimension,
        hh2_by_arity: hh.by_arity,
        representative: describe(&cyl, &mt),
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaZeroReport {
    pub n: usize,
    pub end_dims: BTreeMap<i64, usize>,
    pub end_basis: Vec<String>,
    pub minimal_model_arities: Vec<usize>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<String>,
    pub checks: Vec<Check>,
}

impl GammaZeroReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The skew-gentle algebra with a special loop `e` at `0` and arrows
/// `p0: 0 → 1`, `pi: i → i+1` of degree `|p̄ᵢ|`, all length-2 paths zero.
pub fn skew_gentle_reference(degrees: &[i64]) -> Result<AInfCategory> {
    let n = degrees.len() + 1;
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrow_names: Vec<String> = (0..n.saturating_sub(1)).map(|i| format!("p{}", i)).collect();
    let mut arrows = vec![("e", "0", "0", 0)];
    for (i, name) in arrow_names.iter().enumerate() {
        arrows.push((name.as_str(), vs[i], vs[i + 1], degrees[i]));
    }
    let rels: Vec<[&str; 2]> = (1..arrow_names.len()).map(|i| [arrow_names[i].as_str(), arrow_names[i - 1].as_str()]).collect();
    let rels: Vec<&[&str]> = rels.iter().map(|r| r.as_slice()).collect();
    let q = GradedQuiver::build(&vs, &arrows, &rels, &["e"])?;
    path_algebra_category(&MonomialAlgebra::finite(q)?)
}

/// Builds `γ₀ = (γ₁ → s^{✠₁}γ₂ → ⋯ → s^{✠ₙ₋₁}γₙ)` over the Γ′ category and
/// checks its endomorphisms and the minimal model of `End(γ₀ ⊕ γ₁ ⊕ ⋯ ⊕ γₙ₋₁)`
/// up to arity `max_arity`.
pub fn gamma_zero(n: usize, max_arity: usize) -> Result<GammaZeroReport> {
    let a = build_category(&orbifold_disk_gamma_prime(n)?)?;
    let obj = |i: usize| a.object_index(&format!("g{}", i)).ok_or_else(|| Error::Malformed(format!("Γ′ has no arc g{}", i)));
    let p: Vec<usize> = (1..=n).map(|i| element(&a, &format!("p{}", i))).collect::<Result<_>>()?;
    let deg = |i: usize| a.basis()[p[i - 1]].deg;
    let mut checks = Vec::new();

    let mut entries = vec![ShiftedObject::new(obj(1)?, 0)];
    let mut delta = BTreeMap::new();
    let mut shift = 0;
    for i in 1..n {
        shift += deg(i) - 1;
        entries.push(ShiftedObject::new(obj(i + 1)?, shift));
        delta.insert((i - 1, i), Vector::basis(p[i - 1]));
    }
    let g0 = make_twisted_complex(&a, "gamma0", entries, delta);
    check(&mut checks, "Maurer–Cartan for γ₀", g0.is_ok(), g0.as_ref().err().map(|e| e.to_string()).unwrap_or_else(|| "δ₀ = p̄₁ + ⋯ + p̄ₙ₋₁".into()));
    let g0 = g0?;
    let mut complexes = vec![g0];
    for i in 1..n {
        complexes.push(TwistedComplex::object(&a, obj(i)?));
    }
    let tw = TwCategory::new(&a, complexes);

    let h = contract(&tw, 0, 0);
    let end_dims = h.dims();
    let total: usize = end_dims.values().sum();
    let unit = tw.unit(0).expect("twisted complexes are unital");
    let eps = tw.embed(0, 0, n - 1, 0, &Vector::basis(p[n - 1]));
    let closed = tw.mu_vec(&[&eps]).is_zero();
    let (pi, pe) = (h.project(&unit), h.project(&eps));
    let independent = total == 2 && !pe.is_zero() && !pi.is_zero() && {
        let k = |v: &Vector, i| v.get(i);
        k(&pi, 0) * k(&pe, 1) - k(&pi, 1) * k(&pe, 0) != Zero::zero()
    };
    check(
        &mut checks,
        "H•End(γ₀) = ⟨id, ε⟩",
        closed && independent,
        format!("total dimension {}, ε closed: {}", total, closed),
    );
    let ee = tw.mu_vec(&[&eps, &eps]);
    check(&mut checks, "μ₂(ε, ε) = id_γ₀", ee == unit, format!("μ2(ε, ε) = {}", crate::ainf::category::vector_name(tw.basis(), &ee)));

    let objects: Vec<usize> = (0..n).collect();
    let mm = minimal_model(&tw, &objects, max_arity);
    let m = &mm.category;
    let rel = check_relations(m, CheckOptions::new(max_arity, max_arity + 1));
    check(&mut checks, "A∞ relations of the minimal model", rel.passed(), format!("{} chains", rel.chains_checked));
    let higher = m.higher_arities();
    check(&mut checks, "no transferred higher products", higher.is_empty(), format!("arities up to {}: {:?}", max_arity, m.arities()));
    let degrees: Vec<i64> = std::iter::once(0).chain((1..n.saturating_sub(1)).map(deg)).take(n - 1).collect();
    let reference = Presentation::of(&skew_gentle_reference(&degrees)?)?;
    let pres = Presentation::of(m)?;
    check(&mut checks, "skew-gentle presentation", pres.isomorphism(&reference).is_some(), "ε² = id, p̄ᵢp̄ᵢ₋₁ = 0".into());

    Ok(GammaZeroReport {
        n,
        end_dims,
        end_basis: h.representatives.iter().map(|(_, v)| crate::ainf::category::vector_name(tw.basis(), v)).collect(),
        minimal_model_arities: m.arities(),
        arrows: pres.arrows,
        relations: pres.relations,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        for k in 1..=6 {
            let r = worked_example(k, 5).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "example {}: {:?}", k, failed);
        }
    }

    #[test]
    fn cylinder() {
        for n in 2..=4 {
            let r = cylinder_deformation(n).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
        }
    }

    #[test]
    fn gamma_zero_small() {
        for n in 1..=3 {
            let r = gamma_zero(n, 4).unwrap();
            assert!(r.passed(), "n = {}: {:?}", n, r.checks);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(worked_example(7, 4).is_err());
        assert!(worked_example(0, 4).is_err());
    }
}
