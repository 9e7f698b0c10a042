//! From the double cover `D₂ₙ` to the orbifold disk `Dₙ^×`.
//!
//! The cover category is built from its dissection, `β̃` is assembled as a
//! twisted complex, the ℤ₂-orbit category of `tw` is formed, `α̃` and `β̃`
//! are split by `id^± = ½(id, ±id)`, and the minimal model of
//! `End(α̃⁺ ⊕ γ₁⁺ ⊕ ⋯ ⊕ γₙ₋₁⁺ ⊕ β̃⁻)` is compared with the direct category
//! of the generator dissection.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ainf::category::{graded_dims, AInf};
use crate::ainf::check::{check_relations, check_relations_exhaustive, CheckOptions};
use crate::error::{Error, Result};
use crate::fukaya::build_fukaya;
use crate::orbit::action::{induced_action_on_tw, rotation_action};
use crate::orbit::category::OrbitCategory;
use crate::report::{check, Check};
use num_traits::Zero;

use crate::scalar::qf;
use crate::surface::builders::{double_cover_layout, orbifold_disk_generator};
use crate::twisted::{
    make_twisted_complex, minimal_model, split_idempotents, Presentation, ShiftedObject, Summand, TwCategory,
    TwistedComplex,
};
use crate::vector::Vector;

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub m: usize,
    pub max_arity: usize,
    pub cover_objects: Vec<String>,
    pub generator: Vec<String>,
    /// Graded dimensions of `hom(X, Y)` in the minimal model of `End(Γ)`.
    pub generator_hom_dims: Vec<(String, String, BTreeMap<i64, usize>)>,
    pub minimal_model_arities: Vec<usize>,
    pub higher_products: Vec<String>,
    pub direct_arities: Vec<usize>,
    pub presentation: Presentation,
    pub checks: Vec<Check>,
    pub scope: String,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn dims_string(d: &BTreeMap<i64, usize>) -> String {
    d.iter().map(|(k, v)| format!("{}:{}", k, v)).collect::<Vec<_>>().join(",")
}

/// Runs the pipeline for `Dₙ^×` with `m − 2` of the γ between `α` and `β`.
/// Transferred products are computed up to `max_arity`.
pub fn orbifold_pipeline(n: usize, m: usize, max_arity: usize) -> Result<PipelineReport> {
    if n < 2 || m < 2 || m > n {
        return Err(Error::BadParameter(format!("pipeline needs 2 ≤ m ≤ n, got n = {}, m = {}", n, m)));
    }
    let mut checks = Vec::new();
    let layout = double_cover_layout(n)?;
    let f = build_fukaya(&layout.complex)?;
    let a = &f.category;
    let action = rotation_action(&layout, &f, 180.0)?;
    check(&mut checks, "cover action", true, "half turn is a strict involution commuting with μ".into());

    let obj = |name: &str| a.object_index(name).ok_or_else(|| Error::Malformed(format!("cover has no arc {}", name)));
    let el = |name: &str| a.index(name).ok_or_else(|| Error::Malformed(format!("cover has no path {}", name)));
    let alpha = obj("alpha")?;
    let mut complexes = vec![TwistedComplex::object(a, alpha)];
    for sgn in ["+", "-"] {
        for i in 1..n {
            complexes.push(TwistedComplex::object(a, obj(&format!("g{}{}", i, sgn))?));
        }
    }
    // β̃ = α̃ ⊕ ⊕ s^{✠ᵢ*} γᵢ*, δ along p₁*, …, p_{m−2}*
    let mut entries = vec![ShiftedObject::new(alpha, 0)];
    let mut delta = BTreeMap::new();
    for sgn in ["+", "-"] {
        let mut prev = 0;
        let mut shift = 0;
        for i in 1..=m - 2 {
            let p = el(&format!("p{}{}", i, sgn))?;
            shift += a.basis()[p].deg - 1;
            entries.push(ShiftedObject::new(obj(&format!("g{}{}", i, sgn))?, shift));
            let k = entries.len() - 1;
            delta.insert((prev, k), Vector::basis(p));
            prev = k;
        }
    }
    complexes.push(make_twisted_complex(a, "beta", entries, delta)?);
    let tw = TwCategory::new(a, complexes);
    let beta = tw.objects().len() - 1;
    let g = induced_action_on_tw(&tw, &action)?;
    g.validate(&tw, 2)?;
    check(
        &mut checks,
        "beta invariant",
        g.act_object(beta) == beta,
        "the induced action fixes the twisted complex β̃ up to reordering entries".into(),
    );

    let orbit = OrbitCategory::new(&tw, g)?;
    let rel = check_relations_exhaustive(&orbit, CheckOptions::new(2, 3));
    check(&mut checks, "orbit relations", rel.passed(), format!("{} chains", rel.chains_checked));
    let mut dims_ok = true;
    for x in 0..tw.objects().len() {
        for y in 0..tw.objects().len() {
            let mut expect = graded_dims(&tw, x, y);
            for (d, k) in graded_dims(&tw, x, orbit.action().act_object(y)) {
                *expect.entry(d).or_insert(0) += k;
            }
            dims_ok &= graded_dims(&orbit, x, y) == expect;
        }
    }
    check(&mut checks, "orbit hom dimensions", dims_ok, "dim (A/G)(X,Y) = Σ_g dim A(X,gY) in every degree".into());
    let end_alpha = graded_dims(&orbit, alpha, alpha);
    let alpha_closed = orbit.hom(alpha, alpha).iter().all(|&i| orbit.mu(&[i]).is_zero());
    check(
        &mut checks,
        "End(α̃) in the orbit category",
        end_alpha == BTreeMap::from([(0, 2)]) && alpha_closed,
        format!("graded dims {}", dims_string(&end_alpha)),
    );

    // id^± = ½(id, ±id)
    let half = qf(1, 2);
    let idpm = |x: usize, s: i64| -> Vector {
        let u = tw.unit(x).expect("twisted complexes are unital");
        let mut v = orbit.embed(false, &u).scaled(&half);
        v.add_scaled(&orbit.embed(true, &u), &(&half * &crate::scalar::q(s)));
        v
    };
    let compose = |b: &Vector, a: &Vector| orbit.mu_vec(&[b, a]);
    let mut orth = true;
    for x in [alpha, beta] {
        let (p, q) = (idpm(x, 1), idpm(x, -1));
        let mut sum = p.clone();
        sum.add(&q);
        orth &= compose(&p, &q).is_zero() && compose(&q, &p).is_zero();
        orth &= compose(&p, &p) == p && compose(&q, &q) == q;
        orth &= sum == orbit.unit(x).unwrap();
    }
    check(&mut checks, "id± orthogonal idempotents", orth, "for α̃ and β̃: id⁺∘id⁻ = 0, (id^±)² = id^±, id⁺ + id⁻ = id".into());

    let mut summands = vec![Summand::new("alpha+", alpha, idpm(alpha, 1))];
    for i in 1..n {
        let x = tw.complex_index(&format!("g{}+", i)).unwrap();
        summands.push(Summand::new(&format!("g{}+", i), x, orbit.unit(x).unwrap()));
    }
    summands.push(Summand::new("beta-", beta, idpm(beta, -1)));
    let split = split_idempotents(&orbit, &summands, 2)?;
    let end_ap = split.category.graded_dims(0, 0);
    check(&mut checks, "End(α̃⁺)", end_ap == BTreeMap::from([(0, 1)]), format!("graded dims {}", dims_string(&end_ap)));

    let objects: Vec<usize> = (0..summands.len()).collect();
    let mm = minimal_model(&split.category, &objects, max_arity);
    let mmc = &mm.category;
    let rel = check_relations(mmc, CheckOptions::new(max_arity, max_arity + 1));
    check(&mut checks, "minimal model relations", rel.passed(), format!("{} chains", rel.chains_checked));

    let higher: Vec<usize> = mmc.arities().into_iter().filter(|&k| k != 2).collect();
    let expected: Vec<usize> = if m >= 4 { vec![m - 1] } else { vec![] };
    check(
        &mut checks,
        "unique higher product",
        higher == expected,
        format!("arities beyond μ₂: {:?}, expected {:?}", higher, expected),
    );
    let higher_products: Vec<String> = mmc
        .sorted_entries()
        .into_iter()
        .filter(|(k, _)| k.len() != 2)
        .map(|(k, v)| format!("μ{}({}) = {}", k.len(), mmc.tuple_name(k), mmc.vector_name(v)))
        .collect();

    let direct = crate::fukaya::build_category(&orbifold_disk_generator(n, m)?)?;
    let direct_arities = direct.arities();
    let key: Vec<usize> = (1..m).rev().filter_map(|i| direct.index(&format!("p{}", i))).collect();
    let q = direct.index("q");
    let mux = direct.mu(&key);
    let beyond: Vec<usize> = direct_arities.iter().copied().filter(|&k| k != 2 && k != m - 1).collect();
    check(
        &mut checks,
        "direct μ×",
        key.len() == m - 1 && q.is_some_and(|q| !mux.get(q).is_zero()) && beyond.is_empty(),
        format!("μ{}(p{}, …, p1) = {} in the direct A_Δ, arities {:?}", m - 1, m - 1, direct.vector_name(&mux), direct_arities),
    );
    let dobj: Vec<usize> = (0..direct.objects().len()).collect();
    let dmm = minimal_model(&direct, &dobj, max_arity);
    let pa = Presentation::of(mmc)?;
    let pb = Presentation::of(&dmm.category)?;
    check(&mut checks, "presentation isomorphism", pa.isomorphism(&pb).is_some(), "minimal models of End(Γ) and of A_Δ".into());

    let rename = |s: &str| -> String {
        match s {
            "alpha+" => "alpha".into(),
            "beta-" => "beta".into(),
            _ => s.trim_end_matches('+').to_string(),
        }
    };
    let mut hom_match = true;
    let mut generator_hom_dims = Vec::new();
    for x in 0..mmc.objects().len() {
        for y in 0..mmc.objects().len() {
            let d = mmc.graded_dims(x, y);
            let (dx, dy) = (dmm.category.object_index(&rename(&mmc.objects()[x])), dmm.category.object_index(&rename(&mmc.objects()[y])));
            hom_match &= match (dx, dy) {
                (Some(dx), Some(dy)) => dmm.category.graded_dims(dx, dy) == d,
                _ => false,
            };
            generator_hom_dims.push((mmc.objects()[x].clone(), mmc.objects()[y].clone(), d));
        }
    }
    check(&mut checks, "hom dimensions per degree", hom_match, "α ↔ α̃⁺, β ↔ β̃⁻, γᵢ ↔ γᵢ⁺".into());

    // γᵢ⁻ ≅ γᵢ⁺ through the twisted identity
    let mut iso = true;
    for i in 1..n {
        let x = tw.complex_index(&format!("g{}+", i)).unwrap();
        let y = tw.complex_index(&format!("g{}-", i)).unwrap();
        let fi = orbit.embed(true, &tw.unit(x).unwrap());
        let to = orbit.embed(true, &tw.unit(y).unwrap());
        iso &= compose(&to, &fi) == orbit.unit(x).unwrap() && compose(&fi, &to) == orbit.unit(y).unwrap();
    }
    check(&mut checks, "arc objects generated", iso, "γᵢ⁻ ≅ γᵢ⁺ in the orbit category".into());

    Ok(PipelineReport {
        n,
        m,
        max_arity,
        cover_objects: a.objects().to_vec(),
        generator: summands.iter().map(|s| s.name.clone()).collect(),
        generator_hom_dims,
        minimal_model_arities: mmc.arities(),
        higher_products,
        direct_arities,
        presentation: pa,
        checks,
        scope: "generation is checked only for the arc objects γᵢ⁻ of the cover dissection".into(),
    })
}
