use std::collections::BTreeMap;

use num_traits::Zero;

use orbifukaya::ainf::category::{graded_dims, AInf, AInfCategory};
use orbifukaya::ainf::check::{check_relations, check_relations_exhaustive, CheckOptions};
use orbifukaya::fukaya::{build_category, build_fukaya, building_block, BlockType};
use orbifukaya::orbit::{GroupAction, OrbitCategory};
use orbifukaya::quiver::{path_algebra_category, GradedQuiver, MonomialAlgebra};
use orbifukaya::scalar::{q, qf};
use orbifukaya::surface::{builders, classify_dissection, DissectionClass};
use orbifukaya::twisted::{
    check_idempotent, complementary, cone, contract, hom_cohomology, minimal_model, split_idempotents, Presentation,
    Summand, TwCategory, TwistedComplex,
};
use orbifukaya::Vector;

fn a3(relation: bool) -> AInfCategory {
    let rels: &[&[&str]] = if relation { &[&["b", "a"]] } else { &[] };
    let q = GradedQuiver::build(&["1", "2", "3"], &[("a", "1", "2", 0), ("b", "2", "3", 0)], rels, &[]).unwrap();
    path_algebra_category(&MonomialAlgebra::finite(q).unwrap()).unwrap()
}

fn names(cat: &AInfCategory) -> Vec<String> {
    cat.basis().iter().filter(|b| !b.name.starts_with("id_")).map(|b| b.name.clone()).collect()
}

#[test]
fn builder_classes() {
    use DissectionClass::*;
    for n in 2..=5 {
        assert_eq!(classify_dissection(&builders::orbifold_disk_star(n).unwrap()).class, Formal);
        assert_eq!(classify_dissection(&builders::cylinder_one_stop(n).unwrap()).class, Formal);
        assert_eq!(classify_dissection(&builders::orbifold_disk_gamma_prime(n).unwrap()).class, NewWithOrbifoldPolygons);
    }
    assert_eq!(classify_dissection(&builders::orbifold_annulus_figure().unwrap()).class, Admissible);
    assert_eq!(classify_dissection(&builders::orbifold_annulus_figure_right().unwrap()).class, Invalid);
}

#[test]
fn annulus_paths() {
    let cat = build_category(&builders::orbifold_annulus_figure().unwrap()).unwrap();
    let mut got = names(&cat);
    got.sort();
    assert_eq!(got, ["p1", "p2", "p3", "p3*p2", "p4", "q1", "q2", "q2*q1"]);
}

#[test]
fn star_orbifold_product() {
    // μ×₂(p2, p1) is the full orbifold path
    let cat = build_category(&builders::orbifold_disk_star(3).unwrap()).unwrap();
    let (p1, p2, q21) = (cat.index("p1").unwrap(), cat.index("p2").unwrap(), cat.index("q2*q1").unwrap());
    assert_eq!(cat.mu(&[p2, p1]), Vector::basis(q21));
    assert_eq!(cat.arities(), vec![2]);
}

#[test]
fn generator_higher_product() {
    for m in 2..=5 {
        let cat = build_category(&builders::orbifold_disk_generator(5, m).unwrap()).unwrap();
        let key: Vec<usize> = (1..m).rev().map(|i| cat.index(&format!("p{}", i)).unwrap()).collect();
        assert!(!cat.mu(&key).get(cat.index("q").unwrap()).is_zero(), "m = {}", m);
    }
}

#[test]
fn orbifold_block_products() {
    // (Ã₁, μ⊗₄): μ4(p2, p1, p2, p1) = id
    let cat = building_block(BlockType::AtildeOrb(1), &[1, 0]).unwrap();
    let (p1, p2) = (cat.index("p1").unwrap(), cat.index("p2").unwrap());
    let v1 = cat.object_index("v1").unwrap();
    assert_eq!(cat.mu(&[p2, p1, p2, p1]), cat.unit(v1).unwrap());
    assert!(check_relations(&cat, CheckOptions::new(4, 6)).passed());
    assert!(building_block(BlockType::AtildeOrb(1), &[0, 0]).is_err());
}

#[test]
fn cone_of_identity_is_contractible() {
    let cat = a3(false);
    let x = cat.object_index("1").unwrap();
    let c = cone(&cat, "c", &cat.unit(x).unwrap()).unwrap();
    let tw = TwCategory::new(&cat, vec![c]);
    assert!(hom_cohomology(&tw, 0, 0).dims.is_empty());
    assert!(check_relations_exhaustive(&tw, CheckOptions::new(3, 4)).passed());
}

#[test]
fn cone_of_an_arrow() {
    // Cone(a: P1 → P2) has End concentrated in degree 0, one-dimensional
    let cat = a3(false);
    let a = cat.index("a").unwrap();
    let c = cone(&cat, "c", &Vector::basis(a)).unwrap();
    let tw = TwCategory::new(&cat, vec![c, TwistedComplex::object(&cat, 2)]);
    assert_eq!(hom_cohomology(&tw, 0, 0).dims, BTreeMap::from([(0, 1)]));
    assert!(check_relations_exhaustive(&tw, CheckOptions::new(3, 4)).passed());
}

#[test]
fn contraction_identities() {
    for k in 1..=6 {
        let cat = build_category(&builders::example_dissection(k).unwrap()).unwrap();
        for x in 0..cat.objects().len() {
            for y in 0..cat.objects().len() {
                let h = contract(&cat, x, y);
                for r in 0..h.representatives.len() {
                    assert_eq!(h.project(&h.include(&Vector::basis(r))), Vector::basis(r));
                }
                for &i in cat.hom(x, y) {
                    let v = Vector::basis(i);
                    assert!(h.project(&cat.mu(&[i])).is_zero());
                    // id − ιπ = μ₁h + hμ₁
                    let mut lhs = v.clone();
                    lhs.add_scaled(&h.include(&h.project(&v)), &q(-1));
                    let mut rhs = cat.mu_vec(&[&h.homotopy(&v)]);
                    rhs.add(&h.homotopy(&cat.mu(&[i])));
                    assert_eq!(lhs, rhs, "example {}", k);
                }
            }
        }
    }
}

#[test]
fn transfer_of_the_dg_example() {
    let cat = build_category(&builders::example_dissection(4).unwrap()).unwrap();
    let all: Vec<usize> = (0..cat.objects().len()).collect();
    let mm = minimal_model(&cat, &all, 5);
    assert_eq!(mm.category.higher_arities(), vec![3]);
    assert!(check_relations(&mm.category, CheckOptions::new(5, 6)).passed());
    for x in 0..cat.objects().len() {
        for y in 0..cat.objects().len() {
            assert_eq!(mm.category.graded_dims(x, y), contract(&cat, x, y).dims());
        }
    }
}

#[test]
fn idempotents() {
    let cat = build_category(&builders::example_dissection(6).unwrap()).unwrap();
    let c4 = cat.object_index("c4").unwrap();
    let e = cat.index("e").unwrap();
    let unit = cat.unit(c4).unwrap();
    assert!(check_idempotent(&cat, c4, &unit.scaled(&q(2))).is_err());
    let mut plus = unit.scaled(&qf(1, 2));
    plus.add_scaled(&Vector::basis(e), &qf(1, 2));
    assert!(check_idempotent(&cat, c4, &plus).is_ok());
    let [p, m] = complementary(&cat, c4, &plus, ("c4+", "c4-")).unwrap();
    let split = split_idempotents(&cat, &[p, m], 3).unwrap();
    let s = &split.category;
    for x in 0..2 {
        assert_eq!(s.graded_dims(x, x), BTreeMap::from([(0, 1)]));
    }
    assert!(s.graded_dims(0, 1).is_empty());
    assert!(check_relations(s, CheckOptions::new(3, 5)).passed());
}

#[test]
fn split_identity_is_the_object() {
    let cat = a3(true);
    let summands: Vec<Summand> = (0..3).map(|x| Summand::new(&cat.objects()[x], x, cat.unit(x).unwrap())).collect();
    let split = split_idempotents(&cat, &summands, 2).unwrap();
    let (a, b) = (Presentation::of(&cat).unwrap(), Presentation::of(&split.category).unwrap());
    assert!(a.isomorphism(&b).is_some());
}

#[test]
fn presentations() {
    let (free, rel) = (Presentation::of(&a3(false)).unwrap(), Presentation::of(&a3(true)).unwrap());
    assert!(free.isomorphism(&free).is_some());
    assert!(free.isomorphism(&rel).is_none());
    assert_eq!(free.arrows.len(), 2);
    assert_eq!(rel.relations, vec!["b∘a = 0".to_string()]);
    // relabelled objects
    let q = GradedQuiver::build(&["z", "y", "x"], &[("s", "y", "x", 0), ("t", "z", "y", 0)], &[], &[]).unwrap();
    let other = Presentation::of(&path_algebra_category(&MonomialAlgebra::finite(q).unwrap()).unwrap()).unwrap();
    assert!(free.isomorphism(&other).is_some());
    // derived equivalent but not isomorphic: same Coxeter polynomial
    assert_eq!(free.coxeter_polynomial(), rel.coxeter_polynomial());
}

#[test]
fn trivial_action_doubles_homs() {
    let cat = build_category(&builders::orbifold_disk_star(3).unwrap()).unwrap();
    let orbit = OrbitCategory::new(&cat, GroupAction::trivial(&cat)).unwrap();
    for x in 0..cat.objects().len() {
        for y in 0..cat.objects().len() {
            let doubled: BTreeMap<i64, usize> = graded_dims(&cat, x, y).into_iter().map(|(d, k)| (d, 2 * k)).collect();
            assert_eq!(graded_dims(&orbit, x, y), doubled);
        }
    }
    assert!(check_relations_exhaustive(&orbit, CheckOptions::new(2, 3)).passed());
}

#[test]
fn half_turn_on_the_double_cover() {
    let layout = builders::double_cover_layout(3).unwrap();
    let f = build_fukaya(&layout.complex).unwrap();
    let g = orbifukaya::orbit::rotation_action(&layout, &f, 180.0).unwrap();
    g.validate_table(&f.category).unwrap();
    let (plus, minus) = (f.category.object_index("g1+").unwrap(), f.category.object_index("g1-").unwrap());
    assert_eq!(g.act_object(plus), minus);
    let alpha = f.category.object_index("alpha").unwrap();
    assert_eq!(g.act_object(alpha), alpha);
    assert!(orbifukaya::orbit::rotation_action(&layout, &f, 90.0).is_err());
}
