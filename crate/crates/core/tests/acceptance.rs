//! Acceptance criteria 1 to 6. Prints one line per criterion and exits
//! nonzero when any of them fails. All comparisons are exact.

use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use orbifukaya::ainf::category::{AInf, AInfCategory};
use orbifukaya::ainf::check::{check_relations, check_relations_exhaustive, CheckOptions};
use orbifukaya::ainf::hochschild::{Cochain, Hochschild, Key};
use orbifukaya::fukaya::blocks::{building_block, BlockType};
use orbifukaya::fukaya::build_category;
use orbifukaya::json::CategoryJson;
use orbifukaya::orbit::orbifold_pipeline;
use orbifukaya::scalar::q;
use orbifukaya::surface::{builders, PolygonComplex};
use orbifukaya::twisted::{is_minimal, make_twisted_complex, minimal_model, ShiftedObject, TwCategory};
use orbifukaya::worked::{cylinder_deformation, gamma_zero, worked_example};
use orbifukaya::Vector;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, ok: String) -> Self {
        match failures.is_empty() {
            true => Outcome { passed: true, detail: ok },
            false => Outcome { passed: false, detail: failures.join("; ") },
        }
    }
}

/// Admissible surface fixtures with the parameter `n` that sets the checked arity.
fn complexes() -> Vec<(String, usize, PolygonComplex)> {
    let mut out = Vec::new();
    let mut push = |name: String, n: usize, c: orbifukaya::Result<PolygonComplex>| {
        out.push((name.clone(), n, c.unwrap_or_else(|e| panic!("{}: {}", name, e))));
    };
    for n in 1..=6 {
        push(format!("Γ′ {}", n), n, builders::orbifold_disk_gamma_prime(n));
        push(format!("double cover {}", n), n, builders::double_cover_disk(n));
    }
    for n in 2..=6 {
        push(format!("star {}", n), n, builders::orbifold_disk_star(n));
        push(format!("cylinder {}", n), n, builders::cylinder_one_stop(n));
        for m in 2..=n {
            push(format!("generator {} {}", n, m), n, builders::orbifold_disk_generator(n, m));
        }
    }
    push("annulus".into(), 3, builders::orbifold_annulus_figure());
    for k in 1..=6 {
        push(format!("worked example {}", k), 4, builders::example_dissection(k));
    }
    out
}

/// Building blocks with `n ≤ 6`, each with the balanced degrees and one
/// shifted variant.
fn blocks() -> Vec<(String, usize, AInfCategory)> {
    let mut out = Vec::new();
    let variants = |k: usize, sum: i64| -> Vec<Vec<i64>> {
        let mut base = vec![0; k];
        let mut left = sum;
        for d in base.iter_mut() {
            if left > 0 {
                *d = 1;
                left -= 1;
            }
        }
        if k == 1 {
            base[0] = sum;
        }
        let mut v = vec![base.clone()];
        if k >= 2 {
            let mut w = base;
            w[0] += 2;
            w[1] -= 2;
            v.push(w);
        }
        v
    };
    for n in 1..=6usize {
        let k = n as i64;
        let mut push = |name: String, t: BlockType, degrees: Vec<i64>| {
            let cat = building_block(t, &degrees).unwrap_or_else(|e| panic!("{} {:?}: {}", name, degrees, e));
            out.push((format!("{} {:?}", name, degrees), n, cat));
        };
        for d in variants(n - 1, 0) {
            push(format!("A({})", n), BlockType::A(n), d);
        }
        for d in variants(n, 0) {
            push(format!("Ã{}", n - 1), BlockType::Atilde(n - 1), d);
        }
        if n >= 2 {
            for d in variants(n, k - 2) {
                push(format!("(Ã{}, μ°{})", n - 1, n), BlockType::AtildeSmooth(n - 1), d);
            }
        }
        for d in variants(n, k - 1) {
            push(format!("(Ã{}, μ⊗{})", n - 1, 2 * n), BlockType::AtildeOrb(n - 1), d);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut chains = 0;
    let cats = complexes()
        .into_iter()
        .map(|(name, n, c)| (name.clone(), n, build_category(&c).unwrap_or_else(|e| panic!("{}: {}", name, e))))
        .chain(blocks());
    for (name, n, cat) in cats {
        let r = check_relations(&cat, CheckOptions::new(2 * n, 2 * n + 2));
        count += 1;
        chains += r.chains_checked;
        if !r.passed() {
            failures.push(format!("{}: {} violations", name, r.violations.len()));
        }
    }
    Outcome::from_failures(failures, format!("{} fixtures, {} chains at max_arity 2n, max_chain 2n+2", count, chains))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=4 {
        match gamma_zero(n, 2 * n) {
            Ok(r) => failures.extend(r.checks.iter().filter(|c| !c.passed).map(|c| format!("n = {}: {}: {}", n, c.name, c.detail))),
            Err(e) => failures.push(format!("n = {}: {}", n, e)),
        }
    }
    Outcome::from_failures(failures, "γ₀ for n = 1..4: MC, H•End = ⟨id, ε⟩, ε² = id, skew-gentle minimal model".into())
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=5 {
        match cylinder_deformation(n) {
            Ok(r) => failures.extend(r.checks.iter().filter(|c| !c.passed).map(|c| format!("n = {}: {}: {}", n, c.name, c.detail))),
            Err(e) => failures.push(format!("n = {}: {}", n, e)),
        }
    }
    Outcome::from_failures(failures, "n = 2..5: dim HH² = 1, MC, deformation ≅ orbifold disk".into())
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut classes = Vec::new();
    for k in 1..=6 {
        match worked_example(k, 5) {
            Ok(r) => {
                classes.push(r.class.name());
                failures.extend(r.checks.iter().filter(|c| !c.passed).map(|c| format!("example {}: {}: {}", k, c.name, c.detail)));
            }
            Err(e) => failures.push(format!("example {}: {}", k, e)),
        }
    }
    Outcome::from_failures(failures, format!("classes {}", classes.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for n in 2..=3 {
        for m in 2..=n {
            runs += 1;
            match orbifold_pipeline(n, m, (m + 1).max(4)) {
                Ok(r) => failures.extend(
                    r.checks.iter().filter(|c| !c.passed).map(|c| format!("n = {}, m = {}: {}: {}", n, m, c.name, c.detail)),
                ),
                Err(e) => failures.push(format!("n = {}, m = {}: {}", n, m, e)),
            }
        }
    }
    Outcome::from_failures(failures, format!("{} pipeline runs for n ∈ {{2, 3}}", runs))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

type Pool = (AInfCategory, i64, Vec<(Key, usize)>);

/// Nonempty cochain pools `(category, arity, degree)` for random cochains.
fn cochain_pools() -> Vec<Pool> {
    let cats = vec![
        build_category(&builders::cylinder_one_stop(3).unwrap()).unwrap(),
        build_category(&builders::orbifold_disk_star(3).unwrap()).unwrap(),
        build_category(&builders::example_dissection(4).unwrap()).unwrap(),
        building_block(BlockType::AtildeOrb(1), &[1, 0]).unwrap(),
        building_block(BlockType::A(3), &[1, -1]).unwrap(),
    ];
    let mut out = Vec::new();
    for cat in cats {
        for degree in 0..=3 {
            for arity in 0..=3 {
                let basis = Hochschild::new(&cat).cochain_basis(arity, degree);
                if !basis.is_empty() {
                    out.push((cat.clone(), degree, basis));
                }
            }
        }
    }
    out
}

fn cochain(degree: i64, pool: &[(Key, usize)], terms: &[(usize, i64)]) -> Cochain {
    let mut f = Cochain::zero(degree);
    for &(i, c) in terms {
        let (key, out) = &pool[i % pool.len()];
        f.add_term(key.clone(), &Vector::basis(*out), &q(c));
    }
    f
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((any::<usize>(), prop_oneof![-3i64..=-1, 1i64..=3]), 1..6)
}

fn perturbed(c: &PolygonComplex, p: usize, corners: &[(usize, i64)]) -> PolygonComplex {
    let mut c = c.clone();
    let p = p % c.polygons.len();
    let poly = &mut c.polygons[p];
    for &(k, d) in corners {
        let len = poly.corners.len();
        poly.corners[k % len].winding += d;
    }
    c
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    let pools = cochain_pools();

    let strategy = (any::<usize>(), terms());
    let result = runner(64).run(&strategy, |(p, t)| {
        let (cat, degree, pool) = &pools[p % pools.len()];
        let h = Hochschild::new(cat);
        let f = cochain(*degree, pool, &t);
        prop_assert!(h.differential(&h.differential(&f)).is_zero());
        Ok(())
    });
    match result {
        Ok(()) => details.push("δ² = 0 on 64 cochains".to_string()),
        Err(e) => failures.push(format!("δ² = 0: {}", e)),
    }

    let strategy = (any::<usize>(), terms(), any::<usize>(), terms());
    let result = runner(64).run(&strategy, |(p1, t1, p2, t2)| {
        let (cat, d1, pool1) = &pools[p1 % pools.len()];
        // both cochains on the same category
        let same: Vec<&Pool> =
            pools.iter().filter(|(c, _, _)| c.objects() == cat.objects() && c.basis().len() == cat.basis().len()).collect();
        let (_, d2, pool2) = same[p2 % same.len()];
        let h = Hochschild::new(cat);
        let (f, g) = (cochain(*d1, pool1, &t1), cochain(*d2, pool2, &t2));
        let mut sum = h.bracket(&f, &g);
        let s = if ((d1 - 1) * (d2 - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
        sum.add(&h.bracket(&g, &f), &q(s));
        prop_assert!(sum.is_zero());
        Ok(())
    });
    match result {
        Ok(()) => details.push("bracket antisymmetry on 64 pairs".to_string()),
        Err(e) => failures.push(format!("bracket antisymmetry: {}", e)),
    }

    let mut fixtures = complexes();
    fixtures.push(("annulus, right".into(), 3, builders::orbifold_annulus_figure_right().unwrap()));
    let strategy = (any::<usize>(), any::<usize>(), any::<usize>(), any::<usize>(), prop_oneof![Just(1i64), Just(-1i64)]);
    let result = runner(128).run(&strategy, |(f, p, a, b, d)| {
        let (name, _, c) = &fixtures[f % fixtures.len()];
        prop_assert!(c.check_poincare_hopf().holds, "{} fails unperturbed", name);
        let single = perturbed(c, p, &[(a, d)]);
        prop_assert!(!single.check_poincare_hopf().holds, "{}: a single {:+} passes", name, d);
        let balanced = perturbed(c, p, &[(a, d), (b, -d)]);
        prop_assert!(balanced.check_poincare_hopf().holds, "{}: a balanced perturbation fails", name);
        Ok(())
    });
    match result {
        Ok(()) => details.push("Poincaré–Hopf on 128 perturbations".to_string()),
        Err(e) => failures.push(format!("Poincaré–Hopf: {}", e)),
    }

    let strategy = (2usize..=6, prop::collection::vec(-2i64..=2, 5), prop::collection::vec(prop_oneof![Just(0i64), 1i64..=3], 5));
    let result = runner(64).run(&strategy, |(k, degrees, coeffs)| {
        let base = building_block(BlockType::A(k), &degrees[..k - 1]).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut entries = vec![ShiftedObject::new(0, 0)];
        let mut delta = std::collections::BTreeMap::new();
        let mut shift = 0;
        for i in 1..k {
            let p = base.index(&format!("p{}", i)).unwrap();
            shift += base.basis()[p].deg - 1;
            entries.push(ShiftedObject::new(base.object_index(&format!("v{}", i + 1)).unwrap(), shift));
            delta.insert((i - 1, i), Vector::term(p, q(coeffs[i - 1])));
        }
        let x = make_twisted_complex(&base, "x", entries, delta).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(x.longest_delta_path() <= x.max_insertions());
        let tw = TwCategory::new(&base, vec![x]);
        let rel = check_relations_exhaustive(&tw, CheckOptions::new(3, 4));
        prop_assert!(rel.passed(), "{:?}", rel.violations.first());
        Ok(())
    });
    match result {
        Ok(()) => details.push("tw δ-paths within len − 1 on 64 complexes".to_string()),
        Err(e) => failures.push(format!("tw bound: {}", e)),
    }

    let mut idempotent = 0;
    let cats = complexes().into_iter().map(|(name, _, c)| (name, build_category(&c).unwrap())).chain(blocks().into_iter().map(|(n, _, c)| (n, c)));
    for (name, cat) in cats {
        let all: Vec<usize> = (0..cat.objects().len()).collect();
        let once = minimal_model(&cat, &all, 4).category;
        let twice = minimal_model(&once, &all, 4).category;
        if !is_minimal(&once, &all) || CategoryJson::from_category(&once) != CategoryJson::from_category(&twice) {
            failures.push(format!("minimal model of {} is not idempotent", name));
        }
        idempotent += 1;
    }
    details.push(format!("minimal_model idempotent on {} fixtures", idempotent));
    Outcome::from_failures(failures, details.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 6] = [
        ("A∞ validity suite", criterion_1),
        ("γ₀ over the Γ′ dissection", criterion_2),
        ("cylinder Hochschild deformation", criterion_3),
        ("worked example regression", criterion_4),
        ("orbit pipeline", criterion_5),
        ("property batteries", criterion_6),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        failed += usize::from(!o.passed);
        println!(
            "criterion {}: {} {} [{}] tolerance exact, {:.2?}",
            k + 1,
            if o.passed { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{} of 6 criteria failed", failed);
        std::process::exit(1);
    }
}
