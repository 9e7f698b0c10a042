//! Graded quivers with monomial relations and ε² = 1 loops.

use std::collections::{BTreeMap, HashMap, HashSet};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::ainf::AInfCategory;
use crate::error::{Error, Result};
use crate::scalar::sign;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

/// A quiver with integer-graded arrows, monomial zero relations and special
/// loops subject to `ε² = e`.
///
/// Relations are stored in composition order: `[q, p]` is `qp = q ∘ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<usize>>,
    pub special_loops: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct ArrowJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, JsonSchema)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default)]
    pub special_loops: Vec<String>,
}

pub fn make_graded_quiver(
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    relations: Vec<Vec<String>>,
    special_loops: Vec<String>,
) -> Result<GradedQuiver> {
    let vindex: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vindex.len() != vertices.len() {
        let mut seen = HashSet::new();
        let dup = vertices.iter().find(|v| !seen.insert(v.as_str())).unwrap();
        return Err(Error::DuplicateName(dup.clone()));
    }
    let vertex = |name: &str| vindex.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));
    let mut out = Vec::with_capacity(arrows.len());
    let mut aindex: HashMap<String, usize> = HashMap::new();
    for a in &arrows {
        if aindex.insert(a.name.clone(), out.len()).is_some() {
            return Err(Error::DuplicateName(a.name.clone()));
        }
        out.push(Arrow { name: a.name.clone(), src: vertex(&a.src)?, tgt: vertex(&a.tgt)?, deg: a.deg });
    }
    let arrow = |name: &str| aindex.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()));
    let mut rels = Vec::new();
    for r in &relations {
        let idx: Vec<usize> = r.iter().map(|n| arrow(n)).collect::<Result<_>>()?;
        let composable = idx.len() >= 2 && idx.windows(2).all(|w| out[w[0]].src == out[w[1]].tgt);
        if !composable {
            return Err(Error::NonComposableRelation(r.clone()));
        }
        rels.push(idx);
    }
    let mut special = Vec::new();
    for s in &special_loops {
        let i = arrow(s)?;
        if out[i].src != out[i].tgt || out[i].deg != 0 {
            return Err(Error::BadEpsilonRelation(s.clone()));
        }
        if rels.iter().any(|r| r.contains(&i)) {
            return Err(Error::BadEpsilonRelation(s.clone()));
        }
        special.push(i);
    }
    Ok(GradedQuiver { vertices, arrows: out, relations: rels, special_loops: special })
}

impl GradedQuiver {
    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        make_graded_quiver(j.vertices.clone(), j.arrows.clone(), j.relations.clone(), j.special_loops.clone())
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                    deg: a.deg,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|&i| self.arrows[i].name.clone()).collect())
                .collect(),
            special_loops: self.special_loops.iter().map(|&i| self.arrows[i].name.clone()).collect(),
        }
    }

    /// Convenience constructor from string slices.
    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str, i64)],
        relations: &[&[&str]],
        special_loops: &[&str],
    ) -> Result<Self> {
        make_graded_quiver(
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(n, s, t, d)| ArrowJson { name: n.to_string(), src: s.to_string(), tgt: t.to_string(), deg: *d })
                .collect(),
            relations.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            special_loops.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    fn is_special(&self, a: usize) -> bool {
        self.special_loops.contains(&a)
    }

    /// Arrow words in application order that contain a relation.
    fn has_relation_suffix(&self, word: &[usize]) -> bool {
        self.relations.iter().any(|r| {
            r.len() <= word.len() && word[word.len() - r.len()..].iter().eq(r.iter().rev())
        })
    }

    fn contains_relation(&self, word: &[usize]) -> bool {
        (1..=word.len()).any(|k| self.has_relation_suffix(&word[..k]))
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.src])
        } else {
            p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.arrows[a].deg).sum()
    }

    /// `q ∘ p`, or `None` if the product vanishes or is undefined.
    pub fn compose(&self, q: &Path, p: &Path) -> Option<Path> {
        if p.tgt != q.src {
            return None;
        }
        let mut word: Vec<usize> = Vec::with_capacity(p.arrows.len() + q.arrows.len());
        for &a in p.arrows.iter().chain(q.arrows.iter()) {
            if word.last() == Some(&a) && self.is_special(a) {
                word.pop();
            } else {
                word.push(a);
            }
        }
        if self.contains_relation(&word) {
            return None;
        }
        Some(Path { src: p.src, tgt: q.tgt, arrows: word })
    }
}

/// A path in application order: `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PathBasis {
    pub paths: Vec<Path>,
    /// No nonzero path is longer than the bound.
    pub saturated: bool,
}

/// All nonzero paths of length at most `max_length`, vertex idempotents first.
pub fn path_basis(q: &GradedQuiver, max_length: usize) -> PathBasis {
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = paths.clone();
    let mut saturated = true;
    for len in 1..=max_length + 1 {
        let mut next = Vec::new();
        for p in &frontier {
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.src != p.tgt {
                    continue;
                }
                if p.arrows.last() == Some(&a) && q.is_special(a) {
                    continue;
                }
                let mut word = p.arrows.clone();
                word.push(a);
                if q.has_relation_suffix(&word) {
                    continue;
                }
                next.push(Path { src: p.src, tgt: arrow.tgt, arrows: word });
            }
        }
        if len == max_length + 1 {
            saturated = next.is_empty();
            break;
        }
        paths.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    PathBasis { paths, saturated }
}

#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    pub quiver: GradedQuiver,
    pub basis: PathBasis,
}

impl MonomialAlgebra {
    pub fn new(quiver: GradedQuiver, max_length: usize) -> Self {
        let basis = path_basis(&quiver, max_length);
        MonomialAlgebra { quiver, basis }
    }

    /// Finite-dimensional algebras only. Paths are enumerated up to a length
    /// bound derived from the arrow count; failing to saturate below it is
    /// reported as infinite-dimensional.
    pub fn finite(quiver: GradedQuiver) -> Result<Self> {
        let bound = 4 * quiver.arrows.len() + 2;
        let alg = Self::new(quiver, bound);
        if alg.basis.saturated {
            Ok(alg)
        } else {
            Err(Error::InfiniteDimensional(bound))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GentleReport {
    pub gentle: bool,
    pub violations: Vec<String>,
}

/// Checks the gentle conditions; special loops count as having `ε² = 0`.
pub fn is_gentle(q: &GradedQuiver) -> GentleReport {
    let mut violations = Vec::new();
    let mut rels: HashSet<(usize, usize)> = HashSet::new();
    for r in &q.relations {
        if r.len() != 2 {
            violations.push(format!("relation of length {} is not quadratic", r.len()));
        } else {
            rels.insert((r[0], r[1]));
        }
    }
    for &e in &q.special_loops {
        rels.insert((e, e));
    }
    for (v, name) in q.vertices.iter().enumerate() {
        let inc = q.arrows.iter().filter(|a| a.tgt == v).count();
        let out = q.arrows.iter().filter(|a| a.src == v).count();
        if inc > 2 {
            violations.push(format!("valence: {} incoming arrows at {}", inc, name));
        }
        if out > 2 {
            violations.push(format!("valence: {} outgoing arrows at {}", out, name));
        }
    }
    for (b, arrow) in q.arrows.iter().enumerate() {
        let pre: Vec<usize> = (0..q.arrows.len()).filter(|&a| q.arrows[a].tgt == arrow.src).collect();
        let post: Vec<usize> = (0..q.arrows.len()).filter(|&c| q.arrows[c].src == arrow.tgt).collect();
        let pre_in = pre.iter().filter(|&&a| rels.contains(&(b, a))).count();
        let post_in = post.iter().filter(|&&c| rels.contains(&(c, b))).count();
        if pre_in > 1 {
            violations.push(format!("{} has {} precomposable arrows in relations", arrow.name, pre_in));
        }
        if pre.len() - pre_in > 1 {
            violations.push(format!("{} has {} precomposable arrows not in relations", arrow.name, pre.len() - pre_in));
        }
        if post_in > 1 {
            violations.push(format!("{} has {} postcomposable arrows in relations", arrow.name, post_in));
        }
        if post.len() - post_in > 1 {
            violations.push(format!("{} has {} postcomposable arrows not in relations", arrow.name, post.len() - post_in));
        }
    }
    GentleReport { gentle: violations.is_empty(), violations }
}

/// Replaces `ε² = 0` by `ε² = e` at the given loops.
pub fn skew_gentle(q: &GradedQuiver, sp: &[&str]) -> Result<GradedQuiver> {
    let mut out = q.clone();
    for name in sp {
        let e = q.arrow_index(name).ok_or_else(|| Error::NotASpecialLoop(name.to_string()))?;
        let a = &q.arrows[e];
        let pos = out.relations.iter().position(|r| r == &vec![e, e]);
        match pos {
            Some(pos) if a.src == a.tgt && a.deg == 0 => {
                out.relations.remove(pos);
                if out.relations.iter().any(|r| r.contains(&e)) {
                    return Err(Error::NotASpecialLoop(name.to_string()));
                }
                out.special_loops.push(e);
            }
            _ => return Err(Error::NotASpecialLoop(name.to_string())),
        }
    }
    Ok(out)
}

/// Disjoint union of `q1` and `q2` with each pair `(v1, v2)` identified; the
/// glued vertex keeps the name from `q1`.
pub fn glue_quivers(q1: &GradedQuiver, q2: &GradedQuiver, ident: &[(&str, &str)]) -> Result<GradedQuiver> {
    let mut map2: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used1 = HashSet::new();
    for (v1, v2) in ident {
        let i1 = q1.vertex_index(v1).ok_or_else(|| Error::UnknownVertex(v1.to_string()))?;
        let i2 = q2.vertex_index(v2).ok_or_else(|| Error::UnknownVertex(v2.to_string()))?;
        if !used1.insert(i1) || map2.insert(i2, i1).is_some() {
            return Err(Error::VertexCollision(format!("{}~{}", v1, v2)));
        }
    }
    let mut vertices = q1.vertices.clone();
    for (i, v) in q2.vertices.iter().enumerate() {
        if map2.contains_key(&i) {
            continue;
        }
        if vertices.contains(v) {
            return Err(Error::VertexCollision(v.clone()));
        }
        map2.insert(i, vertices.len());
        vertices.push(v.clone());
    }
    let mut arrows = q1.arrows.clone();
    let offset = arrows.len();
    for a in &q2.arrows {
        if arrows.iter().any(|b| b.name == a.name) {
            return Err(Error::DuplicateName(a.name.clone()));
        }
        arrows.push(Arrow { name: a.name.clone(), src: map2[&a.src], tgt: map2[&a.tgt], deg: a.deg });
    }
    let mut relations = q1.relations.clone();
    relations.extend(q2.relations.iter().map(|r| r.iter().map(|&a| a + offset).collect()));
    let mut special_loops = q1.special_loops.clone();
    special_loops.extend(q2.special_loops.iter().map(|&a| a + offset));
    Ok(GradedQuiver { vertices, arrows, relations, special_loops })
}

/// The graded path algebra as an A∞ category with
/// `μ₂(s a₂ ⊗ s a₁) = (−1)^{|a₁|} s(a₂a₁)` and no other products.
pub fn path_algebra_category(alg: &MonomialAlgebra) -> Result<AInfCategory> {
    if !alg.basis.saturated {
        return Err(Error::InfiniteDimensional(alg.basis.paths.iter().map(|p| p.len()).max().unwrap_or(0)));
    }
    let q = &alg.quiver;
    let mut cat = AInfCategory::new(q.vertices.clone());
    let mut index: HashMap<Path, usize> = HashMap::new();
    for p in &alg.basis.paths {
        let i = if p.is_empty() {
            cat.add_unit(p.src, &q.path_name(p))?
        } else {
            cat.add_morphism(&q.path_name(p), p.src, p.tgt, q.path_degree(p))?
        };
        index.insert(p.clone(), i);
    }
    for a1 in alg.basis.paths.iter().filter(|p| !p.is_empty()) {
        for a2 in alg.basis.paths.iter().filter(|p| !p.is_empty() && p.src == a1.tgt) {
            if let Some(prod) = q.compose(a2, a1) {
                let out = Vector::term(index[&prod], sign(q.path_degree(a1)));
                cat.add_entry(vec![index[a2], index[a1]], out)?;
            }
        }
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{check_relations, AInf, CheckOptions};
    use crate::scalar::q as qq;

    fn a(n: usize, rels: bool) -> GradedQuiver {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<ArrowJson> = (1..n)
            .map(|i| ArrowJson { name: format!("p{}", i), src: i.to_string(), tgt: (i + 1).to_string(), deg: 0 })
            .collect();
        let relations = if rels { (2..n).map(|i| vec![format!("p{}", i), format!("p{}", i - 1)]).collect() } else { vec![] };
        make_graded_quiver(vs, arrows, relations, vec![]).unwrap()
    }

    /// Brute force: every composable arrow word up to `len` without a
    /// relation subword.
    fn brute_paths(q: &GradedQuiver, len: usize) -> HashSet<Vec<usize>> {
        let mut out: HashSet<Vec<usize>> = HashSet::new();
        let m = q.arrows.len();
        for l in 1..=len {
            let total = m.pow(l as u32);
            for code in 0..total {
                let mut c = code;
                let word: Vec<usize> = (0..l)
                    .map(|_| {
                        let a = c % m;
                        c /= m;
                        a
                    })
                    .collect();
                if !word.windows(2).all(|w| q.arrows[w[0]].tgt == q.arrows[w[1]].src) {
                    continue;
                }
                let bad = q.relations.iter().any(|r| {
                    let rev: Vec<usize> = r.iter().rev().copied().collect();
                    word.windows(rev.len()).any(|w| w == rev.as_slice())
                });
                if !bad {
                    out.insert(word);
                }
            }
        }
        out
    }

    #[test]
    fn a4_with_relations_accepted() {
        let q = a(4, true);
        assert_eq!(q.relations.len(), 2);
        assert!(is_gentle(&q).gentle);
    }

    #[test]
    fn empty_quiver() {
        let q = make_graded_quiver(vec![], vec![], vec![], vec![]).unwrap();
        assert!(path_basis(&q, 3).paths.is_empty());
    }

    #[test]
    fn non_composable_relation_rejected() {
        let r = GradedQuiver::build(&["1", "2", "3", "4"], &[("p", "1", "2", 0), ("q", "3", "4", 0)], &[&["q", "p"]], &[]);
        assert!(matches!(r, Err(Error::NonComposableRelation(_))));
    }

    #[test]
    fn bad_epsilon_rejected() {
        let r = GradedQuiver::build(&["1", "2"], &[("e", "1", "2", 0)], &[], &["e"]);
        assert!(matches!(r, Err(Error::BadEpsilonRelation(_))));
        let r = GradedQuiver::build(&["1"], &[("e", "1", "1", 1)], &[], &["e"]);
        assert!(matches!(r, Err(Error::BadEpsilonRelation(_))));
    }

    #[test]
    fn a3_basis_matches_brute_force() {
        let q = a(3, true);
        let b = path_basis(&q, 5);
        assert!(b.saturated);
        let names: HashSet<String> = b.paths.iter().map(|p| q.path_name(p)).collect();
        let expect: HashSet<String> = ["e_1", "e_2", "e_3", "p1", "p2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names, expect);
        let words: HashSet<Vec<usize>> = b.paths.iter().filter(|p| !p.is_empty()).map(|p| p.arrows.clone()).collect();
        assert_eq!(words, brute_paths(&q, 5));
    }

    #[test]
    fn loop_without_relations_not_saturated() {
        let q = GradedQuiver::build(&["v"], &[("eps", "v", "v", 0)], &[], &[]).unwrap();
        let b = path_basis(&q, 3);
        assert!(!b.saturated);
        let names: Vec<String> = b.paths.iter().map(|p| q.path_name(p)).collect();
        assert_eq!(names, vec!["e_v", "eps", "eps*eps", "eps*eps*eps"]);
        let b0 = path_basis(&q, 0);
        assert_eq!(b0.paths.len(), 1);
    }

    #[test]
    fn cyclic_a3_tilde_gentle() {
        let q = GradedQuiver::build(
            &["1", "2", "3"],
            &[("a", "1", "2", 0), ("b", "2", "3", 0), ("c", "3", "1", 1)],
            &[&["b", "a"], &["c", "b"], &["a", "c"]],
            &[],
        )
        .unwrap();
        assert!(is_gentle(&q).gentle);
        let q = GradedQuiver::build(
            &["1", "2", "3", "4"],
            &[("a", "1", "2", 0), ("b", "1", "3", 0), ("c", "1", "4", 0)],
            &[],
            &[],
        )
        .unwrap();
        let r = is_gentle(&q);
        assert!(!r.gentle);
        assert!(r.violations[0].starts_with("valence"));
        assert!(is_gentle(&a(2, false)).gentle);
    }

    #[test]
    fn skew_gentle_replaces_relation() {
        let q = GradedQuiver::build(
            &["0", "1", "2"],
            &[("eps", "0", "0", 0), ("p0", "0", "1", 0), ("p1", "1", "2", 1)],
            &[&["eps", "eps"], &["p1", "p0"]],
            &[],
        )
        .unwrap();
        assert!(is_gentle(&q).gentle);
        let s = skew_gentle(&q, &["eps"]).unwrap();
        assert_eq!(s.special_loops.len(), 1);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(skew_gentle(&q, &[]).unwrap(), q);
        assert!(matches!(skew_gentle(&q, &["p0"]), Err(Error::NotASpecialLoop(_))));
        let alg = MonomialAlgebra::finite(s).unwrap();
        let names: HashSet<String> = alg.basis.paths.iter().map(|p| alg.quiver.path_name(p)).collect();
        assert!(names.contains("p0*eps"));
        assert!(!names.contains("eps*eps"));
        let cat = path_algebra_category(&alg).unwrap();
        let eps = cat.index("eps").unwrap();
        let e0 = cat.index("e_0").unwrap();
        assert_eq!(cat.mu(&[eps, eps]), Vector::basis(e0));
        assert!(check_relations(&cat, CheckOptions::new(4, 6)).passed());
    }

    #[test]
    fn glue_a4_with_a3_tilde() {
        let a4 = a(4, true);
        let cyc = GradedQuiver::build(
            &["x", "y", "z", "w"],
            &[("a", "x", "y", 0), ("b", "y", "z", 0), ("c", "z", "w", 0), ("d", "w", "x", 2)],
            &[&["b", "a"], &["c", "b"], &["d", "c"], &["a", "d"]],
            &[],
        )
        .unwrap();
        assert!(is_gentle(&cyc).gentle);
        let g = glue_quivers(&a4, &cyc, &[("4", "x")]).unwrap();
        assert_eq!(g.vertices.len(), 7);
        assert!(is_gentle(&g).gentle);
        let g = glue_quivers(&a4, &cyc, &[]).unwrap();
        assert_eq!(g.vertices.len(), 8);
        assert!(glue_quivers(&a4, &cyc, &[("1", "x"), ("1", "y")]).is_err());
    }

    #[test]
    fn glue_breaks_valence() {
        // in-valence 2 at c, in-valence 1 at z
        let q1 = GradedQuiver::build(&["a", "b", "c"], &[("f", "a", "c", 0), ("g", "b", "c", 0)], &[], &[]).unwrap();
        let q2 = GradedQuiver::build(&["y", "z"], &[("h", "y", "z", 0)], &[], &[]).unwrap();
        assert!(is_gentle(&q1).gentle && is_gentle(&q2).gentle);
        let g = glue_quivers(&q1, &q2, &[("c", "z")]).unwrap();
        assert!(!is_gentle(&g).gentle);
    }

    #[test]
    fn path_algebra_signs() {
        let q = GradedQuiver::build(&["1", "2", "3"], &[("p", "1", "2", 1), ("q", "2", "3", 0)], &[], &[]).unwrap();
        let alg = MonomialAlgebra::finite(q).unwrap();
        let cat = path_algebra_category(&alg).unwrap();
        let (p, qq_, qp) = (cat.index("p").unwrap(), cat.index("q").unwrap(), cat.index("q*p").unwrap());
        assert_eq!(cat.mu(&[qq_, p]), Vector::term(qp, qq(-1)));
        let e1 = cat.index("e_1").unwrap();
        assert_eq!(cat.mu(&[p, e1]), Vector::basis(p));
        let a3 = MonomialAlgebra::finite(a(3, true)).unwrap();
        let c3 = path_algebra_category(&a3).unwrap();
        let (p1, p2) = (c3.index("p1").unwrap(), c3.index("p2").unwrap());
        assert!(c3.mu(&[p2, p1]).is_zero());
        assert!(check_relations(&cat, CheckOptions::new(4, 6)).passed());
    }
}
