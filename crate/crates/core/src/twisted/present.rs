//! Presentations of minimal categories and their comparison.
//!
//! The radical `R` of a minimal category is `hom(X, Y)` for `X ≠ Y` and the
//! Jacobson radical of `End(X)` on the diagonal, found as the kernel of the
//! trace form `(x, y) ↦ tr(L_{xy})`. Arrows are `R / R²`. Two presentations
//! are compared through invariants that do not depend on a basis: graded hom
//! and arrow dimensions, the semisimple rank of each `End(X)`, the rank of
//! every composition map `R(Y, Z) ⊗ R(X, Y) → hom(X, Z)`, and the arities of
//! nonzero higher products.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ainf::category::{AInf, AInfCategory};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::scalar::{format_q, sign, Q};
use crate::vector::Vector;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub objects: Vec<String>,
    /// `hom_dims[x][y]`: degree → dimension.
    pub hom_dims: Vec<Vec<BTreeMap<i64, usize>>>,
    pub arrow_dims: Vec<Vec<BTreeMap<i64, usize>>>,
    /// `dim End(X) / J`.
    pub semisimple_dims: Vec<usize>,
    /// `(x, y, z, rank)` for each nonzero composition map.
    pub composition_ranks: Vec<(usize, usize, usize, usize)>,
    pub arrows: Vec<Arrow>,
    /// Products of composable arrows, `b∘a = value`.
    pub relations: Vec<String>,
    pub higher_arities: Vec<usize>,
}

/// `b ∘ a = (−1)^{|a|} μ₂(b, a)`.
fn compose(cat: &AInfCategory, b: &Vector, a: &Vector) -> Vector {
    let mut out = Vector::new();
    for (i, c) in a.iter() {
        let v = cat.mu_vec(&[b, &Vector::basis(i)]);
        out.add_scaled(&v, &(c * &sign(cat.basis()[i].deg)));
    }
    out
}

fn dims_of(cat: &AInfCategory, vs: &[Vector]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for v in vs {
        if let Some((i, _)) = v.iter().next() {
            *out.entry(cat.basis()[i].deg).or_insert(0) += 1;
        }
    }
    out
}

fn trace(cat: &AInfCategory, end: &[usize], z: &Vector) -> Q {
    let mut t = Q::from_integer(0.into());
    for &e in end {
        t += compose(cat, z, &Vector::basis(e)).get(e);
    }
    t
}

/// A homogeneous basis of the Jacobson radical of `End(x)`.
fn radical(cat: &AInfCategory, x: usize) -> Vec<Vector> {
    let end: Vec<usize> = cat.hom(x, x).to_vec();
    let degs: BTreeSet<i64> = end.iter().map(|&i| cat.basis()[i].deg).collect();
    let mut out = Vec::new();
    for &d in &degs {
        let row: Vec<usize> = end.iter().copied().filter(|&i| cat.basis()[i].deg == d).collect();
        let col: Vec<usize> = end.iter().copied().filter(|&i| cat.basis()[i].deg == -d).collect();
        // G[j][k] = tr(L_{row_k ∘ col_j}); the radical in degree d is its kernel
        let mut g = Matrix::zeros(col.len(), row.len());
        for (j, &y) in col.iter().enumerate() {
            for (k, &r) in row.iter().enumerate() {
                let p = compose(cat, &Vector::basis(r), &Vector::basis(y));
                g.data[j][k] = trace(cat, &end, &p);
            }
        }
        for z in g.nullspace() {
            out.push(z.iter().map(|(k, c)| (row[k], c.clone())).collect());
        }
    }
    out
}

impl Presentation {
    #[allow(clippy::needless_range_loop)]
    pub fn of(cat: &AInfCategory) -> Result<Presentation> {
        let n = cat.objects().len();
        for i in 0..cat.basis().len() {
            if !cat.mu(&[i]).is_zero() {
                return Err(Error::BadParameter("presentations need a minimal category".into()));
            }
        }
        let mut rad: Vec<Vec<Vec<Vector>>> = vec![vec![Vec::new(); n]; n];
        let mut semisimple_dims = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    rad[x][x] = radical(cat, x);
                    semisimple_dims.push(cat.hom(x, x).len() - rad[x][x].len());
                } else {
                    rad[x][y] = cat.hom(x, y).iter().map(|&i| Vector::basis(i)).collect();
                }
            }
        }
        let mut hom_dims = vec![vec![BTreeMap::new(); n]; n];
        let mut arrow_dims = vec![vec![BTreeMap::new(); n]; n];
        let mut arrows = Vec::new();
        let mut arrow_vecs: Vec<(usize, usize, Vector)> = Vec::new();
        let mut composition_ranks = Vec::new();
        for x in 0..n {
            for z in 0..n {
                hom_dims[x][z] = cat.graded_dims(x, z);
                let mut square = Span::new();
                for y in 0..n {
                    let mut span = Span::new();
                    for b in &rad[y][z] {
                        for a in &rad[x][y] {
                            let p = compose(cat, b, a);
                            span.insert(&p);
                            square.insert(&p);
                        }
                    }
                    if span.dim() > 0 {
                        composition_ranks.push((x, y, z, span.dim()));
                    }
                }
                let mut chosen = Vec::new();
                for r in &rad[x][z] {
                    if square.insert(r) {
                        chosen.push(r.clone());
                    }
                }
                arrow_dims[x][z] = dims_of(cat, &chosen);
                for r in chosen {
                    let deg = cat.basis()[r.iter().next().unwrap().0].deg;
                    arrows.push(Arrow {
                        name: crate::twisted::transfer::rep_name(cat.basis(), &r),
                        src: cat.objects()[x].clone(),
                        tgt: cat.objects()[z].clone(),
                        deg,
                    });
                    arrow_vecs.push((x, z, r));
                }
            }
        }
        let mut relations = Vec::new();
        for (k, (_, y, a)) in arrow_vecs.iter().enumerate() {
            for (l, (y2, _, b)) in arrow_vecs.iter().enumerate() {
                if y2 == y {
                    let v = compose(cat, b, a);
                    let value = if v.is_zero() {
                        "0".to_string()
                    } else {
                        v.iter()
                            .map(|(i, c)| format!("{}·{}", format_q(c), cat.basis()[i].name))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    };
                    relations.push(format!("{}∘{} = {}", arrows[l].name, arrows[k].name, value));
                }
            }
        }
        Ok(Presentation {
            objects: cat.objects().to_vec(),
            hom_dims,
            arrow_dims,
            semisimple_dims,
            composition_ranks,
            arrows,
            relations,
            higher_arities: cat.higher_arities(),
        })
    }

    /// The Euler form `χ(X, Y) = Σ_d (−1)^d dim hom^d(X, Y)`, row `X`.
    pub fn euler_matrix(&self) -> Matrix {
        let n = self.objects.len();
        let mut m = Matrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                m.data[x][y] = self.hom_dims[x][y].iter().map(|(&d, &k)| sign(d) * Q::from_integer((k as i64).into())).sum();
            }
        }
        m
    }

    /// Characteristic polynomial of the Coxeter transformation `−C⁻¹Cᵀ` of
    /// the Euler form `C`, constant term first. It is invariant under derived
    /// equivalence; `None` if `C` is singular.
    pub fn coxeter_polynomial(&self) -> Option<Vec<Q>> {
        let c = self.euler_matrix();
        let phi = c.inverse()?.mul(&c.transpose());
        let mut neg = phi.clone();
        for row in neg.data.iter_mut() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        Some(neg.characteristic_polynomial())
    }

    fn ranks(&self) -> BTreeMap<(usize, usize, usize), usize> {
        self.composition_ranks.iter().map(|&(x, y, z, r)| ((x, y, z), r)).collect()
    }

    /// An object bijection `σ` with all invariants of `self` at `x` equal to
    /// those of `other` at `σ(x)`, if one exists.
    pub fn isomorphism(&self, other: &Presentation) -> Option<Vec<usize>> {
        let n = self.objects.len();
        if n != other.objects.len() || self.higher_arities != other.higher_arities {
            return None;
        }
        let (ra, rb) = (self.ranks(), other.ranks());
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            a: &Presentation,
            b: &Presentation,
            ra: &BTreeMap<(usize, usize, usize), usize>,
            rb: &BTreeMap<(usize, usize, usize), usize>,
            k: usize,
            sigma: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = sigma.len();
            if k == n {
                return true;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                sigma[k] = c;
                let ok = (0..=k).all(|j| {
                    let s = sigma[j];
                    a.hom_dims[k][j] == b.hom_dims[c][s]
                        && a.hom_dims[j][k] == b.hom_dims[s][c]
                        && a.arrow_dims[k][j] == b.arrow_dims[c][s]
                        && a.arrow_dims[j][k] == b.arrow_dims[s][c]
                }) && a.semisimple_dims[k] == b.semisimple_dims[c]
                    && (0..=k).all(|i| {
                        (0..=k).all(|j| {
                            [(i, j, k), (i, k, j), (k, i, j)]
                                .iter()
                                .all(|&(x, y, z)| ra.get(&(x, y, z)) == rb.get(&(sigma[x], sigma[y], sigma[z])))
                        })
                    });
                if ok {
                    used[c] = true;
                    if extend(a, b, ra, rb, k + 1, sigma, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            sigma[k] = usize::MAX;
            false
        }
        extend(self, other, &ra, &rb, 0, &mut sigma, &mut used).then_some(sigma)
    }
}

/// True if the presentations agree up to renaming objects and bases.
pub fn presentations_isomorphic(a: &AInfCategory, b: &AInfCategory) -> Result<bool> {
    Ok(Presentation::of(a)?.isomorphism(&Presentation::of(b)?).is_some())
}
