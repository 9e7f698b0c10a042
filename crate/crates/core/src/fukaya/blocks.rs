//! Standalone building blocks: type A and Ã quivers with full quadratic
//! relations, with or without a higher product.

use crate::ainf::category::AInfCategory;
use crate::error::{Error, Result};
use crate::fukaya::build::build_category;
use crate::quiver::{make_graded_quiver, path_algebra_category, ArrowJson, MonomialAlgebra};
use crate::surface::layout::{CornerKey, DiskLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockType {
    /// Linear quiver with `n` vertices.
    A(usize),
    /// Cyclic quiver with `n + 1` vertices, no higher products.
    Atilde(usize),
    /// Cyclic quiver with `n + 1` vertices and μ°ₙ₊₁.
    AtildeSmooth(usize),
    /// Cyclic quiver with `n + 1` vertices and μ⊗₂ₙ₊₂.
    AtildeOrb(usize),
    SkewGentlePoint,
}

impl BlockType {
    pub fn arrows(self) -> usize {
        match self {
            BlockType::A(n) => n.saturating_sub(1),
            BlockType::Atilde(n) | BlockType::AtildeSmooth(n) | BlockType::AtildeOrb(n) => n + 1,
            BlockType::SkewGentlePoint => 1,
        }
    }
}

/// Arrow `p{i}` has degree `degrees[i − 1]`. Cyclic blocks have arrows
/// `p{i}: v{i} → v{i+1}` with indices mod the vertex count.
pub fn building_block(t: BlockType, degrees: &[i64]) -> Result<AInfCategory> {
    let t = if t == BlockType::SkewGentlePoint { BlockType::AtildeOrb(0) } else { t };
    if degrees.len() != t.arrows() {
        return Err(Error::BadParameter(format!("{:?} has {} arrows, got {} degrees", t, t.arrows(), degrees.len())));
    }
    let sum: i64 = degrees.iter().sum();
    match t {
        BlockType::A(n) => quiver_block(n, degrees, false),
        BlockType::Atilde(n) => quiver_block(n + 1, degrees, true),
        BlockType::AtildeSmooth(n) => {
            let k = n as i64 + 1;
            if sum != k - 2 {
                return Err(Error::DegreeSumViolation { expected: k - 2, got: sum });
            }
            if n == 0 {
                return Err(Error::BadParameter("a smooth 1-gon has no higher product".into()));
            }
            polygon_block(degrees, false)
        }
        BlockType::AtildeOrb(n) => {
            let k = n as i64 + 1;
            if sum != k - 1 {
                return Err(Error::DegreeSumViolation { expected: k - 1, got: sum });
            }
            polygon_block(degrees, true)
        }
        BlockType::SkewGentlePoint => unreachable!(),
    }
}

fn quiver_block(n: usize, degrees: &[i64], cyclic: bool) -> Result<AInfCategory> {
    let v = |i: usize| format!("v{}", (i - 1) % n + 1);
    let vertices: Vec<String> = (1..=n).map(v).collect();
    let arrows: Vec<ArrowJson> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| ArrowJson { name: format!("p{}", i + 1), src: v(i + 1), tgt: v(i + 2), deg: d })
        .collect();
    let m = arrows.len();
    let mut relations: Vec<Vec<String>> = (1..m).map(|i| vec![format!("p{}", i + 1), format!("p{}", i)]).collect();
    if cyclic {
        relations.push(vec!["p1".into(), format!("p{}", m)]);
    }
    let q = make_graded_quiver(vertices, arrows, relations, vec![])?;
    path_algebra_category(&MonomialAlgebra::finite(q)?)
}

/// A stop-free polygon whose sides each cut off one stop.
fn polygon_block(degrees: &[i64], orbifold: bool) -> Result<AInfCategory> {
    let n = degrees.len();
    let step = 360.0 / n as f64;
    let w = step / 3.0;
    let mut l = DiskLayout::new();
    for (i, &d) in degrees.iter().enumerate() {
        let c = step * i as f64;
        let seg = CornerKey::Segment(c + w);
        l = l.chord(&format!("v{}", i + 1), c - w, c + w).stops(&[c]).winding(seg, d).label(seg, &format!("p{}", i + 1));
    }
    if orbifold {
        l = l.interior_orbifold(step * (n as f64 - 1.0) + step / 2.0);
    }
    build_category(&l.build()?.complex)
}
