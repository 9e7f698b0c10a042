//! Boundary paths and orbifold paths of a dissection.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::complex::{CornerId, CornerKind, PolygonComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathKind {
    Boundary,
    Orbifold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathMorphism {
    pub kind: PathKind,
    /// Corners in the order they are traversed.
    pub corners: Vec<CornerId>,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub name: String,
}

/// Every stop-free run of consecutive corners, indexed by its corner list.
#[derive(Clone, Debug, Default)]
pub struct PathSet {
    pub paths: Vec<PathMorphism>,
    index: HashMap<Vec<CornerId>, usize>,
    /// Corners that may follow / precede each corner inside a path.
    next: HashMap<CornerId, CornerId>,
    prev: HashMap<CornerId, CornerId>,
}

impl PathSet {
    pub fn new(c: &PolygonComplex) -> Result<PathSet> {
        let mut out = PathSet::default();
        for cycle in c.corner_cycles() {
            let stops: Vec<usize> = (0..cycle.len()).filter(|&i| c.corner(cycle[i]).stop).collect();
            if stops.is_empty() {
                return Err(Error::Malformed(format!(
                    "corner cycle through {} carries no stop, hom spaces would be infinite",
                    c.corner_label(cycle[0])
                )));
            }
            let n = cycle.len();
            let kind = match c.corner(cycle[0]).kind {
                CornerKind::Boundary => PathKind::Boundary,
                CornerKind::Orbifold(_) => PathKind::Orbifold,
            };
            for &s in &stops {
                // maximal run after the stop at s
                let mut run = Vec::new();
                let mut i = (s + 1) % n;
                while !c.corner(cycle[i]).stop {
                    run.push(cycle[i]);
                    i = (i + 1) % n;
                }
                for w in run.windows(2) {
                    out.next.insert(w[0], w[1]);
                    out.prev.insert(w[1], w[0]);
                }
                for a in 0..run.len() {
                    for b in a + 1..=run.len() {
                        out.push(c, kind, run[a..b].to_vec())?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn push(&mut self, c: &PolygonComplex, kind: PathKind, corners: Vec<CornerId>) -> Result<()> {
        let degree = corners.iter().map(|&x| c.corner(x).winding).sum();
        let name = corners.iter().rev().map(|&x| c.corner_label(x)).collect::<Vec<_>>().join("*");
        let p = PathMorphism {
            kind,
            src: c.corner_src_arc(corners[0]),
            tgt: c.corner_tgt_arc(*corners.last().unwrap()),
            degree,
            name,
            corners: corners.clone(),
        };
        if self.index.contains_key(&corners) {
            return Err(Error::DuplicateName(p.name));
        }
        self.index.insert(corners, self.paths.len());
        self.paths.push(p);
        Ok(())
    }

    pub fn find(&self, corners: &[CornerId]) -> Option<usize> {
        self.index.get(corners).copied()
    }

    /// The path `b` followed by `a` (b traversed first), if it exists.
    pub fn concat(&self, first: usize, then: usize) -> Option<usize> {
        let (p, q) = (&self.paths[first], &self.paths[then]);
        if self.next.get(p.corners.last()?) != Some(&q.corners[0]) {
            return None;
        }
        let mut cs = p.corners.clone();
        cs.extend_from_slice(&q.corners);
        self.find(&cs)
    }

    /// Paths that can be traversed directly after path `i`.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        let Some(&nx) = self.next.get(self.paths[i].corners.last().unwrap()) else {
            return vec![];
        };
        (0..self.paths.len()).filter(|&j| self.paths[j].corners[0] == nx).collect()
    }

    /// Paths that can be traversed directly before path `i`.
    pub fn predecessors(&self, i: usize) -> Vec<usize> {
        let Some(&pv) = self.prev.get(&self.paths[i].corners[0]) else {
            return vec![];
        };
        (0..self.paths.len()).filter(|&j| *self.paths[j].corners.last().unwrap() == pv).collect()
    }
}
