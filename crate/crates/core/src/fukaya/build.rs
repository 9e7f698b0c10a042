//! The A∞ category of a dissection: objects are arcs, morphisms are paths.

use serde::Serialize;

use crate::ainf::category::AInfCategory;
use crate::error::{Error, Result};
use crate::fukaya::paths::{PathKind, PathSet};
use crate::scalar::sign;
use crate::surface::classify::{classify_dissection, Classification};
use crate::surface::complex::{CornerId, PolygonComplex};
use crate::surface::disk::{disk_sequences, DiskKind, DiskSequence};
use crate::vector::Vector;

/// Regions glued from more polygons than this are not searched.
pub const MAX_REGION: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct EntryOrigin {
    pub inputs: Vec<String>,
    pub output: String,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct FukayaCategory {
    pub category: AInfCategory,
    pub classification: Classification,
    pub paths: PathSet,
    pub disks: Vec<DiskSequence>,
    /// Basis index of each path.
    pub path_index: Vec<usize>,
    pub origins: Vec<EntryOrigin>,
}

impl FukayaCategory {
    pub fn path_element(&self, corners: &[CornerId]) -> Option<usize> {
        self.paths.find(corners).map(|i| self.path_index[i])
    }
}

pub fn build_category(c: &PolygonComplex) -> Result<AInfCategory> {
    Ok(build_fukaya(c)?.category)
}

pub fn build_fukaya(c: &PolygonComplex) -> Result<FukayaCategory> {
    let classification = classify_dissection(c);
    if !classification.class.is_buildable() {
        return Err(Error::NotAdmissible(classification.diagnostics.join("; ")));
    }
    let paths = PathSet::new(c)?;
    let mut cat = AInfCategory::new(c.arcs.clone());
    for (x, a) in c.arcs.iter().enumerate() {
        cat.add_unit(x, &format!("id_{}", a))?;
    }
    let mut path_index = Vec::new();
    for p in &paths.paths {
        path_index.push(cat.add_morphism(&p.name, p.src, p.tgt, p.degree)?);
    }
    let mut b = Builder { cat, paths: &paths, path_index: &path_index, origins: Vec::new() };
    b.compositions()?;
    let disks = disk_sequences(c, MAX_REGION);
    for d in &disks {
        b.disk(c, d)?;
    }
    let Builder { cat, origins, .. } = b;
    Ok(FukayaCategory { category: cat, classification, paths, disks, path_index, origins })
}

struct Builder<'a> {
    cat: AInfCategory,
    paths: &'a PathSet,
    path_index: &'a [usize],
    origins: Vec<EntryOrigin>,
}

impl Builder<'_> {
    fn add(&mut self, inputs: Vec<usize>, value: Vector, source: &str) -> Result<()> {
        self.origins.push(EntryOrigin {
            inputs: inputs.iter().map(|&i| self.cat.name(i).to_string()).collect(),
            output: self.cat.vector_name(&value),
            source: source.to_string(),
        });
        self.cat.add_entry(inputs, value)
    }

    fn deg(&self, path: usize) -> i64 {
        self.paths.paths[path].degree
    }

    /// μ̄₂(q, p) = (−1)^{|p|} qp.
    fn compositions(&mut self) -> Result<()> {
        for p in 0..self.paths.paths.len() {
            for q in self.paths.successors(p) {
                if let Some(qp) = self.paths.concat(p, q) {
                    let v = Vector::term(self.path_index[qp], sign(self.deg(p)));
                    self.add(vec![self.path_index[q], self.path_index[p]], v, "composition")?;
                }
            }
        }
        Ok(())
    }

    fn corner_paths(&self, d: &DiskSequence, count: usize) -> Result<Vec<usize>> {
        d.merged.corners[..count]
            .iter()
            .map(|cs| self.paths.find(cs).ok_or_else(|| Error::Malformed(format!("disk corner {:?} is not a path", cs))))
            .collect()
    }

    fn disk(&mut self, c: &PolygonComplex, d: &DiskSequence) -> Result<()> {
        let n = d.merged.len();
        match d.kind {
            DiskKind::Smooth | DiskKind::OrbifoldPolygon => {
                let ps = self.corner_paths(d, n)?;
                let laps = if d.kind == DiskKind::Smooth { 1 } else { 2 };
                let tag = if d.kind == DiskKind::Smooth { "smooth disk" } else { "orbifold polygon" };
                for t in 0..n {
                    // inputs applied in the order p_t, p_{t+1}, …, p_{t−1}
                    let order: Vec<usize> = (0..laps * n).map(|k| ps[(t + k) % n]).collect();
                    let key: Vec<usize> = order.iter().rev().map(|&p| self.path_index[p]).collect();
                    let x = d.merged.sides[t].arc;
                    let id = self.cat.unit_index(x).unwrap();
                    self.add(key.clone(), Vector::basis(id), tag)?;
                    self.extensions(&order, tag)?;
                }
            }
            DiskKind::Orbifold => {
                let ps = self.corner_paths(d, n - 1)?;
                let q = self.paths.find(&d.q).ok_or_else(|| Error::Malformed("orbifold output is not a path".into()))?;
                let q_last_deg: i64 = d.q_last.iter().map(|&x| c.corner(x).winding).sum();
                let key: Vec<usize> = ps.iter().rev().map(|&p| self.path_index[p]).collect();
                self.add(key, Vector::term(self.path_index[q], sign(q_last_deg)), "orbifold disk")?;
            }
        }
        Ok(())
    }

    /// Entries forced by linearity of an identity-valued product with
    /// respect to composition in the first and last slot.
    fn extensions(&mut self, order: &[usize], tag: &str) -> Result<()> {
        let first = order[0];
        let last = *order.last().unwrap();
        let rev = |v: &[usize], idx: &[usize]| -> Vec<usize> { v.iter().rev().map(|&p| idx[p]).collect() };
        // last input a followed by b: output b
        for b in self.paths.successors(last) {
            if let Some(ba) = self.paths.concat(last, b) {
                let mut o = order.to_vec();
                *o.last_mut().unwrap() = ba;
                let key = rev(&o, self.path_index);
                self.add(key, Vector::basis(self.path_index[b]), &format!("{} (extended)", tag))?;
            }
        }
        // first input preceded by b: output (−1)^{|b|} b
        for b in self.paths.predecessors(first) {
            if let Some(ab) = self.paths.concat(b, first) {
                let mut o = order.to_vec();
                o[0] = ab;
                let key = rev(&o, self.path_index);
                let v = Vector::term(self.path_index[b], sign(self.deg(b)));
                self.add(key, v, &format!("{} (extended)", tag))?;
            }
        }
        Ok(())
    }
}

/// Paths of the given kind, by name.
pub fn path_names(f: &FukayaCategory, kind: PathKind) -> Vec<String> {
    f.paths.paths.iter().filter(|p| p.kind == kind).map(|p| p.name.clone()).collect()
}
