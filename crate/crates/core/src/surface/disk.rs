//! Immersed disks bounded by arcs and boundary or orbifold paths.
//!
//! A disk sequence is realized as a union of polygons glued along a spanning
//! tree of shared arcs. Its corners are concatenations of polygon corners.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::surface::complex::{CornerId, CornerKind, PolygonComplex, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiskKind {
    /// No stops, no orbifold point inside: μ°ₙ.
    Smooth,
    /// One merged corner passes the orbifold stop: μ×ₙ₋₁.
    Orbifold,
    /// Contains an orbifold polygon: μ⊗₂ₘ.
    OrbifoldPolygon,
}

/// A merged polygon. Corner `i` runs from side `i` to side `i + 1`; each is
/// a list of polygon corners in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergedPolygon {
    pub sides: Vec<Side>,
    pub corners: Vec<Vec<CornerId>>,
}

impl MergedPolygon {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn rotate(&mut self, k: usize) {
        self.sides.rotate_left(k);
        self.corners.rotate_left(k);
    }

    fn from_polygon(c: &PolygonComplex, p: usize) -> Self {
        let poly = &c.polygons[p];
        MergedPolygon { sides: poly.sides.clone(), corners: (0..poly.len()).map(|i| vec![(p, i)]).collect() }
    }

    /// Glue `other` along the arc whose sides are `self.sides[k]` and
    /// `other.sides[l]`.
    fn glue(&self, k: usize, other: &MergedPolygon, l: usize) -> Option<MergedPolygon> {
        let mut m = self.clone();
        m.rotate(k);
        let mut q = other.clone();
        q.rotate(l);
        let c0 = m.corners[0].clone();
        let q0 = q.corners[0].clone();
        let mut sides = Vec::new();
        let mut corners: Vec<Vec<CornerId>> = Vec::new();
        let qrest = q.len() > 1;
        let mrest = m.len() > 1;
        if !qrest && !mrest {
            return None;
        }
        if qrest {
            for i in 1..q.len() {
                sides.push(q.sides[i]);
                corners.push(q.corners[i].clone());
            }
            if mrest {
                corners.last_mut().unwrap().extend(c0.iter().copied());
            } else {
                let last = corners.last_mut().unwrap();
                last.extend(c0.iter().copied());
                last.extend(q0.iter().copied());
            }
        }
        if mrest {
            for i in 1..m.len() {
                sides.push(m.sides[i]);
                corners.push(m.corners[i].clone());
            }
            let last = corners.last_mut().unwrap();
            last.extend(q0.iter().copied());
            if !qrest {
                last.extend(c0.iter().copied());
            }
        }
        Some(MergedPolygon { sides, corners })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiskSequence {
    pub kind: DiskKind,
    pub polygons: Vec<usize>,
    pub glued_arcs: Vec<usize>,
    /// For `Orbifold` the merged stop corner is last.
    pub merged: MergedPolygon,
    /// For `Orbifold`: the complementary orbifold path q and the parts q′
    /// (after the stop) and q″ (before it) of the stop corner.
    pub q: Vec<CornerId>,
    pub q_first: Vec<CornerId>,
    pub q_last: Vec<CornerId>,
}

/// All disk sequences, up to `max_polygons` polygons each.
pub fn disk_sequences(c: &PolygonComplex, max_polygons: usize) -> Vec<DiskSequence> {
    let n = c.polygons.len();
    let eligible: Vec<bool> = c.polygons.iter().map(|p| p.boundary_stops() == 0).collect();
    let orbifold_stop_poly: Vec<bool> = c.polygons.iter().map(|p| p.orbifold_stops() > 0).collect();
    let orbifold_poly: Vec<bool> = c.polygons.iter().map(|p| p.interior_orbifold.is_some()).collect();
    // adjacency: arc → (polygon, polygon)
    let sides = c.side_locations();
    let mut arc_polys: Vec<(usize, usize)> = Vec::new();
    for a in 0..c.arcs.len() {
        let p0 = sides[&Side { arc: a, end: 0 }].0;
        let p1 = sides[&Side { arc: a, end: 1 }].0;
        arc_polys.push((p0, p1));
    }
    let mut regions: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..n).filter(|&p| eligible[p]).map(|p| vec![p]).collect();
    while let Some(r) = frontier.pop() {
        if !regions.insert(r.clone()) {
            continue;
        }
        if r.len() >= max_polygons {
            continue;
        }
        for &(p0, p1) in &arc_polys {
            for (a, b) in [(p0, p1), (p1, p0)] {
                if r.contains(&a) && !r.contains(&b) && eligible[b] {
                    let mut s = r.clone();
                    s.push(b);
                    s.sort_unstable();
                    let stops = s.iter().filter(|&&x| orbifold_stop_poly[x]).count();
                    let orbs = s.iter().filter(|&&x| orbifold_poly[x]).count();
                    if stops + orbs <= 1 && !regions.contains(&s) {
                        frontier.push(s);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for r in regions {
        let internal: Vec<usize> = (0..c.arcs.len())
            .filter(|&a| {
                let (p0, p1) = arc_polys[a];
                p0 != p1 && r.contains(&p0) && r.contains(&p1)
            })
            .collect();
        for tree in spanning_trees(&r, &internal, &arc_polys) {
            if let Some(m) = merge(c, &r, &tree) {
                if let Some(d) = classify_region(c, r.clone(), tree, m) {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn spanning_trees(r: &[usize], internal: &[usize], arc_polys: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let need = r.len() - 1;
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        start: usize,
        need: usize,
        r: &[usize],
        internal: &[usize],
        arc_polys: &[(usize, usize)],
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == need {
            // union-find on r
            let mut parent: HashMap<usize, usize> = r.iter().map(|&p| (p, p)).collect();
            fn find(parent: &mut HashMap<usize, usize>, x: usize) -> usize {
                let p = parent[&x];
                if p == x {
                    x
                } else {
                    let root = find(parent, p);
                    parent.insert(x, root);
                    root
                }
            }
            for &a in pick.iter() {
                let (x, y) = arc_polys[a];
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx == ry {
                    return;
                }
                parent.insert(rx, ry);
            }
            out.push(pick.clone());
            return;
        }
        for i in start..internal.len() {
            pick.push(internal[i]);
            rec(i + 1, need, r, internal, arc_polys, pick, out);
            pick.pop();
        }
    }
    rec(0, need, r, internal, arc_polys, &mut pick, &mut out);
    out
}

fn merge(c: &PolygonComplex, r: &[usize], tree: &[usize]) -> Option<MergedPolygon> {
    let sides = c.side_locations();
    let mut merged = MergedPolygon::from_polygon(c, r[0]);
    let mut inside: BTreeSet<usize> = [r[0]].into_iter().collect();
    let mut remaining: Vec<usize> = tree.to_vec();
    while !remaining.is_empty() {
        let pos = remaining.iter().position(|&a| {
            let p0 = sides[&Side { arc: a, end: 0 }].0;
            let p1 = sides[&Side { arc: a, end: 1 }].0;
            inside.contains(&p0) != inside.contains(&p1)
        })?;
        let a = remaining.remove(pos);
        let k = merged.sides.iter().position(|s| s.arc == a)?;
        let s = merged.sides[k];
        let (qp, l) = sides[&Side { arc: a, end: 1 - s.end }];
        let other = MergedPolygon::from_polygon(c, qp);
        merged = merged.glue(k, &other, l)?;
        inside.insert(qp);
    }
    Some(merged)
}

fn classify_region(c: &PolygonComplex, r: Vec<usize>, tree: Vec<usize>, mut m: MergedPolygon) -> Option<DiskSequence> {
    let has_orbifold_polygon = r.iter().any(|&p| c.polygons[p].interior_orbifold.is_some());
    let stop_corner = m.corners.iter().position(|cs| cs.iter().any(|&x| c.corner(x).stop));
    if has_orbifold_polygon {
        if stop_corner.is_some() {
            return None;
        }
        return Some(DiskSequence {
            kind: DiskKind::OrbifoldPolygon,
            polygons: r,
            glued_arcs: tree,
            merged: m,
            q: vec![],
            q_first: vec![],
            q_last: vec![],
        });
    }
    let Some(k) = stop_corner else {
        if m.len() < 2 {
            return None;
        }
        return Some(DiskSequence {
            kind: DiskKind::Smooth,
            polygons: r,
            glued_arcs: tree,
            merged: m,
            q: vec![],
            q_first: vec![],
            q_last: vec![],
        });
    };
    // orbifold: exactly one orbifold corner, the stop corner
    let orbifold_corners = m.corners.iter().filter(|cs| matches!(c.corner(cs[0]).kind, CornerKind::Orbifold(_))).count();
    if orbifold_corners != 1 {
        return None;
    }
    let cstar = &m.corners[k];
    let CornerKind::Orbifold(o) = c.corner(cstar[0]).kind else {
        return None;
    };
    let j = cstar.iter().position(|&x| c.corner(x).stop)?;
    let q_last: Vec<CornerId> = cstar[..j].to_vec();
    let q_first: Vec<CornerId> = cstar[j + 1..].to_vec();
    let cyc = &c.orbifold_cycles()[&o];
    let s = cyc.iter().position(|&x| c.corner(x).stop)?;
    let rpath: Vec<CornerId> = (1..cyc.len()).map(|i| cyc[(s + i) % cyc.len()]).collect();
    if q_first.len() + q_last.len() >= rpath.len() {
        return None;
    }
    let q = rpath[q_first.len()..rpath.len() - q_last.len()].to_vec();
    m.rotate((k + 1) % m.len());
    Some(DiskSequence { kind: DiskKind::Orbifold, polygons: r, glued_arcs: tree, merged: m, q, q_first, q_last })
}
