//! Polygon complexes: the combinatorial model of a dissected surface.
//!
//! A side `(arc, end)` runs along `arc` and finishes at endpoint `end`.
//! Corner `i` of a polygon sits between side `i` and side `i + 1`: it starts
//! at endpoint `(arc_i, end_i)` and finishes at `(arc_{i+1}, 1 − end_{i+1})`.
//! Boundary segments run counterclockwise along the boundary, orbifold angles
//! clockwise around their point.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub arc: usize,
    pub end: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CornerKind {
    Boundary,
    Orbifold(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub kind: CornerKind,
    pub winding: i64,
    /// Boundary stop for boundary segments, orbifold stop for angles.
    pub stop: bool,
    /// Display name used for morphisms built from this corner.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub sides: Vec<Side>,
    pub corners: Vec<Corner>,
    pub interior_orbifold: Option<usize>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn boundary_stops(&self) -> usize {
        self.corners.iter().filter(|c| c.stop && c.kind == CornerKind::Boundary).count()
    }

    pub fn orbifold_stops(&self) -> usize {
        self.corners.iter().filter(|c| c.stop && matches!(c.kind, CornerKind::Orbifold(_))).count()
    }

    pub fn winding_sum(&self) -> i64 {
        self.corners.iter().map(|c| c.winding).sum()
    }

    /// Poincaré–Hopf target: `n − 2`, or `n − 1` around an interior orbifold
    /// point.
    pub fn expected_winding(&self) -> i64 {
        let n = self.len() as i64;
        if self.interior_orbifold.is_some() {
            n - 1
        } else {
            n - 2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbifoldKind {
    Dissected,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldPoint {
    pub id: String,
    pub kind: OrbifoldKind,
}

/// `(polygon, corner index)`.
pub type CornerId = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonComplex {
    pub arcs: Vec<String>,
    pub polygons: Vec<Polygon>,
    pub orbifold_points: Vec<OrbifoldPoint>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TopologyReport {
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    pub boundary_stops: usize,
    pub entire_boundary_stops: usize,
    pub orbifold_points: usize,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareHopf {
    pub holds: bool,
    /// `Σθ − expected` per polygon.
    pub residuals: Vec<i64>,
}

impl PolygonComplex {
    pub fn arc_index(&self, name: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a == name)
    }

    pub fn corner(&self, c: CornerId) -> &Corner {
        &self.polygons[c.0].corners[c.1]
    }

    pub fn corner_ids(&self) -> impl Iterator<Item = CornerId> + '_ {
        self.polygons.iter().enumerate().flat_map(|(p, poly)| (0..poly.len()).map(move |i| (p, i)))
    }

    /// Locations of the two sides of every arc.
    pub fn side_locations(&self) -> HashMap<Side, (usize, usize)> {
        let mut out = HashMap::new();
        for (p, poly) in self.polygons.iter().enumerate() {
            for (i, s) in poly.sides.iter().enumerate() {
                out.insert(*s, (p, i));
            }
        }
        out
    }

    /// Arc and endpoint a corner starts from.
    pub fn corner_start(&self, c: CornerId) -> Side {
        self.polygons[c.0].sides[c.1]
    }

    /// Arc and endpoint a corner finishes at.
    pub fn corner_end(&self, c: CornerId) -> Side {
        let poly = &self.polygons[c.0];
        let s = poly.sides[(c.1 + 1) % poly.len()];
        Side { arc: s.arc, end: 1 - s.end }
    }

    pub fn corner_src_arc(&self, c: CornerId) -> usize {
        self.corner_start(c).arc
    }

    pub fn corner_tgt_arc(&self, c: CornerId) -> usize {
        self.corner_end(c).arc
    }

    /// The corner that follows `c` around its boundary component or
    /// orbifold point.
    pub fn successor(&self, c: CornerId, sides: &HashMap<Side, (usize, usize)>) -> CornerId {
        let end = self.corner_end(c);
        sides[&end]
    }

    /// Cycles of corners around boundary components and orbifold points.
    pub fn corner_cycles(&self) -> Vec<Vec<CornerId>> {
        let sides = self.side_locations();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.corner_ids() {
            if seen.contains(&c) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = c;
            while seen.insert(x) {
                cyc.push(x);
                x = self.successor(x, &sides);
            }
            out.push(cyc);
        }
        out
    }

    pub fn boundary_cycles(&self) -> Vec<Vec<CornerId>> {
        self.corner_cycles().into_iter().filter(|c| self.corner(c[0]).kind == CornerKind::Boundary).collect()
    }

    /// The cyclic order of angles at each dissected orbifold point.
    pub fn orbifold_cycles(&self) -> BTreeMap<usize, Vec<CornerId>> {
        self.corner_cycles()
            .into_iter()
            .filter_map(|c| match self.corner(c[0]).kind {
                CornerKind::Orbifold(o) => Some((o, c)),
                CornerKind::Boundary => None,
            })
            .collect()
    }

    pub fn validate(&self) -> Result<TopologyReport> {
        self.check_structure()?;
        let sides = self.side_locations();
        // endpoint coherence: both corners at an endpoint have the same kind
        for c in self.corner_ids() {
            let next = self.successor(c, &sides);
            let (k1, k2) = (self.corner(c).kind, self.corner(next).kind);
            if k1 != k2 {
                let arc = &self.arcs[self.corner_end(c).arc];
                return Err(match (k1, k2) {
                    (CornerKind::Orbifold(o), _) | (_, CornerKind::Orbifold(o)) => Error::IncoherentOrbifoldCycle(
                        self.orbifold_points[o].id.clone(),
                        format!("endpoint of {} mixes boundary and orbifold corners", arc),
                    ),
                    _ => unreachable!(),
                });
            }
        }
        let cycles = self.corner_cycles();
        let mut orbifold_seen: BTreeMap<usize, usize> = BTreeMap::new();
        for cyc in &cycles {
            if let CornerKind::Orbifold(o) = self.corner(cyc[0]).kind {
                *orbifold_seen.entry(o).or_insert(0) += 1;
                let stops = cyc.iter().filter(|&&c| self.corner(c).stop).count();
                if stops > 1 {
                    return Err(Error::IncoherentOrbifoldCycle(
                        self.orbifold_points[o].id.clone(),
                        format!("{} orbifold stops", stops),
                    ));
                }
            }
        }
        for (o, pt) in self.orbifold_points.iter().enumerate() {
            match pt.kind {
                OrbifoldKind::Dissected => {
                    let n = orbifold_seen.get(&o).copied().unwrap_or(0);
                    if n != 1 {
                        return Err(Error::IncoherentOrbifoldCycle(pt.id.clone(), format!("{} angle cycles", n)));
                    }
                }
                OrbifoldKind::Interior => {
                    let n = self.polygons.iter().filter(|p| p.interior_orbifold == Some(o)).count();
                    if n != 1 {
                        return Err(Error::Malformed(format!("interior orbifold point {} lies in {} polygons", pt.id, n)));
                    }
                }
            }
        }
        let boundary: Vec<&Vec<CornerId>> =
            cycles.iter().filter(|c| self.corner(c[0]).kind == CornerKind::Boundary).collect();
        let stops: usize = self.corner_ids().filter(|&c| self.corner(c).stop && self.corner(c).kind == CornerKind::Boundary).count();
        if stops == 0 {
            return Err(Error::NoBoundaryStop);
        }
        let entire = boundary.iter().filter(|cyc| cyc.iter().all(|&c| self.corner(c).stop)).count();
        let dissected = self.orbifold_points.iter().filter(|p| p.kind == OrbifoldKind::Dissected).count() as i64;
        let orbifold_endpoints: i64 = cycles
            .iter()
            .filter(|c| matches!(self.corner(c[0]).kind, CornerKind::Orbifold(_)))
            .map(|c| c.len() as i64)
            .sum();
        let boundary_corners: i64 = boundary.iter().map(|c| c.len() as i64).sum();
        let v = 2 * self.arcs.len() as i64 - orbifold_endpoints + dissected;
        let e = self.arcs.len() as i64 + boundary_corners;
        let f = self.polygons.len() as i64;
        Ok(TopologyReport {
            euler_characteristic: v - e + f,
            boundary_components: boundary.len(),
            boundary_stops: stops,
            entire_boundary_stops: entire,
            orbifold_points: self.orbifold_points.len(),
            connected: self.connected(),
        })
    }

    fn check_structure(&self) -> Result<()> {
        let mut uses: Vec<Vec<u8>> = vec![Vec::new(); self.arcs.len()];
        for poly in &self.polygons {
            if poly.sides.is_empty() || poly.sides.len() != poly.corners.len() {
                return Err(Error::Malformed("polygon sides and corners must pair up".into()));
            }
            for s in &poly.sides {
                let u = uses.get_mut(s.arc).ok_or_else(|| Error::Malformed(format!("side refers to arc #{}", s.arc)))?;
                if s.end > 1 {
                    return Err(Error::Malformed(format!("bad end {} on {}", s.end, self.arcs[s.arc])));
                }
                u.push(s.end);
            }
            for c in &poly.corners {
                if let CornerKind::Orbifold(o) = c.kind {
                    match self.orbifold_points.get(o) {
                        Some(p) if p.kind == OrbifoldKind::Dissected => {}
                        _ => return Err(Error::Malformed(format!("corner refers to orbifold point #{}", o))),
                    }
                }
            }
            if let Some(o) = poly.interior_orbifold {
                match self.orbifold_points.get(o) {
                    Some(p) if p.kind == OrbifoldKind::Interior => {}
                    _ => return Err(Error::Malformed(format!("polygon refers to interior orbifold point #{}", o))),
                }
                if poly.corners.iter().any(|c| c.stop || c.kind != CornerKind::Boundary) {
                    return Err(Error::Malformed("orbifold polygons carry only stop-free boundary corners".into()));
                }
            }
        }
        for (a, u) in uses.iter().enumerate() {
            match u.len() {
                0 | 1 => return Err(Error::ArcUsedOnce(self.arcs[a].clone())),
                2 if u[0] != u[1] => {}
                2 => return Err(Error::Malformed(format!("both sides of {} finish at the same end", self.arcs[a]))),
                n => return Err(Error::ArcUsedThrice(self.arcs[a].clone(), n)),
            }
        }
        Ok(())
    }

    fn connected(&self) -> bool {
        if self.polygons.is_empty() {
            return true;
        }
        let mut of_arc: Vec<Vec<usize>> = vec![Vec::new(); self.arcs.len()];
        for (p, poly) in self.polygons.iter().enumerate() {
            for s in &poly.sides {
                of_arc[s.arc].push(p);
            }
        }
        let mut seen = vec![false; self.polygons.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for s in &self.polygons[p].sides {
                for &q in &of_arc[s.arc] {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn check_poincare_hopf(&self) -> PoincareHopf {
        let residuals: Vec<i64> = self.polygons.iter().map(|p| p.winding_sum() - p.expected_winding()).collect();
        PoincareHopf { holds: residuals.iter().all(|&r| r == 0), residuals }
    }

    /// Boundary components with neither stops nor full stop coverage would
    /// give infinite-dimensional hom spaces.
    pub fn stop_free_boundary_components(&self) -> usize {
        self.boundary_cycles().iter().filter(|cyc| cyc.iter().all(|&c| !self.corner(c).stop)).count()
    }

    pub fn corner_label(&self, c: CornerId) -> String {
        match &self.corner(c).label {
            Some(l) => l.clone(),
            None => format!("c{}_{}", c.0, c.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bseg(w: i64, stop: bool) -> Corner {
        Corner { kind: CornerKind::Boundary, winding: w, stop, label: None }
    }

    /// Two 1-gons glued along one arc: a disk with two stops.
    fn two_monogons() -> PolygonComplex {
        PolygonComplex {
            arcs: vec!["g".into()],
            polygons: vec![
                Polygon { sides: vec![Side { arc: 0, end: 0 }], corners: vec![bseg(-1, true)], interior_orbifold: None },
                Polygon { sides: vec![Side { arc: 0, end: 1 }], corners: vec![bseg(-1, true)], interior_orbifold: None },
            ],
            orbifold_points: vec![],
        }
    }

    #[test]
    fn smallest_disk() {
        let c = two_monogons();
        let t = c.validate().unwrap();
        assert_eq!(t.euler_characteristic, 1);
        assert_eq!(t.boundary_components, 1);
        assert_eq!(t.boundary_stops, 2);
        assert!(t.connected);
        assert!(c.check_poincare_hopf().holds);
    }

    #[test]
    fn arc_used_once() {
        let mut c = two_monogons();
        c.arcs.push("h".into());
        c.polygons[0].sides.push(Side { arc: 1, end: 0 });
        c.polygons[0].corners.push(bseg(0, false));
        assert!(matches!(c.validate(), Err(Error::ArcUsedOnce(_))));
    }

    #[test]
    fn poincare_hopf_perturbation_fails() {
        let mut c = two_monogons();
        c.polygons[1].corners[0].winding += 1;
        let ph = c.check_poincare_hopf();
        assert!(!ph.holds);
        assert_eq!(ph.residuals, vec![0, 1]);
    }

    #[test]
    fn no_stop_rejected() {
        let mut c = two_monogons();
        c.polygons[0].corners[0].stop = false;
        c.polygons[1].corners[0].stop = false;
        assert_eq!(c.validate(), Err(Error::NoBoundaryStop));
    }
}
