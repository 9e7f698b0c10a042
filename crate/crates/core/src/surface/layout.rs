//! Disk pictures: chords and radial arcs on a round disk, turned into
//! polygon complexes by tracing faces.
//!
//! Angles are in degrees. A chord's endpoint 0 sits at its first angle; a
//! radial's endpoint 0 is on the boundary and endpoint 1 at the center.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::surface::complex::{Corner, CornerKind, OrbifoldKind, OrbifoldPoint, Polygon, PolygonComplex, Side};

const EPS: f64 = 1e-9;

fn norm(a: f64) -> f64 {
    let r = a.rem_euclid(360.0);
    if (r - 360.0).abs() < EPS {
        0.0
    } else {
        r
    }
}

/// True if `x` lies strictly inside the counterclockwise sweep from `a` to `b`.
fn strictly_between(a: f64, b: f64, x: f64) -> bool {
    let span = norm(b - a);
    let off = norm(x - a);
    let span = if span < EPS { 360.0 } else { span };
    off > EPS && off < span - EPS
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CornerKey {
    /// Boundary segment starting at the endpoint at this angle.
    Segment(f64),
    /// Orbifold angle starting at the radial with this angle.
    Angle(f64),
}

impl CornerKey {
    fn matches(&self, other: &CornerKey) -> bool {
        match (self, other) {
            (CornerKey::Segment(a), CornerKey::Segment(b)) | (CornerKey::Angle(a), CornerKey::Angle(b)) => {
                norm(a - b).min(norm(b - a)) < 1e-6
            }
            _ => false,
        }
    }

    pub fn rotated(&self, by: f64) -> CornerKey {
        match self {
            CornerKey::Segment(a) => CornerKey::Segment(norm(a + by)),
            CornerKey::Angle(a) => CornerKey::Angle(norm(a + by)),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DiskLayout {
    chords: Vec<(String, f64, f64)>,
    radials: Vec<(String, f64)>,
    stops: Vec<f64>,
    orbifold_stop: Option<f64>,
    interior_orbifold: Option<f64>,
    windings: Vec<(CornerKey, i64)>,
    labels: Vec<(CornerKey, String)>,
}

/// A traced complex together with the picture position of every corner.
#[derive(Clone, Debug)]
pub struct LaidOut {
    pub complex: PolygonComplex,
    pub keys: HashMap<(usize, usize), CornerKey>,
}

impl LaidOut {
    pub fn find(&self, key: CornerKey) -> Option<(usize, usize)> {
        self.keys.iter().find(|(_, k)| k.matches(&key)).map(|(c, _)| *c)
    }
}

impl DiskLayout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chord(mut self, name: &str, a0: f64, a1: f64) -> Self {
        self.chords.push((name.into(), norm(a0), norm(a1)));
        self
    }

    pub fn radial(mut self, name: &str, angle: f64) -> Self {
        self.radials.push((name.into(), norm(angle)));
        self
    }

    pub fn stops(mut self, angles: &[f64]) -> Self {
        self.stops.extend(angles.iter().map(|&a| norm(a)));
        self
    }

    pub fn orbifold_stop(mut self, angle: f64) -> Self {
        self.orbifold_stop = Some(norm(angle));
        self
    }

    /// Marks the face containing the boundary point at `angle` as an
    /// orbifold polygon.
    pub fn interior_orbifold(mut self, angle: f64) -> Self {
        self.interior_orbifold = Some(norm(angle));
        self
    }

    pub fn winding(mut self, key: CornerKey, w: i64) -> Self {
        self.windings.push((key, w));
        self
    }

    pub fn label(mut self, key: CornerKey, name: &str) -> Self {
        self.labels.push((key, name.into()));
        self
    }

    pub fn build(&self) -> Result<LaidOut> {
        // boundary endpoints sorted by angle
        let mut arcs: Vec<String> = Vec::new();
        let mut points: Vec<(f64, Side)> = Vec::new();
        for (name, a0, a1) in &self.chords {
            let i = arcs.len();
            arcs.push(name.clone());
            points.push((*a0, Side { arc: i, end: 0 }));
            points.push((*a1, Side { arc: i, end: 1 }));
        }
        let mut radial_arcs: Vec<(f64, usize)> = Vec::new();
        for (name, a) in &self.radials {
            let i = arcs.len();
            arcs.push(name.clone());
            points.push((*a, Side { arc: i, end: 0 }));
            radial_arcs.push((*a, i));
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in points.windows(2) {
            if (w[1].0 - w[0].0).abs() < EPS {
                return Err(Error::BadParameter(format!("two endpoints at angle {}", w[0].0)));
            }
        }
        radial_arcs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let has_center = !radial_arcs.is_empty();
        let pos_of: HashMap<Side, usize> = points.iter().enumerate().map(|(k, (_, s))| (*s, k)).collect();

        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum C {
            Seg(usize),
            Ang(usize),
        }
        // corner → (finishing endpoint)
        let finish = |c: C| -> Side {
            match c {
                C::Seg(k) => points[(k + 1) % points.len()].1,
                C::Ang(r) => {
                    // next radial clockwise
                    let m = radial_arcs.len();
                    let next = (r + m - 1) % m;
                    Side { arc: radial_arcs[next].1, end: 1 }
                }
            }
        };
        let start_of = |s: Side| -> C {
            if s.end == 1 && radial_arcs.iter().any(|r| r.1 == s.arc) {
                C::Ang(radial_arcs.iter().position(|r| r.1 == s.arc).unwrap())
            } else {
                C::Seg(pos_of[&s])
            }
        };
        let mut all: Vec<C> = (0..points.len()).map(C::Seg).collect();
        if has_center {
            all.extend((0..radial_arcs.len()).map(C::Ang));
        }
        let mut seen: HashMap<C, ()> = HashMap::new();
        let mut faces: Vec<(Vec<Side>, Vec<C>)> = Vec::new();
        for &c0 in &all {
            if seen.contains_key(&c0) {
                continue;
            }
            let mut sides = Vec::new();
            let mut corners = Vec::new();
            let mut c = c0;
            loop {
                seen.insert(c, ());
                let e = finish(c);
                // traverse the arc away from endpoint e
                let side = Side { arc: e.arc, end: 1 - e.end };
                sides.push(side);
                let next = start_of(side);
                corners.push(next);
                c = next;
                if c == c0 {
                    break;
                }
            }
            faces.push((sides, corners));
        }

        let mut orbifold_points = Vec::new();
        let center = if has_center {
            orbifold_points.push(OrbifoldPoint { id: "x".into(), kind: OrbifoldKind::Dissected });
            Some(0)
        } else {
            None
        };
        let mut interior = None;
        if self.interior_orbifold.is_some() {
            if has_center {
                return Err(Error::BadParameter("orbifold point is both dissected and interior".into()));
            }
            orbifold_points.push(OrbifoldPoint { id: "x".into(), kind: OrbifoldKind::Interior });
            interior = Some(orbifold_points.len() - 1);
        }

        let key_of = |c: C| -> CornerKey {
            match c {
                C::Seg(k) => CornerKey::Segment(points[k].0),
                C::Ang(r) => CornerKey::Angle(radial_arcs[r].0),
            }
        };
        let mut polygons = Vec::new();
        let mut keys = HashMap::new();
        for (f, (sides, corners)) in faces.iter().enumerate() {
            let mut out_corners = Vec::new();
            let mut contains_interior = false;
            for (i, &c) in corners.iter().enumerate() {
                let key = key_of(c);
                keys.insert((f, i), key);
                let (kind, stop) = match c {
                    C::Seg(k) => {
                        let a = points[k].0;
                        let b = points[(k + 1) % points.len()].0;
                        if let Some(x) = self.interior_orbifold {
                            if strictly_between(a, b, x) {
                                contains_interior = true;
                            }
                        }
                        (CornerKind::Boundary, self.stops.iter().any(|&s| strictly_between(a, b, s)))
                    }
                    C::Ang(r) => {
                        let m = radial_arcs.len();
                        let a = radial_arcs[r].0;
                        let b = radial_arcs[(r + m - 1) % m].0;
                        // clockwise sweep from a to b is the ccw sweep from b to a
                        let stop = self.orbifold_stop.is_some_and(|s| strictly_between(b, a, s) || m == 1);
                        (CornerKind::Orbifold(center.unwrap()), stop)
                    }
                };
                let label = self.labels.iter().find(|(k, _)| k.matches(&key)).map(|(_, l)| l.clone());
                let winding = self.windings.iter().find(|(k, _)| k.matches(&key)).map(|(_, w)| *w);
                out_corners.push((Corner { kind, winding: winding.unwrap_or(0), stop, label }, winding.is_some()));
            }
            let interior_orbifold = if contains_interior { interior } else { None };
            // stop corners without an explicit winding absorb the
            // Poincaré–Hopf residual
            let n = sides.len() as i64;
            let expected = if interior_orbifold.is_some() { n - 1 } else { n - 2 };
            let fixed: i64 = out_corners.iter().filter(|(c, given)| *given || !c.stop).map(|(c, _)| c.winding).sum();
            if let Some((c, _)) = out_corners.iter_mut().find(|(c, given)| c.stop && !*given) {
                c.winding = expected - fixed;
            }
            polygons.push(Polygon {
                sides: sides.clone(),
                corners: out_corners.into_iter().map(|(c, _)| c).collect(),
                interior_orbifold,
            });
        }
        let complex = PolygonComplex { arcs, polygons, orbifold_points };
        Ok(LaidOut { complex, keys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn between() {
        assert!(strictly_between(350.0, 10.0, 0.0));
        assert!(!strictly_between(10.0, 350.0, 0.0));
        assert!(strictly_between(0.0, 0.0, 180.0));
    }

    #[test]
    fn star_of_four_radials() {
        let l = DiskLayout::new()
            .radial("a", 45.0)
            .radial("b", 135.0)
            .radial("c", 225.0)
            .radial("d", 315.0)
            .stops(&[0.0, 90.0, 180.0, 270.0])
            .orbifold_stop(270.0)
            .build()
            .unwrap();
        let c = &l.complex;
        assert_eq!(c.polygons.len(), 4);
        assert!(c.polygons.iter().all(|p| p.len() == 2));
        let t = c.validate().unwrap();
        assert_eq!(t.euler_characteristic, 1);
        assert_eq!(t.boundary_components, 1);
        assert!(c.check_poincare_hopf().holds);
        let cyc = c.orbifold_cycles();
        assert_eq!(cyc[&0].len(), 4);
    }
}
