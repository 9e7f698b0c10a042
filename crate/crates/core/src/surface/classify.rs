//! Admissible, DG and formal dissections.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::surface::complex::{CornerId, CornerKind, OrbifoldKind, PolygonComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DissectionClass {
    Invalid,
    Admissible,
    DG,
    Formal,
    NewWithOrbifoldPolygons,
}

impl DissectionClass {
    pub fn is_buildable(self) -> bool {
        self != DissectionClass::Invalid
    }

    pub fn name(self) -> &'static str {
        match self {
            DissectionClass::Invalid => "Invalid",
            DissectionClass::Admissible => "Admissible",
            DissectionClass::DG => "DG",
            DissectionClass::Formal => "Formal",
            DissectionClass::NewWithOrbifoldPolygons => "NewWithOrbifoldPolygons",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: DissectionClass,
    pub diagnostics: Vec<String>,
    /// More than one orbifold point: the disk rules are applied per point.
    pub extended_scope: bool,
}

impl Classification {
    fn invalid(diagnostics: Vec<String>, extended_scope: bool) -> Self {
        Classification { class: DissectionClass::Invalid, diagnostics, extended_scope }
    }
}

pub fn classify_dissection(c: &PolygonComplex) -> Classification {
    let extended_scope = c.orbifold_points.len() > 1;
    let mut diag = Vec::new();
    if extended_scope {
        diag.push("extended scope: several orbifold points".to_string());
    }
    if let Err(e) = c.validate() {
        diag.push(format!("invalid complex: {}", e));
        return Classification::invalid(diag, extended_scope);
    }
    let ph = c.check_poincare_hopf();
    if !ph.holds {
        diag.push(format!("Poincaré–Hopf fails, residuals {:?}", ph.residuals));
        return Classification::invalid(diag, extended_scope);
    }
    if c.stop_free_boundary_components() > 0 {
        diag.push("a boundary component carries no stop".into());
        return Classification::invalid(diag, extended_scope);
    }
    let mut ok = true;
    for (i, p) in c.polygons.iter().enumerate() {
        if p.interior_orbifold.is_some() {
            continue;
        }
        if p.boundary_stops() > 1 {
            diag.push(format!("polygon {} contains {} boundary stops", i, p.boundary_stops()));
            ok = false;
        }
        if p.orbifold_stops() > 0 && p.boundary_stops() > 0 {
            diag.push(format!("polygon {} holds the orbifold stop and a boundary stop", i));
            ok = false;
        }
    }
    let cycles = c.orbifold_cycles();
    let mut stop_polygons = Vec::new();
    for (o, pt) in c.orbifold_points.iter().enumerate() {
        if pt.kind != OrbifoldKind::Dissected {
            continue;
        }
        let cyc = &cycles[&o];
        let polys: BTreeSet<usize> = cyc.iter().map(|x| x.0).collect();
        if polys.len() < 2 {
            diag.push(format!("orbifold point {} meets fewer than two polygons", pt.id));
            ok = false;
        }
        let stops: Vec<CornerId> = cyc.iter().copied().filter(|&x| c.corner(x).stop).collect();
        if stops.len() != 1 {
            diag.push(format!("orbifold point {} has {} orbifold stops", pt.id, stops.len()));
            ok = false;
        } else {
            stop_polygons.push((o, stops[0]));
        }
    }
    if !ok {
        return Classification::invalid(diag, extended_scope);
    }
    let orbifold_polygons: Vec<usize> =
        (0..c.polygons.len()).filter(|&i| c.polygons[i].interior_orbifold.is_some()).collect();
    if !orbifold_polygons.is_empty() {
        diag.push(format!("{} orbifold polygon(s)", orbifold_polygons.len()));
        return Classification { class: DissectionClass::NewWithOrbifoldPolygons, diagnostics: diag, extended_scope };
    }
    // DG: exactly one stop per polygon, orbifold-stop polygon a 2- or 3-gon
    let mut dg = true;
    for (i, p) in c.polygons.iter().enumerate() {
        let stops = p.boundary_stops() + p.orbifold_stops();
        if stops != 1 {
            diag.push(format!("not DG: polygon {} has {} stops", i, stops));
            dg = false;
        }
    }
    for &(_, s) in &stop_polygons {
        let n = c.polygons[s.0].len();
        if !(2..=3).contains(&n) {
            diag.push(format!("not DG: orbifold stop lies in a {}-gon", n));
            dg = false;
        }
    }
    if !dg {
        return Classification { class: DissectionClass::Admissible, diagnostics: diag, extended_scope };
    }
    // (∗): a stop 2-gon whose parallel orbifold path has length > 1 needs a
    // maximal boundary path
    let sides = c.side_locations();
    let mut formal = true;
    for &(o, s) in &stop_polygons {
        let poly = &c.polygons[s.0];
        if poly.len() != 2 {
            continue;
        }
        let parallel_len = cycles[&o].len() - 1;
        if parallel_len <= 1 {
            continue;
        }
        let p = (s.0, 1 - s.1);
        if c.corner(p).kind != CornerKind::Boundary {
            continue;
        }
        let succ = c.successor(p, &sides);
        let pred = c.corner_ids().find(|&x| c.corner(x).kind == CornerKind::Boundary && c.successor(x, &sides) == p);
        let maximal = c.corner(succ).stop && pred.is_some_and(|x| c.corner(x).stop);
        if !maximal {
            diag.push(format!("not formal: boundary path {} in the orbifold-stop 2-gon is not maximal", c.corner_label(p)));
            formal = false;
        }
    }
    let class = if formal { DissectionClass::Formal } else { DissectionClass::DG };
    Classification { class, diagnostics: diag, extended_scope }
}
