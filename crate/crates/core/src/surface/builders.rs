//! Fixture complexes: orbifold disks, the cylinder, the double cover and
//! the generator dissections of Dₙ^× and the worked dissections of D₄^×.

use crate::error::{Error, Result};
use crate::surface::complex::{CornerKind, PolygonComplex};
use crate::surface::layout::{CornerKey, DiskLayout, LaidOut};

use CornerKey::{Angle, Segment};

/// The disk with `n` arcs to the orbifold point, obtained from
/// [`cylinder_one_stop`] by collapsing the inner boundary. Orbifold angles
/// are `q1, …, q(n−1)`, boundary paths next to `b` are `p1` and `p2`.
pub fn orbifold_disk_star(n: usize) -> Result<PolygonComplex> {
    Ok(star_layout(n)?.complex)
}

pub fn star_layout(n: usize) -> Result<LaidOut> {
    if n == 0 {
        return Err(Error::BadParameter("star needs n ≥ 1".into()));
    }
    let step = 360.0 / n as f64;
    let a = |i: usize| 270.0 - step * (i as f64 - 1.0);
    let mut l = DiskLayout::new();
    for i in 1..=n {
        l = l.radial(&format!("g{}", i), a(i));
    }
    let (b0, b1) = (270.0 + step / 3.0, 270.0 + 2.0 * step / 3.0);
    l = l.chord("b", b0, b1);
    let mut stops = vec![270.0 + step / 2.0];
    for i in 1..n {
        stops.push(a(i) - step / 2.0);
    }
    l = l.stops(&stops).orbifold_stop(270.0 + step / 2.0);
    l = l.label(Segment(270.0), "p1").label(Segment(b1), "p2");
    for i in 1..n {
        l = l.label(Angle(a(i)), &format!("q{}", i));
    }
    l.build()
}

/// The annulus S₁,ₙ with one stop on the inner boundary: the star with its
/// orbifold angles turned into inner boundary segments.
pub fn cylinder_one_stop(n: usize) -> Result<PolygonComplex> {
    let mut c = orbifold_disk_star(n)?;
    for p in &mut c.polygons {
        for corner in &mut p.corners {
            corner.kind = CornerKind::Boundary;
        }
    }
    c.orbifold_points.clear();
    Ok(c)
}

/// D₃^× with three radial arcs and two boundary-parallel arcs.
pub fn orbifold_annulus_figure() -> Result<PolygonComplex> {
    Ok(annulus_layout(270.0).build()?.complex)
}

/// The same arcs with the orbifold stop next to a boundary stop.
pub fn orbifold_annulus_figure_right() -> Result<PolygonComplex> {
    Ok(annulus_layout(30.0).winding(Angle(330.0), 1).build()?.complex)
}

fn annulus_layout(orbifold_stop: f64) -> DiskLayout {
    DiskLayout::new()
        .radial("g1", 90.0)
        .radial("g2", 210.0)
        .radial("g3", 330.0)
        .chord("b1", 245.0, 295.0)
        .chord("b2", 130.0, 170.0)
        .stops(&[30.0, 150.0, 270.0])
        .orbifold_stop(orbifold_stop)
        .winding(Segment(90.0), 1)
        .label(Segment(90.0), "p1")
        .label(Segment(170.0), "p2")
        .label(Segment(210.0), "p3")
        .label(Segment(295.0), "p4")
        .label(Angle(90.0), "q2")
        .label(Angle(210.0), "q1")
        .label(Angle(330.0), "q3")
}

/// The generator dissection {α, β, γ₁, …, γₙ₋₁} of Dₙ^×: `m − 2` of the γ
/// lie between α and β on the side of the orbifold stop. The boundary
/// paths `p1, …, p(m−1)` and the orbifold stop bound an m-gon, so
/// μ×ₘ₋₁(p(m−1), …, p1) = q.
pub fn orbifold_disk_generator(n: usize, m: usize) -> Result<PolygonComplex> {
    Ok(generator_layout(n, m)?.complex)
}

pub fn generator_layout(n: usize, m: usize) -> Result<LaidOut> {
    if n < 1 || m < 2 || m > n + 1 {
        return Err(Error::BadParameter(format!("generator needs 2 ≤ m ≤ n + 1, got n = {}, m = {}", n, m)));
    }
    let (alpha, beta) = (200.0, 400.0);
    let mut l = DiskLayout::new().radial("alpha", alpha).radial("beta", beta).orbifold_stop(300.0);
    let k1 = m - 2;
    let w1 = 200.0 / (k1 as f64 + 1.0) / 3.0;
    let mut seg_starts = vec![alpha];
    for j in 1..=k1 {
        let c = alpha + 200.0 * j as f64 / (k1 as f64 + 1.0);
        l = l.chord(&format!("g{}", j), c - w1, c + w1).stops(&[c]);
        seg_starts.push(c + w1);
    }
    for (i, &s) in seg_starts.iter().enumerate() {
        l = l.label(Segment(s), &format!("p{}", i + 1));
    }
    let k2 = n + 1 - m;
    let span = 160.0;
    let w2 = span / (k2 as f64 + 2.0) / 3.0;
    for j in 1..=k2 {
        let c = 40.0 + span * j as f64 / (k2 as f64 + 2.0);
        l = l.chord(&format!("g{}", k1 + j), c - w2, c + w2).stops(&[c]);
    }
    l = l.stops(&[40.0 + span * (k2 as f64 + 1.0) / (k2 as f64 + 2.0)]);
    l = l.winding(Segment(*seg_starts.last().unwrap()), m as i64 - 2);
    if k2 > 0 {
        l = l.winding(Segment(beta), -(m as i64 - 2));
    }
    l = l.winding(Angle(alpha), 1).label(Angle(alpha), "q");
    l.build()
}

/// Γ′: n chords each cutting off one stop, the central n-gon an orbifold
/// polygon with paths `p1, …, pn` of degrees 1, …, 1, 0.
pub fn orbifold_disk_gamma_prime(n: usize) -> Result<PolygonComplex> {
    if n == 0 {
        return Err(Error::BadParameter("Γ′ needs n ≥ 1".into()));
    }
    let step = 360.0 / n as f64;
    let w = step / 3.0;
    let mut l = DiskLayout::new();
    for i in 1..=n {
        let c = step * (i as f64 - 1.0);
        l = l.chord(&format!("g{}", i), c - w, c + w).stops(&[c]);
        let deg = if i < n { 1 } else { 0 };
        l = l.winding(Segment(c + w), deg).label(Segment(c + w), &format!("p{}", i));
    }
    l = l.interior_orbifold(step * (n as f64 - 1.0) + step / 2.0);
    Ok(l.build()?.complex)
}

/// The double cover D₂ₙ with the invariant diameter `alpha` and chords
/// `g{i}+`, `g{i}-` exchanged by the half turn. Boundary paths `p{i}±`.
pub fn double_cover_disk(n: usize) -> Result<PolygonComplex> {
    Ok(double_cover_layout(n)?.complex)
}

pub fn double_cover_layout(n: usize) -> Result<LaidOut> {
    if n < 1 {
        return Err(Error::BadParameter("double cover needs n ≥ 1".into()));
    }
    let mut l = DiskLayout::new().chord("alpha", 200.0, 20.0);
    let step = 180.0 / (n as f64 + 1.0);
    let w = step / 3.0;
    for (half, sign) in [(0.0, "+"), (180.0, "-")] {
        let base = 200.0 + half;
        let mut starts = vec![base];
        for i in 1..n {
            let c = base + step * i as f64;
            l = l.chord(&format!("g{}{}", i, sign), c - w, c + w).stops(&[c]);
            starts.push(c + w);
        }
        l = l.stops(&[base + step * n as f64]);
        for (i, &s) in starts.iter().enumerate().take(n - 1) {
            l = l.label(Segment(s), &format!("p{}{}", i + 1, sign));
        }
    }
    l.build()
}

/// The six worked dissections of D₄^×, numbered from 1. The sixth has an
/// orbifold 1-gon.
pub fn example_dissection(k: usize) -> Result<PolygonComplex> {
    Ok(example_layout(k)?.complex)
}

pub fn example_layout(k: usize) -> Result<LaidOut> {
    let stops = [0.0, 90.0, 180.0, 270.0];
    let l = match k {
        1 => DiskLayout::new()
            .radial("g1", 225.0)
            .radial("g2", 135.0)
            .radial("g3", 45.0)
            .radial("g4", 315.0)
            .chord("b", 255.0, 285.0)
            .stops(&stops)
            .orbifold_stop(270.0)
            .label(Segment(225.0), "p1")
            .label(Segment(285.0), "p2")
            .label(Angle(225.0), "q1")
            .label(Angle(135.0), "q2")
            .label(Angle(45.0), "q3"),
        2 => DiskLayout::new()
            .radial("g1", 210.0)
            .radial("g2", 240.0)
            .radial("g3", 135.0)
            .radial("g4", 45.0)
            .radial("g5", 315.0)
            .stops(&stops)
            .orbifold_stop(226.0)
            .winding(Segment(210.0), -1)
            .label(Segment(210.0), "p")
            .label(Angle(210.0), "q1")
            .label(Angle(135.0), "q2")
            .label(Angle(45.0), "q3")
            .label(Angle(315.0), "q4"),
        3 => DiskLayout::new()
            .radial("g1", 210.0)
            .radial("g2", 240.0)
            .radial("g3", 135.0)
            .radial("g4", 45.0)
            .chord("b", 345.0, 15.0)
            .stops(&stops)
            .orbifold_stop(226.0)
            .winding(Segment(210.0), -1)
            .label(Segment(210.0), "p")
            .label(Segment(15.0), "b")
            .label(Angle(210.0), "q1")
            .label(Angle(135.0), "q2")
            .label(Angle(45.0), "q3"),
        4 => DiskLayout::new()
            .radial("g1", 210.0)
            .radial("g2", 240.0)
            .radial("g3", 135.0)
            .radial("g4", 45.0)
            .chord("c", 285.0, 255.0)
            .stops(&stops)
            .orbifold_stop(226.0)
            .winding(Segment(210.0), -1)
            .label(Segment(210.0), "p")
            .label(Segment(240.0), "b")
            .label(Angle(210.0), "q1")
            .label(Angle(135.0), "q2")
            .label(Angle(45.0), "q3"),
        5 => DiskLayout::new()
            .chord("c1", 191.0, 140.0)
            .chord("c2", 203.33, 45.0)
            .chord("c3", 216.66, 315.0)
            .radial("g1", 230.0)
            .radial("g2", 260.0)
            .stops(&stops)
            .orbifold_stop(246.0)
            .winding(Angle(230.0), 1)
            .label(Segment(230.0), "p")
            .label(Angle(230.0), "q"),
        6 => DiskLayout::new()
            .chord("c1", 191.0, 140.0)
            .chord("c2", 205.0, 45.0)
            .chord("c3", 221.0, 315.0)
            .chord("c4", 235.0, 255.0)
            .stops(&stops)
            .interior_orbifold(245.0)
            .label(Segment(235.0), "e"),
        _ => return Err(Error::BadParameter(format!("no example dissection {}", k))),
    };
    l.build()
}
