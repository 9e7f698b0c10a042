//! Strict ℤ₂ actions on A∞ categories and their extension to twisted
//! complexes.

use std::collections::BTreeMap;

use crate::ainf::category::{composable_tuples, AInf, AInfCategory};
use crate::error::{Error, Result};
use crate::fukaya::FukayaCategory;
use crate::scalar::{one, Q};
use crate::surface::LaidOut;
use crate::twisted::{TwCategory, TwistedComplex};
use crate::vector::Vector;

/// The generator `g` of ℤ₂ acting by `x ↦ objects[x]` and
/// `b ↦ c · morphisms[b].0` with `c = morphisms[b].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub objects: Vec<usize>,
    pub morphisms: Vec<(usize, Q)>,
}

impl GroupAction {
    pub fn trivial<C: AInf + ?Sized>(cat: &C) -> Self {
        GroupAction {
            objects: (0..cat.objects().len()).collect(),
            morphisms: (0..cat.basis().len()).map(|i| (i, one())).collect(),
        }
    }

    pub fn act_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn act(&self, v: &Vector) -> Vector {
        v.iter().map(|(i, c)| (self.morphisms[i].0, c * &self.morphisms[i].1)).collect()
    }

    /// Checks `g² = 1`, compatibility with endpoints, degrees and units,
    /// and `g μ_n = μ_n g` on composable tuples up to `max_arity`.
    pub fn validate<C: AInf + ?Sized>(&self, cat: &C, max_arity: usize) -> Result<()> {
        self.validate_shape(cat)?;
        for t in composable_tuples(cat, max_arity, |_| true) {
            self.check_tuple(cat, &t)?;
        }
        Ok(())
    }

    /// As [`GroupAction::validate`], visiting only stored entries.
    pub fn validate_table(&self, cat: &AInfCategory) -> Result<()> {
        self.validate_shape(cat)?;
        for (t, _) in cat.entries() {
            self.check_tuple(cat, t)?;
        }
        Ok(())
    }

    fn validate_shape<C: AInf + ?Sized>(&self, cat: &C) -> Result<()> {
        let b = cat.basis();
        let n = cat.objects().len();
        if self.objects.len() != n || self.morphisms.len() != b.len() {
            return Err(Error::InvalidAction("maps have the wrong size".into()));
        }
        for x in 0..n {
            if self.objects[x] >= n || self.objects[self.objects[x]] != x {
                return Err(Error::InvalidAction(format!("g² ≠ 1 on object {}", cat.objects()[x])));
            }
            if let Some(u) = cat.unit(x) {
                if cat.unit(self.objects[x]).as_ref() != Some(&self.act(&u)) {
                    return Err(Error::InvalidAction(format!("unit of {} is not preserved", cat.objects()[x])));
                }
            }
        }
        for (i, m) in b.iter().enumerate() {
            let (j, c) = &self.morphisms[i];
            let gm = &b[*j];
            if gm.src != self.objects[m.src] || gm.tgt != self.objects[m.tgt] || gm.deg != m.deg {
                return Err(Error::InvalidAction(format!("{} ↦ {} changes endpoints or degree", m.name, gm.name)));
            }
            let (k, d) = &self.morphisms[*j];
            if *k != i || c * d != one() {
                return Err(Error::InvalidAction(format!("g² ≠ 1 on {}", m.name)));
            }
        }
        Ok(())
    }

    fn check_tuple<C: AInf + ?Sized>(&self, cat: &C, t: &[usize]) -> Result<()> {
        let mut c = one();
        let gt: Vec<usize> = t
            .iter()
            .map(|&i| {
                c = &c * &self.morphisms[i].1;
                self.morphisms[i].0
            })
            .collect();
        let lhs = cat.mu(&gt).scaled(&c);
        let rhs = self.act(&cat.mu(t));
        if lhs != rhs {
            return Err(Error::InvalidAction(format!(
                "action does not commute with μ{} on {}",
                t.len(),
                t.iter().map(|&i| cat.basis()[i].name.as_str()).collect::<Vec<_>>().join(" ⊗ ")
            )));
        }
        Ok(())
    }
}

/// The action of a rotation of a disk picture on the category of its
/// dissection: corners go to rotated corners, paths to paths.
pub fn rotation_action(layout: &LaidOut, f: &FukayaCategory, angle: f64) -> Result<GroupAction> {
    let c = &layout.complex;
    let cat = &f.category;
    let mut corner_map = BTreeMap::new();
    for (&id, key) in &layout.keys {
        let image = layout
            .find(key.rotated(angle))
            .ok_or_else(|| Error::InvalidAction(format!("corner {} has no rotated image", c.corner_label(id))))?;
        corner_map.insert(id, image);
    }
    let mut objects = vec![usize::MAX; c.arcs.len()];
    for (&id, &image) in &corner_map {
        let (a, b) = (c.corner_start(id).arc, c.corner_start(image).arc);
        if objects[a] != usize::MAX && objects[a] != b {
            return Err(Error::InvalidAction(format!("arc {} has two images", c.arcs[a])));
        }
        objects[a] = b;
    }
    let mut morphisms: Vec<(usize, Q)> = (0..cat.basis().len()).map(|i| (i, one())).collect();
    for (x, &y) in objects.iter().enumerate() {
        if let (Some(u), Some(v)) = (cat.unit_index(x), cat.unit_index(y)) {
            morphisms[u] = (v, one());
        }
    }
    for (k, p) in f.paths.paths.iter().enumerate() {
        let corners: Vec<_> = p.corners.iter().map(|id| corner_map[id]).collect();
        let image = f
            .path_element(&corners)
            .ok_or_else(|| Error::InvalidAction(format!("path {} has no rotated image", p.name)))?;
        morphisms[f.path_index[k]] = (image, one());
    }
    let g = GroupAction { objects, morphisms };
    g.validate_table(cat)?;
    Ok(g)
}

/// `g(⊕ s^{m_i} X_i, δ) = (⊕ s^{m_i} gX_i, gδ)`.
pub fn act_on_complex(action: &GroupAction, x: &TwistedComplex) -> TwistedComplex {
    TwistedComplex {
        name: format!("g({})", x.name),
        entries: x
            .entries
            .iter()
            .map(|e| crate::twisted::ShiftedObject::new(action.act_object(e.object), e.shift))
            .collect(),
        delta: x.delta.iter().map(|(k, d)| (*k, action.act(d))).collect(),
    }
}

/// Entry permutation `σ` identifying `x` with `y`: entry `i` of `x` is entry
/// `σ(i)` of `y` and the connections agree.
pub fn match_complex(x: &TwistedComplex, y: &TwistedComplex) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let mut sigma = Vec::with_capacity(x.len());
    for e in &x.entries {
        let hits: Vec<usize> = (0..y.len()).filter(|&j| y.entries[j] == *e).collect();
        if hits.len() != 1 {
            return None;
        }
        sigma.push(hits[0]);
    }
    for u in 0..x.len() {
        for v in 0..x.len() {
            let a = x.delta.get(&(u, v)).cloned().unwrap_or_default();
            let b = y.delta.get(&(sigma[u], sigma[v])).cloned().unwrap_or_default();
            if a != b {
                return None;
            }
        }
    }
    Some(sigma)
}

/// The action on a full subcategory of `tw(A)` closed under `g`.
pub fn induced_action_on_tw<C: AInf + ?Sized>(tw: &TwCategory<C>, action: &GroupAction) -> Result<GroupAction> {
    let cx = tw.complexes();
    let mut objects = Vec::new();
    let mut perms = Vec::new();
    for (xi, x) in cx.iter().enumerate() {
        let gx = act_on_complex(action, x);
        // a complex fixed by g maps to itself even if it has equal copies
        let found = match_complex(&gx, x)
            .map(|s| (xi, s))
            .or_else(|| cx.iter().enumerate().find_map(|(k, y)| match_complex(&gx, y).map(|s| (k, s))));
        let (k, sigma) = found.ok_or_else(|| Error::InvalidAction(format!("the image of {} is not among the complexes", x.name)))?;
        objects.push(k);
        perms.push(sigma);
    }
    let morphisms = (0..tw.basis().len())
        .map(|e| {
            let m = &tw.basis()[e];
            let (i, j, b) = tw.part(e);
            let (gb, c) = &action.morphisms[b];
            let (gx, gy) = (objects[m.src], objects[m.tgt]);
            let image = tw.element(gx, gy, perms[m.src][i], perms[m.tgt][j], *gb).expect("images of entries carry the image hom");
            (image, c.clone())
        })
        .collect();
    let g = GroupAction { objects, morphisms };
    g.validate_shape(tw)?;
    Ok(g)
}
