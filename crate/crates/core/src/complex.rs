//! Edges and two-cells of the complex of tessellations based at the Farey
//! tessellation, the relations they induce, flip paths, and edge isotropy.

mod inversion;
mod relation;
mod search;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{in_ccw_arc, ExtendedRational, Geodesic, OrientedGeodesic};
use crate::subgroup::Subgroup;
use crate::tessellation::{EdgeCorrespondence, Tessellation};

pub use inversion::{edge_isotropy, inversion_witness, Isotropy, Witness};
pub use relation::{gamma_e0, relation_element, Prediction, RelationReport};
pub use search::{flip_path, scramble, DEFAULT_BUDGET};

/// One flip, from `from` to `to`, under the group of `to`.
#[derive(Clone)]
pub struct ComplexEdge {
    pub from: Arc<Tessellation>,
    pub to: Arc<Tessellation>,
    pub label: usize,
    pub correspondence: EdgeCorrespondence,
}

impl ComplexEdge {
    pub fn flip(from: Arc<Tessellation>, label: usize) -> Result<Self> {
        let (to, correspondence) = from.flip(label)?;
        Ok(Self { from, to: Arc::new(to), label, correspondence })
    }

    pub fn group(&self) -> &Subgroup {
        self.to.group()
    }

    /// The flipped edge as it lies in `from`.
    pub fn flipped_edge(&self) -> Geodesic {
        self.from.orbit_rep(self.label)
    }
}

impl fmt::Debug for ComplexEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "flip[{}] of {} under index {}", self.label, self.flipped_edge(), self.group().index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Pentagon,
    Square,
    Coset,
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Pentagon => "pentagon",
            CellKind::Square => "square",
            CellKind::Coset => "coset",
        })
    }
}

/// Data describing how a cell was built.
#[derive(Clone, Debug)]
pub enum CellSpec {
    /// Flips alternate between the orbits of `e1` and `e2`.
    TwoOrbits { e1: Geodesic, e2: Geodesic },
    /// Long flip of `e` under `K`, then the `K₁`-suborbits flipped back in `ordering`.
    Coset { e: Geodesic, sub: Arc<Subgroup>, ordering: Vec<usize> },
}

/// Deferred construction of a cell, for parallel verification.
pub type CellJob = Box<dyn Fn() -> Result<TwoCell> + Send + Sync>;

#[derive(Clone, Debug)]
pub struct TwoCell {
    pub kind: CellKind,
    pub group: Arc<Subgroup>,
    pub spec: CellSpec,
    pub path: Vec<ComplexEdge>,
}

impl TwoCell {
    pub fn start(&self) -> &Arc<Tessellation> {
        &self.path[0].from
    }

    pub fn end(&self) -> &Arc<Tessellation> {
        &self.path[self.path.len() - 1].to
    }

    pub fn is_closed(&self) -> bool {
        self.end().equals(self.start())
    }

    pub fn labels(&self) -> Vec<usize> {
        self.path.iter().map(|e| e.label).collect()
    }
}

fn require_flip_group(k: &Subgroup) -> Result<()> {
    if !k.is_torsion_free() {
        return Err(Error::Torsion);
    }
    Ok(())
}

fn build_path(start: Arc<Tessellation>, labels: &[usize]) -> Result<Vec<ComplexEdge>> {
    let mut path = Vec::with_capacity(labels.len());
    let mut cur = start;
    for &l in labels {
        let e = ComplexEdge::flip(cur, l)?;
        cur = e.to.clone();
        path.push(e);
    }
    Ok(path)
}

fn label_of(t: &Tessellation, e: &Geodesic) -> Result<usize> {
    t.edge_orbit_of(e).ok_or_else(|| Error::NotAnEdge(e.to_string()))
}

/// The triangle orbit (smallest dart of its `next`-cycle) to the right of `e`.
pub fn triangle_orbit(t: &Tessellation, e: &OrientedGeodesic) -> Result<usize> {
    let (d, _) = t.locate(e).ok_or_else(|| Error::NotAnEdge(e.to_string()))?;
    let darts = t.darts();
    let mut min = d;
    let mut c = darts[d].next;
    while c != d {
        min = min.min(c);
        c = darts[c].next;
    }
    Ok(min)
}

/// Whether two edge orbits bound a common triangle orbit.
pub fn orbits_adjacent(t: &Tessellation, l1: usize, l2: usize) -> bool {
    t.triangles()
        .iter()
        .any(|cycle| cycle.iter().any(|&d| t.label_of_dart(d) == l1) && cycle.iter().any(|&d| t.label_of_dart(d) == l2))
}

fn shared_endpoint(e1: &Geodesic, e2: &Geodesic) -> Option<(ExtendedRational, ExtendedRational, ExtendedRational)> {
    let [a, b] = e1.endpoints();
    let [c, d] = e2.endpoints();
    for (v, u) in [(a, b), (b, a)] {
        for (v2, w) in [(c, d), (d, c)] {
            if v == v2 && u != w {
                return Some((v.clone(), u.clone(), w.clone()));
            }
        }
    }
    None
}

/// Pentagon cell: alternate flips along `K{e1}`, `K{e2}` five times.
pub fn pentagon_cell(k: &Arc<Subgroup>, e1: &Geodesic, e2: &Geodesic) -> Result<TwoCell> {
    require_flip_group(k)?;
    if k.index() < 9 {
        return Err(Error::Precondition(format!("pentagon cells need index at least 9, got {}", k.index())));
    }
    let t = Arc::new(Tessellation::farey_arc(k.clone()));
    let (l1, l2) = (label_of(&t, e1)?, label_of(&t, e2)?);
    if l1 == l2 {
        return Err(Error::Precondition("edges lie in the same orbit".into()));
    }
    let (v, u, w) = shared_endpoint(e1, e2).ok_or_else(|| Error::Precondition("edges share no endpoint".into()))?;
    let third = Geodesic::new(u.clone(), w.clone())?;
    if !third.is_farey() {
        return Err(Error::Precondition("edges do not bound a common triangle".into()));
    }
    // orient each side so the common triangle lies to its right
    let right = |p: &ExtendedRational, q: &ExtendedRational, r: &ExtendedRational| -> OrientedGeodesic {
        if in_ccw_arc(p, r, q) {
            OrientedGeodesic { start: p.clone(), end: q.clone() }
        } else {
            OrientedGeodesic { start: q.clone(), end: p.clone() }
        }
    };
    let side1 = right(&v, &u, &w);
    let side2 = right(&v, &w, &u);
    let middle = triangle_orbit(&t, &side1)?;
    let across1 = triangle_orbit(&t, &side1.reversed())?;
    let across2 = triangle_orbit(&t, &side2.reversed())?;
    if middle == across1 || middle == across2 || across1 == across2 {
        return Err(Error::Precondition("the three triangles of the pentagon are not distinct orbits".into()));
    }
    let path = build_path(t, &[l1, l2, l1, l2, l1])?;
    let cell = TwoCell {
        kind: CellKind::Pentagon,
        group: k.clone(),
        spec: CellSpec::TwoOrbits { e1: e1.clone(), e2: e2.clone() },
        path,
    };
    ensure_closed(cell)
}

/// Square cell: flips along two orbits sharing no triangle, each twice.
pub fn square_cell(k: &Arc<Subgroup>, e1: &Geodesic, e2: &Geodesic) -> Result<TwoCell> {
    require_flip_group(k)?;
    let t = Arc::new(Tessellation::farey_arc(k.clone()));
    let (l1, l2) = (label_of(&t, e1)?, label_of(&t, e2)?);
    if l1 == l2 {
        return Err(Error::Precondition("edges lie in the same orbit".into()));
    }
    if orbits_adjacent(&t, l1, l2) {
        return Err(Error::Precondition("orbits bound a common triangle".into()));
    }
    let path = build_path(t, &[l1, l2, l1, l2])?;
    let cell = TwoCell {
        kind: CellKind::Square,
        group: k.clone(),
        spec: CellSpec::TwoOrbits { e1: e1.clone(), e2: e2.clone() },
        path,
    };
    ensure_closed(cell)
}

/// Suborbit labels (in the `sub`-refinement of `t`) lying over `label`, ascending.
pub fn suborbits(t: &Tessellation, refined: &Tessellation, label: usize) -> Vec<usize> {
    (0..refined.label_count()).filter(|&l| t.edge_orbit_of(&refined.orbit_rep(l)) == Some(label)).collect()
}

/// Coset cell: the long flip of `K{e}`, then the `K₁`-suborbits of the new
/// orbit flipped back one at a time in `ordering` (a permutation of `0..k`).
pub fn coset_cell(k: &Arc<Subgroup>, sub: &Arc<Subgroup>, e: &Geodesic, ordering: &[usize]) -> Result<TwoCell> {
    require_flip_group(k)?;
    require_flip_group(sub)?;
    if !sub.is_subgroup_of(k) {
        return Err(Error::NotContained);
    }
    let t = Arc::new(Tessellation::farey_arc(k.clone()));
    let label = label_of(&t, e)?;
    let long = ComplexEdge::flip(t, label)?;
    let refined = Arc::new(long.to.refine_arc(sub.clone())?);
    let parts = suborbits(&long.to, &refined, label);
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != (0..parts.len()).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!("ordering must be a permutation of 0..{}", parts.len())));
    }
    let labels: Vec<usize> = ordering.iter().map(|&i| parts[i]).collect();
    let mut path = vec![long];
    path.extend(build_path(refined, &labels)?);
    let cell = TwoCell {
        kind: CellKind::Coset,
        group: k.clone(),
        spec: CellSpec::Coset { e: e.clone(), sub: sub.clone(), ordering: ordering.to_vec() },
        path,
    };
    ensure_closed(cell)
}

fn ensure_closed(cell: TwoCell) -> Result<TwoCell> {
    if !cell.is_closed() {
        return Err(Error::Internal(format!("{} cell does not close: {:?}", cell.kind, cell.labels())));
    }
    Ok(cell)
}

/// Ordered pairs of sides of Farey triangles that satisfy the pentagon
/// preconditions for `K`.
pub fn pentagon_pairs(k: &Arc<Subgroup>) -> Vec<(Geodesic, Geodesic)> {
    if k.index() < 9 || !k.is_torsion_free() {
        return Vec::new();
    }
    let t = Tessellation::farey_arc(k.clone());
    let mut out = Vec::new();
    for cycle in t.triangles() {
        let d = cycle[0];
        let [a, b, c] = t.lift_triangle(d);
        let sides = [Geodesic::new(a.clone(), b.clone()), Geodesic::new(b, c.clone()), Geodesic::new(c, a)];
        let sides: Vec<Geodesic> = sides.into_iter().map(|s| s.expect("distinct vertices")).collect();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let (e1, e2) = (&sides[i], &sides[j]);
                if pentagon_admissible(&t, e1, e2) {
                    out.push((e1.clone(), e2.clone()));
                }
            }
        }
    }
    out
}

fn pentagon_admissible(t: &Tessellation, e1: &Geodesic, e2: &Geodesic) -> bool {
    let (Some(l1), Some(l2)) = (t.edge_orbit_of(e1), t.edge_orbit_of(e2)) else {
        return false;
    };
    if l1 == l2 {
        return false;
    }
    let Some((v, u, w)) = shared_endpoint(e1, e2) else {
        return false;
    };
    let side = |p: &ExtendedRational, q: &ExtendedRational, r: &ExtendedRational| {
        if in_ccw_arc(p, r, q) {
            OrientedGeodesic { start: p.clone(), end: q.clone() }
        } else {
            OrientedGeodesic { start: q.clone(), end: p.clone() }
        }
    };
    let s1 = side(&v, &u, &w);
    let s2 = side(&v, &w, &u);
    match (triangle_orbit(t, &s1), triangle_orbit(t, &s1.reversed()), triangle_orbit(t, &s2.reversed())) {
        (Ok(m), Ok(a), Ok(b)) => m != a && m != b && a != b,
        _ => false,
    }
}

/// Unordered pairs of flippable orbit representatives of `farey(K)` sharing
/// no triangle.
pub fn square_pairs(k: &Arc<Subgroup>) -> Vec<(Geodesic, Geodesic)> {
    if !k.is_torsion_free() {
        return Vec::new();
    }
    let t = Tessellation::farey_arc(k.clone());
    let flippable: Vec<bool> = (0..t.label_count()).map(|l| t.flip(l).is_ok()).collect();
    let mut out = Vec::new();
    for l1 in 0..t.label_count() {
        for l2 in l1 + 1..t.label_count() {
            if flippable[l1] && flippable[l2] && !orbits_adjacent(&t, l1, l2) {
                out.push((t.orbit_rep(l1), t.orbit_rep(l2)));
            }
        }
    }
    out
}
