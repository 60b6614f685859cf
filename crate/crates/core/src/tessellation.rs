//! Tessellations of the disk by ideal triangles, invariant under a
//! finite-index subgroup `K`.
//!
//! A tessellation is stored as its quotient by `K`: a set of darts (oriented
//! edges with the adjacent triangle on their right), each with one lift to the
//! upper half plane.  Every actual dart is `κ·L_d` for a unique dart `d` and
//! `κ ∈ K` (torsion aside).  The dart following `κ·L_d` around its triangle is
//! `κ·next_glue[d]·L_{next[d]}`, and its reverse is `κ·opp_glue[d]·L_{opp[d]}`.
//! Edge-orbit labels are the `opp`-pairs, numbered by their smallest dart; a
//! flip changes lifts and `next` but never `opp`, so labels survive flips.

mod canonical;
mod serial;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::moebius::{
    circular_order, solve_edge_map, solve_oriented_edge_map, ExtendedRational, Geodesic, MoebiusMap, Orientation,
    OrientedGeodesic,
};
use crate::subgroup::Subgroup;

pub use canonical::{farey_anchors, Fingerprint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub lift: OrientedGeodesic,
    pub next: usize,
    pub next_glue: MoebiusMap,
    pub opp: usize,
    pub opp_glue: MoebiusMap,
}

#[derive(Clone)]
pub struct Tessellation {
    group: Arc<Subgroup>,
    darts: Vec<Dart>,
    label_of: Vec<usize>,
    label_darts: Vec<usize>,
    distinguished: OrientedGeodesic,
    history: Vec<usize>,
}

/// Edge-orbit relabelling across a flip.  Labels are stable under flips, so
/// this is always the identity; it is returned so callers never assume that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCorrespondence {
    map: Vec<usize>,
}

impl EdgeCorrespondence {
    pub fn image(&self, label: usize) -> usize {
        self.map[label]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Debug for Tessellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tessellation")
            .field("index", &self.group.index())
            .field("orbits", &self.edge_orbits())
            .field("distinguished", &self.distinguished)
            .finish()
    }
}

impl Tessellation {
    fn assemble(group: Arc<Subgroup>, darts: Vec<Dart>, distinguished: OrientedGeodesic, history: Vec<usize>) -> Self {
        let mut label_of = vec![usize::MAX; darts.len()];
        let mut label_darts = Vec::new();
        for d in 0..darts.len() {
            if label_of[d] == usize::MAX {
                let l = label_darts.len();
                label_of[d] = l;
                label_of[darts[d].opp] = l;
                label_darts.push(d);
            }
        }
        Self { group, darts, label_of, label_darts, distinguished, history }
    }

    /// The Farey tessellation viewed as `K`-invariant, distinguished edge `0 → ∞`.
    pub fn farey(group: &Subgroup) -> Self {
        Self::farey_arc(Arc::new(group.clone()))
    }

    pub fn farey_arc(group: Arc<Subgroup>) -> Self {
        let n = group.index();
        let reps = group.coset_reps();
        let rho = MoebiusMap::rho();
        let sigma = MoebiusMap::sigma();
        // frames chosen along ρ-cycles so that gluing inside a triangle is trivial
        let mut frame: Vec<Option<MoebiusMap>> = vec![None; n];
        for i in 0..n {
            if frame[i].is_some() {
                continue;
            }
            let mut f = reps[i].clone();
            let mut c = i;
            loop {
                frame[c] = Some(f.clone());
                f = f.compose(&rho);
                c = group.rho_table()[c] as usize;
                if c == i {
                    break;
                }
            }
        }
        let frame: Vec<MoebiusMap> = frame.into_iter().map(|f| f.expect("all cosets framed")).collect();
        let base = OrientedGeodesic::standard();
        let darts = (0..n)
            .map(|i| {
                let next = group.rho_table()[i] as usize;
                let opp = group.sigma_table()[i] as usize;
                Dart {
                    lift: frame[i].apply_oriented(&base),
                    next,
                    next_glue: frame[i].compose(&rho).compose(&frame[next].inverse()),
                    opp,
                    opp_glue: frame[i].compose(&sigma).compose(&frame[opp].inverse()),
                }
            })
            .collect();
        Self::assemble(group, darts, base, Vec::new())
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Subgroup> {
        &self.group
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn distinguished(&self) -> &OrientedGeodesic {
        &self.distinguished
    }

    /// Labels flipped since the Farey tessellation, in order.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn label_count(&self) -> usize {
        self.label_darts.len()
    }

    pub fn label_of_dart(&self, d: usize) -> usize {
        self.label_of[d]
    }

    /// The smallest dart carrying the label.
    pub fn label_dart(&self, label: usize) -> usize {
        self.label_darts[label]
    }

    pub fn orbit_rep(&self, label: usize) -> Geodesic {
        self.darts[self.label_darts[label]].lift.unoriented()
    }

    pub fn edge_orbits(&self) -> Vec<Geodesic> {
        (0..self.label_count()).map(|l| self.orbit_rep(l)).collect()
    }

    /// `next`-cycles of darts, one per triangle orbit.
    pub fn triangles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts.len()];
        let mut out = Vec::new();
        for d in 0..self.darts.len() {
            if seen[d] {
                continue;
            }
            let mut cycle = vec![d];
            seen[d] = true;
            let mut c = self.darts[d].next;
            while c != d {
                seen[c] = true;
                cycle.push(c);
                c = self.darts[c].next;
            }
            out.push(cycle);
        }
        out
    }

    /// Third vertex of the triangle to the right of the lift of `d`.
    pub fn apex(&self, d: usize) -> ExtendedRational {
        let dart = &self.darts[d];
        dart.next_glue.apply(&self.darts[dart.next].lift.end)
    }

    /// `(start, end, apex)` of the lift of `d`.
    pub fn lift_triangle(&self, d: usize) -> [ExtendedRational; 3] {
        let l = &self.darts[d].lift;
        [l.start.clone(), l.end.clone(), self.apex(d)]
    }

    /// The dart `d` and `κ ∈ K` with `κ·L_d = e`, if `e` is an edge of this tessellation.
    pub fn locate(&self, e: &OrientedGeodesic) -> Option<(usize, MoebiusMap)> {
        let label = self.edge_orbit_of(&e.unoriented())?;
        let d = self.label_darts[label];
        for dart in [d, self.darts[d].opp] {
            if let Some(k) = solve_oriented_edge_map(&self.darts[dart].lift, e) {
                if self.group.contains(&k) {
                    return Some((dart, k));
                }
            }
        }
        None
    }

    /// Label of the orbit containing `g`, or `None` if `g` is not an edge.
    pub fn edge_orbit_of(&self, g: &Geodesic) -> Option<usize> {
        (0..self.label_count()).find(|&l| solve_edge_map(&self.orbit_rep(l), g).iter().any(|k| self.group.contains(k)))
    }

    pub fn contains_edge(&self, g: &Geodesic) -> bool {
        self.edge_orbit_of(g).is_some()
    }

    /// Same tessellation with a different distinguished oriented edge.
    pub fn with_distinguished(&self, e: OrientedGeodesic) -> Result<Self> {
        if !self.contains_edge(&e.unoriented()) {
            return Err(Error::NotAnEdge(e.to_string()));
        }
        let mut t = self.clone();
        t.distinguished = e;
        Ok(t)
    }

    /// Equivariant Whitehead move along the orbit `label`.
    pub fn flip(&self, label: usize) -> Result<(Tessellation, EdgeCorrespondence)> {
        if label >= self.label_count() {
            return Err(Error::NoSuchOrbit(label));
        }
        if !self.group.is_torsion_free() {
            return Err(Error::Torsion);
        }
        let d = self.label_darts[label];
        let dd = &self.darts[d];
        let e = dd.opp;
        let n1 = dd.next;
        let n2 = self.darts[n1].next;
        if e == n1 || e == n2 {
            return Err(Error::NotFlippable(
                label,
                "another edge of the same orbit bounds an adjacent triangle".into(),
            ));
        }
        let de = &self.darts[e];
        let m1 = de.next;
        let m2 = self.darts[m1].next;
        let g1 = dd.next_glue.clone();
        let g12 = g1.compose(&self.darts[n1].next_glue);
        let gamma = dd.opp_glue.clone();
        let gh1 = gamma.compose(&de.next_glue);
        let gh12 = gh1.compose(&self.darts[m1].next_glue);

        let a = dd.lift.start.clone();
        let c = dd.lift.end.clone();
        let x = self.apex(d);
        let y = gamma.apply(&self.apex(e));
        let diagonal = OrientedGeodesic::new(y.clone(), x.clone())?;

        let mut darts = self.darts.clone();
        darts[d].lift = diagonal.clone();
        darts[d].opp_glue = MoebiusMap::identity();
        darts[e].lift = diagonal.reversed();
        darts[e].opp_glue = MoebiusMap::identity();
        let mut link = |from: usize, to: usize, glue: MoebiusMap| {
            darts[from].next = to;
            darts[from].next_glue = glue;
        };
        link(d, n2, g12.clone());
        link(n2, m1, g12.inverse().compose(&gh1));
        link(m1, d, gh1.inverse());
        link(e, m2, gh12.clone());
        link(m2, n1, gh12.inverse().compose(&g1));
        link(n1, e, g1.inverse());

        let on_flipped = self.locate(&self.distinguished).map(|(dart, _)| self.label_of[dart]) == Some(label);
        let distinguished = if on_flipped {
            let forward = OrientedGeodesic::new(a.clone(), c.clone())?;
            let k = self.group_element_between(&forward, &self.distinguished);
            match k {
                Some(k) => k.apply_oriented(&OrientedGeodesic::new(x.clone(), y.clone())?),
                None => {
                    let k = self
                        .group_element_between(&forward.reversed(), &self.distinguished)
                        .ok_or_else(|| Error::Internal("distinguished edge lost".into()))?;
                    k.apply_oriented(&diagonal)
                }
            }
        } else {
            self.distinguished.clone()
        };
        let mut history = self.history.clone();
        history.push(label);
        let t = Self::assemble(self.group.clone(), darts, distinguished, history);
        let map = (0..self.label_count()).collect();
        Ok((t, EdgeCorrespondence { map }))
    }

    fn group_element_between(&self, from: &OrientedGeodesic, to: &OrientedGeodesic) -> Option<MoebiusMap> {
        solve_oriented_edge_map(from, to).filter(|k| self.group.contains(k))
    }

    /// Applies a sequence of flips.
    pub fn flip_sequence(&self, labels: &[usize]) -> Result<Tessellation> {
        let mut t = self.clone();
        for &l in labels {
            t = t.flip(l)?.0;
        }
        Ok(t)
    }

    /// Same geodesics, viewed as invariant under `h ⊆ K`.
    pub fn refine(&self, h: &Subgroup) -> Result<Tessellation> {
        self.refine_arc(Arc::new(h.clone()))
    }

    pub fn refine_arc(&self, h: Arc<Subgroup>) -> Result<Tessellation> {
        if *h == *self.group {
            return Ok(self.clone());
        }
        let split = self.group.coset_split(&h)?;
        let k = split.k;
        let mut slot = vec![usize::MAX; h.index()];
        for (s, &c) in split.h_cosets.iter().enumerate() {
            slot[c as usize] = s;
        }
        // H c_s g = H c_{s'} for g ∈ K
        let locate = |s: usize, g: &MoebiusMap| -> (usize, MoebiusMap) {
            let prod = split.reps[s].compose(g);
            let s2 = slot[h.coset_of(&prod) as usize];
            let glue = prod.compose(&split.reps[s2].inverse());
            (s2, glue)
        };
        let mut darts = Vec::with_capacity(self.darts.len() * k);
        for dart in &self.darts {
            for s in 0..k {
                let (ns, ng) = locate(s, &dart.next_glue);
                let (os, og) = locate(s, &dart.opp_glue);
                darts.push(Dart {
                    lift: split.reps[s].apply_oriented(&dart.lift),
                    next: dart.next * k + ns,
                    next_glue: ng,
                    opp: dart.opp * k + os,
                    opp_glue: og,
                });
            }
        }
        Ok(Self::assemble(h, darts, self.distinguished.clone(), Vec::new()))
    }

    /// Whether both tessellations have the same edges (distinguished edges ignored).
    pub fn equals(&self, other: &Tessellation) -> bool {
        let (a, b) = if self.group == other.group {
            (self.clone(), other.clone())
        } else {
            let common = Arc::new(self.group.intersect(&other.group));
            match (self.refine_arc(common.clone()), other.refine_arc(common)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return false,
            }
        };
        a.label_count() == b.label_count()
            && a.edge_orbits().iter().all(|g| b.contains_edge(g))
            && b.edge_orbits().iter().all(|g| a.contains_edge(g))
    }

    /// Whether `γ` maps this tessellation onto itself.
    pub fn is_preserved_by(&self, gamma: &MoebiusMap) -> bool {
        self.edge_orbits().iter().all(|g| self.contains_edge(&gamma.apply_geodesic(g)))
    }

    /// The largest subgroup of PSL(2,Z) preserving the edge set.
    pub fn stabilizer(&self) -> Subgroup {
        let passing: Vec<u32> = self
            .group
            .coset_reps()
            .iter()
            .enumerate()
            .filter(|(_, g)| self.is_preserved_by(g))
            .map(|(i, _)| i as u32)
            .collect();
        self.group.overgroup_from_block(&passing).expect("preserving cosets form a subgroup")
    }

    /// The image `γ·t`, invariant under `γKγ⁻¹`.
    pub fn transform(&self, gamma: &MoebiusMap) -> Tessellation {
        let inv = gamma.inverse();
        let conj = |m: &MoebiusMap| gamma.compose(m).compose(&inv);
        let darts = self
            .darts
            .iter()
            .map(|d| Dart {
                lift: gamma.apply_oriented(&d.lift),
                next: d.next,
                next_glue: conj(&d.next_glue),
                opp: d.opp,
                opp_glue: conj(&d.opp_glue),
            })
            .collect();
        Self::assemble(
            Arc::new(self.group.conjugate_by(gamma)),
            darts,
            gamma.apply_oriented(&self.distinguished),
            self.history.clone(),
        )
    }

    /// Checks the local gluing data: every glue lies in `K`, lifts of
    /// consecutive darts share vertices, opposite darts are reverses, triangles
    /// are negatively ordered, and the distinguished edge is an edge.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTessellation(msg));
        if self.darts.len() != self.group.index() {
            return bad("dart count differs from the group index".into());
        }
        for (i, d) in self.darts.iter().enumerate() {
            if d.next >= self.darts.len() || d.opp >= self.darts.len() {
                return bad(format!("dart {i}: link out of range"));
            }
            if !self.group.contains(&d.next_glue) || !self.group.contains(&d.opp_glue) {
                return bad(format!("dart {i}: glue outside the group"));
            }
            let o = &self.darts[d.opp];
            if o.opp != i || d.opp_glue.apply_oriented(&o.lift) != d.lift.reversed() {
                return bad(format!("dart {i}: opposite dart mismatch"));
            }
            let n = &self.darts[d.next];
            if d.next_glue.apply(&n.lift.start) != d.lift.end {
                return bad(format!("dart {i}: next dart does not continue the triangle"));
            }
            let nn = &self.darts[n.next];
            let around = d.next_glue.compose(&n.next_glue).compose(&nn.next_glue);
            let closing = d.next_glue.compose(&n.next_glue).apply(&nn.lift.end);
            if nn.next != i || !around.is_identity() || closing != d.lift.start {
                return bad(format!("dart {i}: triangle does not close"));
            }
            let [s, e, x] = self.lift_triangle(i);
            if d.next != i && circular_order(&s, &e, &x)? != Orientation::Negative {
                return bad(format!("dart {i}: triangle on the wrong side"));
            }
        }
        if !self.contains_edge(&self.distinguished.unoriented()) {
            return bad("distinguished edge is not an edge".into());
        }
        Ok(())
    }

    /// Checks that no two edges cross, over all `K`-translates reachable by
    /// words of length at most `coset-graph diameter + 2 + extra` in the
    /// Schreier generators (capped at `max_elements` translates).
    pub fn audit_noncrossing(&self, extra: usize, max_elements: usize) -> Result<()> {
        let depth = self.group.diameter() + 2 + extra;
        let elements = group_ball(&self.group, depth, max_elements);
        let reps = self.edge_orbits();
        for k in &elements {
            for r in &reps {
                let moved = k.apply_geodesic(r);
                for s in &reps {
                    if moved.crosses(s) {
                        return Err(Error::InvalidTessellation(format!("{moved} crosses {s}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact fingerprint: equal for two tessellations with the same group iff
    /// their edge sets agree.
    pub fn fingerprint(&self) -> Fingerprint {
        canonical::fingerprint(self)
    }
}

/// Elements of `K` reachable by words of length ≤ `depth` in its Schreier
/// generators and their inverses, breadth first, at most `cap` of them.
pub fn group_ball(group: &Subgroup, depth: usize, cap: usize) -> Vec<MoebiusMap> {
    let gens: Vec<MoebiusMap> = group.schreier_generators().iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen: HashSet<MoebiusMap> = HashSet::new();
    let mut layer = vec![MoebiusMap::identity()];
    seen.insert(MoebiusMap::identity());
    let mut out = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &layer {
            for g in &gens {
                let p = m.compose(g);
                if seen.insert(p.clone()) {
                    out.push(p.clone());
                    next.push(p);
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests;
