//! The relation read off a closed cell: the composite of the generators
//! assigned to its edges after translating each edge back to the Farey
//! tessellation.

use std::sync::Arc;

use serde::Serialize;

use super::{CellKind, CellSpec, TwoCell};
use crate::charmap::{conjugated_subgroup, witness_points, CharMap, ModularMap};
use crate::error::{Error, Result};
use crate::moebius::{
    in_ccw_arc, solve_edge_map, solve_oriented_edge_map, ExtendedRational, Geodesic, MoebiusMap, OrientedGeodesic,
};
use crate::tessellation::Tessellation;

/// Expected value of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prediction {
    Identity,
    /// The involution reversing `0 → ∞`.
    Sigma,
    /// The element taking `0 → ∞` onto the given oriented edge.
    GammaE0 {
        target: OrientedGeodesic,
    },
}

impl Prediction {
    pub fn element(&self) -> MoebiusMap {
        match self {
            Prediction::Identity => MoebiusMap::identity(),
            Prediction::Sigma => MoebiusMap::sigma(),
            Prediction::GammaE0 { target } => {
                solve_oriented_edge_map(&OrientedGeodesic::standard(), target).expect("target is a Farey edge")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: CellKind,
    pub group_index: usize,
    pub labels: Vec<usize>,
    /// The composite `g₁ ∘ … ∘ gₙ` over every edge of the path.
    pub element: MoebiusMap,
    /// The element sending `0 → ∞` to the distinguished edge carried around the path.
    pub tracked: MoebiusMap,
    pub prediction: Prediction,
    pub predicted: MoebiusMap,
    /// `γ⁻¹ ∘ g₁ ∘ … ∘ gₙ` is the identity on Farey vertices of depth ≤ 5.
    pub rigid: bool,
    /// Each partial composite agrees with the characteristic map of the
    /// corresponding path vertex at the witness points.
    pub steps_consistent: bool,
    /// Coset cells only: whether the product over the first `[K:K₁]` edges
    /// (omitting the last short edge) already closes the path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_k_edges_close: Option<bool>,
    /// Images of the witness points under the composite.
    pub witnesses: Vec<(ExtendedRational, ExtendedRational)>,
    pub holds: bool,
}

/// The element taking `0 → ∞` onto `other`, an edge sharing an endpoint with
/// it, oriented to leave `∞` (or to arrive at `0` when the shared point is `0`).
pub fn gamma_e0(other: &Geodesic) -> Result<(MoebiusMap, OrientedGeodesic)> {
    let zero = ExtendedRational::zero();
    let inf = ExtendedRational::infinity();
    let [a, b] = other.endpoints();
    let oriented = if other.has_endpoint(&inf) {
        let far = if *a == inf { b } else { a };
        OrientedGeodesic::new(inf, far.clone())?
    } else if other.has_endpoint(&zero) {
        let far = if *a == zero { b } else { a };
        OrientedGeodesic::new(far.clone(), zero)?
    } else {
        return Err(Error::Precondition(format!("{other} shares no endpoint with 0 → ∞")));
    };
    let g = solve_oriented_edge_map(&OrientedGeodesic::standard(), &oriented)
        .ok_or_else(|| Error::NotAnEdge(oriented.to_string()))?;
    Ok((g, oriented))
}

fn predict(cell: &TwoCell) -> Result<Prediction> {
    let t = cell.start();
    let e0 = OrientedGeodesic::standard().unoriented();
    let l0 = t.edge_orbit_of(&e0).expect("0..∞ is a Farey edge");
    let label = |g: &Geodesic| t.edge_orbit_of(g).ok_or_else(|| Error::NotAnEdge(g.to_string()));
    Ok(match (&cell.kind, &cell.spec) {
        (CellKind::Pentagon, CellSpec::TwoOrbits { e1, e2 }) => {
            let (l1, l2) = (label(e1)?, label(e2)?);
            let normalize = |on: &Geodesic| -> Result<MoebiusMap> {
                solve_edge_map(on, &e0)
                    .into_iter()
                    .find(|m| cell.group.contains(m))
                    .ok_or_else(|| Error::Internal("orbit label without a group element".into()))
            };
            let after_first = |other: &Geodesic| -> Result<Prediction> {
                let moved = normalize(e1)?.apply_geodesic(other);
                let (zero, inf) = (ExtendedRational::zero(), ExtendedRational::infinity());
                let [a, b] = moved.endpoints();
                let (shared, apex) = if *a == zero || *a == inf { (a, b) } else { (b, a) };
                if *shared != zero && *shared != inf {
                    return Err(Error::Precondition(format!("{moved} shares no endpoint with 0 → ∞")));
                }
                // the edge points into the far vertex of the common triangle
                // when that triangle lies right of 0 → ∞, away from it otherwise
                let target = if in_ccw_arc(&zero, apex, &inf) {
                    OrientedGeodesic::new(shared.clone(), apex.clone())?
                } else {
                    OrientedGeodesic::new(apex.clone(), shared.clone())?
                };
                Ok(Prediction::GammaE0 { target })
            };
            let after_second = |other: &Geodesic| -> Result<Prediction> {
                let (_, target) = gamma_e0(&normalize(e2)?.apply_geodesic(other))?;
                Ok(Prediction::GammaE0 { target })
            };
            if l0 == l1 {
                after_first(e2)?
            } else if l0 == l2 {
                after_second(e1)?
            } else {
                Prediction::Identity
            }
        }
        (CellKind::Square, CellSpec::TwoOrbits { e1, e2 }) => {
            if l0 == label(e1)? || l0 == label(e2)? {
                Prediction::Sigma
            } else {
                Prediction::Identity
            }
        }
        (CellKind::Coset, CellSpec::Coset { e, .. }) => {
            if l0 == label(e)? {
                Prediction::Sigma
            } else {
                Prediction::Identity
            }
        }
        _ => return Err(Error::Internal("cell kind and spec disagree".into())),
    })
}

/// Farey vertices reached from the base triangle by at most `depth` layers of
/// adjacent triangles.
pub fn farey_vertices(depth: usize) -> Vec<ExtendedRational> {
    use num_bigint::BigInt;
    type V = (BigInt, BigInt);
    let v = |p: i64, q: i64| (BigInt::from(p), BigInt::from(q));
    let mut vertices: Vec<V> = vec![v(0, 1), v(1, 0), v(1, 1), v(-1, 1)];
    // each frontier edge (a, b) carries the apex already on its other side
    let mut frontier: Vec<(V, V, V)> = vec![
        (v(0, 1), v(1, 1), v(1, 0)),
        (v(1, 1), v(1, 0), v(0, 1)),
        (v(-1, 1), v(0, 1), v(1, 0)),
        (v(1, 0), v(-1, 1), v(0, 1)),
    ];
    let normal = |x: BigInt, y: BigInt| -> V {
        if y < BigInt::from(0) || (y == BigInt::from(0) && x < BigInt::from(0)) {
            (-x, -y)
        } else {
            (x, y)
        }
    };
    for _ in 1..depth {
        let mut next = Vec::new();
        for (a, b, known) in frontier {
            let w = [normal(&a.0 + &b.0, &a.1 + &b.1), normal(&a.0 - &b.0, &a.1 - &b.1)]
                .into_iter()
                .find(|w| *w != known)
                .expect("two distinct apexes");
            if !vertices.contains(&w) {
                vertices.push(w.clone());
            }
            next.push((a.clone(), w.clone(), b.clone()));
            next.push((w, b, a));
        }
        frontier = next;
    }
    vertices.into_iter().map(|(p, q)| ExtendedRational::from_pair(p, q).expect("primitive")).collect()
}

/// Composes the generators along the cell, extracts the element they equal,
/// certifies it, and compares it with the prediction.
pub fn relation_element(cell: &TwoCell) -> Result<RelationReport> {
    let mut composite = ModularMap::identity();
    let mut steps_consistent = true;
    for edge in &cell.path {
        let g_prev = Arc::new(CharMap::distinguished(edge.from.clone()));
        let conj = conjugated_subgroup(&g_prev)?;
        let back = ModularMap::characteristic(g_prev).inverse();
        let pulled = back.eval_geodesic(&edge.flipped_edge());
        let base = Tessellation::farey(&conj);
        let label = base
            .edge_orbit_of(&pulled)
            .ok_or_else(|| Error::Internal(format!("pulled-back edge {pulled} is not a Farey edge")))?;
        let (translated, _) = base.flip(label)?;
        let g = Arc::new(CharMap::distinguished(Arc::new(translated)));
        composite = composite.compose(&ModularMap::characteristic(g));
        let here = CharMap::distinguished(edge.to.clone());
        steps_consistent &= witness_points().all(|x| composite.eval(&x) == here.eval(&x));
    }
    let element = composite.as_moebius()?;
    let tracked = solve_oriented_edge_map(&OrientedGeodesic::standard(), cell.end().distinguished())
        .ok_or_else(|| Error::Internal("final distinguished edge is not a Farey edge".into()))?;
    let inv = element.inverse();
    let rigid = farey_vertices(5).iter().all(|x| inv.apply(&composite.eval(x)) == *x);
    let prediction = predict(cell)?;
    let predicted = prediction.element();
    let first_k_edges_close =
        (cell.kind == CellKind::Coset).then(|| cell.path[cell.path.len() - 2].to.equals(cell.start()));
    let witnesses = witness_points().map(|x| (x.clone(), composite.eval(&x))).collect();
    let holds = rigid && steps_consistent && element == tracked && element == predicted;
    Ok(RelationReport {
        kind: cell.kind,
        group_index: cell.group.index(),
        labels: cell.labels(),
        element,
        tracked,
        prediction,
        predicted,
        rigid,
        steps_consistent,
        first_k_edges_close,
        witnesses,
        holds,
    })
}
