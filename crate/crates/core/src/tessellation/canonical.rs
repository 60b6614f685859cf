//! Exact canonical form of an edge orbit, used to hash tessellations.
//!
//! Each geodesic `ε` between rationals gets a small set of "anchors", elements
//! `h` of PSL(2,Z) chosen from the Farey edges it crosses, with
//! `anchors(γε) = γ·anchors(ε)`.  For an anchor `h` in coset `K·gᵢ` the element
//! `gᵢh⁻¹` lies in `K`, and `(i, gᵢh⁻¹ε)` depends only on the `K`-orbit of `ε`.

use std::fmt;

use num_integer::Integer;

use super::Tessellation;
use crate::moebius::{
    element_sending_zero_to, solve_edge_map, ExtendedRational, Geodesic, MoebiusMap, OrientedGeodesic,
};
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(String);

impl Fingerprint {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Farey edges crossed by `e`, in order from one endpoint to the other.
fn crossed_farey_edges(e: &Geodesic) -> Vec<Geodesic> {
    let [u, v] = e.endpoints();
    // a sends u to ∞
    let a = element_sending_zero_to(u).compose(&MoebiusMap::sigma()).inverse();
    let a_inv = a.inverse();
    let w = a.apply(v);
    let (p, q) = (w.numer().clone(), w.denom().clone());
    let n = p.div_floor(&q);
    let one = num_bigint::BigInt::from(1);
    let (mut lo, mut hi) = ((n.clone(), one.clone()), (n + 1, one));
    let mut out = Vec::new();
    let to_point = |(x, y): &(num_bigint::BigInt, num_bigint::BigInt)| {
        ExtendedRational::from_pair(x.clone(), y.clone()).expect("coprime")
    };
    loop {
        let edge = Geodesic::new(to_point(&lo), to_point(&hi)).expect("distinct");
        out.push(a_inv.apply_geodesic(&edge));
        let mid = (&lo.0 + &hi.0, &lo.1 + &hi.1);
        // compare p/q with mid
        let lhs = &p * &mid.1;
        let rhs = &mid.0 * &q;
        if lhs == rhs {
            break;
        } else if lhs < rhs {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    out
}

/// Elements `h` with `h(0 → ∞)` or `h(0, ∞, 1)` at the middle of the Farey
/// path crossed by `e`; equivariant under PSL(2,Z).
pub fn farey_anchors(e: &Geodesic) -> Vec<MoebiusMap> {
    let base = OrientedGeodesic::standard().unoriented();
    if e.is_farey() {
        return solve_edge_map(&base, e);
    }
    let crossed = crossed_farey_edges(e);
    let m = crossed.len();
    if m % 2 == 1 {
        return solve_edge_map(&base, &crossed[m / 2]);
    }
    let (e1, e2) = (&crossed[m / 2 - 1], &crossed[m / 2]);
    let mut vertices: Vec<ExtendedRational> = e1.endpoints().to_vec();
    for x in e2.endpoints() {
        if !vertices.contains(x) {
            vertices.push(x.clone());
        }
    }
    debug_assert_eq!(vertices.len(), 3);
    let one = ExtendedRational::integer(1);
    let mut out = Vec::new();
    for i in 0..3 {
        let side = Geodesic::new(vertices[i].clone(), vertices[(i + 1) % 3].clone()).expect("distinct");
        let third = &vertices[(i + 2) % 3];
        for h in solve_edge_map(&base, &side) {
            if h.apply(&one) == *third && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// `(coset index, representative)` determined by the `K`-orbit of `e`.
pub fn canonical_edge(group: &Subgroup, e: &Geodesic) -> (u32, Geodesic) {
    farey_anchors(e)
        .into_iter()
        .map(|h| {
            let i = group.coset_of(&h);
            let k = group.coset_reps()[i as usize].compose(&h.inverse());
            (i, k.apply_geodesic(e))
        })
        .min()
        .expect("every geodesic has anchors")
}

pub(super) fn fingerprint(t: &Tessellation) -> Fingerprint {
    let mut keys: Vec<(u32, Geodesic)> = t.edge_orbits().iter().map(|e| canonical_edge(t.group(), e)).collect();
    keys.sort();
    let parts: Vec<String> = keys.iter().map(|(i, g)| format!("{i}:{g}")).collect();
    Fingerprint(parts.join(","))
}
