//! Edges of the complex whose two ends are swapped by a symmetry.

use std::sync::Arc;

use serde::Serialize;

use super::ComplexEdge;
use crate::charmap::{conjugated_subgroup, Atom, CharMap, ModularMap};
use crate::error::{Error, Result};
use crate::moebius::{ExtendedRational, MoebiusMap, OrientedGeodesic};
use crate::subgroup::Subgroup;
use crate::tessellation::Tessellation;

/// A homeomorphism `k = h(τ, e′)` normalizing `K` that swaps the Farey
/// tessellation and its flip `τ`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// The edge `e′` of the flipped tessellation.
    pub edge: OrientedGeodesic,
    /// `k²`, which preserves the Farey tessellation.
    pub square: MoebiusMap,
    pub square_in_group: bool,
    pub square_in_stabilizer: bool,
    /// `k⁴` fixes every sample point.
    pub order_four: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Isotropy {
    /// Stabilizer of the flipped tessellation.
    pub stabilizer_index: usize,
    pub witness: Option<Witness>,
}

fn sample_points(n: usize) -> Vec<ExtendedRational> {
    let mut out = vec![ExtendedRational::infinity(), ExtendedRational::zero()];
    let mut q = 1i64;
    'outer: loop {
        for p in -3 * q..=3 * q {
            if let Ok(x) = ExtendedRational::new(p, q) {
                if !out.contains(&x) {
                    out.push(x);
                    if out.len() >= n {
                        break 'outer;
                    }
                }
            }
        }
        q += 1;
    }
    out
}

/// Searches the darts of the flipped tessellation for an edge `e′` whose
/// characteristic map normalizes `K` and carries the flipped tessellation
/// back onto the Farey one.  The edge must start at the Farey tessellation.
pub fn inversion_witness(edge: &ComplexEdge) -> Result<Option<Witness>> {
    let k = edge.from.group_arc().clone();
    if !edge.from.equals(&Tessellation::farey_arc(k.clone())) {
        return Err(Error::Precondition("edge does not start at the Farey tessellation".into()));
    }
    let tau = &edge.to;
    let stab = tau.stabilizer();
    let reps = tau.edge_orbits();
    for d in 0..tau.darts().len() {
        let e = tau.darts()[d].lift.clone();
        let h = Arc::new(CharMap::new(tau.clone(), e.clone())?);
        if conjugated_subgroup(&h)? != *k {
            continue;
        }
        let m = ModularMap::characteristic(h.clone());
        if !reps.iter().all(|g| m.eval_geodesic(g).is_farey()) {
            continue;
        }
        let square = ModularMap::from_atoms(vec![Atom::Char(h.clone()), Atom::Char(h)]).as_moebius()?;
        let fourth = m.compose(&m).compose(&m).compose(&m);
        let order_four = sample_points(50).iter().all(|x| fourth.eval(x) == *x);
        return Ok(Some(Witness {
            edge: e,
            square_in_group: k.contains(&square),
            square_in_stabilizer: stab.contains(&square),
            square,
            order_four,
        }));
    }
    Ok(None)
}

/// Isotropy of an edge starting at the Farey tessellation.
pub fn edge_isotropy(edge: &ComplexEdge) -> Result<Isotropy> {
    let stab: Subgroup = edge.to.stabilizer();
    Ok(Isotropy { stabilizer_index: stab.index(), witness: inversion_witness(edge)? })
}
