//! Shortest flip paths between tessellations.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tessellation::{Fingerprint, Tessellation};

/// Cap on the number of tessellations visited by [`flip_path`].
pub const DEFAULT_BUDGET: usize = 100_000;

struct Node {
    tess: Arc<Tessellation>,
    /// parent fingerprint and the label flipped to get here from it
    parent: Option<(Fingerprint, usize)>,
}

struct Side {
    nodes: HashMap<Fingerprint, Node>,
    frontier: Vec<Fingerprint>,
}

impl Side {
    fn new(t: Tessellation) -> Self {
        let fp = t.fingerprint();
        let mut nodes = HashMap::new();
        nodes.insert(fp.clone(), Node { tess: Arc::new(t), parent: None });
        Self { nodes, frontier: vec![fp] }
    }

    /// Labels from the root to `fp`.
    fn labels_to(&self, fp: &Fingerprint) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = fp;
        while let Some((p, l)) = &self.nodes[cur].parent {
            out.push(*l);
            cur = p;
        }
        out.reverse();
        out
    }
}

/// Brings both tessellations to a common group by refining to the intersection.
fn common_group(from: &Tessellation, to: &Tessellation) -> Result<(Tessellation, Tessellation)> {
    if from.group() == to.group() {
        return Ok((from.clone(), to.clone()));
    }
    let common = Arc::new(from.group().intersect(to.group()));
    Ok((from.refine_arc(common.clone())?, to.refine_arc(common)?))
}

/// A shortest sequence of flip labels taking `from` to `to` (after refining
/// both to a common group), found by bidirectional breadth-first search over
/// canonical fingerprints.  Labels refer to the refined `from`.
pub fn flip_path(from: &Tessellation, to: &Tessellation, budget: usize) -> Result<Vec<usize>> {
    let (a, b) = common_group(from, to)?;
    if !a.group().is_torsion_free() {
        return Err(Error::Torsion);
    }
    if a.equals(&b) {
        return Ok(Vec::new());
    }
    let labels = a.label_count();
    let mut sides = [Side::new(a), Side::new(b)];
    let mut visited = 2;
    loop {
        // grow the smaller frontier by one level
        let s = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        if sides[s].frontier.is_empty() {
            return Err(Error::Internal("flip graph component exhausted without meeting".into()));
        }
        let mut frontier = std::mem::take(&mut sides[s].frontier);
        frontier.sort();
        let mut next = Vec::new();
        for fp in &frontier {
            let t = sides[s].nodes[fp].tess.clone();
            for l in 0..labels {
                let f = match t.flip(l) {
                    Ok((f, _)) => f,
                    Err(Error::NotFlippable(..)) => continue,
                    Err(e) => return Err(e),
                };
                let nfp = f.fingerprint();
                if sides[s].nodes.contains_key(&nfp) {
                    continue;
                }
                visited += 1;
                if visited > budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                sides[s].nodes.insert(nfp.clone(), Node { tess: Arc::new(f), parent: Some((fp.clone(), l)) });
                next.push(nfp);
            }
        }
        next.sort();
        let other = &sides[1 - s];
        let best = next
            .iter()
            .filter(|fp| other.nodes.get(*fp).is_some_and(|o| o.tess.equals(&sides[s].nodes[*fp].tess)))
            .min_by_key(|fp| other.labels_to(fp).len());
        if let Some(meet) = best {
            return Ok(join(&sides[0], &sides[1], meet));
        }
        sides[s].frontier = next;
    }
}

/// Path from the root of `fwd` through `meet` to the root of `bwd`.  The
/// backward half is replayed on the forward side's labelling: each step
/// flips the edge that the backward search had created.
fn join(fwd: &Side, bwd: &Side, meet: &Fingerprint) -> Vec<usize> {
    let mut path = fwd.labels_to(meet);
    let mut cur = (*fwd.nodes[meet].tess).clone();
    let mut at = meet;
    while let Some((parent, l)) = &bwd.nodes[at].parent {
        let edge = bwd.nodes[at].tess.orbit_rep(*l);
        let label = cur.edge_orbit_of(&edge).expect("equal tessellations share edges");
        cur = cur.flip(label).expect("reverse of a flip").0;
        path.push(label);
        at = parent;
    }
    path
}

/// `n` random flips from `t`, reproducible from `seed`.  A flip undoes the
/// previous one only when no other orbit is flippable.
pub fn scramble(t: &Tessellation, n: usize, seed: u64) -> Result<Tessellation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = t.clone();
    let mut last = None;
    for _ in 0..n {
        let mut moves = Vec::new();
        for l in 0..cur.label_count() {
            match cur.flip(l) {
                Ok((f, _)) => moves.push((l, f)),
                Err(Error::NotFlippable(..)) => {}
                Err(e) => return Err(e),
            }
        }
        // undoing the previous flip only when nothing else is flippable
        if moves.iter().any(|(l, _)| Some(*l) != last) {
            moves.retain(|(l, _)| Some(*l) != last);
        }
        if moves.is_empty() {
            return Err(Error::Internal("no flippable orbit found".into()));
        }
        let (l, f) = moves.swap_remove(rng.gen_range(0..moves.len()));
        cur = f;
        last = Some(l);
    }
    Ok(cur)
}
