//! Generators and relations at the Farey basepoint, truncated by a subgroup
//! catalog and an index bound.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charmap::{witness_points, CharMap, ModularMap};
use crate::complex::{
    coset_cell, inversion_witness, pentagon_cell, pentagon_pairs, relation_element, square_cell, square_pairs,
    suborbits, CellJob, CellKind, ComplexEdge, TwoCell, Witness,
};
use crate::error::{Error, Result};
use crate::moebius::{
    solve_edge_map, solve_oriented_edge_map, ExtendedRational, Geodesic, MoebiusMap, OrientedGeodesic,
};
use crate::subgroup::{low_index::low_index_subgroups, Subgroup};
use crate::tessellation::{group_ball, Tessellation};

/// A named torsion-free subgroup.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub group: Arc<Subgroup>,
}

const NAMED: [&str; 5] = ["gamma2", "torus", "gamma3", "gamma4", "gamma6"];

/// Named groups of index at most `max_index`, plus every other torsion-free
/// subgroup of index 6 (named `index6-<n>`), ordered by index.
pub fn catalog(max_index: usize) -> Vec<CatalogGroup> {
    let mut out: Vec<CatalogGroup> = NAMED
        .iter()
        .map(|n| CatalogGroup { name: n.to_string(), group: Arc::new(Subgroup::named(n).expect("catalog name")) })
        .filter(|c| c.group.index() <= max_index)
        .collect();
    if max_index >= 6 {
        let mut extra = 0;
        for k in low_index_subgroups(6, true) {
            if !out.iter().any(|c| *c.group == k) {
                extra += 1;
                out.push(CatalogGroup { name: format!("index6-{extra}"), group: Arc::new(k) });
            }
        }
    }
    out.sort_by_key(|c| c.group.index());
    out
}

/// An edge of the complex leaving the Farey tessellation.
#[derive(Clone)]
pub struct BasepointEdge {
    pub group_name: String,
    pub label: usize,
    pub edge: Geodesic,
    /// The flipped orbit contains `0 → ∞`.
    pub through_e0: bool,
    pub flip: ComplexEdge,
    /// `g_E`: the characteristic map of the terminal tessellation at its
    /// tracked distinguished edge (`0 → ∞` or `1 → −1`).
    pub generator: Arc<CharMap>,
    /// `K′`, the stabilizer of the terminal tessellation.
    pub stabilizer: Subgroup,
    pub witness: Option<Witness>,
}

impl BasepointEdge {
    pub fn group(&self) -> &Arc<Subgroup> {
        self.flip.from.group_arc()
    }

    pub fn inverted(&self) -> bool {
        self.witness.is_some()
    }

    pub fn chosen_generator(&self) -> ModularMap {
        ModularMap::characteristic(self.generator.clone())
    }

    /// `g_E` carries every Farey edge orbit into the terminal tessellation.
    pub fn generator_maps_basepoint(&self) -> bool {
        let g = self.chosen_generator();
        self.flip.from.edge_orbits().iter().all(|e| self.flip.to.contains_edge(&g.eval_geodesic(e)))
    }
}

impl std::fmt::Debug for BasepointEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E[{} #{} {}]", self.group_name, self.label, self.edge)
    }
}

fn basepoint_edge(c: &CatalogGroup, label: usize) -> Result<Option<BasepointEdge>> {
    let t = Arc::new(Tessellation::farey_arc(c.group.clone()));
    let e0 = OrientedGeodesic::standard().unoriented();
    let flip = match ComplexEdge::flip(t.clone(), label) {
        Ok(f) => f,
        Err(Error::NotFlippable(..)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let generator = Arc::new(CharMap::distinguished(flip.to.clone()));
    Ok(Some(BasepointEdge {
        group_name: c.name.clone(),
        label,
        edge: t.orbit_rep(label),
        through_e0: t.edge_orbit_of(&e0) == Some(label),
        stabilizer: flip.to.stabilizer(),
        witness: inversion_witness(&flip)?,
        generator,
        flip,
    }))
}

/// One edge per flippable edge orbit of `farey(K)` for every catalog group of
/// index at most `max_index`.
pub fn enumerate_edges(max_index: usize) -> Result<Vec<BasepointEdge>> {
    if max_index < 6 {
        return Err(Error::Precondition("max_index must be at least 6".into()));
    }
    let jobs: Vec<(CatalogGroup, usize)> =
        catalog(max_index).into_iter().flat_map(|c| (0..c.group.index() / 2).map(move |l| (c.clone(), l))).collect();
    let found: Vec<Option<BasepointEdge>> =
        jobs.par_iter().map(|(c, l)| basepoint_edge(c, *l)).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// `s_{e₂} ∘ P` where `P` is the parabolic fixing the shared endpoint of
/// `0 → ∞` (`∞` if `shared_is_terminal`, else `0`) with `P(e₀) = e₂`, and
/// `s_{e₂}` reverses `e₂`.  Falls back to `P ∘ s_{e₂}` if that order does not
/// carry `e₀` onto `e₂` reversed; the flag reports which order was used.
pub fn gamma_e0_parabolic(e2: &Geodesic, shared_is_terminal: bool) -> Result<(MoebiusMap, bool)> {
    let shared = if shared_is_terminal { ExtendedRational::infinity() } else { ExtendedRational::zero() };
    if !e2.has_endpoint(&shared) {
        return Err(Error::Precondition(format!("{e2} does not contain {shared}")));
    }
    let [a, b] = e2.endpoints();
    let far = if *a == shared { b.clone() } else { a.clone() };
    let image =
        if shared_is_terminal { OrientedGeodesic::new(far, shared)? } else { OrientedGeodesic::new(shared, far)? };
    let e0 = OrientedGeodesic::standard();
    let p = solve_oriented_edge_map(&e0, &image).ok_or_else(|| Error::NotAnEdge(e2.to_string()))?;
    let s = solve_edge_map(e2, e2)
        .into_iter()
        .find(|m| !m.is_identity())
        .ok_or_else(|| Error::Internal(format!("no involution reverses {e2}")))?;
    let wanted = image.reversed();
    let first = s.compose(&p);
    if first.apply_oriented(&e0) == wanted {
        return Ok((first, false));
    }
    let second = p.compose(&s);
    if second.apply_oriented(&e0) == wanted {
        return Ok((second, true));
    }
    Err(Error::Internal(format!("neither order carries 0 → ∞ onto {wanted}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Truncation {
    pub max_index: usize,
    pub groups: Vec<String>,
    pub ball_depth: usize,
    pub coset_orderings: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeneratorRecord {
    #[serde(rename = "moebius")]
    Moebius { name: String, element: MoebiusMap },
    #[serde(rename = "g_E")]
    Characteristic {
        group: String,
        label: usize,
        edge: Geodesic,
        /// `g_E(0 → ∞)`
        image_of_e0: OrientedGeodesic,
        inverted: bool,
        stabilizer: Subgroup,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationRecord {
    #[serde(rename = "type")]
    pub item: char,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cell_kind: Option<CellKind>,
    pub group: String,
    pub labels: Vec<usize>,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<MoebiusMap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted: Option<MoebiusMap>,
    pub witnesses: Vec<(ExtendedRational, ExtendedRational)>,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub truncation: Truncation,
    pub generators: Vec<GeneratorRecord>,
    pub relations: Vec<RelationRecord>,
    pub notes: Vec<String>,
}

impl PresentationDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn all_verified(&self) -> bool {
        self.relations.iter().all(|r| r.verified)
    }
}

fn isotropy_record(e: &BasepointEdge) -> RelationRecord {
    let k = e.group();
    let contains_k = k.is_subgroup_of(&e.stabilizer);
    let preserved = e.stabilizer.schreier_generators().iter().all(|g| e.flip.to.is_preserved_by(g));
    match &e.witness {
        None => RelationRecord {
            item: 'a',
            cell_kind: None,
            group: e.group_name.clone(),
            labels: vec![e.label],
            statement: format!("Γ(E) = K′ of index {}", e.stabilizer.index()),
            element: None,
            predicted: None,
            witnesses: Vec::new(),
            verified: contains_k && preserved,
        },
        Some(w) => RelationRecord {
            item: 'b',
            cell_kind: None,
            group: e.group_name.clone(),
            labels: vec![e.label],
            statement: format!(
                "Γ⁺(E) = K′ of index {}; k = h(τ, {}) inverts E with k² ∈ K′ − K",
                e.stabilizer.index(),
                w.edge
            ),
            element: Some(w.square.clone()),
            predicted: None,
            witnesses: Vec::new(),
            verified: contains_k && preserved && w.square_in_stabilizer && !w.square_in_group && w.order_four,
        },
    }
}

fn cell_record(name: &str, cell: &TwoCell) -> Result<RelationRecord> {
    let r = relation_element(cell)?;
    Ok(RelationRecord {
        item: 'c',
        cell_kind: Some(cell.kind),
        group: name.to_string(),
        labels: r.labels.clone(),
        statement: format!("g₁ ∘ … ∘ g{} = {}", r.labels.len(), r.predicted),
        element: Some(r.element.clone()),
        predicted: Some(r.predicted.clone()),
        witnesses: r.witnesses,
        verified: r.holds,
    })
}

/// Sample points for pointwise checks: the witness points and further small
/// rationals.
pub fn sample_rationals(n: usize) -> Vec<ExtendedRational> {
    let mut out: Vec<ExtendedRational> = witness_points().collect();
    let mut q = 1i64;
    while out.len() < n {
        for p in [-(2 * q + 1), 2 * q + 1, -(q + 2), q + 2] {
            if let Ok(x) = ExtendedRational::new(p, q) {
                if out.len() < n && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        q += 1;
    }
    out
}

/// The relation `g_{E′} ∘ γ′ = γ ∘ g_E` for `γ ∈ PSL(2,Z)` taking the terminal
/// tessellation of `E` to that of `E′`, with `γ′` the element taking `e₀`
/// to `g_{E′}⁻¹(γ(g_E(e₀)))`.
pub fn redundancy_relation(e: &BasepointEdge, e_prime: &BasepointEdge, gamma: &MoebiusMap) -> Result<RelationRecord> {
    if !e.flip.to.transform(gamma).equals(&e_prime.flip.to) {
        return Err(Error::Precondition(format!("{gamma} does not carry {e:?} to {e_prime:?}")));
    }
    let g = e.chosen_generator();
    let gp = e_prime.chosen_generator();
    let target = gp.inverse().eval_oriented(&gamma.apply_oriented(&g.eval_oriented(&OrientedGeodesic::standard())));
    let gamma_prime = solve_oriented_edge_map(&OrientedGeodesic::standard(), &target)
        .ok_or_else(|| Error::Internal(format!("{target} is not a Farey edge")))?;
    let lhs = gp.compose(&ModularMap::moebius(gamma_prime.clone()));
    let rhs = ModularMap::moebius(gamma.clone()).compose(&g);
    let points = sample_rationals(20);
    let witnesses: Vec<_> = points.iter().map(|x| (x.clone(), lhs.eval(x))).collect();
    let verified = points.iter().all(|x| lhs.eval(x) == rhs.eval(x));
    Ok(RelationRecord {
        item: 'd',
        cell_kind: None,
        group: e.group_name.clone(),
        labels: vec![e.label, e_prime.label],
        statement: format!("g_E′ ∘ {gamma_prime} = {gamma} ∘ g_E"),
        element: Some(gamma_prime),
        predicted: None,
        witnesses,
        verified,
    })
}

fn coset_jobs(groups: &[CatalogGroup]) -> Vec<(CatalogGroup, Arc<Subgroup>, String)> {
    let mut out = Vec::new();
    for c in groups {
        for sub in NAMED {
            let s = Arc::new(Subgroup::named(sub).expect("catalog name"));
            let ratio = s.index() / c.group.index();
            if s.index() > c.group.index() && ratio <= 4 && s.is_subgroup_of(&c.group) {
                out.push((c.clone(), s, sub.to_string()));
            }
        }
    }
    out
}

/// The truncated presentation at `max_index`.
pub fn emit_presentation(max_index: usize) -> Result<PresentationDocument> {
    const BALL_DEPTH: usize = 2;
    let groups = catalog(max_index);
    let edges = enumerate_edges(max_index)?;
    let mut generators = vec![
        GeneratorRecord::Moebius { name: "sigma".into(), element: MoebiusMap::sigma() },
        GeneratorRecord::Moebius { name: "rho".into(), element: MoebiusMap::rho() },
    ];
    for e in &edges {
        generators.push(GeneratorRecord::Characteristic {
            group: e.group_name.clone(),
            label: e.label,
            edge: e.edge.clone(),
            image_of_e0: e.chosen_generator().eval_oriented(&OrientedGeodesic::standard()),
            inverted: e.inverted(),
            stabilizer: e.stabilizer.clone(),
        });
    }
    let mut relations: Vec<RelationRecord> = edges.iter().map(isotropy_record).collect();

    let mut cells: Vec<(String, CellJob)> = Vec::new();
    for c in &groups {
        for (e1, e2) in pentagon_pairs(&c.group) {
            let k = c.group.clone();
            cells.push((c.name.clone(), Box::new(move || pentagon_cell(&k, &e1, &e2))));
        }
        for (e1, e2) in square_pairs(&c.group) {
            let k = c.group.clone();
            cells.push((c.name.clone(), Box::new(move || square_cell(&k, &e1, &e2))));
        }
    }
    let mut coset_orderings = 0;
    for (c, sub, sub_name) in coset_jobs(&groups) {
        let t = Tessellation::farey_arc(c.group.clone());
        for label in 0..t.label_count() {
            let flipped = match t.flip(label) {
                Ok((f, _)) => f,
                Err(Error::NotFlippable(..)) => continue,
                Err(e) => return Err(e),
            };
            let parts = suborbits(&flipped, &flipped.refine_arc(sub.clone())?, label).len();
            let forward: Vec<usize> = (0..parts).collect();
            let backward: Vec<usize> = (0..parts).rev().collect();
            coset_orderings = 2;
            for ordering in [forward, backward] {
                let (k, s, e) = (c.group.clone(), sub.clone(), t.orbit_rep(label));
                cells.push((format!("{}>{}", c.name, sub_name), Box::new(move || coset_cell(&k, &s, &e, &ordering))));
            }
        }
    }
    let cell_records: Vec<RelationRecord> =
        cells.par_iter().map(|(name, make)| cell_record(name, &make()?)).collect::<Result<_>>()?;
    relations.extend(cell_records);

    // item d: pairs of edges of one group related by short words in σ, ρ
    let ball = group_ball(&Subgroup::full(), BALL_DEPTH, 64);
    let mut by_group: HashMap<&str, Vec<&BasepointEdge>> = HashMap::new();
    for e in &edges {
        by_group.entry(e.group_name.as_str()).or_default().push(e);
    }
    let mut jobs = Vec::new();
    for c in &groups {
        let Some(es) = by_group.get(c.name.as_str()) else {
            continue;
        };
        let farey = Tessellation::farey_arc(c.group.clone());
        for e in es {
            for gamma in &ball {
                let image = gamma.apply_geodesic(&e.edge);
                let Some(l) = farey.edge_orbit_of(&image) else {
                    continue;
                };
                let Some(e_prime) = es.iter().find(|x| x.label == l) else {
                    continue;
                };
                if e.flip.to.transform(gamma).equals(&e_prime.flip.to) {
                    jobs.push((*e, *e_prime, gamma.clone()));
                }
            }
        }
    }
    let redundancy: Vec<RelationRecord> =
        jobs.par_iter().map(|(e, ep, g)| redundancy_relation(e, ep, g)).collect::<Result<_>>()?;
    relations.extend(redundancy);

    Ok(PresentationDocument {
        truncation: Truncation {
            max_index,
            groups: groups.iter().map(|c| c.name.clone()).collect(),
            ball_depth: BALL_DEPTH,
            coset_orderings,
        },
        generators,
        relations,
        notes: vec![
            "item b records Γ⁺(E) = K′; Γ(E) is generated by K′ and the inversion k".into(),
            "redundancy relations use γ′(e₀) = g_E′⁻¹(γ(g_E(e₀)))".into(),
        ],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub group: String,
    pub distance: usize,
    pub flips: Vec<usize>,
    pub stabilizer_index: usize,
    pub is_basepoint: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerScan {
    pub max_index: usize,
    pub radius: usize,
    pub entries: Vec<ScanEntry>,
    /// Every tessellation with full stabilizer is the Farey tessellation.
    pub unique_full_stabilizer: bool,
}

/// Stabilizer indices of all tessellations within `radius` flips of the
/// Farey tessellation, for each catalog group.
pub fn scan_stabilizers(max_index: usize, radius: usize) -> Result<StabilizerScan> {
    if radius < 1 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    let groups = catalog(max_index);
    let per_group: Vec<Vec<ScanEntry>> = groups
        .par_iter()
        .map(|c| {
            let start = Tessellation::farey_arc(c.group.clone());
            let mut seen = HashSet::from([start.fingerprint()]);
            let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
            let mut out = Vec::new();
            while let Some((t, path)) = queue.pop_front() {
                out.push(ScanEntry {
                    group: c.name.clone(),
                    distance: path.len(),
                    flips: path.clone(),
                    stabilizer_index: t.stabilizer().index(),
                    is_basepoint: path.is_empty() || t.equals(&Tessellation::farey_arc(c.group.clone())),
                });
                if path.len() == radius {
                    continue;
                }
                for l in 0..t.label_count() {
                    let f = match t.flip(l) {
                        Ok((f, _)) => f,
                        Err(Error::NotFlippable(..)) => continue,
                        Err(e) => return Err(e),
                    };
                    if seen.insert(f.fingerprint()) {
                        let mut p = path.clone();
                        p.push(l);
                        queue.push_back((f, p));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let entries: Vec<ScanEntry> = per_group.into_iter().flatten().collect();
    let unique_full_stabilizer = entries.iter().any(|e| e.stabilizer_index == 1)
        && entries.iter().all(|e| e.stabilizer_index != 1 || e.is_basepoint);
    Ok(StabilizerScan { max_index, radius, entries, unique_full_stabilizer })
}

#[cfg(test)]
mod tests;
