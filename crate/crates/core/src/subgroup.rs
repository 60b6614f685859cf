//! Finite-index subgroups of PSL(2,Z) as pointed transitive actions on cosets.
//!
//! Coset `i` stands for a right coset `K·gᵢ`; the action is on the right, so a
//! word `x₁x₂…xₙ` moves coset `i` to `(…(i·x₁)·x₂…)·xₙ`.  Base point 0 is `K`
//! itself and an element lies in `K` iff its word fixes 0.  Tables are kept in
//! canonical breadth-first labelling (generator order σ, ρ), so two subgroups
//! are equal iff their tables are.

pub mod low_index;
mod todd_coxeter;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{eval_word, Gen, MoebiusMap};

pub use low_index::low_index_subgroups;

#[derive(Clone, Serialize, Deserialize)]
struct Table {
    index: usize,
    sigma: Vec<u32>,
    rho: Vec<u32>,
}

#[derive(Clone)]
pub struct Subgroup {
    sigma: Vec<u32>,
    rho: Vec<u32>,
    rep_words: Vec<Vec<Gen>>,
    reps: Vec<MoebiusMap>,
    schreier: OnceLock<Vec<MoebiusMap>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.rho == other.rho
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sigma.hash(state);
        self.rho.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("index", &self.index())
            .field("sigma", &self.sigma)
            .field("rho", &self.rho)
            .finish()
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Table { index: self.index(), sigma: self.sigma.clone(), rho: self.rho.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = Table::deserialize(d)?;
        if t.index != t.sigma.len() {
            return Err(serde::de::Error::custom("index does not match table length"));
        }
        Subgroup::from_tables(t.sigma, t.rho).map_err(serde::de::Error::custom)
    }
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        match seen.get_mut(x as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

impl Subgroup {
    /// Validates and canonically relabels a pair of permutations, pointed at 0.
    pub fn from_tables(sigma: Vec<u32>, rho: Vec<u32>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || rho.len() != n {
            return Err(Error::InvalidSubgroup("tables must be nonempty and of equal length".into()));
        }
        if !is_permutation(&sigma) || !is_permutation(&rho) {
            return Err(Error::InvalidSubgroup("not a permutation".into()));
        }
        for i in 0..n {
            if sigma[sigma[i] as usize] as usize != i {
                return Err(Error::InvalidSubgroup("sigma is not an involution".into()));
            }
            if rho[rho[rho[i] as usize] as usize] as usize != i {
                return Err(Error::InvalidSubgroup("rho does not have order dividing 3".into()));
            }
        }
        Self::relabel(&sigma, &rho, 0)
    }

    /// Canonical BFS relabelling from `base`; fails unless the action is transitive.
    fn relabel(sigma: &[u32], rho: &[u32], base: u32) -> Result<Self> {
        let n = sigma.len();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut words: Vec<Vec<Gen>> = Vec::with_capacity(n);
        label[base as usize] = 0;
        order.push(base);
        words.push(Vec::new());
        let mut head = 0;
        while head < order.len() {
            let c = order[head] as usize;
            for (g, perm) in [(Gen::S, sigma), (Gen::R, rho)] {
                let d = perm[c] as usize;
                if label[d] == u32::MAX {
                    label[d] = order.len() as u32;
                    order.push(d as u32);
                    let mut w = words[head].clone();
                    w.push(g);
                    words.push(w);
                }
            }
            head += 1;
        }
        if order.len() != n {
            return Err(Error::InvalidSubgroup("action is not transitive".into()));
        }
        let new_sigma = order.iter().map(|&c| label[sigma[c as usize] as usize]).collect();
        let new_rho = order.iter().map(|&c| label[rho[c as usize] as usize]).collect();
        let reps = words.iter().map(|w| eval_word(w)).collect();
        Ok(Self { sigma: new_sigma, rho: new_rho, rep_words: words, reps, schreier: OnceLock::new() })
    }

    /// PSL(2,Z) itself (index 1).
    pub fn full() -> Self {
        Self::from_tables(vec![0], vec![0]).expect("trivial table")
    }

    /// Principal congruence subgroup Γ(n): the action of PSL(2,Z) on PSL(2,Z/n).
    pub fn congruence(level: u64) -> Result<Self> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        let n = level as i64;
        let md = |x: i64| x.rem_euclid(n);
        let key = |m: [i64; 4]| {
            let neg = [md(-m[0]), md(-m[1]), md(-m[2]), md(-m[3])];
            let pos = [md(m[0]), md(m[1]), md(m[2]), md(m[3])];
            pos.min(neg)
        };
        let mul = |x: [i64; 4], y: [i64; 4]| {
            key([
                x[0] * y[0] + x[1] * y[2],
                x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3],
            ])
        };
        let s = [0, -1, 1, 0];
        let r = [1, -1, 1, 0];
        let mut index: HashMap<[i64; 4], u32> = HashMap::new();
        let mut elems = vec![key([1, 0, 0, 1])];
        index.insert(elems[0], 0);
        let (mut sigma, mut rho) = (Vec::new(), Vec::new());
        let mut head = 0;
        while head < elems.len() {
            let m = elems[head];
            for (gen, perm) in [(s, &mut sigma), (r, &mut rho)] {
                let p = mul(m, gen);
                let next = elems.len() as u32;
                let id = *index.entry(p).or_insert_with(|| {
                    elems.push(p);
                    next
                });
                perm.push(id);
            }
            head += 1;
        }
        Self::from_tables(sigma, rho)
    }

    /// Commutator subgroup: kernel of PSL(2,Z) → Z/2 × Z/3, uniformizing the
    /// once-punctured torus.
    pub fn commutator_torus() -> Self {
        let idx = |a: u32, b: u32| a * 3 + b;
        let (mut sigma, mut rho) = (vec![0; 6], vec![0; 6]);
        for a in 0..2 {
            for b in 0..3 {
                sigma[idx(a, b) as usize] = idx((a + 1) % 2, b);
                rho[idx(a, b) as usize] = idx(a, (b + 1) % 3);
            }
        }
        Self::from_tables(sigma, rho).expect("valid table")
    }

    /// Catalog names: `gamma2`, `gamma3`, `gamma4`, `gamma6` (any `gammaN`),
    /// `torus`, `full`, `file:<path>`.
    pub fn named(name: &str) -> Result<Self> {
        if let Some(path) = name.strip_prefix("file:") {
            return Self::load(path);
        }
        match name {
            "torus" | "commutator" => Ok(Self::commutator_torus()),
            "full" | "psl" => Ok(Self::full()),
            _ => match name.strip_prefix("gamma").and_then(|n| n.parse::<u64>().ok()) {
                Some(level) => Self::congruence(level),
                None => Err(Error::Parse(format!("unknown group {name:?}"))),
            },
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Subgroup generated by `gens`, by coset enumeration over ⟨σ, ρ | σ², ρ³⟩.
    pub fn from_generators(gens: &[MoebiusMap], max_cosets: usize) -> Result<Self> {
        let words: Vec<Vec<Gen>> = gens.iter().map(|g| g.word_in_generators()).collect();
        let (sigma, rho) = todd_coxeter::enumerate(&words, max_cosets)?;
        Self::from_tables(sigma, rho)
    }

    pub fn index(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma_table(&self) -> &[u32] {
        &self.sigma
    }

    pub fn rho_table(&self) -> &[u32] {
        &self.rho
    }

    pub fn act(&self, coset: u32, g: Gen) -> u32 {
        match g {
            Gen::S => self.sigma[coset as usize],
            Gen::R => self.rho[coset as usize],
            Gen::R2 => self.rho[self.rho[coset as usize] as usize],
        }
    }

    pub fn act_word(&self, coset: u32, word: &[Gen]) -> u32 {
        word.iter().fold(coset, |c, &g| self.act(c, g))
    }

    /// Index of the coset `K·m`.
    pub fn coset_of(&self, m: &MoebiusMap) -> u32 {
        self.act_word(0, &m.word_in_generators())
    }

    pub fn contains(&self, m: &MoebiusMap) -> bool {
        self.coset_of(m) == 0
    }

    /// Breadth-first coset representatives; `coset_reps()[i]` lies in coset `i`.
    pub fn coset_reps(&self) -> &[MoebiusMap] {
        &self.reps
    }

    pub fn coset_rep_words(&self) -> &[Vec<Gen>] {
        &self.rep_words
    }

    pub fn is_torsion_free(&self) -> bool {
        (0..self.index()).all(|i| self.sigma[i] as usize != i && self.rho[i] as usize != i)
    }

    pub fn is_normal(&self) -> bool {
        // normal iff every coset representative conjugates K into K
        self.schreier_generators()
            .iter()
            .all(|g| self.reps.iter().all(|r| self.contains(&r.compose(g).compose(&r.inverse()))))
    }

    /// Intersection, as the orbit of `(0,0)` in the product action.
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let n2 = other.index();
        let code = |a: u32, b: u32| a as usize * n2 + b as usize;
        let mut ids: HashMap<usize, u32> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        ids.insert(0, 0);
        let (mut sigma, mut rho) = (Vec::new(), Vec::new());
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            for (g, perm) in [(Gen::S, &mut sigma), (Gen::R, &mut rho)] {
                let p = (self.act(a, g), other.act(b, g));
                let next = pairs.len() as u32;
                let id = *ids.entry(code(p.0, p.1)).or_insert_with(|| {
                    pairs.push(p);
                    next
                });
                perm.push(id);
            }
            head += 1;
        }
        Self::from_tables(sigma, rho).expect("orbit of a transitive product action")
    }

    /// `γ K γ⁻¹`, the stabilizer of the coset `K·γ⁻¹`.
    pub fn conjugate_by(&self, gamma: &MoebiusMap) -> Subgroup {
        let base = self.coset_of(&gamma.inverse());
        Self::relabel(&self.sigma, &self.rho, base).expect("same transitive action")
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        other.index() <= self.index()
            && self.index().is_multiple_of(other.index())
            && self.schreier_generators().iter().all(|g| other.contains(g))
    }

    /// Schreier generators from the breadth-first spanning tree, pruned of
    /// tree edges, one element per σ-pair, and one redundant edge per ρ-cycle.
    /// For torsion-free subgroups of index `n` this is a free basis of rank `n/6 + 1`.
    pub fn schreier_generators(&self) -> &[MoebiusMap] {
        self.schreier.get_or_init(|| {
            let n = self.index();
            let mut tree = vec![[false; 2]; n];
            // tree edges: the edge through which each coset was first reached
            for (j, w) in self.rep_words.iter().enumerate().skip(1) {
                let parent = self.act_word(0, &w[..w.len() - 1]) as usize;
                let col = if w[w.len() - 1] == Gen::S { 0 } else { 1 };
                tree[parent][col] = true;
                if col == 0 {
                    tree[j][0] = true;
                }
            }
            let schreier = |i: usize, g: Gen| {
                let j = self.act(i as u32, g) as usize;
                self.reps[i].compose(&g.matrix()).compose(&self.reps[j].inverse())
            };
            let mut gens: Vec<MoebiusMap> = Vec::new();
            let push = |m: MoebiusMap, gens: &mut Vec<MoebiusMap>| {
                if !m.is_identity() && !gens.contains(&m) && !gens.contains(&m.inverse()) {
                    gens.push(m);
                }
            };
            for i in 0..n {
                let j = self.sigma[i] as usize;
                if j == i || (i < j && !tree[i][0]) {
                    push(schreier(i, Gen::S), &mut gens);
                }
            }
            let mut seen = vec![false; n];
            for i in 0..n {
                if seen[i] {
                    continue;
                }
                let cycle = [i, self.rho[i] as usize, self.rho[self.rho[i] as usize] as usize];
                for &c in &cycle {
                    seen[c] = true;
                }
                if cycle[1] == i {
                    push(schreier(i, Gen::R), &mut gens);
                    continue;
                }
                let mut non_tree: Vec<usize> = cycle.iter().copied().filter(|&c| !tree[c][1]).collect();
                non_tree.pop();
                for c in non_tree {
                    push(schreier(c, Gen::R), &mut gens);
                }
            }
            gens
        })
    }

    /// Splits `self` (= K) into right cosets of a subgroup `h` ⊆ K.
    pub fn coset_split(&self, h: &Subgroup) -> Result<CosetSplit> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotContained);
        }
        // H-cosets H·g with g ∈ K are those whose image in K's table is 0.
        let image = h.project_to(self);
        let h_cosets: Vec<u32> = (0..h.index() as u32).filter(|&j| image[j as usize] == 0).collect();
        let reps = h_cosets.iter().map(|&j| h.reps[j as usize].clone()).collect();
        Ok(CosetSplit { k: h_cosets.len(), h_cosets, reps })
    }

    /// For `self` ⊆ `over`, the map from `self`-cosets to `over`-cosets.
    fn project_to(&self, over: &Subgroup) -> Vec<u32> {
        self.rep_words.iter().map(|w| over.act_word(0, w)).collect()
    }

    /// The overgroup whose coset `0` is the union of the `K`-cosets in `block`.
    pub fn overgroup_from_block(&self, block: &[u32]) -> Result<Subgroup> {
        let n = self.index();
        let mut block_of = vec![u32::MAX; n];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut first: Vec<u32> = block.to_vec();
        first.sort_unstable();
        if first.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("block must contain the base coset".into()));
        }
        for &c in &first {
            block_of[c as usize] = 0;
        }
        blocks.push(first);
        let mut head = 0;
        let (mut sigma, mut rho) = (Vec::new(), Vec::new());
        while head < blocks.len() {
            for (g, perm) in [(Gen::S, &mut sigma), (Gen::R, &mut rho)] {
                let mut img: Vec<u32> = blocks[head].iter().map(|&c| self.act(c, g)).collect();
                img.sort_unstable();
                let id = block_of[img[0] as usize];
                let id = if id == u32::MAX {
                    let id = blocks.len() as u32;
                    for &c in &img {
                        if block_of[c as usize] != u32::MAX {
                            return Err(Error::InvalidSubgroup("not a block system".into()));
                        }
                        block_of[c as usize] = id;
                    }
                    blocks.push(img);
                    id
                } else {
                    if blocks[id as usize] != img {
                        return Err(Error::InvalidSubgroup("not a block system".into()));
                    }
                    id
                };
                perm.push(id);
            }
            head += 1;
        }
        Self::from_tables(sigma, rho)
    }

    /// Orbit of coset `i` under right multiplication by elements of `K`.
    pub fn orbit_under_self(&self, i: u32) -> Vec<u32> {
        let gens = self.schreier_generators();
        let words: Vec<Vec<Gen>> =
            gens.iter().flat_map(|g| [g.word_in_generators(), g.inverse().word_in_generators()]).collect();
        let mut seen = vec![false; self.index()];
        let mut out = vec![i];
        seen[i as usize] = true;
        let mut head = 0;
        while head < out.len() {
            let c = out[head];
            for w in &words {
                let d = self.act_word(c, w);
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    out.push(d);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out
    }

    /// Longest shortest-path distance from the base coset in the coset graph.
    pub fn diameter(&self) -> usize {
        self.rep_words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Right cosets `H·c` of `H` inside `K`.
#[derive(Clone, Debug)]
pub struct CosetSplit {
    /// `[K : H]`
    pub k: usize,
    /// Indices in H's table of the cosets lying in `K`.
    pub h_cosets: Vec<u32>,
    /// Representatives, elements of `K`, one per coset in `h_cosets` order.
    pub reps: Vec<MoebiusMap>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::eval_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, max_len: usize) -> MoebiusMap {
        let len = rng.gen_range(0..=max_len);
        let word: Vec<Gen> = (0..len).map(|_| [Gen::S, Gen::R, Gen::R2][rng.gen_range(0..3)]).collect();
        eval_word(&word)
    }

    fn mod_pm_identity(m: &MoebiusMap, n: i64) -> bool {
        let n = num_bigint::BigInt::from(n);
        let e: Vec<num_bigint::BigInt> = m.entries().iter().map(|x| ((*x % &n) + &n) % &n).collect();
        let one = num_bigint::BigInt::from(1) % &n;
        let minus = (&n - 1u32) % &n;
        let zero = num_bigint::BigInt::from(0);
        (e[0] == one && e[3] == one && e[1] == zero && e[2] == zero)
            || (e[0] == minus && e[3] == minus && e[1] == zero && e[2] == zero)
    }

    #[test]
    fn congruence_indices() {
        assert_eq!(Subgroup::congruence(2).unwrap().index(), 6);
        assert_eq!(Subgroup::congruence(3).unwrap().index(), 12);
        assert_eq!(Subgroup::congruence(4).unwrap().index(), 24);
        assert!(matches!(Subgroup::congruence(1), Err(Error::InvalidLevel(1))));
    }

    #[test]
    fn congruence_membership_matches_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for level in [2, 3, 4, 5] {
            let k = Subgroup::congruence(level).unwrap();
            for _ in 0..200 {
                let m = random_element(&mut rng, 30);
                assert_eq!(k.contains(&m), mod_pm_identity(&m, level as i64), "{m} mod {level}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let g2 = Subgroup::congruence(2).unwrap();
        assert!(g2.contains(&MoebiusMap::translation(2)));
        assert!(!g2.contains(&MoebiusMap::translation(1)));
        assert!(g2.contains(&MoebiusMap::identity()));
    }

    #[test]
    fn torus_group() {
        let t = Subgroup::commutator_torus();
        assert_eq!(t.index(), 6);
        assert!(t.is_torsion_free());
        assert!(!t.contains(&MoebiusMap::sigma()));
        assert!(t.is_normal());
        assert_eq!(t.schreier_generators().len(), 2);
    }

    #[test]
    fn torsion() {
        assert!(Subgroup::congruence(2).unwrap().is_torsion_free());
        assert!(Subgroup::congruence(3).unwrap().is_torsion_free());
        assert!(!Subgroup::full().is_torsion_free());
    }

    #[test]
    fn intersections() {
        let g2 = Subgroup::congruence(2).unwrap();
        let g3 = Subgroup::congruence(3).unwrap();
        let g6 = Subgroup::congruence(6).unwrap();
        let i = g2.intersect(&g3);
        assert_eq!(i.index(), 72);
        assert_eq!(i, g6);
        assert_eq!(g2.intersect(&g2), g2);
        assert_eq!(g2.intersect(&Subgroup::full()), g2);
    }

    #[test]
    fn schreier_generators_regenerate() {
        let full = Subgroup::full();
        assert_eq!(full.schreier_generators(), &[MoebiusMap::sigma(), MoebiusMap::rho()]);
        for k in [
            Subgroup::congruence(2).unwrap(),
            Subgroup::congruence(3).unwrap(),
            Subgroup::congruence(4).unwrap(),
            Subgroup::commutator_torus(),
        ] {
            let gens = k.schreier_generators();
            assert!(gens.iter().all(|g| k.contains(g)));
            assert_eq!(gens.len(), k.index() / 6 + 1);
            let rebuilt = Subgroup::from_generators(gens, 100_000).unwrap();
            assert_eq!(rebuilt, k);
        }
        assert_eq!(Subgroup::congruence(2).unwrap().schreier_generators().len(), 2);
    }

    #[test]
    fn coset_splits() {
        let g2 = Subgroup::congruence(2).unwrap();
        let g4 = Subgroup::congruence(4).unwrap();
        let g6 = Subgroup::congruence(6).unwrap();
        let s = g2.coset_split(&g4).unwrap();
        assert_eq!(s.k, 4);
        assert!(s.reps.iter().all(|r| g2.contains(r)));
        let cosets: std::collections::HashSet<u32> = s.reps.iter().map(|r| g4.coset_of(r)).collect();
        assert_eq!(cosets.len(), 4);
        assert_eq!(g2.coset_split(&g2).unwrap().k, 1);
        assert_eq!(g2.coset_split(&g6).unwrap().k, 12);
        assert!(matches!(g4.coset_split(&g2), Err(Error::NotContained)));
    }

    #[test]
    fn conjugation_moves_base_point() {
        let g = MoebiusMap::new(2, 1, 1, 1).unwrap();
        let k = Subgroup::congruence(2).unwrap();
        assert_eq!(k.conjugate_by(&g), k);
        let low = low_index_subgroups(6, true);
        let non_normal = low.iter().find(|k| !k.is_normal()).expect("non-normal index-6 subgroup");
        let c = non_normal.conjugate_by(&g);
        for x in non_normal.schreier_generators() {
            assert!(c.contains(&g.compose(x).compose(&g.inverse())));
        }
    }

    #[test]
    fn stabilizer_block() {
        let g2 = Subgroup::congruence(2).unwrap();
        assert_eq!(g2.overgroup_from_block(&[0, 1, 2, 3, 4, 5]).unwrap(), Subgroup::full());
        assert_eq!(g2.overgroup_from_block(&[0]).unwrap(), g2);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let k = Subgroup::congruence(3).unwrap();
        let back: Subgroup = serde_json::from_str(&k.to_json()).unwrap();
        assert_eq!(back, k);
        assert!(serde_json::from_str::<Subgroup>(r#"{"index":2,"sigma":[0,1],"rho":[0,1]}"#).is_err());
        assert!(serde_json::from_str::<Subgroup>(r#"{"index":3,"sigma":[1,0,2],"rho":[0,1,2]}"#).is_err());
    }

    #[test]
    fn torsion_free_agrees_with_elliptic_search() {
        // brute force over conjugates g·σ·g⁻¹, g·ρ·g⁻¹ with short words g
        let mut words: Vec<Vec<Gen>> = vec![vec![]];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for g in [Gen::S, Gen::R, Gen::R2] {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(crate::moebius::reduce_word(v));
                }
            }
            words.extend(next);
            words.sort_by_key(|w| format!("{w:?}"));
            words.dedup();
        }
        let elements: Vec<MoebiusMap> = words.iter().map(|w| eval_word(w)).collect();
        let mut catalog = low_index_subgroups(6, false);
        catalog.push(Subgroup::congruence(3).unwrap());
        for k in catalog {
            let has_elliptic = elements.iter().any(|g| {
                let gi = g.inverse();
                k.contains(&g.compose(&MoebiusMap::sigma()).compose(&gi))
                    || k.contains(&g.compose(&MoebiusMap::rho()).compose(&gi))
            });
            assert_eq!(k.is_torsion_free(), !has_elliptic, "{k:?}");
        }
    }
}
