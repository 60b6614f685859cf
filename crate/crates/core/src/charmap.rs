//! Characteristic maps and their compositions, evaluated exactly on
//! `Q ∪ {∞}`.
//!
//! `h(τ, e)` is the boundary map sending the Farey tessellation onto `τ` with
//! `0 → ∞` going to `e` and triangles matched combinatorially.  A point `q` is
//! reached in the Farey tessellation by a word in `σ` (cross the edge) and
//! `ρ` (turn inside the triangle); replaying that word on `τ`'s darts from `e`
//! gives `h(q)`.  The inverse walks `τ` towards `y` and replays the moves on
//! the Farey tessellation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::moebius::{
    element_sending_zero_to, in_ccw_arc, ExtendedRational, Gen, Geodesic, MoebiusMap, OrientedGeodesic,
};
use crate::subgroup::Subgroup;
use crate::tessellation::Tessellation;

/// `h(τ, e)` with memoized forward and inverse evaluation.
pub struct CharMap {
    tess: Arc<Tessellation>,
    edge: OrientedGeodesic,
    base: (usize, MoebiusMap),
    forward: Mutex<HashMap<ExtendedRational, ExtendedRational>>,
    backward: Mutex<HashMap<ExtendedRational, ExtendedRational>>,
}

impl fmt::Debug for CharMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h(τ[{}], {})", self.tess.label_count(), self.edge)
    }
}

/// An actual dart `κ·L_d` of a tessellation.
#[derive(Clone)]
struct Cursor {
    dart: usize,
    kappa: MoebiusMap,
}

impl Cursor {
    fn step(&self, t: &Tessellation, g: Gen) -> Cursor {
        let darts = t.darts();
        let next = |c: &Cursor| {
            let d = &darts[c.dart];
            Cursor { dart: d.next, kappa: c.kappa.compose(&d.next_glue) }
        };
        match g {
            Gen::S => {
                let d = &darts[self.dart];
                Cursor { dart: d.opp, kappa: self.kappa.compose(&d.opp_glue) }
            }
            Gen::R => next(self),
            Gen::R2 => next(&next(self)),
        }
    }

    fn geodesic(&self, t: &Tessellation) -> OrientedGeodesic {
        self.kappa.apply_oriented(&t.darts()[self.dart].lift)
    }

    fn apex(&self, t: &Tessellation) -> ExtendedRational {
        self.kappa.apply(&t.apex(self.dart))
    }
}

impl CharMap {
    pub fn new(tess: Arc<Tessellation>, edge: OrientedGeodesic) -> Result<Self> {
        let base = tess.locate(&edge).ok_or_else(|| Error::NotAnEdge(edge.to_string()))?;
        Ok(Self { tess, edge, base, forward: Mutex::default(), backward: Mutex::default() })
    }

    /// `h(τ, e)` for the tessellation's own distinguished edge.
    pub fn distinguished(tess: Arc<Tessellation>) -> Self {
        let e = tess.distinguished().clone();
        Self::new(tess, e).expect("distinguished edge is an edge")
    }

    pub fn tessellation(&self) -> &Arc<Tessellation> {
        &self.tess
    }

    pub fn edge(&self) -> &OrientedGeodesic {
        &self.edge
    }

    fn base_cursor(&self) -> Cursor {
        Cursor { dart: self.base.0, kappa: self.base.1.clone() }
    }

    pub fn eval(&self, q: &ExtendedRational) -> ExtendedRational {
        if let Some(v) = self.forward.lock().expect("memo lock").get(q) {
            return v.clone();
        }
        let word = element_sending_zero_to(q).word_in_generators();
        let t = &self.tess;
        let end = word.iter().fold(self.base_cursor(), |c, &g| c.step(t, g));
        let v = end.geodesic(t).start;
        self.forward.lock().expect("memo lock").insert(q.clone(), v.clone());
        v
    }

    /// Moves in `τ` from `e` to a dart starting at `y`.
    fn walk_to(&self, y: &ExtendedRational) -> Vec<Gen> {
        let t = &self.tess;
        let mut cur = self.base_cursor();
        let mut moves = Vec::new();
        loop {
            let OrientedGeodesic { start: s, end: e } = cur.geodesic(t);
            let p = cur.apex(t);
            if *y == s {
                return moves;
            }
            if *y == e {
                moves.push(Gen::R);
                return moves;
            }
            if *y == p {
                moves.push(Gen::R2);
                return moves;
            }
            // the triangle (s, e, p) lies to the right of s → e, so p is in
            // the ccw arc from s to e; cross whichever side separates it from y
            let turn = if in_ccw_arc(&e, y, &s) {
                None
            } else if in_ccw_arc(&p, y, &e) {
                Some(Gen::R)
            } else {
                Some(Gen::R2)
            };
            if let Some(g) = turn {
                cur = cur.step(t, g);
                moves.push(g);
            }
            cur = cur.step(t, Gen::S);
            moves.push(Gen::S);
        }
    }

    pub fn eval_inverse(&self, y: &ExtendedRational) -> ExtendedRational {
        if let Some(v) = self.backward.lock().expect("memo lock").get(y) {
            return v.clone();
        }
        let moves = self.walk_to(y);
        let v = crate::moebius::eval_word(&moves).apply(&ExtendedRational::zero());
        self.backward.lock().expect("memo lock").insert(y.clone(), v.clone());
        v
    }
}

#[derive(Clone, Debug)]
pub enum Atom {
    Char(Arc<CharMap>),
    CharInverse(Arc<CharMap>),
    Moebius(MoebiusMap),
}

impl Atom {
    fn eval(&self, q: &ExtendedRational) -> ExtendedRational {
        match self {
            Atom::Char(h) => h.eval(q),
            Atom::CharInverse(h) => h.eval_inverse(q),
            Atom::Moebius(m) => m.apply(q),
        }
    }

    fn inverse(&self) -> Atom {
        match self {
            Atom::Char(h) => Atom::CharInverse(h.clone()),
            Atom::CharInverse(h) => Atom::Char(h.clone()),
            Atom::Moebius(m) => Atom::Moebius(m.inverse()),
        }
    }
}

/// A composition of atoms, applied right to left.
#[derive(Clone, Debug, Default)]
pub struct ModularMap {
    atoms: Vec<Atom>,
}

impl ModularMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn moebius(m: MoebiusMap) -> Self {
        Self { atoms: vec![Atom::Moebius(m)] }
    }

    pub fn characteristic(h: Arc<CharMap>) -> Self {
        Self { atoms: vec![Atom::Char(h)] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModularMap) -> ModularMap {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        ModularMap { atoms }
    }

    pub fn inverse(&self) -> ModularMap {
        ModularMap { atoms: self.atoms.iter().rev().map(Atom::inverse).collect() }
    }

    pub fn eval(&self, q: &ExtendedRational) -> ExtendedRational {
        self.atoms.iter().rev().fold(q.clone(), |x, a| a.eval(&x))
    }

    pub fn eval_geodesic(&self, g: &Geodesic) -> Geodesic {
        let [a, b] = g.endpoints();
        Geodesic::new(self.eval(a), self.eval(b)).expect("maps are injective")
    }

    pub fn eval_oriented(&self, g: &OrientedGeodesic) -> OrientedGeodesic {
        OrientedGeodesic::new(self.eval(&g.start), self.eval(&g.end)).expect("maps are injective")
    }

    /// The Möbius map agreeing with `self` at `0, ∞, 1`, if those values are
    /// realized by an element of PSL(2,Z); verified at [`WITNESS_POINTS`].
    pub fn as_moebius(&self) -> Result<MoebiusMap> {
        let m = interpolate(
            &self.eval(&ExtendedRational::zero()),
            &self.eval(&ExtendedRational::infinity()),
            &self.eval(&ExtendedRational::integer(1)),
        )?;
        for x in witness_points() {
            if self.eval(&x) != m.apply(&x) {
                return Err(Error::NotMoebius(format!("disagrees with {m} at {x}")));
            }
        }
        Ok(m)
    }
}

/// Ten points checked after three-point interpolation.
pub const WITNESS_POINTS: [(i64, i64); 10] =
    [(2, 1), (1, 2), (-1, 1), (-2, 1), (3, 1), (1, 3), (-1, 2), (2, 3), (5, 2), (-3, 4)];

pub fn witness_points() -> impl Iterator<Item = ExtendedRational> {
    WITNESS_POINTS.iter().map(|&(p, q)| ExtendedRational::new(p, q).expect("valid"))
}

/// The element of PSL(2,Z) with `0 ↦ a`, `∞ ↦ b`, `1 ↦ c`.
pub fn interpolate(a: &ExtendedRational, b: &ExtendedRational, c: &ExtendedRational) -> Result<MoebiusMap> {
    if a == b || b == c || a == c {
        return Err(Error::NotMoebius("values at 0, ∞, 1 are not distinct".into()));
    }
    let (a0, a1) = (a.numer().clone(), a.denom().clone());
    let (b0, b1) = (b.numer().clone(), b.denom().clone());
    let (c0, c1) = (c.numer().clone(), c.denom().clone());
    // columns λ·b and μ·a with λ·b + μ·a = c
    let det = &b0 * &a1 - &a0 * &b1;
    let lambda = BigRational::new(&c0 * &a1 - &a0 * &c1, det.clone());
    let mu = BigRational::new(&b0 * &c1 - &c0 * &b1, det.clone());
    let entries = [
        &lambda * BigRational::from(b0),
        &mu * BigRational::from(a0),
        &lambda * BigRational::from(b1),
        &mu * BigRational::from(a1),
    ];
    let d = &entries[0] * &entries[3] - &entries[1] * &entries[2];
    if !d.is_positive() {
        return Err(Error::NotMoebius("orientation reversing".into()));
    }
    let exact_sqrt = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    let (Some(sn), Some(sd)) = (exact_sqrt(d.numer()), exact_sqrt(d.denom())) else {
        return Err(Error::NotMoebius("determinant is not a square".into()));
    };
    let scale = BigRational::new(sd, sn);
    let mut ints = Vec::with_capacity(4);
    for e in entries {
        let v = e * &scale;
        if !v.is_integer() {
            return Err(Error::NotMoebius("non-integral entries".into()));
        }
        ints.push(v.to_integer());
    }
    let [w, x, y, z]: [BigInt; 4] = ints.try_into().expect("four entries");
    debug_assert!((&w * &z - &x * &y).is_one());
    MoebiusMap::from_entries(w, x, y, z)
}

/// `m ∘ g ∘ m⁻¹` as an element of PSL(2,Z).
pub fn conjugate_element(m: &ModularMap, g: &MoebiusMap) -> Result<MoebiusMap> {
    m.compose(&ModularMap::moebius(g.clone())).compose(&m.inverse()).as_moebius()
}

/// `h⁻¹ K h` for `h = h(τ, e)`, rebuilt from conjugated Schreier generators.
pub fn conjugated_subgroup(h: &Arc<CharMap>) -> Result<Subgroup> {
    let k = h.tessellation().group();
    let inv = ModularMap::characteristic(h.clone()).inverse();
    let gens = k.schreier_generators().iter().map(|g| conjugate_element(&inv, g)).collect::<Result<Vec<_>>>()?;
    let sub = Subgroup::from_generators(&gens, 64 * k.index().max(64))?;
    if sub.index() != k.index() {
        return Err(Error::Internal(format!("conjugated subgroup has index {} instead of {}", sub.index(), k.index())));
    }
    Ok(sub)
}

/// `k(τ, e) = h(τ′, e′) ∘ h(τ, e)⁻¹` for the flip of `τ` along `label`.
pub fn whitehead_homeo(t: &Tessellation, e: &OrientedGeodesic, label: usize) -> Result<ModularMap> {
    let marked = Arc::new(t.with_distinguished(e.clone())?);
    let (flipped, _) = marked.flip(label)?;
    let before = Arc::new(CharMap::distinguished(marked));
    let after = Arc::new(CharMap::distinguished(Arc::new(flipped)));
    Ok(ModularMap::from_atoms(vec![Atom::Char(after), Atom::CharInverse(before)]))
}
