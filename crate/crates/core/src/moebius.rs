//! Exact PSL(2,Z) arithmetic on the boundary circle, modelled as `Q ∪ {∞}`.
//!
//! Disk points map to upper-half-plane boundary coordinates by
//! `w ↦ i(1+w)/(1-w)`: `-1 ↦ 0`, `1 ↦ ∞`, `i ↦ -1`, `-i ↦ 1`.  The map is
//! orientation preserving, so counterclockwise on the disk boundary is
//! cyclically increasing order on `R ∪ {∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `Q ∪ {∞}` stored as a primitive integer pair `p/q`.
///
/// Canonical form: `gcd(|p|,|q|) = 1` and `q > 0`, except `∞ = 1/0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    p: BigInt,
    q: BigInt,
}

impl ExtendedRational {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Self::from_pair(p.into(), q.into()).ok_or(Error::Parse("0/0 is not a point".into()))
    }

    /// Normalizes an arbitrary nonzero pair; `None` for `(0,0)`.
    pub fn from_pair(p: BigInt, q: BigInt) -> Option<Self> {
        if p.is_zero() && q.is_zero() {
            return None;
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Some(Self { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Self { p: n.into(), q: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    /// `|p| + |q|`, the height used for canonical choices.
    pub fn height(&self) -> BigInt {
        self.p.abs() + self.q.abs()
    }

    /// Approximate value, `f64::INFINITY` for `∞`. Presentation only.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            return f64::INFINITY;
        }
        let p: f64 = self.p.to_string().parse().unwrap_or(f64::NAN);
        let q: f64 = self.q.to_string().parse().unwrap_or(f64::NAN);
        p / q
    }

    /// 2x2 determinant of the primitive vectors; `±1` exactly for Farey neighbours.
    pub fn cross(&self, other: &Self) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }

    /// Total order on `R ∪ {∞}` with `∞` largest.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let q: BigInt = q.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Self::from_pair(p, q).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
    }
}

/// Cyclic orientation of three distinct boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

/// Positive iff `(x, y, z)` are cyclically increasing on `R ∪ {∞}`
/// (counterclockwise on the disk).
pub fn circular_order(x: &ExtendedRational, y: &ExtendedRational, z: &ExtendedRational) -> Result<Orientation> {
    if x == y || y == z || x == z {
        return Err(Error::DuplicatePoints);
    }
    let lt = |a: &ExtendedRational, b: &ExtendedRational| a.cmp_value(b) == Ordering::Less;
    let positive = (lt(x, y) && lt(y, z)) || (lt(y, z) && lt(z, x)) || (lt(z, x) && lt(x, y));
    Ok(if positive { Orientation::Positive } else { Orientation::Negative })
}

/// Whether `y` lies in the open counterclockwise arc from `a` to `b`.
pub fn in_ccw_arc(a: &ExtendedRational, y: &ExtendedRational, b: &ExtendedRational) -> bool {
    matches!(circular_order(a, y, b), Ok(Orientation::Positive))
}

/// Letters for words in PSL(2,Z) = <σ> * <ρ>.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    /// σ = [0,-1;1,0]
    S,
    /// ρ = [1,-1;1,0]
    R,
    /// ρ² = ρ⁻¹
    R2,
}

impl Gen {
    pub fn matrix(self) -> MoebiusMap {
        match self {
            Gen::S => MoebiusMap::sigma(),
            Gen::R => MoebiusMap::rho(),
            Gen::R2 => MoebiusMap::rho().inverse(),
        }
    }

    pub fn inverse(self) -> Gen {
        match self {
            Gen::S => Gen::S,
            Gen::R => Gen::R2,
            Gen::R2 => Gen::R,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::S => "σ",
            Gen::R => "ρ",
            Gen::R2 => "ρ²",
        })
    }
}

/// Evaluates a word left to right as a matrix product.
pub fn eval_word(word: &[Gen]) -> MoebiusMap {
    word.iter().fold(MoebiusMap::identity(), |acc, g| acc.compose(&g.matrix()))
}

/// Free reduction using σ² = ρ³ = 1.
pub fn reduce_word(word: impl IntoIterator<Item = Gen>) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::new();
    for g in word {
        match (out.last().copied(), g) {
            (Some(Gen::S), Gen::S) | (Some(Gen::R), Gen::R2) | (Some(Gen::R2), Gen::R) => {
                out.pop();
            }
            (Some(Gen::R), Gen::R) => {
                out.pop();
                out.push(Gen::R2);
            }
            (Some(Gen::R2), Gen::R2) => {
                out.pop();
                out.push(Gen::R);
            }
            _ => out.push(g),
        }
    }
    out
}

pub fn inverse_word(word: &[Gen]) -> Vec<Gen> {
    word.iter().rev().map(|g| g.inverse()).collect()
}

/// Element of PSL(2,Z): `[[a,b],[c,d]]`, `ad - bc = 1`, first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MoebiusMap {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::from_entries(a.into(), b.into(), c.into(), d.into())
    }

    pub fn from_entries(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::NotUnimodular(format!("[[{a},{b}],[{c},{d}]]")));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).map(|x| x.is_negative());
        if lead == Some(true) {
            Self { a: -a, b: -b, c: -c, d: -d }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::normalized(1.into(), 0.into(), 0.into(), 1.into())
    }

    pub fn sigma() -> Self {
        Self::normalized(0.into(), (-1).into(), 1.into(), 0.into())
    }

    pub fn rho() -> Self {
        Self::normalized(1.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `T = ρσ = [1,1;0,1]`.
    pub fn translation(k: i64) -> Self {
        Self::normalized(1.into(), k.into(), 0.into(), 1.into())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self::normalized(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn apply(&self, x: &ExtendedRational) -> ExtendedRational {
        let p = &self.a * &x.p + &self.b * &x.q;
        let q = &self.c * &x.p + &self.d * &x.q;
        ExtendedRational::from_pair(p, q).expect("unimodular map sends primitive vectors to nonzero vectors")
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic::new(self.apply(&g.0[0]), self.apply(&g.0[1])).expect("bijection keeps endpoints distinct")
    }

    pub fn apply_oriented(&self, g: &OrientedGeodesic) -> OrientedGeodesic {
        OrientedGeodesic::new(self.apply(&g.start), self.apply(&g.end)).expect("bijection keeps endpoints distinct")
    }

    /// A word `w` over {σ, ρ, ρ²} with `eval_word(w) == self`.
    ///
    /// Euclidean reduction: peel `T^k` with `k = floor(a/c)`, then a σ, until
    /// the lower-left entry vanishes.  `T = ρσ`, `T⁻¹ = σρ²`.
    pub fn word_in_generators(&self) -> Vec<Gen> {
        let (mut a, mut b, mut c, mut d) = (self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone());
        let mut letters = Vec::new();
        let push_t = |letters: &mut Vec<Gen>, k: &BigInt| {
            let (unit, n): ([Gen; 2], BigInt) =
                if k.is_negative() { ([Gen::S, Gen::R2], -k) } else { ([Gen::R, Gen::S], k.clone()) };
            let mut i = BigInt::zero();
            while i < n {
                letters.extend_from_slice(&unit);
                i += 1;
            }
        };
        loop {
            if c.is_zero() {
                // ±[1, b; 0, 1]
                let k = &b * &a;
                push_t(&mut letters, &k);
                break;
            }
            let k = a.div_floor(&c);
            push_t(&mut letters, &k);
            let a1 = &a - &k * &c;
            let b1 = &b - &k * &d;
            letters.push(Gen::S);
            // S⁻¹·[a1,b1;c,d] = [c,d;-a1,-b1] up to sign
            let (na, nb, nc, nd) = (-c, -d, a1, b1);
            a = na;
            b = nb;
            c = nc;
            d = nd;
        }
        reduce_word(letters)
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MoebiusMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '[' && *c != ']').collect();
        let nums: Vec<BigInt> = cleaned
            .split(',')
            .map(|t| t.parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad matrix {s:?}")))?;
        match <[BigInt; 4]>::try_from(nums) {
            Ok([a, b, c, d]) => Self::from_entries(a, b, c, d),
            Err(_) => Err(Error::Parse(format!("bad matrix {s:?}"))),
        }
    }
}

/// Unordered pair of distinct boundary points, stored in increasing order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Geodesic([ExtendedRational; 2]);

impl Geodesic {
    pub fn new(x: ExtendedRational, y: ExtendedRational) -> Result<Self> {
        match x.cmp_value(&y) {
            Ordering::Equal => Err(Error::DuplicatePoints),
            Ordering::Less => Ok(Self([x, y])),
            Ordering::Greater => Ok(Self([y, x])),
        }
    }

    pub fn endpoints(&self) -> &[ExtendedRational; 2] {
        &self.0
    }

    pub fn has_endpoint(&self, x: &ExtendedRational) -> bool {
        self.0[0] == *x || self.0[1] == *x
    }

    /// Whether this is an edge of the Farey tessellation.
    pub fn is_farey(&self) -> bool {
        self.0[0].cross(&self.0[1]).abs().is_one()
    }

    /// Endpoints interleave on the circle (the geodesics cross transversally).
    pub fn crosses(&self, other: &Geodesic) -> bool {
        let [a, b] = &self.0;
        let [c, d] = &other.0;
        if self.has_endpoint(c) || self.has_endpoint(d) {
            return false;
        }
        in_ccw_arc(a, c, b) != in_ccw_arc(a, d, b)
    }

    pub fn height(&self) -> BigInt {
        self.0[0].height() + self.0[1].height()
    }

    pub fn oriented(&self) -> OrientedGeodesic {
        OrientedGeodesic { start: self.0[0].clone(), end: self.0[1].clone() }
    }
}

impl PartialOrd for Geodesic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Geodesic {
    /// Height first, then endpoint values.
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0[0].cmp_value(&other.0[0]))
            .then_with(|| self.0[1].cmp_value(&other.0[1]))
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.0[0], self.0[1])
    }
}

impl fmt::Debug for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Geodesic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s.split_once("..").ok_or_else(|| Error::Parse(format!("bad geodesic {s:?}")))?;
        Self::new(x.parse()?, y.parse()?)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGeodesic {
    pub start: ExtendedRational,
    pub end: ExtendedRational,
}

impl OrientedGeodesic {
    pub fn new(start: ExtendedRational, end: ExtendedRational) -> Result<Self> {
        if start == end {
            return Err(Error::DuplicatePoints);
        }
        Ok(Self { start, end })
    }

    /// `0 → ∞`, the upper-half-plane image of the standard edge `(-1, 1)`.
    pub fn standard() -> Self {
        Self { start: ExtendedRational::zero(), end: ExtendedRational::infinity() }
    }

    /// `1 → -1`, the image of the standard edge after the basic flip.
    pub fn standard_flipped() -> Self {
        Self { start: ExtendedRational::integer(1), end: ExtendedRational::integer(-1) }
    }

    pub fn reversed(&self) -> Self {
        Self { start: self.end.clone(), end: self.start.clone() }
    }

    pub fn unoriented(&self) -> Geodesic {
        Geodesic::new(self.start.clone(), self.end.clone()).expect("distinct endpoints")
    }
}

impl fmt::Display for OrientedGeodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.start, self.end)
    }
}

impl fmt::Debug for OrientedGeodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for OrientedGeodesic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s.split_once("->").ok_or_else(|| Error::Parse(format!("bad oriented geodesic {s:?}")))?;
        Self::new(x.parse()?, y.parse()?)
    }
}

macro_rules! serde_via_string {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_via_string!(ExtendedRational, MoebiusMap, Geodesic, OrientedGeodesic);

/// All `m` in PSL(2,Z) with `m(f) = e` as unordered geodesics (at most two).
///
/// For each endpoint assignment `v₁ ↦ ±w₁`, `v₂ ↦ ±w₂` the determinant fixes
/// the product of the signs, leaving a single PSL candidate `W·S·V⁻¹`.
pub fn solve_edge_map(f: &Geodesic, e: &Geodesic) -> Vec<MoebiusMap> {
    let [v1, v2] = f.endpoints();
    let det_v = v1.p.clone() * &v2.q - &v2.p * &v1.q;
    let mut out = Vec::new();
    for (w1, w2) in [(&e.0[0], &e.0[1]), (&e.0[1], &e.0[0])] {
        let det_w = &w1.p * &w2.q - &w2.p * &w1.q;
        if det_w.abs() != det_v.abs() {
            continue;
        }
        // s1·s2 = det_v / det_w; choose s1 = 1.
        let s2: BigInt = if det_w == det_v { BigInt::one() } else { -BigInt::one() };
        // M = [w1 | s2 w2] · adj(V) / det_v, V = [v1 | v2]
        let (x1, y1) = (&w1.p, &w1.q);
        let (x2, y2) = (&w2.p * &s2, &w2.q * &s2);
        // adj(V) = [v2.q, -v2.p; -v1.q, v1.p]
        let a = x1 * &v2.q - &x2 * &v1.q;
        let b = -(x1 * &v2.p) + &x2 * &v1.p;
        let c = y1 * &v2.q - &y2 * &v1.q;
        let d = -(y1 * &v2.p) + &y2 * &v1.p;
        if [&a, &b, &c, &d].iter().all(|x| x.is_multiple_of(&det_v)) {
            if let Ok(m) = MoebiusMap::from_entries(a / &det_v, b / &det_v, c / &det_v, d / &det_v) {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// The unique element sending the oriented geodesic `from` onto `to`, if any.
pub fn solve_oriented_edge_map(from: &OrientedGeodesic, to: &OrientedGeodesic) -> Option<MoebiusMap> {
    solve_edge_map(&from.unoriented(), &to.unoriented()).into_iter().find(|m| m.apply(&from.start) == to.start)
}

/// Some `g` with `g(0) = x`.
pub fn element_sending_zero_to(x: &ExtendedRational) -> MoebiusMap {
    // g = [a, p; c, q] with a q - p c = 1
    let (p, q) = (x.p.clone(), x.q.clone());
    let eg = q.extended_gcd(&p);
    // eg.x * q + eg.y * p = 1  =>  a = eg.x, c = -eg.y
    let a = eg.x;
    let c = -eg.y;
    MoebiusMap::from_entries(a, p, c, q).expect("Bezout gives det 1")
}
