//! Runs the acceptance criteria in order, printing one line per criterion.
//! Exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use solenoid::charmap::{conjugated_subgroup, CharMap};
use solenoid::complex::{
    coset_cell, edge_isotropy, flip_path, inversion_witness, pentagon_cell, pentagon_pairs, relation_element, scramble,
    square_cell, square_pairs, suborbits, CellKind, ComplexEdge, Prediction, DEFAULT_BUDGET,
};
use solenoid::moebius::{eval_word, solve_edge_map, Gen};
use solenoid::presentation::{emit_presentation, scan_stabilizers};
use solenoid::{ExtendedRational, Geodesic, MoebiusMap, OrientedGeodesic, Subgroup, Tessellation};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t <= limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn gamma(n: u64) -> Arc<Subgroup> {
    Arc::new(Subgroup::congruence(n).unwrap())
}

fn random_element(rng: &mut ChaCha8Rng, max_len: usize) -> MoebiusMap {
    let n = rng.gen_range(0..=max_len);
    let word: Vec<Gen> = (0..n).map(|_| [Gen::S, Gen::R, Gen::R2][rng.gen_range(0..3)]).collect();
    eval_word(&word)
}

fn pentagons() -> Outcome {
    let start = Instant::now();
    let k = gamma(3);
    let pairs = pentagon_pairs(&k);
    check(!pairs.is_empty(), || "no admissible pairs".into())?;
    let mut nontrivial = 0;
    for (e1, e2) in &pairs {
        let cell = pentagon_cell(&k, e1, e2).map_err(|e| e.to_string())?;
        check(cell.path.len() == 5 && cell.is_closed(), || format!("{e1}, {e2}: path does not close"))?;
        let r = relation_element(&cell).map_err(|e| e.to_string())?;
        check(r.holds, || format!("{e1}, {e2}: relation fails"))?;
        match r.prediction {
            Prediction::Identity => check(r.element.is_identity(), || format!("{e1}, {e2}: expected id"))?,
            Prediction::GammaE0 { .. } => nontrivial += 1,
            Prediction::Sigma => return Err(format!("{e1}, {e2}: unexpected σ prediction")),
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} pentagons close, {nontrivial} with a nontrivial element", pairs.len()))
}

fn squares() -> Outcome {
    let start = Instant::now();
    let k = gamma(3);
    let pairs = square_pairs(&k);
    check(!pairs.is_empty(), || "no admissible pairs at Γ(3)".into())?;
    let sigma = MoebiusMap::sigma();
    for (e1, e2) in &pairs {
        let cell = square_cell(&k, e1, e2).map_err(|e| e.to_string())?;
        check(cell.path.len() == 4 && cell.is_closed(), || format!("{e1}, {e2}: path does not close"))?;
        let r = relation_element(&cell).map_err(|e| e.to_string())?;
        check(r.holds, || format!("{e1}, {e2}: relation fails"))?;
        check(r.element.is_identity() || r.element == sigma, || format!("{e1}, {e2}: element {}", r.element))?;
    }
    let none = square_pairs(&gamma(2)).len();
    check(none == 0, || format!("Γ(2) has {none} square pairs"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} squares close at Γ(3); Γ(2) has none", pairs.len()))
}

fn cosets() -> Outcome {
    let start = Instant::now();
    let (k, sub) = (gamma(2), gamma(4));
    let t = Tessellation::farey_arc(k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    let mut ratio = 0;
    for label in 0..t.label_count() {
        let flipped = t.flip(label).map_err(|e| e.to_string())?.0;
        let refined = flipped.refine_arc(sub.clone()).map_err(|e| e.to_string())?;
        let n = suborbits(&flipped, &refined, label).len();
        ratio = n;
        let mut orderings = vec![(0..n).collect::<Vec<_>>()];
        for _ in 0..10 {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(&mut rng);
            orderings.push(o);
        }
        for o in &orderings {
            let cell = coset_cell(&k, &sub, &t.orbit_rep(label), o).map_err(|e| e.to_string())?;
            check(cell.path.len() == n + 1 && cell.is_closed(), || {
                format!("label {label}, {o:?}: path does not close")
            })?;
            let r = relation_element(&cell).map_err(|e| e.to_string())?;
            check(r.holds, || format!("label {label}, {o:?}: relation fails"))?;
            check(r.element.is_identity() || r.element == MoebiusMap::sigma(), || format!("element {}", r.element))?;
            count += 1;
        }
    }
    check(ratio == 4, || format!("[Γ(2):Γ(4)] reported as {ratio}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{count} coset cells close (k = {ratio}, {}-edge paths)", ratio + 1))
}

fn conjugation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for n in [2, 3] {
        let k = gamma(n);
        let t = Tessellation::farey_arc(k.clone());
        for _ in 0..25 {
            let depth = rng.gen_range(1..=4);
            let s = scramble(&t, depth, rng.gen()).map_err(|e| e.to_string())?;
            let h = Arc::new(CharMap::distinguished(Arc::new(s.clone())));
            let c = conjugated_subgroup(&h).map_err(|e| format!("Γ({n}) {:?}: {e}", s.history()))?;
            check(c.index() == k.index(), || format!("Γ({n}) {:?}: index {}", s.history(), c.index()))?;
            count += 1;
        }
    }
    Ok(format!("{count} conjugated subgroups with matching index"))
}

fn connectivity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut longest = [0; 2];
    // Γ(2) as required; Γ(3) has a richer flip graph and longer paths
    for (i, n) in [2, 3].into_iter().enumerate() {
        let t = Tessellation::farey_arc(gamma(n));
        for _ in 0..20 {
            let len = rng.gen_range(1..=4);
            let s = scramble(&t, len, rng.gen()).map_err(|e| e.to_string())?;
            let path = flip_path(&t, &s, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            check(path.len() <= len, || format!("Γ({n}): path {path:?} longer than scramble of {len}"))?;
            let end = t.flip_sequence(&path).map_err(|e| e.to_string())?;
            check(end.equals(&s), || format!("Γ({n}): replay of {path:?} misses the target"))?;
            longest[i] = longest[i].max(path.len());
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("20 scrambles reconnected at each of Γ(2), Γ(3); longest paths {}, {}", longest[0], longest[1]))
}

fn inversions() -> Outcome {
    let k = Arc::new(Subgroup::commutator_torus());
    let t = Arc::new(Tessellation::farey_arc(k.clone()));
    for l in 0..t.label_count() {
        let edge = ComplexEdge::flip(t.clone(), l).map_err(|e| e.to_string())?;
        let w = edge_isotropy(&edge)
            .map_err(|e| e.to_string())?
            .witness
            .ok_or_else(|| format!("torus edge {l} has no inversion witness"))?;
        check(w.order_four, || format!("edge {l}: k⁴ ≠ id"))?;
        check(w.square_in_stabilizer && !w.square_in_group, || format!("edge {l}: k² = {} misplaced", w.square))?;
    }
    let mut certified = 0;
    for n in [2, 3] {
        let t = Arc::new(Tessellation::farey_arc(gamma(n)));
        for l in 0..t.label_count() {
            let edge = ComplexEdge::flip(t.clone(), l).map_err(|e| e.to_string())?;
            if inversion_witness(&edge).map_err(|e| e.to_string())?.is_none() {
                certified += 1;
            }
        }
    }
    check(certified > 0, || "no non-invertible edge at Γ(2) or Γ(3)".into())?;
    Ok(format!("{} torus edges inverted; {certified} edges at Γ(2), Γ(3) not invertible", t.label_count()))
}

fn stabilizers() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for max in [6, 12] {
        let scan = scan_stabilizers(max, 2).map_err(|e| e.to_string())?;
        let full: Vec<_> = scan.entries.iter().filter(|x| x.stabilizer_index == 1).collect();
        check(scan.unique_full_stabilizer, || format!("index ≤ {max}: {} full-stabilizer vertices", full.len()))?;
        check(full.iter().all(|x| x.distance == 0), || format!("index ≤ {max}: full stabilizer away from τ*"))?;
        parts.push(format!("{} vertices at index ≤ {max}", scan.entries.len()));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("only τ* has full stabilizer ({})", parts.join(", ")))
}

/// The brute-force side of the edge oracle: all PSL(2,Z) elements with
/// entries in [−50, 50], sign-normalized.
fn small_matrices() -> Vec<[i64; 4]> {
    let mut out = HashSet::new();
    let r = -50i64..=50;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                let ds: Vec<i64> = if a == 0 {
                    if b * c == -1 {
                        r.clone().collect()
                    } else {
                        vec![]
                    }
                } else if (1 + b * c) % a == 0 {
                    vec![(1 + b * c) / a]
                } else {
                    vec![]
                };
                for d in ds.into_iter().filter(|d| r.contains(d)) {
                    let m = [a, b, c, d];
                    let neg = m.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
                    out.insert(if neg { m.map(|x| -x) } else { m });
                }
            }
        }
    }
    out.into_iter().collect()
}

fn normalized(p: i64, q: i64) -> (i64, i64) {
    let g = num_integer::gcd(p, q);
    let (p, q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

fn endpoints(g: &Geodesic) -> [(i64, i64); 2] {
    let [x, y] = g.endpoints();
    [x, y].map(|x| (x.numer().try_into().unwrap(), x.denom().try_into().unwrap()))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let all = small_matrices();
    let e0 = OrientedGeodesic::standard().unoriented();
    // 200 pairs: images of e0 under short words, and a few non-Farey geodesics
    let mut pairs = Vec::new();
    while pairs.len() < 200 {
        let f = random_element(&mut rng, 4).apply_geodesic(&e0);
        let g = if pairs.len() % 10 == 9 {
            Geodesic::new(ExtendedRational::integer(0), ExtendedRational::integer(rng.gen_range(2..6))).unwrap()
        } else {
            random_element(&mut rng, 4).apply_geodesic(&e0)
        };
        pairs.push((f, g));
    }
    for (f, g) in &pairs {
        let [v1, v2] = endpoints(f);
        let target: HashSet<(i64, i64)> = endpoints(g).into_iter().collect();
        let brute: HashSet<[i64; 4]> = all
            .iter()
            .filter(|[a, b, c, d]| {
                let img = |(p, q): (i64, i64)| normalized(a * p + b * q, c * p + d * q);
                let got: HashSet<_> = [img(v1), img(v2)].into_iter().collect();
                got == target
            })
            .copied()
            .collect();
        let solved: HashSet<[i64; 4]> =
            solve_edge_map(f, g).iter().map(|m| m.entries().map(|x| i64::try_from(x).unwrap())).collect();
        check(brute == solved, || format!("{f} → {g}: brute {brute:?}, solved {solved:?}"))?;
    }
    for _ in 0..1000 {
        let m = random_element(&mut rng, 60);
        let back = eval_word(&m.word_in_generators());
        check(back == m, || format!("{m} round-trips to {back}"))?;
    }
    for i in 0..500 {
        let n = 2 + (i % 6) as i64;
        let k = Subgroup::congruence(n as u64).unwrap();
        let m = random_element(&mut rng, 40);
        let [a, b, c, d] = m.entries().map(|x| (i64::try_from(x % n).unwrap() + n) % n);
        let one = |x: i64| x == 1 % n;
        let minus = |x: i64| x == (n - 1) % n;
        let expected = b == 0 && c == 0 && ((one(a) && one(d)) || (minus(a) && minus(d)));
        check(k.contains(&m) == expected, || format!("Γ({n}) membership of {m}"))?;
    }
    Ok(format!("{} small matrices; 200 edge pairs, 1000 words, 500 memberships agree", all.len()))
}

fn presentation() -> Outcome {
    let doc = emit_presentation(12).map_err(|e| e.to_string())?;
    let bad: Vec<_> = doc.relations.iter().filter(|r| !r.verified).collect();
    check(bad.is_empty(), || format!("{} unverified records, first: {}", bad.len(), bad[0].statement))?;
    let cells = doc.relations.iter().filter(|r| r.cell_kind.is_some()).count();
    check(doc.relations.iter().filter(|r| r.cell_kind.is_some()).all(|r| r.element == r.predicted), || {
        "a cell record differs from its prediction".into()
    })?;
    let redundancy: Vec<_> = doc.relations.iter().filter(|r| r.item == 'd').collect();
    check(!redundancy.is_empty(), || "no redundancy records".into())?;
    check(redundancy.iter().all(|r| r.witnesses.len() >= 20), || {
        "redundancy record with fewer than 20 witnesses".into()
    })?;
    let pentagons = doc.relations.iter().any(|r| r.cell_kind == Some(CellKind::Pentagon));
    check(pentagons, || "no pentagon records".into())?;
    Ok(format!("{} records verified ({cells} cells, {} redundancy)", doc.relations.len(), redundancy.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pentagon relation at Γ(3)", pentagons),
        ("square relation at Γ(3), none at Γ(2)", squares),
        ("coset relation Γ(2) ⊃ Γ(4)", cosets),
        ("conjugated subgroup index", conjugation),
        ("flip connectivity at Γ(2)", connectivity),
        ("inversions at the torus group", inversions),
        ("stabilizer scan", stabilizers),
        ("oracle equivalence", oracles),
        ("presentation at index 12", presentation),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
