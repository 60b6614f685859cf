use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(s: &str) -> Geodesic {
    s.parse().unwrap()
}

fn og(s: &str) -> OrientedGeodesic {
    s.parse().unwrap()
}

fn gamma(n: u64) -> Subgroup {
    Subgroup::congruence(n).unwrap()
}

#[test]
fn farey_counts() {
    for (k, edges, triangles) in
        [(gamma(2), 3, 2), (gamma(3), 6, 4), (Subgroup::commutator_torus(), 3, 2), (gamma(4), 12, 8)]
    {
        let t = Tessellation::farey(&k);
        t.validate().unwrap();
        assert_eq!(t.label_count(), edges);
        assert_eq!(t.triangles().len(), triangles);
        assert_eq!(t.distinguished(), &OrientedGeodesic::standard());
    }
    // torsion groups are allowed
    let full = Tessellation::farey(&Subgroup::full());
    full.validate().unwrap();
    assert_eq!(full.label_count(), 1);
    assert_eq!(full.triangles().len(), 1);
}

#[test]
fn farey_gamma2_orbits() {
    let t = Tessellation::farey(&gamma(2));
    let labels: Vec<usize> = ["0..1/0", "0..1", "1..1/0"].iter().map(|s| t.edge_orbit_of(&g(s)).unwrap()).collect();
    let mut distinct = labels.clone();
    distinct.sort();
    distinct.dedup();
    assert_eq!(distinct.len(), 3);
    assert_eq!(t.edge_orbit_of(&g("2..1/0")), t.edge_orbit_of(&g("0..1/0")));
    assert_eq!(t.edge_orbit_of(&g("-1..1")), None);
    for l in 0..t.label_count() {
        assert_eq!(t.edge_orbit_of(&t.orbit_rep(l)), Some(l));
    }
}

#[test]
fn basic_flip() {
    let t = Tessellation::farey(&gamma(2));
    let l = t.edge_orbit_of(&g("0..1/0")).unwrap();
    let (f, corr) = t.flip(l).unwrap();
    assert!(corr.is_identity());
    f.validate().unwrap();
    assert_eq!(f.orbit_rep(l), g("-1..1"));
    assert_eq!(f.distinguished(), &og("1->-1"));
    assert!(!f.contains_edge(&g("0..1/0")));
    assert!(!f.equals(&t));
    let (back, _) = f.flip(corr.image(l)).unwrap();
    back.validate().unwrap();
    assert!(back.equals(&t));
    // each flip turns the distinguished edge a quarter turn, so two reverse it
    assert_eq!(back.distinguished(), &og("1/0->0"));
}

#[test]
fn flip_gamma3() {
    let t = Tessellation::farey(&gamma(3));
    let l = t.edge_orbit_of(&g("0..1")).unwrap();
    let (f, _) = t.flip(l).unwrap();
    f.validate().unwrap();
    assert_eq!(f.label_count(), 6);
    assert!(!f.equals(&t));
}

#[test]
fn flip_preconditions() {
    let full = Tessellation::farey(&Subgroup::full());
    assert!(matches!(full.flip(0), Err(Error::Torsion)));
    let t = Tessellation::farey(&gamma(2));
    assert!(matches!(t.flip(7), Err(Error::NoSuchOrbit(7))));
}

#[test]
fn equality() {
    let t2 = Tessellation::farey(&gamma(2));
    let t3 = Tessellation::farey(&gamma(3));
    assert!(t2.equals(&t3));
    assert!(t3.equals(&Tessellation::farey(&Subgroup::commutator_torus())));
    let f2 = t2.flip(0).unwrap().0;
    assert!(!f2.equals(&t3));
    // flipping every Γ(4)-orbit lying over the flipped Γ(2)-orbit gives the same tessellation
    let t4 = Tessellation::farey(&gamma(4));
    let over: Vec<usize> = (0..t4.label_count()).filter(|&l| t2.edge_orbit_of(&t4.orbit_rep(l)) == Some(0)).collect();
    assert_eq!(over.len(), 4);
    let f4 = t4.flip_sequence(&over).unwrap();
    assert!(f4.equals(&f2));
    assert!(f2.equals(&f4));
    assert!(!f4.equals(&t4));
}

#[test]
fn refinement() {
    let t = Tessellation::farey(&gamma(2));
    let r4 = t.refine(&gamma(4)).unwrap();
    r4.validate().unwrap();
    assert_eq!(r4.label_count(), 12);
    let r6 = t.refine(&gamma(6)).unwrap();
    r6.validate().unwrap();
    assert_eq!(r6.label_count(), 36);
    assert!(r6.equals(&t));
    let same = t.refine(&gamma(2)).unwrap();
    assert_eq!(same.edge_orbits(), t.edge_orbits());
    assert!(matches!(t.refine(&gamma(3)), Err(Error::NotContained)));
    let f = t.flip(1).unwrap().0;
    let rf = f.refine(&gamma(4)).unwrap();
    rf.validate().unwrap();
    assert!(rf.equals(&f));
    assert!(!rf.equals(&t));
}

#[test]
fn stabilizers() {
    let t = Tessellation::farey(&gamma(2));
    assert_eq!(t.stabilizer(), Subgroup::full());
    // PSL/Γ(2) ≅ S₃ permutes the three orbits; only the σ-type element fixes
    // the orbit of {0,∞}
    let l = t.edge_orbit_of(&g("0..1/0")).unwrap();
    let f = t.flip(l).unwrap().0;
    let s = f.stabilizer();
    assert_eq!(s.index(), 3);
    assert!(gamma(2).is_subgroup_of(&s));
    assert!(s.contains(&MoebiusMap::sigma()));
    assert!(!s.contains(&MoebiusMap::rho()));
    // the torus quotient Z/6 acts on its three orbits through Z/3
    let torus = Tessellation::farey(&Subgroup::commutator_torus());
    for l in 0..3 {
        let s = torus.flip(l).unwrap().0.stabilizer();
        assert_eq!(s.index(), 3);
        assert!(Subgroup::commutator_torus().is_subgroup_of(&s));
    }
}

#[test]
fn transforms() {
    let t = Tessellation::farey(&gamma(3));
    let m = MoebiusMap::new(2, 1, 1, 1).unwrap();
    let moved = t.transform(&m);
    moved.validate().unwrap();
    assert!(moved.equals(&t));
    let f = t.flip(2).unwrap().0;
    let fm = f.transform(&m);
    fm.validate().unwrap();
    assert!(fm.contains_edge(&m.apply_geodesic(&f.orbit_rep(2))));
    assert_eq!(fm.distinguished(), &m.apply_oriented(f.distinguished()));
}

fn random_walk(k: Subgroup, steps: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tessellation::farey(&k);
    let n = k.index();
    for step in 0..steps {
        let l = rng.gen_range(0..t.label_count());
        t = match t.flip(l) {
            Ok((f, _)) => f,
            Err(Error::NotFlippable(..)) => continue,
            Err(e) => panic!("{e}"),
        };
        t.validate().unwrap();
        assert_eq!(t.label_count(), n / 2);
        assert_eq!(t.triangles().len(), n / 3);
        if step % 25 == 0 {
            t.audit_noncrossing(0, 400).unwrap();
        }
    }
    t.audit_noncrossing(2, 2000).unwrap();
}

#[test]
fn random_flips_gamma2() {
    random_walk(gamma(2), 200, 11);
}

#[test]
fn random_flips_gamma3() {
    random_walk(gamma(3), 200, 12);
}

#[test]
fn disjoint_flips_commute() {
    let t = Tessellation::farey(&gamma(3));
    let tris = t.triangles();
    let share = |a: usize, b: usize| {
        tris.iter().any(|c| c.iter().any(|&d| t.label_of_dart(d) == a) && c.iter().any(|&d| t.label_of_dart(d) == b))
    };
    let mut checked = 0;
    for a in 0..t.label_count() {
        for b in 0..t.label_count() {
            if a != b && !share(a, b) {
                let ab = t.flip_sequence(&[a, b]).unwrap();
                let ba = t.flip_sequence(&[b, a]).unwrap();
                assert!(ab.equals(&ba));
                assert_eq!(ab.fingerprint(), ba.fingerprint());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn fingerprints() {
    let t = Tessellation::farey(&gamma(3));
    let f = t.flip(1).unwrap().0;
    assert_ne!(t.fingerprint(), f.fingerprint());
    let back = f.flip(1).unwrap().0;
    assert_eq!(back.fingerprint(), t.fingerprint());
    // re-lifting the darts by group elements does not change the fingerprint
    let k = t.group().schreier_generators()[0].clone();
    let moved = f.transform(&k);
    assert_eq!(moved.group(), f.group());
    assert_eq!(moved.fingerprint(), f.fingerprint());
}

#[test]
fn json_round_trip() {
    let t = Tessellation::farey(&gamma(3)).flip_sequence(&[1, 4]).unwrap();
    let text = t.to_json();
    let back = Tessellation::from_json(&text).unwrap();
    assert!(back.equals(&t));
    assert_eq!(back.distinguished(), t.distinguished());
    assert_eq!(back.history(), &[1, 4]);
    let corrupted = text.replacen("\"next\": 1", "\"next\": 2", 1);
    if corrupted != text {
        assert!(Tessellation::from_json(&corrupted).is_err());
    }
}
