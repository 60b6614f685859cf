use super::*;

#[test]
fn catalog_contents() {
    let six: Vec<String> = catalog(6).into_iter().map(|c| c.name).collect();
    assert_eq!(six.len(), 5);
    assert!(six.contains(&"gamma2".to_string()) && six.contains(&"torus".to_string()));
    let twelve = catalog(12);
    assert!(twelve.iter().any(|c| c.name == "gamma3"));
    assert!(twelve.iter().all(|c| c.group.is_torsion_free() && c.group.index() <= 12));
}

#[test]
fn edges_at_index_six() {
    let edges = enumerate_edges(6).unwrap();
    // Γ(2) and the torus group flip all three orbits; the Γ₀(4)-type
    // groups only one each
    assert_eq!(edges.len(), 9);
    assert_eq!(edges.iter().filter(|e| e.group_name.starts_with("index6")).count(), 3);
    for e in &edges {
        assert!(e.generator_maps_basepoint(), "{e:?}");
        assert_eq!(e.inverted(), e.group_name == "torus", "{e:?}");
    }
    assert!(matches!(enumerate_edges(5), Err(Error::Precondition(_))));
}

#[test]
fn chosen_generators_fix_or_flip_e0() {
    let edges = enumerate_edges(6).unwrap();
    let e0 = OrientedGeodesic::standard();
    for e in edges.iter().filter(|e| e.group_name == "gamma2") {
        let image = e.chosen_generator().eval_oriented(&e0);
        if e.through_e0 {
            assert_eq!(image.to_string(), "1/1->-1/1");
        } else {
            assert_eq!(image, e0);
        }
    }
}

#[test]
fn gamma_e0_construction() {
    let (m, swapped) = gamma_e0_parabolic(&"1..1/0".parse().unwrap(), true).unwrap();
    assert_eq!(m, MoebiusMap::rho());
    assert!(!swapped);
    let (m, _) = gamma_e0_parabolic(&"-1..0".parse().unwrap(), false).unwrap();
    assert_eq!(m.apply_oriented(&OrientedGeodesic::standard()).to_string(), "-1/1->0/1");
    // agrees with the solver-based construction
    for e in ["1..1/0", "-1..1/0", "2..1/0"] {
        let g: Geodesic = e.parse().unwrap();
        assert_eq!(gamma_e0_parabolic(&g, true).unwrap().0, crate::complex::gamma_e0(&g).unwrap().0);
    }
    for e in ["0..1", "-1..0", "0..1/2"] {
        let g: Geodesic = e.parse().unwrap();
        assert_eq!(gamma_e0_parabolic(&g, false).unwrap().0, crate::complex::gamma_e0(&g).unwrap().0);
    }
    assert!(gamma_e0_parabolic(&"1..2".parse().unwrap(), true).is_err());
}

#[test]
fn redundancy_identity() {
    let edges = enumerate_edges(6).unwrap();
    let e = &edges[0];
    let r = redundancy_relation(e, e, &MoebiusMap::identity()).unwrap();
    assert!(r.verified);
    assert_eq!(r.element, Some(MoebiusMap::identity()));
}

#[test]
fn redundancy_across_gamma2_edges() {
    let edges = enumerate_edges(6).unwrap();
    let g2: Vec<_> = edges.iter().filter(|e| e.group_name == "gamma2").collect();
    let farey = Tessellation::farey(&Subgroup::congruence(2).unwrap());
    let mut checked = 0;
    for e in &g2 {
        for gamma in [MoebiusMap::rho(), MoebiusMap::sigma(), MoebiusMap::translation(1)] {
            let l = farey.edge_orbit_of(&gamma.apply_geodesic(&e.edge)).unwrap();
            let ep = g2.iter().find(|x| x.label == l).unwrap();
            let r = redundancy_relation(e, ep, &gamma).unwrap();
            assert!(r.verified, "{e:?} {gamma}");
            checked += 1;
        }
    }
    assert_eq!(checked, 9);
}

#[test]
fn stabilizer_scan_small() {
    let scan = scan_stabilizers(6, 2).unwrap();
    assert!(scan.unique_full_stabilizer);
    assert!(scan.entries.iter().any(|e| e.distance == 2));
    assert!(scan.entries.iter().filter(|e| e.distance == 0).all(|e| e.stabilizer_index == 1));
}

#[test]
fn presentation_at_twelve() {
    let doc = emit_presentation(12).unwrap();
    let bad: Vec<_> = doc.relations.iter().filter(|r| !r.verified).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    for item in ['a', 'b', 'c', 'd'] {
        assert!(doc.relations.iter().any(|r| r.item == item), "no {item} records");
    }
    assert!(doc.relations.iter().any(|r| r.cell_kind == Some(CellKind::Pentagon)));
    assert!(doc.relations.iter().any(|r| r.cell_kind == Some(CellKind::Coset)));
    let back = PresentationDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(back.relations.len(), doc.relations.len());
    assert_eq!(back.to_json(), doc.to_json());
}
