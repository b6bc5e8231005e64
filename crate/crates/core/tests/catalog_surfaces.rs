use platonic_core::catalog::{self, catalog};
use platonic_core::theorems::{full_report, Analysis};
use platonic_core::unfolding::{deck_transformations, monodromy_group, unfold};
use platonic_core::{Error, TiledSurface};

#[test]
fn expected_values_hold() {
    for e in catalog() {
        let want = e.expected.expect("built-in surfaces carry expectations");
        let s = &e.surface;
        assert_eq!(s.schlafli().unwrap(), want.symbol, "{}", e.name);
        assert_eq!(s.genus().unwrap(), want.genus, "{}", e.name);
        assert_eq!(
            s.rotation_group().unwrap().order(),
            want.rot_order as u128,
            "{}",
            e.name
        );
        assert!(s.is_rotary().unwrap(), "{}", e.name);
    }
}

#[test]
fn duality() {
    for e in catalog() {
        let s = &e.surface;
        let d = s.dual().unwrap();
        assert_eq!(
            d.schlafli().unwrap(),
            s.schlafli().unwrap().dual(),
            "{}",
            e.name
        );
        assert_eq!(d.face_count(), s.vertex_count(), "{}", e.name);
        assert_eq!(
            d.euler_characteristic().unwrap(),
            s.euler_characteristic().unwrap()
        );
        assert_eq!(
            d.rotation_group().unwrap().order(),
            s.rotation_group().unwrap().order()
        );
        assert!(
            d.dual().unwrap().isomorphism_to(s).is_some(),
            "{}: dual of dual",
            e.name
        );
    }
}

#[test]
fn platonic_duals_match_catalog() {
    let solid = |n| catalog::platonic_solid(n).unwrap();
    let pairs = [
        ("cube", "octahedron"),
        ("dodecahedron", "icosahedron"),
        ("tetrahedron", "tetrahedron"),
    ];
    for (a, b) in pairs {
        assert!(
            solid(a).dual().unwrap().isomorphism_to(&solid(b)).is_some(),
            "{a} / {b}"
        );
    }
    let bolza_dual = catalog::lookup("bolza-dual").unwrap();
    assert_eq!(bolza_dual.face_count(), 16);
}

#[test]
fn relabelled_cube_has_same_groups() {
    let cube = catalog::platonic_solid("cube").unwrap();
    let turned = cube.rotate_slots(&[1, 2, 3, 0, 1, 2]);
    assert_ne!(turned, cube);
    assert!(cube.isomorphism_to(&turned).is_some());
    assert_eq!(turned.rotation_group().unwrap().order(), 24);
    let (_, mon) = monodromy_group(&unfold(&turned).unwrap()).unwrap();
    assert_eq!(mon.order(), 24);
}

#[test]
fn deck_group_lands_in_rotation_group() {
    for name in ["cube", "octahedron", "bolza", "torus-4-4-1-2"] {
        let s = catalog::lookup(name).unwrap();
        let a = Analysis::new(&s).unwrap();
        let n = a.induced.expect("projection is well defined");
        assert_eq!(n.elements.len(), a.mon.order() as usize, "{name}");
        for g in &n.elements {
            assert!(a.rot.contains(g).unwrap(), "{name}");
        }
        assert!(n.group.is_normal_in(&a.rot).unwrap(), "{name}");
    }
}

#[test]
fn bolza_monodromy_is_transitive() {
    let (setup, mon) = monodromy_group(&unfold(&catalog::bolza()).unwrap()).unwrap();
    assert_eq!(setup.sheet_count(), 48);
    assert!(mon.is_transitive());
    assert_eq!(mon.orbit(0).len(), 48);
}

#[test]
fn chiral_torus_is_not_its_mirror() {
    let a = catalog::torus_map(4, 1, 2).unwrap();
    let b = catalog::torus_map(4, 2, 1).unwrap();
    assert!(a.is_rotary().unwrap() && b.is_rotary().unwrap());
    assert!(a.isomorphism_to(&b).is_none());
}

#[test]
fn two_hexagon_torus_is_not_rotary() {
    let t = catalog::torus_quotient(6, (2, 0), (0, 1)).unwrap();
    assert_eq!(t.face_count(), 2);
    assert_eq!(t.schlafli().unwrap().q, 3);
    assert!(!t.is_rotary().unwrap());
    assert!(matches!(Analysis::new(&t), Err(Error::NotRotary)));
}

#[test]
fn non_normal_cover_is_detected() {
    // two squares with vertex degrees 3, 1, 3, 1: the monodromy group is larger
    // than the fiber, so deck transformations cannot be propagated
    let s = TiledSurface::from_tuples(
        4,
        &[
            vec![(0, 1), (0, 0), (1, 0), (1, 1)],
            vec![(0, 2), (0, 3), (1, 3), (1, 2)],
        ],
    )
    .unwrap();
    let u = unfold(&s).unwrap();
    let (setup, mon) = monodromy_group(&u).unwrap();
    assert_eq!(setup.sheet_count(), 8);
    assert_eq!(mon.order(), 24);
    assert!(matches!(
        deck_transformations(&u),
        Err(Error::NormalityFailure { .. })
    ));
    assert!(!full_report(&s).unwrap().rotary);
}
