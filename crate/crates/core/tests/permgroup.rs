use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;

use platonic_core::catalog;
use platonic_core::permgroup::{quotient_by_normal, PermError, Permutation, PermutationGroup};

fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn generators() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_and_membership_match_closure((n, gens) in generators(), probe in permutation(7)) {
        let g = PermutationGroup::new(n, gens.clone()).unwrap();
        let elements = closure(n, &gens);
        prop_assert_eq!(g.order(), elements.len() as u128);
        let listed: HashSet<_> = g.elements().into_iter().collect();
        prop_assert_eq!(&listed, &elements);
        if n == 7 {
            prop_assert_eq!(g.contains(&probe).unwrap(), elements.contains(&probe));
        }
    }

    #[test]
    fn product_inverse_and_cycles((n, gens) in generators()) {
        let a = &gens[0];
        let b = gens.last().unwrap();
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(b).inverse(), b.inverse().then(&a.inverse()));
        prop_assert_eq!(Permutation::parse_cycles(&a.to_cycle_string(), n).unwrap(), a.clone());
        for i in 0..n {
            prop_assert_eq!(a.then(b).apply(i), b.apply(a.apply(i)));
        }
    }
}

#[test]
fn quotient_tables_are_groups() {
    for name in ["torus-4-4-2-0", "torus-6-3-1-1", "pi-5", "octahedron"] {
        let s = catalog::lookup(name).unwrap();
        let a = platonic_core::theorems::Analysis::new(&s).unwrap();
        let n = &a.induced.as_ref().unwrap().group;
        let q = quotient_by_normal(&a.rot, n).unwrap();
        let size = q.order();
        assert_eq!(size as u128 * n.order(), a.rot.order(), "{name}");
        for x in 0..size {
            assert_eq!(q.multiply(0, x), x);
            assert_eq!(q.multiply(x, 0), x);
            let row: HashSet<_> = (0..size).map(|y| q.multiply(x, y)).collect();
            assert_eq!(row.len(), size, "{name}: row {x} is not a permutation");
            for y in 0..size {
                for z in 0..size {
                    assert_eq!(
                        q.multiply(q.multiply(x, y), z),
                        q.multiply(x, q.multiply(y, z))
                    );
                }
            }
        }
        assert!(q.is_cyclic(), "{name}");
    }
}

#[test]
fn non_normal_subgroup_is_rejected() {
    let s3 = PermutationGroup::new(
        3,
        vec![
            Permutation::parse_cycles("(0 1)", 3).unwrap(),
            Permutation::parse_cycles("(0 1 2)", 3).unwrap(),
        ],
    )
    .unwrap();
    let h = PermutationGroup::new(3, vec![Permutation::parse_cycles("(0 1)", 3).unwrap()]).unwrap();
    assert!(!h.is_normal_in(&s3).unwrap());
    assert!(matches!(
        quotient_by_normal(&s3, &h),
        Err(PermError::NotNormal)
    ));
}

#[test]
fn large_symmetric_group_order() {
    let n = 40;
    let mut cycle: Vec<usize> = (1..n).collect();
    cycle.push(0);
    let gens = vec![
        Permutation::from_images(cycle).unwrap(),
        Permutation::from_cycles(n, &[[0, 1]]).unwrap(),
    ];
    let g = PermutationGroup::new(n, gens).unwrap();
    assert_eq!(g.checked_order(), None);
    let s20 = PermutationGroup::new(
        20,
        vec![
            Permutation::from_images((1..20).chain([0]).collect()).unwrap(),
            Permutation::from_cycles(20, &[[0, 1]]).unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(s20.order(), (1..=20u128).product());
}
