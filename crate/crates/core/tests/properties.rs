use proptest::prelude::*;

use platonic_core::io::{from_json, to_json};
use platonic_core::unfolding::{cocycle, holonomy_from_cycle_defects, monodromy_group, unfold};
use platonic_core::{Pair, TiledSurface};

/// Connected surfaces from a random perfect matching of the `m * p` slots.
fn surfaces() -> impl Strategy<Value = TiledSurface> {
    (3usize..=7, 1usize..=5)
        .prop_flat_map(|(p, m)| {
            let m = if (m * p) % 2 == 1 { m + 1 } else { m };
            (
                Just(p),
                Just(m),
                Just((0..m * p).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_filter_map("disconnected gluing", |(p, m, order)| {
            let mut adj = vec![vec![Pair::new(0, 0); p]; m];
            for two in order.chunks(2) {
                let (x, y) = (two[0], two[1]);
                adj[x / p][x % p] = Pair::new(y / p, y % p);
                adj[y / p][y % p] = Pair::new(x / p, x % p);
            }
            TiledSurface::new(p, adj).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cocycle_is_antisymmetric_with_fixed_parity(s in surfaces()) {
        let rho = cocycle(&s).unwrap();
        let n = 2 * s.p();
        for x in s.pairs() {
            let (a, b) = (rho.get(&s, x), rho.get(&s, s.glued(x)));
            prop_assert_eq!((a + b) % n, 0);
            prop_assert_eq!(a % 2, s.p() % 2);
        }
    }

    #[test]
    fn json_round_trip(s in surfaces()) {
        let text = to_json(&s);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rotation_group_acts_freely_on_pairs(s in surfaces()) {
        let rot = s.rotation_group().unwrap();
        prop_assert_eq!(s.pair_count() as u128 % rot.order(), 0);
        for g in rot.elements().iter().filter(|g| !g.is_identity()) {
            prop_assert!((0..s.pair_count()).all(|i| g.apply(i) != i));
        }
    }

    #[test]
    fn euler_characteristic_matches_counts(s in surfaces()) {
        let chi = s.vertex_count() as i64 - s.edge_count() as i64 + s.face_count() as i64;
        prop_assert_eq!(s.euler_characteristic().unwrap(), chi);
        prop_assert_eq!(chi % 2, 0);
        prop_assert!(s.genus().unwrap() >= 0);
    }

    #[test]
    fn unfolding_invariants(s in surfaces()) {
        let u = unfold(&s).unwrap();
        let p = s.p();
        let k = u.k();
        prop_assert_eq!((2 * p) % k, 0);
        prop_assert_eq!(u.face_count(), k * s.face_count());
        let defects = holonomy_from_cycle_defects(&s, u.cocycle());
        prop_assert_eq!(defects.as_slice(), u.holonomy_subgroup());
        let expected_sheets = if p % 2 == 0 { k * s.face_count() } else { k * s.face_count() / 2 };
        prop_assert_eq!(u.sheets().len(), expected_sheets);
        // the cover is a translation surface: every crossing preserves direction
        for i in 0..u.face_count() {
            for a in 0..p {
                let j = u.cross(i, a);
                let back = s.glued(Pair::new(u.faces()[i].face, a)).slot;
                prop_assert_eq!(u.direction(j, back), (u.direction(i, a) + p) % (2 * p));
            }
        }
    }

    #[test]
    fn monodromy_is_transitive(s in surfaces()) {
        let u = unfold(&s).unwrap();
        let (setup, mon) = monodromy_group(&u).unwrap();
        prop_assert!(mon.is_transitive());
        // at least the sheet count; equal exactly when the cover is normal
        let order = mon.checked_order();
        prop_assert!(order.is_none_or(|n| n >= setup.sheet_count() as u128));
        if s.is_rotary().unwrap() {
            prop_assert_eq!(order, Some(setup.sheet_count() as u128));
        }
    }

    #[test]
    fn rotating_slots_preserves_groups(s in surfaces(), seed in any::<u64>()) {
        let offsets: Vec<usize> = (0..s.face_count())
            .map(|f| ((seed >> (f * 3)) as usize) % s.p())
            .collect();
        let t = s.rotate_slots(&offsets);
        prop_assert!(s.isomorphism_to(&t).is_some());
        prop_assert_eq!(s.rotation_group().unwrap().order(), t.rotation_group().unwrap().order());
        prop_assert_eq!(unfold(&s).unwrap().k(), unfold(&t).unwrap().k());
    }
}
