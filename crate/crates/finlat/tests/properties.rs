//! Property tests over randomized builder parameters and cover relations.

use finlat::builders;
use finlat::classify;
use finlat::lattice::{FiniteLattice, LatticeError};
use finlat::limits::Limits;
use proptest::prelude::*;

fn limits() -> Limits {
    Limits::default()
}

fn arb_lattice() -> impl Strategy<Value = FiniteLattice> {
    prop_oneof![
        (1usize..=8).prop_map(|n| builders::chain(n, &limits()).unwrap()),
        (0u32..=4).prop_map(|k| builders::boolean(k, &limits()).unwrap()),
        (1u64..=120).prop_map(|n| builders::divisor_lattice(n, &limits()).unwrap()),
        (1usize..=6).prop_map(|k| builders::diamond(k, &limits()).unwrap()),
        Just(builders::pentagon(&limits()).unwrap()),
        ((2u64..=20), (1usize..=4)).prop_map(|(n, k)| {
            let a = builders::divisor_lattice(n, &limits()).unwrap();
            let b = builders::chain(k, &limits()).unwrap();
            builders::product(&a, &b, &limits()).unwrap()
        }),
    ]
}

fn brute_force_glb(l: &FiniteLattice, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = l.elements().filter(|&x| l.leq(x, a) && l.leq(x, b)).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&x| l.leq(x, m)))
}

fn brute_force_lub(l: &FiniteLattice, a: usize, b: usize) -> Option<usize> {
    let upper: Vec<usize> = l.elements().filter(|&x| l.leq(a, x) && l.leq(b, x)).collect();
    upper.iter().copied().find(|&m| upper.iter().all(|&x| l.leq(m, x)))
}

proptest! {
    #[test]
    fn order_meet_join_agree(l in arb_lattice()) {
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
                // absorption
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
            }
        }
    }

    #[test]
    fn tables_match_brute_force(l in arb_lattice()) {
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(Some(l.meet(a, b)), brute_force_glb(&l, a, b));
                prop_assert_eq!(Some(l.join(a, b)), brute_force_lub(&l, a, b));
            }
        }
    }

    #[test]
    fn dual_and_interval_identities(l in arb_lattice()) {
        prop_assert_eq!(&l.dual().dual(), &l);
        let view = l.interval(l.bottom(), l.top()).unwrap();
        prop_assert_eq!(view.as_lattice(), &l);
    }

    #[test]
    fn hollow_equals_dual_irreducibility(l in arb_lattice()) {
        let dual = l.dual();
        for p in l.elements() {
            prop_assert_eq!(
                classify::is_strongly_hollow(&l, p),
                classify::is_strongly_irreducible(&dual, p)
            );
            prop_assert_eq!(classify::is_hollow(&l, p), classify::is_irreducible(&dual, p));
        }
    }

    #[test]
    fn generator_restricted_check_agrees(l in arb_lattice()) {
        // join-irreducible elements plus bottom always generate
        let gens: Vec<usize> = l
            .elements()
            .filter(|&x| {
                x == l.bottom()
                    || l.join_all(l.down_set(x).into_iter().filter(|&y| y != x)) != x
            })
            .collect();
        for p in l.elements() {
            prop_assert_eq!(
                classify::is_strongly_irreducible_via_gens(&l, p, &gens).unwrap(),
                classify::is_strongly_irreducible(&l, p)
            );
        }
    }

    /// Random cover relations on indices with lower < upper are acyclic, so
    /// construction either yields a lattice whose tables match the brute
    /// force oracle or reports a missing unique bound.
    #[test]
    fn random_covers_build_or_fail_cleanly(
        n in 1usize..=6,
        raw in proptest::collection::vec((0usize..6, 0usize..6), 0..12),
    ) {
        let covers: Vec<(usize, usize)> = raw
            .into_iter()
            .filter(|&(a, b)| a < b && b < n)
            .collect();
        match FiniteLattice::build_from_covers(n, &covers, None, &limits()) {
            Ok(l) => {
                for a in l.elements() {
                    for b in l.elements() {
                        prop_assert_eq!(Some(l.meet(a, b)), brute_force_glb(&l, a, b));
                        prop_assert_eq!(Some(l.join(a, b)), brute_force_lub(&l, a, b));
                    }
                }
            }
            Err(LatticeError::NotALattice { .. }) => {}
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }
}
