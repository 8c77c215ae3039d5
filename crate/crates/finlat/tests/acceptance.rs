//! Acceptance suite: one test per criterion, each exhaustive at desk scale
//! over the standard corpus. Every test prints a single pass line; a failed
//! assertion is the corresponding fail line.

use finlat::abelian::{self, FiniteAbelianGroup, StronglyHollowReport};
use finlat::builders;
use finlat::classify::{self, Dichotomy, DEFAULT_ANTICHAIN_BOUND};
use finlat::lattice::FiniteLattice;
use finlat::limits::Limits;
use finlat::represent;
use finlat::topology;
use finlat::transfer;
use std::sync::Arc;
use std::sync::OnceLock;

fn limits() -> Limits {
    Limits::default()
}

/// The standard corpus: chains, boolean algebras, divisor lattices,
/// diamonds, the pentagon, two subspace lattices, and one product.
fn corpus() -> Vec<(String, FiniteLattice)> {
    let l = limits();
    let mut out: Vec<(String, FiniteLattice)> = Vec::new();
    for n in 2..=6 {
        out.push((format!("chain:{n}"), builders::chain(n, &l).unwrap()));
    }
    for k in 1..=4 {
        out.push((format!("boolean:{k}"), builders::boolean(k, &l).unwrap()));
    }
    for n in [12u64, 30, 36, 60] {
        out.push((format!("divisor:{n}"), builders::divisor_lattice(n, &l).unwrap()));
    }
    for k in 3..=5 {
        out.push((format!("M:{k}"), builders::diamond(k, &l).unwrap()));
    }
    out.push(("N5".to_string(), builders::pentagon(&l).unwrap()));
    out.push(("subspace:2,2".to_string(), builders::subspace_lattice(2, 2, &l).unwrap()));
    out.push(("subspace:3,2".to_string(), builders::subspace_lattice(3, 2, &l).unwrap()));
    let d12 = builders::divisor_lattice(12, &l).unwrap();
    let c2 = builders::chain(2, &l).unwrap();
    out.push((
        "product:(divisor:12)x(chain:2)".to_string(),
        builders::product(&d12, &c2, &l).unwrap(),
    ));
    out
}

/// Shared sweep for the abelian criteria: every group of order <= 200 with
/// its strongly hollow report.
fn abelian_sweep() -> &'static Vec<(FiniteAbelianGroup, Vec<abelian::Subgroup>, StronglyHollowReport)>
{
    static SWEEP: OnceLock<
        Vec<(FiniteAbelianGroup, Vec<abelian::Subgroup>, StronglyHollowReport)>,
    > = OnceLock::new();
    SWEEP.get_or_init(|| {
        let l = limits();
        let mut out = Vec::new();
        for n in 1..=200u64 {
            for group in abelian::all_abelian_groups_of_order(n, &l) {
                let subgroups = abelian::enumerate_subgroups(&group, &l).unwrap();
                let report = abelian::strongly_hollow_subgroups(&group, &l).unwrap();
                out.push((group, subgroups, report));
            }
        }
        out
    })
}

#[test]
fn c01_total_order_law() {
    for (name, l) in corpus() {
        let all_si = l.elements().all(|p| classify::is_strongly_irreducible(&l, p));
        assert_eq!(all_si, l.is_total_order(), "{name}: SI totality");
        let all_sh = l.elements().all(|p| classify::is_strongly_hollow(&l, p));
        assert_eq!(all_sh, l.is_total_order(), "{name}: SH totality");
    }
    println!("[PASS] criterion 1: every element SI (dually SH) iff the order is total");
}

#[test]
fn c02_characterization_battery() {
    let mut checked = 0usize;
    for (name, l) in corpus() {
        for p in l.elements() {
            let report = classify::characterization_report(&l, p);
            if report.omega_nonempty {
                checked += 1;
                assert!(
                    report.all_flags_equal(),
                    "{name}, element {p}: flags diverge: {report:?}"
                );
            }
        }
    }
    assert!(checked > 0);
    println!("[PASS] criterion 2: six-way characterization agreed on {checked} elements");
}

#[test]
fn c03_structure_dichotomy() {
    let mut witnesses = 0usize;
    let mut waists = 0usize;
    for (name, l) in corpus() {
        for p in classify::si_elements(&l) {
            match classify::structure_dichotomy(&l, p).unwrap() {
                d @ Dichotomy::Witness { .. } => {
                    assert!(d.verified(), "{name}, element {p}: unverified witness {d:?}");
                    witnesses += 1;
                }
                d @ Dichotomy::Waist { .. } => {
                    assert!(d.verified(), "{name}, element {p}: not actually a waist");
                    waists += 1;
                }
            }
        }
    }
    println!(
        "[PASS] criterion 3: dichotomy verified ({witnesses} interval witnesses, {waists} waists)"
    );
}

#[test]
fn c04_finite_cocompactness() {
    for (name, l) in corpus() {
        for p in l.elements() {
            let si = classify::is_strongly_irreducible(&l, p);
            let irr = classify::is_irreducible(&l, p);
            assert_eq!(classify::is_completely_strongly_irreducible(&l, p), si, "{name}/{p}");
            assert_eq!(classify::is_completely_irreducible(&l, p), irr, "{name}/{p}");
            // bounded antichain cross-check
            assert_eq!(
                classify::completely_si_antichain_check(&l, p, DEFAULT_ANTICHAIN_BOUND),
                si,
                "{name}/{p}: antichain cross-check (strong)"
            );
            assert_eq!(
                classify::completely_irreducible_antichain_check(&l, p, DEFAULT_ANTICHAIN_BOUND),
                irr,
                "{name}/{p}: antichain cross-check"
            );
        }
    }
    println!("[PASS] criterion 4: completeness flags equal plain flags, antichain bound 3 agrees");
}

#[test]
fn c05_distributive_lattices_collapse_irreducibility() {
    let mut lattices = 0usize;
    for (name, l) in corpus() {
        if !l.is_distributive() {
            continue;
        }
        lattices += 1;
        for p in l.elements() {
            assert_eq!(
                classify::is_irreducible(&l, p),
                classify::is_strongly_irreducible(&l, p),
                "{name}, element {p}"
            );
        }
    }
    assert!(lattices >= 10, "corpus should contain the distributive members");
    println!("[PASS] criterion 5: irreducible = strongly irreducible on {lattices} distributive lattices");
}

#[test]
fn c06_topology_axioms() {
    for (name, l) in corpus() {
        let l = Arc::new(l);
        let closed = topology::closed_basis(l.clone(), &topology::si_spectrum(&l)).unwrap();
        assert!(closed.verification.passed(), "{name}: closed basis");
        let open = topology::open_basis(l.clone(), &topology::sh_spectrum(&l)).unwrap();
        assert!(open.verification.passed(), "{name}: open basis");
        if name == "divisor:60" {
            assert_eq!(closed.verification.pairs_checked, 144);
            assert_eq!(open.verification.pairs_checked, 144);
        }
    }
    println!("[PASS] criterion 6: closure laws hold on every corpus lattice (divisor:60 = 144 pairs)");
}

#[test]
fn c07_strong_kuros_ore() {
    for (name, l) in corpus() {
        if !l.is_modular() {
            continue;
        }
        let report = represent::strong_kuros_ore_check(&l, &limits()).unwrap();
        assert!(report.all_equal, "{name}: {:?}", report.counterexample);
    }
    for k in 1..=4u32 {
        let b = builders::boolean(k, &limits()).unwrap();
        assert_eq!(represent::kuros_ore_dimension(&b, &limits()).unwrap(), k as usize);
        assert_eq!(represent::goldie_dimension(&b, &limits()).unwrap(), k as usize);
    }
    println!("[PASS] criterion 7: strongly irreducible meet-representations of bottom are unique sets");
}

#[test]
fn c08_matrix_ring_model() {
    let l = builders::subspace_lattice(2, 2, &limits()).unwrap();
    for coatom in l.coatoms() {
        assert!(!classify::is_strongly_irreducible(&l, coatom), "coatom {coatom}");
    }
    for atom in l.atoms() {
        assert!(!classify::is_strongly_hollow(&l, atom), "atom {atom}");
    }
    assert_eq!(classify::si_elements(&l), vec![l.top()]);
    assert_eq!(classify::strongly_hollow_elements(&l), vec![l.bottom()]);
    println!("[PASS] criterion 8: in the plane over F2 only top is SI and only bottom is SH");
}

#[test]
fn c09_abelian_classification() {
    let l = limits();
    // named values
    let z4z9 = abelian::strongly_hollow_subgroups(
        &FiniteAbelianGroup::new(&[4, 9], &l).unwrap(),
        &l,
    )
    .unwrap();
    let mut orders: Vec<u64> = z4z9
        .lattice_route
        .iter()
        .map(|&i| z4z9.subgroups[i].order())
        .filter(|&o| o > 1)
        .collect();
    orders.sort_unstable();
    assert_eq!(orders, [2, 3, 4, 9], "Z4 x Z9: exactly 2Z4, Z4, 3Z9, Z9");

    let z4z8 = abelian::strongly_hollow_subgroups(
        &FiniteAbelianGroup::new(&[4, 8], &l).unwrap(),
        &l,
    )
    .unwrap();
    assert!(
        z4z8.lattice_route.iter().all(|&i| z4z8.subgroups[i].order() == 1),
        "Z4 x Z8: no non-zero strongly hollow subgroup"
    );

    for pk in [8u64, 27, 25, 128] {
        let report = abelian::strongly_hollow_subgroups(
            &FiniteAbelianGroup::new(&[pk], &l).unwrap(),
            &l,
        )
        .unwrap();
        assert_eq!(
            report.lattice_route.len(),
            report.subgroups.len(),
            "Z_{pk}: every subgroup strongly hollow"
        );
    }

    // lattice route vs arithmetic characterization for every group <= 200
    let mut groups = 0usize;
    for (group, subgroups, report) in abelian_sweep() {
        assert!(report.agree, "routes disagree for {}", group.spec_string());
        // in a p-group every strongly hollow subgroup is a waist
        if group.primes().len() == 1 {
            for &i in &report.lattice_route {
                let sh = &subgroups[i];
                assert!(
                    subgroups
                        .iter()
                        .all(|q| sh.is_subset_of(q) || q.is_subset_of(sh)),
                    "{}: strongly hollow subgroup {i} is not a waist",
                    group.spec_string()
                );
            }
        }
        groups += 1;
    }
    println!("[PASS] criterion 9: strongly hollow classification cross-checked on {groups} groups");
}

#[test]
fn c10_stephenson_necessity() {
    let l = limits();
    let mut pairs = 0usize;
    for (group, subgroups, report) in abelian_sweep() {
        for &p_idx in &report.lattice_route {
            let violations = abelian::stephenson_violations(group, subgroups, p_idx);
            assert!(
                violations.is_empty(),
                "{}: strongly hollow subgroup {p_idx} fails the Hom condition",
                group.spec_string()
            );
            pairs += 1;
        }
    }
    // the converse failure is detectable: a line in Z2 x Z2 is not strongly
    // hollow and the other line witnesses Hom(Z2, Z2) != 0
    let klein = FiniteAbelianGroup::new(&[2, 2], &l).unwrap();
    let subs = abelian::enumerate_subgroups(&klein, &l).unwrap();
    let line = subs.iter().find(|s| s.order() == 2).unwrap();
    let report = abelian::stephenson_check(&klein, line, &l).unwrap();
    assert!(!report.precondition_strongly_hollow);
    assert!(!report.hom_all_trivial);
    println!("[PASS] criterion 10: Hom condition held for {pairs} strongly hollow subgroups");
}

#[test]
fn c11_transfer() {
    let l = limits();
    for (n, p) in [(12u64, 2u64), (12, 3), (60, 5), (49, 7)] {
        let model = transfer::localization_model(n, p, &l).unwrap();
        let laws = transfer::verify_galois_laws(&model);
        assert!(laws.all_hold(), "({n}, {p}): composite laws");
        assert!(transfer::verify_pair(&model.pair).hypotheses_hold(), "({n}, {p}): hypotheses");
        let correspondence = transfer::localization_correspondence(&model);
        assert!(correspondence.si_equivalence_holds, "({n}, {p}): SI correspondence");
        assert!(correspondence.hollow_backward_holds, "({n}, {p}): hollow push-forward");
        // reversing the roles of the two maps gives the converse transfer
        let swapped = model.pair.swapped();
        let swapped_report = transfer::verify_pair(&swapped);
        assert!(swapped_report.hypotheses_hold(), "({n}, {p}): swapped hypotheses");
        for &d in &swapped_report.fixed_points {
            let verdict = transfer::transfer_si(&swapped, d).unwrap();
            if verdict.hypothesis_held {
                assert_eq!(verdict.conclusion_verified, Some(true), "({n}, {p}), element {d}");
            }
        }
    }
    let battery = transfer::transfer_battery(0xF1A7, 500, &l);
    assert_eq!(battery.pairs, 500);
    assert!(battery.instances_checked > 0);
    assert!(battery.failures.is_empty(), "failures: {:?}", battery.failures);
    println!(
        "[PASS] criterion 11: localization models verified; {} random transfer instances clean",
        battery.instances_checked
    );
}

#[test]
fn c12_chain_meets_and_weak_distributivity() {
    let mut chains_checked = 0usize;
    for (name, l) in corpus() {
        let si = classify::si_elements(&l);
        // every strongly irreducible element is weakly meet-distributive
        for &p in &si {
            assert!(classify::is_weakly_meet_distributive(&l, p), "{name}, element {p}");
        }
        // the meet of every chain of strongly irreducible elements is SI
        let mut stack: Vec<usize> = Vec::new();
        chains_checked += check_chains(&l, &si, 0, &mut stack, &name);
    }
    assert!(chains_checked > 0);
    println!("[PASS] criterion 12: {chains_checked} SI chains have SI meets; SI implies weak distributivity");
}

fn check_chains(
    l: &FiniteLattice,
    si: &[usize],
    from: usize,
    stack: &mut Vec<usize>,
    name: &str,
) -> usize {
    let mut count = 0usize;
    for i in from..si.len() {
        let p = si[i];
        if !stack.iter().all(|&q| l.comparable(p, q)) {
            continue;
        }
        stack.push(p);
        let meet = l.meet_all(stack.iter().copied());
        assert!(
            classify::is_strongly_irreducible(l, meet),
            "{name}: meet of chain {stack:?} is not SI"
        );
        count += 1 + check_chains(l, si, i + 1, stack, name);
        stack.pop();
    }
    count
}

#[test]
fn c09b_unique_supplement_and_dual_battery() {
    // supporting checks behind criteria 2 and 9: the dual characterization
    // battery and the unique-supplement upgrade, run through the duals
    for (name, l) in corpus() {
        let dual = l.dual();
        for p in dual.elements() {
            let report = classify::characterization_report(&dual, p);
            if report.omega_nonempty {
                assert!(report.all_flags_equal(), "{name} dual, element {p}");
            }
        }
        // if every element with a supplement has a unique one, every hollow
        // non-small element is strongly hollow; needs modularity (a hollow
        // non-small element of N5 is a counterexample otherwise)
        let unique_supplements = l.is_modular()
            && l.elements().all(|k| classify::pseudo_complement(&dual, k).unique().is_some());
        if unique_supplements {
            for p in l.elements() {
                let not_small = !classify::omega_of(&dual, p).is_empty();
                if not_small
                    && classify::is_hollow(&l, p)
                    && !classify::is_strongly_hollow(&l, p)
                {
                    panic!("{name}: hollow non-small element {p} should be strongly hollow");
                }
            }
        }
    }
    println!("[PASS] criterion 2/9 support: dual battery and unique-supplement upgrade hold");
}
