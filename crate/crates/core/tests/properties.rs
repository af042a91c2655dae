mod common;

use std::collections::BTreeSet;

use monocover::corpus::family_identities_hold;
use monocover::cover::{analyze, fibre_genus, ramification_profile, MonodromyPair};
use monocover::group::GeneratedGroup;
use monocover::perm::{parse_cycles, Permutation};
use monocover::search::{canonical_form, search, DedupMode, SearchConfig};
use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;

fn perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(perm_of_degree)
}

fn perm_of_degree(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn pair_of_degree(lo: usize, hi: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (lo..=hi).prop_flat_map(|d| (perm_of_degree(d), perm_of_degree(d)))
}

proptest! {
    #[test]
    fn inverse_is_two_sided(p in perm(12)) {
        let id = Permutation::identity(p.degree());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn cycle_text_round_trips((p, _) in pair_of_degree(1, 20)) {
        let text = p.cycle_decomposition().to_string();
        prop_assert_eq!(parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn cycle_type_sums_to_degree(p in perm(15)) {
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), p.degree());
    }

    #[test]
    fn cycle_type_is_conjugation_invariant((p, q) in pair_of_degree(1, 12)) {
        let conj = q.compose(&p).unwrap().compose(&q.inverse()).unwrap();
        prop_assert_eq!(conj.cycle_type(), p.cycle_type());
    }

    #[test]
    fn commutators_are_even((a, b) in pair_of_degree(1, 12)) {
        let c = Permutation::commutator(&a, &b).unwrap();
        prop_assert!(c.is_even());
        // so curve_genus never fails on commutator-derived profiles
        let pair = MonodromyPair::new(a, b).unwrap();
        prop_assert!(ramification_profile(&pair).curve_genus().is_ok());
    }

    #[test]
    fn library_matches_raw_tables((a, b) in pair_of_degree(1, 10)) {
        let ta: Vec<usize> = a.image_table().iter().map(|x| x - 1).collect();
        let tb: Vec<usize> = b.image_table().iter().map(|x| x - 1).collect();
        let c = Permutation::commutator(&a, &b).unwrap();
        prop_assert_eq!(c.to_string(), fmt(&commutator(&ta, &tb)));
        prop_assert_eq!(a.compose(&b).unwrap().to_string(), fmt(&comp(&ta, &tb)));
    }

    #[test]
    fn orbits_partition_points((a, b) in pair_of_degree(1, 10)) {
        let d = a.degree();
        let g = GeneratedGroup::new(vec![a, b]).unwrap();
        let orbits = g.orbits();
        let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (1..=d).collect::<Vec<_>>());
        for o in &orbits {
            prop_assert_eq!(g.orbit(o[0]).unwrap(), o.iter().copied().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn group_structure_is_consistent((a, b) in pair_of_degree(2, 8)) {
        let d = a.degree();
        let g = GeneratedGroup::new(vec![a, b]).unwrap();
        if g.is_primitive() {
            prop_assert!(g.is_transitive());
        }
        if g.is_transitive() {
            prop_assert_eq!(g.group_order() % BigUint::from(d), BigUint::from(0u32));
            for y in 2..=d {
                let block = g.minimal_block_containing(1, y).unwrap();
                prop_assert!(block.contains(&1) && block.contains(&y));
                prop_assert_eq!(d % block.len(), 0);
            }
        }
    }

    #[test]
    fn order_matches_enumeration((a, b) in pair_of_degree(1, 7)) {
        let g = GeneratedGroup::new(vec![a, b]).unwrap();
        let n = g.enumerate_elements(monocover::group::DEFAULT_ENUMERATION_CAP).unwrap().len();
        prop_assert_eq!(g.group_order(), BigUint::from(n));
    }

    #[test]
    fn primitivity_matches_partition_oracle((a, b) in pair_of_degree(1, 8)) {
        let d = a.degree();
        let ta: Vec<usize> = a.image_table().iter().map(|x| x - 1).collect();
        let tb: Vec<usize> = b.image_table().iter().map(|x| x - 1).collect();
        let g = GeneratedGroup::new(vec![a, b]).unwrap();
        prop_assert_eq!(g.is_primitive(), is_primitive_brute(&[ta, tb], d));
    }

    #[test]
    fn analyze_is_deterministic((a, b) in pair_of_degree(2, 9)) {
        let pair = MonodromyPair::new(a, b).unwrap();
        let first = analyze(&pair);
        prop_assert_eq!(analyze(&pair), first.clone());
        if first.reduced_ramification {
            let r = 2 * first.curve_genus - 2;
            prop_assert_eq!(first.ramification_points, r);
            prop_assert_eq!(first.nodes, Some(r * r));
            prop_assert_eq!(first.delta_gamma, Some(r));
        }
        if let (Some(chi), Some(k2), Some(c2)) = (first.chi, first.k_squared, first.c2) {
            prop_assert_eq!(12 * chi, k2 + c2);
        }
    }

    #[test]
    fn full_canonical_form_is_conjugation_invariant(
        (a, b) in pair_of_degree(2, 6),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let d = a.degree();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let sigma = to_library(&random_perm(&mut rng, d));
        let pair = MonodromyPair::new(a, b).unwrap();
        let moved = pair.conjugate_by(&sigma).unwrap();
        prop_assert_eq!(
            canonical_form(&pair, DedupMode::Full).unwrap(),
            canonical_form(&moved, DedupMode::Full).unwrap()
        );
    }

    #[test]
    fn fibre_genus_increases(g in 2u64..50, d in 2usize..64) {
        let base = fibre_genus(g, d).unwrap();
        prop_assert!(fibre_genus(g + 1, d).unwrap() > base);
        prop_assert!(fibre_genus(g, d + 1).unwrap() > base);
    }
}

#[test]
fn family_identities_for_small_n() {
    for n in 2..=8 {
        assert!(family_identities_hold(n).unwrap(), "n={n}");
    }
}

#[test]
fn centralizer_classes_match_oracle_at_degree_six() {
    // 48 classes, fixed by an exhaustive scan of S_6 x S_6 outside this suite.
    let mut cfg = SearchConfig::new(6, 2);
    cfg.worker_count = 3;
    let centralizer = search(&cfg).unwrap();
    cfg.dedup = DedupMode::Full;
    let full = search(&cfg).unwrap();
    assert_eq!(centralizer.certificates.len(), 48);
    assert_eq!(full.certificates.len(), 48);
    // every centralizer representative lands in a distinct full class
    let classes: BTreeSet<String> = centralizer
        .certificates
        .iter()
        .map(|c| canonical_form(&c.pair, DedupMode::Full).unwrap())
        .collect();
    let full_forms: BTreeSet<String> = full.certificates.iter().map(|c| c.canonical_form.clone()).collect();
    assert_eq!(classes, full_forms);
}

#[test]
fn search_is_equivariant_under_relabeling() {
    // Relabeling every certificate by a fixed σ leaves the full canonical
    // forms unchanged.
    let mut cfg = SearchConfig::new(5, 2);
    cfg.dedup = DedupMode::Full;
    let out = search(&cfg).unwrap();
    let sigma = parse_cycles("(1 5 2)(3 4)", 5).unwrap();
    for c in &out.certificates {
        let moved = c.pair.conjugate_by(&sigma).unwrap();
        assert_eq!(canonical_form(&moved, DedupMode::Full).unwrap(), c.canonical_form);
    }
}

#[test]
fn commutator_filter_never_drops_a_solution() {
    // Off mode keeps every (class representative, β) pair; each oracle
    // solution with α a representative must be among them.
    let mut cfg = SearchConfig::new(5, 2);
    cfg.dedup = DedupMode::Off;
    let out = search(&cfg).unwrap();
    let found: BTreeSet<(String, String)> = out
        .certificates
        .iter()
        .map(|c| (c.pair.alpha.to_string(), c.pair.beta.to_string()))
        .collect();
    let reps: BTreeSet<String> = found.iter().map(|(a, _)| a.clone()).collect();
    let sd = symmetric_group(5);
    let mut expected = BTreeSet::new();
    for a in &sd {
        if !reps.contains(&fmt(a)) {
            continue;
        }
        for b in &sd {
            if commutator_is_k_transpositions(a, b, 2) && is_primitive_brute(&[a.clone(), b.clone()], 5) {
                expected.insert((fmt(a), fmt(b)));
            }
        }
    }
    assert_eq!(found, expected);
}

#[test]
fn nondeterministic_order_finds_the_same_set() {
    let mut cfg = SearchConfig::new(6, 2);
    cfg.worker_count = 4;
    let sorted = search(&cfg).unwrap();
    cfg.deterministic_order = false;
    let unordered = search(&cfg).unwrap();
    let a: BTreeSet<_> = sorted.certificates.iter().map(|c| c.canonical_form.clone()).collect();
    let b: BTreeSet<_> = unordered.certificates.iter().map(|c| c.canonical_form.clone()).collect();
    assert_eq!(a, b);
    assert_eq!(sorted.stats.pairs_scanned, unordered.stats.pairs_scanned);
}

#[test]
fn alpha_filter_restricts_the_class() {
    let mut cfg = SearchConfig::new(8, 4);
    cfg.alpha_cycle_type = Some(vec![7, 1]);
    cfg.worker_count = 4;
    let out = search(&cfg).unwrap();
    assert!(!out.certificates.is_empty());
    for c in &out.certificates {
        assert_eq!(c.pair.alpha.cycle_type(), vec![7, 1]);
        assert_eq!(c.invariants.curve_genus, 3);
    }
    // The corrected second example lies in one of the reported classes.
    let ex2 = MonodromyPair::parse("(1 2 3 4 5 6 7)", "(8 3 4 1 5 6)", 8).unwrap();
    let want = canonical_form(&ex2, DedupMode::Centralizer).unwrap();
    assert!(out.certificates.iter().any(|c| c.canonical_form == want));
}
