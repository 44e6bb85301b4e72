//! Randomized invariants for the engine and solver, checked against a naive
//! enumeration oracle that is independent of the DP implementation.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerosum_lab::engine::{
    find_fixed_length_zero_subsequence, find_weighted_zero_subsequence, has_fixed_length_zero_sum,
    is_zero_sum_free,
};
use zerosum_lab::solver::{compute_da, compute_zs, SearchConfig};
use zerosum_lab::{make_group, GroupSpec, Sequence, WeightSet, Witness};

/// Exhaustive check over all nonempty position subsets and weight tuples.
fn naive_has_witness(g: &GroupSpec, a: &WeightSet, s: &Sequence, exact: Option<usize>) -> bool {
    naive_canonical_witness(g, a, s, exact).is_some()
}

/// The lexicographically least (positions, weights) witness by brute force:
/// position lists enumerated in lex order, weight tuples in lex order.
fn naive_canonical_witness(
    g: &GroupSpec,
    a: &WeightSet,
    s: &Sequence,
    exact: Option<usize>,
) -> Option<Vec<(usize, u64)>> {
    fn positions_in_lex_order(t: usize, exact: Option<usize>) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..t).rev().map(|p| vec![p]).collect();
        while let Some(cur) = stack.pop() {
            if exact.is_none_or(|m| cur.len() <= m) {
                if exact.is_none_or(|m| cur.len() == m) {
                    all.push(cur.clone());
                }
                for nxt in (cur[cur.len() - 1] + 1..t).rev() {
                    let mut ext = cur.clone();
                    ext.push(nxt);
                    stack.push(ext);
                }
            }
        }
        all
    }
    let t = s.len();
    for positions in positions_in_lex_order(t, exact) {
        if let Some(m) = exact {
            if positions.len() != m {
                continue;
            }
        }
        // smallest weight tuple completing these positions, if any
        let k = positions.len();
        let weights = a.values();
        let mut counters = vec![0usize; k];
        'tuples: loop {
            let mut acc = g.zero();
            for (i, &p) in positions.iter().enumerate() {
                let term = g
                    .scalar_mul(weights[counters[i]] as i64, &s.elements()[p])
                    .unwrap();
                acc = g.add(&acc, &term).unwrap();
            }
            if acc == g.zero() {
                return Some(
                    positions
                        .iter()
                        .zip(&counters)
                        .map(|(&p, &c)| (p, weights[c]))
                        .collect(),
                );
            }
            for i in (0..k).rev() {
                counters[i] += 1;
                if counters[i] < weights.len() {
                    continue 'tuples;
                }
                counters[i] = 0;
            }
            break;
        }
    }
    None
}

fn random_instance(rng: &mut ChaCha8Rng) -> (GroupSpec, WeightSet, Sequence) {
    let g = loop {
        let g = match rng.gen_range(0..3) {
            0 => make_group(&[rng.gen_range(2..=12u64)]).unwrap(),
            1 => make_group(&[2, rng.gen_range(2..=6u64)]).unwrap(),
            _ => make_group(&[3, 3]).unwrap(),
        };
        if g.order() <= 12 {
            break g;
        }
    };
    let n = g.exponent();
    let k = rng.gen_range(1..=3usize.min(n as usize));
    let mut vals = Vec::new();
    while vals.len() < k {
        let v = rng.gen_range(1..=n);
        if !vals.contains(&v) {
            vals.push(v);
        }
    }
    let a = WeightSet::new(&vals, n).unwrap();
    let t = rng.gen_range(0..=8usize);
    let indices: Vec<u64> = (0..t).map(|_| rng.gen_range(0..g.order())).collect();
    let s = Sequence::from_indices(g.clone(), &indices).unwrap();
    (g, a, s)
}

#[test]
fn oracle_equivalence_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for trial in 0..500 {
        let (g, a, s) = random_instance(&mut rng);
        let dp = !is_zero_sum_free(&g, &a, &s).unwrap();
        let naive = naive_has_witness(&g, &a, &s, None);
        assert_eq!(dp, naive, "unrestricted mismatch at trial {trial}: {g} {a} {s}");
        if !s.is_empty() {
            let m = rng.gen_range(1..=s.len());
            let dp = has_fixed_length_zero_sum(&g, &a, &s, m).unwrap();
            let naive = naive_has_witness(&g, &a, &s, Some(m));
            assert_eq!(dp, naive, "fixed mismatch at trial {trial}: {g} {a} {s} m={m}");
        }
    }
}

#[test]
fn canonical_witness_matches_brute_force_lex_least() {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let mut found = 0;
    for _ in 0..300 {
        let (g, a, s) = random_instance(&mut rng);
        if let Some(w) = find_weighted_zero_subsequence(&g, &a, &s).unwrap() {
            let naive = naive_canonical_witness(&g, &a, &s, None).unwrap();
            assert_eq!(w.terms(), naive.as_slice(), "{g} {a} {s}");
            found += 1;
        }
        if s.is_empty() {
            continue;
        }
        let m = rng.gen_range(1..=s.len());
        if let Some(w) = find_fixed_length_zero_subsequence(&g, &a, &s, m).unwrap() {
            let naive = naive_canonical_witness(&g, &a, &s, Some(m)).unwrap();
            assert_eq!(w.terms(), naive.as_slice(), "{g} {a} {s} m={m}");
        }
    }
    assert!(found > 50, "sampler should produce witnesses often");
}

#[test]
fn witnesses_survive_extension_and_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    for _ in 0..200 {
        let (g, a, s) = random_instance(&mut rng);
        let had = find_weighted_zero_subsequence(&g, &a, &s).unwrap();

        // monotonicity: witnesses survive appending elements
        let mut extended = s.indices();
        for _ in 0..rng.gen_range(1..=3) {
            extended.push(rng.gen_range(0..g.order()));
        }
        let s_ext = Sequence::from_indices(g.clone(), &extended).unwrap();
        if had.is_some() {
            assert!(find_weighted_zero_subsequence(&g, &a, &s_ext).unwrap().is_some());
        }
        if !s.is_empty() {
            let m = rng.gen_range(1..=s.len());
            if has_fixed_length_zero_sum(&g, &a, &s, m).unwrap() {
                assert!(has_fixed_length_zero_sum(&g, &a, &s_ext, m).unwrap());
            }
        }

        // permutation covariance: pushing a witness through a permutation
        // re-validates and certifies the same (element, weight) multiset
        if let Some(w) = had {
            let mut perm: Vec<usize> = (0..s.len()).collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let mut new_indices = vec![0u64; s.len()];
            for (old, &new) in perm.iter().enumerate() {
                new_indices[new] = s.indices()[old];
            }
            let s_perm = Sequence::from_indices(g.clone(), &new_indices).unwrap();
            let mut moved: Vec<(usize, u64)> =
                w.terms().iter().map(|&(p, wt)| (perm[p], wt)).collect();
            moved.sort_unstable();
            let w_moved = Witness::new(moved);
            w_moved.validate(&a, &s_perm, None).unwrap();
            let pairs = |w: &Witness, s: &Sequence| {
                let mut v: Vec<(u64, u64)> = w
                    .terms()
                    .iter()
                    .map(|&(p, wt)| (s.indices()[p], wt))
                    .collect();
                v.sort_unstable();
                v
            };
            assert_eq!(pairs(&w, &s), pairs(&w_moved, &s_perm));
        }
    }
}

#[test]
fn da_is_antitone_in_the_weight_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let cfg = SearchConfig::default();
    for _ in 0..40 {
        let g = make_group(&[rng.gen_range(2..=10u64)]).unwrap();
        let n = g.exponent();
        let small = rng.gen_range(1..=n);
        let mut vals = vec![small];
        for _ in 0..rng.gen_range(1..=2) {
            let v = rng.gen_range(1..=n);
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        let sub = WeightSet::new(&[small], n).unwrap();
        let sup = WeightSet::new(&vals, n).unwrap();
        let d_sub = compute_da(&g, &sub, &cfg).unwrap().value;
        let d_sup = compute_da(&g, &sup, &cfg).unwrap().value;
        assert!(d_sup <= d_sub, "{g}: A={sub} A'={sup}");
    }
}

#[test]
fn zs_dominates_da_padding_bound() {
    let cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    for _ in 0..20 {
        let g = make_group(&[rng.gen_range(2..=7u64)]).unwrap();
        let n = g.exponent();
        let k = rng.gen_range(1..=2usize);
        let mut vals = Vec::new();
        while vals.len() < k {
            let v = rng.gen_range(1..=n);
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        let a = WeightSet::new(&vals, n).unwrap();
        let da = compute_da(&g, &a, &cfg).unwrap();
        let zs = compute_zs(&g, &a, &cfg).unwrap();
        assert!(zs.value >= da.value + g.order() - 1, "{g} {a}");
        // the padded extremal re-validates as a ZS certificate
        let padded = da.extremal.pad_with_zeros(g.order() as usize - 1).unwrap();
        if padded.len() >= g.order() as usize {
            assert!(!has_fixed_length_zero_sum(&g, &a, &padded, g.order() as usize).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn index_bijection_and_addition(
        factors in proptest::collection::vec(2u64..12, 1..4),
        seed in any::<u64>(),
    ) {
        let g = make_group(&factors).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..g.order());
        let j = rng.gen_range(0..g.order());
        let a = g.element_of_index(i).unwrap();
        let b = g.element_of_index(j).unwrap();
        prop_assert_eq!(g.index(&a).unwrap(), i);
        prop_assert_eq!(g.add(&a, &b).unwrap(), g.add(&b, &a).unwrap());
        prop_assert_eq!(g.add(&a, &g.neg(&a).unwrap()).unwrap(), g.zero());
    }

    #[test]
    fn group_spec_display_round_trips(factors in proptest::collection::vec(2u64..100, 1..5)) {
        let g = make_group(&factors).unwrap();
        let back: GroupSpec = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn sequence_display_round_trips(
        factors in proptest::collection::vec(2u64..9, 1..3),
        picks in proptest::collection::vec(any::<u64>(), 0..10),
    ) {
        let g = make_group(&factors).unwrap();
        let indices: Vec<u64> = picks.iter().map(|&p| p % g.order()).collect();
        let s = Sequence::from_indices(g.clone(), &indices).unwrap();
        let back = Sequence::parse(&g, &s.to_string()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn weight_grammar_never_panics(input in "\\PC*") {
        let _ = input.parse::<zerosum_lab::WeightFamily>();
    }

    #[test]
    fn resolved_families_stay_in_range(
        n in 2u64..60,
        fam in prop_oneof![
            Just("units"), Just("all"), Just("qr"), Just("qnr"),
            Just("primroots"), Just("a4"), Just("a5"), Just("initial:3"),
            Just("pair:1"), Just("single:2"),
        ],
    ) {
        if let Ok(w) = fam.parse::<zerosum_lab::WeightFamily>().unwrap().resolve(n) {
            prop_assert!(!w.is_empty());
            prop_assert!(w.values().windows(2).all(|p| p[0] < p[1]));
            prop_assert!(w.values()[0] >= 1 && *w.values().last().unwrap() <= n);
        }
    }
}

#[test]
fn solver_extremals_revalidate() {
    let cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6006);
    for _ in 0..25 {
        let g = make_group(&[rng.gen_range(2..=8u64)]).unwrap();
        let n = g.exponent();
        let a = WeightSet::new(&[rng.gen_range(1..=n)], n).unwrap();
        let res = compute_da(&g, &a, &cfg).unwrap();
        assert_eq!(res.extremal.len() as u64, res.value - 1);
        assert!(is_zero_sum_free(&g, &a, &res.extremal).unwrap());
        let zs = compute_zs(&g, &a, &cfg).unwrap();
        assert_eq!(zs.extremal.len() as u64, zs.value - 1);
        if zs.extremal.len() >= g.order() as usize {
            assert!(
                !has_fixed_length_zero_sum(&g, &a, &zs.extremal, g.order() as usize).unwrap()
            );
        }
    }
}
