//! Cross-checks between independent routes to the same answer.

use ameforge_core::ame::{
    all_pass, bipartitions, code_from_state, reduce_ame, state_from_code, verify_uniform_combinatorial,
    verify_uniform_dense, AmeState, DENSE_TOLERANCE,
};
use ameforge_core::search::{check_witness, search_with_route, Route, DEFAULT_BUDGET};
use ameforge_core::{
    extended_grs, extended_grs_truncated, max_length_dim3, search_systematic_mds, FiniteField, LinearCode,
    SearchOptions, Word,
};
use itertools::Itertools;
use num_complex::Complex64;

/// Counts MDS parity blocks with the generator-rank criterion, one block
/// at a time, independent of the search engine.
fn brute_force_count(q: u32, k: usize, r: usize, nonzero: bool) -> u64 {
    let f = FiniteField::new(q as u64).unwrap();
    let symbols: Vec<u32> = if nonzero { (1..q).collect() } else { (0..q).collect() };
    (0..k * r)
        .map(|_| symbols.iter().copied())
        .multi_cartesian_product()
        .filter(|entries| {
            let parity = entries.chunks(r).map(<[u32]>::to_vec).collect();
            LinearCode::from_parity_block(f.clone(), &parity).unwrap().is_mds()
        })
        .count() as u64
}

#[test]
fn search_counts_match_brute_force() {
    for (q, n, k) in [(3, 4, 2), (4, 5, 2), (4, 5, 3), (5, 5, 2)] {
        let r = search_systematic_mds(q, n, k, &SearchOptions::default()).unwrap();
        assert_eq!(r.mds_found, brute_force_count(q, k, n - k, false), "q={q} n={n} k={k}");
    }
    // nonzero entries are necessary, so the restricted count is the full count
    let r = search_systematic_mds(5, 6, 3, &SearchOptions::default()).unwrap();
    assert_eq!(r.mds_found, brute_force_count(5, 3, 3, true));
}

#[test]
fn every_witness_is_verified_independently() {
    for (q, n, k) in [(4, 5, 3), (5, 6, 3), (7, 8, 2), (8, 6, 3), (9, 5, 2)] {
        let f = FiniteField::new(q as u64).unwrap();
        let opts = SearchOptions {
            stop_at_first: false,
            budget: 2_000_000,
            ..SearchOptions::default()
        };
        let r = search_systematic_mds(q, n, k, &opts).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            let check = check_witness(&f, w).unwrap();
            assert!(check.passed(), "q={q} n={n} k={k} {w:?}");
        }
    }
}

#[test]
fn route_and_pruning_agree_on_nonexistence() {
    for route in [Route::Minors, Route::ColumnSets] {
        for pruning in [true, false] {
            let opts = SearchOptions {
                pruning,
                ..SearchOptions::default()
            };
            let r = search_with_route(3, 5, 2, &opts, route).unwrap();
            assert!(r.is_complete());
            assert_eq!(r.mds_found, 0, "{route:?} pruning={pruning}");
        }
    }
}

#[test]
fn ame_from_extended_rs_in_small_dimensions() {
    for d in [2u32, 3, 4, 5, 7] {
        let f = FiniteField::new(d as u64).unwrap();
        for n in 2..=(d as usize + 1).min(6) {
            let code = extended_grs_truncated(&f, n, n / 2).unwrap().codewords().unwrap();
            let state = state_from_code(&code).unwrap();
            assert!(state.is_minimal_support());
            let c = verify_uniform_combinatorial(&state).unwrap();
            let r = verify_uniform_dense(&state, DENSE_TOLERANCE).unwrap();
            assert!(all_pass(&c), "combinatorial AME({n},{d})");
            assert!(all_pass(&r), "dense AME({n},{d})");
            assert_eq!(c.len(), bipartitions(n).len());
        }
    }
}

#[test]
fn verifiers_agree_without_phases() {
    // all 2-subsets of a few small word sets over {0,1,2}^3, positive amplitudes
    let pool: Vec<Vec<u32>> = (0..27).map(|v| vec![v / 9, (v / 3) % 3, v % 3]).collect();
    for chosen in pool.iter().combinations(3).step_by(7) {
        let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let state = AmeState::new(3, 3, chosen.iter().map(|w| (Word::new(w.to_vec()), amp))).unwrap();
        let c = verify_uniform_combinatorial(&state).unwrap();
        let r = verify_uniform_dense(&state, DENSE_TOLERANCE).unwrap();
        for (a, b) in c.iter().zip(&r) {
            assert_eq!(a.pass, b.pass, "{chosen:?} {:?}", a.subset);
            assert!((a.deviation - b.deviation).abs() < 1e-12);
        }
    }
}

#[test]
fn reduction_chain_from_six_sites() {
    let f = FiniteField::new(5).unwrap();
    let mut state = state_from_code(&extended_grs(&f, 3).unwrap().codewords().unwrap()).unwrap();
    while state.n() > 2 {
        state = reduce_ame(&state).unwrap();
        assert!(state.is_minimal_support());
        assert!(all_pass(&verify_uniform_dense(&state, DENSE_TOLERANCE).unwrap()));
        let code = code_from_state(&state).unwrap();
        assert!(code.mds_verdict().unwrap().ame_distance);
    }
    assert_eq!(state.support_size(), 5);
}

#[test]
fn dimension_three_lengths() {
    assert_eq!(max_length_dim3(7, 9, DEFAULT_BUDGET, 0).unwrap(), 8);
    assert_eq!(max_length_dim3(9, 11, DEFAULT_BUDGET, 0).unwrap(), 10);
}
