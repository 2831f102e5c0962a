//! Frozen ground-truth values from the exhaustive small-n extremality search.
//!
//! These values are computed by brute force only (no closed forms, no
//! constructions) and act as the reference for everything else in the crate.

use transversal_lab::cnf::MonotoneCnf;
use transversal_lab::oracle::{extremal_search, extremal_search_mixed, verify_construction};

#[test]
fn exhaustive_maxima_small_grid() {
    // (n, t) -> Θ(n,t,3)
    let expected = [
        ((4, 2), 6),
        ((5, 2), 7),
        ((5, 3), 10),
        ((6, 2), 9),
        ((6, 3), 14),
        ((6, 4), 15),
    ];
    for ((n, t), theta) in expected {
        let r = extremal_search(n, t).unwrap();
        assert_eq!(r.max_count, theta, "Theta({n},{t},3)");
        for f in &r.argmax {
            assert!(verify_construction(f, t, theta as u64), "witness for ({n},{t})");
        }
    }
}

#[test]
fn mixed_width_search_matches_uniform_where_applicable() {
    // Widths 1-2 never help for t <= n-2.
    assert_eq!(extremal_search_mixed(5, 2).unwrap().max_count, 7);
    assert_eq!(extremal_search_mixed(5, 3).unwrap().max_count, 10);
    // Boundary thresholds t > n-2 are attained by lower-width cliques.
    assert_eq!(extremal_search_mixed(5, 4).unwrap().max_count, 5);
    assert_eq!(extremal_search_mixed(5, 5).unwrap().max_count, 1);
}

#[test]
fn five_variable_triangle_system_is_extremal() {
    // {{1,2,3},{3,4,5},{1,2,4}} (1-based) has tau = 2 and 7 minimum
    // transversals, matching Θ(5,2,3).
    let f = MonotoneCnf::from_clauses(5, &[&[0, 1, 2], &[2, 3, 4], &[0, 1, 3]]).unwrap();
    assert!(verify_construction(&f, 2, 7));
    // {3,4} 1-based is vars {2,3} 0-based and hits all three clauses.
    assert!(f.is_transversal(0b01100));
    // Every minimum transversal carries a critical clause per member.
    for &m in &f.brute_force_transversals(2).members {
        assert!(f.verify_critical_clauses(m));
    }
}

#[test]
fn six_variable_necklace_system_is_extremal() {
    // Parts {0,1},{2,3},{4,5}; pair of each part joined with each variable of
    // the next part: tau = 3 and 14 minimum transversals, matching Θ(6,3,3).
    let f = MonotoneCnf::from_clauses(
        6,
        &[&[0, 1, 2], &[0, 1, 3], &[2, 3, 4], &[2, 3, 5], &[4, 5, 0], &[4, 5, 1]],
    )
    .unwrap();
    assert!(verify_construction(&f, 3, 14));
}
