use monotone_tr::cutjoin::{
    build_q_r, consistent_shift, f_r_eigencheck, tilde_h_shift, verify_evolution, verify_npoint_cj_with,
    BernoulliCoefficients, ShiftConvention,
};
use monotone_tr::hurwitz::Partition;

#[test]
fn evolution_grid() {
    for q in 1..=3 {
        for (w, h) in [(3, 2), (4, 3), (5, 3)] {
            assert!(verify_evolution(q, w, h), "q={q} W={w} order={h}");
        }
    }
}

#[test]
fn eigenvalues_up_to_five_boxes() {
    for n in 1..=5 {
        for lambda in Partition::all(n) {
            for r in 1..=4 {
                assert!(f_r_eigencheck(&lambda, r), "{lambda} r={r}");
            }
        }
    }
}

#[test]
fn q_r_preserves_weight() {
    for r in 1..=5 {
        let op = build_q_r(r, 6);
        for n in 1..=6 {
            for mu in Partition::all(n) {
                assert!(op.apply_monomial(&mu).keys().all(|m| m.size() == n));
            }
        }
    }
}

#[test]
fn npoint_equation_with_derived_shift() {
    for (q, g, n, t) in [
        (1, 0, 3, 6),
        (1, 1, 1, 6),
        (2, 0, 3, 6),
        (2, 1, 1, 6),
        (3, 0, 3, 6),
        (3, 1, 1, 6),
        (1, 0, 4, 5),
        (1, 1, 2, 5),
        (2, 1, 2, 6),
        (1, 2, 1, 6),
        (1, 1, 3, 4),
    ] {
        let c = BernoulliCoefficients::up_to(g as usize);
        let r = verify_npoint_cj_with(q, g, n, t, &c, ShiftConvention::Derived).unwrap();
        assert!(r.holds(), "{r:?}");
        for alpha in 0..=g as usize {
            let bad = verify_npoint_cj_with(q, g, n, t, &c.with_flipped(alpha), ShiftConvention::Derived).unwrap();
            assert!(!bad.holds(), "flip c_{alpha}: {bad:?}");
        }
    }
}

#[test]
fn printed_and_derived_shift_agree_for_genus_zero_odd_n() {
    let c = BernoulliCoefficients::up_to(3);
    for n in [3usize, 5, 7] {
        assert_eq!(tilde_h_shift(0, n, &c), consistent_shift(0, n, &c));
    }
    assert_ne!(tilde_h_shift(0, 4, &c), consistent_shift(0, 4, &c));
    assert_ne!(tilde_h_shift(1, 1, &c), consistent_shift(1, 1, &c));
}
