use std::collections::HashSet;

use super::*;
use crate::cycles::{from_cycles, CycleNotation};
use crate::stats::{descent_set, truncated_descent_set};

fn sp(v: &[i32]) -> SignedPermutation {
    SignedPermutation::new(v.to_vec()).unwrap()
}

fn cyc(v: &[i32]) -> SignedPermutation {
    from_cycles(&CycleNotation::from_entries(vec![v.to_vec()]).unwrap())
}

fn perms(n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for m in 1..=n as i32 {
        let mut next = Vec::new();
        for w in &out {
            for p in 0..=w.len() {
                let mut w2 = w.clone();
                w2.insert(p, m);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

fn all_signed(n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for w in perms(n) {
        for bits in 0..1u32 << n {
            let v = w.iter().enumerate().map(|(i, &x)| if bits >> i & 1 == 1 { -x } else { x }).collect();
            out.push(SignedPermutation::new(v).unwrap());
        }
    }
    out
}

/// Cyclic elements of degree `n + 1` containing `+(n+1)`.
fn cyclic_plus(n: usize) -> Vec<SignedPermutation> {
    all_signed(n)
        .into_iter()
        .map(|s| {
            let mut word = s.into_images();
            word.push(n as i32 + 1);
            cyc(&word)
        })
        .collect()
}

fn cyclic_all(n: usize) -> Vec<SignedPermutation> {
    let plus = cyclic_plus(n);
    let minus: Vec<_> = plus.iter().map(SignedPermutation::negate_all).collect();
    plus.into_iter().chain(minus).collect()
}

#[test]
fn p_flag_examples() {
    let pi = sp(&[2, 5, -6, -1, -3, 7, -4]);
    let sigma = from_cycles(&CycleNotation::from_entries(vec![vec![-4], vec![-1], vec![2], vec![5, -3, -6]]).unwrap());
    assert!(p_flag(&pi, &sigma, 4, 5));
    assert!(!p_flag(&pi, &sigma, 4, 3));
    assert!(!p_flag(&pi, &sigma, 7, 3));
}

#[test]
fn maxima_examples() {
    assert_eq!(left_to_right_maxima(&[-4, -1, 2, 5, -3, -6, 7]), vec![1, 2, 3, 4, 7]);
    assert_eq!(left_to_right_maxima(&[1, 2, 3]), vec![1, 2, 3]);
    assert_eq!(left_to_right_maxima(&[3, 2, -1]), vec![1]);
}

#[test]
fn phi_plus_examples() {
    let pi = cyc(&[-4, -1, 2, 5, -3, -6, 7]);
    assert_eq!(pi, sp(&[2, 5, -6, -1, -3, 7, -4]));
    assert_eq!(phi_plus(&pi, None).unwrap(), sp(&[-1, 2, -6, -3, -5, 4]));
    let big = cyc(&[1, -4, 8, -6, 11, 2, -3, 7, -5, 10, 12, 9, 13]);
    assert_eq!(big, sp(&[-4, -3, 7, 8, 10, 11, -5, -6, 13, 12, 2, 9, 1]));
    let out = phi_plus(&big, None).unwrap();
    assert_eq!(out, sp(&[-5, -3, 2, 7, 8, 10, -4, -6, 12, 11, 1, 9]));
    assert_eq!(descent_set(&out).unwrap().members(), vec![0, 6, 7, 9, 10]);
    assert_eq!(phi_plus(&cyc(&[1, 2]), None).unwrap(), sp(&[1]));
    assert!(phi_plus(&cyc(&[1, -2]), None).is_err());
    assert!(phi_plus(&sp(&[1, 2]), None).is_err());
}

#[test]
fn capital_phi_examples() {
    assert_eq!(capital_phi(&cyc(&[-4, -1, 2, 5, -3, -6, 7])).unwrap(), sp(&[1, 2, -6, -3, -5, 4]));
    let minus = cyc(&[3, 4, 8, -1, 5, 7, 2, -6, -9]);
    assert_eq!(minus, sp(&[5, -6, 4, 8, 7, -9, 2, -1, 3]));
    assert!(!has_positive_top(&minus));
    let out = capital_phi(&minus).unwrap();
    assert_eq!(out, sp(&[4, -1, 5, 8, 7, -6, 3, 2]));
    assert_eq!(descent_set(&out).unwrap().members(), vec![1, 4, 5, 7]);
    assert_eq!(capital_phi(&cyc(&[1, 2])).unwrap(), sp(&[1]));
    assert!(capital_phi(&sp(&[1, 2])).is_err());
}

#[test]
fn degree_one_cyclic_maps_to_empty() {
    for s in [sp(&[1]), sp(&[-1])] {
        assert_eq!(capital_phi(&s).unwrap(), SignedPermutation::identity(0));
    }
    assert_eq!(psi_plus(&SignedPermutation::identity(0), None), sp(&[1]));
}

#[test]
fn psi_plus_examples() {
    assert_eq!(psi_plus(&sp(&[-1, 2, -6, -3, -5, 4]), None), cyc(&[-4, -1, 2, 5, -3, -6, 7]));
    assert_eq!(psi_plus(&sp(&[1]), None), cyc(&[1, 2]));
    assert_eq!(
        psi_plus(&sp(&[-5, -3, 2, 7, 8, 10, -4, -6, 12, 11, 1, 9]), None),
        cyc(&[1, -4, 8, -6, 11, 2, -3, 7, -5, 10, 12, 9, 13])
    );
}

#[test]
fn psi_inverts_phi_exhaustively() {
    for n in 0..=6 {
        for pi in cyclic_plus(n) {
            let s = phi_plus(&pi, None).unwrap();
            assert_eq!(psi_plus(&s, None), pi, "n={n}");
        }
        for s in all_signed(n) {
            let pi = psi_plus(&s, None);
            assert!(is_cyclic(&pi) && has_positive_top(&pi));
            assert_eq!(phi_plus(&pi, None).unwrap(), s, "n={n}");
        }
    }
}

#[test]
fn phi_preserves_descents_exhaustively() {
    for n in 0..=6 {
        for pi in cyclic_all(n) {
            let out = capital_phi(&pi).unwrap();
            assert_eq!(truncated_descent_set(&pi, n).unwrap(), descent_set(&out).unwrap(), "{pi}");
        }
    }
}

#[test]
fn zero_descent_dichotomy() {
    for n in 1..=6 {
        for pi in cyclic_plus(n) {
            let s = phi_plus(&pi, None).unwrap();
            let p0 = pi.image(1) < 0;
            let s0 = s.image(1) < 0;
            assert_eq!(p0 != s0, pi.image(1) > 0 && s.image(1) == -1);
            if p0 {
                assert!(pi.image(1) < -1 && s.image(1) < -1);
            }
        }
    }
}

#[test]
fn inverse_case_tables() {
    for n in 0..=5 {
        for s in all_signed(n) {
            let d = capital_psi_d(&s);
            let db = capital_psi_dbar(&s);
            assert!(is_cyclic(&d) && d.in_d(), "{s} -> {d}");
            assert!(is_cyclic(&db) && !db.in_d(), "{s} -> {db}");
            assert_eq!(capital_phi(&d).unwrap(), s);
            assert_eq!(capital_phi(&db).unwrap(), s);
            assert_ne!(d, db);
        }
    }
    assert_eq!(capital_psi_d(&sp(&[1])), cyc(&[1, 2]));
}

#[test]
fn quadruple_partition() {
    for s in all_signed(3) {
        let q = preimage_quadruple(&s);
        let flipped = s.times_neg1();
        let mut classes = HashSet::new();
        for p in &q {
            classes.insert((has_positive_top(p), p.in_d()));
            let img = capital_phi(p).unwrap();
            assert!(img == s || img == flipped);
        }
        assert_eq!(classes.len(), 4);
    }
}

#[test]
fn psi_keeps_negative_count() {
    for s in all_signed(5) {
        assert_eq!(psi_plus(&s, None).negative_count(), s.negative_count());
    }
}

#[test]
fn trace_does_not_change_results_and_properties_hold() {
    for n in 1..=6 {
        for pi in cyclic_plus(n) {
            let mut t = TransferTrace::enabled();
            let with = phi_plus(&pi, Some(&mut t)).unwrap();
            assert_eq!(with, phi_plus(&pi, None).unwrap());
            let v = check_order_swap_properties(&pi, &t);
            assert!(v.is_empty(), "{pi}: {v:?}");
        }
    }
}

#[test]
fn trace_of_small_example() {
    let pi = cyc(&[-4, -1, 2, 5, -3, -6, 7]);
    let mut t = TransferTrace::enabled();
    phi_plus(&pi, Some(&mut t)).unwrap();
    assert_eq!(t.snapshot(0).to_string(), "(-4)(-1)(2)(5,-3,-6)");
    assert_eq!(t.final_snapshot().to_string(), "(-5)(-1)(2)(4,-3,-6)");
    let swaps: Vec<_> = t.steps.iter().flat_map(|s| s.swaps.iter().map(|e| (e.x, e.y))).collect();
    assert_eq!(swaps, vec![(-4, 5)]);
    assert_eq!(t.initial_last_magnitudes(), vec![4, 1, 2, 6]);
}

#[test]
fn trace_of_minus_example() {
    let q = cyc(&[3, 4, 8, -1, 5, 7, 2, -6, -9]).negate_all();
    let mut t = TransferTrace::enabled();
    let s = phi_plus(&q, Some(&mut t)).unwrap();
    assert_eq!(t.snapshot(0).to_string(), "(-3,-4,-8)(1,-5,-7,-2)(6)");
    assert_eq!(t.final_snapshot().to_string(), "(-3,-5,-7)(1,-4,-8,-2)(6)");
    assert_eq!(s, sp(&[-4, 1, -5, -8, -7, 6, -3, -2]));
}

#[test]
fn bijective_on_each_parity_class() {
    for n in 0..=5 {
        let mut even = HashSet::new();
        let mut odd = HashSet::new();
        for pi in cyclic_all(n) {
            let img = capital_phi(&pi).unwrap();
            let fresh = if pi.in_d() { even.insert(img) } else { odd.insert(img) };
            assert!(fresh);
        }
        let size = all_signed(n).len();
        assert_eq!((even.len(), odd.len()), (size, size));
    }
}

