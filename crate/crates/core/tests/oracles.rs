use cyclic_descents::{cardinality, exact_distribution, DomainSpec, Statistic};
use num_bigint::BigUint;

fn counts(d: &DomainSpec, stat: Statistic) -> Vec<u64> {
    let t = exact_distribution(d, stat, false).unwrap();
    let top = *t.counts.keys().last().unwrap();
    (0..=top).map(|k| t.counts.get(&k).map_or(0, |c| u64::try_from(c).unwrap())).collect()
}

/// Type B Eulerian numbers via B(n,k) = (2k+1) B(n-1,k) + (2n-2k+1) B(n-1,k-1).
fn eulerian_b(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 1..=n as u64 {
        let mut next = vec![0u64; m as usize + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let k64 = k as u64;
            let stay = row.get(k).map_or(0, |&v| (2 * k64 + 1) * v);
            let up = if k > 0 { row.get(k - 1).map_or(0, |&v| (2 * m - 2 * k64 + 1) * v) } else { 0 };
            *slot = stay + up;
        }
        row = next;
    }
    row
}

/// Coefficients of prod_{i=1..n} (1 + q + ... + q^{2i-1}).
fn fmaj_product(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; poly.len() + 2 * i - 1];
        for (a, &c) in poly.iter().enumerate() {
            for slot in &mut next[a..a + 2 * i] {
                *slot += c;
            }
        }
        poly = next;
    }
    poly
}

#[test]
fn descents_on_b_are_type_b_eulerian() {
    assert_eq!(eulerian_b(3), vec![1, 23, 23, 1]);
    for n in 1..=7 {
        assert_eq!(counts(&DomainSpec::b(n), Statistic::Des), eulerian_b(n), "n={n}");
    }
}

#[test]
fn flag_major_index_on_b_is_the_product_formula() {
    for n in 1..=7 {
        assert_eq!(counts(&DomainSpec::b(n), Statistic::Fmaj), fmaj_product(n), "n={n}");
    }
}

#[test]
fn cyclic_classes_match_b_one_degree_down() {
    for n in 1..=7 {
        let b = counts(&DomainSpec::b(n - 1), Statistic::Des);
        for d in [DomainSpec::cd(n), DomainSpec::cdbar(n)] {
            let size = cardinality(&d);
            assert_eq!(size, cardinality(&DomainSpec::b(n - 1)), "{d}");
            let total: u64 = counts(&d, Statistic::Des).iter().sum();
            assert_eq!(BigUint::from(total), size);
            assert_eq!(b.iter().sum::<u64>(), total);
        }
    }
}

#[test]
fn cyclic_sizes() {
    let mut fact = BigUint::from(1u32);
    for n in 1..=30u32 {
        if n > 1 {
            fact *= n - 1;
        }
        let expected = (BigUint::from(1u32) << n) * &fact;
        assert_eq!(cardinality(&DomainSpec::cb(n as usize)), expected, "n={n}");
    }
}

// Frozen from exhaustive enumeration.
#[test]
fn frozen_cyclic_tables() {
    assert_eq!(counts(&DomainSpec::cb(4), Statistic::Des), vec![0, 20, 56, 20]);
    assert_eq!(counts(&DomainSpec::cd(4), Statistic::Des), vec![0, 10, 28, 10]);
    assert_eq!(
        counts(&DomainSpec::cb(4), Statistic::Fmaj),
        vec![0, 1, 3, 4, 5, 8, 11, 11, 10, 11, 11, 8, 5, 4, 3, 1]
    );
}
