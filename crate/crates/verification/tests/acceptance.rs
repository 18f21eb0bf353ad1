//! One line per acceptance criterion; exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p cyclic-descents-verification --test acceptance`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclic_descents::enumerate::DomainSpec;
use cyclic_descents::stats::stats_of_images;
use cyclic_descents::transfer::capital_phi_unchecked;
use cyclic_descents::{
    capital_phi, descent_set, exact_distribution, exact_moments, from_cycles, iterate,
    normality_diagnostics, phi_plus, refined_descent_table, stats, to_canonical_cycles,
    CycleNotation, SignedPermutation, Statistic,
};
use cyclic_descents_cli::{run_verify, Claim, Shard, VerifyConfig};
use cyclic_descents_verification::{run, Checks, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;

const SEED: u64 = 2025;
const CLT_SAMPLES: usize = 100_000;
const CLT_DEGREES: [usize; 3] = [50, 200, 800];
const SKEW_TOL: f64 = 0.1;
const KURT_TOL: f64 = 0.2;
const KS_TOL_DES: f64 = 0.01;
const KS_TOL_FMAJ: f64 = 0.015;

fn sp(v: &[i32]) -> SignedPermutation {
    SignedPermutation::new(v.to_vec()).unwrap()
}

fn cyc(v: &[i32]) -> SignedPermutation {
    from_cycles(&CycleNotation::from_entries(vec![v.to_vec()]).unwrap())
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn config(claim: Claim, n: usize) -> VerifyConfig {
    VerifyConfig {
        claim,
        n,
        r: 2,
        shard: Shard::WHOLE,
        instrument: false,
        allow_big: false,
        samples: None,
        seed: SEED,
    }
}

/// Runs a verify claim and records its outcome under `label`.
fn claim(c: &mut Checks, cfg: &VerifyConfig, label: &str) -> u128 {
    match run_verify(cfg) {
        Ok(rep) => {
            c.check(rep.passed(), format!("{label}: {}", rep.counterexample.unwrap_or_default()));
            rep.checked
        }
        Err(e) => {
            c.check(false, format!("{label}: {e}"));
            0
        }
    }
}

fn c1_descents_exhaustive() -> Verdict {
    run(1, "truncated descents of pi equal descents of Phi(pi) on C_B(n+1), n <= 7, one thread", |c| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let start = Instant::now();
        let mut total = 0;
        pool.install(|| {
            for n in 0..=7 {
                total += claim(c, &config(Claim::PhiDescents, n), &format!("n={n}"));
            }
        });
        c.within(start.elapsed(), Duration::from_secs(60));
        c.check(total == 1_390_966, format!("checked {total} elements"));
        c.note(format!("{total} elements checked"));
    })
}

fn c2_bijections() -> Verdict {
    run(2, "Phi is a bijection from C_D(n+1) and from its complement onto B_n, n <= 6", |c| {
        for n in 0..=6 {
            for cl in [Claim::BijectionD, Claim::BijectionDbar] {
                claim(c, &config(cl, n), &format!("{} n={n}", cl.name()));
            }
        }
    })
}

fn c3_inverses() -> Verdict {
    run(3, "Psi_D, Psi_Dbar and psi invert Phi and phi in both directions, n <= 6", |c| {
        for n in 0..=6 {
            claim(c, &config(Claim::Inverses, n), &format!("n={n}"));
        }
    })
}

fn c4_refined_tables() -> Verdict {
    run(4, "refined descent tables of B_n, C_D(n+1) and its complement coincide, n <= 6", |c| {
        for n in 0..=6 {
            let b = refined_descent_table(&DomainSpec::b(n), false).unwrap();
            let cd = refined_descent_table(&DomainSpec::cd(n + 1), false).unwrap();
            let cdbar = refined_descent_table(&DomainSpec::cdbar(n + 1), false).unwrap();
            c.check(b.counts == cd.counts, format!("C_D({}) differs from B_{n}", n + 1));
            c.check(b.counts == cdbar.counts, format!("complement of C_D({}) differs from B_{n}", n + 1));
        }
    })
}

fn c5_worked_examples() -> Verdict {
    run(5, "worked examples reproduce exactly", |c| {
        let sigma = sp(&[-3, 1, 2, -5, -4, 6]);
        let pi = sp(&[1, -3, -2, 5, 6, 4]);
        c.check(pi.compose(&sigma).unwrap() == sp(&[2, 1, -3, -6, -5, 4]), "composition");
        c.check(pi.in_d() && !sigma.in_d() && !pi.compose(&sigma).unwrap().in_d(), "D membership");

        let written = CycleNotation::from_entries(vec![vec![-3, 2, 1], vec![-5, -4], vec![6]]).unwrap();
        c.check(from_cycles(&written) == sigma, "cycle decomposition");
        c.check(to_canonical_cycles(&sigma).to_string() == "(-4,-5)(2,1,-3)(6)", "canonical form");

        let s = stats(&sigma);
        c.check((s.des, s.maj, s.neg, s.fmaj) == (2, 3, 3, 9), format!("statistics {s}"));

        let small = cyc(&[-4, -1, 2, 5, -3, -6, 7]);
        c.check(small == sp(&[2, 5, -6, -1, -3, 7, -4]), "small cycle one-line form");
        c.check(phi_plus(&small, None).unwrap() == sp(&[-1, 2, -6, -3, -5, 4]), "small phi");
        c.check(capital_phi(&small).unwrap() == sp(&[1, 2, -6, -3, -5, 4]), "small Phi");

        let big = cyc(&[1, -4, 8, -6, 11, 2, -3, 7, -5, 10, 12, 9, 13]);
        let out = phi_plus(&big, None).unwrap();
        c.check(out == sp(&[-5, -3, 2, 7, 8, 10, -4, -6, 12, 11, 1, 9]), format!("13-element phi gave {out}"));
        c.check(descent_set(&out).unwrap().members() == [0, 6, 7, 9, 10], "13-element phi descents");

        let minus = cyc(&[3, 4, 8, -1, 5, 7, 2, -6, -9]);
        let out = capital_phi(&minus).unwrap();
        c.check(out == sp(&[4, -1, 5, 8, 7, -6, 3, 2]), format!("negative-top Phi gave {out}"));
        c.check(descent_set(&out).unwrap().members() == [1, 4, 5, 7], "negative-top Phi descents");
    })
}

fn c6_moments() -> Verdict {
    run(6, "exact moments of des and fmaj on C_B, C_D and its complement, 5 <= n <= 7", |c| {
        let start = Instant::now();
        let (mut off_quarter, mut on_half) = (Vec::new(), 0);
        for n in 5..=7i64 {
            for d in [DomainSpec::cb(n as usize), DomainSpec::cd(n as usize), DomainSpec::cdbar(n as usize)] {
                let des = exact_moments(&exact_distribution(&d, Statistic::Des, false).unwrap()).unwrap();
                c.check(des.mean == frac(n, 2), format!("{d} des mean {}", des.mean));
                c.check(des.variance == frac(n + 1, 12), format!("{d} des variance {}", des.variance));

                let fmaj = exact_moments(&exact_distribution(&d, Statistic::Fmaj, false).unwrap()).unwrap();
                let var = frac(4 * n * n * n + 6 * n * n - n, 36);
                c.check(fmaj.variance == var, format!("{d} fmaj variance {}", fmaj.variance));
                if fmaj.mean != frac(n * n, 4) {
                    off_quarter.push(format!("{d}={}", fmaj.mean));
                }
                if fmaj.mean == frac(n * n, 2) {
                    on_half += 1;
                }
            }
        }
        c.check(
            off_quarter.is_empty(),
            format!("fmaj mean differs from n^2/4 on {} of 9 domains: {}", off_quarter.len(), off_quarter.join(" ")),
        );
        c.note(format!("fmaj mean equals n^2/2 on {on_half} of 9 domains"));
        c.within(start.elapsed(), Duration::from_secs(300));
    })
}

fn c7_unsigned_equivalence() -> Verdict {
    run(7, "unsigned map agrees with Phi on C_S(n+1), n <= 7", |c| {
        for n in 0..=7 {
            claim(c, &config(Claim::ElizaldeEquivalence, n), &format!("n={n}"));
        }
    })
}

fn c8_colored() -> Verdict {
    run(8, "colored map keeps low descents, is bijective per color and inverts, n <= 3, r <= 3", |c| {
        for n in 1..=3 {
            for r in 1..=3 {
                let cfg = VerifyConfig { r, ..config(Claim::Colored, n) };
                claim(c, &cfg, &format!("n={n} r={r}"));
            }
        }
    })
}

fn c9_gaps() -> Verdict {
    run(9, "des gap in {0,1} and fmaj gap in [0, 2n+1] under Phi on C_B(n), n <= 7", |c| {
        // Bounded by the degree of the image; the looser bound in the degree
        // of the input then holds as well.
        let mut worst = HashMap::new();
        for m in 1..=8usize {
            let bound = 2 * (m as u64 - 1) + 1;
            for e in iterate(&DomainSpec::cb(m), false).unwrap() {
                let pi = e.as_signed().unwrap();
                let sigma = capital_phi_unchecked(pi);
                let (a, b) = (stats_of_images(pi.images()), stats_of_images(sigma.images()));
                let des_ok = a.des == b.des || a.des == b.des + 1;
                let fmaj_ok = b.fmaj <= a.fmaj && a.fmaj - b.fmaj <= bound;
                if !(des_ok && fmaj_ok) {
                    c.check(false, format!("{pi}: des {} -> {}, fmaj {} -> {}", a.des, b.des, a.fmaj, b.fmaj));
                    return;
                }
                let w = worst.entry(m).or_insert(0);
                *w = (*w).max(a.fmaj - b.fmaj);
            }
        }
        let mut w: Vec<_> = worst.into_iter().collect();
        w.sort();
        c.note(format!("largest fmaj gap by degree: {w:?}"));
    })
}

fn c10_clt() -> Verdict {
    run(10, "normality of standardized des and fmaj on C_B(n), seed 2025, 10^5 samples", |c| {
        let start = Instant::now();
        for (stat, ks_tol) in [(Statistic::Des, KS_TOL_DES), (Statistic::Fmaj, KS_TOL_FMAJ)] {
            let mut ks = Vec::new();
            for n in CLT_DEGREES {
                let r = normality_diagnostics(&DomainSpec::cb(n), stat, CLT_SAMPLES, SEED).unwrap();
                c.note(format!(
                    "{stat} n={n}: skew={:.4} kurt={:.4} ks={:.5} ks_continuity={:.5}",
                    r.skewness, r.excess_kurtosis, r.ks, r.ks_continuity
                ));
                ks.push(r.ks);
                if n == 800 {
                    c.check(r.skewness.abs() <= SKEW_TOL, format!("{stat} skewness {:.4}", r.skewness));
                    c.check(r.excess_kurtosis.abs() <= KURT_TOL, format!("{stat} kurtosis {:.4}", r.excess_kurtosis));
                    c.check(r.ks <= ks_tol, format!("{stat} KS {:.5} above {ks_tol}", r.ks));
                }
            }
            c.check(ks.windows(2).all(|w| w[1] <= w[0]), format!("{stat} KS not non-increasing: {ks:?}"));
        }
        c.within(start.elapsed(), Duration::from_secs(120));
    })
}

fn c11_order_swap() -> Verdict {
    run(11, "order and swap properties hold on 10^4 seeded C_B(10)+ inputs, traced = untraced", |c| {
        let cfg = VerifyConfig { samples: Some(10_000), ..config(Claim::OrderSwapProperties, 9) };
        let checked = claim(c, &cfg, "seed 2025");
        c.check(checked == 10_000, format!("checked {checked}"));
    })
}

fn main() -> ExitCode {
    let verdicts = [
        c1_descents_exhaustive(),
        c2_bijections(),
        c3_inverses(),
        c4_refined_tables(),
        c5_worked_examples(),
        c6_moments(),
        c7_unsigned_equivalence(),
        c8_colored(),
        c9_gaps(),
        c10_clt(),
        c11_order_swap(),
    ];
    for v in &verdicts {
        println!("{v}");
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
