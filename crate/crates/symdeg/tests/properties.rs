//! Randomized invariant suites for every module. Each test drives its
//! generator from the same fixed seed, so every run exercises the same
//! reproducible inputs.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use symdeg::calculus::{GradientSet, HessianData};
use symdeg::certificates::monomials_of_degree;
use symdeg::duality::sample_on_hypersurface_seeded;
use symdeg::linalg::{det_rational, nullspace, rank};
use symdeg::matrix::{eval_matrix, Degeneration};
use symdeg::report::{Check, CheckStatus, Format, Report, RunConfig};
use symdeg::ring::{Monomial, Poly, Ring, VarId};
use symdeg::sampling::{Sampler, COORD_BOUND};
use symdeg::syzygy::{cloning_syzygies, sparse_syzygies};
use symdeg::DEFAULT_SEED;

fn runner(cases: u32) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&DEFAULT_SEED.to_le_bytes());
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &seed),
    )
}

fn ring3() -> Arc<Ring> {
    Ring::symmetric(3)
}

/// Up to six terms over the six variables of the size-3 symmetric ring,
/// exponents at most two, small integer coefficients.
fn poly3() -> impl Strategy<Value = Poly> {
    let ring = ring3();
    proptest::collection::vec((proptest::collection::vec(0u16..=2, 6), -9i64..=9), 0..6).prop_map(
        move |terms| {
            let mut acc = Poly::zero(&ring);
            for (exps, c) in terms {
                if c == 0 {
                    continue;
                }
                acc += &Poly::from_terms(
                    &ring,
                    vec![(Monomial::from_exps(exps), BigRational::from_integer(c.into()))],
                );
            }
            acc
        },
    )
}

/// A cloning or sparsing at size three or four.
fn family() -> impl Strategy<Value = Degeneration> {
    (3u32..=4, 0u32..=2).prop_map(|(m, pick)| {
        if pick == 0 {
            Degeneration::MdClone { m }
        } else {
            let r = 1 + (pick - 1) % (m - 2);
            Degeneration::Sparse { m, r }
        }
    })
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(nrows, ncols)| {
        proptest::collection::vec(
            proptest::collection::vec(-9i64..=9, ncols..=ncols),
            nrows..=nrows,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect()
        })
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[test]
fn polynomials_form_a_commutative_ring() {
    runner(48)
        .run(&(poly3(), poly3(), poly3()), |(a, b, c)| {
            let ring = ring3();
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &Poly::zero(&ring), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &Poly::one(&ring), a.clone());
            prop_assert!((&a * &Poly::zero(&ring)).is_zero());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            Ok(())
        })
        .unwrap();
}

#[test]
fn leading_data_respects_multiplication() {
    runner(48)
        .run(&(poly3(), poly3()), |(a, b)| {
            if a.is_zero() || b.is_zero() {
                prop_assert!((&a * &b).is_zero());
                return Ok(());
            }
            let product = &a * &b;
            prop_assert_eq!(
                product.degree(),
                Some(a.degree().unwrap() + b.degree().unwrap())
            );
            let expected_lead = a
                .leading_monomial()
                .unwrap()
                .mul(b.leading_monomial().unwrap());
            prop_assert_eq!(product.leading_monomial(), Some(&expected_lead));
            Ok(())
        })
        .unwrap();
}

#[test]
fn derivative_is_linear_and_satisfies_the_product_rule() {
    runner(48)
        .run(&(poly3(), poly3(), 0usize..6), |(a, b, k)| {
            let ring = ring3();
            let v = ring.vars()[k];
            prop_assert_eq!((&a + &b).derivative(v), &a.derivative(v) + &b.derivative(v));
            let product_rule =
                &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
            prop_assert_eq!((&a * &b).derivative(v), product_rule);
            Ok(())
        })
        .unwrap();
}

#[test]
fn evaluation_is_a_ring_homomorphism() {
    runner(48)
        .run(&(poly3(), poly3(), proptest::num::u64::ANY), |(a, b, seed)| {
            let ring = ring3();
            let pt = Sampler::new(seed).sample_point(&ring);
            prop_assert_eq!((&a + &b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
            prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
            Ok(())
        })
        .unwrap();
}

#[test]
fn exact_division_inverts_multiplication() {
    runner(48)
        .run(&(poly3(), poly3()), |(a, b)| {
            if b.is_zero() {
                return Ok(());
            }
            let product = &a * &b;
            let quotient = product.divide_exact(&b).unwrap();
            prop_assert_eq!(quotient, Some(a.clone()));
            if let Some(q) = a.divide_exact(&b).unwrap() {
                prop_assert_eq!(&q * &b, a.clone());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn composing_with_the_identity_changes_nothing() {
    runner(48)
        .run(&poly3(), |a| {
            let ring = ring3();
            let images: Vec<Poly> = ring.vars().iter().map(|&v| Poly::var(&ring, v)).collect();
            prop_assert_eq!(a.compose(&images), a.clone());
            Ok(())
        })
        .unwrap();
}

#[test]
fn sampler_streams_are_reproducible_and_bounded() {
    runner(64)
        .run(&proptest::num::u64::ANY, |seed| {
            let mut a = Sampler::new(seed);
            let mut b = Sampler::new(seed);
            for _ in 0..32 {
                let x = a.next_coord();
                prop_assert_eq!(x, b.next_coord());
                prop_assert!(x.abs() <= COORD_BOUND);
            }
            let ring = ring3();
            prop_assert_eq!(
                Sampler::new(seed).sample_point(&ring),
                Sampler::new(seed).sample_point(&ring)
            );
            Ok(())
        })
        .unwrap();
}

#[test]
fn degenerate_determinants_are_homogeneous_in_surviving_variables() {
    runner(16)
        .run(&family(), |degen| {
            let m = degen.m();
            let mat = degen.build().unwrap();
            let det = mat.determinant();
            prop_assert!(!det.is_zero());
            prop_assert!(det.is_homogeneous());
            prop_assert_eq!(det.degree(), Some(m));
            let surviving = mat.surviving_vars();
            prop_assert!(det
                .support_vars()
                .iter()
                .all(|v| surviving.binary_search(v).is_ok()));
            Ok(())
        })
        .unwrap();
}

#[test]
fn determinant_commutes_with_evaluation() {
    runner(16)
        .run(&(family(), proptest::num::u64::ANY), |(degen, seed)| {
            let mat = degen.build().unwrap();
            let pt = Sampler::new(seed).sample_point(mat.ring());
            let numeric = det_rational(&eval_matrix(&mat.to_poly_rows(), &pt));
            prop_assert_eq!(numeric, mat.determinant().evaluate(&pt));
            Ok(())
        })
        .unwrap();
}

#[test]
fn gradients_satisfy_the_euler_identity() {
    runner(8)
        .run(&family(), |degen| {
            let mat = degen.build().unwrap();
            let f = mat.determinant();
            let grad = GradientSet::of_matrix(&mat).unwrap();
            prop_assert!(grad.satisfies_euler(&f));
            for p in grad.partials() {
                prop_assert!(p.is_homogeneous());
                prop_assert_eq!(p.degree(), Some(degen.m() - 1));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn hessians_are_symmetric_matrices() {
    runner(8)
        .run(&family(), |degen| {
            let mat = degen.build().unwrap();
            let hess = HessianData::compute(&mat.determinant(), mat.surviving_vars());
            for i in 0..hess.size() {
                for j in 0..hess.size() {
                    prop_assert_eq!(&hess.entries()[i][j], &hess.entries()[j][i]);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn syzygy_rank_is_monotone_in_trials_and_capped_by_count() {
    runner(8)
        .run(&(family(), proptest::num::u64::ANY), |(degen, seed)| {
            let set = match degen {
                Degeneration::MdClone { m } => cloning_syzygies(m).unwrap(),
                Degeneration::Sparse { m, r } => sparse_syzygies(m, r).unwrap(),
                _ => unreachable!(),
            };
            let one = set.rank(1, seed);
            let several = set.rank(4, seed);
            prop_assert!(one <= several);
            prop_assert!(several <= set.len());
            prop_assert_eq!(set.rank(4, seed), several);
            Ok(())
        })
        .unwrap();
}

#[test]
fn numeric_rank_determinant_and_nullspace_are_consistent() {
    runner(48)
        .run(&int_matrix(4), |rows| {
            let nrows = rows.len();
            let ncols = rows[0].len();
            let rk = rank(&rows);
            prop_assert!(rk <= nrows.min(ncols));
            let transpose: Vec<Vec<BigRational>> = (0..ncols)
                .map(|j| (0..nrows).map(|i| rows[i][j].clone()).collect())
                .collect();
            prop_assert_eq!(rank(&transpose), rk);
            let kernel = nullspace(&rows, ncols);
            prop_assert_eq!(rk + kernel.len(), ncols);
            for v in &kernel {
                for row in &rows {
                    let dot: BigRational = row
                        .iter()
                        .zip(v)
                        .map(|(a, b)| a * b)
                        .fold(BigRational::zero(), |acc, x| acc + x);
                    prop_assert!(dot.is_zero());
                }
            }
            if nrows == ncols {
                let det = det_rational(&rows);
                prop_assert_eq!(!det.is_zero(), rk == nrows);
                if nrows >= 2 {
                    let mut swapped = rows.clone();
                    swapped.swap(0, 1);
                    prop_assert_eq!(det_rational(&swapped), -det);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn graded_monomial_enumeration_matches_the_stars_and_bars_count() {
    runner(48)
        .run(&(1usize..=4, 0u32..=4), |(n, d)| {
            let ring = ring3();
            let vars: Vec<VarId> = ring.vars()[..n].to_vec();
            let monos = monomials_of_degree(&ring, &vars, d);
            let expected = binomial((n as u64) + (d as u64) - 1, d as u64);
            prop_assert_eq!(monos.len() as u64, expected);
            for m in &monos {
                prop_assert_eq!(m.degree(), d);
            }
            let mut dedup = monos.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), monos.len());
            Ok(())
        })
        .unwrap();
}

#[test]
fn hypersurface_samples_lie_on_the_hypersurface() {
    let f = Degeneration::MdClone { m: 3 }
        .build()
        .unwrap()
        .determinant();
    runner(16)
        .run(&proptest::num::u64::ANY, |seed| {
            let sample = sample_on_hypersurface_seeded(&f, seed).unwrap();
            prop_assert!(f.evaluate(&sample.point).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn reports_round_trip_through_json_and_flatten_to_csv() {
    let status = prop_oneof![
        Just(CheckStatus::Pass),
        Just(CheckStatus::Fail),
        Just(CheckStatus::Skipped)
    ];
    let check = (
        "[a-z]{1,8}/[a-z]{1,8}",
        status,
        "[ -~]{0,12}",
        "[ -~]{0,12}",
        0u128..10_000,
    )
        .prop_map(|(name, status, expected, actual, ms)| Check {
            name,
            status,
            expected,
            actual,
            witness: String::new(),
            ms,
        });
    let report = (proptest::collection::vec(check, 0..6), 3u32..=6).prop_map(|(checks, m)| Report {
        config: RunConfig {
            command: "verify".to_string(),
            suite: Some("counts".to_string()),
            m,
            degeneration: "clone".to_string(),
            r: None,
            trials: 8,
            seed: DEFAULT_SEED,
            max_degree: m,
            allow_slow: false,
            format: Format::Json,
        },
        checks,
    });
    runner(48)
        .run(&report, |rep| {
            let json = rep.to_json().unwrap();
            let parsed: Report = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&parsed, &rep);
            let csv = rep.to_csv();
            prop_assert_eq!(csv.lines().count(), rep.checks.len() + 1);
            let normalized = rep.normalized();
            prop_assert!(normalized.checks.iter().all(|c| c.ms == 0));
            prop_assert_eq!(normalized.passed(), rep.passed());
            Ok(())
        })
        .unwrap();
}
