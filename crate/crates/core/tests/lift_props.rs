mod common;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resdg::arith::{CoefficientDomain, Ring};
use resdg::lift::{solve_post, solve_pre, ColumnSolver};
use resdg::modules::Matrix;

use common::{product, random_matrix, ring};

fn test_rings() -> Vec<Ring> {
    vec![
        ring(CoefficientDomain::Integers, &["x", "y", "z"]),
        ring(CoefficientDomain::Rationals, &["x", "y", "z"]),
        ring(CoefficientDomain::prime_field(3).unwrap(), &["x", "y", "z"]),
        ring(CoefficientDomain::Integers, &[]),
    ]
}

/// Rank over ℚ by Gaussian elimination.
fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[rank][c];
                for k in 0..ncols {
                    let v = &factor * &m[rank][k];
                    m[i][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_rationals(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.constant_value().unwrap()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trips_are_exact_and_deterministic(seed in any::<u64>(), which in 0usize..4) {
        let r = &test_rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, n, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let d = random_matrix(&mut rng, r, m, n);
        let x = random_matrix(&mut rng, r, n, k);
        let b = product(r, &d, &x);
        let x1 = solve_post(&d, &b, "round trip").unwrap();
        prop_assert_eq!(product(r, &d, &x1), b.clone());
        // same answer every time, and from a reused solver
        prop_assert_eq!(&solve_post(&d, &b, "again").unwrap(), &x1);
        prop_assert_eq!(&ColumnSolver::new(&d).solve(&b, "reused").unwrap(), &x1);
        if *r.domain() == CoefficientDomain::Integers {
            for e in x1.entries() {
                prop_assert!(e.terms().iter().all(|(_, c)| c.is_integer()), "non-integral entry {}", e);
            }
        }
        let y = random_matrix(&mut rng, r, k, m);
        let b = product(r, &y, &d);
        let y1 = solve_pre(&d, &b, "pre").unwrap();
        prop_assert_eq!(product(r, &y1, &d), b.clone());
        prop_assert_eq!(solve_post(&d.transpose(), &b.transpose(), "transposed").unwrap().transpose(), y1);
    }

    /// Over a field, `d·X = b` is solvable exactly when appending `b` does
    /// not raise the rank.
    #[test]
    fn solvability_matches_the_rank_test(seed in any::<u64>()) {
        let r = ring(CoefficientDomain::Rationals, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, n, inner) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=3));
        // low-rank d as a product, so inconsistent systems are common
        let d = product(&r, &random_matrix(&mut rng, &r, m, inner), &random_matrix(&mut rng, &r, inner, n));
        let b = random_matrix(&mut rng, &r, m, 1);
        let aug: Vec<Vec<BigRational>> = to_rationals(&d).into_iter().zip(to_rationals(&b)).map(|(mut row, extra)| {
            row.extend(extra);
            row
        }).collect();
        let solvable = rational_rank(&aug) == rational_rank(&to_rationals(&d));
        match solve_post(&d, &b, "oracle") {
            Ok(x) => {
                prop_assert!(solvable);
                prop_assert_eq!(product(&r, &d, &x), b);
            }
            Err(e) => {
                prop_assert!(!solvable, "rank test says solvable but the solver failed: {}", e);
                prop_assert!(e.is_mathematical());
            }
        }
    }
}

#[test]
fn integer_system_without_integral_solution() {
    let r = ring(CoefficientDomain::Integers, &[]);
    let d = Matrix::from_i64(&r, &[&[2, 4]]);
    let b = Matrix::from_i64(&r, &[&[3]]);
    assert!(solve_post(&d, &b, "odd").is_err());
    let b = Matrix::from_i64(&r, &[&[6]]);
    let x = solve_post(&d, &b, "even").unwrap();
    assert_eq!(&d * &x, b);
}
