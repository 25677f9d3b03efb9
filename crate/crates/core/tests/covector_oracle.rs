//! Covector sets from `from_arrangement` against a brute-force oracle that
//! decides, for each of the 3^n sign vectors, whether the corresponding
//! open cone is nonempty (exact Fourier–Motzkin elimination over Q).

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use salvetti_core::fixtures::FixtureSpec;
use salvetti_core::om::{from_arrangement, RationalArrangement};
use salvetti_core::sign::{Sign, SignVector};

type Q = BigRational;

/// `coeffs · x >= rhs`.
#[derive(Clone)]
struct Ineq {
    coeffs: Vec<Q>,
    rhs: Q,
}

/// Is `{x : a_i·x = 0 for i in eqs, b_j·x >= 1 for j in ineqs}` nonempty?
fn feasible(dim: usize, mut eqs: Vec<Vec<Q>>, mut ineqs: Vec<Ineq>) -> bool {
    // Substitute away every equality with a nonzero coefficient.
    while let Some(eq) = eqs.pop() {
        let Some(k) = (0..dim).find(|&k| !eq[k].is_zero()) else {
            continue;
        };
        let substitute = |row: &mut Vec<Q>| {
            if row[k].is_zero() {
                return;
            }
            let factor = &row[k] / &eq[k];
            for j in 0..dim {
                let delta = &factor * &eq[j];
                row[j] -= delta;
            }
        };
        for other in &mut eqs {
            substitute(other);
        }
        for ineq in &mut ineqs {
            substitute(&mut ineq.coeffs);
        }
    }
    for k in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in ineqs {
            if ineq.coeffs[k].is_positive() {
                pos.push(ineq);
            } else if ineq.coeffs[k].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (Q::one() / &p.coeffs[k], Q::one() / -&n.coeffs[k]);
                rest.push(Ineq {
                    coeffs: (0..dim).map(|j| &p.coeffs[j] * &sp + &n.coeffs[j] * &sn).collect(),
                    rhs: &p.rhs * &sp + &n.rhs * &sn,
                });
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|i| !i.rhs.is_positive())
}

fn oracle(a: &RationalArrangement) -> BTreeSet<SignVector> {
    let n = a.len();
    let mut out = BTreeSet::new();
    for signs in (0..n)
        .map(|_| [Sign::Pos, Sign::Neg, Sign::Zero])
        .multi_cartesian_product()
    {
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for (row, s) in a.normals.iter().zip(&signs) {
            match s {
                Sign::Zero => eqs.push(row.clone()),
                Sign::Pos => ineqs.push(Ineq {
                    coeffs: row.clone(),
                    rhs: Q::one(),
                }),
                Sign::Neg => ineqs.push(Ineq {
                    coeffs: row.iter().map(|q| -q).collect(),
                    rhs: Q::one(),
                }),
            }
        }
        if feasible(a.dim, eqs, ineqs) {
            out.insert(SignVector::from_signs(&signs).unwrap());
        }
    }
    out
}

fn check_fixture(spec: &str) -> (usize, Vec<usize>) {
    let spec: FixtureSpec = spec.parse().unwrap();
    let a = spec.arrangement().unwrap();
    let om = from_arrangement(&a).unwrap();
    let expected = oracle(&a);
    let got: BTreeSet<SignVector> = om.covectors().iter().copied().collect();
    assert_eq!(got, expected, "{spec}");
    (om.len(), om.height_profile())
}

#[test]
fn oracle_sanity() {
    let q = |v: i64| Q::from_integer(BigInt::from(v));
    // x >= 1 and -x >= 1 is infeasible; x >= 1 alone is feasible.
    let both = vec![
        Ineq {
            coeffs: vec![q(1)],
            rhs: q(1),
        },
        Ineq {
            coeffs: vec![q(-1)],
            rhs: q(1),
        },
    ];
    assert!(!feasible(1, vec![], both.clone()));
    assert!(feasible(1, vec![], both[..1].to_vec()));
    assert!(!feasible(1, vec![vec![q(1)]], both[..1].to_vec()));
}

#[test]
fn generic_lines_in_the_plane() {
    assert_eq!(check_fixture("generic:3:2"), (13, vec![1, 6, 6]));
}

#[test]
fn generic_planes_in_space() {
    assert_eq!(check_fixture("generic:4:3"), (51, vec![1, 12, 24, 14]));
}

#[test]
fn other_realizable_fixtures() {
    assert_eq!(check_fixture("boolean:1").0, 3);
    assert_eq!(check_fixture("boolean:2").0, 9);
    assert_eq!(check_fixture("boolean:3").0, 27);
    assert_eq!(check_fixture("braid:3"), (13, vec![1, 6, 6]));
    assert_eq!(check_fixture("generic:5:3"), (83, vec![1, 20, 40, 22]));
}

#[test]
fn arbitrary_small_arrangement() {
    let rows: Vec<&[i64]> = vec![&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 1, 1]];
    let a = RationalArrangement::from_integers(&rows).unwrap();
    let om = from_arrangement(&a).unwrap();
    let got: BTreeSet<SignVector> = om.covectors().iter().copied().collect();
    assert_eq!(got, oracle(&a));
}
