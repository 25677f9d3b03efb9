//! Named oriented-matroid fixtures.
//!
//! * `boolean:n`: coordinate hyperplanes in `Q^n`.
//! * `generic:n:l`: `n` hyperplanes in `Q^l` with moment-curve normals
//!   `(1, t, t², …)` at `t = 1..=n`; any `l` of them are independent.
//! * `braid:n`: hyperplanes `x_i = x_j` for `i < j ≤ n`, written in the
//!   basis of simple roots so the arrangement is essential of rank `n - 1`.
//! * `nonpappus`: the Pappus configuration with the closing collinearity
//!   `{d, e, f}` broken in the chirotope (not realizable).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::om::{
    cocircuits_from_chirotope, from_arrangement, span_from_cocircuits, verify_axioms, Chirotope, OrientedMatroid,
    Rational, RationalArrangement,
};
use crate::sign::Sign;

/// Homogeneous coordinates of the Pappus points `a, b, c, a', b', c', d, e, f`.
/// `{a,b,c}` lie on `y = 0`, `{a',b',c'}` on `y = 2`, and `d, e, f` are the
/// three cross-joins; exactly nine triples are collinear.
pub const PAPPUS_POINTS: [[i64; 3]; 9] = [
    [0, 0, 1],
    [1, 0, 1],
    [3, 0, 1],
    [0, 2, 1],
    [2, 2, 1],
    [5, 2, 1],
    [2, 2, 3],
    [15, 6, 8],
    [13, 4, 5],
];

pub const PAPPUS_LABELS: [&str; 9] = ["a", "b", "c", "a'", "b'", "c'", "d", "e", "f"];

/// Zero-based indices of `d, e, f`.
pub const PAPPUS_CLOSING_TRIPLE: [usize; 3] = [6, 7, 8];

/// The eight collinear triples that survive in the non-Pappus matroid.
pub const NONPAPPUS_LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [0, 4, 6],
    [1, 3, 6],
    [0, 5, 7],
    [2, 3, 7],
    [1, 5, 8],
    [2, 4, 8],
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FixtureSpec {
    Boolean(usize),
    Generic { n: usize, dim: usize },
    Braid(usize),
    NonPappus,
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSpec::Boolean(n) => write!(f, "boolean:{n}"),
            FixtureSpec::Generic { n, dim } => write!(f, "generic:{n}:{dim}"),
            FixtureSpec::Braid(n) => write!(f, "braid:{n}"),
            FixtureSpec::NonPappus => write!(f, "nonpappus"),
        }
    }
}

impl FromStr for FixtureSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FixtureSpec> {
        let unknown = || Error::UnknownFixture(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<usize>().map_err(|_| unknown());
        match parts.as_slice() {
            ["boolean", n] => {
                let n = num(n)?;
                if n == 0 {
                    return Err(unknown());
                }
                Ok(FixtureSpec::Boolean(n))
            }
            ["generic", n, l] => {
                let (n, dim) = (num(n)?, num(l)?);
                if dim == 0 || n < dim {
                    return Err(unknown());
                }
                Ok(FixtureSpec::Generic { n, dim })
            }
            ["braid", n] => {
                let n = num(n)?;
                if n < 2 {
                    return Err(unknown());
                }
                Ok(FixtureSpec::Braid(n))
            }
            ["nonpappus"] => Ok(FixtureSpec::NonPappus),
            _ => Err(unknown()),
        }
    }
}

impl FixtureSpec {
    /// Ground-set size of the generated matroid.
    pub fn ground_set_size(&self) -> usize {
        match self {
            FixtureSpec::Boolean(n) => *n,
            FixtureSpec::Generic { n, .. } => *n,
            FixtureSpec::Braid(n) => n * (n - 1) / 2,
            FixtureSpec::NonPappus => 9,
        }
    }

    /// The realizing arrangement, when there is one.
    pub fn arrangement(&self) -> Option<RationalArrangement> {
        let int = |x: i64| Rational::from_integer(BigInt::from(x));
        let normals: Vec<Vec<Rational>> = match self {
            FixtureSpec::Boolean(n) => (0..*n)
                .map(|i| (0..*n).map(|j| int((i == j) as i64)).collect())
                .collect(),
            FixtureSpec::Generic { n, dim } => (1..=*n as i64)
                .map(|t| (0..*dim as u32).map(|k| int(t.pow(k))).collect())
                .collect(),
            FixtureSpec::Braid(n) => {
                let mut rows = Vec::new();
                for i in 0..*n {
                    for j in i + 1..*n {
                        // e_i - e_j = α_i + … + α_{j-1}
                        rows.push((0..n - 1).map(|k| int((i <= k && k < j) as i64)).collect());
                    }
                }
                rows
            }
            FixtureSpec::NonPappus => return None,
        };
        let dim = normals[0].len();
        Some(RationalArrangement::new(dim, normals).expect("fixture normals are nonzero"))
    }

    pub fn generate(&self) -> Result<OrientedMatroid> {
        let om = match self.arrangement() {
            Some(a) => from_arrangement(&a)?,
            None => nonpappus()?,
        };
        let report = verify_axioms(om.covectors())?;
        match report.first_failure() {
            Some(v) => Err(Error::AxiomFailure(v.clone())),
            None => Ok(om),
        }
    }
}

pub fn generate_fixture(spec: &FixtureSpec) -> Result<OrientedMatroid> {
    spec.generate()
}

/// Determinant chirotope of the Pappus configuration.
pub fn pappus_chirotope() -> Chirotope {
    let rows: Vec<&[i64]> = PAPPUS_POINTS.iter().map(|r| r.as_slice()).collect();
    let arrangement = RationalArrangement::from_integers(&rows).expect("nonzero points");
    Chirotope::from_arrangement(&arrangement).expect("Pappus chirotope is nonzero")
}

/// The Pappus chirotope with `χ(d, e, f)` set to `sign`.
pub fn nonpappus_chirotope(sign: Sign) -> Chirotope {
    let mut chi = pappus_chirotope();
    chi.set_sorted(&PAPPUS_CLOSING_TRIPLE, sign);
    chi
}

/// The shipped non-Pappus chirotope: `χ(d,e,f) = +` if it spans a valid
/// oriented matroid, else `-`.
pub fn nonpappus_fixture_chirotope() -> Result<Chirotope> {
    Ok(nonpappus_with_chirotope()?.0)
}

pub fn nonpappus() -> Result<OrientedMatroid> {
    Ok(nonpappus_with_chirotope()?.1)
}

fn nonpappus_with_chirotope() -> Result<(Chirotope, OrientedMatroid)> {
    let mut last_err = None;
    for sign in [Sign::Pos, Sign::Neg] {
        let chi = nonpappus_chirotope(sign);
        let cocircuits = cocircuits_from_chirotope(&chi)?;
        match span_from_cocircuits(&cocircuits) {
            Ok(om) => return Ok((chi, om)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two attempts made"))
}

/// Fixtures exercised by the acceptance suite.
pub fn standard_fixtures() -> Vec<FixtureSpec> {
    vec![
        FixtureSpec::Boolean(1),
        FixtureSpec::Boolean(2),
        FixtureSpec::Boolean(3),
        FixtureSpec::Generic { n: 3, dim: 2 },
        FixtureSpec::Braid(3),
        FixtureSpec::Generic { n: 4, dim: 3 },
        FixtureSpec::Generic { n: 5, dim: 3 },
        FixtureSpec::NonPappus,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["boolean:2", "generic:4:3", "braid:3", "nonpappus"] {
            assert_eq!(s.parse::<FixtureSpec>().unwrap().to_string(), s);
        }
        for bad in ["boolean", "generic:2:3", "braid:1", "pappus", "boolean:x"] {
            assert!(matches!(bad.parse::<FixtureSpec>(), Err(Error::UnknownFixture(_))));
        }
    }

    #[test]
    fn small_fixture_counts() {
        let om = FixtureSpec::Boolean(2).generate().unwrap();
        assert_eq!((om.len(), om.topes().len()), (9, 4));
        let om = FixtureSpec::Generic { n: 4, dim: 3 }.generate().unwrap();
        assert_eq!((om.len(), om.topes().len()), (51, 14));
        let om = FixtureSpec::Braid(3).generate().unwrap();
        assert_eq!((om.len(), om.rank()), (13, 2));
    }

    #[test]
    fn pappus_has_nine_lines() {
        let chi = pappus_chirotope();
        let zeros: Vec<&Vec<usize>> = chi
            .subsets()
            .iter()
            .zip(chi.values())
            .filter(|(_, s)| s.is_zero())
            .map(|(t, _)| t)
            .collect();
        assert_eq!(zeros.len(), 9);
        assert!(zeros.iter().any(|t| t.as_slice() == PAPPUS_CLOSING_TRIPLE));
        for line in NONPAPPUS_LINES {
            assert!(zeros.iter().any(|t| t.as_slice() == line));
        }
    }
}
