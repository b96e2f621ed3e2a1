//! Exact rational scalars and the small dense linear algebra the toolkit needs.
//!
//! Everything in this crate computes over arbitrary-precision rationals; there
//! is no floating point anywhere. Rationals cross the JSON boundary as `"p/q"`
//! strings (`"p"` when the denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision exact rational scalar.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p/q`, omitting `/q` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`; decimal notation is rejected to keep exactness explicit.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(bad());
    }
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vector(v: &[String]) -> Result<Vec<Rational>, Error> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Standard unit vector `e_i` in dimension `d`.
pub fn unit_vector(d: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(d);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(a: &[Rational], lambda: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * lambda).collect()
}

pub fn neg_vector(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vector(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Lexicographic comparison of rational vectors; the canonical vertex order.
pub fn lex_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

/// Rank of a list of row vectors, by exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut work: Vec<Vec<Rational>> = rows.to_vec();
    let cols = work.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..work.len()).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(r, pivot);
        let lead = work[r][col].clone();
        for i in 0..work.len() {
            if i != r && !work[i][col].is_zero() {
                let factor = &work[i][col] / &lead;
                for c in col..cols {
                    let delta = &factor * &work[r][c];
                    work[i][c] -= delta;
                }
            }
        }
        r += 1;
        if r == work.len() {
            break;
        }
    }
    r
}

/// The solution set of `rows · x = rhs` as an affine space
/// `{particular + Σ t_k · basis_k}`.
pub struct AffineSpace {
    pub particular: Vec<Rational>,
    /// Kernel basis vectors, one per free column, in column order.
    pub basis: Vec<Vec<Rational>>,
}

impl AffineSpace {
    pub fn is_unique(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Exact Gauss-Jordan solve of `rows · x = rhs`; `None` when inconsistent.
pub fn solve_affine_system(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<AffineSpace> {
    assert_eq!(rows.len(), rhs.len());
    let cols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..aug.len()).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, pivot);
        let lead = aug[r][col].clone();
        for c in col..=cols {
            aug[r][c] = &aug[r][c] / &lead;
        }
        for i in 0..aug.len() {
            if i != r && !aug[i][col].is_zero() {
                let factor = aug[i][col].clone();
                for c in col..=cols {
                    let delta = &factor * &aug[r][c];
                    aug[i][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == aug.len() {
            break;
        }
    }

    // A zero row with nonzero right-hand side means no solution.
    for row in aug.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }

    let mut particular = zeros(cols);
    for (i, &col) in pivot_cols.iter().enumerate() {
        particular[col] = aug[i][cols].clone();
    }

    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = zeros(cols);
        v[free] = Rational::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -aug[i][free].clone();
        }
        basis.push(v);
    }
    Some(AffineSpace { particular, basis })
}

/// A nonzero rational vector orthogonal to all given rows, if one exists.
pub fn kernel_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    if rows.is_empty() {
        return (dim > 0).then(|| unit_vector(dim, 0));
    }
    let space = solve_affine_system(rows, &zeros(rows.len()))?;
    let v = space.basis.into_iter().next()?;
    debug_assert!(rows.iter().all(|row| dot(row, &v).is_zero()));
    Some(v)
}

/// Absolute value helper (num-traits `Signed` is not in scope everywhere).
pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-5/9"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // Non-canonical inputs normalize.
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_decimals_and_zero_denominators() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rank_of_small_matrices() {
        let rows = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&rows[..1]), 1);
        assert_eq!(rank(&[vec![rat(0), rat(0)]]), 0);
    }

    #[test]
    fn solve_unique_system() {
        // x + y = 3, x - y = 1  ->  (2, 1)
        let rows = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let sol = solve_affine_system(&rows, &[rat(3), rat(1)]).unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.particular, vec![rat(2), rat(1)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let rows = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert!(solve_affine_system(&rows, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn affine_basis_spans_solutions() {
        // Single equation x + y + z = 1 in three variables: two free columns.
        let rows = vec![vec![rat(1), rat(1), rat(1)]];
        let sol = solve_affine_system(&rows, &[rat(1)]).unwrap();
        assert_eq!(sol.basis.len(), 2);
        for b in &sol.basis {
            assert!(dot(&rows[0], b).is_zero());
        }
        assert_eq!(dot(&rows[0], &sol.particular), rat(1));
    }

    #[test]
    fn kernel_vector_is_orthogonal() {
        let rows = vec![vec![rat(1), rat(1), rat(0)]];
        let v = kernel_vector(&rows, 3).unwrap();
        assert!(!is_zero_vector(&v));
        assert!(dot(&rows[0], &v).is_zero());
    }
}
