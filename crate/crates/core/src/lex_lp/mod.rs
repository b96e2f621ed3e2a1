//! Exact rational linear programming with lexicographic objectives, and the
//! difference-of-two-LPs optimizer over virtual extended formulations.
//!
//! The solver is a two-phase primal simplex with Bland's anti-cycling rule.
//! There is no perturbation: lexicographic objectives are handled literally by
//! solving one LP per objective vector and fixing the achieved value with an
//! equality constraint before the next round. Declared equalities are
//! eliminated exactly by Gauss-Jordan substitution before the simplex runs
//! (no big-M), which also keeps the tableaus small.
//!
//! Internally each solve first runs on machine-word rationals with checked
//! arithmetic and falls back to big rationals on overflow; both paths take
//! the same pivots, so the result is identical either way.

mod scalar;
mod simplex;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::extended_formulation::ExtendedFormulation;
use crate::polytopes::HPolyhedron;
use crate::rational::{
    dot, is_zero_vector, rank, solve_affine_system, sub_vectors, unit_vector, zeros, Rational,
};
use scalar::SimplexScalar;
use simplex::{simplex_standard, StdOutcome};

/// Outcome of a single linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "OPTIMAL",
            LpOutcome::Infeasible => "INFEASIBLE",
            LpOutcome::Unbounded => "UNBOUNDED",
        }
    }

    pub fn expect_optimal(self, context: &'static str) -> Result<(Rational, Vec<Rational>)> {
        match self {
            LpOutcome::Optimal { value, point } => Ok((value, point)),
            other => Err(Error::UnexpectedLpStatus {
                context,
                status: other.status(),
            }),
        }
    }
}

/// An ordered list of objective vectors forming a basis; later vectors only
/// break ties among maximizers of the earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexObjective {
    vectors: Vec<Vec<Rational>>,
}

impl LexObjective {
    pub fn new(vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::NotABasis);
        }
        if rank(&vectors) != d {
            return Err(Error::NotABasis);
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Extends `c` to a basis of d-space: `c` first, then the standard unit
/// vectors, in index order, that keep the list linearly independent.
pub fn complete_basis(c: &[Rational]) -> Result<LexObjective> {
    if is_zero_vector(c) {
        return Err(Error::ZeroObjective);
    }
    let d = c.len();
    let mut vectors = vec![c.to_vec()];
    for j in 0..d {
        if vectors.len() == d {
            break;
        }
        vectors.push(unit_vector(d, j));
        if rank(&vectors) != vectors.len() {
            vectors.pop();
        }
    }
    debug_assert_eq!(vectors.len(), d);
    LexObjective::new(vectors)
}

/// Exact maximum of `objective · x` over the polyhedron, or the correct
/// status. Boundedness is not pre-checked; unboundedness surfaces from the
/// simplex itself.
pub fn solve(h: &HPolyhedron, objective: &[Rational]) -> Result<LpOutcome> {
    if objective.len() != h.d {
        return Err(Error::DimensionMismatch {
            expected: h.d,
            got: objective.len(),
        });
    }
    if !h.dims_consistent() {
        return Err(Error::InvalidInput("inconsistent constraint dimensions".into()));
    }
    let d = h.d;

    // Substitute out the declared equalities: x = x0 + B y with y free.
    let (x0, basis) = if h.equalities.is_empty() {
        (zeros(d), (0..d).map(|i| unit_vector(d, i)).collect::<Vec<_>>())
    } else {
        let rows: Vec<Vec<Rational>> = h.equalities.iter().map(|c| c.a.clone()).collect();
        let rhs: Vec<Rational> = h.equalities.iter().map(|c| c.b.clone()).collect();
        match solve_affine_system(&rows, &rhs) {
            None => return Ok(LpOutcome::Infeasible),
            Some(space) => (space.particular, space.basis),
        }
    };
    let f = basis.len();

    let mut reduced_a: Vec<Vec<Rational>> = Vec::new();
    let mut reduced_b: Vec<Rational> = Vec::new();
    for c in &h.inequalities {
        let row: Vec<Rational> = basis.iter().map(|bv| dot(&c.a, bv)).collect();
        let rhs = &c.b - dot(&c.a, &x0);
        if is_zero_vector(&row) {
            if rhs < Rational::zero() {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        reduced_a.push(row);
        reduced_b.push(rhs);
    }
    let reduced_c: Vec<Rational> = basis.iter().map(|bv| dot(objective, bv)).collect();
    let value_offset = dot(objective, &x0);

    if f == 0 {
        return Ok(LpOutcome::Optimal {
            value: value_offset,
            point: x0,
        });
    }

    // Standard form over y = y+ - y- with one slack per inequality.
    let m = reduced_a.len();
    let ncols = 2 * f + m;
    let mut std_a: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in reduced_a.iter().enumerate() {
        let mut r = Vec::with_capacity(ncols);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|v| -v));
        for j in 0..m {
            r.push(if j == i { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        std_a.push(r);
    }
    let mut std_c: Vec<Rational> = Vec::with_capacity(ncols);
    std_c.extend(reduced_c.iter().cloned());
    std_c.extend(reduced_c.iter().map(|v| -v));
    std_c.extend(std::iter::repeat(Rational::zero()).take(m));

    match run_standard(&std_a, &reduced_b, &std_c) {
        StdOutcome::Infeasible => Ok(LpOutcome::Infeasible),
        StdOutcome::Unbounded => Ok(LpOutcome::Unbounded),
        StdOutcome::Optimal { x, value } => {
            let mut point = x0;
            for (k, bv) in basis.iter().enumerate() {
                let yk = &x[k] - &x[f + k];
                if !yk.is_zero() {
                    for (pi, bi) in point.iter_mut().zip(bv) {
                        *pi += &yk * bi;
                    }
                }
            }
            Ok(LpOutcome::Optimal {
                value: value + value_offset,
                point,
            })
        }
    }
}

/// Feasibility of `a·x = b, x ≥ 0`; used for hull-membership tests.
pub(crate) fn standard_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    matches!(
        run_standard(a, b, &zeros(n)),
        StdOutcome::Optimal { .. }
    )
}

/// Runs the simplex on the narrow scalar first, replaying on big rationals if
/// any intermediate value leaves i128 range.
fn run_standard(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> StdOutcome<Rational> {
    if let Some((an, bn, cn)) = narrow_all(a, b, c) {
        if let Ok(out) = simplex_standard(&an, &bn, &cn) {
            return match out {
                StdOutcome::Optimal { x, value } => StdOutcome::Optimal {
                    x: x.into_iter().map(SimplexScalar::into_rational).collect(),
                    value: value.into_rational(),
                },
                StdOutcome::Infeasible => StdOutcome::Infeasible,
                StdOutcome::Unbounded => StdOutcome::Unbounded,
            };
        }
    }
    simplex_standard::<Rational>(a, b, c).unwrap_or_else(|_| unreachable!("big rationals do not overflow"))
}

type Narrow = Ratio<i128>;

fn narrow_all(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Option<(Vec<Vec<Narrow>>, Vec<Narrow>, Vec<Narrow>)> {
    let conv = |v: &Rational| Narrow::from_rational(v);
    let an: Option<Vec<Vec<Narrow>>> = a
        .iter()
        .map(|row| row.iter().map(conv).collect::<Option<Vec<_>>>())
        .collect();
    let bn: Option<Vec<Narrow>> = b.iter().map(conv).collect();
    let cn: Option<Vec<Narrow>> = c.iter().map(conv).collect();
    Some((an?, bn?, cn?))
}

/// Lexicographically maximal point of the projection of an extended
/// formulation: one LP per objective vector, each fixing its optimal value
/// with an equality before the next round. The projected optimum is unique
/// when the objectives form a basis, regardless of which lifted preimage the
/// simplex lands on.
pub fn solve_lex(ef: &ExtendedFormulation, lex: &LexObjective) -> Result<Vec<Rational>> {
    if lex.dim() != ef.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: ef.target_dim(),
            got: lex.dim(),
        });
    }
    let mut lift = ef.lift().clone();
    let mut last_point: Option<Vec<Rational>> = None;
    for c in lex.vectors() {
        let obj = ef.pullback_objective(c);
        match solve(&lift, &obj)? {
            LpOutcome::Optimal { value, point } => {
                lift.push_equality(obj, value);
                last_point = Some(point);
            }
            LpOutcome::Infeasible => return Err(Error::Infeasible),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        }
    }
    Ok(ef.project(&last_point.expect("lex objective is nonempty")))
}

/// Lexicographic maximization directly over an H-polyhedron.
pub fn solve_lex_polyhedron(h: &HPolyhedron, lex: &LexObjective) -> Result<Vec<Rational>> {
    solve_lex(&ExtendedFormulation::trivial(h.clone()), lex)
}

/// Result of optimizing over `P` given extended formulations of `Q` and `R`
/// with `P + Q = R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualOptimum {
    pub x: Vec<Rational>,
    pub value: Rational,
    pub x_r: Vec<Rational>,
    pub x_q: Vec<Rational>,
}

/// Optimizes `max c·x` over the implicit difference polytope `P`: solves both
/// formulations under the same lexicographic tie-breaking and subtracts.
///
/// The caller is responsible for the precondition that some polytope `P`
/// satisfies `P + Q = R`; no decision procedure exists for it here, and
/// without it the returned difference carries no meaning.
pub fn virtual_optimize(
    ef_q: &ExtendedFormulation,
    ef_r: &ExtendedFormulation,
    c: &[Rational],
) -> Result<VirtualOptimum> {
    if is_zero_vector(c) {
        return Err(Error::ZeroObjective);
    }
    if ef_q.target_dim() != ef_r.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: ef_r.target_dim(),
            got: ef_q.target_dim(),
        });
    }
    if c.len() != ef_r.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: ef_r.target_dim(),
            got: c.len(),
        });
    }
    let lex = complete_basis(c)?;
    let x_q = solve_lex(ef_q, &lex)?;
    let x_r = solve_lex(ef_r, &lex)?;
    let x = sub_vectors(&x_r, &x_q);
    let value = dot(c, &x);
    Ok(VirtualOptimum { x, value, x_r, x_q })
}
