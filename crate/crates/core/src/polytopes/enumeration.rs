//! Vertex enumeration by exhaustive active sets, and Minkowski erosion.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lex_lp::{solve, LpOutcome};
use crate::rational::{lex_cmp, neg_vector, rank, solve_affine_system, unit_vector, Rational};

use super::{HPolyhedron, LinearConstraint, VPolytope};

/// Hard cap on the number of candidate active sets.
pub const ACTIVE_SET_LIMIT: u128 = 1_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > ACTIVE_SET_LIMIT {
            return acc;
        }
    }
    acc
}

/// Exact vertex set of a bounded, feasible H-polyhedron.
///
/// Every `(d - rank(equalities))`-subset of inequalities is turned into an
/// equality system together with all declared equalities; each uniquely
/// solvable, feasible system contributes a vertex. Fails on infeasible or
/// unbounded input and on instances beyond [`ACTIVE_SET_LIMIT`].
pub fn vertex_enumeration(h: &HPolyhedron) -> Result<VPolytope> {
    if !h.dims_consistent() {
        return Err(Error::InvalidInput("inconsistent constraint dimensions".into()));
    }
    let d = h.d;
    if d == 0 {
        return Err(Error::OutOfRange("ambient dimension must be positive".into()));
    }

    // Feasibility and boundedness in all +-axis directions.
    for i in 0..d {
        let e = unit_vector(d, i);
        for c in [e.clone(), neg_vector(&e)] {
            match solve(h, &c)? {
                LpOutcome::Optimal { .. } => {}
                LpOutcome::Infeasible => return Err(Error::Infeasible),
                LpOutcome::Unbounded => return Err(Error::Unbounded),
            }
        }
    }

    let eq_rows: Vec<Vec<Rational>> = h.equalities.iter().map(|c| c.a.clone()).collect();
    let eq_rank = rank(&eq_rows);
    let needed = d - eq_rank;
    let m = h.inequalities.len();

    let subsets = binomial(m as u128, needed as u128);
    if subsets > ACTIVE_SET_LIMIT {
        return Err(Error::EnumerationTooLarge {
            subsets,
            limit: ACTIVE_SET_LIMIT,
        });
    }

    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for subset in (0..m).combinations(needed) {
        let mut rows = eq_rows.clone();
        let mut rhs: Vec<Rational> = h.equalities.iter().map(|c| c.b.clone()).collect();
        for &i in &subset {
            rows.push(h.inequalities[i].a.clone());
            rhs.push(h.inequalities[i].b.clone());
        }
        let Some(space) = solve_affine_system(&rows, &rhs) else {
            continue;
        };
        if !space.is_unique() {
            continue;
        }
        if h.contains_point(&space.particular) {
            candidates.push(space.particular);
        }
    }

    if candidates.is_empty() {
        // A feasible bounded polyhedron has at least one vertex.
        return Err(Error::Infeasible);
    }
    candidates.sort_by(|a, b| lex_cmp(a, b));
    candidates.dedup();
    // Each candidate satisfies d independent constraints with equality, so it
    // is a genuine vertex; no pruning needed.
    VPolytope::from_extreme_points(d, candidates)
}

/// Minkowski erosion: shifts every inequality of `r` inward by the support of
/// `p` in its normal direction, then enumerates the vertices.
///
/// The result `q` always satisfies `p + q ⊆ r`; when `p` is a genuine
/// Minkowski summand of `r`, re-adding recovers `r` exactly, which callers
/// verify via `minkowski_sum` and `equals`.
pub fn erode(r: &HPolyhedron, p: &VPolytope) -> Result<VPolytope> {
    if r.d != p.d() {
        return Err(Error::DimensionMismatch {
            expected: r.d,
            got: p.d(),
        });
    }
    let mut shifted = HPolyhedron::new(r.d);
    for c in &r.inequalities {
        let (support, _) = p.support(&c.a);
        shifted
            .inequalities
            .push(LinearConstraint::new(c.a.clone(), &c.b - support));
    }
    // An equality constrains both directions; shift each by the respective
    // support value.
    for c in &r.equalities {
        let (fwd, _) = p.support(&c.a);
        let neg = neg_vector(&c.a);
        let (bwd, _) = p.support(&neg);
        shifted
            .inequalities
            .push(LinearConstraint::new(c.a.clone(), &c.b - fwd));
        shifted
            .inequalities
            .push(LinearConstraint::new(neg, -&c.b - bwd));
    }
    vertex_enumeration(&shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn unit_square_h() -> HPolyhedron {
        let mut h = HPolyhedron::new(2);
        h.push_inequality(vec![rat(1), rat(0)], rat(1));
        h.push_inequality(vec![rat(-1), rat(0)], rat(0));
        h.push_inequality(vec![rat(0), rat(1)], rat(1));
        h.push_inequality(vec![rat(0), rat(-1)], rat(0));
        h
    }

    #[test]
    fn square_has_four_vertices() {
        let v = vertex_enumeration(&unit_square_h()).unwrap();
        assert_eq!(v.num_vertices(), 4);
        assert!(v.contains(&[rat(1), rat(1)]));
    }

    #[test]
    fn simplex_in_three_dims() {
        let mut h = HPolyhedron::new(3);
        for i in 0..3 {
            let mut a = vec![rat(0); 3];
            a[i] = rat(-1);
            h.push_inequality(a, rat(0));
        }
        h.push_inequality(vec![rat(1), rat(1), rat(1)], rat(1));
        let v = vertex_enumeration(&h).unwrap();
        assert_eq!(v.num_vertices(), 4);
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let mut half = HPolyhedron::new(1);
        half.push_inequality(vec![rat(-1)], rat(0));
        assert!(matches!(vertex_enumeration(&half), Err(Error::Unbounded)));

        let mut empty = HPolyhedron::new(1);
        empty.push_inequality(vec![rat(1)], rat(0));
        empty.push_inequality(vec![rat(-1)], rat(-1));
        assert!(matches!(vertex_enumeration(&empty), Err(Error::Infeasible)));
    }

    #[test]
    fn equality_constraints_reduce_the_search() {
        // Segment {x + y = 1, 0 <= x <= 1} in the plane.
        let mut h = HPolyhedron::new(2);
        h.push_equality(vec![rat(1), rat(1)], rat(1));
        h.push_inequality(vec![rat(1), rat(0)], rat(1));
        h.push_inequality(vec![rat(-1), rat(0)], rat(0));
        let v = vertex_enumeration(&h).unwrap();
        assert_eq!(v.num_vertices(), 2);
        assert!(v.contains(&[rat(1), rat(0)]));
        assert!(v.contains(&[rat(0), rat(1)]));
    }

    #[test]
    fn erode_square_by_horizontal_segment() {
        let seg = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)]],
        )
        .unwrap();
        let q = erode(&unit_square_h(), &seg).unwrap();
        let expected = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)]],
        )
        .unwrap();
        assert!(q.equals(&expected));
    }

    #[test]
    fn erode_by_origin_is_identity() {
        let q = erode(&unit_square_h(), &VPolytope::origin(2)).unwrap();
        assert!(q.equals(&vertex_enumeration(&unit_square_h()).unwrap()));
    }

    #[test]
    fn erode_reports_infeasible_when_nothing_fits() {
        let big = VPolytope::from_extreme_points(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(3), rat(0)],
                vec![rat(0), rat(3)],
                vec![rat(3), rat(3)],
            ],
        )
        .unwrap();
        assert!(matches!(
            erode(&unit_square_h(), &big),
            Err(Error::Infeasible)
        ));
    }
}
