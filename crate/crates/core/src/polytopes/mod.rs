//! Exact brute-force polytope oracle at desk scale: V- and H-representations,
//! support functions, Minkowski calculus, faces, vertex enumeration, erosion,
//! and Newton polytopes of monotone networks.
//!
//! `VPolytope` values always hold a minimal vertex set in canonical
//! (lexicographic) order, so structural equality of the vertex lists coincides
//! with geometric equality of the hulls.

mod enumeration;
mod newton;

pub use enumeration::{erode, vertex_enumeration, ACTIVE_SET_LIMIT};
pub use newton::newton_polytope;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lex_lp::standard_feasible;
use crate::rational::{add_vectors, dot, lex_cmp, rat, zeros, Rational};

/// Minimal V-representation of a polytope: no vertex lies in the hull of the
/// others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    d: usize,
    vertices: Vec<Vec<Rational>>,
}

/// One constraint `a·x ≤ b` (or `a·x = b` when used as an equality).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl LinearConstraint {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Self { a, b }
    }
}

/// Inequality-system representation `{x | Ax ≤ b, Ex = f}`. The reported size
/// is the raw inequality count; facet-minimality is not required.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPolyhedron {
    pub d: usize,
    pub inequalities: Vec<LinearConstraint>,
    pub equalities: Vec<LinearConstraint>,
}

impl HPolyhedron {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn push_inequality(&mut self, a: Vec<Rational>, b: Rational) {
        debug_assert_eq!(a.len(), self.d);
        self.inequalities.push(LinearConstraint::new(a, b));
    }

    pub fn push_equality(&mut self, a: Vec<Rational>, b: Rational) {
        debug_assert_eq!(a.len(), self.d);
        self.equalities.push(LinearConstraint::new(a, b));
    }

    /// Inequality count; equalities never count toward the size.
    pub fn size(&self) -> usize {
        self.inequalities.len()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.d, "dimension mismatch");
        self.inequalities.iter().all(|c| dot(&c.a, x) <= c.b)
            && self.equalities.iter().all(|c| dot(&c.a, x) == c.b)
    }

    pub fn dims_consistent(&self) -> bool {
        self.inequalities
            .iter()
            .chain(&self.equalities)
            .all(|c| c.a.len() == self.d)
    }
}

/// The maximizers of a linear objective over a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub direction: Vec<Rational>,
    pub value: Rational,
    pub vertices: Vec<Vec<Rational>>,
}

impl Face {
    pub fn as_polytope(&self, d: usize) -> VPolytope {
        VPolytope::from_extreme_points(d, self.vertices.clone())
            .expect("face vertices form a valid polytope")
    }
}

impl VPolytope {
    /// Builds the convex hull of `points`, pruning to the minimal vertex set.
    pub fn new(d: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        prune_to_vertices(d, points)
    }

    /// Constructs from points already known to be in convex position; they
    /// are deduplicated and canonically ordered but not pruned.
    pub fn from_extreme_points(d: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange("ambient dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for p in &points {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.len(),
                });
            }
        }
        let mut vertices = points;
        vertices.sort_by(|a, b| lex_cmp(a, b));
        vertices.dedup();
        Ok(Self { d, vertices })
    }

    /// The polytope `{0}`.
    pub fn origin(d: usize) -> Self {
        Self {
            d,
            vertices: vec![zeros(d)],
        }
    }

    pub fn singleton(point: Vec<Rational>) -> Self {
        let d = point.len();
        assert!(d > 0);
        Self {
            d,
            vertices: vec![point],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `f_P(c) = max_{x in P} c·x` together with the attaining face.
    pub fn support(&self, c: &[Rational]) -> (Rational, Face) {
        assert_eq!(c.len(), self.d, "dimension mismatch");
        let mut best: Option<Rational> = None;
        for v in &self.vertices {
            let val = dot(c, v);
            best = Some(match best {
                None => val,
                Some(b) => b.max(val),
            });
        }
        let value = best.expect("polytope is nonempty");
        let vertices = self
            .vertices
            .iter()
            .filter(|v| dot(c, v) == value)
            .cloned()
            .collect();
        (
            value.clone(),
            Face {
                direction: c.to_vec(),
                value,
                vertices,
            },
        )
    }

    /// The sub-polytope of maximizers in direction `c`.
    pub fn optimal_face(&self, c: &[Rational]) -> VPolytope {
        let (_, face) = self.support(c);
        face.as_polytope(self.d)
    }

    /// Exact hull membership, decided by LP feasibility of the convex
    /// combination system.
    pub fn contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.d, "dimension mismatch");
        point_in_hull(x, &self.vertices, usize::MAX)
    }

    /// Mutual hull containment; sound and complete for convex hulls.
    pub fn equals(&self, other: &VPolytope) -> bool {
        assert_eq!(self.d, other.d, "dimension mismatch");
        if self.vertices == other.vertices {
            return true;
        }
        self.vertices.iter().all(|v| other.contains(v))
            && other.vertices.iter().all(|v| self.contains(v))
    }

    /// `P + Q`, pruned to its vertex set.
    pub fn minkowski_sum(&self, other: &VPolytope) -> VPolytope {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                sums.push(add_vectors(p, q));
            }
        }
        prune_to_vertices(self.d, sums).expect("sum of nonempty polytopes is nonempty")
    }

    /// `λP` for `λ ≥ 0`; `λ = 0` collapses to the origin.
    pub fn dilate(&self, lambda: &Rational) -> Result<VPolytope> {
        if lambda < &Rational::zero() {
            return Err(Error::NegativeDilation);
        }
        if lambda.is_zero() {
            return Ok(VPolytope::origin(self.d));
        }
        // Scaling is a bijection of the hull, so vertices stay vertices.
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * lambda).collect())
            .collect();
        VPolytope::from_extreme_points(self.d, vertices)
    }

    /// `conv(P ∪ Q)`, pruned to its vertex set.
    pub fn convex_union(&self, other: &VPolytope) -> VPolytope {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let mut points = self.vertices.clone();
        points.extend(other.vertices.iter().cloned());
        prune_to_vertices(self.d, points).expect("union of nonempty polytopes is nonempty")
    }

    /// Translation by a fixed vector.
    pub fn translate(&self, shift: &[Rational]) -> VPolytope {
        assert_eq!(shift.len(), self.d);
        let vertices = self.vertices.iter().map(|v| add_vectors(v, shift)).collect();
        VPolytope::from_extreme_points(self.d, vertices).expect("translate keeps vertices")
    }
}

/// Is `x` in the hull of `points`, ignoring index `skip`?
///
/// Feasibility of `Σ λ_i v_i = x, Σ λ_i = 1, λ ≥ 0` in standard form, which
/// the simplex solves natively without splitting variables.
fn point_in_hull(x: &[Rational], points: &[Vec<Rational>], skip: usize) -> bool {
    let d = x.len();
    let cols: Vec<&Vec<Rational>> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, p)| p)
        .collect();
    if cols.is_empty() {
        return false;
    }
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    for r in 0..d {
        a.push(cols.iter().map(|p| p[r].clone()).collect());
    }
    a.push(vec![rat(1); cols.len()]);
    let mut b = x.to_vec();
    b.push(rat(1));
    standard_feasible(&a, &b)
}

/// Minimal V-representation of `conv(points)`: a point is kept iff it is not
/// in the hull of the others (one membership LP per point, run in parallel).
pub fn prune_to_vertices(d: usize, points: Vec<Vec<Rational>>) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::OutOfRange("ambient dimension must be positive".into()));
    }
    if points.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for p in &points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
    }
    let mut pts = points;
    pts.sort_by(|a, b| lex_cmp(a, b));
    pts.dedup();
    if pts.len() == 1 {
        return Ok(VPolytope { d, vertices: pts });
    }
    // After deduplication, a point is a vertex of the hull iff it is outside
    // the hull of the remaining points, so all tests can run independently.
    let keep: Vec<bool> = pts
        .par_iter()
        .enumerate()
        .map(|(i, p)| !point_in_hull(p, &pts, i))
        .collect();
    let vertices: Vec<Vec<Rational>> = pts
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    debug_assert!(!vertices.is_empty());
    Ok(VPolytope { d, vertices })
}

/// Optimal faces of a Minkowski sum decompose as the sum of the optimal
/// faces of the summands; returns whether that identity holds for `c`.
pub fn check_face_additivity(p: &VPolytope, q: &VPolytope, c: &[Rational]) -> bool {
    let sum = p.minkowski_sum(q);
    let lhs = sum.optimal_face(c);
    let rhs = p.optimal_face(c).minkowski_sum(&q.optimal_face(c));
    lhs.equals(&rhs)
}
