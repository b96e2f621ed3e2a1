//! Extended formulations: lifted inequality systems with affine projections.
//!
//! Includes the epigraph lift of a monotone maxout network, the vertex-indexed
//! polar-cone description of a support-function epigraph, Minkowski
//! composition of formulations, monotone completion, and the end-to-end
//! certificate pipeline bounding virtual extension complexity by network size.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lex_lp::{solve, LpOutcome};
use crate::maxout_net::{MaxoutNetwork, NeuronKind};
use crate::monotone_split::split;
use crate::polytopes::{newton_polytope, HPolyhedron, VPolytope};
use crate::rational::{dot, neg_vector, rat, unit_vector, zeros, Rational};

/// An H-polyhedron in a lifted space plus an affine projection `y ↦ My + o`.
/// The size of the formulation is the inequality count of the lift;
/// equalities never count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedFormulation {
    lift: HPolyhedron,
    matrix: Vec<Vec<Rational>>,
    offset: Vec<Rational>,
}

impl ExtendedFormulation {
    pub fn new(
        lift: HPolyhedron,
        matrix: Vec<Vec<Rational>>,
        offset: Vec<Rational>,
    ) -> Result<Self> {
        if matrix.len() != offset.len() || matrix.iter().any(|row| row.len() != lift.d) {
            return Err(Error::InvalidInput(
                "projection dimensions are inconsistent with the lift".into(),
            ));
        }
        if !lift.dims_consistent() {
            return Err(Error::InvalidInput("inconsistent lift dimensions".into()));
        }
        Ok(Self {
            lift,
            matrix,
            offset,
        })
    }

    /// Identity projection: the polyhedron is its own (trivial) lift.
    pub fn trivial(h: HPolyhedron) -> Self {
        let d = h.d;
        Self {
            matrix: (0..d).map(|i| unit_vector(d, i)).collect(),
            offset: zeros(d),
            lift: h,
        }
    }

    pub fn lift(&self) -> &HPolyhedron {
        &self.lift
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn lift_dim(&self) -> usize {
        self.lift.d
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    /// Inequality count of the lift.
    pub fn size(&self) -> usize {
        self.lift.size()
    }

    pub fn project(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.lift.d, "dimension mismatch");
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| dot(row, y) + o)
            .collect()
    }

    /// Objective on the lift whose value at `y` is `c · (My)`; the constant
    /// `c·o` is accounted for by the caller.
    pub fn pullback_objective(&self, c: &[Rational]) -> Vec<Rational> {
        assert_eq!(c.len(), self.target_dim(), "dimension mismatch");
        let e = self.lift.d;
        let mut obj = zeros(e);
        for (ci, row) in c.iter().zip(&self.matrix) {
            if !ci.is_zero() {
                for (oj, mj) in obj.iter_mut().zip(row) {
                    *oj += ci * mj;
                }
            }
        }
        obj
    }

    /// Does the lifted point `x` exist, i.e. is `x` in the projection?
    pub fn projects_onto(&self, x: &[Rational]) -> Result<bool> {
        assert_eq!(x.len(), self.target_dim(), "dimension mismatch");
        let mut pinned = self.lift.clone();
        for (row, (o, xi)) in self.matrix.iter().zip(self.offset.iter().zip(x)) {
            pinned.push_equality(row.clone(), xi - o);
        }
        Ok(matches!(
            solve(&pinned, &zeros(self.lift.d))?,
            LpOutcome::Optimal { .. }
        ))
    }
}

/// Epigraph lift of a monotone maxout network: one variable per neuron and
/// one inequality per (unit, row), `y_v ≥ Σ_u w_uv^i y_u`, projecting onto
/// `(x, t)` with `t` the output variable. The lift has exactly `Σ_v k_v`
/// inequalities and projects onto the epigraph of the computed function.
pub fn epigraph_ef(net: &MaxoutNetwork) -> Result<ExtendedFormulation> {
    if !net.is_monotone() {
        return Err(Error::NonMonotone);
    }
    let d = net.d();
    let units = net.topological_units()?;
    let e = d + units.len();

    // Lift variable of each neuron: inputs occupy their coordinate slot,
    // units follow in topological order.
    let mut var_of = vec![usize::MAX; net.neurons().len()];
    for (i, neuron) in net.neurons().iter().enumerate() {
        if let NeuronKind::Input { coord } = neuron.kind {
            var_of[i] = coord;
        }
    }
    for (pos, &u) in units.iter().enumerate() {
        var_of[u] = d + pos;
    }

    let mut lift = HPolyhedron::new(e);
    for &u in &units {
        let NeuronKind::Maxout { rank, incoming } = &net.neurons()[u].kind else {
            unreachable!("topological_units yields maxout units");
        };
        for row in 0..*rank {
            let mut a = zeros(e);
            for arc in incoming {
                let w = &arc.weights[row];
                if !w.is_zero() {
                    a[var_of[arc.from]] += w;
                }
            }
            a[var_of[u]] -= rat(1);
            lift.push_inequality(a, Rational::zero());
        }
    }
    debug_assert_eq!(lift.size(), net.rank_sum());

    let mut matrix: Vec<Vec<Rational>> = (0..d).map(|i| unit_vector(e, i)).collect();
    matrix.push(unit_vector(e, var_of[net.output_index()]));
    ExtendedFormulation::new(lift, matrix, zeros(d + 1))
}

/// `min { t | (x, t) in the projection }` for an epigraph-style formulation
/// whose target space is `(x, t)`. For the lift of a monotone network this
/// equals the network value at `x` exactly.
pub fn epigraph_min_value(ef: &ExtendedFormulation, x: &[Rational]) -> Result<Rational> {
    let d = ef
        .target_dim()
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidInput("epigraph target must include t".into()))?;
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x.len(),
        });
    }
    let mut pinned = ef.lift().clone();
    for i in 0..d {
        pinned.push_equality(ef.matrix[i].clone(), &x[i] - &ef.offset[i]);
    }
    let objective = neg_vector(&ef.matrix[d]);
    let (value, _) = solve(&pinned, &objective)?.expect_optimal("epigraph min-t")?;
    Ok(&ef.offset[d] - value)
}

/// Polar-cone description of the epigraph of the support function: one
/// inequality `x·c - t ≤ 0` per vertex `x`, in `(c, t)`-space. Membership is
/// equivalent to `t ≥ f_P(c)`.
pub fn epi_cone_from_vertices(p: &VPolytope) -> HPolyhedron {
    let d = p.d();
    let mut h = HPolyhedron::new(d + 1);
    for v in p.vertices() {
        let mut a = v.clone();
        a.push(rat(-1));
        h.push_inequality(a, Rational::zero());
    }
    h
}

/// Formulation of a Minkowski sum: disjoint lifts, summed projections. The
/// size is exactly additive.
pub fn ef_minkowski_sum(
    a: &ExtendedFormulation,
    b: &ExtendedFormulation,
) -> Result<ExtendedFormulation> {
    if a.target_dim() != b.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.target_dim(),
            got: b.target_dim(),
        });
    }
    let (ea, eb) = (a.lift_dim(), b.lift_dim());
    let e = ea + eb;
    let pad = |row: &[Rational], left: bool| -> Vec<Rational> {
        let mut r = zeros(e);
        let base = if left { 0 } else { ea };
        for (j, v) in row.iter().enumerate() {
            r[base + j] = v.clone();
        }
        r
    };

    let mut lift = HPolyhedron::new(e);
    for c in &a.lift.inequalities {
        lift.push_inequality(pad(&c.a, true), c.b.clone());
    }
    for c in &b.lift.inequalities {
        lift.push_inequality(pad(&c.a, false), c.b.clone());
    }
    for c in &a.lift.equalities {
        lift.push_equality(pad(&c.a, true), c.b.clone());
    }
    for c in &b.lift.equalities {
        lift.push_equality(pad(&c.a, false), c.b.clone());
    }

    let matrix = a
        .matrix
        .iter()
        .zip(&b.matrix)
        .map(|(ra, rb)| {
            let mut row = pad(ra, true);
            for (j, v) in rb.iter().enumerate() {
                row[ea + j] = v.clone();
            }
            row
        })
        .collect();
    let offset = a
        .offset
        .iter()
        .zip(&b.offset)
        .map(|(x, y)| x + y)
        .collect();
    ExtendedFormulation::new(lift, matrix, offset)
}

/// The baseline formulation `xc(P) ≤ h(P)`: the H-representation itself.
pub fn ef_trivial(h: HPolyhedron) -> ExtendedFormulation {
    ExtendedFormulation::trivial(h)
}

/// The baseline formulation `xc(P) ≤ v(P)`: convex multipliers over the
/// vertex list, with `v(P)` nonnegativity inequalities.
pub fn ef_from_vertices(p: &VPolytope) -> ExtendedFormulation {
    let d = p.d();
    let n = p.num_vertices();
    let mut lift = HPolyhedron::new(n);
    for j in 0..n {
        let mut a = zeros(n);
        a[j] = rat(-1);
        lift.push_inequality(a, Rational::zero());
    }
    lift.push_equality(vec![rat(1); n], rat(1));
    let matrix = (0..d)
        .map(|i| p.vertices().iter().map(|v| v[i].clone()).collect())
        .collect();
    ExtendedFormulation::new(lift, matrix, zeros(d)).expect("vertex lift is consistent")
}

/// Exact support value of the projected polytope in direction `c`, with a
/// lifted maximizer.
pub fn ef_support(ef: &ExtendedFormulation, c: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    if c.len() != ef.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: ef.target_dim(),
            got: c.len(),
        });
    }
    let obj = ef.pullback_objective(c);
    let (value, point) = solve(ef.lift(), &obj)?.expect_optimal("ef support")?;
    Ok((value + dot(c, &ef.offset), point))
}

/// Downward closure of a polytope with nonnegative vertices inside the
/// nonnegative orthant: `{x | ∃ y ∈ P : 0 ≤ x ≤ y}`, built as `0 ≤ x ≤ y`
/// on top of the vertex lift of `P`. Sizes add up as
/// `size = size(vertex lift) + 2|E|`.
pub fn monotone_completion(p: &VPolytope) -> Result<ExtendedFormulation> {
    let dims = p.d();
    if p.vertices()
        .iter()
        .any(|v| v.iter().any(|x| x < &Rational::zero()))
    {
        return Err(Error::InvalidInput(
            "monotone completion requires nonnegative vertex coordinates".into(),
        ));
    }
    let n = p.num_vertices();
    // Lift variables: x (dims), y (dims), convex multipliers (n).
    let e = 2 * dims + n;
    let mut lift = HPolyhedron::new(e);
    for i in 0..dims {
        let mut a = zeros(e);
        a[i] = rat(-1);
        lift.push_inequality(a, Rational::zero()); // 0 <= x_i
    }
    for i in 0..dims {
        let mut a = zeros(e);
        a[i] = rat(1);
        a[dims + i] = rat(-1);
        lift.push_inequality(a, Rational::zero()); // x_i <= y_i
    }
    for j in 0..n {
        let mut a = zeros(e);
        a[2 * dims + j] = rat(-1);
        lift.push_inequality(a, Rational::zero()); // lambda_j >= 0
    }
    for i in 0..dims {
        let mut a = zeros(e);
        a[dims + i] = rat(1);
        for (j, v) in p.vertices().iter().enumerate() {
            a[2 * dims + j] = -v[i].clone();
        }
        lift.push_equality(a, Rational::zero()); // y = V lambda
    }
    let mut ones = zeros(e);
    for j in 0..n {
        ones[2 * dims + j] = rat(1);
    }
    lift.push_equality(ones, rat(1));

    let matrix = (0..dims).map(|i| unit_vector(e, i)).collect();
    ExtendedFormulation::new(lift, matrix, zeros(dims))
}

/// A virtual extended formulation of `P` together with the polytopes
/// witnessing `P + Q = R` and the size `s` of the underlying network.
#[derive(Debug, Clone)]
pub struct VirtualCertificate {
    pub ef_q: ExtendedFormulation,
    pub ef_r: ExtendedFormulation,
    pub q: VPolytope,
    pub r: VPolytope,
    pub s: usize,
}

impl VirtualCertificate {
    pub fn total_size(&self) -> usize {
        self.ef_q.size() + self.ef_r.size()
    }

    /// Checks the defining identity `P + Q = R` and the size bound `4s`.
    pub fn verify(&self, p: &VPolytope) -> bool {
        self.total_size() <= 4 * self.s && p.minkowski_sum(&self.q).equals(&self.r)
    }
}

/// The constructive pipeline bounding virtual extension complexity by network
/// size: build the vertex-max network of `P`, split it into monotone `g - h`,
/// take Newton polytopes `R` and `Q`, and lift both epigraphs. The epigraph
/// formulations describe `epi(f_R)` and `epi(f_Q)` with `2s` inequalities
/// each, and `P + Q = R` holds exactly.
pub fn virtual_ef_certificate(p: &VPolytope) -> Result<VirtualCertificate> {
    let net = MaxoutNetwork::from_vertices(p);
    let s = net.size();
    let parts = split(&net)?;
    let r = newton_polytope(&parts.g)?;
    let q = newton_polytope(&parts.h)?;
    let ef_r = epigraph_ef(&parts.g)?;
    let ef_q = epigraph_ef(&parts.h)?;
    Ok(VirtualCertificate { ef_q, ef_r, q, r, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxout_net::NetworkBuilder;
    use crate::sampling::sample_points;

    fn max_xy_network() -> MaxoutNetwork {
        let mut b = NetworkBuilder::new(2);
        let arcs = vec![
            (b.input(0), vec![rat(1), rat(0)]),
            (b.input(1), vec![rat(0), rat(1)]),
        ];
        let v = b.maxout("v0", 2, arcs).unwrap();
        b.finish(v).unwrap()
    }

    fn unit_square_h() -> HPolyhedron {
        let mut h = HPolyhedron::new(2);
        h.push_inequality(vec![rat(1), rat(0)], rat(1));
        h.push_inequality(vec![rat(-1), rat(0)], rat(0));
        h.push_inequality(vec![rat(0), rat(1)], rat(1));
        h.push_inequality(vec![rat(0), rat(-1)], rat(0));
        h
    }

    #[test]
    fn epigraph_of_max_xy() {
        let net = max_xy_network();
        let ef = epigraph_ef(&net).unwrap();
        assert_eq!(ef.size(), 2);
        assert_eq!(ef.target_dim(), 3);
        for x in sample_points(2, 25, 13) {
            let min_t = epigraph_min_value(&ef, &x).unwrap();
            assert_eq!(min_t, net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn epigraph_size_is_rank_sum() {
        // Three rank-2 units computing the max of four coordinates.
        let mut b = NetworkBuilder::new(4);
        let m01 = b
            .maxout(
                "a",
                2,
                vec![
                    (b.input(0), vec![rat(1), rat(0)]),
                    (b.input(1), vec![rat(0), rat(1)]),
                ],
            )
            .unwrap();
        let m23 = b
            .maxout(
                "b",
                2,
                vec![
                    (b.input(2), vec![rat(1), rat(0)]),
                    (b.input(3), vec![rat(0), rat(1)]),
                ],
            )
            .unwrap();
        let top = b
            .maxout(
                "c",
                2,
                vec![(m01, vec![rat(1), rat(0)]), (m23, vec![rat(0), rat(1)])],
            )
            .unwrap();
        let net = b.finish(top).unwrap();
        let ef = epigraph_ef(&net).unwrap();
        assert_eq!(ef.size(), 6);
    }

    #[test]
    fn epigraph_rejects_non_monotone() {
        let net = crate::maxout_net::relu_network(&[rat(1), rat(-1)]);
        assert!(matches!(epigraph_ef(&net), Err(Error::NonMonotone)));
    }

    #[test]
    fn epi_cone_membership_matches_support() {
        let interval =
            VPolytope::from_extreme_points(1, vec![vec![rat(0)], vec![rat(1)]]).unwrap();
        let cone = epi_cone_from_vertices(&interval);
        // (c, t) feasible iff t >= max{0, c}.
        assert!(cone.contains_point(&[rat(3), rat(3)]));
        assert!(!cone.contains_point(&[rat(3), rat(2)]));
        assert!(cone.contains_point(&[rat(-5), rat(0)]));

        let origin_cone = epi_cone_from_vertices(&VPolytope::origin(2));
        assert_eq!(origin_cone.size(), 1);
        assert!(origin_cone.contains_point(&[rat(9), rat(-9), rat(0)]));
    }

    #[test]
    fn trivial_ef_sizes() {
        let ef = ef_trivial(unit_square_h());
        assert_eq!(ef.size(), 4);
        let (v, _) = ef_support(&ef, &[rat(1), rat(1)]).unwrap();
        assert_eq!(v, rat(2));
    }

    #[test]
    fn ef_sum_supports_add() {
        let seg_a = ef_from_vertices(
            &VPolytope::from_extreme_points(2, vec![vec![rat(0), rat(0)], vec![rat(1), rat(1)]])
                .unwrap(),
        );
        let seg_b = ef_from_vertices(
            &VPolytope::from_extreme_points(2, vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)]])
                .unwrap(),
        );
        let sum = ef_minkowski_sum(&seg_a, &seg_b).unwrap();
        assert_eq!(sum.size(), seg_a.size() + seg_b.size());
        for c in sample_points(2, 30, 17) {
            let (vs, _) = ef_support(&sum, &c).unwrap();
            let (va, _) = ef_support(&seg_a, &c).unwrap();
            let (vb, _) = ef_support(&seg_b, &c).unwrap();
            assert_eq!(vs, va + vb);
        }
    }

    #[test]
    fn completion_of_a_point_is_a_box() {
        let p = VPolytope::singleton(vec![rat(1), rat(1)]);
        let ef = monotone_completion(&p).unwrap();
        assert_eq!(ef.size(), 1 + 2 * 2);
        assert!(ef.projects_onto(&[rat(0), rat(0)]).unwrap());
        assert!(ef.projects_onto(&[rat(1), rat(1)]).unwrap());
        assert!(ef
            .projects_onto(&[Rational::new(1.into(), 2.into()), rat(1)])
            .unwrap());
        assert!(!ef.projects_onto(&[rat(2), rat(0)]).unwrap());
        assert!(!ef.projects_onto(&[rat(-1), rat(0)]).unwrap());
    }

    #[test]
    fn completion_of_a_segment() {
        let p = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
        )
        .unwrap();
        let ef = monotone_completion(&p).unwrap();
        assert_eq!(ef.size(), 2 + 2 * 2);
        // Downward closure of the segment is the triangle with the origin.
        let triangle = VPolytope::new(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
            ],
        )
        .unwrap();
        for v in triangle.vertices() {
            assert!(ef.projects_onto(v).unwrap());
        }
        assert!(!ef.projects_onto(&[rat(1), rat(1)]).unwrap());
        assert!(monotone_completion(&VPolytope::singleton(vec![rat(-1)])).is_err());
    }

    #[test]
    fn certificate_on_a_segment() {
        let p = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(0), rat(0)], vec![rat(1), rat(1)]],
        )
        .unwrap();
        let cert = virtual_ef_certificate(&p).unwrap();
        assert_eq!(cert.s, 1);
        assert!(cert.total_size() <= 4);
        assert!(cert.verify(&p));
    }

    #[test]
    fn certificate_on_the_origin() {
        let p = VPolytope::origin(2);
        let cert = virtual_ef_certificate(&p).unwrap();
        assert_eq!(cert.s, 1);
        assert!(cert.verify(&p));
        assert!(cert.q.equals(&VPolytope::origin(2)));
        assert!(cert.r.equals(&VPolytope::origin(2)));
    }
}
