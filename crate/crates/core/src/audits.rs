//! Seeded, deterministic verification sweeps over the toolkit's exact
//! identities. The CLI `verify` command and the acceptance suite both run
//! these; all checks are exact rational equalities with zero tolerance.
//!
//! Independent cases fan out over worker threads; case ordering in the report
//! is canonical and independent of the schedule.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::extended_formulation::{
    ef_from_vertices, epigraph_ef, epigraph_min_value, monotone_completion, virtual_ef_certificate,
    ef_support,
};
use crate::instances::{
    batcher_comparators, cross_polytope, cube, hypersimplex, permutahedron, random_network,
    random_vpolytope, sorting_network_ef, RandomNetConfig,
};
use crate::lex_lp::{complete_basis, solve_lex, virtual_optimize, LexObjective};
use crate::maxout_net::{MaxoutNetwork, NeuronKind};
use crate::monotone_split::split;
use crate::polytopes::{check_face_additivity, erode, newton_polytope, HPolyhedron, VPolytope};
use crate::rational::{is_zero_vector, kernel_vector, rat, ratio, sub_vectors, unit_vector, zeros, Rational};
use crate::sampling::sample_points;

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

impl CaseOutcome {
    fn pass(id: String, detail: impl Into<String>) -> Self {
        Self {
            id,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(id: String, detail: impl Into<String>) -> Self {
        Self {
            id,
            pass: false,
            detail: detail.into(),
        }
    }

    fn check(id: String, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            id,
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn summary(&self) -> String {
        let failed = self.cases.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            format!("{}: PASS ({} cases)", self.suite, self.cases.len())
        } else {
            format!(
                "{}: FAIL ({failed}/{} cases failed)",
                self.suite,
                self.cases.len()
            )
        }
    }
}

fn run_case(id: String, body: impl FnOnce() -> Result<CaseOutcome>) -> CaseOutcome {
    match body() {
        Ok(outcome) => outcome,
        Err(e) => CaseOutcome::fail(id, format!("error: {e}")),
    }
}

/// Per-case seeds drawn once from a master stream, so parallel execution
/// cannot perturb the cases.
fn case_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

// ---------------------------------------------------------------------------
// Monotone split: f = g - h exactly, sizes and ranks preserved.
// ---------------------------------------------------------------------------

pub fn split_suite(count: usize, seed: u64, samples: usize) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("split/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=4);
                let s = rng.gen_range(1..=6);
                let net = random_network(RandomNetConfig::rank2(d, s), rng.gen())?;
                let parts = split(&net)?;
                if !parts.g.is_monotone() || !parts.h.is_monotone() {
                    return Ok(CaseOutcome::fail(id, "component not monotone"));
                }
                if parts.g.size() != s || parts.h.size() != s {
                    return Ok(CaseOutcome::fail(
                        id,
                        format!("sizes {} / {} != {s}", parts.g.size(), parts.h.size()),
                    ));
                }
                if !ranks_match(&net, &parts.g) || !ranks_match(&net, &parts.h) {
                    return Ok(CaseOutcome::fail(id, "unit ranks changed"));
                }
                for x in sample_points(d, samples, case_seed) {
                    let f = net.evaluate(&x)?;
                    let diff = parts.g.evaluate(&x)? - parts.h.evaluate(&x)?;
                    if f != diff {
                        return Ok(CaseOutcome::fail(
                            id,
                            format!("f(x) != g(x) - h(x) at {x:?}"),
                        ));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d} s={s} exact")))
            })
        })
        .collect();
    SuiteReport {
        suite: "split".into(),
        cases,
    }
}

fn ranks_match(a: &MaxoutNetwork, b: &MaxoutNetwork) -> bool {
    a.neurons().iter().all(|n| match &n.kind {
        NeuronKind::Input { .. } => true,
        NeuronKind::Maxout { rank, .. } => {
            b.index_of(&n.id).is_some_and(|j| {
                matches!(&b.neurons()[j].kind, NeuronKind::Maxout { rank: rb, .. } if rb == rank)
            })
        }
    })
}

// ---------------------------------------------------------------------------
// Epigraph formulation: exactly Σ k_v inequalities, min-t equals evaluation.
// ---------------------------------------------------------------------------

pub fn epigraph_suite(count: usize, seed: u64, samples: usize) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("epigraph/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=4);
                let s = rng.gen_range(1..=6);
                let max_rank = rng.gen_range(2..=4);
                let net = random_network(RandomNetConfig::monotone(d, s, max_rank), rng.gen())?;
                let ef = epigraph_ef(&net)?;
                if ef.size() != net.rank_sum() {
                    return Ok(CaseOutcome::fail(
                        id,
                        format!("size {} != Σ k_v = {}", ef.size(), net.rank_sum()),
                    ));
                }
                for x in sample_points(d, samples, case_seed) {
                    let min_t = epigraph_min_value(&ef, &x)?;
                    let f = net.evaluate(&x)?;
                    if min_t != f {
                        return Ok(CaseOutcome::fail(
                            id,
                            format!("min t = {min_t} != f(x) = {f} at {x:?}"),
                        ));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d} s={s} size={}", ef.size())))
            })
        })
        .collect();
    SuiteReport {
        suite: "epigraph-ef".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Certificate pipeline: P + Newt(h) = Newt(g), size bound 4s, epigraph audit.
// ---------------------------------------------------------------------------

fn certificate_case(id: String, p: &VPolytope, audit_directions: usize, seed: u64) -> CaseOutcome {
    run_case(id.clone(), || {
        let cert = virtual_ef_certificate(p)?;
        if cert.total_size() > 4 * cert.s {
            return Ok(CaseOutcome::fail(
                id,
                format!("EF sizes {} exceed 4s = {}", cert.total_size(), 4 * cert.s),
            ));
        }
        if !p.minkowski_sum(&cert.q).equals(&cert.r) {
            return Ok(CaseOutcome::fail(id, "P + Q != R"));
        }
        // The two lifts describe the epigraphs of the support functions of R
        // and Q: min-t on sampled directions must match the supports.
        for c in sample_points(p.d(), audit_directions, seed) {
            let r_min = epigraph_min_value(&cert.ef_r, &c)?;
            if r_min != cert.r.support(&c).0 {
                return Ok(CaseOutcome::fail(id, format!("epi(f_R) audit failed at {c:?}")));
            }
            let q_min = epigraph_min_value(&cert.ef_q, &c)?;
            if q_min != cert.q.support(&c).0 {
                return Ok(CaseOutcome::fail(id, format!("epi(f_Q) audit failed at {c:?}")));
            }
        }
        Ok(CaseOutcome::pass(
            id,
            format!("s={} total={} <= {}", cert.s, cert.total_size(), 4 * cert.s),
        ))
    })
}

pub fn certificate_suite(count: usize, seed: u64, audit_directions: usize) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let mut jobs: Vec<(String, VPolytope)> = Vec::new();
    for (i, &case_seed) in seeds.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        let d = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=5);
        if let Ok(p) = random_vpolytope(d, m, rng.gen()) {
            jobs.push((format!("certificate/random-{i:03}"), p));
        }
    }
    if let Ok((v, _)) = cube(2) {
        jobs.push(("certificate/cube-2".into(), v));
    }
    if let Ok((v, _)) = cross_polytope(2) {
        jobs.push(("certificate/cross-2".into(), v));
    }
    if let Ok((v, _)) = permutahedron(3) {
        jobs.push(("certificate/permutahedron-3".into(), v));
    }
    let cases: Vec<CaseOutcome> = jobs
        .par_iter()
        .map(|(id, p)| certificate_case(id.clone(), p, audit_directions, seed))
        .collect();
    SuiteReport {
        suite: "certificate".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Algorithm over virtual formulations: x_P feasible and optimal, exactly.
// ---------------------------------------------------------------------------

/// A direction orthogonal to an edge of `r`, with ties guaranteed whenever an
/// edge exists: found by maximizing the separation margin of a vertex pair.
fn tie_direction(r: &VPolytope) -> Result<Vec<Rational>> {
    let d = r.d();
    let vs = r.vertices();
    if vs.len() == 1 || d == 1 {
        return Ok(unit_vector(d, 0));
    }
    if vs.len() == 2 {
        let diff = sub_vectors(&vs[1], &vs[0]);
        return Ok(kernel_vector(&[diff], d).expect("proper segment has a normal"));
    }
    for (i, j) in (0..vs.len()).tuple_combinations() {
        // Variables (c, eps): maximize eps subject to c·(u - v) = 0,
        // c·(u - w) >= eps for all other vertices w, and a unit box on c.
        let (u, v) = (&vs[i], &vs[j]);
        let mut h = HPolyhedron::new(d + 1);
        let mut eq = sub_vectors(u, v);
        eq.push(rat(0));
        h.push_equality(eq, rat(0));
        for (k, w) in vs.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let mut row: Vec<Rational> = sub_vectors(w, u);
            row.push(rat(1));
            h.push_inequality(row, rat(0)); // eps <= c·(u - w)
        }
        for t in 0..d {
            let mut e = unit_vector(d + 1, t);
            h.push_inequality(e.clone(), rat(1));
            for x in e.iter_mut() {
                *x = -x.clone();
            }
            h.push_inequality(e, rat(1));
        }
        let mut objective = zeros(d + 1);
        objective[d] = rat(1);
        if let crate::lex_lp::LpOutcome::Optimal { value, point } =
            crate::lex_lp::solve(&h, &objective)?
        {
            if value > rat(0) {
                let c: Vec<Rational> = point[..d].to_vec();
                debug_assert!(!is_zero_vector(&c));
                return Ok(c);
            }
        }
    }
    // No strict edge certificate found; fall back to a chord normal.
    let diff = sub_vectors(&vs[1], &vs[0]);
    Ok(kernel_vector(&[diff], d).expect("distinct vertices"))
}

fn random_nonzero_direction(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    loop {
        let c: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-9..=9))).collect();
        if !is_zero_vector(&c) {
            return c;
        }
    }
}

pub fn virtual_optimize_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("virtual-optimize/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let p = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let q = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let r = p.minkowski_sum(&q);
                let ef_q = ef_from_vertices(&q);
                let ef_r = ef_from_vertices(&r);

                let mut objectives = vec![
                    ("generic", random_nonzero_direction(&mut rng, d)),
                    ("tie", tie_direction(&r)?),
                ];
                objectives.push(("axis", unit_vector(d, 0)));

                for (label, c) in objectives {
                    let out = virtual_optimize(&ef_q, &ef_r, &c)?;
                    if !p.contains(&out.x) {
                        return Ok(CaseOutcome::fail(
                            id,
                            format!("{label}: x_P = {:?} not in P", out.x),
                        ));
                    }
                    let (support, _) = p.support(&c);
                    if out.value != support {
                        return Ok(CaseOutcome::fail(
                            id,
                            format!("{label}: value {} != support {support}", out.value),
                        ));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d} ok")))
            })
        })
        .collect();
    SuiteReport {
        suite: "virtual-optimize".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Face additivity of Minkowski sums, and lexicographic singleton additivity.
// ---------------------------------------------------------------------------

pub fn face_additivity_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("face-additivity/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let p = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let q = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let generic = random_nonzero_direction(&mut rng, d);
                let degenerate = tie_direction(&p.minkowski_sum(&q))?;
                for (label, c) in [("generic", generic), ("degenerate", degenerate)] {
                    if !check_face_additivity(&p, &q, &c) {
                        return Ok(CaseOutcome::fail(
                            id,
                            format!("{label}: face(P+Q, c) != face(P, c) + face(Q, c)"),
                        ));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d}")))
            })
        })
        .collect();
    SuiteReport {
        suite: "face-additivity".into(),
        cases,
    }
}

pub fn lex_additivity_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("lex-additivity/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let p = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let q = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let r = p.minkowski_sum(&q);
                // A tie-inducing leading objective exercises the degenerate
                // path; later vectors complete a basis.
                let lead = if rng.gen_bool(0.5) {
                    tie_direction(&r)?
                } else {
                    random_nonzero_direction(&mut rng, d)
                };
                let lex: LexObjective = complete_basis(&lead)?;
                let x_p = solve_lex(&ef_from_vertices(&p), &lex)?;
                let x_q = solve_lex(&ef_from_vertices(&q), &lex)?;
                let x_r = solve_lex(&ef_from_vertices(&r), &lex)?;
                let sum: Vec<Rational> = x_p
                    .iter()
                    .zip(&x_q)
                    .map(|(a, b)| a + b)
                    .collect();
                if sum != x_r {
                    return Ok(CaseOutcome::fail(
                        id,
                        format!("x_P + x_Q = {sum:?} != x_R = {x_r:?}"),
                    ));
                }
                if !p.contains(&x_p) || !q.contains(&x_q) || !r.contains(&x_r) {
                    return Ok(CaseOutcome::fail(id, "lex optimum escaped its polytope"));
                }
                Ok(CaseOutcome::pass(id, format!("d={d}")))
            })
        })
        .collect();
    SuiteReport {
        suite: "lex-additivity".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Sorting-network formulation of the permutahedron.
// ---------------------------------------------------------------------------

/// Exact support of the permutahedron: greedily assigns the largest values to
/// the largest objective coordinates (the brute-force maximum over all
/// permutation vertices, by the rearrangement argument).
fn permutahedron_support(n: usize, c: &[Rational]) -> Rational {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| c[b].cmp(&c[a]));
    let mut total = Rational::from_integer(0.into());
    for (rank, &i) in order.iter().enumerate() {
        total += &c[i] * rat((n - rank) as i64);
    }
    total
}

pub fn sorting_ef_suite(n: usize) -> SuiteReport {
    let mut cases = Vec::new();
    let suite = format!("sorting-ef/{n}");
    let ef = match sorting_network_ef(n) {
        Ok(ef) => ef,
        Err(e) => {
            return SuiteReport {
                suite,
                cases: vec![CaseOutcome::fail("build".into(), format!("error: {e}"))],
            }
        }
    };
    let comparators = batcher_comparators(n).expect("n validated by the builder");

    let expected_comparators = match n {
        2 => Some(1),
        4 => Some(5),
        8 => Some(19),
        _ => None,
    };
    if let Some(expected) = expected_comparators {
        cases.push(CaseOutcome::check(
            "comparator-count".into(),
            comparators.len() == expected,
            format!("{} comparators (expected {expected})", comparators.len()),
        ));
    }
    cases.push(CaseOutcome::check(
        "size".into(),
        ef.size() == 2 * comparators.len(),
        format!("size {} = 2 x {}", ef.size(), comparators.len()),
    ));
    let facets = (1usize << n) - 2;
    cases.push(CaseOutcome::check(
        "below-facet-count".into(),
        ef.size() < facets,
        format!("{} < 2^{n} - 2 = {facets}", ef.size()),
    ));

    // (a) Every permutation vertex lifts feasibly: one LP per vertex.
    let vertices: Vec<Vec<Rational>> = (1..=n as i64).map(rat).permutations(n).collect();
    let lifted = vertices
        .par_iter()
        .map(|v| matches!(ef.projects_onto(v), Ok(true)))
        .filter(|ok| !ok)
        .count();
    cases.push(CaseOutcome::check(
        "vertex-lifting".into(),
        lifted == 0,
        format!("{} of {} vertices failed to lift", lifted, vertices.len()),
    ));

    // (b) Support equality on every subset-facet normal and on the equality
    // normal in both directions, which proves containment both ways.
    let mut normals: Vec<Vec<Rational>> = Vec::with_capacity(facets + 2);
    for size in 1..n {
        for subset in (0..n).combinations(size) {
            let mut a = zeros(n);
            for i in subset {
                a[i] = rat(1);
            }
            normals.push(a);
        }
    }
    normals.push(vec![rat(1); n]);
    normals.push(vec![rat(-1); n]);
    let bad_support = normals
        .par_iter()
        .map(|a| match ef_support(&ef, a) {
            Ok((value, _)) => value == permutahedron_support(n, a),
            Err(_) => false,
        })
        .filter(|ok| !ok)
        .count();
    cases.push(CaseOutcome::check(
        "support-equality".into(),
        bad_support == 0,
        format!("{} of {} directions disagreed", bad_support, normals.len()),
    ));

    SuiteReport { suite, cases }
}

// ---------------------------------------------------------------------------
// Hypersimplex summands of the permutahedron, recovered by erosion.
// ---------------------------------------------------------------------------

pub fn summand_suite(max_n: usize) -> SuiteReport {
    let mut jobs = Vec::new();
    for n in 3..=max_n {
        for k in 1..n {
            jobs.push((n, k));
        }
    }
    let cases: Vec<CaseOutcome> = jobs
        .par_iter()
        .map(|&(n, k)| {
            let id = format!("summand/pi{n}-delta({k},{n})");
            run_case(id.clone(), || {
                let (pi_v, pi_h) = permutahedron(n)?;
                let delta = hypersimplex(k, n)?;
                let q = erode(&pi_h, &delta)?;
                if !delta.minkowski_sum(&q).equals(&pi_v) {
                    return Ok(CaseOutcome::fail(id, "Δ + erode(Π, Δ) != Π"));
                }
                Ok(CaseOutcome::pass(id, format!("|V(Q)| = {}", q.num_vertices())))
            })
        })
        .collect();
    SuiteReport {
        suite: "summand".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Monotone completion: size bookkeeping, containment, downward closure.
// ---------------------------------------------------------------------------

fn completion_case(id: String, p: &VPolytope, samples: usize, seed: u64) -> CaseOutcome {
    run_case(id.clone(), || {
        let d = p.d();
        let ef = monotone_completion(p)?;
        let expected = p.num_vertices() + 2 * d;
        if ef.size() != expected {
            return Ok(CaseOutcome::fail(
                id,
                format!("size {} != v(P) + 2|E| = {expected}", ef.size()),
            ));
        }
        for v in p.vertices() {
            if !ef.projects_onto(v)? {
                return Ok(CaseOutcome::fail(id, format!("vertex {v:?} missing")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            // x: a random convex combination of the vertices, hence in the set.
            let mut weights: Vec<Rational> = (0..p.num_vertices())
                .map(|_| rat(rng.gen_range(0..=5)))
                .collect();
            if weights.iter().all(|w| w == &rat(0)) {
                weights[0] = rat(1);
            }
            let total = weights.iter().fold(rat(0), |acc, w| acc + w);
            let mut x = zeros(d);
            for (w, v) in weights.iter().zip(p.vertices()) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += w * vi / &total;
                }
            }
            if !ef.projects_onto(&x)? {
                return Ok(CaseOutcome::fail(id, format!("{x:?} should be in the set")));
            }
            // x' with 0 <= x' <= x coordinatewise stays in the set.
            let x_down: Vec<Rational> = x
                .iter()
                .map(|xi| xi * ratio(rng.gen_range(0..=4), 4))
                .collect();
            if !ef.projects_onto(&x_down)? {
                return Ok(CaseOutcome::fail(
                    id,
                    format!("downward point {x_down:?} escaped the set"),
                ));
            }
        }
        Ok(CaseOutcome::pass(id, format!("size {}", ef.size())))
    })
}

pub fn completion_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut jobs: Vec<(String, VPolytope)> = vec![
        (
            "completion/point".into(),
            VPolytope::singleton(vec![rat(1), rat(1)]),
        ),
        (
            "completion/segment".into(),
            VPolytope::from_extreme_points(2, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]])
                .expect("segment"),
        ),
    ];
    let seeds = case_seeds(seed, 4);
    for (i, &s) in seeds.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let d = rng.gen_range(1..=3);
        if let Ok(p) = random_vpolytope(d, rng.gen_range(1..=5), rng.gen()) {
            // Fold into the nonnegative orthant; the hull may need repruning.
            let folded: Vec<Vec<Rational>> = p
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| if x < &rat(0) { -x } else { x.clone() }).collect())
                .collect();
            if let Ok(nonneg) = VPolytope::new(d, folded) {
                jobs.push((format!("completion/random-{i}"), nonneg));
            }
        }
    }
    let cases: Vec<CaseOutcome> = jobs
        .par_iter()
        .map(|(id, p)| completion_case(id.clone(), p, samples, seed))
        .collect();
    SuiteReport {
        suite: "completion".into(),
        cases,
    }
}

// ---------------------------------------------------------------------------
// Support-function calculus and cancellation.
// ---------------------------------------------------------------------------

pub fn support_calculus_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("support-calculus/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let p = random_vpolytope(d, rng.gen_range(1..=6), rng.gen())?;
                let q = random_vpolytope(d, rng.gen_range(1..=6), rng.gen())?;
                let lambda = ratio(rng.gen_range(0..=9), rng.gen_range(1..=4));
                let sum = p.minkowski_sum(&q);
                let dilated = p.dilate(&lambda)?;
                let union = p.convex_union(&q);
                for c in sample_points(d, 20, case_seed) {
                    let (fp, _) = p.support(&c);
                    let (fq, _) = q.support(&c);
                    if sum.support(&c).0 != &fp + &fq {
                        return Ok(CaseOutcome::fail(id, format!("sum rule failed at {c:?}")));
                    }
                    if dilated.support(&c).0 != &lambda * &fp {
                        return Ok(CaseOutcome::fail(id, format!("dilation rule failed at {c:?}")));
                    }
                    if union.support(&c).0 != fp.clone().max(fq) {
                        return Ok(CaseOutcome::fail(id, format!("union rule failed at {c:?}")));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d}")))
            })
        })
        .collect();
    SuiteReport {
        suite: "support-calculus".into(),
        cases,
    }
}

pub fn cancellation_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("cancellation/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let a = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                // Half the cases compare a polytope against itself.
                let b = if rng.gen_bool(0.5) {
                    a.clone()
                } else {
                    random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?
                };
                let c = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let lhs = a.minkowski_sum(&c).equals(&b.minkowski_sum(&c));
                let rhs = a.equals(&b);
                if lhs != rhs {
                    return Ok(CaseOutcome::fail(
                        id,
                        format!("A+C=B+C is {lhs} but A=B is {rhs}"),
                    ));
                }
                Ok(CaseOutcome::pass(id, format!("d={d} equal={rhs}")))
            })
        })
        .collect();
    SuiteReport {
        suite: "cancellation".into(),
        cases,
    }
}

/// Newton polytope inverts the vertex-max construction on nonnegative data.
pub fn newton_suite(count: usize, seed: u64) -> SuiteReport {
    let seeds = case_seeds(seed, count);
    let cases: Vec<CaseOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &case_seed)| {
            let id = format!("newton/{i:03}");
            run_case(id.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
                let d = rng.gen_range(1..=3);
                let raw = random_vpolytope(d, rng.gen_range(1..=5), rng.gen())?;
                let folded: Vec<Vec<Rational>> = raw
                    .vertices()
                    .iter()
                    .map(|v| v.iter().map(|x| if x < &rat(0) { -x } else { x.clone() }).collect())
                    .collect();
                let p = VPolytope::new(d, folded)?;
                let net = MaxoutNetwork::from_vertices(&p);
                let newt = newton_polytope(&net)?;
                if !newt.equals(&p) {
                    return Ok(CaseOutcome::fail(id, "Newt(from_vertices(P)) != P"));
                }
                for c in sample_points(d, 20, case_seed) {
                    if newt.support(&c).0 != net.evaluate(&c)? {
                        return Ok(CaseOutcome::fail(id, format!("support != f at {c:?}")));
                    }
                }
                Ok(CaseOutcome::pass(id, format!("d={d}")))
            })
        })
        .collect();
    SuiteReport {
        suite: "newton".into(),
        cases,
    }
}

/// Suites runnable from the command line, with desk-scale defaults.
pub fn run_named_suite(name: &str, seed: u64, samples: usize) -> Option<SuiteReport> {
    Some(match name {
        "split" => split_suite(50, seed, samples),
        "epigraph-ef" => epigraph_suite(25, seed, samples.min(25)),
        "certificate" => certificate_suite(15, seed, 10),
        "virtual-optimize" => virtual_optimize_suite(25, seed),
        "face-additivity" => face_additivity_suite(100, seed),
        "lex-additivity" => lex_additivity_suite(50, seed),
        "sorting-ef" => sorting_ef_suite(4),
        "summand" => summand_suite(4),
        "completion" => completion_suite(seed, samples.min(25)),
        "support-calculus" => support_calculus_suite(100, seed),
        "cancellation" => cancellation_suite(50, seed),
        "newton" => newton_suite(25, seed),
        _ => return None,
    })
}

/// Names accepted by [`run_named_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "split",
    "epigraph-ef",
    "certificate",
    "virtual-optimize",
    "face-additivity",
    "lex-additivity",
    "sorting-ef",
    "summand",
    "completion",
    "support-calculus",
    "cancellation",
    "newton",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_direction_ties_a_square_edge() {
        let square = VPolytope::new(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1), rat(1)],
            ],
        )
        .unwrap();
        let c = tie_direction(&square).unwrap();
        let (_, face) = square.support(&c);
        assert_eq!(face.vertices.len(), 2, "direction {c:?} should tie an edge");
    }

    #[test]
    fn permutahedron_support_agrees_with_brute_force() {
        let (v4, _) = permutahedron(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let c: Vec<Rational> = (0..4).map(|_| rat(rng.gen_range(-6..=6))).collect();
            let (brute, _) = v4.support(&c);
            assert_eq!(permutahedron_support(4, &c), brute);
        }
    }

    #[test]
    fn small_suites_pass() {
        assert!(split_suite(10, 1, 20).passed());
        assert!(support_calculus_suite(10, 1).passed());
        assert!(cancellation_suite(10, 1).passed());
        assert!(face_additivity_suite(10, 1).passed());
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_named_suite("nope", 0, 10).is_none());
    }
}
