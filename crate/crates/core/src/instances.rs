//! Deterministic generators for the example polytopes and formulations used
//! throughout the test pipeline, at desk scale.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extended_formulation::ExtendedFormulation;
use crate::maxout_net::{MaxoutNetwork, NetworkBuilder};
use crate::polytopes::{prune_to_vertices, HPolyhedron, VPolytope};
use crate::rational::{rat, unit_vector, zeros, Rational};

fn check_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfRange(format!(
            "{name} must be in {lo}..={hi}, got {value}"
        )));
    }
    Ok(())
}

/// The cube `[-1, 1]^d`: `2^d` vertices but only `2d` facets.
pub fn cube(d: usize) -> Result<(VPolytope, HPolyhedron)> {
    check_range("d", d, 1, 10)?;
    let vertices = (0..d)
        .map(|_| [rat(-1), rat(1)])
        .multi_cartesian_product()
        .collect();
    let v = VPolytope::from_extreme_points(d, vertices)?;
    let mut h = HPolyhedron::new(d);
    for i in 0..d {
        let e = unit_vector(d, i);
        h.push_inequality(e.clone(), rat(1));
        h.push_inequality(e.into_iter().map(|x| -x).collect(), rat(1));
    }
    Ok((v, h))
}

/// Cross-polytope vertices `±e_i`: only `2d` of them, for `d ≤ 10`.
pub fn cross_polytope_vertices(d: usize) -> Result<VPolytope> {
    check_range("d", d, 1, 10)?;
    let mut vertices = Vec::with_capacity(2 * d);
    for i in 0..d {
        let e = unit_vector(d, i);
        vertices.push(e.clone());
        vertices.push(e.into_iter().map(|x| -x).collect());
    }
    VPolytope::from_extreme_points(d, vertices)
}

/// The cross-polytope `conv{±e_i}` with its `2^d` facet inequalities; the
/// H-side limits `d` to 6.
pub fn cross_polytope(d: usize) -> Result<(VPolytope, HPolyhedron)> {
    check_range("d", d, 1, 6)?;
    let v = cross_polytope_vertices(d)?;
    let mut h = HPolyhedron::new(d);
    for signs in (0..d).map(|_| [rat(-1), rat(1)]).multi_cartesian_product() {
        h.push_inequality(signs, rat(1));
    }
    Ok((v, h))
}

/// The regular permutahedron: all permutations of `(1, 2, ..., n)`, described
/// by one equality and one inequality per proper nonempty coordinate subset.
pub fn permutahedron(n: usize) -> Result<(VPolytope, HPolyhedron)> {
    check_range("n", n, 2, 6)?;
    let vertices = (1..=n as i64)
        .map(rat)
        .permutations(n)
        .collect::<Vec<_>>();
    let v = VPolytope::from_extreme_points(n, vertices)?;

    let mut h = HPolyhedron::new(n);
    let total = rat((n * (n + 1) / 2) as i64);
    h.push_equality(vec![rat(1); n], total);
    // Any |S| coordinates sum to at most the |S| largest values.
    for size in 1..n {
        let bound = rat((size * (2 * n - size + 1) / 2) as i64);
        for subset in (0..n).combinations(size) {
            let mut a = zeros(n);
            for i in subset {
                a[i] = rat(1);
            }
            h.push_inequality(a, bound.clone());
        }
    }
    Ok((v, h))
}

/// Comparators of Batcher's odd-even mergesort on `n` wires (`n` a power of
/// two). Each pair `(i, j)` with `i < j` routes the maximum to wire `i`.
pub fn batcher_comparators(n: usize) -> Result<Vec<(usize, usize)>> {
    if !n.is_power_of_two() || !(2..=8).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "n must be a power of two in 2..=8, got {n}"
        )));
    }
    fn merge(lo: usize, n: usize, r: usize, out: &mut Vec<(usize, usize)>) {
        let m = r * 2;
        if m < n {
            merge(lo, n, m, out);
            merge(lo + r, n, m, out);
            let mut i = lo + r;
            while i + r < lo + n {
                out.push((i, i + r));
                i += m;
            }
        } else {
            out.push((lo, lo + r));
        }
    }
    fn sort(lo: usize, n: usize, out: &mut Vec<(usize, usize)>) {
        if n > 1 {
            let m = n / 2;
            sort(lo, m, out);
            sort(lo + m, m, out);
            merge(lo, n, 1, out);
        }
    }
    let mut out = Vec::new();
    sort(0, n, &mut out);
    Ok(out)
}

/// Sorting-network formulation of the permutahedron: each comparator
/// `(a, b) → (u, v)` is relaxed to `{u + v = a + b, u ≥ a, u ≥ b}` and the
/// final wires are fixed to `(n, n-1, ..., 1)`. The lift has two inequalities
/// per comparator and projects onto the input wires.
pub fn sorting_network_ef(n: usize) -> Result<ExtendedFormulation> {
    let comparators = batcher_comparators(n)?;
    let e = n + 2 * comparators.len();
    let mut lift = HPolyhedron::new(e);

    let mut wire: Vec<usize> = (0..n).collect();
    let mut next = n;
    for &(i, j) in &comparators {
        let (a, b) = (wire[i], wire[j]);
        let (u, v) = (next, next + 1);
        next += 2;
        // u >= a and u >= b
        let mut row = zeros(e);
        row[a] = rat(1);
        row[u] = rat(-1);
        lift.push_inequality(row, Rational::from_integer(0.into()));
        let mut row = zeros(e);
        row[b] = rat(1);
        row[u] = rat(-1);
        lift.push_inequality(row, Rational::from_integer(0.into()));
        // u + v = a + b
        let mut row = zeros(e);
        row[u] += rat(1);
        row[v] += rat(1);
        row[a] -= rat(1);
        row[b] -= rat(1);
        lift.push_equality(row, Rational::from_integer(0.into()));
        wire[i] = u;
        wire[j] = v;
    }
    // Sorted output pinned to (n, n-1, ..., 1).
    for (w, &var) in wire.iter().enumerate() {
        lift.push_equality(unit_vector(e, var), rat((n - w) as i64));
    }

    let matrix = (0..n).map(|i| unit_vector(e, i)).collect();
    ExtendedFormulation::new(lift, matrix, zeros(n))
}

/// Incidence vectors of all matchings of the complete graph `K_n` (the empty
/// matching included), in `R^{C(n,2)}` with edges ordered lexicographically.
pub fn matching_polytope(n: usize) -> Result<VPolytope> {
    check_range("n", n, 2, 8)?;
    let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let edge_index = |i: usize, j: usize| -> usize {
        edges
            .iter()
            .position(|&(a, b)| (a, b) == (i, j))
            .expect("edge exists")
    };

    let mut matchings: Vec<Vec<usize>> = Vec::new();
    fn extend(
        free: &[usize],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        out.push(current.clone());
        let Some((&v, rest)) = free.split_first() else {
            return;
        };
        // Either v stays unmatched ...
        extend(rest, current, out);
        // ... or v is matched to some later free vertex.
        for (k, &u) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter_map(|(t, &w)| (t != k).then_some(w))
                .collect();
            current.push((v, u));
            extend(&remaining, current, out);
            current.pop();
        }
    }
    let mut raw: Vec<Vec<(usize, usize)>> = Vec::new();
    extend(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut raw);
    // The recursion reports prefixes twice (once before matching v, once as
    // the base); dedupe via sorted index sets.
    for m in raw {
        let mut idx: Vec<usize> = m.iter().map(|&(i, j)| edge_index(i, j)).collect();
        idx.sort_unstable();
        if !matchings.contains(&idx) {
            matchings.push(idx);
        }
    }

    let dim = edges.len();
    let vertices = matchings
        .into_iter()
        .map(|idx| {
            let mut v = zeros(dim);
            for i in idx {
                v[i] = rat(1);
            }
            v
        })
        .collect();
    VPolytope::from_extreme_points(dim, vertices)
}

/// The hypersimplex `Δ(k, n)`: all 0/1 vectors with exactly `k` ones; the
/// base polytope of the uniform matroid.
pub fn hypersimplex(k: usize, n: usize) -> Result<VPolytope> {
    check_range("n", n, 1, 6)?;
    check_range("k", k, 1, n)?;
    let vertices = (0..n)
        .combinations(k)
        .map(|ones| {
            let mut v = zeros(n);
            for i in ones {
                v[i] = rat(1);
            }
            v
        })
        .collect();
    VPolytope::from_extreme_points(n, vertices)
}

/// Hull of `m` seeded integer points in `[-5, 5]^d`; byte-identical across
/// reruns with the same seed.
pub fn random_vpolytope(d: usize, m: usize, seed: u64) -> Result<VPolytope> {
    check_range("d", d, 1, 4)?;
    check_range("m", m, 1, 8)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..m)
        .map(|_| (0..d).map(|_| rat(rng.gen_range(-5..=5))).collect())
        .collect();
    prune_to_vertices(d, points)
}

/// Shape of a seeded random maxout network.
#[derive(Debug, Clone, Copy)]
pub struct RandomNetConfig {
    pub d: usize,
    pub s: usize,
    pub max_rank: usize,
    pub weight_min: i64,
    pub weight_max: i64,
}

impl RandomNetConfig {
    pub fn rank2(d: usize, s: usize) -> Self {
        Self {
            d,
            s,
            max_rank: 2,
            weight_min: -3,
            weight_max: 3,
        }
    }

    pub fn monotone(d: usize, s: usize, max_rank: usize) -> Self {
        Self {
            d,
            s,
            max_rank,
            weight_min: 0,
            weight_max: 3,
        }
    }
}

/// Seeded random valid network: unit `j` draws its in-neighbors from the
/// inputs and all earlier units, always including its predecessor so the last
/// unit is the single sink.
pub fn random_network(cfg: RandomNetConfig, seed: u64) -> Result<MaxoutNetwork> {
    check_range("d", cfg.d, 1, 8)?;
    check_range("s", cfg.s, 1, 12)?;
    check_range("max_rank", cfg.max_rank, 2, 6)?;
    if cfg.weight_min > cfg.weight_max {
        return Err(Error::OutOfRange("empty weight range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = NetworkBuilder::new(cfg.d);
    let mut units = Vec::new();
    for j in 0..cfg.s {
        let rank = if cfg.max_rank == 2 {
            2
        } else {
            rng.gen_range(2..=cfg.max_rank)
        };
        let mut pool: Vec<crate::maxout_net::NodeRef> = (0..cfg.d).map(|i| b.input(i)).collect();
        pool.extend(units.iter().copied());
        let forced = (j > 0).then(|| units[j - 1]);
        let mut chosen: Vec<crate::maxout_net::NodeRef> = Vec::new();
        for &cand in &pool {
            if rng.gen_bool(0.5) {
                chosen.push(cand);
            }
        }
        if let Some(f) = forced {
            if !chosen.contains(&f) {
                chosen.push(f);
            }
        }
        if chosen.is_empty() {
            chosen.push(pool[rng.gen_range(0..pool.len())]);
        }
        let incoming = chosen
            .into_iter()
            .map(|src| {
                let weights = (0..rank)
                    .map(|_| rat(rng.gen_range(cfg.weight_min..=cfg.weight_max)))
                    .collect();
                (src, weights)
            })
            .collect();
        let unit = b.maxout(&format!("v{}", j + 1), rank, incoming)?;
        units.push(unit);
    }
    b.finish(*units.last().expect("s >= 1"))
}
