//! Rewrites any maxout network as a difference `f = g - h` of two monotone
//! maxout networks of the same size and ranks.
//!
//! The construction works on the transitively closed graph and pushes the
//! negative weights unit by unit towards the output: at the processed unit
//! every weight `w = a - b` (positive part `a`, negative part `b`) is replaced
//! by `a_i + Σ_{j≠i} b_j`, and the linear term `Σ_u (Σ_j b_j) z_u` pulled out
//! of the maximum is charged to all downstream weights. At the output the
//! pulled-out linear term becomes `h`, duplicated across all rank rows to stay
//! a maxout expression.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::maxout_net::{InArc, MaxoutNetwork, Neuron, NeuronKind};
use crate::rational::Rational;

/// A difference decomposition `f = g - h` into monotone networks, optionally
/// with the intermediate networks of each push step.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub g: MaxoutNetwork,
    pub h: MaxoutNetwork,
    pub trace: Option<Vec<MaxoutNetwork>>,
}

/// Adds zero-weight arcs until the DAG is transitively closed among the
/// neurons. Evaluation and size are unchanged; the closure arcs are what lets
/// a push step charge corrections downstream.
pub fn transitive_closure(net: &MaxoutNetwork) -> Result<MaxoutNetwork> {
    let n = net.neurons().len();
    let order = net
        .topological_order()
        .ok_or_else(|| Error::InvalidNetwork("graph contains a cycle".into()))?;

    // reach[i] = set of neurons with a path to i (bitset over neuron indices).
    let mut reach: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &i in &order {
        if let NeuronKind::Maxout { incoming, .. } = &net.neurons()[i].kind {
            for arc in incoming {
                reach[i][arc.from] = true;
                let (pred, this) = if arc.from < i {
                    let (a, b) = reach.split_at_mut(i);
                    (&a[arc.from], &mut b[0])
                } else {
                    let (a, b) = reach.split_at_mut(arc.from);
                    (&b[0], &mut a[i])
                };
                for (t, p) in this.iter_mut().zip(pred) {
                    *t |= p;
                }
            }
        }
    }

    let mut neurons: Vec<Neuron> = net.neurons().to_vec();
    for (i, neuron) in neurons.iter_mut().enumerate() {
        if let NeuronKind::Maxout { rank, incoming } = &mut neuron.kind {
            let mut present: Vec<bool> = vec![false; n];
            for arc in incoming.iter() {
                present[arc.from] = true;
            }
            for from in 0..n {
                if reach[i][from] && !present[from] {
                    incoming.push(InArc {
                        from,
                        weights: vec![Rational::zero(); *rank],
                    });
                }
            }
            incoming.sort_by_key(|arc| arc.from);
        }
    }
    MaxoutNetwork::from_parts(net.d(), neurons, net.output_id())
}

fn positive_part(w: &Rational) -> Rational {
    if w > &Rational::zero() {
        w.clone()
    } else {
        Rational::zero()
    }
}

fn negative_part(w: &Rational) -> Rational {
    if w < &Rational::zero() {
        -w
    } else {
        Rational::zero()
    }
}

/// Per-arc data of the weight split `w = a - b` at one unit.
struct UnitSplit {
    /// In-neighbor index per arc.
    sources: Vec<usize>,
    /// `a_u^i + Σ_{j≠i} b_u^j` per arc and row: the monotone replacement.
    monotone_rows: Vec<Vec<Rational>>,
    /// `Σ_j b_u^j` per arc: the linear term pulled out of the maximum.
    pulled: Vec<Rational>,
}

fn split_unit_weights(rank: usize, incoming: &[InArc]) -> UnitSplit {
    let mut sources = Vec::with_capacity(incoming.len());
    let mut monotone_rows = Vec::with_capacity(incoming.len());
    let mut pulled = Vec::with_capacity(incoming.len());
    for arc in incoming {
        sources.push(arc.from);
        let b: Vec<Rational> = arc.weights.iter().map(negative_part).collect();
        let b_total = b.iter().fold(Rational::zero(), |acc, x| acc + x);
        let rows = (0..rank)
            .map(|i| positive_part(&arc.weights[i]) + &b_total - &b[i])
            .collect();
        monotone_rows.push(rows);
        pulled.push(b_total);
    }
    UnitSplit {
        sources,
        monotone_rows,
        pulled,
    }
}

/// One push step: makes the weights of the `p`-th unit (1-based, in the
/// deterministic topological order) nonnegative, charging the correction to
/// the downstream weights. Requires a transitively closed network whose
/// first `p-1` units are already nonnegative, and `p < s` so that a
/// downstream unit exists to absorb the correction.
pub fn push_step(net: &MaxoutNetwork, p: usize) -> Result<MaxoutNetwork> {
    let units = net.topological_units()?;
    let s = units.len();
    if p == 0 || p >= s {
        return Err(Error::OutOfRange(format!(
            "push step index must satisfy 1 <= p < s = {s}, got {p}"
        )));
    }
    for &u in &units[..p - 1] {
        if let NeuronKind::Maxout { incoming, .. } = &net.neurons()[u].kind {
            if incoming
                .iter()
                .any(|arc| arc.weights.iter().any(|w| w < &Rational::zero()))
            {
                return Err(Error::InvalidInput(
                    "earlier units must already have nonnegative weights".into(),
                ));
            }
        }
    }

    let v = units[p - 1];
    let mut neurons: Vec<Neuron> = net.neurons().to_vec();

    let NeuronKind::Maxout { rank, incoming } = &neurons[v].kind else {
        unreachable!("topological_units yields maxout units");
    };
    let split = split_unit_weights(*rank, incoming);

    // Rewrite the unit's own weights.
    {
        let NeuronKind::Maxout { incoming, .. } = &mut neurons[v].kind else {
            unreachable!();
        };
        for (arc, rows) in incoming.iter_mut().zip(&split.monotone_rows) {
            arc.weights = rows.clone();
        }
    }

    // Charge the pulled-out linear term to every out-neighbor: the arc
    // u -> v~ must exist by transitive closure whenever the correction for u
    // is nonzero.
    for idx in 0..neurons.len() {
        if idx == v {
            continue;
        }
        let NeuronKind::Maxout { rank, incoming } = &mut neurons[idx].kind else {
            continue;
        };
        let Some(weight_from_v) = incoming
            .iter()
            .find(|arc| arc.from == v)
            .map(|arc| arc.weights.clone())
        else {
            continue;
        };
        for (&u, b_total) in split.sources.iter().zip(&split.pulled) {
            if b_total.is_zero() {
                continue;
            }
            let arc_u = incoming
                .iter_mut()
                .find(|arc| arc.from == u)
                .ok_or_else(|| {
                    Error::InvalidInput("network must be transitively closed".into())
                })?;
            for i in 0..*rank {
                let delta = &weight_from_v[i] * b_total;
                arc_u.weights[i] -= delta;
            }
        }
    }

    MaxoutNetwork::from_parts(net.d(), neurons, net.output_id())
}

fn replace_output_weights(
    net: &MaxoutNetwork,
    rows_for_arc: impl Fn(usize, &UnitSplit) -> Vec<Rational>,
    split: &UnitSplit,
) -> Result<MaxoutNetwork> {
    let mut neurons: Vec<Neuron> = net.neurons().to_vec();
    let out = net.output_index();
    let NeuronKind::Maxout { incoming, .. } = &mut neurons[out].kind else {
        return Err(Error::InvalidNetwork("output is not a maxout unit".into()));
    };
    for (pos, arc) in incoming.iter_mut().enumerate() {
        debug_assert_eq!(arc.from, split.sources[pos]);
        arc.weights = rows_for_arc(pos, split);
    }
    MaxoutNetwork::from_parts(net.d(), neurons, net.output_id())
}

fn split_inner(net: &MaxoutNetwork, keep_trace: bool) -> Result<SplitResult> {
    let closed = transitive_closure(net)?;
    let s = closed.topological_units()?.len();

    let mut current = closed;
    let mut trace = keep_trace.then(Vec::new);
    for p in 1..s {
        current = push_step(&current, p)?;
        if let Some(t) = trace.as_mut() {
            t.push(current.clone());
        }
    }

    // Final step at the output unit: the monotone rows become g, the
    // pulled-out linear term becomes h, duplicated over all rank rows.
    let out = current.output_index();
    let NeuronKind::Maxout { rank, incoming } = &current.neurons()[out].kind else {
        return Err(Error::InvalidNetwork("output is not a maxout unit".into()));
    };
    let rank = *rank;
    let split = split_unit_weights(rank, incoming);

    let g = replace_output_weights(&current, |pos, s| s.monotone_rows[pos].clone(), &split)?;
    let h = replace_output_weights(
        &current,
        |pos, s| vec![s.pulled[pos].clone(); rank],
        &split,
    )?;
    debug_assert!(g.is_monotone() && h.is_monotone());
    debug_assert_eq!(g.size(), net.size());
    debug_assert_eq!(h.size(), net.size());

    Ok(SplitResult { g, h, trace })
}

/// Splits `f` into monotone `g - h` with `size(g) = size(h) = size(f)` and
/// matching ranks. The identity `f(x) = g(x) - h(x)` is exact for every `x`.
pub fn split(net: &MaxoutNetwork) -> Result<SplitResult> {
    split_inner(net, false)
}

/// Like [`split`], also retaining the intermediate network after each push
/// step (memory proportional to `s` network copies).
pub fn split_with_trace(net: &MaxoutNetwork) -> Result<SplitResult> {
    split_inner(net, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxout_net::{relu_network, NetworkBuilder};
    use crate::rational::rat;
    use crate::sampling::sample_points;

    fn assert_split_identity(net: &MaxoutNetwork, samples: usize, seed: u64) {
        let parts = split(net).unwrap();
        assert!(parts.g.is_monotone());
        assert!(parts.h.is_monotone());
        assert_eq!(parts.g.size(), net.size());
        assert_eq!(parts.h.size(), net.size());
        for x in sample_points(net.d(), samples, seed) {
            let f = net.evaluate(&x).unwrap();
            let g = parts.g.evaluate(&x).unwrap();
            let h = parts.h.evaluate(&x).unwrap();
            assert_eq!(f, g - h, "split identity failed at {x:?}");
        }
    }

    #[test]
    fn closure_adds_skip_arc() {
        // Chain x -> v1 -> v2 gains the arc x -> v2 with zero weights.
        let mut b = NetworkBuilder::new(1);
        let v1 = b
            .maxout("v1", 2, vec![(b.input(0), vec![rat(1), rat(-1)])])
            .unwrap();
        let v2 = b.maxout("v2", 2, vec![(v1, vec![rat(1), rat(2)])]).unwrap();
        let net = b.finish(v2).unwrap();

        let closed = transitive_closure(&net).unwrap();
        let v2_idx = closed.index_of("v2").unwrap();
        let NeuronKind::Maxout { incoming, .. } = &closed.neurons()[v2_idx].kind else {
            panic!()
        };
        assert_eq!(incoming.len(), 2);
        let x_idx = closed.index_of("x0").unwrap();
        let zero_arc = incoming.iter().find(|a| a.from == x_idx).unwrap();
        assert!(zero_arc.weights.iter().all(|w| w.is_zero()));

        // Already-closed networks are unchanged.
        let again = transitive_closure(&closed).unwrap();
        assert_eq!(again, closed);

        for x in sample_points(1, 100, 0) {
            assert_eq!(closed.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn push_step_splits_mixed_row() {
        // Unit v1 computes max{u1 - u2, 0}; pushing turns its rows into
        // (1,0) and (0,1) and charges -u2 downstream.
        let mut b = NetworkBuilder::new(2);
        let v1 = b
            .maxout(
                "v1",
                2,
                vec![
                    (b.input(0), vec![rat(1), rat(0)]),
                    (b.input(1), vec![rat(-1), rat(0)]),
                ],
            )
            .unwrap();
        let v2 = b.maxout("v2", 2, vec![(v1, vec![rat(1), rat(1)])]).unwrap();
        let net = transitive_closure(&b.finish(v2).unwrap()).unwrap();

        let pushed = push_step(&net, 1).unwrap();
        let v1_idx = pushed.index_of("v1").unwrap();
        let x0 = pushed.index_of("x0").unwrap();
        let x1 = pushed.index_of("x1").unwrap();
        let NeuronKind::Maxout { incoming, .. } = &pushed.neurons()[v1_idx].kind else {
            panic!()
        };
        let w_x0 = &incoming.iter().find(|a| a.from == x0).unwrap().weights;
        let w_x1 = &incoming.iter().find(|a| a.from == x1).unwrap().weights;
        assert_eq!(w_x0, &vec![rat(1), rat(0)]);
        assert_eq!(w_x1, &vec![rat(0), rat(1)]);

        for x in sample_points(2, 100, 0) {
            assert_eq!(pushed.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn push_step_is_identity_on_nonnegative_units() {
        let mut b = NetworkBuilder::new(1);
        let v1 = b
            .maxout("v1", 2, vec![(b.input(0), vec![rat(2), rat(0)])])
            .unwrap();
        let v2 = b.maxout("v2", 2, vec![(v1, vec![rat(1), rat(3)])]).unwrap();
        let net = transitive_closure(&b.finish(v2).unwrap()).unwrap();
        let pushed = push_step(&net, 1).unwrap();
        assert_eq!(pushed, net);
    }

    #[test]
    fn split_relu_difference() {
        // f = max{x1 - x2, 0}: g = max{x1, x2}, h = x2; at (3, 1): 2 = 3 - 1.
        let net = relu_network(&[rat(1), rat(-1)]);
        let parts = split(&net).unwrap();
        let x = [rat(3), rat(1)];
        assert_eq!(net.evaluate(&x).unwrap(), rat(2));
        assert_eq!(parts.g.evaluate(&x).unwrap(), rat(3));
        assert_eq!(parts.h.evaluate(&x).unwrap(), rat(1));
        assert_split_identity(&net, 100, 0);
    }

    #[test]
    fn split_of_monotone_net_has_zero_h() {
        let mut b = NetworkBuilder::new(2);
        let arcs = vec![
            (b.input(0), vec![rat(1), rat(0)]),
            (b.input(1), vec![rat(0), rat(1)]),
        ];
        let v = b.maxout("v0", 2, arcs).unwrap();
        let net = b.finish(v).unwrap();
        let parts = split(&net).unwrap();
        for x in sample_points(2, 100, 0) {
            assert_eq!(parts.h.evaluate(&x).unwrap(), rat(0));
            assert_eq!(parts.g.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn split_is_idempotent_on_its_own_g() {
        let net = relu_network(&[rat(2), rat(-3)]);
        let parts = split(&net).unwrap();
        let again = split(&parts.g).unwrap();
        for x in sample_points(2, 50, 1) {
            assert_eq!(
                again.g.evaluate(&x).unwrap(),
                parts.g.evaluate(&x).unwrap()
            );
            assert_eq!(again.h.evaluate(&x).unwrap(), rat(0));
        }
    }

    #[test]
    fn split_deep_network_with_trace() {
        // Three units with mixed-sign weights and a skip connection.
        let mut b = NetworkBuilder::new(2);
        let v1 = b
            .maxout(
                "v1",
                2,
                vec![
                    (b.input(0), vec![rat(1), rat(-2)]),
                    (b.input(1), vec![rat(-1), rat(1)]),
                ],
            )
            .unwrap();
        let v2 = b
            .maxout(
                "v2",
                3,
                vec![
                    (v1, vec![rat(-1), rat(2), rat(0)]),
                    (b.input(0), vec![rat(3), rat(-1), rat(0)]),
                ],
            )
            .unwrap();
        let v3 = b
            .maxout(
                "v3",
                2,
                vec![(v2, vec![rat(1), rat(-1)]), (v1, vec![rat(-2), rat(1)])],
            )
            .unwrap();
        let net = b.finish(v3).unwrap();

        let parts = split_with_trace(&net).unwrap();
        let trace = parts.trace.as_ref().unwrap();
        assert_eq!(trace.len(), net.size() - 1);
        for (p, staged) in trace.iter().enumerate() {
            // Monotone prefix grows with each step.
            let units = staged.topological_units().unwrap();
            for &u in &units[..=p] {
                let NeuronKind::Maxout { incoming, .. } = &staged.neurons()[u].kind else {
                    panic!()
                };
                assert!(incoming
                    .iter()
                    .all(|a| a.weights.iter().all(|w| w >= &rat(0))));
            }
            for x in sample_points(2, 50, 2) {
                assert_eq!(staged.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
            }
        }
        assert_split_identity(&net, 100, 0);
    }
}
