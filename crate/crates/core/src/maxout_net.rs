//! Rank-k maxout networks: directed acyclic computation graphs whose units
//! output the maximum of `k` linear forms of their in-neighbors.
//!
//! Networks are bias-free and therefore compute positively homogeneous
//! piecewise linear functions. Monotone networks (all weights nonnegative)
//! compute exactly the support functions of polytopes, which is what the rest
//! of the toolkit exploits.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polytopes::VPolytope;
use crate::rational::{zeros, Rational};

/// A neuron: either an input pinned to a coordinate, or a maxout unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neuron {
    pub id: String,
    pub kind: NeuronKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeuronKind {
    Input { coord: usize },
    Maxout { rank: usize, incoming: Vec<InArc> },
}

/// An arc into a maxout unit, carrying one weight per row of the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InArc {
    pub from: usize,
    pub weights: Vec<Rational>,
}

/// A rank-k maxout network with a single output unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxoutNetwork {
    d: usize,
    neurons: Vec<Neuron>,
    output: usize,
}

/// Violations reported by [`MaxoutNetwork::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Cycle,
    InputCount { expected: usize, got: usize },
    InputCoords { got: Vec<usize> },
    NoMaxoutUnit,
    OutputNotMaxout { id: String },
    SinklessOutput { declared: String, sinks: Vec<String> },
    RankTooSmall { id: String, rank: usize },
    ArityMismatch { id: String, from: String, expected: usize, got: usize },
    NoInNeighbors { id: String },
    DuplicateArc { id: String, from: String },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::Cycle => write!(f, "graph contains a cycle"),
            Diagnostic::InputCount { expected, got } => {
                write!(f, "expected {expected} input neurons, found {got}")
            }
            Diagnostic::InputCoords { got } => {
                write!(f, "input coordinates {got:?} are not exactly 0..d-1")
            }
            Diagnostic::NoMaxoutUnit => write!(f, "network has no maxout unit"),
            Diagnostic::OutputNotMaxout { id } => {
                write!(f, "declared output {id:?} is not a maxout unit")
            }
            Diagnostic::SinklessOutput { declared, sinks } => write!(
                f,
                "maxout units with out-degree zero are {sinks:?}, expected exactly the declared output {declared:?}"
            ),
            Diagnostic::RankTooSmall { id, rank } => {
                write!(f, "unit {id:?} has rank {rank}, minimum is 2")
            }
            Diagnostic::ArityMismatch {
                id,
                from,
                expected,
                got,
            } => write!(
                f,
                "arc {from:?} -> {id:?} carries {got} weights, rank requires {expected}"
            ),
            Diagnostic::NoInNeighbors { id } => {
                write!(f, "maxout unit {id:?} has no in-neighbors")
            }
            Diagnostic::DuplicateArc { id, from } => {
                write!(f, "duplicate arc {from:?} -> {id:?}")
            }
        }
    }
}

impl MaxoutNetwork {
    /// Assembles a network from raw parts without enforcing the semantic
    /// invariants; those are reported by [`validate`](Self::validate). Only
    /// structurally unrepresentable inputs (dangling or duplicate ids) fail.
    pub fn from_parts(d: usize, neurons: Vec<Neuron>, output_id: &str) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for n in &neurons {
            if !seen.insert(n.id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate neuron id {:?}", n.id)));
            }
        }
        for n in &neurons {
            if let NeuronKind::Maxout { incoming, .. } = &n.kind {
                for arc in incoming {
                    if arc.from >= neurons.len() {
                        return Err(Error::InvalidInput(format!(
                            "arc into {:?} references neuron index {} out of bounds",
                            n.id, arc.from
                        )));
                    }
                }
            }
        }
        let output = neurons
            .iter()
            .position(|n| n.id == output_id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown output id {output_id:?}")))?;
        Ok(Self { d, neurons, output })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn neurons(&self) -> &[Neuron] {
        &self.neurons
    }

    pub fn output_index(&self) -> usize {
        self.output
    }

    pub fn output_id(&self) -> &str {
        &self.neurons[self.output].id
    }

    /// Number of maxout units.
    pub fn size(&self) -> usize {
        self.neurons
            .iter()
            .filter(|n| matches!(n.kind, NeuronKind::Maxout { .. }))
            .count()
    }

    /// Sum of the unit ranks; the inequality count of the epigraph lift.
    pub fn rank_sum(&self) -> usize {
        self.neurons
            .iter()
            .filter_map(|n| match &n.kind {
                NeuronKind::Maxout { rank, .. } => Some(*rank),
                NeuronKind::Input { .. } => None,
            })
            .sum()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.neurons.iter().position(|n| n.id == id)
    }

    /// One diagnostic per violated invariant; empty iff the network is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();

        let mut coords: Vec<usize> = Vec::new();
        let mut units = 0usize;
        for n in &self.neurons {
            match &n.kind {
                NeuronKind::Input { coord } => coords.push(*coord),
                NeuronKind::Maxout { rank, incoming } => {
                    units += 1;
                    if *rank < 2 {
                        out.push(Diagnostic::RankTooSmall {
                            id: n.id.clone(),
                            rank: *rank,
                        });
                    }
                    if incoming.is_empty() {
                        out.push(Diagnostic::NoInNeighbors { id: n.id.clone() });
                    }
                    let mut sources = BTreeSet::new();
                    for arc in incoming {
                        if arc.weights.len() != *rank {
                            out.push(Diagnostic::ArityMismatch {
                                id: n.id.clone(),
                                from: self.neurons[arc.from].id.clone(),
                                expected: *rank,
                                got: arc.weights.len(),
                            });
                        }
                        if !sources.insert(arc.from) {
                            out.push(Diagnostic::DuplicateArc {
                                id: n.id.clone(),
                                from: self.neurons[arc.from].id.clone(),
                            });
                        }
                    }
                }
            }
        }

        if coords.len() != self.d {
            out.push(Diagnostic::InputCount {
                expected: self.d,
                got: coords.len(),
            });
        } else {
            let mut sorted = coords.clone();
            sorted.sort_unstable();
            if sorted != (0..self.d).collect::<Vec<_>>() {
                out.push(Diagnostic::InputCoords { got: coords });
            }
        }

        if units == 0 {
            out.push(Diagnostic::NoMaxoutUnit);
        }

        if !matches!(self.neurons[self.output].kind, NeuronKind::Maxout { .. }) {
            out.push(Diagnostic::OutputNotMaxout {
                id: self.neurons[self.output].id.clone(),
            });
        }

        // Out-degree zero must single out the declared output among the units.
        let mut out_degree = vec![0usize; self.neurons.len()];
        for n in &self.neurons {
            if let NeuronKind::Maxout { incoming, .. } = &n.kind {
                for arc in incoming {
                    out_degree[arc.from] += 1;
                }
            }
        }
        let sinks: Vec<usize> = (0..self.neurons.len())
            .filter(|&i| {
                matches!(self.neurons[i].kind, NeuronKind::Maxout { .. }) && out_degree[i] == 0
            })
            .collect();
        if sinks != [self.output] {
            out.push(Diagnostic::SinklessOutput {
                declared: self.neurons[self.output].id.clone(),
                sinks: sinks
                    .into_iter()
                    .map(|i| self.neurons[i].id.clone())
                    .collect(),
            });
        }

        if self.topological_order().is_none() {
            out.push(Diagnostic::Cycle);
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Deterministic topological order over all neurons: Kahn's algorithm with
    /// a lexicographic tie-break on neuron ids. `None` if the graph is cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.neurons.len();
        let mut in_degree = vec![0usize; n];
        let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, neuron) in self.neurons.iter().enumerate() {
            if let NeuronKind::Maxout { incoming, .. } = &neuron.kind {
                in_degree[i] = incoming.len();
                for arc in incoming {
                    out_arcs[arc.from].push(i);
                }
            }
        }
        let mut ready: BTreeSet<(&str, usize)> = (0..n)
            .filter(|&i| in_degree[i] == 0)
            .map(|i| (self.neurons[i].id.as_str(), i))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&(id, i)) = ready.iter().next() {
            ready.remove(&(id, i));
            order.push(i);
            for &j in &out_arcs[i] {
                in_degree[j] -= 1;
                if in_degree[j] == 0 {
                    ready.insert((self.neurons[j].id.as_str(), j));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The maxout units in deterministic topological order.
    pub fn topological_units(&self) -> Result<Vec<usize>> {
        let order = self
            .topological_order()
            .ok_or_else(|| Error::InvalidNetwork("graph contains a cycle".into()))?;
        Ok(order
            .into_iter()
            .filter(|&i| matches!(self.neurons[i].kind, NeuronKind::Maxout { .. }))
            .collect())
    }

    /// Exact evaluation by topological propagation.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        let order = self
            .topological_order()
            .ok_or_else(|| Error::InvalidNetwork("graph contains a cycle".into()))?;
        let mut values: Vec<Rational> = zeros(self.neurons.len());
        for i in order {
            values[i] = match &self.neurons[i].kind {
                NeuronKind::Input { coord } => x[*coord].clone(),
                NeuronKind::Maxout { rank, incoming } => {
                    let mut best: Option<Rational> = None;
                    for row in 0..*rank {
                        let mut acc = Rational::zero();
                        for arc in incoming {
                            let w = &arc.weights[row];
                            if !w.is_zero() {
                                acc += w * &values[arc.from];
                            }
                        }
                        best = Some(match best {
                            None => acc,
                            Some(b) => b.max(acc),
                        });
                    }
                    best.ok_or_else(|| {
                        Error::InvalidNetwork(format!(
                            "unit {:?} has rank 0",
                            self.neurons[i].id
                        ))
                    })?
                }
            };
        }
        Ok(values[self.output].clone())
    }

    /// True iff every weight of every maxout unit is nonnegative.
    pub fn is_monotone(&self) -> bool {
        self.neurons.iter().all(|n| match &n.kind {
            NeuronKind::Input { .. } => true,
            NeuronKind::Maxout { incoming, .. } => incoming
                .iter()
                .all(|arc| arc.weights.iter().all(|w| w >= &Rational::zero())),
        })
    }

    /// Simulates every rank-k unit by a left-deep chain of k-1 rank-2 units.
    ///
    /// The chain folds `max{r_1,...,r_k}` as `max{...max{r_1,r_2}...,r_k}`;
    /// the only weights introduced beyond the original tuples are 0 and 1, so
    /// monotone networks stay monotone. Networks that are already rank-2 come
    /// back structurally identical.
    pub fn to_rank2(&self) -> MaxoutNetwork {
        let all_rank2 = self.neurons.iter().all(|n| match &n.kind {
            NeuronKind::Input { .. } => true,
            NeuronKind::Maxout { rank, .. } => *rank == 2,
        });
        if all_rank2 {
            return self.clone();
        }

        let mut neurons: Vec<Neuron> = Vec::new();
        // Index of the neuron that plays each original neuron's role.
        let mut image: HashMap<usize, usize> = HashMap::new();
        let order = self
            .topological_order()
            .expect("to_rank2 requires an acyclic network");
        for i in order {
            let neuron = &self.neurons[i];
            match &neuron.kind {
                NeuronKind::Input { coord } => {
                    image.insert(i, neurons.len());
                    neurons.push(Neuron {
                        id: neuron.id.clone(),
                        kind: NeuronKind::Input { coord: *coord },
                    });
                }
                NeuronKind::Maxout { rank, incoming } => {
                    let sources: Vec<usize> = incoming.iter().map(|a| image[&a.from]).collect();
                    let row = |r: usize| -> Vec<Rational> {
                        incoming.iter().map(|a| a.weights[r].clone()).collect()
                    };
                    if *rank == 2 {
                        let arcs = incoming
                            .iter()
                            .zip(&sources)
                            .map(|(a, &from)| InArc {
                                from,
                                weights: a.weights.clone(),
                            })
                            .collect();
                        image.insert(i, neurons.len());
                        neurons.push(Neuron {
                            id: neuron.id.clone(),
                            kind: NeuronKind::Maxout {
                                rank: 2,
                                incoming: arcs,
                            },
                        });
                        continue;
                    }

                    // Chain unit 1 covers rows 1 and 2; each later unit folds
                    // in one more row. The last chain unit inherits the
                    // original id so downstream arcs stay valid.
                    let mut prev = {
                        let r0 = row(0);
                        let r1 = row(1);
                        let arcs = sources
                            .iter()
                            .enumerate()
                            .map(|(u, &from)| InArc {
                                from,
                                weights: vec![r0[u].clone(), r1[u].clone()],
                            })
                            .collect();
                        neurons.push(Neuron {
                            id: format!("{}~1", neuron.id),
                            kind: NeuronKind::Maxout {
                                rank: 2,
                                incoming: arcs,
                            },
                        });
                        neurons.len() - 1
                    };
                    for r in 2..*rank {
                        let last = r + 1 == *rank;
                        let rw = row(r);
                        let mut arcs = vec![InArc {
                            from: prev,
                            weights: vec![Rational::from_integer(1.into()), Rational::zero()],
                        }];
                        arcs.extend(sources.iter().enumerate().map(|(u, &from)| InArc {
                            from,
                            weights: vec![Rational::zero(), rw[u].clone()],
                        }));
                        let id = if last {
                            neuron.id.clone()
                        } else {
                            format!("{}~{}", neuron.id, r)
                        };
                        neurons.push(Neuron {
                            id,
                            kind: NeuronKind::Maxout {
                                rank: 2,
                                incoming: arcs,
                            },
                        });
                        prev = neurons.len() - 1;
                    }
                    image.insert(i, prev);
                }
            }
        }
        let output = image[&self.output];
        let net = MaxoutNetwork {
            d: self.d,
            neurons,
            output,
        };
        debug_assert!(net.is_valid());
        net
    }

    /// Single rank-2 unit with all-zero weight rows: the constant-zero
    /// function, used for vanishing split components and the polytope `{0}`.
    pub fn zero_network(d: usize) -> MaxoutNetwork {
        let mut b = NetworkBuilder::new(d);
        let arcs = (0..d)
            .map(|i| (b.input(i), vec![Rational::zero(), Rational::zero()]))
            .collect();
        let v = b.maxout("v0", 2, arcs).expect("zero unit is well-formed");
        b.finish(v).expect("zero network is valid")
    }

    /// Builds a rank-2 network computing the support function of `p`: a
    /// single unit whose weight rows are the vertices, decomposed to rank 2.
    pub fn from_vertices(p: &VPolytope) -> MaxoutNetwork {
        let d = p.d();
        let verts = p.vertices();
        let mut rows: Vec<&[Rational]> = verts.iter().map(Vec::as_slice).collect();
        if rows.len() == 1 {
            rows.push(rows[0]);
        }
        let rank = rows.len();
        let mut b = NetworkBuilder::new(d);
        let arcs = (0..d)
            .map(|i| {
                (
                    b.input(i),
                    rows.iter().map(|r| r[i].clone()).collect::<Vec<_>>(),
                )
            })
            .collect();
        let v = b
            .maxout("v0", rank, arcs)
            .expect("support unit is well-formed");
        b.finish(v)
            .expect("vertex-max network is valid")
            .to_rank2()
    }
}

/// Handle to a neuron under construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRef(usize);

/// Incremental constructor; `finish` rejects networks violating any invariant.
pub struct NetworkBuilder {
    d: usize,
    neurons: Vec<Neuron>,
}

impl NetworkBuilder {
    /// Starts a network with inputs `x0..x{d-1}` already in place.
    pub fn new(d: usize) -> Self {
        let neurons = (0..d)
            .map(|coord| Neuron {
                id: format!("x{coord}"),
                kind: NeuronKind::Input { coord },
            })
            .collect();
        Self { d, neurons }
    }

    pub fn input(&self, coord: usize) -> NodeRef {
        assert!(coord < self.d, "input coordinate out of range");
        NodeRef(coord)
    }

    /// Adds a rank-`rank` maxout unit; `incoming` pairs each source with its
    /// weight tuple (one weight per row).
    pub fn maxout(
        &mut self,
        id: &str,
        rank: usize,
        incoming: Vec<(NodeRef, Vec<Rational>)>,
    ) -> Result<NodeRef> {
        if rank < 2 {
            return Err(Error::InvalidInput(format!(
                "rank must be at least 2, got {rank}"
            )));
        }
        for (src, weights) in &incoming {
            if src.0 >= self.neurons.len() {
                return Err(Error::InvalidInput("arc from unknown neuron".into()));
            }
            if weights.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "arc carries {} weights, rank requires {rank}",
                    weights.len()
                )));
            }
        }
        let arcs = incoming
            .into_iter()
            .map(|(src, weights)| InArc {
                from: src.0,
                weights,
            })
            .collect();
        self.neurons.push(Neuron {
            id: id.to_string(),
            kind: NeuronKind::Maxout {
                rank,
                incoming: arcs,
            },
        });
        Ok(NodeRef(self.neurons.len() - 1))
    }

    /// A ReLU embedded as a rank-2 unit: `max{0, Σ coeff·z_u}` via one
    /// all-zero weight row.
    pub fn relu(&mut self, id: &str, incoming: Vec<(NodeRef, Rational)>) -> Result<NodeRef> {
        let incoming = incoming
            .into_iter()
            .map(|(src, coeff)| (src, vec![coeff, Rational::zero()]))
            .collect();
        self.maxout(id, 2, incoming)
    }

    pub fn finish(self, output: NodeRef) -> Result<MaxoutNetwork> {
        let output_id = self.neurons[output.0].id.clone();
        let net = MaxoutNetwork::from_parts(self.d, self.neurons, &output_id)?;
        let diagnostics = net.validate();
        if diagnostics.is_empty() {
            Ok(net)
        } else {
            Err(Error::InvalidNetwork(
                diagnostics
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }
}

/// `max{0, Σ coeffs[i]·x_i}` over `coeffs.len()` inputs.
pub fn relu_network(coeffs: &[Rational]) -> MaxoutNetwork {
    let d = coeffs.len();
    let mut b = NetworkBuilder::new(d);
    let arcs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (b.input(i), c.clone()))
        .collect();
    let v = b.relu("v0", arcs).expect("relu unit is well-formed");
    b.finish(v).expect("relu network is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::sampling::sample_points;

    fn max_of_coordinates(d: usize) -> MaxoutNetwork {
        // A tree of rank-2 units computing max{x_1,...,x_d}.
        let mut b = NetworkBuilder::new(d);
        let mut prev = b.input(0);
        let mut prev_is_input = true;
        let mut node = prev;
        for i in 1..d {
            let arcs = vec![
                (prev, vec![rat(1), rat(0)]),
                (b.input(i), vec![rat(0), rat(1)]),
            ];
            node = b.maxout(&format!("v{i}"), 2, arcs).unwrap();
            prev = node;
            prev_is_input = false;
        }
        assert!(!prev_is_input);
        b.finish(node).unwrap()
    }

    #[test]
    fn relu_evaluates_like_max_with_zero() {
        let net = relu_network(&[rat(1)]);
        assert_eq!(net.evaluate(&[rat(-2)]).unwrap(), rat(0));
        assert_eq!(net.evaluate(&[rat(5)]).unwrap(), rat(5));
        assert!(net.validate().is_empty());

        let neg = relu_network(&[rat(-1)]);
        assert_eq!(neg.evaluate(&[rat(5)]).unwrap(), rat(0));

        let diff = relu_network(&[rat(1), rat(-1)]);
        assert_eq!(diff.evaluate(&[rat(2), rat(7)]).unwrap(), rat(0));
    }

    #[test]
    fn rank2_unit_picks_coordinates() {
        let mut b = NetworkBuilder::new(2);
        let arcs = vec![
            (b.input(0), vec![rat(1), rat(0)]),
            (b.input(1), vec![rat(0), rat(1)]),
        ];
        let v = b.maxout("v0", 2, arcs).unwrap();
        let net = b.finish(v).unwrap();
        assert_eq!(net.evaluate(&[rat(3), rat(5)]).unwrap(), rat(5));
    }

    #[test]
    fn tree_matches_brute_force_max() {
        let net = max_of_coordinates(3);
        assert_eq!(net.size(), 2);
        let x = [rat(1), rat(7), rat(4)];
        let brute = x.iter().cloned().max().unwrap();
        assert_eq!(net.evaluate(&x).unwrap(), brute);
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        let net = relu_network(&[rat(1)]);
        assert!(matches!(
            net.evaluate(&[rat(1), rat(2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validate_flags_cycle() {
        // Two units feeding each other.
        let neurons = vec![
            Neuron {
                id: "x0".into(),
                kind: NeuronKind::Input { coord: 0 },
            },
            Neuron {
                id: "a".into(),
                kind: NeuronKind::Maxout {
                    rank: 2,
                    incoming: vec![InArc {
                        from: 2,
                        weights: vec![rat(1), rat(0)],
                    }],
                },
            },
            Neuron {
                id: "b".into(),
                kind: NeuronKind::Maxout {
                    rank: 2,
                    incoming: vec![InArc {
                        from: 1,
                        weights: vec![rat(1), rat(0)],
                    }],
                },
            },
        ];
        let net = MaxoutNetwork::from_parts(1, neurons, "b").unwrap();
        let diags = net.validate();
        assert!(diags.contains(&Diagnostic::Cycle), "got {diags:?}");
    }

    #[test]
    fn validate_flags_arity_mismatch() {
        let neurons = vec![
            Neuron {
                id: "x0".into(),
                kind: NeuronKind::Input { coord: 0 },
            },
            Neuron {
                id: "v".into(),
                kind: NeuronKind::Maxout {
                    rank: 2,
                    incoming: vec![InArc {
                        from: 0,
                        weights: vec![rat(1)],
                    }],
                },
            },
        ];
        let net = MaxoutNetwork::from_parts(1, neurons, "v").unwrap();
        assert!(net
            .validate()
            .iter()
            .any(|d| matches!(d, Diagnostic::ArityMismatch { .. })));
    }

    #[test]
    fn valid_relu_has_no_diagnostics() {
        assert!(relu_network(&[rat(1)]).validate().is_empty());
    }

    #[test]
    fn monotonicity_detection() {
        assert!(max_of_coordinates(3).is_monotone());
        assert!(!relu_network(&[rat(1), rat(-1)]).is_monotone());
        assert!(MaxoutNetwork::zero_network(2).is_monotone());
    }

    #[test]
    fn to_rank2_single_rank3_unit() {
        let mut b = NetworkBuilder::new(3);
        let arcs = (0..3)
            .map(|i| {
                let mut w = vec![rat(0), rat(0), rat(0)];
                w[i] = rat(1);
                (b.input(i), w)
            })
            .collect();
        let v = b.maxout("m", 3, arcs).unwrap();
        let net = b.finish(v).unwrap();
        assert_eq!(net.size(), 1);

        let reduced = net.to_rank2();
        assert_eq!(reduced.size(), 2);
        assert!(reduced
            .neurons()
            .iter()
            .all(|n| !matches!(&n.kind, NeuronKind::Maxout { rank, .. } if *rank != 2)));
        for x in sample_points(3, 50, 11) {
            assert_eq!(reduced.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn to_rank2_is_identity_on_rank2_networks() {
        let net = max_of_coordinates(4);
        assert_eq!(net.to_rank2(), net);
    }

    #[test]
    fn to_rank2_rank4_max_agrees_on_samples() {
        let mut b = NetworkBuilder::new(4);
        let arcs = (0..4)
            .map(|i| {
                let mut w = vec![rat(0); 4];
                w[i] = rat(1);
                (b.input(i), w)
            })
            .collect();
        let v = b.maxout("m", 4, arcs).unwrap();
        let net = b.finish(v).unwrap();
        let reduced = net.to_rank2();
        assert_eq!(reduced.size(), 3);
        assert!(reduced.is_monotone());
        for x in sample_points(4, 50, 3) {
            assert_eq!(reduced.evaluate(&x).unwrap(), net.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn from_vertices_matches_vertex_max() {
        let p = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
        )
        .unwrap();
        let net = MaxoutNetwork::from_vertices(&p);
        assert_eq!(net.size(), 1);
        assert_eq!(net.evaluate(&[rat(2), rat(5)]).unwrap(), rat(5));
    }

    #[test]
    fn from_vertices_zero_polytope() {
        let p = VPolytope::origin(2);
        let net = MaxoutNetwork::from_vertices(&p);
        assert_eq!(net.size(), 1);
        assert_eq!(net.evaluate(&[rat(4), rat(-3)]).unwrap(), rat(0));
    }

    #[test]
    fn evaluate_is_positively_homogeneous() {
        let net = relu_network(&[rat(2), rat(-3)]);
        for x in sample_points(2, 30, 5) {
            let fx = net.evaluate(&x).unwrap();
            for lambda in [rat(0), rat(2), ratio(3, 2), ratio(1, 7)] {
                let scaled: Vec<_> = x.iter().map(|v| v * &lambda).collect();
                assert_eq!(net.evaluate(&scaled).unwrap(), &lambda * &fx);
            }
        }
    }
}
