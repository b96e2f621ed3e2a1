//! Newton polytopes of monotone maxout networks.
//!
//! A monotone network computes a support function, built neuron by neuron
//! through the support-function calculus: sums of functions are Minkowski
//! sums, nonnegative scaling is dilation, and maxima are convex unions. The
//! propagated polytope therefore satisfies `f_P = f` exactly.

use crate::error::{Error, Result};
use crate::maxout_net::{MaxoutNetwork, NeuronKind};
use crate::rational::unit_vector;

use super::VPolytope;

/// The unique polytope whose support function equals the function computed by
/// the (monotone) network. Rejects non-monotone inputs: dilation by negative
/// weights is undefined in the calculus.
pub fn newton_polytope(net: &MaxoutNetwork) -> Result<VPolytope> {
    if !net.is_monotone() {
        return Err(Error::NonMonotone);
    }
    let d = net.d();
    let order = net
        .topological_order()
        .ok_or_else(|| Error::InvalidNetwork("graph contains a cycle".into()))?;

    let mut polytopes: Vec<Option<VPolytope>> = vec![None; net.neurons().len()];
    for i in order {
        let poly = match &net.neurons()[i].kind {
            NeuronKind::Input { coord } => VPolytope::singleton(unit_vector(d, *coord)),
            NeuronKind::Maxout { rank, incoming } => {
                let mut union: Option<VPolytope> = None;
                for row in 0..*rank {
                    let mut term = VPolytope::origin(d);
                    for arc in incoming {
                        let w = &arc.weights[row];
                        let source = polytopes[arc.from]
                            .as_ref()
                            .expect("topological order visits sources first");
                        term = term.minkowski_sum(&source.dilate(w)?);
                    }
                    union = Some(match union {
                        None => term,
                        Some(u) => u.convex_union(&term),
                    });
                }
                union.ok_or_else(|| Error::InvalidNetwork("maxout unit of rank 0".into()))?
            }
        };
        polytopes[i] = Some(poly);
    }
    Ok(polytopes[net.output_index()]
        .take()
        .expect("output neuron was visited"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxout_net::{relu_network, NetworkBuilder};
    use crate::rational::{rat, Rational};
    use crate::sampling::sample_points;

    #[test]
    fn max_of_two_coordinates_is_a_segment() {
        let mut b = NetworkBuilder::new(2);
        let arcs = vec![
            (b.input(0), vec![rat(1), rat(0)]),
            (b.input(1), vec![rat(0), rat(1)]),
        ];
        let v = b.maxout("v0", 2, arcs).unwrap();
        let net = b.finish(v).unwrap();
        let p = newton_polytope(&net).unwrap();
        let expected = VPolytope::from_extreme_points(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
        )
        .unwrap();
        assert!(p.equals(&expected));
    }

    #[test]
    fn linear_unit_is_a_point() {
        let mut b = NetworkBuilder::new(2);
        let arcs = vec![
            (b.input(0), vec![rat(1), rat(1)]),
            (b.input(1), vec![rat(1), rat(1)]),
        ];
        let v = b.maxout("v0", 2, arcs).unwrap();
        let net = b.finish(v).unwrap();
        let p = newton_polytope(&net).unwrap();
        assert!(p.equals(&VPolytope::singleton(vec![rat(1), rat(1)])));
    }

    #[test]
    fn rejects_non_monotone_networks() {
        let net = relu_network(&[rat(1), rat(-1)]);
        assert!(matches!(newton_polytope(&net), Err(Error::NonMonotone)));
    }

    #[test]
    fn support_of_newton_polytope_equals_network() {
        // Nonnegative-vertex polytope: Newton polytope of its vertex-max
        // network recovers it, and the support matches evaluation everywhere.
        let p = VPolytope::new(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(2), rat(0)],
                vec![rat(1), rat(3)],
                vec![rat(0), rat(1)],
            ],
        )
        .unwrap();
        let net = crate::maxout_net::MaxoutNetwork::from_vertices(&p);
        let newt = newton_polytope(&net).unwrap();
        assert!(newt.equals(&p));
        for c in sample_points(2, 40, 6) {
            let (support, _) = newt.support(&c);
            assert_eq!(support, net.evaluate(&c).unwrap());
        }
    }

    #[test]
    fn zero_network_maps_to_origin() {
        let net = crate::maxout_net::MaxoutNetwork::zero_network(3);
        let p = newton_polytope(&net).unwrap();
        assert!(p.equals(&VPolytope::origin(3)));
        let zero: Rational = rat(0);
        assert_eq!(net.evaluate(&[rat(5), rat(-1), rat(2)]).unwrap(), zero);
    }
}
