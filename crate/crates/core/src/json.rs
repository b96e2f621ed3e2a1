//! JSON wire formats. Rationals cross the boundary as `"p/q"` strings
//! (`"p"` for integers); decimals are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended_formulation::ExtendedFormulation;
use crate::maxout_net::{InArc, MaxoutNetwork, Neuron, NeuronKind};
use crate::polytopes::{HPolyhedron, LinearConstraint, VPolytope};
use crate::rational::{format_rational, format_vector, parse_rational, parse_vector, Rational};

#[derive(Debug, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub d: usize,
    pub neurons: Vec<NeuronDoc>,
    pub output: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NeuronDoc {
    pub id: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coord: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(rename = "in", skip_serializing_if = "Option::is_none")]
    pub incoming: Option<Vec<ArcDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ArcDoc {
    pub from: String,
    pub weights: Vec<String>,
}

impl From<&MaxoutNetwork> for NetworkDoc {
    fn from(net: &MaxoutNetwork) -> Self {
        let neurons = net
            .neurons()
            .iter()
            .map(|n| match &n.kind {
                NeuronKind::Input { coord } => NeuronDoc {
                    id: n.id.clone(),
                    kind: "input".into(),
                    coord: Some(*coord),
                    rank: None,
                    incoming: None,
                },
                NeuronKind::Maxout { rank, incoming } => NeuronDoc {
                    id: n.id.clone(),
                    kind: "maxout".into(),
                    coord: None,
                    rank: Some(*rank),
                    incoming: Some(
                        incoming
                            .iter()
                            .map(|arc| ArcDoc {
                                from: net.neurons()[arc.from].id.clone(),
                                weights: format_vector(&arc.weights),
                            })
                            .collect(),
                    ),
                },
            })
            .collect();
        NetworkDoc {
            d: net.d(),
            neurons,
            output: net.output_id().to_string(),
        }
    }
}

impl NetworkDoc {
    pub fn into_network(self) -> Result<MaxoutNetwork> {
        let index_of = |id: &str| -> Result<usize> {
            self.neurons
                .iter()
                .position(|n| n.id == id)
                .ok_or_else(|| Error::InvalidInput(format!("unknown neuron id {id:?}")))
        };
        let mut neurons = Vec::with_capacity(self.neurons.len());
        for doc in &self.neurons {
            let kind = match doc.kind.as_str() {
                "input" => NeuronKind::Input {
                    coord: doc.coord.ok_or_else(|| {
                        Error::InvalidInput(format!("input {:?} lacks a coord", doc.id))
                    })?,
                },
                "maxout" => {
                    let rank = doc.rank.ok_or_else(|| {
                        Error::InvalidInput(format!("maxout {:?} lacks a rank", doc.id))
                    })?;
                    let incoming = doc
                        .incoming
                        .as_deref()
                        .unwrap_or(&[])
                        .iter()
                        .map(|arc| {
                            Ok(InArc {
                                from: index_of(&arc.from)?,
                                weights: parse_vector(&arc.weights)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    NeuronKind::Maxout { rank, incoming }
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown neuron kind {other:?}"
                    )))
                }
            };
            neurons.push(Neuron {
                id: doc.id.clone(),
                kind,
            });
        }
        MaxoutNetwork::from_parts(self.d, neurons, &self.output)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VPolytopeDoc {
    pub d: usize,
    pub vertices: Vec<Vec<String>>,
}

impl From<&VPolytope> for VPolytopeDoc {
    fn from(p: &VPolytope) -> Self {
        VPolytopeDoc {
            d: p.d(),
            vertices: p.vertices().iter().map(|v| format_vector(v)).collect(),
        }
    }
}

impl VPolytopeDoc {
    /// Parses and prunes: the stored invariant is a minimal vertex set.
    pub fn into_polytope(self) -> Result<VPolytope> {
        let points = self
            .vertices
            .iter()
            .map(|v| parse_vector(v))
            .collect::<Result<Vec<_>>>()?;
        VPolytope::new(self.d, points)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HPolyhedronDoc {
    pub d: usize,
    pub ineqs: Vec<ConstraintDoc>,
    #[serde(default)]
    pub eqs: Vec<ConstraintDoc>,
}

fn constraint_doc(c: &LinearConstraint) -> ConstraintDoc {
    ConstraintDoc {
        a: format_vector(&c.a),
        b: format_rational(&c.b),
    }
}

fn parse_constraint(doc: &ConstraintDoc, d: usize) -> Result<LinearConstraint> {
    let a = parse_vector(&doc.a)?;
    if a.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.len(),
        });
    }
    Ok(LinearConstraint::new(a, parse_rational(&doc.b)?))
}

impl From<&HPolyhedron> for HPolyhedronDoc {
    fn from(h: &HPolyhedron) -> Self {
        HPolyhedronDoc {
            d: h.d,
            ineqs: h.inequalities.iter().map(constraint_doc).collect(),
            eqs: h.equalities.iter().map(constraint_doc).collect(),
        }
    }
}

impl HPolyhedronDoc {
    pub fn into_polyhedron(self) -> Result<HPolyhedron> {
        let mut h = HPolyhedron::new(self.d);
        for c in &self.ineqs {
            h.inequalities.push(parse_constraint(c, self.d)?);
        }
        for c in &self.eqs {
            h.equalities.push(parse_constraint(c, self.d)?);
        }
        Ok(h)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EfDoc {
    pub lift: HPolyhedronDoc,
    pub proj: ProjectionDoc,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProjectionDoc {
    pub matrix: Vec<Vec<String>>,
    pub offset: Vec<String>,
}

impl From<&ExtendedFormulation> for EfDoc {
    fn from(ef: &ExtendedFormulation) -> Self {
        EfDoc {
            lift: ef.lift().into(),
            proj: ProjectionDoc {
                matrix: ef.matrix().iter().map(|r| format_vector(r)).collect(),
                offset: format_vector(ef.offset()),
            },
        }
    }
}

impl EfDoc {
    pub fn into_formulation(self) -> Result<ExtendedFormulation> {
        let lift = self.lift.into_polyhedron()?;
        let matrix = self
            .proj
            .matrix
            .iter()
            .map(|r| parse_vector(r))
            .collect::<Result<Vec<_>>>()?;
        let offset = parse_vector(&self.proj.offset)?;
        ExtendedFormulation::new(lift, matrix, offset)
    }
}

fn parse_doc<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("JSON parse error: {e}")))
}

pub fn network_to_json(net: &MaxoutNetwork) -> serde_json::Value {
    serde_json::to_value(NetworkDoc::from(net)).expect("network serializes")
}

pub fn network_from_json(s: &str) -> Result<MaxoutNetwork> {
    parse_doc::<NetworkDoc>(s)?.into_network()
}

pub fn vpolytope_to_json(p: &VPolytope) -> serde_json::Value {
    serde_json::to_value(VPolytopeDoc::from(p)).expect("polytope serializes")
}

pub fn vpolytope_from_json(s: &str) -> Result<VPolytope> {
    parse_doc::<VPolytopeDoc>(s)?.into_polytope()
}

pub fn hpolyhedron_to_json(h: &HPolyhedron) -> serde_json::Value {
    serde_json::to_value(HPolyhedronDoc::from(h)).expect("polyhedron serializes")
}

pub fn hpolyhedron_from_json(s: &str) -> Result<HPolyhedron> {
    parse_doc::<HPolyhedronDoc>(s)?.into_polyhedron()
}

pub fn ef_to_json(ef: &ExtendedFormulation) -> serde_json::Value {
    serde_json::to_value(EfDoc::from(ef)).expect("formulation serializes")
}

pub fn ef_from_json(s: &str) -> Result<ExtendedFormulation> {
    parse_doc::<EfDoc>(s)?.into_formulation()
}

/// Parses an objective vector given as comma-separated rationals, e.g. `"0,1"`.
pub fn objective_from_str(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|tok| parse_rational(tok)).collect()
}
