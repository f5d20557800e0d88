//! Executable automorphisms of Γ(Ω, q) and their mechanical verification.
//!
//! Every family here acts on each side by an affine map of the entry vector,
//! so an [`AutoMap`] is a list of affine stages applied in order.

mod families;
mod transitive;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::graph::{Edge, Graph, GraphError, Side, Vertex};
use crate::seqset::BinSeq;

pub use families::{lambda_map, phi_map, phi_table, psi_map, theta_map, theta_variant, CoefficientTable, ThetaRule};
pub use transitive::{pi_edge, pi_vertex, theta0, theta1};
pub use verify::{parse_descriptor, verify, Counterexample, VerifyMode, VerifyReport};

#[derive(Debug, Error)]
pub enum AutoError {
    #[error("λ needs nonzero parameters")]
    ZeroParameter,
    #[error("{seq} is not a member of Ω")]
    NotMember { seq: BinSeq },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bad map descriptor {0:?}")]
    Descriptor(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which construction produced a map, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Identity,
    Lambda { x: Elem, y: Elem },
    Theta { x: Elem, alpha: BinSeq },
    Phi { x: Elem },
    Psi { x: Elem },
    Theta0,
    Theta1,
    PiEdge,
    PiVertex,
    Composition(Vec<Family>),
    /// A deliberately altered map, kept for mutation tests.
    Mutant(Box<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Identity => f.write_str("identity"),
            Family::Lambda { x, y } => write!(f, "lambda:x={x},y={y}"),
            Family::Theta { x, alpha } => write!(f, "theta:x={x},alpha={alpha}"),
            Family::Phi { x } => write!(f, "phi:x={x}"),
            Family::Psi { x } => write!(f, "psi:x={x}"),
            Family::Theta0 => f.write_str("theta0"),
            Family::Theta1 => f.write_str("theta1"),
            Family::PiEdge => f.write_str("pi-edge"),
            Family::PiVertex => f.write_str("pi-vertex"),
            Family::Composition(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "compose({})", names.join(" . "))
            }
            Family::Mutant(inner) => write!(f, "mutant({inner})"),
        }
    }
}

/// out = constant + Σ coefficient · input[slot], slot 0 being the color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Row {
    pub constant: Elem,
    pub terms: Vec<(usize, Elem)>,
}

impl Row {
    fn identity(slot: usize) -> Row {
        Row { constant: Elem::ZERO, terms: vec![(slot, Elem::ONE)] }
    }
}

/// Affine maps on both sides, applied with all inputs read before any write.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Stage {
    pub left: Vec<Row>,
    pub right: Vec<Row>,
}

impl Stage {
    pub fn identity(dim: usize) -> Stage {
        let rows: Vec<Row> = (0..=dim).map(Row::identity).collect();
        Stage { left: rows.clone(), right: rows }
    }

    pub fn rows_mut(&mut self, side: Side) -> &mut Vec<Row> {
        match side {
            Side::L => &mut self.left,
            Side::R => &mut self.right,
        }
    }

    fn apply(&self, f: &Field, v: &Vertex) -> Vertex {
        let rows = match v.side {
            Side::L => &self.left,
            Side::R => &self.right,
        };
        let input = |slot: usize| if slot == 0 { v.color } else { v.entries[slot - 1] };
        let mut out = rows.iter().map(|row| {
            row.terms.iter().fold(row.constant, |acc, &(slot, c)| f.add(acc, f.mul(c, input(slot))))
        });
        let color = out.next().expect("color row");
        Vertex { side: v.side, color, entries: out.collect() }
    }
}

/// A vertex map on Γ(Ω, q), bound to the graph it was built for.
#[derive(Debug, Clone)]
pub struct AutoMap {
    family: Family,
    stages: Vec<Stage>,
    field: Field,
    dim: usize,
}

impl AutoMap {
    pub fn identity(g: &Graph) -> AutoMap {
        AutoMap { family: Family::Identity, stages: Vec::new(), field: g.field().clone(), dim: g.dim() }
    }

    pub(crate) fn from_stages(g: &Graph, family: Family, stages: Vec<Stage>) -> AutoMap {
        AutoMap { family, stages, field: g.field().clone(), dim: g.dim() }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub(crate) fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn apply(&self, v: &Vertex) -> Vertex {
        assert_eq!(v.entries.len(), self.dim, "vertex does not belong to this graph");
        self.stages.iter().fold(v.clone(), |acc, s| s.apply(&self.field, &acc))
    }

    pub fn apply_edge(&self, e: &Edge) -> Edge {
        Edge { left: self.apply(&e.left), right: self.apply(&e.right) }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &AutoMap) -> AutoMap {
        let mut stages = first.stages.clone();
        stages.extend(self.stages.iter().cloned());
        let mut parts = Vec::new();
        for fam in [&first.family, &self.family] {
            match fam {
                Family::Identity => {}
                Family::Composition(inner) => parts.extend(inner.iter().cloned()),
                other => parts.push(other.clone()),
            }
        }
        AutoMap { family: Family::Composition(parts), stages, field: self.field.clone(), dim: self.dim }
    }

    pub fn relabel(mut self, family: Family) -> AutoMap {
        self.family = family;
        self
    }

    /// Negates one coefficient of one row in the last stage, for mutation tests.
    /// Returns `None` when the row has no such term.
    pub fn flip_term(&self, side: Side, slot: usize, term: usize) -> Option<AutoMap> {
        self.scale_term(side, slot, term, self.field.neg(Elem::ONE))
    }

    /// Multiplies one coefficient of the last stage by `factor`. Negation is
    /// trivial in characteristic 2, where this is the only real mutation.
    pub fn scale_term(&self, side: Side, slot: usize, term: usize, factor: Elem) -> Option<AutoMap> {
        let mut out = self.clone();
        let stage = out.stages.last_mut()?;
        let entry = stage.rows_mut(side).get_mut(slot)?.terms.get_mut(term)?;
        entry.1 = self.field.mul(entry.1, factor);
        out.family = Family::Mutant(Box::new(self.family.clone()));
        Some(out)
    }

    /// (output slot, term position) of every nonzero last-stage term on `side`
    /// that reads a slot other than its own.
    pub fn cross_terms(&self, side: Side) -> Vec<(usize, usize)> {
        let Some(stage) = self.stages.last() else { return Vec::new() };
        let rows = if side == Side::L { &stage.left } else { &stage.right };
        rows.iter()
            .enumerate()
            .flat_map(|(slot, row)| {
                row.terms.iter().enumerate().filter(move |(_, t)| t.0 != slot && !t.1.is_zero()).map(move |(k, _)| (slot, k))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqset::u_family;

    #[test]
    fn identity_and_composition() {
        let g = Graph::new(u_family(4).unwrap(), Field::new(3, 1).unwrap());
        let id = AutoMap::identity(&g);
        let v = g.vertex(Side::L, Elem::from_raw(1), vec![Elem::from_raw(2); 3]).unwrap();
        assert_eq!(id.apply(&v), v);
        let l = lambda_map(&g, Elem::from_raw(2), Elem::from_raw(2)).unwrap();
        let ll = l.after(&l);
        assert_eq!(ll.apply(&v), v, "λ_{{2,2}} squared is the identity over GF(3)");
        assert_eq!(ll.family().to_string(), "compose(lambda:x=2,y=2 . lambda:x=2,y=2)");
    }
}
