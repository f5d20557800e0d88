use super::{phi_map, psi_map, theta_map, AutoError, AutoMap, Family};
use crate::graph::{Edge, Graph, Side, Vertex};

fn require_s_closed(g: &Graph) -> Result<(), AutoError> {
    if g.omega().is_s_closed() {
        Ok(())
    } else {
        Err(AutoError::Precondition("𝕊(Ω) is not contained in Ω".into()))
    }
}

fn expect_side(v: &Vertex, side: Side) -> Result<(), AutoError> {
    if v.side == side {
        Ok(())
    } else {
        Err(AutoError::Graph(crate::graph::GraphError::Side { expected: side }))
    }
}

/// Composes θ_{x,α} over Ω in ascending order, each x read from the current
/// image of `v` so that entry α becomes zero.
fn zeroing(g: &Graph, v: &Vertex, family: Family) -> Result<AutoMap, AutoError> {
    require_s_closed(g)?;
    g.validate(v)?;
    let f = g.field();
    let mut current = v.clone();
    let mut map = AutoMap::identity(g);
    for (j, alpha) in g.omega().iter().enumerate() {
        let value = current.entries[j];
        if value.is_zero() {
            continue;
        }
        let x = if v.side == Side::L { f.neg(value) } else { value };
        let step = theta_map(g, x, alpha)?;
        current = step.apply(&current);
        map = step.after(&map);
    }
    debug_assert!(current.is_zero());
    Ok(map.relabel(family))
}

/// θ₀ for a left vertex: sends it to [0]_{l_*}. Needs 𝕊(Ω) ⊆ Ω.
pub fn theta0(g: &Graph, left: &Vertex) -> Result<AutoMap, AutoError> {
    expect_side(left, Side::L)?;
    zeroing(g, left, Family::Theta0)
}

/// θ₁ for a right vertex: sends it to ⟨0⟩_{r_*}. Needs 𝕊(Ω) ⊆ Ω.
pub fn theta1(g: &Graph, right: &Vertex) -> Result<AutoMap, AutoError> {
    expect_side(right, Side::R)?;
    zeroing(g, right, Family::Theta1)
}

/// An automorphism sending `edge` to ([0]_0, ⟨0⟩_0): θ₀ ∘ ψ ∘ φ, with each
/// parameter read from the edge as transformed so far.
pub fn pi_edge(g: &Graph, edge: &Edge) -> Result<AutoMap, AutoError> {
    if !g.is_adjacent(&edge.left, &edge.right)? {
        return Err(AutoError::Graph(crate::graph::GraphError::NotAdjacent));
    }
    let f = g.field();
    let phi = phi_map(g, f.neg(edge.right.color))?;
    let e1 = phi.apply_edge(edge);
    let psi = psi_map(g, f.neg(e1.left.color))?;
    let e2 = psi.apply_edge(&e1);
    let th = theta0(g, &e2.left)?;
    Ok(th.after(&psi.after(&phi)).relabel(Family::PiEdge))
}

/// An automorphism sending `v` to the zero vertex of color 0 on its side:
/// θ₁ ∘ φ for right vertices (needs 𝕊, ℍ₀ ⊆ Ω), θ₀ ∘ ψ for left ones (𝕊, ℍ₁ ⊆ Ω).
pub fn pi_vertex(g: &Graph, v: &Vertex) -> Result<AutoMap, AutoError> {
    g.validate(v)?;
    let f = g.field();
    let (shift, finish) = match v.side {
        Side::R => {
            let phi = phi_map(g, f.neg(v.color))?;
            let th = theta1(g, &phi.apply(v))?;
            (phi, th)
        }
        Side::L => {
            let psi = psi_map(g, f.neg(v.color))?;
            let th = theta0(g, &psi.apply(v))?;
            (psi, th)
        }
    };
    Ok(finish.after(&shift).relabel(Family::PiVertex))
}
