use std::collections::{HashMap, HashSet};

use super::InvError;
use crate::gf::Elem;
use crate::graph::{component_of, Graph, Vertex};

/// How one component of Γ(Ω, q) sits over its projection in Γ(Ω′, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub component: u64,
    pub image: u64,
    /// The image is a whole component of Γ(Ω′, q).
    pub image_is_component: bool,
    pub fiber_min: u64,
    pub fiber_max: u64,
}

impl FiberReport {
    /// The common fiber size, when the projection is uniformly t-to-1 onto a
    /// component.
    pub fn t(&self) -> Option<u64> {
        (self.image_is_component && self.fiber_min == self.fiber_max).then_some(self.fiber_min)
    }
}

fn check_sub(g: &Graph, sub: &Graph) -> Result<(), InvError> {
    if !sub.omega().is_subset_of(g.omega()) {
        return Err(InvError::Precondition("Ω′ is not a subset of Ω".into()));
    }
    if sub.field() != g.field() {
        return Err(InvError::Precondition("the two graphs use different fields".into()));
    }
    Ok(())
}

/// Enumerates the component of `start`, projects it onto Γ(Ω′, q) and
/// tabulates fiber sizes.
pub fn fiber_check(g: &Graph, sub: &Graph, start: &Vertex, cap: u64) -> Result<FiberReport, InvError> {
    check_sub(g, sub)?;
    let comp = component_of(g, start, cap)?;
    let mut fibers: HashMap<Vertex, u64> = HashMap::new();
    for v in &comp {
        *fibers.entry(g.project(v, sub)?).or_default() += 1;
    }
    let image_start = g.project(start, sub)?;
    let image_comp = component_of(sub, &image_start, cap)?;
    let image: HashSet<&Vertex> = fibers.keys().collect();
    let image_is_component = image_comp.len() == image.len() && image_comp.iter().all(|u| image.contains(u));
    Ok(FiberReport {
        component: comp.len() as u64,
        image: image.len() as u64,
        image_is_component,
        fiber_min: fibers.values().copied().min().unwrap_or(0),
        fiber_max: fibers.values().copied().max().unwrap_or(0),
    })
}

/// The vertex of Γ(Ω, q) over `u` ∈ Γ(Ω∖{α}, q) whose α entry is `x`.
pub fn lift(g: &Graph, sub: &Graph, u: &Vertex, alpha_slot: usize, x: Elem) -> Vertex {
    let entries = g
        .omega()
        .iter()
        .enumerate()
        .map(|(j, s)| if j == alpha_slot { x } else { u.entries[sub.slot(s).expect("member of Ω′")] })
        .collect();
    Vertex { side: u.side, color: u.color, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::graph::Side;
    use crate::seqset::{u_family, OmegaSet};
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn identity_projection() {
        let g = Graph::new(u_family(4).unwrap(), Field::new(3, 1).unwrap());
        let r = fiber_check(&g, &g, &g.zero_vertex(Side::L, Elem::ZERO), 1 << 16).unwrap();
        assert_eq!(r.t(), Some(1));
    }

    #[test]
    fn run_set_projection_is_uniform() {
        let f = Field::new(3, 1).unwrap();
        let g = Graph::new(OmegaSet::parse_text("e\n0\n00").unwrap(), f.clone());
        let sub = Graph::new(OmegaSet::parse_text("e\n0").unwrap(), f);
        let r = fiber_check(&g, &sub, &g.zero_vertex(Side::L, Elem::ZERO), 1 << 16).unwrap();
        let t = r.t().expect("uniform fibers");
        assert!((1..=3).contains(&t));
        assert_eq!(r.component, r.image * t);
    }

    #[test]
    fn edges_project_to_edges() {
        let f = Field::new(3, 1).unwrap();
        let g = Graph::new(u_family(6).unwrap(), f.clone());
        let sub = Graph::new(u_family(4).unwrap(), f);
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let e = g.edge_at(&g.random_vertex(Side::L, &mut rng), Elem::from_raw(rand::Rng::gen_range(&mut rng, 0..3)));
            let (a, b) = (g.project(&e.left, &sub).unwrap(), g.project(&e.right, &sub).unwrap());
            assert!(sub.is_adjacent(&a, &b).unwrap());
        }
    }

    #[test]
    fn rejects_non_subset() {
        let f = Field::new(3, 1).unwrap();
        let g = Graph::new(u_family(4).unwrap(), f.clone());
        let sub = Graph::new(OmegaSet::parse_text("e\n0\n00").unwrap(), f);
        assert!(fiber_check(&g, &sub, &g.zero_vertex(Side::L, Elem::ZERO), 1 << 16).is_err());
    }
}
