#![allow(dead_code)]

use omega_graphs::gf::{Elem, Field};
use omega_graphs::graph::{Edge, Graph, Side};
use omega_graphs::seqset::OmegaSet;
use rand::Rng;

pub fn field(q: u32) -> Field {
    match q {
        4 => Field::new(2, 2).unwrap(),
        8 => Field::new(2, 3).unwrap(),
        9 => Field::new(3, 2).unwrap(),
        p => Field::new(p as u64, 1).unwrap(),
    }
}

pub fn graph(omega: OmegaSet, q: u32) -> Graph {
    Graph::new(omega, field(q))
}

pub fn set(text: &str) -> OmegaSet {
    OmegaSet::parse_text(&text.replace(' ', "\n")).unwrap()
}

pub fn random_edge<R: Rng>(g: &Graph, rng: &mut R) -> Edge {
    let left = g.random_vertex(Side::L, rng);
    let c = Elem::from_raw(rng.gen_range(0..g.q()));
    g.edge_at(&left, c)
}
