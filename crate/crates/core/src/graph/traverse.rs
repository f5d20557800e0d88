use std::collections::{HashSet, VecDeque};

use super::{Codec, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub vertices: u64,
    pub edges: u64,
    /// The member with the smallest key.
    pub representative: Vertex,
}

/// Exact partition of the vertex set, one label per key.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    codec: Codec,
    labels: Vec<u32>,
    pub summaries: Vec<ComponentSummary>,
}

impl ComponentLabels {
    pub fn count(&self) -> usize {
        self.summaries.len()
    }

    pub fn label(&self, v: &Vertex) -> usize {
        self.labels[self.codec.encode(v) as usize] as usize
    }

    /// Members of component `id` in key order.
    pub fn members(&self, id: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l as usize == id)
            .map(|(k, _)| self.codec.decode(k as u64))
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }
}

/// Labels every vertex by exhaustive traversal from each unvisited key.
pub fn components(g: &Graph, cap: u64) -> Result<ComponentLabels, GraphError> {
    g.check_cap(cap)?;
    let codec = g.codec()?;
    const UNSEEN: u32 = u32::MAX;
    let mut labels = vec![UNSEEN; codec.len() as usize];
    let mut summaries = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..codec.len() {
        if labels[start as usize] != UNSEEN {
            continue;
        }
        let id = summaries.len() as u32;
        labels[start as usize] = id;
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(k) = queue.pop_front() {
            size += 1;
            let v = codec.decode(k);
            for c in g.field().elements() {
                let n = codec.encode(&g.neighbor(&v, c));
                if labels[n as usize] == UNSEEN {
                    labels[n as usize] = id;
                    queue.push_back(n);
                }
            }
        }
        summaries.push(ComponentSummary {
            vertices: size,
            edges: size * g.q() as u64 / 2,
            representative: codec.decode(start),
        });
    }
    Ok(ComponentLabels { codec, labels, summaries })
}

/// The component containing `v`, in discovery order; fails past `cap` vertices.
pub fn component_of(g: &Graph, v: &Vertex, cap: u64) -> Result<Vec<Vertex>, GraphError> {
    g.validate(v)?;
    let mut seen: HashSet<Vertex> = HashSet::from([v.clone()]);
    let mut order = vec![v.clone()];
    let mut head = 0;
    while head < order.len() {
        let u = order[head].clone();
        head += 1;
        for c in g.field().elements() {
            let n = g.neighbor(&u, c);
            if seen.insert(n.clone()) {
                if order.len() as u64 >= cap {
                    return Err(GraphError::CapExceeded { needed: order.len() as u128 + 1, cap });
                }
                order.push(n);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Elem, Field};
    use crate::graph::Side;
    use crate::seqset::{w_family, OmegaSet};
    use crate::seqset::BinSeq;

    fn graph(omega: OmegaSet, q: u64) -> Graph {
        Graph::new(omega, Field::new(q, 1).unwrap())
    }

    #[test]
    fn wenger_counts() {
        assert_eq!(components(&graph(w_family(2).unwrap(), 3), 1 << 20).unwrap().count(), 1);
        let w4 = components(&graph(w_family(4).unwrap(), 3), 1 << 20).unwrap();
        assert_eq!(w4.count(), 9);
        let total: u64 = w4.summaries.iter().map(|s| s.vertices).sum();
        assert_eq!(total, 2 * 3u64.pow(5));
    }

    #[test]
    fn eta_only_binary() {
        let g = graph(OmegaSet::from_set([BinSeq::eta()]).unwrap(), 2);
        let labels = components(&g, 100).unwrap();
        let z = g.zero_vertex(Side::L, Elem::ZERO);
        let id = labels.label(&z);
        let members: Vec<Vertex> = labels.members(id).collect();
        for side in [Side::L, Side::R] {
            let colors: HashSet<Elem> = members.iter().filter(|v| v.side == side).map(|v| v.color).collect();
            assert_eq!(colors.len(), 2);
        }
        assert_eq!(labels.count(), 1);
        assert_eq!(component_of(&g, &z, 100).unwrap().len(), 8);
        assert!(component_of(&g, &z, 4).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = graph(w_family(4).unwrap(), 3);
        assert!(matches!(components(&g, 100), Err(GraphError::CapExceeded { .. })));
    }
}
