use std::collections::HashMap;
use std::io::Write;

use super::{component_of, Edge, Graph, GraphError, Side, Vertex};

#[derive(Debug, Clone)]
pub enum Scope {
    All,
    ComponentOf(Vertex),
}

fn scoped_edges(g: &Graph, scope: &Scope, cap: u64) -> Result<Vec<Edge>, GraphError> {
    match scope {
        Scope::All => {
            let edges = g.side_size() * g.q() as u128;
            if edges > cap as u128 {
                return Err(GraphError::CapExceeded { needed: edges, cap });
            }
            Ok(g.edges(cap)?.collect())
        }
        Scope::ComponentOf(v) => {
            let lefts = component_of(g, v, cap)?.into_iter().filter(|u| u.side == Side::L);
            Ok(lefts.flat_map(|l| g.field().elements().map(move |c| g.edge_at(&l, c))).collect())
        }
    }
}

/// One `L:… TAB R:…` line per edge; returns the edge count.
pub fn export_edgelist<W: Write>(g: &Graph, scope: &Scope, cap: u64, out: &mut W) -> Result<u64, GraphError> {
    let edges = scoped_edges(g, scope, cap)?;
    for e in &edges {
        writeln!(out, "{e}")?;
    }
    Ok(edges.len() as u64)
}

/// Sparse pattern matrix in Matrix Market coordinate form. Rows are left
/// vertices and columns right vertices, both numbered in discovery order.
pub fn export_biadjacency<W: Write>(
    g: &Graph,
    scope: &Scope,
    cap: u64,
    out: &mut W,
) -> Result<(usize, usize, usize), GraphError> {
    let edges = scoped_edges(g, scope, cap)?;
    let mut rows: HashMap<&Vertex, usize> = HashMap::new();
    let mut cols: HashMap<&Vertex, usize> = HashMap::new();
    let mut entries = Vec::with_capacity(edges.len());
    for e in &edges {
        let n = rows.len();
        let i = *rows.entry(&e.left).or_insert(n + 1);
        let n = cols.len();
        let j = *cols.entry(&e.right).or_insert(n + 1);
        entries.push((i, j));
    }
    writeln!(out, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(out, "{} {} {}", rows.len(), cols.len(), entries.len())?;
    for (i, j) in &entries {
        writeln!(out, "{i} {j}")?;
    }
    Ok((rows.len(), cols.len(), entries.len()))
}

/// Reads the edge-list format back.
pub fn import_edgelist(text: &str) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (a, b) = line.split_once('\t').ok_or_else(|| GraphError::Parse(line.to_string()))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect()
}

/// Component count of the graph spanned by an edge list.
pub fn count_components_edgelist(edges: &[(Vertex, Vertex)]) -> usize {
    let mut ids: HashMap<&Vertex, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let mut id = |v| {
            let n = parent.len();
            *ids.entry(v).or_insert_with(|| {
                parent.push(n);
                n
            })
        };
        let (i, j) = (id(a), id(b));
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Elem, Field};
    use crate::graph::components;
    use crate::seqset::{w_family, BinSeq, OmegaSet};

    #[test]
    fn eta_only_edge_count() {
        let g = Graph::new(OmegaSet::from_set([BinSeq::eta()]).unwrap(), Field::new(2, 1).unwrap());
        let mut buf = Vec::new();
        assert_eq!(export_edgelist(&g, &Scope::All, 100, &mut buf).unwrap(), 8);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("L:0,0\tR:0,0\n"));
        let mut mm = Vec::new();
        assert_eq!(export_biadjacency(&g, &Scope::All, 100, &mut mm).unwrap(), (4, 4, 8));
    }

    #[test]
    fn biadjacency_rows_sum_to_q() {
        let g = Graph::new(w_family(3).unwrap(), Field::new(3, 1).unwrap());
        let mut mm = Vec::new();
        export_biadjacency(&g, &Scope::All, 1000, &mut mm).unwrap();
        let text = String::from_utf8(mm).unwrap();
        let mut sums: HashMap<usize, usize> = HashMap::new();
        for line in text.lines().skip(2) {
            let row: usize = line.split(' ').next().unwrap().parse().unwrap();
            *sums.entry(row).or_default() += 1;
        }
        assert_eq!(sums.len(), 81);
        assert!(sums.values().all(|&s| s == 3));
    }

    #[test]
    fn roundtrip_preserves_components() {
        let g = Graph::new(w_family(4).unwrap(), Field::new(3, 1).unwrap());
        let mut buf = Vec::new();
        export_edgelist(&g, &Scope::All, 1 << 20, &mut buf).unwrap();
        let edges = import_edgelist(&String::from_utf8(buf).unwrap()).unwrap();
        assert_eq!(count_components_edgelist(&edges), components(&g, 1 << 20).unwrap().count());

        let z = g.zero_vertex(Side::L, Elem::ZERO);
        let mut one = Vec::new();
        let n = export_edgelist(&g, &Scope::ComponentOf(z), 1 << 20, &mut one).unwrap();
        assert_eq!(n, 486 / 9 / 2 * 3);
        let edges = import_edgelist(&String::from_utf8(one).unwrap()).unwrap();
        assert_eq!(count_components_edgelist(&edges), 1);
    }
}
