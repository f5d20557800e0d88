use std::collections::HashMap;

use super::PathError;
use crate::gf::Elem;
use crate::graph::{Graph, GraphError, Vertex};

/// Non-backtracking walks of length k from `v`, keyed by endpoint, each
/// recorded as (color of the first step, color of the vertex before the end).
fn half_walks(g: &Graph, v: &Vertex, k: usize) -> HashMap<Vertex, Vec<(Elem, Elem)>> {
    let mut out: HashMap<Vertex, Vec<(Elem, Elem)>> = HashMap::new();
    // (current, previous color, first color)
    let mut layer: Vec<(Vertex, Elem, Option<Elem>)> = vec![(v.clone(), v.color, None)];
    for step in 0..k {
        let mut next = Vec::new();
        for (u, prev, first) in &layer {
            for c in g.field().elements() {
                if step > 0 && c == *prev {
                    continue;
                }
                next.push((g.neighbor(u, c), u.color, Some(first.unwrap_or(c))));
            }
        }
        layer = next;
    }
    for (end, prev, first) in layer {
        out.entry(end).or_default().push((first.expect("k ≥ 1"), prev));
    }
    out
}

/// True when no closed non-backtracking walk of length `length` passes
/// through `v`, wrap-around included.
///
/// Such a walk splits at its midpoint into two walks of length k from `v` to
/// a common end; it is non-backtracking at `v` iff their first steps differ and
/// at the midpoint iff their last-but-one vertices differ.
pub fn cycle_absent(g: &Graph, length: usize, v: &Vertex, cap: u64) -> Result<bool, PathError> {
    if length < 2 || length % 2 == 1 {
        return Err(PathError::Range(format!("cycle length {length} must be even and at least 2")));
    }
    g.validate(v)?;
    let k = length / 2;
    let q = g.q() as u128;
    let walks = q * (q - 1).pow(k as u32 - 1);
    if walks > cap as u128 {
        return Err(PathError::Graph(GraphError::CapExceeded { needed: walks, cap }));
    }
    let ends = half_walks(g, v, k);
    let closes = ends.values().any(|list| {
        list.iter().enumerate().any(|(i, &(f1, p1))| list[i + 1..].iter().any(|&(f2, p2)| f1 != f2 && p1 != p2))
    });
    Ok(!closes)
}
