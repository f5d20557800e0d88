use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::PathError;
use crate::gf::Elem;
use crate::graph::{Graph, Side, Vertex};

/// Why BFS from a single zero vertex gives the exact girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    /// ℍ₀(Ω) ∪ ℍ₁(Ω) ⊆ Ω: every edge maps to the zero edge.
    EdgeTransitive,
    /// 𝕊(Ω) ∪ ℍ₁(Ω) ⊆ Ω: every left vertex maps to [0]_0.
    LTransitive,
    /// 𝕊(Ω) ∪ ℍ₀(Ω) ⊆ Ω: every right vertex maps to ⟨0⟩_0.
    RTransitive,
}

impl Justification {
    pub fn holds(self, g: &Graph) -> bool {
        let o = g.omega();
        match self {
            Justification::EdgeTransitive => o.is_h0_closed() && o.is_h1_closed(),
            Justification::LTransitive => o.is_s_closed() && o.is_h1_closed(),
            Justification::RTransitive => o.is_s_closed() && o.is_h0_closed(),
        }
    }

    pub fn root(self, g: &Graph) -> Vertex {
        let side = if self == Justification::RTransitive { Side::R } else { Side::L };
        g.zero_vertex(side, Elem::ZERO)
    }

    /// The first one that holds, preferring edge-transitivity.
    pub fn find(g: &Graph) -> Option<Justification> {
        [Justification::EdgeTransitive, Justification::LTransitive, Justification::RTransitive]
            .into_iter()
            .find(|j| j.holds(g))
    }

    pub fn tag(self) -> &'static str {
        match self {
            Justification::EdgeTransitive => "edge-transitive",
            Justification::LTransitive => "l-transitive",
            Justification::RTransitive => "r-transitive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthMode {
    AllRoots,
    FromZero(Justification),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GirthValue {
    Exact(u32),
    /// No cycle shorter than this was found.
    AtLeast(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthReport {
    pub value: GirthValue,
    pub mode: GirthMode,
    pub roots: u64,
}

impl GirthReport {
    pub fn exact(&self) -> Option<u32> {
        match self.value {
            GirthValue::Exact(g) => Some(g),
            GirthValue::AtLeast(_) => None,
        }
    }

    /// Why the number is the girth, for audit output.
    pub fn justification(&self) -> String {
        match self.mode {
            GirthMode::AllRoots => format!("all-roots: minimum of rooted BFS over {} left roots", self.roots),
            GirthMode::FromZero(j) => format!(
                "from-zero ({}): the rooted estimate lies between the girth and the shortest cycle through the root, \
                 which coincide because the root's orbit meets every cycle",
                j.tag()
            ),
        }
    }
}

impl fmt::Display for GirthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            GirthValue::Exact(g) => write!(f, "girth={g}"),
            GirthValue::AtLeast(c) => write!(f, "girth>={c}"),
        }
    }
}

/// Breadth-first search from `root` looking for cycles shorter than `limit`.
///
/// The first non-tree edge met while expanding layer d closes a cycle of
/// length at most 2d + 2 through the root, and no shorter closed walk through
/// the root exists, so the result is at least the girth and at most the
/// shortest cycle through `root`. `None` when nothing below `limit` exists.
pub fn shortest_cycle_through(g: &Graph, root: &Vertex, limit: u32) -> Option<u32> {
    // vertex -> color of its BFS parent
    let mut parent: HashMap<Vertex, Option<Elem>> = HashMap::from([(root.clone(), None)]);
    let mut frontier = vec![root.clone()];
    let mut d = 0u32;
    while 2 * d + 2 < limit && !frontier.is_empty() {
        let mut next = Vec::with_capacity(frontier.len() * (g.q() as usize - 1).max(1));
        for v in &frontier {
            let back = parent[v];
            for c in g.field().elements() {
                if Some(c) == back {
                    continue;
                }
                let w = g.neighbor(v, c);
                if parent.contains_key(&w) {
                    return Some(2 * d + 2);
                }
                parent.insert(w.clone(), Some(v.color));
                next.push(w);
            }
        }
        frontier = next;
        d += 1;
    }
    None
}

/// Exact girth, searching cycles shorter than `limit`.
///
/// All-roots mode takes the minimum of rooted searches over every left vertex
/// (every cycle has one); it needs the left side within `cap`. From-zero mode
/// re-checks the justification and searches from one root.
pub fn girth_exact(g: &Graph, mode: GirthMode, limit: u32, cap: u64) -> Result<GirthReport, PathError> {
    let (found, roots) = match mode {
        GirthMode::FromZero(j) => {
            if !j.holds(g) {
                return Err(PathError::Precondition(format!("{} hypothesis fails for this Ω", j.tag())));
            }
            (shortest_cycle_through(g, &j.root(g), limit), 1)
        }
        GirthMode::AllRoots => {
            let codec = g.codec()?;
            if g.side_size() > cap as u128 {
                return Err(PathError::Graph(crate::graph::GraphError::CapExceeded { needed: g.side_size(), cap }));
            }
            let best = AtomicU32::new(limit);
            (0..codec.side_size()).into_par_iter().for_each(|k| {
                let bound = best.load(Ordering::Relaxed);
                if let Some(len) = shortest_cycle_through(g, &codec.decode(k), bound) {
                    best.fetch_min(len, Ordering::Relaxed);
                }
            });
            let b = best.into_inner();
            ((b < limit).then_some(b), codec.side_size())
        }
    };
    let value = match found {
        Some(len) => GirthValue::Exact(len),
        None => GirthValue::AtLeast(limit),
    };
    Ok(GirthReport { value, mode, roots })
}
