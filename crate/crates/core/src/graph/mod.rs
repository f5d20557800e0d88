//! The implicit bipartite graph Γ(Ω, q).
//!
//! A vertex carries a side, a color (the `*` entry) and one field element per
//! member of Ω, stored in canonical order. Left vertex `[l]` and right vertex
//! `⟨r⟩` are adjacent when, for every member,
//!
//! ```text
//! l_η  + r_η  = l_* r_*
//! l_β0 + r_β0 = r_* l_β
//! l_β1 + r_β1 = l_* r_β
//! ```
//!
//! With `*0 = *1 = η` the first line is the second with β = `*`, so each member
//! is described by its parent slot and last bit.

mod dkq;
mod export;
mod traverse;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf::{Elem, Field, GfError};
use crate::seqset::{BinSeq, Index, OmegaSet, SeqError};

pub use dkq::{dkq_bridge, dkq_neighbor, from_dkq, to_dkq, DkqReport};
pub use export::{count_components_edgelist, export_biadjacency, export_edgelist, import_edgelist, Scope};
pub use traverse::{component_of, components, ComponentLabels, ComponentSummary};

pub const DEFAULT_VERTEX_CAP: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex cap exceeded: need {needed}, cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("vertex shape mismatch: {0}")]
    Shape(String),
    #[error("expected an {expected} vertex")]
    Side { expected: Side },
    #[error("vertex keys overflow 64 bits for |Ω| = {omega} and q = {q}")]
    KeyOverflow { omega: usize, q: u32 },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("vertices are not adjacent")]
    NotAdjacent,
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub color: Elem,
    /// One value per member of Ω, canonical order.
    pub entries: Vec<Elem>,
}

impl Vertex {
    /// Entry `slot`, or the color for `None`.
    #[inline]
    pub fn at(&self, slot: Option<usize>) -> Elem {
        match slot {
            None => self.color,
            Some(i) => self.entries[i],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// `L:c,e1,e2,…` with the color first.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side, self.color)?;
        for e in &self.entries {
            write!(f, ",{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = GraphError;

    /// Parses the text form without checking it against a graph.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse(s.to_string());
        let (side, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let side = match side {
            "L" => Side::L,
            "R" => Side::R,
            _ => return Err(bad()),
        };
        let values = rest
            .split(',')
            .map(|t| t.trim().parse::<u32>().map(Elem::from_raw).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let (color, entries) = values.split_first().ok_or_else(bad)?;
        Ok(Vertex { side, color: *color, entries: entries.to_vec() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub left: Vertex,
    pub right: Vertex,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.left, self.right)
    }
}

/// The equation attached to one member: `l + r = r_* l_parent` for bit 0,
/// `l + r = l_* r_parent` for bit 1; parent `None` is `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub parent: Option<usize>,
    pub bit: u8,
}

#[derive(Debug, Clone)]
pub struct Graph {
    omega: OmegaSet,
    field: Field,
    rules: Vec<Rule>,
}

impl Graph {
    pub fn new(omega: OmegaSet, field: Field) -> Self {
        let rules = omega
            .iter()
            .map(|s| match s.parent() {
                None => Rule { parent: None, bit: 0 },
                Some(p) => Rule { parent: omega.position(&p), bit: s.last().unwrap() },
            })
            .collect();
        Graph { omega, field, rules }
    }

    pub fn omega(&self) -> &OmegaSet {
        &self.omega
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Number of entries per vertex, color excluded.
    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn slot(&self, s: &BinSeq) -> Option<usize> {
        self.omega.position(s)
    }

    /// Slot of an index: `Some(None)` for `*`, `None` when absent from Ω.
    pub fn index_slot(&self, i: &Index) -> Option<Option<usize>> {
        match i {
            Index::Star => Some(None),
            Index::Seq(s) => self.slot(s).map(Some),
        }
    }

    /// q^{|Ω|+1}, the size of one side.
    pub fn side_size(&self) -> u128 {
        (self.q() as u128).pow(self.dim() as u32 + 1)
    }

    pub fn vertex_count(&self) -> u128 {
        2 * self.side_size()
    }

    pub fn check_cap(&self, cap: u64) -> Result<(), GraphError> {
        let needed = self.vertex_count();
        if needed > cap as u128 {
            return Err(GraphError::CapExceeded { needed, cap });
        }
        Ok(())
    }

    pub fn zero_vertex(&self, side: Side, color: Elem) -> Vertex {
        Vertex { side, color, entries: vec![Elem::ZERO; self.dim()] }
    }

    /// A uniformly random vertex on one side.
    pub fn random_vertex<R: rand::Rng + ?Sized>(&self, side: Side, rng: &mut R) -> Vertex {
        let q = self.q();
        let mut draw = || Elem::from_raw(rng.gen_range(0..q));
        let color = draw();
        Vertex { side, color, entries: (0..self.dim()).map(|_| draw()).collect() }
    }

    pub fn vertex(&self, side: Side, color: Elem, entries: Vec<Elem>) -> Result<Vertex, GraphError> {
        let v = Vertex { side, color, entries };
        self.validate(&v)?;
        Ok(v)
    }

    pub fn validate(&self, v: &Vertex) -> Result<(), GraphError> {
        if v.entries.len() != self.dim() {
            return Err(GraphError::Shape(format!(
                "{} entries, Ω has {} members",
                v.entries.len(),
                self.dim()
            )));
        }
        if let Some(e) = std::iter::once(&v.color).chain(&v.entries).find(|e| !self.field.contains(**e)) {
            return Err(GraphError::Gf(GfError::ForeignElement { value: e.value(), q: self.q() }));
        }
        Ok(())
    }

    /// All equations hold. Arguments may come in either order.
    pub fn is_adjacent(&self, u: &Vertex, v: &Vertex) -> Result<bool, GraphError> {
        self.validate(u)?;
        self.validate(v)?;
        let (l, r) = match (u.side, v.side) {
            (Side::L, Side::R) => (u, v),
            (Side::R, Side::L) => (v, u),
            _ => return Err(GraphError::Shape("both vertices on one side".into())),
        };
        Ok(self.adjacent_unchecked(l, r))
    }

    pub(crate) fn adjacent_unchecked(&self, l: &Vertex, r: &Vertex) -> bool {
        let f = &self.field;
        self.rules.iter().enumerate().all(|(j, rule)| {
            let rhs = if rule.bit == 0 {
                f.mul(r.color, l.at(rule.parent))
            } else {
                f.mul(l.color, r.at(rule.parent))
            };
            f.add(l.entries[j], r.entries[j]) == rhs
        })
    }

    /// The unique opposite-side neighbor of color `c`.
    pub fn neighbor(&self, v: &Vertex, c: Elem) -> Vertex {
        let f = &self.field;
        let mut entries = Vec::with_capacity(self.dim());
        for (j, rule) in self.rules.iter().enumerate() {
            let at = |slot: Option<usize>, fresh: &[Elem]| match slot {
                None => c,
                Some(i) => fresh[i],
            };
            let rhs = match (v.side, rule.bit) {
                (Side::L, 0) => f.mul(c, v.at(rule.parent)),
                (Side::L, _) => f.mul(v.color, at(rule.parent, &entries)),
                (Side::R, 0) => f.mul(v.color, at(rule.parent, &entries)),
                (Side::R, _) => f.mul(c, v.at(rule.parent)),
            };
            entries.push(f.sub(rhs, v.entries[j]));
        }
        Vertex { side: v.side.other(), color: c, entries }
    }

    pub fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        self.field.elements().map(|c| self.neighbor(v, c)).collect()
    }

    pub fn edge(&self, u: Vertex, v: Vertex) -> Result<Edge, GraphError> {
        if !self.is_adjacent(&u, &v)? {
            return Err(GraphError::NotAdjacent);
        }
        Ok(if u.side == Side::L { Edge { left: u, right: v } } else { Edge { left: v, right: u } })
    }

    /// The edge through `left` with right endpoint of color `c`.
    pub fn edge_at(&self, left: &Vertex, c: Elem) -> Edge {
        Edge { left: left.clone(), right: self.neighbor(left, c) }
    }

    pub fn zero_edge(&self) -> Edge {
        Edge { left: self.zero_vertex(Side::L, Elem::ZERO), right: self.zero_vertex(Side::R, Elem::ZERO) }
    }

    /// Mixed-radix key in [0, 2·q^{|Ω|+1}); fails when that range exceeds u64.
    pub fn codec(&self) -> Result<Codec, GraphError> {
        let q = self.q() as u64;
        let side = self.side_size();
        if 2 * side > u64::MAX as u128 {
            return Err(GraphError::KeyOverflow { omega: self.dim(), q: self.q() });
        }
        Ok(Codec { q, dim: self.dim(), side: side as u64 })
    }

    /// Every vertex on one side, in key order.
    pub fn side_vertices(&self, side: Side, cap: u64) -> Result<impl Iterator<Item = Vertex>, GraphError> {
        let n = self.side_size();
        if n > cap as u128 {
            return Err(GraphError::CapExceeded { needed: n, cap });
        }
        let codec = self.codec()?;
        let base = if side == Side::L { 0 } else { codec.side };
        Ok((0..codec.side).map(move |k| codec.decode(base + k)))
    }

    /// Every edge, ordered by left endpoint key then color.
    pub fn edges(&self, cap: u64) -> Result<impl Iterator<Item = Edge> + '_, GraphError> {
        let lefts = self.side_vertices(Side::L, cap)?;
        Ok(lefts.flat_map(move |l| {
            self.field.elements().map(move |c| Edge { right: self.neighbor(&l, c), left: l.clone() })
        }))
    }

    /// Restriction of a vertex to a subset Ω′ ⊆ Ω.
    pub fn project(&self, v: &Vertex, target: &Graph) -> Result<Vertex, GraphError> {
        let entries = target
            .omega
            .iter()
            .map(|s| {
                self.slot(s)
                    .map(|i| v.entries[i])
                    .ok_or_else(|| GraphError::Seq(SeqError::NotMember(s.to_string())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Vertex { side: v.side, color: v.color, entries })
    }
}

/// Bijection between vertices and integers; L keys come first.
#[derive(Debug, Clone, Copy)]
pub struct Codec {
    q: u64,
    dim: usize,
    side: u64,
}

impl Codec {
    pub fn encode(&self, v: &Vertex) -> u64 {
        let mut k = v.color.value() as u64;
        for e in &v.entries {
            k = k * self.q + e.value() as u64;
        }
        if v.side == Side::R {
            k += self.side;
        }
        k
    }

    pub fn decode(&self, key: u64) -> Vertex {
        let (side, mut k) = if key >= self.side { (Side::R, key - self.side) } else { (Side::L, key) };
        let mut entries = vec![Elem::ZERO; self.dim];
        for slot in entries.iter_mut().rev() {
            *slot = Elem::from_raw((k % self.q) as u32);
            k /= self.q;
        }
        Vertex { side, color: Elem::from_raw(k as u32), entries }
    }

    /// Total number of keys, both sides.
    pub fn len(&self) -> u64 {
        2 * self.side
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn side_size(&self) -> u64 {
        self.side
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqset::{u_family, w_family};

    fn graph(omega: OmegaSet, q: u64) -> Graph {
        Graph::new(omega, Field::new(q, 1).unwrap())
    }

    fn e(v: u32) -> Elem {
        Elem::from_raw(v)
    }

    #[test]
    fn adjacency_examples() {
        let g = graph(w_family(2).unwrap(), 3);
        let z = |s, c| g.zero_vertex(s, e(c));
        assert!(g.is_adjacent(&z(Side::L, 0), &z(Side::R, 0)).unwrap());
        assert!(!g.is_adjacent(&z(Side::L, 1), &z(Side::R, 1)).unwrap());
        let l = g.vertex(Side::L, e(1), vec![e(2), e(0)]).unwrap();
        let r = g.vertex(Side::R, e(2), vec![e(0), e(1)]).unwrap();
        assert!(g.is_adjacent(&l, &r).unwrap());
        assert_eq!(g.neighbor(&l, e(2)), r);
        assert!(g.is_adjacent(&l, &l).is_err());
        assert!(g.vertex(Side::L, e(3), vec![e(0), e(0)]).is_err());
    }

    #[test]
    fn zero_neighbors_are_zero() {
        let g = graph(u_family(6).unwrap(), 5);
        let z = g.zero_vertex(Side::L, Elem::ZERO);
        for c in g.field().elements() {
            assert_eq!(g.neighbor(&z, c), g.zero_vertex(Side::R, c));
        }
    }

    #[test]
    fn regular_and_coherent() {
        let g = graph(u_family(5).unwrap(), 3);
        for side in [Side::L, Side::R] {
            for v in g.side_vertices(side, 1 << 20).unwrap() {
                let ns = g.neighbors(&v);
                let distinct: std::collections::HashSet<_> = ns.iter().collect();
                assert_eq!(distinct.len(), 3);
                for n in &ns {
                    assert!(g.is_adjacent(&v, n).unwrap());
                    assert_eq!(g.neighbor(n, v.color), v);
                }
            }
        }
    }

    #[test]
    fn codec_roundtrip() {
        let g = Graph::new(u_family(4).unwrap(), Field::new(2, 2).unwrap());
        let c = g.codec().unwrap();
        assert_eq!(c.len(), 2 * 4u64.pow(4));
        for k in 0..c.len() {
            assert_eq!(c.encode(&c.decode(k)), k);
        }
    }

    #[test]
    fn text_form() {
        let v: Vertex = "R:2,0,1".parse().unwrap();
        assert_eq!(v.to_string(), "R:2,0,1");
        assert_eq!(v.entries, vec![e(0), e(1)]);
        assert!("X:1".parse::<Vertex>().is_err());
    }
}
