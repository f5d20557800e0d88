//! Paths from zero-entry starts, their closed-form entries, cycle searches,
//! exact girth by breadth-first search and girth lower-bound certificates.
//!
//! Along a path `[l⁽¹⁾] ⟨r⁽²⁾⟩ [l⁽³⁾] …` the color of vertex i is x_i, so a
//! path from a fixed start is determined by x₁, x₂, … with x₁ the start's own
//! color. It is non-backtracking exactly when x_j ≠ x_{j+2}.

mod certificates;
mod cycles;
mod girth;

use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::graph::{Graph, GraphError, Vertex};
use crate::seqset::{sigma, Index};

pub use certificates::{girth_certificates, CertificateReport, GirthCertificate, Theorem};
pub use cycles::cycle_absent;
pub use girth::{girth_exact, shortest_cycle_through, GirthMode, GirthReport, GirthValue, Justification};

#[derive(Debug, Error)]
pub enum PathError {
    #[error("colors backtrack: x_{0} equals the color two steps later")]
    Backtrack(usize),
    #[error("the first color must be the start's color {0}")]
    StartColor(Elem),
    #[error("index {0} is not in Ω")]
    Missing(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Colors x₁, …, x_m of consecutive path vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSeq(Vec<Elem>);

impl ColorSeq {
    pub fn new(colors: Vec<Elem>) -> Result<ColorSeq, PathError> {
        if let Some(j) = (0..colors.len().saturating_sub(2)).find(|&j| colors[j] == colors[j + 2]) {
            return Err(PathError::Backtrack(j + 1));
        }
        Ok(ColorSeq(colors))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Elem] {
        &self.0
    }

    /// x_i, 1-based, with x₀ = 0.
    pub fn x(&self, i: usize) -> Elem {
        if i == 0 {
            Elem::ZERO
        } else {
            self.0[i - 1]
        }
    }

    /// A random non-backtracking sequence of the given length.
    pub fn random<R: rand::Rng + ?Sized>(f: &Field, len: usize, rng: &mut R) -> ColorSeq {
        let q = f.order();
        let mut out: Vec<Elem> = Vec::with_capacity(len);
        for j in 0..len {
            let x = loop {
                let x = Elem::from_raw(rng.gen_range(0..q));
                if j < 2 || out[j - 2] != x {
                    break x;
                }
            };
            out.push(x);
        }
        ColorSeq(out)
    }
}

/// The path whose i-th vertex has color x_i; the first color must match the
/// start.
pub fn walk(g: &Graph, start: &Vertex, colors: &ColorSeq) -> Result<Vec<Vertex>, PathError> {
    g.validate(start)?;
    match colors.0.first() {
        None => return Ok(vec![start.clone()]),
        Some(&x1) if x1 != start.color => return Err(PathError::StartColor(start.color)),
        _ => {}
    }
    let mut path = vec![start.clone()];
    for &c in &colors.0[1..] {
        let next = g.neighbor(path.last().expect("nonempty"), c);
        path.push(next);
    }
    Ok(path)
}

/// An entry along a path from `[0]_{x₁}`: `R { i, j }` is r⁽²ⁱ⁾ at σ_{2j−1}(s)
/// and `L { i, j }` is l⁽²ⁱ⁺¹⁾ at σ_{2j}(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    R { i: usize, j: usize },
    L { i: usize, j: usize },
}

impl Target {
    fn ij(self) -> (usize, usize) {
        match self {
            Target::R { i, j } | Target::L { i, j } => (i, j),
        }
    }

    /// Number of σ parameters used: 2j − 1 or 2j.
    pub fn order(self) -> usize {
        match self {
            Target::R { j, .. } => 2 * j - 1,
            Target::L { j, .. } => 2 * j,
        }
    }

    /// 1-based position of the vertex on the path.
    pub fn vertex(self) -> usize {
        match self {
            Target::R { i, .. } => 2 * i,
            Target::L { i, .. } => 2 * i + 1,
        }
    }

    pub fn index(self, s: &[usize]) -> Index {
        sigma(self.order(), s)
    }

    /// The walked entry this target names.
    pub fn read(self, g: &Graph, path: &[Vertex], s: &[usize]) -> Result<Elem, PathError> {
        let idx = self.index(s);
        let slot = g.index_slot(&idx).ok_or_else(|| PathError::Missing(idx.to_string()))?;
        let v = path.get(self.vertex() - 1).ok_or_else(|| PathError::Range("path too short".into()))?;
        Ok(v.at(slot))
    }
}

fn xpow(f: &Field, x: &ColorSeq, i: usize, e: usize) -> Elem {
    f.pow(x.x(i), e as u64)
}

/// Φ factor k (1-based) at chain value a.
fn factor(f: &Field, x: &ColorSeq, s: &[usize], k: usize, a: usize) -> Elem {
    if k % 2 == 0 {
        f.mul(f.sub(x.x(2 * a + 1), x.x(2 * a - 1)), xpow(f, x, 2 * a, s[k - 1]))
    } else {
        f.mul(f.sub(x.x(2 * a), x.x(2 * a - 2)), xpow(f, x, 2 * a - 1, s[k - 1]))
    }
}

fn check_target(g: &Graph, colors: &ColorSeq, target: Target, s: &[usize]) -> Result<(), PathError> {
    let (i, j) = target.ij();
    if j == 0 || j > i {
        return Err(PathError::Range(format!("need 1 ≤ j ≤ i, got i={i}, j={j}")));
    }
    if s.len() < target.order() {
        return Err(PathError::Range(format!("σ_{} needs {} parameters", target.order(), target.order())));
    }
    if colors.len() < target.vertex() {
        return Err(PathError::Range(format!("{} colors cannot reach vertex {}", colors.len(), target.vertex())));
    }
    let idx = target.index(s);
    if !g.omega().contains_index(&idx) {
        return Err(PathError::Missing(idx.to_string()));
    }
    Ok(())
}

/// The chain sum over 1 ≤ a₁ ≤ a₂ < a₃ ≤ a₄ < … ≤ i of Φ_s(a₁, …, a_n), evaluated
/// by dynamic programming over the last chain value.
pub fn closed_form(g: &Graph, colors: &ColorSeq, target: Target, s: &[usize]) -> Result<Elem, PathError> {
    check_target(g, colors, target, s)?;
    let f = g.field();
    let (i, _) = target.ij();
    // level[a] = sum of Φ over chains of the current length ending at a.
    let mut level: Vec<Elem> = (0..=i).map(|a| if a == 0 { Elem::ZERO } else { factor(f, colors, s, 1, a) }).collect();
    let n = target.order();
    for k in 2..=n {
        let mut next = vec![Elem::ZERO; i + 1];
        let mut prefix = Elem::ZERO;
        // an even position followed by an odd one must stay below i
        let top = if k % 2 == 0 && k < n { i - 1 } else { i };
        for a in 1..=top {
            // even k allows a_{k−1} = a_k, odd k needs a_{k−1} < a_k
            if k % 2 == 0 {
                prefix = f.add(prefix, level[a]);
                next[a] = f.mul(factor(f, colors, s, k, a), prefix);
            } else {
                next[a] = f.mul(factor(f, colors, s, k, a), prefix);
                prefix = f.add(prefix, level[a]);
            }
        }
        level = next;
    }
    Ok(level.iter().fold(Elem::ZERO, |acc, &v| f.add(acc, v)))
}

/// Which product formula applies to a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductForm {
    /// r⁽²ⁱ⁾ at σ_{2i−1} or l⁽²ⁱ⁺¹⁾ at σ_{2i}.
    Full { right: bool },
    /// r⁽²ⁱ⁾ at σ_{2i−3} or l⁽²ⁱ⁺¹⁾ at σ_{2i−2}, valid when x₂x₁^{s₁} = 0.
    Shifted { right: bool },
}

/// The product forms of the extremal cases: j = i gives
/// x₂x₁^{s₁} Π_{a=2}^{n} (x_{a+1} − x_{a−1}) x_a^{s_a} with n = 2i−1 or 2i, and
/// when x₂x₁^{s₁} = 0, j = i−1 gives Π_{a=3}^{n} (x_{a+1} − x_{a−1}) x_a^{s_{a−2}}.
/// `None` when neither applies.
pub fn product_form(
    g: &Graph,
    colors: &ColorSeq,
    target: Target,
    s: &[usize],
) -> Result<Option<(ProductForm, Elem)>, PathError> {
    check_target(g, colors, target, s)?;
    let f = g.field();
    let (i, j) = target.ij();
    let right = matches!(target, Target::R { .. });
    let n = target.vertex() - 1;
    let lead = f.mul(colors.x(2), xpow(f, colors, 1, s[0]));
    let step = |a: usize, e: usize| f.mul(f.sub(colors.x(a + 1), colors.x(a - 1)), xpow(f, colors, a, e));
    if j == i {
        let v = (2..=n).fold(lead, |acc, a| f.mul(acc, step(a, s[a - 1])));
        return Ok(Some((ProductForm::Full { right }, v)));
    }
    if j + 1 == i && lead.is_zero() {
        let v = (3..=n).fold(Elem::ONE, |acc, a| f.mul(acc, step(a, s[a - 3])));
        return Ok(Some((ProductForm::Shifted { right }, v)));
    }
    Ok(None)
}

/// All σ parameter vectors of the given length with entries below `bound`
/// whose σ index lies in Ω.
pub fn sigma_params(g: &Graph, order: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut s = vec![0usize; order];
    loop {
        if g.omega().contains_index(&sigma(order, &s)) {
            out.push(s.clone());
        }
        let mut k = 0;
        while k < order {
            s[k] += 1;
            if s[k] < bound {
                break;
            }
            s[k] = 0;
            k += 1;
        }
        if k == order {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;
    use crate::seqset::{u_family, OmegaSet};
    use rand::{rngs::StdRng, SeedableRng};

    fn e(v: u32) -> Elem {
        Elem::from_raw(v)
    }

    fn seq(raw: &[u32]) -> ColorSeq {
        ColorSeq::new(raw.iter().map(|&v| e(v)).collect()).unwrap()
    }

    #[test]
    fn walk_on_single_entry_graph() {
        let f = Field::new(3, 1).unwrap();
        let g = Graph::new(OmegaSet::parse_text("e").unwrap(), f.clone());
        let path = walk(&g, &g.zero_vertex(Side::L, e(0)), &seq(&[0, 1, 2])).unwrap();
        let want: Vec<Vertex> = ["L:0,0", "R:1,0", "L:2,2"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(path, want);
        for w in path.windows(2) {
            assert!(g.is_adjacent(&w[0], &w[1]).unwrap());
        }
        assert!(ColorSeq::new(vec![e(0), e(1), e(0)]).is_err());
        assert!(walk(&g, &g.zero_vertex(Side::L, e(1)), &seq(&[0, 1])).is_err());
    }

    #[test]
    fn first_entries() {
        let f = Field::new(5, 1).unwrap();
        let g = Graph::new(u_family(6).unwrap(), f.clone());
        let x = seq(&[3, 2, 4]);
        assert_eq!(closed_form(&g, &x, Target::R { i: 1, j: 1 }, &[0]).unwrap(), e(2));
        // σ₁(2) = 1, r⁽²⁾_1 = x₂x₁²
        let want = f.mul(e(2), f.pow(e(3), 2));
        assert_eq!(closed_form(&g, &x, Target::R { i: 1, j: 1 }, &[2]).unwrap(), want);
        let path = walk(&g, &g.zero_vertex(Side::L, e(3)), &x).unwrap();
        assert_eq!(Target::R { i: 1, j: 1 }.read(&g, &path, &[2]).unwrap(), want);
        assert!(closed_form(&g, &x, Target::R { i: 1, j: 2 }, &[0, 0, 0]).is_err());
    }

    #[test]
    fn closed_forms_match_walks() {
        let f = Field::new(5, 1).unwrap();
        let g = Graph::new(u_family(6).unwrap(), f.clone());
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..60 {
            let len = rand::Rng::gen_range(&mut rng, 2..=10);
            let x = ColorSeq::random(&f, len, &mut rng);
            let path = walk(&g, &g.zero_vertex(Side::L, x.x(1)), &x).unwrap();
            for i in 1..=5 {
                for j in 1..=i {
                    for target in [Target::R { i, j }, Target::L { i, j }] {
                        if target.vertex() > len {
                            continue;
                        }
                        for s in sigma_params(&g, target.order(), 4) {
                            let walked = target.read(&g, &path, &s).unwrap();
                            assert_eq!(closed_form(&g, &x, target, &s).unwrap(), walked, "{target:?} {s:?} {x:?}");
                            if let Some((_, v)) = product_form(&g, &x, target, &s).unwrap() {
                                assert_eq!(v, walked, "product {target:?} {s:?} {x:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
