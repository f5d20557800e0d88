//! Coordinates of D(k, q) and the edge-for-edge comparison with Γ(U_k, q).
//!
//! Coordinate 1 is the color; coordinate i ≥ 2 carries the entry of the
//! (i−1)-th member of U times (−1)^{⌊i/4⌋}.

use super::{Graph, GraphError, Side, Vertex};
use crate::gf::{Elem, Field};
use crate::seqset::u_family;

fn sign_flip(i: usize) -> bool {
    (i / 4) % 2 == 1
}

fn twist(f: &Field, i: usize, x: Elem) -> Elem {
    if sign_flip(i) {
        f.neg(x)
    } else {
        x
    }
}

/// D(k, q) point of a vertex over U_k (1-based coordinates stored 0-based).
pub fn to_dkq(g: &Graph, v: &Vertex) -> Vec<Elem> {
    let f = g.field();
    std::iter::once(v.color)
        .chain(v.entries.iter().enumerate().map(|(j, &x)| twist(f, j + 2, x)))
        .collect()
}

pub fn from_dkq(g: &Graph, side: Side, point: &[Elem]) -> Vertex {
    let f = g.field();
    Vertex {
        side,
        color: point[0],
        entries: point[1..].iter().enumerate().map(|(j, &x)| twist(f, j + 2, x)).collect(),
    }
}

/// l_2 + p_2 = p_1 l_1, l_3 + p_3 = p_1 l_2, and for i ≥ 4
/// l_i + p_i = −p_{i−2} l_1 (i ≡ 0, 1 mod 4) or p_1 l_{i−2} (i ≡ 2, 3 mod 4).
fn rhs(f: &Field, i: usize, l: &[Elem], p: &[Elem]) -> Elem {
    let at = |v: &[Elem], j: usize| v[j - 1];
    match i {
        2 => f.mul(at(p, 1), at(l, 1)),
        3 => f.mul(at(p, 1), at(l, 2)),
        _ if i % 4 <= 1 => f.neg(f.mul(at(p, i - 2), at(l, 1))),
        _ => f.mul(at(p, 1), at(l, i - 2)),
    }
}

pub fn dkq_adjacent(f: &Field, l: &[Elem], p: &[Elem]) -> bool {
    (2..=l.len()).all(|i| f.add(l[i - 1], p[i - 1]) == rhs(f, i, l, p))
}

/// Neighbor of color `c` solved coordinate by coordinate from the D(k, q)
/// equations, starting from a point on `side`.
pub fn dkq_neighbor(f: &Field, side: Side, point: &[Elem], c: Elem) -> Vec<Elem> {
    let k = point.len();
    let mut out = vec![c];
    for i in 2..=k {
        let value = match side {
            Side::L => {
                out.push(Elem::ZERO);
                rhs(f, i, point, &out)
            }
            Side::R => {
                out.push(Elem::ZERO);
                rhs(f, i, &out, point)
            }
        };
        out[i - 1] = f.sub(value, point[i - 1]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DkqReport {
    pub k: usize,
    pub q: u32,
    /// Vertex-color pairs whose neighbors were compared, both sides.
    pub neighbor_checks: u64,
    /// Vertex pairs whose adjacency was compared, when small enough.
    pub pair_checks: Option<u64>,
    pub mismatches: u64,
    pub first_mismatch: Option<(Vertex, Vertex)>,
}

impl DkqReport {
    pub fn equal(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares every neighbor map of Γ(U_k, q) against D(k, q); also compares
/// adjacency on all vertex pairs when q^{2k} ≤ `pair_cap`.
pub fn dkq_bridge(k: usize, field: &Field, cap: u64, pair_cap: u64) -> Result<DkqReport, GraphError> {
    let g = Graph::new(u_family(k)?, field.clone());
    g.check_cap(cap)?;
    let f = g.field();
    let mut report = DkqReport {
        k,
        q: g.q(),
        neighbor_checks: 0,
        pair_checks: None,
        mismatches: 0,
        first_mismatch: None,
    };
    let miss = |report: &mut DkqReport, a: &Vertex, b: &Vertex| {
        report.mismatches += 1;
        report.first_mismatch.get_or_insert_with(|| (a.clone(), b.clone()));
    };
    for side in [Side::L, Side::R] {
        for v in g.side_vertices(side, cap)? {
            let point = to_dkq(&g, &v);
            if from_dkq(&g, side, &point) != v {
                miss(&mut report, &v, &v);
            }
            for c in f.elements() {
                report.neighbor_checks += 1;
                let ours = g.neighbor(&v, c);
                if to_dkq(&g, &ours) != dkq_neighbor(f, side, &point, c) {
                    miss(&mut report, &v, &ours);
                }
            }
        }
    }
    let pairs = g.side_size() * g.side_size();
    if pairs <= pair_cap as u128 {
        let rights: Vec<Vertex> = g.side_vertices(Side::R, cap)?.collect();
        let right_points: Vec<Vec<Elem>> = rights.iter().map(|r| to_dkq(&g, r)).collect();
        for l in g.side_vertices(Side::L, cap)? {
            let lp = to_dkq(&g, &l);
            for (r, rp) in rights.iter().zip(&right_points) {
                if g.adjacent_unchecked(&l, r) != dkq_adjacent(f, &lp, rp) {
                    miss(&mut report, &l, r);
                }
            }
        }
        report.pair_checks = Some(pairs as u64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bridges() {
        for (k, p, m) in [(2, 3, 1), (3, 3, 1), (3, 2, 2), (5, 3, 1), (4, 5, 1)] {
            let f = Field::new(p, m).unwrap();
            let r = dkq_bridge(k, &f, 1 << 20, 1 << 24).unwrap();
            assert!(r.equal(), "k={k} q={}: {:?}", f.order(), r.first_mismatch);
            assert!(r.pair_checks.is_some());
        }
    }

    #[test]
    fn twist_is_trivial_below_four() {
        let f = Field::new(3, 1).unwrap();
        let g = Graph::new(u_family(3).unwrap(), f.clone());
        let v = g.vertex(Side::L, Elem::from_raw(1), vec![Elem::from_raw(2), Elem::from_raw(1)]).unwrap();
        let point = to_dkq(&g, &v);
        assert_eq!(point, vec![Elem::from_raw(1), Elem::from_raw(2), Elem::from_raw(1)]);
    }

    #[test]
    fn twist_flips_coordinates_four_to_seven() {
        let f = Field::new(5, 1).unwrap();
        let g = Graph::new(u_family(8).unwrap(), f.clone());
        let one = Elem::from_raw(1);
        let v = g.vertex(Side::L, one, vec![one; 7]).unwrap();
        let point = to_dkq(&g, &v);
        let neg = f.neg(one);
        assert_eq!(point, vec![one, one, one, neg, neg, neg, neg, one]);
    }
}
