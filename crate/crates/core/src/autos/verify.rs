use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::{lambda_map, phi_map, pi_edge, pi_vertex, psi_map, theta0, theta1, theta_map, AutoError, AutoMap};
use crate::gf::Elem;
use crate::graph::{Edge, Graph, Side, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every vertex and edge, subject to a vertex cap.
    Exhaustive { cap: u64 },
    /// Random edges and random non-adjacent pairs.
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    SideChanged(Vertex),
    NotInjective { first: Vertex, second: Vertex },
    EdgeBroken(Edge),
    NonEdgeJoined { left: Vertex, right: Vertex },
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Counterexample::SideChanged(v) => write!(f, "side changed at {v}"),
            Counterexample::NotInjective { first, second } => write!(f, "same image for {first} and {second}"),
            Counterexample::EdgeBroken(e) => write!(f, "edge {} {} not preserved", e.left, e.right),
            Counterexample::NonEdgeJoined { left, right } => write!(f, "non-edge {left} {right} mapped to an edge"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub map: String,
    pub vertices_checked: u64,
    pub edges_checked: u64,
    pub non_edges_checked: u64,
    /// Known only in exhaustive mode.
    pub bijective: Option<bool>,
    /// The first failure in key order.
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn injective_on(g: &Graph, map: &AutoMap, side: Side, cap: u64) -> Result<Option<Counterexample>, AutoError> {
    let codec = g.codec()?;
    let base = if side == Side::L { 0 } else { codec.side_size() };
    let mut seen = vec![u64::MAX; codec.side_size() as usize];
    for k in 0..codec.side_size() {
        let v = codec.decode(base + k);
        let img = map.apply(&v);
        if img.side != side {
            return Ok(Some(Counterexample::SideChanged(v)));
        }
        let slot = (codec.encode(&img) - base) as usize;
        if seen[slot] != u64::MAX {
            return Ok(Some(Counterexample::NotInjective { first: codec.decode(base + seen[slot]), second: v }));
        }
        seen[slot] = k;
    }
    let _ = cap;
    Ok(None)
}

/// Checks side preservation, bijectivity on each side and edge preservation.
/// In exhaustive mode the reverse direction follows: an injective map sends
/// the q neighbors of a vertex to q distinct neighbors of its image, which has
/// exactly q of them.
pub fn verify(g: &Graph, map: &AutoMap, mode: VerifyMode) -> Result<VerifyReport, AutoError> {
    let mut report = VerifyReport {
        map: map.family().to_string(),
        vertices_checked: 0,
        edges_checked: 0,
        non_edges_checked: 0,
        bijective: None,
        counterexample: None,
    };
    match mode {
        VerifyMode::Exhaustive { cap } => {
            g.check_cap(cap)?;
            for side in [Side::L, Side::R] {
                if let Some(c) = injective_on(g, map, side, cap)? {
                    report.bijective = Some(false);
                    report.counterexample = Some(c);
                    return Ok(report);
                }
            }
            report.bijective = Some(true);
            report.vertices_checked = g.vertex_count() as u64;
            let codec = g.codec()?;
            let broken = (0..codec.side_size()).into_par_iter().find_map_first(|k| {
                let l = codec.decode(k);
                let ml = map.apply(&l);
                g.field().elements().find_map(|c| {
                    let r = g.neighbor(&l, c);
                    let ok = g.is_adjacent(&ml, &map.apply(&r)).unwrap_or(false);
                    (!ok).then(|| Edge { left: l.clone(), right: r })
                })
            });
            report.edges_checked = codec.side_size() * g.q() as u64;
            report.counterexample = broken.map(Counterexample::EdgeBroken);
        }
        VerifyMode::Sample { count, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let q = g.q();
            let random = |side: Side, rng: &mut StdRng| g.random_vertex(side, rng);
            for _ in 0..count {
                let l = random(Side::L, &mut rng);
                let r = g.neighbor(&l, Elem::from_raw(rng.gen_range(0..q)));
                report.edges_checked += 1;
                let (ml, mr) = (map.apply(&l), map.apply(&r));
                if ml.side != Side::L || mr.side != Side::R {
                    report.counterexample = Some(Counterexample::SideChanged(l));
                    break;
                }
                if !g.is_adjacent(&ml, &mr)? {
                    report.counterexample = Some(Counterexample::EdgeBroken(Edge { left: l, right: r }));
                    break;
                }
                let (a, b) = (random(Side::L, &mut rng), random(Side::R, &mut rng));
                if !g.is_adjacent(&a, &b)? {
                    report.non_edges_checked += 1;
                    if g.is_adjacent(&map.apply(&a), &map.apply(&b))? {
                        report.counterexample = Some(Counterexample::NonEdgeJoined { left: a, right: b });
                        break;
                    }
                }
            }
            report.vertices_checked = 2 * report.edges_checked;
        }
    }
    Ok(report)
}

fn parse_params(body: &str) -> Result<Vec<(&str, &str)>, AutoError> {
    body.split(',')
        .map(|kv| kv.split_once('=').ok_or_else(|| AutoError::Descriptor(body.to_string())))
        .collect()
}

/// Builds a map from `lambda:x=2,y=1`, `theta:x=1,alpha=010`, `phi:x=1`,
/// `psi:x=1`, `theta0:<vertex>`, `theta1:<vertex>`, `pi-vertex:<vertex>`,
/// `pi-edge:<left>/<right>` or `identity`.
pub fn parse_descriptor(g: &Graph, text: &str) -> Result<AutoMap, AutoError> {
    let bad = || AutoError::Descriptor(text.to_string());
    let (name, body) = text.split_once(':').unwrap_or((text, ""));
    let elem = |v: &str| -> Result<Elem, AutoError> {
        let n: u32 = v.parse().map_err(|_| bad())?;
        Ok(g.field().elem(n).map_err(crate::graph::GraphError::from)?)
    };
    let param = |key: &str| -> Result<&str, AutoError> {
        parse_params(body)?.into_iter().find(|(k, _)| *k == key).map(|(_, v)| v).ok_or_else(bad)
    };
    let vertex = |s: &str| -> Result<Vertex, AutoError> {
        let v: Vertex = s.parse()?;
        g.validate(&v)?;
        Ok(v)
    };
    match name {
        "identity" => Ok(AutoMap::identity(g)),
        "lambda" => lambda_map(g, elem(param("x")?)?, elem(param("y")?)?),
        "theta" => {
            let alpha = param("alpha")?.parse().map_err(|_| bad())?;
            theta_map(g, elem(param("x")?)?, &alpha)
        }
        "phi" => phi_map(g, elem(param("x")?)?),
        "psi" => psi_map(g, elem(param("x")?)?),
        "theta0" => theta0(g, &vertex(body)?),
        "theta1" => theta1(g, &vertex(body)?),
        "pi-vertex" => pi_vertex(g, &vertex(body)?),
        "pi-edge" => {
            let (a, b) = body.split_once(['/', '\t', ';']).ok_or_else(bad)?;
            let edge = g.edge(vertex(a)?, vertex(b)?)?;
            pi_edge(g, &edge)
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{theta_variant, ThetaRule};
    use crate::gf::Field;
    use crate::seqset::{u_family, w_family, BinSeq};

    fn e(v: u32) -> Elem {
        Elem::from_raw(v)
    }

    #[test]
    fn identity_and_lambda_pass() {
        let g = Graph::new(w_family(2).unwrap(), Field::new(3, 1).unwrap());
        let id = AutoMap::identity(&g);
        assert!(verify(&g, &id, VerifyMode::Exhaustive { cap: 1000 }).unwrap().passed());
        let l = lambda_map(&g, e(2), e(1)).unwrap();
        let r = verify(&g, &l, VerifyMode::Exhaustive { cap: 1000 }).unwrap();
        assert!(r.passed());
        assert_eq!(r.bijective, Some(true));
        assert_eq!(r.edges_checked, 81);
    }

    #[test]
    fn mutant_theta_fails() {
        let g = Graph::new(u_family(6).unwrap(), Field::new(3, 1).unwrap());
        let bad = theta_variant(&g, e(1), &BinSeq::eta(), Some(ThetaRule::Alpha10)).unwrap();
        let r = verify(&g, &bad, VerifyMode::Exhaustive { cap: 1 << 20 }).unwrap();
        match r.counterexample {
            Some(Counterexample::EdgeBroken(edge)) => {
                assert!(g.is_adjacent(&edge.left, &edge.right).unwrap());
                assert!(!g.is_adjacent(&bad.apply(&edge.left), &bad.apply(&edge.right)).unwrap());
            }
            other => panic!("expected a broken edge, got {other:?}"),
        }
        let sampled = verify(&g, &bad, VerifyMode::Sample { count: 200, seed: 7 }).unwrap();
        assert!(!sampled.passed());
    }

    #[test]
    fn descriptors() {
        let g = Graph::new(u_family(5).unwrap(), Field::new(3, 1).unwrap());
        for d in ["identity", "lambda:x=2,y=1", "theta:x=1,alpha=01", "phi:x=2", "psi:x=1"] {
            let m = parse_descriptor(&g, d).unwrap();
            assert!(verify(&g, &m, VerifyMode::Exhaustive { cap: 1 << 20 }).unwrap().passed(), "{d}");
        }
        let l = "L:1,2,0,1,2".parse::<Vertex>().unwrap();
        let r = g.neighbor(&l, e(2));
        let m = parse_descriptor(&g, &format!("pi-edge:{l}/{r}")).unwrap();
        assert_eq!(m.apply(&l), g.zero_vertex(Side::L, e(0)));
        assert_eq!(m.apply(&r), g.zero_vertex(Side::R, e(0)));
        assert!(parse_descriptor(&g, "lambda:x=0,y=1").is_err());
        assert!(parse_descriptor(&g, "lambda:x=5,y=1").is_err());
        assert!(parse_descriptor(&g, "rho:x=1").is_err());
    }
}
