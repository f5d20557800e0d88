mod common;

use common::{graph, random_edge};
use omega_graphs::autos::{
    lambda_map, phi_map, pi_edge, psi_map, theta0, theta_map, theta_variant, verify, AutoMap, ThetaRule, VerifyMode,
};
use omega_graphs::gf::Elem;
use omega_graphs::graph::{Graph, Side};
use omega_graphs::seqset::u_family;
use rand::rngs::StdRng;
use rand::SeedableRng;

const CAP: VerifyMode = VerifyMode::Exhaustive { cap: 1 << 20 };

fn all_family_maps(g: &Graph) -> Vec<AutoMap> {
    let f = g.field();
    let mut maps = Vec::new();
    for x in f.nonzero_elements() {
        for y in f.nonzero_elements() {
            maps.push(lambda_map(g, x, y).unwrap());
        }
    }
    for alpha in g.omega().iter() {
        for x in f.elements() {
            maps.push(theta_map(g, x, alpha).unwrap());
        }
    }
    for x in f.elements() {
        maps.push(phi_map(g, x).unwrap());
        maps.push(psi_map(g, x).unwrap());
    }
    maps
}

/// A coefficient change that cannot be the identity: −1 in odd
/// characteristic, a non-unit scalar in characteristic 2.
fn mutation_factor(g: &Graph) -> Elem {
    if g.field().p() == 2 {
        g.field().primitive_element()
    } else {
        g.field().neg(Elem::ONE)
    }
}

#[test]
fn every_family_member_preserves_edges_exhaustively() {
    for (k, q) in [(5, 3), (4, 4)] {
        let g = graph(u_family(k).unwrap(), q);
        let maps = all_family_maps(&g);
        let expected = (q - 1).pow(2) as usize + g.omega().len() * q as usize + 2 * q as usize;
        assert_eq!(maps.len(), expected);
        for m in &maps {
            let r = verify(&g, m, CAP).unwrap();
            assert!(r.passed(), "U_{k}, q={q}: {} failed with {:?}", r.map, r.counterexample);
            assert_eq!(r.bijective, Some(true));
            assert_eq!(r.edges_checked, g.side_size() as u64 * q as u64);
        }
    }
}

#[test]
fn mutated_family_members_fail_with_a_counterexample() {
    for (k, q) in [(5, 3), (4, 4)] {
        let g = graph(u_family(k).unwrap(), q);
        let factor = mutation_factor(&g);
        for m in all_family_maps(&g) {
            let cross: Vec<(Side, usize, usize)> = [Side::L, Side::R]
                .into_iter()
                .flat_map(|s| m.cross_terms(s).into_iter().map(move |(slot, t)| (s, slot, t)))
                .collect();
            // maps with no cross terms (λ, θ at x = 0, φ/ψ at x = 0) get
            // their η coefficient changed on the left only
            let targets = if cross.is_empty() { vec![(Side::L, 1, 0)] } else { cross };
            for (side, slot, term) in targets {
                let bad = m.scale_term(side, slot, term, factor).expect("term exists");
                let r = verify(&g, &bad, CAP).unwrap();
                assert!(!r.passed(), "U_{k}, q={q}: mutant of {} at {side}/{slot}/{term} passed", m.family());
                assert!(r.counterexample.is_some());
            }
        }
    }
}

#[test]
fn theta_rule_sign_flips_fail() {
    let rules = [ThetaRule::Alpha, ThetaRule::Alpha0, ThetaRule::Alpha1, ThetaRule::Alpha01, ThetaRule::Alpha10];
    let mut effective = [0usize; 5];
    for (k, q) in [(5, 3), (7, 3)] {
        let g = graph(u_family(k).unwrap(), q);
        let vertices: Vec<_> =
            [Side::L, Side::R].into_iter().flat_map(|s| g.side_vertices(s, 1 << 20).unwrap()).collect();
        for (n, &rule) in rules.iter().enumerate() {
            for alpha in g.omega().iter() {
                let bad = theta_variant(&g, Elem::ONE, alpha, Some(rule)).unwrap();
                // a flip is vacuous when the rule's index is absent, and for a
                // maximal α flipping the α rule alone gives θ_{−1,α}
                let genuine = g.field().elements().any(|x| {
                    let m = theta_map(&g, x, alpha).unwrap();
                    vertices.iter().all(|v| m.apply(v) == bad.apply(v))
                });
                if genuine {
                    continue;
                }
                effective[n] += 1;
                let r = verify(&g, &bad, CAP).unwrap();
                assert!(!r.passed(), "U_{k}: {rule:?} at {alpha} survived");
            }
        }
    }
    for (rule, count) in rules.iter().zip(effective) {
        assert!(count > 0, "{rule:?} never applies");
    }
}

#[test]
fn pi_edge_sends_every_edge_to_the_zero_edge() {
    let g = graph(u_family(5).unwrap(), 3);
    let zero = g.zero_edge();
    let edges: Vec<_> = g.edges(1 << 20).unwrap().collect();
    // 3⁵ left vertices, each of degree 3
    assert_eq!(edges.len(), 729);
    for (n, e) in edges.iter().enumerate() {
        let m = pi_edge(&g, e).unwrap();
        assert_eq!(m.apply_edge(e), zero, "edge {e}");
        if n % 150 == 0 {
            assert!(verify(&g, &m, CAP).unwrap().passed());
        }
    }
}

#[test]
fn theta0_image_matches_the_direct_formula() {
    let g = graph(u_family(6).unwrap(), 4);
    let f = g.field();
    let mut rng = StdRng::seed_from_u64(703);
    for _ in 0..50 {
        let e = random_edge(&g, &mut rng);
        let m = theta0(&g, &e.left).unwrap();
        let img = m.apply_edge(&e);
        assert_eq!(img.left, g.zero_vertex(Side::L, e.left.color));
        assert_eq!(img.right.color, e.right.color);
        for (j, alpha) in g.omega().iter().enumerate() {
            let want = if alpha.is_run_of(1) || alpha.is_empty() {
                f.mul(f.pow(e.left.color, alpha.len() as u64 + 1), e.right.color)
            } else {
                Elem::ZERO
            };
            assert_eq!(img.right.entries[j], want, "entry {alpha} for edge {e}");
        }
    }
}

#[test]
fn theta_is_additive_in_its_parameter() {
    let g = graph(u_family(4).unwrap(), 3);
    let f = g.field();
    let vertices: Vec<_> = [Side::L, Side::R].into_iter().flat_map(|s| g.side_vertices(s, 1 << 20).unwrap()).collect();
    for alpha in g.omega().iter() {
        for x in f.elements() {
            for y in f.elements() {
                let composed = theta_map(&g, x, alpha).unwrap().after(&theta_map(&g, y, alpha).unwrap());
                let direct = theta_map(&g, f.add(x, y), alpha).unwrap();
                for v in &vertices {
                    assert_eq!(composed.apply(v), direct.apply(v));
                }
            }
        }
    }
}

#[test]
fn phi_composition_shifts_right_colors() {
    let g = graph(u_family(5).unwrap(), 3);
    let f = g.field();
    for x in f.elements() {
        for y in f.elements() {
            let m = phi_map(&g, x).unwrap().after(&phi_map(&g, y).unwrap());
            for r in g.side_vertices(Side::R, 1 << 20).unwrap() {
                assert_eq!(m.apply(&r).color, f.add(f.add(r.color, x), y));
            }
        }
    }
}
