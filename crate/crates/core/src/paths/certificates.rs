use std::fmt;

use num_integer::gcd;

use crate::graph::Graph;
use crate::seqset::{BinSeq, OmegaSet};

/// The girth bound a certificate invokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// 𝕊(Ω) ⊆ Ω and β ∈ Ω ∩ U: girth ≥ 2(|β| + 2).
    Y01,
    /// 𝕊(Ω) ⊆ Ω, β ∈ M_a ∪ {η}, {a^sβ, a^tβ} ⊆ Ω, gcd(s − t, q − 1) = 1:
    /// girth ≥ 2(|β| + 3).
    Y02,
    /// 𝕊(Ω) ∪ ℍ_a(Ω) ⊆ Ω, {aā^{n₁}…aā^{n_t}γ, ā^mβ} ⊆ Ω with
    /// |β| = |γ| + 2t − 1: girth ≥ 2(|β| + 4).
    T800,
    /// ℍ₀(Ω) ∪ ℍ₁(Ω) ⊆ Ω and α ∈ Ω ∩ U: girth ≥ 2(|α| + 3).
    Cor009,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Y01 => "y01",
            Theorem::Y02 => "y02",
            Theorem::T800 => "t800",
            Theorem::Cor009 => "cor009",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GirthCertificate {
    pub theorem: Theorem,
    pub bound: u32,
    /// Witness members of Ω and parameters, as `name=value` strings.
    pub witness: Vec<String>,
}

impl fmt::Display for GirthCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bound={} witness={}", self.theorem, self.bound, self.witness.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// For each theorem that applies, every witness reaching its best bound.
    pub certificates: Vec<GirthCertificate>,
}

impl CertificateReport {
    pub fn best(&self) -> Option<u32> {
        self.certificates.iter().map(|c| c.bound).max()
    }
}

fn lead_alternating(a: u8, len: usize) -> BinSeq {
    BinSeq::alternating(a, len)
}

fn in_u(s: &BinSeq) -> bool {
    s.is_alternating()
}

/// Checks the hypotheses of each theorem and searches Ω for witnesses.
pub fn girth_certificates(g: &Graph) -> CertificateReport {
    let omega = g.omega();
    let q1 = g.q() as u64 - 1;
    let max = omega.max_len();
    let s_closed = omega.is_s_closed();
    let (h0, h1) = (omega.is_h0_closed(), omega.is_h1_closed());
    let mut found: Vec<GirthCertificate> = Vec::new();
    let cert = |theorem, bound: usize, witness: Vec<String>| GirthCertificate { theorem, bound: bound as u32, witness };

    if s_closed {
        for b in omega.iter().filter(|b| in_u(b)) {
            found.push(cert(Theorem::Y01, 2 * (b.len() + 2), vec![format!("beta={b}")]));
        }
        for a in [0u8, 1] {
            for len in 0..=max {
                let beta = lead_alternating(a, len);
                let present: Vec<usize> =
                    (0..=max - len).filter(|&s| omega.contains(&BinSeq::run(a, s).concat(&beta))).collect();
                for (x, &s) in present.iter().enumerate() {
                    for &t in &present[x..] {
                        if gcd((t - s) as u64, q1) == 1 {
                            found.push(cert(
                                Theorem::Y02,
                                2 * (len + 3),
                                vec![format!("a={a}"), format!("beta={beta}"), format!("s={s}"), format!("t={t}")],
                            ));
                        }
                    }
                }
            }
        }
        for (a, ha) in [(0u8, h0), (1, h1)] {
            if ha {
                t800_witnesses(omega, a, &mut found);
            }
        }
    }
    if h0 && h1 {
        for alpha in omega.iter().filter(|b| in_u(b)) {
            found.push(cert(Theorem::Cor009, 2 * (alpha.len() + 3), vec![format!("alpha={alpha}")]));
        }
    }

    let mut certificates = Vec::new();
    for th in [Theorem::Y01, Theorem::Y02, Theorem::T800, Theorem::Cor009] {
        let best = found.iter().filter(|c| c.theorem == th).map(|c| c.bound).max();
        if let Some(b) = best {
            let mut top: Vec<GirthCertificate> =
                found.iter().filter(|c| c.theorem == th && c.bound == b).cloned().collect();
            top.sort();
            top.dedup();
            certificates.extend(top);
        }
    }
    CertificateReport { certificates }
}

/// Splits ω = P·γ with P = a ā^{n₁} … a ā^{n_t} (t ≥ 1, n_i ≥ 1) and
/// γ ∈ M_a ∪ {η}, derives β ∈ M_a of length |γ| + 2t − 1 and looks for m ≥ 1
/// with ā^mβ ∈ Ω.
fn t800_witnesses(omega: &OmegaSet, a: u8, found: &mut Vec<GirthCertificate>) {
    let abar = 1 - a;
    for omega_member in omega.iter() {
        let bits = omega_member.bits();
        for cut in 1..=bits.len() {
            let (head, tail) = bits.split_at(cut);
            let gamma = BinSeq::from_bits(tail);
            if !(gamma.is_empty() || (gamma.first() == Some(a) && gamma.is_alternating())) {
                continue;
            }
            let Some(ns) = blocks(head, a) else { continue };
            let t = ns.len();
            let beta = BinSeq::alternating(a, gamma.len() + 2 * t - 1);
            for m in 1..=omega.max_len() {
                let partner = BinSeq::run(abar, m).concat(&beta);
                if omega.contains(&partner) {
                    let ns_text: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                    found.push(GirthCertificate {
                        theorem: Theorem::T800,
                        bound: 2 * (beta.len() as u32 + 4),
                        witness: vec![
                            format!("a={a}"),
                            format!("word={omega_member}"),
                            format!("n={}", ns_text.join(":")),
                            format!("gamma={gamma}"),
                            format!("partner={partner}"),
                            format!("beta={beta}"),
                            format!("m={m}"),
                        ],
                    });
                    break;
                }
            }
        }
    }
}

/// n₁, …, n_t when `bits` is a ā^{n₁} … a ā^{n_t} with every n_i ≥ 1.
fn blocks(bits: &[u8], a: u8) -> Option<Vec<usize>> {
    let mut ns = Vec::new();
    let mut i = 0;
    while i < bits.len() {
        if bits[i] != a {
            return None;
        }
        i += 1;
        let start = i;
        while i < bits.len() && bits[i] != a {
            i += 1;
        }
        if i == start {
            return None;
        }
        ns.push(i - start);
    }
    (!ns.is_empty()).then_some(ns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::seqset::{omega3, omega4, u_family, x_family};

    fn graph(o: OmegaSet, q: u32) -> Graph {
        let f = match q {
            4 => Field::new(2, 2).unwrap(),
            _ => Field::new(q as u64, 1).unwrap(),
        };
        Graph::new(o, f)
    }

    #[test]
    fn block_parsing() {
        assert_eq!(blocks(&[1, 0, 0, 0], 1), Some(vec![3]));
        assert_eq!(blocks(&[1, 0, 1, 0, 0], 1), Some(vec![1, 2]));
        assert_eq!(blocks(&[1, 1, 0], 1), None);
        assert_eq!(blocks(&[1], 1), None);
    }

    #[test]
    fn d_k_q_bounds() {
        for k in 2..=7 {
            for q in [2, 3, 4] {
                let r = girth_certificates(&graph(u_family(k).unwrap(), q));
                let cor = r.certificates.iter().filter(|c| c.theorem == Theorem::Cor009).map(|c| c.bound).max();
                let want = 2 * ((k as u32 - 1) / 2 + 3);
                assert_eq!(cor, Some(want));
                assert!(want >= k as u32 + 4);
            }
        }
    }

    #[test]
    fn example_bounds() {
        for q in [2, 3, 4] {
            let r = girth_certificates(&graph(x_family(1).unwrap(), q));
            assert!(r.certificates.iter().any(|c| c.theorem == Theorem::Y01 && c.bound == 10
                && c.witness == ["beta=010"]));
            let r = girth_certificates(&graph(omega3(), q));
            assert!(r.certificates.iter().any(|c| c.theorem == Theorem::Y02 && c.bound == 16
                && c.witness == ["a=0", "beta=01010", "s=0", "t=1"]), "{:?}", r.certificates);
            let r = girth_certificates(&graph(omega4(), q));
            let t = r.certificates.iter().find(|c| c.theorem == Theorem::T800).expect("t800 applies");
            assert_eq!(t.bound, 14);
            assert_eq!(r.best(), Some(14));
        }
    }
}
