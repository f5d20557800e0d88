use std::collections::BTreeSet;

use super::{BinSeq, Index, OmegaSet};

/// All sequences reachable from `alpha` by repeatedly deleting a `bit` either
/// in first position or from a doubled pair `bit bit`. Contains `alpha`.
fn deletion_set(alpha: &BinSeq, bit: u8) -> BTreeSet<BinSeq> {
    let mut seen = BTreeSet::from([alpha.clone()]);
    let mut stack = vec![alpha.clone()];
    while let Some(s) = stack.pop() {
        let bits = s.bits();
        let mut next = Vec::new();
        if bits.first() == Some(&bit) {
            next.push(s.remove(0));
        }
        for i in 1..bits.len() {
            if bits[i] == bit && bits[i - 1] == bit {
                next.push(s.remove(i));
            }
        }
        for t in next {
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    seen
}

pub fn h0(alpha: &BinSeq) -> BTreeSet<BinSeq> {
    deletion_set(alpha, 0)
}

pub fn h1(alpha: &BinSeq) -> BTreeSet<BinSeq> {
    deletion_set(alpha, 1)
}

fn tail_set(alpha: &BinSeq, bit: u8) -> BTreeSet<Index> {
    if alpha.is_run_of(bit) {
        return BTreeSet::from([Index::Star]);
    }
    let bits = alpha.bits();
    if bits[bits.len() - 1] != bit {
        return BTreeSet::new();
    }
    // alpha = beta c bit^i with c the other bit; keep beta c
    let cut = bits.iter().rposition(|&b| b != bit).unwrap();
    deletion_set(&BinSeq::from_bits(&bits[..=cut]), bit).into_iter().map(Index::Seq).collect()
}

/// T₀(α): `{*}` for α = 0^i, empty when α ends in 1, H₀(β1) when α = β10^i.
pub fn t0(alpha: &BinSeq) -> BTreeSet<Index> {
    tail_set(alpha, 0)
}

/// The mirror of [`t0`].
pub fn t1(alpha: &BinSeq) -> BTreeSet<Index> {
    tail_set(alpha, 1)
}

/// S_Ω(α) = {β : α01β ∈ Ω or α10β ∈ Ω}.
pub fn s_omega(omega: &OmegaSet, alpha: &BinSeq) -> BTreeSet<BinSeq> {
    let n = alpha.len();
    omega
        .iter()
        .filter(|g| g.len() >= n + 2 && g.starts_with(alpha) && g.bits()[n] != g.bits()[n + 1])
        .map(|g| BinSeq::from_bits(&g.bits()[n + 2..]))
        .collect()
}

/// 𝕊(Ω), the union of S_Ω(α) over all α.
pub fn s_closure(omega: &OmegaSet) -> BTreeSet<BinSeq> {
    let mut out = BTreeSet::new();
    for g in omega {
        let b = g.bits();
        for i in 1..b.len() {
            if b[i] != b[i - 1] {
                out.insert(BinSeq::from_bits(&b[i + 1..]));
            }
        }
    }
    out
}

/// ℍ₀(Ω), the union of H₀(α) over Ω.
pub fn h0_closure(omega: &OmegaSet) -> BTreeSet<BinSeq> {
    omega.iter().flat_map(h0).collect()
}

pub fn h1_closure(omega: &OmegaSet) -> BTreeSet<BinSeq> {
    omega.iter().flat_map(h1).collect()
}

/// Φ(Λ): the least set containing `seed` that is closed under H₀, H₁ and
/// deletion of the last bit.
pub fn phi_closure<'a, I: IntoIterator<Item = &'a BinSeq>>(seed: I) -> OmegaSet {
    let mut set: BTreeSet<BinSeq> = BTreeSet::from([BinSeq::eta()]);
    let mut stack: Vec<BinSeq> = Vec::new();
    for s in seed {
        if set.insert(s.clone()) {
            stack.push(s.clone());
        }
    }
    while let Some(s) = stack.pop() {
        let pushed = h0(&s).into_iter().chain(h1(&s)).chain(s.parent());
        for t in pushed {
            if set.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    OmegaSet::from_set(set).expect("closed under last-bit deletion")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    S,
    H0,
    H1,
    Phi,
}

impl std::str::FromStr for ClosureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(ClosureKind::S),
            "h0" => Ok(ClosureKind::H0),
            "h1" => Ok(ClosureKind::H1),
            "phi" => Ok(ClosureKind::Phi),
            _ => Err(format!("unknown closure kind {s:?} (s|h0|h1|phi)")),
        }
    }
}

/// Dispatches on `kind`. For Φ the seed defaults to Ω itself.
pub fn closure(omega: &OmegaSet, kind: ClosureKind, seed: Option<&BTreeSet<BinSeq>>) -> BTreeSet<BinSeq> {
    match kind {
        ClosureKind::S => s_closure(omega),
        ClosureKind::H0 => h0_closure(omega),
        ClosureKind::H1 => h1_closure(omega),
        ClosureKind::Phi => match seed {
            Some(seed) => phi_closure(seed).to_set(),
            None => phi_closure(omega.iter()).to_set(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqset::{all_sequences, parse_list, u_family, w_family};

    fn s(t: &str) -> BinSeq {
        t.parse().unwrap()
    }

    fn set(t: &str) -> BTreeSet<BinSeq> {
        parse_list(t).unwrap().into_iter().collect()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&s("000")), set("000 00 0 e"));
        assert_eq!(
            h0(&s("0011000")),
            set("0011000 011000 11000 001100 01100 1100 00110 0110 110")
        );
        assert_eq!(h0(&s("e")), set("e"));
        assert_eq!(h1(&s("111")), set("111 11 1 e"));
    }

    #[test]
    fn t0_examples() {
        assert_eq!(t0(&s("00")), BTreeSet::from([Index::Star]));
        assert_eq!(t0(&s("e")), BTreeSet::from([Index::Star]));
        assert!(t0(&s("01")).is_empty());
        assert_eq!(t0(&s("110")), BTreeSet::from([Index::Seq(s("11"))]));
    }

    #[test]
    fn recursions_to_length_8() {
        for a in all_sequences(7) {
            let h = h0(&a);
            let t = t0(&a);
            let h_idx: BTreeSet<Index> = h.iter().cloned().map(Index::Seq).collect();
            assert!(h_idx.is_disjoint(&t), "{a}");

            let expect1: BTreeSet<BinSeq> = h.iter().map(|b| b.with(1)).collect();
            assert_eq!(h0(&a.with(1)), expect1);

            let union: BTreeSet<Index> = h_idx.union(&t).cloned().collect();
            let expect0: BTreeSet<BinSeq> =
                union.iter().map(|b| b.with(0).as_seq().unwrap().clone()).collect();
            let h_a0 = h0(&a.with(0));
            assert_eq!(h_a0, expect0, "{a}0");

            let h_a0_idx: BTreeSet<Index> = h_a0.into_iter().map(Index::Seq).collect();
            let expect_t: BTreeSet<Index> = union.difference(&h_a0_idx).cloned().collect();
            assert_eq!(t0(&a.with(0)), expect_t, "{a}0");
        }
    }

    #[test]
    fn deletions_shrink() {
        for a in all_sequences(8) {
            for b in h0(&a).into_iter().filter(|b| *b != a) {
                assert!(b.len() < a.len());
            }
            for b in t0(&a).into_iter().filter_map(|b| b.as_seq().cloned()) {
                assert!(b.len() < a.len());
            }
        }
    }

    #[test]
    fn closures() {
        assert_eq!(s_closure(&u_family(6).unwrap()), set("e"));
        assert_eq!(phi_closure(&set("e 0 10 00")).to_set(), set("e 0 1 00 10"));
        assert_eq!(phi_closure(&set("e")).to_set(), set("e"));
        let w = w_family(4).unwrap();
        assert!(w.is_h0_closed() && w.is_h1_closed() && w.is_s_closed());
        let omega = OmegaSet::from_set(set("e 0 01 010")).unwrap();
        assert_eq!(s_omega(&omega, &s("0")), set("e"));
        assert_eq!(s_omega(&omega, &s("e")), set("e 0"));
        assert!(s_omega(&omega, &s("01")).is_empty());
    }
}
