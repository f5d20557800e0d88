//! Binary index sequences and the index sets Ω that label vertex entries.
//!
//! A [`BinSeq`] is a finite word over {0,1}; the empty word is written `e` in
//! text form. The color entry of a vertex is indexed by the extra symbol `*`,
//! modelled by [`Index::Star`]. Appending a bit to `*` yields the empty word,
//! so the equation for the empty index folds into the general recursion.

mod bowtie;
mod canonical;
mod closure;
mod decompose;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use bowtie::{bowtie, hbar, Hbar};
pub use canonical::{canonical, m_family, omega2, omega3, omega4, u_family, u_prefix, w_family, x_family, Canonical};
pub use closure::{
    closure, h0, h0_closure, h1, h1_closure, phi_closure, s_closure, s_omega, t0, t1, ClosureKind,
};
pub use decompose::{decompose, kappa, mu, sigma, Decomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("η missing: the empty sequence must belong to Ω")]
    EtaMissing,
    #[error("prefix {prefix} of {seq} missing from Ω")]
    PrefixMissing { seq: BinSeq, prefix: BinSeq },
    #[error("duplicate sequence {0}")]
    Duplicate(BinSeq),
    #[error("invalid sequence {0:?}: expected characters 0/1 or `e`")]
    Parse(String),
    #[error("line {line}: {source}")]
    File { line: usize, source: Box<SeqError> },
    #[error("{0} is not a member of Ω")]
    NotMember(String),
    #[error("decomposition needs a nonempty sequence, got {0}")]
    EmptyDecomposition(String),
    #[error("parameter {param} out of range for {family}")]
    Range { family: &'static str, param: i64 },
}

/// A finite binary sequence. Ordered by length first, then lexicographically with 0 < 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinSeq(Vec<u8>);

impl BinSeq {
    /// The null sequence η.
    pub fn eta() -> Self {
        BinSeq(Vec::new())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BinSeq(bits.to_vec())
    }

    /// `bit` repeated `n` times.
    pub fn run(bit: u8, n: usize) -> Self {
        assert!(bit <= 1);
        BinSeq(vec![bit; n])
    }

    /// Alternating sequence of length `len` starting with `lead`.
    pub fn alternating(lead: u8, len: usize) -> Self {
        BinSeq((0..len).map(|i| lead ^ (i as u8 & 1)).collect())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of 1 bits.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// The sequence with its last bit deleted; `None` for η.
    pub fn parent(&self) -> Option<BinSeq> {
        if self.0.is_empty() {
            None
        } else {
            Some(BinSeq(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1);
        self.0.push(bit);
    }

    pub fn with(&self, bit: u8) -> BinSeq {
        let mut s = self.clone();
        s.push(bit);
        s
    }

    pub fn concat(&self, other: &BinSeq) -> BinSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinSeq(v)
    }

    pub fn repeat(&self, n: usize) -> BinSeq {
        BinSeq(self.0.repeat(n))
    }

    /// Exchange of 0 and 1.
    pub fn mirror(&self) -> BinSeq {
        BinSeq(self.0.iter().map(|b| b ^ 1).collect())
    }

    pub fn starts_with(&self, prefix: &BinSeq) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn strip_prefix(&self, prefix: &BinSeq) -> Option<BinSeq> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| BinSeq(s.to_vec()))
    }

    pub fn remove(&self, pos: usize) -> BinSeq {
        let mut v = self.0.clone();
        v.remove(pos);
        BinSeq(v)
    }

    /// Whether the sequence is `bit^i` for some i >= 0.
    pub fn is_run_of(&self, bit: u8) -> bool {
        self.0.iter().all(|&b| b == bit)
    }

    /// Maximal runs as `(bit, length)` pairs.
    pub fn runs(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::new();
        for &b in &self.0 {
            match out.last_mut() {
                Some((bit, n)) if *bit == b => *n += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// Whether the sequence lies in U: η, or alternating bits.
    pub fn is_alternating(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl Ord for BinSeq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BinSeq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinSeq {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "e" || t == "η" {
            return Ok(BinSeq::eta());
        }
        if t.is_empty() {
            return Err(SeqError::Parse(s.to_string()));
        }
        t.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(SeqError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(BinSeq)
    }
}

/// An entry index: the color symbol `*` or a binary sequence.
///
/// `*` sorts before every sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Star,
    Seq(BinSeq),
}

impl Index {
    pub fn eta() -> Self {
        Index::Seq(BinSeq::eta())
    }

    /// Appends a bit, with `*0 = *1 = η`.
    pub fn with(&self, bit: u8) -> Index {
        match self {
            Index::Star => Index::eta(),
            Index::Seq(s) => Index::Seq(s.with(bit)),
        }
    }

    /// Appends a whole sequence; the first appended bit collapses onto `*`.
    pub fn concat(&self, tail: &BinSeq) -> Index {
        match self {
            Index::Seq(s) => Index::Seq(s.concat(tail)),
            Index::Star if tail.is_empty() => Index::Star,
            Index::Star => Index::Seq(BinSeq(tail.0[1..].to_vec())),
        }
    }

    pub fn as_seq(&self) -> Option<&BinSeq> {
        match self {
            Index::Star => None,
            Index::Seq(s) => Some(s),
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Index::Star)
    }

    pub fn mirror(&self) -> Index {
        match self {
            Index::Star => Index::Star,
            Index::Seq(s) => Index::Seq(s.mirror()),
        }
    }
}

impl From<BinSeq> for Index {
    fn from(s: BinSeq) -> Self {
        Index::Seq(s)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Star => f.write_str("*"),
            Index::Seq(s) => s.fmt(f),
        }
    }
}

impl FromStr for Index {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "*" {
            Ok(Index::Star)
        } else {
            s.parse().map(Index::Seq)
        }
    }
}

/// A finite set of binary sequences satisfying C1: η is a member and every
/// nonempty member's last-bit-deleted prefix is a member.
///
/// Members are stored in canonical (length, lex) order; a member's position in
/// that order is its slot in every vertex over this Ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSet {
    members: Vec<BinSeq>,
    position: HashMap<BinSeq, usize>,
}

/// Validates C1 and builds the index set.
pub fn check_c1(candidate: &BTreeSet<BinSeq>) -> Result<OmegaSet, SeqError> {
    if !candidate.contains(&BinSeq::eta()) {
        return Err(SeqError::EtaMissing);
    }
    for seq in candidate {
        if let Some(prefix) = seq.parent() {
            if !candidate.contains(&prefix) {
                return Err(SeqError::PrefixMissing { seq: seq.clone(), prefix });
            }
        }
    }
    let members: Vec<BinSeq> = candidate.iter().cloned().collect();
    let position = members.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(OmegaSet { members, position })
}

impl OmegaSet {
    /// Builds from a list, rejecting duplicates before checking C1.
    pub fn from_list<I: IntoIterator<Item = BinSeq>>(list: I) -> Result<Self, SeqError> {
        let mut set = BTreeSet::new();
        for s in list {
            if let Some(dup) = set.replace(s) {
                return Err(SeqError::Duplicate(dup));
            }
        }
        check_c1(&set)
    }

    /// Builds from any collection, silently merging duplicates.
    pub fn from_set<I: IntoIterator<Item = BinSeq>>(seqs: I) -> Result<Self, SeqError> {
        check_c1(&seqs.into_iter().collect())
    }

    /// Parses text: one sequence per line, `e` for η, `#` comments, blank lines ignored.
    pub fn parse_text(text: &str) -> Result<Self, SeqError> {
        let mut set = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let wrap = |e: SeqError| SeqError::File { line: i + 1, source: Box::new(e) };
            let seq: BinSeq = line.parse().map_err(wrap)?;
            if !set.insert(seq.clone()) {
                return Err(wrap(SeqError::Duplicate(seq)));
            }
        }
        check_c1(&set)
    }

    /// Text form accepted by [`OmegaSet::parse_text`], canonical order.
    pub fn to_text(&self) -> String {
        self.members.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn members(&self) -> &[BinSeq] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BinSeq> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: η is always a member.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &BinSeq) -> bool {
        self.position.contains_key(s)
    }

    /// Membership in Ω ∪ {*}.
    pub fn contains_index(&self, i: &Index) -> bool {
        match i {
            Index::Star => true,
            Index::Seq(s) => self.contains(s),
        }
    }

    pub fn position(&self, s: &BinSeq) -> Option<usize> {
        self.position.get(s).copied()
    }

    /// The nonempty members Ω* = Ω ∖ {η}.
    pub fn nonempty(&self) -> impl Iterator<Item = &BinSeq> {
        self.members.iter().filter(|s| !s.is_empty())
    }

    pub fn max_len(&self) -> usize {
        self.members.last().map_or(0, |s| s.len())
    }

    pub fn to_set(&self) -> BTreeSet<BinSeq> {
        self.members.iter().cloned().collect()
    }

    /// Ω with 0 and 1 exchanged in every member.
    pub fn mirror(&self) -> OmegaSet {
        OmegaSet::from_set(self.members.iter().map(BinSeq::mirror)).expect("mirroring preserves C1")
    }

    /// Whether `s` is maximal: neither `s0` nor `s1` is a member.
    pub fn is_maximal(&self, s: &BinSeq) -> bool {
        self.contains(s) && !self.contains(&s.with(0)) && !self.contains(&s.with(1))
    }

    pub fn without(&self, s: &BinSeq) -> Result<OmegaSet, SeqError> {
        OmegaSet::from_set(self.members.iter().filter(|m| *m != s).cloned())
    }

    pub fn is_subset_of(&self, other: &OmegaSet) -> bool {
        self.members.iter().all(|s| other.contains(s))
    }

    /// 𝕊(Ω) ⊆ Ω.
    pub fn is_s_closed(&self) -> bool {
        s_closure(self).iter().all(|s| self.contains(s))
    }

    /// ℍ₀(Ω) ⊆ Ω.
    pub fn is_h0_closed(&self) -> bool {
        h0_closure(self).iter().all(|s| self.contains(s))
    }

    /// ℍ₁(Ω) ⊆ Ω.
    pub fn is_h1_closed(&self) -> bool {
        h1_closure(self).iter().all(|s| self.contains(s))
    }
}

impl<'a> IntoIterator for &'a OmegaSet {
    type Item = &'a BinSeq;
    type IntoIter = std::slice::Iter<'a, BinSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Parses a whitespace- or comma-separated list of sequences.
pub fn parse_list(s: &str) -> Result<Vec<BinSeq>, SeqError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Every binary sequence of length at most `max_len`, canonical order.
pub fn all_sequences(max_len: usize) -> Vec<BinSeq> {
    let mut out = vec![BinSeq::eta()];
    for len in 1..=max_len {
        for code in 0..(1u64 << len) {
            out.push(BinSeq((0..len).rev().map(|i| ((code >> i) & 1) as u8).collect()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(list: &str) -> BTreeSet<BinSeq> {
        parse_list(list).unwrap().into_iter().collect()
    }

    #[test]
    fn c1_examples() {
        let u5 = check_c1(&seqs("e 0 1 01")).unwrap();
        assert_eq!(u5, u_family(5).unwrap());
        assert_eq!(
            check_c1(&seqs("e 01")).unwrap_err(),
            SeqError::PrefixMissing { seq: "01".parse().unwrap(), prefix: "0".parse().unwrap() }
        );
        assert_eq!(check_c1(&seqs("0")).unwrap_err(), SeqError::EtaMissing);
    }

    #[test]
    fn ordering_is_length_then_lex() {
        let all = all_sequences(3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 15);
        assert!(Index::Star < Index::eta());
        assert!("1".parse::<BinSeq>().unwrap() < "00".parse().unwrap());
    }

    #[test]
    fn star_convention() {
        assert_eq!(Index::Star.with(0), Index::eta());
        assert_eq!(Index::Star.with(1), Index::eta());
        let tail: BinSeq = "100".parse().unwrap();
        assert_eq!(Index::Star.concat(&tail), Index::Seq("00".parse().unwrap()));
        assert_eq!(Index::Star.concat(&BinSeq::eta()), Index::Star);
    }

    #[test]
    fn file_format() {
        let text = "# U_5\ne\n0\n\n1\n01\n";
        let omega = OmegaSet::parse_text(text).unwrap();
        assert_eq!(omega.len(), 4);
        assert_eq!(omega.to_text(), "e\n0\n1\n01\n");
        assert!(matches!(
            OmegaSet::parse_text("e\n0\n0\n"),
            Err(SeqError::File { line: 3, .. })
        ));
        assert!(matches!(OmegaSet::parse_text("e\n2\n"), Err(SeqError::File { line: 2, .. })));
        assert_eq!(OmegaSet::parse_text("0\n").unwrap_err(), SeqError::EtaMissing);
        assert!(matches!(
            OmegaSet::from_list(parse_list("e 0 0").unwrap()),
            Err(SeqError::Duplicate(_))
        ));
    }

    #[test]
    fn maximal_and_mirror() {
        let w3 = w_family(3).unwrap();
        assert!(w3.is_maximal(&"00".parse().unwrap()));
        assert!(!w3.is_maximal(&"0".parse().unwrap()));
        let m = w3.mirror();
        assert!(m.contains(&"11".parse().unwrap()));
    }
}
