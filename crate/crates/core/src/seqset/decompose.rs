use super::{BinSeq, Index, SeqError};

/// The run structure of a nonempty sequence: lead bit `a`, run count `n` and
/// `s[i] = (length of run i+1) − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub a: u8,
    pub s: Vec<usize>,
}

impl Decomposition {
    /// κ, the number of runs.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// Rebuilds the sequence as μ_{a,n+1}(s₁, …, s_n, 0).
    pub fn reconstruct(&self) -> BinSeq {
        let mut s = self.s.clone();
        s.push(0);
        mu(self.a, s.len(), &s).as_seq().cloned().expect("n ≥ 1 gives a sequence")
    }
}

pub fn decompose(alpha: &BinSeq) -> Result<Decomposition, SeqError> {
    let runs = alpha.runs();
    match runs.first() {
        None => Err(SeqError::EmptyDecomposition(alpha.to_string())),
        Some(&(a, _)) => Ok(Decomposition { a, s: runs.iter().map(|&(_, len)| len - 1).collect() }),
    }
}

pub fn kappa(alpha: &BinSeq) -> Result<usize, SeqError> {
    decompose(alpha).map(|d| d.n())
}

/// μ_{a,i}(s): `*` for i = 0, then each step appends 10^{s_j} when j + a is
/// odd and 01^{s_j} otherwise. The first appended bit collapses onto `*`.
pub fn mu(a: u8, i: usize, s: &[usize]) -> Index {
    assert!(s.len() >= i, "μ needs {i} parameters");
    let mut tail = BinSeq::eta();
    for (j, &sj) in s.iter().enumerate().take(i) {
        let (head, rep) = if (j + 1 + a as usize) % 2 == 1 { (1, 0) } else { (0, 1) };
        tail.push(head);
        tail = tail.concat(&BinSeq::run(rep, sj));
    }
    Index::Star.concat(&tail)
}

/// σ_i(s): μ_{1,i}(s) with its first bit deleted, `*` when nothing remains.
pub fn sigma(i: usize, s: &[usize]) -> Index {
    match mu(1, i, s) {
        Index::Seq(m) if !m.is_empty() => Index::Seq(m.remove(0)),
        _ => Index::Star,
    }
}
