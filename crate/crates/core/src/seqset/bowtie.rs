use super::{decompose, mu, BinSeq, OmegaSet, SeqError};

fn congruent(x: usize, y: usize, modulus: usize) -> bool {
    x % modulus == y % modulus
}

/// Run-length conditions shared by both cases: congruence mod q−1 at every
/// index, and equality at interior indices whose minimum is zero.
fn runs_match(s: &[usize], t: &[usize], q: u32) -> bool {
    let n = s.len();
    let modulus = (q - 1) as usize;
    (0..n).all(|i| {
        let interior = i > 0 && i + 1 < n;
        congruent(s[i], t[i], modulus) && !(interior && s[i].min(t[i]) == 0 && s[i] != t[i])
    })
}

/// One direction of the relation, with α playing the role of μ_{a,n+1}(s).
fn related(omega: &OmegaSet, q: u32, alpha: &BinSeq, beta: &BinSeq) -> bool {
    let (da, db) = match (decompose(alpha), decompose(beta)) {
        (Ok(da), Ok(db)) => (da, db),
        _ => return false,
    };
    let n = da.n();
    if db.n() != n {
        return false;
    }
    let mut reversed = da.s.clone();
    reversed.reverse();
    if da.a == db.a {
        if !runs_match(&da.s, &db.s, q) {
            return false;
        }
        let Some(m) = (0..n).find(|&i| da.s[i] != db.s[i]).map(|i| i + 1) else {
            return true;
        };
        let b = if n % 2 == 1 { da.a } else { 1 - da.a };
        omega.contains_index(&mu(b, n - m, &reversed))
    } else {
        // β = μ_{b,n+1}(s″) with b ≠ a forces n even; s″ must match s reversed
        let mut t = db.s.clone();
        t.reverse();
        n % 2 == 0 && runs_match(&da.s, &t, q)
    }
}

/// α ⋈_q β on nonempty members of Ω; symmetric by construction.
pub fn bowtie(omega: &OmegaSet, q: u32, alpha: &BinSeq, beta: &BinSeq) -> Result<bool, SeqError> {
    for x in [alpha, beta] {
        if x.is_empty() || !omega.contains(x) {
            return Err(SeqError::NotMember(x.to_string()));
        }
    }
    Ok(alpha == beta || related(omega, q, alpha, beta) || related(omega, q, beta, alpha))
}

/// Classes of the equivalence generated by ⋈_q on Ω ∖ {η}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hbar {
    pub classes: Vec<Vec<BinSeq>>,
}

impl Hbar {
    /// ħ(Ω, q).
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, s: &BinSeq) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(s))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn hbar(omega: &OmegaSet, q: u32) -> Hbar {
    let members: Vec<&BinSeq> = omega.nonempty().collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if bowtie(omega, q, members[i], members[j]).expect("members") {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut classes: Vec<Vec<BinSeq>> = Vec::new();
    let mut slot = vec![usize::MAX; members.len()];
    for i in 0..members.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(members[i].clone());
    }
    Hbar { classes }
}
