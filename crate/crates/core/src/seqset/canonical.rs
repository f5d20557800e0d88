use std::fmt;
use std::str::FromStr;

use super::{parse_list, BinSeq, OmegaSet, SeqError};

/// The first `count` members of U = η, 0, 1, 01, 10, 010, 101, …
pub fn u_prefix(count: usize) -> Vec<BinSeq> {
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(BinSeq::eta());
    }
    let mut len = 1;
    while out.len() < count {
        out.push(BinSeq::alternating(0, len));
        if out.len() < count {
            out.push(BinSeq::alternating(1, len));
        }
        len += 1;
    }
    out
}

/// U_k, the first k−1 members of U (k ≥ 2).
pub fn u_family(k: usize) -> Result<OmegaSet, SeqError> {
    if k < 2 {
        return Err(SeqError::Range { family: "U_k", param: k as i64 });
    }
    OmegaSet::from_list(u_prefix(k - 1))
}

/// W_n = {0^i : i < n} (n ≥ 1).
pub fn w_family(n: usize) -> Result<OmegaSet, SeqError> {
    if n < 1 {
        return Err(SeqError::Range { family: "W_n", param: n as i64 });
    }
    OmegaSet::from_list((0..n).map(|i| BinSeq::run(0, i)))
}

/// X_n: U_{4k+1} with (10)^{k−1}1 swapped for (01)^k 0 when n = 2k−1, and
/// U_{4k+3} with (10)^k swapped for (01)^{k+1} when n = 2k.
pub fn x_family(n: usize) -> Result<OmegaSet, SeqError> {
    if n < 1 {
        return Err(SeqError::Range { family: "X_n", param: n as i64 });
    }
    let (base, out, add) = if n % 2 == 1 {
        let k = n.div_ceil(2);
        (4 * k + 1, BinSeq::alternating(1, 2 * k - 1), BinSeq::alternating(0, 2 * k + 1))
    } else {
        let k = n / 2;
        (4 * k + 3, BinSeq::alternating(1, 2 * k), BinSeq::alternating(0, 2 * k + 2))
    };
    let mut list: Vec<BinSeq> = u_prefix(base - 1).into_iter().filter(|s| *s != out).collect();
    list.push(add);
    OmegaSet::from_list(list)
}

/// Members of U led by `a`, up to length `max_len`.
pub fn m_family(a: u8, max_len: usize) -> Result<Vec<BinSeq>, SeqError> {
    if a > 1 {
        return Err(SeqError::Range { family: "M_a", param: a as i64 });
    }
    Ok((1..=max_len).map(|len| BinSeq::alternating(a, len)).collect())
}

const OMEGA2: &str = "e 1 0 10 00 01 101 001 010 1010 0010 0101 10101 00101 01010 \
                      101010 001010 010101 1010101 0010101";
const OMEGA3: &str = "e 0 1 01 10 010 0101 01010 00 001 0010 00101 001010";
const OMEGA4: &str = "100010 10001 1000 100 10 1 00101 0010 001 00 0 01 00010 0001 000 e";

fn fixed(list: &str) -> Vec<BinSeq> {
    parse_list(list).expect("fixed list parses")
}

/// The 20-member edge-transitive set, in its listed order.
pub fn omega2_list() -> Vec<BinSeq> {
    fixed(OMEGA2)
}

pub fn omega2() -> OmegaSet {
    OmegaSet::from_list(omega2_list()).expect("valid")
}

pub fn omega3() -> OmegaSet {
    OmegaSet::from_list(fixed(OMEGA3)).expect("valid")
}

pub fn omega4() -> OmegaSet {
    OmegaSet::from_list(fixed(OMEGA4)).expect("valid")
}

/// A named family with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Canonical {
    U(usize),
    W(usize),
    X(usize),
    /// M_a truncated at the given length.
    M(u8, usize),
    Omega2,
    /// The first `k` members of Ω₂ in listed order.
    Omega2Prefix(usize),
    Omega3,
    Omega4,
}

/// The family as an ordered list: canonical order for sets, listed order for Ω₂.
pub fn canonical(kind: Canonical) -> Result<Vec<BinSeq>, SeqError> {
    Ok(match kind {
        Canonical::U(k) => u_family(k)?.members().to_vec(),
        Canonical::W(n) => w_family(n)?.members().to_vec(),
        Canonical::X(n) => x_family(n)?.members().to_vec(),
        Canonical::M(a, len) => m_family(a, len)?,
        Canonical::Omega2 => omega2_list(),
        Canonical::Omega2Prefix(k) => {
            if !(1..=20).contains(&k) {
                return Err(SeqError::Range { family: "Omega2 prefix", param: k as i64 });
            }
            omega2_list().into_iter().take(k).collect()
        }
        Canonical::Omega3 => omega3().members().to_vec(),
        Canonical::Omega4 => omega4().members().to_vec(),
    })
}

impl Canonical {
    /// The family as an index set; fails for truncations that break C1.
    pub fn omega(self) -> Result<OmegaSet, SeqError> {
        let list = canonical(self)?;
        match self {
            Canonical::M(..) => OmegaSet::from_list(std::iter::once(BinSeq::eta()).chain(list)),
            _ => OmegaSet::from_list(list),
        }
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Canonical::U(k) => write!(f, "U{k}"),
            Canonical::W(n) => write!(f, "W{n}"),
            Canonical::X(n) => write!(f, "X{n}"),
            Canonical::M(a, len) => write!(f, "M{a}:{len}"),
            Canonical::Omega2 => f.write_str("omega2"),
            Canonical::Omega2Prefix(k) => write!(f, "omega2:{k}"),
            Canonical::Omega3 => f.write_str("omega3"),
            Canonical::Omega4 => f.write_str("omega4"),
        }
    }
}

impl FromStr for Canonical {
    type Err = String;

    /// Accepts `U6`, `W4`, `X1`, `M0:5`, `omega2`, `omega2:8`, `omega3`, `omega4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown family {s:?}");
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("omega") {
            return match rest {
                "2" => Ok(Canonical::Omega2),
                "3" => Ok(Canonical::Omega3),
                "4" => Ok(Canonical::Omega4),
                _ => match rest.strip_prefix("2:") {
                    Some(k) => Ok(Canonical::Omega2Prefix(num(k)?)),
                    None => Err(bad()),
                },
            };
        }
        let (head, rest) = lower.split_at(lower.chars().next().map_or(0, char::len_utf8));
        match head {
            "u" => Ok(Canonical::U(num(rest)?)),
            "w" => Ok(Canonical::W(num(rest)?)),
            "x" => Ok(Canonical::X(num(rest)?)),
            "m" => {
                let (a, len) = rest.split_once(':').ok_or_else(bad)?;
                let a = match a {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(bad()),
                };
                Ok(Canonical::M(a, num(len)?))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqset::phi_closure;

    fn list(t: &str) -> Vec<BinSeq> {
        parse_list(t).unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(u_family(4).unwrap().members(), list("e 0 1").as_slice());
        assert_eq!(u_family(8).unwrap().members(), list("e 0 1 01 10 010 101").as_slice());
        assert_eq!(w_family(3).unwrap().members(), list("e 0 00").as_slice());
        assert_eq!(x_family(1).unwrap().members(), list("e 0 01 010").as_slice());
        assert_eq!(x_family(2).unwrap().members(), list("e 0 1 01 010 0101").as_slice());
        assert_eq!(m_family(1, 3).unwrap(), list("1 10 101"));
        assert!(u_family(1).is_err());
        assert!(w_family(0).is_err());
    }

    #[test]
    fn fixed_sets() {
        assert_eq!(omega2_list().len(), 20);
        assert_eq!(omega3().len(), 13);
        assert_eq!(omega4().len(), 16);
        let prefix = Canonical::Omega2Prefix(8).omega().unwrap();
        assert_eq!(prefix.len(), 8);
        assert!(prefix.is_h0_closed() && prefix.is_h1_closed());
    }

    #[test]
    fn omega2_from_phi() {
        let l0 = list("e 0 10 00");
        let l1 = list("e 1 10 101 1010 10101");
        let p0 = phi_closure(&l0);
        let p1 = phi_closure(&l1);
        assert_eq!(p1.members(), list("e 0 1 01 10 010 101 0101 1010 10101").as_slice());
        let mut all = p0.to_set();
        all.extend(p1.to_set());
        for a in &l0 {
            for b in &l1 {
                all.insert(a.concat(b));
            }
        }
        let built = OmegaSet::from_set(all).unwrap();
        assert_eq!(built, omega2());
        assert!(built.is_h0_closed() && built.is_h1_closed());
    }

    #[test]
    fn parse_names() {
        for name in ["U6", "W4", "X1", "M0:5", "omega2", "omega2:8", "omega3", "omega4"] {
            let c: Canonical = name.parse().unwrap();
            assert_eq!(c.to_string(), name);
        }
        assert!("Q3".parse::<Canonical>().is_err());
    }
}
