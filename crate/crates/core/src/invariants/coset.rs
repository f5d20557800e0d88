use std::collections::{BTreeSet, HashMap};

use num_integer::gcd;

use super::{lift, InvError};
use crate::gf::{Elem, Field};
use crate::graph::{component_of, Graph, Side, Vertex};
use crate::seqset::BinSeq;

/// The prediction for the component through the all-zero vertices:
/// |G| = (p^n)^j for some j ≥ 0, n least with
/// (q−1) | (p^n − 1)·gcd(q−1, w(α)+1, |α|−w(α)+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCheck {
    pub n: u32,
    pub allowed: Vec<u64>,
    pub holds: bool,
}

/// How the components over one component C′ of Γ(Ω∖{α}, q) split the α
/// entry: ρ(u′, C) = f(u′) ± g(C) + G, plus on L and minus on R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetReport {
    pub alpha: BinSeq,
    /// Size of C′.
    pub base: u64,
    /// G in increasing raw order.
    pub subgroup: Vec<Elem>,
    /// |G|, the common fiber size.
    pub t: usize,
    /// Number of components of Γ(Ω, q) over C′.
    pub s: usize,
    /// A vertex of each component over C′ (its lift of the representative
    /// with smallest α entry), with g(C).
    pub representatives: Vec<(Vertex, Elem)>,
    /// f on the representative of C′.
    pub f_base: Elem,
    pub zero_check: Option<ZeroCheck>,
    /// Every violated claim, empty when the structure holds.
    pub failures: Vec<String>,
}

impl CosetReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.zero_check.as_ref().is_none_or(|z| z.holds)
    }
}

fn is_subgroup(f: &Field, g: &BTreeSet<Elem>) -> bool {
    g.contains(&Elem::ZERO)
        && g.iter().all(|&a| g.contains(&f.neg(a)) && g.iter().all(|&b| g.contains(&f.add(a, b))))
}

fn shift(f: &Field, set: &BTreeSet<Elem>, by: Elem) -> BTreeSet<Elem> {
    set.iter().map(|&x| f.add(x, by)).collect()
}

/// Least n with (q−1) | (p^n − 1)·gcd(q−1, w+1, |α|−w+1), and the admissible
/// subgroup orders p^{nj} ≤ q.
pub fn zero_prediction(f: &Field, alpha: &BinSeq) -> (u32, Vec<u64>) {
    let q = f.order() as u64;
    let p = f.p() as u64;
    let w = alpha.weight() as u64;
    let d = gcd(gcd(q - 1, w + 1), alpha.len() as u64 - w + 1);
    let n = (1..=f.m()).find(|&n| ((p.pow(n) - 1) * d) % (q - 1) == 0).expect("n = m always works");
    let step = p.pow(n);
    let allowed = std::iter::successors(Some(1u64), |&x| (x * step <= q).then_some(x * step)).collect();
    (n, allowed)
}

/// Enumerates every component of Γ(Ω, q) over the component of `base` in
/// Γ(Ω∖{α}, q) and checks the coset description of the α entries.
pub fn coset_structure(g: &Graph, alpha: &BinSeq, base: &Vertex, cap: u64) -> Result<CosetReport, InvError> {
    let omega = g.omega();
    let alpha_slot = omega.position(alpha).ok_or_else(|| InvError::Missing(alpha.to_string()))?;
    if !omega.is_maximal(alpha) || alpha.is_empty() {
        return Err(InvError::Precondition(format!("{alpha} is not maximal in Ω")));
    }
    let f = g.field();
    let sub = Graph::new(omega.without(alpha)?, f.clone());
    sub.validate(base)?;
    let c_prime = component_of(&sub, base, cap)?;
    let index: HashMap<&Vertex, usize> = c_prime.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut failures = Vec::new();

    // rho[c][u] = α entries of component c over vertex u of C′.
    let mut rho: Vec<Vec<BTreeSet<Elem>>> = Vec::new();
    let mut reps = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; f.order() as usize];
    for x in f.elements() {
        if owner[x.value() as usize].is_some() {
            continue;
        }
        let start = lift(g, &sub, base, alpha_slot, x);
        let id = rho.len();
        let mut sets = vec![BTreeSet::new(); c_prime.len()];
        for v in component_of(g, &start, cap.saturating_mul(f.order() as u64))? {
            let u = g.project(&v, &sub)?;
            let a = v.entries[alpha_slot];
            match index.get(&u) {
                Some(&i) => {
                    sets[i].insert(a);
                    if i == 0 {
                        owner[a.value() as usize] = Some(id);
                    }
                }
                None => failures.push(format!("{v} projects outside C′")),
            }
        }
        rho.push(sets);
        reps.push(start);
    }

    let pick = |set: &BTreeSet<Elem>| *set.iter().next().expect("fibers are nonempty");
    let origin = pick(&rho[0][0]);
    let group: BTreeSet<Elem> = rho[0][0].iter().map(|&a| f.sub(a, origin)).collect();
    if !is_subgroup(f, &group) {
        failures.push(format!("G = {group:?} is not an additive subgroup"));
    }
    let sign = |u: &Vertex, x: Elem| if u.side == Side::L { x } else { f.neg(x) };
    let fvals: Vec<Elem> = rho[0].iter().map(pick).collect();
    let gvals: Vec<Elem> = rho.iter().map(|sets| sign(base, f.sub(pick(&sets[0]), fvals[0]))).collect();
    for (c, sets) in rho.iter().enumerate() {
        for (i, set) in sets.iter().enumerate() {
            let want = shift(f, &group, f.add(fvals[i], sign(&c_prime[i], gvals[c])));
            if *set != want {
                failures.push(format!("ρ({}, C{c}) = {set:?} is not f(u′) ± g(C) + G", c_prime[i]));
                break;
            }
        }
    }
    let mut covered = BTreeSet::new();
    for &gv in &gvals {
        let coset = shift(f, &group, gv);
        if !covered.is_disjoint(&coset) {
            failures.push(format!("cosets overlap at g = {gv}"));
        }
        covered.extend(coset);
    }
    if covered.len() != f.order() as usize {
        failures.push("the cosets g(C) + G do not cover the field".into());
    }
    if rho.len() * group.len() != f.order() as usize {
        failures.push(format!("s·t = {}·{} ≠ q", rho.len(), group.len()));
    }

    let has_zero = [Side::L, Side::R].iter().any(|&s| index.contains_key(&sub.zero_vertex(s, Elem::ZERO)));
    let zero_check = has_zero.then(|| {
        let (n, allowed) = zero_prediction(f, alpha);
        let holds = allowed.contains(&(group.len() as u64));
        ZeroCheck { n, allowed, holds }
    });

    Ok(CosetReport {
        alpha: alpha.clone(),
        base: c_prime.len() as u64,
        subgroup: group.into_iter().collect(),
        t: rho[0][0].len(),
        s: rho.len(),
        representatives: reps.into_iter().zip(gvals).collect(),
        f_base: fvals[0],
        zero_check,
        failures,
    })
}
