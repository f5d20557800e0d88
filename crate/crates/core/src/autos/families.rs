use std::collections::BTreeMap;

use super::{AutoError, AutoMap, Family, Row, Stage};
use crate::gf::{Elem, Field};
use crate::graph::Graph;
use crate::seqset::{s_omega, t0, BinSeq, Index};

fn slot_of(g: &Graph, s: &BinSeq) -> Result<usize, AutoError> {
    g.slot(s).map(|i| i + 1).ok_or_else(|| AutoError::NotMember { seq: s.clone() })
}

fn index_slot(g: &Graph, i: &Index) -> Result<usize, AutoError> {
    match i {
        Index::Star => Ok(0),
        Index::Seq(s) => slot_of(g, s),
    }
}

/// λ_{x,y}: colors scale by x (left) and y (right); entry α scales by
/// x^{w(α)+1} y^{|α|−w(α)+1} on both sides.
pub fn lambda_map(g: &Graph, x: Elem, y: Elem) -> Result<AutoMap, AutoError> {
    if x.is_zero() || y.is_zero() {
        return Err(AutoError::ZeroParameter);
    }
    let f = g.field();
    let mut stage = Stage::identity(g.dim());
    stage.left[0].terms[0].1 = x;
    stage.right[0].terms[0].1 = y;
    for (j, alpha) in g.omega().iter().enumerate() {
        let w = alpha.weight() as u64;
        let factor = f.mul(f.pow(x, w + 1), f.pow(y, alpha.len() as u64 - w + 1));
        stage.left[j + 1].terms[0].1 = factor;
        stage.right[j + 1].terms[0].1 = factor;
    }
    Ok(AutoMap::from_stages(g, Family::Lambda { x, y }, vec![stage]))
}

/// The individual update rules of θ_{x,α}, named for mutation tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRule {
    Alpha,
    Alpha0,
    Alpha1,
    Alpha01,
    Alpha10,
}

/// θ_{x,α} with the sign of one rule optionally reversed.
pub fn theta_variant(g: &Graph, x: Elem, alpha: &BinSeq, flip: Option<ThetaRule>) -> Result<AutoMap, AutoError> {
    let f = g.field();
    let a = slot_of(g, alpha)?;
    let missing: Vec<BinSeq> = s_omega(g.omega(), alpha).into_iter().filter(|b| !g.omega().contains(b)).collect();
    if let Some(b) = missing.first() {
        return Err(AutoError::Precondition(format!("S_Ω({alpha}) contains {b}, which is not in Ω")));
    }
    let signed = |rule: ThetaRule, v: Elem| if flip == Some(rule) { f.neg(v) } else { v };
    let mut st = Stage::identity(g.dim());
    st.left[a].constant = signed(ThetaRule::Alpha, x);
    st.right[a].constant = signed(ThetaRule::Alpha, f.neg(x));
    if let Some(s) = g.slot(&alpha.with(0)) {
        st.right[s + 1].terms.push((0, signed(ThetaRule::Alpha0, x)));
    }
    if let Some(s) = g.slot(&alpha.with(1)) {
        st.left[s + 1].terms.push((0, signed(ThetaRule::Alpha1, f.neg(x))));
    }
    let n = alpha.len();
    for (j, gamma) in g.omega().iter().enumerate() {
        if gamma.len() < n + 2 || !gamma.starts_with(alpha) {
            continue;
        }
        let bits = gamma.bits();
        let beta = BinSeq::from_bits(&bits[n + 2..]);
        let b = slot_of(g, &beta)?;
        let coeff = match (bits[n], bits[n + 1]) {
            (0, 1) => signed(ThetaRule::Alpha01, x),
            (1, 0) => signed(ThetaRule::Alpha10, f.neg(x)),
            _ => continue,
        };
        st.left[j + 1].terms.push((b, coeff));
        st.right[j + 1].terms.push((b, coeff));
    }
    let family = Family::Theta { x, alpha: alpha.clone() };
    let family = if flip.is_some() { Family::Mutant(Box::new(family)) } else { family };
    Ok(AutoMap::from_stages(g, family, vec![st]))
}

/// θ_{x,α}; requires S_Ω(α) ⊆ Ω.
pub fn theta_map(g: &Graph, x: Elem, alpha: &BinSeq) -> Result<AutoMap, AutoError> {
    theta_variant(g, x, alpha, None)
}

/// The coefficients f_{x,α} over H₀(α) ∪ T₀(α) and g_{x,α} over H₀(α), one
/// pair per member of Ω in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub x: Elem,
    pub f: Vec<BTreeMap<Index, Elem>>,
    pub g: Vec<BTreeMap<Index, Elem>>,
}

fn step0(field: &Field, x: Elem, alpha: &BinSeq, f: &BTreeMap<Index, Elem>) -> [BTreeMap<Index, Elem>; 2] {
    let mut nf = BTreeMap::new();
    let mut ng = BTreeMap::new();
    for beta in t0(&alpha.with(0)) {
        nf.insert(beta.clone(), field.mul(x, f[&beta]));
    }
    for (beta, &fb) in f {
        let b0 = beta.with(0);
        ng.insert(b0.clone(), fb);
        let v = match f.get(&b0) {
            Some(&fb0) => field.add(fb, field.mul(x, fb0)),
            None => fb,
        };
        nf.insert(b0, v);
    }
    [nf, ng]
}

fn step1(g: &BTreeMap<Index, Elem>) -> BTreeMap<Index, Elem> {
    g.iter().map(|(beta, &v)| (beta.with(1), v)).collect()
}

/// Runs the coefficient recursion from f_η = {η: 1, *: x}, g_η = {η: 1}.
pub fn phi_table(g: &Graph, x: Elem) -> CoefficientTable {
    let field = g.field();
    let mut fs: Vec<BTreeMap<Index, Elem>> = Vec::with_capacity(g.dim());
    let mut gs: Vec<BTreeMap<Index, Elem>> = Vec::with_capacity(g.dim());
    for alpha in g.omega() {
        let (nf, ng) = match alpha.parent() {
            None => (
                BTreeMap::from([(Index::eta(), Elem::ONE), (Index::Star, x)]),
                BTreeMap::from([(Index::eta(), Elem::ONE)]),
            ),
            Some(p) => {
                let i = g.slot(&p).expect("C1");
                if alpha.last() == Some(0) {
                    let [nf, ng] = step0(field, x, &p, &fs[i]);
                    (nf, ng)
                } else {
                    let ng = step1(&gs[i]);
                    (ng.clone(), ng)
                }
            }
        };
        fs.push(nf);
        gs.push(ng);
    }
    CoefficientTable { x, f: fs, g: gs }
}

/// φ(x): fixes left colors, shifts right colors by x; needs ℍ₀(Ω) ⊆ Ω.
pub fn phi_map(g: &Graph, x: Elem) -> Result<AutoMap, AutoError> {
    if !g.omega().is_h0_closed() {
        return Err(AutoError::Precondition("ℍ₀(Ω) is not contained in Ω".into()));
    }
    let table = phi_table(g, x);
    let mut st = Stage::identity(g.dim());
    st.right[0].constant = x;
    for j in 0..g.dim() {
        let terms = |m: &BTreeMap<Index, Elem>| -> Result<Vec<(usize, Elem)>, AutoError> {
            m.iter().filter(|(_, v)| !v.is_zero()).map(|(b, &v)| Ok((index_slot(g, b)?, v))).collect()
        };
        st.left[j + 1] = Row { constant: Elem::ZERO, terms: terms(&table.f[j])? };
        st.right[j + 1] = Row { constant: Elem::ZERO, terms: terms(&table.g[j])? };
    }
    Ok(AutoMap::from_stages(g, Family::Phi { x }, vec![st]))
}

/// Carries a stage of Γ(mirror Ω) back to Γ(Ω) through the bit-flip,
/// side-swapping isomorphism.
fn transport(mirror: &Graph, g: &Graph, stage: &Stage) -> Stage {
    // slot in the mirror graph -> slot in g
    let to_g: Vec<usize> = std::iter::once(0)
        .chain(mirror.omega().iter().map(|s| g.slot(&s.mirror()).expect("mirror member") + 1))
        .collect();
    let carry = |rows: &[Row]| -> Vec<Row> {
        let mut out = vec![Row { constant: Elem::ZERO, terms: Vec::new() }; rows.len()];
        for (i, row) in rows.iter().enumerate() {
            out[to_g[i]] = Row {
                constant: row.constant,
                terms: row.terms.iter().map(|&(s, c)| (to_g[s], c)).collect(),
            };
        }
        out
    };
    Stage { left: carry(&stage.right), right: carry(&stage.left) }
}

/// ψ(x), the mirror image of φ(x): shifts left colors by x; needs ℍ₁(Ω) ⊆ Ω.
pub fn psi_map(g: &Graph, x: Elem) -> Result<AutoMap, AutoError> {
    if !g.omega().is_h1_closed() {
        return Err(AutoError::Precondition("ℍ₁(Ω) is not contained in Ω".into()));
    }
    let mirror = Graph::new(g.omega().mirror(), g.field().clone());
    let phi = phi_map(&mirror, x)?;
    let stages = phi.stages().iter().map(|s| transport(&mirror, g, s)).collect();
    Ok(AutoMap::from_stages(g, Family::Psi { x }, stages))
}

impl CoefficientTable {
    /// f_{x,α}(β), zero outside the domain.
    pub fn f_at(&self, g: &Graph, alpha: &BinSeq, beta: &Index) -> Elem {
        g.slot(alpha).and_then(|j| self.f[j].get(beta).copied()).unwrap_or(Elem::ZERO)
    }

    pub fn g_at(&self, g: &Graph, alpha: &BinSeq, beta: &Index) -> Elem {
        g.slot(alpha).and_then(|j| self.g[j].get(beta).copied()).unwrap_or(Elem::ZERO)
    }
}
