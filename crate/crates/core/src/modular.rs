//! Orientation forms, the modular multisection and nullity of the modular class.

use crate::algebroid::LieAlgebroid;
use crate::coeffring::{monomials_up_to, Polynomial, ScalarExpr, Q};
use crate::error::{Error, Result};
use crate::exterior::{contract_form, subsets, AForm, MultiVector};
use crate::linalg::solve_scalar_combination;
use crate::nambu::{increasing_tuples, NambuStructure};
use crate::report::CheckReport;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// ν = c·exp(g)·e^1∧…∧e^m with c ≠ 0, which vanishes nowhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationForm {
    rank: usize,
    constant: Q,
    twist: Polynomial,
}

impl OrientationForm {
    pub fn new(rank: usize, constant: Q, twist: Polynomial) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::NonFactorableQuotient);
        }
        Ok(OrientationForm { rank, constant, twist })
    }

    pub fn standard(rank: usize) -> Self {
        OrientationForm { rank, constant: Q::one(), twist: Polynomial::zero() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    pub fn twist(&self) -> &Polynomial {
        &self.twist
    }

    /// exp(g)·ν.
    pub fn twisted(&self, g: &Polynomial) -> Self {
        OrientationForm { rank: self.rank, constant: self.constant.clone(), twist: &self.twist + g }
    }

    /// c·exp(g).
    pub fn density(&self) -> ScalarExpr {
        ScalarExpr::exp(self.twist.clone()).scale(&self.constant)
    }

    pub fn form(&self) -> AForm {
        AForm::single(self.rank, full_mask(self.rank), self.density())
    }

    /// The function f with ω = fν, for a top-degree form ω.
    pub fn quotient(&self, omega: &AForm) -> Result<ScalarExpr> {
        if omega.degree() != self.rank {
            return Err(Error::DegreeMismatch(format!("quotient needs a top form, got degree {}", omega.degree())));
        }
        let inv = ScalarExpr::exp(-&self.twist).scale(&self.constant.recip());
        Ok(&omega.get(full_mask(self.rank)) * &inv)
    }
}

pub(crate) fn full_mask(m: usize) -> u32 {
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

pub(crate) fn sign_pow(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    pub m_tilde: MultiVector,
    /// The defining relation re-checked on coordinate tuples.
    pub defining_relation: CheckReport,
}

impl ModularData {
    /// 𝓜(α) = ι_αM̃.
    pub fn cocycle(&self, alpha: &AForm) -> Result<ScalarExpr> {
        Ok(contract_form(alpha, &self.m_tilde)?.scalar_value())
    }
}

/// L_{Πα}ν/ν − (−1)^{n−1}ι_{d_Aα}Π, which equals ι_αM̃.
fn eq_rhs(n: &NambuStructure, nu: &OrientationForm, alpha: &AForm) -> Result<ScalarExpr> {
    let alg = n.algebroid();
    let lie = alg.lie_derivative(&n.pi_k(alpha)?, &nu.form())?;
    let q = nu.quotient(&lie)?;
    let contr = n.pi_k(&alg.d_a(alpha)?)?.scalar_value();
    Ok(&q - &contr.scale(&Q::from_integer(sign_pow(n.order() - 1).into())))
}

/// Residual of L_{Πα}ν = (ι_αM̃ + (−1)^{n−1}ι_{d_Aα}Π)ν for one (n−1)-form α.
pub fn defining_residual(md: &ModularData, n: &NambuStructure, nu: &OrientationForm, alpha: &AForm) -> Result<ScalarExpr> {
    Ok(&eq_rhs(n, nu, alpha)? - &md.cocycle(alpha)?)
}

pub fn modular_multisection(n: &NambuStructure, nu: &OrientationForm) -> Result<ModularData> {
    let alg = n.algebroid();
    if nu.rank() != n.rank() {
        return Err(Error::RankMismatch(nu.rank(), n.rank()));
    }
    if !alg.spanning_hypothesis() {
        return Err(Error::SpanningHypothesisFails);
    }
    let m = n.rank();
    let k = n.order() - 1;
    let mut coeffs = Vec::new();
    for mask in subsets(m, k) {
        let v = eq_rhs(n, nu, &AForm::single(m, mask, ScalarExpr::one()))?;
        coeffs.push((mask, v));
    }
    let mut md = ModularData {
        m_tilde: MultiVector::from_coeffs(m, k, coeffs),
        defining_relation: CheckReport::new("defining_relation"),
    };
    let ctx = n.ctx();
    let mut rep = CheckReport::new("defining_relation");
    for t in increasing_tuples(alg.base_dim(), k) {
        let mut alpha = AForm::scalar(m, ScalarExpr::one());
        for &j in &t {
            alpha = alpha.wedge(&alg.d_function(&ScalarExpr::var(j)))?;
        }
        let lie = alg.lie_derivative(&n.pi_k(&alpha)?, &nu.form())?;
        let res = &nu.quotient(&lie)? - &md.cocycle(&alpha)?;
        let go = rep.record(
            res.is_zero(),
            || {
                let names: Vec<&str> = t.iter().map(|&j| ctx.coord_names()[j].as_str()).collect();
                format!("f = ({})", names.join(", "))
            },
            || ctx.format(&res),
        );
        if !go {
            break;
        }
    }
    md.defining_relation = rep;
    Ok(md)
}

/// a(Πα)(ι_βM̃) − a(Πβ)(ι_αM̃) − ι_{⟪α,β⟫}M̃ on all sample pairs.
pub fn check_cocycle(md: &ModularData, n: &NambuStructure, samples: &[AForm]) -> Result<CheckReport> {
    let alg = n.algebroid();
    let ctx = n.ctx();
    let mut rep = CheckReport::new("cocycle");
    let pre: Vec<(MultiVector, ScalarExpr)> = samples
        .iter()
        .map(|a| Ok((n.pi_k(a)?, md.cocycle(a)?)))
        .collect::<Result<_>>()?;
    'outer: for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let t1 = alg.anchor_apply(&pre[i].0, &pre[j].1)?;
            let t2 = alg.anchor_apply(&pre[j].0, &pre[i].1)?;
            let t3 = md.cocycle(&n.leibniz_bracket(a, b)?)?;
            let res = &(&t1 - &t2) - &t3;
            let go = rep.record(
                res.is_zero(),
                || format!("α = {}, β = {}", a.format(ctx), b.format(ctx)),
                || ctx.format(&res),
            );
            if !go {
                break 'outer;
            }
        }
    }
    Ok(rep)
}

/// ι_α(M̃^{exp(g)ν} − M̃^ν) = a(Πα)(g) for every basis α.
pub fn check_orientation_change(n: &NambuStructure, nu: &OrientationForm, g: &Polynomial) -> Result<CheckReport> {
    let md = modular_multisection(n, nu)?;
    let md2 = modular_multisection(n, &nu.twisted(g))?;
    let alg = n.algebroid();
    let ctx = n.ctx();
    let gs = ScalarExpr::from_poly(g.clone());
    let mut rep = CheckReport::new("orientation_change");
    for mask in subsets(n.rank(), n.order() - 1) {
        let alpha = AForm::single(n.rank(), mask, ScalarExpr::one());
        let diff = &md2.cocycle(&alpha)? - &md.cocycle(&alpha)?;
        let res = &diff - &alg.anchor_apply(&n.pi_k(&alpha)?, &gs)?;
        if !rep.record(res.is_zero(), || alpha.format(ctx), || ctx.format(&res)) {
            break;
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NullityOutcome {
    Found {
        potential: String,
        /// M̃ = (−1)^{n−1}Π_1(d_Ag) re-checked.
        pi1_identity: bool,
    },
    NotFoundWithinBound {
        degree_bound: u32,
    },
}

/// The potential found together with its printed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullity {
    pub potential: Option<ScalarExpr>,
    pub outcome: NullityOutcome,
}

/// Searches g among polynomials of degree ≤ `degree_bound` (times the declared
/// exponential generators when `allow_exp`) with ι_αM̃ = a(Πα)(g) for every basis α.
pub fn solve_nullity(md: &ModularData, n: &NambuStructure, degree_bound: u32, allow_exp: bool) -> Result<Nullity> {
    let alg = n.algebroid();
    let ctx = n.ctx();
    let mut ansatz: Vec<ScalarExpr> = monomials_up_to(alg.base_dim(), degree_bound)
        .into_iter()
        .filter(|m| !m.is_one())
        .map(|m| ScalarExpr::from_poly(Polynomial::term(m, Q::one())))
        .collect();
    if allow_exp {
        for (_, h) in ctx.exp_generators() {
            let e = ScalarExpr::exp(h.clone());
            for m in monomials_up_to(alg.base_dim(), degree_bound) {
                ansatz.push(e.mul_poly(&Polynomial::term(m, Q::one())));
            }
        }
    }
    let basis: Vec<AForm> = subsets(n.rank(), n.order() - 1)
        .into_iter()
        .map(|mask| AForm::single(n.rank(), mask, ScalarExpr::one()))
        .collect();
    let images: Vec<MultiVector> = basis.iter().map(|a| n.pi_k(a)).collect::<Result<_>>()?;
    let target: Vec<ScalarExpr> = basis.iter().map(|a| md.cocycle(a)).collect::<Result<_>>()?;
    let columns: Vec<Vec<ScalarExpr>> = ansatz
        .iter()
        .map(|f| images.iter().map(|x| alg.anchor_apply(x, f)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let Some(sol) = solve_scalar_combination(&columns, &target) else {
        return Ok(Nullity { potential: None, outcome: NullityOutcome::NotFoundWithinBound { degree_bound } });
    };
    let mut g = ScalarExpr::zero();
    for (c, f) in sol.iter().zip(&ansatz) {
        if !c.is_zero() {
            g += &f.scale(c);
        }
    }
    let pi1 = n.pi_k(&alg.d_function(&g))?.scale_q(&Q::from_integer(sign_pow(n.order() - 1).into()));
    let outcome = NullityOutcome::Found { potential: ctx.format(&g), pi1_identity: pi1 == md.m_tilde };
    Ok(Nullity { potential: Some(g), outcome })
}

/// L_{a(Πα)}Λ = (−1)^n(ι_{d_Aα}Π)Λ with Λ the push-forward of Π to the base.
pub fn check_pushforward_schouten(n: &NambuStructure, samples: &[AForm]) -> Result<CheckReport> {
    let alg = n.algebroid();
    if !alg.spanning_hypothesis() {
        return Err(Error::SpanningHypothesisFails);
    }
    let ctx = n.ctx();
    let base = LieAlgebroid::tangent(ctx.clone());
    let lambda = alg.push_forward(n.pi())?;
    let sign = Q::from_integer(sign_pow(n.order()).into());
    let mut rep = CheckReport::new("pushforward_schouten");
    for a in samples {
        let x = alg.push_forward(&n.pi_k(a)?)?;
        let lhs = base.schouten_bracket(&x, &lambda)?;
        let f = n.pi_k(&alg.d_a(a)?)?.scalar_value().scale(&sign);
        let res = lhs.sub(&lambda.scale(&f));
        if !rep.record(res.is_zero(), || a.format(ctx), || res.format(ctx)) {
            break;
        }
    }
    Ok(rep)
}

/// ι_{d_A⟪α,β⟫}Π = a(Πα)(ι_{d_Aβ}Π) − a(Πβ)(ι_{d_Aα}Π) on all sample pairs.
pub fn check_bracket_divergence(n: &NambuStructure, samples: &[AForm]) -> Result<CheckReport> {
    let alg = n.algebroid();
    let ctx = n.ctx();
    let top = |a: &AForm| -> Result<ScalarExpr> { Ok(n.pi_k(&alg.d_a(a)?)?.scalar_value()) };
    let pre: Vec<(MultiVector, ScalarExpr)> = samples.iter().map(|a| Ok((n.pi_k(a)?, top(a)?))).collect::<Result<_>>()?;
    let mut rep = CheckReport::new("bracket_divergence");
    'outer: for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let lhs = top(&n.leibniz_bracket(a, b)?)?;
            let rhs = &alg.anchor_apply(&pre[i].0, &pre[j].1)? - &alg.anchor_apply(&pre[j].0, &pre[i].1)?;
            let res = &lhs - &rhs;
            let go = rep.record(
                res.is_zero(),
                || format!("α = {}, β = {}", a.format(ctx), b.format(ctx)),
                || ctx.format(&res),
            );
            if !go {
                break 'outer;
            }
        }
    }
    Ok(rep)
}

/// 𝓜(f_1,…,f_{n−1}) = L_{Π(d_Af_1∧…∧d_Af_{n−1})}ν / ν.
pub fn modular_map(n: &NambuStructure, nu: &OrientationForm, fs: &[ScalarExpr]) -> Result<ScalarExpr> {
    let alg = n.algebroid();
    let mut alpha = AForm::scalar(n.rank(), ScalarExpr::one());
    for f in fs {
        alpha = alpha.wedge(&alg.d_function(f))?;
    }
    nu.quotient(&alg.lie_derivative(&n.pi_k(&alpha)?, &nu.form())?)
}

/// Alternation and the Leibniz rule of 𝓜 in its first slot, on coordinate
/// functions and their pairwise products.
pub fn check_modular_map(n: &NambuStructure, nu: &OrientationForm) -> Result<Vec<CheckReport>> {
    let ctx = n.ctx();
    let p = n.algebroid().base_dim();
    let k = n.order() - 1;
    let coords: Vec<ScalarExpr> = (0..p).map(ScalarExpr::var).collect();
    let mut alt = CheckReport::new("modular_map_alternating");
    let mut leib = CheckReport::new("modular_map_leibniz");
    let tuples: Vec<Vec<usize>> = increasing_tuples(p, k);
    for t in &tuples {
        let fs: Vec<ScalarExpr> = t.iter().map(|&j| coords[j].clone()).collect();
        let base = modular_map(n, nu, &fs)?;
        if k >= 2 {
            let mut sw = fs.clone();
            sw.swap(0, 1);
            let res = &modular_map(n, nu, &sw)? + &base;
            alt.record(res.is_zero(), || format!("{t:?}"), || ctx.format(&res));
        }
        for g in &coords {
            let mut prod = fs.clone();
            prod[0] = &fs[0] * g;
            let mut only_g = fs.clone();
            only_g[0] = g.clone();
            let rhs = &(&fs[0] * &modular_map(n, nu, &only_g)?) + &(g * &base);
            let res = &modular_map(n, nu, &prod)? - &rhs;
            leib.record(res.is_zero(), || format!("{t:?} times {}", ctx.format(g)), || ctx.format(&res));
        }
    }
    Ok(vec![alt, leib])
}
