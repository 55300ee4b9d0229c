use crate::algebroid::LieAlgebroid;
use crate::coeffring::{Polynomial, ScalarExpr};
use crate::error::{Error, Result};
use crate::exterior::{contract_form, contract_mv, wedge_sign, AForm, MultiVector};
use crate::modular::{full_mask, sign_pow, OrientationForm};
use crate::report::CheckReport;

/// ♭_ν(P) = ι_Pν.
pub fn flat_nu(p: &MultiVector, nu: &OrientationForm) -> Result<AForm> {
    contract_mv(p, &nu.form())
}

/// The inverse of ♭_ν, by exact division by the density of ν.
pub fn flat_inverse(phi: &AForm, nu: &OrientationForm) -> Result<MultiVector> {
    let m = nu.rank();
    if phi.rank() != m {
        return Err(Error::RankMismatch(phi.rank(), m));
    }
    let inv = ScalarExpr::exp(-nu.twist()).scale(&nu.constant().recip());
    let full = full_mask(m);
    let mut out = MultiVector::zero(m, m - phi.degree());
    for (t, f) in phi.terms() {
        let s = full & !t;
        let v = &(f * &inv) * &ScalarExpr::int(wedge_sign(s, *t) as i64);
        out.add_term(s, &v);
    }
    Ok(out)
}

/// δ_ν = ♭_ν^{-1}∘d_A∘♭_ν, lowering degree by one.
pub fn delta_nu(alg: &LieAlgebroid, nu: &OrientationForm, p: &MultiVector) -> Result<MultiVector> {
    if p.degree() == 0 {
        return Err(Error::DegreeMismatch("δ_ν needs degree ≥ 1".into()));
    }
    flat_inverse(&alg.d_a(&flat_nu(p, nu)?)?, nu)
}

/// Divergence of a section, δ_ν(X).
pub fn divergence(alg: &LieAlgebroid, nu: &OrientationForm, x: &MultiVector) -> Result<ScalarExpr> {
    if x.degree() != 1 {
        return Err(Error::DegreeMismatch("divergence needs a section".into()));
    }
    Ok(delta_nu(alg, nu, x)?.scalar_value())
}

/// L_X♭_ν(P) = ♭_ν([X,P]) + δ_ν(X)♭_ν(P) over pairs, and
/// ι_α(δ_νP) = δ_ν(ι_αP) + (−1)^k ι_{d_Aα}P for deg P = k and deg α = k−1.
pub fn check_delta_identities(
    alg: &LieAlgebroid,
    nu: &OrientationForm,
    ps: &[MultiVector],
    xs: &[MultiVector],
    alphas: &[AForm],
) -> Result<Vec<CheckReport>> {
    let ctx = alg.ctx();
    let mut lie = CheckReport::new("flat_lie_derivative");
    'outer: for p in ps {
        let fp = flat_nu(p, nu)?;
        for x in xs {
            let lhs = alg.lie_derivative(x, &fp)?;
            let rhs = flat_nu(&alg.schouten_bracket(x, p)?, nu)?.add(&fp.scale(&divergence(alg, nu, x)?));
            let res = lhs.sub(&rhs);
            let go = lie.record(
                res.is_zero(),
                || format!("P = {}, X = {}", p.format(ctx), x.format(ctx)),
                || res.format(ctx),
            );
            if !go {
                break 'outer;
            }
        }
    }
    let mut contr = CheckReport::new("contraction_delta");
    'outer: for p in ps {
        let k = p.degree();
        if k == 0 {
            continue;
        }
        let dp = delta_nu(alg, nu, p)?;
        for a in alphas.iter().filter(|a| a.degree() + 1 == k) {
            let lhs = contract_form(a, &dp)?;
            let inner = contract_form(a, p)?;
            let rhs = delta_nu(alg, nu, &inner)?.add(&contract_form(&alg.d_a(a)?, p)?.scale(&ScalarExpr::int(sign_pow(k))));
            let res = lhs.sub(&rhs);
            let go = contr.record(
                res.is_zero(),
                || format!("P = {}, α = {}", p.format(ctx), a.format(ctx)),
                || res.format(ctx),
            );
            if !go {
                break 'outer;
            }
        }
    }
    Ok(vec![lie, contr])
}

/// δ_{exp(g)ν}(exp(−g)P) = exp(−g)δ_ν(P) on samples of degree ≥ 1.
pub fn check_homology_orientation_independence(
    alg: &LieAlgebroid,
    nu: &OrientationForm,
    g: &Polynomial,
    samples: &[MultiVector],
) -> Result<CheckReport> {
    let ctx = alg.ctx();
    let nu2 = nu.twisted(g);
    let phi = ScalarExpr::exp(-g);
    let mut rep = CheckReport::new("orientation_intertwining");
    for p in samples.iter().filter(|p| p.degree() >= 1) {
        let lhs = delta_nu(alg, &nu2, &p.scale(&phi))?;
        let rhs = delta_nu(alg, nu, p)?.scale(&phi);
        let res = lhs.sub(&rhs);
        if !rep.record(res.is_zero(), || p.format(ctx), || res.format(ctx)) {
            break;
        }
    }
    Ok(rep)
}
