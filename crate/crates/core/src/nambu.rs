//! Nambu structures on a Lie algebroid and the Leibniz algebroid they induce
//! on forms of degree n−1.

use crate::algebroid::LieAlgebroid;
use crate::coeffring::{monomials_of_degree, Polynomial, RingContext, ScalarExpr, Q};
use crate::error::{Error, Result};
use crate::exterior::{contract_form, contract_mv, pairing, subsets, AForm, MultiVector};
use crate::linalg::Subspace;
use crate::report::CheckReport;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// How many sample sections to generate: basis elements, plus their multiples
/// by coordinates, plus multiples by quadratic monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SampleLevel {
    Basis,
    #[default]
    Linear,
    Quadratic,
}

impl SampleLevel {
    pub fn max_degree(self) -> u32 {
        match self {
            SampleLevel::Basis => 0,
            SampleLevel::Linear => 1,
            SampleLevel::Quadratic => 2,
        }
    }
}

/// Multipliers 1, then monomials of degree 1, 2, … up to the level.
pub fn sample_multipliers(nvars: usize, level: SampleLevel) -> Vec<ScalarExpr> {
    (0..=level.max_degree())
        .flat_map(|d| monomials_of_degree(nvars, d))
        .map(|m| ScalarExpr::from_poly(Polynomial::term(m, num_traits::One::one())))
        .collect()
}

/// Basis k-forms and their monomial multiples; basis forms come first.
pub fn sample_forms(rank: usize, nvars: usize, k: usize, level: SampleLevel) -> Vec<AForm> {
    let masks = subsets(rank, k);
    sample_multipliers(nvars, level)
        .iter()
        .flat_map(|f| masks.iter().map(move |&m| AForm::single(rank, m, f.clone())))
        .collect()
}

/// Basis k-multivectors and their monomial multiples.
pub fn sample_multivectors(rank: usize, nvars: usize, k: usize, level: SampleLevel) -> Vec<MultiVector> {
    let masks = subsets(rank, k);
    sample_multipliers(nvars, level)
        .iter()
        .flat_map(|f| masks.iter().map(move |&m| MultiVector::single(rank, m, f.clone())))
        .collect()
}

#[derive(Clone, Debug)]
pub struct NambuStructure {
    alg: LieAlgebroid,
    n: usize,
    pi: MultiVector,
}

impl NambuStructure {
    /// The order n is the degree of Π; 3 ≤ n ≤ rank is required.
    pub fn new(alg: LieAlgebroid, pi: MultiVector) -> Result<Self> {
        if pi.rank() != alg.rank() {
            return Err(Error::RankMismatch(pi.rank(), alg.rank()));
        }
        let n = pi.degree();
        if n < 3 {
            return Err(Error::InvalidNambu(format!(
                "order {n} is below 3; order-2 structures are Poisson and are not handled here"
            )));
        }
        if n > alg.rank() {
            return Err(Error::InvalidNambu(format!("order {n} exceeds rank {}", alg.rank())));
        }
        Ok(NambuStructure { alg, n, pi })
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.alg
    }

    pub fn ctx(&self) -> &RingContext {
        self.alg.ctx()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn pi(&self) -> &MultiVector {
        &self.pi
    }

    /// Π_k(α) = ι_αΠ.
    pub fn pi_k(&self, alpha: &AForm) -> Result<MultiVector> {
        if alpha.degree() > self.n {
            return Err(Error::DegreeMismatch(format!(
                "Π_k needs k ≤ {}, got a {}-form",
                self.n,
                alpha.degree()
            )));
        }
        contract_form(alpha, &self.pi)
    }

    fn check_top(&self, alpha: &AForm) -> Result<()> {
        if alpha.degree() + 1 != self.n {
            return Err(Error::DegreeMismatch(format!(
                "expected a {}-form, got degree {}",
                self.n - 1,
                alpha.degree()
            )));
        }
        Ok(())
    }

    /// ⟪α, β⟫ = L_{Πα}β − ι_{Πβ} d_Aα.
    pub fn leibniz_bracket(&self, alpha: &AForm, beta: &AForm) -> Result<AForm> {
        self.check_top(alpha)?;
        self.check_top(beta)?;
        let pa = self.pi_k(alpha)?;
        let pb = self.pi_k(beta)?;
        let l = self.alg.lie_derivative(&pa, beta)?;
        let i = contract_mv(&pb, &self.alg.d_a(alpha)?)?;
        Ok(l.sub(&i))
    }

    /// Default samples of degree n−1.
    pub fn default_samples(&self, level: SampleLevel) -> Vec<AForm> {
        sample_forms(self.rank(), self.alg.base_dim(), self.n - 1, level)
    }

    /// [Πα, Π]β = −Π(ι_{Πβ} d_Aα) on all ordered sample pairs.
    pub fn check_nambu_condition(&self, samples: &[AForm]) -> Result<CheckReport> {
        let mut rep = CheckReport::new("nambu_condition");
        let ctx = self.ctx();
        let mut pre = Vec::with_capacity(samples.len());
        for a in samples {
            self.check_top(a)?;
            let pa = self.pi_k(a)?;
            let br = self.alg.schouten_bracket(&pa, &self.pi)?;
            pre.push((pa, self.alg.d_a(a)?, br));
        }
        'outer: for (i, a) in samples.iter().enumerate() {
            for (j, b) in samples.iter().enumerate() {
                let lhs = contract_form(b, &pre[i].2)?;
                let inner = contract_mv(&pre[j].0, &pre[i].1)?;
                let rhs = self.pi_k(&inner)?.neg();
                let res = lhs.sub(&rhs);
                let go = rep.record(
                    res.is_zero(),
                    || format!("α = {}, β = {}", a.format(ctx), b.format(ctx)),
                    || res.format(ctx),
                );
                if !go {
                    break 'outer;
                }
            }
        }
        Ok(rep)
    }

    /// {f_1,…,f_n} = ⟨d_Af_1∧…∧d_Af_n, Π⟩.
    pub fn nambu_bracket(&self, fs: &[ScalarExpr]) -> Result<ScalarExpr> {
        if fs.len() != self.n {
            return Err(Error::DegreeMismatch(format!("bracket needs {} functions", self.n)));
        }
        let ds: Vec<AForm> = fs.iter().map(|f| self.alg.d_function(f)).collect();
        self.bracket_of_differentials(&ds)
    }

    fn bracket_of_differentials(&self, ds: &[AForm]) -> Result<ScalarExpr> {
        let mut w = AForm::scalar(self.rank(), ScalarExpr::one());
        for d in ds {
            w = w.wedge(d)?;
            if w.is_zero() {
                return Ok(ScalarExpr::zero());
            }
        }
        pairing(&w, &self.pi)
    }

    /// The fundamental identity on strictly increasing tuples of non-constant
    /// monomials of degree ≤ `degree_bound`. Constant arguments make both sides
    /// vanish, and both sides are alternating in the f's and in the g's.
    pub fn check_fundamental_identity(&self, degree_bound: u32) -> Result<CheckReport> {
        let mut rep = CheckReport::new("fundamental_identity");
        let ctx = self.ctx();
        let p = self.alg.base_dim();
        let monos: Vec<ScalarExpr> = (1..=degree_bound)
            .flat_map(|d| monomials_of_degree(p, d))
            .map(|m| ScalarExpr::from_poly(Polynomial::term(m, num_traits::One::one())))
            .collect();
        let dm: Vec<AForm> = monos.iter().map(|f| self.alg.d_function(f)).collect();
        let n = self.n;
        let f_tuples = increasing_tuples(monos.len(), n - 1);
        let g_tuples = increasing_tuples(monos.len(), n);
        if f_tuples.is_empty() || g_tuples.is_empty() {
            return Ok(rep.note("no non-constant monomial tuples within the bound; holds vacuously"));
        }
        let f_wedges: Vec<AForm> = f_tuples
            .iter()
            .map(|t| {
                let mut w = AForm::scalar(self.rank(), ScalarExpr::one());
                for &i in t {
                    w = w.wedge(&dm[i]).expect("rank");
                }
                w
            })
            .collect();
        // {f_1..f_{n−1}, g} with its differential, keyed by (f-tuple, monomial).
        let mut fg: HashMap<(usize, usize), (ScalarExpr, AForm)> = HashMap::new();
        let fdot = |fi: usize, d: &AForm| -> Result<ScalarExpr> { pairing(&f_wedges[fi].wedge(d)?, &self.pi) };
        'outer: for gt in &g_tuples {
            let gds: Vec<AForm> = gt.iter().map(|&i| dm[i].clone()).collect();
            let gbr = self.bracket_of_differentials(&gds)?;
            let dgbr = self.alg.d_function(&gbr);
            for (fi, ft) in f_tuples.iter().enumerate() {
                let lhs = fdot(fi, &dgbr)?;
                let mut rhs = ScalarExpr::zero();
                for (slot, &gi) in gt.iter().enumerate() {
                    let h = match fg.get(&(fi, gi)) {
                        Some(v) => v.clone(),
                        None => {
                            let v = fdot(fi, &dm[gi])?;
                            let dv = self.alg.d_function(&v);
                            fg.insert((fi, gi), (v.clone(), dv.clone()));
                            (v, dv)
                        }
                    };
                    if h.0.is_zero() {
                        continue;
                    }
                    let mut args = gds.clone();
                    args[slot] = h.1;
                    rhs += &self.bracket_of_differentials(&args)?;
                }
                let res = &lhs - &rhs;
                let go = rep.record(
                    res.is_zero(),
                    || {
                        let fs: Vec<String> = ft.iter().map(|&i| ctx.format(&monos[i])).collect();
                        let gs: Vec<String> = gt.iter().map(|&i| ctx.format(&monos[i])).collect();
                        format!("f = ({}), g = ({})", fs.join(", "), gs.join(", "))
                    },
                    || ctx.format(&res),
                );
                if !go {
                    break 'outer;
                }
            }
        }
        Ok(rep)
    }

    /// Π⟪α,β⟫ = [Πα, Πβ] on all sample pairs.
    pub fn check_morphism(&self, samples: &[AForm]) -> Result<CheckReport> {
        let mut rep = CheckReport::new("morphism");
        let ctx = self.ctx();
        let images: Vec<MultiVector> = samples.iter().map(|a| self.pi_k(a)).collect::<Result<_>>()?;
        'outer: for (i, a) in samples.iter().enumerate() {
            for (j, b) in samples.iter().enumerate() {
                let lhs = self.pi_k(&self.leibniz_bracket(a, b)?)?;
                let rhs = self.alg.bracket_sections(&images[i], &images[j])?;
                let res = lhs.sub(&rhs);
                let go = rep.record(
                    res.is_zero(),
                    || format!("α = {}, β = {}", a.format(ctx), b.format(ctx)),
                    || res.format(ctx),
                );
                if !go {
                    break 'outer;
                }
            }
        }
        Ok(rep)
    }

    /// Π evaluated at a point; `SingularPoint` if it vanishes there.
    pub fn value_at(&self, pt: &[Q]) -> Result<MultiVector> {
        let v = self.pi.evaluate(pt)?;
        if v.is_empty() {
            return Err(Error::SingularPoint);
        }
        Ok(MultiVector::from_coeffs(
            self.rank(),
            self.n,
            v.into_iter().map(|(m, c)| (m, ScalarExpr::constant(c))),
        ))
    }

    /// A basis of D(pt) = Π_{n−1}(Λ^{n−1}A*_pt), as constant sections.
    pub fn distribution_d(&self, pt: &[Q]) -> Result<Vec<MultiVector>> {
        let pv = self.value_at(pt)?;
        let m = self.rank();
        let vectors: Vec<Vec<Q>> = subsets(m, self.n - 1)
            .into_iter()
            .map(|mask| {
                let img = contract_form(&AForm::single(m, mask, ScalarExpr::one()), &pv).expect("degrees");
                (0..m)
                    .map(|i| img.get(1 << i).constant_value().expect("constant at a point"))
                    .collect()
            })
            .collect();
        let span = Subspace::span(m, &vectors);
        Ok(span
            .basis()
            .into_iter()
            .map(|row| {
                MultiVector::from_coeffs(
                    m,
                    1,
                    row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (1u32 << i, ScalarExpr::constant(c))),
                )
            })
            .collect())
    }

    /// Per point: whether Π is nonzero there and whether its value is decomposable.
    pub fn regularity_report(&self, pts: &[Vec<Q>]) -> Result<Vec<PointRegularity>> {
        pts.iter()
            .map(|pt| {
                let v = self.pi.evaluate(pt)?;
                Ok(PointRegularity {
                    point: pt.iter().map(crate::coeffring::format_rational).collect(),
                    regular: !v.is_empty(),
                    decomposable: crate::exterior::plucker_decomposable_at(&self.pi, pt)?,
                })
            })
            .collect()
    }

    /// Some coefficient of Π is a nonzero constant, so Π vanishes nowhere on the chart.
    pub fn regularity_certificate(&self) -> Option<u32> {
        self.pi
            .terms()
            .find(|(_, f)| f.constant_value().is_some_and(|c| !c.is_zero()))
            .map(|(m, _)| *m)
    }

    pub fn view(&self) -> NambuLeibnizView<'_> {
        NambuLeibnizView { nambu: self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRegularity {
    pub point: Vec<String>,
    pub regular: bool,
    pub decomposable: bool,
}

/// Strictly increasing index tuples of length k from 0..n.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A Leibniz algebroid given operationally: bracket, anchor and module structure.
pub trait LeibnizAlgebroid {
    type Section: Clone;

    fn ctx(&self) -> &RingContext;
    fn bracket(&self, a: &Self::Section, b: &Self::Section) -> Result<Self::Section>;
    /// a(s)(f).
    fn anchor_apply(&self, s: &Self::Section, f: &ScalarExpr) -> Result<ScalarExpr>;
    fn scale(&self, s: &Self::Section, f: &ScalarExpr) -> Self::Section;
    fn add(&self, a: &Self::Section, b: &Self::Section) -> Self::Section;
    fn neg(&self, a: &Self::Section) -> Self::Section;
    fn is_zero(&self, a: &Self::Section) -> bool;
    fn format(&self, a: &Self::Section) -> String;

    fn sub(&self, a: &Self::Section, b: &Self::Section) -> Self::Section {
        self.add(a, &self.neg(b))
    }
}

/// Λ^{n−1}A* with ⟪·,·⟫ and anchor a∘Π_{n−1}.
#[derive(Clone, Copy, Debug)]
pub struct NambuLeibnizView<'a> {
    pub nambu: &'a NambuStructure,
}

impl LeibnizAlgebroid for NambuLeibnizView<'_> {
    type Section = AForm;

    fn ctx(&self) -> &RingContext {
        self.nambu.ctx()
    }

    fn bracket(&self, a: &AForm, b: &AForm) -> Result<AForm> {
        self.nambu.leibniz_bracket(a, b)
    }

    fn anchor_apply(&self, s: &AForm, f: &ScalarExpr) -> Result<ScalarExpr> {
        self.nambu.alg.anchor_apply(&self.nambu.pi_k(s)?, f)
    }

    fn scale(&self, s: &AForm, f: &ScalarExpr) -> AForm {
        s.scale(f)
    }

    fn add(&self, a: &AForm, b: &AForm) -> AForm {
        a.add(b)
    }

    fn neg(&self, a: &AForm) -> AForm {
        a.neg()
    }

    fn is_zero(&self, a: &AForm) -> bool {
        a.is_zero()
    }

    fn format(&self, a: &AForm) -> String {
        a.format(self.ctx())
    }
}

/// Leibniz identity on all sample triples, module rule with coordinate
/// functions, and the anchor property on all pairs.
pub fn check_leibniz_axioms<L: LeibnizAlgebroid>(l: &L, samples: &[L::Section]) -> Result<Vec<CheckReport>> {
    let ctx = l.ctx();
    let n = samples.len();
    let mut pairs = Vec::with_capacity(n * n);
    for a in samples {
        for b in samples {
            pairs.push(l.bracket(a, b)?);
        }
    }
    let br = |i: usize, j: usize| &pairs[i * n + j];

    let mut ident = CheckReport::new("leibniz_identity");
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = l.bracket(&samples[x], br(y, z))?;
                let r1 = l.bracket(br(x, y), &samples[z])?;
                let r2 = l.bracket(&samples[y], br(x, z))?;
                let res = l.sub(&l.sub(&lhs, &r1), &r2);
                let go = ident.record(
                    l.is_zero(&res),
                    || format!("({}, {}, {})", l.format(&samples[x]), l.format(&samples[y]), l.format(&samples[z])),
                    || l.format(&res),
                );
                if !go {
                    break 'outer;
                }
            }
        }
    }

    let coords: Vec<ScalarExpr> = (0..ctx.nvars()).map(ScalarExpr::var).collect();
    let mut module = CheckReport::new("module_rule");
    'outer: for x in 0..n {
        for y in 0..n {
            for f in &coords {
                let lhs = l.bracket(&samples[x], &l.scale(&samples[y], f))?;
                let af = l.anchor_apply(&samples[x], f)?;
                let rhs = l.add(&l.scale(br(x, y), f), &l.scale(&samples[y], &af));
                let res = l.sub(&lhs, &rhs);
                let go = module.record(
                    l.is_zero(&res),
                    || format!("({}, {}), f = {}", l.format(&samples[x]), l.format(&samples[y]), ctx.format(f)),
                    || l.format(&res),
                );
                if !go {
                    break 'outer;
                }
            }
        }
    }

    let mut anchor = CheckReport::new("anchor_property");
    'outer: for x in 0..n {
        for y in 0..n {
            for f in &coords {
                let lhs = l.anchor_apply(br(x, y), f)?;
                let ay = l.anchor_apply(&samples[y], f)?;
                let ax = l.anchor_apply(&samples[x], f)?;
                let rhs = &l.anchor_apply(&samples[x], &ay)? - &l.anchor_apply(&samples[y], &ax)?;
                let res = &lhs - &rhs;
                let go = anchor.record(
                    res.is_zero(),
                    || format!("({}, {}) on {}", l.format(&samples[x]), l.format(&samples[y]), ctx.format(f)),
                    || ctx.format(&res),
                );
                if !go {
                    break 'outer;
                }
            }
        }
    }
    Ok(vec![ident, module, anchor])
}

/// Section X + ξ of A ⊕ A*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DorfmanSection {
    pub vector: MultiVector,
    pub form: AForm,
}

/// A ⊕ A* with ⟪X+ξ, Y+η⟫ = [X,Y] + L_Xη − ι_Y d_Aξ and anchor a(X).
#[derive(Clone, Debug)]
pub struct DorfmanAlgebroid {
    pub base: LieAlgebroid,
}

impl DorfmanAlgebroid {
    pub fn section(&self, vector: MultiVector, form: AForm) -> DorfmanSection {
        DorfmanSection { vector, form }
    }

    /// Frame sections e_i and e^i with their monomial multiples.
    pub fn default_samples(&self, level: SampleLevel) -> Vec<DorfmanSection> {
        let m = self.base.rank();
        let mut out = Vec::new();
        for f in sample_multipliers(self.base.base_dim(), level) {
            for i in 0..m {
                out.push(self.section(MultiVector::single(m, 1 << i, f.clone()), AForm::zero(m, 1)));
            }
            for i in 0..m {
                out.push(self.section(MultiVector::zero(m, 1), AForm::single(m, 1 << i, f.clone())));
            }
        }
        out
    }
}

impl LeibnizAlgebroid for DorfmanAlgebroid {
    type Section = DorfmanSection;

    fn ctx(&self) -> &RingContext {
        self.base.ctx()
    }

    fn bracket(&self, a: &DorfmanSection, b: &DorfmanSection) -> Result<DorfmanSection> {
        let v = self.base.bracket_sections(&a.vector, &b.vector)?;
        let l = self.base.lie_derivative(&a.vector, &b.form)?;
        let i = contract_mv(&b.vector, &self.base.d_a(&a.form)?)?;
        Ok(DorfmanSection { vector: v, form: l.sub(&i) })
    }

    fn anchor_apply(&self, s: &DorfmanSection, f: &ScalarExpr) -> Result<ScalarExpr> {
        self.base.anchor_apply(&s.vector, f)
    }

    fn scale(&self, s: &DorfmanSection, f: &ScalarExpr) -> DorfmanSection {
        DorfmanSection { vector: s.vector.scale(f), form: s.form.scale(f) }
    }

    fn add(&self, a: &DorfmanSection, b: &DorfmanSection) -> DorfmanSection {
        DorfmanSection { vector: a.vector.add(&b.vector), form: a.form.add(&b.form) }
    }

    fn neg(&self, a: &DorfmanSection) -> DorfmanSection {
        DorfmanSection { vector: a.vector.neg(), form: a.form.neg() }
    }

    fn is_zero(&self, a: &DorfmanSection) -> bool {
        a.vector.is_zero() && a.form.is_zero()
    }

    fn format(&self, a: &DorfmanSection) -> String {
        format!("({}) + ({})", a.vector.format(self.ctx()), a.form.format(self.ctx()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q;

    fn r3(pi_coeff: &str) -> NambuStructure {
        let alg = LieAlgebroid::tangent(RingContext::standard(3));
        let f = alg.ctx().parse(pi_coeff).unwrap();
        NambuStructure::new(alg, MultiVector::single(3, 0b111, f)).unwrap()
    }

    fn form(n: &NambuStructure, idx: &[usize], coeff: &str) -> AForm {
        AForm::basis(n.rank(), idx, n.ctx().parse(coeff).unwrap())
    }

    #[test]
    fn pi_k_examples() {
        let n = r3("1");
        let top = n.pi_k(&form(&n, &[0, 1, 2], "1")).unwrap();
        assert!(top.scalar_value().is_one());
        assert_eq!(n.pi_k(&form(&n, &[1, 2], "1")).unwrap(), MultiVector::single(3, 1, ScalarExpr::one()));
        let alg4 = LieAlgebroid::tangent(RingContext::standard(4));
        let n4 = NambuStructure::new(alg4, MultiVector::single(4, 0b0111, ScalarExpr::one())).unwrap();
        assert!(n4.pi_k(&AForm::single(4, 0b1000, ScalarExpr::one())).unwrap().is_zero());
    }

    #[test]
    fn rejects_low_order() {
        let alg = LieAlgebroid::tangent(RingContext::standard(3));
        let pi = MultiVector::single(3, 0b011, ScalarExpr::one());
        assert!(matches!(NambuStructure::new(alg, pi), Err(Error::InvalidNambu(_))));
    }

    #[test]
    fn bracket_examples() {
        let n = r3("1");
        assert!(n.leibniz_bracket(&form(&n, &[0, 1], "1"), &form(&n, &[1, 2], "1")).unwrap().is_zero());
        let b = n.leibniz_bracket(&form(&n, &[1, 2], "1"), &form(&n, &[0, 2], "x1")).unwrap();
        assert_eq!(b, form(&n, &[0, 2], "1"));
        let c = form(&n, &[1, 2], "1");
        assert_eq!(n.leibniz_bracket(&c, &form(&n, &[1, 2], "x1")).unwrap(), c);
    }

    #[test]
    fn nambu_condition_examples() {
        for coeff in ["1", "x1"] {
            let n = r3(coeff);
            let rep = n.check_nambu_condition(&n.default_samples(SampleLevel::Linear)).unwrap();
            assert!(rep.passed(), "{coeff}: {:?}", rep.witnesses);
        }
        let alg = LieAlgebroid::tangent(RingContext::standard(5));
        let pi = MultiVector::single(5, 0b00111, ScalarExpr::one()).add(&MultiVector::single(5, 0b11001, ScalarExpr::one()));
        let n5 = NambuStructure::new(alg, pi).unwrap();
        let rep = n5.check_nambu_condition(&n5.default_samples(SampleLevel::Linear)).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn fundamental_identity_examples() {
        let n = r3("1");
        assert!(n.check_fundamental_identity(2).unwrap().passed());
        assert!(n.check_fundamental_identity(0).unwrap().passed());
        assert_eq!(n.nambu_bracket(&[ScalarExpr::var(0), ScalarExpr::var(1), ScalarExpr::var(2)]).unwrap(), ScalarExpr::one());
    }

    #[test]
    fn distribution_examples() {
        let n = r3("1");
        assert_eq!(n.distribution_d(&[q(0), q(0), q(0)]).unwrap().len(), 3);
        let s = r3("x1");
        assert_eq!(s.distribution_d(&[q(0), q(1), q(2)]), Err(Error::SingularPoint));
        let rep = s.regularity_report(&[vec![q(0), q(1), q(1)], vec![q(2), q(0), q(0)]]).unwrap();
        assert!(!rep[0].regular && rep[1].regular && rep[0].decomposable);
    }
}
