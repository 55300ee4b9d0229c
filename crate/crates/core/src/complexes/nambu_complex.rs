use super::{
    delta_nu, matrix_of, multivector_weight, strata_range, stratified_weights, BettiTable, Direction,
    StratifiedComplex, StratumBasis, StratumComplex,
};
use crate::algebroid::rank_over_ring;
use crate::coeffring::{monomials_up_to, Polynomial, ScalarExpr, Q};
use crate::error::{Error, Result};
use crate::exterior::{pairing, sort_sign, subsets, AForm, MultiVector};
use crate::linalg::{solve_scalar_combination, Matrix, Subspace};
use crate::modular::{sign_pow, ModularData, Nullity, OrientationForm};
use crate::nambu::{increasing_tuples, NambuStructure};
use crate::report::CheckReport;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

fn weight_of_pi(n: &NambuStructure) -> Result<i64> {
    let weights = stratified_weights(n.algebroid())?;
    multivector_weight(weights, n.pi(), 1)?.ok_or_else(|| Error::InvalidNambu("Π is zero".into()))
}

fn require_regular(n: &NambuStructure) -> Result<()> {
    n.regularity_certificate().map(|_| ()).ok_or(Error::NotRegular)
}

/// One stratum of Γ(Λ^•A*)/ker Π_•.
#[derive(Clone, Debug)]
pub struct QuotientStratum {
    pub stratum: i64,
    pub bases: Vec<StratumBasis>,
    pub kernels: Vec<Subspace>,
    /// Basis positions spanning a complement of the kernel.
    pub complements: Vec<Vec<usize>>,
    /// Π_k as a matrix for k ≤ n.
    pub pi_matrices: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct NambuCochainComplex {
    pub complex: StratifiedComplex,
    pub strata: Vec<QuotientStratum>,
}

fn column_subset(m: &Matrix, cols: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(m.rows(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for r in 0..m.rows() {
            out.set(r, j, m.get(r, c).clone());
        }
    }
    out
}

fn column(m: &Matrix, c: usize) -> Vec<Q> {
    (0..m.rows()).map(|r| m.get(r, c).clone()).collect()
}

/// (Ω_Π^•, d̃_A) on form strata ≤ `max_stratum`.
pub fn build_nambu_cochain_complex(n: &NambuStructure, max_stratum: i64) -> Result<NambuCochainComplex> {
    let alg = n.algebroid();
    let weights = stratified_weights(alg)?;
    require_regular(n)?;
    let wpi = weight_of_pi(n)?;
    let m = n.rank();
    let order = n.order();
    let mut strata = Vec::new();
    let mut data = Vec::new();
    for w in strata_range(weights, m, m, -1, max_stratum) {
        let bases: Vec<StratumBasis> = (0..=m).map(|k| StratumBasis::new(weights, m, k, w, -1)).collect();
        let mut pi_matrices = Vec::new();
        let mut kernels = Vec::new();
        let mut complements = Vec::new();
        for k in 0..=m {
            let dim = bases[k].len();
            if k <= order {
                let target = StratumBasis::new(weights, m, order - k, w + wpi, 1);
                let pm = matrix_of(&bases[k], &target, m, |a: &AForm| n.pi_k(a))?;
                kernels.push(Subspace::span(dim, &pm.kernel()));
                pi_matrices.push(pm);
            } else {
                let all: Vec<Vec<Q>> = (0..dim)
                    .map(|i| {
                        let mut v = vec![Q::zero(); dim];
                        v[i] = Q::one();
                        v
                    })
                    .collect();
                kernels.push(Subspace::span(dim, &all));
            }
            let piv = kernels[k].pivots();
            complements.push((0..dim).filter(|c| !piv.contains(c)).collect::<Vec<_>>());
        }
        let mut diffs = Vec::new();
        for k in 0..=m {
            let qdim = complements[k].len();
            if k == m || complements[k].is_empty() {
                let rows = if k == m { 0 } else { complements[k + 1].len() };
                diffs.push(Matrix::zeros(rows, qdim));
                continue;
            }
            let d = matrix_of(&bases[k], &bases[k + 1], m, |a: &AForm| alg.d_a(a))?;
            for kv in kernels[k].basis() {
                if !kernels[k + 1].contains(&d.mul_vec(&kv)) {
                    return Err(Error::SubcomplexViolation(format!(
                        "d_A does not preserve ker Π_{k} in stratum {w}"
                    )));
                }
            }
            let mut dt = Matrix::zeros(complements[k + 1].len(), qdim);
            for (j, &c) in complements[k].iter().enumerate() {
                let red = kernels[k + 1].reduce(&column(&d, c));
                for (i, &r) in complements[k + 1].iter().enumerate() {
                    if !red[r].is_zero() {
                        dt.set(i, j, red[r].clone());
                    }
                }
            }
            diffs.push(dt);
        }
        strata.push(StratumComplex {
            stratum: w,
            dims: complements.iter().map(Vec::len).collect(),
            differential: diffs,
        });
        data.push(QuotientStratum { stratum: w, bases, kernels, complements, pi_matrices });
    }
    let complex = StratifiedComplex { direction: Direction::Cochain, strata };
    complex
        .check_composition_zero()
        .map_err(|w| Error::SubcomplexViolation(format!("d̃² ≠ 0 at {w}")))?;
    Ok(NambuCochainComplex { complex, strata: data })
}

fn require_polynomial_density(nu: &OrientationForm) -> Result<()> {
    if nu.twist().is_zero() {
        Ok(())
    } else {
        Err(Error::NotWeightHomogeneous("the orientation form carries an exponential factor".into()))
    }
}

/// (V^•, δ_ν) on the multivector strata u = w + wt(Π) for form strata w ≤ `max_stratum`.
///
/// V^0 is all functions, V^k = Π_{n−k}(Γ(Λ^{n−k}A*)) for 1 ≤ k ≤ n and V^k = 0 above n.
pub fn build_canonical_chain_complex(
    n: &NambuStructure,
    nu: &OrientationForm,
    max_stratum: i64,
) -> Result<StratifiedComplex> {
    let alg = n.algebroid();
    let weights = stratified_weights(alg)?;
    require_regular(n)?;
    require_polynomial_density(nu)?;
    let wpi = weight_of_pi(n)?;
    let m = n.rank();
    let order = n.order();
    let annihilators = ker_pi1_generators(n)?;
    let mut strata = Vec::new();
    for w in strata_range(weights, m, m, -1, max_stratum) {
        let u = w + wpi;
        let full: Vec<StratumBasis> = (0..=m).map(|k| StratumBasis::new(weights, m, k, u, 1)).collect();
        let mut v: Vec<Subspace> = Vec::new();
        for k in 0..=m {
            let dim = full[k].len();
            let span = if k == 0 {
                let all: Vec<Vec<Q>> = (0..dim)
                    .map(|i| {
                        let mut e = vec![Q::zero(); dim];
                        e[i] = Q::one();
                        e
                    })
                    .collect();
                Subspace::span(dim, &all)
            } else if k <= order {
                let src = StratumBasis::new(weights, m, order - k, w, -1);
                let pm = matrix_of(&src, &full[k], m, |a: &AForm| n.pi_k(a))?;
                let cols: Vec<Vec<Q>> = (0..pm.cols()).map(|c| column(&pm, c)).collect();
                Subspace::span(dim, &cols)
            } else {
                Subspace::span(dim, &[])
            };
            if k >= 1 {
                for row in span.basis() {
                    let p: MultiVector = full[k].combination(m, k, &row);
                    for a in &annihilators {
                        if !crate::exterior::contract_form(a, &p)?.is_zero() {
                            return Err(Error::SubcomplexViolation(format!(
                                "an element of V^{k} is not annihilated by ker Π_1 in stratum {u}"
                            )));
                        }
                    }
                }
            }
            v.push(span);
        }
        let mut diffs = vec![Matrix::zeros(0, v[0].dim())];
        for k in 1..=m {
            let mut dm = Matrix::zeros(v[k - 1].dim(), v[k].dim());
            let piv = v[k - 1].pivots();
            for (j, row) in v[k].basis().into_iter().enumerate() {
                let p: MultiVector = full[k].combination(m, k, &row);
                let img = full[k - 1].coordinates(&delta_nu(alg, nu, &p)?)?;
                if !v[k - 1].contains(&img) {
                    return Err(Error::SubcomplexViolation(format!(
                        "δ_ν leaves V^{} in stratum {u}",
                        k - 1
                    )));
                }
                for (i, &pc) in piv.iter().enumerate() {
                    if !img[pc].is_zero() {
                        dm.set(i, j, img[pc].clone());
                    }
                }
            }
            diffs.push(dm);
        }
        strata.push(StratumComplex { stratum: u, dims: v.iter().map(Subspace::dim).collect(), differential: diffs });
    }
    let complex = StratifiedComplex { direction: Direction::Chain, strata };
    complex
        .check_composition_zero()
        .map_err(|w| Error::SubcomplexViolation(format!("δ_ν² ≠ 0 at {w}")))?;
    Ok(complex)
}

/// Elements of ker Π_1 among 1-forms with constant or linear coefficients.
fn ker_pi1_generators(n: &NambuStructure) -> Result<Vec<AForm>> {
    let m = n.rank();
    let mut cols = Vec::new();
    let mut forms = Vec::new();
    for f in monomials_up_to(n.algebroid().base_dim(), 1) {
        let f = ScalarExpr::from_poly(Polynomial::term(f, Q::one()));
        for i in 0..m {
            let a = AForm::single(m, 1 << i, f.clone());
            let img = n.pi_k(&a)?;
            cols.push(subsets(m, n.order() - 1).into_iter().map(|s| img.get(s)).collect::<Vec<_>>());
            forms.push(a);
        }
    }
    // Kernel over ℚ of the ℚ-linear map on this finite family.
    let rows = cols.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let ids: Vec<usize> = (0..forms.len()).collect();
    for c in kernel_over_q(&cols, rows) {
        let mut a = AForm::zero(m, 1);
        for (&i, q) in ids.iter().zip(&c) {
            if !q.is_zero() {
                a = a.add(&forms[i].scale_q(q));
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// Rational relations Σ c_j cols[j] = 0 among columns of symbolic entries.
fn kernel_over_q(cols: &[Vec<ScalarExpr>], rows: usize) -> Vec<Vec<Q>> {
    let mut found: Vec<Vec<Q>> = Vec::new();
    // Grow the relation space one column at a time: column j is dependent on
    // the earlier independent ones iff the combination system is solvable.
    let mut independent: Vec<usize> = Vec::new();
    for j in 0..cols.len() {
        let basis: Vec<Vec<ScalarExpr>> = independent.iter().map(|&i| cols[i].clone()).collect();
        let target: Vec<ScalarExpr> = (0..rows).map(|r| cols[j][r].clone()).collect();
        match solve_scalar_combination(&basis, &target) {
            Some(c) => {
                let mut rel = vec![Q::zero(); cols.len()];
                for (&i, ci) in independent.iter().zip(&c) {
                    rel[i] = -ci.clone();
                }
                rel[j] = Q::one();
                found.push(rel);
            }
            None => independent.push(j),
        }
    }
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSubcomplexReport {
    pub formula: CheckReport,
    /// θ with Π_1(θ) = M̃, if one exists within the degree bound.
    pub preimage: Option<String>,
}

/// δ_ν(Π_kβ) = ι_βM̃ + (−1)^{n−1}Π_{k+1}(d_Aβ) on samples, and whether M̃ ∈ Π_1(Γ(A*))
/// with polynomial θ of degree ≤ `degree_bound`.
pub fn check_pi_subcomplex(
    n: &NambuStructure,
    nu: &OrientationForm,
    md: &ModularData,
    samples: &[AForm],
    degree_bound: u32,
) -> Result<PiSubcomplexReport> {
    let alg = n.algebroid();
    let ctx = n.ctx();
    let sign = ScalarExpr::int(sign_pow(n.order() - 1));
    let mut formula = CheckReport::new("pi_subcomplex_formula");
    for b in samples.iter().filter(|b| b.degree() < n.order()) {
        let lhs = delta_nu(alg, nu, &n.pi_k(b)?)?;
        let rhs = crate::exterior::contract_form(b, &md.m_tilde)?.add(&n.pi_k(&alg.d_a(b)?)?.scale(&sign));
        let res = lhs.sub(&rhs);
        if !formula.record(res.is_zero(), || b.format(ctx), || res.format(ctx)) {
            break;
        }
    }
    let m = n.rank();
    let mut thetas = Vec::new();
    for f in monomials_up_to(alg.base_dim(), degree_bound) {
        for i in 0..m {
            thetas.push(AForm::single(m, 1 << i, ScalarExpr::from_poly(Polynomial::term(f, Q::one()))));
        }
    }
    let masks = subsets(m, n.order() - 1);
    let columns: Vec<Vec<ScalarExpr>> = thetas
        .iter()
        .map(|t| Ok(masks.iter().map(|&s| n.pi_k(t).map(|x| x.get(s))).collect::<Result<Vec<_>>>()?))
        .collect::<Result<_>>()?;
    let target: Vec<ScalarExpr> = masks.iter().map(|&s| md.m_tilde.get(s)).collect();
    let preimage = solve_scalar_combination(&columns, &target).map(|c| {
        let mut th = AForm::zero(m, 1);
        for (t, q) in thetas.iter().zip(&c) {
            if !q.is_zero() {
                th = th.add(&t.scale_q(q));
            }
        }
        th.format(ctx)
    });
    Ok(PiSubcomplexReport { formula, preimage })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityRow {
    pub stratum: i64,
    pub degree: usize,
    pub nambu_cohomology: usize,
    pub canonical_homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub chain_map: CheckReport,
    pub dimensions: Option<CheckReport>,
    pub injectivity: Option<CheckReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<DualityRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// h_k(α) = exp(−g)Π_{n−k}(α) from Ω_Π^{n−k} to V^k.
pub fn duality_map(n: &NambuStructure, g: &ScalarExpr, alpha: &AForm) -> Result<MultiVector> {
    Ok(n.pi_k(alpha)?.scale(&exp_neg(g)?))
}

fn exp_neg(g: &ScalarExpr) -> Result<ScalarExpr> {
    let p = g
        .as_polynomial()
        .ok_or_else(|| Error::NotWeightHomogeneous("potential is not a polynomial".into()))?;
    Ok(ScalarExpr::exp(-&p))
}

pub fn duality_check(
    n: &NambuStructure,
    nu: &OrientationForm,
    nullity: &Nullity,
    max_stratum: i64,
    samples: &[AForm],
) -> Result<DualityReport> {
    let g = nullity.potential.as_ref().ok_or(Error::ModularClassNotNull)?;
    let alg = n.algebroid();
    let ctx = n.ctx();
    let order = n.order();
    let sign = ScalarExpr::int(sign_pow(order - 1));
    let mut chain_map = CheckReport::new("duality_chain_map");
    for b in samples.iter().filter(|b| b.degree() < order) {
        let lhs = duality_map(n, g, &alg.d_a(b)?)?;
        let rhs = delta_nu(alg, nu, &duality_map(n, g, b)?)?.scale(&sign);
        let res = lhs.sub(&rhs);
        if !chain_map.record(res.is_zero(), || b.format(ctx), || res.format(ctx)) {
            break;
        }
    }
    let mut report = DualityReport { chain_map, dimensions: None, injectivity: None, rows: Vec::new(), notes: Vec::new() };
    if !g.is_constant() {
        report.notes.push("dimension comparison skipped: the potential is not constant".into());
        return Ok(report);
    }
    let built = build_nambu_cochain_complex(n, max_stratum)
        .and_then(|q| Ok((build_canonical_chain_complex(n, nu, max_stratum)?, q)));
    let (canon, quot) = match built {
        Ok(v) => v,
        Err(Error::NotWeightHomogeneous(why)) => {
            report.notes.push(format!("dimension comparison skipped: {why}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let wpi = weight_of_pi(n)?;
    let hq: BettiTable = quot.complex.betti();
    let hc: BettiTable = canon.betti();
    let mut dims = CheckReport::new("duality_dimensions");
    for row in &hq.rows {
        for k in 0..=order {
            let a = row.dims[k];
            let b = hc.get(row.stratum + wpi, order - k);
            report.rows.push(DualityRow { stratum: row.stratum, degree: k, nambu_cohomology: a, canonical_homology: b });
            dims.record(
                a == b,
                || format!("stratum {}, degree {k}", row.stratum),
                || format!("{a} vs {b}"),
            );
        }
    }
    let mut inj = CheckReport::new("duality_injective");
    for s in &quot.strata {
        for (k, pm) in s.pi_matrices.iter().enumerate() {
            let sub = column_subset(pm, &s.complements[k]);
            let r = sub.rank();
            inj.record(
                r == s.complements[k].len(),
                || format!("stratum {}, degree {k}", s.stratum),
                || format!("rank {r} on a quotient of dimension {}", s.complements[k].len()),
            );
        }
    }
    report.dimensions = Some(dims);
    report.injectivity = Some(inj);
    Ok(report)
}

/// Betti tables of the canonical complex for ν and c·ν agree.
pub fn check_rescaling_betti(n: &NambuStructure, nu: &OrientationForm, c: &Q, max_stratum: i64) -> Result<CheckReport> {
    let scaled = OrientationForm::new(nu.rank(), nu.constant() * c, nu.twist().clone())?;
    let a = build_canonical_chain_complex(n, nu, max_stratum)?.betti();
    let b = build_canonical_chain_complex(n, &scaled, max_stratum)?.betti();
    let mut rep = CheckReport::new("rescaling_betti");
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        rep.record(ra == rb, || format!("stratum {}", ra.stratum), || format!("{:?} vs {:?}", ra.dims, rb.dims));
    }
    Ok(rep)
}

fn determinant(rows: &[Vec<ScalarExpr>]) -> ScalarExpr {
    let n = rows.len();
    if n == 0 {
        return ScalarExpr::one();
    }
    let mut total = ScalarExpr::zero();
    for (j, a) in rows[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<ScalarExpr>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = a * &determinant(&minor);
        if j % 2 == 0 {
            total += &t;
        } else {
            total -= &t;
        }
    }
    total
}

/// A frame Y_1..Y_n of D over the chart, with a nonvanishing minor for solving.
struct DFrame {
    frame: Vec<MultiVector>,
    cols: Vec<usize>,
    det: ScalarExpr,
}

impl DFrame {
    fn new(n: &NambuStructure) -> Result<Self> {
        let m = n.rank();
        let order = n.order();
        let row = |y: &MultiVector| -> Vec<ScalarExpr> { (0..m).map(|i| y.get(1 << i)).collect() };
        let mut frame: Vec<MultiVector> = Vec::new();
        for mask in subsets(m, order - 1) {
            let y = n.pi_k(&AForm::single(m, mask, ScalarExpr::one()))?;
            let mut rows: Vec<Vec<ScalarExpr>> = frame.iter().map(row).collect();
            rows.push(row(&y));
            if rank_over_ring(rows) > frame.len() {
                frame.push(y);
            }
            if frame.len() == order {
                break;
            }
        }
        if frame.len() < order {
            return Err(Error::NotRegular);
        }
        for cols in subsets(m, order) {
            let cols = crate::exterior::mask_indices(cols);
            let minor: Vec<Vec<ScalarExpr>> = frame.iter().map(|y| cols.iter().map(|&c| y.get(1 << c)).collect()).collect();
            let det = determinant(&minor);
            if !det.is_zero() {
                return Ok(DFrame { frame, cols, det });
            }
        }
        Err(Error::NotRegular)
    }

    /// Coefficients of z in the frame by Cramer's rule on the chosen columns.
    fn solve(&self, z: &MultiVector) -> Result<Vec<ScalarExpr>> {
        (0..self.frame.len())
            .map(|l| {
                let minor: Vec<Vec<ScalarExpr>> = self
                    .frame
                    .iter()
                    .enumerate()
                    .map(|(i, y)| {
                        let src = if i == l { z } else { y };
                        self.cols.iter().map(|&c| src.get(1 << c)).collect()
                    })
                    .collect();
                determinant(&minor).checked_div(&self.det)
            })
            .collect()
    }
}

/// Values α(Y_{t_1},…,Y_{t_k}) on increasing frame tuples t.
fn restrict(frame: &[MultiVector], alpha: &AForm) -> Result<Vec<ScalarExpr>> {
    let k = alpha.degree();
    increasing_tuples(frame.len(), k)
        .into_iter()
        .map(|t| {
            let mut w = MultiVector::scalar(alpha.rank(), ScalarExpr::one());
            for &i in &t {
                w = w.wedge(&frame[i])?;
            }
            pairing(alpha, &w)
        })
        .collect()
}

fn tuple_value(vals: &[ScalarExpr], tuples: &[Vec<usize>], args: &[usize]) -> ScalarExpr {
    let Some((s, mask)) = sort_sign(args) else {
        return ScalarExpr::zero();
    };
    let sorted = crate::exterior::mask_indices(mask);
    let idx = tuples.iter().position(|t| *t == sorted).expect("tuple present");
    if s > 0 {
        vals[idx].clone()
    } else {
        -vals[idx].clone()
    }
}

/// Restriction to D: kernel classes restrict to zero, and d_A intertwines
/// with the differential of D computed from frame brackets.
pub fn check_restriction_iso(n: &NambuStructure, samples: &[AForm]) -> Result<Vec<CheckReport>> {
    require_regular(n)?;
    let alg = n.algebroid();
    let ctx = n.ctx();
    let fr = DFrame::new(n)?;
    let r = fr.frame.len();
    let mut invol = CheckReport::new("d_involutive");
    let mut coeffs = vec![vec![Vec::new(); r]; r];
    for a in 0..r {
        for b in 0..r {
            let z = alg.bracket_sections(&fr.frame[a], &fr.frame[b])?;
            let c = fr.solve(&z)?;
            let mut back = MultiVector::zero(n.rank(), 1);
            for (ci, y) in c.iter().zip(&fr.frame) {
                back = back.add(&y.scale(ci));
            }
            let res = back.sub(&z);
            invol.record(res.is_zero(), || format!("[Y{}, Y{}]", a + 1, b + 1), || res.format(ctx));
            coeffs[a][b] = c;
        }
    }

    let mut kernel = CheckReport::new("restriction_kernel");
    let mut inter = CheckReport::new("restriction_intertwines");
    let m = n.rank();
    for alpha in samples {
        let k = alpha.degree();
        if k > n.order() {
            continue;
        }
        let in_kernel = n.pi_k(alpha)?.is_zero();
        let res = restrict(&fr.frame, alpha)?;
        let restricts_to_zero = res.iter().all(ScalarExpr::is_zero);
        kernel.record(
            in_kernel == restricts_to_zero,
            || alpha.format(ctx),
            || format!("Π_k(α) = 0 is {in_kernel}, restriction vanishes is {restricts_to_zero}"),
        );
        // Shifting by kernel elements leaves the restriction unchanged.
        for mask in subsets(m, k) {
            let kappa = AForm::single(m, mask, ScalarExpr::one());
            if !n.pi_k(&kappa)?.is_zero() {
                continue;
            }
            let shifted = restrict(&fr.frame, &alpha.add(&kappa))?;
            kernel.record(shifted == res, || format!("{} + {}", alpha.format(ctx), kappa.format(ctx)), || "restriction changed".into());
        }
        if k >= n.order() {
            continue;
        }
        let lhs = restrict(&fr.frame, &alg.d_a(alpha)?)?;
        let tk = increasing_tuples(r, k);
        for (pos, t) in increasing_tuples(r, k + 1).into_iter().enumerate() {
            let mut v = ScalarExpr::zero();
            for i in 0..=k {
                let mut rest = t.clone();
                rest.remove(i);
                let f = tuple_value(&res, &tk, &rest);
                let term = alg.anchor_apply(&fr.frame[t[i]], &f)?;
                if i % 2 == 0 {
                    v += &term;
                } else {
                    v -= &term;
                }
            }
            for i in 0..=k {
                for j in i + 1..=k {
                    let mut rest: Vec<usize> = t.clone();
                    rest.remove(j);
                    rest.remove(i);
                    let mut acc = ScalarExpr::zero();
                    for (l, c) in coeffs[t[i]][t[j]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut args = vec![l];
                        args.extend(&rest);
                        acc += &(c * &tuple_value(&res, &tk, &args));
                    }
                    if (i + j) % 2 == 0 {
                        v += &acc;
                    } else {
                        v -= &acc;
                    }
                }
            }
            let diff = &lhs[pos] - &v;
            if !inter.record(diff.is_zero(), || format!("{} on {:?}", alpha.format(ctx), t), || ctx.format(&diff)) {
                break;
            }
        }
    }
    Ok(vec![invol, kernel, inter])
}
