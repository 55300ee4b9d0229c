//! Lie algebroids given by a global frame: anchor matrix and structure functions.

use crate::coeffring::{Monomial, Polynomial, RingContext, ScalarExpr};
use crate::error::{Error, Result};
use crate::exterior::{mask_indices, sort_sign, subsets, AForm, MultiVector};
use serde::{Deserialize, Serialize};

/// Integer weights for stratified computations: coordinate x_j has weight
/// `coordinates[j]`, frame section e_i has weight `sections[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub coordinates: Vec<i64>,
    pub sections: Vec<i64>,
}

impl Weights {
    pub fn monomial(&self, m: &Monomial) -> i64 {
        self.coordinates
            .iter()
            .enumerate()
            .map(|(j, w)| w * m.exponent(j) as i64)
            .sum()
    }

    /// Weight of a polynomial if all its terms agree; zero has every weight.
    pub fn poly(&self, p: &Polynomial) -> Option<Option<i64>> {
        let mut w = None;
        for (m, _) in p.terms() {
            let wm = self.monomial(m);
            match w {
                None => w = Some(wm),
                Some(v) if v != wm => return None,
                _ => {}
            }
        }
        Some(w)
    }

    /// Weight of a polynomial `ScalarExpr`; `Err` if not a homogeneous polynomial.
    pub fn scalar(&self, e: &ScalarExpr) -> std::result::Result<Option<i64>, String> {
        let p = e
            .as_polynomial()
            .ok_or_else(|| "coefficient is not a polynomial".to_string())?;
        self.poly(&p).ok_or_else(|| "coefficient mixes weights".to_string())
    }

    /// Σ_{i∈mask} ε_i.
    pub fn sections_sum(&self, mask: u32) -> i64 {
        mask_indices(mask).iter().map(|&i| self.sections[i]).sum()
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebroid {
    ctx: RingContext,
    rank: usize,
    /// anchor[i][j]: coefficient of ∂/∂x_j in a(e_i).
    anchor: Vec<Vec<ScalarExpr>>,
    /// brackets[i][j] = [e_i, e_j].
    brackets: Vec<Vec<MultiVector>>,
    weights: Option<Weights>,
}

/// Result of [`LieAlgebroid::check_lie_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub jacobi_ok: bool,
    pub anchor_morphism_ok: bool,
    pub leibniz_rule_ok: bool,
    pub counterexamples: Vec<AxiomCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCounterexample {
    pub axiom: String,
    /// 1-based frame indices (and, for the Leibniz rule, the test function).
    pub indices: Vec<usize>,
    pub residual: String,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.jacobi_ok && self.anchor_morphism_ok && self.leibniz_rule_ok
    }
}

impl LieAlgebroid {
    /// `structure[i][j][k]` = c_ij^k. The table must be antisymmetric in (i, j).
    pub fn new(
        ctx: RingContext,
        anchor: Vec<Vec<ScalarExpr>>,
        structure: Vec<Vec<Vec<ScalarExpr>>>,
        weights: Option<Weights>,
    ) -> Result<Self> {
        let rank = anchor.len();
        let p = ctx.nvars();
        if rank == 0 || rank > 16 {
            return Err(Error::InvalidAlgebroid(format!("rank must be in 1..=16, got {rank}")));
        }
        if let Some(row) = anchor.iter().find(|r| r.len() != p) {
            return Err(Error::InvalidAlgebroid(format!(
                "anchor rows need {p} entries, found {}",
                row.len()
            )));
        }
        if structure.len() != rank
            || structure.iter().any(|r| r.len() != rank || r.iter().any(|c| c.len() != rank))
        {
            return Err(Error::InvalidAlgebroid(format!("structure table must be {rank}×{rank}×{rank}")));
        }
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    if structure[i][j][k] != -&structure[j][i][k] {
                        return Err(Error::InvalidAlgebroid(format!(
                            "c[{}][{}][{}] = {} is not the negative of c[{}][{}][{}] = {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            ctx.format(&structure[i][j][k]),
                            j + 1,
                            i + 1,
                            k + 1,
                            ctx.format(&structure[j][i][k]),
                        )));
                    }
                }
            }
        }
        let brackets = structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        MultiVector::from_coeffs(rank, 1, c.iter().enumerate().map(|(k, f)| (1u32 << k, f.clone())))
                    })
                    .collect()
            })
            .collect();
        let alg = LieAlgebroid { ctx, rank, anchor, brackets, weights: None };
        if let Some(w) = weights {
            alg.check_weights(&w)?;
            return Ok(LieAlgebroid { weights: Some(w), ..alg });
        }
        Ok(alg)
    }

    /// Tangent algebroid of the chart: a(e_i) = ∂/∂x_i, zero brackets.
    /// Weights: coordinates 1, frame −1.
    pub fn tangent(ctx: RingContext) -> Self {
        let p = ctx.nvars();
        let anchor = (0..p)
            .map(|i| (0..p).map(|j| ScalarExpr::int((i == j) as i64)).collect())
            .collect();
        let zero = vec![vec![vec![ScalarExpr::zero(); p]; p]; p];
        let weights = Weights { coordinates: vec![1; p], sections: vec![-1; p] };
        Self::new(ctx, anchor, zero, Some(weights)).expect("tangent algebroid is valid")
    }

    /// A Lie algebra viewed as an algebroid over a point, from constants c_ij^k.
    pub fn point(structure: Vec<Vec<Vec<ScalarExpr>>>) -> Result<Self> {
        let rank = structure.len();
        let weights = Weights { coordinates: vec![], sections: vec![0; rank] };
        Self::new(RingContext::standard(0), vec![vec![]; rank], structure, Some(weights))
    }

    fn check_weights(&self, w: &Weights) -> Result<()> {
        if w.coordinates.len() != self.ctx.nvars() || w.sections.len() != self.rank {
            return Err(Error::InvalidAlgebroid("weights must cover every coordinate and frame section".into()));
        }
        let bad = |what: String, why: String| Error::NotWeightHomogeneous(format!("{what}: {why}"));
        for i in 0..self.rank {
            for j in 0..self.ctx.nvars() {
                let want = w.sections[i] + w.coordinates[j];
                match w.scalar(&self.anchor[i][j]) {
                    Ok(Some(v)) if v != want => {
                        return Err(bad(format!("anchor entry ({},{})", i + 1, j + 1), format!("weight {v}, expected {want}")))
                    }
                    Err(e) => return Err(bad(format!("anchor entry ({},{})", i + 1, j + 1), e)),
                    _ => {}
                }
            }
            for j in 0..self.rank {
                for (kmask, c) in self.brackets[i][j].terms() {
                    let k = kmask.trailing_zeros() as usize;
                    let want = w.sections[i] + w.sections[j] - w.sections[k];
                    match w.scalar(c) {
                        Ok(Some(v)) if v != want => {
                            return Err(bad(
                                format!("structure function c[{}][{}][{}]", i + 1, j + 1, k + 1),
                                format!("weight {v}, expected {want}"),
                            ))
                        }
                        Err(e) => return Err(bad(format!("structure function c[{}][{}][{}]", i + 1, j + 1, k + 1), e)),
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base_dim(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn weights(&self) -> Option<&Weights> {
        self.weights.as_ref()
    }

    pub fn anchor_matrix(&self) -> &[Vec<ScalarExpr>] {
        &self.anchor
    }

    pub fn structure(&self, i: usize, j: usize) -> &MultiVector {
        &self.brackets[i][j]
    }

    /// The frame section e_i with coefficient f.
    pub fn section(&self, i: usize, f: ScalarExpr) -> MultiVector {
        MultiVector::single(self.rank, 1 << i, f)
    }

    fn check_rank(&self, r: usize) -> Result<()> {
        if r != self.rank {
            return Err(Error::RankMismatch(r, self.rank));
        }
        Ok(())
    }

    /// a(e_i)(f).
    pub fn anchor_basis(&self, i: usize, f: &ScalarExpr) -> ScalarExpr {
        let mut acc = ScalarExpr::zero();
        for (j, a) in self.anchor[i].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.partial_derivative(j);
            if !d.is_zero() {
                acc += &(a * &d);
            }
        }
        acc
    }

    /// a(X)(f) for a section X.
    pub fn anchor_apply(&self, x: &MultiVector, f: &ScalarExpr) -> Result<ScalarExpr> {
        self.check_rank(x.rank())?;
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch(format!("anchor of a {}-vector", x.degree())));
        }
        if self.base_dim() == 0 || f.is_constant() {
            return Ok(ScalarExpr::zero());
        }
        let grads: Vec<ScalarExpr> = (0..self.base_dim()).map(|j| f.partial_derivative(j)).collect();
        let mut acc = ScalarExpr::zero();
        for (mask, xi) in x.terms() {
            let i = mask.trailing_zeros() as usize;
            let mut inner = ScalarExpr::zero();
            for (j, a) in self.anchor[i].iter().enumerate() {
                if !a.is_zero() && !grads[j].is_zero() {
                    inner += &(a * &grads[j]);
                }
            }
            if !inner.is_zero() {
                acc += &(xi * &inner);
            }
        }
        Ok(acc)
    }

    /// [X, Y] for sections, extended from the frame by the Leibniz rule.
    pub fn bracket_sections(&self, x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
        self.check_rank(x.rank())?;
        self.check_rank(y.rank())?;
        if x.degree() != 1 || y.degree() != 1 {
            return Err(Error::DegreeMismatch("section bracket needs degree-1 arguments".into()));
        }
        let mut out = MultiVector::zero(self.rank, 1);
        for (mi, xi) in x.terms() {
            let i = mi.trailing_zeros() as usize;
            for (mj, yj) in y.terms() {
                let j = mj.trailing_zeros() as usize;
                let c = &self.brackets[i][j];
                if !c.is_zero() {
                    out = out.add(&c.scale(&(xi * yj)));
                }
            }
        }
        for (mj, yj) in y.terms() {
            out.add_term(*mj, &self.anchor_apply(x, yj)?);
        }
        for (mi, xi) in x.terms() {
            out.add_term(*mi, &-self.anchor_apply(y, xi)?);
        }
        Ok(out)
    }

    /// φ(e_{args[0]}, …) for a form with arbitrary ordered frame arguments.
    fn eval_basis(phi: &AForm, args: &[usize]) -> ScalarExpr {
        match sort_sign(args) {
            Some((s, mask)) => {
                let v = phi.get(mask);
                if s > 0 {
                    v
                } else {
                    -v
                }
            }
            None => ScalarExpr::zero(),
        }
    }

    /// The Lie algebroid differential by the alternating-sum formula.
    pub fn d_a(&self, phi: &AForm) -> Result<AForm> {
        self.check_rank(phi.rank())?;
        let k = phi.degree();
        let mut out = AForm::zero(self.rank, k + 1);
        if k + 1 > self.rank || phi.is_zero() {
            return Ok(out);
        }
        for jmask in subsets(self.rank, k + 1) {
            let idx = mask_indices(jmask);
            let mut acc = ScalarExpr::zero();
            if self.base_dim() > 0 {
                for (r, &jr) in idx.iter().enumerate() {
                    let v = phi.get(jmask & !(1 << jr));
                    if v.is_zero() {
                        continue;
                    }
                    let t = self.anchor_basis(jr, &v);
                    if r % 2 == 0 {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
            }
            for r in 0..idx.len() {
                for s in r + 1..idx.len() {
                    let c = &self.brackets[idx[r]][idx[s]];
                    if c.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = idx.iter().enumerate().filter(|(t, _)| *t != r && *t != s).map(|(_, &v)| v).collect();
                    let mut args = Vec::with_capacity(k);
                    args.push(0);
                    args.extend_from_slice(&rest);
                    let mut inner = ScalarExpr::zero();
                    for (lmask, cl) in c.terms() {
                        args[0] = lmask.trailing_zeros() as usize;
                        let v = Self::eval_basis(phi, &args);
                        if !v.is_zero() {
                            inner += &(cl * &v);
                        }
                    }
                    if (r + s) % 2 == 0 {
                        acc += &inner;
                    } else {
                        acc -= &inner;
                    }
                }
            }
            out.add_term(jmask, &acc);
        }
        Ok(out)
    }

    /// d_A f for a function.
    pub fn d_function(&self, f: &ScalarExpr) -> AForm {
        self.d_a(&AForm::scalar(self.rank, f.clone())).expect("rank matches")
    }

    /// (L_Xφ)(Y_1..Y_k) = a(X)(φ(Y_1..Y_k)) − Σ_r φ(Y_1,..,[X,Y_r],..,Y_k).
    pub fn lie_derivative(&self, x: &MultiVector, phi: &AForm) -> Result<AForm> {
        self.check_rank(x.rank())?;
        self.check_rank(phi.rank())?;
        let k = phi.degree();
        let frame_brackets: Vec<MultiVector> = (0..self.rank)
            .map(|j| self.bracket_sections(x, &self.section(j, ScalarExpr::one())))
            .collect::<Result<_>>()?;
        let mut out = AForm::zero(self.rank, k);
        for jmask in subsets(self.rank, k) {
            let idx = mask_indices(jmask);
            let mut acc = self.anchor_apply(x, &phi.get(jmask))?;
            for (r, &jr) in idx.iter().enumerate() {
                let z = &frame_brackets[jr];
                let mut args = idx.clone();
                for (lmask, zl) in z.terms() {
                    args[r] = lmask.trailing_zeros() as usize;
                    let v = Self::eval_basis(phi, &args);
                    if !v.is_zero() {
                        acc -= &(zl * &v);
                    }
                }
            }
            out.add_term(jmask, &acc);
        }
        Ok(out)
    }

    /// Generalized Schouten bracket of multivectors of degrees p and q (p + q ≥ 1).
    ///
    /// For decomposable arguments with the coefficient carried by the first factor,
    /// [X_1∧…∧X_p, Y_1∧…∧Y_q] = Σ (−1)^{i+j} [X_i, Y_j]∧X_1…X̂_i…X_p∧Y_1…Ŷ_j…Y_q,
    /// with [P, g] = Σ_i (−1)^{p−i} a(X_i)(g) X̂_i and [g, Q] = Σ_j (−1)^j a(Y_j)(g) Ŷ_j.
    /// On sections and functions this is [X, Y] and [X, f] = a(X)f.
    pub fn schouten_bracket(&self, p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
        self.check_rank(p.rank())?;
        self.check_rank(q.rank())?;
        let (dp, dq) = (p.degree(), q.degree());
        if dp + dq == 0 {
            return Err(Error::DegreeMismatch("Schouten bracket of two functions".into()));
        }
        let mut out = MultiVector::zero(self.rank, dp + dq - 1);
        if dp + dq - 1 > self.rank {
            return Ok(out);
        }
        let one = ScalarExpr::one();
        for (s, f) in p.terms() {
            let sidx = mask_indices(*s);
            for (t, g) in q.terms() {
                let tidx = mask_indices(*t);
                if dp == 0 {
                    for (j, &tj) in tidx.iter().enumerate() {
                        let a = self.anchor_basis(tj, f);
                        if a.is_zero() {
                            continue;
                        }
                        let v = &a * g;
                        // j is 0-based, so (−1)^{j+1}.
                        out.add_term(t & !(1 << tj), &if j % 2 == 1 { v } else { -v });
                    }
                    continue;
                }
                if dq == 0 {
                    for (i, &si) in sidx.iter().enumerate() {
                        let a = self.anchor_basis(si, g);
                        if a.is_zero() {
                            continue;
                        }
                        let v = &a * f;
                        // (−1)^{p−i} with 1-based i.
                        out.add_term(s & !(1 << si), &if (dp - i - 1) % 2 == 0 { v } else { -v });
                    }
                    continue;
                }
                for (i, &si) in sidx.iter().enumerate() {
                    let xi = self.section(si, if i == 0 { f.clone() } else { one.clone() });
                    let rest_x = MultiVector::single(self.rank, s & !(1 << si), if i == 0 { one.clone() } else { f.clone() });
                    for (j, &tj) in tidx.iter().enumerate() {
                        let yj = self.section(tj, if j == 0 { g.clone() } else { one.clone() });
                        let rest_y =
                            MultiVector::single(self.rank, t & !(1 << tj), if j == 0 { one.clone() } else { g.clone() });
                        let br = self.bracket_sections(&xi, &yj)?;
                        if br.is_zero() {
                            continue;
                        }
                        let term = br.wedge(&rest_x)?.wedge(&rest_y)?;
                        out = if (i + j) % 2 == 0 { out.add(&term) } else { out.sub(&term) };
                    }
                }
            }
        }
        Ok(out)
    }

    /// Jacobi on frame triples, anchor morphism on coordinates, Leibniz rule with f ∈ {1, x_j}.
    pub fn check_lie_axioms(&self) -> AxiomReport {
        let ctx = &self.ctx;
        let mut rep = AxiomReport {
            jacobi_ok: true,
            anchor_morphism_ok: true,
            leibniz_rule_ok: true,
            counterexamples: Vec::new(),
        };
        let e = |i: usize| self.section(i, ScalarExpr::one());
        let br = |x: &MultiVector, y: &MultiVector| self.bracket_sections(x, y).expect("frame sections");
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                for k in j + 1..self.rank {
                    let t1 = br(&e(i), &br(&e(j), &e(k)));
                    let t2 = br(&e(j), &br(&e(k), &e(i)));
                    let t3 = br(&e(k), &br(&e(i), &e(j)));
                    let res = t1.add(&t2).add(&t3);
                    if !res.is_zero() {
                        rep.jacobi_ok = false;
                        rep.counterexamples.push(AxiomCounterexample {
                            axiom: "jacobi".into(),
                            indices: vec![i + 1, j + 1, k + 1],
                            residual: res.format(ctx),
                        });
                    }
                }
            }
        }
        let coords: Vec<ScalarExpr> = (0..self.base_dim()).map(ScalarExpr::var).collect();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let bij = br(&e(i), &e(j));
                for (l, xl) in coords.iter().enumerate() {
                    let lhs = self.anchor_apply(&bij, xl).unwrap();
                    let rhs = &self.anchor_basis(i, &self.anchor_basis(j, xl)) - &self.anchor_basis(j, &self.anchor_basis(i, xl));
                    let res = &lhs - &rhs;
                    if !res.is_zero() {
                        rep.anchor_morphism_ok = false;
                        rep.counterexamples.push(AxiomCounterexample {
                            axiom: "anchor_morphism".into(),
                            indices: vec![i + 1, j + 1, l + 1],
                            residual: ctx.format(&res),
                        });
                    }
                }
            }
        }
        let tests: Vec<ScalarExpr> = std::iter::once(ScalarExpr::one()).chain(coords.iter().cloned()).collect();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for (fi, f) in tests.iter().enumerate() {
                    let lhs = br(&e(i), &self.section(j, f.clone()));
                    let rhs = br(&e(i), &e(j)).scale(f).add(&self.section(j, self.anchor_basis(i, f)));
                    let res = lhs.sub(&rhs);
                    if !res.is_zero() {
                        rep.leibniz_rule_ok = false;
                        rep.counterexamples.push(AxiomCounterexample {
                            axiom: "leibniz_rule".into(),
                            indices: vec![i + 1, j + 1, fi],
                            residual: res.format(ctx),
                        });
                    }
                }
            }
        }
        rep
    }

    /// Whether d_A x_1, …, d_A x_p span the dual frame, i.e. the anchor matrix
    /// has rank m over the fraction field of the coefficient ring.
    pub fn spanning_hypothesis(&self) -> bool {
        rank_over_ring(self.anchor.clone()) == self.rank
    }

    /// Push-forward of a multivector to the base: Λ^k a applied to P.
    pub fn push_forward(&self, p: &MultiVector) -> Result<MultiVector> {
        self.check_rank(p.rank())?;
        let base = self.base_dim();
        let k = p.degree();
        let mut out = MultiVector::zero(base, k);
        if k > base {
            return Ok(out);
        }
        let images: Vec<MultiVector> = (0..self.rank)
            .map(|i| MultiVector::from_coeffs(base, 1, self.anchor[i].iter().enumerate().map(|(j, a)| (1u32 << j, a.clone()))))
            .collect();
        for (s, f) in p.terms() {
            let mut acc = MultiVector::scalar(base, f.clone());
            for i in mask_indices(*s) {
                acc = acc.wedge(&images[i])?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

/// Rank of a matrix over the fraction field of the (integral) coefficient ring,
/// by fraction-free elimination.
pub fn rank_over_ring(mut rows: Vec<Vec<ScalarExpr>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot_row = rows[rank].clone();
        let pv = pivot_row[col].clone();
        for r in rank + 1..rows.len() {
            let a = rows[r][col].clone();
            if a.is_zero() {
                continue;
            }
            for c in col..ncols {
                rows[r][c] = &(&pv * &rows[r][c]) - &(&a * &pivot_row[c]);
            }
        }
        rank += 1;
    }
    rank
}
