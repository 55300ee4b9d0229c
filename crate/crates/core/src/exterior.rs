//! Sparse multivectors and forms over a frame e_1..e_m, indexed by bitmasks.
//!
//! Contractions follow the insertion-order convention
//! `ι_{X_1∧…∧X_i} = ι_{X_i}∘…∘ι_{X_1}` (the first factor is inserted first),
//! which is characterized by the sign-free adjunctions
//! ⟨ι_ξφ, η⟩ = ⟨φ, ξ∧η⟩ and ⟨ψ, ι_φξ⟩ = ⟨φ∧ψ, ξ⟩.

use crate::coeffring::{RingContext, ScalarExpr, Q};
use crate::error::{Error, Result};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::marker::PhantomData;

pub trait Kind: Copy + Clone + std::fmt::Debug + PartialEq + Eq + std::hash::Hash + Default {
    const NAME: &'static str;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vectors;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Forms;

impl Kind for Vectors {
    const NAME: &'static str = "multivector";
}

impl Kind for Forms {
    const NAME: &'static str = "form";
}

/// Homogeneous element of Λ^k of the frame (or coframe), coefficients keyed by index mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded<K: Kind> {
    rank: usize,
    degree: usize,
    coeffs: BTreeMap<u32, ScalarExpr>,
    kind: PhantomData<K>,
}

pub type MultiVector = Graded<Vectors>;
pub type AForm = Graded<Forms>;

/// Indices (0-based, ascending) of a mask.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn indices_mask(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sign of e_A ∧ e_B against e_{A∪B}; zero when the sets meet.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `idx`, with the resulting mask; `None` on repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(i32, u32)> {
    let mut mask = 0u32;
    let mut sign = 1;
    for &i in idx {
        if mask & (1 << i) != 0 {
            return None;
        }
        if (mask >> (i + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << i;
    }
    Some((sign, mask))
}

/// All k-subsets of {0..m} as masks, in lexicographic order of their index lists.
pub fn subsets(m: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, m: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..m {
            if m - i < k {
                break;
            }
            rec(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, 0, &mut out);
    }
    out
}

fn scale_sign(e: &ScalarExpr, s: i32) -> ScalarExpr {
    if s > 0 {
        e.clone()
    } else {
        -e
    }
}

impl<K: Kind> Graded<K> {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Graded {
            rank,
            degree,
            coeffs: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn scalar(rank: usize, f: ScalarExpr) -> Self {
        Self::single(rank, 0, f)
    }

    pub fn single(rank: usize, mask: u32, f: ScalarExpr) -> Self {
        let mut g = Self::zero(rank, mask.count_ones() as usize);
        if !f.is_zero() {
            g.coeffs.insert(mask, f);
        }
        g
    }

    /// f·e_{i_1}∧…∧e_{i_k} for arbitrary 0-based indices (sorted with sign).
    pub fn basis(rank: usize, idx: &[usize], f: ScalarExpr) -> Self {
        match sort_sign(idx) {
            Some((s, mask)) => Self::single(rank, mask, scale_sign(&f, s)),
            None => Self::zero(rank, idx.len()),
        }
    }

    pub fn from_coeffs(rank: usize, degree: usize, coeffs: impl IntoIterator<Item = (u32, ScalarExpr)>) -> Self {
        let mut g = Self::zero(rank, degree);
        for (mask, f) in coeffs {
            debug_assert_eq!(mask.count_ones() as usize, degree);
            g.add_term(mask, &f);
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, mask: u32) -> ScalarExpr {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, ScalarExpr> {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &ScalarExpr)> {
        self.coeffs.iter()
    }

    /// Value of a degree-0 element.
    pub fn scalar_value(&self) -> ScalarExpr {
        self.get(0)
    }

    pub fn add_term(&mut self, mask: u32, f: &ScalarExpr) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&mask) {
            Some(e) => {
                *e += f;
                if e.is_zero() {
                    self.coeffs.remove(&mask);
                }
            }
            None => {
                self.coeffs.insert(mask, f.clone());
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} of degree {} vs {}",
                K::NAME,
                self.degree,
                other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, f) in &other.coeffs {
            out.add_term(*m, f);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Panicking addition for internal use where shapes are known to agree.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shape mismatch in graded addition")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("shape mismatch in graded subtraction")
    }

    pub fn neg(&self) -> Self {
        self.map(|f| -f)
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        if f.is_zero() {
            return Self::zero(self.rank, self.degree);
        }
        self.map(|c| c * f)
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.degree);
        }
        self.map(|f| f.scale(c))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = Self::zero(self.rank, self.degree);
        for (m, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(*m, v);
            }
        }
        out
    }

    pub fn try_map(&self, f: impl Fn(&ScalarExpr) -> Result<ScalarExpr>) -> Result<Self> {
        let mut out = Self::zero(self.rank, self.degree);
        for (m, c) in &self.coeffs {
            let v = f(c)?;
            if !v.is_zero() {
                out.coeffs.insert(*m, v);
            }
        }
        Ok(out)
    }

    /// Exterior product; degrees beyond the rank give zero.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = Self::zero(self.rank, self.degree + other.degree);
        for (a, fa) in &self.coeffs {
            for (b, fb) in &other.coeffs {
                let s = wedge_sign(*a, *b);
                if s != 0 {
                    out.add_term(a | b, &scale_sign(&(fa * fb), s));
                }
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at a rational point.
    pub fn evaluate(&self, pt: &[Q]) -> Result<BTreeMap<u32, Q>> {
        let mut out = BTreeMap::new();
        for (m, f) in &self.coeffs {
            let v = f.evaluate(pt)?;
            if !v.is_zero() {
                out.insert(*m, v);
            }
        }
        Ok(out)
    }

    pub fn components(&self, ctx: &RingContext) -> Vec<Component> {
        self.coeffs
            .iter()
            .map(|(m, f)| Component {
                indices: mask_indices(*m).into_iter().map(|i| i + 1).collect(),
                coeff: ctx.format(f),
            })
            .collect()
    }

    /// Human-readable rendering with 1-based indices.
    pub fn format(&self, ctx: &RingContext) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.components(ctx)
            .into_iter()
            .map(|c| {
                let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
                format!("[{}]: {}", idx.join(","), c.coeff)
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Rebuilds from 1-based components.
    pub fn from_components(rank: usize, degree: usize, comps: &[Component], ctx: &RingContext) -> Result<Self> {
        let mut out = Self::zero(rank, degree);
        for c in comps {
            if c.indices.len() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "component {:?} in a {} of degree {degree}",
                    c.indices,
                    K::NAME
                )));
            }
            if let Some(&bad) = c.indices.iter().find(|&&i| i == 0 || i > rank) {
                return Err(Error::RankMismatch(bad, rank));
            }
            let idx: Vec<usize> = c.indices.iter().map(|i| i - 1).collect();
            let g = Self::basis(rank, &idx, ctx.parse(&c.coeff)?);
            out = out.add(&g);
        }
        Ok(out)
    }
}

/// A serialized coefficient: 1-based frame indices and an expression string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub indices: Vec<usize>,
    pub coeff: String,
}

/// Determinant pairing ⟨e^I, e_J⟩ = δ_IJ.
pub fn pairing(phi: &AForm, xi: &MultiVector) -> Result<ScalarExpr> {
    if phi.rank != xi.rank {
        return Err(Error::RankMismatch(phi.rank, xi.rank));
    }
    if phi.degree != xi.degree {
        return Err(Error::DegreeMismatch(format!(
            "pairing a {}-form with a {}-vector",
            phi.degree, xi.degree
        )));
    }
    let mut acc = ScalarExpr::zero();
    for (m, f) in &phi.coeffs {
        if let Some(g) = xi.coeffs.get(m) {
            acc += &(f * g);
        }
    }
    Ok(acc)
}

fn contract_generic<A: Kind, B: Kind>(x: &Graded<A>, y: &Graded<B>) -> Result<Graded<B>> {
    if x.rank != y.rank {
        return Err(Error::RankMismatch(x.rank, y.rank));
    }
    if x.degree > y.degree {
        return Err(Error::DegreeMismatch(format!(
            "contracting degree {} into degree {}",
            x.degree, y.degree
        )));
    }
    let mut out = Graded::<B>::zero(y.rank, y.degree - x.degree);
    for (s, f) in &x.coeffs {
        for (t, g) in &y.coeffs {
            if s & t != *s {
                continue;
            }
            let rest = t & !s;
            let sign = wedge_sign(*s, rest);
            out.add_term(rest, &scale_sign(&(f * g), sign));
        }
    }
    Ok(out)
}

/// ι_ξ φ for a multivector ξ of degree i ≤ deg φ.
pub fn contract_mv(xi: &MultiVector, phi: &AForm) -> Result<AForm> {
    contract_generic(xi, phi)
}

/// ι_φ ξ for a form φ of degree i ≤ deg ξ.
pub fn contract_form(phi: &AForm, xi: &MultiVector) -> Result<MultiVector> {
    contract_generic(phi, xi)
}

/// Plücker test at a point: ι_φξ(pt) ∧ ξ(pt) = 0 for every basis (k−1)-form φ.
pub fn plucker_decomposable_at(xi: &MultiVector, pt: &[Q]) -> Result<bool> {
    let k = xi.degree;
    if k <= 1 || k >= xi.rank {
        // Still surface poles at the point.
        xi.evaluate(pt)?;
        return Ok(true);
    }
    let val = xi.evaluate(pt)?;
    let xv = MultiVector::from_coeffs(
        xi.rank,
        k,
        val.into_iter().map(|(m, c)| (m, ScalarExpr::constant(c))),
    );
    for phi_mask in subsets(xi.rank, k - 1) {
        let phi = AForm::single(xi.rank, phi_mask, ScalarExpr::one());
        let v = contract_form(&phi, &xv)?;
        if !v.wedge(&xv)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
