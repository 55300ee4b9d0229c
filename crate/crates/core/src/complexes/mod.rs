//! Exact (co)homology of weight-stratified complexes.
//!
//! A weight-homogeneous differential preserves the total weight of
//! x^a e^I (Σa·w − Σ_I ε) or x^a e_S (Σa·w + Σ_S ε), and every weight
//! stratum is finite-dimensional when coordinate weights are positive.

mod delta;
mod leibniz;
mod nambu_complex;

pub use delta::*;
pub use leibniz::*;
pub use nambu_complex::*;

use crate::algebroid::{LieAlgebroid, Weights};
use crate::coeffring::{Monomial, Polynomial, ScalarExpr, Q};
use crate::error::{Error, Result};
use crate::exterior::{subsets, Graded, Kind};
use crate::linalg::Matrix;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Cochain,
    Chain,
}

/// One stratum: spaces C_0..C_top and differentials between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumComplex {
    pub stratum: i64,
    pub dims: Vec<usize>,
    /// `differential[k]` maps C_k to C_{k+1} (cochain) or C_{k−1} (chain);
    /// rows index the target.
    pub differential: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedComplex {
    pub direction: Direction,
    pub strata: Vec<StratumComplex>,
}

impl StratifiedComplex {
    /// Whether consecutive differentials compose to zero; reports the first offender.
    pub fn check_composition_zero(&self) -> std::result::Result<(), String> {
        for s in &self.strata {
            let top = s.dims.len();
            for k in 0..top {
                let next = match self.direction {
                    Direction::Cochain if k + 1 < top => k + 1,
                    Direction::Chain if k >= 1 => k - 1,
                    _ => continue,
                };
                let prod = s.differential[next].mul(&s.differential[k]);
                if !prod.is_zero() {
                    return Err(format!("stratum {}, degree {k}", s.stratum));
                }
            }
        }
        Ok(())
    }

    pub fn betti(&self) -> BettiTable {
        let top = self.strata.first().map_or(0, |s| s.dims.len());
        let rows = self
            .strata
            .iter()
            .map(|s| {
                let ranks: Vec<usize> = s.differential.iter().map(Matrix::rank).collect();
                let dims = (0..s.dims.len())
                    .map(|k| {
                        let incoming = match self.direction {
                            Direction::Cochain if k >= 1 => ranks[k - 1],
                            Direction::Chain if k + 1 < s.dims.len() => ranks[k + 1],
                            _ => 0,
                        };
                        s.dims[k] - ranks[k] - incoming
                    })
                    .collect();
                BettiRow { stratum: s.stratum, dims }
            })
            .collect();
        BettiTable { degrees: top, rows }
    }
}

pub fn betti(c: &StratifiedComplex) -> BettiTable {
    c.betti()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub stratum: i64,
    pub dims: Vec<usize>,
}

/// Homology dimensions per (stratum, degree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// Number of degrees, 0..degrees.
    pub degrees: usize,
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    pub fn get(&self, stratum: i64, k: usize) -> usize {
        self.rows
            .iter()
            .find(|r| r.stratum == stratum)
            .and_then(|r| r.dims.get(k).copied())
            .unwrap_or(0)
    }

    /// Sum over strata, per degree.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.degrees];
        for r in &self.rows {
            for (k, d) in r.dims.iter().enumerate() {
                t[k] += d;
            }
        }
        t
    }
}

/// The weights of the algebroid, after checking coordinates weigh positively.
pub(crate) fn stratified_weights(alg: &LieAlgebroid) -> Result<&Weights> {
    let w = alg
        .weights()
        .ok_or_else(|| Error::NotWeightHomogeneous("no weights declared".into()))?;
    if w.coordinates.iter().any(|&c| c <= 0) {
        return Err(Error::NotWeightHomogeneous("coordinate weights must be positive".into()));
    }
    Ok(w)
}

/// Monomials of exact weight `target` for positive coordinate weights.
pub fn monomials_of_weight(coords: &[i64], target: i64) -> Vec<Monomial> {
    fn rec(coords: &[i64], j: usize, left: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if j == coords.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        let mut e = 0u32;
        while e as i64 * coords[j] <= left {
            exps.push(e);
            rec(coords, j + 1, left - e as i64 * coords[j], exps, out);
            exps.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if target >= 0 {
        rec(coords, 0, target, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// A basis of one graded piece of a stratum: x^a times a frame element.
#[derive(Clone, Debug)]
pub struct StratumBasis {
    pub elements: Vec<(Monomial, u32)>,
    index: HashMap<(Monomial, u32), usize>,
}

impl StratumBasis {
    /// Basis of degree-k elements of total weight `w`. `sign` is −1 for forms
    /// (frame element e^I weighs −Σ_I ε) and +1 for multivectors.
    pub fn new(weights: &Weights, rank: usize, k: usize, w: i64, sign: i64) -> Self {
        let mut elements = Vec::new();
        for mask in subsets(rank, k) {
            let frame = sign * weights.sections_sum(mask);
            for m in monomials_of_weight(&weights.coordinates, w - frame) {
                elements.push((m, mask));
            }
        }
        let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        StratumBasis { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element<K: Kind>(&self, rank: usize, i: usize) -> Graded<K> {
        let (m, mask) = self.elements[i];
        Graded::single(rank, mask, ScalarExpr::from_poly(Polynomial::term(m, Q::one())))
    }

    /// Coordinates of a graded element; `NotWeightHomogeneous` if it leaves the stratum.
    pub fn coordinates<K: Kind>(&self, x: &Graded<K>) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.len()];
        for (mask, f) in x.terms() {
            let p = f
                .as_polynomial()
                .ok_or_else(|| Error::NotWeightHomogeneous("coefficient is not a polynomial".into()))?;
            for (m, c) in p.terms() {
                let i = self
                    .index
                    .get(&(*m, *mask))
                    .ok_or_else(|| Error::NotWeightHomogeneous("a term leaves its weight stratum".into()))?;
                v[*i] += c;
            }
        }
        Ok(v)
    }

    pub fn combination<K: Kind>(&self, rank: usize, k: usize, v: &[Q]) -> Graded<K> {
        let mut by_mask: BTreeMap<u32, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (c, (m, mask)) in v.iter().zip(&self.elements) {
            if !c.is_zero() {
                by_mask.entry(*mask).or_default().push((*m, c.clone()));
            }
        }
        Graded::from_coeffs(
            rank,
            k,
            by_mask.into_iter().map(|(mask, t)| (mask, ScalarExpr::from_poly(Polynomial::from_terms(t)))),
        )
    }
}

/// Matrix of a linear map given on basis elements, columns indexed by `src`.
pub(crate) fn matrix_of<K: Kind, L: Kind>(
    src: &StratumBasis,
    dst: &StratumBasis,
    rank: usize,
    f: impl Fn(&Graded<K>) -> Result<Graded<L>>,
) -> Result<Matrix> {
    let mut m = Matrix::zeros(dst.len(), src.len());
    for j in 0..src.len() {
        let img = f(&src.element(rank, j))?;
        for (i, c) in dst.coordinates(&img)?.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    Ok(m)
}

/// Weight of a homogeneous multivector, or `None` for zero.
pub fn multivector_weight<K: Kind>(weights: &Weights, x: &Graded<K>, sign: i64) -> Result<Option<i64>> {
    let mut w = None;
    for (mask, f) in x.terms() {
        let fw = weights.scalar(f).map_err(Error::NotWeightHomogeneous)?;
        let Some(fw) = fw else { continue };
        let total = fw + sign * weights.sections_sum(*mask);
        match w {
            None => w = Some(total),
            Some(v) if v != total => return Err(Error::NotWeightHomogeneous("mixed weights".into())),
            _ => {}
        }
    }
    Ok(w)
}

/// Smallest possible total weight of a degree-k element (monomial weight 0).
pub(crate) fn min_weight(weights: &Weights, rank: usize, k: usize, sign: i64) -> i64 {
    subsets(rank, k)
        .into_iter()
        .map(|m| sign * weights.sections_sum(m))
        .min()
        .unwrap_or(0)
}

/// Strata that can be nonempty in degrees 0..=top, capped at `max`.
pub(crate) fn strata_range(weights: &Weights, rank: usize, top: usize, sign: i64, max: i64) -> Vec<i64> {
    let lo = (0..=top).map(|k| min_weight(weights, rank, k, sign)).min().unwrap_or(0);
    (lo..=max).collect()
}

/// The full complex (Γ(Λ^•A*), d_A) on strata ≤ `max_stratum`.
pub fn build_algebroid_complex(alg: &LieAlgebroid, max_stratum: i64) -> Result<StratifiedComplex> {
    let weights = stratified_weights(alg)?;
    let m = alg.rank();
    let mut strata = Vec::new();
    for w in strata_range(weights, m, m, -1, max_stratum) {
        let bases: Vec<StratumBasis> = (0..=m).map(|k| StratumBasis::new(weights, m, k, w, -1)).collect();
        let mut diffs = Vec::new();
        for k in 0..=m {
            if k == m {
                diffs.push(Matrix::zeros(0, bases[k].len()));
            } else {
                diffs.push(matrix_of(&bases[k], &bases[k + 1], m, |x| alg.d_a(x))?);
            }
        }
        strata.push(StratumComplex { stratum: w, dims: bases.iter().map(|b| b.len()).collect(), differential: diffs });
    }
    Ok(StratifiedComplex { direction: Direction::Cochain, strata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::RingContext;

    fn so3() -> LieAlgebroid {
        let z = ScalarExpr::zero;
        let mut c = vec![vec![vec![z(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = ScalarExpr::one();
            c[j][i][k] = ScalarExpr::int(-1);
        }
        LieAlgebroid::point(c).unwrap()
    }

    #[test]
    fn weight_enumeration() {
        assert_eq!(monomials_of_weight(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_weight(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_weight(&[], 0), vec![Monomial::ONE]);
        assert!(monomials_of_weight(&[1], -1).is_empty());
    }

    #[test]
    fn de_rham_strata() {
        let alg = LieAlgebroid::tangent(RingContext::standard(3));
        let c = build_algebroid_complex(&alg, 4).unwrap();
        c.check_composition_zero().unwrap();
        let s0 = c.strata.iter().find(|s| s.stratum == 0).unwrap();
        assert_eq!(s0.dims, vec![1, 0, 0, 0]);
        let s3 = c.strata.iter().find(|s| s.stratum == 3).unwrap();
        assert_eq!(s3.dims, vec![10, 18, 9, 1]);
        assert_eq!(c.betti().totals(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn chevalley_eilenberg_so3() {
        let c = build_algebroid_complex(&so3(), 0).unwrap();
        assert_eq!(c.strata.len(), 1);
        assert_eq!(c.betti().totals(), vec![1, 0, 0, 1]);
    }
}
