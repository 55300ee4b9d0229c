//! Dense matrices over ℚ with exact row reduction.

use crate::coeffring::{gcd, Monomial, Polynomial, ScalarExpr, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = &out.data[r * other.cols + c] + a * b;
                        out.data[r * other.cols + c] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            if !inv.is_one() {
                for k in c..self.cols {
                    let v = self.get(r, k) * &inv;
                    self.set(r, k, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..self.cols {
                    let rv = self.get(r, k);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, k) - &f * rv;
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref().len()
    }

    /// Basis of {v : Av = 0}, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// A solution of Av = b with free variables set to zero, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Row-echelon basis of a subspace, used to reduce vectors modulo it.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    /// RREF rows with their pivot columns.
    rows: Vec<(usize, Vec<Q>)>,
}

impl Subspace {
    pub fn span(dim: usize, vectors: &[Vec<Q>]) -> Self {
        if vectors.is_empty() {
            return Subspace { dim, rows: Vec::new() };
        }
        let mut m = Matrix::from_rows(vectors.to_vec(), dim);
        let pivots = m.rref();
        let rows = pivots.iter().enumerate().map(|(r, &p)| (p, m.row(r).to_vec())).collect();
        Subspace { dim, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Reduces `v` so that it vanishes on every pivot column.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            let f = out[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, rv) in out.iter_mut().zip(row) {
                if !rv.is_zero() {
                    *o -= &f * rv;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Finds rational c with Σ_j c_j·columns[j][e] = target[e] for every e.
///
/// Each equation is split by exponential factor; within one factor the
/// rational coefficients are brought over a common denominator and compared
/// monomial by monomial.
pub fn solve_scalar_combination(columns: &[Vec<ScalarExpr>], target: &[ScalarExpr]) -> Option<Vec<Q>> {
    let ncols = columns.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (e, t) in target.iter().enumerate() {
        // h ↦ (column or target slot, RatFunc)
        let mut groups: BTreeMap<Polynomial, Vec<(usize, &crate::coeffring::RatFunc)>> = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (h, r) in col[e].terms() {
                groups.entry(h.clone()).or_default().push((j, r));
            }
        }
        for (h, r) in t.terms() {
            groups.entry(h.clone()).or_default().push((ncols, r));
        }
        for entries in groups.values() {
            let mut l = Polynomial::one();
            for (_, r) in entries {
                let g = gcd(&l, r.den());
                l = &l * &r.den().exact_div(&g).expect("gcd divides");
            }
            let mut by_mono: BTreeMap<Monomial, Vec<Q>> = BTreeMap::new();
            for (j, r) in entries {
                let p = r.num() * &l.exact_div(r.den()).expect("lcm is a multiple");
                for (m, c) in p.terms() {
                    let row = by_mono.entry(*m).or_insert_with(|| vec![Q::zero(); ncols + 1]);
                    row[*j] += c;
                }
            }
            rows.extend(by_mono.into_values());
        }
    }
    if rows.is_empty() {
        return Some(vec![Q::zero(); ncols]);
    }
    let a = Matrix::from_rows(rows.iter().map(|r| r[..ncols].to_vec()).collect(), ncols);
    let b: Vec<Q> = rows.iter().map(|r| r[ncols].clone()).collect();
    a.solve(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols)
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solving() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[q(3), q(1)]), Some(vec![q(2), q(1)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(b.solve(&[q(1), q(3)]), None);
    }

    #[test]
    fn scalar_combination() {
        let x = ScalarExpr::var(0);
        let ex = ScalarExpr::exp(Polynomial::var(0));
        let cols = vec![vec![x.clone()], vec![&x * &ex], vec![ScalarExpr::one()]];
        let t = vec![&(&x * &ex).scale(&q(3)) - &ScalarExpr::int(2)];
        assert_eq!(solve_scalar_combination(&cols, &t), Some(vec![q(0), q(3), q(-2)]));
        assert_eq!(solve_scalar_combination(&cols[..1], &[ex]), None);
    }

    #[test]
    fn subspace_reduction() {
        let s = Subspace::span(3, &[vec![q(1), q(1), q(0)]]);
        assert!(s.contains(&[q(2), q(2), q(0)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        assert_eq!(s.reduce(&[q(1), q(0), q(5)]), vec![q(0), q(-1), q(5)]);
    }
}
