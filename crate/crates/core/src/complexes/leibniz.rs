use super::{BettiTable, Direction, StratifiedComplex, StratumComplex};
use crate::coeffring::{format_rational, Q};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use num_traits::{One, Zero};

/// A finite-dimensional Leibniz algebra: ⟪e_i, e_j⟫ = Σ_k c[i][j][k] e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    pub structure: Vec<Vec<Vec<Q>>>,
}

/// ρ_i acting on E, one square matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl LeibnizAlgebra {
    pub fn new(structure: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let m = structure.len();
        if structure.iter().any(|r| r.len() != m || r.iter().any(|c| c.len() != m)) {
            return Err(Error::NotLeibniz("structure table is not m×m×m".into()));
        }
        let l = LeibnizAlgebra { structure };
        l.check_identity()?;
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let m = self.dim();
        let mut out = vec![Q::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// ⟪x,⟪y,z⟫⟫ = ⟪⟪x,y⟫,z⟫ + ⟪y,⟪x,z⟫⟫ on basis triples.
    fn check_identity(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let r1 = self.bracket(&self.bracket(&x, &y), &z);
                    let r2 = self.bracket(&y, &self.bracket(&x, &z));
                    let res: Vec<Q> = lhs.iter().zip(&r1).zip(&r2).map(|((a, b), c)| a - b - c).collect();
                    if res.iter().any(|v| !v.is_zero()) {
                        let s: Vec<String> = res.iter().map(format_rational).collect();
                        return Err(Error::NotLeibniz(format!(
                            "(e{}, e{}, e{}) leaves residual [{}]",
                            i + 1,
                            j + 1,
                            k + 1,
                            s.join(", ")
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-dimensional trivial representation.
    pub fn trivial_rep(&self) -> Representation {
        Representation { dim: 1, matrices: vec![Matrix::zeros(1, 1); self.dim()] }
    }

    /// ρ_x y = ⟪x, y⟫.
    pub fn adjoint_rep(&self) -> Representation {
        let m = self.dim();
        let matrices = (0..m)
            .map(|i| {
                let mut a = Matrix::zeros(m, m);
                for j in 0..m {
                    for k in 0..m {
                        a.set(k, j, self.structure[i][j][k].clone());
                    }
                }
                a
            })
            .collect();
        Representation { dim: m, matrices }
    }

    /// ρ_iρ_j − ρ_jρ_i = ρ_{⟪e_i,e_j⟫}.
    pub fn check_representation(&self, rep: &Representation) -> Result<()> {
        let m = self.dim();
        if rep.matrices.len() != m || rep.matrices.iter().any(|a| a.rows() != rep.dim || a.cols() != rep.dim) {
            return Err(Error::NotRepresentation("matrix count or size does not match".into()));
        }
        for i in 0..m {
            for j in 0..m {
                let lhs = rep.matrices[i].mul(&rep.matrices[j]);
                let rl = rep.matrices[j].mul(&rep.matrices[i]);
                for r in 0..rep.dim {
                    for c in 0..rep.dim {
                        let mut rhs = Q::zero();
                        for k in 0..m {
                            rhs += &self.structure[i][j][k] * rep.matrices[k].get(r, c);
                        }
                        if lhs.get(r, c) - rl.get(r, c) != rhs {
                            return Err(Error::NotRepresentation(format!("fails on (e{}, e{})", i + 1, j + 1)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn tuple_index(m: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * m + i)
}

/// Cochains are all multilinear maps L^{⊗k} → E; the coboundary is
/// (dφ)(X_1..X_{k+1}) = Σ_r (−1)^{r+1} ρ_{X_r}φ(..X̂_r..)
///   + Σ_{r<s} (−1)^r φ(..X̂_r.., ⟪X_r,X_s⟫ in slot s, ..).
/// Degrees 0..=max_degree are kept; the last differential targets degree max_degree+1.
pub fn leibniz_complex(l: &LeibnizAlgebra, rep: &Representation, max_degree: usize) -> Result<StratifiedComplex> {
    l.check_representation(rep)?;
    let m = l.dim();
    let e = rep.dim;
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for k in 0..=max_degree {
        let src = m.pow(k as u32) * e;
        let dst = m.pow(k as u32 + 1) * e;
        dims.push(src);
        let mut d = Matrix::zeros(dst, src);
        for t in tuples(m, k + 1) {
            let row0 = tuple_index(m, &t) * e;
            for r in 0..=k {
                let sign = if r % 2 == 0 { Q::one() } else { -Q::one() };
                let mut rest = t.clone();
                let xr = rest.remove(r);
                let col0 = tuple_index(m, &rest) * e;
                let rho = &rep.matrices[xr];
                for a in 0..e {
                    for b in 0..e {
                        let v = rho.get(a, b);
                        if !v.is_zero() {
                            let cur = d.get(row0 + a, col0 + b) + &sign * v;
                            d.set(row0 + a, col0 + b, cur);
                        }
                    }
                }
                for s in r + 1..=k {
                    // 1-based sign (−1)^r with r+1 in place of r.
                    let sign = if r % 2 == 0 { -Q::one() } else { Q::one() };
                    for (lidx, c) in l.structure[xr][t[s]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut args = rest.clone();
                        args[s - 1] = lidx;
                        let col0 = tuple_index(m, &args) * e;
                        for a in 0..e {
                            let cur = d.get(row0 + a, col0 + a) + &sign * c;
                            d.set(row0 + a, col0 + a, cur);
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    Ok(StratifiedComplex {
        direction: Direction::Cochain,
        strata: vec![StratumComplex { stratum: 0, dims, differential: diffs }],
    })
}

/// dim HL^k for k ≤ max_degree.
pub fn leibniz_cohomology(l: &LeibnizAlgebra, rep: &Representation, max_degree: usize) -> Result<BettiTable> {
    let c = leibniz_complex(l, rep, max_degree)?;
    c.check_composition_zero().map_err(|w| Error::NotRepresentation(format!("d² ≠ 0 at {w}")))?;
    Ok(c.betti())
}
