//! The framed McKay quiver lattice `Z^I`, `I = {inf, 0, 1, .., r}`.
//!
//! A [`DimVector`] stores the framing coordinate at index 0 and vertex `i` of
//! the affine diagram at index `i + 1`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{graded_lex, pairing, RootSystemData};

/// An integer vector indexed by `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zeros(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Framing coordinate.
    pub fn inf(&self) -> i64 {
        self.0[0]
    }

    /// Coordinate on affine vertex `i` (0 is the trivial representation).
    pub fn at(&self, i: usize) -> i64 {
        self.0[i + 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&DimVector> for i64 {
    type Output = DimVector;
    fn mul(self, o: &DimVector) -> DimVector {
        DimVector(o.0.iter().map(|a| self * a).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i == 1 {
                write!(f, ";")?;
            } else if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Root data of `Gamma` together with the framing and the integer `n`.
#[derive(Debug, Clone)]
pub struct FramedLattice {
    pub root_data: RootSystemData,
    pub n: i64,
    /// `C = 2 Id - A` on `I`.
    pub cartan_framed: Vec<Vec<i64>>,
}

/// JSON form of a list of lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootListReport {
    pub legend: Vec<String>,
    pub roots: Vec<Vec<i64>>,
}

impl FramedLattice {
    pub fn new(root_data: RootSystemData, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInstance(format!("n must be at least 1, got {n}")));
        }
        let r = root_data.rank;
        let mut c = vec![vec![0i64; r + 2]; r + 2];
        c[0][0] = 2;
        c[0][1] = -1;
        c[1][0] = -1;
        for i in 0..=r {
            for j in 0..=r {
                c[i + 1][j + 1] = root_data.cartan_affine[i][j];
            }
        }
        Ok(FramedLattice { root_data, n, cartan_framed: c })
    }

    /// Length of vectors indexed by `I`.
    pub fn dim(&self) -> usize {
        self.root_data.rank + 2
    }

    pub fn rank(&self) -> usize {
        self.root_data.rank
    }

    pub fn legend(&self) -> Vec<String> {
        let mut l = vec!["inf".to_string()];
        l.extend((0..=self.rank()).map(|i| i.to_string()));
        l
    }

    pub fn rho_inf(&self) -> DimVector {
        let mut v = DimVector::zeros(self.dim());
        v.0[0] = 1;
        v
    }

    /// Simple root at affine vertex `i`.
    pub fn rho(&self, i: usize) -> DimVector {
        let mut v = DimVector::zeros(self.dim());
        v.0[i + 1] = 1;
        v
    }

    pub fn delta(&self) -> DimVector {
        let mut v = DimVector::zeros(self.dim());
        v.0[1..].copy_from_slice(&self.root_data.delta);
        v
    }

    /// `v = rho_inf + n delta`.
    pub fn v(&self) -> DimVector {
        &self.rho_inf() + &(self.n * &self.delta())
    }

    /// Embeds a finite vector (coordinates on vertices `1..=r`).
    pub fn finite(&self, alpha: &[i64]) -> DimVector {
        let mut v = DimVector::zeros(self.dim());
        v.0[2..].copy_from_slice(alpha);
        v
    }

    /// `m delta + sign * alpha` for a finite root `alpha`.
    pub fn affine_root(&self, m: i64, sign: i64, alpha: &[i64]) -> DimVector {
        &(m * &self.delta()) + &(sign * &self.finite(alpha))
    }

    fn check(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: a.len() });
        }
        Ok(())
    }

    /// `a^t C b`.
    pub fn cartan_pairing(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.pair(a, b))
    }

    /// Unchecked pairing; callers guarantee matching lengths.
    pub fn pair(&self, a: &DimVector, b: &DimVector) -> i64 {
        pairing(&self.cartan_framed, &a.0, &b.0)
    }

    /// `p(a) = 1 - (a, a) / 2`.
    pub fn p_form(&self, a: &DimVector) -> i64 {
        1 - self.pair(a, a) / 2
    }

    /// All positive roots `0 < gamma <= bound`, graded-lex ordered.
    ///
    /// Roots with framing coordinate 0 are affine roots of `Gamma`; those with
    /// framing coordinate 1 are `rho_inf + (m + (nu,nu)/2) delta - nu` for `nu` in
    /// the finite root lattice and `m >= 0`.
    pub fn enumerate_positive_roots_below(&self, bound: &DimVector) -> Result<Vec<DimVector>> {
        self.check(bound)?;
        if bound.inf() >= 2 {
            return Err(Error::InvalidParameter(format!(
                "bound {bound} has framing coordinate >= 2"
            )));
        }
        let mut out = Vec::new();
        let m_max = bound.at(0);
        if m_max < 0 || bound.0.iter().any(|&x| x < 0) {
            return Ok(out);
        }
        let delta = self.delta();
        let fits = |g: &DimVector| g.is_nonnegative() && !g.is_zero() && g.le(bound);

        for m in 0..=m_max {
            if m >= 1 {
                let g = m * &delta;
                if fits(&g) {
                    out.push(g);
                }
            }
            for alpha in &self.root_data.positive_roots {
                let plus = self.affine_root(m, 1, alpha);
                if fits(&plus) {
                    out.push(plus);
                }
                if m >= 1 {
                    let minus = self.affine_root(m, -1, alpha);
                    if fits(&minus) {
                        out.push(minus);
                    }
                }
            }
        }

        if bound.inf() == 1 {
            for nu in self.short_lattice_vectors(2 * m_max) {
                let q = self.root_data.finite_pairing(&nu, &nu) / 2;
                let nu_v = self.finite(&nu);
                for m in 0..=(m_max - q) {
                    let g = &(&self.rho_inf() + &((m + q) * &delta)) - &nu_v;
                    if fits(&g) {
                        out.push(g);
                    }
                }
            }
        }

        out.sort_by(|a, b| graded_lex(&a.0, &b.0));
        out.dedup();
        Ok(out)
    }

    /// Finite lattice vectors `nu` with `(nu, nu) <= limit`, by recursive
    /// coordinate bounding on the completed-square form of the Gram matrix.
    pub fn short_lattice_vectors(&self, limit: i64) -> Vec<Vec<i64>> {
        let r = self.rank();
        if r == 0 {
            return if limit >= 0 { vec![vec![]] } else { vec![] };
        }
        let q = completed_square(&self.root_data.cartan_finite);
        let mut out = Vec::new();
        let mut x = vec![0i64; r];
        let budget = BigRational::from_integer(BigInt::from(limit));
        enumerate_level(&q, r - 1, &budget, &mut x, &mut out);
        out.sort();
        out
    }

    /// Positive roots below `v`.
    pub fn roots_below_v(&self) -> Result<Vec<DimVector>> {
        self.enumerate_positive_roots_below(&self.v())
    }

    pub fn root_list_report(&self, roots: &[DimVector]) -> RootListReport {
        RootListReport { legend: self.legend(), roots: roots.iter().map(|g| g.0.clone()).collect() }
    }
}

/// Returns `q` with `x^t C x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2`.
fn completed_square(c: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let r = c.len();
    let mut q: Vec<Vec<BigRational>> = c
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    for i in 0..r {
        for j in i + 1..r {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..r {
            for l in k..r {
                let t = &q[k][i] * &q[i][l];
                q[k][l] = &q[k][l] - t;
            }
        }
    }
    q
}

fn enumerate_level(
    q: &[Vec<BigRational>],
    i: usize,
    budget: &BigRational,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let r = q.len();
    let mut centre = BigRational::zero();
    for j in i + 1..r {
        centre -= &q[i][j] * BigRational::from_integer(BigInt::from(x[j]));
    }
    let radius_sq = budget / &q[i][i];
    let s = radius_sq.ceil().to_integer().sqrt() + BigInt::one();
    let c0 = centre.floor().to_integer();
    let lo = (&c0 - &s).to_i64().expect("small");
    let hi = (&c0 + &s + BigInt::one()).to_i64().expect("small");
    for xi in lo..=hi {
        let t = BigRational::from_integer(BigInt::from(xi)) - &centre;
        let used = &q[i][i] * &t * &t;
        if &used > budget {
            continue;
        }
        x[i] = xi;
        let rest = budget - used;
        if i == 0 {
            out.push(x.clone());
        } else {
            enumerate_level(q, i - 1, &rest, x, out);
        }
    }
    x[i] = 0;
    debug_assert!(!budget.is_negative());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_system, Kind};

    fn lattice(kind: Kind, r: usize, n: i64) -> FramedLattice {
        FramedLattice::new(build_root_system(kind, r).unwrap(), n).unwrap()
    }

    #[test]
    fn pairings() {
        let l = lattice(Kind::A, 2, 3);
        for i in 0..=2 {
            assert_eq!(l.pair(&l.rho(i), &l.rho(i)), 2);
        }
        assert_eq!(l.pair(&l.rho_inf(), &l.rho_inf()), 2);
        assert_eq!(l.pair(&l.rho(0), &l.rho_inf()), -1);
        assert_eq!(l.pair(&l.delta(), &l.delta()), 0);
        assert_eq!(l.pair(&l.rho_inf(), &l.v()), 2 - 3);
        assert_eq!(l.p_form(&l.v()), 3);
        assert_eq!(l.p_form(&l.delta()), 1);
        assert!(l.cartan_pairing(&DimVector::zeros(3), &l.v()).is_err());
    }

    #[test]
    fn a1_n1_roots() {
        let l = lattice(Kind::A, 1, 1);
        let roots = l.roots_below_v().unwrap();
        let want: Vec<DimVector> = [
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
            vec![0, 1, 1],
            vec![1, 1, 0],
            vec![1, 1, 1],
        ]
        .into_iter()
        .map(DimVector)
        .collect();
        assert_eq!(roots, want);
    }

    #[test]
    fn v_is_a_root() {
        for n in 1..=4 {
            let l = lattice(Kind::A, 2, n);
            assert!(l.roots_below_v().unwrap().contains(&l.v()));
        }
    }

    #[test]
    fn short_vectors_count_a2() {
        let l = lattice(Kind::A, 2, 1);
        // zero vector plus the six roots
        assert_eq!(l.short_lattice_vectors(2).len(), 7);
    }

    #[test]
    fn framing_two_rejected() {
        let l = lattice(Kind::A, 1, 1);
        assert!(l.enumerate_positive_roots_below(&DimVector(vec![2, 1, 1])).is_err());
    }
}
