//! The Namikawa Weyl group `W = <s_delta, s_1, .., s_r>` acting on `Theta_v`.
//!
//! Elements act on the coordinates `(theta_0, .., theta_r)`; the framing value
//! is recomputed from `theta(v) = 0`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arrangement::StabilityParameter;
use crate::error::{Error, Result};
use crate::framed::{DimVector, FramedLattice};

/// A generator of `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Delta,
    /// Simple reflection at finite vertex `i >= 1`.
    Simple(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Delta => write!(f, "s_delta"),
            Generator::Simple(i) => write!(f, "s_{i}"),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        if raw == "s_delta" {
            return Ok(Generator::Delta);
        }
        raw.strip_prefix("s_")
            .and_then(|i| i.parse().ok())
            .filter(|&i| i >= 1)
            .map(Generator::Simple)
            .ok_or_else(|| serde::de::Error::custom(format!("bad generator {raw:?}")))
    }
}

type Matrix = Vec<Vec<i64>>;

/// A group element: a word in the generators and its matrix on `(theta_0..theta_r)`.
///
/// Words are read right to left: `[g1, g2]` acts as `g1 (g2 theta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<Generator>,
    #[serde(skip)]
    pub matrix: Matrix,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Matrix of a single generator.
pub fn generator_matrix(l: &FramedLattice, g: Generator) -> Matrix {
    let r = l.rank();
    let mut m = identity_matrix(r + 1);
    match g {
        Generator::Delta => {
            for (k, &d) in l.root_data.delta.iter().enumerate() {
                m[0][k] -= 2 * d;
            }
        }
        Generator::Simple(i) => {
            let c = &l.root_data.cartan_affine;
            for (j, row) in m.iter_mut().enumerate() {
                row[i] -= c[i][j];
            }
        }
    }
    m
}

impl WeylElement {
    pub fn identity(l: &FramedLattice) -> Self {
        WeylElement { word: vec![], matrix: identity_matrix(l.rank() + 1) }
    }

    pub fn generator(l: &FramedLattice, g: Generator) -> Self {
        WeylElement { word: vec![g], matrix: generator_matrix(l, g) }
    }

    /// Rebuilds an element from a word.
    pub fn from_word(l: &FramedLattice, word: &[Generator]) -> Result<Self> {
        let mut w = Self::identity(l);
        for &g in word {
            if let Generator::Simple(i) = g {
                if i == 0 || i > l.rank() {
                    return Err(Error::InvalidParameter(format!("no generator {g}")));
                }
            }
            w = w.compose(&Self::generator(l, g));
        }
        Ok(w)
    }

    /// `self * other`: first `other`, then `self`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(other.word.iter().copied());
        WeylElement { word, matrix: mat_mul(&self.matrix, &other.matrix) }
    }

    pub fn inverse(&self, l: &FramedLattice) -> WeylElement {
        let mut w = Self::identity(l);
        for &g in self.word.iter().rev() {
            w = w.compose(&Self::generator(l, g));
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(self.matrix.len())
    }

    pub fn apply(&self, l: &FramedLattice, theta: &StabilityParameter) -> StabilityParameter {
        let x = theta.finite_coords();
        let y: Vec<BigInt> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, b)| b * BigInt::from(a)).sum())
            .collect();
        let td: BigInt = y.iter().zip(&l.root_data.delta).map(|(a, &d)| a * BigInt::from(d)).sum();
        let mut values = vec![-td * BigInt::from(l.n)];
        values.extend(y);
        StabilityParameter::from_full_ints(values)
    }

    /// Image of the wall `gamma^perp` for `gamma` with zero framing coordinate:
    /// returns `gamma'` with `w(gamma^perp) = gamma'^perp`, namely `M^{-T} gamma`.
    pub fn act_on_normal(&self, l: &FramedLattice, gamma: &DimVector) -> DimVector {
        let inv = self.inverse(l).matrix;
        let x = &gamma.0[1..];
        let mut out = vec![gamma.0[0]];
        out.extend((0..inv.len()).map(|k| (0..inv.len()).map(|j| inv[j][k] * x[j]).sum::<i64>()));
        DimVector(out)
    }
}

fn violated_generator(l: &FramedLattice, theta: &StabilityParameter, finite_only: bool) -> Option<Generator> {
    if !finite_only && theta.eval(&l.delta()).is_negative() {
        return Some(Generator::Delta);
    }
    (1..=l.rank()).find(|&i| theta.values[i + 1].is_negative()).map(Generator::Simple)
}

/// `|W| = 2 |W_Gamma|`.
pub fn group_order(l: &FramedLattice) -> u128 {
    2 * l.root_data.weyl_order()
}

fn reduce(
    l: &FramedLattice,
    theta: &StabilityParameter,
    finite_only: bool,
) -> Result<(WeylElement, StabilityParameter)> {
    let cap = group_order(l).saturating_mul(4);
    let mut w = WeylElement::identity(l);
    let mut cur = theta.clone();
    let mut steps: u128 = 0;
    while let Some(g) = violated_generator(l, &cur, finite_only) {
        steps += 1;
        if steps > cap {
            return Err(Error::Internal("reduction to F did not terminate".into()));
        }
        let s = WeylElement::generator(l, g);
        cur = s.apply(l, &cur);
        w = s.compose(&w);
    }
    Ok((w, cur))
}

/// Greedy reduction: returns `(w, w theta)` with `w theta` in the closed cone `F`.
///
/// On walls of `F` the returned `w` is one of several valid choices.
pub fn reduce_to_f(l: &FramedLattice, theta: &StabilityParameter) -> Result<(WeylElement, StabilityParameter)> {
    reduce(l, theta, false)
}

/// The longest element `w_0` of the finite Weyl group.
pub fn longest_element(l: &FramedLattice) -> WeylElement {
    let mut x = vec![0i64; l.rank() + 1];
    for xi in x.iter_mut().skip(1) {
        *xi = -1;
    }
    let theta = StabilityParameter::from_finite_ints(l, &x).expect("dimension matches");
    reduce(l, &theta, true).expect("finite Weyl group reduction terminates").0
}

/// `s_delta w_0`, which acts on `(theta_0..theta_r)` as minus the diagram involution.
pub fn minus_iota_element(l: &FramedLattice) -> WeylElement {
    WeylElement::generator(l, Generator::Delta).compose(&longest_element(l))
}

/// All elements of `W`, shortest words first; fails beyond `limit` elements.
pub fn enumerate_group(l: &FramedLattice, limit: usize) -> Result<Vec<WeylElement>> {
    let mut gens = vec![WeylElement::generator(l, Generator::Delta)];
    gens.extend((1..=l.rank()).map(|i| WeylElement::generator(l, Generator::Simple(i))));
    let id = WeylElement::identity(l);
    let mut seen: HashSet<Matrix> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = w.compose(g);
            if seen.insert(next.matrix.clone()) {
                if seen.len() > limit {
                    return Err(Error::ResourceCap { what: "Weyl group size", limit });
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::{instance, Kind};

    #[test]
    fn group_orders() {
        for (r, order) in [(1, 4), (2, 12), (3, 48)] {
            let l = instance(Kind::A, r, 2).unwrap();
            assert_eq!(enumerate_group(&l, 1000).unwrap().len(), order);
        }
        let l = instance(Kind::D, 4, 1).unwrap();
        assert_eq!(enumerate_group(&l, 1000).unwrap().len() as u128, group_order(&l));
    }

    #[test]
    fn minus_iota_matrices() {
        for (k, r) in [(Kind::A, 1), (Kind::A, 3), (Kind::D, 5), (Kind::E, 6), (Kind::E, 7), (Kind::Trivial, 0)] {
            let l = instance(k, r, 2).unwrap();
            let m = minus_iota_element(&l).matrix;
            let iota = &l.root_data.iota;
            for (j, row) in m.iter().enumerate() {
                for (i, &x) in row.iter().enumerate() {
                    assert_eq!(x, if iota[j] == i { -1 } else { 0 }, "{k}{r}");
                }
            }
        }
    }

    #[test]
    fn generators_permute_walls() {
        let l = instance(Kind::A, 2, 3).unwrap();
        let arr = Arrangement::new(&l);
        for g in [Generator::Delta, Generator::Simple(1), Generator::Simple(2)] {
            let w = WeylElement::generator(&l, g);
            for h in &arr.hyperplanes {
                assert!(arr.find_normal(&w.act_on_normal(&l, &h.normal)).is_some());
            }
        }
    }

    #[test]
    fn single_reflection_reduction() {
        let l = instance(Kind::A, 2, 2).unwrap();
        let theta = StabilityParameter::from_finite_ints(&l, &[5, -1, 3]).unwrap();
        let (w, tf) = reduce_to_f(&l, &theta).unwrap();
        assert_eq!(w.word, vec![Generator::Simple(1)]);
        assert_eq!(tf, WeylElement::generator(&l, Generator::Simple(1)).apply(&l, &theta));
    }
}
