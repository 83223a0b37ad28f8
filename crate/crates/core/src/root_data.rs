//! Finite and affine ADE root data attached to a finite subgroup of SL(2, C).
//!
//! Vertices of the finite Dynkin diagram use Bourbaki numbering `1..=r`; the
//! affine (trivial representation) vertex is `0`. Vectors indexed by the affine
//! diagram have length `r + 1` with the affine coordinate first.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ADE type of the McKay graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
    #[serde(rename = "TRIVIAL")]
    Trivial,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::D => "D",
            Kind::E => "E",
            Kind::Trivial => "TRIVIAL",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "D" => Ok(Kind::D),
            "E" => Ok(Kind::E),
            "TRIVIAL" | "T" | "1" => Ok(Kind::Trivial),
            other => Err(Error::InvalidInstance(format!(
                "unknown kind {other:?}; expected one of A, D, E, TRIVIAL"
            ))),
        }
    }
}

/// Root data of a simply laced finite root system together with its affine extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemData {
    pub kind: Kind,
    pub rank: usize,
    /// Finite Cartan matrix on vertices `1..=r` (stored 0-based).
    pub cartan_finite: Vec<Vec<i64>>,
    /// Affine Cartan matrix on vertices `0..=r`.
    pub cartan_affine: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, graded-lex ordered.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub coxeter_number: i64,
    pub exponents: Vec<i64>,
    pub degrees: Vec<i64>,
    /// Marks of the affine diagram, `delta[0] == 1`.
    pub delta: Vec<i64>,
    /// Diagram involution on `0..=r`.
    pub iota: Vec<usize>,
}

/// Stable JSON form of [`RootSystemData`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDataReport {
    pub kind: Kind,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub delta: Vec<i64>,
    pub h: i64,
    pub degrees: Vec<i64>,
    pub iota: Vec<usize>,
}

fn finite_edges(kind: Kind, rank: usize) -> Result<Vec<(usize, usize)>> {
    let bad = || {
        Err(Error::InvalidInstance(format!(
            "no root system of type {kind} and rank {rank}"
        )))
    };
    let edges = match kind {
        Kind::Trivial => {
            if rank != 0 {
                return bad();
            }
            vec![]
        }
        Kind::A => {
            if rank < 1 {
                return bad();
            }
            (1..rank).map(|i| (i, i + 1)).collect()
        }
        Kind::D => {
            if rank < 4 {
                return bad();
            }
            let mut e: Vec<_> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            e.push((rank - 2, rank));
            e
        }
        Kind::E => {
            if !(6..=8).contains(&rank) {
                return bad();
            }
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..rank).map(|i| (i, i + 1)));
            e
        }
    };
    Ok(edges)
}

fn iota_table(kind: Kind, rank: usize) -> Vec<usize> {
    let mut iota: Vec<usize> = (0..=rank).collect();
    match kind {
        Kind::A if rank > 1 => {
            for (i, slot) in iota.iter_mut().enumerate().skip(1) {
                *slot = rank + 1 - i;
            }
        }
        Kind::D if rank % 2 == 1 => iota.swap(rank - 1, rank),
        Kind::E if rank == 6 => {
            iota.swap(1, 6);
            iota.swap(3, 5);
        }
        _ => {}
    }
    iota
}

/// Bilinear form `a^t C b` for an integer matrix.
pub(crate) fn pairing(c: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in c.iter().enumerate() {
        if a[i] == 0 {
            continue;
        }
        let mut t = 0;
        for (j, cij) in row.iter().enumerate() {
            t += cij * b[j];
        }
        s += a[i] * t;
    }
    s
}

/// Graded-lexicographic comparison: total height first, then lexicographic.
pub(crate) fn graded_lex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let ha: i64 = a.iter().sum();
    let hb: i64 = b.iter().sum();
    ha.cmp(&hb).then_with(|| a.cmp(b))
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(alpha) = queue.pop_front() {
        for i in 0..r {
            let mut next = alpha.clone();
            next[i] += 1;
            if pairing(cartan, &next, &next) == 2 && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<_> = seen.into_iter().collect();
    roots.sort_by(|a, b| graded_lex(a, b));
    roots
}

/// Exponents from the height distribution of positive roots: the number of
/// exponents equal to `k` is `#{height k} - #{height k+1}`.
fn exponents_from_heights(roots: &[Vec<i64>]) -> Vec<i64> {
    let max_ht = roots.iter().map(|a| a.iter().sum::<i64>()).max().unwrap_or(0);
    let mut counts = vec![0i64; max_ht as usize + 2];
    for a in roots {
        counts[a.iter().sum::<i64>() as usize] += 1;
    }
    let mut exps = Vec::new();
    for k in 1..=max_ht as usize {
        for _ in 0..(counts[k] - counts[k + 1]) {
            exps.push(k as i64);
        }
    }
    exps
}

/// Builds the root data of the given type. `Kind::E` accepts ranks 6, 7, 8.
pub fn build_root_system(kind: Kind, rank: usize) -> Result<RootSystemData> {
    let edges = finite_edges(kind, rank)?;
    let r = rank;
    let mut cartan = vec![vec![0i64; r]; r];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in &edges {
        cartan[a - 1][b - 1] = -1;
        cartan[b - 1][a - 1] = -1;
    }

    if kind == Kind::Trivial {
        return Ok(RootSystemData {
            kind,
            rank: 0,
            cartan_finite: vec![],
            cartan_affine: vec![vec![0]],
            positive_roots: vec![],
            highest_root: vec![],
            coxeter_number: 1,
            exponents: vec![],
            degrees: vec![],
            delta: vec![1],
            iota: vec![0],
        });
    }

    let roots = positive_roots(&cartan);
    let highest = roots.last().cloned().expect("nonempty root system");
    let h = highest.iter().sum::<i64>() + 1;
    let exponents = exponents_from_heights(&roots);
    let degrees = exponents.iter().map(|e| e + 1).collect();

    // The affine vertex pairs with rho_j as -(beta, rho_j) so that delta is isotropic.
    let mut affine = vec![vec![0i64; r + 1]; r + 1];
    affine[0][0] = 2;
    for j in 0..r {
        let mut e = vec![0; r];
        e[j] = 1;
        let c = -pairing(&cartan, &highest, &e);
        affine[0][j + 1] = c;
        affine[j + 1][0] = c;
        for k in 0..r {
            affine[j + 1][k + 1] = cartan[j][k];
        }
    }
    let mut delta = vec![1];
    delta.extend(highest.iter().copied());

    let data = RootSystemData {
        kind,
        rank,
        cartan_finite: cartan,
        cartan_affine: affine,
        positive_roots: roots,
        highest_root: highest,
        coxeter_number: h,
        exponents,
        degrees,
        delta,
        iota: iota_table(kind, rank),
    };
    data.check_invariants()?;
    Ok(data)
}

impl RootSystemData {
    /// Diagram involution as a permutation of `0..=r`.
    pub fn involution_iota(&self) -> Vec<usize> {
        self.iota.clone()
    }

    /// Order of the finite Weyl group, the product of the degrees.
    pub fn weyl_order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    /// Height of a finite root in simple-root coordinates.
    pub fn height(alpha: &[i64]) -> i64 {
        alpha.iter().sum()
    }

    pub fn finite_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        pairing(&self.cartan_finite, a, b)
    }

    pub fn affine_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        pairing(&self.cartan_affine, a, b)
    }

    pub fn report(&self) -> RootDataReport {
        RootDataReport {
            kind: self.kind,
            rank: self.rank,
            cartan: self.cartan_finite.clone(),
            positive_roots: self.positive_roots.clone(),
            delta: self.delta.clone(),
            h: self.coxeter_number,
            degrees: self.degrees.clone(),
            iota: self.iota.clone(),
        }
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.rank as i64;
        let fail = |m: &str| Err(Error::Internal(format!("{} {}: {m}", self.kind, self.rank)));
        if self.positive_roots.len() as i64 * 2 != r * self.coxeter_number {
            return fail("|positive roots| != r h / 2");
        }
        if self.degrees.len() != self.rank {
            return fail("wrong number of degrees");
        }
        for i in 0..=self.rank {
            let s: i64 = (0..=self.rank).map(|j| self.delta[j] * self.cartan_affine[j][i]).sum();
            if s != 0 {
                return fail("delta is not in the radical of the affine form");
            }
        }
        if self.iota[0] != 0 || (0..=self.rank).any(|i| self.iota[self.iota[i]] != i) {
            return fail("iota is not an involution fixing 0");
        }
        for i in 0..=self.rank {
            for j in 0..=self.rank {
                if self.cartan_affine[self.iota[i]][self.iota[j]] != self.cartan_affine[i][j] {
                    return fail("iota is not a diagram automorphism");
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_basics() {
        let d = build_root_system(Kind::A, 2).unwrap();
        assert_eq!(d.positive_roots.len(), 3);
        assert_eq!(d.coxeter_number, 3);
        assert_eq!(d.degrees, vec![2, 3]);
        assert_eq!(d.delta, vec![1, 1, 1]);
    }

    #[test]
    fn d4_basics() {
        let d = build_root_system(Kind::D, 4).unwrap();
        assert_eq!(d.positive_roots.len(), 12);
        assert_eq!(d.coxeter_number, 6);
        assert_eq!(d.degrees, vec![2, 4, 4, 6]);
        assert_eq!(d.delta, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn e_series_marks() {
        let e6 = build_root_system(Kind::E, 6).unwrap();
        assert_eq!(e6.delta, vec![1, 1, 2, 2, 3, 2, 1]);
        assert_eq!(e6.degrees, vec![2, 5, 6, 8, 9, 12]);
        let e7 = build_root_system(Kind::E, 7).unwrap();
        assert_eq!(e7.delta, vec![1, 2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(e7.iota, (0..=7).collect::<Vec<_>>());
        let e8 = build_root_system(Kind::E, 8).unwrap();
        assert_eq!(e8.positive_roots.len(), 120);
        assert_eq!(e8.coxeter_number, 30);
        assert_eq!(e8.delta, vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn illegal_pairs_rejected() {
        assert!(build_root_system(Kind::D, 3).is_err());
        assert!(build_root_system(Kind::E, 9).is_err());
        assert!(build_root_system(Kind::A, 0).is_err());
        assert!(build_root_system(Kind::Trivial, 1).is_err());
        assert!("Z".parse::<Kind>().is_err());
    }

    #[test]
    fn iota_tables() {
        assert_eq!(build_root_system(Kind::A, 3).unwrap().iota, vec![0, 3, 2, 1]);
        assert_eq!(build_root_system(Kind::A, 1).unwrap().iota, vec![0, 1]);
        assert_eq!(build_root_system(Kind::D, 5).unwrap().iota, vec![0, 1, 2, 3, 5, 4]);
        assert_eq!(build_root_system(Kind::D, 4).unwrap().iota, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn trivial_kind() {
        let t = build_root_system(Kind::Trivial, 0).unwrap();
        assert_eq!(t.delta, vec![1]);
        assert_eq!(t.coxeter_number, 1);
        assert!(t.degrees.is_empty());
        assert_eq!(t.weyl_order(), 1);
    }
}
