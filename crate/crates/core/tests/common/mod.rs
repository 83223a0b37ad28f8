#![allow(dead_code)]

//! Independent oracles shared by the integration tests.

use std::collections::BTreeSet;

use mckay_chambers::{instance, DimVector, FramedLattice, Kind, StabilityParameter};
use num_traits::Zero;

pub fn lattice(kind: Kind, rank: usize, n: i64) -> FramedLattice {
    instance(kind, rank, n).unwrap()
}

/// Instances of the chamber-count suite.
pub fn desk_suite() -> Vec<(Kind, usize, i64)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((Kind::A, 1, n));
    }
    for n in 1..=4 {
        out.push((Kind::A, 2, n));
    }
    for n in 1..=3 {
        out.push((Kind::A, 3, n));
    }
    for n in 1..=2 {
        out.push((Kind::D, 4, n));
    }
    out
}

fn pair(c: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * c[i][j] * b[j];
        }
    }
    s
}

/// Kac's criterion on the framed graph: reflect a positive vector down with
/// simple reflections. It is a root iff it reaches a simple root or a vector
/// with connected support in the fundamental region.
pub fn is_root_kac(c: &[Vec<i64>], alpha: &[i64]) -> bool {
    let dim = alpha.len();
    let mut a = alpha.to_vec();
    if a.iter().all(|&x| x == 0) || a.iter().any(|&x| x < 0) {
        return false;
    }
    loop {
        if a.iter().sum::<i64>() == 1 {
            return true;
        }
        let e = |i: usize| -> Vec<i64> { (0..dim).map(|j| i64::from(i == j)).collect() };
        let mut moved = false;
        for i in 0..dim {
            let p = pair(c, &a, &e(i));
            if p > 0 {
                a[i] -= p;
                if a[i] < 0 {
                    return false;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    // Fundamental region: connected support.
    let support: Vec<usize> = (0..dim).filter(|&i| a[i] != 0).collect();
    let mut seen = BTreeSet::from([support[0]]);
    let mut stack = vec![support[0]];
    while let Some(i) = stack.pop() {
        for &j in &support {
            if c[i][j] < 0 && seen.insert(j) {
                stack.push(j);
            }
        }
    }
    seen.len() == support.len()
}

/// All vectors `0 < x <= bound`.
pub fn boxes(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Positive roots below `bound` by Kac's criterion.
pub fn kac_roots_below(l: &FramedLattice, bound: &[i64]) -> BTreeSet<Vec<i64>> {
    boxes(bound).into_iter().filter(|x| is_root_kac(&l.cartan_framed, x)).collect()
}

pub fn p_of(c: &[Vec<i64>], a: &[i64]) -> i64 {
    1 - pair(c, a, a) / 2
}

fn theta_eval(theta: &StabilityParameter, a: &[i64]) -> num_bigint::BigInt {
    theta.values.iter().zip(a).map(|(t, &x)| t * num_bigint::BigInt::from(x)).sum()
}

/// Every multiset of `roots` (as indices, nondecreasing) summing to `target`.
pub fn decompositions(roots: &[Vec<i64>], target: &[i64]) -> Vec<Vec<usize>> {
    fn go(roots: &[Vec<i64>], rest: &mut Vec<i64>, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in start..roots.len() {
            if roots[i].iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (r, a) in rest.iter_mut().zip(&roots[i]) {
                    *r -= a;
                }
                cur.push(i);
                go(roots, rest, i, cur, out);
                cur.pop();
                for (r, a) in rest.iter_mut().zip(&roots[i]) {
                    *r += a;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(roots, &mut target.to_vec(), 0, &mut vec![], &mut out);
    out
}

/// Brute-force canonical decomposition of `v` at `theta`: among all
/// decompositions into roots `beta` with `theta(beta) = 0`, those maximising the
/// sum of `p` whose parts all lie in `Sigma_theta`. Returned sorted.
pub fn brute_canonical(l: &FramedLattice, theta: &StabilityParameter) -> Vec<Vec<Vec<i64>>> {
    let c = &l.cartan_framed;
    let v = l.v().0;
    let roots: Vec<Vec<i64>> =
        kac_roots_below(l, &v).into_iter().filter(|a| theta_eval(theta, a).is_zero()).collect();
    let in_sigma = |a: &Vec<i64>| {
        let p = p_of(c, a);
        decompositions(&roots, a)
            .into_iter()
            .filter(|d| d.len() >= 2)
            .all(|d| d.iter().map(|&i| p_of(c, &roots[i])).sum::<i64>() < p)
    };
    let all = decompositions(&roots, &v);
    let best = all.iter().map(|d| d.iter().map(|&i| p_of(c, &roots[i])).sum::<i64>()).max().unwrap();
    let mut out: Vec<Vec<Vec<i64>>> = all
        .into_iter()
        .filter(|d| d.iter().map(|&i| p_of(c, &roots[i])).sum::<i64>() == best)
        .filter(|d| d.iter().all(|&i| in_sigma(&roots[i])))
        .map(|d| {
            let mut parts: Vec<Vec<i64>> = d.iter().map(|&i| roots[i].clone()).collect();
            parts.sort();
            parts
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn dv(x: &[i64]) -> DimVector {
    DimVector(x.to_vec())
}
