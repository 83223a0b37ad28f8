//! A small dense two-phase simplex over exact rationals.
//!
//! Variables are free; Bland's rule prevents cycling.

use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs . x (rel) rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

/// Field operations used by the simplex. Fixed-width rationals report overflow
/// as `None`, so a solve can be retried with arbitrary precision.
trait Scalar: Clone + PartialOrd {
    fn nought() -> Self;
    fn unit() -> Self;
    fn is_nought(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

impl Scalar for Q {
    fn nought() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nought(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

type Small = Ratio<i128>;

/// Keeps fixed-width values well inside `i128` so that normalisation never overflows.
fn bounded(x: Small) -> Option<Small> {
    const LIMIT: i128 = 1 << 100;
    (x.numer().abs() < LIMIT && *x.denom() < LIMIT).then_some(x)
}

impl Scalar for Small {
    fn nought() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nought(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        bounded(self.checked_add(o)?)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        bounded(self.checked_sub(o)?)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        bounded(self.checked_mul(o)?)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        bounded(self.checked_div(o)?)
    }
}

fn to_small(q: &Q) -> Option<Small> {
    bounded(Small::new(q.numer().to_i128()?, q.denom().to_i128()?))
}

fn from_small(q: &Small) -> Q {
    Q::new((*q.numer()).into(), (*q.denom()).into())
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_nought() {
                *x = x.div(&p)?;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_nought() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_nought() {
                    *x = x.sub(&f.mul(y)?)?;
                }
            }
        }
        self.basis[r] = c;
        Some(())
    }

    /// Maximises `cost . z` from the current feasible basis over columns with
    /// `allowed[j]`. Returns false if unbounded.
    fn optimise(&mut self, cost: &[T], allowed: &[bool]) -> Option<bool> {
        let mut in_basis = vec![false; self.cols];
        loop {
            in_basis.iter_mut().for_each(|b| *b = false);
            for &b in &self.basis {
                in_basis[b] = true;
            }
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || in_basis[j] {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_nought() && !self.rows[i][j].is_nought() {
                        red = red.sub(&cost[b].mul(&self.rows[i][j])?)?;
                    }
                }
                if red.is_pos() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Some(true) };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rhs(i).div(a)?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(false),
                Some((r, _)) => self.pivot(r, c)?,
            }
        }
    }
}

enum Outcome<T> {
    Optimal(Vec<T>),
    Infeasible,
    Unbounded,
}

fn neg<T: Scalar>(x: &T) -> Option<T> {
    T::nought().sub(x)
}

fn solve<T: Scalar>(n_vars: usize, objective: &[T], constraints: &[(Vec<T>, Relation, T)]) -> Option<Outcome<T>> {
    // Columns: u_j, w_j (x_j = u_j - w_j), then slacks/surplus, then artificials.
    let m = constraints.len();
    let n_struct = 2 * n_vars;
    let n_slack = constraints.iter().filter(|c| c.1 != Relation::Eq).count();
    let mut rels = Vec::with_capacity(m);
    for (_, rel, rhs) in constraints {
        let flip = !rhs.is_nought() && !rhs.is_pos();
        rels.push(match (*rel, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }
    let n_art = rels.iter().filter(|&&r| r != Relation::Le).count();
    let cols = n_struct + n_slack + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack_col = n_struct;
    let mut art_col = n_struct + n_slack;
    for ((coeffs, _, rhs), &rel) in constraints.iter().zip(&rels) {
        let flip = !rhs.is_nought() && !rhs.is_pos();
        let mut row = vec![T::nought(); cols + 1];
        for (j, a) in coeffs.iter().enumerate() {
            let a = if flip { neg(a)? } else { a.clone() };
            row[2 * j + 1] = neg(&a)?;
            row[2 * j] = a;
        }
        row[cols] = if flip { neg(rhs)? } else { rhs.clone() };
        match rel {
            Relation::Le => {
                row[slack_col] = T::unit();
                basis.push(slack_col);
                slack_col += 1;
            }
            Relation::Ge => {
                row[slack_col] = neg(&T::unit())?;
                slack_col += 1;
                row[art_col] = T::unit();
                basis.push(art_col);
                art_col += 1;
            }
            Relation::Eq => {
                row[art_col] = T::unit();
                basis.push(art_col);
                art_col += 1;
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, cols };

    if n_art > 0 {
        let mut cost = vec![T::nought(); cols];
        for c in cost.iter_mut().skip(n_struct + n_slack) {
            *c = neg(&T::unit())?;
        }
        let all = vec![true; cols];
        t.optimise(&cost, &all)?;
        let mut infeas = T::nought();
        for (i, &b) in t.basis.iter().enumerate() {
            if b >= n_struct + n_slack {
                infeas = infeas.add(t.rhs(i))?;
            }
        }
        if infeas.is_pos() {
            return Some(Outcome::Infeasible);
        }
        // Drive zero-valued artificials out of the basis or drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n_struct + n_slack {
                match (0..n_struct + n_slack).find(|&j| !t.rows[i][j].is_nought()) {
                    Some(j) => {
                        t.pivot(i, j)?;
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![T::nought(); cols];
    for (j, c) in objective.iter().enumerate() {
        cost[2 * j] = c.clone();
        cost[2 * j + 1] = neg(c)?;
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < n_struct + n_slack).collect();
    if !t.optimise(&cost, &allowed)? {
        return Some(Outcome::Unbounded);
    }
    let mut z = vec![T::nought(); cols];
    for (i, &b) in t.basis.iter().enumerate() {
        z[b] = t.rhs(i).clone();
    }
    let x = (0..n_vars).map(|j| z[2 * j].sub(&z[2 * j + 1])).collect::<Option<Vec<T>>>()?;
    Some(Outcome::Optimal(x))
}

fn finish(x: Vec<Q>, objective: &[Q]) -> LpOutcome {
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

/// Maximises `objective . x` subject to the constraints, with `x` free.
///
/// The solve runs in checked `i128` rationals first and falls back to
/// arbitrary precision on overflow; both are exact.
pub fn maximize(n_vars: usize, objective: &[Q], constraints: &[Constraint]) -> LpOutcome {
    let small = || -> Option<Outcome<Small>> {
        let obj = objective.iter().map(to_small).collect::<Option<Vec<_>>>()?;
        let cons = constraints
            .iter()
            .map(|c| Some((c.coeffs.iter().map(to_small).collect::<Option<Vec<_>>>()?, c.rel, to_small(&c.rhs)?)))
            .collect::<Option<Vec<_>>>()?;
        solve(n_vars, &obj, &cons)
    };
    let outcome = match small() {
        Some(Outcome::Optimal(x)) => Outcome::Optimal(x.iter().map(from_small).collect()),
        Some(Outcome::Infeasible) => Outcome::Infeasible,
        Some(Outcome::Unbounded) => Outcome::Unbounded,
        None => {
            let cons: Vec<(Vec<Q>, Relation, Q)> =
                constraints.iter().map(|c| (c.coeffs.clone(), c.rel, c.rhs.clone())).collect();
            solve(n_vars, objective, &cons).expect("arbitrary precision never overflows")
        }
    };
    match outcome {
        Outcome::Optimal(x) => finish(x, objective),
        Outcome::Infeasible => LpOutcome::Infeasible,
        Outcome::Unbounded => LpOutcome::Unbounded,
    }
}

/// Strict inequality `sign * (coeffs . x - rhs) > 0`, or equality when `sign == 0`.
#[derive(Debug, Clone)]
pub struct SignConstraint {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub sign: i8,
}

/// Finds a point satisfying all strict inequalities and equalities, maximising a
/// uniform margin capped at 1. Returns `None` when the region is empty.
pub fn interior_point(dim: usize, constraints: &[SignConstraint]) -> Option<Vec<Q>> {
    // Variables: x_0..x_{dim-1}, eps.
    let mut rows = Vec::with_capacity(constraints.len() + 1);
    for c in constraints {
        let mut coeffs = Vec::with_capacity(dim + 1);
        if c.sign == 0 {
            coeffs.extend(c.coeffs.iter().cloned());
            coeffs.push(Q::zero());
            rows.push(Constraint::new(coeffs, Relation::Eq, c.rhs.clone()));
        } else {
            let s = Q::from_integer(c.sign.into());
            coeffs.extend(c.coeffs.iter().map(|a| a * &s));
            coeffs.push(-Q::one());
            rows.push(Constraint::new(coeffs, Relation::Ge, &c.rhs * &s));
        }
    }
    let mut cap = vec![Q::zero(); dim + 1];
    cap[dim] = Q::one();
    rows.push(Constraint::new(cap.clone(), Relation::Le, Q::one()));
    match maximize(dim + 1, &cap, &rows) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(dim);
            Some(x)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_lp() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5), value 14/5
        let cons = vec![
            Constraint::new(vec![q(1, 1), q(2, 1)], Relation::Le, q(4, 1)),
            Constraint::new(vec![q(3, 1), q(1, 1)], Relation::Le, q(6, 1)),
            Constraint::new(vec![q(1, 1), q(0, 1)], Relation::Ge, q(0, 1)),
            Constraint::new(vec![q(0, 1), q(1, 1)], Relation::Ge, q(0, 1)),
        ];
        match maximize(2, &[q(1, 1), q(1, 1)], &cons) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(14, 5));
                assert_eq!(x, vec![q(8, 5), q(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let cons = vec![
            Constraint::new(vec![q(1, 1)], Relation::Ge, q(2, 1)),
            Constraint::new(vec![q(1, 1)], Relation::Le, q(1, 1)),
        ];
        assert_eq!(maximize(1, &[q(1, 1)], &cons), LpOutcome::Infeasible);
        let cons = vec![Constraint::new(vec![q(1, 1)], Relation::Ge, q(-3, 1))];
        assert_eq!(maximize(1, &[q(1, 1)], &cons), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_interior() {
        // 0 < x < 1 with y = x: feasible; x > 1 and x < 1: empty.
        let c = |a: Vec<Q>, b: Q, s: i8| SignConstraint { coeffs: a, rhs: b, sign: s };
        let pt = interior_point(
            2,
            &[
                c(vec![q(1, 1), q(0, 1)], q(0, 1), 1),
                c(vec![q(1, 1), q(0, 1)], q(1, 1), -1),
                c(vec![q(1, 1), q(-1, 1)], q(0, 1), 0),
            ],
        )
        .unwrap();
        assert!(pt[0] > q(0, 1) && pt[0] < q(1, 1));
        assert_eq!(pt[0], pt[1]);
        assert!(interior_point(
            1,
            &[c(vec![q(1, 1)], q(1, 1), 1), c(vec![q(1, 1)], q(1, 1), -1)]
        )
        .is_none());
    }

    #[test]
    fn large_values_fall_back_to_big_rationals() {
        let big = Q::from_integer(BigInt::from(10).pow(40));
        let cons = vec![
            Constraint::new(vec![big.clone()], Relation::Le, &big * &big),
            Constraint::new(vec![q(1, 1)], Relation::Ge, q(0, 1)),
        ];
        match maximize(1, &[q(1, 1)], &cons) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, big),
            other => panic!("{other:?}"),
        }
    }
}
