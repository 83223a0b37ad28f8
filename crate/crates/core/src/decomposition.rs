//! Roots pairing to zero with a parameter, the set `Sigma_theta`, canonical
//! decompositions and representation types.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane, HyperplaneTag, StabilityParameter};
use crate::error::{Error, Result};
use crate::framed::{DimVector, FramedLattice};
use crate::root_data::graded_lex;

/// Default cap on decomposition search nodes.
pub const DEFAULT_MAX_NODES: usize = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct DecompOptions {
    pub max_nodes: usize,
}

impl Default for DecompOptions {
    fn default() -> Self {
        DecompOptions { max_nodes: DEFAULT_MAX_NODES }
    }
}

/// Positive roots `gamma <= bound` with `theta(gamma) = 0`.
pub fn r_theta_plus(l: &FramedLattice, theta: &StabilityParameter, bound: &DimVector) -> Result<Vec<DimVector>> {
    Ok(l.enumerate_positive_roots_below(bound)?
        .into_iter()
        .filter(|g| theta.eval(g).is_zero())
        .collect())
}

/// Memoised search over multiset decompositions into roots of `R_theta^+`.
pub struct Decomposer<'a> {
    l: &'a FramedLattice,
    roots: Vec<DimVector>,
    ps: Vec<i64>,
    best: HashMap<DimVector, Option<i64>>,
    nodes: usize,
    cap: usize,
}

impl<'a> Decomposer<'a> {
    pub fn new(l: &'a FramedLattice, theta: &StabilityParameter, bound: &DimVector, opts: DecompOptions) -> Result<Self> {
        let roots = r_theta_plus(l, theta, bound)?;
        let ps = roots.iter().map(|g| l.p_form(g)).collect();
        Ok(Decomposer { l, roots, ps, best: HashMap::new(), nodes: 0, cap: opts.max_nodes })
    }

    /// `R_theta^+` below the bound.
    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::ResourceCap { what: "decomposition search nodes", limit: self.cap });
        }
        Ok(())
    }

    /// Largest `sum p` over decompositions of `x` into roots of `R_theta^+`
    /// (any number of parts), or `None` if `x` is not in `N R_theta^+`.
    pub fn best(&mut self, x: &DimVector) -> Result<Option<i64>> {
        if x.is_zero() {
            return Ok(Some(0));
        }
        if let Some(b) = self.best.get(x) {
            return Ok(*b);
        }
        self.tick()?;
        let mut out: Option<i64> = None;
        for i in 0..self.roots.len() {
            if !self.roots[i].le(x) {
                continue;
            }
            let rest = x - &self.roots[i];
            if let Some(b) = self.best(&rest)? {
                let cand = self.ps[i] + b;
                out = Some(out.map_or(cand, |o| o.max(cand)));
            }
        }
        self.best.insert(x.clone(), out);
        Ok(out)
    }

    /// Largest `sum p` over decompositions of `alpha` into at least two parts.
    pub fn best_proper(&mut self, alpha: &DimVector) -> Result<Option<i64>> {
        let mut out: Option<i64> = None;
        for i in 0..self.roots.len() {
            if !self.roots[i].le(alpha) || &self.roots[i] == alpha {
                continue;
            }
            let rest = alpha - &self.roots[i];
            if let Some(b) = self.best(&rest)? {
                let cand = self.ps[i] + b;
                out = Some(out.map_or(cand, |o| o.max(cand)));
            }
        }
        Ok(out)
    }

    /// Whether `alpha` (a root in `R_theta^+`) lies in `Sigma_theta`.
    pub fn in_sigma(&mut self, alpha: &DimVector) -> Result<bool> {
        let p = self.l.p_form(alpha);
        Ok(self.best_proper(alpha)?.is_none_or(|b| p > b))
    }

    /// All elements of `Sigma_theta` below the bound.
    pub fn sigma(&mut self) -> Result<Vec<DimVector>> {
        let roots = self.roots.clone();
        let mut out = Vec::new();
        for g in roots {
            if self.in_sigma(&g)? {
                out.push(g);
            }
        }
        Ok(out)
    }
}

/// Whether `alpha` lies in `Sigma_theta`.
pub fn sigma_theta_contains(l: &FramedLattice, alpha: &DimVector, theta: &StabilityParameter) -> Result<bool> {
    if !theta.eval(alpha).is_zero() {
        return Err(Error::InvalidParameter(format!("theta does not vanish on {alpha}")));
    }
    let mut d = Decomposer::new(l, theta, alpha, DecompOptions::default())?;
    if !d.roots().contains(alpha) {
        return Err(Error::InvalidParameter(format!("{alpha} is not a positive root")));
    }
    d.in_sigma(alpha)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub summands: Vec<DimVector>,
    pub p_total: i64,
}

fn sort_summands(l: &FramedLattice, mut s: Vec<DimVector>) -> CanonicalDecomposition {
    s.sort_by(|a, b| b.inf().cmp(&a.inf()).then_with(|| graded_lex(&a.0, &b.0)));
    let p_total = s.iter().map(|g| l.p_form(g)).sum();
    CanonicalDecomposition { summands: s, p_total }
}

/// Canonical decomposition of `v = rho_inf + n delta`: `[v]` when
/// `theta_inf != 0`, otherwise `[rho_inf, delta, .., delta]`. Other vectors go
/// through [`canonical_decomposition_search`].
pub fn canonical_decomposition(
    l: &FramedLattice,
    v: &DimVector,
    theta: &StabilityParameter,
    opts: DecompOptions,
) -> Result<CanonicalDecomposition> {
    if v != &l.v() {
        return canonical_decomposition_search(l, v, theta, opts);
    }
    if !theta.framing().is_zero() {
        return Ok(sort_summands(l, vec![v.clone()]));
    }
    let mut s = vec![l.rho_inf()];
    s.extend((0..l.n).map(|_| l.delta()));
    Ok(sort_summands(l, s))
}

/// Exhaustive canonical decomposition: the unique decomposition into
/// `Sigma_theta` elements with the largest `sum p`.
pub fn canonical_decomposition_search(
    l: &FramedLattice,
    v: &DimVector,
    theta: &StabilityParameter,
    opts: DecompOptions,
) -> Result<CanonicalDecomposition> {
    if !v.is_nonnegative() {
        return Err(Error::NotEffective(format!("{v} has a negative coordinate")));
    }
    let mut d = Decomposer::new(l, theta, v, opts)?;
    if d.best(v)?.is_none() {
        return Err(Error::NotEffective(format!("{v} is not a sum of roots in R_theta^+")));
    }
    let sigma = d.sigma()?;
    let ps: Vec<i64> = sigma.iter().map(|g| l.p_form(g)).collect();
    let mut memo = HashMap::new();
    let mut nodes = 0usize;
    let (best, count, parts) = max_sigma(&sigma, &ps, v, 0, &mut memo, &mut nodes, opts.max_nodes)?
        .ok_or_else(|| Error::NotEffective(format!("{v} is not a sum of Sigma_theta elements")))?;
    if count != 1 {
        return Err(Error::Internal(format!("{count} decompositions attain sum p = {best}")));
    }
    Ok(sort_summands(l, parts.into_iter().map(|i| sigma[i].clone()).collect()))
}

type MaxEntry = Option<(i64, u64, Vec<usize>)>;

fn max_sigma(
    sigma: &[DimVector],
    ps: &[i64],
    x: &DimVector,
    min: usize,
    memo: &mut HashMap<(DimVector, usize), MaxEntry>,
    nodes: &mut usize,
    cap: usize,
) -> Result<MaxEntry> {
    if x.is_zero() {
        return Ok(Some((0, 1, vec![])));
    }
    if let Some(e) = memo.get(&(x.clone(), min)) {
        return Ok(e.clone());
    }
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::ResourceCap { what: "decomposition search nodes", limit: cap });
    }
    let mut out: MaxEntry = None;
    for i in min..sigma.len() {
        if !sigma[i].le(x) {
            continue;
        }
        let rest = x - &sigma[i];
        if let Some((b, c, parts)) = max_sigma(sigma, ps, &rest, i, memo, nodes, cap)? {
            let val = b + ps[i];
            out = match out {
                Some((ob, oc, op)) if ob > val => Some((ob, oc, op)),
                Some((ob, oc, op)) if ob == val => Some((ob, oc + c, op)),
                _ => {
                    let mut p = vec![i];
                    p.extend(parts);
                    Some((val, c, p))
                }
            };
        }
    }
    memo.insert((x.clone(), min), out.clone());
    Ok(out)
}

/// One part `(n_i, beta^(i))` of a representation type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub mult: i64,
    pub root: DimVector,
    pub p: i64,
}

/// A representation type; the framing part (framing coordinate 1) comes first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationType {
    pub parts: Vec<Part>,
    pub stratum_dim: i64,
}

impl RepresentationType {
    pub fn framing_part(&self) -> &Part {
        &self.parts[0]
    }

    /// Parts other than the framing part.
    pub fn vertices(&self) -> &[Part] {
        &self.parts[1..]
    }

    pub fn total(&self, l: &FramedLattice) -> DimVector {
        let mut t = DimVector::zeros(l.dim());
        for part in &self.parts {
            t = &t + &(part.mult * &part.root);
        }
        t
    }
}

fn partitions(n: i64, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `n` in reverse lexicographic order.
pub fn integer_partitions(n: i64) -> Vec<Vec<i64>> {
    partitions(n, n)
}

fn multisets(
    sigma: &[DimVector],
    x: &DimVector,
    min: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut usize,
    cap: usize,
) -> Result<()> {
    if x.is_zero() {
        out.push(current.clone());
        return Ok(());
    }
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::ResourceCap { what: "representation type search nodes", limit: cap });
    }
    for i in min..sigma.len() {
        if sigma[i].le(x) {
            current.push(i);
            multisets(sigma, &(x - &sigma[i]), i, current, out, nodes, cap)?;
            current.pop();
        }
    }
    Ok(())
}

/// All representation types of `v` at `theta`, ordered by decreasing stratum
/// dimension and then by parts.
pub fn representation_types(
    l: &FramedLattice,
    v: &DimVector,
    theta: &StabilityParameter,
    opts: DecompOptions,
) -> Result<Vec<RepresentationType>> {
    if v.inf() != 1 {
        return Err(Error::InvalidParameter(format!("{v} must have framing coordinate 1")));
    }
    let mut d = Decomposer::new(l, theta, v, opts)?;
    if d.best(v)?.is_none() {
        return Err(Error::NotEffective(format!("{v} is not a sum of roots in R_theta^+")));
    }
    let sigma = d.sigma()?;
    let mut raw = Vec::new();
    let mut nodes = 0;
    multisets(&sigma, v, 0, &mut vec![], &mut raw, &mut nodes, opts.max_nodes)?;

    let mut out = Vec::new();
    for ms in raw {
        let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
        for i in ms {
            *counts.entry(i).or_default() += 1;
        }
        // Each imaginary root expands into the partitions of its multiplicity.
        let mut choices: Vec<Vec<Vec<Part>>> = Vec::new();
        for (&i, &c) in &counts {
            let root = sigma[i].clone();
            let p = l.p_form(&root);
            let opts: Vec<Vec<Part>> = if p > 0 {
                integer_partitions(c)
                    .into_iter()
                    .map(|lam| lam.into_iter().map(|m| Part { mult: m, root: root.clone(), p }).collect())
                    .collect()
            } else {
                vec![vec![Part { mult: c, root, p }]]
            };
            choices.push(opts);
        }
        let mut combos: Vec<Vec<Part>> = vec![vec![]];
        for opts in choices {
            let mut next = Vec::new();
            for prefix in &combos {
                for o in &opts {
                    let mut c = prefix.clone();
                    c.extend(o.iter().cloned());
                    next.push(c);
                }
            }
            combos = next;
        }
        for mut parts in combos {
            parts.sort_by(|a, b| {
                b.root
                    .inf()
                    .cmp(&a.root.inf())
                    .then_with(|| graded_lex(&a.root.0, &b.root.0))
                    .then_with(|| b.mult.cmp(&a.mult))
            });
            let stratum_dim = 2 * parts.iter().map(|p| p.p).sum::<i64>();
            out.push(RepresentationType { parts, stratum_dim });
        }
    }
    out.sort_by(|a, b| {
        b.stratum_dim.cmp(&a.stratum_dim).then_with(|| {
            let key = |t: &RepresentationType| -> Vec<(Vec<i64>, i64)> {
                t.parts.iter().map(|p| (p.root.0.clone(), p.mult)).collect()
            };
            key(a).cmp(&key(b))
        })
    });
    Ok(out)
}

/// Genericity and smoothness of a parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "walls")]
pub enum ParameterClass {
    #[serde(rename = "GENERIC_SMOOTH")]
    GenericSmooth,
    /// `n = 1` and `theta` lies only on `delta^perp`.
    #[serde(rename = "SMOOTH_NOT_GENERIC")]
    SmoothNotGeneric(Vec<Hyperplane>),
    #[serde(rename = "NON_GENERIC")]
    NonGeneric(Vec<Hyperplane>),
}

pub fn classify_parameter(arr: &Arrangement, theta: &StabilityParameter) -> ParameterClass {
    let on: Vec<Hyperplane> = arr.zero_set(theta).into_iter().map(|i| arr.hyperplanes[i].clone()).collect();
    if on.is_empty() {
        return ParameterClass::GenericSmooth;
    }
    if arr.lattice.n == 1 && on.iter().all(|h| h.tag == HyperplaneTag::Delta) {
        return ParameterClass::SmoothNotGeneric(on);
    }
    ParameterClass::NonGeneric(on)
}
