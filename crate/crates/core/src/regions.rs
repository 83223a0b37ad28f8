//! Incremental region and face enumeration for affine hyperplane arrangements
//! over the rationals, with witnesses from [`crate::lp::interior_point`].

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{interior_point, SignConstraint, Q};

/// Default cap on the number of regions held at once.
pub const DEFAULT_MAX_REGIONS: usize = 1_000_000;

/// The affine hyperplane `normal . x = offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineHyperplane {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl AffineHyperplane {
    pub fn eval(&self, x: &[Q]) -> Q {
        let s: Q = self.normal.iter().zip(x).map(|(a, b)| a * b).sum();
        s - &self.offset
    }

    pub fn side(&self, x: &[Q]) -> i8 {
        sign_of(&self.eval(x))
    }

    pub fn constraint(&self, sign: i8) -> SignConstraint {
        SignConstraint { coeffs: self.normal.clone(), rhs: self.offset.clone(), sign }
    }
}

pub fn sign_of(q: &Q) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// A cell of the arrangement: signs over the hyperplane list and a witness in
/// its relative interior.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub signs: Vec<i8>,
    pub witness: Vec<Q>,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub max_regions: usize,
    /// Worker threads for region splitting; 0 or 1 runs sequentially.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_regions: DEFAULT_MAX_REGIONS, jobs: 1 }
    }
}

/// An arrangement of affine hyperplanes restricted to an open polyhedron
/// described by strict `base` constraints.
#[derive(Debug, Clone)]
pub struct AffineArrangement {
    pub dim: usize,
    pub base: Vec<SignConstraint>,
    pub hyperplanes: Vec<AffineHyperplane>,
}

impl AffineArrangement {
    fn constraints(&self, signs: &[i8]) -> Vec<SignConstraint> {
        let mut cs = self.base.clone();
        cs.extend(signs.iter().zip(&self.hyperplanes).map(|(&s, h)| h.constraint(s)));
        cs
    }

    /// Witness for the cell with the given (possibly partial) sign vector.
    pub fn cell_witness(&self, signs: &[i8]) -> Option<Vec<Q>> {
        interior_point(self.dim, &self.constraints(signs))
    }

    fn split(&self, region: &Region, k: usize, with_zero: bool) -> Vec<Region> {
        let h = &self.hyperplanes[k];
        let here = h.side(&region.witness);
        let options: &[i8] = if with_zero { &[-1, 0, 1] } else { &[-1, 1] };
        let mut out = Vec::new();
        for &s in options {
            let mut signs = region.signs.clone();
            signs.push(s);
            let witness = if s == here {
                Some(region.witness.clone())
            } else {
                self.cell_witness(&signs)
            };
            if let Some(witness) = witness {
                out.push(Region { signs, witness });
            }
        }
        out
    }

    fn run(&self, opts: EnumOptions, with_zero: bool) -> Result<Vec<Region>> {
        let Some(start) = interior_point(self.dim, &self.base) else {
            return Ok(vec![]);
        };
        let mut regions = vec![Region { signs: vec![], witness: start }];
        let step = |regions: &Vec<Region>, k: usize| -> Vec<Region> {
            if opts.jobs > 1 {
                regions.par_iter().flat_map_iter(|r| self.split(r, k, with_zero)).collect()
            } else {
                regions.iter().flat_map(|r| self.split(r, k, with_zero)).collect()
            }
        };
        let pool = if opts.jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        for k in 0..self.hyperplanes.len() {
            regions = match &pool {
                Some(p) => p.install(|| step(&regions, k)),
                None => step(&regions, k),
            };
            if regions.len() > opts.max_regions {
                return Err(Error::ResourceCap { what: "region count", limit: opts.max_regions });
            }
        }
        regions.sort_by(|a, b| a.signs.cmp(&b.signs));
        Ok(regions)
    }

    /// Open regions (all signs nonzero).
    pub fn regions(&self, opts: EnumOptions) -> Result<Vec<Region>> {
        self.run(opts, false)
    }

    /// All relatively open faces inside the base polyhedron, chambers included.
    pub fn faces(&self, opts: EnumOptions) -> Result<Vec<Region>> {
        self.run(opts, true)
    }

    /// Whether hyperplane `k` supports a facet of the open region with `signs`.
    pub fn is_facet(&self, signs: &[i8], k: usize) -> Option<Vec<Q>> {
        let mut s = signs.to_vec();
        s[k] = 0;
        // Parallel copies of hyperplane k (same zero set) would make the LP
        // infeasible; arrangements here never contain them.
        self.cell_witness(&s)
    }

    /// Indices of hyperplanes supporting facets of the region.
    pub fn facets(&self, signs: &[i8]) -> Vec<usize> {
        (0..self.hyperplanes.len()).filter(|&k| self.is_facet(signs, k).is_some()).collect()
    }
}

/// Converts an integer row to rationals.
pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x.into())).collect()
}
