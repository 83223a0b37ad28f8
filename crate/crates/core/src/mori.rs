//! The linearisation maps onto `N^1(X/Y)`, the Mori chamber decomposition of
//! the movable cone, and isomorphism of moduli spaces via the Weyl group.
//!
//! `N^1` coordinates are taken in the basis `det(R_0), .., det(R_r)`. In this
//! basis `L_F` is the projection `theta -> (theta_0, .., theta_r)`, so all of the
//! content of `L` lies in the reduction to `F`. For `n = 1` the kernel of `L_F`
//! is spanned by the direction of `theta_0` and that coordinate is dropped.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{bigint_strings, c_minus_witness, c_plus_witness, normalise, Arrangement, Chamber, Hyperplane, StabilityParameter};
use crate::error::{Error, Result};
use crate::framed::{DimVector, FramedLattice};
use crate::regions::EnumOptions;
use crate::root_data::Kind;
use crate::walls::{contraction_type, Contraction};
use crate::weyl::{enumerate_group, reduce_to_f, WeylElement};

/// Labels of the `N^1` coordinates.
pub fn basis_legend(l: &FramedLattice) -> Vec<String> {
    let first = if l.n == 1 { 1 } else { 0 };
    (first..=l.rank()).map(|i| format!("det(R_{i})")).collect()
}

fn project(l: &FramedLattice, coords: &[BigInt]) -> Vec<BigInt> {
    if l.n == 1 {
        coords[1..].to_vec()
    } else {
        coords.to_vec()
    }
}

/// `L_F(theta)`: exponents of `det(R_i)` in the linearisation of `theta`.
pub fn linearisation_lf(l: &FramedLattice, theta: &StabilityParameter) -> Vec<BigInt> {
    project(l, theta.finite_coords())
}

/// `L(theta) = L_F(w theta)` for `w theta` in `F`.
pub fn linearisation_l(l: &FramedLattice, theta: &StabilityParameter) -> Result<Vec<BigInt>> {
    let (_, tf) = reduce_to_f(l, theta)?;
    Ok(linearisation_lf(l, &tf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmpleModelTag {
    /// `Hilb^n` of the minimal resolution.
    #[serde(rename = "HILB_SCHEME")]
    HilbScheme,
    /// The `n Gamma`-Hilbert scheme.
    #[serde(rename = "N_GAMMA_HILB")]
    NGammaHilb,
    #[serde(rename = "OTHER")]
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallContraction {
    pub normal: Hyperplane,
    pub contraction: Contraction,
}

/// Nef cone of the model attached to a chamber of `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefConeModel {
    pub basis_legend: Vec<String>,
    pub chamber_ref: Chamber,
    /// Primitive generators of the extremal rays.
    pub generators: Vec<Generator>,
    pub ample_model_tag: AmpleModelTag,
    pub walls: Vec<WallContraction>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Generator(#[serde(with = "bigint_strings")] pub Vec<BigInt>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovableCone {
    /// Inward normals of the facets, in `N^1` coordinates.
    pub facets: Vec<Generator>,
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriReport {
    pub movable_cone: MovableCone,
    pub chambers: Vec<NefConeModel>,
}

/// One-dimensional kernel of an integer matrix with `dim` columns, if it is one-dimensional.
fn kernel_line(rows: &[&[i64]], dim: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = BigRational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); dim];
    v[free] = BigRational::one();
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = -m[i][free].clone();
    }
    Some(v)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut vec![], &mut out);
    out
}

/// Extremal rays of the pointed cone `{x : a . x >= 0 for a in ineqs}` in
/// `theta_0..theta_r` coordinates, given the normals of its facets.
fn extremal_rays(facets: &[&[i64]], ineqs: &[Vec<i64>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for sub in subsets(facets.len(), dim - 1) {
        let rows: Vec<&[i64]> = sub.iter().map(|&i| facets[i]).collect();
        let Some(v) = kernel_line(&rows, dim) else { continue };
        for sign in [1i64, -1] {
            let cand: Vec<BigRational> = v.iter().map(|x| x * BigRational::from_integer(sign.into())).collect();
            let ok = ineqs.iter().all(|a| {
                let s: BigRational = a.iter().zip(&cand).map(|(&c, x)| x * BigRational::from_integer(c.into())).sum();
                !s.is_negative()
            });
            if ok {
                let ray = normalise(&cand);
                if !rays.contains(&ray) {
                    rays.push(ray);
                }
            }
        }
    }
    rays.sort();
    rays
}

fn chamber_inequalities(arr: &Arrangement, c: &Chamber) -> Vec<Vec<i64>> {
    arr.hyperplanes
        .iter()
        .zip(&c.signs)
        .map(|(h, &s)| h.normal.0[1..].iter().map(|&x| x * i64::from(s)).collect())
        .collect()
}

fn images(l: &FramedLattice, rays: Vec<Vec<BigInt>>) -> Vec<Generator> {
    let mut out: Vec<Generator> = rays
        .into_iter()
        .map(|r| Generator(normalise(&project(l, &r).into_iter().map(BigRational::from_integer).collect::<Vec<_>>())))
        .filter(|g| g.0.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The cone `L_F(F)`.
pub fn movable_cone(l: &FramedLattice) -> MovableCone {
    let r = l.rank();
    let mut normals: Vec<Vec<i64>> = vec![l.root_data.delta.clone()];
    for i in 1..=r {
        normals.push((0..=r).map(|j| i64::from(i == j)).collect());
    }
    let refs: Vec<&[i64]> = normals.iter().map(|v| v.as_slice()).collect();
    let rays = extremal_rays(&refs, &normals, r + 1);
    let facets = if l.n == 1 {
        normals[1..].iter().map(|v| Generator(v[1..].iter().map(|&x| x.into()).collect())).collect()
    } else {
        normals.iter().map(|v| Generator(v.iter().map(|&x| x.into()).collect())).collect()
    };
    MovableCone { facets, generators: images(l, rays) }
}

fn ample_tag(arr: &Arrangement, c: &Chamber) -> AmpleModelTag {
    let l = &arr.lattice;
    let has = |t: StabilityParameter| arr.signs(&t) == c.signs;
    if has(c_minus_witness(l)) {
        AmpleModelTag::HilbScheme
    } else if has(c_plus_witness(l)) {
        AmpleModelTag::NGammaHilb
    } else {
        AmpleModelTag::Other
    }
}

/// The nef cone model of a chamber of `F`.
pub fn nef_cone_model(arr: &Arrangement, c: &Chamber) -> Result<NefConeModel> {
    if !c.in_f {
        return Err(Error::InvalidParameter("chamber is not contained in F".into()));
    }
    let l = &arr.lattice;
    let facets = arr.chamber_facets(c);
    let normals: Vec<&[i64]> = facets.iter().map(|&k| &arr.hyperplanes[k].normal.0[1..]).collect();
    let rays = extremal_rays(&normals, &chamber_inequalities(arr, c), l.rank() + 1);
    let walls = facets
        .iter()
        .map(|&k| Ok(WallContraction { normal: arr.hyperplanes[k].clone(), contraction: contraction_type(arr, c, k)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(NefConeModel {
        basis_legend: basis_legend(l),
        chamber_ref: c.clone(),
        generators: images(l, rays),
        ample_model_tag: ample_tag(arr, c),
        walls,
    })
}

/// One nef cone model per chamber of `F`.
pub fn mori_chamber_report(arr: &Arrangement, opts: EnumOptions) -> Result<MoriReport> {
    let chambers = arr.enumerate_chambers_in_f(opts)?;
    let models = if opts.jobs > 1 {
        chambers.par_iter().map(|c| nef_cone_model(arr, c)).collect::<Result<Vec<_>>>()?
    } else {
        chambers.iter().map(|c| nef_cone_model(arr, c)).collect::<Result<Vec<_>>>()?
    };
    Ok(MoriReport { movable_cone: movable_cone(&arr.lattice), chambers: models })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "w")]
pub enum ModelComparison {
    /// `w` maps the chamber of the first parameter onto that of the second.
    #[serde(rename = "ISOMORPHIC")]
    Isomorphic(WeylElement),
    #[serde(rename = "DISTINCT")]
    Distinct,
}

/// Groups up to this size are searched for a shortest word.
const SHORTEST_WORD_LIMIT: usize = 20_000;

fn shorten(l: &FramedLattice, w: WeylElement) -> WeylElement {
    if crate::weyl::group_order(l) > SHORTEST_WORD_LIMIT as u128 {
        return w;
    }
    match enumerate_group(l, SHORTEST_WORD_LIMIT) {
        Ok(all) => all.into_iter().find(|x| x.matrix == w.matrix).unwrap_or(w),
        Err(_) => w,
    }
}

/// Whether the moduli spaces at two generic parameters are isomorphic over `Y`.
pub fn models_isomorphic(arr: &Arrangement, a: &StabilityParameter, b: &StabilityParameter) -> Result<ModelComparison> {
    let l = &arr.lattice;
    arr.chamber_of(a)?;
    arr.chamber_of(b)?;
    let (wa, fa) = reduce_to_f(l, a)?;
    let (wb, fb) = reduce_to_f(l, b)?;
    if arr.signs(&fa) != arr.signs(&fb) {
        return Ok(ModelComparison::Distinct);
    }
    Ok(ModelComparison::Isomorphic(shorten(l, wb.inverse(l).compose(&wa))))
}

fn check_aw(l: &FramedLattice) -> Result<()> {
    if l.root_data.kind != Kind::A || l.n != 2 {
        return Err(Error::InvalidParameter(format!(
            "coordinates of T are defined for type A with n = 2, not {}{} with n = {}",
            l.root_data.kind, l.rank(), l.n
        )));
    }
    Ok(())
}

/// The map `T: Z^I -> Z^{r+1}` with `rho_inf -> -2 e_0`,
/// `rho_0 -> e_0 - e_1 - .. - e_r` and `rho_i -> e_i`.
pub fn aw_transform(l: &FramedLattice, gamma: &DimVector) -> Result<Vec<i64>> {
    check_aw(l)?;
    if gamma.len() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), got: gamma.len() });
    }
    let r = l.rank();
    let g0 = gamma.at(0);
    let mut out = vec![-2 * gamma.inf() + g0];
    out.extend((1..=r).map(|i| gamma.at(i) - g0));
    Ok(out)
}

/// `theta` as a functional on `Z^{r+1}` through `T`: `(theta(delta), theta_1, .., theta_r)`.
pub fn aw_coordinates(l: &FramedLattice, theta: &StabilityParameter) -> Result<Vec<BigInt>> {
    check_aw(l)?;
    let mut out = vec![theta.eval(&l.delta())];
    out.extend(theta.finite_coords()[1..].iter().cloned());
    Ok(out)
}

/// Walls inside `F` in the coordinates of `T`: `x_0 = x_i + .. + x_j` for `1 <= i <= j <= r`.
pub fn aw_interior_walls(l: &FramedLattice) -> Result<Vec<Vec<i64>>> {
    check_aw(l)?;
    let r = l.rank();
    let mut out = Vec::new();
    for i in 1..=r {
        for j in i..=r {
            let mut v = vec![0i64; r + 1];
            v[0] = 1;
            for x in v.iter_mut().take(j + 1).skip(i) {
                *x = -1;
            }
            out.push(v);
        }
    }
    Ok(out)
}
