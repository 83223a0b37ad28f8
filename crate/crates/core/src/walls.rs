//! Wall classification, Ext-graph local models at points of a wall, contraction
//! types and the semismallness dimension audit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{bigint_strings, c_plus_witness, Arrangement, Chamber, Hyperplane, HyperplaneTag, StabilityParameter};
use crate::decomposition::{representation_types, DecompOptions, RepresentationType};
use crate::error::{Error, Result};
use crate::framed::DimVector;
use crate::weyl::reduce_to_f;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WallClass {
    #[serde(rename = "IMAGINARY_BOUNDARY")]
    ImaginaryBoundary,
    #[serde(rename = "REAL_BOUNDARY")]
    RealBoundary,
    #[serde(rename = "REAL_INTERNAL")]
    RealInternal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallInfo {
    pub hyperplane: Hyperplane,
    pub wall_class: WallClass,
    /// `m` for real walls (0 on boundary walls).
    pub m: Option<i64>,
    pub alpha: Option<Vec<i64>>,
}

/// Class of the walls lying on a hyperplane. Walls on `(m delta + alpha)^perp`
/// with `m > 0` never meet `F`; they are reported as internal.
pub fn wall_info(h: &Hyperplane) -> WallInfo {
    let (wall_class, m, alpha) = match &h.tag {
        HyperplaneTag::Delta => (WallClass::ImaginaryBoundary, None, None),
        HyperplaneTag::Plus { m: 0, alpha } => (WallClass::RealBoundary, Some(0), Some(alpha.clone())),
        HyperplaneTag::Plus { m, alpha } | HyperplaneTag::Minus { m, alpha } => {
            (WallClass::RealInternal, Some(*m), Some(alpha.clone()))
        }
    };
    WallInfo { hyperplane: h.clone(), wall_class, m, alpha }
}

/// Classifies a point lying on exactly one wall.
pub fn classify_wall(arr: &Arrangement, theta0: &StabilityParameter) -> Result<WallInfo> {
    let zs = arr.zero_set(theta0);
    match zs.as_slice() {
        [k] => Ok(wall_info(&arr.hyperplanes[*k])),
        [] => Err(Error::InvalidParameter(format!("{theta0} lies on no wall"))),
        many => Err(Error::InvalidParameter(format!(
            "{theta0} lies on {} walls: {}",
            many.len(),
            many.iter().map(|&k| arr.hyperplanes[k].to_string()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// A point on `h` off every other wall. Walls meeting `F` get a point of `F`.
pub fn pick_generic_wall_point(arr: &Arrangement, h: &Hyperplane) -> Result<StabilityParameter> {
    let l = &arr.lattice;
    let idx = arr
        .index_of(h)
        .ok_or_else(|| Error::InvalidParameter(format!("{h} is not a wall of this arrangement")))?;
    let r = l.rank();
    let ok = |t: &StabilityParameter| arr.zero_set(t) == vec![idx];

    if let HyperplaneTag::Minus { m, alpha } = &h.tag {
        let ht_alpha: i64 = alpha.iter().sum();
        let ht_beta: i64 = l.root_data.highest_root.iter().sum();
        let mut x = vec![q(1); r + 1];
        x[0] = BigRational::new(ht_alpha.into(), (*m).into()) - q(ht_beta);
        let t = StabilityParameter::from_finite(l, &x)?;
        if ok(&t) {
            return Ok(t);
        }
    }

    let normal = &h.normal.0[1..];
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d63_6b61_7900 + idx as u64);
    let simple = match &h.tag {
        HyperplaneTag::Plus { m: 0, alpha } if alpha.iter().sum::<i64>() == 1 => alpha.iter().position(|&a| a == 1),
        _ => None,
    };
    let meets_f = matches!(h.tag, HyperplaneTag::Delta | HyperplaneTag::Minus { .. }) || simple.is_some();
    for attempt in 0..10_000u64 {
        let k = 8 + 4 * attempt as i64;
        let mut x: Vec<BigRational> = (0..=r)
            .map(|_| {
                let v = rng.gen_range(1..=k);
                if meets_f || rng.gen_bool(0.5) {
                    q(v)
                } else {
                    q(-v)
                }
            })
            .collect();
        // Solve the wall equation for one coordinate.
        let solve_for = match (&h.tag, simple) {
            (_, Some(j)) => j + 1,
            (HyperplaneTag::Delta | HyperplaneTag::Minus { .. }, _) => 0,
            _ => (0..=r).rev().find(|&j| normal[j] != 0).expect("nonzero normal"),
        };
        x[solve_for] = BigRational::zero();
        let rest: BigRational = x.iter().zip(normal).map(|(a, &b)| a * q(b)).sum();
        x[solve_for] = -rest / q(normal[solve_for]);
        let t = StabilityParameter::from_finite(l, &x)?;
        if ok(&t) {
            return Ok(t);
        }
    }
    Err(Error::Internal(format!("no generic point found on {h}")))
}

/// A point of a chamber whose closure contains `theta0`, on the side where the
/// all-ones parameter lies.
pub fn adjacent_chamber_point(arr: &Arrangement, theta0: &StabilityParameter) -> Result<StabilityParameter> {
    let l = &arr.lattice;
    let u = c_plus_witness(l);
    let mut t = BigRational::one();
    for h in &arr.hyperplanes {
        let a = theta0.eval(&h.normal);
        let b = u.eval(&h.normal);
        if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
            continue;
        }
        let limit = BigRational::new(a.abs(), b.abs()) / q(2);
        if limit < t {
            t = limit;
        }
    }
    let x: Vec<BigRational> = theta0
        .finite_coords()
        .iter()
        .zip(u.finite_coords())
        .map(|(a, b)| BigRational::from_integer(a.clone()) + &t * BigRational::from_integer(b.clone()))
        .collect();
    let theta = StabilityParameter::from_finite(l, &x)?;
    arr.chamber_of(&theta)
        .map_err(|e| Error::Internal(format!("perturbation off the wall is not generic: {e}")))?;
    Ok(theta)
}

/// Symbolic description of an Ext-graph local model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum ModelLabel {
    /// Empty Ext-graph: the point is stable.
    #[serde(rename = "STABLE")]
    Stable,
    /// Product of Hilbert-Chow morphisms `Hilb^{n_i}(C^2) -> Sym^{n_i}(C^2)`.
    #[serde(rename = "HILBERT_CHOW_PRODUCT")]
    HilbertChowProduct { partition: Vec<i64> },
    /// `T^* Gr(k, N)` over the closure of a nilpotent orbit, times `C^{2 ell}`.
    #[serde(rename = "COTANGENT_GRASSMANNIAN")]
    CotangentGrassmannian { k: i64, n: i64, ell: i64 },
    #[serde(rename = "UNRECOGNISED")]
    Unrecognised,
}

impl ModelLabel {
    /// Dimension of the central fibre of the local model.
    pub fn fibre_dim(&self) -> Option<i64> {
        match self {
            ModelLabel::Stable => Some(0),
            ModelLabel::HilbertChowProduct { partition } => Some(partition.iter().map(|x| x - 1).sum()),
            ModelLabel::CotangentGrassmannian { k, n, .. } => Some(k * (n - k)),
            ModelLabel::Unrecognised => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtGraphModel {
    pub vertex_count: usize,
    pub loops: Vec<i64>,
    pub edges: Vec<Vec<i64>>,
    pub m_vec: Vec<i64>,
    pub n_vec: Vec<i64>,
    #[serde(with = "bigint_strings")]
    pub rho: Vec<BigInt>,
    pub ell: i64,
    pub model_label: ModelLabel,
}

fn check_closure(arr: &Arrangement, theta: &StabilityParameter, theta0: &StabilityParameter) -> Result<()> {
    let c = arr.chamber_of(theta)?;
    for (h, &s) in arr.hyperplanes.iter().zip(&c.signs) {
        let x = theta0.eval(&h.normal);
        if !x.is_zero() && (x.is_positive() != (s > 0)) {
            return Err(Error::InvalidParameter(format!(
                "theta0 is not in the closure of the chamber of theta (separated by {h})"
            )));
        }
    }
    Ok(())
}

/// Ext-graph data of a stratum on a wall.
pub fn ext_graph_model(
    arr: &Arrangement,
    tau: &RepresentationType,
    theta: &StabilityParameter,
    theta0: &StabilityParameter,
) -> Result<ExtGraphModel> {
    let l = &arr.lattice;
    check_closure(arr, theta, theta0)?;
    if tau.total(l) != l.v() {
        return Err(Error::InvalidParameter("representation type does not sum to v".into()));
    }
    if let Some(p) = tau.parts.iter().find(|p| !theta0.eval(&p.root).is_zero()) {
        return Err(Error::InvalidParameter(format!("theta0 does not vanish on part {}", p.root)));
    }
    let framing = tau.framing_part();
    if framing.root.inf() != 1 || framing.mult != 1 {
        return Err(Error::InvalidParameter("first part must be the framing part".into()));
    }
    let verts = tau.vertices();
    let k = verts.len();
    let loops = verts.iter().map(|p| l.p_form(&p.root)).collect::<Vec<_>>();
    let edges = (0..k)
        .map(|i| (0..k).map(|j| if i == j { 0 } else { -l.pair(&verts[i].root, &verts[j].root) }).collect())
        .collect::<Vec<Vec<i64>>>();
    let m_vec = verts.iter().map(|p| p.mult).collect::<Vec<_>>();
    let n_vec = verts.iter().map(|p| -l.pair(&framing.root, &p.root)).collect::<Vec<_>>();
    let rho = verts.iter().map(|p| theta.eval(&p.root)).collect();
    let ell = l.p_form(&framing.root);

    let model_label = if k == 0 {
        ModelLabel::Stable
    } else if loops.iter().all(|&x| x == 1)
        && n_vec.iter().all(|&x| x == 1)
        && edges.iter().flatten().all(|&x| x == 0)
    {
        ModelLabel::HilbertChowProduct { partition: m_vec.clone() }
    } else if k == 1 && loops[0] == 0 {
        ModelLabel::CotangentGrassmannian { k: m_vec[0], n: n_vec[0], ell }
    } else {
        ModelLabel::Unrecognised
    };
    Ok(ExtGraphModel { vertex_count: k, loops, edges, m_vec, n_vec, rho, ell, model_label })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Contraction {
    #[serde(rename = "DIVISORIAL")]
    Divisorial,
    #[serde(rename = "FLOP")]
    Flop,
}

/// Contraction induced by moving from chamber `c` onto its wall on hyperplane `k`.
pub fn contraction_type(arr: &Arrangement, c: &Chamber, k: usize) -> Result<Contraction> {
    if k >= arr.len() || arr.facet_point(c, k).is_none() {
        return Err(Error::InvalidParameter(format!("hyperplane {k} does not support a wall of the chamber")));
    }
    let l = &arr.lattice;
    let (w, _) = reduce_to_f(l, &c.witness)?;
    let image = w.act_on_normal(l, &arr.hyperplanes[k].normal);
    let h = arr
        .find_normal(&image)
        .ok_or_else(|| Error::Internal(format!("W does not preserve the arrangement at {image}")))?;
    Ok(match wall_info(h).wall_class {
        WallClass::ImaginaryBoundary | WallClass::RealBoundary => Contraction::Divisorial,
        WallClass::RealInternal => Contraction::Flop,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub rep_type: RepresentationType,
    pub codim: i64,
    pub fibre_dim: Option<i64>,
    pub passes: bool,
    /// `2 fibre_dim == codim`.
    pub equality: bool,
    pub model: ExtGraphModel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableLocusCheck {
    /// Smallest codimension of a preimage of a non-open stratum, if any exists.
    pub codim: Option<i64>,
    pub bound: i64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemismallReport {
    pub wall: WallInfo,
    pub theta: StabilityParameter,
    pub theta0: StabilityParameter,
    pub strata: Vec<StratumRecord>,
    pub unstable_locus: Option<UnstableLocusCheck>,
    pub passes: bool,
}

/// Dimension audit of the contraction to a generic wall point.
pub fn semismall_audit(arr: &Arrangement, theta0: &StabilityParameter, opts: DecompOptions) -> Result<SemismallReport> {
    let l = &arr.lattice;
    let wall = classify_wall(arr, theta0)?;
    let theta = adjacent_chamber_point(arr, theta0)?;
    let two_n = 2 * l.n;
    let mut strata = Vec::new();
    for tau in representation_types(l, &l.v(), theta0, opts)? {
        let model = ext_graph_model(arr, &tau, &theta, theta0)?;
        let fibre_dim = model.model_label.fibre_dim();
        let codim = two_n - tau.stratum_dim;
        let passes = fibre_dim.is_some_and(|f| 2 * f <= codim);
        let equality = fibre_dim.is_some_and(|f| 2 * f == codim);
        strata.push(StratumRecord { rep_type: tau, codim, fibre_dim, passes, equality, model });
    }
    let unstable_locus = (wall.wall_class == WallClass::RealInternal).then(|| {
        let m = wall.m.unwrap_or(0);
        let codim = strata
            .iter()
            .filter(|s| s.model.vertex_count > 0)
            .filter_map(|s| s.fibre_dim.map(|f| two_n - s.rep_type.stratum_dim - f))
            .min();
        UnstableLocusCheck { codim, bound: m + 1, passes: codim.is_none_or(|c| c > m) }
    });
    let passes = strata.iter().all(|s| s.passes) && unstable_locus.as_ref().is_none_or(|u| u.passes);
    Ok(SemismallReport { wall, theta, theta0: theta0.clone(), strata, unstable_locus, passes })
}

/// `gamma` such that the strata on the wall are `(1, v - k gamma; k, gamma)`.
pub fn wall_root(arr: &Arrangement, info: &WallInfo) -> DimVector {
    let h = &info.hyperplane;
    match &h.tag {
        HyperplaneTag::Delta => arr.lattice.delta(),
        _ => h.normal.clone(),
    }
}

/// Largest `N` with `N (N + m) <= n`.
pub fn max_stratum_index(n: i64, m: i64) -> i64 {
    let mut k = 0;
    while (k + 1) * (k + 1 + m) <= n {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{instance, Kind};

    #[test]
    fn classify_examples() {
        let l = instance(Kind::A, 1, 2).unwrap();
        let arr = Arrangement::new(&l);
        for (h, class) in arr.hyperplanes.iter().zip([
            WallClass::ImaginaryBoundary,
            WallClass::RealBoundary,
            WallClass::RealInternal,
            WallClass::RealInternal,
        ]) {
            let t = pick_generic_wall_point(&arr, h).unwrap();
            assert_eq!(classify_wall(&arr, &t).unwrap().wall_class, class);
        }
        assert!(classify_wall(&arr, &StabilityParameter::zero(&l)).is_err());
    }

    #[test]
    fn internal_wall_strata_a1_n2() {
        let l = instance(Kind::A, 1, 2).unwrap();
        let arr = Arrangement::new(&l);
        let h = arr.hyperplanes.iter().find(|h| matches!(h.tag, HyperplaneTag::Minus { .. })).unwrap();
        let t0 = pick_generic_wall_point(&arr, h).unwrap();
        let rep = semismall_audit(&arr, &t0, DecompOptions::default()).unwrap();
        assert!(rep.passes);
        assert_eq!(rep.strata.len(), 2);
        assert_eq!(
            rep.strata[1].model.model_label,
            ModelLabel::CotangentGrassmannian { k: 1, n: 3, ell: 0 }
        );
    }

    #[test]
    fn stratum_index() {
        assert_eq!(max_stratum_index(4, 0), 2);
        assert_eq!(max_stratum_index(2, 1), 1);
        assert_eq!(max_stratum_index(5, 1), 1);
        assert_eq!(max_stratum_index(6, 1), 2);
    }
}
