//! Stability parameters, the arrangement of walls in `Theta_v`, and chamber
//! enumeration both globally and inside the fundamental cone `F`.
//!
//! Parameters are stored on all of `I`; the framing value is determined by the
//! others through `theta(v) = 0`. Chambers inside `F` are found on the slice
//! `theta(delta) = 1`, where `F` becomes the positive orthant in `theta_1..theta_r`
//! and the walls become `{theta(alpha) = m : 0 < m < n}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framed::{DimVector, FramedLattice};
use crate::lp::{maximize, Constraint, LpOutcome, Relation, SignConstraint, Q};
use crate::regions::{to_q, AffineArrangement, AffineHyperplane, EnumOptions};

mod polygons;
pub use polygons::{slice_polygons, SlicePolygon};

/// A stability parameter `theta in Hom(Z^I, Q)` with `theta(v) = 0`, stored as a
/// primitive integer vector indexed by `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StabilityParameter {
    #[serde(with = "bigint_strings")]
    pub values: Vec<BigInt>,
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

/// Scales a rational vector to a primitive integer vector with the same signs.
pub fn normalise(values: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in values {
        lcm = lcm.lcm(q.denom());
    }
    let ints: Vec<BigInt> = values.iter().map(|q| (q * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

impl StabilityParameter {
    /// From values on affine vertices `0..=r`; the framing value is completed.
    pub fn from_finite(l: &FramedLattice, theta: &[BigRational]) -> Result<Self> {
        if theta.len() != l.rank() + 1 {
            return Err(Error::DimensionMismatch { expected: l.rank() + 1, got: theta.len() });
        }
        let delta = to_q(&l.root_data.delta);
        let td: BigRational = theta.iter().zip(&delta).map(|(a, b)| a * b).sum();
        let mut full = vec![-(td * BigRational::from_integer(l.n.into()))];
        full.extend(theta.iter().cloned());
        Ok(StabilityParameter { values: normalise(&full) })
    }

    /// From values on all of `I`; rejects vectors with `theta(v) != 0`.
    pub fn from_full(l: &FramedLattice, theta: &[BigRational]) -> Result<Self> {
        if theta.len() != l.dim() {
            return Err(Error::DimensionMismatch { expected: l.dim(), got: theta.len() });
        }
        let v = to_q(&l.v().0);
        let tv: BigRational = theta.iter().zip(&v).map(|(a, b)| a * b).sum();
        if !tv.is_zero() {
            return Err(Error::InvalidParameter(format!("theta(v) = {tv}, expected 0")));
        }
        Ok(StabilityParameter { values: normalise(theta) })
    }

    pub fn from_finite_ints(l: &FramedLattice, theta: &[i64]) -> Result<Self> {
        Self::from_finite(l, &to_q(theta))
    }

    /// Wraps an integer vector on `I` that already satisfies `theta(v) = 0`.
    pub(crate) fn from_full_ints(values: Vec<BigInt>) -> Self {
        let q: Vec<BigRational> = values.into_iter().map(BigRational::from_integer).collect();
        StabilityParameter { values: normalise(&q) }
    }

    pub fn zero(l: &FramedLattice) -> Self {
        StabilityParameter { values: vec![BigInt::zero(); l.dim()] }
    }

    pub fn eval(&self, g: &DimVector) -> BigInt {
        self.values.iter().zip(&g.0).map(|(a, &b)| a * BigInt::from(b)).sum()
    }

    /// Values on affine vertices `0..=r`.
    pub fn finite_coords(&self) -> &[BigInt] {
        &self.values[1..]
    }

    pub fn framing(&self) -> &BigInt {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// Whether `theta(delta) >= 0` and `theta(rho_i) >= 0` for `i >= 1`.
    pub fn in_closed_f(&self, l: &FramedLattice) -> bool {
        !self.eval(&l.delta()).is_negative() && self.values[2..].iter().all(|x| !x.is_negative())
    }

    /// Whether all defining inequalities of `F` hold strictly.
    pub fn in_open_f(&self, l: &FramedLattice) -> bool {
        self.eval(&l.delta()).is_positive() && self.values[2..].iter().all(|x| x.is_positive())
    }
}

impl fmt::Display for StabilityParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Which family a wall normal belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum HyperplaneTag {
    #[serde(rename = "DELTA")]
    Delta,
    /// `m delta + alpha`, `0 <= m < n`; `m = 0` is the finite root `alpha`.
    #[serde(rename = "M_DELTA_PLUS_ALPHA")]
    Plus { m: i64, alpha: Vec<i64> },
    /// `m delta - alpha`, `0 < m < n`.
    #[serde(rename = "M_DELTA_MINUS_ALPHA")]
    Minus { m: i64, alpha: Vec<i64> },
}

impl HyperplaneTag {
    fn class(&self) -> u8 {
        match self {
            HyperplaneTag::Delta => 0,
            HyperplaneTag::Plus { .. } => 1,
            HyperplaneTag::Minus { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: DimVector,
    pub tag: HyperplaneTag,
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tag {
            HyperplaneTag::Delta => write!(f, "delta^perp"),
            HyperplaneTag::Plus { m: 0, alpha } => write!(f, "({alpha:?})^perp"),
            HyperplaneTag::Plus { m, alpha } => write!(f, "({m}delta+{alpha:?})^perp"),
            HyperplaneTag::Minus { m, alpha } => write!(f, "({m}delta-{alpha:?})^perp"),
        }
    }
}

/// The walls of `Theta_v`, in deterministic order: `delta`, then `m delta + alpha`
/// by `(m, alpha)`, then `m delta - alpha` by `(m, alpha)`.
pub fn build_arrangement(l: &FramedLattice) -> Vec<Hyperplane> {
    let mut out = vec![Hyperplane { normal: l.delta(), tag: HyperplaneTag::Delta }];
    for m in 0..l.n {
        for alpha in &l.root_data.positive_roots {
            out.push(Hyperplane {
                normal: l.affine_root(m, 1, alpha),
                tag: HyperplaneTag::Plus { m, alpha: alpha.clone() },
            });
        }
    }
    for m in 1..l.n {
        for alpha in &l.root_data.positive_roots {
            out.push(Hyperplane {
                normal: l.affine_root(m, -1, alpha),
                tag: HyperplaneTag::Minus { m, alpha: alpha.clone() },
            });
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].tag.class() <= w[1].tag.class()));
    out
}

/// A chamber: signs over the arrangement and an interior witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    #[serde(with = "sign_string")]
    pub signs: Vec<i8>,
    pub witness: StabilityParameter,
    #[serde(rename = "in_F")]
    pub in_f: bool,
}

pub(crate) mod sign_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn to_string(v: &[i8]) -> String {
        v.iter()
            .map(|&s| match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    pub fn serialize<S: Serializer>(v: &[i8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i8>, D::Error> {
        let raw = String::deserialize(d)?;
        raw.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(D::Error::custom(format!("bad sign {other:?}"))),
            })
            .collect()
    }
}

/// Result of [`Arrangement::locate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Chamber(Chamber),
    OnWall(Vec<Hyperplane>),
}

/// A relatively open face of the arrangement (signs may be zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    #[serde(with = "sign_string")]
    pub signs: Vec<i8>,
    pub witness: StabilityParameter,
}

/// JSON form of an arrangement with some of its chambers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementReport {
    pub hyperplanes: Vec<Hyperplane>,
    pub chambers: Vec<Chamber>,
}

/// A chamber of `F` together with its region on the slice `theta(delta) = 1`.
#[derive(Debug, Clone)]
pub struct SliceChamber {
    pub chamber: Chamber,
    pub slice_signs: Vec<i8>,
    pub slice_witness: Vec<Q>,
}

/// The arrangement `A_v` of a framed lattice.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub lattice: FramedLattice,
    pub hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(lattice: &FramedLattice) -> Self {
        Arrangement { hyperplanes: build_arrangement(lattice), lattice: lattice.clone() }
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|x| x.normal == h.normal)
    }

    /// Finds the wall whose normal is `normal` or `-normal`.
    pub fn find_normal(&self, normal: &DimVector) -> Option<&Hyperplane> {
        let neg = -normal;
        self.hyperplanes.iter().find(|h| &h.normal == normal || h.normal == neg)
    }

    pub fn signs(&self, theta: &StabilityParameter) -> Vec<i8> {
        self.hyperplanes
            .iter()
            .map(|h| {
                let x = theta.eval(&h.normal);
                if x.is_zero() {
                    0
                } else if x.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// Indices of the walls containing `theta`.
    pub fn zero_set(&self, theta: &StabilityParameter) -> Vec<usize> {
        self.signs(theta).iter().enumerate().filter(|(_, &s)| s == 0).map(|(i, _)| i).collect()
    }

    pub fn locate(&self, theta: &StabilityParameter) -> Location {
        let signs = self.signs(theta);
        if signs.contains(&0) {
            return Location::OnWall(
                signs
                    .iter()
                    .zip(&self.hyperplanes)
                    .filter(|(&s, _)| s == 0)
                    .map(|(_, h)| h.clone())
                    .collect(),
            );
        }
        Location::Chamber(Chamber {
            signs,
            in_f: theta.in_open_f(&self.lattice),
            witness: theta.clone(),
        })
    }

    /// The chamber containing a generic parameter.
    pub fn chamber_of(&self, theta: &StabilityParameter) -> Result<Chamber> {
        match self.locate(theta) {
            Location::Chamber(c) => Ok(c),
            Location::OnWall(hs) => Err(Error::InvalidParameter(format!(
                "parameter {theta} lies on {} wall(s), first {}",
                hs.len(),
                hs[0]
            ))),
        }
    }

    /// The arrangement as central hyperplanes in coordinates `theta_0..theta_r`.
    pub fn cone_arrangement(&self) -> AffineArrangement {
        AffineArrangement {
            dim: self.lattice.rank() + 1,
            base: vec![],
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| AffineHyperplane { normal: to_q(&h.normal.0[1..]), offset: Q::zero() })
                .collect(),
        }
    }

    fn param_from_coords(&self, x: &[Q]) -> StabilityParameter {
        StabilityParameter::from_finite(&self.lattice, x).expect("dimension matches")
    }

    /// The slice of `F` at `theta(delta) = 1`, in coordinates `theta_1..theta_r`,
    /// cut by the walls `(m delta - alpha)^perp`, `0 < m < n`.
    pub fn f_slice(&self) -> (AffineArrangement, Vec<usize>) {
        let r = self.lattice.rank();
        let base = (0..r)
            .map(|i| {
                let mut e = vec![Q::zero(); r];
                e[i] = Q::one();
                SignConstraint { coeffs: e, rhs: Q::zero(), sign: 1 }
            })
            .collect();
        let mut hyperplanes = Vec::new();
        let mut index = Vec::new();
        for (k, h) in self.hyperplanes.iter().enumerate() {
            if let HyperplaneTag::Minus { m, alpha } = &h.tag {
                hyperplanes.push(AffineHyperplane {
                    normal: to_q(alpha),
                    offset: Q::from_integer((*m).into()),
                });
                index.push(k);
            }
        }
        (AffineArrangement { dim: r, base, hyperplanes }, index)
    }

    /// Lifts a slice point `theta_1..theta_r` to `theta(delta) = 1`.
    pub fn lift_slice_point(&self, x: &[Q]) -> StabilityParameter {
        let delta = &self.lattice.root_data.delta;
        let mut theta0 = Q::one();
        for (xi, &d) in x.iter().zip(&delta[1..]) {
            theta0 -= xi * Q::from_integer(d.into());
        }
        let mut coords = vec![theta0];
        coords.extend(x.iter().cloned());
        self.param_from_coords(&coords)
    }

    /// Chambers of `F` with their slice regions, sorted by sign vector.
    pub fn slice_chambers(&self, opts: EnumOptions) -> Result<Vec<SliceChamber>> {
        if self.lattice.rank() == 0 {
            let w = self.param_from_coords(&[Q::one()]);
            return Ok(vec![SliceChamber {
                chamber: self.chamber_of(&w)?,
                slice_signs: vec![],
                slice_witness: vec![],
            }]);
        }
        let (slice, _) = self.f_slice();
        let mut out = Vec::new();
        for region in slice.regions(opts)? {
            let theta = self.lift_slice_point(&region.witness);
            let chamber = self.chamber_of(&theta).map_err(|e| {
                Error::Internal(format!("slice witness is not generic: {e}"))
            })?;
            if !chamber.in_f {
                return Err(Error::Internal("slice witness outside F".into()));
            }
            out.push(SliceChamber {
                chamber,
                slice_signs: region.signs,
                slice_witness: region.witness,
            });
        }
        out.sort_by(|a, b| a.chamber.signs.cmp(&b.chamber.signs));
        Ok(out)
    }

    pub fn enumerate_chambers_in_f(&self, opts: EnumOptions) -> Result<Vec<Chamber>> {
        Ok(self.slice_chambers(opts)?.into_iter().map(|s| s.chamber).collect())
    }

    /// Every chamber of `Theta_v`.
    pub fn enumerate_all_chambers(&self, opts: EnumOptions) -> Result<Vec<Chamber>> {
        let cone = self.cone_arrangement();
        let mut out = Vec::new();
        for region in cone.regions(opts)? {
            out.push(self.chamber_of(&self.param_from_coords(&region.witness))?);
        }
        out.sort_by(|a, b| a.signs.cmp(&b.signs));
        Ok(out)
    }

    /// Every face of `Theta_v` (chambers, walls and all lower strata).
    pub fn enumerate_faces(&self, opts: EnumOptions) -> Result<Vec<Face>> {
        let cone = self.cone_arrangement();
        let mut out = Vec::new();
        for region in cone.faces(opts)? {
            let witness = self.param_from_coords(&region.witness);
            if self.signs(&witness) != region.signs {
                return Err(Error::Internal("face witness disagrees with its signs".into()));
            }
            out.push(Face { signs: region.signs, witness });
        }
        Ok(out)
    }

    /// Indices of walls supporting facets of a chamber.
    pub fn chamber_facets(&self, c: &Chamber) -> Vec<usize> {
        self.cone_arrangement().facets(&c.signs)
    }

    /// Whether the closure of a chamber of `F` meets `delta^perp` outside the
    /// origin, i.e. whether its slice region is unbounded.
    pub fn closure_meets_delta_wall(&self, c: &Chamber) -> bool {
        let r = self.lattice.rank();
        let mut cons = Vec::with_capacity(self.len() + 2);
        for (h, &s) in self.hyperplanes.iter().zip(&c.signs) {
            let coeffs = to_q(&h.normal.0[1..]).into_iter().map(|a| a * Q::from_integer(s.into())).collect();
            cons.push(Constraint::new(coeffs, Relation::Ge, Q::zero()));
        }
        cons.push(Constraint::new(to_q(&self.lattice.root_data.delta), Relation::Eq, Q::zero()));
        let mut norm = vec![Q::one(); r + 1];
        norm[0] = Q::zero();
        cons.push(Constraint::new(norm, Relation::Eq, Q::one()));
        matches!(maximize(r + 1, &vec![Q::zero(); r + 1], &cons), LpOutcome::Optimal { .. })
    }

    /// A point in the relative interior of the facet of `c` on wall `k`.
    pub fn facet_point(&self, c: &Chamber, k: usize) -> Option<StabilityParameter> {
        self.cone_arrangement().is_facet(&c.signs, k).map(|x| self.param_from_coords(&x))
    }

    pub fn report(&self, chambers: Vec<Chamber>) -> ArrangementReport {
        ArrangementReport { hyperplanes: self.hyperplanes.clone(), chambers }
    }
}

/// `prod ((n-1) h + d_i) / d_i`, the number of chambers inside `F`.
pub fn count_chambers_formula(l: &FramedLattice) -> Result<BigInt> {
    let h = l.root_data.coxeter_number;
    let mut q = BigRational::one();
    for &d in &l.root_data.degrees {
        q *= BigRational::new(((l.n - 1) * h + d).into(), d.into());
    }
    if !q.is_integer() {
        return Err(Error::Internal(format!("chamber count {q} is not an integer")));
    }
    Ok(q.to_integer())
}

/// `2 |W_Gamma|` times [`count_chambers_formula`]: all chambers of `Theta_v`.
pub fn total_chambers_formula(l: &FramedLattice) -> Result<BigInt> {
    Ok(count_chambers_formula(l)? * BigInt::from(2u8) * BigInt::from(l.root_data.weyl_order()))
}

/// `theta_i = 1` for `i >= 1` and `theta_0 = 1/(2n) - h + 1`, a point of the
/// chamber whose moduli space is the Hilbert scheme of points.
pub fn c_minus_witness(l: &FramedLattice) -> StabilityParameter {
    let r = l.rank();
    let mut x = vec![Q::one(); r + 1];
    x[0] = Q::new(BigInt::one(), BigInt::from(2 * l.n))
        - Q::from_integer((l.root_data.coxeter_number - 1).into());
    StabilityParameter::from_finite(l, &x).expect("dimension matches")
}

/// `theta_i = 1` for all affine vertices: the `n Gamma`-Hilbert scheme chamber.
pub fn c_plus_witness(l: &FramedLattice) -> StabilityParameter {
    StabilityParameter::from_finite(l, &vec![Q::one(); l.rank() + 1]).expect("dimension matches")
}
