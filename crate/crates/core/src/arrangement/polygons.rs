//! Polygon export of the slice `theta(delta) = 1` of `F` for rank-2 types.

use std::cmp::Ordering;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{c_minus_witness, c_plus_witness, sign_string, Arrangement};
use crate::error::{Error, Result};
use crate::lp::Q;
use crate::regions::{AffineHyperplane, EnumOptions};

/// One chamber of `F` drawn on the slice, in coordinates `(theta_1, theta_2)`.
///
/// Unbounded regions are clipped to the box `[0, clip]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlicePolygon {
    #[serde(with = "sign_string")]
    pub signs: Vec<i8>,
    pub label: Option<String>,
    pub unbounded: bool,
    pub facet_count: usize,
    pub clip: String,
    pub vertices: Vec<[String; 2]>,
    pub vertices_approx: Vec<[f64; 2]>,
}

fn intersect(a: &AffineHyperplane, b: &AffineHyperplane) -> Option<[Q; 2]> {
    let det = &a.normal[0] * &b.normal[1] - &a.normal[1] * &b.normal[0];
    if det.is_zero() {
        return None;
    }
    let x = (&a.offset * &b.normal[1] - &b.offset * &a.normal[1]) / &det;
    let y = (&a.normal[0] * &b.offset - &b.normal[0] * &a.offset) / &det;
    Some([x, y])
}

fn axis(i: usize, value: Q) -> AffineHyperplane {
    let mut normal = vec![Q::zero(), Q::zero()];
    normal[i] = Q::from_integer(1.into());
    AffineHyperplane { normal, offset: value }
}

fn ccw_sort(points: &mut [[Q; 2]]) {
    let k = Q::from_integer((points.len() as i64).into());
    let cx = points.iter().map(|p| p[0].clone()).sum::<Q>() / &k;
    let cy = points.iter().map(|p| p[1].clone()).sum::<Q>() / &k;
    let half = |p: &[Q; 2]| {
        let dy = &p[1] - &cy;
        let dx = &p[0] - &cx;
        u8::from(dy.is_negative() || (dy.is_zero() && dx.is_negative()))
    };
    points.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let cross = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
}

/// Polygons of the chambers of `F` on the slice; rank 2 only.
pub fn slice_polygons(arr: &Arrangement, opts: EnumOptions) -> Result<Vec<SlicePolygon>> {
    if arr.lattice.rank() != 2 {
        return Err(Error::InvalidInstance(format!(
            "slice polygons need rank 2, got rank {}",
            arr.lattice.rank()
        )));
    }
    let (slice, _) = arr.f_slice();
    let zero = Q::zero();
    let mut lines: Vec<AffineHyperplane> = slice.hyperplanes.clone();
    lines.push(axis(0, zero.clone()));
    lines.push(axis(1, zero.clone()));

    let mut clip = Q::from_integer(arr.lattice.n.into());
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(p) = intersect(a, b) {
                for c in p {
                    if c >= clip {
                        clip = c + Q::from_integer(1.into());
                    }
                }
            }
        }
    }
    lines.push(axis(0, clip.clone()));
    lines.push(axis(1, clip.clone()));

    let minus = arr.chamber_of(&c_minus_witness(&arr.lattice))?.signs;
    let plus = arr.chamber_of(&c_plus_witness(&arr.lattice))?.signs;

    let mut out = Vec::new();
    for sc in arr.slice_chambers(opts)? {
        let inside = |p: &[Q; 2]| {
            let ok_box = p.iter().all(|c| !c.is_negative() && c <= &clip);
            ok_box
                && slice
                    .hyperplanes
                    .iter()
                    .zip(&sc.slice_signs)
                    .all(|(h, &s)| !(h.eval(p) * Q::from_integer(s.into())).is_negative())
        };
        let mut pts: Vec<[Q; 2]> = Vec::new();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if let Some(p) = intersect(a, b) {
                    if inside(&p) && !pts.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        ccw_sort(&mut pts);
        let facets = arr.chamber_facets(&sc.chamber);
        let label = if sc.chamber.signs == minus && sc.chamber.signs == plus {
            Some("C-=C+".to_string())
        } else if sc.chamber.signs == minus {
            Some("C-".to_string())
        } else if sc.chamber.signs == plus {
            Some("C+".to_string())
        } else {
            None
        };
        out.push(SlicePolygon {
            signs: sc.chamber.signs.clone(),
            label,
            unbounded: arr.closure_meets_delta_wall(&sc.chamber),
            facet_count: facets.len(),
            clip: clip.to_string(),
            vertices_approx: pts
                .iter()
                .map(|p| [p[0].to_f64().unwrap_or(f64::NAN), p[1].to_f64().unwrap_or(f64::NAN)])
                .collect(),
            vertices: pts.iter().map(|p| [p[0].to_string(), p[1].to_string()]).collect(),
        });
    }
    Ok(out)
}
