//! Disjointness, disjoint complements, ideals, bands and band projections.
//!
//! Complements and band tests go through the functional representation:
//! `x` and `y` are disjoint exactly when their images have disjoint
//! supports. The definitional route (equality of the upper bound sets of
//! `±(x+y)` and `±(x-y)`) is kept for pairwise cross-checks.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{kernel_of, RatMatrix};
use crate::polyhedron::polyhedron_equal;
use crate::rational::{add, neg, sub, Rat, RatVector};
use crate::space::{OrderedSpace, Subspace};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessVerdict {
    #[serde_as(as = "(Vec<DisplayFromStr>, Vec<DisplayFromStr>)")]
    pub pair: (RatVector, RatVector),
    pub direct_result: bool,
    pub cover_result: Option<bool>,
    pub agree: bool,
}

pub fn disjoint_direct(space: &OrderedSpace, x: &[Rat], y: &[Rat]) -> Result<bool> {
    let s = add(x, y);
    let d = sub(x, y);
    let us = space.upper_bounds(&[s.clone(), neg(&s)])?;
    let ud = space.upper_bounds(&[d.clone(), neg(&d)])?;
    polyhedron_equal(&us, &ud)
}

pub fn disjoint_by_cover(embedding: &RatMatrix, x: &[Rat], y: &[Rat]) -> Result<bool> {
    let ix = embedding.apply(x)?;
    let iy = embedding.apply(y)?;
    Ok(ix.iter().zip(&iy).all(|(a, b)| a.is_zero() || b.is_zero()))
}

pub fn is_disjoint(space: &OrderedSpace, x: &[Rat], y: &[Rat]) -> Result<DisjointnessVerdict> {
    check_dim(space.dim, x.len())?;
    check_dim(space.dim, y.len())?;
    let direct_result = disjoint_direct(space, x, y)?;
    let cover_result = match space.functional_embedding() {
        Some(e) => Some(disjoint_by_cover(&e, x, y)?),
        None => None,
    };
    Ok(DisjointnessVerdict {
        pair: (x.to_vec(), y.to_vec()),
        direct_result,
        agree: cover_result.map_or(true, |c| c == direct_result),
        cover_result,
    })
}

fn embedding(space: &OrderedSpace) -> Result<RatMatrix> {
    space
        .functional_embedding()
        .ok_or_else(|| Error::Unsupported(format!("no cover for {}: cone not pointed and generating", space.name)))
}

/// Coordinates of the cover on which some element of `m` is nonzero.
pub fn support(space: &OrderedSpace, m: &[RatVector]) -> Result<Vec<usize>> {
    let e = embedding(space)?;
    let mut supp = Vec::new();
    for j in 0..e.nrows() {
        let mut hit = false;
        for y in m {
            check_dim(space.dim, y.len())?;
            if !crate::rational::dot(e.row(j), y).is_zero() {
                hit = true;
                break;
            }
        }
        if hit {
            supp.push(j);
        }
    }
    Ok(supp)
}

/// `{x : (E x)_j = 0 for j in coords}`
fn vanishing_on(space: &OrderedSpace, coords: &[usize]) -> Result<Subspace> {
    let e = embedding(space)?;
    let rows: Vec<RatVector> = coords.iter().map(|&j| e.row(j).clone()).collect();
    Subspace::span(space, &kernel_of(&rows, space.dim))
}

pub fn disjoint_complement(space: &OrderedSpace, m: &[RatVector]) -> Result<Subspace> {
    let supp = support(space, m)?;
    vanishing_on(space, &supp)
}

pub fn subspace_complement(sub_: &Subspace) -> Result<Subspace> {
    disjoint_complement(&sub_.parent, &sub_.basis)
}

/// A subspace is solid exactly when it contains every element whose image
/// is supported inside the support of its own image.
pub fn is_ideal(sub_: &Subspace) -> Result<bool> {
    let space = &sub_.parent;
    let e = embedding(space)?;
    let supp = support(space, &sub_.basis)?;
    let outside: Vec<usize> = (0..e.nrows()).filter(|j| !supp.contains(j)).collect();
    let n = vanishing_on(space, &outside)?;
    Ok(sub_.includes(&n))
}

pub fn is_band(sub_: &Subspace) -> Result<bool> {
    let d = subspace_complement(sub_)?;
    let dd = subspace_complement(&d)?;
    Ok(dd.same_as(sub_))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BandProjection {
    Projection { matrix: RatMatrix },
    None { reason: String },
}

impl BandProjection {
    pub fn matrix(&self) -> Option<&RatMatrix> {
        match self {
            BandProjection::Projection { matrix } => Some(matrix),
            BandProjection::None { .. } => None,
        }
    }
}

pub fn band_projection(band: &Subspace) -> Result<BandProjection> {
    let space = &band.parent;
    if !is_band(band)? {
        return Ok(BandProjection::None { reason: "not a band".into() });
    }
    let comp = subspace_complement(band)?;
    let total = band.dim() + comp.dim();
    if total != space.dim {
        return Ok(BandProjection::None {
            reason: format!("band plus its disjoint complement has dimension {total}, not {}", space.dim),
        });
    }
    let mut cols = band.basis.clone();
    cols.extend(comp.basis.iter().cloned());
    let basis = RatMatrix::from_columns(space.dim, &cols)?;
    let Some(inv) = basis.inverse() else {
        return Ok(BandProjection::None { reason: "band and complement are not independent".into() });
    };
    let mut keep = band.basis.clone();
    keep.extend(comp.basis.iter().map(|b| crate::rational::zeros(b.len())));
    let p = RatMatrix::from_columns(space.dim, &keep)?.mul(&inv)?;
    for g in &space.cone.extreme_rays {
        if !space.cone.contains(&p.apply(g)?) {
            return Ok(BandProjection::None { reason: "projection along the complement is not positive".into() });
        }
    }
    Ok(BandProjection::Projection { matrix: p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn k4_disjoint_pair() {
        let k4 = OrderedSpace::k4();
        let v = is_disjoint(&k4, &ints(&[1, 1, 1]), &ints(&[-1, -1, 1])).unwrap();
        assert!(v.direct_result && v.cover_result == Some(true));
        let w = is_disjoint(&k4, &ints(&[1, 0, 1]), &ints(&[0, 1, 1])).unwrap();
        assert!(!w.direct_result && w.agree);
    }

    #[test]
    fn k4_band_without_projection() {
        let k4 = OrderedSpace::k4();
        let b = Subspace::new(&k4, vec![ints(&[1, 1, 1])]).unwrap();
        assert!(is_band(&b).unwrap());
        let d = subspace_complement(&b).unwrap();
        assert!(d.same_as(&Subspace::new(&k4, vec![ints(&[-1, -1, 1])]).unwrap()));
        assert!(matches!(band_projection(&b).unwrap(), BandProjection::None { .. }));
        let e = Subspace::new(&k4, vec![ints(&[1, 0, 1])]).unwrap();
        assert_eq!(subspace_complement(&e).unwrap().dim(), 0);
        assert!(!is_band(&e).unwrap());
    }

    #[test]
    fn orthant_projection() {
        let o3 = OrderedSpace::orthant(3);
        let b = Subspace::new(&o3, vec![ints(&[1, 0, 0]), ints(&[0, 0, 1])]).unwrap();
        let p = band_projection(&b).unwrap();
        assert_eq!(p.matrix().unwrap(), &RatMatrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
        assert!(is_ideal(&b).unwrap());
    }
}
