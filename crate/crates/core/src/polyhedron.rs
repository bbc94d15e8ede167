//! Polyhedra in both representations and the double description method.
//!
//! An H-representation is a list of inequalities `a.x >= b` plus equalities
//! `e.x = f`; a V-representation is `conv(vertices) + cone(rays) +
//! span(lines)`. Conversions are exact and emit irredundant output in a
//! canonical order, so two computations of the same set agree literally.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{kernel_of, rank_of, span_basis, RatMatrix};
use crate::rational::{
    add, canonical_cmp, dot, is_zero_vec, neg, primitive, primitive_line, scale, sort_dedup_canonical, zeros, Rat,
    RatVector,
};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub normal: RatVector,
    #[serde_as(as = "DisplayFromStr")]
    pub offset: Rat,
}

impl HalfSpace {
    pub fn new(normal: RatVector, offset: Rat) -> Self {
        Self { normal, offset }
    }

    pub fn slack(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) - &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub ineqs: Vec<HalfSpace>,
    #[serde(default)]
    pub eqs: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(dim: usize, ineqs: Vec<HalfSpace>, eqs: Vec<HalfSpace>) -> Result<Self> {
        for h in ineqs.iter().chain(&eqs) {
            check_dim(dim, h.normal.len())?;
        }
        Ok(Self { dim, ineqs, eqs })
    }

    /// The canonical empty set `{x : 0 >= 1}`.
    pub fn empty(dim: usize) -> Self {
        Self { dim, ineqs: vec![HalfSpace::new(zeros(dim), Rat::one())], eqs: Vec::new() }
    }

    pub fn universe(dim: usize) -> Self {
        Self { dim, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|h| !h.slack(x).is_negative()) && self.eqs.iter().all(|h| h.slack(x).is_zero())
    }

    /// Direction `d` is in the recession cone.
    pub fn recedes(&self, d: &[Rat]) -> bool {
        self.ineqs.iter().all(|h| !dot(&h.normal, d).is_negative())
            && self.eqs.iter().all(|h| dot(&h.normal, d).is_zero())
    }

    /// Direction `d` is in the lineality space.
    pub fn along_line(&self, d: &[Rat]) -> bool {
        self.ineqs.iter().chain(&self.eqs).all(|h| dot(&h.normal, d).is_zero())
    }

    pub fn intersect(&self, other: &HRep) -> Result<HRep> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.ineqs.extend(other.ineqs.iter().cloned());
        out.eqs.extend(other.eqs.iter().cloned());
        Ok(out)
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    pub dim: usize,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub vertices: Vec<RatVector>,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    #[serde(default)]
    pub rays: Vec<RatVector>,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    #[serde(default)]
    pub lines: Vec<RatVector>,
}

impl VRep {
    pub fn new(dim: usize, vertices: Vec<RatVector>, rays: Vec<RatVector>, lines: Vec<RatVector>) -> Result<Self> {
        for v in vertices.iter().chain(&rays).chain(&lines) {
            check_dim(dim, v.len())?;
        }
        Ok(Self { dim, vertices, rays, lines })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: Vec::new(), rays: Vec::new(), lines: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    /// Every element of this set satisfies `h`.
    pub fn inside(&self, h: &HRep) -> bool {
        self.is_empty()
            || (self.vertices.iter().all(|v| h.contains(v))
                && self.rays.iter().all(|r| h.recedes(r))
                && self.lines.iter().all(|l| h.along_line(l)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub dim: usize,
    pub hrep: Option<HRep>,
    pub vrep: Option<VRep>,
}

impl Polyhedron {
    pub fn from_hrep(h: HRep) -> Self {
        Self { dim: h.dim, hrep: Some(h), vrep: None }
    }

    pub fn from_vrep(v: VRep) -> Self {
        Self { dim: v.dim, hrep: None, vrep: Some(v) }
    }

    pub fn cone(dim: usize, generators: Vec<RatVector>) -> Result<Self> {
        Ok(Self::from_vrep(VRep::new(dim, vec![zeros(dim)], generators, Vec::new())?))
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, hrep: Some(HRep::empty(dim)), vrep: Some(VRep::empty(dim)) }
    }

    pub fn hrep(&self) -> Result<HRep> {
        match (&self.hrep, &self.vrep) {
            (Some(h), _) => Ok(h.clone()),
            (None, Some(v)) => vrep_to_hrep(v),
            (None, None) => Err(Error::Precondition("polyhedron has no representation".into())),
        }
    }

    pub fn vrep(&self) -> Result<VRep> {
        match (&self.vrep, &self.hrep) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(h)) => hrep_to_vrep(h),
            (None, None) => Err(Error::Precondition("polyhedron has no representation".into())),
        }
    }

    /// Both representations, irredundant and canonical.
    pub fn canonical(&self) -> Result<Polyhedron> {
        let v = match &self.hrep {
            Some(h) => hrep_to_vrep(h)?,
            None => canonical_vrep(&self.vrep()?)?,
        };
        let h = vrep_to_hrep(&v)?;
        Ok(Polyhedron { dim: self.dim, hrep: Some(h), vrep: Some(v) })
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.hrep()?.contains(x))
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vrep()?.is_empty())
    }
}

/// Re-derives an irredundant V-representation through the H-side.
fn canonical_vrep(v: &VRep) -> Result<VRep> {
    hrep_to_vrep(&vrep_to_hrep(v)?)
}

pub fn polyhedron_equal(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    check_dim(p.dim, q.dim)?;
    let (pv, qv) = (p.vrep()?, q.vrep()?);
    let (ph, qh) = (p.hrep()?, q.hrep()?);
    Ok(pv.inside(&qh) && qv.inside(&ph))
}

pub fn polyhedron_subset(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    check_dim(p.dim, q.dim)?;
    Ok(p.vrep()?.inside(&q.hrep()?))
}

struct DdRay {
    z: RatVector,
    zero: Vec<bool>,
}

/// Extreme rays and a lineality basis of `{x : A x >= 0, E x = 0}`.
///
/// The cone is first reduced to the orthogonal complement of its lineality
/// space inside `ker E`, where it is pointed; the rays are then built
/// incrementally from a simplicial start, combining adjacent pairs.
pub fn cone_generators(ineqs: &[RatVector], eqs: &[RatVector], dim: usize) -> (Vec<RatVector>, Vec<RatVector>) {
    let mut all: Vec<RatVector> = ineqs.to_vec();
    all.extend(eqs.iter().cloned());
    let mut lines: Vec<RatVector> =
        span_basis(&kernel_of(&all, dim), dim).iter().map(|l| primitive_line(l)).collect();
    sort_dedup_canonical(&mut lines);

    let mut constraints = eqs.to_vec();
    constraints.extend(lines.iter().cloned());
    let basis = kernel_of(&constraints, dim);
    let k = basis.len();
    if k == 0 {
        return (Vec::new(), lines);
    }
    let reduced: Vec<RatVector> = ineqs
        .iter()
        .map(|a| primitive(&basis.iter().map(|b| dot(a, b)).collect::<RatVector>()))
        .filter(|a| !is_zero_vec(a))
        .collect();
    let m = reduced.len();

    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<RatVector> = Vec::new();
    for (i, a) in reduced.iter().enumerate() {
        chosen_rows.push(a.clone());
        if rank_of(&chosen_rows) > chosen.len() {
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        } else {
            chosen_rows.pop();
        }
    }
    debug_assert_eq!(chosen.len(), k);
    let inv = RatMatrix::new(chosen_rows).expect("square").inverse().expect("independent rows");

    let zero_set = |z: &RatVector, processed: &[bool]| -> Vec<bool> {
        reduced.iter().zip(processed).map(|(a, &p)| p && dot(a, z).is_zero()).collect()
    };
    let mut processed = vec![false; m];
    for &i in &chosen {
        processed[i] = true;
    }
    let mut rays: Vec<DdRay> = inv
        .columns()
        .into_iter()
        .map(|c| {
            let z = primitive(&c);
            let zero = zero_set(&z, &processed);
            DdRay { z, zero }
        })
        .collect();

    for i in 0..m {
        if processed[i] {
            continue;
        }
        let a = &reduced[i];
        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, &r.z)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        for &p in &pos {
            for &q in &negs {
                let common: Vec<usize> =
                    (0..m).filter(|&r| rays[p].zero[r] && rays[q].zero[r]).collect();
                if common.len() + 2 < k {
                    continue;
                }
                let rows: Vec<RatVector> = common.iter().map(|&r| reduced[r].clone()).collect();
                if rank_of(&rows) + 2 != k {
                    continue;
                }
                let z = primitive(&add(&scale(&vals[p], &rays[q].z), &scale(&-vals[q].clone(), &rays[p].z)));
                next.push(DdRay { z, zero: Vec::new() });
            }
        }
        processed[i] = true;
        let mut kept: Vec<DdRay> = rays
            .into_iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r)
            .collect();
        kept.extend(next);
        for r in kept.iter_mut() {
            r.zero = zero_set(&r.z, &processed);
        }
        rays = kept;
    }

    let mut out: Vec<RatVector> = rays
        .iter()
        .map(|r| {
            let x = basis
                .iter()
                .zip(&r.z)
                .fold(zeros(dim), |acc, (b, c)| add(&acc, &scale(c, b)));
            primitive(&x)
        })
        .collect();
    sort_dedup_canonical(&mut out);
    (out, lines)
}

pub fn hrep_to_vrep(h: &HRep) -> Result<VRep> {
    HRep::new(h.dim, h.ineqs.clone(), h.eqs.clone())?;
    let n = h.dim;
    let lift = |hs: &HalfSpace| -> RatVector {
        let mut r = hs.normal.clone();
        r.push(-hs.offset.clone());
        r
    };
    let mut ineqs: Vec<RatVector> = h.ineqs.iter().map(lift).collect();
    let mut t_row = zeros(n);
    t_row.push(Rat::one());
    ineqs.push(t_row);
    let eqs: Vec<RatVector> = h.eqs.iter().map(lift).collect();
    let (rays, lines) = cone_generators(&ineqs, &eqs, n + 1);

    let mut vertices = Vec::new();
    let mut rec = Vec::new();
    for r in rays {
        let t = r[n].clone();
        if t.is_positive() {
            vertices.push(r[..n].iter().map(|x| x / &t).collect::<RatVector>());
        } else {
            rec.push(r[..n].to_vec());
        }
    }
    if vertices.is_empty() {
        return Ok(VRep::empty(n));
    }
    vertices.sort_by(|a, b| a.cmp(b));
    vertices.dedup();
    let lines = lines.into_iter().map(|l| l[..n].to_vec()).collect();
    Ok(VRep { dim: n, vertices, rays: rec, lines })
}

pub fn vrep_to_hrep(v: &VRep) -> Result<HRep> {
    VRep::new(v.dim, v.vertices.clone(), v.rays.clone(), v.lines.clone())?;
    let n = v.dim;
    if v.vertices.is_empty() {
        return Ok(HRep::empty(n));
    }
    let lift = |x: &RatVector, last: i64| -> RatVector {
        let mut r = x.clone();
        r.push(crate::rational::int(last));
        r
    };
    let mut rows: Vec<RatVector> = v.vertices.iter().map(|x| lift(x, 1)).collect();
    rows.extend(v.rays.iter().map(|x| lift(x, 0)));
    let eq_rows: Vec<RatVector> = v.lines.iter().map(|x| lift(x, 0)).collect();
    let (rays, lines) = cone_generators(&rows, &eq_rows, n + 1);
    let split = |r: &RatVector| HalfSpace::new(r[..n].to_vec(), -r[n].clone());
    // The tautology 0.x >= -1 shows up as the projection of (0, .., 0, 1)
    // orthogonal to the equalities.
    let mut unit_t = zeros(n);
    unit_t.push(Rat::one());
    let trivial = primitive(&orthogonal_part(&unit_t, &lines));
    let mut ineqs: Vec<HalfSpace> = rays
        .iter()
        .filter(|r| !is_zero_vec(&r[..n]) && **r != trivial)
        .map(split)
        .collect();
    ineqs.sort_by(|a, b| canonical_cmp(&a.normal, &b.normal).then_with(|| a.offset.cmp(&b.offset)));
    let eqs = lines.iter().map(split).collect();
    Ok(HRep { dim: n, ineqs, eqs })
}

/// Component of `v` orthogonal to the span of `basis`.
fn orthogonal_part(v: &[Rat], basis: &[RatVector]) -> RatVector {
    if basis.is_empty() {
        return v.to_vec();
    }
    let gram = RatMatrix::new(basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect())
        .expect("square gram matrix");
    let rhs: RatVector = basis.iter().map(|a| dot(a, v)).collect();
    let coeffs = gram.inverse().expect("independent basis").apply(&rhs).expect("shape");
    basis
        .iter()
        .zip(&coeffs)
        .fold(v.to_vec(), |acc, (b, c)| crate::rational::sub(&acc, &scale(c, b)))
}

/// `p + t`
pub fn translate(h: &HRep, t: &[Rat]) -> HRep {
    let shift = |hs: &HalfSpace| HalfSpace::new(hs.normal.clone(), &hs.offset + dot(&hs.normal, t));
    HRep { dim: h.dim, ineqs: h.ineqs.iter().map(shift).collect(), eqs: h.eqs.iter().map(shift).collect() }
}

/// `-p`
pub fn reflect(h: &HRep) -> HRep {
    let flip = |hs: &HalfSpace| HalfSpace::new(neg(&hs.normal), hs.offset.clone());
    HRep { dim: h.dim, ineqs: h.ineqs.iter().map(flip).collect(), eqs: h.eqs.iter().map(flip).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    fn k4_generators() -> Vec<RatVector> {
        vec![ints(&[1, 1, 1]), ints(&[1, -1, 1]), ints(&[-1, 1, 1]), ints(&[-1, -1, 1])]
    }

    #[test]
    fn orthant_facets() {
        let h = vrep_to_hrep(&VRep::new(2, vec![zeros(2)], vec![ints(&[1, 0]), ints(&[0, 1])], vec![]).unwrap()).unwrap();
        let normals: Vec<RatVector> = h.ineqs.iter().map(|x| x.normal.clone()).collect();
        assert_eq!(normals, vec![ints(&[1, 0]), ints(&[0, 1])]);
        assert!(h.eqs.is_empty());
    }

    #[test]
    fn k4_round_trip() {
        let h = vrep_to_hrep(&VRep::new(3, vec![zeros(3)], k4_generators(), vec![]).unwrap()).unwrap();
        let normals: Vec<RatVector> = h.ineqs.iter().map(|x| x.normal.clone()).collect();
        assert_eq!(normals, vec![ints(&[-1, 0, 1]), ints(&[1, 0, 1]), ints(&[0, -1, 1]), ints(&[0, 1, 1])]);
        let v = hrep_to_vrep(&h).unwrap();
        let mut expect = k4_generators();
        sort_dedup_canonical(&mut expect);
        assert_eq!(v.rays, expect);
        assert_eq!(v.vertices, vec![zeros(3)]);
    }

    #[test]
    fn point_and_empty() {
        let h = HRep::new(1, vec![HalfSpace::new(ints(&[1]), frac(1, 2)), HalfSpace::new(ints(&[-1]), frac(-1, 2))], vec![])
            .unwrap();
        let v = hrep_to_vrep(&h).unwrap();
        assert_eq!(v.vertices, vec![vec![frac(1, 2)]]);
        let back = vrep_to_hrep(&v).unwrap();
        assert!(back.ineqs.is_empty());
        assert_eq!(back.eqs.len(), 1);
        let e = HRep::new(1, vec![HalfSpace::new(ints(&[1]), int(0)), HalfSpace::new(ints(&[-1]), int(1))], vec![]).unwrap();
        assert!(hrep_to_vrep(&e).unwrap().is_empty());
    }

    #[test]
    fn lines_survive() {
        let h = HRep::new(2, vec![HalfSpace::new(ints(&[1, 0]), int(0))], vec![]).unwrap();
        let v = hrep_to_vrep(&h).unwrap();
        assert_eq!(v.lines, vec![ints(&[0, 1])]);
        assert_eq!(v.rays, vec![ints(&[1, 0])]);
    }

    #[test]
    fn translate_is_not_equal() {
        let orth = Polyhedron::cone(2, vec![ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        let h = orth.hrep().unwrap();
        let moved = Polyhedron::from_hrep(translate(&h, &ints(&[1, 0])));
        assert!(polyhedron_equal(&orth, &orth).unwrap());
        assert!(!polyhedron_equal(&orth, &moved).unwrap());
    }
}
