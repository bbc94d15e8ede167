//! Semi-order spaces: a vector space `V` ordered through a linear map `T`
//! into an ordered space `W`, with `x >=_V 0` meaning `T x >= 0`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::convergence::{decide_o_convergence, decide_towards, ConvergenceCertificate, ConvergenceVerdict, SeqFamily};
use crate::decision::Verdict;
use crate::error::{check_dim, Error, Result};
use crate::gallery::{
    gallery_decide, gallery_family_disjoint, gallery_tail_bounded, ECSeq, GalleryCertificate, GalleryFamily,
    GalleryOp, GallerySpace, GalleryVerdict,
};
use crate::linalg::{kernel_of, RatMatrix};
use crate::polyhedron::{HRep, HalfSpace, VRep};
use crate::rational::{add, dot, format_vec, scale, sub, zeros, Rat, RatVector};
use crate::space::{BoundedResult, OrderedSpace, Subspace};
use crate::structure::{band_projection, is_band, is_disjoint, is_ideal, BandProjection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiOrderSpace {
    pub v_dim: usize,
    pub w: OrderedSpace,
    pub t: RatMatrix,
    pub kernel_trivial: bool,
}

impl SemiOrderSpace {
    pub fn new(v_dim: usize, w: OrderedSpace, t: RatMatrix) -> Result<Self> {
        check_dim(v_dim, t.ncols())?;
        check_dim(w.dim, t.nrows())?;
        let kernel_trivial = t.rank() == v_dim;
        Ok(Self { v_dim, w, t, kernel_trivial })
    }

    pub fn identity(w: OrderedSpace) -> Self {
        let d = w.dim;
        Self { v_dim: d, w, t: RatMatrix::identity(d), kernel_trivial: true }
    }

    pub fn image(&self, x: &[Rat]) -> Result<RatVector> {
        self.t.apply(x)
    }

    pub fn kernel(&self) -> Vec<RatVector> {
        self.t.nullspace()
    }

    /// The wedge `{x : T x >= 0}` as inequalities on `V`.
    pub fn wedge(&self) -> HRep {
        let pull = |f: &RatVector| self.t.transpose().apply(f).expect("shape checked");
        let ineqs = self.w.cone.facets.iter().map(|f| HalfSpace::new(pull(f), Rat::zero())).collect();
        let eqs = self.w.cone.equalities.iter().map(|f| HalfSpace::new(pull(f), Rat::zero())).collect();
        HRep { dim: self.v_dim, ineqs, eqs }
    }

    /// The wedge meets its negative only in 0.
    pub fn is_antisymmetric(&self) -> bool {
        kernel_of(
            &self.wedge().ineqs.iter().chain(&self.wedge().eqs).map(|h| h.normal.clone()).collect::<Vec<_>>(),
            self.v_dim,
        )
        .is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.kernel_trivial && self.v_dim == self.w.dim
    }
}

/// `x <=_V y`
pub fn semi_leq(sos: &SemiOrderSpace, x: &[Rat], y: &[Rat]) -> Result<bool> {
    check_dim(sos.v_dim, x.len())?;
    check_dim(sos.v_dim, y.len())?;
    sos.w.is_positive(&sos.image(&sub(y, x))?)
}

/// `T(A)` is order bounded in `W`.
pub fn wt_order_bounded(sos: &SemiOrderSpace, set: &VRep) -> Result<BoundedResult> {
    check_dim(sos.v_dim, set.dim)?;
    let map = |vs: &[RatVector]| vs.iter().map(|v| sos.image(v)).collect::<Result<Vec<_>>>();
    let image = VRep::new(sos.w.dim, map(&set.vertices)?, map(&set.rays)?, map(&set.lines)?)?;
    sos.w.is_order_bounded(&image)
}

/// `x_n -> limit` in the semi-order: `T x_n` converges to `T limit` in `W`.
/// Certificates and refutations refer to the image family.
pub fn wt_converges(sos: &SemiOrderSpace, x: &SeqFamily, limit: &[Rat]) -> Result<ConvergenceVerdict> {
    check_dim(sos.v_dim, x.dim())?;
    check_dim(sos.v_dim, limit.len())?;
    decide_towards(&sos.w, &x.apply(&sos.t)?, &sos.image(limit)?)
}

/// `{T x_n}` is pairwise disjoint in `W`.
pub fn wt_disjoint(sos: &SemiOrderSpace, xs: &[RatVector]) -> Result<bool> {
    let images = xs.iter().map(|x| sos.image(x)).collect::<Result<Vec<_>>>()?;
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            if !is_disjoint(&sos.w, a, b)?.direct_result {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn image_subspace(sos: &SemiOrderSpace, b: &[RatVector]) -> Result<Subspace> {
    let images = b.iter().map(|x| sos.image(x)).collect::<Result<Vec<_>>>()?;
    Subspace::span(&sos.w, &images)
}

pub fn wt_ideal(sos: &SemiOrderSpace, b: &[RatVector]) -> Result<bool> {
    is_ideal(&image_subspace(sos, b)?)
}

pub fn wt_band(sos: &SemiOrderSpace, b: &[RatVector]) -> Result<bool> {
    is_band(&image_subspace(sos, b)?)
}

/// `P` on `V` with `T P = Q T`, `Q` the band projection onto `T(B)`.
pub fn wt_band_projection(sos: &SemiOrderSpace, b: &[RatVector]) -> Result<BandProjection> {
    let basis = crate::linalg::span_basis(b, sos.v_dim);
    let bmat = RatMatrix::from_columns(sos.v_dim, &basis)?;
    let tb = sos.t.mul(&bmat)?;
    if tb.rank() != basis.len() {
        return Ok(BandProjection::None { reason: "P_B is not well defined: T is not injective on B".into() });
    }
    let q = match band_projection(&image_subspace(sos, &basis)?)? {
        BandProjection::Projection { matrix } => matrix,
        BandProjection::None { reason } => {
            return Ok(BandProjection::None { reason: format!("T(B) is not a projection band: {reason}") })
        }
    };
    let mut cols = Vec::with_capacity(sos.v_dim);
    for j in 0..sos.v_dim {
        let target = q.apply(&sos.t.column(j))?;
        let coeffs = tb.solve(&target)?.ok_or_else(|| Error::Precondition("Q T x left T(B)".into()))?;
        cols.push(bmat.apply(&coeffs)?);
    }
    let p = RatMatrix::from_columns(sos.v_dim, &cols)?;
    debug_assert_eq!(p.mul(&p)?, p);
    debug_assert_eq!(sos.t.mul(&p)?, q.mul(&sos.t)?);
    Ok(BandProjection::Projection { matrix: p })
}

/// A polyhedron, possibly with some strict inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDescriptor {
    pub closed: HRep,
    #[serde(default)]
    pub strict: Vec<HalfSpace>,
}

impl SetDescriptor {
    pub fn closed(h: HRep) -> Self {
        Self { closed: h, strict: Vec::new() }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.closed.contains(x) && self.strict.iter().all(|h| h.slack(x).is_positive())
    }

    pub fn contains_family(&self, x: &SeqFamily) -> bool {
        let ineq = |h: &HalfSpace| x.functional(&h.normal).minus_constant(&h.offset);
        self.closed.ineqs.iter().all(|h| ineq(h).nonneg_everywhere())
            && self.closed.eqs.iter().all(|h| {
                let s = ineq(h);
                s.nonneg_everywhere() && ineq(&HalfSpace::new(crate::rational::neg(&h.normal), -&h.offset)).nonneg_everywhere()
            })
            && self.strict.iter().all(|h| ineq(h).positive_everywhere())
    }

    /// A point of `x + span(directions)` outside the set.
    fn escape_along(&self, x: &[Rat], directions: &[RatVector]) -> Option<RatVector> {
        if !self.contains(x) {
            return Some(x.to_vec());
        }
        for k in directions {
            for h in self.closed.eqs.iter() {
                if !dot(&h.normal, k).is_zero() {
                    return Some(add(x, k));
                }
            }
            for h in self.closed.ineqs.iter().chain(&self.strict) {
                let ak = dot(&h.normal, k);
                if !ak.is_zero() {
                    // Step far enough against the inequality to violate it.
                    let t = (h.slack(x) / ak.abs() + Rat::one()) * if ak.is_positive() { -Rat::one() } else { Rat::one() };
                    return Some(add(x, &scale(&t, k)));
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureRoute {
    /// Every convergent family in the set has all its limits in the set.
    Nets,
    /// `T(A)` is closed in `W`.
    Image,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedReport {
    pub route: ClosureRoute,
    pub verdict: Verdict,
    pub witness_family: Option<SeqFamily>,
    #[serde(with = "crate::space::opt_vec")]
    pub escaping_limit: Option<RatVector>,
}

/// Closedness of a set under semi-order convergence. Fails only with a
/// family inside the set having a limit outside it; holds only when `T` is
/// bijective and the set is a closed polyhedron.
pub fn wt_closed(sos: &SemiOrderSpace, set: &SetDescriptor, corpus: &[SeqFamily]) -> Result<ClosedReport> {
    check_dim(sos.v_dim, set.closed.dim)?;
    let kernel = sos.kernel();
    for x in corpus {
        check_dim(sos.v_dim, x.dim())?;
        if !set.contains_family(x) {
            continue;
        }
        let image = x.apply(&sos.t)?;
        if let ConvergenceVerdict::Converges { .. } = decide_o_convergence(&sos.w, &image)? {
            // Every point of limit + ker T is a limit in V.
            if let Some(out) = set.escape_along(&x.limit, &kernel) {
                return Ok(ClosedReport {
                    route: ClosureRoute::Nets,
                    verdict: Verdict::fails("a family inside the set has a limit outside it", format_vec(&out)),
                    witness_family: Some(x.clone()),
                    escaping_limit: Some(out),
                });
            }
        }
    }
    let verdict = if sos.is_bijective() && set.strict.is_empty() {
        Verdict::holds("T is bijective and T(A) is a closed polyhedron; order limits in W are coordinatewise limits")
    } else {
        Verdict::unknown("no escaping family in the corpus; closedness quantifies over all families")
    };
    Ok(ClosedReport { route: ClosureRoute::Nets, verdict, witness_family: None, escaping_limit: None })
}

/// The image-based notion: `T(A)` is order closed in `W`.
pub fn wt_closed_image(sos: &SemiOrderSpace, set: &SetDescriptor, corpus: &[SeqFamily]) -> Result<ClosedReport> {
    if set.strict.is_empty() {
        return Ok(ClosedReport {
            route: ClosureRoute::Image,
            verdict: Verdict::holds("the linear image of a closed polyhedron is a closed polyhedron"),
            witness_family: None,
            escaping_limit: None,
        });
    }
    let mut r = if sos.is_bijective() {
        wt_closed(sos, set, corpus)?
    } else {
        ClosedReport {
            route: ClosureRoute::Image,
            verdict: Verdict::unknown("image of a set with strict inequalities under a non-bijective map"),
            witness_family: None,
            escaping_limit: None,
        }
    };
    r.route = ClosureRoute::Image;
    if let Some(v) = r.escaping_limit.take() {
        r.escaping_limit = Some(sos.image(&v)?);
    }
    if r.verdict.outcome == crate::decision::Outcome::Holds {
        r.verdict = Verdict::unknown("strict inequalities: no closedness claim");
    }
    Ok(r)
}

/// Semi-order spaces whose `V` and `W` are gallery sequence spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallerySemiOrder {
    pub v: GallerySpace,
    pub w: GallerySpace,
    pub t: GalleryOp,
}

impl GallerySemiOrder {
    pub fn new(v: GallerySpace, w: GallerySpace, t: GalleryOp) -> Self {
        Self { v, w, t }
    }

    pub fn semi_leq(&self, x: &ECSeq, y: &ECSeq) -> Result<bool> {
        Ok(ECSeq::zero().leq(&self.t.apply(&y.sub(x))?))
    }

    pub fn converges(&self, x: &GalleryFamily, limit: &ECSeq, budget: u64) -> Result<GalleryVerdict> {
        if !x.all_in(self.v) {
            return Ok(GalleryVerdict::Unknown { reason: "family leaves the domain".into() });
        }
        match x.image(&self.t) {
            Some(image) => gallery_decide(self.w, &image, &self.t.apply(limit)?, budget),
            None => Ok(GalleryVerdict::Unknown { reason: "image family has no supported closed form".into() }),
        }
    }

    /// `{T x_n}` lies in one order interval.
    pub fn family_bounded(&self, x: &GalleryFamily) -> Option<bool> {
        let image = x.image(&self.t)?;
        gallery_tail_bounded(self.w, &image).bounded
    }

    pub fn family_disjoint(&self, x: &GalleryFamily) -> Option<bool> {
        gallery_family_disjoint(&x.image(&self.t)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DisjointNullReport {
    Holds { certificate: NullCertificate },
    HypothesisFailure { hypothesis: String },
    Fails { reason: String },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NullCertificate {
    Finite(ConvergenceCertificate),
    Gallery(GalleryCertificate),
}

impl DisjointNullReport {
    pub fn holds(&self) -> bool {
        matches!(self, DisjointNullReport::Holds { .. })
    }
}

/// Disjoint and order bounded families are order null. The family is
/// `xs` followed by zeros.
pub fn check_disjoint_bounded_null(sos: &SemiOrderSpace, xs: &[RatVector]) -> Result<DisjointNullReport> {
    if !sos.w.cone.is_simplicial() {
        return Err(Error::NonLatticeCodomain(sos.w.name.clone()));
    }
    for x in xs {
        check_dim(sos.v_dim, x.len())?;
    }
    if !wt_disjoint(sos, xs)? {
        return Ok(DisjointNullReport::HypothesisFailure { hypothesis: "images are not pairwise disjoint".into() });
    }
    let set = VRep::new(sos.v_dim, xs.to_vec(), Vec::new(), Vec::new())?;
    if !wt_order_bounded(sos, &set)?.bounded {
        return Ok(DisjointNullReport::HypothesisFailure { hypothesis: "images are not order bounded".into() });
    }
    let prefix = xs.iter().enumerate().map(|(i, x)| (i as u64 + 1, x.clone())).collect();
    let family = SeqFamily::new(zeros(sos.v_dim), Vec::new(), prefix)?;
    Ok(match wt_converges(sos, &family, &zeros(sos.v_dim))? {
        ConvergenceVerdict::Converges { otilde_certificate, .. } => {
            DisjointNullReport::Holds { certificate: NullCertificate::Finite(otilde_certificate) }
        }
        ConvergenceVerdict::NotConverges { refutation } => {
            DisjointNullReport::Fails { reason: format!("{refutation:?}") }
        }
        ConvergenceVerdict::Unknown { reason } => DisjointNullReport::Unknown { reason },
    })
}

pub fn check_disjoint_bounded_null_gallery(
    sos: &GallerySemiOrder,
    x: &GalleryFamily,
    budget: u64,
) -> Result<DisjointNullReport> {
    match sos.family_disjoint(x) {
        Some(true) => {}
        Some(false) => {
            return Ok(DisjointNullReport::HypothesisFailure { hypothesis: "images are not pairwise disjoint".into() })
        }
        None => return Ok(DisjointNullReport::Unknown { reason: "image family unsupported".into() }),
    }
    if sos.family_bounded(x) != Some(true) {
        return Ok(DisjointNullReport::HypothesisFailure { hypothesis: "images are not order bounded".into() });
    }
    Ok(match sos.converges(x, &ECSeq::zero(), budget)? {
        GalleryVerdict::Converges { certificate } => {
            DisjointNullReport::Holds { certificate: NullCertificate::Gallery(certificate) }
        }
        GalleryVerdict::NotConverges { explanation, .. } => DisjointNullReport::Fails { reason: explanation },
        GalleryVerdict::Unknown { reason } => DisjointNullReport::Unknown { reason },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::VecTerm;
    use crate::rational::{int, ints};

    #[test]
    fn semi_order_examples() {
        let o2 = OrderedSpace::orthant(2);
        let sos = SemiOrderSpace::new(2, o2.clone(), RatMatrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(semi_leq(&sos, &ints(&[0, 0]), &ints(&[0, -5])).unwrap());
        assert!(!sos.kernel_trivial && !sos.is_antisymmetric());
        assert!(SemiOrderSpace::identity(o2).is_antisymmetric());
        let g = GallerySemiOrder::new(GallerySpace::C0Rep, GallerySpace::LInfRep, GalleryOp::Elin);
        assert!(g.semi_leq(&ECSeq::zero(), &ECSeq::basis(1)).unwrap());
    }

    #[test]
    fn projection_through_injective_map() {
        let sos = SemiOrderSpace::new(2, OrderedSpace::orthant(3), RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]))
            .unwrap();
        assert!(wt_band(&sos, &[ints(&[1, 0])]).unwrap());
        let p = wt_band_projection(&sos, &[ints(&[1, 0])]).unwrap();
        assert_eq!(p.matrix().unwrap(), &RatMatrix::from_ints(&[&[1, 0], &[0, 0]]));
        let flat = SemiOrderSpace::new(2, OrderedSpace::orthant(2), RatMatrix::from_ints(&[&[1, 1], &[0, 0]])).unwrap();
        let p = wt_band_projection(&flat, &[ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        assert!(matches!(p, BandProjection::None { .. }));
    }

    #[test]
    fn strict_set_is_not_closed() {
        let o2 = OrderedSpace::orthant(2);
        let sos = SemiOrderSpace::identity(o2);
        let set = SetDescriptor {
            closed: HRep::universe(2),
            strict: vec![HalfSpace::new(ints(&[1, 0]), int(1))],
        };
        let x = SeqFamily::simple(ints(&[1, 0]), vec![VecTerm::new(ints(&[1, 0]), Rat::one(), -1)]).unwrap();
        let r = wt_closed(&sos, &set, &[x]).unwrap();
        assert!(r.verdict.is_fails());
        assert_eq!(r.escaping_limit, Some(ints(&[1, 0])));
        let cone = SetDescriptor::closed(sos.w.cone.hrep());
        assert!(wt_closed(&sos, &cone, &[]).unwrap().verdict.is_holds());
    }

    #[test]
    fn kernel_directions_escape() {
        let sos = SemiOrderSpace::new(2, OrderedSpace::orthant(1), RatMatrix::from_ints(&[&[1, 0]])).unwrap();
        let set = SetDescriptor::closed(HRep::new(2, vec![HalfSpace::new(ints(&[0, 1]), int(0))], vec![]).unwrap());
        let x = SeqFamily::harmonic(ints(&[1, 1]));
        let r = wt_closed(&sos, &set, &[x]).unwrap();
        let out = r.escaping_limit.unwrap();
        assert!(!set.contains(&out) && sos.image(&out).unwrap() == ints(&[0]));
    }

    #[test]
    fn disjoint_null_examples() {
        let sos = SemiOrderSpace::identity(OrderedSpace::orthant(3));
        let r = check_disjoint_bounded_null(&sos, &[ints(&[1, 0, 0]), ints(&[0, 0, 2])]).unwrap();
        assert!(r.holds());
        let r = check_disjoint_bounded_null(&sos, &[ints(&[1, 0, 0]), ints(&[1, 0, 0])]).unwrap();
        assert!(matches!(r, DisjointNullReport::HypothesisFailure { .. }));
        let g = GallerySemiOrder::new(GallerySpace::C0Rep, GallerySpace::LInfRep, GalleryOp::Inclusion);
        assert!(check_disjoint_bounded_null_gallery(&g, &GalleryFamily::Basis, 100).unwrap().holds());
    }
}
