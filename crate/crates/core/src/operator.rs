//! Linear operators between (semi-)ordered spaces: positivity, continuity
//! and boundedness classes, the modulus and the lattice operations on
//! operators with lattice codomain.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::convergence::{ConvergenceVerdict, SeqFamily};
use crate::decision::{Outcome, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::gallery::{ECSeq, GalleryFamily, GalleryOp, GalleryVerdict};
use crate::linalg::RatMatrix;
use crate::lp::maximize;
use crate::polyhedron::{hrep_to_vrep, VRep};
use crate::rational::{add, format_vec, int, neg, Rat, RatVector};
use crate::semiorder::{wt_converges, wt_order_bounded, GallerySemiOrder, SemiOrderSpace};
use crate::space::{Cone, OrderedSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LinOp {
    Matrix { domain: SemiOrderSpace, codomain: SemiOrderSpace, matrix: RatMatrix },
    Gallery { domain: GallerySemiOrder, codomain: GallerySemiOrder, op: GalleryOp },
}

impl LinOp {
    pub fn matrix(domain: SemiOrderSpace, codomain: SemiOrderSpace, matrix: RatMatrix) -> Result<Self> {
        check_dim(domain.v_dim, matrix.ncols())?;
        check_dim(codomain.v_dim, matrix.nrows())?;
        Ok(LinOp::Matrix { domain, codomain, matrix })
    }

    /// Between plain ordered spaces.
    pub fn between(domain: &OrderedSpace, codomain: &OrderedSpace, matrix: RatMatrix) -> Result<Self> {
        Self::matrix(SemiOrderSpace::identity(domain.clone()), SemiOrderSpace::identity(codomain.clone()), matrix)
    }

    /// `c0rep` ordered through the inclusion into `linfrep`, mapped by the
    /// operator `e_n -> (n, ..., n, 0, ...)` into `linfrep`.
    pub fn elin() -> Self {
        use crate::gallery::GallerySpace::{C0Rep, LInfRep};
        LinOp::Gallery {
            domain: GallerySemiOrder::new(C0Rep, LInfRep, GalleryOp::Inclusion),
            codomain: GallerySemiOrder::new(LInfRep, LInfRep, GalleryOp::Inclusion),
            op: GalleryOp::Elin,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorClassReport {
    pub positive: Verdict,
    pub order_continuous: Verdict,
    pub otilde_continuous: Verdict,
    pub semiorder_continuous: Verdict,
    pub semiorder_bounded: Verdict,
}

impl OperatorClassReport {
    /// The implications between the classes; a violation means some
    /// verdict is wrong.
    pub fn check_consistency(&self, codomain_dedekind_complete: bool) -> Result<()> {
        let h = |v: &Verdict| v.outcome == Outcome::Holds;
        let f = |v: &Verdict| v.outcome == Outcome::Fails;
        if h(&self.positive) && h(&self.order_continuous) && f(&self.otilde_continuous) {
            return Err(Error::InconsistentReport("positive and order continuous, yet not otilde-continuous".into()));
        }
        if codomain_dedekind_complete && h(&self.otilde_continuous) && f(&self.order_continuous) {
            return Err(Error::InconsistentReport("otilde-continuous into a lattice, yet not order continuous".into()));
        }
        check_kat(self)
    }
}

/// Semi-order continuous operators are semi-order bounded.
pub fn check_kat(report: &OperatorClassReport) -> Result<()> {
    if report.semiorder_continuous.outcome == Outcome::Holds && report.semiorder_bounded.outcome == Outcome::Fails {
        return Err(Error::InconsistentReport("semi-order continuous but not semi-order bounded".into()));
    }
    Ok(())
}

/// The wedge of a semi-order space as a cone on `V`.
fn wedge_cone(sos: &SemiOrderSpace) -> Result<Cone> {
    let h = sos.wedge();
    Cone::from_facets(
        sos.v_dim,
        h.ineqs.into_iter().map(|f| f.normal).collect(),
        h.eqs.into_iter().map(|f| f.normal).collect(),
    )
}

fn wedge_space(sos: &SemiOrderSpace) -> Result<OrderedSpace> {
    Ok(OrderedSpace::new(format!("{} pulled back", sos.w.name), wedge_cone(sos)?))
}

pub fn is_positive(op: &LinOp) -> Result<Verdict> {
    match op {
        LinOp::Matrix { domain, codomain, matrix } => {
            let v = hrep_to_vrep(&domain.wedge())?;
            let mut gens = v.rays.clone();
            for l in &v.lines {
                gens.push(l.clone());
                gens.push(neg(l));
            }
            for g in gens {
                let image = codomain.image(&matrix.apply(&g)?)?;
                if !codomain.w.is_positive(&image)? {
                    return Ok(Verdict::fails("a positive generator maps outside the codomain cone", format_vec(&g)));
                }
            }
            Ok(Verdict::holds("every generator of the domain wedge maps into the codomain wedge"))
        }
        LinOp::Gallery { domain, codomain, op } => {
            // Positive finitely supported elements are nonnegative
            // combinations of basis vectors.
            if domain.t != GalleryOp::Inclusion || codomain.t != GalleryOp::Inclusion {
                return Ok(Verdict::unknown("positivity is only examined for inclusion-ordered gallery spaces"));
            }
            match op.is_positive_on_basis(64) {
                Some(n) => Ok(Verdict::fails("a basis vector maps outside the cone", format!("e_{n}"))),
                None => match op {
                    GalleryOp::Matrix(_) | GalleryOp::Inclusion => Ok(Verdict::holds("basis images are positive")),
                    GalleryOp::Elin => Ok(Verdict::holds("basis images (n, ..., n, 0, ...) are positive")),
                },
            }
        }
    }
}

/// `ker T1` inside `ker (T2 S)`: then `T2 S = R T1` for a linear `R`.
fn kernel_escape(domain: &SemiOrderSpace, codomain: &SemiOrderSpace, s: &RatMatrix) -> Result<Option<RatVector>> {
    let ts = codomain.t.mul(s)?;
    for k in domain.kernel() {
        if !crate::rational::is_zero_vec(&ts.apply(&k)?) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn continuity_by_corpus(
    domain: &SemiOrderSpace,
    codomain: &SemiOrderSpace,
    s: &RatMatrix,
    corpus: &[SeqFamily],
) -> Result<Option<Verdict>> {
    for x in corpus {
        check_dim(domain.v_dim, x.dim())?;
        if wt_converges(domain, x, &x.limit)?.converges() != Some(true) {
            continue;
        }
        let image = x.apply(s)?;
        if let ConvergenceVerdict::NotConverges { refutation } = wt_converges(codomain, &image, &image.limit)? {
            return Ok(Some(Verdict::fails(
                "a convergent family has a non-convergent image",
                describe_counterexample(x, &format!("{refutation:?}")),
            )));
        }
    }
    Ok(None)
}

fn describe_counterexample(x: &SeqFamily, why: &str) -> String {
    format!("family with limit {} and {} terms; image: {why}", format_vec(&x.limit), x.terms.len())
}

fn classify_matrix(
    domain: &SemiOrderSpace,
    codomain: &SemiOrderSpace,
    s: &RatMatrix,
    corpus: &[SeqFamily],
    test_sets: &[VRep],
) -> Result<OperatorClassReport> {
    let positive = is_positive(&LinOp::Matrix { domain: domain.clone(), codomain: codomain.clone(), matrix: s.clone() })?;

    // Order and otilde continuity live on the underlying ordered spaces.
    let d_space = wedge_space(domain)?;
    let c_space = wedge_space(codomain)?;
    let nice = |sp: &OrderedSpace| sp.cone.is_pointed() && sp.cone.is_generating();
    let (mut order_continuous, mut otilde_continuous) = if nice(&d_space) && nice(&c_space) {
        let r = "finite-dim equivalence: order convergence is coordinatewise convergence for closed pointed generating cones";
        (Verdict::holds(r), Verdict::holds(r))
    } else {
        let r = "an underlying wedge is not a pointed generating cone";
        (Verdict::unknown(r), Verdict::unknown(r))
    };
    if positive.is_holds() && order_continuous.is_holds() && !otilde_continuous.is_holds() {
        otilde_continuous = Verdict::holds("positive and order continuous");
    }
    if c_space.cone.is_simplicial() && otilde_continuous.is_holds() && !order_continuous.is_holds() {
        order_continuous = Verdict::holds("otilde-continuous into a Dedekind complete lattice");
    }

    let escape = kernel_escape(domain, codomain, s)?;
    let semiorder_continuous = match continuity_by_corpus(domain, codomain, s, corpus)? {
        Some(v) => v,
        None => match &escape {
            None => Verdict::holds("T2 S factors through T1, and T1-images converge coordinatewise"),
            Some(k) => Verdict::fails(
                "the constant family k with T1 k = 0 converges to 0 in the domain, but T2 S k is not 0",
                format_vec(k),
            ),
        },
    };

    let mut semiorder_bounded = None;
    for a in test_sets {
        if wt_order_bounded(domain, a)?.bounded {
            let image = VRep::new(
                codomain.v_dim,
                a.vertices.iter().map(|v| s.apply(v)).collect::<Result<_>>()?,
                a.rays.iter().map(|v| s.apply(v)).collect::<Result<_>>()?,
                a.lines.iter().map(|v| s.apply(v)).collect::<Result<_>>()?,
            )?;
            if !wt_order_bounded(codomain, &image)?.bounded {
                semiorder_bounded = Some(Verdict::fails("a bounded test set has an unbounded image", format!("{a:?}")));
                break;
            }
        }
    }
    let semiorder_bounded = semiorder_bounded.unwrap_or_else(|| match &escape {
        None if codomain.w.cone.is_generating() => {
            Verdict::holds("bounded sets have norm-bounded T1-images; T2 S factors through T1 into a generating cone")
        }
        None => Verdict::unknown("codomain cone is not generating"),
        Some(k) => Verdict::fails("the line through k is bounded in the domain, its image is not", format_vec(k)),
    });

    let report = OperatorClassReport { positive, order_continuous, otilde_continuous, semiorder_continuous, semiorder_bounded };
    report.check_consistency(c_space.cone.is_simplicial())?;
    Ok(report)
}

fn classify_gallery(
    domain: &GallerySemiOrder,
    codomain: &GallerySemiOrder,
    op: &GalleryOp,
    corpus: &[GalleryFamily],
    budget: u64,
) -> Result<OperatorClassReport> {
    let positive = is_positive(&LinOp::Gallery { domain: domain.clone(), codomain: codomain.clone(), op: op.clone() })?;
    let unknown = Verdict::unknown("only semi-order notions are examined on gallery operators");
    let mut semiorder_continuous = Verdict::unknown("no counterexample in the corpus and no sufficient condition");
    for x in corpus {
        if domain.converges(x, &ECSeq::zero(), budget)?.converges() != Some(true) {
            continue;
        }
        let Some(image) = x.image(op) else { continue };
        if let GalleryVerdict::NotConverges { explanation, .. } = codomain.converges(&image, &ECSeq::zero(), budget)? {
            semiorder_continuous =
                Verdict::fails(format!("{} converges in the domain; its image does not", x.name()), explanation);
            break;
        }
    }
    let mut semiorder_bounded = Verdict::unknown("no test set with an unbounded image");
    for x in corpus {
        if domain.family_bounded(x) != Some(true) {
            continue;
        }
        let Some(image) = x.image(op) else { continue };
        if codomain.family_bounded(&image) == Some(false) {
            semiorder_bounded = Verdict::fails(
                format!("the set {{{}}} is bounded in the domain", x.name()),
                format!("image {} is unbounded", image.name()),
            );
            break;
        }
    }
    let report = OperatorClassReport {
        positive,
        order_continuous: unknown.clone(),
        otilde_continuous: unknown,
        semiorder_continuous,
        semiorder_bounded,
    };
    report.check_consistency(false)?;
    Ok(report)
}

pub fn classify(op: &LinOp, corpus: &[SeqFamily], test_sets: &[VRep]) -> Result<OperatorClassReport> {
    match op {
        LinOp::Matrix { domain, codomain, matrix } => classify_matrix(domain, codomain, matrix, corpus, test_sets),
        LinOp::Gallery { .. } => classify_gallery_op(op, &default_gallery_corpus(), 200),
    }
}

pub fn classify_gallery_op(op: &LinOp, corpus: &[GalleryFamily], budget: u64) -> Result<OperatorClassReport> {
    match op {
        LinOp::Gallery { domain, codomain, op } => classify_gallery(domain, codomain, op, corpus, budget),
        LinOp::Matrix { .. } => Err(Error::Unsupported("matrix operator given to the gallery classifier".into())),
    }
}

pub fn default_gallery_corpus() -> Vec<GalleryFamily> {
    vec![
        GalleryFamily::Basis,
        GalleryFamily::Harmonic { base: ECSeq::finite(vec![Rat::from_integer(1.into()), Rat::from_integer(2.into())]) },
        GalleryFamily::Padded { values: vec![ECSeq::basis(2), ECSeq::basis(1)] },
    ]
}

/// Semi-order boundedness on the supplied test sets only.
pub fn is_semiorder_bounded(op: &LinOp, test_sets: &[VRep]) -> Result<Verdict> {
    match op {
        LinOp::Matrix { domain, codomain, matrix } => {
            Ok(classify_matrix(domain, codomain, matrix, &[], test_sets)?.semiorder_bounded)
        }
        LinOp::Gallery { .. } => Ok(classify_gallery_op(op, &default_gallery_corpus(), 200)?.semiorder_bounded),
    }
}

/// Coordinates with respect to the extreme rays of a simplicial cone.
fn lattice_coordinates(codomain: &OrderedSpace) -> Result<(RatMatrix, RatMatrix)> {
    if !codomain.cone.is_simplicial() {
        return Err(Error::NonLatticeCodomain(codomain.name.clone()));
    }
    let rays = RatMatrix::from_columns(codomain.dim, &codomain.cone.extreme_rays)?;
    let inv = rays.inverse().expect("simplicial rays are independent");
    Ok((rays, inv))
}

/// `|T|(g) = sup T[-g, g]` for a positive `g`, with the supremum taken in
/// the lattice codomain.
pub fn modulus_at(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix, g: &[Rat]) -> Result<RatVector> {
    check_dim(domain.dim, t.ncols())?;
    check_dim(codomain.dim, t.nrows())?;
    if !domain.is_positive(g)? {
        return Err(Error::Precondition(format!("{} is not positive", format_vec(g))));
    }
    let (rays, inv) = lattice_coordinates(codomain)?;
    let interval = domain.order_interval(&neg(g), g)?.polyhedron.hrep()?;
    let coord = inv.mul(t)?;
    let mut top = Vec::with_capacity(codomain.dim);
    for i in 0..codomain.dim {
        let v = maximize(coord.row(i), &interval)?.ok_or_else(|| Error::Precondition("interval LP failed".into()))?;
        top.push(v);
    }
    rays.apply(&top)
}

/// Probes additivity of `|T|` on sums of pairs of extreme rays.
pub fn modulus_additivity_probe(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix) -> Result<()> {
    let rays = &domain.cone.extreme_rays;
    let at: Vec<RatVector> = rays.iter().map(|g| modulus_at(domain, codomain, t, g)).collect::<Result<_>>()?;
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let both = modulus_at(domain, codomain, t, &add(&rays[i], &rays[j]))?;
            if both != add(&at[i], &at[j]) {
                return Err(Error::ModulusNotAdditive { left: format_vec(&rays[i]), right: format_vec(&rays[j]) });
            }
        }
    }
    Ok(())
}

/// The modulus as a matrix. Needs a simplicial domain; on other domains
/// additivity is probed and either `ModulusNotAdditive` or
/// `NonSimplicialDomain` is returned.
pub fn modulus(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix) -> Result<RatMatrix> {
    if !domain.cone.is_simplicial() {
        modulus_additivity_probe(domain, codomain, t)?;
        return Err(Error::NonSimplicialDomain);
    }
    let rays = &domain.cone.extreme_rays;
    let images: Vec<RatVector> = rays.iter().map(|g| modulus_at(domain, codomain, t, g)).collect::<Result<_>>()?;
    let g = RatMatrix::from_columns(domain.dim, rays)?;
    let m = RatMatrix::from_columns(codomain.dim, &images)?.mul(&g.inverse().expect("simplicial"))?;
    // Postcondition: the assembled map agrees with the pointwise formula.
    for i in 0..rays.len() {
        for j in i..rays.len() {
            let s = add(&rays[i], &rays[j]);
            if m.apply(&s)? != modulus_at(domain, codomain, t, &s)? {
                return Err(Error::ModulusNotAdditive { left: format_vec(&rays[i]), right: format_vec(&rays[j]) });
            }
        }
    }
    Ok(m)
}

pub fn op_sup(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix> {
    let m = modulus(domain, codomain, &t.sub(s)?)?;
    Ok(m.add(&t.add(s)?)?.scale(&Rat::new(1.into(), 2.into())))
}

pub fn op_inf(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix> {
    let m = modulus(domain, codomain, &t.sub(s)?)?;
    Ok(t.add(s)?.sub(&m)?.scale(&Rat::new(1.into(), 2.into())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeOps {
    pub sup: RatMatrix,
    pub inf: RatMatrix,
}

pub fn lattice_ops(domain: &OrderedSpace, codomain: &OrderedSpace, t: &RatMatrix, s: &RatMatrix) -> Result<LatticeOps> {
    Ok(LatticeOps { sup: op_sup(domain, codomain, t, s)?, inf: op_inf(domain, codomain, t, s)? })
}

/// `S <= T` as operators: `(T - S) g >= 0` on domain generators.
pub fn op_leq(domain: &OrderedSpace, codomain: &OrderedSpace, s: &RatMatrix, t: &RatMatrix) -> Result<bool> {
    let d = t.sub(s)?;
    for g in &domain.cone.extreme_rays {
        if !codomain.is_positive(&d.apply(g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoReport {
    pub checked: usize,
    pub modulus_is_sup_with_negative: bool,
    pub commutative: bool,
    pub absorptive: bool,
    pub dominance: bool,
    pub band_transfer: bool,
    pub violations: Vec<String>,
}

impl PoReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lattice identities on pairs of operators with a common simplicial domain
/// and codomain.
pub fn check_po(
    domain: &OrderedSpace,
    codomain: &OrderedSpace,
    pairs: &[(RatMatrix, RatMatrix)],
    corpus: &[SeqFamily],
) -> Result<PoReport> {
    let mut violations = Vec::new();
    let mut note = |ok: bool, what: &str, i: usize| {
        if !ok {
            violations.push(format!("pair {i}: {what}"));
        }
        ok
    };
    let (mut m_ok, mut c_ok, mut a_ok, mut d_ok, mut b_ok) = (true, true, true, true, true);
    for (i, (t, s)) in pairs.iter().enumerate() {
        let abs_t = modulus(domain, codomain, t)?;
        m_ok &= note(abs_t == op_sup(domain, codomain, t, &t.scale(&int(-1)))?, "|T| differs from T v (-T)", i);
        let ts = op_sup(domain, codomain, t, s)?;
        c_ok &= note(ts == op_sup(domain, codomain, s, t)?, "sup is not commutative", i);
        c_ok &= note(op_inf(domain, codomain, t, s)? == op_inf(domain, codomain, s, t)?, "inf is not commutative", i);
        a_ok &= note(op_inf(domain, codomain, t, &ts)? == *t, "T ^ (T v S) differs from T", i);
        let tis = op_inf(domain, codomain, t, s)?;
        a_ok &= note(op_sup(domain, codomain, t, &tis)? == *t, "T v (T ^ S) differs from T", i);
        for g in &domain.cone.extreme_rays {
            let tg = t.apply(g)?;
            let bound = abs_t.apply(g)?;
            let ok = codomain.leq(&tg, &bound)? && codomain.leq(&neg(&tg), &bound)?;
            d_ok &= note(ok, "±T g is not below |T| g", i);
        }
        // Band property at instance scale: |S| <= |T| and T continuous
        // force S continuous.
        let abs_s = modulus(domain, codomain, s)?;
        if op_leq(domain, codomain, &abs_s, &abs_t)? {
            let r_t = classify(&LinOp::between(domain, codomain, t.clone())?, corpus, &[])?;
            let r_s = classify(&LinOp::between(domain, codomain, s.clone())?, corpus, &[])?;
            if r_t.order_continuous.is_holds() {
                b_ok &= note(r_s.order_continuous.is_holds(), "dominated operator lost continuity", i);
            }
        }
    }
    Ok(PoReport {
        checked: pairs.len(),
        modulus_is_sup_with_negative: m_ok,
        commutative: c_ok,
        absorptive: a_ok,
        dominance: d_ok,
        band_transfer: b_ok,
        violations,
    })
}

/// For a positive operator: images of decreasing-to-zero families decrease
/// to zero, and this agrees with the convergence route.
pub fn monotone_criterion(
    domain: &OrderedSpace,
    codomain: &OrderedSpace,
    t: &RatMatrix,
    families: &[SeqFamily],
) -> Result<Vec<(bool, bool)>> {
    use crate::convergence::{decide_o_convergence, is_decreasing_to_zero};
    let mut out = Vec::new();
    for y in families {
        if !is_decreasing_to_zero(domain, y)?.decreasing_to_zero {
            continue;
        }
        let image = y.apply(t)?;
        let monotone = is_decreasing_to_zero(codomain, &image)?.decreasing_to_zero;
        let converges = matches!(decide_o_convergence(codomain, &image)?, ConvergenceVerdict::Converges { ref limit, .. } if limit.iter().all(Zero::is_zero));
        out.push((monotone, converges));
    }
    Ok(out)
}

/// A positive `X` between the cover targets with `X E1 = E2 S`.
pub fn positive_extension(e1: &RatMatrix, e2: &RatMatrix, s: &RatMatrix) -> Result<Option<RatMatrix>> {
    check_dim(e1.ncols(), s.ncols())?;
    check_dim(e2.ncols(), s.nrows())?;
    let target = e2.mul(s)?;
    let (m1, m2, d1) = (e1.nrows(), e2.nrows(), e1.ncols());
    let mut rows = Vec::with_capacity(m2 * d1);
    let mut rhs = Vec::with_capacity(m2 * d1);
    for i in 0..m2 {
        for j in 0..d1 {
            let mut row = vec![Rat::zero(); m2 * m1];
            for k in 0..m1 {
                row[i * m1 + k] = e1.get(k, j).clone();
            }
            rows.push(row);
            rhs.push(target.get(i, j).clone());
        }
    }
    let Some(x) = crate::lp::nonneg_solution(&RatMatrix::from_rows(m2 * d1, m2 * m1, rows)?, &rhs)? else {
        return Ok(None);
    };
    Ok(Some(RatMatrix::new(x.chunks(m1).map(<[Rat]>::to_vec).collect())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn positivity() {
        let o2 = OrderedSpace::orthant(2);
        let p = LinOp::between(&o2, &o2, RatMatrix::from_ints(&[&[1, 2], &[0, 1]])).unwrap();
        assert!(is_positive(&p).unwrap().is_holds());
        let q = LinOp::between(&o2, &o2, RatMatrix::from_ints(&[&[1, -2], &[0, 1]])).unwrap();
        let v = is_positive(&q).unwrap();
        assert!(v.is_fails());
        assert_eq!(v.evidence.as_deref(), Some("(0, 1)"));
    }

    #[test]
    fn orthant_modulus() {
        let o2 = OrderedSpace::orthant(2);
        let t = RatMatrix::from_ints(&[&[1, -2], &[0, 1]]);
        assert_eq!(modulus(&o2, &o2, &t).unwrap(), RatMatrix::from_ints(&[&[1, 2], &[0, 1]]));
        assert_eq!(op_sup(&o2, &o2, &t, &RatMatrix::zeros(2, 2)).unwrap(), RatMatrix::from_ints(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn k4_functional_modulus() {
        let k4 = OrderedSpace::k4();
        let q1 = OrderedSpace::orthant(1);
        let f = RatMatrix::from_ints(&[&[1, 0, 0]]);
        assert_eq!(modulus_at(&k4, &q1, &f, &ints(&[0, 0, 1])).unwrap(), ints(&[1]));
        assert!(matches!(modulus(&k4, &q1, &f), Err(Error::ModulusNotAdditive { .. }) | Err(Error::NonSimplicialDomain)));
    }

    #[test]
    fn elin_classification() {
        let r = classify_gallery_op(&LinOp::elin(), &default_gallery_corpus(), 100).unwrap();
        assert!(r.positive.is_holds());
        assert!(r.semiorder_continuous.is_fails());
        assert!(r.semiorder_bounded.is_fails());
        check_kat(&r).unwrap();
    }

    #[test]
    fn rank_deficient_semiorder() {
        let o2 = OrderedSpace::orthant(2);
        let dom = SemiOrderSpace::new(2, o2.clone(), RatMatrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        let op = LinOp::matrix(dom, SemiOrderSpace::identity(o2), RatMatrix::identity(2)).unwrap();
        let r = classify(&op, &[], &[]).unwrap();
        assert!(r.semiorder_continuous.is_fails() && r.semiorder_bounded.is_fails());
    }
}
