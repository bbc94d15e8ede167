//! Named property suites over seeded corpora.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convergence::{
    decide_o_convergence, verify_certificate, CheckResult, ConvergenceVerdict, SeqFamily, Threshold,
};
use crate::corpus::{self, random_decreasing, random_disjoint_family, random_family, random_positive_family, rng};
use crate::cover::make_cover;
use crate::error::{Error, Result};
use crate::gallery::{
    gallery_verify_certificate, ECSeq, GalleryFamily, GalleryOp, GallerySpace, GalleryVerdict, TailRefutation,
};
use crate::linalg::RatMatrix;
use crate::operator::{
    check_kat, check_po, classify, classify_gallery_op, default_gallery_corpus, is_positive, modulus,
    monotone_criterion, positive_extension, LinOp,
};
use crate::polyhedron::hrep_to_vrep;
use crate::rational::{add, format_vec, int, scale, zeros, Rat, RatVector};
use crate::semiorder::{check_disjoint_bounded_null, check_disjoint_bounded_null_gallery, wt_converges, GallerySemiOrder, SemiOrderSpace};
use crate::space::{OrderedSpace, Subspace};
use crate::structure::{band_projection, is_band};
use crate::transfer::{check_convergence_transfer, documented_instances};

pub const SUITES: [&str; 10] =
    ["lemma21", "lemma3x", "elin", "jhg", "uyi", "ebadi", "kat", "po", "disjoint-null", "transfer"];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub instances: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        Self { suite: suite.into(), seed, properties: Vec::new() }
    }

    fn prop(&mut self, name: &str) -> &mut PropertyResult {
        if let Some(i) = self.properties.iter().position(|p| p.name == name) {
            return &mut self.properties[i];
        }
        self.properties.push(PropertyResult { name: name.into(), ..Default::default() });
        self.properties.last_mut().expect("just pushed")
    }

    /// Records one instance of a property.
    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let p = self.prop(name);
        p.instances += 1;
        if !ok {
            p.violations += 1;
            if p.first_violation.is_none() {
                p.first_violation = Some(detail());
            }
        }
    }

    pub fn violations(&self) -> usize {
        self.properties.iter().map(|p| p.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0 && self.properties.iter().all(|p| p.instances > 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

pub fn run_suite(name: &str, seed: u64, budget: u64) -> Result<SuiteReport> {
    match name {
        "lemma21" => limit_laws(seed, 100),
        "lemma3x" => semiorder_limit_laws(seed, 40),
        "elin" => elin_suite(seed, budget),
        "jhg" => band_projections(seed),
        "uyi" => operator_consistency(seed, 50),
        "ebadi" => cover_extensions(seed, 30),
        "kat" => continuous_bounded(seed, 50, budget),
        "po" => modulus_identities(seed, 20),
        "disjoint-null" => disjoint_null(seed, 20, budget),
        "transfer" => transfer(seed),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

fn limit_of(v: &ConvergenceVerdict) -> Option<&RatVector> {
    match v {
        ConvergenceVerdict::Converges { limit, .. } => Some(limit),
        _ => None,
    }
}

fn all_in_cone(space: &OrderedSpace, x: &SeqFamily) -> bool {
    crate::convergence::certificate::cone_functionals(space).iter().all(|f| x.functional(f).nonneg_everywhere())
}

fn convergent_family(rng: &mut ChaCha8Rng, dim: usize) -> SeqFamily {
    random_family(rng, dim, 0)
}

/// Shift, positivity of limits, bounds, uniqueness, linearity and
/// sandwich, plus soundness of every emitted certificate.
pub fn limit_laws(seed: u64, per_space: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma21", seed);
    for space in [OrderedSpace::orthant(3), OrderedSpace::k4()] {
        let mut r = rng(seed ^ space.dim as u64 ^ (space.cone.extreme_rays.len() as u64 * 7919));
        let name = space.name.clone();
        for i in 0..per_space {
            let x = random_family(&mut r, space.dim, 15);
            let v = decide_o_convergence(&space, &x)?;
            let tag = || format!("{name} #{i}");

            // shift
            let shift_ok = match &v {
                ConvergenceVerdict::Converges { limit, .. } => {
                    limit_of(&decide_o_convergence(&space, &x.shifted(limit)?)?) == Some(&zeros(space.dim))
                }
                ConvergenceVerdict::NotConverges { .. } => {
                    decide_o_convergence(&space, &x.shifted(&x.limit)?)?.converges() == Some(false)
                }
                ConvergenceVerdict::Unknown { .. } => false,
            };
            report.record("shift", shift_ok, tag);

            if let ConvergenceVerdict::Converges { limit, o_certificate, otilde_certificate } = &v {
                let sound = verify_certificate(&space, &x, o_certificate)?.is_accepted()
                    && verify_certificate(&space, &x, otilde_certificate)?.is_accepted();
                report.record("certificate soundness", sound, tag);

                // uniqueness: another limit is never certified, even with a
                // larger witness and a slower threshold.
                let mut other = limit.clone();
                while other == *limit {
                    other = add(limit, &corpus::random_vector(&mut r, space.dim, 2));
                }
                let mut big = otilde_certificate.clone();
                big.limit = other.clone();
                big.witness.family = big.witness.family.scale(&int(10));
                big.threshold = Threshold { slope: &big.threshold.slope * int(10) + Rat::one(), offset: int(5) };
                let mut same = otilde_certificate.clone();
                same.limit = other.clone();
                let unique = !verify_certificate(&space, &x, &big)?.is_accepted()
                    && !verify_certificate(&space, &x, &same)?.is_accepted();
                report.record("uniqueness", unique, || format!("{} certified for {}", format_vec(&other), tag()));
            }

            // positivity of limits
            let p = random_positive_family(&mut r, &space);
            if all_in_cone(&space, &p) {
                let ok = limit_of(&decide_o_convergence(&space, &p)?).is_some_and(|l| space.cone.contains(l));
                report.record("limit positivity", ok, tag);
            }

            // upper bound passes to the limit
            let y = corpus::random_vector(&mut r, space.dim, 3);
            let below = SeqFamily::constant(y.clone()).sub(&p)?;
            if all_in_cone(&space, &SeqFamily::constant(y.clone()).sub(&below)?) {
                let ok = limit_of(&decide_o_convergence(&space, &below)?).is_some_and(|l| space.leq(l, &y).unwrap_or(false));
                report.record("bound preservation", ok, tag);
            }

            // linearity
            let a = convergent_family(&mut r, space.dim);
            let b = convergent_family(&mut r, space.dim);
            let (la, lb) = (int(r.gen_range(-3..=3)), int(r.gen_range(-3..=3)));
            let comb = a.scale(&la).add(&b.scale(&lb))?;
            let expected = add(&scale(&la, &a.limit), &scale(&lb, &b.limit));
            let ok = match (decide_o_convergence(&space, &a)?, decide_o_convergence(&space, &b)?) {
                (ConvergenceVerdict::Converges { .. }, ConvergenceVerdict::Converges { .. }) => {
                    limit_of(&decide_o_convergence(&space, &comb)?) == Some(&expected)
                }
                _ => false,
            };
            report.record("linearity", ok, tag);

            // sandwich
            let z = a.add(&p)?;
            if all_in_cone(&space, &z.sub(&a)?) {
                let la = decide_o_convergence(&space, &a)?;
                let lz = decide_o_convergence(&space, &z)?;
                let ok = match (limit_of(&la), limit_of(&lz)) {
                    (Some(l1), Some(l2)) => space.leq(l1, l2)?,
                    _ => false,
                };
                report.record("sandwich", ok, tag);
            }
        }
    }
    Ok(report)
}

fn wedge_generators(sos: &SemiOrderSpace) -> Result<Vec<RatVector>> {
    let v = hrep_to_vrep(&sos.wedge())?;
    let mut gens = v.rays;
    for l in v.lines {
        gens.push(crate::rational::neg(&l));
        gens.push(l);
    }
    Ok(gens)
}

fn wedge_positive_family(r: &mut ChaCha8Rng, gens: &[RatVector], dim: usize) -> Result<SeqFamily> {
    let mut combo = |max: i64| {
        gens.iter().fold(zeros(dim), |acc, g| add(&acc, &scale(&int(r.gen_range(0..=max)), g)))
    };
    let limit = combo(2);
    let c1 = combo(3);
    let c2 = combo(2);
    SeqFamily::simple(
        limit,
        vec![
            crate::convergence::VecTerm::new(c1, Rat::one(), -1),
            crate::convergence::VecTerm::new(c2, crate::rational::frac(1, 2), 0),
        ],
    )
}

fn converges_to(sos: &SemiOrderSpace, x: &SeqFamily, limit: &[Rat]) -> Result<bool> {
    Ok(wt_converges(sos, x, limit)?.converges() == Some(true))
}

/// The same six properties for semi-order convergence under maps of full
/// rank, injective rectangular maps and rank-deficient maps.
pub fn semiorder_limit_laws(seed: u64, per_case: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma3x", seed);
    let mut r = rng(seed.wrapping_add(31));
    for w in [OrderedSpace::orthant(3), OrderedSpace::k4()] {
        let maps = [
            RatMatrix::identity(3),
            RatMatrix::from_ints(&[&[1, 0], &[1, 1], &[0, 2]]),
            corpus::random_rank_deficient(&mut r, 3, 3, 2),
        ];
        for t in maps {
            let sos = SemiOrderSpace::new(t.ncols(), w.clone(), t)?;
            let vd = sos.v_dim;
            let gens = wedge_generators(&sos)?;
            let positive_v = |x: &SeqFamily| all_in_cone(&sos.w, &x.apply(&sos.t).expect("shape"));
            for i in 0..per_case {
                let tag = || format!("{} via {:?} #{i}", w.name, sos.t.rows().len());
                let x = random_family(&mut r, vd, 15);
                let direct = converges_to(&sos, &x, &x.limit)?;
                let shifted = converges_to(&sos, &x.shifted(&x.limit)?, &zeros(vd))?;
                report.record("shift", direct == shifted, tag);

                let p = wedge_positive_family(&mut r, &gens, vd)?;
                if positive_v(&p) && converges_to(&sos, &p, &p.limit)? {
                    report.record("limit positivity", sos.w.is_positive(&sos.image(&p.limit)?)?, tag);
                }

                let y = corpus::random_vector(&mut r, vd, 3);
                let below = SeqFamily::constant(y.clone()).sub(&p)?;
                if converges_to(&sos, &below, &below.limit)? {
                    report.record("bound preservation", crate::semiorder::semi_leq(&sos, &below.limit, &y)?, tag);
                }

                // uniqueness up to the kernel of T
                let x0 = convergent_family(&mut r, vd);
                let other = add(&x0.limit, &corpus::random_vector(&mut r, vd, 1));
                if converges_to(&sos, &x0, &x0.limit)? && converges_to(&sos, &x0, &other)? {
                    report.record("uniqueness", sos.image(&other)? == sos.image(&x0.limit)?, tag);
                } else {
                    report.record("uniqueness", sos.image(&other)? != sos.image(&x0.limit)?, tag);
                }

                let a = convergent_family(&mut r, vd);
                let b = convergent_family(&mut r, vd);
                let (la, lb) = (int(r.gen_range(-3..=3)), int(r.gen_range(-3..=3)));
                let comb = a.scale(&la).add(&b.scale(&lb))?;
                let expected = add(&scale(&la, &a.limit), &scale(&lb, &b.limit));
                report.record("linearity", converges_to(&sos, &comb, &expected)?, tag);

                let z = a.add(&p)?;
                if converges_to(&sos, &a, &a.limit)? && converges_to(&sos, &z, &z.limit)? {
                    report.record("sandwich", crate::semiorder::semi_leq(&sos, &a.limit, &z.limit)?, tag);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElinTriptych {
    pub inclusion_into_linf: GalleryVerdict,
    pub identity_on_c0: GalleryVerdict,
    pub elin_into_linf: GalleryVerdict,
}

pub fn elin_triptych(budget: u64) -> Result<ElinTriptych> {
    use GallerySpace::{C0Rep, LInfRep};
    let zero = ECSeq::zero();
    Ok(ElinTriptych {
        inclusion_into_linf: GallerySemiOrder::new(C0Rep, LInfRep, GalleryOp::Inclusion).converges(
            &GalleryFamily::Basis,
            &zero,
            budget,
        )?,
        identity_on_c0: GallerySemiOrder::new(C0Rep, C0Rep, GalleryOp::Inclusion).converges(
            &GalleryFamily::Basis,
            &zero,
            budget,
        )?,
        elin_into_linf: GallerySemiOrder::new(C0Rep, LInfRep, GalleryOp::Elin).converges(
            &GalleryFamily::Basis,
            &zero,
            budget,
        )?,
    })
}

/// Re-checks a refutation against candidate bounds drawn at random: each
/// candidate must be beaten at or after the requested index.
pub fn refutation_defeats(refutation: &TailRefutation, x: &GalleryFamily, seed: u64, trials: usize) -> bool {
    let mut r = rng(seed);
    (0..trials).all(|_| {
        let len = r.gen_range(0..6);
        let head: Vec<Rat> = (0..len).map(|_| int(r.gen_range(-3..=40))).collect();
        let tail = if refutation == &TailRefutation::SupportEscapes { Rat::zero() } else { int(r.gen_range(0..=40)) };
        let bound = ECSeq::new(head, tail);
        let from = r.gen_range(1..=30);
        let n = refutation.defeat(&bound, from);
        n >= from && !x.value(n).leq(&bound)
    })
}

pub fn elin_suite(seed: u64, budget: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("elin", seed);
    let t = elin_triptych(budget)?;
    let a_ok = match &t.inclusion_into_linf {
        GalleryVerdict::Converges { certificate } => {
            certificate.witness == GalleryFamily::IndicatorFrom
                && certificate.threshold == Threshold::identity()
                && gallery_verify_certificate(GallerySpace::LInfRep, &GalleryFamily::Basis, certificate, budget)?
                    .is_accepted()
        }
        _ => false,
    };
    report.record("(a) e_n converges under the inclusion into linfrep", a_ok, || format!("{:?}", t.inclusion_into_linf));
    let b_ok = match &t.identity_on_c0 {
        GalleryVerdict::NotConverges { refutation, .. } => {
            refutation.verify(GallerySpace::C0Rep, &GalleryFamily::Basis)
                && refutation_defeats(refutation, &GalleryFamily::Basis, seed, 200)
        }
        _ => false,
    };
    report.record("(b) e_n does not converge in c0rep", b_ok, || format!("{:?}", t.identity_on_c0));
    let c_ok = match &t.elin_into_linf {
        GalleryVerdict::NotConverges { refutation, .. } => {
            *refutation == TailRefutation::CoordinateGrowth { coordinate: 1 }
                && refutation.verify(GallerySpace::LInfRep, &GalleryFamily::Elin)
                && refutation_defeats(refutation, &GalleryFamily::Elin, seed, 200)
        }
        _ => false,
    };
    report.record("(c) e_n does not converge under the elin operator", c_ok, || format!("{:?}", t.elin_into_linf));
    let disjoint = crate::gallery::gallery_family_disjoint(&GalleryFamily::Basis) == Some(true)
        && (1..20).all(|i| (i + 1..21).all(|j| ECSeq::basis(i).disjoint(&ECSeq::basis(j))));
    report.record("e_n is disjoint", disjoint, || "basis vectors overlap".into());
    Ok(report)
}

fn subsets(d: usize) -> Vec<Vec<RatVector>> {
    (1..(1u32 << d) - 1)
        .map(|mask| (0..d).filter(|i| mask & (1 << i) != 0).map(|i| crate::rational::unit(d, i)).collect())
        .collect()
}

/// Band projections are idempotent positive maps fixing the band, and they
/// carry families converging to 0 into the band, still converging to 0.
pub fn band_projections(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("jhg", seed);
    let mut r = rng(seed.wrapping_add(77));
    let k4 = OrderedSpace::k4();
    let mut cases: Vec<(OrderedSpace, Vec<RatVector>)> =
        subsets(3).into_iter().map(|b| (OrderedSpace::orthant(3), b)).collect();
    for b in [[1, 1, 1], [-1, -1, 1], [1, 0, 1]] {
        cases.push((k4.clone(), vec![b.iter().map(|&v| int(v)).collect()]));
    }
    for (space, basis) in cases {
        let band = Subspace::new(&space, basis.clone())?;
        if !is_band(&band)? {
            continue;
        }
        let Some(p) = band_projection(&band)?.matrix().cloned() else { continue };
        let tag = || format!("{} band {:?}", space.name, basis.iter().map(|b| format_vec(b)).collect::<Vec<_>>());
        let fixes = basis.iter().all(|b| p.apply(b).map(|v| &v == b).unwrap_or(false));
        let positive = space.cone.extreme_rays.iter().all(|g| space.cone.contains(&p.apply(g).expect("shape")));
        report.record("projection is idempotent, positive and fixes the band", p.mul(&p)? == p && fixes && positive, tag);
        for _ in 0..20 {
            let x = convergent_family(&mut r, space.dim);
            let x0 = x.shifted(&x.limit)?;
            let image = x0.apply(&p)?;
            let in_band = image.terms.iter().all(|t| band.contains(&t.coeff)) && image.prefix.values().all(|v| band.contains(v));
            let ok = in_band && limit_of(&decide_o_convergence(&space, &image)?) == Some(&zeros(space.dim));
            report.record("projected null family is null in the band", ok, tag);
        }
    }
    Ok(report)
}

/// Domain, codomain and matrix for one random operator.
pub fn random_operator(r: &mut ChaCha8Rng) -> Result<LinOp> {
    let pick = |r: &mut ChaCha8Rng| match r.gen_range(0..3) {
        0 => OrderedSpace::orthant(3),
        1 => OrderedSpace::k4(),
        _ => OrderedSpace::orthant(2),
    };
    let dw = pick(r);
    let cw = pick(r);
    let domain = if r.gen_bool(0.25) {
        let t = corpus::random_rank_deficient(r, dw.dim, dw.dim, dw.dim - 1);
        SemiOrderSpace::new(dw.dim, dw, t)?
    } else {
        SemiOrderSpace::identity(dw)
    };
    let codomain = SemiOrderSpace::identity(cw);
    let m = corpus::random_matrix(r, codomain.v_dim, domain.v_dim, 2);
    LinOp::matrix(domain, codomain, m)
}

fn operator_corpus(r: &mut ChaCha8Rng, dim: usize) -> Vec<SeqFamily> {
    (0..8).map(|_| random_family(r, dim, 10)).collect()
}

fn domain_dim(op: &LinOp) -> usize {
    match op {
        LinOp::Matrix { domain, .. } => domain.v_dim,
        LinOp::Gallery { .. } => 0,
    }
}

/// Report consistency across random operators, and the cover-composition
/// check for otilde-continuity.
pub fn operator_consistency(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("uyi", seed);
    let mut r = rng(seed.wrapping_add(101));
    for i in 0..count {
        let op = random_operator(&mut r)?;
        let fams = operator_corpus(&mut r, domain_dim(&op));
        let rep = classify(&op, &fams, &[]);
        report.record("classification is consistent", rep.is_ok(), || format!("operator #{i}: {rep:?}"));
        let Ok(rep) = rep else { continue };
        let LinOp::Matrix { domain, codomain, matrix } = &op else { continue };
        if rep.otilde_continuous.is_holds() {
            if let Some(cover) = make_cover(&codomain.w)?.cover() {
                let lifted = LinOp::matrix(
                    domain.clone(),
                    SemiOrderSpace::identity(OrderedSpace::orthant(cover.target_dim)),
                    cover.embedding.mul(matrix)?,
                )?;
                let lr = classify(&lifted, &fams, &[])?;
                report.record("cover composition keeps otilde-continuity", !lr.otilde_continuous.is_fails(), || {
                    format!("operator #{i}")
                });
            }
        }
    }
    Ok(report)
}

/// `S = sum_k w_k f_k^T` with domain facets `f_k` and positive `w_k`.
fn random_positive_operator(r: &mut ChaCha8Rng, domain: &OrderedSpace, codomain: &OrderedSpace) -> RatMatrix {
    let mut s = RatMatrix::zeros(codomain.dim, domain.dim);
    for f in &domain.cone.facets {
        let w = corpus::random_positive(r, codomain, 2);
        let rank_one = RatMatrix::new(w.iter().map(|wi| scale(wi, f)).collect()).expect("rectangular");
        s = s.add(&rank_one).expect("shape");
    }
    s
}

/// Positive extensions through covers, and the monotone criterion against
/// the convergence route.
pub fn cover_extensions(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ebadi", seed);
    let mut r = rng(seed.wrapping_add(303));
    let spaces = [OrderedSpace::orthant(2), OrderedSpace::orthant(3), OrderedSpace::k4()];
    for i in 0..count {
        let d = spaces[r.gen_range(0..3)].clone();
        let c = spaces[r.gen_range(0..3)].clone();
        let (Some(c1), Some(c2)) = (make_cover(&d)?.cover().cloned(), make_cover(&c)?.cover().cloned()) else {
            continue;
        };
        let s = if r.gen_bool(0.6) { random_positive_operator(&mut r, &d, &c) } else { corpus::random_matrix(&mut r, c.dim, d.dim, 2) };
        let positive = is_positive(&LinOp::between(&d, &c, s.clone())?)?.is_holds();
        let ext = positive_extension(&c1.embedding, &c2.embedding, &s)?;
        let tag = || format!("{} -> {} #{i}", d.name, c.name);
        report.record("positive operators extend positively through covers, others do not", ext.is_some() == positive, tag);
        if let Some(x) = &ext {
            let commutes = x.mul(&c1.embedding)? == c2.embedding.mul(&s)?;
            report.record("extension intertwines the embeddings", commutes, tag);
        }
        if positive {
            let fams: Vec<SeqFamily> = (0..5).map(|_| random_decreasing(&mut r, &d)).collect();
            for (monotone, converges) in monotone_criterion(&d, &c, &s, &fams)? {
                report.record("monotone criterion agrees with convergence", monotone && converges, tag);
            }
        }
    }
    Ok(report)
}

/// Semi-order continuity never coexists with failed boundedness.
pub fn continuous_bounded(seed: u64, count: usize, budget: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kat", seed);
    let mut r = rng(seed.wrapping_add(505));
    for i in 0..count {
        let op = random_operator(&mut r)?;
        let fams = operator_corpus(&mut r, domain_dim(&op));
        let ok = classify(&op, &fams, &[]).and_then(|rep| check_kat(&rep)).is_ok();
        report.record("continuous implies bounded", ok, || format!("operator #{i}"));
    }
    let rep = classify_gallery_op(&LinOp::elin(), &default_gallery_corpus(), budget)?;
    report.record("elin operator fails both", rep.semiorder_continuous.is_fails() && rep.semiorder_bounded.is_fails(), || {
        format!("{rep:?}")
    });
    report.record("continuous implies bounded", check_kat(&rep).is_ok(), || "elin".into());
    Ok(report)
}

/// Entrywise absolute value of a matrix.
pub fn entrywise_abs(t: &RatMatrix) -> RatMatrix {
    t.map(|x| if x < &Rat::zero() { -x } else { x.clone() })
}

/// Modulus identities on orthants and the additivity probe on K4.
pub fn modulus_identities(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("po", seed);
    let mut r = rng(seed.wrapping_add(707));
    let mut pairs_by_dim: Vec<(usize, Vec<(RatMatrix, RatMatrix)>)> = vec![(2, Vec::new()), (3, Vec::new())];
    for i in 0..count {
        let (d, pairs) = &mut pairs_by_dim[i % 2];
        let t = corpus::random_matrix(&mut r, *d, *d, 3);
        let s = corpus::random_matrix(&mut r, *d, *d, 3);
        let o = OrderedSpace::orthant(*d);
        let m = modulus(&o, &o, &t)?;
        report.record("orthant modulus is the entrywise absolute value", m == entrywise_abs(&t), || format!("{t:?}"));
        pairs.push((t, s));
    }
    for (d, pairs) in &pairs_by_dim {
        let o = OrderedSpace::orthant(*d);
        let fams: Vec<SeqFamily> = (0..3).map(|_| random_family(&mut r, *d, 10)).collect();
        let rep = check_po(&o, &o, pairs, &fams)?;
        report.record("lattice identities", rep.passed(), || rep.violations.join("; "));
    }
    let k4 = OrderedSpace::k4();
    let mut fired = false;
    for _ in 0..20 {
        let t = corpus::random_matrix(&mut r, 1, 3, 2);
        if matches!(modulus(&k4, &OrderedSpace::orthant(1), &t), Err(Error::ModulusNotAdditive { .. })) {
            fired = true;
            break;
        }
    }
    report.record("additivity failure is detected on K4", fired, || "no K4 functional triggered the check".into());
    Ok(report)
}

/// Disjoint order bounded families are order null.
pub fn disjoint_null(seed: u64, count: usize, budget: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("disjoint-null", seed);
    let g = GallerySemiOrder::new(GallerySpace::C0Rep, GallerySpace::LInfRep, GalleryOp::Inclusion);
    let rep = check_disjoint_bounded_null_gallery(&g, &GalleryFamily::Basis, budget)?;
    report.record("e_n under the inclusion into linfrep", rep.holds(), || format!("{rep:?}"));
    let mut r = rng(seed.wrapping_add(909));
    let sos = SemiOrderSpace::identity(OrderedSpace::orthant(3));
    for i in 0..count {
        let k = r.gen_range(1..=5);
        let xs = random_disjoint_family(&mut r, 3, k);
        let rep = check_disjoint_bounded_null(&sos, &xs)?;
        let ok = match &rep {
            crate::semiorder::DisjointNullReport::Holds { certificate: crate::semiorder::NullCertificate::Finite(c) } => {
                let prefix = xs.iter().enumerate().map(|(i, x)| (i as u64 + 1, x.clone())).collect();
                let fam = SeqFamily::new(zeros(3), Vec::new(), prefix)?;
                verify_certificate(&sos.w, &fam, c)?.is_accepted()
            }
            _ => false,
        };
        report.record("finite disjoint families in ORTH3", ok, || format!("family #{i}: {rep:?}"));
    }
    Ok(report)
}

pub fn transfer(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("transfer", seed);
    for inst in documented_instances()? {
        let rep = check_convergence_transfer(&inst)?;
        let ok = rep.outcome == crate::decision::Outcome::Holds
            && rep.target_check.as_ref().is_some_and(CheckResult::is_accepted);
        report.record(&format!("part {}", rep.part), ok, || format!("{rep:?}"));
    }
    Ok(report)
}
