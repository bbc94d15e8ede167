//! Moving convergence certificates between spaces: into order dense
//! ambients, down to ideals, onto restrictions and through covers.

use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::convergence::certificate::cone_functionals;
use crate::convergence::{
    decide_towards, verify_certificate, CertKind, CheckResult, ConvergenceCertificate, ConvergenceVerdict,
    DecreasingWitness, SeqFamily, Threshold, VecTerm,
};
use crate::cover::{check_bipositive, make_cover};
use crate::decision::{Outcome, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{frac, ints, Rat, RatVector};
use crate::semiorder::{wt_ideal, SemiOrderSpace};
use crate::space::{OrderedSpace, Subspace};
use crate::structure::is_ideal;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum TransferInstance {
    /// `T: V -> W` and `W` sits order densely in `U` via `embedding`.
    DenseAmbient {
        sos: SemiOrderSpace,
        ambient: OrderedSpace,
        embedding: RatMatrix,
        family: SeqFamily,
        certificate: Option<ConvergenceCertificate>,
    },
    /// `V` sits order densely in `W` via `inclusion`; the family converges
    /// in `V` itself.
    DenseSubspace {
        v: OrderedSpace,
        w: OrderedSpace,
        inclusion: RatMatrix,
        family: SeqFamily,
        certificate: Option<ConvergenceCertificate>,
    },
    /// `T: V -> W1`, `W1` an ideal of the coordinatewise space `W2` via
    /// `inclusion`, and `±T x_n <= bound` in `W1` for every `n`.
    IdealComparison {
        t: RatMatrix,
        w1: OrderedSpace,
        w2: OrderedSpace,
        inclusion: RatMatrix,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        bound: RatVector,
        family: SeqFamily,
        certificate: Option<ConvergenceCertificate>,
    },
    /// The family and its limit stay in the subspace `ideal` of `V`.
    IdealRestriction {
        sos: SemiOrderSpace,
        #[serde(with = "crate::space::vecs")]
        ideal: Vec<RatVector>,
        family: SeqFamily,
        certificate: Option<ConvergenceCertificate>,
    },
    /// Push through the vector lattice cover of `W`.
    CoverLift { sos: SemiOrderSpace, family: SeqFamily, certificate: Option<ConvergenceCertificate> },
}

impl TransferInstance {
    pub fn part(&self) -> u8 {
        match self {
            TransferInstance::DenseAmbient { .. } => 1,
            TransferInstance::DenseSubspace { .. } => 2,
            TransferInstance::IdealComparison { .. } => 3,
            TransferInstance::IdealRestriction { .. } => 4,
            TransferInstance::CoverLift { .. } => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub part: u8,
    pub hypotheses: Verdict,
    pub source: Option<ConvergenceCertificate>,
    pub source_check: Option<CheckResult>,
    pub target: Option<ConvergenceCertificate>,
    pub target_check: Option<CheckResult>,
    pub outcome: Outcome,
}

impl TransferReport {
    fn inapplicable(part: u8, hypotheses: Verdict) -> Self {
        Self { part, hypotheses, source: None, source_check: None, target: None, target_check: None, outcome: Outcome::Unknown }
    }
}

/// The source certificate: the supplied one, or a synthesized one.
fn source_certificate(
    space: &OrderedSpace,
    x: &SeqFamily,
    supplied: &Option<ConvergenceCertificate>,
) -> Result<Option<ConvergenceCertificate>> {
    if let Some(c) = supplied {
        return Ok(Some(c.clone()));
    }
    Ok(match decide_towards(space, x, &x.limit)? {
        ConvergenceVerdict::Converges { otilde_certificate, .. } => Some(otilde_certificate),
        _ => None,
    })
}

fn push(cert: &ConvergenceCertificate, m: &RatMatrix) -> Result<ConvergenceCertificate> {
    Ok(ConvergenceCertificate {
        kind: CertKind::Wt,
        limit: m.apply(&cert.limit)?,
        witness: DecreasingWitness {
            family: cert.witness.family.apply(m)?,
            monotone_from: cert.witness.monotone_from,
            inf_is_zero_evidence: cert.witness.inf_is_zero_evidence.clone(),
        },
        threshold: cert.threshold.clone(),
    })
}

fn finish(
    part: u8,
    hypotheses: Verdict,
    source_space: &OrderedSpace,
    source_family: &SeqFamily,
    source: Option<ConvergenceCertificate>,
    transform: impl FnOnce(&ConvergenceCertificate) -> Result<(OrderedSpace, SeqFamily, ConvergenceCertificate)>,
) -> Result<TransferReport> {
    let Some(source) = source else {
        return Ok(TransferReport::inapplicable(part, Verdict::unknown("the family has no source certificate")));
    };
    let source_check = verify_certificate(source_space, source_family, &source)?;
    if !source_check.is_accepted() {
        return Ok(TransferReport { source: Some(source), source_check: Some(source_check), ..TransferReport::inapplicable(part, hypotheses) });
    }
    let (space, family, target) = transform(&source)?;
    let target_check = verify_certificate(&space, &family, &target)?;
    let outcome = match &target_check {
        CheckResult::Accepted => Outcome::Holds,
        CheckResult::Rejected { .. } => Outcome::Fails,
        CheckResult::Inconclusive { .. } => Outcome::Unknown,
    };
    Ok(TransferReport {
        part,
        hypotheses,
        source: Some(source),
        source_check: Some(source_check),
        target: Some(target),
        target_check: Some(target_check),
        outcome,
    })
}

fn dense_image(ambient: &OrderedSpace, embedding: &RatMatrix) -> Result<bool> {
    let sub_ = Subspace::span(ambient, &embedding.columns())?;
    Ok(sub_.dim() == embedding.ncols() && ambient.is_order_dense(&sub_)?.outcome == Outcome::Holds)
}

/// `(bound ∧ y_m)` in a coordinatewise space, for `y` decreasing to 0.
pub fn meet_with_constant(bound: &[Rat], y: &SeqFamily) -> Result<SeqFamily> {
    check_dim(bound.len(), y.dim())?;
    let d = bound.len();
    let keep: Vec<bool> = bound.iter().map(|u| u > &Rat::zero()).collect();
    let mut from = y.last_prefix() + 1;
    for j in (0..d).filter(|&j| keep[j]) {
        let c = y.coordinate(j);
        from = from.max(crate::convergence::expoly::first_true(1, |m| c.eval(m) <= bound[j]));
    }
    let terms = y
        .terms
        .iter()
        .map(|t| VecTerm::new((0..d).map(|j| if keep[j] { t.coeff[j].clone() } else { Rat::zero() }).collect(), t.rho.clone(), t.exp))
        .collect();
    let prefix: BTreeMap<u64, RatVector> = (1..from)
        .map(|m| (m, y.value(m).iter().zip(bound).map(|(a, b)| a.min(b).clone()).collect()))
        .collect();
    SeqFamily::new(y.limit.iter().zip(bound).map(|(a, b)| a.min(b).clone()).collect(), terms, prefix)
}

fn left_inverse(j: &RatMatrix) -> Result<RatMatrix> {
    let jt = j.transpose();
    let g = jt.mul(j)?.inverse().ok_or_else(|| Error::Precondition("inclusion is not injective".into()))?;
    g.mul(&jt)
}

/// `±x_n <= bound` for every `n`, checked on each cone functional.
fn dominated_everywhere(space: &OrderedSpace, x: &SeqFamily, bound: &[Rat]) -> bool {
    cone_functionals(space).iter().all(|f| {
        let fb = crate::rational::dot(f, bound);
        x.functional(&crate::rational::neg(f)).minus_constant(&-&fb).nonneg_everywhere()
            && x.functional(f).minus_constant(&-fb).nonneg_everywhere()
    })
}

pub fn check_convergence_transfer(instance: &TransferInstance) -> Result<TransferReport> {
    let part = instance.part();
    match instance {
        TransferInstance::DenseAmbient { sos, ambient, embedding, family, certificate } => {
            check_dim(ambient.dim, embedding.nrows())?;
            check_dim(sos.w.dim, embedding.ncols())?;
            if !check_bipositive(&sos.w, embedding)? || !dense_image(ambient, embedding)? {
                return Ok(TransferReport::inapplicable(part, Verdict::fails("W is not an order dense bipositive copy in U", "")));
            }
            let image = family.apply(&sos.t)?;
            let source = source_certificate(&sos.w, &image, certificate)?;
            finish(part, Verdict::holds("W is order dense in U"), &sos.w, &image, source, |c| {
                Ok((ambient.clone(), image.apply(embedding)?, push(c, embedding)?))
            })
        }
        TransferInstance::DenseSubspace { v, w, inclusion, family, certificate } => {
            check_dim(w.dim, inclusion.nrows())?;
            check_dim(v.dim, inclusion.ncols())?;
            if !check_bipositive(v, inclusion)? || !dense_image(w, inclusion)? {
                return Ok(TransferReport::inapplicable(part, Verdict::fails("V is not an order dense bipositive copy in W", "")));
            }
            let source = source_certificate(v, family, certificate)?;
            finish(part, Verdict::holds("V is order dense in W"), v, family, source, |c| {
                Ok((w.clone(), family.apply(inclusion)?, push(c, inclusion)?))
            })
        }
        TransferInstance::IdealComparison { t, w1, w2, inclusion, bound, family, certificate } => {
            check_dim(w1.dim, t.nrows())?;
            check_dim(w1.dim, bound.len())?;
            let coordinatewise = *w2 == OrderedSpace { name: w2.name.clone(), ..OrderedSpace::orthant(w2.dim) };
            let ideal = Subspace::span(w2, &inclusion.columns())?;
            let image = family.apply(t)?;
            let bounded = dominated_everywhere(w1, &image, bound);
            if !coordinatewise || !check_bipositive(w1, inclusion)? || !is_ideal(&ideal)? || !bounded {
                return Ok(TransferReport::inapplicable(
                    part,
                    Verdict::fails("needs a bounded family and an ideal of a coordinatewise space", ""),
                ));
            }
            let outer = image.apply(inclusion)?;
            let source = source_certificate(w2, &outer, certificate)?;
            let hyp = Verdict::holds("W1 is an ideal of W2 and the family is bounded in W1");
            finish(part, hyp, w2, &outer, source, |c| {
                let u = inclusion.apply(bound)?;
                let meet = meet_with_constant(&u, &c.witness.family)?;
                let back = left_inverse(inclusion)?;
                let target = ConvergenceCertificate {
                    kind: CertKind::Wt,
                    limit: image.limit.clone(),
                    witness: DecreasingWitness {
                        family: meet.apply(&back)?,
                        monotone_from: 1,
                        inf_is_zero_evidence: "meet of the bound with a witness decreasing to 0".into(),
                    },
                    threshold: c.threshold.clone(),
                };
                Ok((w1.clone(), image.clone(), target))
            })
        }
        TransferInstance::IdealRestriction { sos, ideal, family, certificate } => {
            let basis = crate::linalg::span_basis(ideal, sos.v_dim);
            let b = RatMatrix::from_columns(sos.v_dim, &basis)?;
            let back = left_inverse(&b)?;
            let inside = |v: &RatVector| crate::linalg::in_span(&basis, v);
            let stays = inside(&family.limit)
                && family.terms.iter().all(|t| inside(&t.coeff))
                && family.prefix.values().all(inside);
            if !stays || !wt_ideal(sos, &basis)? {
                return Ok(TransferReport::inapplicable(part, Verdict::fails("family or ideal hypothesis fails", "")));
            }
            let image = family.apply(&sos.t)?;
            let source = source_certificate(&sos.w, &image, certificate)?;
            finish(part, Verdict::holds("the family lies in the ideal"), &sos.w, &image, source, |c| {
                let restricted = sos.t.mul(&b)?;
                let coords = family.apply(&back)?;
                let mut target = c.clone();
                target.kind = CertKind::Wt;
                Ok((sos.w.clone(), coords.apply(&restricted)?, target))
            })
        }
        TransferInstance::CoverLift { sos, family, certificate } => {
            let outcome = make_cover(&sos.w)?;
            let Some(cover) = outcome.cover().filter(|c| c.order_dense_verified && c.bipositive_verified) else {
                return Ok(TransferReport::inapplicable(part, Verdict::fails("no verified cover", "")));
            };
            let image = family.apply(&sos.t)?;
            let source = source_certificate(&sos.w, &image, certificate)?;
            let target_space = OrderedSpace::orthant(cover.target_dim);
            finish(part, Verdict::holds("verified vector lattice cover"), &sos.w, &image, source, |c| {
                Ok((target_space, image.apply(&cover.embedding)?, push(c, &cover.embedding)?))
            })
        }
    }
}

/// Basis of `{u : u1 + u2 = u3 + u4}` in Q^4.
fn balanced_subspace() -> RatMatrix {
    RatMatrix::from_columns(4, &[ints(&[1, 0, 1, 0]), ints(&[1, 0, 0, 1]), ints(&[0, 1, 1, 0])]).expect("shape")
}

fn induced(name: &str, embedding: &RatMatrix) -> Result<OrderedSpace> {
    let cone = crate::space::Cone::from_facets(embedding.ncols(), embedding.rows().to_vec(), Vec::new())?;
    Ok(OrderedSpace::new(name, cone))
}

/// One instance for each of the five transfer checks.
pub fn documented_instances() -> Result<Vec<TransferInstance>> {
    let one = Rat::one();
    let b = balanced_subspace();
    let balanced = induced("BALANCED4", &b)?;
    let part1 = TransferInstance::DenseAmbient {
        sos: SemiOrderSpace::new(2, balanced.clone(), RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]))?,
        ambient: OrderedSpace::orthant(4),
        embedding: b.clone(),
        family: SeqFamily::simple(
            ints(&[1, -1]),
            vec![VecTerm::new(ints(&[1, 0]), one.clone(), -1), VecTerm::new(ints(&[0, 3]), frac(1, 2), 0)],
        )?,
        certificate: None,
    };
    let part2 = TransferInstance::DenseSubspace {
        v: balanced,
        w: OrderedSpace::orthant(4),
        inclusion: b,
        family: SeqFamily::simple(ints(&[0, 0, 1]), vec![VecTerm::new(ints(&[2, -1, 0]), frac(2, 3), 1)])?,
        certificate: None,
    };
    let part3 = TransferInstance::IdealComparison {
        t: RatMatrix::from_ints(&[&[1, 1], &[0, 1]]),
        w1: OrderedSpace::orthant(2),
        w2: OrderedSpace::orthant(3),
        inclusion: RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]),
        bound: vec![frac(1, 2), frac(1, 4)],
        family: SeqFamily::simple(ints(&[0, 0]), vec![VecTerm::new(vec![frac(1, 4), frac(1, 4)], one.clone(), -1)])?,
        certificate: Some(ConvergenceCertificate {
            kind: CertKind::Otilde,
            limit: ints(&[0, 0, 0]),
            witness: DecreasingWitness {
                family: SeqFamily::harmonic(ints(&[1, 1, 1])),
                monotone_from: 1,
                inf_is_zero_evidence: String::new(),
            },
            threshold: Threshold::identity(),
        }),
    };
    let part4 = TransferInstance::IdealRestriction {
        sos: SemiOrderSpace::new(3, OrderedSpace::orthant(3), RatMatrix::diagonal(&ints(&[1, 2, 1])))?,
        ideal: vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])],
        family: SeqFamily::simple(
            ints(&[1, 2, 0]),
            vec![VecTerm::new(ints(&[1, -1, 0]), one.clone(), -1), VecTerm::new(ints(&[0, 1, 0]), frac(1, 2), 0)],
        )?,
        certificate: None,
    };
    let part5 = TransferInstance::CoverLift {
        sos: SemiOrderSpace::identity(OrderedSpace::k4()),
        family: SeqFamily::harmonic(ints(&[1, 0, 0])),
        certificate: Some(ConvergenceCertificate {
            kind: CertKind::Otilde,
            limit: ints(&[0, 0, 0]),
            witness: DecreasingWitness {
                family: SeqFamily::harmonic(ints(&[0, 0, 1])),
                monotone_from: 1,
                inf_is_zero_evidence: String::new(),
            },
            threshold: Threshold::identity(),
        }),
    };
    Ok(vec![part1, part2, part3, part4, part5])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_instances_transfer() {
        for inst in documented_instances().unwrap() {
            let r = check_convergence_transfer(&inst).unwrap();
            assert_eq!(r.outcome, Outcome::Holds, "part {}: {:?}", r.part, r);
        }
    }

    #[test]
    fn cover_pushes_to_constant_vector() {
        let inst = &documented_instances().unwrap()[4];
        let r = check_convergence_transfer(inst).unwrap();
        let y = r.target.unwrap().witness.family;
        assert_eq!(y.value(3), vec![frac(1, 3); 4]);
    }

    #[test]
    fn meet_has_prefix() {
        let y = SeqFamily::harmonic(ints(&[1, 1, 1]));
        let m = meet_with_constant(&[frac(1, 2), frac(1, 4), Rat::zero()], &y).unwrap();
        assert_eq!(m.value(1), vec![frac(1, 2), frac(1, 4), Rat::zero()]);
        assert_eq!(m.value(3), vec![frac(1, 3), frac(1, 4), Rat::zero()]);
        assert_eq!(m.value(4), vec![frac(1, 4), frac(1, 4), Rat::zero()]);
        assert_eq!(m.value(9), vec![frac(1, 9), frac(1, 9), Rat::zero()]);
    }
}
