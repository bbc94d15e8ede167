//! Query evaluation.

use serde::Serialize;
use serde_json::{json, Value};

use ordspace::convergence::{
    decide_o_convergence, is_decreasing_to_zero, verify_certificate, verify_refutation, ConvergenceVerdict,
};
use ordspace::corpus::{random_family, rng};
use ordspace::cover::{is_preriesz, make_cover};
use ordspace::gallery::{gallery_verify_certificate, ECSeq, GalleryVerdict};
use ordspace::operator::{classify, classify_gallery_op, default_gallery_corpus, modulus, op_inf, op_sup, LinOp};
use num_traits::Zero;
use ordspace::linalg::RatMatrix;
use ordspace::rational::RatVector;
use ordspace::semiorder::{
    check_disjoint_bounded_null, check_disjoint_bounded_null_gallery, semi_leq, wt_band_projection, wt_converges,
    wt_disjoint,
};
use ordspace::space::{OrderedSpace, Subspace};
use ordspace::structure::{band_projection, disjoint_complement, is_band, is_disjoint, is_ideal};
use ordspace::transfer::{check_convergence_transfer, documented_instances};

use crate::problem::{ecseq, name, vector, Family, InputError, Problem, Query, SemiOrder};

pub const OPERATIONS: &[&str] = &[
    "leq",
    "is_positive",
    "cone_axioms",
    "infimum",
    "supremum",
    "is_lattice",
    "has_rdp",
    "is_preriesz",
    "cover",
    "disjoint",
    "disjoint_complement",
    "is_ideal",
    "is_band",
    "band_projection",
    "converges",
    "decreasing_to_zero",
    "semi_leq",
    "wt_converges",
    "wt_disjoint",
    "wt_band_projection",
    "classify",
    "modulus",
    "sup",
    "inf",
    "disjoint_null",
    "transfer",
];

pub enum EvalError {
    Input(String),
    /// The library refused to produce a self-contradictory answer.
    Failure(String),
}

impl From<InputError> for EvalError {
    fn from(e: InputError) -> Self {
        EvalError::Input(e.0)
    }
}

impl From<ordspace::Error> for EvalError {
    fn from(e: ordspace::Error) -> Self {
        match e {
            ordspace::Error::InconsistentReport(_) => EvalError::Failure(e.to_string()),
            other => EvalError::Input(other.to_string()),
        }
    }
}

pub struct Answer {
    pub value: Value,
    pub detail: Value,
}

pub struct Settings {
    pub seed: u64,
    pub budget: u64,
}

type Eval<T> = Result<T, EvalError>;

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn answer(value: impl Serialize, detail: impl Serialize) -> Answer {
    Answer { value: to_json(&value), detail: to_json(&detail) }
}

fn arity(q: &Query, n: usize) -> Eval<()> {
    if q.args.len() < n {
        return Err(EvalError::Input(format!("{} needs at least {n} arguments, got {}", q.op, q.args.len())));
    }
    Ok(())
}

fn vectors(args: &[Value]) -> Eval<Vec<RatVector>> {
    Ok(args.iter().map(vector).collect::<Result<_, _>>()?)
}

fn finite_semiorder(p: &Problem, v: &Value) -> Eval<ordspace::semiorder::SemiOrderSpace> {
    match p.semiorder(name(v)?)? {
        SemiOrder::Finite(s) => Ok(s),
        SemiOrder::Gallery(_) => Err(EvalError::Input(format!("{v} is a sequence space; a finite space is needed"))),
    }
}

fn matrix_op(p: &Problem, v: &Value) -> Eval<(OrderedSpace, OrderedSpace, RatMatrix)> {
    match p.operator(name(v)?)? {
        LinOp::Matrix { domain, codomain, matrix } => Ok((domain.w, codomain.w, matrix)),
        LinOp::Gallery { .. } => Err(EvalError::Input(format!("{v} is not a matrix operator"))),
    }
}

/// Re-checks every certificate inside a finite convergence verdict.
fn reverify(space: &OrderedSpace, x: &ordspace::convergence::SeqFamily, v: &ConvergenceVerdict) -> Eval<bool> {
    Ok(match v {
        ConvergenceVerdict::Converges { o_certificate, otilde_certificate, .. } => {
            verify_certificate(space, x, o_certificate)?.is_accepted()
                && verify_certificate(space, x, otilde_certificate)?.is_accepted()
        }
        ConvergenceVerdict::NotConverges { refutation } => verify_refutation(x, refutation),
        ConvergenceVerdict::Unknown { .. } => true,
    })
}

fn gallery_reverify(g: &ordspace::semiorder::GallerySemiOrder, x: &ordspace::gallery::GalleryFamily, v: &GalleryVerdict, budget: u64) -> Eval<bool> {
    let Some(image) = x.image(&g.t) else {
        return Ok(matches!(v, GalleryVerdict::Unknown { .. }));
    };
    Ok(match v {
        GalleryVerdict::Converges { certificate } => {
            gallery_verify_certificate(g.w, &image, certificate, budget)?.is_accepted()
        }
        GalleryVerdict::NotConverges { refutation, .. } => refutation.verify(g.w, &image),
        GalleryVerdict::Unknown { .. } => true,
    })
}

/// The modulus construction may decline on domains without the
/// decomposition property; that is an answer, not an input error.
fn refusal(r: ordspace::Result<RatMatrix>) -> Eval<Answer> {
    use ordspace::Error;
    let kind = match &r {
        Ok(m) => return Ok(answer(m, m)),
        Err(Error::ModulusNotAdditive { .. }) => "NOT_ADDITIVE",
        Err(Error::NonSimplicialDomain) => "NON_SIMPLICIAL_DOMAIN",
        Err(Error::NonLatticeCodomain(_)) => "NON_LATTICE_CODOMAIN",
        Err(_) => return Err(r.unwrap_err().into()),
    };
    let reason = r.unwrap_err().to_string();
    Ok(answer(json!({ "refused": kind }), json!({ "refused": kind, "reason": reason })))
}

pub fn evaluate(p: &Problem, q: &Query, s: &Settings) -> Eval<Answer> {
    let a = &q.args;
    let space = |i: usize| -> Eval<OrderedSpace> { Ok(p.space(name(&a[i])?)?) };
    let vec_at = |i: usize| -> Eval<RatVector> { Ok(vector(&a[i])?) };
    Ok(match q.op.as_str() {
        "leq" => {
            arity(q, 3)?;
            let b = space(0)?.leq(&vec_at(1)?, &vec_at(2)?)?;
            answer(b, b)
        }
        "is_positive" => {
            arity(q, 2)?;
            let b = space(0)?.is_positive(&vec_at(1)?)?;
            answer(b, b)
        }
        "cone_axioms" => {
            arity(q, 1)?;
            let r = space(0)?.cone_axioms()?;
            answer(r, r)
        }
        "infimum" | "supremum" => {
            arity(q, 2)?;
            let sp = space(0)?;
            let pts = vectors(&a[1..])?;
            let r = if q.op == "infimum" { sp.infimum(&pts)? } else { sp.supremum(&pts)? };
            let point = r.point().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>());
            answer(point, r)
        }
        "is_lattice" => {
            arity(q, 1)?;
            let r = space(0)?.is_lattice()?;
            answer(r.is_lattice, r)
        }
        "has_rdp" => {
            arity(q, 1)?;
            let sp = space(0)?;
            let r = sp.has_rdp()?;
            let verified = match &r.witness {
                Some(w) => Some(sp.verify_rdp_witness(w)?),
                None => None,
            };
            answer(r.has_rdp, json!({ "result": r, "witness_verified": verified }))
        }
        "is_preriesz" => {
            arity(q, 1)?;
            let r = is_preriesz(&space(0)?, s.seed, s.budget as usize)?;
            answer(r.outcome, r)
        }
        "cover" => {
            arity(q, 1)?;
            let r = make_cover(&space(0)?)?;
            answer(r.cover().is_some(), r)
        }
        "disjoint" => {
            arity(q, 3)?;
            let r = is_disjoint(&space(0)?, &vec_at(1)?, &vec_at(2)?)?;
            if !r.agree {
                return Err(EvalError::Failure("disjointness routes disagree".into()));
            }
            answer(r.direct_result, r)
        }
        "disjoint_complement" => {
            arity(q, 2)?;
            let r = disjoint_complement(&space(0)?, &vectors(&a[1..])?)?;
            let canonical = if r.basis.is_empty() { Vec::new() } else { RatMatrix::new(r.basis.clone())?.rref().0.rows().to_vec() };
            let rows: Vec<Vec<String>> = canonical
                .iter()
                .filter(|row| row.iter().any(|x| !x.is_zero()))
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            answer(&rows, json!({ "dimension": rows.len(), "reduced_basis": rows }))
        }
        "is_ideal" | "is_band" => {
            arity(q, 2)?;
            let sub = Subspace::span(&space(0)?, &vectors(&a[1..])?)?;
            let b = if q.op == "is_ideal" { is_ideal(&sub)? } else { is_band(&sub)? };
            answer(b, b)
        }
        "band_projection" => {
            arity(q, 2)?;
            let sub = Subspace::span(&space(0)?, &vectors(&a[1..])?)?;
            let r = band_projection(&sub)?;
            answer(r.matrix().is_some(), r)
        }
        "converges" => {
            arity(q, 2)?;
            let sp = space(0)?;
            let Family::Finite(x) = p.family(&a[1])? else {
                return Err(EvalError::Input("converges needs a finite-dimensional family".into()));
            };
            let v = decide_o_convergence(&sp, &x)?;
            let ok = reverify(&sp, &x, &v)?;
            answer(v.converges(), json!({ "verdict": v, "reverified": ok }))
        }
        "decreasing_to_zero" => {
            arity(q, 2)?;
            let Family::Finite(x) = p.family(&a[1])? else {
                return Err(EvalError::Input("decreasing_to_zero needs a finite-dimensional family".into()));
            };
            let r = is_decreasing_to_zero(&space(0)?, &x)?;
            answer(r.decreasing_to_zero, r)
        }
        "semi_leq" => {
            arity(q, 3)?;
            match p.semiorder(name(&a[0])?)? {
                SemiOrder::Finite(sos) => {
                    let b = semi_leq(&sos, &vec_at(1)?, &vec_at(2)?)?;
                    answer(b, b)
                }
                SemiOrder::Gallery(g) => {
                    let b = g.semi_leq(&ecseq(&a[1])?, &ecseq(&a[2])?)?;
                    answer(b, b)
                }
            }
        }
        "wt_converges" => {
            arity(q, 2)?;
            match (p.semiorder(name(&a[0])?)?, p.family(&a[1])?) {
                (SemiOrder::Finite(sos), Family::Finite(x)) => {
                    let limit = if a.len() > 2 { vec_at(2)? } else { x.limit.clone() };
                    let v = wt_converges(&sos, &x, &limit)?;
                    let image = x.apply(&sos.t)?;
                    let ok = reverify(&sos.w, &image, &v)?;
                    answer(v.converges(), json!({ "verdict": v, "reverified": ok }))
                }
                (SemiOrder::Gallery(g), Family::Gallery(x)) => {
                    let limit = if a.len() > 2 { ecseq(&a[2])? } else { ECSeq::zero() };
                    let v = g.converges(&x, &limit, s.budget)?;
                    let ok = gallery_reverify(&g, &x, &v, s.budget)?;
                    answer(v.converges(), json!({ "verdict": v, "reverified": ok }))
                }
                _ => return Err(EvalError::Input("family and space kinds differ".into())),
            }
        }
        "wt_disjoint" => {
            arity(q, 2)?;
            let b = wt_disjoint(&finite_semiorder(p, &a[0])?, &vectors(&a[1..])?)?;
            answer(b, b)
        }
        "wt_band_projection" => {
            arity(q, 2)?;
            let r = wt_band_projection(&finite_semiorder(p, &a[0])?, &vectors(&a[1..])?)?;
            answer(r.matrix().is_some(), r)
        }
        "classify" => {
            arity(q, 1)?;
            let op = p.operator(name(&a[0])?)?;
            let r = match &op {
                LinOp::Matrix { domain, .. } => {
                    let mut g = rng(s.seed);
                    let n = (s.budget as usize).clamp(1, 50);
                    let fams: Vec<_> = (0..n).map(|_| random_family(&mut g, domain.v_dim, 10)).collect();
                    classify(&op, &fams, &[])?
                }
                LinOp::Gallery { .. } => classify_gallery_op(&op, &default_gallery_corpus(), s.budget)?,
            };
            let value = json!({
                "positive": r.positive.outcome,
                "order_continuous": r.order_continuous.outcome,
                "otilde_continuous": r.otilde_continuous.outcome,
                "semiorder_continuous": r.semiorder_continuous.outcome,
                "semiorder_bounded": r.semiorder_bounded.outcome,
            });
            Answer { value, detail: to_json(&r) }
        }
        "modulus" => {
            arity(q, 1)?;
            let (d, c, t) = matrix_op(p, &a[0])?;
            refusal(modulus(&d, &c, &t))?
        }
        "sup" | "inf" => {
            arity(q, 2)?;
            let (d, c, t) = matrix_op(p, &a[0])?;
            let (_, _, u) = matrix_op(p, &a[1])?;
            refusal(if q.op == "sup" { op_sup(&d, &c, &t, &u) } else { op_inf(&d, &c, &t, &u) })?
        }
        "disjoint_null" => {
            arity(q, 2)?;
            match p.semiorder(name(&a[0])?)? {
                SemiOrder::Finite(sos) => {
                    let r = check_disjoint_bounded_null(&sos, &vectors(&a[1..])?)?;
                    answer(r.holds(), r)
                }
                SemiOrder::Gallery(g) => {
                    let Family::Gallery(x) = p.family(&a[1])? else {
                        return Err(EvalError::Input("a sequence-space family is needed".into()));
                    };
                    let r = check_disjoint_bounded_null_gallery(&g, &x, s.budget)?;
                    answer(r.holds(), r)
                }
            }
        }
        "transfer" => {
            arity(q, 1)?;
            let part = a[0].as_u64().filter(|k| (1..=5).contains(k));
            let Some(part) = part else {
                return Err(EvalError::Input(format!("transfer part must be 1 to 5, got {}", a[0])));
            };
            let inst = documented_instances()?.into_iter().find(|i| u64::from(i.part()) == part).expect("five parts");
            let r = check_convergence_transfer(&inst)?;
            answer(r.outcome, r)
        }
        other => {
            return Err(EvalError::Input(format!("unknown operation {other:?}; known: {}", OPERATIONS.join(", "))));
        }
    })
}

/// Objects match when every expected key matches; everything else compares
/// exactly.
pub fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|x| matches(v, x))),
        _ => expected == actual,
    }
}
