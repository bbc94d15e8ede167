//! Eventually constant rational sequences as stand-ins for `c0` and
//! `l-infinity`, and the sequence families and operators living on them.
//!
//! Non-convergence verdicts here are only issued with a structural
//! refutation that quantifies over every candidate bound, so it applies
//! to the full sequence spaces and not just the eventually constant part.

use std::cmp::max;
use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::convergence::{CheckResult, Threshold};
use crate::decision::Verdict;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{ceil_int, floor_int, int, Rat};

/// `(head_1, ..., head_k, tail, tail, ...)`, indexed from 1.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ECSeq {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    head: Vec<Rat>,
    #[serde_as(as = "DisplayFromStr")]
    tail: Rat,
}

impl ECSeq {
    pub fn new(head: Vec<Rat>, tail: Rat) -> Self {
        let mut s = Self { head, tail };
        while s.head.last() == Some(&s.tail) {
            s.head.pop();
        }
        s
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn constant(c: Rat) -> Self {
        Self { head: Vec::new(), tail: c }
    }

    pub fn finite(head: Vec<Rat>) -> Self {
        Self::new(head, Rat::zero())
    }

    /// `e_n`
    pub fn basis(n: u64) -> Self {
        assert!(n >= 1, "indices start at 1");
        let mut head = vec![Rat::zero(); n as usize];
        head[n as usize - 1] = Rat::one();
        Self::finite(head)
    }

    /// `(n, ..., n, 0, ...)` with `n` leading entries.
    pub fn elin_image(n: u64) -> Self {
        Self::finite(vec![int(n as i64); n as usize])
    }

    /// Zeros before index `m`, ones from `m` on.
    pub fn indicator_from(m: u64) -> Self {
        Self::new(vec![Rat::zero(); m.saturating_sub(1) as usize], Rat::one())
    }

    pub fn head(&self) -> &[Rat] {
        &self.head
    }

    pub fn tail(&self) -> &Rat {
        &self.tail
    }

    pub fn get(&self, i: u64) -> Rat {
        assert!(i >= 1, "indices start at 1");
        self.head.get(i as usize - 1).cloned().unwrap_or_else(|| self.tail.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tail.is_zero()
    }

    pub fn has_finite_support(&self) -> bool {
        self.tail.is_zero()
    }

    fn zip(&self, other: &ECSeq, f: impl Fn(&Rat, &Rat) -> Rat) -> ECSeq {
        let len = max(self.head.len(), other.head.len()) as u64;
        let head = (1..=len).map(|i| f(&self.get(i), &other.get(i))).collect();
        ECSeq::new(head, f(&self.tail, &other.tail))
    }

    pub fn add(&self, other: &ECSeq) -> ECSeq {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ECSeq) -> ECSeq {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> ECSeq {
        ECSeq::new(self.head.iter().map(|a| a * c).collect(), &self.tail * c)
    }

    pub fn neg(&self) -> ECSeq {
        self.scale(&-Rat::one())
    }

    pub fn abs(&self) -> ECSeq {
        ECSeq::new(self.head.iter().map(Signed::abs).collect(), self.tail.abs())
    }

    pub fn meet(&self, other: &ECSeq) -> ECSeq {
        self.zip(other, |a, b| a.min(b).clone())
    }

    pub fn join(&self, other: &ECSeq) -> ECSeq {
        self.zip(other, |a, b| a.max(b).clone())
    }

    pub fn leq(&self, other: &ECSeq) -> bool {
        let len = max(self.head.len(), other.head.len()) as u64;
        (1..=len).all(|i| self.get(i) <= other.get(i)) && self.tail <= other.tail
    }

    /// Some index where `self <= other` fails.
    pub fn first_excess(&self, other: &ECSeq) -> Option<u64> {
        let len = max(self.head.len(), other.head.len()) as u64;
        (1..=len + 1).find(|&i| self.get(i) > other.get(i))
    }

    pub fn disjoint(&self, other: &ECSeq) -> bool {
        self.abs().meet(&other.abs()).is_zero()
    }
}

impl std::fmt::Display for ECSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let head: Vec<String> = self.head.iter().map(ToString::to_string).collect();
        if head.is_empty() {
            write!(f, "({}, ...)", self.tail)
        } else {
            write!(f, "({}; {}, ...)", head.join(", "), self.tail)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GallerySpace {
    #[serde(rename = "c0rep")]
    C0Rep,
    #[serde(rename = "linfrep")]
    LInfRep,
}

impl GallerySpace {
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "c0rep" => Ok(GallerySpace::C0Rep),
            "linfrep" => Ok(GallerySpace::LInfRep),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GallerySpace::C0Rep => "c0rep",
            GallerySpace::LInfRep => "linfrep",
        }
    }

    pub fn contains(&self, a: &ECSeq) -> bool {
        match self {
            GallerySpace::C0Rep => a.tail.is_zero(),
            GallerySpace::LInfRep => true,
        }
    }
}

/// Operators on finitely supported sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GalleryOp {
    Inclusion,
    /// `e_n -> (n, ..., n, 0, ...)` with `n` leading entries.
    Elin,
    /// Acts on the first `ncols` coordinates, output supported on the
    /// first `nrows`.
    Matrix(RatMatrix),
}

impl GalleryOp {
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "inclusion" | "identity" => Ok(GalleryOp::Inclusion),
            "elin" | "elin_t" => Ok(GalleryOp::Elin),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn apply(&self, a: &ECSeq) -> Result<ECSeq> {
        match self {
            GalleryOp::Inclusion => Ok(a.clone()),
            GalleryOp::Elin => {
                if !a.has_finite_support() {
                    return Err(Error::Precondition("the operator is only defined on finite support".into()));
                }
                // Coordinate i of sum x_n a_n is sum_{n >= i} n x_n.
                let k = a.head.len();
                let mut head = vec![Rat::zero(); k];
                let mut acc = Rat::zero();
                for i in (1..=k).rev() {
                    acc += int(i as i64) * &a.head[i - 1];
                    head[i - 1] = acc.clone();
                }
                Ok(ECSeq::finite(head))
            }
            GalleryOp::Matrix(m) => {
                if !a.has_finite_support() || a.head.len() > m.ncols() {
                    return Err(Error::Precondition("input support exceeds the matrix".into()));
                }
                let x: Vec<Rat> = (1..=m.ncols() as u64).map(|i| a.get(i)).collect();
                Ok(ECSeq::finite(m.apply(&x)?))
            }
        }
    }

    pub fn is_positive_on_basis(&self, upto: u64) -> Option<u64> {
        let limit = match self {
            GalleryOp::Matrix(m) => m.ncols() as u64,
            _ => upto,
        };
        (1..=limit).find(|&n| self.apply(&ECSeq::basis(n)).map(|y| !ECSeq::zero().leq(&y)).unwrap_or(true))
    }
}

/// Closed-form sequences of gallery elements, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum GalleryFamily {
    /// `e_n`
    Basis,
    /// `(n, ..., n, 0, ...)`
    Elin,
    /// `1_{>= n}`
    IndicatorFrom,
    /// `(1/n) base`
    Harmonic { base: ECSeq },
    Constant { value: ECSeq },
    /// The listed values, then zero.
    Padded { values: Vec<ECSeq> },
}

impl GalleryFamily {
    pub fn value(&self, n: u64) -> ECSeq {
        match self {
            GalleryFamily::Basis => ECSeq::basis(n),
            GalleryFamily::Elin => ECSeq::elin_image(n),
            GalleryFamily::IndicatorFrom => ECSeq::indicator_from(n),
            GalleryFamily::Harmonic { base } => base.scale(&Rat::new(1.into(), n.into())),
            GalleryFamily::Constant { value } => value.clone(),
            GalleryFamily::Padded { values } => values.get(n as usize - 1).cloned().unwrap_or_else(ECSeq::zero),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GalleryFamily::Basis => "e_n".into(),
            GalleryFamily::Elin => "a_n".into(),
            GalleryFamily::IndicatorFrom => "1_{>=n}".into(),
            GalleryFamily::Harmonic { base } => format!("(1/n) {base}"),
            GalleryFamily::Constant { value } => format!("constant {value}"),
            GalleryFamily::Padded { values } => format!("{} values then 0", values.len()),
        }
    }

    /// From this index on the family is constant.
    fn constant_from(&self) -> Option<(u64, ECSeq)> {
        match self {
            GalleryFamily::Constant { value } => Some((1, value.clone())),
            GalleryFamily::Padded { values } => Some((values.len() as u64 + 1, ECSeq::zero())),
            GalleryFamily::Harmonic { base } if base.is_zero() => Some((1, ECSeq::zero())),
            _ => None,
        }
    }

    /// Termwise image, when it stays in the supported shapes.
    pub fn image(&self, op: &GalleryOp) -> Option<GalleryFamily> {
        match (op, self) {
            (GalleryOp::Inclusion, _) => Some(self.clone()),
            (GalleryOp::Elin, GalleryFamily::Basis) => Some(GalleryFamily::Elin),
            (_, GalleryFamily::Harmonic { base }) => op.apply(base).ok().map(|base| GalleryFamily::Harmonic { base }),
            (_, GalleryFamily::Constant { value }) => {
                op.apply(value).ok().map(|value| GalleryFamily::Constant { value })
            }
            (_, GalleryFamily::Padded { values }) => values
                .iter()
                .map(|v| op.apply(v))
                .collect::<Result<Vec<_>>>()
                .ok()
                .map(|values| GalleryFamily::Padded { values }),
            _ => None,
        }
    }

    pub fn all_in(&self, space: GallerySpace) -> bool {
        match self {
            GalleryFamily::IndicatorFrom => space == GallerySpace::LInfRep,
            GalleryFamily::Basis | GalleryFamily::Elin => true,
            GalleryFamily::Harmonic { base } => space.contains(base),
            GalleryFamily::Constant { value } => space.contains(value),
            GalleryFamily::Padded { values } => values.iter().all(|v| space.contains(v)),
        }
    }
}

pub fn gallery_leq(a: &ECSeq, b: &ECSeq) -> bool {
    a.leq(b)
}

pub fn gallery_meet(a: &ECSeq, b: &ECSeq) -> ECSeq {
    a.meet(b)
}

pub fn gallery_join(a: &ECSeq, b: &ECSeq) -> ECSeq {
    a.join(b)
}

/// `y_m` decreases and has infimum 0 in the space.
pub fn gallery_decreasing_to_zero(space: GallerySpace, y: &GalleryFamily) -> Verdict {
    if !y.all_in(space) {
        return Verdict::fails(format!("{} leaves {}", y.name(), space.name()), "member outside the space");
    }
    match y {
        GalleryFamily::IndicatorFrom => {
            Verdict::holds("1_{>=m+1} <= 1_{>=m}; every coordinate is eventually 0 and the family is nonnegative, so 0 is the greatest lower bound")
        }
        GalleryFamily::Harmonic { base } => {
            if ECSeq::zero().leq(base) {
                Verdict::holds("nonnegative base scaled by 1/m decreases, and 1/m tends to 0 uniformly")
            } else {
                let i = base.neg().first_excess(&ECSeq::zero()).unwrap_or(1);
                Verdict::fails("base has a negative coordinate", format!("coordinate {i} increases"))
            }
        }
        GalleryFamily::Basis | GalleryFamily::Elin => {
            Verdict::fails("consecutive members are incomparable", format!("{} vs {}", y.value(2), y.value(1)))
        }
        GalleryFamily::Constant { value } => {
            if value.is_zero() {
                Verdict::holds("identically zero")
            } else {
                Verdict::fails("constant nonzero family", value.to_string())
            }
        }
        GalleryFamily::Padded { values } => {
            let mut all = values.clone();
            all.push(ECSeq::zero());
            for (k, w) in all.windows(2).enumerate() {
                if !w[1].leq(&w[0]) {
                    return Verdict::fails("not decreasing", format!("index {}", k + 1));
                }
            }
            Verdict::holds("finitely many decreasing values followed by 0")
        }
    }
}

/// Refutes eventual order boundedness against an arbitrary candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TailRefutation {
    /// Every bound in the space has only finitely many coordinates `>= 1`,
    /// but `x_n` puts a 1 at coordinate `n`.
    SupportEscapes,
    /// The given coordinate of `x_n` is `n`.
    CoordinateGrowth { coordinate: u64 },
}

impl TailRefutation {
    /// An index `n >= from` with `x_n <= bound` failing.
    pub fn defeat(&self, bound: &ECSeq, from: u64) -> u64 {
        match self {
            TailRefutation::SupportEscapes => max(from, bound.head.len() as u64 + 1),
            TailRefutation::CoordinateGrowth { coordinate } => {
                let c = floor_int(&bound.get(*coordinate)).to_i64().unwrap_or(0).max(0) as u64;
                max(max(from, *coordinate), c + 1)
            }
        }
    }

    /// Checks the structural premise against the family.
    pub fn verify(&self, space: GallerySpace, x: &GalleryFamily) -> bool {
        match (self, x) {
            (TailRefutation::SupportEscapes, GalleryFamily::Basis) => space == GallerySpace::C0Rep,
            (TailRefutation::CoordinateGrowth { coordinate }, GalleryFamily::Elin) => *coordinate == 1,
            _ => false,
        }
    }

    pub fn explain(&self) -> String {
        match self {
            TailRefutation::SupportEscapes => {
                "a bound with tail 0 and head length h is 0 at coordinate h+1, where x_{h+1} is 1".into()
            }
            TailRefutation::CoordinateGrowth { coordinate } => {
                format!("coordinate {coordinate} of x_n equals n, so no bound dominates a tail of the family")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBounded {
    pub bounded: Option<bool>,
    pub bounds: Option<(ECSeq, ECSeq)>,
    pub refutation: Option<TailRefutation>,
}

/// Is some tail of the family inside an order interval of the space?
pub fn gallery_tail_bounded(space: GallerySpace, x: &GalleryFamily) -> TailBounded {
    let yes = |lo: ECSeq, hi: ECSeq| TailBounded { bounded: Some(true), bounds: Some((lo, hi)), refutation: None };
    let no = |r: TailRefutation| TailBounded { bounded: Some(false), bounds: None, refutation: Some(r) };
    match x {
        GalleryFamily::Basis => match space {
            GallerySpace::LInfRep => yes(ECSeq::zero(), ECSeq::constant(Rat::one())),
            GallerySpace::C0Rep => no(TailRefutation::SupportEscapes),
        },
        GalleryFamily::Elin => no(TailRefutation::CoordinateGrowth { coordinate: 1 }),
        GalleryFamily::IndicatorFrom => yes(ECSeq::zero(), ECSeq::constant(Rat::one())),
        GalleryFamily::Harmonic { base } => yes(base.meet(&ECSeq::zero()), base.join(&ECSeq::zero())),
        GalleryFamily::Constant { value } => yes(value.clone(), value.clone()),
        GalleryFamily::Padded { values } => {
            let lo = values.iter().fold(ECSeq::zero(), |a, v| a.meet(v));
            let hi = values.iter().fold(ECSeq::zero(), |a, v| a.join(v));
            yes(lo, hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalleryCertificate {
    pub limit: ECSeq,
    pub witness: GalleryFamily,
    pub threshold: Threshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GalleryVerdict {
    Converges { certificate: GalleryCertificate },
    NotConverges { refutation: TailRefutation, explanation: String },
    Unknown { reason: String },
}

impl GalleryVerdict {
    pub fn converges(&self) -> Option<bool> {
        match self {
            GalleryVerdict::Converges { .. } => Some(true),
            GalleryVerdict::NotConverges { .. } => Some(false),
            GalleryVerdict::Unknown { .. } => None,
        }
    }
}

fn dominated(x: &ECSeq, limit: &ECSeq, y: &ECSeq) -> bool {
    let d = x.sub(limit);
    d.leq(y) && d.neg().leq(y)
}

/// Checks `±(x_n - limit) <= y_m` for `n >= threshold(m)`.
pub fn gallery_verify_certificate(
    space: GallerySpace,
    x: &GalleryFamily,
    cert: &GalleryCertificate,
    budget: u64,
) -> Result<CheckResult> {
    cert.threshold.check()?;
    if !space.contains(&cert.limit) || !x.all_in(space) {
        return Ok(CheckResult::Inconclusive { reason: "family or limit outside the space".into() });
    }
    let w = gallery_decreasing_to_zero(space, &cert.witness);
    if !w.is_holds() {
        return Ok(CheckResult::Inconclusive { reason: format!("witness rejected: {}", w.reason) });
    }
    let alpha = |m: u64| cert.threshold.eval(m);
    // Exact scan of a finite window first; this is where violations show.
    for m in 1..=budget.min(64) {
        let y = cert.witness.value(m);
        for n in alpha(m)..alpha(m) + budget.min(64) {
            if !dominated(&x.value(n), &cert.limit, &y) {
                return Ok(CheckResult::Rejected { m, n, reason: format!("x_{n} - limit is not within y_{m}") });
            }
        }
    }
    match (x, &cert.witness) {
        (GalleryFamily::Basis, GalleryFamily::IndicatorFrom) if cert.limit.is_zero() => {
            // e_n <= 1_{>=m} exactly when n >= m, and -e_n <= 0 always.
            let s = &cert.threshold.slope;
            let o = &cert.threshold.offset;
            let f = |m: u64| (s - Rat::one()) * int(m as i64) + o + Rat::one();
            if *s >= Rat::one() {
                return Ok(if f(2).is_positive() {
                    CheckResult::Accepted
                } else {
                    CheckResult::Rejected { m: 2, n: alpha(2), reason: "threshold below m".into() }
                });
            }
            let m = ceil_int(&((o + Rat::one()) / (Rat::one() - s))).to_u64().unwrap_or(2).max(2);
            Ok(CheckResult::Rejected { m, n: alpha(m), reason: "threshold grows slower than m".into() })
        }
        _ => {
            if let Some((k, value)) = x.constant_from() {
                if value != cert.limit {
                    let n = max(k, alpha(1));
                    return Ok(CheckResult::Rejected { m: 1, n, reason: "family is eventually another constant".into() });
                }
                // Past k the deviation is 0; before k only finitely many m
                // have alpha(m) <= n when the slope is positive.
                if k == 1 || alpha(1) >= k {
                    return Ok(CheckResult::Accepted);
                }
                if cert.threshold.slope.is_positive() {
                    let m_max = (1..).find(|&m| alpha(m) >= k).unwrap_or(1);
                    for m in 1..m_max {
                        for n in alpha(m)..k {
                            if !dominated(&x.value(n), &cert.limit, &cert.witness.value(m)) {
                                return Ok(CheckResult::Rejected { m, n, reason: "prefix member too large".into() });
                            }
                        }
                    }
                    return Ok(CheckResult::Accepted);
                }
                // Constant threshold: the prefix members must already equal
                // the limit, since the witness has infimum 0.
                return Ok(match (alpha(1)..k).find(|&n| x.value(n) != cert.limit) {
                    None => CheckResult::Accepted,
                    Some(n) => {
                        let m = (1..=budget).find(|&m| !dominated(&x.value(n), &cert.limit, &cert.witness.value(m)));
                        match m {
                            Some(m) => CheckResult::Rejected { m, n, reason: "prefix member not dominated".into() },
                            None => CheckResult::Inconclusive { reason: "no violation within budget".into() },
                        }
                    }
                });
            }
            Ok(CheckResult::Inconclusive { reason: "no symbolic rule for this pair of shapes".into() })
        }
    }
}

/// Convergence of `x_n` to `limit` in a gallery space, with a certificate
/// or a structural refutation.
pub fn gallery_decide(space: GallerySpace, x: &GalleryFamily, limit: &ECSeq, budget: u64) -> Result<GalleryVerdict> {
    let tb = gallery_tail_bounded(space, x);
    if let (Some(false), Some(r)) = (tb.bounded, tb.refutation.clone()) {
        return Ok(GalleryVerdict::NotConverges { explanation: r.explain(), refutation: r });
    }
    let candidates: Vec<GalleryCertificate> = match x {
        GalleryFamily::Basis => vec![GalleryCertificate {
            limit: limit.clone(),
            witness: GalleryFamily::IndicatorFrom,
            threshold: Threshold::identity(),
        }],
        _ => match x.constant_from() {
            Some((k, _)) => {
                let tb_hi = tb.bounds.map(|(lo, hi)| hi.join(&lo.neg())).unwrap_or_else(ECSeq::zero);
                vec![
                    GalleryCertificate {
                        limit: limit.clone(),
                        witness: GalleryFamily::Constant { value: ECSeq::zero() },
                        threshold: Threshold::constant(k),
                    },
                    GalleryCertificate {
                        limit: limit.clone(),
                        witness: GalleryFamily::Harmonic { base: tb_hi.scale(&int(2)) },
                        threshold: Threshold::constant(k),
                    },
                ]
            }
            None => Vec::new(),
        },
    };
    let mut last = "no candidate witness for this shape".to_string();
    for cert in candidates {
        match gallery_verify_certificate(space, x, &cert, budget)? {
            CheckResult::Accepted => return Ok(GalleryVerdict::Converges { certificate: cert }),
            CheckResult::Rejected { reason, .. } | CheckResult::Inconclusive { reason } => last = reason,
        }
    }
    Ok(GalleryVerdict::Unknown { reason: last })
}

/// Pairwise disjointness of the members.
pub fn gallery_family_disjoint(x: &GalleryFamily) -> Option<bool> {
    match x {
        GalleryFamily::Basis => Some(true),
        GalleryFamily::Elin | GalleryFamily::IndicatorFrom => Some(false),
        GalleryFamily::Harmonic { base } => Some(base.is_zero()),
        GalleryFamily::Constant { value } => Some(value.is_zero()),
        GalleryFamily::Padded { values } => {
            Some(values.iter().enumerate().all(|(i, a)| values[i + 1..].iter().all(|b| a.disjoint(b))))
        }
    }
}

pub fn ecseq_map(values: &BTreeMap<u64, Rat>, tail: Rat) -> ECSeq {
    let len = values.keys().next_back().copied().unwrap_or(0);
    ECSeq::new((1..=len).map(|i| values.get(&i).cloned().unwrap_or_else(|| tail.clone())).collect(), tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ints};

    #[test]
    fn lattice_ops() {
        let one = ECSeq::constant(Rat::one());
        assert!(gallery_leq(&ECSeq::basis(2), &one));
        assert!(gallery_meet(&ECSeq::basis(1), &ECSeq::basis(2)).is_zero());
        assert_eq!(gallery_join(&ECSeq::finite(ints(&[1, 0])), &ECSeq::finite(ints(&[0, 2]))), ECSeq::finite(ints(&[1, 2])));
        assert_eq!(ECSeq::new(ints(&[3, 1, 1]), Rat::one()), ECSeq::new(ints(&[3]), Rat::one()));
    }

    #[test]
    fn elin_operator() {
        assert_eq!(GalleryOp::Elin.apply(&ECSeq::basis(3)).unwrap(), ECSeq::finite(ints(&[3, 3, 3])));
        let x = ECSeq::finite(vec![Rat::one(), frac(1, 2)]);
        // a_1 + a_2 / 2 = (1,0,...) + (1,1,0,...)
        assert_eq!(GalleryOp::Elin.apply(&x).unwrap(), ECSeq::finite(ints(&[2, 1])));
        assert!(GalleryOp::Elin.apply(&ECSeq::constant(Rat::one())).is_err());
    }

    #[test]
    fn decreasing_shapes() {
        assert!(gallery_decreasing_to_zero(GallerySpace::LInfRep, &GalleryFamily::IndicatorFrom).is_holds());
        assert!(gallery_decreasing_to_zero(GallerySpace::C0Rep, &GalleryFamily::IndicatorFrom).is_fails());
        let h = GalleryFamily::Harmonic { base: ECSeq::constant(Rat::one()) };
        assert!(gallery_decreasing_to_zero(GallerySpace::LInfRep, &h).is_holds());
    }

    #[test]
    fn tail_refutations_defeat_candidates() {
        let r = gallery_tail_bounded(GallerySpace::C0Rep, &GalleryFamily::Basis).refutation.unwrap();
        let z = ECSeq::finite(ints(&[5, 5, 5]));
        let n = r.defeat(&z, 2);
        assert!(!ECSeq::basis(n).leq(&z));
        let r = gallery_tail_bounded(GallerySpace::LInfRep, &GalleryFamily::Elin).refutation.unwrap();
        let z = ECSeq::new(ints(&[7]), int(100));
        let n = r.defeat(&z, 1);
        assert!(!ECSeq::elin_image(n).leq(&z));
    }

    #[test]
    fn basis_converges_in_linf_only() {
        let v = gallery_decide(GallerySpace::LInfRep, &GalleryFamily::Basis, &ECSeq::zero(), 200).unwrap();
        let GalleryVerdict::Converges { certificate } = v else { panic!() };
        assert_eq!(certificate.threshold, Threshold::identity());
        let v = gallery_decide(GallerySpace::C0Rep, &GalleryFamily::Basis, &ECSeq::zero(), 200).unwrap();
        assert_eq!(v.converges(), Some(false));
        let slow = GalleryCertificate { threshold: Threshold::new(frac(1, 2), int(0)).unwrap(), ..certificate };
        let r = gallery_verify_certificate(GallerySpace::LInfRep, &GalleryFamily::Basis, &slow, 200).unwrap();
        assert!(r.is_rejected());
    }

    #[test]
    fn padded_family_converges() {
        let x = GalleryFamily::Padded { values: vec![ECSeq::basis(1), ECSeq::basis(3)] };
        let v = gallery_decide(GallerySpace::C0Rep, &x, &ECSeq::zero(), 50).unwrap();
        assert_eq!(v.converges(), Some(true));
    }
}
