//! Decreasing witnesses, thresholds and exact certificate checking.
//!
//! A certificate claims: for every `m`, `±(x_n - x) <= y_m` whenever
//! `n >= threshold(m)`. Applying each facet functional turns this into
//! finitely many scalar statements `psi(n) <= phi(m)`, which are settled by
//! an envelope in `m` for large `m` and by exact eventual-sign queries in
//! `n` for the remaining small `m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::expoly::{first_true, EventualSign, ExpPoly, ScalarSeq, ScalarTerm};
use super::family::SeqFamily;
use crate::error::{check_dim, Error, Result};
use crate::rational::{ceil_int, floor_int, int, neg, pow, powi, Rat, RatVector};
use crate::space::OrderedSpace;

/// `alpha(m) = max(1, ceil(slope * m + offset))`
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    #[serde_as(as = "DisplayFromStr")]
    pub slope: Rat,
    #[serde_as(as = "DisplayFromStr")]
    pub offset: Rat,
}

impl Threshold {
    pub fn new(slope: Rat, offset: Rat) -> Result<Self> {
        let t = Self { slope, offset };
        t.check()?;
        Ok(t)
    }

    pub fn identity() -> Self {
        Self { slope: Rat::one(), offset: Rat::zero() }
    }

    pub fn constant(k: u64) -> Self {
        Self { slope: Rat::zero(), offset: int(k as i64) }
    }

    pub fn linear(slope: i64, offset: i64) -> Self {
        Self { slope: int(slope), offset: int(offset) }
    }

    pub fn check(&self) -> Result<()> {
        if self.slope.is_negative() {
            return Err(Error::MalformedThreshold(format!("negative slope {}", self.slope)));
        }
        Ok(())
    }

    pub fn eval(&self, m: u64) -> u64 {
        let v = ceil_int(&(&self.slope * int(m as i64) + &self.offset));
        v.to_u64().unwrap_or(if v.is_negative() { 0 } else { u64::MAX }).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecreasingWitness {
    pub family: SeqFamily,
    pub monotone_from: u64,
    pub inf_is_zero_evidence: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    /// Same index set: `±(x_n - x) <= y_n`.
    O,
    /// Witness over its own index with a threshold map.
    Otilde,
    /// An `Otilde` certificate for the image family in the target space.
    Wt,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    pub kind: CertKind,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub limit: RatVector,
    pub witness: DecreasingWitness,
    pub threshold: Threshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckResult {
    Accepted,
    /// `±(x_n - x) <= y_m` fails at this `(m, n)` with `n >= threshold(m)`.
    Rejected { m: u64, n: u64, reason: String },
    Inconclusive { reason: String },
}

impl CheckResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckResult::Accepted)
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, CheckResult::Rejected { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecreasingCheck {
    pub decreasing_to_zero: bool,
    pub witness: Option<DecreasingWitness>,
    /// An `m` with `y_{m+1} <= y_m` failing.
    pub violation: Option<u64>,
    pub reason: String,
}

/// Functionals whose joint nonnegativity is membership in the cone.
pub fn cone_functionals(space: &OrderedSpace) -> Vec<RatVector> {
    let mut fs = space.cone.facets.clone();
    for e in &space.cone.equalities {
        fs.push(e.clone());
        fs.push(neg(e));
    }
    fs
}

/// Bracket `[l, u]` with `l * m^e' * rho^m <= m^e rho^m - (m+1)^e rho^(m+1)
/// <= u * m^e' * rho^m`, valid from the returned index; `e'` is returned too.
fn difference_bracket(t: &ScalarTerm) -> (Rat, Rat, i64, u64) {
    let one = Rat::one();
    if t.rho.is_one() {
        let k = -t.exp;
        debug_assert!(k > 0);
        let l = int(k) / pow(&int(2), (k + 1) as u64);
        (l, int(k), t.exp - 1, 1)
    } else if t.exp <= 0 {
        let l = &one - &t.rho;
        let u = &one - &t.rho * powi(&int(2), t.exp);
        (l, u, t.exp, 1)
    } else {
        let target = (&one + &t.rho) / int(2);
        let from = first_true(1, |m| {
            pow(&(&one + Rat::new(BigInt::one(), BigInt::from(m))), t.exp as u64) * &t.rho <= target
        });
        ((&one - &t.rho) / int(2), &one - &t.rho, t.exp, from)
    }
}

/// Exactly decides `g(m) = phi(m) - phi(m+1) >= 0` for all `m >= 1`, or
/// finds a violation.
fn check_monotone(phi: &ScalarSeq) -> std::result::Result<(), u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut from = phi.last_override() + 1;
    for t in phi.base.terms() {
        if t.rho.is_one() && t.exp == 0 {
            continue;
        }
        let (l, u, e, start) = difference_bracket(t);
        from = from.max(start);
        let (cl, ch) = if t.coeff.is_positive() { (&t.coeff * l, &t.coeff * u) } else { (&t.coeff * u, &t.coeff * l) };
        low.push(ScalarTerm::new(cl, t.rho.clone(), e));
        high.push(ScalarTerm::new(ch, t.rho.clone(), e));
    }
    let g = |m: u64| phi.eval(m) - phi.eval(m + 1);
    let (sign, n0) = ExpPoly::new(low).tail_sign();
    if sign < 0 {
        // Same dominant term, so the upper bracket is eventually negative too.
        let (_, n1) = ExpPoly::new(high).tail_sign();
        let m = from.max(n1);
        return Err((1..=m).find(|&k| g(k).is_negative()).unwrap_or(m));
    }
    match (1..from.max(n0)).find(|&m| g(m).is_negative()) {
        Some(m) => Err(m),
        None => Ok(()),
    }
}

pub fn is_decreasing_to_zero(space: &OrderedSpace, y: &SeqFamily) -> Result<DecreasingCheck> {
    check_dim(space.dim, y.dim())?;
    let reject = |reason: &str, violation: Option<u64>| DecreasingCheck {
        decreasing_to_zero: false,
        witness: None,
        violation,
        reason: reason.to_string(),
    };
    if !y.limit.iter().all(Zero::is_zero) {
        return Ok(reject("entrywise limit is not 0", None));
    }
    if !y.is_convergent_form() {
        return Ok(reject("a term does not tend to 0", None));
    }
    if !space.cone.is_pointed() || !space.cone.is_generating() {
        return Err(Error::Precondition("decreasing witnesses need a pointed generating cone".into()));
    }
    for f in cone_functionals(space) {
        if let Err(m) = check_monotone(&y.functional(&f)) {
            return Ok(reject(&format!("y_{} <= y_{} fails", m + 1, m), Some(m)));
        }
    }
    Ok(DecreasingCheck {
        decreasing_to_zero: true,
        witness: Some(DecreasingWitness {
            family: y.clone(),
            monotone_from: 1,
            inf_is_zero_evidence: "decreasing for every index with entrywise limit 0; the cone is closed, so 0 is the infimum"
                .into(),
        }),
        violation: None,
        reason: "decreasing with limit 0".into(),
    })
}

/// First `n >= start` with `g(n) < 0`, if any.
fn first_negative_from(g: &ScalarSeq, start: u64) -> Option<u64> {
    let (sign, n0) = g.base.tail_sign();
    let tail = n0.max(g.last_override() + 1).max(start);
    (start..tail).find(|&n| g.eval(n).is_negative()).or(if sign < 0 { Some(tail) } else { None })
}

/// Upper envelope of `sup_{n >= a m + b} psi(n)` as an exp-poly in `m`,
/// valid for `m >= returned index`. `None` when some term of `psi` grows.
fn envelope(psi: &ScalarSeq, a: i64, b: i64) -> Option<(ExpPoly, u64)> {
    let one = Rat::one();
    let mut terms = Vec::new();
    let mut need_n = psi.last_override() + 1;
    let mut from_m = 1u64;
    for t in psi.base.terms() {
        if !t.coeff.is_positive() {
            continue;
        }
        if t.rho.is_one() && t.exp == 0 {
            terms.push(t.clone());
            continue;
        }
        if t.rho.is_one() && t.exp > 0 {
            return None;
        }
        // Nonincreasing from n_t on.
        let n_t = if t.exp <= 0 {
            1
        } else {
            first_true(1, |n| {
                pow(&(&one + Rat::new(BigInt::one(), BigInt::from(n))), t.exp as u64) * &t.rho <= one
            })
        };
        need_n = need_n.max(n_t);
        let base = pow(&t.rho, a as u64);
        let shift = &t.coeff * powi(&t.rho, b);
        if t.exp >= 0 {
            // (a m + b)^e expanded.
            let e = t.exp as u64;
            for j in 0..=e {
                let c = binomial(e, j) * pow(&int(a), j) * powi(&int(b), (e - j) as i64);
                terms.push(ScalarTerm::new(&shift * c, base.clone(), j as i64));
            }
        } else if b >= 0 {
            terms.push(ScalarTerm::new(&shift * powi(&int(a), t.exp), base, t.exp));
        } else {
            // a m + b >= a m / 2 once m >= -2b/a.
            from_m = from_m.max(ceil_int(&(int(-2 * b) / int(a))).to_u64().unwrap_or(u64::MAX));
            terms.push(ScalarTerm::new(&shift * powi(&(int(a) / int(2)), t.exp), base, t.exp));
        }
    }
    // a m + b >= need_n
    let m_need = ceil_int(&(int(need_n as i64 - b) / int(a))).to_i64().unwrap_or(i64::MAX).max(1) as u64;
    Some((ExpPoly::new(terms), from_m.max(m_need)))
}

fn binomial(n: u64, k: u64) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| acc * int((n - i) as i64) / int((i + 1) as i64))
}

/// Checks `psi(n) <= phi(m)` for all `m >= 1` and `n >= threshold(m)`.
fn check_pair(phi: &ScalarSeq, psi: &ScalarSeq, threshold: &Threshold, budget: u64) -> CheckResult {
    let per_m = |m: u64| -> Option<u64> {
        let pm = phi.eval(m);
        let base = ExpPoly::constant(pm.clone()).sub(&psi.base);
        let overrides = psi.overrides.iter().map(|(&n, v)| (n, &pm - v)).collect();
        first_negative_from(&ScalarSeq::new(base, overrides), threshold.eval(m))
    };
    let reject = |m: u64, n: u64| CheckResult::Rejected { m, n, reason: format!("psi({n}) > phi({m})") };

    if threshold.slope.is_zero() {
        // phi decreases to its limit; the condition is psi(n) <= lim phi.
        let lim: Rat = phi
            .base
            .terms()
            .iter()
            .filter(|t| t.rho.is_one() && t.exp == 0)
            .map(|t| t.coeff.clone())
            .sum();
        let base = ExpPoly::constant(lim.clone()).sub(&psi.base);
        let overrides = psi.overrides.iter().map(|(&n, v)| (n, &lim - v)).collect();
        return match first_negative_from(&ScalarSeq::new(base, overrides), threshold.eval(1)) {
            None => CheckResult::Accepted,
            Some(n) => {
                let target = psi.eval(n);
                let m = first_true(1, |m| phi.eval(m) < target);
                reject(m, n)
            }
        };
    }

    let a = floor_int(&threshold.slope).to_i64().unwrap_or(i64::MAX);
    let b = floor_int(&threshold.offset).to_i64().unwrap_or(0);
    let mut settled_from: Option<u64> = None;
    if a >= 1 {
        if let Some((env, m_env)) = envelope(psi, a, b) {
            let diff = phi.base.sub(&env);
            let overrides: BTreeMap<u64, Rat> =
                phi.overrides.iter().map(|(&m, v)| (m, v - env.eval(m))).collect();
            let (sign, m0) = diff.tail_sign();
            if sign >= 0 {
                let start = m0.max(m_env).max(phi.last_override() + 1);
                let seq = ScalarSeq::new(diff, overrides);
                let mut s = start;
                while s > m_env && !seq.eval(s - 1).is_negative() {
                    s -= 1;
                }
                settled_from = Some(s.max(m_env));
            }
        }
    }
    let limit = settled_from.unwrap_or(budget + 1);
    for m in 1..limit {
        if let Some(n) = per_m(m) {
            return reject(m, n);
        }
    }
    match settled_from {
        Some(_) => CheckResult::Accepted,
        None => CheckResult::Inconclusive {
            reason: format!("envelope bound inconclusive; no violation for m < {limit}"),
        },
    }
}

/// Diagonal check `psi(n) <= phi(n)` for every `n`.
fn check_diagonal(phi: &ScalarSeq, psi: &ScalarSeq) -> CheckResult {
    let base = phi.base.sub(&psi.base);
    let mut overrides = BTreeMap::new();
    for &n in phi.overrides.keys().chain(psi.overrides.keys()) {
        overrides.insert(n, phi.eval(n) - psi.eval(n));
    }
    match ScalarSeq::new(base, overrides).eventual_sign() {
        EventualSign::NonnegFrom(1) => CheckResult::Accepted,
        EventualSign::NonnegFrom(n) => {
            CheckResult::Rejected { m: n - 1, n: n - 1, reason: format!("psi({0}) > phi({0})", n - 1) }
        }
        EventualSign::NegFrom(n) => CheckResult::Rejected { m: n, n, reason: format!("psi({n}) > phi({n})") },
    }
}

pub const DEFAULT_BUDGET: u64 = 200;

pub fn verify_certificate(space: &OrderedSpace, x: &SeqFamily, cert: &ConvergenceCertificate) -> Result<CheckResult> {
    verify_certificate_with_budget(space, x, cert, DEFAULT_BUDGET)
}

pub fn verify_certificate_with_budget(
    space: &OrderedSpace,
    x: &SeqFamily,
    cert: &ConvergenceCertificate,
    budget: u64,
) -> Result<CheckResult> {
    check_dim(space.dim, x.dim())?;
    check_dim(space.dim, cert.limit.len())?;
    check_dim(space.dim, cert.witness.family.dim())?;
    cert.threshold.check()?;
    let wcheck = is_decreasing_to_zero(space, &cert.witness.family)?;
    if !wcheck.decreasing_to_zero {
        return Ok(CheckResult::Inconclusive { reason: format!("witness rejected: {}", wcheck.reason) });
    }
    let dev = x.shifted(&cert.limit)?;
    let mut inconclusive = None;
    for f in cone_functionals(space) {
        let phi = cert.witness.family.functional(&f);
        for sign in [1, -1] {
            let psi = dev.functional(&f.iter().map(|v| v * int(sign)).collect::<RatVector>());
            let r = match cert.kind {
                CertKind::O => check_diagonal(&phi, &psi),
                CertKind::Otilde | CertKind::Wt => check_pair(&phi, &psi, &cert.threshold, budget),
            };
            match r {
                CheckResult::Accepted => {}
                CheckResult::Rejected { .. } => return Ok(r),
                CheckResult::Inconclusive { .. } => inconclusive = Some(r),
            }
        }
    }
    Ok(inconclusive.unwrap_or(CheckResult::Accepted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::family::VecTerm;
    use crate::rational::{frac, ints, zeros};

    fn cert(kind: CertKind, limit: RatVector, y: SeqFamily, t: Threshold) -> ConvergenceCertificate {
        ConvergenceCertificate {
            kind,
            limit,
            witness: DecreasingWitness { family: y, monotone_from: 1, inf_is_zero_evidence: String::new() },
            threshold: t,
        }
    }

    #[test]
    fn orthant_harmonic_accepts() {
        let o3 = OrderedSpace::orthant(3);
        let x = SeqFamily::harmonic(ints(&[1, 0, 0]));
        let y = SeqFamily::harmonic(ints(&[1, 1, 1]));
        let c = cert(CertKind::Otilde, zeros(3), y.clone(), Threshold::identity());
        assert_eq!(verify_certificate(&o3, &x, &c).unwrap(), CheckResult::Accepted);
        let wrong = cert(CertKind::Otilde, ints(&[1, 0, 0]), y, Threshold::identity());
        assert!(verify_certificate(&o3, &x, &wrong).unwrap().is_rejected());
    }

    #[test]
    fn k4_harmonic_accepts() {
        let k4 = OrderedSpace::k4();
        let x = SeqFamily::harmonic(ints(&[1, 0, 0]));
        let y = SeqFamily::harmonic(ints(&[0, 0, 1]));
        let c = cert(CertKind::Otilde, zeros(3), y, Threshold::identity());
        assert_eq!(verify_certificate(&k4, &x, &c).unwrap(), CheckResult::Accepted);
    }

    #[test]
    fn decreasing_examples() {
        let k4 = OrderedSpace::k4();
        assert!(is_decreasing_to_zero(&k4, &SeqFamily::harmonic(ints(&[0, 0, 1]))).unwrap().decreasing_to_zero);
        let shifted = SeqFamily::simple(ints(&[0, 0, 1]), vec![VecTerm::new(ints(&[0, 0, 1]), Rat::one(), -1)]).unwrap();
        assert!(!is_decreasing_to_zero(&k4, &shifted).unwrap().decreasing_to_zero);
        let bumpy = SeqFamily::simple(
            zeros(1),
            vec![VecTerm::new(ints(&[1]), frac(9, 10), 3)],
        )
        .unwrap();
        let r = is_decreasing_to_zero(&OrderedSpace::orthant(1), &bumpy).unwrap();
        assert!(!r.decreasing_to_zero);
        let m = r.violation.unwrap();
        assert!(bumpy.value(m + 1)[0] > bumpy.value(m)[0]);
    }

    #[test]
    fn negative_slope_is_malformed() {
        assert!(matches!(Threshold::new(int(-1), int(0)), Err(Error::MalformedThreshold(_))));
    }
}
