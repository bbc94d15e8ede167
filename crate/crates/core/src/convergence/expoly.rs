//! Scalar exponential polynomials `f(n) = sum c * n^e * rho^n` and their
//! eventual sign.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{int, pow, powi, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarTerm {
    pub coeff: Rat,
    pub rho: Rat,
    pub exp: i64,
}

impl ScalarTerm {
    pub fn new(coeff: Rat, rho: Rat, exp: i64) -> Self {
        Self { coeff, rho, exp }
    }

    pub fn eval(&self, n: u64) -> Rat {
        &self.coeff * powi(&int(n as i64), self.exp) * pow(&self.rho, n)
    }

    /// Growth order: base first, then polynomial degree.
    fn growth_cmp(&self, other: &ScalarTerm) -> Ordering {
        self.rho.cmp(&other.rho).then(self.exp.cmp(&other.exp))
    }
}

/// Terms merged by `(rho, exp)`, zero coefficients dropped, sorted with the
/// fastest-growing term first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPoly {
    terms: Vec<ScalarTerm>,
}

impl ExpPoly {
    pub fn new(terms: impl IntoIterator<Item = ScalarTerm>) -> Self {
        let mut merged: Vec<ScalarTerm> = Vec::new();
        for t in terms {
            assert!(t.rho.is_positive(), "exp-poly base must be positive");
            if t.coeff.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|m| m.rho == t.rho && m.exp == t.exp) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by(|a, b| b.growth_cmp(a));
        Self { terms: merged }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new([ScalarTerm::new(c, Rat::one(), 0)])
    }

    pub fn terms(&self) -> &[ScalarTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, n: u64) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, t| acc + t.eval(n))
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        ExpPoly::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &Rat) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|t| ScalarTerm::new(c * &t.coeff, t.rho.clone(), t.exp)))
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn dominant(&self) -> Option<&ScalarTerm> {
        self.terms.first()
    }

    /// `(sign, n0)`: for every `n >= n0` the sign of `f(n)` is exactly
    /// `sign`, which is zero only for the zero function.
    ///
    /// Each lower-order term is compared with `1/(k+1)` of the dominant one,
    /// `k` being the number of lower-order terms; past the largest crossing
    /// index the dominant term outweighs their sum.
    pub fn tail_sign(&self) -> (i8, u64) {
        let Some(dom) = self.dominant() else {
            return (0, 1);
        };
        let sign = if dom.coeff.is_positive() { 1 } else { -1 };
        let k = self.terms.len() - 1;
        let mut n0 = 1u64;
        for t in &self.terms[1..] {
            let c = int(k as i64 + 1) * t.coeff.abs() / dom.coeff.abs();
            let q = &t.rho / &dom.rho;
            let delta = t.exp - dom.exp;
            n0 = n0.max(ratio_drop_index(&c, &q, delta));
        }
        (sign, n0)
    }
}

/// Smallest `n` from which `c * n^delta * q^n <= 1` holds for good, for
/// `q < 1`, or `q = 1` with `delta < 0`.
fn ratio_drop_index(c: &Rat, q: &Rat, delta: i64) -> u64 {
    debug_assert!(q < &Rat::one() || delta < 0);
    let r = |n: u64| c * powi(&int(n as i64), delta) * pow(q, n);
    // From n1 on the ratio is nonincreasing.
    let n1 = if delta <= 0 {
        1
    } else {
        let step = |n: u64| pow(&(Rat::one() + Rat::new(1.into(), (n as i64).into())), delta as u64) * q < Rat::one();
        first_true(1, step)
    };
    first_true(n1, |n| r(n) <= Rat::one())
}

/// Smallest `n >= lo` satisfying a predicate that is monotone (false, then
/// true forever) on `[lo, inf)`.
pub(crate) fn first_true(lo: u64, pred: impl Fn(u64) -> bool) -> u64 {
    if pred(lo) {
        return lo;
    }
    let mut bad = lo;
    let mut step = 1u64;
    let mut good = lo + step;
    while !pred(good) {
        bad = good;
        step = step.saturating_mul(2);
        good = lo.saturating_add(step);
    }
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "sign", content = "from", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EventualSign {
    /// `f(n) >= 0` for all `n >= N`, and `N` is minimal.
    NonnegFrom(u64),
    /// `f(n) < 0` for all `n >= N`, and `N` is minimal.
    NegFrom(u64),
}

/// An exp-poly over the positive integers with finitely many overridden
/// values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScalarSeq {
    pub base: ExpPoly,
    pub overrides: BTreeMap<u64, Rat>,
}

impl ScalarSeq {
    pub fn new(base: ExpPoly, overrides: BTreeMap<u64, Rat>) -> Self {
        Self { base, overrides }
    }

    pub fn from_poly(base: ExpPoly) -> Self {
        Self { base, overrides: BTreeMap::new() }
    }

    pub fn eval(&self, n: u64) -> Rat {
        match self.overrides.get(&n) {
            Some(v) => v.clone(),
            None => self.base.eval(n),
        }
    }

    pub fn last_override(&self) -> u64 {
        self.overrides.keys().next_back().copied().unwrap_or(0)
    }

    /// `n -> f(n) - c`
    pub fn minus_constant(&self, c: &Rat) -> ScalarSeq {
        let base = self.base.sub(&ExpPoly::constant(c.clone()));
        let overrides = self.overrides.iter().map(|(&n, v)| (n, v - c)).collect();
        ScalarSeq::new(base, overrides)
    }

    pub fn nonneg_everywhere(&self) -> bool {
        self.eventual_sign() == EventualSign::NonnegFrom(1)
    }

    pub fn positive_everywhere(&self) -> bool {
        let (sign, n0) = self.base.tail_sign();
        sign > 0 && (1..n0.max(self.last_override() + 1)).all(|n| self.eval(n).is_positive())
    }

    /// The sign on the tail with the exact minimal index, found by scanning
    /// downward from a provable tail index.
    pub fn eventual_sign(&self) -> EventualSign {
        let (sign, n0) = self.base.tail_sign();
        let mut n = n0.max(self.last_override() + 1);
        if sign >= 0 {
            while n > 1 && !self.eval(n - 1).is_negative() {
                n -= 1;
            }
            EventualSign::NonnegFrom(n)
        } else {
            while n > 1 && self.eval(n - 1).is_negative() {
                n -= 1;
            }
            EventualSign::NegFrom(n)
        }
    }
}

pub fn eventual_sign(f: &ExpPoly) -> EventualSign {
    ScalarSeq::from_poly(f.clone()).eventual_sign()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn reciprocal_difference() {
        let m = 7;
        let f = ExpPoly::new([
            ScalarTerm::new(frac(1, m), Rat::one(), 0),
            ScalarTerm::new(int(-1), Rat::one(), -1),
        ]);
        assert_eq!(eventual_sign(&f), EventualSign::NonnegFrom(m as u64));
    }

    #[test]
    fn constant_is_nonneg_from_one() {
        assert_eq!(eventual_sign(&ExpPoly::constant(int(5))), EventualSign::NonnegFrom(1));
        assert_eq!(eventual_sign(&ExpPoly::default()), EventualSign::NonnegFrom(1));
    }

    #[test]
    fn overrides_shift_the_index() {
        let mut o = BTreeMap::new();
        o.insert(4, int(-1));
        let s = ScalarSeq::new(ExpPoly::constant(int(1)), o);
        assert_eq!(s.eventual_sign(), EventualSign::NonnegFrom(5));
    }
}
