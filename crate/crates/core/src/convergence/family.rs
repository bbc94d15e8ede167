//! Closed-form vector sequences `x_n = limit + sum coeff * n^exp * rho^n`
//! with finitely many overridden initial values.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::expoly::{ExpPoly, ScalarSeq, ScalarTerm};
use crate::error::{check_dim, Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{add, dot, int, is_zero_vec, pow, powi, scale, sub, zeros, Rat, RatVector};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VecTerm {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub coeff: RatVector,
    #[serde_as(as = "DisplayFromStr")]
    pub rho: Rat,
    pub exp: i64,
}

impl VecTerm {
    pub fn new(coeff: RatVector, rho: Rat, exp: i64) -> Self {
        Self { coeff, rho, exp }
    }

    /// Tends to zero: `rho < 1`, or `rho = 1` with a negative exponent.
    pub fn decays(&self) -> bool {
        self.rho < Rat::one() || self.exp < 0
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqFamily {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub limit: RatVector,
    #[serde(default)]
    pub terms: Vec<VecTerm>,
    #[serde_as(as = "BTreeMap<DisplayFromStr, Vec<DisplayFromStr>>")]
    #[serde(default)]
    pub prefix: BTreeMap<u64, RatVector>,
}

impl SeqFamily {
    /// Validates and normalizes: constant terms fold into `limit`, equal
    /// `(rho, exp)` pairs merge, zero terms vanish.
    pub fn new(limit: RatVector, terms: Vec<VecTerm>, prefix: BTreeMap<u64, RatVector>) -> Result<Self> {
        let d = limit.len();
        let mut lim = limit;
        let mut merged: Vec<VecTerm> = Vec::new();
        for t in terms {
            check_dim(d, t.coeff.len())?;
            if !t.rho.is_positive() || t.rho > Rat::one() {
                return Err(Error::Precondition(format!("term base {} outside (0, 1]", t.rho)));
            }
            if t.rho.is_one() && t.exp == 0 {
                lim = add(&lim, &t.coeff);
                continue;
            }
            match merged.iter_mut().find(|m| m.rho == t.rho && m.exp == t.exp) {
                Some(m) => m.coeff = add(&m.coeff, &t.coeff),
                None => merged.push(t),
            }
        }
        merged.retain(|t| !is_zero_vec(&t.coeff));
        merged.sort_by(|a, b| b.rho.cmp(&a.rho).then(b.exp.cmp(&a.exp)));
        for (&n, v) in &prefix {
            if n == 0 {
                return Err(Error::Precondition("sequence indices start at 1".into()));
            }
            check_dim(d, v.len())?;
        }
        Ok(Self { limit: lim, terms: merged, prefix })
    }

    /// Re-runs validation on a deserialized value.
    pub fn validated(self) -> Result<Self> {
        Self::new(self.limit, self.terms, self.prefix)
    }

    pub fn constant(v: RatVector) -> Self {
        Self { limit: v, terms: Vec::new(), prefix: BTreeMap::new() }
    }

    pub fn simple(limit: RatVector, terms: Vec<VecTerm>) -> Result<Self> {
        Self::new(limit, terms, BTreeMap::new())
    }

    /// `c / n`
    pub fn harmonic(c: RatVector) -> Self {
        let d = c.len();
        Self::simple(zeros(d), vec![VecTerm::new(c, Rat::one(), -1)]).expect("valid harmonic family")
    }

    pub fn dim(&self) -> usize {
        self.limit.len()
    }

    pub fn last_prefix(&self) -> u64 {
        self.prefix.keys().next_back().copied().unwrap_or(0)
    }

    pub fn closed_form(&self, n: u64) -> RatVector {
        let nn = int(n as i64);
        self.terms.iter().fold(self.limit.clone(), |acc, t| {
            let w = powi(&nn, t.exp) * pow(&t.rho, n);
            add(&acc, &scale(&w, &t.coeff))
        })
    }

    pub fn value(&self, n: u64) -> RatVector {
        match self.prefix.get(&n) {
            Some(v) => v.clone(),
            None => self.closed_form(n),
        }
    }

    pub fn is_convergent_form(&self) -> bool {
        self.terms.iter().all(VecTerm::decays)
    }

    /// Coordinates carrying a nonzero non-decaying term.
    pub fn divergent_coordinates(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&j| self.terms.iter().any(|t| !t.decays() && !t.coeff[j].is_zero()))
            .collect()
    }

    /// `n -> f . x_n`
    pub fn functional(&self, f: &[Rat]) -> ScalarSeq {
        let mut terms = vec![ScalarTerm::new(dot(f, &self.limit), Rat::one(), 0)];
        terms.extend(self.terms.iter().map(|t| ScalarTerm::new(dot(f, &t.coeff), t.rho.clone(), t.exp)));
        let overrides = self.prefix.iter().map(|(&n, v)| (n, dot(f, v))).collect();
        ScalarSeq::new(ExpPoly::new(terms), overrides)
    }

    pub fn coordinate(&self, j: usize) -> ScalarSeq {
        let mut e = zeros(self.dim());
        e[j] = Rat::one();
        self.functional(&e)
    }

    fn combine(&self, other: &SeqFamily, a: &Rat, b: &Rat) -> Result<SeqFamily> {
        check_dim(self.dim(), other.dim())?;
        let limit = add(&scale(a, &self.limit), &scale(b, &other.limit));
        let mut terms: Vec<VecTerm> =
            self.terms.iter().map(|t| VecTerm::new(scale(a, &t.coeff), t.rho.clone(), t.exp)).collect();
        terms.extend(other.terms.iter().map(|t| VecTerm::new(scale(b, &t.coeff), t.rho.clone(), t.exp)));
        let mut prefix = BTreeMap::new();
        for &n in self.prefix.keys().chain(other.prefix.keys()) {
            prefix.insert(n, add(&scale(a, &self.value(n)), &scale(b, &other.value(n))));
        }
        SeqFamily::new(limit, terms, prefix)
    }

    pub fn add(&self, other: &SeqFamily) -> Result<SeqFamily> {
        self.combine(other, &Rat::one(), &Rat::one())
    }

    pub fn sub(&self, other: &SeqFamily) -> Result<SeqFamily> {
        self.combine(other, &Rat::one(), &-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> SeqFamily {
        let zero = SeqFamily::constant(zeros(self.dim()));
        self.combine(&zero, c, &Rat::zero()).expect("same dimension")
    }

    /// `x_n - v`
    pub fn shifted(&self, v: &[Rat]) -> Result<SeqFamily> {
        check_dim(self.dim(), v.len())?;
        let mut out = self.clone();
        out.limit = sub(&self.limit, v);
        for p in out.prefix.values_mut() {
            *p = sub(p, v);
        }
        Ok(out)
    }

    /// Termwise image under a matrix.
    pub fn apply(&self, t: &RatMatrix) -> Result<SeqFamily> {
        check_dim(t.ncols(), self.dim())?;
        let terms = self
            .terms
            .iter()
            .map(|x| Ok(VecTerm::new(t.apply(&x.coeff)?, x.rho.clone(), x.exp)))
            .collect::<Result<Vec<_>>>()?;
        let prefix = self.prefix.iter().map(|(&n, v)| Ok((n, t.apply(v)?))).collect::<Result<_>>()?;
        SeqFamily::new(t.apply(&self.limit)?, terms, prefix)
    }
}

pub fn family_add(x: &SeqFamily, y: &SeqFamily) -> Result<SeqFamily> {
    x.add(y)
}

pub fn family_scale(c: &Rat, x: &SeqFamily) -> SeqFamily {
    x.scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ints};

    #[test]
    fn add_and_scale() {
        let a = SeqFamily::harmonic(ints(&[1, 0, 0]));
        let b = SeqFamily::harmonic(ints(&[0, 1, 0]));
        let s = family_add(&a, &b).unwrap();
        assert_eq!(s.limit, zeros(3));
        assert_eq!(s.terms.len(), 1);
        assert_eq!(s.value(2), vec![frac(1, 2), frac(1, 2), Rat::zero()]);
        let c = family_scale(&int(-2), &a);
        assert_eq!(c.terms[0].coeff, ints(&[-2, 0, 0]));
    }

    #[test]
    fn constant_terms_fold_into_limit() {
        let f = SeqFamily::simple(ints(&[1]), vec![VecTerm::new(ints(&[2]), Rat::one(), 0)]).unwrap();
        assert_eq!(f.limit, ints(&[3]));
        assert!(f.terms.is_empty());
    }

    #[test]
    fn divergence_is_detected() {
        let f = SeqFamily::simple(zeros(3), vec![VecTerm::new(ints(&[1, 0, 0]), Rat::one(), 1)]).unwrap();
        assert_eq!(f.divergent_coordinates(), vec![0]);
        assert!(SeqFamily::simple(zeros(1), vec![VecTerm::new(ints(&[1]), frac(3, 2), 0)]).is_err());
    }

    #[test]
    fn json_form() {
        let text = r#"{"limit":["0","0"],"terms":[{"coeff":["1","0"],"rho":"9/10","exp":-1}],"prefix":{"1":["5","0"]}}"#;
        let f: SeqFamily = serde_json::from_str(text).unwrap();
        assert_eq!(f.value(1), ints(&[5, 0]));
        assert_eq!(f.value(2), vec![frac(81, 200), Rat::zero()]);
    }
}
