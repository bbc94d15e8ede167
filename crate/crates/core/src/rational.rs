//! Scalars and dense vectors over the rationals.
//!
//! Every number in the crate is a [`Rat`]: an arbitrary-precision reduced
//! fraction with positive denominator. Text form is `"p/q"`, or `"p"` when
//! the denominator is one.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

pub type Rat = BigRational;
pub type RatVector = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    match t.split_once('/') {
        Some((_, d)) if d.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') => {
            Err(Error::ParseRational(text.to_string()))
        }
        _ => Rat::from_str(t).map_err(|_| Error::ParseRational(text.to_string())),
    }
}

pub fn format_rat(q: &Rat) -> String {
    q.to_string()
}

pub fn ints(values: &[i64]) -> RatVector {
    values.iter().map(|&v| int(v)).collect()
}

pub fn zeros(n: usize) -> RatVector {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> RatVector {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn format_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn checked_dot(a: &[Rat], b: &[Rat]) -> Result<Rat> {
    check_dim(a.len(), b.len())?;
    Ok(dot(a, b))
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rat, a: &[Rat]) -> RatVector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Rat]) -> RatVector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `a + c * b`
pub fn axpy(a: &[Rat], c: &Rat, b: &[Rat]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Positive rescaling to a primitive integer vector (gcd of entries is 1).
pub fn primitive(a: &[Rat]) -> RatVector {
    if is_zero_vec(a) {
        return a.to_vec();
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    nums.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

/// Primitive integer vector whose first nonzero entry is positive.
pub fn primitive_line(a: &[Rat]) -> RatVector {
    let p = primitive(a);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn first_nonzero(a: &[Rat]) -> Option<usize> {
    a.iter().position(|x| !x.is_zero())
}

/// Canonical ordering of normalized directions: by position of the first
/// nonzero entry, then lexicographically.
pub fn canonical_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    let pa = first_nonzero(a).unwrap_or(usize::MAX);
    let pb = first_nonzero(b).unwrap_or(usize::MAX);
    pa.cmp(&pb).then_with(|| a.cmp(b))
}

pub fn sort_dedup_canonical(v: &mut Vec<RatVector>) {
    v.sort_by(|a, b| canonical_cmp(a, b));
    v.dedup();
}

pub fn abs_vec(a: &[Rat]) -> RatVector {
    a.iter().map(|x| x.abs()).collect()
}

/// Smallest integer `>= q`.
pub fn ceil_int(q: &Rat) -> BigInt {
    q.ceil().to_integer()
}

pub fn floor_int(q: &Rat) -> BigInt {
    q.floor().to_integer()
}

pub fn to_i64(b: &BigInt) -> Option<i64> {
    i64::try_from(b.clone()).ok()
}

pub fn pow(q: &Rat, e: u64) -> Rat {
    num_traits::pow::pow(q.clone(), e as usize)
}

pub fn powi(q: &Rat, e: i64) -> Rat {
    if e >= 0 {
        pow(q, e as u64)
    } else {
        pow(&q.recip(), e.unsigned_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_rat("3/6").unwrap(), frac(1, 2));
        assert_eq!(format_rat(&frac(4, 2)), "2");
        assert_eq!(format_rat(&frac(-9, 10)), "-9/10");
        assert_eq!(parse_rat(" -7 ").unwrap(), int(-7));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(parse_rat("1/0"), Err(Error::ParseRational(_))));
        assert!(matches!(parse_rat("abc"), Err(Error::ParseRational(_))));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[frac(1, 2), frac(3, 4)]), ints(&[2, 3]));
        assert_eq!(primitive(&[int(-4), int(6)]), ints(&[-2, 3]));
        assert_eq!(primitive_line(&[int(-4), int(6)]), ints(&[2, -3]));
    }

    #[test]
    fn canonical_order_groups_by_leading_position() {
        let mut v = vec![ints(&[0, 1, 1]), ints(&[1, 0, 1]), ints(&[0, -1, 1]), ints(&[-1, 0, 1])];
        sort_dedup_canonical(&mut v);
        assert_eq!(v, vec![ints(&[-1, 0, 1]), ints(&[1, 0, 1]), ints(&[0, -1, 1]), ints(&[0, 1, 1])]);
    }
}
