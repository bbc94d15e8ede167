//! Deciding order convergence of closed-form families and producing
//! checkable certificates or refutations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::certificate::{
    cone_functionals, verify_certificate, CertKind, ConvergenceCertificate, DecreasingWitness, Threshold,
};
use super::expoly::first_true;
use super::family::SeqFamily;
use crate::error::{check_dim, Result};
use crate::rational::{ceil_int, dot, int, pow, powi, scale, zeros, Rat, RatVector};
use crate::space::OrderedSpace;

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Refutation {
    /// Coordinate `coordinate` is dominated by `coeff * n^exp` with `exp >= 1`.
    TailUnbounded {
        coordinate: usize,
        #[serde_as(as = "DisplayFromStr")]
        coeff: Rat,
        exp: i64,
    },
    CoordinateLimitMismatch {
        coordinate: usize,
        #[serde_as(as = "DisplayFromStr")]
        claimed: Rat,
        #[serde_as(as = "DisplayFromStr")]
        actual: Rat,
    },
    WitnessSpaceExhausted { reason: String },
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConvergenceVerdict {
    Converges {
        #[serde_as(as = "Vec<DisplayFromStr>")]
        limit: RatVector,
        o_certificate: ConvergenceCertificate,
        otilde_certificate: ConvergenceCertificate,
    },
    NotConverges { refutation: Refutation },
    Unknown { reason: String },
}

impl ConvergenceVerdict {
    pub fn converges(&self) -> Option<bool> {
        match self {
            ConvergenceVerdict::Converges { .. } => Some(true),
            ConvergenceVerdict::NotConverges { .. } => Some(false),
            ConvergenceVerdict::Unknown { .. } => None,
        }
    }
}

/// `max_n n^k rho^n` for a decaying term with `k = exp + 1`.
fn peak(rho: &Rat, k: i64) -> Rat {
    let one = Rat::one();
    if rho.is_one() || k <= 0 {
        // n^k rho^n is nonincreasing, so n = 1 is the peak.
        return rho.clone();
    }
    let top = first_true(1, |n| pow(&(&one + Rat::new(BigInt::one(), BigInt::from(n))), k as u64) * rho <= one);
    powi(&int(top as i64), k) * pow(rho, top)
}

/// Smallest `C` with `|f(x_n - x)| <= C f(u) / n` for all `n` and every
/// cone functional `f`, where `u` is the sum of the extreme rays.
fn harmonic_constant(space: &OrderedSpace, x: &SeqFamily, u: &RatVector) -> Rat {
    let mut best = Rat::zero();
    for f in cone_functionals(space) {
        let fu = dot(&f, u);
        if !fu.is_positive() {
            continue;
        }
        let mut bound: Rat = x.terms.iter().map(|t| dot(&f, &t.coeff).abs() * peak(&t.rho, t.exp + 1)).sum();
        for (&n, v) in &x.prefix {
            let dev = (dot(&f, v) - dot(&f, &x.limit)).abs() * int(n as i64);
            if dev > bound {
                bound = dev;
            }
        }
        let c = bound / fu;
        if c > best {
            best = c;
        }
    }
    best
}

fn order_unit(space: &OrderedSpace) -> RatVector {
    space.cone.extreme_rays.iter().fold(zeros(space.dim), |acc, r| crate::rational::add(&acc, r))
}

/// Certificates for a family already known to converge to `x.limit`.
pub fn synthesize_certificates(
    space: &OrderedSpace,
    x: &SeqFamily,
) -> Result<(ConvergenceCertificate, ConvergenceCertificate)> {
    let u = order_unit(space);
    let c = harmonic_constant(space, x, &u);
    let evidence = "harmonic multiple of an order unit".to_string();
    let witness = |k: &Rat| DecreasingWitness {
        family: SeqFamily::harmonic(scale(k, &u)),
        monotone_from: 1,
        inf_is_zero_evidence: evidence.clone(),
    };
    let c_o = if c.is_zero() { Rat::one() } else { c.clone() };
    let o = ConvergenceCertificate {
        kind: CertKind::O,
        limit: x.limit.clone(),
        witness: witness(&c_o),
        threshold: Threshold::identity(),
    };
    let threshold = if c.is_zero() {
        Threshold::constant(1)
    } else {
        Threshold { slope: Rat::from_integer(ceil_int(&c).max(BigInt::one())), offset: Rat::zero() }
    };
    let ot = ConvergenceCertificate {
        kind: CertKind::Otilde,
        limit: x.limit.clone(),
        witness: witness(&Rat::one()),
        threshold,
    };
    Ok((o, ot))
}

fn growth_refutation(x: &SeqFamily) -> Option<Refutation> {
    for j in x.divergent_coordinates() {
        let seq = x.coordinate(j);
        if let Some(d) = seq.base.dominant() {
            if d.rho.is_one() && d.exp >= 1 {
                return Some(Refutation::TailUnbounded { coordinate: j, coeff: d.coeff.clone(), exp: d.exp });
            }
        }
    }
    None
}

/// Order convergence in a finite-dimensional space with a closed pointed
/// generating cone, where it agrees with coordinatewise convergence.
pub fn decide_o_convergence(space: &OrderedSpace, x: &SeqFamily) -> Result<ConvergenceVerdict> {
    check_dim(space.dim, x.dim())?;
    if !space.cone.is_pointed() || !space.cone.is_generating() {
        return Ok(ConvergenceVerdict::Unknown { reason: "cone is not pointed and generating".into() });
    }
    if let Some(r) = growth_refutation(x) {
        return Ok(ConvergenceVerdict::NotConverges { refutation: r });
    }
    let (o, ot) = synthesize_certificates(space, x)?;
    for c in [&o, &ot] {
        if !verify_certificate(space, x, c)?.is_accepted() {
            return Ok(ConvergenceVerdict::Unknown { reason: "synthesized certificate was not accepted".into() });
        }
    }
    Ok(ConvergenceVerdict::Converges { limit: x.limit.clone(), o_certificate: o, otilde_certificate: ot })
}

/// Convergence to a prescribed limit.
pub fn decide_towards(space: &OrderedSpace, x: &SeqFamily, claimed: &[Rat]) -> Result<ConvergenceVerdict> {
    check_dim(space.dim, claimed.len())?;
    let v = decide_o_convergence(space, x)?;
    if let ConvergenceVerdict::Converges { limit, .. } = &v {
        if let Some(j) = (0..limit.len()).find(|&j| limit[j] != claimed[j]) {
            return Ok(ConvergenceVerdict::NotConverges {
                refutation: Refutation::CoordinateLimitMismatch {
                    coordinate: j,
                    claimed: claimed[j].clone(),
                    actual: limit[j].clone(),
                },
            });
        }
    }
    Ok(v)
}

/// Independent re-check of a refutation against the family.
pub fn verify_refutation(x: &SeqFamily, r: &Refutation) -> bool {
    match r {
        Refutation::TailUnbounded { coordinate, coeff, exp } => {
            *coordinate < x.dim()
                && *exp >= 1
                && x.coordinate(*coordinate)
                    .base
                    .dominant()
                    .is_some_and(|d| d.rho.is_one() && d.exp == *exp && &d.coeff == coeff)
        }
        Refutation::CoordinateLimitMismatch { coordinate, claimed, actual } => {
            *coordinate < x.dim()
                && x.is_convergent_form()
                && &x.limit[*coordinate] == actual
                && claimed != actual
        }
        Refutation::WitnessSpaceExhausted { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::family::VecTerm;
    use crate::rational::{frac, ints};
    use std::collections::BTreeMap;

    #[test]
    fn geometric_in_k4_converges() {
        let k4 = OrderedSpace::k4();
        let x = SeqFamily::new(
            ints(&[0, 0, 2]),
            vec![VecTerm::new(ints(&[3, -1, 0]), frac(1, 2), 1)],
            BTreeMap::from([(1, ints(&[5, 5, 5]))]),
        )
        .unwrap();
        let v = decide_o_convergence(&k4, &x).unwrap();
        assert_eq!(v.converges(), Some(true));
        let v = decide_towards(&k4, &x, &ints(&[0, 0, 1])).unwrap();
        let ConvergenceVerdict::NotConverges { refutation } = v else { panic!() };
        assert!(verify_refutation(&x, &refutation));
    }

    #[test]
    fn linear_growth_refuted() {
        let o2 = OrderedSpace::orthant(2);
        let x = SeqFamily::simple(
            zeros(2),
            vec![VecTerm::new(ints(&[0, 2]), Rat::one(), 1), VecTerm::new(ints(&[1, 1]), Rat::one(), -1)],
        )
        .unwrap();
        let ConvergenceVerdict::NotConverges { refutation } = decide_o_convergence(&o2, &x).unwrap() else {
            panic!()
        };
        assert_eq!(refutation, Refutation::TailUnbounded { coordinate: 1, coeff: int(2), exp: 1 });
        assert!(verify_refutation(&x, &refutation));
    }

    #[test]
    fn peak_values() {
        assert_eq!(peak(&frac(1, 2), 1), frac(1, 2));
        assert_eq!(peak(&frac(9, 10), 1), int(9) * pow(&frac(9, 10), 9));
    }
}
