//! Pre-Riesz detection and vector lattice covers by functional
//! representation on the extreme rays of the dual cone.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::decision::Outcome;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::polyhedron::polyhedron_subset;
use crate::rational::{add, int, Rat, RatVector};
use crate::space::{singleton_dual_test, Cone, OrderedSpace};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreRieszVerdict {
    pub outcome: Outcome,
    pub reason: String,
    /// `(x, y, z)` with `{x+y, x+z}^u` inside `{y, z}^u` but `x` not positive.
    #[serde_as(as = "Option<(Vec<DisplayFromStr>, Vec<DisplayFromStr>, Vec<DisplayFromStr>)>")]
    pub witness: Option<(RatVector, RatVector, RatVector)>,
}

impl PreRieszVerdict {
    pub fn is_true(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

/// Directed and Archimedean is sufficient. A non-directed space is searched
/// for a definitional counterexample; the search draws `budget` random
/// triples with small integer entries.
pub fn is_preriesz(space: &OrderedSpace, seed: u64, budget: usize) -> Result<PreRieszVerdict> {
    let ax = space.cone_axioms()?;
    if ax.is_generating && ax.is_archimedean {
        return Ok(PreRieszVerdict {
            outcome: Outcome::Holds,
            reason: "directed and Archimedean".into(),
            witness: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = space.dim;
    let draw = |rng: &mut ChaCha8Rng| -> RatVector { (0..d).map(|_| int(rng.gen_range(-2..=2))).collect() };
    for _ in 0..budget {
        let x = draw(&mut rng);
        if space.cone.contains(&x) {
            continue;
        }
        let y = draw(&mut rng);
        let z = draw(&mut rng);
        if check_preriesz_triple(space, &x, &y, &z)? {
            return Ok(PreRieszVerdict {
                outcome: Outcome::Fails,
                reason: "inclusion of upper bound sets without positivity".into(),
                witness: Some((x, y, z)),
            });
        }
    }
    Ok(PreRieszVerdict {
        outcome: Outcome::Unknown,
        reason: format!("not directed; no counterexample among {budget} sampled triples"),
        witness: None,
    })
}

/// True when `(x, y, z)` violates the pre-Riesz implication.
pub fn check_preriesz_triple(space: &OrderedSpace, x: &[Rat], y: &[Rat], z: &[Rat]) -> Result<bool> {
    if space.cone.contains(x) {
        return Ok(false);
    }
    let lhs = space.upper_bounds(&[add(x, y), add(x, z)])?;
    let rhs = space.upper_bounds(&[y.to_vec(), z.to_vec()])?;
    polyhedron_subset(&lhs, &rhs)
}

pub fn dual_extreme_rays(cone: &Cone) -> Result<Vec<RatVector>> {
    if !cone.is_generating() {
        return Err(Error::Precondition("cone is not generating, its dual is not pointed".into()));
    }
    if !cone.is_pointed() {
        return Err(Error::Precondition("cone is not pointed, its dual is not generating".into()));
    }
    Ok(cone.facets.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub source: OrderedSpace,
    pub target_dim: usize,
    pub embedding: RatMatrix,
    pub bipositive_verified: bool,
    pub order_dense_verified: bool,
}

impl Cover {
    pub fn apply(&self, x: &[Rat]) -> Result<RatVector> {
        self.embedding.apply(x)
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoverOutcome {
    Cover(Cover),
    Failure {
        reason: String,
        coordinate: Option<usize>,
        #[serde_as(as = "Option<Vec<DisplayFromStr>>")]
        alternative: Option<RatVector>,
    },
}

impl CoverOutcome {
    pub fn cover(&self) -> Option<&Cover> {
        match self {
            CoverOutcome::Cover(c) => Some(c),
            CoverOutcome::Failure { .. } => None,
        }
    }
}

/// Bipositivity checked on the generators of the source cone and on the
/// standard basis: `x >= 0` iff `E x >= 0`.
pub fn check_bipositive(space: &OrderedSpace, embedding: &RatMatrix) -> Result<bool> {
    for g in &space.cone.extreme_rays {
        if embedding.apply(g)?.iter().any(Signed::is_negative) {
            return Ok(false);
        }
    }
    for i in 0..space.dim {
        for s in [1, -1] {
            let mut e = crate::rational::zeros(space.dim);
            e[i] = int(s);
            let image_pos = !embedding.apply(&e)?.iter().any(Signed::is_negative);
            if image_pos != space.cone.contains(&e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Singleton-dual test of the image `E(W)` inside the coordinatewise space.
pub fn verify_order_density(embedding: &RatMatrix) -> Result<Option<(usize, RatVector)>> {
    singleton_dual_test(embedding)
}

pub fn make_cover(space: &OrderedSpace) -> Result<CoverOutcome> {
    let pre = is_preriesz(space, 0, 0)?;
    if !pre.is_true() {
        return Ok(CoverOutcome::Failure {
            reason: format!("not certified pre-Riesz: {}", pre.reason),
            coordinate: None,
            alternative: None,
        });
    }
    let rows = dual_extreme_rays(&space.cone)?;
    let embedding = RatMatrix::new(rows)?;
    let bipositive = check_bipositive(space, &embedding)?;
    if !bipositive {
        return Ok(CoverOutcome::Failure { reason: "embedding is not bipositive".into(), coordinate: None, alternative: None });
    }
    Ok(match verify_order_density(&embedding)? {
        Some((j, lambda)) => CoverOutcome::Failure {
            reason: format!("image is not order dense: coordinate {j} admits another dual point"),
            coordinate: Some(j),
            alternative: Some(lambda),
        },
        None => CoverOutcome::Cover(Cover {
            source: space.clone(),
            target_dim: embedding.nrows(),
            embedding,
            bipositive_verified: true,
            order_dense_verified: true,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn half_has_a_counterexample() {
        let v = is_preriesz(&OrderedSpace::half(), 0, 200).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        let (x, y, z) = v.witness.unwrap();
        assert!(check_preriesz_triple(&OrderedSpace::half(), &x, &y, &z).unwrap());
        assert!(matches!(make_cover(&OrderedSpace::half()).unwrap(), CoverOutcome::Failure { .. }));
    }

    #[test]
    fn k4_cover() {
        let c = make_cover(&OrderedSpace::k4()).unwrap();
        let cover = c.cover().unwrap();
        assert!(cover.order_dense_verified);
        assert_eq!(cover.apply(&ints(&[1, 1, 1])).unwrap(), ints(&[0, 2, 0, 2]));
        assert_eq!(cover.apply(&ints(&[-1, -1, 1])).unwrap(), ints(&[2, 0, 2, 0]));
    }

    #[test]
    fn dense_failure_is_reported() {
        let m = RatMatrix::from_ints(&[&[1], &[1]]);
        let (j, lambda) = verify_order_density(&m).unwrap().unwrap();
        assert_eq!(j, 0);
        assert_eq!(lambda, ints(&[0, 1]));
    }
}
