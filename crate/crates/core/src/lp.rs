//! Exact linear programming over `{x : A x >= b, E x = e}`.
//!
//! A two-phase dense tableau simplex with Bland's rule does the work on the
//! standard form `min c.z, M z = r, z >= 0`. Every answer carries a
//! certificate: a vertex for feasibility, a Farkas multiplier vector for
//! infeasibility, a dual solution for optimality and a ray for
//! unboundedness.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{check_dim, Result};
use crate::linalg::RatMatrix;
use crate::polyhedron::HRep;
use crate::rational::{add, dot, is_zero_vec, scale, zeros, Rat, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

/// Multipliers `y >= 0` on the inequalities and `w` on the equalities with
/// `A^T y + E^T w = 0` and `b.y + e.w > 0`: summing the constraints gives
/// `0 >= positive`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub ineq: RatVector,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub eq: RatVector,
}

impl FarkasCertificate {
    /// Expands the combination and returns the derived right-hand side when
    /// the certificate is valid.
    pub fn contradiction(&self, h: &HRep) -> Option<Rat> {
        if self.ineq.len() != h.ineqs.len() || self.eq.len() != h.eqs.len() {
            return None;
        }
        if self.ineq.iter().any(Signed::is_negative) {
            return None;
        }
        let (lhs, rhs) = combine(h, &self.ineq, &self.eq);
        (is_zero_vec(&lhs) && rhs.is_positive()).then_some(rhs)
    }

    pub fn verify(&self, h: &HRep) -> bool {
        self.contradiction(h).is_some()
    }
}

/// `sum y_i (a_i, b_i) + sum w_j (e_j, f_j)` as a (normal, offset) pair.
fn combine(h: &HRep, y: &[Rat], w: &[Rat]) -> (RatVector, Rat) {
    let mut lhs = zeros(h.dim);
    let mut rhs = Rat::zero();
    for (c, row) in y.iter().zip(&h.ineqs).chain(w.iter().zip(&h.eqs)) {
        if c.is_zero() {
            continue;
        }
        lhs = add(&lhs, &scale(c, &row.normal));
        rhs += c * &row.offset;
    }
    (lhs, rhs)
}

/// Lower bound `c.x >= b.y + e.w` valid on the whole polyhedron, obtained
/// from `A^T y + E^T w = c` with `y >= 0`. For a maximization the multipliers
/// certify `(-c).x >= bound`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub ineq: RatVector,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub eq: RatVector,
}

impl DualCertificate {
    /// The objective bound this certificate proves, if it is a valid dual
    /// solution for `objective` under `sense`.
    pub fn bound(&self, h: &HRep, objective: &[Rat], sense: Sense) -> Option<Rat> {
        if self.ineq.len() != h.ineqs.len() || self.eq.len() != h.eqs.len() {
            return None;
        }
        if self.ineq.iter().any(Signed::is_negative) {
            return None;
        }
        let (lhs, rhs) = combine(h, &self.ineq, &self.eq);
        let target: RatVector = match sense {
            Sense::Min => objective.to_vec(),
            Sense::Max => objective.iter().map(|x| -x).collect(),
        };
        if lhs != target {
            return None;
        }
        Some(match sense {
            Sense::Min => rhs,
            Sense::Max => -rhs,
        })
    }

    pub fn verify(&self, h: &HRep, objective: &[Rat], sense: Sense, value: &Rat) -> bool {
        self.bound(h, objective, sense).as_ref() == Some(value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RatVector),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(&self) -> Option<&RatVector> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: RatVector, dual: DualCertificate },
    Unbounded { point: RatVector, ray: RatVector },
    Infeasible(FarkasCertificate),
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

enum StdResult {
    Infeasible,
    Unbounded { point: RatVector, ray: RatVector },
    Optimal { point: RatVector },
}

struct Tableau {
    rows: Vec<RatVector>,
    rhs: RatVector,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rat], allowed: &[bool]) -> Vec<Option<Rat>> {
        (0..self.ncols)
            .map(|j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return None;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                Some(d)
            })
            .collect()
    }

    /// Runs Bland's rule to optimality. Returns the entering column when the
    /// objective is unbounded below.
    fn optimize(&mut self, cost: &[Rat], allowed: &[bool]) -> Option<usize> {
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let Some(enter) = rc.iter().position(|d| d.as_ref().is_some_and(Signed::is_negative)) else {
                return None;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return Some(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn solution(&self, n: usize) -> RatVector {
        let mut z = zeros(n);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }
}

/// `min c.z` subject to `M z = r`, `z >= 0`.
fn solve_standard(m: &[RatVector], r: &[Rat], c: &[Rat]) -> StdResult {
    let n = c.len();
    let rows_n = m.len();
    let total = n + rows_n;
    let mut rows = Vec::with_capacity(rows_n);
    let mut rhs = Vec::with_capacity(rows_n);
    for (i, (row, ri)) in m.iter().zip(r).enumerate() {
        let flip = ri.is_negative();
        let mut full: RatVector = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        full.extend((0..rows_n).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(full);
        rhs.push(if flip { -ri } else { ri.clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..total).collect(), ncols: total };

    let mut phase1 = zeros(total);
    for x in phase1.iter_mut().skip(n) {
        *x = Rat::one();
    }
    let all = vec![true; total];
    t.optimize(&phase1, &all);
    let infeasibility: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= n)
        .fold(Rat::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        return StdResult::Infeasible;
    }

    // Drive artificials out of the basis; rows where that is impossible are
    // redundant and get dropped.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut cost = c.to_vec();
    cost.extend(zeros(rows_n));
    let mut allowed = vec![true; n];
    allowed.extend(vec![false; rows_n]);
    match t.optimize(&cost, &allowed) {
        None => StdResult::Optimal { point: t.solution(n) },
        Some(enter) => {
            let point = t.solution(n);
            let mut ray = zeros(n);
            ray[enter] = Rat::one();
            for (i, &b) in t.basis.iter().enumerate() {
                if b < n {
                    ray[b] = -t.rows[i][enter].clone();
                }
            }
            StdResult::Unbounded { point, ray }
        }
    }
}

/// Standard form of `{x : A x >= b, E x = e}` with `x = u - v` and slacks:
/// variables `(u, v, s)`.
fn primal_standard(h: &HRep) -> (Vec<RatVector>, RatVector) {
    let m = h.ineqs.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, hs) in h.ineqs.iter().enumerate() {
        let mut row: RatVector = hs.normal.clone();
        row.extend(hs.normal.iter().map(|x| -x));
        row.extend((0..m).map(|k| if k == i { -Rat::one() } else { Rat::zero() }));
        rows.push(row);
        rhs.push(hs.offset.clone());
    }
    for hs in &h.eqs {
        let mut row: RatVector = hs.normal.clone();
        row.extend(hs.normal.iter().map(|x| -x));
        row.extend(zeros(m));
        rows.push(row);
        rhs.push(hs.offset.clone());
    }
    (rows, rhs)
}

fn recover_x(z: &[Rat], n: usize) -> RatVector {
    (0..n).map(|i| &z[i] - &z[n + i]).collect()
}

fn check_hrep(h: &HRep) -> Result<()> {
    for hs in h.ineqs.iter().chain(&h.eqs) {
        check_dim(h.dim, hs.normal.len())?;
    }
    Ok(())
}

/// Solves `A^T y + E^T w = 0`, `b.y + e.w = 1`, `y >= 0`.
fn farkas(h: &HRep) -> FarkasCertificate {
    let m = h.ineqs.len();
    let p = h.eqs.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let coeffs = |hs_col: &dyn Fn(&crate::polyhedron::HalfSpace) -> Rat| -> RatVector {
        let mut row: RatVector = h.ineqs.iter().map(hs_col).collect();
        let eqs: RatVector = h.eqs.iter().map(hs_col).collect();
        row.extend(eqs.iter().cloned());
        row.extend(eqs.iter().map(|x| -x));
        row
    };
    for k in 0..h.dim {
        rows.push(coeffs(&|hs| hs.normal[k].clone()));
        rhs.push(Rat::zero());
    }
    rows.push(coeffs(&|hs| hs.offset.clone()));
    rhs.push(Rat::one());
    let cost = zeros(m + 2 * p);
    match solve_standard(&rows, &rhs, &cost) {
        StdResult::Optimal { point } => FarkasCertificate {
            ineq: point[..m].to_vec(),
            eq: (0..p).map(|j| &point[m + j] - &point[m + p + j]).collect(),
        },
        _ => unreachable!("Farkas alternative must be solvable for an infeasible system"),
    }
}

fn active_rows(h: &HRep, x: &[Rat]) -> Vec<RatVector> {
    let mut rows: Vec<RatVector> = h.eqs.iter().map(|e| e.normal.clone()).collect();
    rows.extend(h.ineqs.iter().filter(|a| dot(&a.normal, x) == a.offset).map(|a| a.normal.clone()));
    rows
}

/// Moves a feasible point along directions in the null space of its active
/// constraints until it is a vertex, or until every remaining free direction
/// is a lineality direction.
fn purify(h: &HRep, mut x: RatVector) -> RatVector {
    'outer: loop {
        let active = active_rows(h, &x);
        let kernel = crate::linalg::kernel_of(&active, h.dim);
        for d in &kernel {
            for dir in [d.clone(), d.iter().map(|v| -v).collect::<RatVector>()] {
                let mut step: Option<Rat> = None;
                for a in &h.ineqs {
                    let ad = dot(&a.normal, &dir);
                    if ad.is_negative() {
                        let slack = dot(&a.normal, &x) - &a.offset;
                        let t = slack / -ad;
                        if step.as_ref().map_or(true, |s| t < *s) {
                            step = Some(t);
                        }
                    }
                }
                if let Some(t) = step {
                    x = add(&x, &scale(&t, &dir));
                    continue 'outer;
                }
            }
        }
        return x;
    }
}

pub fn lp_feasible(h: &HRep) -> Result<Feasibility> {
    check_hrep(h)?;
    let (rows, rhs) = primal_standard(h);
    let cost = zeros(2 * h.dim + h.ineqs.len());
    Ok(match solve_standard(&rows, &rhs, &cost) {
        StdResult::Optimal { point } => Feasibility::Feasible(purify(h, recover_x(&point, h.dim))),
        StdResult::Infeasible => Feasibility::Infeasible(farkas(h)),
        StdResult::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    })
}

/// `max b.y + e.w` subject to `A^T y + E^T w = c`, `y >= 0`.
fn dual_for_min(h: &HRep, c: &[Rat]) -> DualCertificate {
    let m = h.ineqs.len();
    let p = h.eqs.len();
    let mut rows = Vec::new();
    for k in 0..h.dim {
        let mut row: RatVector = h.ineqs.iter().map(|a| a.normal[k].clone()).collect();
        let eqs: RatVector = h.eqs.iter().map(|e| e.normal[k].clone()).collect();
        row.extend(eqs.iter().cloned());
        row.extend(eqs.iter().map(|x| -x));
        rows.push(row);
    }
    let mut cost: RatVector = h.ineqs.iter().map(|a| -a.offset.clone()).collect();
    let eqo: RatVector = h.eqs.iter().map(|e| -e.offset.clone()).collect();
    cost.extend(eqo.iter().cloned());
    cost.extend(eqo.iter().map(|x| -x));
    match solve_standard(&rows, c, &cost) {
        StdResult::Optimal { point } => DualCertificate {
            ineq: point[..m].to_vec(),
            eq: (0..p).map(|j| &point[m + j] - &point[m + p + j]).collect(),
        },
        _ => unreachable!("dual of a bounded feasible LP has an optimum"),
    }
}

pub fn lp_optimize(objective: &[Rat], h: &HRep, sense: Sense) -> Result<LpOutcome> {
    check_hrep(h)?;
    check_dim(h.dim, objective.len())?;
    let n = h.dim;
    let min_obj: RatVector = match sense {
        Sense::Min => objective.to_vec(),
        Sense::Max => objective.iter().map(|x| -x).collect(),
    };
    let (rows, rhs) = primal_standard(h);
    let mut cost = min_obj.clone();
    cost.extend(min_obj.iter().map(|x| -x));
    cost.extend(zeros(h.ineqs.len()));
    Ok(match solve_standard(&rows, &rhs, &cost) {
        StdResult::Infeasible => LpOutcome::Infeasible(farkas(h)),
        StdResult::Unbounded { point, ray } => LpOutcome::Unbounded {
            point: recover_x(&point, n),
            ray: recover_x(&ray, n),
        },
        StdResult::Optimal { point } => {
            let point = recover_x(&point, n);
            let value = dot(objective, &point);
            LpOutcome::Optimal { value, point, dual: dual_for_min(h, &min_obj) }
        }
    })
}

/// Convenience used all over the crate: the optimum when it exists.
pub fn maximize(objective: &[Rat], h: &HRep) -> Result<Option<Rat>> {
    Ok(lp_optimize(objective, h, Sense::Max)?.value().cloned())
}

/// Solves `M x = r` for some `x >= 0`.
pub fn nonneg_solution(m: &RatMatrix, r: &[Rat]) -> Result<Option<RatVector>> {
    check_dim(m.nrows(), r.len())?;
    Ok(match solve_standard(m.rows(), r, &zeros(m.ncols())) {
        StdResult::Optimal { point } => Some(point),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::HalfSpace;
    use crate::rational::{int, ints};

    fn hs(n: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(ints(n), int(b))
    }

    #[test]
    fn contradictory_pair_has_unique_certificate() {
        let h = HRep::new(1, vec![hs(&[1], 0), hs(&[-1], 1)], vec![]).unwrap();
        match lp_feasible(&h).unwrap() {
            Feasibility::Infeasible(cert) => {
                assert_eq!(cert.ineq, ints(&[1, 1]));
                assert_eq!(cert.contradiction(&h), Some(int(1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn half_line_is_feasible_at_origin() {
        let h = HRep::new(1, vec![hs(&[1], 0)], vec![]).unwrap();
        assert_eq!(lp_feasible(&h).unwrap(), Feasibility::Feasible(ints(&[0])));
        assert!(matches!(lp_optimize(&ints(&[1]), &h, Sense::Max).unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn box_maximum_with_dual() {
        let h = HRep::new(2, vec![hs(&[1, 0], -1), hs(&[-1, 0], -1), hs(&[0, 1], -1), hs(&[0, -1], -1)], vec![]).unwrap();
        match lp_optimize(&ints(&[1, 0]), &h, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, point, dual } => {
                assert_eq!(value, int(1));
                assert_eq!(point[0], int(1));
                assert!(dual.verify(&h, &ints(&[1, 0]), Sense::Max, &value));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equalities_are_respected() {
        let h = HRep::new(2, vec![hs(&[1, 0], 0), hs(&[0, 1], 0)], vec![hs(&[1, 1], 3)]).unwrap();
        match lp_optimize(&ints(&[1, -1]), &h, Sense::Min).unwrap() {
            LpOutcome::Optimal { value, dual, .. } => {
                assert_eq!(value, int(-3));
                assert!(dual.verify(&h, &ints(&[1, -1]), Sense::Min, &value));
            }
            other => panic!("{other:?}"),
        }
    }
}
