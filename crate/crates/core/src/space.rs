//! Finite-dimensional ordered vector spaces with polyhedral cones.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::decision::Outcome;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{in_span, rank_of, span_basis, RatMatrix};
use crate::lp::{lp_feasible, lp_optimize, FarkasCertificate, Feasibility, LpOutcome, Sense};
use crate::polyhedron::{polyhedron_equal, HRep, HalfSpace, Polyhedron, VRep};
use crate::rational::{
    add, dot, format_vec, int, neg, primitive, sort_dedup_canonical, sub, unit, zeros, Rat, RatVector,
};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub ambient_dim: usize,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub generators: Vec<RatVector>,
    /// Normals `f` of the facet inequalities `f.x >= 0`.
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub facets: Vec<RatVector>,
    /// Normals `e` of `e.x = 0`; nonempty exactly when the cone is not
    /// generating.
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub equalities: Vec<RatVector>,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub extreme_rays: Vec<RatVector>,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub lineality: Vec<RatVector>,
}

impl Cone {
    pub fn from_generators(dim: usize, generators: Vec<RatVector>) -> Result<Self> {
        let poly = Polyhedron::cone(dim, generators.clone())?.canonical()?;
        Ok(Self::assemble(dim, generators, poly))
    }

    pub fn from_facets(dim: usize, facets: Vec<RatVector>, equalities: Vec<RatVector>) -> Result<Self> {
        let h = HRep::new(
            dim,
            facets.into_iter().map(|f| HalfSpace::new(f, Rat::zero())).collect(),
            equalities.into_iter().map(|e| HalfSpace::new(e, Rat::zero())).collect(),
        )?;
        let poly = Polyhedron::from_hrep(h).canonical()?;
        let v = poly.vrep.clone().expect("canonical");
        let mut gens = v.rays.clone();
        for l in &v.lines {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        Ok(Self::assemble(dim, gens, poly))
    }

    fn assemble(dim: usize, generators: Vec<RatVector>, poly: Polyhedron) -> Self {
        let h = poly.hrep.expect("canonical");
        let v = poly.vrep.expect("canonical");
        Cone {
            ambient_dim: dim,
            generators,
            facets: h.ineqs.into_iter().map(|f| f.normal).collect(),
            equalities: h.eqs.into_iter().map(|f| f.normal).collect(),
            extreme_rays: v.rays,
            lineality: v.lines,
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| !dot(f, x).is_negative()) && self.equalities.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn hrep(&self) -> HRep {
        HRep {
            dim: self.ambient_dim,
            ineqs: self.facets.iter().map(|f| HalfSpace::new(f.clone(), Rat::zero())).collect(),
            eqs: self.equalities.iter().map(|e| HalfSpace::new(e.clone(), Rat::zero())).collect(),
        }
    }

    pub fn polyhedron(&self) -> Polyhedron {
        Polyhedron {
            dim: self.ambient_dim,
            hrep: Some(self.hrep()),
            vrep: Some(VRep {
                dim: self.ambient_dim,
                vertices: vec![zeros(self.ambient_dim)],
                rays: self.extreme_rays.clone(),
                lines: self.lineality.clone(),
            }),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_generating(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.is_generating() && self.extreme_rays.len() == self.ambient_dim
    }

    /// Constraints saying `sign * (z - shift)` lies in the cone.
    fn shifted(&self, sign: i64, shift: &[Rat]) -> (Vec<HalfSpace>, Vec<HalfSpace>) {
        let s = int(sign);
        let row = |f: &RatVector| {
            let n: RatVector = f.iter().map(|x| &s * x).collect();
            let off = dot(&n, shift);
            HalfSpace::new(n, off)
        };
        (self.facets.iter().map(row).collect(), self.equalities.iter().map(row).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedSpace {
    pub name: String,
    pub dim: usize,
    pub cone: Cone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeAxioms {
    pub is_wedge: bool,
    pub is_pointed: bool,
    pub is_generating: bool,
    pub is_archimedean: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderInterval {
    pub polyhedron: Polyhedron,
    /// False when `y <= z` fails; the polyhedron is then empty.
    pub is_interval: bool,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedResult {
    pub bounded: bool,
    #[serde_as(as = "Option<(Vec<DisplayFromStr>, Vec<DisplayFromStr>)>")]
    pub bounds: Option<(RatVector, RatVector)>,
}

/// Points of the bound set admitting no common dominating point inside it,
/// with the Farkas certificate of the corresponding LP.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoExtremum {
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub points: Vec<RatVector>,
    pub farkas: FarkasCertificate,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Extremum {
    Exists {
        #[serde_as(as = "Vec<DisplayFromStr>")]
        point: RatVector,
    },
    NotExists {
        certificate: NoExtremum,
    },
}

impl Extremum {
    pub fn exists(&self) -> bool {
        matches!(self, Extremum::Exists { .. })
    }

    pub fn point(&self) -> Option<&RatVector> {
        match self {
            Extremum::Exists { point } => Some(point),
            Extremum::NotExists { .. } => None,
        }
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeResult {
    pub is_lattice: bool,
    #[serde_as(as = "Option<(Vec<DisplayFromStr>, Vec<DisplayFromStr>)>")]
    pub witness: Option<(RatVector, RatVector)>,
}

/// `z <= x1 + x2` with all three positive, and no split `z = z1 + z2` with
/// `0 <= z1 <= x1`, `0 <= z2 <= x2`; the Farkas certificate refers to
/// [`OrderedSpace::decomposition_system`].
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdpWitness {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub z: RatVector,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub x1: RatVector,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub x2: RatVector,
    pub farkas: FarkasCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdpResult {
    pub has_rdp: bool,
    pub witness: Option<RdpWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub parent: OrderedSpace,
    #[serde(with = "vecs")]
    pub basis: Vec<RatVector>,
}

pub(crate) mod vecs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{format_rat, parse_rat, RatVector};

    pub fn serialize<S: Serializer>(v: &[RatVector], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format_rat).collect()).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatVector>, D::Error> {
        let t: Vec<Vec<String>> = Vec::deserialize(d)?;
        t.iter()
            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<crate::Result<RatVector>>())
            .collect::<crate::Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

impl Subspace {
    pub fn new(parent: &OrderedSpace, basis: Vec<RatVector>) -> Result<Self> {
        for b in &basis {
            check_dim(parent.dim, b.len())?;
        }
        if rank_of(&basis) != basis.len() {
            return Err(Error::Precondition("subspace basis is linearly dependent".into()));
        }
        Ok(Self { parent: parent.clone(), basis })
    }

    /// Span of arbitrary vectors; dependent or zero vectors are dropped.
    pub fn span(parent: &OrderedSpace, vectors: &[RatVector]) -> Result<Self> {
        for b in vectors {
            check_dim(parent.dim, b.len())?;
        }
        let basis = span_basis(vectors, parent.dim).iter().map(|b| primitive(b)).collect();
        Ok(Self { parent: parent.clone(), basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        in_span(&self.basis, x)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(b))
    }

    pub fn includes(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Columns are the basis vectors.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.parent.dim, &self.basis).expect("basis dimension checked")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub outcome: Outcome,
    pub majorizing: bool,
    /// Target coordinate whose dual polytope is not a singleton.
    pub coordinate: Option<usize>,
    #[serde(default, with = "opt_vec")]
    pub alternative: Option<RatVector>,
    pub reason: String,
}

pub(crate) mod opt_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{format_rat, parse_rat, RatVector};

    pub fn serialize<S: Serializer>(v: &Option<RatVector>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|r| r.iter().map(format_rat).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RatVector>, D::Error> {
        let t: Option<Vec<String>> = Option::deserialize(d)?;
        t.map(|r| r.iter().map(|x| parse_rat(x)).collect::<crate::Result<RatVector>>())
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

impl OrderedSpace {
    pub fn new(name: impl Into<String>, cone: Cone) -> Self {
        Self { name: name.into(), dim: cone.ambient_dim, cone }
    }

    pub fn from_generators(name: impl Into<String>, dim: usize, generators: Vec<RatVector>) -> Result<Self> {
        Ok(Self::new(name, Cone::from_generators(dim, generators)?))
    }

    pub fn orthant(d: usize) -> Self {
        Self::from_generators(format!("ORTH{d}"), d, (0..d).map(|i| unit(d, i)).collect()).expect("orthant")
    }

    pub fn k4() -> Self {
        let g = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]];
        Self::from_generators("K4", 3, g.iter().map(|r| crate::rational::ints(r)).collect()).expect("K4")
    }

    pub fn half() -> Self {
        Self::from_generators("HALF", 2, vec![crate::rational::ints(&[1, 0])]).expect("HALF")
    }

    /// `ORTH<d>` (also `ORTH(d)`), `K4`, `HALF`.
    pub fn builtin(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        match upper.as_str() {
            "K4" => return Ok(Self::k4()),
            "HALF" => return Ok(Self::half()),
            _ => {}
        }
        let digits = upper
            .strip_prefix("ORTH")
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        match digits.parse::<usize>() {
            Ok(d) if (1..=16).contains(&d) => Ok(Self::orthant(d)),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    fn check(&self, x: &[Rat]) -> Result<()> {
        check_dim(self.dim, x.len())
    }

    pub fn is_positive(&self, x: &[Rat]) -> Result<bool> {
        self.check(x)?;
        Ok(self.cone.contains(x))
    }

    pub fn leq(&self, x: &[Rat], y: &[Rat]) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.cone.contains(&sub(y, x)))
    }

    pub fn cone_axioms(&self) -> Result<ConeAxioms> {
        Ok(ConeAxioms {
            is_wedge: true,
            is_pointed: self.cone.is_pointed(),
            is_generating: self.cone.is_generating(),
            is_archimedean: self.archimedean_check()?,
        })
    }

    /// If `n x <= y` for every `n` then `f.x <= 0` on every facet and `x` is
    /// orthogonal to every equality, so the set of such `x` is the reflected
    /// recession cone; the check compares that set with `-K`.
    fn archimedean_check(&self) -> Result<bool> {
        let forced = HRep {
            dim: self.dim,
            ineqs: self.cone.facets.iter().map(|f| HalfSpace::new(neg(f), Rat::zero())).collect(),
            eqs: self.cone.equalities.iter().map(|e| HalfSpace::new(e.clone(), Rat::zero())).collect(),
        };
        let minus_k = Polyhedron::from_vrep(VRep {
            dim: self.dim,
            vertices: vec![zeros(self.dim)],
            rays: self.cone.extreme_rays.iter().map(|r| neg(r)).collect(),
            lines: self.cone.lineality.clone(),
        });
        polyhedron_equal(&Polyhedron::from_hrep(forced), &minus_k)
    }

    fn require_ordered(&self, what: &str) -> Result<()> {
        if !self.cone.is_pointed() {
            return Err(Error::Precondition(format!("{what}: cone of {} is not pointed", self.name)));
        }
        if !self.cone.is_generating() {
            return Err(Error::Precondition(format!("{what}: cone of {} is not generating", self.name)));
        }
        Ok(())
    }

    pub fn order_interval(&self, y: &[Rat], z: &[Rat]) -> Result<OrderInterval> {
        self.check(y)?;
        self.check(z)?;
        if !self.leq(y, z)? {
            return Ok(OrderInterval { polyhedron: Polyhedron::empty(self.dim), is_interval: false });
        }
        let (mut ineqs, mut eqs) = self.cone.shifted(1, y);
        let (i2, e2) = self.cone.shifted(-1, z);
        ineqs.extend(i2);
        eqs.extend(e2);
        let polyhedron = Polyhedron::from_hrep(HRep { dim: self.dim, ineqs, eqs }).canonical()?;
        Ok(OrderInterval { polyhedron, is_interval: true })
    }

    fn bound_hrep(&self, points: &[RatVector], upper: bool) -> Result<HRep> {
        if points.is_empty() {
            return Err(Error::Precondition("bound set of an empty family".into()));
        }
        let sign = if upper { 1 } else { -1 };
        let mut h = HRep::universe(self.dim);
        for p in points {
            self.check(p)?;
            let (i, e) = self.cone.shifted(sign, p);
            h.ineqs.extend(i);
            h.eqs.extend(e);
        }
        Ok(h)
    }

    /// `M^u` with both representations, irredundant.
    pub fn upper_bounds(&self, points: &[RatVector]) -> Result<Polyhedron> {
        Polyhedron::from_hrep(self.bound_hrep(&dedup(points), true)?).canonical()
    }

    pub fn lower_bounds(&self, points: &[RatVector]) -> Result<Polyhedron> {
        Polyhedron::from_hrep(self.bound_hrep(&dedup(points), false)?).canonical()
    }

    /// Points `z` of the lower (upper) bound set of `m` lying above (below)
    /// every point in `targets`.
    pub fn common_bound_system(&self, m: &[RatVector], targets: &[RatVector], upper: bool) -> Result<HRep> {
        let mut h = self.bound_hrep(m, upper)?;
        let g = self.bound_hrep(targets, !upper)?;
        h.ineqs.extend(g.ineqs);
        h.eqs.extend(g.eqs);
        Ok(h)
    }

    fn extremum(&self, points: &[RatVector], upper: bool) -> Result<Extremum> {
        let m = dedup(points);
        let bounds = Polyhedron::from_hrep(self.bound_hrep(&m, upper)?);
        let v = bounds.vrep()?;
        if v.is_empty() {
            let farkas = match lp_feasible(&bounds.hrep()?)? {
                Feasibility::Infeasible(c) => c,
                Feasibility::Feasible(_) => unreachable!("empty vrep of a feasible system"),
            };
            return Ok(Extremum::NotExists { certificate: NoExtremum { points: Vec::new(), farkas } });
        }
        let beyond = |a: &RatVector, b: &RatVector| if upper { self.cone.contains(&sub(b, a)) } else { self.cone.contains(&sub(a, b)) };
        if v.lines.is_empty() {
            for cand in &v.vertices {
                if v.vertices.iter().all(|u| beyond(cand, u)) {
                    return Ok(Extremum::Exists { point: cand.clone() });
                }
            }
        }
        let mut groups: Vec<Vec<RatVector>> = Vec::new();
        for i in 0..v.vertices.len() {
            for j in i + 1..v.vertices.len() {
                groups.push(vec![v.vertices[i].clone(), v.vertices[j].clone()]);
            }
        }
        groups.push(v.vertices.clone());
        for g in groups {
            if let Feasibility::Infeasible(farkas) = lp_feasible(&self.common_bound_system(&m, &g, upper)?)? {
                return Ok(Extremum::NotExists { certificate: NoExtremum { points: g, farkas } });
            }
        }
        Err(Error::Precondition("bound set has no extreme element to decide the extremum".into()))
    }

    pub fn infimum(&self, points: &[RatVector]) -> Result<Extremum> {
        self.extremum(points, false)
    }

    pub fn supremum(&self, points: &[RatVector]) -> Result<Extremum> {
        self.extremum(points, true)
    }

    /// Re-checks a non-existence certificate from scratch.
    pub fn verify_no_extremum(&self, m: &[RatVector], cert: &NoExtremum, upper: bool) -> Result<bool> {
        let bounds = self.bound_hrep(&dedup(m), upper)?;
        if cert.points.is_empty() {
            return Ok(cert.farkas.verify(&bounds));
        }
        if !cert.points.iter().all(|p| bounds.contains(p)) {
            return Ok(false);
        }
        Ok(cert.farkas.verify(&self.common_bound_system(&dedup(m), &cert.points, upper)?))
    }

    pub fn is_order_bounded(&self, set: &VRep) -> Result<BoundedResult> {
        check_dim(self.dim, set.dim)?;
        if set.is_empty() {
            return Ok(BoundedResult { bounded: true, bounds: Some((zeros(self.dim), zeros(self.dim))) });
        }
        let lineal = |d: &RatVector| self.cone.contains(d) && self.cone.contains(&neg(d));
        if !set.rays.iter().chain(&set.lines).all(lineal) {
            return Ok(BoundedResult { bounded: false, bounds: None });
        }
        let up = lp_feasible(&self.bound_hrep(&set.vertices, true)?)?;
        let down = lp_feasible(&self.bound_hrep(&set.vertices, false)?)?;
        Ok(match (up, down) {
            (Feasibility::Feasible(z), Feasibility::Feasible(y)) => BoundedResult { bounded: true, bounds: Some((y, z)) },
            _ => BoundedResult { bounded: false, bounds: None },
        })
    }

    pub fn is_lattice(&self) -> Result<LatticeResult> {
        self.require_ordered("is_lattice")?;
        if self.cone.is_simplicial() {
            return Ok(LatticeResult { is_lattice: true, witness: None });
        }
        for (a, b) in self.witness_pairs() {
            let pair = [a.clone(), b.clone()];
            if !self.infimum(&pair)?.exists() && !self.supremum(&pair)?.exists() {
                return Ok(LatticeResult { is_lattice: false, witness: Some((b, a)) });
            }
        }
        Ok(LatticeResult { is_lattice: false, witness: None })
    }

    /// Normalized sums of pairs of extreme rays, then the rays themselves,
    /// in canonical order; all pairs of these.
    fn witness_pairs(&self) -> Vec<(RatVector, RatVector)> {
        let rays = &self.cone.extreme_rays;
        let mut cands = Vec::new();
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                let s = add(&rays[i], &rays[j]);
                cands.push(primitive(&s));
            }
        }
        sort_dedup_canonical(&mut cands);
        let mut extra = rays.clone();
        extra.retain(|r| !cands.contains(r));
        cands.extend(extra);
        let mut pairs = Vec::new();
        for i in 0..cands.len() {
            for j in i + 1..cands.len() {
                pairs.push((cands[i].clone(), cands[j].clone()));
            }
        }
        pairs
    }

    /// `z1` with `0 <= z1 <= x1` and `0 <= z - z1 <= x2`.
    pub fn decomposition_system(&self, z: &[Rat], x1: &[Rat], x2: &[Rat]) -> Result<HRep> {
        self.check(z)?;
        self.check(x1)?;
        self.check(x2)?;
        let mut h = HRep::universe(self.dim);
        let zero = zeros(self.dim);
        let zx2 = sub(z, x2);
        for (sign, shift) in [(1, &zero[..]), (-1, x1), (-1, z), (1, &zx2[..])] {
            let (i, e) = self.cone.shifted(sign, shift);
            h.ineqs.extend(i);
            h.eqs.extend(e);
        }
        Ok(h)
    }

    pub fn has_rdp(&self) -> Result<RdpResult> {
        self.require_ordered("has_rdp")?;
        if self.cone.is_simplicial() {
            return Ok(RdpResult { has_rdp: true, witness: None });
        }
        let rays = &self.cone.extreme_rays;
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                let total = add(&rays[i], &rays[j]);
                let box_ = self.order_interval(&zeros(self.dim), &total)?;
                let verts = box_.polyhedron.vrep()?.vertices;
                for z in verts {
                    if let Feasibility::Infeasible(farkas) =
                        lp_feasible(&self.decomposition_system(&z, &rays[i], &rays[j])?)?
                    {
                        return Ok(RdpResult {
                            has_rdp: false,
                            witness: Some(RdpWitness { z, x1: rays[i].clone(), x2: rays[j].clone(), farkas }),
                        });
                    }
                }
            }
        }
        Ok(RdpResult { has_rdp: false, witness: None })
    }

    pub fn verify_rdp_witness(&self, w: &RdpWitness) -> Result<bool> {
        let pos = |x: &RatVector| self.cone.contains(x);
        Ok(pos(&w.z)
            && pos(&w.x1)
            && pos(&w.x2)
            && self.leq(&w.z, &add(&w.x1, &w.x2))?
            && w.farkas.verify(&self.decomposition_system(&w.z, &w.x1, &w.x2)?))
    }

    /// Rows are the facet functionals; available for pointed generating
    /// cones, where it is bipositive into the coordinatewise order.
    pub fn functional_embedding(&self) -> Option<RatMatrix> {
        if !self.cone.is_pointed() || !self.cone.is_generating() {
            return None;
        }
        RatMatrix::new(self.cone.facets.clone()).ok()
    }

    pub fn is_majorizing(&self, sub_: &Subspace) -> Result<bool> {
        check_dim(self.dim, sub_.parent.dim)?;
        let b = sub_.matrix();
        let k = sub_.dim();
        for i in 0..self.dim {
            for s in [1, -1] {
                let e: RatVector = unit(self.dim, i).iter().map(|x| x * int(s)).collect();
                // f.(B c - e) >= 0
                let row = |f: &RatVector| {
                    let n: RatVector = (0..k).map(|c| dot(f, &b.column(c))).collect();
                    HalfSpace::new(n, dot(f, &e))
                };
                let h = HRep {
                    dim: k,
                    ineqs: self.cone.facets.iter().map(row).collect(),
                    eqs: self.cone.equalities.iter().map(row).collect(),
                };
                if !lp_feasible(&h)?.is_feasible() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_order_dense(&self, sub_: &Subspace) -> Result<DensityReport> {
        let Some(embed) = self.functional_embedding() else {
            return Ok(DensityReport {
                outcome: Outcome::Unknown,
                majorizing: self.is_majorizing(sub_)?,
                coordinate: None,
                alternative: None,
                reason: "no functional representation for a cone that is not pointed and generating".into(),
            });
        };
        let majorizing = self.is_majorizing(sub_)?;
        if !majorizing {
            return Ok(DensityReport {
                outcome: Outcome::Fails,
                majorizing,
                coordinate: None,
                alternative: None,
                reason: "not majorizing".into(),
            });
        }
        let image = embed.mul(&sub_.matrix())?;
        Ok(match singleton_dual_test(&image)? {
            None => DensityReport {
                outcome: Outcome::Holds,
                majorizing,
                coordinate: None,
                alternative: None,
                reason: "every dual polytope is a singleton".into(),
            },
            Some((j, lambda)) => DensityReport {
                outcome: Outcome::Fails,
                majorizing,
                coordinate: Some(j),
                alternative: Some(lambda),
                reason: format!("dual polytope of coordinate {j} is not a singleton"),
            },
        })
    }
}

/// For a basis matrix `B` (m x k) of a subspace of the coordinatewise space
/// Q^m: the first coordinate `j` for which `{l >= 0 : B^T l = B^T e_j}` has a
/// point other than `e_j`, with that point.
pub fn singleton_dual_test(b: &RatMatrix) -> Result<Option<(usize, RatVector)>> {
    let m = b.nrows();
    let bt = b.transpose();
    for j in 0..m {
        let target = bt.column(j);
        if target.iter().all(Zero::is_zero) {
            return Ok(Some((j, zeros(m))));
        }
        let h = HRep {
            dim: m,
            ineqs: (0..m).map(|i| HalfSpace::new(unit(m, i), Rat::zero())).collect(),
            eqs: (0..bt.nrows()).map(|r| HalfSpace::new(bt.row(r).clone(), target[r].clone())).collect(),
        };
        for k in (0..m).filter(|&k| k != j) {
            match lp_optimize(&unit(m, k), &h, Sense::Max)? {
                LpOutcome::Optimal { value, point, .. } if value.is_positive() => return Ok(Some((j, point))),
                LpOutcome::Unbounded { point, ray } => return Ok(Some((j, add(&point, &ray)))),
                _ => {}
            }
        }
    }
    Ok(None)
}

fn dedup(points: &[RatVector]) -> Vec<RatVector> {
    let mut out: Vec<RatVector> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

pub fn describe(points: &[RatVector]) -> String {
    points.iter().map(|p| format_vec(p)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn leq_examples() {
        let k4 = OrderedSpace::k4();
        assert!(k4.leq(&zeros(3), &ints(&[1, 0, 1])).unwrap());
        assert!(!k4.leq(&zeros(3), &ints(&[1, 0, 0])).unwrap());
        assert!(OrderedSpace::orthant(3).leq(&zeros(3), &ints(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn axioms() {
        let half = OrderedSpace::half().cone_axioms().unwrap();
        assert!(half.is_pointed && !half.is_generating && half.is_archimedean);
        let k4 = OrderedSpace::k4().cone_axioms().unwrap();
        assert!(k4.is_pointed && k4.is_generating && k4.is_archimedean);
    }

    #[test]
    fn k4_pair_has_no_infimum() {
        let k4 = OrderedSpace::k4();
        let m = vec![ints(&[1, 0, 1]), ints(&[-1, 0, 1])];
        match k4.infimum(&m).unwrap() {
            Extremum::NotExists { certificate } => assert!(k4.verify_no_extremum(&m, &certificate, false).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(OrderedSpace::builtin("orth(2)").unwrap().dim, 2);
        assert!(OrderedSpace::builtin("K5").is_err());
    }
}
