use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;

use ordspace::corpus::{random_matrix, random_vector, rng};
use ordspace::cover::make_cover;
use ordspace::gallery::{gallery_verify_certificate, GalleryFamily, GallerySpace, GalleryVerdict, TailRefutation};
use ordspace::linalg::RatMatrix;
use ordspace::lp::{lp_optimize, LpOutcome, Sense};
use ordspace::operator::{lattice_ops, modulus, op_sup};
use ordspace::polyhedron::{hrep_to_vrep, vrep_to_hrep, HRep, HalfSpace, Polyhedron, polyhedron_equal};
use ordspace::rational::{dot, int, ints, scale, zeros, Rat, RatVector};
use ordspace::space::{Extremum, OrderedSpace, Subspace};
use ordspace::structure::{band_projection, disjoint_complement, is_band, is_disjoint, BandProjection};
use ordspace::suites::{elin_triptych, refutation_defeats, run_suite, SuiteReport};

const LAWS_LIMIT: Duration = Duration::from_secs(60);
const TRANSFER_LIMIT: Duration = Duration::from_secs(30);
const BUDGET: u64 = 200;

fn line(n: u32, ok: bool, note: &str) {
    println!("criterion {n}: {} {note}", if ok { "PASS" } else { "FAIL" });
}

fn summary(r: &SuiteReport) -> String {
    r.properties
        .iter()
        .map(|p| format!("{}={}/{}", p.name, p.violations, p.instances))
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_1_convergence_properties() -> bool {
    let start = Instant::now();
    let r = run_suite("lemma21", 0, BUDGET).unwrap();
    let took = start.elapsed();
    let enough = ["shift", "limit positivity", "bound preservation", "uniqueness", "linearity", "sandwich"]
        .iter()
        .all(|p| r.property(p).is_some_and(|p| p.instances >= 100));
    let ok = r.passed() && enough && took < LAWS_LIMIT;
    line(1, ok, &format!("({took:.1?}; {})", summary(&r)));
    ok
}

fn criterion_2_elin_triptych() -> bool {
    let t = elin_triptych(BUDGET).unwrap();
    let a = match &t.inclusion_into_linf {
        GalleryVerdict::Converges { certificate } => {
            certificate.witness == GalleryFamily::IndicatorFrom
                && certificate.threshold.eval(7) == 7
                && certificate.threshold.eval(1) == 1
                && gallery_verify_certificate(GallerySpace::LInfRep, &GalleryFamily::Basis, certificate, BUDGET)
                    .unwrap()
                    .is_accepted()
        }
        _ => false,
    };
    let b = match &t.identity_on_c0 {
        GalleryVerdict::NotConverges { refutation, .. } => {
            *refutation == TailRefutation::SupportEscapes
                && refutation.verify(GallerySpace::C0Rep, &GalleryFamily::Basis)
                && refutation_defeats(refutation, &GalleryFamily::Basis, 5, 300)
        }
        _ => false,
    };
    let c = match &t.elin_into_linf {
        GalleryVerdict::NotConverges { refutation, .. } => {
            *refutation == TailRefutation::CoordinateGrowth { coordinate: 1 }
                && refutation.verify(GallerySpace::LInfRep, &GalleryFamily::Elin)
                && refutation_defeats(refutation, &GalleryFamily::Elin, 5, 300)
        }
        _ => false,
    };
    line(2, a && b && c, &format!("(a={a} b={b} c={c})"));
    a && b && c
}

fn criterion_3_k4_ground_truths() -> bool {
    let k4 = OrderedSpace::k4();
    let lat = k4.is_lattice().unwrap();
    let pair = lat.witness.clone().unwrap();
    let witness_ok = !lat.is_lattice && pair == (ints(&[1, 0, 1]), ints(&[-1, 0, 1]));
    let both = [pair.0.clone(), pair.1.clone()];
    let no_inf = match k4.infimum(&both).unwrap() {
        Extremum::NotExists { certificate } => k4.verify_no_extremum(&both, &certificate, false).unwrap(),
        Extremum::Exists { .. } => false,
    };
    let no_sup = match k4.supremum(&both).unwrap() {
        Extremum::NotExists { certificate } => k4.verify_no_extremum(&both, &certificate, true).unwrap(),
        Extremum::Exists { .. } => false,
    };

    let rdp = k4.has_rdp().unwrap();
    let rdp_ok = !rdp.has_rdp && rdp.witness.as_ref().is_some_and(|w| k4.verify_rdp_witness(w).unwrap());

    let cover = make_cover(&k4).unwrap();
    let cover_ok = cover.cover().is_some_and(|c| c.target_dim == 4 && c.order_dense_verified && c.bipositive_verified);

    let d = is_disjoint(&k4, &ints(&[1, 1, 1]), &ints(&[-1, -1, 1])).unwrap();
    let disjoint_ok = d.direct_result && d.cover_result == Some(true);

    let b = Subspace::new(&k4, vec![ints(&[1, 1, 1])]).unwrap();
    let comp = disjoint_complement(&k4, &b.basis).unwrap();
    let expected = Subspace::new(&k4, vec![ints(&[-1, -1, 1])]).unwrap();
    let band_ok = is_band(&b).unwrap()
        && comp.same_as(&expected)
        && matches!(band_projection(&b).unwrap(), BandProjection::None { .. });

    let ok = witness_ok && no_inf && no_sup && rdp_ok && cover_ok && disjoint_ok && band_ok;
    line(
        3,
        ok,
        &format!(
            "(lattice witness={witness_ok} inf={no_inf} sup={no_sup} rdp={rdp_ok} cover={cover_ok} disjoint={disjoint_ok} band={band_ok})"
        ),
    );
    ok
}

fn random_pair(r: &mut rand_chacha::ChaCha8Rng, space: &OrderedSpace) -> (RatVector, RatVector) {
    let rays = &space.cone.extreme_rays;
    let pick = |r: &mut rand_chacha::ChaCha8Rng| {
        if r.gen_bool(0.5) {
            return random_vector(r, space.dim, 2);
        }
        let mut v = zeros(space.dim);
        for g in rays {
            if r.gen_bool(0.4) {
                let c = int(r.gen_range(-2..=3));
                v = ordspace::rational::add(&v, &scale(&c, g));
            }
        }
        v
    };
    (pick(r), pick(r))
}

fn criterion_4_disjointness_routes_agree() -> bool {
    let mut r = rng(4);
    let mut disagreements = 0;
    let mut disjoint_seen = 0;
    for space in [OrderedSpace::orthant(3), OrderedSpace::k4()] {
        for _ in 0..100 {
            let (x, y) = random_pair(&mut r, &space);
            let v = is_disjoint(&space, &x, &y).unwrap();
            if !v.agree || v.cover_result.is_none() {
                disagreements += 1;
            }
            if v.direct_result {
                disjoint_seen += 1;
            }
        }
    }
    let ok = disagreements == 0 && disjoint_seen > 0;
    line(4, ok, &format!("(200 pairs, {disjoint_seen} disjoint, {disagreements} disagreements)"));
    ok
}

fn criterion_5_operator_consistency() -> bool {
    let kat = run_suite("kat", 0, BUDGET).unwrap();
    let uyi = run_suite("uyi", 0, BUDGET).unwrap();
    let elin = kat.property("elin operator fails both").is_some_and(|p| p.instances == 1 && p.violations == 0);
    let random = kat.property("continuous implies bounded").is_some_and(|p| p.instances >= 50);
    let ok = kat.passed() && uyi.passed() && elin && random;
    line(5, ok, &format!("({}; {})", summary(&kat), summary(&uyi)));
    ok
}

/// Upper end of `T[-g, g]` in each coordinate, over the corners of the box.
fn box_vertex_sup(t: &RatMatrix, g: &[Rat]) -> RatVector {
    let d = g.len();
    let mut best: Option<RatVector> = None;
    for mask in 0..(1u32 << d) {
        let corner: RatVector =
            g.iter().enumerate().map(|(i, x)| if mask & (1 << i) != 0 { -x } else { x.clone() }).collect();
        let y = t.apply(&corner).unwrap();
        best = Some(match best {
            None => y,
            Some(b) => b.iter().zip(&y).map(|(a, c)| if a > c { a.clone() } else { c.clone() }).collect(),
        });
    }
    best.unwrap()
}

fn criterion_6_modulus_and_lattice_operations() -> bool {
    let mut r = rng(6);
    let mut bad = Vec::new();
    for i in 0..20 {
        let (m, d) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (dom, cod) = (OrderedSpace::orthant(d), OrderedSpace::orthant(m));
        let t = random_matrix(&mut r, m, d, 4);
        let abs = modulus(&dom, &cod, &t).unwrap();
        let entrywise = t.map(|x| x.abs());
        let neg = t.scale(&int(-1));
        let sup = op_sup(&dom, &cod, &t, &neg).unwrap();
        let g: RatVector = (0..d).map(|_| int(r.gen_range(0..=5))).collect();
        let oracle = box_vertex_sup(&t, &g);
        let ops = lattice_ops(&dom, &cod, &t, &neg).unwrap();
        if abs != entrywise || sup != abs || oracle != abs.apply(&g).unwrap() || ops.sup != abs {
            bad.push(i);
        }
    }
    let mut never_fired = true;
    for space in [OrderedSpace::orthant(2), OrderedSpace::orthant(3)] {
        for _ in 0..10 {
            let t = random_matrix(&mut r, 2, space.dim, 3);
            if modulus(&space, &OrderedSpace::orthant(2), &t).is_err() {
                never_fired = false;
            }
        }
    }
    let k4 = OrderedSpace::k4();
    let fired = matches!(
        modulus(&k4, &OrderedSpace::orthant(1), &RatMatrix::from_ints(&[&[1, 1, 0]])),
        Err(ordspace::Error::ModulusNotAdditive { .. })
    );
    let po = run_suite("po", 0, BUDGET).unwrap();
    let ok = bad.is_empty() && never_fired && fired && po.passed();
    line(6, ok, &format!("(mismatches {bad:?}, rdp silent={never_fired}, K4 fired={fired}; {})", summary(&po)));
    ok
}

fn criterion_7_transfer() -> bool {
    let start = Instant::now();
    let r = run_suite("transfer", 0, BUDGET).unwrap();
    let took = start.elapsed();
    let ok = r.passed() && r.properties.len() == 5 && took < TRANSFER_LIMIT;
    line(7, ok, &format!("({took:.1?}; {})", summary(&r)));
    ok
}

fn criterion_8_disjoint_bounded_null() -> bool {
    let r = run_suite("disjoint-null", 0, BUDGET).unwrap();
    let finite = r.property("finite disjoint families in ORTH3").is_some_and(|p| p.instances == 20);
    let ok = r.passed() && finite;
    line(8, ok, &format!("({})", summary(&r)));
    ok
}

fn random_hrep(r: &mut rand_chacha::ChaCha8Rng) -> HRep {
    let dim = r.gen_range(1..=5);
    let mut ineqs = Vec::new();
    if r.gen_bool(0.7) {
        for i in 0..dim {
            let mut e = zeros(dim);
            e[i] = int(1);
            ineqs.push(HalfSpace::new(e.clone(), int(-r.gen_range(1..=4))));
            ineqs.push(HalfSpace::new(scale(&int(-1), &e), int(-r.gen_range(1..=4))));
        }
    }
    for _ in 0..r.gen_range(1..=dim + 2) {
        let mut n = random_vector(r, dim, 3);
        if n.iter().all(Zero::is_zero) {
            n[0] = int(1);
        }
        ineqs.push(HalfSpace::new(n, int(r.gen_range(-4..=2))));
    }
    let mut eqs = Vec::new();
    if dim > 1 && r.gen_bool(0.15) {
        let mut n = random_vector(r, dim, 2);
        n[dim - 1] = int(1);
        eqs.push(HalfSpace::new(n, int(r.gen_range(-1..=1))));
    }
    HRep::new(dim, ineqs, eqs).unwrap()
}

fn criterion_9_double_description_and_lp_duality() -> bool {
    let mut r = rng(9);
    let mut failures = Vec::new();
    for i in 0..200 {
        let h = random_hrep(&mut r);
        let v = hrep_to_vrep(&h).unwrap();
        let h2 = vrep_to_hrep(&v).unwrap();
        let v2 = hrep_to_vrep(&h2).unwrap();
        let round_trip = v.is_empty() == v2.is_empty()
            && polyhedron_equal(&Polyhedron::from_hrep(h.clone()), &Polyhedron::from_hrep(h2.clone())).unwrap()
            && v.inside(&h)
            && v2.inside(&h);
        let c = random_vector(&mut r, h.dim, 3);
        let lp_ok = match lp_optimize(&c, &h, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, point, dual } => {
                let best = v.vertices.iter().map(|p| dot(&c, p)).max();
                h.contains(&point)
                    && dot(&c, &point) == value
                    && dual.verify(&h, &c, Sense::Max, &value)
                    && best == Some(value.clone())
                    && v.rays.iter().all(|d| !dot(&c, d).is_positive())
                    && v.lines.iter().all(|d| dot(&c, d).is_zero())
            }
            LpOutcome::Unbounded { point, ray } => {
                h.contains(&point) && h.recedes(&ray) && dot(&c, &ray).is_positive() && !v.is_empty()
            }
            LpOutcome::Infeasible(f) => f.verify(&h) && v.is_empty(),
        };
        if !(round_trip && lp_ok) {
            failures.push(i);
        }
    }
    let ok = failures.is_empty();
    line(9, ok, &format!("(200 polyhedra, failures {failures:?})"));
    ok
}

fn main() {
    let criteria: [fn() -> bool; 9] = [
        criterion_1_convergence_properties,
        criterion_2_elin_triptych,
        criterion_3_k4_ground_truths,
        criterion_4_disjointness_routes_agree,
        criterion_5_operator_consistency,
        criterion_6_modulus_and_lattice_operations,
        criterion_7_transfer,
        criterion_8_disjoint_bounded_null,
        criterion_9_double_description_and_lp_duality,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
