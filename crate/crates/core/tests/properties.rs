use num_traits::{Signed, Zero};
use proptest::prelude::*;

use ordspace::convergence::{eventual_sign, EventualSign, ExpPoly, ScalarTerm};
use ordspace::cover::{check_bipositive, make_cover};
use ordspace::linalg::RatMatrix;
use ordspace::lp::{lp_feasible, lp_optimize, Feasibility, LpOutcome, Sense};
use ordspace::polyhedron::{hrep_to_vrep, polyhedron_equal, vrep_to_hrep, HRep, HalfSpace, Polyhedron};
use ordspace::rational::{dot, frac, int, RatVector};
use ordspace::semiorder::{semi_leq, SemiOrderSpace};
use ordspace::space::{OrderedSpace, Subspace};
use ordspace::structure::{disjoint_direct, is_disjoint, subspace_complement};

fn vec_of(dim: usize, range: i64) -> impl Strategy<Value = RatVector> {
    proptest::collection::vec(-range..=range, dim).prop_map(|v| v.into_iter().map(int).collect())
}

fn hrep_strategy() -> impl Strategy<Value = HRep> {
    (1usize..=4).prop_flat_map(|dim| {
        proptest::collection::vec((vec_of(dim, 3), -4i64..=3), 1..=dim + 3).prop_map(move |rows| {
            let ineqs = rows.into_iter().map(|(n, b)| HalfSpace::new(n, int(b))).collect();
            HRep::new(dim, ineqs, Vec::new()).unwrap()
        })
    })
}

fn spaces() -> impl Strategy<Value = OrderedSpace> {
    prop_oneof![Just(OrderedSpace::orthant(3)), Just(OrderedSpace::k4())]
}

fn term() -> impl Strategy<Value = ScalarTerm> {
    (-5i64..=5, prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 3)), Just((1, 3))], -2i64..=2)
        .prop_map(|(c, (p, q), e)| ScalarTerm::new(int(c), frac(p, q), e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_description_round_trip(h in hrep_strategy()) {
        let v = hrep_to_vrep(&h).unwrap();
        let h2 = vrep_to_hrep(&v).unwrap();
        prop_assert!(v.inside(&h));
        prop_assert!(polyhedron_equal(&Polyhedron::from_hrep(h), &Polyhedron::from_hrep(h2)).unwrap());
    }

    #[test]
    fn lp_answers_carry_valid_certificates(h in hrep_strategy(), seed in vec_of(4, 3)) {
        let c: RatVector = seed[..h.dim].to_vec();
        match lp_optimize(&c, &h, Sense::Min).unwrap() {
            LpOutcome::Optimal { value, point, dual } => {
                prop_assert!(h.contains(&point));
                prop_assert_eq!(dot(&c, &point), value.clone());
                prop_assert!(dual.verify(&h, &c, Sense::Min, &value));
            }
            LpOutcome::Unbounded { point, ray } => {
                prop_assert!(h.contains(&point));
                prop_assert!(h.recedes(&ray));
                prop_assert!(dot(&c, &ray).is_negative());
            }
            LpOutcome::Infeasible(f) => prop_assert!(f.verify(&h)),
        }
    }

    #[test]
    fn farkas_certificates_only_for_empty_sets(h in hrep_strategy()) {
        match lp_feasible(&h).unwrap() {
            Feasibility::Feasible(p) => prop_assert!(h.contains(&p)),
            Feasibility::Infeasible(f) => {
                prop_assert!(f.verify(&h));
                prop_assert!(hrep_to_vrep(&h).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn order_is_a_partial_order(space in spaces(), x in vec_of(3, 3), y in vec_of(3, 3), z in vec_of(3, 3)) {
        prop_assert!(space.leq(&x, &x).unwrap());
        if space.leq(&x, &y).unwrap() && space.leq(&y, &z).unwrap() {
            prop_assert!(space.leq(&x, &z).unwrap());
        }
        if space.leq(&x, &y).unwrap() && space.leq(&y, &x).unwrap() {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn suprema_are_least_upper_bounds(space in spaces(), x in vec_of(3, 2), y in vec_of(3, 2), u in vec_of(3, 4)) {
        if let Some(s) = space.supremum(&[x.clone(), y.clone()]).unwrap().point() {
            prop_assert!(space.leq(&x, s).unwrap() && space.leq(&y, s).unwrap());
            if space.leq(&x, &u).unwrap() && space.leq(&y, &u).unwrap() {
                prop_assert!(space.leq(s, &u).unwrap());
            }
        }
    }

    #[test]
    fn covers_are_bipositive(space in spaces(), x in vec_of(3, 4)) {
        let cover = make_cover(&space).unwrap();
        let c = cover.cover().unwrap();
        prop_assert!(check_bipositive(&space, &c.embedding).unwrap());
        let image_positive = c.apply(&x).unwrap().iter().all(|v| !v.is_negative());
        prop_assert_eq!(image_positive, space.is_positive(&x).unwrap());
    }

    #[test]
    fn disjointness_is_symmetric(space in spaces(), x in vec_of(3, 2), y in vec_of(3, 2)) {
        prop_assert_eq!(disjoint_direct(&space, &x, &y).unwrap(), disjoint_direct(&space, &y, &x).unwrap());
        prop_assert!(is_disjoint(&space, &x, &y).unwrap().agree);
    }

    #[test]
    fn complement_laws(space in spaces(), basis in proptest::collection::vec(vec_of(3, 2), 1..=2)) {
        prop_assume!(basis.iter().any(|b| b.iter().any(|v| !v.is_zero())));
        let m = Subspace::span(&space, &basis).unwrap();
        let d = subspace_complement(&m).unwrap();
        let dd = subspace_complement(&d).unwrap();
        let ddd = subspace_complement(&dd).unwrap();
        prop_assert!(dd.includes(&m));
        prop_assert!(ddd.same_as(&d));
    }

    #[test]
    fn eventual_sign_index_is_exact(terms in proptest::collection::vec(term(), 1..=4)) {
        let f = ExpPoly::new(terms);
        let (nonneg, n0) = match eventual_sign(&f) {
            EventualSign::NonnegFrom(n) => (true, n),
            EventualSign::NegFrom(n) => (false, n),
        };
        let ok = |n: u64| if nonneg { !f.eval(n).is_negative() } else { f.eval(n).is_negative() };
        prop_assert!((n0..n0 + 300).all(ok));
        if n0 > 1 {
            prop_assert!(!ok(n0 - 1));
        }
    }

    #[test]
    fn semi_order_is_a_preorder(
        rows in proptest::collection::vec(vec_of(2, 2), 3),
        x in vec_of(2, 3), y in vec_of(2, 3), z in vec_of(2, 3),
    ) {
        let t = RatMatrix::new(rows).unwrap();
        let sos = SemiOrderSpace::new(2, OrderedSpace::k4(), t).unwrap();
        prop_assert!(semi_leq(&sos, &x, &x).unwrap());
        if semi_leq(&sos, &x, &y).unwrap() && semi_leq(&sos, &y, &z).unwrap() {
            prop_assert!(semi_leq(&sos, &x, &z).unwrap());
        }
    }
}
