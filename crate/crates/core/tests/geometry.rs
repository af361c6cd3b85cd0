use klein_core::arrangement::line_census;
use klein_core::models::klein::{klein_field, point};
use klein_core::numfield::{FieldElement, FieldRef, NumberField};
use klein_core::projplane::*;
use proptest::prelude::*;

fn pt(field: &FieldRef, c: [i64; 3]) -> ProjectivePoint {
    ProjectivePoint::from_i64(field, c).unwrap()
}

fn coords() -> impl Strategy<Value = [i64; 3]> {
    [-6i64..7, -6i64..7, -6i64..7].prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
}

/// A point over ℚ(a) with coordinates u + v·a.
fn klein_point() -> impl Strategy<Value = ProjectivePoint> {
    (coords(), [-3i64..4, -3i64..4, -3i64..4]).prop_map(|(u, v)| {
        let f = klein_field();
        let a = FieldElement::generator(&f);
        let c = [0, 1, 2].map(|i| &FieldElement::from_i64(&f, u[i]) + &(&a * &FieldElement::from_i64(&f, v[i])));
        ProjectivePoint::new(c).unwrap()
    })
}

fn unit_circle() -> Conic {
    Circle::centered(FieldElement::from_i64(&NumberField::rationals(), 1)).to_conic().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn join_is_incident_with_both_points(p in klein_point(), q in klein_point()) {
        prop_assume!(p != q);
        let l = join(&p, &q).unwrap();
        prop_assert!(incident(&p, &l) && incident(&q, &l));
    }

    #[test]
    fn meet_of_joins_recovers_the_point(p in klein_point(), q in klein_point(), r in klein_point()) {
        prop_assume!(p != q && p != r && q != r && !collinear(&p, &q, &r));
        let back = meet(&join(&p, &q).unwrap(), &join(&p, &r).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn collinearity_is_concurrency_of_duals(a in coords(), b in coords(), c in coords()) {
        let f = NumberField::rationals();
        let (p, q, r) = (pt(&f, a), pt(&f, b), pt(&f, c));
        let dual = |x: &ProjectivePoint| ProjectiveLine::new(x.coords().clone()).unwrap();
        prop_assert_eq!(collinear(&p, &q, &r), concurrent(&dual(&p), &dual(&q), &dual(&r)));
    }

    #[test]
    fn pole_inverts_polar(c in coords()) {
        let circle = unit_circle();
        let p = pt(&NumberField::rationals(), c);
        let l = polar(&p, &circle).unwrap();
        prop_assert_eq!(pole(&l, &circle).unwrap(), p.clone());
        // A point lies on its own polar exactly when it lies on the conic.
        prop_assert_eq!(incident(&p, &l), on_conic(&p, &circle));
    }

    #[test]
    fn five_points_determine_their_conic(ts in prop::collection::btree_set(-20i64..21, 5)) {
        // Rational points (1 − t², 2t, 1 + t²) on the unit circle.
        let f = NumberField::rationals();
        let pts: Vec<ProjectivePoint> = ts.iter().map(|&t| pt(&f, [1 - t * t, 2 * t, 1 + t * t])).collect();
        let c = conic_through_5(&pts).unwrap();
        prop_assert_eq!(c, unit_circle());
    }
}

#[test]
fn conic_classes() {
    let f = NumberField::rationals();
    let i = |v: i64| FieldElement::from_i64(&f, v);
    assert_eq!(conic_classify(&unit_circle()).unwrap(), ConicClass::SmoothEllipse);
    // 2xy − z² = 0
    let hyp = Conic::from_sym([i(0), i(1), i(0), i(0), i(0), i(-1)]).unwrap();
    assert_eq!(conic_classify(&hyp).unwrap(), ConicClass::SmoothHyperbola);
    // y z − x² = 0
    let par = Conic::from_sym([i(-2), i(0), i(0), i(0), i(1), i(0)]).unwrap();
    assert_eq!(conic_classify(&par).unwrap(), ConicClass::SmoothParabola);
    assert!(unit_circle().is_smooth());
}

#[test]
fn join_of_equal_points_is_an_error() {
    let f = NumberField::rationals();
    let p = pt(&f, [1, 2, 3]);
    assert!(join(&p, &pt(&f, [2, 4, 6])).is_err());
}

#[test]
fn small_arrangement_census() {
    // Three lines through the origin and one line in general position:
    // one triple point and three double points.
    let f = NumberField::rationals();
    let l = |c: [i64; 3]| ProjectiveLine::from_i64(&f, c).unwrap();
    let arr = line_census(&[l([1, 0, 0]), l([0, 1, 0]), l([1, 1, 0]), l([1, 2, -5])]).unwrap();
    assert_eq!((arr.t(3), arr.t(2)), (1, 3));
}

#[test]
fn klein_points_parse_with_the_generator() {
    let f = klein_field();
    let p = point(&f, "1:a:-a-1").unwrap();
    let a = FieldElement::generator(&f);
    let expect = ProjectivePoint::new([FieldElement::from_i64(&f, 1), a.clone(), -&(&a + &FieldElement::from_i64(&f, 1))]).unwrap();
    assert_eq!(p, expect);
}
