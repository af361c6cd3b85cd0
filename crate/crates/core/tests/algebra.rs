use klein_core::models::gr::{chebyshev, gr_field};
use klein_core::models::klein::klein_field;
use klein_core::numfield::{element_from_json, element_to_json, field_from_json, field_to_json, FieldElement, FieldRef};
use klein_core::polyalg::{format_form, hessian_det, parse_rational_form, Mono, TernaryForm};
use klein_core::rational::{parse_rational, q, q_frac, Q};
use klein_core::scalar::Scalar;
use num_complex::Complex64;
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-9i64..10, 1i64..6).prop_map(|(n, d)| q_frac(n, d))
}

fn element(field: FieldRef) -> impl Strategy<Value = FieldElement> {
    let d = field.degree();
    prop::collection::vec(small_q(), d).prop_map(move |c| FieldElement::new(&field, c))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn monos(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn form(max_degree: u32) -> impl Strategy<Value = TernaryForm<Q>> {
    (0..=max_degree).prop_flat_map(|d| {
        let ms = monos(d);
        prop::collection::vec(prop::option::weighted(0.6, small_q()), ms.len())
            .prop_map(move |cs| TernaryForm::from_terms(d, ms.iter().zip(cs).filter_map(|(m, c)| c.map(|c| (*m, c)))).unwrap())
    })
}

fn point() -> impl Strategy<Value = [Q; 3]> {
    [small_q(), small_q(), small_q()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn klein_field_axioms(a in element(klein_field()), b in element(klein_field()), c in element(klein_field())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_unity());
        }
    }

    #[test]
    fn arithmetic_matches_complex_embedding(a in element(gr_field()), b in element(gr_field())) {
        prop_assert!(close((&a * &b).to_c64(), a.to_c64() * b.to_c64()));
        prop_assert!(close((&a - &b).to_c64(), a.to_c64() - b.to_c64()));
        if !b.is_zero() {
            prop_assert!(close(a.try_div(&b).unwrap().to_c64(), a.to_c64() / b.to_c64()));
        }
    }

    #[test]
    fn real_sign_matches_embedding(a in element(gr_field())) {
        let x = a.to_f64();
        let s = a.real_sign().unwrap();
        if x.abs() > 1e-9 {
            prop_assert_eq!(s, if x > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(s == 0, a.is_zero());
    }

    #[test]
    fn element_json_round_trip(a in element(klein_field())) {
        let back = element_from_json(&element_to_json(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn euler_identity(f in form(5)) {
        prop_assert!(f.euler_defect().is_zero());
    }

    #[test]
    fn product_then_exact_division(f in form(3), g in form(3)) {
        prop_assume!(!g.is_zero());
        let h = f.mul(&g);
        prop_assert_eq!(h.divide_exact(&g).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in form(3), g in form(3), p in point()) {
        prop_assert_eq!(f.mul(&g).eval(&p), f.eval(&p) * g.eval(&p));
    }

    #[test]
    fn text_round_trip(f in form(4)) {
        let g = parse_rational_form(&format_form(&f)).unwrap();
        if f.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert_eq!(g, f);
        }
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let v = q_frac(n, d);
        prop_assert_eq!(parse_rational(&klein_core::rational::fmt_rational(&v)).unwrap(), v);
    }
}

#[test]
fn klein_generator_satisfies_its_minimal_polynomial() {
    let f = klein_field();
    let a = FieldElement::generator(&f);
    let v = &(&(&a * &a) + &a) + &FieldElement::from_i64(&f, 2);
    assert!(v.is_zero());
    // a = (−1 + √−7)/2
    assert!(close(a.to_c64(), Complex64::new(-0.5, 7f64.sqrt() / 2.0)));
}

#[test]
fn chebyshev_values_are_cosines() {
    let f = gr_field();
    for m in 0..28 {
        let expect = 2.0 * (m as f64 * std::f64::consts::PI / 14.0).cos();
        assert!((chebyshev(&f, m).to_f64() - expect).abs() < 1e-12, "T_{m}");
    }
}

#[test]
fn field_json_round_trip() {
    let f = gr_field();
    assert_eq!(*field_from_json(&field_to_json(&f)).unwrap(), *f);
}

#[test]
fn fermat_cubic_hessian() {
    // f = x³ + y³ + z³ has Hessian diag(6x, 6y, 6z).
    let f = parse_rational_form("x^3 + y^3 + z^3").unwrap();
    let h = hessian_det(&f).unwrap();
    assert_eq!(h, parse_rational_form("216xyz").unwrap());
}

#[test]
fn division_rejects_non_multiples() {
    let f = parse_rational_form("x^2 + y^2 + z^2").unwrap();
    let g = parse_rational_form("x + y").unwrap();
    assert!(f.divide_exact(&g).is_err());
    assert_eq!(f.degree(), 2);
    assert_eq!(f.eval(&[q(1), q(2), q(3)]), q(14));
}
