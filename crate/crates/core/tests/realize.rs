use klein_core::incidence::IncidenceStructure;
use klein_core::models::klein::kprime_structure;
use klein_core::models::{gr_model, klein_model};
use klein_core::realize::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn fano() -> IncidenceStructure {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    IncidenceStructure::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
}

fn triangle() -> IncidenceStructure {
    IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

fn c(v: [f64; 3]) -> [Complex64; 3] {
    v.map(|x| Complex64::new(x, 0.0))
}

#[test]
fn lm_solves_rosenbrock() {
    let f = |x: &[f64]| vec![10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]];
    let r = levenberg_marquardt(&f, &[-1.2, 1.0], 200);
    assert!(r.residual < 1e-10, "{r:?}");
    assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] - 1.0).abs() < 1e-8);
}

#[test]
fn fano_has_no_real_realization() {
    let r = realize_structure(&fano(), 16).unwrap();
    assert!(!r.success);
    assert!(r.best_residual > 1e-3);
}

#[test]
fn triangle_and_kprime_realize() {
    let t = realize_structure(&triangle(), 4).unwrap();
    assert!(t.success && t.best_residual < 1e-10);
    let m = klein_model().unwrap();
    let s = kprime_structure(&m).unwrap();
    let r = realize_structure(&s, 16).unwrap();
    assert!(r.success, "best residual {}", r.best_residual);
    let real = r.realization.as_ref().unwrap();
    assert!(real.residual(&s) < 1e-10);
    assert!(r.census.as_ref().unwrap().t(3) >= 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn residual_survives_projectivities(g in prop::array::uniform3(prop::array::uniform3(-2.0f64..2.0))) {
        let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        prop_assume!(det.abs() > 0.3);
        let m = klein_model().unwrap();
        let s = kprime_structure(&m).unwrap();
        let r = realize_structure(&s, 4).unwrap();
        let real = r.realization.unwrap();
        let moved = real.transformed(&g).unwrap();
        // Row-normalized residuals pick up at most a condition-number factor.
        prop_assert!(moved.residual(&s) < 1e-8, "{}", moved.residual(&s));
    }

    #[test]
    fn tangent_dimension_is_gauge_invariant(re in prop::array::uniform9(-1.0f64..1.0), im in prop::array::uniform9(-1.0f64..1.0)) {
        let g: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
        let gm = nalgebra::Matrix3::from_row_slice(&g);
        prop_assume!(gm.determinant().norm() > 0.2);
        let m = klein_model().unwrap();
        let sets: Vec<Vec<usize>> = m.quad_lines.iter().chain(&m.triple_lines).cloned().collect();
        // Lines transform by the inverse transpose; any invertible matrix will do.
        let lines: Vec<[Complex64; 3]> = m
            .lines
            .iter()
            .map(|l| {
                let v = gm * nalgebra::Vector3::from_row_slice(&l.to_c64());
                [v[0], v[1], v[2]]
            })
            .collect();
        let t = tangent_dimension(&lines, &sets).unwrap();
        prop_assert_eq!(t.dimension, Some(0));
    }
}

#[test]
fn generic_lines_have_2n_minus_8_moduli() {
    // Lines in general position: each contributes two parameters, the
    // projective group removes eight.
    let pool = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [1.0, 2.0, 5.0], [3.0, -1.0, 2.0], [2.0, 7.0, -3.0]];
    for n in 4..=7 {
        let lines: Vec<[Complex64; 3]> = pool[..n].iter().map(|&v| c(v)).collect();
        let t = tangent_dimension(&lines, &[]).unwrap();
        assert_eq!(t.dimension, Some(2 * n as i64 - 8), "n = {n}");
        assert_eq!(t.dimension_pinned, t.dimension);
    }
}

#[test]
fn a_pencil_point_removes_one_parameter() {
    // Five lines, three of them concurrent: 2·5 − 8 − 1.
    let lines = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0], [1.0, 2.0, 5.0], [3.0, -1.0, 2.0]].map(c);
    let t = tangent_dimension(&lines, &[vec![0, 1, 2]]).unwrap();
    assert_eq!(t.dimension, Some(1));
}

#[test]
fn unperturbed_sweep_keeps_the_symmetry() {
    let m = gr_model().unwrap();
    let r = conjecture_sweep(&m, None, None, 4, 2).unwrap();
    assert_eq!(r.label, "EXPERIMENTAL");
    let s0 = &r.samples[0];
    assert!(s0.symmetry_defect < 1e-12 && s0.identification < 1e-12 && s0.c3_residual < 1e-12, "{s0:?}");
    // Breaking one identification is visible.
    assert!(s0.broken_identification > 1e-2);
    let frame = sweep_frame(&m).unwrap();
    for s in &r.samples {
        let again = evaluate_sample(&frame, &s.c1, &s.theta, None);
        assert_eq!(again, (s.c2_residual, s.identification, s.c3_residual, s.broken_identification, s.symmetry_defect));
    }
}

#[test]
fn ellipse_parsing() {
    let e = Ellipse::parse("0.1, -0.2, 1.5, 1, 0.3").unwrap();
    assert_eq!((e.cx, e.cy, e.a, e.b, e.rot), (0.1, -0.2, 1.5, 1.0, 0.3));
    for t in [0.0, 1.0, 2.5] {
        let p = e.point(t);
        let s = e.sym();
        let [x, y, z] = p;
        let v = s[0] * x * x + 2.0 * s[1] * x * y + 2.0 * s[2] * x * z + s[3] * y * y + 2.0 * s[4] * y * z + s[5] * z * z;
        assert!(v.abs() < 1e-12);
    }
    assert!(Ellipse::parse("1,2,3").is_err());
    assert!(Ellipse::parse("0,0,-1,1,0").is_err());
}
