use klein_core::arrangement::line_census;
use klein_core::incidence::{census_type, dual, isomorphic, IncidenceStructure};
use klein_core::models::gr::{line_orbit_distances, quad_orbits, ORBIT_NAMES};
use klein_core::models::klein::{kprime_point12, point, I_GR};
use klein_core::models::*;
use klein_core::projplane::{incident, ProjectivePoint};

#[test]
fn klein_lines_through_listed_points() {
    let m = klein_model().unwrap();
    assert_eq!(m.quad_lines[0], vec![1, 4, 17, 20]);
    assert_eq!(m.triple_lines[0], vec![0, 5, 12]);
    let arr = line_census(&m.lines).unwrap();
    assert_eq!(arr.t(4), 21);
    assert_eq!(arr.t(3), 28);
    assert_eq!(arr.tvector().len(), 2);
}

#[test]
fn kprime_has_twelve_triple_points() {
    let m = klein_model().unwrap();
    let arr = line_census(&m.kprime_lines()).unwrap();
    assert_eq!(arr.t(3), 12);
    let p12 = kprime_point12(&m).unwrap();
    assert_eq!(arr.find(&p12).unwrap().multiplicity(), 3);
}

#[test]
fn generators_are_klein_lines() {
    let m = klein_model().unwrap();
    let labels = m.generator_labels().unwrap();
    assert_eq!(labels.len(), 5);
    assert!(m.generator_is_literal(0).unwrap());
}

#[test]
fn gr_census_and_orbits() {
    let m = gr_model().unwrap();
    let one = ProjectivePoint::from_i64(&m.field, [1, 1, 1]).unwrap();
    assert!(incident(&one, &m.lines[0]));
    let arr = m.census().unwrap();
    assert_eq!(arr.t(4), 21);
    for c in arr.points_of_multiplicity(4) {
        let mut per = [0; 3];
        for &l in &c.curves {
            per[GrModel::orbit(l)] += 1;
        }
        per.sort();
        assert_eq!(per, [0, 2, 2]);
    }
    let d = gr_double_orbits(&m).unwrap();
    assert_eq!(d.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![14, 14, 14]);
    assert!(d.r2[0].cmp_real(&d.r2[1]).unwrap().is_lt() && d.r2[1].cmp_real(&d.r2[2]).unwrap().is_lt());
    assert_eq!(quad_orbits(&m).unwrap().len(), 3);
    assert_eq!(line_orbit_distances(&m).unwrap().len(), ORBIT_NAMES.len());
}

#[test]
fn gr_is_isomorphic_to_klein_21_4() {
    let k = klein_model().unwrap();
    let kblocks: Vec<Vec<usize>> = (0..21).map(|l| (0..21).filter(|&p| k.quad_lines[p].contains(&l)).collect()).collect();
    let ks = IncidenceStructure::new(21, kblocks).unwrap();
    let gblocks: Vec<Vec<usize>> = (1..=21).map(|l| (0..21).filter(|&p| I_GR[p].contains(&l)).collect()).collect();
    let gs = IncidenceStructure::new(21, gblocks).unwrap();
    let w = isomorphic(&gs, &ks).expect("isomorphic");
    assert!(w.verify(&gs, &ks));
}

#[test]
fn derived_28_and_49() {
    let m = gr_model().unwrap();
    for pair in [(1, 2), (2, 3), (1, 3)] {
        let c = gr_d28(&m, pair).unwrap();
        assert!(c.signature().is(28, 3, 21, 4), "{pair:?}: {}", c.signature());
    }
    let c = gr_d28(&m, (1, 2)).unwrap();
    let s = incidence_sum_49(&c).unwrap();
    assert!(s.config.signature().is(49, 4, 49, 4));
    assert!(s.reciprocal.signature().is(21, 4, 28, 3));
    assert!(s.self_reciprocal);
    let d = dual(&s.config.structure);
    assert!(isomorphic(&s.config.structure, &d).is_some());
    assert_eq!(census_type(&dual(&c.structure)).to_string(), "(21_4, 28_3)");
}

#[test]
fn half_orbit_configuration() {
    let m = gr_model().unwrap();
    let (_, cfg) = half_orbit_42_config(&m).unwrap();
    assert!(cfg.signature().is(42, 4, 28, 6));
}

#[test]
fn star_heptagon_substructures() {
    let m = gr_model().unwrap();
    let s = subconfigs_14_2_7_4(&m).unwrap();
    let names: Vec<(&str, usize)> = s.iter().map(|x| (x.name.as_str(), x.star)).collect();
    assert_eq!(names, vec![("S12", 2), ("S13", 3), ("S23", 3)]);
    for x in &s {
        assert!(x.config.signature().is(14, 2, 7, 4));
    }
    assert!(isomorphic(&s[1].config.structure, &s[2].config.structure).is_some());
}

#[test]
fn collinear_generic_points() {
    let f = klein_core::numfield::NumberField::rationals();
    let pts: Vec<ProjectivePoint> =
        [[1, 0, 1], [0, 1, 1], [2, 3, 1], [5, 7, 1]].iter().map(|c| ProjectivePoint::from_i64(&f, *c).unwrap()).collect();
    assert!(collinear_ktuples(&pts, 3).unwrap().is_empty());
    let _ = point;
}
