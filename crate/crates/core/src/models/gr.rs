//! The Grünbaum–Rigby realization over F = ℚ(α), α = 2cos(π/14).
//!
//! With T₀ = 2, T₁ = α and T_{m+1} = α·T_m − T_{m−1} one has
//! 2cos(mπ/14) = T_m, so for φ = π/7
//! `cos kφ = T_{2k}/2` and `sin kφ = T_{|7−2k|}/2`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_complex::Complex64;

use crate::arrangement::{line_census, Arrangement};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldRef, NumberField};
use crate::projplane::{dot, radius2, line_distance2, Conic, ProjectiveLine, ProjectivePoint};
use crate::rational::{q, q_frac};

type FE = FieldElement;
pub type Mat3 = [[FE; 3]; 3];

pub fn gr_field() -> FieldRef {
    let minpoly = [q(-7), q(0), q(14), q(0), q(-7), q(0)];
    NumberField::create(&minpoly, Complex64::new(1.9499, 0.0)).expect("t⁶ − 7t⁴ + 14t² − 7 is squarefree")
}

/// T_m(α) = 2cos(mπ/14).
pub fn chebyshev(field: &FieldRef, m: usize) -> FE {
    let alpha = FE::generator(field);
    let (mut a, mut b) = (FE::from_i64(field, 2), alpha.clone());
    if m == 0 {
        return a;
    }
    for _ in 1..m {
        let c = &(&alpha * &b) - &a;
        a = b;
        b = c;
    }
    b
}

#[derive(Clone, Debug)]
pub struct GrModel {
    pub field: FieldRef,
    /// A₀…A₆, B₀…B₆, C₀…C₆.
    pub lines: Vec<ProjectiveLine>,
    pub p: FE,
    pub q: FE,
    /// cos kφ and sin kφ for k = 0 … 13.
    pub cos: Vec<FE>,
    pub sin: Vec<FE>,
}

pub const ORBIT_NAMES: [char; 3] = ['A', 'B', 'C'];

impl GrModel {
    pub fn orbit(i: usize) -> usize {
        i / 7
    }

    pub fn line_name(i: usize) -> String {
        format!("{}{}", ORBIT_NAMES[i / 7], i % 7)
    }

    pub fn census(&self) -> Result<Arrangement> {
        line_census(&self.lines)
    }

    /// Rotation by 2kφ about the origin.
    pub fn rotation(&self, k: usize) -> Mat3 {
        let k = (2 * k) % 14;
        let f = &self.field;
        let (c, s) = (self.cos[k].clone(), self.sin[k].clone());
        [[c.clone(), -&s, FE::zero(f)], [s, c, FE::zero(f)], [FE::zero(f), FE::zero(f), FE::one(f)]]
    }

    /// The 14 elements of D₇: rotations, then rotations composed with x ↦ −x.
    pub fn group(&self) -> Vec<Mat3> {
        let f = &self.field;
        let mirror: Mat3 = [
            [FE::from_i64(f, -1), FE::zero(f), FE::zero(f)],
            [FE::zero(f), FE::one(f), FE::zero(f)],
            [FE::zero(f), FE::zero(f), FE::one(f)],
        ];
        let mut out: Vec<Mat3> = (0..7).map(|k| self.rotation(k)).collect();
        for k in 0..7 {
            out.push(mat_mul(&self.rotation(k), &mirror));
        }
        out
    }
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| dot(&a[i], &[b[0][j].clone(), b[1][j].clone(), b[2][j].clone()])))
}

pub fn mat_vec(a: &Mat3, v: &[FE; 3]) -> [FE; 3] {
    std::array::from_fn(|i| dot(&a[i], v))
}

fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Image of a point under an orthogonal map.
pub fn map_point(g: &Mat3, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    ProjectivePoint::new(mat_vec(g, p.coords()))
}

/// Image of a line under an orthogonal map (inverse transpose = itself).
pub fn map_line(g: &Mat3, l: &ProjectiveLine) -> Result<ProjectiveLine> {
    ProjectiveLine::new(mat_vec(g, l.coords()))
}

/// Image of a conic under an orthogonal map: g·S·gᵀ.
pub fn map_conic(g: &Mat3, c: &Conic) -> Result<Conic> {
    let m = mat_mul(&mat_mul(g, &c.matrix()), &transpose(g));
    Conic::from_sym([m[0][0].clone(), m[0][1].clone(), m[0][2].clone(), m[1][1].clone(), m[1][2].clone(), m[2][2].clone()])
}

/// Builds the 21 lines and certifies the sine and cosine table exactly.
pub fn gr_model() -> Result<GrModel> {
    let field = gr_field();
    let half = FE::from_q(&field, q_frac(1, 2));
    let t: Vec<FE> = (0..27).map(|m| chebyshev(&field, m)).collect();
    let cos: Vec<FE> = (0..14).map(|k| &t[2 * k] * &half).collect();
    let sin: Vec<FE> = (0..14).map(|k| &t[(7i64 - 2 * k as i64).unsigned_abs() as usize] * &half).collect();
    let one = FE::one(&field);
    for k in 0..14 {
        if &(&cos[k] * &cos[k]) + &(&sin[k] * &sin[k]) != one {
            return Err(Error::SelfCheck(format!("sin² + cos² ≠ 1 at k = {k}")));
        }
        if k + 1 < 14 {
            let c = &(&cos[k] * &cos[1]) - &(&sin[k] * &sin[1]);
            let s = &(&sin[k] * &cos[1]) + &(&cos[k] * &sin[1]);
            if c != cos[k + 1] || s != sin[k + 1] {
                return Err(Error::SelfCheck(format!("angle addition fails at k = {k}")));
            }
        }
    }
    if cos[1].real_sign()? <= 0 || sin[1].real_sign()? <= 0 {
        return Err(Error::SelfCheck("wrong embedding of α".into()));
    }
    let p = cos[4].try_div(&cos[2])?;
    let two = FE::from_i64(&field, 2);
    let q = (&cos[2] - &cos[1]).try_div(&(&(&two * &cos[2]) * &cos[1]))?;
    let mut lines = Vec::with_capacity(21);
    for j in 0..7 {
        lines.push(ProjectiveLine::new([sin[2 * j].clone(), -&cos[2 * j], one.clone()])?);
    }
    for j in 0..7 {
        let k = 2 * j + 1;
        lines.push(ProjectiveLine::new([sin[k].clone(), -&cos[k], -&p])?);
    }
    for j in 0..7 {
        lines.push(ProjectiveLine::new([sin[2 * j].clone(), -&cos[2 * j], -&q])?);
    }
    Ok(GrModel { field, lines, p, q, cos, sin })
}

/// Sorts values of a real field ascending.
pub fn sort_real(v: &mut [FE]) -> Result<()> {
    let mut err = None;
    v.sort_by(|a, b| a.cmp_real(b).unwrap_or_else(|e| {
        err = Some(e);
        Ordering::Equal
    }));
    err.map_or(Ok(()), Err)
}

/// Groups points by exact squared radius; groups sorted by radius ascending.
pub fn group_by_radius(points: &[ProjectivePoint]) -> Result<Vec<(FE, Vec<ProjectivePoint>)>> {
    let mut groups: HashMap<FE, Vec<ProjectivePoint>> = HashMap::new();
    for p in points {
        groups.entry(radius2(p)?).or_default().push(p.clone());
    }
    let mut keys: Vec<FE> = groups.keys().cloned().collect();
    sort_real(&mut keys)?;
    Ok(keys.into_iter().map(|k| {
        let v = groups.remove(&k).unwrap();
        (k, v)
    }).collect())
}

/// The three quadruple-point orbits P₁, P₂, P₃ from outermost to innermost,
/// with their squared radii.
pub fn quad_orbits(m: &GrModel) -> Result<Vec<(FE, Vec<ProjectivePoint>)>> {
    let arr = m.census()?;
    let quads: Vec<ProjectivePoint> = arr.points_of_multiplicity(4).into_iter().map(|c| c.point.clone()).collect();
    let mut g = group_by_radius(&quads)?;
    g.reverse();
    if g.len() != 3 || g.iter().any(|(_, v)| v.len() != 7) {
        return Err(Error::SelfCheck("quadruple points do not form three 7-point orbits".into()));
    }
    Ok(g)
}

/// Squared incircle radii of the line orbits A, B, C.
pub fn line_orbit_distances(m: &GrModel) -> Result<Vec<FE>> {
    (0..3).map(|o| line_distance2(&m.lines[7 * o])).collect()
}

#[derive(Clone, Debug)]
pub struct DoubleOrbits {
    /// O₁₄⁽¹⁾, O₁₄⁽²⁾, O₁₄⁽³⁾ by increasing radius.
    pub orbits: Vec<Vec<ProjectivePoint>>,
    pub r2: Vec<FE>,
}

/// Double points on lines of different orbits, grouped by squared radius.
pub fn gr_double_orbits(m: &GrModel) -> Result<DoubleOrbits> {
    let arr = m.census()?;
    let cross: Vec<ProjectivePoint> = arr
        .census
        .iter()
        .filter(|c| c.multiplicity() == 2 && GrModel::orbit(c.curves[0]) != GrModel::orbit(c.curves[1]))
        .map(|c| c.point.clone())
        .collect();
    let groups = group_by_radius(&cross)?;
    if groups.len() != 3 || groups.iter().any(|(_, v)| v.len() != 14) {
        let sizes: Vec<usize> = groups.iter().map(|(_, v)| v.len()).collect();
        return Err(Error::SelfCheck(format!("cross-orbit double points group as {sizes:?}")));
    }
    let (r2, orbits) = groups.into_iter().unzip();
    Ok(DoubleOrbits { orbits, r2 })
}

/// Splits a D₇-orbit of 14 points into two C₇-orbits.
pub fn c7_halves(m: &GrModel, orbit: &[ProjectivePoint]) -> Result<(Vec<ProjectivePoint>, Vec<ProjectivePoint>)> {
    let first = orbit.first().ok_or_else(|| Error::Invalid("empty orbit".into()))?;
    let mut a = Vec::new();
    for k in 0..7 {
        let img = map_point(&m.rotation(k), first)?;
        if !orbit.contains(&img) {
            return Err(Error::SelfCheck("orbit is not rotation invariant".into()));
        }
        a.push(img);
    }
    let b: Vec<ProjectivePoint> = orbit.iter().filter(|p| !a.contains(p)).cloned().collect();
    Ok((a, b))
}

/// Orbits of a set of conics under D₇, as sorted index lists.
pub fn conic_orbits(m: &GrModel, conics: &[Conic]) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&Conic, usize> = conics.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let group = m.group();
    let mut seen = vec![false; conics.len()];
    let mut out = Vec::new();
    for i in 0..conics.len() {
        if seen[i] {
            continue;
        }
        let mut orb = Vec::new();
        for g in &group {
            let img = map_conic(g, &conics[i])?;
            let j = *index.get(&img).ok_or_else(|| Error::SelfCheck("conic set is not D₇ invariant".into()))?;
            if !seen[j] {
                seen[j] = true;
                orb.push(j);
            }
        }
        orb.sort_unstable();
        out.push(orb);
    }
    Ok(out)
}
