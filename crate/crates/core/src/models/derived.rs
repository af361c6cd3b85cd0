//! Point-line configurations derived from the Grünbaum–Rigby realization.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gr::{c7_halves, gr_double_orbits, line_orbit_distances, quad_orbits, sort_real, GrModel};
use crate::error::{Error, Result};
use crate::incidence::{census_type, IncidenceJson, IncidenceStructure, TypeSignature};
use crate::numfield::{field_from_json, field_to_json, FieldElement, FieldJson};
use crate::projplane::{
    incident, join, midcircle_condition, on_conic, pole, polar, Circle, Conic, ProjectiveLine, ProjectivePoint,
};

type FE = FieldElement;

/// Points with lines or conics as blocks, and the exact incidence structure.
#[derive(Clone, Debug)]
pub struct DerivedConfig {
    pub tag: String,
    pub points: Vec<ProjectivePoint>,
    pub lines: Vec<ProjectiveLine>,
    pub conics: Vec<Conic>,
    pub structure: IncidenceStructure,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedConfigJson {
    pub tag: String,
    #[serde(rename = "type")]
    pub type_signature: String,
    pub field: FieldJson,
    pub points: Vec<[Vec<String>; 3]>,
    pub lines: Vec<[Vec<String>; 3]>,
    pub conics: Vec<Vec<Vec<String>>>,
    pub incidence: IncidenceJson,
}

impl DerivedConfig {
    pub fn from_lines(tag: &str, points: Vec<ProjectivePoint>, lines: Vec<ProjectiveLine>) -> Result<Self> {
        let blocks = lines.iter().map(|l| (0..points.len()).filter(|&i| incident(&points[i], l)).collect()).collect();
        let structure = IncidenceStructure::new(points.len(), blocks)?;
        Ok(DerivedConfig { tag: tag.into(), points, lines, conics: Vec::new(), structure })
    }

    pub fn from_conics(tag: &str, points: Vec<ProjectivePoint>, conics: Vec<Conic>) -> Result<Self> {
        let blocks = conics.iter().map(|c| (0..points.len()).filter(|&i| on_conic(&points[i], c)).collect()).collect();
        let structure = IncidenceStructure::new(points.len(), blocks)?;
        Ok(DerivedConfig { tag: tag.into(), points, lines: Vec::new(), conics, structure })
    }

    pub fn signature(&self) -> TypeSignature {
        census_type(&self.structure)
    }

    pub fn to_json(&self) -> DerivedConfigJson {
        let field = self.points.first().map(|p| p.field().clone());
        DerivedConfigJson {
            tag: self.tag.clone(),
            type_signature: self.signature().to_string(),
            field: field.map(|f| field_to_json(&f)).unwrap_or_else(|| field_to_json(&crate::numfield::NumberField::rationals())),
            points: self.points.iter().map(|p| p.to_json()).collect(),
            lines: self.lines.iter().map(|l| l.to_json()).collect(),
            conics: self.conics.iter().map(|c| c.to_json()).collect(),
            incidence: self.structure.to_json(),
        }
    }

    /// Rebuilds a configuration; incidences are recomputed and must match the
    /// stored ones.
    pub fn from_json(j: &DerivedConfigJson) -> Result<Self> {
        let field = field_from_json(&j.field)?;
        let points = j.points.iter().map(|p| ProjectivePoint::from_json(&field, p)).collect::<Result<Vec<_>>>()?;
        let lines = j.lines.iter().map(|l| ProjectiveLine::from_json(&field, l)).collect::<Result<Vec<_>>>()?;
        let conics = j.conics.iter().map(|c| Conic::from_json(&field, c)).collect::<Result<Vec<_>>>()?;
        let cfg = match (lines.is_empty(), conics.is_empty()) {
            (_, true) => Self::from_lines(&j.tag, points, lines)?,
            (true, false) => Self::from_conics(&j.tag, points, conics)?,
            (false, false) => return Err(Error::Invalid("a configuration has lines or conics, not both".into())),
        };
        if cfg.structure != IncidenceStructure::from_json(&j.incidence)? {
            return Err(Error::Invalid("stored incidences disagree with the coordinates".into()));
        }
        Ok(cfg)
    }
}

fn unit(v: [Complex64; 3]) -> [Complex64; 3] {
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.map(|c| c / n)
}

fn cross_c(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Lines through at least `k` of the points with their full point sets,
/// prefiltered in double precision and certified exactly.
pub fn collinear_ktuples(points: &[ProjectivePoint], k: usize) -> Result<Vec<(ProjectiveLine, Vec<usize>)>> {
    if k < 3 {
        return Err(Error::Invalid("k must be at least 3".into()));
    }
    let approx: Vec<[Complex64; 3]> = points.iter().map(|p| unit(p.to_c64())).collect();
    let n = points.len();
    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let l = cross_c(&approx[i], &approx[j]);
            let norm = l.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-12 {
                continue;
            }
            let on: Vec<usize> = (0..n)
                .filter(|&t| (l[0] * approx[t][0] + l[1] * approx[t][1] + l[2] * approx[t][2]).norm() < 1e-9 * norm)
                .collect();
            if on.len() >= k && on[0] == i && on[1] == j {
                candidates.insert(on);
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for c in candidates {
        let l = join(&points[c[0]], &points[c[1]])?;
        let on: Vec<usize> = (0..n).filter(|&t| incident(&points[t], &l)).collect();
        if on.len() >= k && seen.insert(on.clone()) {
            out.push((l, on));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// Orbit pairs `(1,2)`, `(2,3)`, `(1,3)` by their 1-based labels.
pub fn parse_pair(text: &str) -> Result<(usize, usize)> {
    match text {
        "12" => Ok((1, 2)),
        "23" => Ok((2, 3)),
        "13" => Ok((1, 3)),
        _ => Err(Error::Invalid(format!("pair must be 12, 23 or 13, found {text:?}"))),
    }
}

/// GR_dij(28₃,21₄): the 28 double points of two orbits and the lines through
/// four of them.
pub fn gr_d28(m: &GrModel, pair: (usize, usize)) -> Result<DerivedConfig> {
    let d = gr_double_orbits(m)?;
    let mut points = d.orbits[pair.0 - 1].clone();
    points.extend(d.orbits[pair.1 - 1].iter().cloned());
    let lines: Vec<ProjectiveLine> = collinear_ktuples(&points, 4)?.into_iter().map(|(l, _)| l).collect();
    DerivedConfig::from_lines(&format!("GR_d{}{}(28_3,21_4)", pair.0, pair.1), points, lines)
}

fn affine_xy(p: &ProjectivePoint) -> Option<(FE, FE)> {
    let c = p.coords();
    let w = c[2].inv().ok()?;
    Some((&c[0] * &w, &c[1] * &w))
}

#[derive(Clone, Debug)]
pub struct IncidenceSum {
    pub config: DerivedConfig,
    pub reciprocal: DerivedConfig,
    pub circle: Circle,
    pub self_reciprocal: bool,
    /// Distinct positive candidate radii examined, ascending.
    pub candidates: usize,
    /// All candidate squared radii that give a (49₄), ascending.
    pub valid_radii: Vec<FE>,
}

/// Self-reciprocity: the polar of every point is a block line and the pole of
/// every line is a point.
pub fn is_self_reciprocal(points: &[ProjectivePoint], lines: &[ProjectiveLine], circle: &Circle) -> Result<bool> {
    let c = circle.to_conic()?;
    for p in points {
        if !lines.contains(&polar(p, &c)?) {
            return Ok(false);
        }
    }
    for l in lines {
        if !points.contains(&pole(l, &c)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn union_with_reciprocal(cfg: &DerivedConfig, r2: &FE) -> Result<(DerivedConfig, DerivedConfig, Circle)> {
    let circle = Circle::centered(r2.clone());
    let conic = circle.to_conic()?;
    let new_lines: Vec<ProjectiveLine> = cfg.points.iter().map(|p| polar(p, &conic)).collect::<Result<_>>()?;
    let new_points: Vec<ProjectivePoint> = cfg.lines.iter().map(|l| pole(l, &conic)).collect::<Result<_>>()?;
    let recip = DerivedConfig::from_lines(&format!("{}^recip", cfg.tag), new_points.clone(), new_lines.clone())?;
    let mut points = cfg.points.clone();
    points.extend(new_points);
    let mut lines = cfg.lines.clone();
    lines.extend(new_lines);
    let tag = cfg.tag.replace("(28_3,21_4)", "(49_4)");
    Ok((DerivedConfig::from_lines(&tag, points, lines)?, recip, circle))
}

/// Solves for the circle of reciprocity turning GR_dij(28₃,21₄) and its
/// reciprocal into a (49₄) incidence sum.
///
/// A point Q lies on the polar of P with respect to the circle of squared
/// radius k² about the origin iff `P·Q = k²` in affine coordinates, so each
/// pair of points fixes one candidate. Candidates are screened numerically
/// and the survivors verified exactly; the smallest valid radius is used.
pub fn incidence_sum_49(cfg: &DerivedConfig) -> Result<IncidenceSum> {
    let xy: Vec<(FE, FE)> =
        cfg.points.iter().map(|p| affine_xy(p).ok_or_else(|| Error::Invalid("point at infinity".into()))).collect::<Result<_>>()?;
    let mut cands: Vec<FE> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..xy.len() {
        for j in i + 1..xy.len() {
            let d = &(&xy[i].0 * &xy[j].0) + &(&xy[i].1 * &xy[j].1);
            if d.real_sign()? > 0 && seen.insert(d.clone()) {
                cands.push(d);
            }
        }
    }
    sort_real(&mut cands)?;
    let approx: Vec<(f64, f64)> = xy.iter().map(|(x, y)| (x.to_f64(), y.to_f64())).collect();
    let mut found: Option<(DerivedConfig, DerivedConfig, Circle)> = None;
    let mut valid = Vec::new();
    for k2 in &cands {
        // Every point must pair with exactly one other point.
        let k2f = k2.to_f64();
        let screen = approx.iter().enumerate().all(|(i, a)| {
            approx.iter().enumerate().filter(|(j, b)| *j != i && (a.0 * b.0 + a.1 * b.1 - k2f).abs() < 1e-9).count() == 1
        });
        if !screen {
            continue;
        }
        let (u, r, c) = union_with_reciprocal(cfg, k2)?;
        if u.signature().is(49, 4, 49, 4) {
            valid.push(k2.clone());
            if found.is_none() {
                found = Some((u, r, c));
            }
        }
    }
    let (config, reciprocal, circle) = found.ok_or_else(|| Error::NoSolution("no circle gives a (49_4) incidence sum".into()))?;
    let self_reciprocal = is_self_reciprocal(&config.points, &config.lines, &circle)?;
    Ok(IncidenceSum { config, reciprocal, circle, self_reciprocal, candidates: cands.len(), valid_radii: valid })
}

/// (42₄, 28₆): halved double orbits plus the quadruple points.
pub fn half_orbit_42_config(m: &GrModel) -> Result<([u8; 3], DerivedConfig)> {
    let d = gr_double_orbits(m)?;
    let quads: Vec<ProjectivePoint> = quad_orbits(m)?.into_iter().flat_map(|(_, v)| v).collect();
    let halves: Vec<(Vec<ProjectivePoint>, Vec<ProjectivePoint>)> =
        d.orbits.iter().map(|o| c7_halves(m, o)).collect::<Result<_>>()?;
    for bits in 0..8u8 {
        let choice = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
        let mut points = quads.clone();
        for (h, &c) in halves.iter().zip(&choice) {
            points.extend(if c == 0 { h.0.clone() } else { h.1.clone() });
        }
        let lines: Vec<ProjectiveLine> = collinear_ktuples(&points, 6)?.into_iter().map(|(l, _)| l).collect();
        if lines.len() != 28 {
            continue;
        }
        let cfg = DerivedConfig::from_lines("GR(42_4,28_6)", points, lines)?;
        if cfg.signature().is(42, 4, 28, 6) {
            return Ok((choice, cfg));
        }
    }
    Err(Error::NoSolution("no halving of the double orbits gives (42_4,28_6)".into()))
}

#[derive(Clone, Debug)]
pub struct SubConfig {
    pub name: String,
    pub line_orbit: usize,
    /// 1-based quadruple-point orbits, outer first.
    pub point_orbits: (usize, usize),
    /// `m` of the star heptagon {7/m} traced by the outer point orbit.
    pub star: usize,
    pub config: DerivedConfig,
}

/// The three (14₂, 7₄) substructures, one per line orbit.
pub fn subconfigs_14_2_7_4(m: &GrModel) -> Result<Vec<SubConfig>> {
    let orbits = quad_orbits(m)?;
    let which = |p: &ProjectivePoint| orbits.iter().position(|(_, v)| v.contains(p)).expect("quadruple point");
    let mut out = Vec::new();
    for o in 0..3 {
        let lines: Vec<ProjectiveLine> = m.lines[7 * o..7 * o + 7].to_vec();
        let mut pts: Vec<(usize, ProjectivePoint)> = Vec::new();
        for (_, orbit) in &orbits {
            for p in orbit {
                if lines.iter().filter(|l| incident(p, l)).count() == 2 {
                    pts.push((which(p), p.clone()));
                }
            }
        }
        let mut ids: Vec<usize> = pts.iter().map(|(i, _)| *i).collect();
        ids.dedup();
        if ids.len() != 2 {
            return Err(Error::SelfCheck(format!("line orbit {o} meets {} point orbits", ids.len())));
        }
        let outer = pts.iter().find(|(i, _)| *i == ids[0]).map(|(_, p)| p.clone()).unwrap();
        let through: Vec<usize> = (0..7).filter(|&j| incident(&outer, &lines[j])).collect();
        let d = (through[1] - through[0]) % 7;
        let star = d.min(7 - d);
        let name = format!("S{}{}", ids[0] + 1, ids[1] + 1);
        let config = DerivedConfig::from_lines(&format!("{name}(14_2,7_4)"), pts.into_iter().map(|(_, p)| p).collect(), lines)?;
        out.push(SubConfig { name, line_orbit: o, point_orbits: (ids[0] + 1, ids[1] + 1), star, config });
    }
    out.sort_by(|a, b| a.point_orbits.cmp(&b.point_orbits));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MidcircleReport {
    /// (point orbit, line orbit) pairs: outermost with innermost, and so on.
    pub pairs: Vec<(usize, char)>,
    /// R²·ρ² for each pair, as f64.
    pub products: Vec<f64>,
    pub all_equal: bool,
}

/// Midcircles of the three circumcircle/incircle pairs of GR coincide.
pub fn gr_midcircles(m: &GrModel) -> Result<MidcircleReport> {
    let orbits = quad_orbits(m)?;
    let r2: Vec<FE> = orbits.iter().map(|(r, _)| r.clone()).collect();
    let rho2 = line_orbit_distances(m)?;
    // Line orbits ordered innermost first.
    let mut order: Vec<usize> = (0..3).collect();
    let mut err = None;
    order.sort_by(|&a, &b| rho2[a].cmp_real(&rho2[b]).unwrap_or_else(|e| {
        err = Some(e);
        std::cmp::Ordering::Equal
    }));
    if let Some(e) = err {
        return Err(e);
    }
    let pairs: Vec<(usize, usize)> = (0..3).map(|i| (i, order[i])).collect();
    let mut all_equal = true;
    for w in pairs.windows(2) {
        let (a, b) = (w[0], w[1]);
        all_equal &= midcircle_condition(&r2[a.0], &rho2[a.1], &r2[b.0], &rho2[b.1])?;
    }
    Ok(MidcircleReport {
        pairs: pairs.iter().map(|&(p, l)| (p + 1, super::gr::ORBIT_NAMES[l])).collect(),
        products: pairs.iter().map(|&(p, l)| (&r2[p] * &rho2[l]).to_f64()).collect(),
        all_equal,
    })
}

/// The circle Γ of perfect self-reciprocity of GR: k⁴ = R²ρ², with k² read off
/// a quadruple point and the line it is the pole of.
pub fn gr_reciprocity_circle(m: &GrModel) -> Result<Option<Circle>> {
    let arr = m.census()?;
    let quads: Vec<ProjectivePoint> = arr.points_of_multiplicity(4).into_iter().map(|c| c.point.clone()).collect();
    for p in &quads {
        let (x, y) = affine_xy(p).ok_or_else(|| Error::Invalid("point at infinity".into()))?;
        for l in &m.lines {
            let c = l.coords();
            // Parallel direction: (x, y) ∥ (a, b).
            if !(&(&x * &c[1]) - &(&y * &c[0])).is_zero() {
                continue;
            }
            let n = &(&c[0] * &c[0]) + &(&c[1] * &c[1]);
            let k2 = -&(&c[2] * &(&(&x * &c[0]) + &(&y * &c[1]))).try_div(&n)?;
            if k2.real_sign()? <= 0 {
                continue;
            }
            let circle = Circle::centered(k2);
            if is_self_reciprocal(&quads, &m.lines, &circle)? {
                return Ok(Some(circle));
            }
        }
    }
    Ok(None)
}
