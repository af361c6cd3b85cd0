//! Point-conic configurations circumscribed on point sets of the GR family.

use itertools::Itertools;

use super::derived::{gr_d28, incidence_sum_49, DerivedConfig};
use super::gr::{conic_orbits, quad_orbits, GrModel};
use crate::arrangement::conic_search_exact;
use crate::error::Result;
use crate::incidence::{census_type, resolvable, IncidenceStructure, TypeSignature};
use crate::projplane::{conic_classify, Conic, ConicClass, ProjectivePoint};

/// One D₇-orbit of conics.
#[derive(Clone, Debug)]
pub struct ConicOrbit {
    pub conics: Vec<usize>,
    pub ellipses: usize,
    pub hyperbolas: usize,
    pub parabolas: usize,
    /// Points met by some conic of the orbit.
    pub covered: Vec<usize>,
    /// Common number of orbit conics through each covered point, if constant.
    pub point_degree: Option<usize>,
}

impl ConicOrbit {
    pub fn kind(&self) -> &'static str {
        match (self.ellipses > 0, self.hyperbolas > 0, self.parabolas > 0) {
            (true, false, false) => "ellipses",
            (false, true, false) => "hyperbolas",
            (false, false, true) => "parabolas",
            _ => "mixed",
        }
    }
}

/// Conics through exactly `k` points of a set, grouped into D₇-orbits.
#[derive(Clone, Debug)]
pub struct ConicFamily {
    pub points: Vec<ProjectivePoint>,
    pub k: usize,
    pub conics: Vec<Conic>,
    pub incidences: Vec<Vec<usize>>,
    /// Conics through more than `k` points, left out of the family.
    pub excluded: Vec<(Conic, usize)>,
    pub orbits: Vec<ConicOrbit>,
}

impl ConicFamily {
    pub fn search(m: &GrModel, points: Vec<ProjectivePoint>, k: usize) -> Result<Self> {
        let hits = conic_search_exact(&points, k)?;
        let mut conics = Vec::new();
        let mut incidences = Vec::new();
        let mut excluded = Vec::new();
        for h in hits {
            if h.points.len() == k {
                conics.push(h.conic);
                incidences.push(h.points);
            } else {
                excluded.push((h.conic, h.points.len()));
            }
        }
        let classes: Vec<ConicClass> = conics.iter().map(conic_classify).collect::<Result<_>>()?;
        let orbits = conic_orbits(m, &conics)?
            .into_iter()
            .map(|o| {
                let count = |c: ConicClass| o.iter().filter(|&&i| classes[i] == c).count();
                let mut degree = vec![0usize; points.len()];
                for &i in &o {
                    for &p in &incidences[i] {
                        degree[p] += 1;
                    }
                }
                let covered: Vec<usize> = (0..points.len()).filter(|&p| degree[p] > 0).collect();
                let point_degree = covered.first().map(|&p| degree[p]).filter(|&d| covered.iter().all(|&p| degree[p] == d));
                ConicOrbit {
                    ellipses: count(ConicClass::SmoothEllipse),
                    hyperbolas: count(ConicClass::SmoothHyperbola),
                    parabolas: count(ConicClass::SmoothParabola),
                    conics: o,
                    covered,
                    point_degree,
                }
            })
            .collect();
        Ok(ConicFamily { points, k, conics, incidences, excluded, orbits })
    }

    fn blocks(&self, orbits: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = orbits.iter().flat_map(|&o| self.orbits[o].conics.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn structure(&self) -> Result<IncidenceStructure> {
        IncidenceStructure::new(self.points.len(), self.incidences.clone())
    }

    /// Configuration on all points formed by the conics of some orbits.
    pub fn config(&self, tag: &str, orbits: &[usize]) -> Result<DerivedConfig> {
        let conics = self.blocks(orbits).into_iter().map(|i| self.conics[i].clone()).collect();
        DerivedConfig::from_conics(tag, self.points.clone(), conics)
    }

    /// Orbit selections of size `r` in which every point lies on `degree` conics.
    pub fn balanced_selections(&self, r: usize, degree: usize) -> Vec<Vec<usize>> {
        (0..self.orbits.len())
            .combinations(r)
            .filter(|sel| {
                let mut d = vec![0usize; self.points.len()];
                for i in self.blocks(sel) {
                    for &p in &self.incidences[i] {
                        d[p] += 1;
                    }
                }
                d.iter().all(|&x| x == degree)
            })
            .collect()
    }

    /// Orbits of 7 conics covering 28 points twice, i.e. (28₂, 7₈) pieces.
    pub fn two_fold_orbits(&self) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&o| {
                let orb = &self.orbits[o];
                orb.conics.len() == 7 && orb.covered.len() == 28 && orb.point_degree == Some(2)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Config21 {
    pub orbits: Vec<usize>,
    pub config: DerivedConfig,
    /// Resolution into 7 classes, if one exists.
    pub resolution: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct Config28 {
    pub config: DerivedConfig,
    /// Orbits forming (28₂, 7₈) pieces.
    pub two_fold: Vec<usize>,
    /// Type after deleting each orbit in turn.
    pub deletions: Vec<(usize, TypeSignature)>,
}

#[derive(Clone, Debug)]
pub struct Config49 {
    /// Squared radius of the circle of reciprocity used for the 49 points.
    pub r2: f64,
    /// Orbit selections of 49 conics with every point on 8 of them.
    pub selections: Vec<Vec<usize>>,
    pub config: Option<DerivedConfig>,
    pub two_fold: Vec<usize>,
    /// Two (28₂, 7₈) orbits on the same 28 points, restricted to those points.
    pub sub_28_4_14_8: Option<(Vec<usize>, IncidenceStructure)>,
}

#[derive(Clone, Debug)]
pub struct PointConicCatalog {
    pub quad: ConicFamily,
    pub configs21: Vec<Config21>,
    pub d28: ConicFamily,
    pub config28: Config28,
    pub d49: ConicFamily,
    pub config49: Config49,
}

/// The two (21₇) configurations on the 21 quadruple points.
pub fn catalog_21(m: &GrModel) -> Result<(ConicFamily, Vec<Config21>)> {
    let points: Vec<ProjectivePoint> = quad_orbits(m)?.into_iter().flat_map(|(_, v)| v).collect();
    let fam = ConicFamily::search(m, points, 7)?;
    let mut out = Vec::new();
    for r in 1..=3 {
        for sel in fam.balanced_selections(r, 7) {
            if fam.blocks(&sel).len() != 21 {
                continue;
            }
            let config = fam.config("GR(21_7)", &sel)?;
            let resolution = resolvable(&config.structure, 7);
            out.push(Config21 { orbits: sel, config, resolution });
        }
    }
    Ok((fam, out))
}

/// (28₈) on the points of GR_d12(28₃, 21₄) with its orbit deletions.
pub fn catalog_28(m: &GrModel, pair: (usize, usize)) -> Result<(ConicFamily, Config28)> {
    let base = gr_d28(m, pair)?;
    let fam = ConicFamily::search(m, base.points, 8)?;
    let all: Vec<usize> = (0..fam.orbits.len()).collect();
    let config = fam.config(&format!("GR_d{}{}(28_8)", pair.0, pair.1), &all)?;
    let mut deletions = Vec::new();
    for o in 0..fam.orbits.len() {
        let keep: Vec<usize> = all.iter().copied().filter(|&x| x != o).collect();
        let s = IncidenceStructure::new(fam.points.len(), fam.blocks(&keep).into_iter().map(|i| fam.incidences[i].clone()).collect())?;
        deletions.push((o, census_type(&s)));
    }
    let two_fold = fam.two_fold_orbits();
    Ok((fam, Config28 { config, two_fold, deletions }))
}

/// (49₈) search on the points of GR_dij(49₄).
pub fn catalog_49(m: &GrModel, pair: (usize, usize)) -> Result<(ConicFamily, Config49)> {
    let sum = incidence_sum_49(&gr_d28(m, pair)?)?;
    let fam = ConicFamily::search(m, sum.config.points.clone(), 8)?;
    let selections = fam.balanced_selections(7, 8);
    let config = match selections.first() {
        Some(sel) => Some(fam.config(&format!("GR_d{}{}(49_8)", pair.0, pair.1), sel)?),
        None => None,
    };
    let two_fold = fam.two_fold_orbits();
    let mut sub = None;
    'outer: for (i, &a) in two_fold.iter().enumerate() {
        for &b in &two_fold[i + 1..] {
            if fam.orbits[a].covered == fam.orbits[b].covered {
                let pts = &fam.orbits[a].covered;
                let blocks: Vec<Vec<usize>> = fam
                    .blocks(&[a, b])
                    .into_iter()
                    .map(|c| fam.incidences[c].iter().map(|p| pts.binary_search(p).expect("covered point")).collect())
                    .collect();
                sub = Some((vec![a, b], IncidenceStructure::new(pts.len(), blocks)?));
                break 'outer;
            }
        }
    }
    let r2 = sum.circle.r2.to_f64();
    Ok((fam, Config49 { r2, selections, config, two_fold, sub_28_4_14_8: sub }))
}

pub fn point_conic_configs(m: &GrModel) -> Result<PointConicCatalog> {
    let (quad, configs21) = catalog_21(m)?;
    let (d28, config28) = catalog_28(m, (1, 2))?;
    let (d49, config49) = catalog_49(m, (1, 2))?;
    Ok(PointConicCatalog { quad, configs21, d28, config28, d49, config49 })
}
