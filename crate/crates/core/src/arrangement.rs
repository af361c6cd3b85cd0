//! Singular-point census of line and conic arrangements, exact where the
//! field allows and clustered multiprecision otherwise. Also conic searches
//! through point sets and a few classical counts.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::{bits_for_digits, cross3, normalize3, proj_dist, roots_mp, MpComplex};
use crate::numfield::{field_from_json, field_to_json, FieldJson, FieldRef};
use crate::projplane::{conic_through_5, meet, on_conic, Conic, ProjectiveLine, ProjectivePoint};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

/// A list of lines over a number field, as exchanged on the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinesJson {
    pub field: FieldJson,
    pub lines: Vec<[Vec<String>; 3]>,
}

impl LinesJson {
    pub fn from_lines(field: &FieldRef, lines: &[ProjectiveLine]) -> Self {
        LinesJson { field: field_to_json(field), lines: lines.iter().map(|l| l.to_json()).collect() }
    }

    pub fn parse(&self) -> Result<(FieldRef, Vec<ProjectiveLine>)> {
        let field = field_from_json(&self.field)?;
        let lines = self.lines.iter().map(|l| ProjectiveLine::from_json(&field, l)).collect::<Result<_>>()?;
        Ok((field, lines))
    }
}

/// t-vector: multiplicity → number of points.
pub type TVector = BTreeMap<usize, usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct CensusPoint {
    pub point: ProjectivePoint,
    /// Sorted indices of the curves through the point.
    pub curves: Vec<usize>,
}

impl CensusPoint {
    pub fn multiplicity(&self) -> usize {
        self.curves.len()
    }
}

/// An exact line arrangement with its intersection census.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub field: FieldRef,
    pub lines: Vec<ProjectiveLine>,
    pub census: Vec<CensusPoint>,
}

fn tvector_of<I: IntoIterator<Item = usize>>(mults: I) -> TVector {
    let mut t = TVector::new();
    for m in mults {
        *t.entry(m).or_insert(0) += 1;
    }
    t
}

impl Arrangement {
    pub fn tvector(&self) -> TVector {
        tvector_of(self.census.iter().map(|c| c.multiplicity()))
    }

    pub fn t(&self, r: usize) -> usize {
        self.tvector().get(&r).copied().unwrap_or(0)
    }

    /// Census points of the given multiplicity, in census order.
    pub fn points_of_multiplicity(&self, r: usize) -> Vec<&CensusPoint> {
        self.census.iter().filter(|c| c.multiplicity() == r).collect()
    }

    pub fn find(&self, p: &ProjectivePoint) -> Option<&CensusPoint> {
        self.census.iter().find(|c| &c.point == p)
    }
}

/// Exact census of pairwise distinct lines over one field.
pub fn line_census(lines: &[ProjectiveLine]) -> Result<Arrangement> {
    let field = lines.first().ok_or_else(|| Error::Invalid("empty arrangement".into()))?.field().clone();
    let mut seen = HashSet::new();
    for l in lines {
        if l.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if !seen.insert(l) {
            return Err(Error::Invalid(format!("duplicate line {l}")));
        }
    }
    let n = lines.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let meets: Vec<ProjectivePoint> = pairs.par_iter().map(|&(i, j)| meet(&lines[i], &lines[j])).collect::<Result<_>>()?;
    let mut index: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut census: Vec<CensusPoint> = Vec::new();
    for ((i, j), p) in pairs.into_iter().zip(meets) {
        let k = *index.entry(p.clone()).or_insert_with(|| {
            census.push(CensusPoint { point: p, curves: Vec::new() });
            census.len() - 1
        });
        let c = &mut census[k].curves;
        for v in [i, j] {
            if let Err(pos) = c.binary_search(&v) {
                c.insert(pos, v);
            }
        }
    }
    Ok(Arrangement { field, lines: lines.to_vec(), census })
}

/// Σ_p (mult_p − 1)².
pub fn jacobian_degree(arr: &Arrangement) -> u64 {
    arr.census.iter().map(|c| ((c.multiplicity() - 1) as u64).pow(2)).sum()
}

/// For each line, the number of census points on it of each multiplicity.
pub fn per_curve_distribution(arr: &Arrangement) -> Vec<TVector> {
    let mut out = vec![TVector::new(); arr.lines.len()];
    for c in &arr.census {
        for &i in &c.curves {
            *out[i].entry(c.multiplicity()).or_insert(0) += 1;
        }
    }
    out
}

/// Whether a real projective line arrangement is simplicial.
///
/// All cells of a real arrangement that is not a pencil are convex polygons,
/// so `2·f₁ ≥ 3·f₂` with equality exactly when every cell is a triangle. The
/// face numbers come from the census: `f₀` points, `f₁ = Σ mult_p` edges and
/// `f₂ = 1 − f₀ + f₁` by the Euler characteristic of the real projective
/// plane.
pub fn is_simplicial(lines: &[ProjectiveLine]) -> Result<bool> {
    if lines.len() < 3 {
        return Err(Error::Invalid("need at least three lines".into()));
    }
    for l in lines {
        if !l.coords().iter().all(|c| c.is_rational() || c.field().is_real()) {
            return Err(Error::NonRealField);
        }
    }
    let arr = line_census(lines)?;
    if arr.census.len() == 1 {
        return Ok(false);
    }
    let f0 = arr.census.len() as i64;
    let f1: i64 = arr.census.iter().map(|c| c.multiplicity() as i64).sum();
    let f2 = 1 - f0 + f1;
    Ok(2 * f1 == 3 * f2)
}

/// Dual degree, nodes and cusps of the dual of a smooth plane curve of
/// degree `d`.
pub fn plucker_counts(d: u64) -> Result<(u64, u64, u64)> {
    if d < 3 {
        return Err(Error::Invalid("degree must be at least 3".into()));
    }
    Ok((d * (d - 1), d * (d - 2) * (d * d - 9) / 2, 3 * d * (d - 2)))
}

// ---------------------------------------------------------------------------
// Conic-conic elimination, generic over exact and multiprecision scalars.

/// Fixed changes of coordinates tried in turn to put intersections in
/// general position (no points at infinity, distinct x-coordinates).
const GENERIC_FRAMES: [[[i64; 3]; 3]; 5] = [
    [[1, 2, -1], [3, -1, 2], [2, 1, 3]],
    [[2, -1, 1], [1, 3, -2], [-1, 1, 4]],
    [[3, 1, 2], [-2, 1, 1], [1, -3, 2]],
    [[1, -2, 3], [2, 2, -1], [3, 1, 1]],
    [[4, 1, -1], [1, -1, 3], [2, 3, 1]],
];

fn sym_matrix<K: Scalar>(s: &[K; 6]) -> [[K; 3]; 3] {
    [
        [s[0].clone(), s[1].clone(), s[2].clone()],
        [s[1].clone(), s[3].clone(), s[4].clone()],
        [s[2].clone(), s[4].clone(), s[5].clone()],
    ]
}

/// Tᵀ·S·T as an upper triangle.
fn transform_sym<K: Scalar>(s: &[K; 6], t: &[[i64; 3]; 3]) -> [K; 6] {
    let m = sym_matrix(s);
    let zero = s[0].zero_like();
    let entry = |i: usize, j: usize| {
        let mut acc = zero.clone();
        for a in 0..3 {
            for b in 0..3 {
                let f = t[a][i] * t[b][j];
                if f != 0 {
                    acc = acc.add_ref(&m[a][b].mul_ref(&s[0].from_i64_like(f)));
                }
            }
        }
        acc
    };
    [entry(0, 0), entry(0, 1), entry(0, 2), entry(1, 1), entry(1, 2), entry(2, 2)]
}

/// Coefficients of `C(x, y, 1)` as a quadratic in y: `[a0(x), a1(x), a2]`.
fn y_quadratic<K: Scalar>(s: &[K; 6]) -> [UPoly<K>; 3] {
    let two = s[0].from_i64_like(2);
    [
        UPoly::new(vec![s[5].clone(), s[2].mul_ref(&two), s[0].clone()]),
        UPoly::new(vec![s[4].mul_ref(&two), s[1].mul_ref(&two)]),
        UPoly::new(vec![s[3].clone()]),
    ]
}

struct Eliminant<K: Scalar> {
    /// Resultant in x of degree ≤ 4.
    res: UPoly<K>,
    /// y = −num(x)/den(x) at a common root.
    num: UPoly<K>,
    den: UPoly<K>,
}

fn eliminant<K: Scalar>(s1: &[K; 6], s2: &[K; 6], frame: &[[i64; 3]; 3]) -> Eliminant<K> {
    let [a0, a1, a2] = y_quadratic(&transform_sym(s1, frame));
    let [b0, b1, b2] = y_quadratic(&transform_sym(s2, frame));
    let u = a2.mul(&b0).sub(&a0.mul(&b2));
    let v = a2.mul(&b1).sub(&a1.mul(&b2));
    let w = a1.mul(&b0).sub(&a0.mul(&b1));
    Eliminant { res: u.mul(&u).sub(&v.mul(&w)), num: u, den: v }
}

fn apply_frame<K: Scalar>(t: &[[i64; 3]; 3], p: &[K; 3]) -> [K; 3] {
    std::array::from_fn(|i| {
        let mut acc = p[0].zero_like();
        for (j, pj) in p.iter().enumerate() {
            acc = acc.add_ref(&pj.mul_ref(&pj.from_i64_like(t[i][j])));
        }
        acc
    })
}

/// Exact test that two conics meet in four distinct points.
pub fn conics_transversal(c1: &Conic, c2: &Conic) -> bool {
    if c1 == c2 {
        return false;
    }
    GENERIC_FRAMES.iter().any(|frame| {
        let e = eliminant(c1.sym(), c2.sym(), frame);
        e.res.degree() == Some(4) && e.res.is_squarefree()
    })
}

/// True iff every pair of the given conics is transversal.
pub fn transversality_check_exact(conics: &[Conic]) -> bool {
    let n = conics.len();
    (0..n).into_par_iter().all(|i| (i + 1..n).all(|j| conics_transversal(&conics[i], &conics[j])))
}

// ---------------------------------------------------------------------------
// Numeric censuses.

#[derive(Clone, Debug)]
pub struct NumericPoint {
    /// Unit-norm representative.
    pub coords: [MpComplex; 3],
    pub curves: Vec<usize>,
}

impl NumericPoint {
    pub fn multiplicity(&self) -> usize {
        self.curves.len()
    }
}

#[derive(Clone, Debug)]
pub struct NumericArrangement {
    pub digits: u32,
    pub points: Vec<NumericPoint>,
    /// Pairs of curves meeting with multiplicity > 1 somewhere.
    pub tangencies: Vec<(usize, usize)>,
}

impl NumericArrangement {
    pub fn tvector(&self) -> TVector {
        tvector_of(self.points.iter().map(|p| p.multiplicity()))
    }

    pub fn t(&self, r: usize) -> usize {
        self.tvector().get(&r).copied().unwrap_or(0)
    }
}

#[derive(Serialize)]
pub struct CensusReport {
    pub tvector: BTreeMap<String, usize>,
    pub points: Vec<CensusReportPoint>,
    pub per_curve: Vec<BTreeMap<String, usize>>,
}

#[derive(Serialize)]
pub struct CensusReportPoint {
    pub coords: [String; 3],
    pub curves: Vec<usize>,
}

fn keyed(t: &TVector) -> BTreeMap<String, usize> {
    t.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl CensusReport {
    pub fn from_exact(arr: &Arrangement) -> Self {
        CensusReport {
            tvector: keyed(&arr.tvector()),
            points: arr
                .census
                .iter()
                .map(|c| CensusReportPoint {
                    coords: [c.point.coords()[0].to_text(), c.point.coords()[1].to_text(), c.point.coords()[2].to_text()],
                    curves: c.curves.clone(),
                })
                .collect(),
            per_curve: per_curve_distribution(arr).iter().map(keyed).collect(),
        }
    }
}

/// Groups nearby projective points; distances in the gap between the merge
/// tolerance and the separation bound are treated as ambiguous.
struct Clusterer {
    digits: u32,
    merge: f64,
    separate: f64,
    points: Vec<NumericPoint>,
}

impl Clusterer {
    fn new(digits: u32) -> Self {
        Clusterer {
            digits,
            merge: 10f64.powf(-(digits as f64) / 2.0),
            separate: 10f64.powf(-(digits as f64) / 4.0),
            points: Vec::new(),
        }
    }

    fn insert(&mut self, coords: [MpComplex; 3], curves: &[usize]) -> Result<()> {
        let coords = normalize3(&coords);
        for p in self.points.iter_mut() {
            let d = proj_dist(&p.coords, &coords);
            if d < self.merge {
                for &c in curves {
                    if let Err(pos) = p.curves.binary_search(&c) {
                        p.curves.insert(pos, c);
                    }
                }
                return Ok(());
            }
            if d < self.separate {
                return Err(Error::NeedPrecision { digits: self.digits * 2, what: format!("cluster ambiguity at distance {d:.3e}") });
            }
        }
        let mut c = curves.to_vec();
        c.sort_unstable();
        c.dedup();
        self.points.push(NumericPoint { coords, curves: c });
        Ok(())
    }
}

/// Census of numeric lines (coefficient triples) clustered at `10^(−digits/2)`.
pub fn line_census_numeric(lines: &[[MpComplex; 3]], digits: u32) -> Result<NumericArrangement> {
    let n = lines.len();
    let mut cl = Clusterer::new(digits);
    let units: Vec<[MpComplex; 3]> = lines.iter().map(normalize3).collect();
    for i in 0..n {
        for j in i + 1..n {
            if proj_dist(&units[i], &units[j]) < cl.merge {
                return Err(Error::Invalid(format!("lines {i} and {j} coincide")));
            }
            cl.insert(cross3(&units[i], &units[j]), &[i, j])?;
        }
    }
    Ok(NumericArrangement { digits, points: cl.points, tangencies: Vec::new() })
}

/// Intersection points of two numeric conics, with a flag for tangency.
fn conic_pair_points(s1: &[MpComplex; 6], s2: &[MpComplex; 6], digits: u32) -> Result<(Vec<[MpComplex; 3]>, bool)> {
    let bits = bits_for_digits(digits);
    let tangent_gap = 10f64.powf(-(digits as f64) / 4.0);
    let mut last_err = Error::RootNotConverged("no usable frame".into());
    for frame in &GENERIC_FRAMES {
        let e = eliminant(s1, s2, frame);
        let scale = e.res.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max);
        if e.res.degree() != Some(4) || e.res.coeffs[4].abs_f64() < 1e-12 * scale {
            last_err = Error::Degenerate("intersection at infinity in frame".into());
            continue;
        }
        let roots = match roots_mp(&e.res.coeffs, bits) {
            Ok(r) => r,
            Err(err) => {
                last_err = err;
                continue;
            }
        };
        let mut tangent = false;
        let mut distinct: Vec<MpComplex> = Vec::new();
        for r in roots {
            let near = distinct.iter().any(|d| {
                let gap = d.sub_ref(&r).abs_f64() / (1.0 + r.abs_f64());
                gap < tangent_gap
            });
            if near {
                tangent = true;
            } else {
                distinct.push(r);
            }
        }
        let mut pts = Vec::new();
        let mut ok = true;
        for x in distinct {
            let den = e.den.eval(&x);
            let num = e.num.eval(&x);
            if den.abs_f64() < 1e-12 * (1.0 + num.abs_f64()) {
                ok = false;
                break;
            }
            let y = num.div_ref(&den).expect("nonzero").neg_ref();
            let one = x.one_like();
            pts.push(apply_frame(frame, &[x, y, one]));
        }
        if ok {
            return Ok((pts, tangent));
        }
        last_err = Error::Degenerate("shared x-coordinate in frame".into());
    }
    Err(last_err)
}

/// Census of numeric smooth conics given by upper triangles
/// `[s11, s12, s13, s22, s23, s33]`.
pub fn conic_census_numeric(conics: &[[MpComplex; 6]], digits: u32) -> Result<NumericArrangement> {
    if digits < 30 {
        return Err(Error::Invalid("conic census needs at least 30 digits".into()));
    }
    let n = conics.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<(Vec<[MpComplex; 3]>, bool)> =
        pairs.par_iter().map(|&(i, j)| conic_pair_points(&conics[i], &conics[j], digits)).collect::<Result<_>>()?;
    let mut cl = Clusterer::new(digits);
    let mut tangencies = Vec::new();
    for (&(i, j), (pts, tangent)) in pairs.iter().zip(found) {
        if tangent {
            tangencies.push((i, j));
        }
        for p in pts {
            cl.insert(p, &[i, j])?;
        }
    }
    Ok(NumericArrangement { digits, points: cl.points, tangencies })
}

/// Exact conic sym triangle lifted to multiprecision.
pub fn conic_to_mp(c: &Conic, digits: u32) -> [MpComplex; 6] {
    std::array::from_fn(|i| c.sym()[i].approx(digits))
}

// ---------------------------------------------------------------------------
// Conic search.

#[derive(Clone, Debug, PartialEq)]
pub struct ConicHit {
    pub conic: Conic,
    /// Sorted indices of all input points on the conic.
    pub points: Vec<usize>,
}

fn veronese_c64(p: &[Complex64; 3]) -> [Complex64; 6] {
    let [x, y, z] = *p;
    [x * x, x * y, x * z, y * y, y * z, z * z]
}

/// Null vector of a 5×6 complex matrix, `None` when the rank is below 5.
fn null_vector_5x6(rows: &[[Complex64; 6]; 5]) -> Option<[Complex64; 6]> {
    let mut m = *rows;
    let mut pivcol = [0usize; 5];
    let mut used = [false; 6];
    for r in 0..5 {
        // Full pivoting over the remaining rows and unused columns.
        let mut best = (0.0, 0, 0);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (c, v) in row.iter().enumerate() {
                if !used[c] && v.norm() > best.0 {
                    best = (v.norm(), i, c);
                }
            }
        }
        if best.0 < 1e-9 {
            return None;
        }
        let (_, pi, pc) = best;
        m.swap(r, pi);
        used[pc] = true;
        pivcol[r] = pc;
        let inv = 1.0 / m[r][pc];
        for v in m[r].iter_mut() {
            *v *= inv;
        }
        let pr = m[r];
        for (i, row) in m.iter_mut().enumerate() {
            if i != r {
                let f = row[pc];
                for (v, pv) in row.iter_mut().zip(pr.iter()) {
                    *v -= f * pv;
                }
            }
        }
    }
    let free = (0..6).find(|c| !used[*c])?;
    let mut out = [Complex64::new(0.0, 0.0); 6];
    out[free] = Complex64::new(1.0, 0.0);
    for r in 0..5 {
        out[pivcol[r]] = -m[r][free];
    }
    let norm = out.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    Some(out.map(|v| v / norm))
}

fn unit_c64(p: &ProjectivePoint) -> [Complex64; 3] {
    let v = p.to_c64();
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.map(|c| c / n)
}

/// Incidence masks of conics through at least `k` of the points, found in
/// double precision. Masks are not yet certified.
pub fn conic_candidates_f64(points: &[ProjectivePoint], k: usize) -> Result<Vec<u64>> {
    let n = points.len();
    if n > 64 {
        return Err(Error::Invalid("conic search supports at most 64 points".into()));
    }
    let ver: Vec<[Complex64; 6]> = points.iter().map(|p| veronese_c64(&unit_c64(p))).collect();
    let tol = 1e-9;
    let masks: HashSet<u64> = (0..n)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, a| {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        for e in d + 1..n {
                            let rows = [ver[a], ver[b], ver[c], ver[d], ver[e]];
                            let Some(cv) = null_vector_5x6(&rows) else { continue };
                            let mut mask = 0u64;
                            let mut count = 0;
                            for (i, v) in ver.iter().enumerate() {
                                let val: Complex64 = cv.iter().zip(v).map(|(x, y)| x * y).sum();
                                if val.norm() < tol {
                                    mask |= 1 << i;
                                    count += 1;
                                }
                            }
                            // Count each conic once, from its five lowest points.
                            if count >= k && lowest_five(mask) == [a, b, c, d, e] {
                                acc.insert(mask);
                            }
                        }
                    }
                }
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<u64> = masks.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn lowest_five(mut mask: u64) -> [usize; 5] {
    let mut out = [usize::MAX; 5];
    for slot in out.iter_mut() {
        if mask == 0 {
            break;
        }
        *slot = mask.trailing_zeros() as usize;
        mask &= mask - 1;
    }
    out
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Fits the conic through a candidate set exactly and recounts incidences.
fn certify(points: &[ProjectivePoint], mask: u64) -> Option<ConicHit> {
    let idx = mask_indices(mask);
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            for c in b + 1..idx.len() {
                for d in c + 1..idx.len() {
                    for e in d + 1..idx.len() {
                        let five: Vec<ProjectivePoint> = [a, b, c, d, e].iter().map(|&t| points[idx[t]].clone()).collect();
                        if let Ok(conic) = conic_through_5(&five) {
                            let on: Vec<usize> = (0..points.len()).filter(|&i| on_conic(&points[i], &conic)).collect();
                            return Some(ConicHit { conic, points: on });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Smooth conics through at least `k` of the points, certified exactly.
///
/// Line pairs are excluded. Results are sorted by incidence set, so the
/// output does not depend on enumeration order.
pub fn conic_search_exact(points: &[ProjectivePoint], k: usize) -> Result<Vec<ConicHit>> {
    if points.len() < 5 || k < 5 {
        return Err(Error::Invalid("conic search needs at least five points and k ≥ 5".into()));
    }
    let masks = conic_candidates_f64(points, k)?;
    let hits: Vec<ConicHit> = masks.par_iter().filter_map(|&m| certify(points, m)).collect();
    let mut seen = HashSet::new();
    let mut out: Vec<ConicHit> =
        hits.into_iter().filter(|h| h.points.len() >= k && h.conic.is_smooth() && seen.insert(h.conic.clone())).collect();
    out.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;

    fn lines(field: &FieldRef, v: &[[i64; 3]]) -> Vec<ProjectiveLine> {
        v.iter().map(|c| ProjectiveLine::from_i64(field, *c).unwrap()).collect()
    }

    #[test]
    fn generic_triangle() {
        let f = NumberField::rationals();
        let arr = line_census(&lines(&f, &[[1, 0, 0], [0, 1, 0], [1, 1, 1]])).unwrap();
        assert_eq!(arr.tvector(), TVector::from([(2, 3)]));
        assert_eq!(jacobian_degree(&arr), 3);
        assert!(per_curve_distribution(&arr).iter().all(|d| d == &TVector::from([(2, 2)])));
    }

    #[test]
    fn simplicial_small_cases() {
        let f = NumberField::rationals();
        assert!(is_simplicial(&lines(&f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap());
        assert!(!is_simplicial(&lines(&f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 5]])).unwrap());
        // Near pencil: three concurrent lines plus one more is simplicial.
        assert!(is_simplicial(&lines(&f, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])).unwrap());
    }

    #[test]
    fn plucker() {
        assert_eq!(plucker_counts(4).unwrap(), (12, 28, 24));
        assert_eq!(plucker_counts(3).unwrap(), (6, 0, 9));
        assert!(plucker_counts(2).is_err());
    }
}
