//! Numeric line extraction and polar splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{KleinInvariants, QForm};
use crate::arrangement::{conic_census_numeric, line_census_numeric, NumericArrangement};
use crate::error::{Error, Result};
use crate::mp::{bits_for_digits, cross3, normalize3, proj_dist, roots_mp, MpComplex};
use crate::polyalg::{PolyMap, TernaryForm};
use crate::rational::q;
use crate::scalar::Scalar;

pub type MpForm = TernaryForm<MpComplex>;
pub type MpPoint = [MpComplex; 3];

/// Point pairs spanning the slicing lines; the first usable ones win.
const SLICES: [([i64; 3], [i64; 3]); 6] = [
    ([3, -7, 11], [5, 2, -13]),
    ([-4, 9, 7], [11, 6, 5]),
    ([2, -3, 17], [13, -5, 3]),
    ([7, 4, -9], [-6, 13, 2]),
    ([1, 8, 3], [9, -2, -7]),
    ([12, -11, 5], [4, 3, 10]),
];

pub fn to_mp(f: &QForm, digits: u32) -> MpForm {
    let bits = bits_for_digits(digits);
    f.map_coeffs(|c| MpComplex::from_q(c, bits))
}

/// Sum of coefficient magnitudes, an upper bound for |f| at unit vectors.
fn coeff_norm(f: &MpForm) -> f64 {
    f.terms().values().map(|c| c.abs_f64()).sum()
}

/// |f(p)| at the unit representative of p, relative to the coefficient norm.
pub fn relative_value(f: &MpForm, p: &MpPoint) -> f64 {
    f.eval(&normalize3(p)).abs_f64() / coeff_norm(f).max(f64::MIN_POSITIVE)
}

/// Points `s·A + B` where the form meets the line through A and B.
fn slice_points(f: &QForm, (a, b): ([i64; 3], [i64; 3]), digits: u32) -> Result<Vec<MpPoint>> {
    let bits = bits_for_digits(digits);
    let (p1, p2) = (a.map(q), b.map(q));
    let map = PolyMap::new(std::array::from_fn(|i| QForm::linear(&[p1[i].clone(), p2[i].clone(), q(0)])))?;
    let b = f.compose(&map).restrict_to_line(&[q(0), q(0), q(1)])?;
    if b.is_zero() || b.roots_at_infinity() > 0 || !b.is_squarefree() {
        return Err(Error::Degenerate("slice meets the curve non-generically".into()));
    }
    let coeffs: Vec<MpComplex> = b.coeffs.iter().map(|c| MpComplex::from_q(c, bits)).collect();
    let roots = roots_mp(&coeffs, bits)?;
    Ok(roots
        .into_iter()
        .map(|s| {
            std::array::from_fn(|i| s.mul_ref(&MpComplex::from_q(&p1[i], bits)).add_ref(&MpComplex::from_q(&p2[i], bits)))
        })
        .collect())
}

/// The lines of a form that splits into distinct linear factors.
///
/// Two generic rational lines cut the curve in `d` points each; a join of one
/// point from each slice is a component iff the form vanishes at further
/// points of the join.
pub fn extract_lines_numeric(f: &QForm, digits: u32) -> Result<Vec<MpPoint>> {
    if digits < 30 {
        return Err(Error::Invalid("line extraction needs at least 30 digits".into()));
    }
    let bits = bits_for_digits(digits);
    let fm = to_mp(f, digits);
    let tol = 10f64.powf(4.0 - digits as f64);
    let mut slices = Vec::new();
    for s in SLICES {
        if let Ok(p) = slice_points(f, s, digits) {
            slices.push(p);
            if slices.len() == 2 {
                break;
            }
        }
    }
    if slices.len() < 2 {
        return Err(Error::Degenerate("no generic slices found".into()));
    }
    let (a, b) = (&slices[0], &slices[1]);
    let c1 = MpComplex::from_f64(0.6180339887, 0.2718281828, bits);
    let c2 = MpComplex::from_f64(-1.4142135623, 0.5772156649, bits);
    let along = |p: &MpPoint, q: &MpPoint, c: &MpComplex| -> MpPoint {
        let (p, q) = (normalize3(p), normalize3(q));
        std::array::from_fn(|i| p[i].add_ref(&c.mul_ref(&q[i])))
    };
    let found: Vec<Vec<MpPoint>> = a
        .par_iter()
        .map(|p| {
            b.iter()
                .filter(|q| relative_value(&fm, &along(p, q, &c1)) < tol && relative_value(&fm, &along(p, q, &c2)) < tol)
                .map(|q| normalize3(&cross3(p, q)))
                .collect()
        })
        .collect();
    let lines: Vec<MpPoint> = found.into_iter().flatten().collect();
    let sep = 10f64.powf(-(digits as f64) / 2.0);
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if proj_dist(&lines[i], &lines[j]) < sep {
                return Err(Error::NeedPrecision { digits: digits * 2, what: format!("candidate lines {i} and {j} coincide") });
            }
        }
    }
    if lines.len() != f.degree() as usize {
        return Err(Error::NoSolution(format!("found {} of {} lines", lines.len(), f.degree())));
    }
    Ok(lines)
}

/// A point of the line `l` in general position, indexed by `k`.
pub fn point_on_line(l: &MpPoint, k: usize) -> MpPoint {
    let bits = l[0].bits();
    let r = [[0.3, 1.7, -0.9], [1.1, -0.4, 0.8], [-2.3, 0.6, 1.9], [0.7, 2.9, -1.3], [1.6, -2.2, 0.35]][k % 5];
    let v: MpPoint = std::array::from_fn(|i| MpComplex::from_f64(r[i], 0.1 * (i as f64 + 1.0), bits));
    cross3(l, &v)
}

/// Maximum relative value of `f` over `samples` general points of each line.
pub fn max_residual_on_lines(f: &QForm, lines: &[MpPoint], samples: usize, digits: u32) -> f64 {
    let fm = to_mp(f, digits);
    lines.iter().flat_map(|l| (0..samples).map(move |k| point_on_line(l, k))).map(|p| relative_value(&fm, &p)).fold(0.0, f64::max)
}

/// One reducible polar: `line_index` into the line list and the conic factor
/// as upper triangle `[s11, s12, s13, s22, s23, s33]`.
#[derive(Clone, Debug)]
pub struct PolarSplit {
    pub line_index: usize,
    pub conic: [MpComplex; 6],
    /// Relative remainder of the division by the chosen line.
    pub residual: f64,
    /// Distinct points where the line meets the conic.
    pub nodes: usize,
}

/// Polar cubic `p₁∂ₓf + p₂∂ᵧf + p₃∂_zf`.
pub fn polar_form(f: &MpForm, p: &MpPoint) -> MpForm {
    let g = f.gradient();
    g.0[0].scale(&p[0]).add(&g.0[1].scale(&p[1])).add(&g.0[2].scale(&p[2]))
}

fn form_norm(f: &MpForm) -> f64 {
    f.terms().values().map(|c| c.abs_f64()).fold(0.0, f64::max)
}

/// Divides `f` by the linear form `l`, permuting variables so the largest
/// coefficient of `l` leads. Returns the quotient and relative remainder.
pub fn divide_by_line(f: &MpForm, l: &MpPoint) -> Result<(MpForm, f64)> {
    let mags: Vec<f64> = l.iter().map(|c| c.abs_f64()).collect();
    let lead = (0..3).max_by(|&a, &b| mags[a].total_cmp(&mags[b])).unwrap();
    let perm: [usize; 3] = match lead {
        0 => [0, 1, 2],
        1 => [1, 0, 2],
        _ => [2, 1, 0],
    };
    let lf = MpForm::linear(l).permute(perm);
    let (quot, rem) = f.permute(perm).div_rem(&lf)?;
    // The permutations used are involutions.
    Ok((quot.permute(perm), form_norm(&rem) / form_norm(f).max(f64::MIN_POSITIVE)))
}

fn quadratic_to_sym(f: &MpForm) -> [MpComplex; 6] {
    let bits = f.sample_coeff().map(|c| c.bits()).unwrap_or(64);
    let half = MpComplex::from_f64(0.5, 0.0, bits);
    let get = |m: [u32; 3]| f.coeff(&m).cloned().unwrap_or_else(|| MpComplex::zero(bits));
    [
        get([2, 0, 0]),
        get([1, 1, 0]).mul_ref(&half),
        get([1, 0, 1]).mul_ref(&half),
        get([0, 2, 0]),
        get([0, 1, 1]).mul_ref(&half),
        get([0, 0, 2]),
    ]
}

fn sym_det_rel(s: &[MpComplex; 6]) -> f64 {
    let [a, b, c, d, e, f] = s.clone();
    let det = a.mul_ref(&d.mul_ref(&f).sub_ref(&e.mul_ref(&e)))
        .sub_ref(&b.mul_ref(&b.mul_ref(&f).sub_ref(&e.mul_ref(&c))))
        .add_ref(&c.mul_ref(&b.mul_ref(&e).sub_ref(&d.mul_ref(&c))));
    let n = s.iter().map(|x| x.abs_f64()).fold(0.0, f64::max);
    det.abs_f64() / n.powi(3)
}

/// Distinct intersection points of a line and a conic, by the discriminant
/// of the restricted quadratic.
fn line_conic_nodes(l: &MpPoint, s: &[MpComplex; 6]) -> Result<usize> {
    let bits = l[0].bits();
    let two = MpComplex::from_f64(2.0, 0.0, bits);
    let quad = MpForm::from_terms(
        2,
        [
            ([2, 0, 0], s[0].clone()),
            ([1, 1, 0], s[1].mul_ref(&two)),
            ([1, 0, 1], s[2].mul_ref(&two)),
            ([0, 2, 0], s[3].clone()),
            ([0, 1, 1], s[4].mul_ref(&two)),
            ([0, 0, 2], s[5].clone()),
        ],
    )?;
    let b = quad.restrict_to_line(l)?;
    let [c0, c1, c2] = [b.coeffs[0].clone(), b.coeffs[1].clone(), b.coeffs[2].clone()];
    let disc = c1.mul_ref(&c1).sub_ref(&MpComplex::from_f64(4.0, 0.0, bits).mul_ref(&c0).mul_ref(&c2));
    let scale = [&c0, &c1, &c2].iter().map(|c| c.abs_f64()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate("line lies on the conic".into()));
    }
    Ok(if disc.abs_f64() / (scale * scale) < 1e-12 { 1 } else { 2 })
}

/// Splits the polar cubic of `p` with respect to `phi4` into one of `lines`
/// times a smooth conic.
pub fn split_reducible_polar(p: &MpPoint, phi4: &QForm, lines: &[MpPoint], digits: u32) -> Result<PolarSplit> {
    let polar = polar_form(&to_mp(phi4, digits), &normalize3(p));
    let tol = 1e-20f64.min(10f64.powf(10.0 - digits as f64));
    let mut hits = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let (quot, residual) = divide_by_line(&polar, l)?;
        if residual < tol {
            hits.push((i, quot, residual));
        }
    }
    if hits.len() != 1 {
        return Err(Error::NoSolution(format!("{} lines divide the polar", hits.len())));
    }
    let (line_index, quot, residual) = hits.pop().unwrap();
    let conic = quadratic_to_sym(&quot);
    if sym_det_rel(&conic) < 1e-12 {
        return Err(Error::Degenerate("conic factor is singular".into()));
    }
    let nodes = line_conic_nodes(&lines[line_index], &conic)?;
    Ok(PolarSplit { line_index, conic, residual, nodes })
}

#[derive(Clone, Debug)]
pub struct SteinerianReport {
    pub max_residual: f64,
    /// (α : β) with β = 1 from α·Φ₄³(p) + β·Φ₆²(p) = 0 over the points.
    pub alpha: (f64, f64),
    /// Spread of the fitted ratio across points.
    pub fit_spread: f64,
}

/// Evaluates the Steinerian at the points and fits the pencil
/// α·Φ₄³ + β·Φ₆² through them.
pub fn steinerian_vanishing(inv: &KleinInvariants, points: &[MpPoint], digits: u32) -> Result<SteinerianReport> {
    let s = to_mp(&inv.steinerian, digits);
    let f4 = to_mp(&inv.phi4, digits);
    let f6 = to_mp(&inv.phi6, digits);
    let mut max_residual: f64 = 0.0;
    let mut ratios = Vec::new();
    for p in points {
        let u = normalize3(p);
        max_residual = max_residual.max(s.eval(&u).abs_f64());
        let a = f4.eval(&u).pow_u32(3);
        let b = f6.eval(&u).pow_u32(2);
        // α/β = −Φ₆²/Φ₄³
        let r = b.div_ref(&a).ok_or_else(|| Error::Degenerate("Φ₄ vanishes at a sample point".into()))?.neg_ref();
        ratios.push(r.to_c64());
    }
    let first = *ratios.first().ok_or_else(|| Error::Invalid("no points".into()))?;
    let fit_spread = ratios.iter().map(|r| (r - first).norm()).fold(0.0, f64::max);
    Ok(SteinerianReport { max_residual, alpha: (first.re, first.im), fit_spread })
}

/// Max relative deviation of Φ₄₂ / ΠCᵢ over random points from its value at
/// the first one.
pub fn phi42_product_check(phi42: &QForm, splits: &[PolarSplit], digits: u32, seed: u64) -> f64 {
    let bits = bits_for_digits(digits);
    let f = to_mp(phi42, digits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ratios: Vec<MpComplex> = (0..5)
        .map(|_| {
            let p: MpPoint = std::array::from_fn(|_| MpComplex::from_f64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), bits));
            let mut prod = p[0].one_like();
            for sp in splits {
                let s = &sp.conic;
                let two = MpComplex::from_f64(2.0, 0.0, bits);
                let [x, y, z] = p.clone();
                let c = s[0].mul_ref(&x).mul_ref(&x)
                    .add_ref(&two.mul_ref(&s[1]).mul_ref(&x).mul_ref(&y))
                    .add_ref(&two.mul_ref(&s[2]).mul_ref(&x).mul_ref(&z))
                    .add_ref(&s[3].mul_ref(&y).mul_ref(&y))
                    .add_ref(&two.mul_ref(&s[4]).mul_ref(&y).mul_ref(&z))
                    .add_ref(&s[5].mul_ref(&z).mul_ref(&z));
                prod = prod.mul_ref(&c);
            }
            f.eval(&p).div_ref(&prod).unwrap_or_else(|| p[0].zero_like())
        })
        .collect();
    let r0 = ratios[0].clone();
    let scale = r0.abs_f64().max(f64::MIN_POSITIVE);
    ratios.iter().map(|r| r.sub_ref(&r0).abs_f64() / scale).fold(0.0, f64::max)
}

/// Results of the full numeric Klein pipeline.
#[derive(Clone, Debug)]
pub struct NumericPipeline {
    pub digits: u32,
    pub lines: Vec<MpPoint>,
    pub line_census: NumericArrangement,
    pub quad_points: Vec<MpPoint>,
    pub line_residual: f64,
    pub steinerian: SteinerianReport,
    pub splits: Vec<PolarSplit>,
    pub conic_census: NumericArrangement,
    pub phi42_deviation: f64,
}

fn pipeline_at(inv: &KleinInvariants, digits: u32) -> Result<NumericPipeline> {
    let lines = extract_lines_numeric(&inv.phi21, digits)?;
    let line_residual = max_residual_on_lines(&inv.phi21, &lines, 5, digits);
    let line_census = line_census_numeric(&lines, digits)?;
    let quad_points: Vec<MpPoint> =
        line_census.points.iter().filter(|p| p.multiplicity() == 4).map(|p| p.coords.clone()).collect();
    let steinerian = steinerian_vanishing(inv, &quad_points, digits)?;
    let splits: Vec<PolarSplit> =
        quad_points.par_iter().map(|p| split_reducible_polar(p, &inv.phi4, &lines, digits)).collect::<Result<_>>()?;
    let conics: Vec<[MpComplex; 6]> = splits.iter().map(|s| s.conic.clone()).collect();
    let conic_census = conic_census_numeric(&conics, digits)?;
    let phi42_deviation = phi42_product_check(&inv.phi42, &splits, digits, 42);
    Ok(NumericPipeline { digits, lines, line_census, quad_points, line_residual, steinerian, splits, conic_census, phi42_deviation })
}

/// Runs the pipeline, doubling the precision on ambiguity up to 400 digits.
pub fn numeric_pipeline(inv: &KleinInvariants, digits: u32) -> Result<NumericPipeline> {
    let mut d = digits.max(30);
    loop {
        match pipeline_at(inv, d) {
            Err(Error::NeedPrecision { .. }) if d * 2 <= 400 => d *= 2,
            other => return other,
        }
    }
}
