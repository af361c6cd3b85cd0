//! Numeric realizations of incidence structures, tangent-space probes of
//! line-arrangement realization spaces, and the circumconic sweep.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::models::gr::GrModel;

pub type V3 = [f64; 3];

fn norm(v: &V3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn unit(v: &V3) -> V3 {
    let n = norm(v);
    [v[0] / n, v[1] / n, v[2] / n]
}

fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Distance between projective points given by unit vectors, sign-blind.
fn pdist(a: &V3, b: &V3) -> f64 {
    norm(&cross(&unit(a), &unit(b)))
}

#[derive(Clone, Debug)]
pub struct LmResult {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Levenberg–Marquardt on `f: ℝⁿ → ℝᵐ` with a central-difference Jacobian.
/// `residual` is the max-norm of the final residual vector.
pub fn levenberg_marquardt(f: &dyn Fn(&[f64]) -> Vec<f64>, x0: &[f64], max_iter: usize) -> LmResult {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut r = DVector::from_vec(f(&x));
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    let mut it = 0;
    while it < max_iter {
        it += 1;
        if r.amax() < 1e-15 {
            break;
        }
        let m = r.len();
        let mut j = DMatrix::zeros(m, n);
        for k in 0..n {
            let h = 1e-7 * (1.0 + x[k].abs());
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let (fp, fm) = (f(&xp), f(&xm));
            for i in 0..m {
                j[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for d in 0..n {
                a[(d, d)] += lambda * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rn = DVector::from_vec(f(&xn));
            let cn = rn.norm_squared();
            if cn.is_finite() && cn < cost {
                x = xn;
                r = rn;
                let rel = (cost - cn) / cost.max(f64::MIN_POSITIVE);
                cost = cn;
                lambda = (lambda / 3.0).max(1e-15);
                improved = rel > 1e-16 || cost > 0.0;
                break;
            }
            lambda *= 8.0;
        }
        if !improved {
            break;
        }
    }
    LmResult { residual: r.amax(), x, iterations: it }
}

// ---------------------------------------------------------------------------
// Realizations.

/// Real coordinates for the points and blocks (as lines) of a structure.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub points: Vec<V3>,
    pub lines: Vec<V3>,
    pub seed: u64,
}

impl Realization {
    /// Max |p̂·l̂| over the required flags.
    pub fn residual(&self, s: &IncidenceStructure) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, b) in s.blocks().iter().enumerate() {
            let l = unit(&self.lines[j]);
            for &i in b {
                worst = worst.max(dot(&unit(&self.points[i]), &l).abs());
            }
        }
        worst
    }

    /// Smallest separation between distinct points and between distinct lines.
    pub fn separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for v in [&self.points, &self.lines] {
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    m = m.min(pdist(&v[i], &v[j]));
                }
            }
        }
        m
    }

    /// Applies a projectivity: points by `g`, lines by `g⁻ᵀ`.
    pub fn transformed(&self, g: &[[f64; 3]; 3]) -> Option<Realization> {
        let m = nalgebra::Matrix3::from_fn(|i, j| g[i][j]);
        let inv_t = m.try_inverse()?.transpose();
        let apply = |mat: &nalgebra::Matrix3<f64>, v: &V3| {
            let r = mat * nalgebra::Vector3::new(v[0], v[1], v[2]);
            [r[0], r[1], r[2]]
        };
        Some(Realization {
            points: self.points.iter().map(|p| apply(&m, p)).collect(),
            lines: self.lines.iter().map(|l| apply(&inv_t, l)).collect(),
            seed: self.seed,
        })
    }
}

/// Singular points of a real line arrangement, clustered at `tol`.
#[derive(Clone, Debug, Serialize)]
pub struct LineCensus {
    /// Lines through each singular point, sorted.
    pub points: Vec<Vec<usize>>,
}

impl LineCensus {
    pub fn t(&self, r: usize) -> usize {
        self.points.iter().filter(|p| p.len() == r).count()
    }
}

pub fn line_census_f64(lines: &[V3], tol: f64) -> LineCensus {
    let mut pts: Vec<(V3, BTreeSet<usize>)> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = cross(&unit(&lines[i]), &unit(&lines[j]));
            if norm(&p) < tol {
                continue;
            }
            match pts.iter_mut().find(|(q, _)| pdist(q, &p) < tol) {
                Some((_, s)) => {
                    s.insert(i);
                    s.insert(j);
                }
                None => pts.push((unit(&p), BTreeSet::from([i, j]))),
            }
        }
    }
    LineCensus { points: pts.into_iter().map(|(_, s)| s.into_iter().collect()).collect() }
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub success: bool,
    pub best_residual: f64,
    pub seeds_tried: usize,
    pub seeds_converged: usize,
    pub realization: Option<Realization>,
    pub census: Option<LineCensus>,
    /// Concurrent line triples of the realization not forced by the structure.
    pub extra_triples: Vec<[usize; 3]>,
}

/// Up to four points with no three on a common block.
fn frame_points(s: &IncidenceStructure) -> Vec<usize> {
    let blocks = s.blocks();
    let collinear = |a: usize, b: usize, c: usize| blocks.iter().any(|bl| bl.contains(&a) && bl.contains(&b) && bl.contains(&c));
    fn extend(n: usize, chosen: &mut Vec<usize>, start: usize, ok: &dyn Fn(&[usize], usize) -> bool) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for p in start..n {
            if ok(chosen, p) {
                chosen.push(p);
                if extend(n, chosen, p + 1, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let ok = |chosen: &[usize], p: usize| {
        chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !collinear(a, b, p)))
    };
    let mut best = Vec::new();
    let mut chosen = Vec::new();
    if extend(s.n_points(), &mut chosen, 0, &ok) {
        return chosen;
    }
    // Fewer than four: greedy.
    for p in 0..s.n_points() {
        if best.len() < 4 && ok(&best, p) {
            best.push(p);
        }
    }
    best
}

const FRAME: [V3; 4] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]];

/// Searches for a real realization from `seeds` random starts, with a
/// projective frame pinned on points in general position.
pub fn realize_structure(s: &IncidenceStructure, seeds: usize) -> Result<RealizationReport> {
    realize_augmented(s, &[], seeds)
}

/// Like [`realize_structure`], with each set in `concurrent` imposed as a new
/// point on those blocks. Extra triples are still reported against `base`,
/// and the added points follow the original ones in the realization.
pub fn realize_augmented(base: &IncidenceStructure, concurrent: &[Vec<usize>], seeds: usize) -> Result<RealizationReport> {
    let mut blocks = base.blocks().to_vec();
    for (e, set) in concurrent.iter().enumerate() {
        for &b in set {
            blocks
                .get_mut(b)
                .ok_or_else(|| Error::Invalid(format!("no block {b}")))?
                .push(base.n_points() + e);
        }
    }
    let s = &IncidenceStructure::new(base.n_points() + concurrent.len(), blocks)?;
    if s.blocks().iter().any(|b| b.len() < 2) {
        return Err(Error::Invalid("every block needs at least two points".into()));
    }
    let pinned = frame_points(s);
    let free: Vec<usize> = (0..s.n_points()).filter(|p| !pinned.contains(p)).collect();
    let nb = s.n_blocks();
    let dim = 3 * (free.len() + nb);
    let unpack = |x: &[f64]| -> (Vec<V3>, Vec<V3>) {
        let mut pts = vec![[0.0; 3]; s.n_points()];
        for (k, &p) in pinned.iter().enumerate() {
            pts[p] = FRAME[k];
        }
        for (k, &p) in free.iter().enumerate() {
            pts[p] = [x[3 * k], x[3 * k + 1], x[3 * k + 2]];
        }
        let off = 3 * free.len();
        let lines = (0..nb).map(|j| [x[off + 3 * j], x[off + 3 * j + 1], x[off + 3 * j + 2]]).collect();
        (pts, lines)
    };
    let residuals = |x: &[f64]| -> Vec<f64> {
        let (pts, lines) = unpack(x);
        let mut r = Vec::new();
        for (j, b) in s.blocks().iter().enumerate() {
            let l = unit(&lines[j]);
            for &i in b {
                r.push(dot(&unit(&pts[i]), &l));
            }
        }
        r
    };
    let runs: Vec<(u64, Realization, f64)> = (0..seeds as u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let lm = levenberg_marquardt(&residuals, &x0, 400);
            let (points, lines) = unpack(&lm.x);
            let r = Realization { points, lines, seed };
            let res = r.residual(s);
            (seed, r, res)
        })
        .collect();
    let good = |r: &Realization, res: f64| res < 1e-10 && r.separation() > 1e-6;
    let converged = runs.iter().filter(|(_, r, res)| good(r, *res)).count();
    let best = runs
        .iter()
        .filter(|(_, r, _)| r.separation() > 1e-6)
        .min_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
        .or_else(|| runs.iter().min_by(|a, b| a.2.total_cmp(&b.2)));
    let Some((_, real, res)) = best.cloned() else {
        return Ok(RealizationReport {
            success: false,
            best_residual: f64::INFINITY,
            seeds_tried: 0,
            seeds_converged: 0,
            realization: None,
            census: None,
            extra_triples: Vec::new(),
        });
    };
    let success = good(&real, res);
    let (census, extra_triples) = if success {
        let c = line_census_f64(&real.lines, 1e-8);
        let forced: BTreeSet<Vec<usize>> = base.point_blocks().into_iter().collect();
        let mut extra = Vec::new();
        for p in &c.points {
            if p.len() >= 3 && !forced.iter().any(|f| p.iter().all(|l| f.contains(l))) {
                for t in 0..p.len() {
                    for u in t + 1..p.len() {
                        for v in u + 1..p.len() {
                            extra.push([p[t], p[u], p[v]]);
                        }
                    }
                }
            }
        }
        extra.sort();
        (Some(c), extra)
    } else {
        (None, Vec::new())
    };
    Ok(RealizationReport {
        success,
        best_residual: res,
        seeds_tried: seeds,
        seeds_converged: converged,
        realization: Some(real),
        census,
        extra_triples,
    })
}

// ---------------------------------------------------------------------------
// Tangent dimension.

#[derive(Clone, Debug, Serialize)]
pub struct TangentReport {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Ratio σ_rank / σ_{rank+1} at the chosen cut.
    pub gap: f64,
    /// Dimension by subtracting 8 + n gauge freedoms from the nullity.
    pub dimension: Option<i64>,
    /// Dimension from the gauge-fixed system, as a cross-check.
    pub dimension_pinned: Option<i64>,
}

fn det_rows(lines: &[[Complex64; 3]], t: [usize; 3]) -> [[Complex64; 3]; 3] {
    let c = |a: &[Complex64; 3], b: &[Complex64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let (a, b, d) = (&lines[t[0]], &lines[t[1]], &lines[t[2]]);
    [c(b, d), c(d, a), c(a, b)]
}

/// Numeric rank by the largest singular-value gap; `None` for the rank when
/// the best gap is below 10⁶.
fn gap_rank(m: &DMatrix<Complex64>) -> (usize, f64, bool) {
    let s = m.clone().svd(false, false).singular_values;
    let mut sv: Vec<f64> = s.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return (0, f64::INFINITY, true);
    }
    let tiny = top * 1e-13;
    let mut best = (sv.iter().filter(|&&x| x > tiny).count(), 0.0);
    for r in 1..=sv.len() {
        let next = if r < sv.len() { sv[r] } else { 0.0 };
        let gap = if next <= tiny { sv[r - 1] / tiny.max(next) } else { sv[r - 1] / next };
        if next <= tiny {
            if gap > best.1 {
                best = (r, gap);
            }
            break;
        }
        if gap > best.1 {
            best = (r, gap);
        }
    }
    (best.0, best.1, best.1 >= 1e6)
}

/// Local dimension of the realization space of a line arrangement with the
/// given concurrent sets, modulo projectivities and line scalings.
pub fn tangent_dimension(lines: &[[Complex64; 3]], concurrent: &[Vec<usize>]) -> Result<TangentReport> {
    let n = lines.len();
    let unit_c = |v: &[Complex64; 3]| {
        let s = (v.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
        v.map(|c| c / s)
    };
    let lines: Vec<[Complex64; 3]> = lines.iter().map(unit_c).collect();
    let mut triples = BTreeSet::new();
    for set in concurrent {
        let mut s = set.clone();
        s.sort_unstable();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                for c in b + 1..s.len() {
                    triples.insert([s[a], s[b], s[c]]);
                }
            }
        }
    }
    let rows: Vec<[usize; 3]> = triples.into_iter().collect();
    for t in &rows {
        if t.iter().any(|&i| i >= n) {
            return Err(Error::Invalid("concurrent set references a missing line".into()));
        }
    }
    let mut j = DMatrix::<Complex64>::zeros(rows.len().max(1), 3 * n);
    for (r, t) in rows.iter().enumerate() {
        let g = det_rows(&lines, *t);
        for k in 0..3 {
            for c in 0..3 {
                j[(r, 3 * t[k] + c)] = g[k][c];
            }
        }
    }
    let (rank, gap, ok) = if rows.is_empty() { (0, f64::INFINITY, true) } else { gap_rank(&j) };
    let dimension = ok.then(|| (3 * n - rank) as i64 - 8 - n as i64);

    // Pin four lines in general position; fix the scale of the others.
    let frame = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [a, b, c, d]))))
        .find(|f| {
            [[f[0], f[1], f[2]], [f[0], f[1], f[3]], [f[0], f[2], f[3]], [f[1], f[2], f[3]]].iter().all(|t| {
                let g = det_rows(&lines, *t);
                let d: Complex64 = (0..3).map(|c| g[0][c] * lines[t[0]][c]).sum();
                d.norm() > 1e-6
            })
        });
    let dimension_pinned = match frame {
        Some(f) if ok => {
            let extra = 12 + (n - 4);
            let mut jp = DMatrix::<Complex64>::zeros(rows.len() + extra, 3 * n);
            jp.view_mut((0, 0), (rows.len(), 3 * n)).copy_from(&j.view((0, 0), (rows.len(), 3 * n)));
            let mut r = rows.len();
            for &l in &f {
                for c in 0..3 {
                    jp[(r, 3 * l + c)] = Complex64::new(1.0, 0.0);
                    r += 1;
                }
            }
            for l in (0..n).filter(|l| !f.contains(l)) {
                for c in 0..3 {
                    jp[(r, 3 * l + c)] = lines[l][c].conj();
                }
                r += 1;
            }
            let (rk, _, okp) = gap_rank(&jp);
            okp.then(|| (3 * n - rk) as i64)
        }
        _ => None,
    };
    Ok(TangentReport { unknowns: 3 * n, equations: rows.len(), rank, gap, dimension, dimension_pinned })
}

// ---------------------------------------------------------------------------
// Circumconic sweep.

/// A real ellipse: center, semi-axes and rotation angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub cx: f64,
    pub cy: f64,
    pub a: f64,
    pub b: f64,
    pub rot: f64,
}

impl Ellipse {
    pub fn circle(r: f64) -> Self {
        Ellipse { cx: 0.0, cy: 0.0, a: r, b: r, rot: 0.0 }
    }

    pub fn point(&self, t: f64) -> V3 {
        let (u, v) = (self.a * t.cos(), self.b * t.sin());
        let (c, s) = (self.rot.cos(), self.rot.sin());
        [self.cx + c * u - s * v, self.cy + s * u + c * v, 1.0]
    }

    fn lerp(&self, o: &Ellipse, t: f64) -> Ellipse {
        let l = |a: f64, b: f64| a + (b - a) * t;
        Ellipse { cx: l(self.cx, o.cx), cy: l(self.cy, o.cy), a: l(self.a, o.a), b: l(self.b, o.b), rot: l(self.rot, o.rot) }
    }

    /// Upper triangle of the conic matrix, for evaluating point residuals.
    pub fn sym(&self) -> [f64; 6] {
        let (c, s) = (self.rot.cos(), self.rot.sin());
        let (ia, ib) = (1.0 / (self.a * self.a), 1.0 / (self.b * self.b));
        let m11 = c * c * ia + s * s * ib;
        let m12 = c * s * (ia - ib);
        let m22 = s * s * ia + c * c * ib;
        let (x0, y0) = (self.cx, self.cy);
        [m11, m12, -(m11 * x0 + m12 * y0), m22, -(m12 * x0 + m22 * y0), m11 * x0 * x0 + 2.0 * m12 * x0 * y0 + m22 * y0 * y0 - 1.0]
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<_>>()?;
        match v.as_slice() {
            [cx, cy, a, b, rot] if *a > 0.0 && *b > 0.0 => Ok(Ellipse { cx: *cx, cy: *cy, a: *a, b: *b, rot: *rot }),
            _ => Err(Error::Parse("ellipse needs cx,cy,a,b,rot with a, b > 0".into())),
        }
    }
}

/// Combinatorics of GR as needed by the sweep. P₁ = A∩B, P₂ = A∩C,
/// P₃ = B∩C quadruple points.
#[derive(Clone, Debug)]
pub struct SweepFrame {
    /// Squared radius of the P₁ circumcircle.
    pub r1: f64,
    pub theta0: Vec<f64>,
    /// P₁ pair on each A line.
    pub a_pairs: Vec<[usize; 2]>,
    /// A lines through each P₂ point.
    pub p2_a: Vec<[usize; 2]>,
    /// P₁ pair on each B line.
    pub b_pairs: Vec<[usize; 2]>,
    /// P₂ pair on each C line.
    pub c_pairs: Vec<[usize; 2]>,
    /// B and C lines through each P₃ point.
    pub p3_b: Vec<[usize; 2]>,
    pub p3_c: Vec<[usize; 2]>,
}

fn pair(v: &[usize]) -> Result<[usize; 2]> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::SelfCheck(format!("expected a pair, found {v:?}"))),
    }
}

pub fn sweep_frame(m: &GrModel) -> Result<SweepFrame> {
    let arr = m.census()?;
    let quads: Vec<(Vec<usize>, [f64; 2])> = arr
        .points_of_multiplicity(4)
        .into_iter()
        .map(|c| {
            let v = c.point.coords().clone().map(|x| x.to_f64());
            (c.curves.clone(), [v[0] / v[2], v[1] / v[2]])
        })
        .collect();
    let kind = |ls: &[usize]| -> (bool, bool, bool) {
        let has = |o: usize| ls.iter().any(|&l| GrModel::orbit(l) == o);
        (has(0), has(1), has(2))
    };
    let p1: Vec<&(Vec<usize>, [f64; 2])> = quads.iter().filter(|q| kind(&q.0) == (true, true, false)).collect();
    let p2: Vec<&(Vec<usize>, [f64; 2])> = quads.iter().filter(|q| kind(&q.0) == (true, false, true)).collect();
    let p3: Vec<&(Vec<usize>, [f64; 2])> = quads.iter().filter(|q| kind(&q.0) == (false, true, true)).collect();
    if p1.len() != 7 || p2.len() != 7 || p3.len() != 7 {
        return Err(Error::SelfCheck("quadruple points do not split by orbit pairs".into()));
    }
    let on = |set: &[&(Vec<usize>, [f64; 2])], line: usize| -> Vec<usize> { (0..set.len()).filter(|&i| set[i].0.contains(&line)).collect() };
    let within = |ls: &[usize], o: usize| -> Vec<usize> { ls.iter().filter(|&&l| GrModel::orbit(l) == o).map(|&l| l % 7).collect() };
    let a_pairs = (0..7).map(|a| pair(&on(&p1, a))).collect::<Result<_>>()?;
    let b_pairs = (7..14).map(|b| pair(&on(&p1, b))).collect::<Result<_>>()?;
    let c_pairs = (14..21).map(|c| pair(&on(&p2, c))).collect::<Result<_>>()?;
    let p2_a = p2.iter().map(|q| pair(&within(&q.0, 0))).collect::<Result<_>>()?;
    let p3_b = p3.iter().map(|q| pair(&within(&q.0, 1))).collect::<Result<_>>()?;
    let p3_c = p3.iter().map(|q| pair(&within(&q.0, 2))).collect::<Result<_>>()?;
    let r1 = p1[0].1[0].hypot(p1[0].1[1]);
    let theta0 = p1.iter().map(|q| q.1[1].atan2(q.1[0])).collect();
    Ok(SweepFrame { r1, theta0, a_pairs, p2_a, b_pairs, c_pairs, p3_b, p3_c })
}

/// Residuals of points `5..` against the conic through the first five.
fn conic_residual(points: &[V3]) -> Vec<f64> {
    let rows: Vec<[f64; 6]> = points
        .iter()
        .map(|p| {
            let [x, y, z] = unit(p);
            [x * x, x * y, x * z, y * y, y * z, z * z]
        })
        .collect();
    let m = DMatrix::from_fn(5, 6, |i, j| rows[i][j]);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    // Null vector: right singular vector of the smallest singular value.
    let sv = &svd.singular_values;
    let mut k_min = 0;
    for k in 0..sv.len() {
        if sv[k] < sv[k_min] {
            k_min = k;
        }
    }
    let c: Vec<f64> = if vt.nrows() == 6 {
        // Full V: pick the row orthogonal to all five rows.
        let mut best = 0;
        let mut best_v = f64::INFINITY;
        for r in 0..6 {
            let v: f64 = (0..5).map(|i| (0..6).map(|j| rows[i][j] * vt[(r, j)]).sum::<f64>().abs()).sum();
            if v < best_v {
                best_v = v;
                best = r;
            }
        }
        (0..6).map(|j| vt[(best, j)]).collect()
    } else {
        // Thin V (5×6): complete the basis by Gram–Schmidt on e₀ … e₅.
        let basis: Vec<Vec<f64>> = (0..vt.nrows()).map(|r| (0..6).map(|j| vt[(r, j)]).collect()).collect();
        let _ = k_min;
        let mut out = vec![0.0; 6];
        for e in 0..6 {
            let mut v = vec![0.0; 6];
            v[e] = 1.0;
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
            let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.5 {
                out = v.iter().map(|x| x / n).collect();
                break;
            }
        }
        out
    };
    rows[5..].iter().map(|r| r.iter().zip(&c).map(|(a, b)| a * b).sum()).collect()
}

/// Points of the three orbits determined by P₁ on `c1` at angles `theta`.
pub struct SweepPoints {
    pub p1: Vec<V3>,
    pub p2: Vec<V3>,
    /// P₃ as B-line meets and as C-line meets.
    pub p3_b: Vec<V3>,
    pub p3_c: Vec<V3>,
}

pub fn sweep_points(f: &SweepFrame, c1: &Ellipse, theta: &[f64], broken: bool) -> SweepPoints {
    let p1: Vec<V3> = theta.iter().map(|&t| c1.point(t)).collect();
    let a: Vec<V3> = f.a_pairs.iter().map(|[i, j]| cross(&p1[*i], &p1[*j])).collect();
    let p2: Vec<V3> = f.p2_a.iter().map(|[i, j]| cross(&a[*i], &a[*j])).collect();
    let b: Vec<V3> = f.b_pairs.iter().map(|[i, j]| cross(&p1[*i], &p1[*j])).collect();
    let c: Vec<V3> = f.c_pairs.iter().map(|[i, j]| cross(&p2[*i], &p2[*j])).collect();
    let p3_b = f.p3_b.iter().map(|[i, j]| unit(&cross(&b[*i], &b[*j]))).collect();
    let p3_c = f
        .p3_c
        .iter()
        .map(|[i, j]| {
            // The control pairs each C line with the next one instead.
            let j = if broken { (*j + 1) % 7 } else { *j };
            unit(&cross(&c[*i], &c[j]))
        })
        .collect();
    SweepPoints { p1, p2, p3_b, p3_c }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSample {
    pub seed: u64,
    pub c1: Ellipse,
    pub theta: Vec<f64>,
    /// Residual of P₂ on a common conic (or on the pinned C₂).
    pub c2_residual: f64,
    /// Max distance between the two constructions of P₃.
    pub identification: f64,
    /// Residual of P₃ on a common conic.
    pub c3_residual: f64,
    /// The same quantities with one identification deliberately broken.
    pub broken_identification: f64,
    /// Deviation of the three orbits from D₇ symmetry about the origin.
    pub symmetry_defect: f64,
    pub converged: bool,
    pub diverged: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub label: &'static str,
    pub steps: usize,
    pub c2_mode: String,
    pub samples: Vec<SweepSample>,
}

fn orbit_defect(pts: &[V3]) -> f64 {
    let aff: Vec<(f64, f64)> = pts.iter().map(|p| (p[0] / p[2], p[1] / p[2])).collect();
    let rs: Vec<f64> = aff.iter().map(|(x, y)| x.hypot(*y)).collect();
    let mean = rs.iter().sum::<f64>() / rs.len() as f64;
    let mut ang: Vec<f64> = aff.iter().map(|(x, y)| y.atan2(*x)).collect();
    ang.sort_by(|a, b| a.total_cmp(b));
    let step = std::f64::consts::TAU / ang.len() as f64;
    let mut d = rs.iter().map(|r| (r - mean).abs() / mean).fold(0.0, f64::max);
    for i in 0..ang.len() {
        let next = if i + 1 < ang.len() { ang[i + 1] } else { ang[0] + std::f64::consts::TAU };
        d = d.max((next - ang[i] - step).abs());
    }
    d
}

/// Recomputes all sample quantities from stored parameters.
pub fn evaluate_sample(f: &SweepFrame, c1: &Ellipse, theta: &[f64], c2: Option<&Ellipse>) -> (f64, f64, f64, f64, f64) {
    let pts = sweep_points(f, c1, theta, false);
    let c2r = c2_residuals(&pts.p2, c2).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let ident = pts.p3_b.iter().zip(&pts.p3_c).map(|(u, v)| pdist(u, v)).fold(0.0, f64::max);
    let c3 = conic_residual(&pts.p3_b).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let broken = sweep_points(f, c1, theta, true);
    let bid = broken.p3_b.iter().zip(&broken.p3_c).map(|(u, v)| pdist(u, v)).fold(0.0, f64::max);
    let sym = orbit_defect(&pts.p1).max(orbit_defect(&pts.p2)).max(orbit_defect(&pts.p3_b));
    (c2r, ident, c3, bid, sym)
}

fn c2_residuals(p2: &[V3], c2: Option<&Ellipse>) -> Vec<f64> {
    match c2 {
        None => conic_residual(p2),
        Some(e) => {
            let s = e.sym();
            p2.iter()
                .map(|p| {
                    let [x, y, z] = unit(p);
                    s[0] * x * x + 2.0 * s[1] * x * y + 2.0 * s[2] * x * z + s[3] * y * y + 2.0 * s[4] * y * z + s[5] * z * z
                })
                .collect()
        }
    }
}

/// EXPERIMENTAL. Continues the symmetric GR configuration toward one with P₁
/// on `c1` and P₂ on a conic (free, or the given `c2`), then measures the
/// identification of the two constructions of P₃ and whether P₃ lies on a
/// conic.
///
/// Sample 0 follows the unperturbed continuation; sample k > 0 perturbs the
/// target ellipse and the starting angles with seed k.
pub fn conjecture_sweep(m: &GrModel, c1: Option<Ellipse>, c2: Option<Ellipse>, steps: usize, samples: usize) -> Result<SweepReport> {
    let frame = sweep_frame(m)?;
    let start = Ellipse::circle(frame.r1);
    let target = c1.unwrap_or(start);
    let steps = steps.max(1);
    let out: Vec<SweepSample> = (0..samples as u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut noise = || -> f64 { rng.sample::<f64, _>(StandardNormal) };
            let goal = if seed == 0 {
                target
            } else {
                Ellipse {
                    cx: target.cx + 0.02 * noise(),
                    cy: target.cy + 0.02 * noise(),
                    a: target.a * (1.0 + 0.05 * noise()),
                    b: target.b * (1.0 + 0.05 * noise()),
                    rot: target.rot + 0.1 * noise(),
                }
            };
            let mut theta: Vec<f64> = frame.theta0.iter().map(|&t| if seed == 0 { t } else { t + 0.02 * noise() }).collect();
            let mut diverged = None;
            for s in 1..=steps {
                let e = start.lerp(&goal, s as f64 / steps as f64);
                let f = |x: &[f64]| c2_residuals(&sweep_points(&frame, &e, x, false).p2, c2.as_ref());
                let lm = levenberg_marquardt(&f, &theta, 200);
                let jump = lm.x.iter().zip(&theta).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                theta = lm.x;
                if !lm.residual.is_finite() || jump > 0.5 {
                    diverged = Some(format!("step {s}: angle jump {jump:.3}"));
                    break;
                }
            }
            let (c2_residual, identification, c3_residual, broken_identification, symmetry_defect) =
                evaluate_sample(&frame, &goal, &theta, c2.as_ref());
            if diverged.is_none() && c2_residual > 1e-10 {
                diverged = Some(format!("C₂ residual {c2_residual:.2e} after continuation"));
            }
            let converged = diverged.is_none() && identification < 1e-8 && c3_residual < 1e-8;
            SweepSample {
                seed,
                c1: goal,
                theta,
                c2_residual,
                identification,
                c3_residual,
                broken_identification,
                symmetry_defect,
                converged,
                diverged,
            }
        })
        .collect();
    Ok(SweepReport {
        label: "EXPERIMENTAL",
        steps,
        c2_mode: if c2.is_some() { "pinned".into() } else { "free".into() },
        samples: out,
    })
}
