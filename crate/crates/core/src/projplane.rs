//! Points, lines, conics and circles in the projective plane over a number
//! field, with exact incidence, duality and polarity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::{element_in_field, FieldElement, FieldRef};
use crate::rational::serde_vec;

pub type FE = FieldElement;

/// Scales so the first nonzero coordinate is 1.
pub fn canonicalize(v: &[FE]) -> Result<Vec<FE>> {
    let pivot = v.iter().find(|c| !c.is_zero()).ok_or_else(|| Error::Degenerate("all coordinates vanish".into()))?;
    let inv = pivot.inv()?;
    Ok(v.iter().map(|c| c * &inv).collect())
}

fn to3(v: Vec<FE>) -> [FE; 3] {
    v.try_into().unwrap_or_else(|_| unreachable!("three coordinates"))
}

pub fn cross(a: &[FE; 3], b: &[FE; 3]) -> [FE; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &[FE; 3], b: &[FE; 3]) -> FE {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn det3(r0: &[FE; 3], r1: &[FE; 3], r2: &[FE; 3]) -> FE {
    dot(r0, &cross(r1, r2))
}

macro_rules! triple_type {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            c: [FE; 3],
        }

        impl $name {
            /// Canonical form of a nonzero triple.
            pub fn new(c: [FE; 3]) -> Result<Self> {
                Ok($name { c: to3(canonicalize(&c)?) })
            }

            pub fn from_i64(field: &FieldRef, c: [i64; 3]) -> Result<Self> {
                Self::new(c.map(|v| FE::from_i64(field, v)))
            }

            pub fn coords(&self) -> &[FE; 3] {
                &self.c
            }

            pub fn field(&self) -> &FieldRef {
                self.c[0].field()
            }

            pub fn to_c64(&self) -> [num_complex::Complex64; 3] {
                [self.c[0].to_c64(), self.c[1].to_c64(), self.c[2].to_c64()]
            }

            pub fn to_json(&self) -> [Vec<String>; 3] {
                [serde_vec(self.c[0].coeffs()), serde_vec(self.c[1].coeffs()), serde_vec(self.c[2].coeffs())]
            }

            pub fn from_json(field: &FieldRef, j: &[Vec<String>; 3]) -> Result<Self> {
                Self::new([element_in_field(field, &j[0])?, element_in_field(field, &j[1])?, element_in_field(field, &j[2])?])
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({} : {} : {})", self.c[0], self.c[1], self.c[2])
            }
        }
    };
}

triple_type!(ProjectivePoint);
triple_type!(ProjectiveLine);

pub fn join(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<ProjectiveLine> {
    if p == q {
        return Err(Error::Degenerate("join of equal points".into()));
    }
    ProjectiveLine::new(cross(&p.c, &q.c))
}

pub fn meet(l: &ProjectiveLine, m: &ProjectiveLine) -> Result<ProjectivePoint> {
    if l == m {
        return Err(Error::Degenerate("meet of equal lines".into()));
    }
    ProjectivePoint::new(cross(&l.c, &m.c))
}

pub fn incident(p: &ProjectivePoint, l: &ProjectiveLine) -> bool {
    dot(&p.c, &l.c).is_zero()
}

pub fn collinear(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> bool {
    det3(&p.c, &q.c, &r.c).is_zero()
}

pub fn concurrent(l: &ProjectiveLine, m: &ProjectiveLine, n: &ProjectiveLine) -> bool {
    det3(&l.c, &m.c, &n.c).is_zero()
}

/// A conic `XᵀSX = 0`, stored as the upper triangle
/// `[s11, s12, s13, s22, s23, s33]` of the symmetric matrix S, scaled so the
/// first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conic {
    s: [FE; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicClass {
    SmoothEllipse,
    SmoothHyperbola,
    SmoothParabola,
    Degenerate,
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicClass::SmoothEllipse => "smooth-ellipse",
            ConicClass::SmoothHyperbola => "smooth-hyperbola",
            ConicClass::SmoothParabola => "smooth-parabola",
            ConicClass::Degenerate => "degenerate",
        })
    }
}

impl Conic {
    pub fn from_sym(s: [FE; 6]) -> Result<Self> {
        let v = canonicalize(&s)?;
        Ok(Conic { s: v.try_into().unwrap_or_else(|_| unreachable!()) })
    }

    /// From coefficients of `x², xy, xz, y², yz, z²`.
    pub fn from_quadratic(q: [FE; 6]) -> Result<Self> {
        let field = q[0].field().clone();
        let half = FE::from_q(&field, crate::rational::q_frac(1, 2));
        let [a, b, c, d, e, f] = q;
        Self::from_sym([a, &b * &half, &c * &half, d, &e * &half, f])
    }

    pub fn sym(&self) -> &[FE; 6] {
        &self.s
    }

    pub fn matrix(&self) -> [[FE; 3]; 3] {
        let s = &self.s;
        [
            [s[0].clone(), s[1].clone(), s[2].clone()],
            [s[1].clone(), s[3].clone(), s[4].clone()],
            [s[2].clone(), s[4].clone(), s[5].clone()],
        ]
    }

    /// Coefficients of `x², xy, xz, y², yz, z²`.
    pub fn quadratic(&self) -> [FE; 6] {
        let s = &self.s;
        let two = FE::from_i64(s[0].field(), 2);
        [s[0].clone(), &s[1] * &two, &s[2] * &two, s[3].clone(), &s[4] * &two, s[5].clone()]
    }

    pub fn field(&self) -> &FieldRef {
        self.s[0].field()
    }

    pub fn eval(&self, p: &[FE; 3]) -> FE {
        let m = self.matrix();
        let mp = [dot(&m[0], p), dot(&m[1], p), dot(&m[2], p)];
        dot(p, &mp)
    }

    pub fn det(&self) -> FE {
        let m = self.matrix();
        det3(&m[0], &m[1], &m[2])
    }

    pub fn is_smooth(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.s.iter().map(|c| serde_vec(c.coeffs())).collect()
    }

    pub fn from_json(field: &FieldRef, j: &[Vec<String>]) -> Result<Self> {
        if j.len() != 6 {
            return Err(Error::Invalid("a conic needs 6 entries".into()));
        }
        let v: Vec<FE> = j.iter().map(|c| element_in_field(field, c)).collect::<Result<_>>()?;
        Self::from_sym(v.try_into().unwrap_or_else(|_| unreachable!()))
    }

    pub fn to_f64(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.s[i].to_f64())
    }
}

pub fn on_conic(p: &ProjectivePoint, c: &Conic) -> bool {
    c.eval(p.coords()).is_zero()
}

fn veronese(p: &[FE; 3]) -> [FE; 6] {
    let [x, y, z] = p;
    [x * x, x * y, x * z, y * y, y * z, z * z]
}

/// Kernel of a matrix over a field by Gauss–Jordan elimination.
pub fn nullspace(rows: &[Vec<FE>], ncols: usize) -> Vec<Vec<FE>> {
    let mut m: Vec<Vec<FE>> = rows.to_vec();
    let field = match m.first().and_then(|r| r.first()) {
        Some(c) => c.field().clone(),
        None => return Vec::new(),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pr) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FE::zero(&field); ncols];
            v[fc] = FE::one(&field);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[i][fc];
            }
            v
        })
        .collect()
}

/// The unique conic through five points.
pub fn conic_through_5(pts: &[ProjectivePoint]) -> Result<Conic> {
    if pts.len() != 5 {
        return Err(Error::Invalid("need exactly five points".into()));
    }
    let rows: Vec<Vec<FE>> = pts.iter().map(|p| veronese(p.coords()).to_vec()).collect();
    let ns = nullspace(&rows, 6);
    if ns.len() != 1 {
        return Err(Error::AmbiguousConic);
    }
    Conic::from_quadratic(ns[0].clone().try_into().unwrap_or_else(|_| unreachable!()))
}

/// Real classification by the determinant and the restriction to `z = 0`.
pub fn conic_classify(c: &Conic) -> Result<ConicClass> {
    if !c.field().is_real() {
        return Err(Error::NonRealField);
    }
    if !c.is_smooth() {
        return Ok(ConicClass::Degenerate);
    }
    let s = c.sym();
    let disc = &(&s[1] * &s[1]) - &(&s[0] * &s[3]);
    Ok(match disc.real_sign()? {
        -1 => ConicClass::SmoothEllipse,
        1 => ConicClass::SmoothHyperbola,
        _ => ConicClass::SmoothParabola,
    })
}

pub fn polar(p: &ProjectivePoint, c: &Conic) -> Result<ProjectiveLine> {
    if !c.is_smooth() {
        return Err(Error::Degenerate("polar with respect to a singular conic".into()));
    }
    let m = c.matrix();
    ProjectiveLine::new([dot(&m[0], p.coords()), dot(&m[1], p.coords()), dot(&m[2], p.coords())])
}

pub fn pole(l: &ProjectiveLine, c: &Conic) -> Result<ProjectivePoint> {
    if !c.is_smooth() {
        return Err(Error::Degenerate("pole with respect to a singular conic".into()));
    }
    // Adjugate rows: cross products of matrix rows.
    let m = c.matrix();
    let adj = [cross(&m[1], &m[2]), cross(&m[2], &m[0]), cross(&m[0], &m[1])];
    ProjectivePoint::new([dot(&adj[0], l.coords()), dot(&adj[1], l.coords()), dot(&adj[2], l.coords())])
}

/// Circle with affine center and squared radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Circle {
    pub center: ProjectivePoint,
    pub r2: FE,
}

impl Circle {
    pub fn new(center: ProjectivePoint, r2: FE) -> Result<Self> {
        if center.coords()[2].is_zero() {
            return Err(Error::Invalid("circle center must be affine".into()));
        }
        Ok(Circle { center, r2 })
    }

    /// Circle about the origin.
    pub fn centered(r2: FE) -> Self {
        let f = r2.field().clone();
        Circle { center: ProjectivePoint::from_i64(&f, [0, 0, 1]).expect("origin"), r2 }
    }

    pub fn to_conic(&self) -> Result<Conic> {
        let c = self.center.coords();
        let w = c[2].inv()?;
        let cx = &c[0] * &w;
        let cy = &c[1] * &w;
        let f = cx.field().clone();
        let one = FE::one(&f);
        let zero = FE::zero(&f);
        let s33 = &(&(&cx * &cx) + &(&cy * &cy)) - &self.r2;
        Conic::from_sym([one.clone(), zero.clone(), -&cx, one, -&cy, s33])
    }
}

/// Polar images with respect to a circle.
#[derive(Clone, Debug)]
pub struct Reciprocal {
    /// Polar of each input point.
    pub lines: Vec<ProjectiveLine>,
    /// Pole of each input line.
    pub points: Vec<ProjectivePoint>,
    /// Indices of input points at the circle's center (their polar is the
    /// line at infinity).
    pub center_points: Vec<usize>,
}

pub fn reciprocal_set(points: &[ProjectivePoint], lines: &[ProjectiveLine], gamma: &Circle) -> Result<Reciprocal> {
    let c = gamma.to_conic()?;
    if !c.is_smooth() {
        return Err(Error::Degenerate("degenerate circle".into()));
    }
    let center_points = points.iter().enumerate().filter(|(_, p)| **p == gamma.center).map(|(i, _)| i).collect();
    Ok(Reciprocal {
        lines: points.iter().map(|p| polar(p, &c)).collect::<Result<_>>()?,
        points: lines.iter().map(|l| pole(l, &c)).collect::<Result<_>>()?,
        center_points,
    })
}

/// Concentric midcircles agree iff `R²ₐ·r²ₐ = R²ᵦ·r²ᵦ`.
pub fn midcircle_condition(r2a_out: &FE, r2a_in: &FE, r2b_out: &FE, r2b_in: &FE) -> Result<bool> {
    for v in [r2a_out, r2a_in, r2b_out, r2b_in] {
        if v.field().is_real() && v.real_sign()? <= 0 {
            return Err(Error::Invalid("squared radius must be positive".into()));
        }
    }
    Ok((r2a_out * r2a_in) == (r2b_out * r2b_in))
}

/// Squared distance of an affine point from the origin.
pub fn radius2(p: &ProjectivePoint) -> Result<FE> {
    let c = p.coords();
    let w = c[2].inv().map_err(|_| Error::Invalid("point at infinity has no radius".into()))?;
    let x = &c[0] * &w;
    let y = &c[1] * &w;
    Ok(&(&x * &x) + &(&y * &y))
}

/// Squared distance from the origin to a line `ax + by + cz = 0`:
/// `c² / (a² + b²)`.
pub fn line_distance2(l: &ProjectiveLine) -> Result<FE> {
    let c = l.coords();
    let n = &(&c[0] * &c[0]) + &(&c[1] * &c[1]);
    Ok(&(&c[2] * &c[2]) * &n.inv().map_err(|_| Error::Invalid("line at infinity".into()))?)
}
