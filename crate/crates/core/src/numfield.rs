//! Simple algebraic number fields ℚ(α) = ℚ[t]/(m(t)) with a fixed complex
//! embedding.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::{self, MpComplex};
use crate::rational::{fmt_rational, parse_vec, q, q_from_f64, serde_vec, Q};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

/// Bits kept for the stored embedding (about 150 decimal digits).
const ROOT_BITS: usize = 512;

#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Q>,
    root: MpComplex,
    root_c64: Complex64,
    is_real: bool,
    /// Rational interval containing exactly one root of m, used by `real_sign`.
    isolating: Option<(Q, Q)>,
    warnings: Vec<String>,
}

pub type FieldRef = Arc<NumberField>;

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && (self.root_c64 - other.root_c64).norm() < 1e-9
    }
}

fn monic_poly(minpoly: &[Q]) -> UPoly<Q> {
    let mut c = minpoly.to_vec();
    c.push(q(1));
    UPoly::new(c)
}

fn eval_c64(m: &UPoly<Q>, z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in m.coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + crate::rational::q_to_f64(c);
    }
    (p, dp)
}

fn eval_q(m: &UPoly<Q>, t: &Q) -> Q {
    m.eval(t)
}

/// Exact interval Horner evaluation of `p` over `[lo, hi]`.
fn eval_interval(p: &UPoly<Q>, lo: &Q, hi: &Q) -> (Q, Q) {
    let mut a = Q::zero();
    let mut b = Q::zero();
    for c in p.coeffs.iter().rev() {
        let cands = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

impl NumberField {
    /// Builds ℚ[t]/(m) with `minpoly = [c₀, …, c_{d−1}]` of the monic m and
    /// the root nearest `root_hint`.
    pub fn create(minpoly: &[Q], root_hint: Complex64) -> Result<FieldRef> {
        if minpoly.is_empty() {
            return Err(Error::Invalid("minimal polynomial must have degree ≥ 1".into()));
        }
        let m = monic_poly(minpoly);
        if !m.is_squarefree() {
            return Err(Error::Invalid("minimal polynomial is not squarefree".into()));
        }
        let mut warnings = Vec::new();
        let d = minpoly.len();
        if d > 1 {
            if let Some(r) = rational_root(&m) {
                warnings.push(format!("minimal polynomial has the rational root {}", fmt_rational(&r)));
            }
        }
        let real_hint = root_hint.im == 0.0;
        let mut z = root_hint;
        let mut converged = false;
        for _ in 0..200 {
            let (p, dp) = eval_c64(&m, z);
            if dp.norm() == 0.0 {
                break;
            }
            let mut step = p / dp;
            if real_hint {
                step.im = 0.0;
            }
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                converged = true;
                break;
            }
        }
        let (p, _) = eval_c64(&m, z);
        let scale: f64 = m.coeffs.iter().map(|c| crate::rational::q_to_f64(c).abs()).sum::<f64>() * (1.0 + z.norm()).powi(d as i32);
        if !converged && p.norm() > 1e-12 * scale {
            return Err(Error::RootNotConverged(format!("hint {root_hint} ended at {z}")));
        }
        let root = polish_mp(&m, z, ROOT_BITS, real_hint)?;
        let root_c64 = root.to_c64();
        let mut isolating = None;
        if real_hint {
            isolating = isolate_real(&m, root_c64.re);
            if isolating.is_none() {
                return Err(Error::RootNotConverged("could not isolate the real root".into()));
            }
        }
        Ok(Arc::new(NumberField {
            minpoly: minpoly.to_vec(),
            root,
            root_c64,
            is_real: real_hint,
            isolating,
            warnings,
        }))
    }

    /// Default embedding: the largest real root, else the root with positive
    /// imaginary part and largest real part.
    pub fn create_default(minpoly: &[Q]) -> Result<FieldRef> {
        let m = monic_poly(minpoly);
        let c: Vec<Complex64> = m.coeffs.iter().map(|v| Complex64::new(crate::rational::q_to_f64(v), 0.0)).collect();
        let roots = mp::roots_f64(&c);
        let real: Vec<f64> = roots.iter().filter(|r| r.im.abs() < 1e-9 * (1.0 + r.norm())).map(|r| r.re).collect();
        let hint = if let Some(x) = real.iter().cloned().fold(None, |a: Option<f64>, b| Some(a.map_or(b, |a| a.max(b)))) {
            Complex64::new(x, 0.0)
        } else {
            roots
                .iter()
                .filter(|r| r.im > 0.0)
                .max_by(|a, b| a.re.total_cmp(&b.re))
                .cloned()
                .ok_or_else(|| Error::Invalid("no root found".into()))?
        };
        Self::create(minpoly, hint)
    }

    /// The field ℚ (minimal polynomial t).
    pub fn rationals() -> FieldRef {
        Self::create(&[q(0)], Complex64::new(0.0, 0.0)).expect("t has the root 0")
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len()
    }

    pub fn minpoly(&self) -> &[Q] {
        &self.minpoly
    }

    pub fn minpoly_upoly(&self) -> UPoly<Q> {
        monic_poly(&self.minpoly)
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn root_c64(&self) -> Complex64 {
        self.root_c64
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The embedding of α to about `bits` bits.
    pub fn root_mp(&self, bits: usize) -> MpComplex {
        if bits <= ROOT_BITS {
            self.root.with_bits(bits)
        } else {
            polish_mp(&self.minpoly_upoly(), self.root_c64, bits, self.is_real).unwrap_or_else(|_| self.root.with_bits(bits))
        }
    }
}

fn rational_root(m: &UPoly<Q>) -> Option<Q> {
    // Clear denominators, then try ±p/q with p | a₀, q | a_d (small heights only).
    let lcm = m.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<num_bigint::BigInt> = m.coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return Some(Q::zero());
    }
    let small = |n: &num_bigint::BigInt| -> Vec<i64> {
        let n: i64 = match i64::try_from(n.abs()) {
            Ok(v) if v <= 1_000_000 => v,
            _ => return Vec::new(),
        };
        (1..=n).filter(|k| n % k == 0).collect()
    };
    for p in small(&ints[0]) {
        for qq in small(ints.last().unwrap()) {
            for s in [1, -1] {
                let r = Q::new((s * p).into(), qq.into());
                if eval_q(m, &r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn polish_mp(m: &UPoly<Q>, start: Complex64, bits: usize, real: bool) -> Result<MpComplex> {
    let coeffs: Vec<MpComplex> = m.coeffs.iter().map(|c| MpComplex::from_q(c, bits)).collect();
    let mut z = MpComplex::from_c64(if real { Complex64::new(start.re, 0.0) } else { start }, bits);
    let tol = 2f64.powi(-(bits as i32) + 16);
    for _ in 0..64 {
        let (p, dp) = mp::horner_mp(&coeffs, &z);
        let step = p.div_ref(&dp).ok_or_else(|| Error::RootNotConverged("vanishing derivative".into()))?;
        let size = step.abs_f64();
        z = z.sub_ref(&step);
        if size <= tol * (1.0 + z.abs_f64()) {
            return Ok(z);
        }
    }
    Err(Error::RootNotConverged("multiprecision Newton stalled".into()))
}

fn isolate_real(m: &UPoly<Q>, x: f64) -> Option<(Q, Q)> {
    let dm = m.derivative();
    let mut eps = 1e-12 * (1.0 + x.abs());
    for _ in 0..12 {
        let lo = q_from_f64(x - eps);
        let hi = q_from_f64(x + eps);
        let flo = eval_q(m, &lo);
        let fhi = eval_q(m, &hi);
        if !flo.is_zero() && !fhi.is_zero() && flo.signum() != fhi.signum() {
            let (a, b) = eval_interval(&dm, &lo, &hi);
            if a.is_positive() || b.is_negative() {
                return Some((lo, hi));
            }
        }
        if let Some(r) = (flo.is_zero()).then(|| lo.clone()).or_else(|| fhi.is_zero().then(|| hi.clone())) {
            return Some((r.clone(), r));
        }
        eps *= 0.01;
        if eps < 1e-300 {
            break;
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct FieldElement {
    coeffs: Vec<Q>,
    field: FieldRef,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    /// Builds an element from power-basis coordinates (reduced if too long).
    pub fn new(field: &FieldRef, coeffs: Vec<Q>) -> Self {
        reduce(field, coeffs)
    }

    pub fn from_q(field: &FieldRef, v: Q) -> Self {
        let mut c = vec![Q::zero(); field.degree()];
        c[0] = v;
        FieldElement { coeffs: c, field: field.clone() }
    }

    pub fn from_i64(field: &FieldRef, v: i64) -> Self {
        Self::from_q(field, q(v))
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_i64(field, 1)
    }

    /// The generator α.
    pub fn generator(field: &FieldRef) -> Self {
        Self::new(field, vec![q(0), q(1)])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FieldElement { coeffs: c, field: self.field.clone() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FieldElement { coeffs: c, field: self.field.clone() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = self.coeffs.len();
        if d == 1 {
            return Ok(FieldElement { coeffs: vec![&self.coeffs[0] * &other.coeffs[0]], field: self.field.clone() });
        }
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(reduce(&self.field, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.coeffs.len() == 1 {
            return Ok(FieldElement { coeffs: vec![self.coeffs[0].recip()], field: self.field.clone() });
        }
        let u = UPoly::new(self.coeffs.clone());
        let m = self.field.minpoly_upoly();
        let (g, s, _) = u.ext_gcd(&m);
        if g.degree() != Some(0) {
            // m is reducible and u shares a factor with it.
            return Err(Error::ZeroDivision);
        }
        Ok(reduce(&self.field, s.coeffs))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Scalar::pow_u32(self, e)
    }

    /// Value of the embedding to about `digits` decimal digits.
    pub fn approx(&self, digits: u32) -> MpComplex {
        let bits = mp::bits_for_digits(digits.max(1));
        let alpha = self.field.root_mp(bits);
        let mut acc = MpComplex::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&alpha).add_ref(&MpComplex::from_q(c, bits));
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        if self.coeffs.len() == 1 {
            return Complex64::new(crate::rational::q_to_f64(&self.coeffs[0]), 0.0);
        }
        self.approx(30).to_c64()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    /// Decimal rendering `re` or `re + im i` with `digits` significant digits.
    pub fn approx_string(&self, digits: u32) -> String {
        let v = self.approx(digits + 5);
        let fmt = |x: &mp::MpFloat| -> String {
            let dec = x.to_decimal().value();
            let dec = dec.with_precision(digits as usize).value();
            format!("{dec}")
        };
        if self.field.is_real || mp::mp_is_zero(&v.im) || v.im.clone().with_precision(64).value().to_f64().value().abs() < 10f64.powi(-(digits as i32) - 2) {
            fmt(&v.re)
        } else {
            format!("{} + {}i", fmt(&v.re), fmt(&v.im))
        }
    }

    /// Exact sign of the real embedding.
    pub fn real_sign(&self) -> Result<i8> {
        if !self.field.is_real {
            return Err(Error::NonRealField);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(if self.coeffs[0].is_positive() { 1 } else { -1 });
        }
        let (mut lo, mut hi) = self.field.isolating.clone().expect("real field has isolating interval");
        let u = UPoly::new(self.coeffs.clone());
        let m = self.field.minpoly_upoly();
        let g = u.gcd(&m);
        if g.degree().unwrap_or(0) >= 1 {
            let (gl, gh) = (eval_q(&g, &lo), eval_q(&g, &hi));
            if gl.is_zero() || gh.is_zero() || gl.signum() != gh.signum() {
                return Ok(0);
            }
        }
        let m_lo_sign = eval_q(&m, &lo).signum();
        for _ in 0..4000 {
            if lo == hi {
                let v = eval_q(&u, &lo);
                return Ok(sign_of(&v));
            }
            let (a, b) = eval_interval(&u, &lo, &hi);
            if a.is_positive() {
                return Ok(1);
            }
            if b.is_negative() {
                return Ok(-1);
            }
            let mid = (&lo + &hi) / q(2);
            let fm = eval_q(&m, &mid);
            if fm.is_zero() {
                lo = mid.clone();
                hi = mid;
            } else if fm.signum() == m_lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::SelfCheck("real_sign failed to separate from zero".into()))
    }

    /// Exact comparison of real embeddings.
    pub fn cmp_real(&self, other: &Self) -> Result<std::cmp::Ordering> {
        Ok(self.try_sub(other)?.real_sign()?.cmp(&0))
    }

    /// Polynomial text in the generator `a`, e.g. `-1/2 + 3a - a^2`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn sign_of(v: &Q) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn reduce(field: &FieldRef, mut c: Vec<Q>) -> FieldElement {
    let d = field.degree();
    let m = &field.minpoly;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = c.len() - d;
        for (i, mi) in m.iter().enumerate() {
            if !mi.is_zero() {
                c[base + i] -= &top * mi;
            }
        }
    }
    c.resize(d, Q::zero());
    FieldElement { coeffs: c, field: field.clone() }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics on field mismatch; use the `try_` form for fallible code.
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field mismatch")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$try(&rhs).expect("field mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().map(|c| -c).collect(), field: self.field.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        FieldElement::from_i64(&self.field, n)
    }
    fn vanishes(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// JSON shape of a field header.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldJson {
    pub minpoly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<[f64; 2]>,
}

/// JSON shape of a single element: its field plus coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub minpoly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<[f64; 2]>,
    pub coeffs: Vec<String>,
}

pub fn field_to_json(f: &NumberField) -> FieldJson {
    FieldJson { minpoly: serde_vec(&f.minpoly), root: Some([f.root_c64.re, if f.is_real { 0.0 } else { f.root_c64.im }]) }
}

pub fn field_from_json(j: &FieldJson) -> Result<FieldRef> {
    let minpoly = parse_vec(&j.minpoly)?;
    match j.root {
        Some([re, im]) if re.is_finite() && im.is_finite() => NumberField::create(&minpoly, Complex64::new(re, im)),
        Some(_) => Err(Error::Invalid("root hint must be finite".into())),
        None => NumberField::create_default(&minpoly),
    }
}

pub fn element_to_json(u: &FieldElement) -> ElementJson {
    let f = field_to_json(&u.field);
    ElementJson { minpoly: f.minpoly, root: f.root, coeffs: serde_vec(&u.coeffs) }
}

pub fn element_from_json(j: &ElementJson) -> Result<FieldElement> {
    let field = field_from_json(&FieldJson { minpoly: j.minpoly.clone(), root: j.root })?;
    element_in_field(&field, &j.coeffs)
}

/// Parses coordinate strings into an element of an existing field.
pub fn element_in_field(field: &FieldRef, coeffs: &[String]) -> Result<FieldElement> {
    if coeffs.len() > field.degree() {
        return Err(Error::Invalid(format!("{} coordinates for a degree-{} field", coeffs.len(), field.degree())));
    }
    Ok(FieldElement::new(field, parse_vec(coeffs)?))
}
