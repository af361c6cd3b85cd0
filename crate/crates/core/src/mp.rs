//! Multiprecision complex arithmetic and polynomial root finding.
//!
//! Precision is carried in binary digits (bits). Callers reason in decimal
//! digits and convert with [`bits_for_digits`].

use dashu_base::{Sign, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::scalar::Scalar;

pub type MpFloat = FBig<HalfEven, 2>;

/// Working bits for `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

pub fn mp_zero(bits: usize) -> MpFloat {
    MpFloat::ZERO.with_precision(bits).value()
}

pub fn mp_from_i64(n: i64, bits: usize) -> MpFloat {
    MpFloat::from(n).with_precision(bits).value()
}

pub fn mp_from_f64(x: f64, bits: usize) -> MpFloat {
    MpFloat::try_from(x)
        .unwrap_or(MpFloat::ZERO)
        .with_precision(bits)
        .value()
}

pub fn ibig_from_bigint(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let s = if sign == num_bigint::Sign::Minus { Sign::Negative } else { Sign::Positive };
    IBig::from_parts(s, mag)
}

pub fn mp_from_bigint(n: &BigInt, bits: usize) -> MpFloat {
    MpFloat::from(ibig_from_bigint(n)).with_precision(bits).value()
}

pub fn mp_from_q(v: &Q, bits: usize) -> MpFloat {
    mp_from_bigint(v.numer(), bits) / mp_from_bigint(v.denom(), bits)
}

pub fn mp_to_f64(x: &MpFloat) -> f64 {
    x.to_f64().value()
}

pub fn mp_is_zero(x: &MpFloat) -> bool {
    x.repr().is_zero()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        MpComplex { re: mp_zero(bits), im: mp_zero(bits) }
    }

    pub fn from_f64(x: f64, y: f64, bits: usize) -> Self {
        MpComplex { re: mp_from_f64(x, bits), im: mp_from_f64(y, bits) }
    }

    pub fn from_c64(z: Complex64, bits: usize) -> Self {
        Self::from_f64(z.re, z.im, bits)
    }

    pub fn from_q(v: &Q, bits: usize) -> Self {
        MpComplex { re: mp_from_q(v, bits), im: mp_zero(bits) }
    }

    pub fn bits(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(mp_to_f64(&self.re), mp_to_f64(&self.im))
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> MpFloat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> MpFloat {
        self.norm_sqr().sqrt()
    }

    /// Modulus rounded to f64 (subnormal values flush to zero).
    pub fn abs_f64(&self) -> f64 {
        let a = mp_to_f64(&self.re).hypot(mp_to_f64(&self.im));
        if a.is_finite() {
            a
        } else {
            mp_to_f64(&self.abs())
        }
    }

    pub fn scale_real(&self, s: &MpFloat) -> Self {
        MpComplex { re: &self.re * s, im: &self.im * s }
    }

    pub fn with_bits(&self, bits: usize) -> Self {
        MpComplex {
            re: self.re.clone().with_precision(bits).value(),
            im: self.im.clone().with_precision(bits).value(),
        }
    }
}

impl Scalar for MpComplex {
    fn zero_like(&self) -> Self {
        MpComplex::zero(self.bits())
    }
    fn one_like(&self) -> Self {
        MpComplex { re: mp_from_i64(1, self.bits()), im: mp_zero(self.bits()) }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        MpComplex { re: mp_from_i64(n, self.bits()), im: mp_zero(self.bits()) }
    }
    fn vanishes(&self) -> bool {
        mp_is_zero(&self.re) && mp_is_zero(&self.im)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        MpComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        MpComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        MpComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn neg_ref(&self) -> Self {
        MpComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.vanishes() {
            return None;
        }
        let n = self.norm_sqr();
        Some(MpComplex { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

fn horner_c64(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration in double precision. `coeffs` low degree first,
/// nonzero leading coefficient.
pub fn roots_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    // Geometric mean estimate keeps starts near the root shell.
    let r0 = monic[0].norm().powf(1.0 / n as f64).clamp(1e-6, radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r0, ang)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_c64(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    sum += 1.0 / (z[k] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of a polynomial with multiprecision coefficients (low degree first),
/// polished by multiprecision Aberth steps to about `bits` bits.
pub fn roots_mp(coeffs: &[MpComplex], bits: usize) -> Result<Vec<MpComplex>> {
    let n = coeffs
        .iter()
        .rposition(|c| !c.vanishes())
        .ok_or_else(|| Error::Degenerate("zero polynomial".into()))?;
    let coeffs: Vec<MpComplex> = coeffs[..=n].iter().map(|c| c.with_bits(bits)).collect();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Scale into double range before the f64 pass.
    let scale = coeffs
        .iter()
        .map(|c| c.abs())
        .fold(mp_zero(bits), |a, b| if b > a { b } else { a });
    let c64: Vec<Complex64> = coeffs.iter().map(|c| c.scale_real(&(mp_from_i64(1, bits) / &scale)).to_c64()).collect();
    let start = roots_f64(&c64);
    let mut z: Vec<MpComplex> = start.iter().map(|&s| MpComplex::from_c64(s, bits)).collect();
    let tol = 2f64.powi(-(bits as i32 - 24)).max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_mp(&coeffs, &z[k]);
            if p.vanishes() {
                continue;
            }
            let Some(ratio) = p.div_ref(&dp) else { continue };
            let mut sum = z[k].zero_like();
            for j in 0..n {
                if j != k {
                    if let Some(inv) = z[k].sub_ref(&z[j]).try_inv() {
                        sum = sum.add_ref(&inv);
                    }
                }
            }
            let denom = ratio.one_like().sub_ref(&ratio.mul_ref(&sum));
            let Some(w) = ratio.div_ref(&denom) else { continue };
            max_step = max_step.max(w.abs_f64() / (1.0 + z[k].abs_f64()));
            z[k] = z[k].sub_ref(&w);
        }
        if max_step < tol {
            return Ok(z);
        }
    }
    Err(Error::NeedPrecision {
        digits: (bits as f64 / std::f64::consts::LOG2_10) as u32,
        what: "root polishing did not converge".into(),
    })
}

pub fn horner_mp(coeffs: &[MpComplex], z: &MpComplex) -> (MpComplex, MpComplex) {
    let mut p = z.zero_like();
    let mut dp = z.zero_like();
    for c in coeffs.iter().rev() {
        dp = dp.mul_ref(z).add_ref(&p);
        p = p.mul_ref(z).add_ref(c);
    }
    (p, dp)
}

/// Euclidean norm of a complex 3-vector, as f64.
pub fn norm3_f64(v: &[MpComplex; 3]) -> f64 {
    v.iter().map(|c| c.abs_f64().powi(2)).sum::<f64>().sqrt()
}

/// Scale a homogeneous triple to unit norm with a real positive first
/// nonnegligible coordinate, so that equal projective points compare equal.
pub fn normalize3(v: &[MpComplex; 3]) -> [MpComplex; 3] {
    let bits = v[0].bits();
    let norm = v.iter().map(|c| c.norm_sqr()).fold(mp_zero(bits), |a, b| a + b).sqrt();
    let big = norm3_f64(v) * 1e-6;
    let pivot = v.iter().find(|c| c.abs_f64() > big).unwrap_or(&v[0]);
    // phase = conj(pivot)/|pivot|
    let pabs = pivot.abs();
    let phase = pivot.conj().scale_real(&(mp_from_i64(1, bits) / &pabs));
    let inv = mp_from_i64(1, bits) / &norm;
    [
        v[0].mul_ref(&phase).scale_real(&inv),
        v[1].mul_ref(&phase).scale_real(&inv),
        v[2].mul_ref(&phase).scale_real(&inv),
    ]
}

pub fn cross3(a: &[MpComplex; 3], b: &[MpComplex; 3]) -> [MpComplex; 3] {
    [
        a[1].mul_ref(&b[2]).sub_ref(&a[2].mul_ref(&b[1])),
        a[2].mul_ref(&b[0]).sub_ref(&a[0].mul_ref(&b[2])),
        a[0].mul_ref(&b[1]).sub_ref(&a[1].mul_ref(&b[0])),
    ]
}

pub fn dot3(a: &[MpComplex; 3], b: &[MpComplex; 3]) -> MpComplex {
    a[0].mul_ref(&b[0]).add_ref(&a[1].mul_ref(&b[1])).add_ref(&a[2].mul_ref(&b[2]))
}

/// Distance between two normalized projective points.
pub fn proj_dist(a: &[MpComplex; 3], b: &[MpComplex; 3]) -> f64 {
    (0..3).map(|i| a[i].sub_ref(&b[i]).abs_f64().powi(2)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn rational_conversion_is_accurate() {
        let x = mp_from_q(&q_frac(1, 3), 300);
        let back = &x * &mp_from_i64(3, 300) - mp_from_i64(1, 300);
        assert!(mp_to_f64(&back).abs() < 1e-85);
    }

    #[test]
    fn roots_of_unity() {
        let bits = bits_for_digits(60);
        let mut c = vec![MpComplex::zero(bits); 8];
        c[0] = MpComplex::from_f64(-1.0, 0.0, bits);
        c[7] = MpComplex::from_f64(1.0, 0.0, bits);
        let roots = roots_mp(&c, bits).unwrap();
        assert_eq!(roots.len(), 7);
        for r in &roots {
            let (p, _) = horner_mp(&c, r);
            assert!(p.abs_f64() < 1e-55);
        }
    }

    #[test]
    fn large_coefficients() {
        let bits = bits_for_digits(50);
        // (t - 10^6)(t + 1/3)
        let c = vec![
            MpComplex::from_q(&q_frac(-1_000_000, 3), bits),
            MpComplex::from_q(&q_frac(1 - 3_000_000, 3), bits),
            MpComplex::from_q(&q_frac(1, 1), bits),
        ];
        let mut roots: Vec<f64> = roots_mp(&c, bits).unwrap().iter().map(|r| r.to_c64().re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0 / 3.0).abs() < 1e-14);
        assert!((roots[1] - 1e6).abs() < 1e-8);
    }
}
