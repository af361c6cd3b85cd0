//! Invariants of the Klein quartic and the numeric polar pipeline.

mod numeric;

pub use numeric::*;

use crate::error::{Error, Result};
use crate::polyalg::{bordered_hessian, hessian_det, jacobian_det, normalize_integral, parse_rational_form, PolyMap, TernaryForm};
use crate::rational::{q, Q};

pub type QForm = TernaryForm<Q>;

#[derive(Clone, Debug)]
pub struct KleinInvariants {
    pub phi4: QForm,
    pub phi6: QForm,
    pub phi14: QForm,
    pub phi21: QForm,
    pub steinerian: QForm,
    pub phi42: QForm,
    pub gradmap: PolyMap<Q>,
}

pub fn phi4() -> QForm {
    parse_rational_form("x^3y + y^3z + z^3x").expect("literal")
}

pub fn phi6_closed_form() -> QForm {
    parse_rational_form("xy^5 + yz^5 + z x^5 - 5x^2y^2z^2").expect("literal")
}

/// Φ₄, Φ₆, Φ₁₄, Φ₂₁ and the Steinerian, without the degree-63 division.
#[derive(Clone, Debug)]
pub struct BaseInvariants {
    pub phi4: QForm,
    pub phi6: QForm,
    pub phi14: QForm,
    pub phi21: QForm,
    pub steinerian: QForm,
}

pub fn build_base() -> Result<BaseInvariants> {
    let phi4 = phi4();
    let phi6 = normalize_integral(&hessian_det(&phi4)?, -54, "Φ₆ = −det Hess(Φ₄)/54")?;
    let phi14 = normalize_integral(&bordered_hessian(&phi4, &phi6)?, 9, "Φ₁₄ = BH(Φ₄,Φ₆)/9")?;
    let phi21 = normalize_integral(&jacobian_det(&phi4, &phi6, &phi14)?, 14, "Φ₂₁ = J/14")?;
    let steinerian = phi4.pow(3, &q(1)).scale(&q(4)).add(&phi6.pow(2, &q(1)));
    Ok(BaseInvariants { phi4, phi6, phi14, phi21, steinerian })
}

/// Builds all invariants including Φ₄₂ = Φ₂₁(∇Φ₄)/Φ₂₁.
pub fn build_invariants() -> Result<KleinInvariants> {
    let b = build_base()?;
    let gradmap = b.phi4.gradient();
    let phi63 = b.phi21.compose(&gradmap);
    let phi42 = phi63.divide_exact(&b.phi21).map_err(|e| Error::SelfCheck(format!("Φ₆₃/Φ₂₁: {e}")))?;
    Ok(KleinInvariants { phi4: b.phi4, phi6: b.phi6, phi14: b.phi14, phi21: b.phi21, steinerian: b.steinerian, phi42, gradmap })
}

/// Exponents (i, j, k) with 4i + 6j + 14k = 42.
pub fn degree42_exponents() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for k in 0..=3u32 {
        for j in 0..=7u32 {
            let rest = 42i64 - 14 * k as i64 - 6 * j as i64;
            if rest >= 0 && rest % 4 == 0 {
                out.push([(rest / 4) as u32, j, k]);
            }
        }
    }
    out.sort();
    out
}

/// Solves `target = Σ cᵢ·basisᵢ` exactly over ℚ by Gaussian elimination on the
/// coefficient matrix (one row per monomial). Returns the coefficients.
pub fn solve_in_span(target: &QForm, basis: &[QForm]) -> Result<Vec<Q>> {
    let mut monos: Vec<[u32; 3]> = target.terms().keys().cloned().collect();
    for b in basis {
        monos.extend(b.terms().keys().cloned());
    }
    monos.sort();
    monos.dedup();
    let n = basis.len();
    let zero = q(0);
    let mut rows: Vec<Vec<Q>> = monos
        .iter()
        .map(|m| {
            let mut r: Vec<Q> = basis.iter().map(|b| b.coeff(m).cloned().unwrap_or_else(|| zero.clone())).collect();
            r.push(target.coeff(m).cloned().unwrap_or_else(|| zero.clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != zero) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != zero {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != zero) {
        return Err(Error::NoSolution("target is outside the span".into()));
    }
    let mut sol = vec![zero.clone(); n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][n].clone();
    }
    Ok(sol)
}

/// Expresses Φ₂₁² in the nine monomials Φ₄ⁱΦ₆ʲΦ₁₄ᵏ of degree 42.
pub fn verify_phi21_square_membership(phi4: &QForm, phi6: &QForm, phi14: &QForm, phi21: &QForm) -> Result<Vec<([u32; 3], Q)>> {
    let one = q(1);
    let exps = degree42_exponents();
    let basis: Vec<QForm> = exps
        .iter()
        .map(|e| phi4.pow(e[0], &one).mul(&phi6.pow(e[1], &one)).mul(&phi14.pow(e[2], &one)))
        .collect();
    let target = phi21.mul(phi21);
    let sol = solve_in_span(&target, &basis)?;
    if sol.iter().all(|c| *c == q(0)) {
        return Err(Error::NoSolution("only the zero combination".into()));
    }
    Ok(exps.into_iter().zip(sol).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi6_matches_closed_form() {
        let b = build_base().unwrap();
        assert_eq!(b.phi6, phi6_closed_form());
        assert_eq!(b.phi14.degree(), 14);
        assert_eq!(b.phi21.degree(), 21);
        assert_eq!(b.steinerian.degree(), 12);
    }

    #[test]
    fn nine_exponents() {
        let e = degree42_exponents();
        assert_eq!(e.len(), 9);
        assert!(e.iter().all(|[i, j, k]| 4 * i + 6 * j + 14 * k == 42));
    }
}
