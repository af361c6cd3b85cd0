//! Homogeneous ternary polynomial algebra.

mod form;
mod text;

pub use form::{
    bordered_hessian, hessian_det, jacobian_det, line_basis, polymat_det, BinaryForm, Mono, PolyMap, TernaryForm,
};
pub use text::{format_form, parse_element, parse_form, parse_rational_form, CoeffText, ParsedForm, MAX_DEGREE};

use crate::rational::Q;

/// The restricted-resultant test on a univariate polynomial.
pub use crate::upoly::resultant_squarefree;

/// Divides every coefficient by `divisor` and insists the result is integral.
pub fn normalize_integral(f: &TernaryForm<Q>, divisor: i64, what: &str) -> crate::Result<TernaryForm<Q>> {
    let d = crate::rational::q(divisor);
    let out = f.map_coeffs(|c| c / &d);
    if out.terms().values().any(|c| !c.is_integer()) {
        return Err(crate::Error::SelfCheck(format!("{what}: division by {divisor} is not integral")));
    }
    Ok(out)
}
