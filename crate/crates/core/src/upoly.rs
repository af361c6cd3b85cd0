//! Dense univariate polynomials over a [`Scalar`] field, low degree first.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<K: Scalar> {
    /// `coeffs[i]` multiplies `t^i`; no trailing zeros.
    pub coeffs: Vec<K>,
}

impl<K: Scalar> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.vanishes()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_ref(&c.from_i64_like(i as i64)))
            .collect();
        Self::new(out)
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = t.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(t).add_ref(c);
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv_lead = d.lead()?.try_inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let zero = inv_lead.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&inv_lead);
            if c.vanishes() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub_ref(&c.mul_ref(di));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.try_inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = |p: &Self| -> Self {
            let c = p.coeffs.first().or(other.coeffs.first()).expect("nonzero input");
            Self::new(vec![c.one_like()])
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one(self), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one(self));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().and_then(|l| l.try_inv()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// True iff `gcd(f, f') = 1`. The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

/// The restricted-resultant test: does `f` have only simple roots?
pub fn resultant_squarefree<K: Scalar>(f: &UPoly<K>) -> bool {
    f.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Q};

    fn p(c: &[i64]) -> UPoly<Q> {
        UPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    #[test]
    fn squarefree_examples() {
        assert!(resultant_squarefree(&p(&[-1, 0, 1])));
        assert!(!resultant_squarefree(&p(&[0, 0, 1])));
    }

    #[test]
    fn ext_gcd_inverts_mod() {
        let m = p(&[2, 1, 1]);
        let u = p(&[0, 1]);
        let (g, s, _) = u.ext_gcd(&m);
        assert_eq!(g, p(&[1]));
        let (_, r) = s.mul(&u).divrem(&m).unwrap();
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 4, 2]);
        let (qq, r) = a.divrem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
