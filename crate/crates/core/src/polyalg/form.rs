use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents of x, y, z.
pub type Mono = [u32; 3];

/// A homogeneous polynomial in x, y, z. Terms are kept in lexicographic order
/// with x > y > z, which on homogeneous forms is also graded lex.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<K: Scalar> {
    degree: u32,
    terms: BTreeMap<Mono, K>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

impl<K: Scalar> TernaryForm<K> {
    pub fn zero(degree: u32) -> Self {
        TernaryForm { degree, terms: BTreeMap::new() }
    }

    /// Builds a form from terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Mono, K)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (m, c) in terms {
            if m[0] as u64 + m[1] as u64 + m[2] as u64 != degree as u64 {
                return Err(Error::Invalid(format!("monomial {m:?} is not of degree {degree}")));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn constant(c: K) -> Self {
        let mut f = Self::zero(0);
        f.add_term([0, 0, 0], c);
        f
    }

    /// The coordinate function x, y or z (index 0, 1, 2).
    pub fn var(index: usize, one: &K) -> Self {
        let mut m = [0; 3];
        m[index] = 1;
        let mut f = Self::zero(1);
        f.add_term(m, one.one_like());
        f
    }

    pub fn linear(coeffs: &[K; 3]) -> Self {
        let mut f = Self::zero(1);
        f.add_term([1, 0, 0], coeffs[0].clone());
        f.add_term([0, 1, 0], coeffs[1].clone());
        f.add_term([0, 0, 1], coeffs[2].clone());
        f
    }

    fn add_term(&mut self, m: Mono, c: K) {
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add_ref(&c);
                if s.vanishes() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Mono, K> {
        &self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Option<&K> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in lex order x > y > z.
    pub fn leading(&self) -> Option<(&Mono, &K)> {
        self.terms.iter().next_back()
    }

    /// Any coefficient, used to manufacture scalars of the right kind.
    pub fn sample_coeff(&self) -> Option<&K> {
        self.terms.values().next()
    }

    /// Sum. Zero forms adopt the other operand's degree.
    ///
    /// Panics when two nonzero forms of different degrees are added.
    pub fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.degree, rhs.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TernaryForm { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.vanishes() {
            return Self::zero(self.degree);
        }
        TernaryForm { degree: self.degree, terms: self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.degree + rhs.degree);
        let mut acc: HashMap<Mono, K> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let m = mono_mul(ma, mb);
                let p = a.mul_ref(b);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        out.terms = acc.into_iter().filter(|(_, c)| !c.vanishes()).collect();
        out
    }

    pub fn pow(&self, e: u32, one: &K) -> Self {
        let mut acc = Self::constant(one.one_like());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0 = x, 1 = y, 2 = z).
    pub fn diff(&self, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[var] -= 1;
            out.add_term(m2, c.mul_ref(&c.from_i64_like(m[var] as i64)));
        }
        out
    }

    pub fn gradient(&self) -> PolyMap<K> {
        PolyMap([self.diff(0), self.diff(1), self.diff(2)])
    }

    pub fn hessian(&self) -> Vec<Vec<Self>> {
        let g = self.gradient();
        g.0.iter().map(|gi| (0..3).map(|j| gi.diff(j)).collect()).collect()
    }

    pub fn eval(&self, p: &[K; 3]) -> K {
        let zero = p[0].zero_like();
        let mut pows: [Vec<K>; 3] = [vec![p[0].one_like()], vec![p[1].one_like()], vec![p[2].one_like()]];
        for (v, pv) in pows.iter_mut().enumerate() {
            for _ in 0..self.degree {
                let next = pv.last().unwrap().mul_ref(&p[v]);
                pv.push(next);
            }
        }
        self.terms.iter().fold(zero, |acc, (m, c)| {
            acc.add_ref(&c.mul_ref(&pows[0][m[0] as usize]).mul_ref(&pows[1][m[1] as usize]).mul_ref(&pows[2][m[2] as usize]))
        })
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> TernaryForm<L> {
        let mut out = TernaryForm::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Renames variables: variable `i` of the result is variable `perm[i]` of
    /// `self`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.terms {
            let mut m2 = [0; 3];
            for i in 0..3 {
                m2[i] = m[perm[i]];
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Substitutes the components of `map` for x, y, z.
    pub fn compose(&self, map: &PolyMap<K>) -> Self {
        let e = map.degree();
        let mut out = Self::zero(self.degree * e);
        let Some(one) = self.sample_coeff().map(|c| c.one_like()) else {
            return out;
        };
        let powers: Vec<Vec<Self>> = map
            .0
            .iter()
            .map(|g| {
                let mut v = vec![Self::constant(one.clone())];
                for _ in 0..self.degree {
                    let next = v.last().unwrap().mul(g);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut xy_cache: HashMap<(u32, u32), Self> = HashMap::new();
        for (m, c) in &self.terms {
            let xy = xy_cache
                .entry((m[0], m[1]))
                .or_insert_with(|| powers[0][m[0] as usize].mul(&powers[1][m[1] as usize]))
                .clone();
            let term = xy.mul(&powers[2][m[2] as usize]).scale(c);
            out = out.add(&term);
        }
        if out.is_zero() {
            out.degree = self.degree * e;
        }
        out
    }

    /// Multivariate division by `g` in lex order; returns quotient and remainder.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        let (gm, gc) = g.leading().ok_or(Error::ZeroDivision)?;
        let ginv = gc.try_inv().ok_or(Error::ZeroDivision)?;
        let qdeg = self.degree.checked_sub(g.degree);
        let mut quot = Self::zero(qdeg.unwrap_or(0));
        let mut rem = Self::zero(self.degree);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if qdeg.is_some() && mono_divides(gm, &m) {
                let qm = [m[0] - gm[0], m[1] - gm[1], m[2] - gm[2]];
                let qc = c.mul_ref(&ginv);
                for (hm, hc) in &g.terms {
                    work.add_term(mono_mul(&qm, hm), qc.mul_ref(hc).neg_ref());
                }
                // Guard against inexact cancellation in numeric scalars.
                work.terms.remove(&m);
                quot.add_term(qm, qc);
            } else {
                work.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient `self / g`; fails if any remainder survives.
    pub fn divide_exact(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.degree.saturating_sub(g.degree)));
        }
        if self.degree < g.degree {
            return Err(Error::InexactDivision);
        }
        let (gm, gc) = g.leading().unwrap();
        let ginv = gc.try_inv().ok_or(Error::ZeroDivision)?;
        let mut quot = Self::zero(self.degree - g.degree);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !mono_divides(gm, &m) {
                return Err(Error::InexactDivision);
            }
            let qm = [m[0] - gm[0], m[1] - gm[1], m[2] - gm[2]];
            let qc = c.mul_ref(&ginv);
            for (hm, hc) in &g.terms {
                work.add_term(mono_mul(&qm, hm), qc.mul_ref(hc).neg_ref());
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Euler identity residual: x·f_x + y·f_y + z·f_z − d·f (zero for any form).
    pub fn euler_defect(&self) -> Self {
        let Some(one) = self.sample_coeff().map(|c| c.one_like()) else {
            return Self::zero(self.degree);
        };
        let mut acc = Self::zero(self.degree);
        for v in 0..3 {
            acc = acc.add(&Self::var(v, &one).mul(&self.diff(v)));
        }
        acc.sub(&self.scale(&one.from_i64_like(self.degree as i64)))
    }

    /// Substitutes a parametrization of the line `l·(x,y,z) = 0`.
    ///
    /// With `l = (a, b, c)`: if `c ≠ 0` the points are `(c,0,−a)` and
    /// `(0,c,−b)`; else if `b ≠ 0`, `(b,−a,0)` and `(0,0,1)`; else `(0,1,0)` and
    /// `(0,0,1)`. The result is the binary form `f(s·P₁ + t·P₂)`.
    pub fn restrict_to_line(&self, l: &[K; 3]) -> Result<BinaryForm<K>> {
        let (p1, p2) = line_basis(l)?;
        let zero = l[0].zero_like();
        let lin: Vec<Vec<K>> = (0..3).map(|i| vec![p2[i].clone(), p1[i].clone()]).collect();
        let mut pows: Vec<Vec<Vec<K>>> = Vec::with_capacity(3);
        for li in &lin {
            let mut v = vec![vec![l[0].one_like()]];
            for _ in 0..self.degree {
                let next = upoly_mul(v.last().unwrap(), li, &zero);
                v.push(next);
            }
            pows.push(v);
        }
        let d = self.degree as usize;
        let mut coeffs = vec![zero.clone(); d + 1];
        for (m, c) in &self.terms {
            let prod = upoly_mul(&upoly_mul(&pows[0][m[0] as usize], &pows[1][m[1] as usize], &zero), &pows[2][m[2] as usize], &zero);
            for (i, pc) in prod.iter().enumerate() {
                coeffs[i] = coeffs[i].add_ref(&pc.mul_ref(c));
            }
        }
        Ok(BinaryForm { degree: self.degree, coeffs })
    }
}

fn upoly_mul<K: Scalar>(a: &[K], b: &[K], zero: &K) -> Vec<K> {
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.vanishes() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

/// Two points spanning the line `l`, chosen by the pivot rule documented on
/// [`TernaryForm::restrict_to_line`].
pub fn line_basis<K: Scalar>(l: &[K; 3]) -> Result<([K; 3], [K; 3])> {
    let z = l[0].zero_like();
    let one = l[0].one_like();
    let [a, b, c] = l.clone();
    if !c.vanishes() {
        Ok(([c.clone(), z.clone(), a.neg_ref()], [z, c.clone(), b.neg_ref()]))
    } else if !b.vanishes() {
        Ok(([b.clone(), a.neg_ref(), z.clone()], [z.clone(), z, one]))
    } else if !a.vanishes() {
        Ok(([z.clone(), one.clone(), z.clone()], [z.clone(), z, one]))
    } else {
        Err(Error::Degenerate("zero line".into()))
    }
}

/// A binary form `Σ cᵢ sⁱ t^{d−i}`; `coeffs[i]` multiplies `sⁱ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<K: Scalar> {
    pub degree: u32,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> BinaryForm<K> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.vanishes())
    }

    /// Dehomogenization at `t = 1`.
    pub fn to_upoly(&self) -> crate::upoly::UPoly<K> {
        crate::upoly::UPoly::new(self.coeffs.clone())
    }

    /// Number of roots at `(1:0)`, i.e. `d − deg f(s,1)`.
    pub fn roots_at_infinity(&self) -> u32 {
        let p = self.to_upoly();
        match p.degree() {
            Some(k) => self.degree - k as u32,
            None => self.degree,
        }
    }

    /// True iff the form has only simple roots on ℙ¹.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.roots_at_infinity() <= 1 && self.to_upoly().is_squarefree()
    }
}

/// Three forms of one degree: a rational self-map of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<K: Scalar>(pub [TernaryForm<K>; 3]);

impl<K: Scalar> PolyMap<K> {
    pub fn new(components: [TernaryForm<K>; 3]) -> Result<Self> {
        let d = components.iter().find(|c| !c.is_zero()).map(|c| c.degree).ok_or_else(|| Error::Degenerate("all components vanish".into()))?;
        if components.iter().any(|c| !c.is_zero() && c.degree != d) {
            return Err(Error::Invalid("components have different degrees".into()));
        }
        Ok(PolyMap(components))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().find(|c| !c.is_zero()).map(|c| c.degree).unwrap_or(self.0[0].degree)
    }

    pub fn identity(one: &K) -> Self {
        PolyMap([TernaryForm::var(0, one), TernaryForm::var(1, one), TernaryForm::var(2, one)])
    }
}

/// Determinant of a square matrix of forms by cofactor expansion along the
/// first row; the top-level minors are evaluated in parallel and summed in
/// column order, so the result matches sequential evaluation.
pub fn polymat_det<K: Scalar>(m: &[Vec<TernaryForm<K>>]) -> Result<TernaryForm<K>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix must be square and nonempty".into()));
    }
    let one = m
        .iter()
        .flatten()
        .find_map(|f| f.sample_coeff().map(|c| c.one_like()));
    let Some(one) = one else {
        let deg = m.iter().enumerate().map(|(i, r)| r[i].degree).sum();
        return Ok(TernaryForm::zero(deg));
    };
    let terms: Vec<TernaryForm<K>> = (0..n)
        .into_par_iter()
        .map(|j| {
            if m[0][j].is_zero() {
                return TernaryForm::zero(0);
            }
            let minor: Vec<Vec<TernaryForm<K>>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f.clone()).collect())
                .collect();
            let sub = det_seq(&minor, &one);
            let t = m[0][j].mul(&sub);
            if j % 2 == 1 {
                t.neg()
            } else {
                t
            }
        })
        .collect();
    Ok(terms.iter().fold(TernaryForm::zero(0), |acc, t| acc.add(t)))
}

fn det_seq<K: Scalar>(m: &[Vec<TernaryForm<K>>], one: &K) -> TernaryForm<K> {
    let n = m.len();
    if n == 0 {
        return TernaryForm::constant(one.clone());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = TernaryForm::zero(0);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<TernaryForm<K>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f.clone()).collect())
            .collect();
        let t = m[0][j].mul(&det_seq(&minor, one));
        acc = if j % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
    }
    acc
}

/// Hessian determinant.
pub fn hessian_det<K: Scalar>(f: &TernaryForm<K>) -> Result<TernaryForm<K>> {
    polymat_det(&f.hessian())
}

/// Bordered Hessian `det [[Hess f, ∇g], [∇gᵀ, 0]]`.
pub fn bordered_hessian<K: Scalar>(f: &TernaryForm<K>, g: &TernaryForm<K>) -> Result<TernaryForm<K>> {
    let h = f.hessian();
    let dg = g.gradient();
    let mut m: Vec<Vec<TernaryForm<K>>> = Vec::with_capacity(4);
    for i in 0..3 {
        let mut row = h[i].clone();
        row.push(dg.0[i].clone());
        m.push(row);
    }
    let mut last: Vec<TernaryForm<K>> = dg.0.to_vec();
    last.push(TernaryForm::zero(0));
    m.push(last);
    polymat_det(&m)
}

/// Jacobian determinant of three forms (gradients as rows).
pub fn jacobian_det<K: Scalar>(f: &TernaryForm<K>, g: &TernaryForm<K>, h: &TernaryForm<K>) -> Result<TernaryForm<K>> {
    let m = vec![f.gradient().0.to_vec(), g.gradient().0.to_vec(), h.gradient().0.to_vec()];
    polymat_det(&m)
}
