//! Laurent polynomials with rational coefficients in the half-twist
//! variables `t_1, …, t_n` (one per line, `t_i² = q_i`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use super::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentMonomial(Vec<i32>);

impl LaurentMonomial {
    pub fn new(exponents: Vec<i32>) -> Self {
        LaurentMonomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        LaurentMonomial(vec![0; nvars])
    }

    /// `∏_{i ∈ indices} t_i` over 0-based variable indices.
    pub fn product_of<I: IntoIterator<Item = usize>>(nvars: usize, indices: I) -> Self {
        let mut e = vec![0; nvars];
        for i in indices {
            e[i] += 1;
        }
        LaurentMonomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "monomial length mismatch");
        LaurentMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "monomial length mismatch");
        LaurentMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Self {
        LaurentMonomial(self.0.iter().map(|a| -a).collect())
    }

    /// Exponent of ζ obtained by substituting `t_i = ζ^{k_i}`.
    pub fn zeta_exponent(&self, k: &[i64]) -> i64 {
        self.0.iter().zip(k).map(|(&e, &ki)| e as i64 * ki).sum()
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<LaurentMonomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(LaurentMonomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(LaurentMonomial::one(nvars), c)
    }

    pub fn monomial(m: LaurentMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: LaurentMonomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `m - m⁻¹`, the building block of every coboundary entry.
    pub fn twist(m: &LaurentMonomial) -> Self {
        let mut p = Self::monomial(m.clone());
        p.add_term(m.inv(), -Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &LaurentMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&LaurentMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: LaurentMonomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &LaurentMonomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// Per-variable (min, max) exponent over the support.
    fn exponent_box(&self) -> Vec<(i32, i32)> {
        let mut b = vec![(i32::MAX, i32::MIN); self.nvars];
        for m in self.terms.keys() {
            for (slot, &e) in b.iter_mut().zip(m.exponents()) {
                slot.0 = slot.0.min(e);
                slot.1 = slot.1.max(e);
            }
        }
        b
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide `self` in the Laurent ring.
    ///
    /// Leading-term division under lex order. Degrees in each variable are
    /// additive, so every quotient monomial must lie in a computable box;
    /// leaving the box proves inexactness and bounds the loop.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead_m, dlead_c) = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let pb = self.exponent_box();
        let db = divisor.exponent_box();
        let qbox: Vec<(i32, i32)> = pb
            .iter()
            .zip(&db)
            .map(|(p, d)| (p.0 - d.0, p.1 - d.1))
            .collect();
        if qbox.iter().any(|(lo, hi)| lo > hi) {
            return None;
        }
        let dlead_inv = dlead_c.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading() {
            let qm = lm.div(dlead_m);
            if qm
                .exponents()
                .iter()
                .zip(&qbox)
                .any(|(e, (lo, hi))| e < lo || e > hi)
            {
                return None;
            }
            let qc = lc * &dlead_inv;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Substitutes `t_i ↦ values[i]`, inverting for negative exponents.
    pub fn eval(
        &self,
        field: &CyclotomicField,
        values: &[CyclotomicNumber],
    ) -> Result<CyclotomicNumber> {
        if values.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} substitution values for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let mut inverses: Vec<Option<CyclotomicNumber>> = vec![None; self.nvars];
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = field.from_rational(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if e > 0 {
                    values[i].clone()
                } else {
                    if inverses[i].is_none() {
                        if values[i].is_zero() {
                            return Err(Error::DivisionByZero("zero substituted for a Laurent variable"));
                        }
                        inverses[i] = Some(field.invert(&values[i])?);
                    }
                    inverses[i].clone().unwrap()
                };
                for _ in 0..e.unsigned_abs() {
                    v = field.mul(&v, &base);
                }
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Substitutes `t_i = ζ^{k_i}` using exponent arithmetic only.
    pub fn eval_at_zeta_powers(&self, field: &CyclotomicField, k: &[i64]) -> CyclotomicNumber {
        assert_eq!(k.len(), self.nvars);
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let z = field.zeta_pow(m.zeta_exponent(k));
            acc = field.add(&acc, &field.scale(&z, c));
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Signed sum of bracketed exponent vectors, highest monomial first,
/// e.g. `+[1,1,0,0] -[-1,-1,0,0]`. The zero polynomial prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if *c < Rational::zero() { '-' } else { '+' };
            let abs = if *c < Rational::zero() { -c.clone() } else { c.clone() };
            if abs.is_one() {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{}{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}
