//! Arithmetic in the cyclotomic field ℚ(ζ_m).
//!
//! Elements are polynomials in ζ_m of degree < φ(m), reduced modulo the
//! m-th cyclotomic polynomial. The field object owns the modulus and a
//! table of reduced powers of ζ_m; elements only carry their order.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{self, QPoly};
use super::Rational;
use crate::error::{Error, Result};

/// Φ_m with integer coefficients, lowest degree first.
///
/// Computed as `(x^m - 1) / ∏ Φ_d` over the proper divisors `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_monic_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn div_monic_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// The field ℚ(ζ_m).
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: u64,
    modulus: QPoly,
    zeta_powers: Vec<CyclotomicNumber>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        let modulus: QPoly = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let mut field = CyclotomicField {
            order,
            modulus,
            zeta_powers: Vec::new(),
        };
        let mut x = vec![Rational::zero(); 2];
        x[1] = Rational::one();
        let zeta = field.reduce(x);
        let mut acc = field.one();
        for _ in 0..order {
            field.zeta_powers.push(acc.clone());
            acc = field.mul(&acc, &zeta);
        }
        field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree of the field over ℚ, φ(m).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut p: QPoly) -> CyclotomicNumber {
        poly::trim(&mut p);
        let d = self.degree();
        if p.len() > d {
            p = poly::divrem(&p, &self.modulus).1;
        }
        p.resize(d, Rational::zero());
        CyclotomicNumber {
            order: self.order,
            coeffs: p,
        }
    }

    fn check(&self, a: &CyclotomicNumber) {
        assert_eq!(a.order, self.order, "mixed cyclotomic orders");
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> CyclotomicNumber {
        self.reduce(vec![r])
    }

    /// Builds an element from a polynomial in ζ of any degree.
    pub fn from_poly(&self, p: QPoly) -> CyclotomicNumber {
        self.reduce(p)
    }

    /// ζ_m^e for any integer exponent.
    pub fn zeta_pow(&self, e: i64) -> CyclotomicNumber {
        let idx = e.rem_euclid(self.order as i64) as usize;
        self.zeta_powers[idx].clone()
    }

    pub fn is_one(&self, a: &CyclotomicNumber) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicNumber {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        CyclotomicNumber {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        self.reduce(poly::mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, a: &CyclotomicNumber, r: &Rational) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    /// Multiplicative inverse via extended Euclid against Φ_m.
    pub fn invert(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse of zero"));
        }
        let (g, s) = poly::ext_gcd_mod(&a.coeffs, &self.modulus);
        // Φ_m is irreducible, so any nonzero reduced element is coprime to it.
        debug_assert_eq!(g, vec![Rational::one()]);
        Ok(self.reduce(s))
    }

    /// Evaluates Φ_m at the generator, which must reduce to zero.
    pub fn modulus_at_generator(&self) -> CyclotomicNumber {
        let mut acc = self.zero();
        for (e, c) in self.modulus.iter().enumerate() {
            let term = self.scale(&self.zeta_powers[e % self.order as usize], c);
            acc = self.add(&acc, &term);
        }
        acc
    }
}
