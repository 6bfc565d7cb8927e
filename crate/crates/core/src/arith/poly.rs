//! Dense univariate polynomials over ℚ, coefficients stored low degree first.

use num_traits::{One, Zero};

use super::Rational;

pub type QPoly = Vec<Rational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of `p`, `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division `a = q·b + r` with `deg r < deg b`. Panics if `b` is zero.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("polynomial division by zero");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub fn ext_gcd_mod(a: &[Rational], m: &[Rational]) -> (QPoly, QPoly) {
    let mut r0: QPoly = m.to_vec();
    let mut r1: QPoly = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![Rational::one()];
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(d) = degree(&r0) {
        let inv = r0[d].recip();
        for c in r0.iter_mut() {
            *c *= &inv;
        }
        for c in s0.iter_mut() {
            *c *= &inv;
        }
    }
    (r0, s0)
}
