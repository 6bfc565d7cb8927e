//! Exact Fourier–Motzkin feasibility for open systems of strict linear
//! inequalities in two variables.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::Rational;

/// `a·x + b·y + c > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictIneq {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl StrictIneq {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        StrictIneq { a, b, c }
    }

    pub fn holds_at(&self, x: &Rational, y: &Rational) -> bool {
        let v = x * Rational::from_integer(self.a.clone())
            + y * Rational::from_integer(self.b.clone())
            + Rational::from_integer(self.c.clone());
        v.is_positive()
    }
}

/// Open interval with optional ends.
#[derive(Clone, Debug, Default)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Interval {
    fn raise_lo(&mut self, v: Rational) {
        if self.lo.as_ref().is_none_or(|lo| v > *lo) {
            self.lo = Some(v);
        }
    }

    fn lower_hi(&mut self, v: Rational) {
        if self.hi.as_ref().is_none_or(|hi| v < *hi) {
            self.hi = Some(v);
        }
    }

    fn nonempty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => lo < hi,
            _ => true,
        }
    }

    /// Midpoint when bounded; otherwise one unit past the larger of the
    /// finite end and the clamp.
    fn pick(&self, clamp: &Rational) -> Rational {
        let one = Rational::from_integer(1.into());
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => (lo + hi) / Rational::from_integer(2.into()),
            (Some(lo), None) => lo.max(clamp).clone() + one,
            (None, Some(hi)) => {
                let neg = -clamp.clone();
                hi.min(&neg).clone() - one
            }
            (None, None) => Rational::zero(),
        }
    }
}

/// Eliminates `x`, returning the projected constraints `b·y + c > 0`.
fn eliminate_x(cons: &[StrictIneq]) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for k in cons {
        if k.a.is_zero() {
            out.push((k.b.clone(), k.c.clone()));
        } else if k.a.is_positive() {
            pos.push(k);
        } else {
            neg.push(k);
        }
    }
    for p in &pos {
        for q in &neg {
            let wp = -&q.a;
            let wq = &p.a;
            out.push((&wp * &p.b + wq * &q.b, &wp * &p.c + wq * &q.c));
        }
    }
    out
}

fn y_interval(projected: &[(BigInt, BigInt)]) -> Option<Interval> {
    let mut iv = Interval::default();
    for (b, c) in projected {
        if b.is_zero() {
            if !c.is_positive() {
                return None;
            }
            continue;
        }
        let bound = Rational::new(-c.clone(), b.clone());
        if b.is_positive() {
            iv.raise_lo(bound);
        } else {
            iv.lower_hi(bound);
        }
    }
    iv.nonempty().then_some(iv)
}

pub fn is_feasible(cons: &[StrictIneq]) -> bool {
    y_interval(&eliminate_x(cons)).is_some()
}

/// A strictly interior point, or `None` when the open system is empty.
///
/// Unbounded coordinates are placed one unit beyond `clamp` so witnesses
/// stay near the region of interest.
pub fn feasible_point(cons: &[StrictIneq], clamp: &Rational) -> Option<(Rational, Rational)> {
    let y = y_interval(&eliminate_x(cons))?.pick(clamp);
    let mut xs = Interval::default();
    for k in cons {
        let rest = y.clone() * Rational::from_integer(k.b.clone()) + Rational::from_integer(k.c.clone());
        if k.a.is_zero() {
            debug_assert!(rest.is_positive());
            continue;
        }
        let bound = -rest / Rational::from_integer(k.a.clone());
        if k.a.is_positive() {
            xs.raise_lo(bound);
        } else {
            xs.lower_hi(bound);
        }
    }
    debug_assert!(xs.nonempty());
    Some((xs.pick(clamp), y))
}
