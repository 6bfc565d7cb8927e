//! Generic flags `F⁰ ⊂ F¹ ⊂ ℝ²` and the induced partition of chambers into
//! `ch⁰`, `ch¹` and `ch²`.
//!
//! `F¹` is the line `h₂ = y − s·x − c = 0`, placed strictly below every
//! vertex, and `h₁ = x − x₀` orders it left to right with `F⁰` at `x₀`,
//! one unit before the first crossing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{fmt_rational, Rational};
use crate::arrangement::Arrangement;
use crate::chambers::{ChamberSet, SignVector};
use crate::error::{Error, Result};

/// Candidate slopes tried before giving up.
pub const FLAG_SEARCH_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub line: usize,
    pub x: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    /// Slope of `F¹`.
    pub slope: Rational,
    pub offset: Rational,
    /// `x₀`, the abscissa of `F⁰`.
    pub f0_x: Rational,
    /// Crossings of the lines with `F¹` in increasing `h₁`.
    pub crossings: Vec<Crossing>,
}

impl Flag {
    /// Primitive integer direction of `F¹`.
    pub fn direction(&self) -> (BigInt, BigInt) {
        (self.slope.denom().clone(), self.slope.numer().clone())
    }

    pub fn h2(&self, x: &Rational, y: &Rational) -> Rational {
        y - &self.slope * x - &self.offset
    }

    pub fn h1(&self, x: &Rational) -> Rational {
        x - &self.f0_x
    }

    /// The point of `F¹` with the given abscissa.
    pub fn point_at(&self, x: &Rational) -> (Rational, Rational) {
        (x.clone(), &self.slope * x + &self.offset)
    }

    pub fn f0(&self) -> (Rational, Rational) {
        self.point_at(&self.f0_x)
    }

    pub fn describe(&self) -> String {
        format!(
            "F1: y = {}*x + {}; F0 = ({}, {})",
            fmt_rational(&self.slope),
            fmt_rational(&self.offset),
            fmt_rational(&self.f0().0),
            fmt_rational(&self.f0().1),
        )
    }
}

/// `0, 1, −1, 1/2, −1/2, 2, −2, 1/3, …`: zero, then each positive rational in
/// Calkin–Wilf order followed by its negative.
pub fn slope_candidates() -> impl Iterator<Item = Rational> {
    let mut q = Rational::one();
    let positives = std::iter::from_fn(move || {
        let cur = q.clone();
        let two_floor = cur.floor() * Rational::from_integer(2.into());
        q = Rational::one() / (two_floor - &cur + Rational::one());
        Some(cur)
    });
    std::iter::once(Rational::zero()).chain(positives.flat_map(|p| [p.clone(), -p]))
}

/// Builds the flag with slope `s` and offset `c`, checking every genericity
/// condition.
pub fn flag_with(arr: &Arrangement, slope: &Rational, offset: &Rational) -> Result<Flag> {
    let mut crossings = Vec::with_capacity(arr.len());
    for (i, l) in arr.lines().iter().enumerate() {
        // a·x + b·(s·x + c) + c_l = 0
        let a = Rational::from_integer(l.a().clone());
        let b = Rational::from_integer(l.b().clone());
        let denom = &a + &b * slope;
        if denom.is_zero() {
            return Err(Error::InvalidFlag(format!("F1 is parallel to line {}", i + 1)));
        }
        let x = -(&b * offset + Rational::from_integer(l.c().clone())) / denom;
        crossings.push(Crossing { line: i, x });
    }
    crossings.sort_by(|p, q| p.x.cmp(&q.x));
    if crossings.windows(2).any(|w| w[0].x == w[1].x) {
        return Err(Error::InvalidFlag("two lines cross F1 at the same point".into()));
    }
    let mut seen = BTreeSet::new();
    for p in arr.intersection_points() {
        let h = &p.y - slope * &p.x - offset;
        if !h.is_positive() {
            return Err(Error::InvalidFlag(format!("vertex {p} is not above F1")));
        }
        if !seen.insert(h) {
            return Err(Error::InvalidFlag(format!("vertices tie in h2 at {p}")));
        }
    }
    let f0_x = &crossings[0].x - Rational::one();
    Ok(Flag {
        slope: slope.clone(),
        offset: offset.clone(),
        f0_x,
        crossings,
    })
}

fn offset_below_vertices(arr: &Arrangement, slope: &Rational) -> Rational {
    arr.intersection_points()
        .iter()
        .map(|p| &p.y - slope * &p.x)
        .min()
        .unwrap_or_else(Rational::zero)
        - Rational::one()
}

/// Iterator over the valid flags in search order.
pub fn generic_flags(arr: &Arrangement) -> impl Iterator<Item = Flag> + '_ {
    slope_candidates()
        .take(FLAG_SEARCH_LIMIT)
        .filter_map(move |s| flag_with(arr, &s, &offset_below_vertices(arr, &s)).ok())
}

/// The first valid flag in the deterministic search.
pub fn choose_generic_flag(arr: &Arrangement) -> Result<Flag> {
    choose_nth_generic_flag(arr, 0)
}

/// The `nth` valid flag (0-based); used to cross-check flag independence.
pub fn choose_nth_generic_flag(arr: &Arrangement, nth: usize) -> Result<Flag> {
    generic_flags(arr)
        .nth(nth)
        .ok_or(Error::FlagExhausted(FLAG_SEARCH_LIMIT))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagDecomposition {
    pub c0: usize,
    /// Ordered by increasing `h₁`; the last entry is the unbounded interval.
    pub ch1: Vec<usize>,
    pub ch2: Vec<usize>,
    pub bch1: Vec<usize>,
    pub uch1: Vec<usize>,
    pub bch2: Vec<usize>,
    pub uch2: Vec<usize>,
    /// Wall lines of each `ch¹` chamber, parallel to `ch1`.
    pub walls1: Vec<Vec<usize>>,
}

impl FlagDecomposition {
    pub fn counts(&self) -> (usize, usize, usize) {
        (1, self.ch1.len(), self.ch2.len())
    }

    pub fn ch1_position(&self, chamber: usize) -> Option<usize> {
        self.ch1.iter().position(|&c| c == chamber)
    }

    /// Lines crossing `F¹` at the ends of `C ∩ F¹`.
    pub fn walls(&self, chamber: usize) -> Result<&[usize]> {
        self.ch1_position(chamber)
            .map(|p| self.walls1[p].as_slice())
            .ok_or(Error::NotInCh1(chamber))
    }
}

fn chamber_at(arr: &Arrangement, chambers: &ChamberSet, flag: &Flag, x: &Rational) -> Result<usize> {
    let (px, py) = flag.point_at(x);
    let sign = SignVector::of_point(arr, &px, &py)
        .ok_or_else(|| Error::InvalidFlag("sample point lies on a line".into()))?;
    chambers
        .index_of(&sign)
        .ok_or_else(|| Error::Invariant(format!("no chamber with sign {sign}")))
}

pub fn decompose(arr: &Arrangement, chambers: &ChamberSet, flag: &Flag) -> Result<FlagDecomposition> {
    let n = arr.len();
    if flag.crossings.len() != n {
        return Err(Error::InvalidFlag(format!(
            "flag has {} crossings for {n} lines",
            flag.crossings.len()
        )));
    }
    let half = Rational::new(1.into(), 2.into());
    let c0 = chamber_at(arr, chambers, flag, &flag.f0_x)?;
    let mut ch1 = Vec::with_capacity(n);
    let mut walls1 = Vec::with_capacity(n);
    for k in 0..n {
        let here = &flag.crossings[k];
        let (x, walls) = match flag.crossings.get(k + 1) {
            Some(next) => ((&here.x + &next.x) * &half, vec![here.line, next.line]),
            None => (&here.x + Rational::one(), vec![here.line]),
        };
        ch1.push(chamber_at(arr, chambers, flag, &x)?);
        walls1.push(walls);
    }
    let on_flag: BTreeSet<usize> = ch1.iter().copied().chain([c0]).collect();
    if on_flag.len() != n + 1 {
        return Err(Error::InvalidFlag("F1 meets a chamber twice".into()));
    }
    let ch2: Vec<usize> = (0..chambers.len()).filter(|c| !on_flag.contains(c)).collect();
    let (bch2, uch2): (Vec<usize>, Vec<usize>) =
        ch2.iter().partition(|&&c| chambers.get(c).is_bounded());
    Ok(FlagDecomposition {
        c0,
        bch1: ch1[..n - 1].to_vec(),
        uch1: vec![ch1[n - 1]],
        ch1,
        ch2,
        bch2,
        uch2,
        walls1,
    })
}
