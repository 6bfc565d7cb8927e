//! Chambers as feasible sign vectors, their behavior at infinity and the
//! opposite-chamber involution on unbounded chambers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::{sign_of, sign_of_rat, Rational};
use crate::arrangement::{Arrangement, EdgeAtInfinity};
use crate::error::{Error, Result};
use crate::feasibility::{feasible_point, is_feasible, StrictIneq};

pub const DEFAULT_CHAMBER_CAP: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn factor(self) -> BigInt {
        match self {
            Sign::Plus => BigInt::from(1),
            Sign::Minus => BigInt::from(-1),
        }
    }
}

/// Sign of `a_i x + b_i y + c_i` for each normalized line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign vector of a point, `None` if the point lies on a line.
    pub fn of_point(arr: &Arrangement, x: &Rational, y: &Rational) -> Option<SignVector> {
        arr.lines()
            .iter()
            .map(|l| match sign_of_rat(&l.eval(x, y)) {
                1 => Some(Sign::Plus),
                -1 => Some(Sign::Minus),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }

    /// Flips the coordinates selected by `pred`.
    pub fn flipped_where(&self, pred: impl Fn(usize) -> bool) -> SignVector {
        SignVector(
            self.0
                .iter()
                .enumerate()
                .map(|(i, s)| if pred(i) { s.flip() } else { *s })
                .collect(),
        )
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// Primitive integer direction vector.
pub type Direction = (BigInt, BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecessionCone {
    Bounded,
    Ray(Direction),
    /// Pointed sector swept counterclockwise from the first extremal ray to the second.
    Cone(Direction, Direction),
}

fn primitive(x: BigInt, y: BigInt) -> Direction {
    let g = x.gcd(&y);
    (x / &g, y / &g)
}

fn cross(u: &Direction, v: &Direction) -> BigInt {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Recession cone of the chamber with the given sign vector: the closed
/// sector `{d : σ_i (a_i, b_i)·d ≥ 0}` computed from its candidate
/// boundary rays.
pub fn recession_cone(arr: &Arrangement, sign: &SignVector) -> Result<RecessionCone> {
    let normals: Vec<Direction> = arr
        .lines()
        .iter()
        .zip(&sign.0)
        .map(|(l, s)| (l.a() * s.factor(), l.b() * s.factor()))
        .collect();
    let admissible = |d: &Direction| {
        normals
            .iter()
            .all(|n| !(&n.0 * &d.0 + &n.1 * &d.1).is_negative())
    };
    let mut rays: BTreeSet<Direction> = BTreeSet::new();
    for n in &normals {
        for d in [
            primitive(-n.1.clone(), n.0.clone()),
            primitive(n.1.clone(), -n.0.clone()),
        ] {
            if admissible(&d) {
                rays.insert(d);
            }
        }
    }
    let rays: Vec<Direction> = rays.into_iter().collect();
    if rays
        .iter()
        .any(|d| rays.contains(&(-d.0.clone(), -d.1.clone())))
    {
        return Err(Error::Invariant(format!(
            "recession cone of {sign} contains a line"
        )));
    }
    match rays.len() {
        0 => Ok(RecessionCone::Bounded),
        1 => Ok(RecessionCone::Ray(rays[0].clone())),
        _ => {
            let first = rays
                .iter()
                .find(|e| rays.iter().all(|v| !cross(e, v).is_negative()))
                .cloned();
            let last = rays
                .iter()
                .find(|e| rays.iter().all(|v| !cross(v, e).is_negative()))
                .cloned();
            match (first, last) {
                (Some(a), Some(b)) => Ok(RecessionCone::Cone(a, b)),
                _ => Err(Error::Invariant(format!(
                    "recession cone of {sign} is not pointed"
                ))),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub sign: SignVector,
    pub witness: (Rational, Rational),
    pub recession: RecessionCone,
    /// `X(C)`; absent iff the chamber is bounded.
    pub x_at_infinity: Option<EdgeAtInfinity>,
}

impl Chamber {
    pub fn is_bounded(&self) -> bool {
        matches!(self.recession, RecessionCone::Bounded)
    }

    /// Unbounded with `X(C)` a point at infinity.
    pub fn is_narrow(&self) -> bool {
        matches!(self.recession, RecessionCone::Ray(_))
    }

    /// Unbounded with `X(C)` the whole line at infinity.
    pub fn is_wide(&self) -> bool {
        matches!(self.recession, RecessionCone::Cone(..))
    }

    pub fn kind(&self) -> &'static str {
        match self.recession {
            RecessionCone::Bounded => "bounded",
            RecessionCone::Ray(_) => "narrow",
            RecessionCone::Cone(..) => "wide",
        }
    }
}

/// `X(C)` read off the recession cone.
pub fn x_of(arr: &Arrangement, recession: &RecessionCone) -> Option<Result<EdgeAtInfinity>> {
    match recession {
        RecessionCone::Bounded => None,
        RecessionCone::Cone(..) => Some(Ok(EdgeAtInfinity::WholeLineAtInfinity)),
        RecessionCone::Ray((dx, dy)) => Some(
            arr.class_along(dx, dy)
                .map(EdgeAtInfinity::Point)
                .ok_or_else(|| Error::Invariant("ray recession cone parallel to no line".into())),
        ),
    }
}

/// All chambers, sorted by sign vector (`+` before `-`).
#[derive(Clone, Debug)]
pub struct ChamberSet {
    chambers: Vec<Chamber>,
    lookup: HashMap<SignVector, usize>,
}

impl ChamberSet {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn get(&self, idx: usize) -> &Chamber {
        &self.chambers[idx]
    }

    pub fn index_of(&self, sign: &SignVector) -> Option<usize> {
        self.lookup.get(sign).copied()
    }

    pub fn bounded_count(&self) -> usize {
        self.chambers.iter().filter(|c| c.is_bounded()).count()
    }

    pub fn unbounded(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.chambers.len()).filter(|&i| !self.chambers[i].is_bounded())
    }

    /// `X(C)` of an unbounded chamber.
    pub fn x_of(&self, idx: usize) -> Result<&EdgeAtInfinity> {
        self.chambers[idx]
            .x_at_infinity
            .as_ref()
            .ok_or(Error::BoundedChamber(idx))
    }

    /// The opposite chamber `C^∨`: flip exactly the lines not passing
    /// through `X(C)`.
    pub fn opposite(&self, idx: usize) -> Result<usize> {
        let through: BTreeSet<usize> = match self.x_of(idx)? {
            EdgeAtInfinity::WholeLineAtInfinity => BTreeSet::new(),
            EdgeAtInfinity::Point(p) => p.members.clone(),
        };
        let flipped = self.chambers[idx]
            .sign
            .flipped_where(|i| !through.contains(&i));
        self.index_of(&flipped)
            .ok_or(Error::InfeasibleOpposite(idx))
    }

    /// Lines separating two chambers (0-based).
    pub fn sep(&self, i: usize, j: usize) -> Result<BTreeSet<usize>> {
        sep(&self.chambers[i].sign, &self.chambers[j].sign)
    }
}

pub fn sep(a: &SignVector, b: &SignVector) -> Result<BTreeSet<usize>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok((0..a.len()).filter(|&i| a.0[i] != b.0[i]).collect())
}

fn constraint(arr: &Arrangement, i: usize, s: Sign) -> StrictIneq {
    let l = &arr.lines()[i];
    let f = s.factor();
    StrictIneq::new(l.a() * &f, l.b() * &f, l.c() * &f)
}

pub fn enumerate_chambers(arr: &Arrangement) -> Result<ChamberSet> {
    enumerate_chambers_with_cap(arr, DEFAULT_CHAMBER_CAP)
}

/// Enumerates every feasible sign vector by depth-first search over line
/// prefixes; an infeasible prefix prunes all of its extensions.
pub fn enumerate_chambers_with_cap(arr: &Arrangement, cap: usize) -> Result<ChamberSet> {
    let n = arr.len();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut found: Vec<Vec<Sign>> = Vec::new();
    let mut stack: Vec<Vec<Sign>> = vec![Vec::new()];
    let mut cons: Vec<StrictIneq> = Vec::with_capacity(n);
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            found.push(prefix);
            continue;
        }
        cons.clear();
        cons.extend(prefix.iter().enumerate().map(|(i, &s)| constraint(arr, i, s)));
        for s in [Sign::Minus, Sign::Plus] {
            cons.push(constraint(arr, prefix.len(), s));
            if is_feasible(&cons) {
                let mut next = prefix.clone();
                next.push(s);
                stack.push(next);
            }
            cons.pop();
        }
    }
    found.sort();
    let clamp = arr.coordinate_bound();
    let mut chambers = Vec::with_capacity(found.len());
    let mut lookup = HashMap::with_capacity(found.len());
    for signs in found {
        let sign = SignVector(signs);
        let cons: Vec<StrictIneq> = sign
            .0
            .iter()
            .enumerate()
            .map(|(i, &s)| constraint(arr, i, s))
            .collect();
        let witness = feasible_point(&cons, &clamp)
            .ok_or_else(|| Error::Invariant(format!("no witness for feasible {sign}")))?;
        let recession = recession_cone(arr, &sign)?;
        let x_at_infinity = x_of(arr, &recession).transpose()?;
        lookup.insert(sign.clone(), chambers.len());
        chambers.push(Chamber {
            sign,
            witness,
            recession,
            x_at_infinity,
        });
    }
    Ok(ChamberSet { chambers, lookup })
}

/// Sign of `(a_i, b_i)·d`, used to read a chamber's side of a direction.
pub fn normal_sign(arr: &Arrangement, line: usize, d: &Direction) -> i8 {
    let l = &arr.lines()[line];
    sign_of(&(l.a() * &d.0 + l.b() * &d.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sv(s: &str) -> SignVector {
        SignVector(
            s.chars()
                .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    fn dir(x: i64, y: i64) -> Direction {
        (BigInt::from(x), BigInt::from(y))
    }

    fn idx(set: &ChamberSet, s: &str) -> usize {
        set.index_of(&sv(s)).unwrap_or_else(|| panic!("{s} is not a chamber"))
    }

    // X4 lines: H1: x-2y+1, H2: x+1, H3: x-1, H4: x+2y-3.
    // B4 lines: H1: x-y+3, H2: x-y+1, H3: x+y-1, H4: x+y-3.

    #[test]
    fn chamber_counts() {
        assert_eq!(enumerate_chambers(&fixtures::b4()).unwrap().len(), 9);
        assert_eq!(enumerate_chambers(&fixtures::x4()).unwrap().len(), 9);
        assert_eq!(enumerate_chambers(&fixtures::crossing()).unwrap().len(), 4);
        assert_eq!(enumerate_chambers(&fixtures::triangle()).unwrap().len(), 7);
    }

    #[test]
    fn witnesses_are_interior() {
        for a in [fixtures::x4(), fixtures::b4(), fixtures::triangle()] {
            let set = enumerate_chambers(&a).unwrap();
            for c in set.chambers() {
                assert_eq!(SignVector::of_point(&a, &c.witness.0, &c.witness.1), Some(c.sign.clone()));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = fixtures::x4();
        assert_eq!(
            enumerate_chambers_with_cap(&a, 3).unwrap_err(),
            Error::CapExceeded { n: 4, cap: 3 }
        );
    }

    #[test]
    fn quadrant_cone() {
        let a = fixtures::crossing();
        assert_eq!(
            recession_cone(&a, &sv("++")).unwrap(),
            RecessionCone::Cone(dir(1, 0), dir(0, 1))
        );
    }

    #[test]
    fn x4_recession_and_x_of() {
        let a = fixtures::x4();
        let set = enumerate_chambers(&a).unwrap();
        // C2: strip between the verticals below H1: x-2y+1 > 0, x+1 > 0, x-1 < 0, x+2y-3 < 0
        let c2 = idx(&set, "++--");
        assert_eq!(set.get(c2).recession, RecessionCone::Ray(dir(0, -1)));
        match set.x_of(c2).unwrap() {
            EdgeAtInfinity::Point(p) => assert_eq!(p.members, [1, 2].into()),
            other => panic!("unexpected {other:?}"),
        }
        // C1: left of H2, below H1 and H4
        let c1 = idx(&set, "+---");
        assert!(set.get(c1).is_wide());
        assert_eq!(set.x_of(c1).unwrap(), &EdgeAtInfinity::WholeLineAtInfinity);
        // D: between the verticals, above H1, below H4
        let d = idx(&set, "-+--");
        assert!(set.get(d).is_bounded());
        assert_eq!(set.x_of(d), Err(Error::BoundedChamber(d)));
        assert_eq!(set.bounded_count(), 1);
    }

    #[test]
    fn b4_opposites() {
        let set = enumerate_chambers(&fixtures::b4()).unwrap();
        // C1: between H1 and H2, below H3 and H4 (narrow)
        let c1 = idx(&set, "+---");
        assert!(set.get(c1).is_narrow());
        let op = set.opposite(c1).unwrap();
        assert_eq!(set.sep(c1, op).unwrap(), [2, 3].into());
        // the central diamond is bounded
        assert!(set.get(idx(&set, "+-+-")).is_bounded());
    }

    #[test]
    fn x4_wide_opposite_flips_everything() {
        let set = enumerate_chambers(&fixtures::x4()).unwrap();
        // C0: left of H2, above H1, below H4
        let c0 = idx(&set, "----");
        let op = set.opposite(c0).unwrap();
        assert_eq!(set.get(op).sign, sv("++++"));
        assert_eq!(set.sep(c0, op).unwrap().len(), 4);
    }

    #[test]
    fn sep_examples() {
        let set = enumerate_chambers(&fixtures::x4()).unwrap();
        let c1 = idx(&set, "+---");
        let c2 = idx(&set, "++--");
        let d = idx(&set, "-+--");
        assert!(set.sep(c1, c1).unwrap().is_empty());
        assert_eq!(set.sep(c1, d).unwrap(), [0, 1].into());
        assert_eq!(set.sep(c2, d).unwrap(), [0].into());
        assert_eq!(sep(&sv("++"), &sv("+++")), Err(Error::LengthMismatch(2, 3)));
    }

    #[test]
    fn involution_on_fixtures() {
        for a in [fixtures::x4(), fixtures::b4(), fixtures::triangle()] {
            let set = enumerate_chambers(&a).unwrap();
            for c in set.unbounded() {
                let op = set.opposite(c).unwrap();
                assert_ne!(op, c);
                assert_eq!(set.opposite(op).unwrap(), c);
            }
        }
    }
}
