//! Affine line arrangements in ℝ², their intersection points, parallel
//! classes (points of the line at infinity) and dense edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{fmt_rational, parse_rational, LaurentMonomial, Rational};
use crate::error::{Error, Result};

/// A line `a·x + b·y + c = 0`, normalized to a primitive integer vector
/// whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Line> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = Rational::from_integer(l);
        let ints = [&a * &scale, &b * &scale, &c * &scale].map(|r| r.to_integer());
        Some(Self::normalized(ints))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Line> {
        Self::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::from_integer(c.into()),
        )
    }

    fn normalized([a, b, c]: [BigInt; 3]) -> Line {
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let first = if !a.is_zero() { &a } else { &b };
        if first.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Line { a, b, c }
    }

    /// Re-applies normalization; a no-op on any constructed line.
    pub fn normalize(&self) -> Line {
        Self::normalized([self.a.clone(), self.b.clone(), self.c.clone()])
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        x * Rational::from_integer(self.a.clone())
            + y * Rational::from_integer(self.b.clone())
            + Rational::from_integer(self.c.clone())
    }

    /// Primitive normal `(a, b)` with canonical sign; equal exactly for parallel lines.
    pub fn direction_key(&self) -> (BigInt, BigInt) {
        let g = self.a.gcd(&self.b);
        (&self.a / &g, &self.b / &g)
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        &self.a * &other.b == &self.b * &other.a
    }

    /// Intersection point, `None` for parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<(Rational, Rational)> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = Rational::new(&self.b * &other.c - &self.c * &other.b, det.clone());
        let y = Rational::new(&self.c * &other.a - &self.a * &other.c, det);
        Some((x, y))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

/// A point of `L(A)` of rank 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    pub x: Rational,
    pub y: Rational,
    /// 0-based indices of every line through the point.
    pub incident: BTreeSet<usize>,
}

impl AffinePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// The point at infinity shared by a class of parallel lines.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfinityPoint {
    pub direction: (BigInt, BigInt),
    pub members: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeAtInfinity {
    WholeLineAtInfinity,
    Point(InfinityPoint),
}

impl EdgeAtInfinity {
    /// `H_inf` or `P{i,j,…}` with 1-based line indices.
    pub fn label(&self) -> String {
        match self {
            EdgeAtInfinity::WholeLineAtInfinity => "H_inf".to_string(),
            EdgeAtInfinity::Point(p) => format!("P{}", index_set_label(&p.members)),
        }
    }
}

/// `{1,2}` style label from 0-based indices.
pub fn index_set_label(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseEdgeSet {
    /// Points on at least three lines.
    pub affine_dense: Vec<AffinePoint>,
    /// Parallel classes with at least two lines.
    pub infinity_dense: Vec<InfinityPoint>,
    pub h_infinity_dense: bool,
    /// Whether the single lines (rank-1 edges) count as dense for the
    /// all-edges condition. Infinity-only checks never use them.
    pub hyperplane_edges_included: bool,
}

impl DenseEdgeSet {
    /// All dense edges contained in the line at infinity.
    pub fn at_infinity(&self) -> Vec<EdgeAtInfinity> {
        let mut out = Vec::new();
        if self.h_infinity_dense {
            out.push(EdgeAtInfinity::WholeLineAtInfinity);
        }
        out.extend(self.infinity_dense.iter().cloned().map(EdgeAtInfinity::Point));
        out
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    name: String,
    lines: Vec<Line>,
    points: OnceLock<Vec<AffinePoint>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.lines == other.lines
    }
}

impl Arrangement {
    /// Validates distinctness and essentiality.
    pub fn new(name: impl Into<String>, lines: Vec<Line>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen: BTreeMap<&Line, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&first) = seen.get(l) {
                return Err(Error::DuplicateLine {
                    line: i + 1,
                    first: first + 1,
                });
            }
            seen.insert(l, i);
        }
        if lines.iter().all(|l| l.is_parallel(&lines[0])) {
            return Err(Error::NonEssential);
        }
        Ok(Arrangement {
            name: name.into(),
            lines,
            points: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// All intersection points with maximal incidence sets, sorted by (x, y).
    pub fn intersection_points(&self) -> &[AffinePoint] {
        self.points.get_or_init(|| {
            let mut by_coord: BTreeMap<(Rational, Rational), BTreeSet<usize>> = BTreeMap::new();
            for i in 0..self.lines.len() {
                for j in i + 1..self.lines.len() {
                    if let Some(p) = self.lines[i].intersect(&self.lines[j]) {
                        let set = by_coord.entry(p).or_default();
                        set.insert(i);
                        set.insert(j);
                    }
                }
            }
            by_coord
                .into_iter()
                .map(|((x, y), incident)| AffinePoint { x, y, incident })
                .collect()
        })
    }

    /// Parallel classes (including singletons), ordered by direction key.
    pub fn parallel_classes(&self) -> Vec<InfinityPoint> {
        let mut classes: BTreeMap<(BigInt, BigInt), BTreeSet<usize>> = BTreeMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            classes.entry(l.direction_key()).or_default().insert(i);
        }
        classes
            .into_iter()
            .map(|(direction, members)| InfinityPoint { direction, members })
            .collect()
    }

    /// The parallel class whose lines are parallel to the direction vector `(dx, dy)`.
    pub fn class_along(&self, dx: &BigInt, dy: &BigInt) -> Option<InfinityPoint> {
        self.parallel_classes().into_iter().find(|p| {
            let (a, b) = &p.direction;
            (a * dx + b * dy).is_zero()
        })
    }

    pub fn dense_edges(&self) -> DenseEdgeSet {
        DenseEdgeSet {
            affine_dense: self
                .intersection_points()
                .iter()
                .filter(|p| p.multiplicity() >= 3)
                .cloned()
                .collect(),
            infinity_dense: self
                .parallel_classes()
                .into_iter()
                .filter(|p| p.members.len() >= 2)
                .collect(),
            h_infinity_dense: true,
            hyperplane_edges_included: true,
        }
    }

    /// `(b0, b1, b2)` of the complexified complement.
    pub fn betti_numbers(&self) -> (usize, usize, usize) {
        let b2 = self
            .intersection_points()
            .iter()
            .map(|p| p.multiplicity() - 1)
            .sum();
        (1, self.lines.len(), b2)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (b0, b1, b2) = self.betti_numbers();
        b0 as i64 - b1 as i64 + b2 as i64
    }

    /// Largest absolute coordinate among intersection points (0 if none).
    pub fn coordinate_bound(&self) -> Rational {
        self.intersection_points()
            .iter()
            .flat_map(|p| [p.x.abs(), p.y.abs()])
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Monomial for `q_X^{1/2}` in the half-twist variables.
    ///
    /// `q_inf = ∏ q_i^{-1}`, and a point at infinity collects its parallel
    /// class together with `H_inf`.
    pub fn q_half_monomial(&self, x: &EdgeAtInfinity) -> LaurentMonomial {
        let n = self.lines.len();
        let mut e = vec![-1; n];
        if let EdgeAtInfinity::Point(p) = x {
            for &i in &p.members {
                e[i] += 1;
            }
        }
        LaurentMonomial::new(e)
    }

    /// Serializes to the `.arr` text format.
    pub fn to_arr_text(&self) -> String {
        let mut s = format!("# {}\n", self.name);
        for l in &self.lines {
            s.push_str(&format!("{l}\n"));
        }
        s
    }
}

/// Parses the `.arr` format: one line `a b c` per hyperplane, entries
/// integers or `p/q`, `#` starts a comment.
pub fn parse_arrangement(name: &str, text: &str) -> Result<Arrangement> {
    let mut lines = Vec::new();
    let mut source_line = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Syntax {
                line: lineno,
                msg: format!("expected 3 coefficients, found {}", fields.len()),
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for f in fields {
            coeffs.push(parse_rational(f).ok_or_else(|| Error::Syntax {
                line: lineno,
                msg: format!("invalid coefficient `{f}`"),
            })?);
        }
        let [a, b, c]: [Rational; 3] = coeffs.try_into().expect("three coefficients");
        let line = Line::new(a, b, c).ok_or_else(|| Error::Syntax {
            line: lineno,
            msg: "a and b are both zero".into(),
        })?;
        lines.push(line);
        source_line.push(lineno);
    }
    Arrangement::new(name, lines).map_err(|e| match e {
        Error::DuplicateLine { line, first } => Error::DuplicateLine {
            line: source_line[line - 1],
            first: source_line[first - 1],
        },
        other => other,
    })
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) on {}",
            fmt_rational(&self.x),
            fmt_rational(&self.y),
            index_set_label(&self.incident)
        )
    }
}
