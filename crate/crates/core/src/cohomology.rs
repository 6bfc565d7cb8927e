//! Specializing the complex at a torsion monodromy, exact cohomology
//! dimensions, and the vanishing and basis criteria.

use std::fmt;

use serde::Serialize;

use crate::arith::linalg::{bareiss_rank, rank_exact};
use crate::arith::{CyclotomicField, CyclotomicNumber, LaurentPoly};
use crate::arrangement::{index_set_label, Arrangement, EdgeAtInfinity};
use crate::complex::Analysis;
use crate::error::{Error, Result};

/// `λ_i = k_i / m`, so `t_i = ζ_{2m}^{k_i}` and `q_i = ζ_{2m}^{2k_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyAssignment {
    m: u64,
    k: Vec<i64>,
}

impl MonodromyAssignment {
    pub fn new(m: u64, k: Vec<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Monodromy {
                line: 1,
                msg: "m must be positive".into(),
            });
        }
        Ok(MonodromyAssignment { m, k })
    }

    /// The trivial local system on `n` lines.
    pub fn trivial(n: usize) -> Self {
        MonodromyAssignment { m: 1, k: vec![0; n] }
    }

    /// Parses the two-line `.mono` format: `m <int>` then `k <ints>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, msg: &str| Error::Monodromy { line, msg: msg.into() };
        let (ln, first) = lines.next().ok_or_else(|| err(1, "missing `m` line"))?;
        let m = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["m", v] => v.parse::<u64>().map_err(|_| err(ln, "m is not a positive integer"))?,
            _ => return Err(err(ln, "expected `m <positive integer>`")),
        };
        if m == 0 {
            return Err(err(ln, "m must be positive"));
        }
        let (ln, second) = lines.next().ok_or_else(|| err(ln + 1, "missing `k` line"))?;
        let mut words = second.split_whitespace();
        if words.next() != Some("k") {
            return Err(err(ln, "expected `k <integers>`"));
        }
        let k = words
            .map(|w| w.parse::<i64>().map_err(|_| err(ln, &format!("bad exponent `{w}`"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some((extra, _)) = lines.next() {
            return Err(err(extra, "unexpected trailing content"));
        }
        Ok(MonodromyAssignment { m, k })
    }

    pub fn to_mono_text(&self) -> String {
        let ks: Vec<String> = self.k.iter().map(i64::to_string).collect();
        format!("m {}\nk {}\n", self.m, ks.join(" "))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// `ℚ(ζ_{2m})`, which holds every half-twist.
    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(2 * self.m)
    }

    pub fn k_infinity(&self) -> i64 {
        -self.k.iter().sum::<i64>()
    }

    /// The half-twist values `t_i = ζ_{2m}^{k_i}`.
    pub fn half_twists(&self, field: &CyclotomicField) -> Vec<CyclotomicNumber> {
        self.k.iter().map(|&e| field.zeta_pow(e)).collect()
    }

    /// Whether `∏_{i ∈ lines} q_i` (times `q_∞` if asked) equals 1.
    pub fn product_is_one<'a>(&self, lines: impl IntoIterator<Item = &'a usize>, with_infinity: bool) -> bool {
        let mut e: i64 = lines.into_iter().map(|&i| self.k[i]).sum();
        if with_infinity {
            e += self.k_infinity();
        }
        e.rem_euclid(self.m as i64) == 0
    }

    pub fn q_at_infinity_is_one(&self, x: &EdgeAtInfinity) -> bool {
        match x {
            EdgeAtInfinity::WholeLineAtInfinity => self.product_is_one(&[], true),
            EdgeAtInfinity::Point(p) => self.product_is_one(&p.members, true),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.k.len() != n {
            return Err(Error::Dimension(format!(
                "monodromy has {} exponents for {n} lines",
                self.k.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for MonodromyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(|k| format!("{k}/{}", self.m)).collect();
        write!(f, "λ = ({})", parts.join(", "))
    }
}

/// Dense edges at infinity with `q_X = 1`.
pub fn cdo_violations(arr: &Arrangement, l: &MonodromyAssignment) -> Vec<String> {
    arr.dense_edges()
        .at_infinity()
        .iter()
        .filter(|x| l.q_at_infinity_is_one(x))
        .map(EdgeAtInfinity::label)
        .collect()
}

/// `q_X ≠ 1` for every dense edge at infinity.
pub fn condition_cdo(arr: &Arrangement, l: &MonodromyAssignment) -> bool {
    cdo_violations(arr, l).is_empty()
}

/// Dense edges anywhere with `q_X = 1`; single lines count iff
/// `include_hyperplanes`.
pub fn dt_violations(arr: &Arrangement, l: &MonodromyAssignment, include_hyperplanes: bool) -> Vec<String> {
    let mut out = cdo_violations(arr, l);
    for p in arr.dense_edges().affine_dense {
        if l.product_is_one(&p.incident, false) {
            out.push(format!("p{}", index_set_label(&p.incident)));
        }
    }
    if include_hyperplanes {
        for i in 0..arr.len() {
            if l.product_is_one(&[i], false) {
                out.push(format!("H{}", i + 1));
            }
        }
    }
    out
}

pub fn condition_dt(arr: &Arrangement, l: &MonodromyAssignment, include_hyperplanes: bool) -> bool {
    dt_violations(arr, l, include_hyperplanes).is_empty()
}

pub fn evaluate_matrix(
    field: &CyclotomicField,
    m: &[Vec<LaurentPoly>],
    l: &MonodromyAssignment,
) -> Vec<Vec<CyclotomicNumber>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.eval_at_zeta_powers(field, l.k())).collect())
        .collect()
}

fn uch2_columns(a: &Analysis) -> Vec<usize> {
    a.decomposition
        .ch2
        .iter()
        .enumerate()
        .filter(|(_, c)| a.decomposition.uch2.contains(c))
        .map(|(j, _)| j)
        .collect()
}

fn select_columns<T: Clone>(m: &[Vec<T>], cols: &[usize]) -> Vec<Vec<T>> {
    m.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    /// Rank of `ℂ[ch¹] → ℂ[uch²]`.
    pub rank_to_uch2: usize,
    pub betti: (usize, usize, usize),
    pub euler_characteristic: i64,
    pub cdo_holds: bool,
    pub dt_holds: bool,
    pub dt_include_hyperplanes: bool,
    pub bounded_basis_holds: bool,
    pub indecomposable: bool,
    pub euler_check: bool,
    pub betti_bound_check: bool,
    pub violated_edges: Vec<String>,
    pub generic: bool,
}

impl CohomologyReport {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0, self.h1, self.h2)
    }

    fn assemble(
        a: &Analysis,
        ranks: (usize, usize, usize),
        conditions: (bool, bool, bool, Vec<String>),
        generic: bool,
    ) -> Result<Self> {
        let (rank_d0, rank_d1, rank_to_uch2) = ranks;
        let (cdo_holds, dt_holds, dt_include_hyperplanes, violated_edges) = conditions;
        let (n1, n2) = (a.decomposition.ch1.len(), a.decomposition.ch2.len());
        if rank_d0 > 1 || rank_d0 + rank_d1 > n1 || rank_d1 > n2 {
            return Err(Error::Invariant(format!(
                "ranks ({rank_d0}, {rank_d1}) exceed the cochain dimensions"
            )));
        }
        let (h0, h1, h2) = (1 - rank_d0, n1 - rank_d0 - rank_d1, n2 - rank_d1);
        let betti = a.arrangement.betti_numbers();
        let chi = a.arrangement.euler_characteristic();
        Ok(CohomologyReport {
            h0,
            h1,
            h2,
            rank_d0,
            rank_d1,
            rank_to_uch2,
            betti,
            euler_characteristic: chi,
            cdo_holds,
            dt_holds,
            dt_include_hyperplanes,
            bounded_basis_holds: rank_to_uch2 == a.decomposition.uch2.len(),
            indecomposable: a.is_indecomposable()?,
            euler_check: h0 as i64 - h1 as i64 + h2 as i64 == chi,
            betti_bound_check: h0 <= betti.0 && h1 <= betti.1 && h2 <= betti.2,
            violated_edges,
            generic,
        })
    }
}

/// Exact dimensions of `H^*(M(A), L)` at a torsion monodromy.
pub fn cohomology_dims(a: &Analysis, l: &MonodromyAssignment, include_hyperplanes: bool) -> Result<CohomologyReport> {
    let arr = &a.arrangement;
    l.check_len(arr.len())?;
    let field = l.field();
    let d0 = evaluate_matrix(&field, std::slice::from_ref(&a.matrices.d0), l);
    let d1 = evaluate_matrix(&field, &a.matrices.d1, l);
    let to_uch2 = select_columns(&d1, &uch2_columns(a));
    let ranks = (
        rank_exact(&field, d0),
        rank_exact(&field, d1),
        rank_exact(&field, to_uch2),
    );
    let violated = dt_violations(arr, l, include_hyperplanes);
    let conditions = (
        condition_cdo(arr, l),
        condition_dt(arr, l, include_hyperplanes),
        include_hyperplanes,
        violated,
    );
    CohomologyReport::assemble(a, ranks, conditions, false)
}

/// Ranks over the fraction field of the Laurent ring, i.e. at a generic
/// monodromy.
pub fn generic_rank_mode(a: &Analysis) -> Result<CohomologyReport> {
    let nvars = a.arrangement.len();
    let ranks = (
        bareiss_rank(vec![a.matrices.d0.clone()], nvars)?,
        bareiss_rank(a.matrices.d1.clone(), nvars)?,
        bareiss_rank(select_columns(&a.matrices.d1, &uch2_columns(a)), nvars)?,
    );
    CohomologyReport::assemble(a, ranks, (true, true, true, Vec::new()), true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremVerdict {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub indecomposable: bool,
    /// `Some` only for indecomposable arrangements.
    pub equivalent: Option<bool>,
    /// `(i) ⇒ (ii) ⇒ (iii)`, which needs no indecomposability.
    pub implications_hold: bool,
}

impl MainTheoremVerdict {
    pub fn passes(&self) -> bool {
        self.implications_hold && self.equivalent.unwrap_or(true)
    }
}

pub fn main_theorem_verdict(a: &Analysis, report: &CohomologyReport) -> MainTheoremVerdict {
    let i = report.cdo_holds;
    let iii = report.bounded_basis_holds;
    let ii = report.h0 == 0 && report.h1 == 0 && report.h2 == a.chambers.bounded_count() && iii;
    MainTheoremVerdict {
        i,
        ii,
        iii,
        indecomposable: report.indecomposable,
        equivalent: report.indecomposable.then_some(i == ii && ii == iii),
        implications_hold: (!i || ii) && (!ii || iii),
    }
}

pub fn check_main_theorem(a: &Analysis, l: &MonodromyAssignment) -> Result<(CohomologyReport, MainTheoremVerdict)> {
    let report = cohomology_dims(a, l, true)?;
    let verdict = main_theorem_verdict(a, &report);
    Ok((report, verdict))
}
