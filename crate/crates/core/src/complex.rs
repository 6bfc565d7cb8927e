//! The minimal cochain complex `ℂ[ch⁰] → ℂ[ch¹] → ℂ[ch²]` over the Laurent
//! ring in the half-twists, the reduced map `ℂ[bch¹] → ℂ[uch²]` and its
//! determinant.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::linalg::bareiss_det;
use crate::arith::{LaurentMonomial, LaurentPoly};
use crate::arrangement::{Arrangement, EdgeAtInfinity};
use crate::chambers::{enumerate_chambers, ChamberSet};
use crate::error::{Error, Result};
use crate::flag::{choose_generic_flag, decompose, Flag, FlagDecomposition};

/// `deg(C, C')` for `C ∈ ch¹` and `C' ∈ ch²`, read from which walls of `C`
/// separate the two chambers.
pub fn degree(chambers: &ChamberSet, dec: &FlagDecomposition, c: usize, c2: usize) -> Result<i8> {
    let walls = dec.walls(c)?;
    let sep = chambers.sep(c, c2)?;
    let inside = walls.iter().filter(|w| sep.contains(w)).count();
    Ok(match (walls.len(), inside) {
        (2, 2) => 1,
        (2, 0) => -1,
        (1, 0) => -1,
        _ => 0,
    })
}

fn sep_twist(chambers: &ChamberSet, nvars: usize, a: usize, b: usize) -> Result<LaurentPoly> {
    let sep = chambers.sep(a, b)?;
    Ok(LaurentPoly::twist(&LaurentMonomial::product_of(nvars, sep)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryMatrices {
    pub nvars: usize,
    /// Indexed by `ch1`.
    pub d0: Vec<LaurentPoly>,
    /// Rows indexed by `ch1`, columns by `ch2`.
    pub d1: Vec<Vec<LaurentPoly>>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl CoboundaryMatrices {
    /// The row vector `d0 · d1`; identically zero for a cochain complex.
    pub fn composite(&self) -> Vec<LaurentPoly> {
        (0..self.cols.len())
            .map(|j| {
                self.d0
                    .iter()
                    .zip(&self.d1)
                    .fold(LaurentPoly::zero(self.nvars), |acc, (a, row)| &acc + &(a * &row[j]))
            })
            .collect()
    }

    pub fn is_complex(&self) -> bool {
        self.composite().iter().all(LaurentPoly::is_zero)
    }

    pub fn entry(&self, row_chamber: usize, col_chamber: usize) -> Option<&LaurentPoly> {
        let i = self.rows.iter().position(|&c| c == row_chamber)?;
        let j = self.cols.iter().position(|&c| c == col_chamber)?;
        Some(&self.d1[i][j])
    }
}

pub fn build_d0(chambers: &ChamberSet, dec: &FlagDecomposition, nvars: usize) -> Result<Vec<LaurentPoly>> {
    dec.ch1
        .iter()
        .map(|&c| sep_twist(chambers, nvars, dec.c0, c))
        .collect()
}

pub fn build_d1(chambers: &ChamberSet, dec: &FlagDecomposition, nvars: usize) -> Result<Vec<Vec<LaurentPoly>>> {
    dec.ch1
        .iter()
        .map(|&c| {
            dec.ch2
                .iter()
                .map(|&c2| {
                    let deg = degree(chambers, dec, c, c2)?;
                    if deg == 0 {
                        return Ok(LaurentPoly::zero(nvars));
                    }
                    let t = sep_twist(chambers, nvars, c, c2)?;
                    Ok(if deg > 0 { t } else { -&t })
                })
                .collect()
        })
        .collect()
}

pub fn build_matrices(chambers: &ChamberSet, dec: &FlagDecomposition, nvars: usize) -> Result<CoboundaryMatrices> {
    Ok(CoboundaryMatrices {
        nvars,
        d0: build_d0(chambers, dec, nvars)?,
        d1: build_d1(chambers, dec, nvars)?,
        rows: dec.ch1.clone(),
        cols: dec.ch2.clone(),
    })
}

/// `ℂ[bch¹] → ℂ[uch²]` with column `j` the opposite of row `j`; narrow rows
/// come first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    pub nvars: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub narrow: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl ReducedMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Narrow rows carry only their diagonal entry, and the wide block is
    /// diagonal.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            let start = if i < self.narrow { 0 } else { self.narrow };
            for j in start..n {
                let zero = self.entries[i][j].is_zero();
                if (i == j) == zero {
                    return Err(Error::Invariant(format!(
                        "reduced matrix entry ({i}, {j}) breaks the block shape"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn build_reduced(
    chambers: &ChamberSet,
    dec: &FlagDecomposition,
    matrices: &CoboundaryMatrices,
) -> Result<ReducedMatrix> {
    let (mut narrow, wide): (Vec<usize>, Vec<usize>) =
        dec.bch1.iter().partition(|&&c| chambers.get(c).is_narrow());
    let narrow_count = narrow.len();
    narrow.extend(wide);
    let rows = narrow;
    let cols = rows
        .iter()
        .map(|&c| chambers.opposite(c))
        .collect::<Result<Vec<_>>>()?;
    let entries = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| {
                    matrices
                        .entry(r, c)
                        .cloned()
                        .ok_or_else(|| Error::Invariant(format!("opposite chamber {c} is not in ch2")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReducedMatrix {
        nvars: matrices.nvars,
        rows,
        cols,
        narrow: narrow_count,
        entries,
    })
}

pub fn symbolic_det(m: &ReducedMatrix) -> Result<LaurentPoly> {
    bareiss_det(m.entries.clone(), m.nvars)
}

/// `n_X = #{C ∈ bch¹ : X(C) = X}`.
pub fn dense_edge_multiplicities(
    chambers: &ChamberSet,
    dec: &FlagDecomposition,
) -> Result<BTreeMap<EdgeAtInfinity, usize>> {
    let mut counts = BTreeMap::new();
    for &c in &dec.bch1 {
        *counts.entry(chambers.x_of(c)?.clone()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `∏_{C ∈ bch¹} (q_{X(C)}^{1/2} − q_{X(C)}^{−1/2})`, built from the edges at
/// infinity without touching the matrices.
pub fn predicted_det(arr: &Arrangement, chambers: &ChamberSet, dec: &FlagDecomposition) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(arr.len());
    for (x, n) in dense_edge_multiplicities(chambers, dec)? {
        let factor = LaurentPoly::twist(&arr.q_half_monomial(&x));
        for _ in 0..n {
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

/// Equality up to an overall sign.
pub fn equal_up_to_sign(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p == q || *p == -q
}

/// Number of wide chambers in `uch²`.
pub fn wide_count(chambers: &ChamberSet, dec: &FlagDecomposition) -> usize {
    dec.uch2.iter().filter(|&&c| chambers.get(c).is_wide()).count()
}

/// Indecomposable iff at least two chambers of `uch²` are wide.
pub fn is_indecomposable(chambers: &ChamberSet, dec: &FlagDecomposition) -> Result<bool> {
    match wide_count(chambers, dec) {
        0 => Err(Error::Invariant("no wide chamber in uch2".into())),
        1 => Ok(false),
        _ => Ok(true),
    }
}

/// Everything up to the symbolic matrices, computed once per arrangement.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub arrangement: Arrangement,
    pub chambers: ChamberSet,
    pub flag: Flag,
    pub decomposition: FlagDecomposition,
    pub matrices: CoboundaryMatrices,
}

impl Analysis {
    pub fn new(arrangement: Arrangement) -> Result<Self> {
        let flag = choose_generic_flag(&arrangement)?;
        Self::with_flag(arrangement, flag)
    }

    pub fn with_flag(arrangement: Arrangement, flag: Flag) -> Result<Self> {
        let chambers = enumerate_chambers(&arrangement)?;
        let decomposition = decompose(&arrangement, &chambers, &flag)?;
        let matrices = build_matrices(&chambers, &decomposition, arrangement.len())?;
        Ok(Analysis {
            arrangement,
            chambers,
            flag,
            decomposition,
            matrices,
        })
    }

    pub fn reduced(&self) -> Result<ReducedMatrix> {
        build_reduced(&self.chambers, &self.decomposition, &self.matrices)
    }

    pub fn predicted_det(&self) -> Result<LaurentPoly> {
        predicted_det(&self.arrangement, &self.chambers, &self.decomposition)
    }

    pub fn is_indecomposable(&self) -> Result<bool> {
        is_indecomposable(&self.chambers, &self.decomposition)
    }

    pub fn determinant_check(&self) -> Result<DeterminantCheck> {
        let reduced = self.reduced()?;
        let symbolic = symbolic_det(&reduced)?;
        let predicted = self.predicted_det()?;
        let multiplicities = dense_edge_multiplicities(&self.chambers, &self.decomposition)?
            .into_iter()
            .map(|(x, n)| (x.label(), n))
            .collect();
        Ok(DeterminantCheck {
            matches: equal_up_to_sign(&symbolic, &predicted),
            symbolic: symbolic.to_string(),
            predicted: predicted.to_string(),
            multiplicities,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantCheck {
    pub matches: bool,
    pub symbolic: String,
    pub predicted: String,
    pub multiplicities: BTreeMap<String, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::{Sign, SignVector};
    use crate::fixtures;

    fn idx(chambers: &ChamberSet, s: &str) -> usize {
        let sign = SignVector(s.chars().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect());
        chambers.index_of(&sign).unwrap()
    }

    fn tw(lines: &[usize]) -> LaurentPoly {
        LaurentPoly::twist(&LaurentMonomial::product_of(4, lines.iter().map(|i| i - 1)))
    }

    #[test]
    fn x4_degrees() {
        let a = Analysis::new(fixtures::x4()).unwrap();
        let ch = &a.chambers;
        let d = idx(ch, "-+--");
        let (c1, c2) = (idx(ch, "+---"), idx(ch, "++--"));
        let c0v = idx(ch, "++++");
        let c1v = ch.opposite(c1).unwrap();
        assert_eq!(degree(ch, &a.decomposition, c2, d).unwrap(), -1);
        assert_eq!(degree(ch, &a.decomposition, c1, d).unwrap(), 1);
        assert_eq!(degree(ch, &a.decomposition, c0v, c1v).unwrap(), -1);
    }

    #[test]
    fn x4_d0_row() {
        let a = Analysis::new(fixtures::x4()).unwrap();
        assert_eq!(a.matrices.d0, vec![tw(&[1]), tw(&[1, 2]), tw(&[1, 2, 3]), tw(&[1, 2, 3, 4])]);
    }

    #[test]
    fn x4_d1_rows_entrywise() {
        let a = Analysis::new(fixtures::x4()).unwrap();
        let ch = &a.chambers;
        let [c1, c2, c3, c0v, c1v, c2v, c3v, d] =
            ["+---", "++--", "+++-", "++++", "-+++", "-+-+", "---+", "-+--"].map(|s| idx(ch, s));
        let z = LaurentPoly::zero(4);
        let want = [
            (c1, [tw(&[1, 2, 3, 4]), tw(&[1, 2, 4]), z.clone(), tw(&[1, 2])]),
            (c2, [z.clone(), -&tw(&[1, 4]), z.clone(), -&tw(&[1])]),
            (c3, [z.clone(), tw(&[1, 3, 4]), tw(&[1, 2, 3, 4]), z.clone()]),
            (c0v, [-&tw(&[1]), -&tw(&[1, 3]), -&tw(&[1, 2, 3]), z.clone()]),
        ];
        for (row, entries) in want {
            for (col, e) in [c1v, c2v, c3v, d].into_iter().zip(entries) {
                assert_eq!(a.matrices.entry(row, col).unwrap(), &e, "row {row} col {col}");
            }
        }
    }

    #[test]
    fn complexes_close_up() {
        for arr in [fixtures::x4(), fixtures::b4(), fixtures::triangle(), fixtures::crossing()] {
            assert!(Analysis::new(arr).unwrap().matrices.is_complex());
        }
    }

    #[test]
    fn x4_reduced_diagonal_and_det() {
        let a = Analysis::new(fixtures::x4()).unwrap();
        let r = a.reduced().unwrap();
        r.check_structure().unwrap();
        let c2 = idx(&a.chambers, "++--");
        assert_eq!(r.narrow, 1);
        assert_eq!(r.rows[0], c2);
        // X(C₂) is the vertical class, whose complement is {H₁, H₄}
        assert_eq!(r.entries[0][0], -&tw(&[1, 4]));
        assert_eq!(r.entries[1][1], tw(&[1, 2, 3, 4]));
        assert_eq!(r.entries[2][2], tw(&[1, 2, 3, 4]));
        let det = symbolic_det(&r).unwrap();
        assert!(equal_up_to_sign(&det, &a.predicted_det().unwrap()));
        let want = &(&tw(&[1, 2, 3, 4]) * &tw(&[1, 2, 3, 4])) * &tw(&[1, 4]);
        assert!(equal_up_to_sign(&det, &want));
    }

    #[test]
    fn b4_reduced_and_det() {
        let a = Analysis::new(fixtures::b4()).unwrap();
        let r = a.reduced().unwrap();
        r.check_structure().unwrap();
        assert_eq!(r.narrow, 2);
        let mult = dense_edge_multiplicities(&a.chambers, &a.decomposition).unwrap();
        assert_eq!(mult.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        assert!(a.determinant_check().unwrap().matches);
    }

    #[test]
    fn indecomposability_of_fixtures() {
        assert!(!Analysis::new(fixtures::b4()).unwrap().is_indecomposable().unwrap());
        assert!(Analysis::new(fixtures::x4()).unwrap().is_indecomposable().unwrap());
        assert!(Analysis::new(fixtures::triangle()).unwrap().is_indecomposable().unwrap());
    }
}
