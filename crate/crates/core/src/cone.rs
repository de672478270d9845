//! Exact rational systems of linear inequalities `a·x ≤ b` and equalities
//! `a·x = b` on `ℚ^d`: evaluation and redundancy elimination.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{in_cone, SparseColumn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Row {
    pub fn new(label: impl Into<String>, coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self {
            label: label.into(),
            coeffs,
            rhs,
        }
    }

    pub fn from_integers(label: impl Into<String>, coeffs: &[i64], rhs: i64) -> Self {
        Self::new(
            label,
            coeffs
                .iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect(),
            BigRational::from_integer(rhs.into()),
        )
    }

    /// `a·x - b`; positive means an inequality row is violated.
    pub fn margin(&self, point: &[BigRational]) -> BigRational {
        let mut acc = -self.rhs.clone();
        for (a, x) in self.coeffs.iter().zip(point) {
            if !a.is_zero() {
                acc += a * x;
            }
        }
        acc
    }

    /// Same row with every coefficient and the right-hand side negated.
    pub fn negated(&self, label: impl Into<String>) -> Self {
        Self::new(
            label,
            self.coeffs.iter().map(|a| -a).collect(),
            -self.rhs.clone(),
        )
    }
}

/// A finite system of rows on `ℚ^d`. Labels are unique across both lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InequalitySystem {
    dimension: usize,
    inequalities: Vec<Row>,
    equalities: Vec<Row>,
    labels: HashSet<String>,
}

impl InequalitySystem {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            ..Self::default()
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inequalities(&self) -> &[Row] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Row] {
        &self.equalities
    }

    fn admit(&mut self, row: &Row) -> Result<()> {
        if row.coeffs.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: row.coeffs.len(),
            });
        }
        if !self.labels.insert(row.label.clone()) {
            return Err(Error::DuplicateLabel(row.label.clone()));
        }
        Ok(())
    }

    pub fn push_inequality(&mut self, row: Row) -> Result<()> {
        self.admit(&row)?;
        self.inequalities.push(row);
        Ok(())
    }

    pub fn push_equality(&mut self, row: Row) -> Result<()> {
        self.admit(&row)?;
        self.equalities.push(row);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub label: String,
    /// `a·x - b`, strictly positive for a violated inequality, nonzero for a
    /// violated equality.
    pub margin: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Member,
    Violated(Vec<Violation>),
}

impl Evaluation {
    pub fn is_member(&self) -> bool {
        matches!(self, Evaluation::Member)
    }
}

pub fn evaluate(sys: &InequalitySystem, point: &[BigRational]) -> Result<Evaluation> {
    if point.len() != sys.dimension {
        return Err(Error::DimensionMismatch {
            expected: sys.dimension,
            actual: point.len(),
        });
    }
    let mut violated = Vec::new();
    for row in &sys.equalities {
        let margin = row.margin(point);
        if !margin.is_zero() {
            violated.push(Violation {
                label: row.label.clone(),
                margin,
            });
        }
    }
    for row in &sys.inequalities {
        let margin = row.margin(point);
        if margin.is_positive() {
            violated.push(Violation {
                label: row.label.clone(),
                margin,
            });
        }
    }
    Ok(if violated.is_empty() {
        Evaluation::Member
    } else {
        Evaluation::Violated(violated)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// Zero row with a nonnegative right-hand side.
    Trivial,
    /// Same half-space as an earlier row or a chamber row.
    Duplicate,
    /// A nonnegative combination of the surviving rows.
    Redundant,
}

#[derive(Clone, Debug)]
pub struct Minimized {
    /// The surviving inequalities in input order, with the equalities.
    pub system: InequalitySystem,
    pub eliminated: Vec<(String, Elimination)>,
    /// Each chamber row with whether it is essential (not implied by the rest).
    pub chamber_essential: Vec<(String, bool)>,
}

/// Removes every row of `sys` implied by the other rows, the chamber rows and
/// the equalities.
///
/// Equalities are substituted away first, so rows are compared as functionals
/// on the affine subspace they cut out. A row is kept iff its (homogenized)
/// functional is not a nonnegative combination of the others, decided by an
/// exact simplex. The joint system must be feasible and full-dimensional in
/// that subspace; an eliminated row that is not implied by the surviving ones
/// is reported as an inconsistency.
pub fn minimize_system(sys: &InequalitySystem, chamber: &InequalitySystem) -> Result<Minimized> {
    if chamber.dimension != sys.dimension {
        return Err(Error::DimensionMismatch {
            expected: sys.dimension,
            actual: chamber.dimension,
        });
    }
    let all_eq: Vec<&Row> = sys.equalities.iter().chain(&chamber.equalities).collect();
    let reducer = EqualityReducer::new(&all_eq, sys.dimension)?;
    let m = reducer.free.len() + 1;

    let reduce_all = |rows: &[Row]| -> Result<Vec<Option<SparseColumn>>> {
        rows.iter().map(|r| reducer.reduce(r)).collect()
    };
    let chamber_cols = reduce_all(&chamber.inequalities)?;
    let row_cols = reduce_all(&sys.inequalities)?;

    let mut eliminated = Vec::new();
    let mut seen: HashMap<&SparseColumn, ()> = HashMap::new();
    for c in chamber_cols.iter().flatten() {
        seen.insert(c, ());
    }
    let mut candidates: Vec<usize> = Vec::new();
    for (idx, col) in row_cols.iter().enumerate() {
        match col {
            None => eliminated.push((idx, Elimination::Trivial)),
            Some(c) if seen.contains_key(c) => eliminated.push((idx, Elimination::Duplicate)),
            Some(c) => {
                seen.insert(c, ());
                candidates.push(idx);
            }
        }
    }

    // The homogenizing column (0, …, 0, 1) lets the right-hand side slack.
    let slack: SparseColumn = vec![(m - 1, BigInt::one())];
    let chamber_refs: Vec<&SparseColumn> = chamber_cols.iter().flatten().collect();

    let implied = |target: &SparseColumn, others: &mut dyn Iterator<Item = &SparseColumn>| {
        let mut cols: Vec<&SparseColumn> = others.collect();
        cols.push(&slack);
        let mut dense = vec![BigInt::zero(); m];
        for (i, v) in target {
            dense[*i] = v.clone();
        }
        in_cone(&cols, &dense, m)
    };

    let col_of = |idx: usize| row_cols[idx].as_ref().expect("candidate rows are nonzero");
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|&idx| {
            let mut others = candidates
                .iter()
                .filter(|&&o| o != idx)
                .map(|&o| col_of(o))
                .chain(chamber_refs.iter().copied());
            implied(col_of(idx), &mut others)
        })
        .collect();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (&idx, verdict) in candidates.iter().zip(verdicts) {
        if verdict? {
            dropped.push(idx);
        } else {
            kept.push(idx);
        }
    }

    // Each dropped row must follow from the survivors alone.
    let recheck: Vec<Result<bool>> = dropped
        .par_iter()
        .map(|&idx| {
            let mut others = kept
                .iter()
                .map(|&o| col_of(o))
                .chain(chamber_refs.iter().copied());
            implied(col_of(idx), &mut others)
        })
        .collect();
    for (&idx, ok) in dropped.iter().zip(recheck) {
        if !ok? {
            return Err(Error::Inconsistent(format!(
                "row `{}` is implied by the full system but not by its irredundant part; \
                 the system is not full-dimensional",
                sys.inequalities[idx].label
            )));
        }
        eliminated.push((idx, Elimination::Redundant));
    }

    let chamber_essential: Vec<(String, bool)> = chamber
        .inequalities
        .par_iter()
        .enumerate()
        .map(|(ci, row)| {
            let Some(target) = &chamber_cols[ci] else {
                return Ok((row.label.clone(), false));
            };
            let mut others = kept.iter().map(|&o| col_of(o)).chain(
                chamber_cols
                    .iter()
                    .enumerate()
                    .filter(|(cj, _)| *cj != ci)
                    .filter_map(|(_, c)| c.as_ref()),
            );
            Ok((row.label.clone(), !implied(target, &mut others)?))
        })
        .collect::<Result<_>>()?;

    let mut system = InequalitySystem::new(sys.dimension);
    kept.sort_unstable();
    for idx in kept {
        system.push_inequality(sys.inequalities[idx].clone())?;
    }
    for row in &sys.equalities {
        system.push_equality(row.clone())?;
    }
    eliminated.sort_by_key(|(idx, _)| *idx);
    Ok(Minimized {
        system,
        eliminated: eliminated
            .into_iter()
            .map(|(idx, why)| (sys.inequalities[idx].label.clone(), why))
            .collect(),
        chamber_essential,
    })
}

/// Substitutes the equalities away: pivot coordinates of their reduced row
/// echelon form are expressed through the free ones.
struct EqualityReducer {
    /// RREF rows as (pivot column, coefficients, rhs), pivot coefficient 1.
    pivots: Vec<(usize, Vec<BigRational>, BigRational)>,
    free: Vec<usize>,
}

impl EqualityReducer {
    fn new(rows: &[&Row], dimension: usize) -> Result<Self> {
        let mut mat: Vec<(Vec<BigRational>, BigRational)> = rows
            .iter()
            .map(|r| (r.coeffs.clone(), r.rhs.clone()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..dimension {
            let Some(found) = (rank..mat.len()).find(|&i| !mat[i].0[col].is_zero()) else {
                continue;
            };
            mat.swap(rank, found);
            let inv = mat[rank].0[col].recip();
            for v in mat[rank].0.iter_mut() {
                *v *= &inv;
            }
            mat[rank].1 *= &inv;
            let (pivot_row, pivot_rhs) = mat[rank].clone();
            for (i, (row, rhs)) in mat.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
                *rhs -= &f * &pivot_rhs;
            }
            pivots.push(col);
            rank += 1;
        }
        if mat[rank..].iter().any(|(_, rhs)| !rhs.is_zero()) {
            return Err(Error::Inconsistent(
                "the equalities have no common solution".into(),
            ));
        }
        let free = (0..dimension).filter(|c| !pivots.contains(c)).collect();
        let pivots = pivots
            .into_iter()
            .zip(mat)
            .map(|(c, (row, rhs))| (c, row, rhs))
            .collect();
        Ok(Self { pivots, free })
    }

    /// The row in free coordinates with its right-hand side appended, scaled
    /// to a primitive integer vector. `None` for a row that reduces to
    /// `0 ≤ b` with `b ≥ 0`.
    fn reduce(&self, row: &Row) -> Result<Option<SparseColumn>> {
        let mut coeffs = row.coeffs.clone();
        let mut rhs = row.rhs.clone();
        for (c, prow, prhs) in &self.pivots {
            let f = coeffs[*c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in coeffs.iter_mut().zip(prow) {
                *v -= &f * p;
            }
            rhs -= &f * prhs;
        }
        let mut dense: Vec<BigRational> = self.free.iter().map(|&c| coeffs[c].clone()).collect();
        if dense.iter().all(|v| v.is_zero()) {
            return if rhs.is_negative() {
                Err(Error::Inconsistent(format!(
                    "row `{}` reduces to 0 ≤ {rhs}",
                    row.label
                )))
            } else {
                Ok(None)
            };
        }
        dense.push(rhs);
        Ok(Some(primitive(&dense)))
    }
}

fn primitive(v: &[BigRational]) -> SparseColumn {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x / &gcd))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    fn sys_of(dim: usize, rows: &[(&str, &[i64], i64)]) -> InequalitySystem {
        let mut s = InequalitySystem::new(dim);
        for (label, coeffs, rhs) in rows {
            s.push_inequality(Row::from_integers(*label, coeffs, *rhs))
                .unwrap();
        }
        s
    }

    #[test]
    fn evaluate_examples() {
        let empty = InequalitySystem::new(2);
        assert!(evaluate(&empty, &[q(5), q(-3)]).unwrap().is_member());

        let s = sys_of(1, &[("x1<=0", &[1], 0)]);
        match evaluate(&s, &[q(1)]).unwrap() {
            Evaluation::Violated(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].label, "x1<=0");
                assert_eq!(v[0].margin, q(1));
            }
            Evaluation::Member => panic!("should be violated"),
        }
        assert!(evaluate(&s, &[q(1), q(2)]).is_err());
    }

    #[test]
    fn labels_and_dimensions_are_checked() {
        let mut s = InequalitySystem::new(2);
        s.push_inequality(Row::from_integers("a", &[1, 0], 0))
            .unwrap();
        assert!(s
            .push_inequality(Row::from_integers("a", &[0, 1], 0))
            .is_err());
        assert!(s
            .push_equality(Row::from_integers("a", &[0, 1], 0))
            .is_err());
        assert!(s
            .push_inequality(Row::from_integers("b", &[0, 1, 2], 0))
            .is_err());
    }

    #[test]
    fn duplicate_row_is_removed() {
        let s = sys_of(
            2,
            &[("a", &[-1, 0], 0), ("b", &[0, -1], 0), ("a2", &[-2, 0], 0)],
        );
        let out = minimize_system(&s, &InequalitySystem::new(2)).unwrap();
        let labels: Vec<&str> = out
            .system
            .inequalities()
            .iter()
            .map(|r| r.label.as_str())
            .collect();
        assert_eq!(labels, vec!["a", "b"]);
        assert_eq!(
            out.eliminated,
            vec![("a2".to_string(), Elimination::Duplicate)]
        );
    }

    #[test]
    fn implied_row_is_removed() {
        // x ≥ 0, y ≥ 0 imply x + y ≥ 0 and x + 2y ≥ -1.
        let s = sys_of(
            2,
            &[
                ("sum", &[-1, -1], 0),
                ("x", &[-1, 0], 0),
                ("y", &[0, -1], 0),
                ("loose", &[-1, -2], 1),
            ],
        );
        let out = minimize_system(&s, &InequalitySystem::new(2)).unwrap();
        let labels: Vec<&str> = out
            .system
            .inequalities()
            .iter()
            .map(|r| r.label.as_str())
            .collect();
        assert_eq!(labels, vec!["x", "y"]);
    }

    #[test]
    fn equalities_are_substituted() {
        // On the line x + y = 0: x ≤ 0 and -y ≤ 0 are the same half-line.
        let mut s = sys_of(
            2,
            &[("x", &[1, 0], 0), ("-y", &[0, -1], 0), ("x-y", &[1, -1], 0)],
        );
        s.push_equality(Row::from_integers("trace", &[1, 1], 0))
            .unwrap();
        let out = minimize_system(&s, &InequalitySystem::new(2)).unwrap();
        assert_eq!(out.system.inequalities().len(), 1);
        assert_eq!(out.system.equalities().len(), 1);
    }

    #[test]
    fn chamber_rows_are_reported() {
        let chamber = sys_of(
            2,
            &[
                ("x>=0", &[-1, 0], 0),
                ("y>=0", &[0, -1], 0),
                ("x+y>=0", &[-1, -1], 0),
            ],
        );
        let s = sys_of(2, &[("x>=y", &[-1, 1], 0), ("dup", &[-1, 0], 0)]);
        let out = minimize_system(&s, &chamber).unwrap();
        assert_eq!(out.system.inequalities().len(), 1);
        assert_eq!(
            out.eliminated,
            vec![("dup".to_string(), Elimination::Duplicate)]
        );
        assert_eq!(
            out.chamber_essential,
            vec![
                ("x>=0".to_string(), false),
                ("y>=0".to_string(), true),
                ("x+y>=0".to_string(), false),
            ]
        );
    }

    #[test]
    fn inconsistent_equalities_are_reported() {
        let mut s = InequalitySystem::new(1);
        s.push_equality(Row::from_integers("a", &[1], 0)).unwrap();
        s.push_equality(Row::from_integers("b", &[2], 1)).unwrap();
        assert!(matches!(
            minimize_system(&s, &InequalitySystem::new(1)),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn lower_dimensional_cone_is_reported() {
        // x = 0 is implied, so y ≤ 0, x + y ≤ 0 and y - x ≤ 0 all imply each other.
        let s = sys_of(
            2,
            &[
                ("a", &[1, 0], 0),
                ("b", &[-1, 0], 0),
                ("c", &[0, 1], 0),
                ("d", &[1, 1], 0),
                ("e", &[-1, 1], 0),
            ],
        );
        assert!(matches!(
            minimize_system(&s, &InequalitySystem::new(2)),
            Err(Error::Inconsistent(_))
        ));
    }
}
