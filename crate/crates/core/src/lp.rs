//! Exact conic feasibility: is `target` a nonnegative combination of the
//! given integer columns?
//!
//! This is phase one of the simplex method, run as a revised simplex on an
//! integer-preserving (fraction-free) representation: the scaled inverse
//! `D·B⁻¹` and the scaled basic solution are integer matrices whose entries
//! are subdeterminants, and every update divides exactly by the previous
//! pivot. Bland's rule picks both the entering and the leaving variable, so
//! the method terminates on degenerate problems.
//!
//! The `i128` path uses checked arithmetic and reports overflow, in which
//! case the caller reruns the same problem over `BigInt`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sparse integer column: `(row, value)` pairs with nonzero values.
pub(crate) type SparseColumn = Vec<(usize, BigInt)>;

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Exact division; the remainder is known to be zero.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn sign(&self) -> i8;
}

impl Scalar for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert_eq!(self % o, 0);
        self.checked_div(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!((self % o).is_zero());
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Whether `target ∈ cone(columns)`, i.e. `Σ μ_j columns_j = target` has a
/// solution with `μ ≥ 0`. All vectors have `rows` entries.
pub(crate) fn in_cone(columns: &[&SparseColumn], target: &[BigInt], rows: usize) -> Result<bool> {
    match solve::<i128>(columns, target, rows) {
        Ok(found) => Ok(found),
        Err(Overflow) => solve::<BigInt>(columns, target, rows)
            .map_err(|_| Error::Inconsistent("bigint simplex overflowed".into())),
    }
}

fn solve<S: Scalar>(
    columns: &[&SparseColumn],
    target: &[BigInt],
    m: usize,
) -> std::result::Result<bool, Overflow> {
    debug_assert_eq!(target.len(), m);
    // Flip rows so that the right-hand side is nonnegative.
    let flip: Vec<bool> = target.iter().map(|t| t.is_negative()).collect();
    let conv = |v: &BigInt, row: usize| -> std::result::Result<S, Overflow> {
        let s = S::from_big(v).ok_or(Overflow)?;
        if flip[row] {
            s.neg().ok_or(Overflow)
        } else {
            Ok(s)
        }
    };
    let cols: Vec<Vec<(usize, S)>> = columns
        .iter()
        .map(|c| c.iter().map(|(r, v)| Ok((*r, conv(v, *r)?))).collect())
        .collect::<std::result::Result<_, Overflow>>()?;
    let mut xb: Vec<S> = target
        .iter()
        .enumerate()
        .map(|(r, v)| conv(v, r))
        .collect::<std::result::Result<_, Overflow>>()?;

    let n = cols.len();
    // Scaled inverse D·B⁻¹, starting from the artificial basis.
    let mut binv: Vec<Vec<S>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| if i == k { S::one() } else { S::zero() })
                .collect()
        })
        .collect();
    let mut d = S::one();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective row restricted to the artificial block (`z`) and the
    // right-hand side (`zb`). Initially `z = 0` and `zb = -Σ b`.
    let mut z: Vec<S> = vec![S::zero(); m];
    let mut zb = S::zero();
    for v in &xb {
        zb = zb.sub(v).ok_or(Overflow)?;
    }

    let mut column = vec![S::zero(); m];
    loop {
        if zb.sign() == 0 {
            return Ok(true);
        }
        // Bland: lowest-index structural column with negative reduced cost.
        // Scaled reduced cost of column j is Σ_i (z_i - D)·A_ij.
        let mut entering = None;
        for (j, col) in cols.iter().enumerate() {
            let mut rc = S::zero();
            for (i, v) in col {
                let w = z[*i].sub(&d).ok_or(Overflow)?;
                rc = rc.add(&w.mul(v).ok_or(Overflow)?).ok_or(Overflow)?;
            }
            if rc.sign() < 0 {
                entering = Some((j, rc));
                break;
            }
        }
        let Some((q, rc_q)) = entering else {
            return Ok(false);
        };

        // Entering column in the current basis, scaled by D.
        for (i, slot) in column.iter_mut().enumerate() {
            let mut acc = S::zero();
            for (k, v) in &cols[q] {
                acc = acc
                    .add(&binv[i][*k].mul(v).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
            }
            *slot = acc;
        }

        // Ratio test with Bland's tie-break on the basic variable index.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if column[i].sign() <= 0 {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(p) => {
                    // Compare xb_i / col_i against xb_p / col_p.
                    let lhs = xb[i].mul(&column[p]).ok_or(Overflow)?;
                    let rhs = xb[p].mul(&column[i]).ok_or(Overflow)?;
                    match lhs.sub(&rhs).ok_or(Overflow)?.sign() {
                        s if s < 0 => i,
                        0 if basis[i] < basis[p] => i,
                        _ => p,
                    }
                }
            });
        }
        // Phase one is bounded below, so some row must block.
        let p = leave.expect("phase-one objective is bounded");

        let piv = column[p].clone();
        for i in 0..m {
            if i == p {
                continue;
            }
            let f = &column[i];
            for k in 0..m {
                let t = binv[i][k]
                    .mul(&piv)
                    .ok_or(Overflow)?
                    .sub(&f.mul(&binv[p][k]).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
                binv[i][k] = t.div_exact(&d).ok_or(Overflow)?;
            }
            let t = xb[i]
                .mul(&piv)
                .ok_or(Overflow)?
                .sub(&f.mul(&xb[p]).ok_or(Overflow)?)
                .ok_or(Overflow)?;
            xb[i] = t.div_exact(&d).ok_or(Overflow)?;
        }
        for k in 0..m {
            let t = z[k]
                .mul(&piv)
                .ok_or(Overflow)?
                .sub(&rc_q.mul(&binv[p][k]).ok_or(Overflow)?)
                .ok_or(Overflow)?;
            z[k] = t.div_exact(&d).ok_or(Overflow)?;
        }
        let t = zb
            .mul(&piv)
            .ok_or(Overflow)?
            .sub(&rc_q.mul(&xb[p]).ok_or(Overflow)?)
            .ok_or(Overflow)?;
        zb = t.div_exact(&d).ok_or(Overflow)?;
        basis[p] = q;
        d = piv;
    }
}
