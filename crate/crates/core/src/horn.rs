//! The Horn cone `Horn(n)`: triples of spectra of Hermitian `n × n` matrices
//! summing to zero.
//!
//! `(x, y, z)` (each weakly decreasing) is in `Horn(n)` iff
//! `|x| + |y| + |z| = 0` and `|x|_I + |y|_J + |z|_K ≤ 0` for every admissible
//! `(r, I, J, K)`. Three admission rules are supported; they produce the
//! same cone.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{InequalitySystem, Row};
use crate::error::{Error, Result};
use crate::partitions::{subsets_of_size, Partition, Subset};
use crate::schubert::triple_intersection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HornMode {
    /// `[X_I]·[X_J]·[X_K] = ℓ[pt]` with `ℓ ≥ 1`.
    LrPositive,
    /// `[X_I]·[X_J]·[X_K] = [pt]`.
    LrOne,
    /// `(λ(I), λ(J), λ(K) - (n-r)1^r) ∈ Horn(r)`, decided recursively.
    Recursive,
}

impl HornMode {
    pub const ALL: [HornMode; 3] = [HornMode::LrPositive, HornMode::LrOne, HornMode::Recursive];

    pub fn as_str(&self) -> &'static str {
        match self {
            HornMode::LrPositive => "lr-positive",
            HornMode::LrOne => "lr-one",
            HornMode::Recursive => "recursive",
        }
    }
}

impl fmt::Display for HornMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HornMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "lr-positive" => Ok(HornMode::LrPositive),
            "lr-one" => Ok(HornMode::LrOne),
            "recursive" => Ok(HornMode::Recursive),
            other => Err(Error::InvalidParameters(format!(
                "unknown horn mode `{other}`"
            ))),
        }
    }
}

/// Why a triple was admitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HornCertificate {
    /// The triple intersection number `ℓ`.
    Lr(u64),
    /// Membership of the shifted partition triple in `Horn(r)`.
    Recursive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornInequality {
    pub r: usize,
    pub i: Subset,
    pub j: Subset,
    pub k: Subset,
    pub certificate: HornCertificate,
}

impl HornInequality {
    pub fn n(&self) -> usize {
        self.i.ambient()
    }

    /// Coefficients of `|x|_I + |y|_J + |z|_K` on `ℝ^{3n}`.
    pub fn coeffs(&self) -> Vec<i64> {
        let n = self.n();
        let mut out = vec![0; 3 * n];
        for (block, s) in [&self.i, &self.j, &self.k].into_iter().enumerate() {
            for &e in s.elements() {
                out[block * n + e - 1] = 1;
            }
        }
        out
    }

    pub fn evaluate(&self, t: &RealTriple) -> BigRational {
        let sum = |v: &[BigRational], s: &Subset| -> BigRational {
            s.elements().iter().map(|&e| v[e - 1].clone()).sum()
        };
        sum(&t.x, &self.i) + sum(&t.y, &self.j) + sum(&t.z, &self.k)
    }
}

/// Three weakly decreasing rational vectors of the same length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTriple {
    pub x: Vec<BigRational>,
    pub y: Vec<BigRational>,
    pub z: Vec<BigRational>,
}

impl RealTriple {
    pub fn new(x: Vec<BigRational>, y: Vec<BigRational>, z: Vec<BigRational>) -> Result<Self> {
        let n = x.len();
        for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: v.len(),
                });
            }
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotInChamber(format!(
                    "{name} is not weakly decreasing"
                )));
            }
        }
        Ok(Self { x, y, z })
    }

    pub fn from_integers(x: &[i64], y: &[i64], z: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| {
            v.iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect()
        };
        Self::new(conv(x), conv(y), conv(z))
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn trace(&self) -> BigRational {
        self.x.iter().chain(&self.y).chain(&self.z).sum()
    }

    /// The triple as one point of `ℝ^{3n}`.
    pub fn concat(&self) -> Vec<BigRational> {
        self.x
            .iter()
            .chain(&self.y)
            .chain(&self.z)
            .cloned()
            .collect()
    }
}

fn horn_memo() -> &'static RwLock<HashMap<(usize, HornMode), Arc<Vec<HornInequality>>>> {
    static MEMO: OnceLock<RwLock<HashMap<(usize, HornMode), Arc<Vec<HornInequality>>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All admissible `(r, I, J, K)`, `r ∈ [n-1]`, ordered by `r` then
/// lexicographically by `(I, J, K)`. Cached per `(n, mode)`.
pub fn generate_horn_inequalities(n: usize, mode: HornMode) -> Arc<Vec<HornInequality>> {
    if let Some(list) = horn_memo()
        .read()
        .expect("horn memo poisoned")
        .get(&(n, mode))
    {
        return Arc::clone(list);
    }
    let list = Arc::new(generate_uncached(n, mode));
    horn_memo()
        .write()
        .expect("horn memo poisoned")
        .entry((n, mode))
        .or_insert(list)
        .clone()
}

fn generate_uncached(n: usize, mode: HornMode) -> Vec<HornInequality> {
    let mut out = Vec::new();
    for r in 1..n {
        let subsets = subsets_of_size(n, r);
        let partitions: Vec<Partition> = subsets
            .iter()
            .map(|s| s.to_partition().expect("nonempty subset"))
            .collect();
        if mode == HornMode::Recursive {
            // Populate the Horn(r) cache before fanning out.
            generate_horn_inequalities(r, HornMode::Recursive);
        }
        let target = r * (n - r);
        let found: Vec<Vec<HornInequality>> = (0..subsets.len())
            .into_par_iter()
            .map(|a| {
                let mut local = Vec::new();
                for b in 0..subsets.len() {
                    let wab = partitions[a].weight() + partitions[b].weight();
                    if wab > target {
                        continue;
                    }
                    for c in 0..subsets.len() {
                        if wab + partitions[c].weight() != target {
                            continue;
                        }
                        let (i, j, k) = (&subsets[a], &subsets[b], &subsets[c]);
                        let certificate = match mode {
                            HornMode::LrPositive | HornMode::LrOne => {
                                let l = triple_intersection(i, j, k).expect("same cardinality");
                                let admitted = match mode {
                                    HornMode::LrOne => l == 1,
                                    _ => l >= 1,
                                };
                                admitted.then_some(HornCertificate::Lr(l))
                            }
                            HornMode::Recursive => {
                                let t = shifted_triple(
                                    &partitions[a],
                                    &partitions[b],
                                    &partitions[c],
                                    n - r,
                                );
                                horn_membership(&t, HornMode::Recursive)
                                    .expect("shifted partitions are weakly decreasing")
                                    .then_some(HornCertificate::Recursive)
                            }
                        };
                        if let Some(certificate) = certificate {
                            local.push(HornInequality {
                                r,
                                i: i.clone(),
                                j: j.clone(),
                                k: k.clone(),
                                certificate,
                            });
                        }
                    }
                }
                local
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    out
}

/// `(λ, μ, ν - shift·1^r)` as a point to test against `Horn(r)`.
pub fn shifted_triple(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    shift: usize,
) -> RealTriple {
    let conv = |p: &Partition, s: i64| -> Vec<BigRational> {
        p.parts()
            .iter()
            .map(|&a| BigRational::from_integer((a as i64 - s).into()))
            .collect()
    };
    RealTriple {
        x: conv(lambda, 0),
        y: conv(mu, 0),
        z: conv(nu, shift as i64),
    }
}

/// Exact membership in `Horn(n)`, `n = t.n()`.
pub fn horn_membership(t: &RealTriple, mode: HornMode) -> Result<bool> {
    // Re-validate: the fields are public.
    let t = RealTriple::new(t.x.clone(), t.y.clone(), t.z.clone())?;
    if !t.trace().is_zero() {
        return Ok(false);
    }
    let list = generate_horn_inequalities(t.n(), mode);
    Ok(list
        .iter()
        .all(|ineq| ineq.evaluate(&t) <= BigRational::zero()))
}

/// The inequality rows of a generated list, labelled `h<r>:I|J|K`, plus the
/// trace equality, as a system on `ℝ^{3n}`.
pub fn horn_system(n: usize, list: &[HornInequality]) -> Result<InequalitySystem> {
    let mut sys = InequalitySystem::new(3 * n);
    for ineq in list {
        sys.push_inequality(Row::from_integers(horn_label(ineq), &ineq.coeffs(), 0))?;
    }
    sys.push_equality(Row::from_integers("trace", &vec![1; 3 * n], 0))?;
    Ok(sys)
}

pub fn horn_label(ineq: &HornInequality) -> String {
    format!("h{}:{}|{}|{}", ineq.r, ineq.i, ineq.j, ineq.k)
}

/// `x_a - x_{a+1} ≥ 0` for each of the three vectors, as `≤ 0` rows.
pub fn horn_chamber(n: usize) -> InequalitySystem {
    let mut sys = InequalitySystem::new(3 * n);
    for (block, name) in ["x", "y", "z"].into_iter().enumerate() {
        for a in 0..n.saturating_sub(1) {
            let mut coeffs = vec![0i64; 3 * n];
            coeffs[block * n + a] = -1;
            coeffs[block * n + a + 1] = 1;
            sys.push_inequality(Row::from_integers(
                format!("{name}{}>={name}{}", a + 1, a + 2),
                &coeffs,
                0,
            ))
            .expect("chamber labels are unique");
        }
    }
    sys
}

/// A rational with value `num/den`, for fixtures.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&a| rational(a, 1)).collect()
    }

    #[test]
    fn horn_one_is_empty() {
        for mode in HornMode::ALL {
            assert!(generate_horn_inequalities(1, mode).is_empty());
        }
    }

    #[test]
    fn horn_two_lr_one() {
        let list = generate_horn_inequalities(2, HornMode::LrOne);
        let triples: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = list
            .iter()
            .map(|h| {
                (
                    h.i.elements().to_vec(),
                    h.j.elements().to_vec(),
                    h.k.elements().to_vec(),
                )
            })
            .collect();
        assert_eq!(
            triples,
            vec![
                (vec![1], vec![2], vec![2]),
                (vec![2], vec![1], vec![2]),
                (vec![2], vec![2], vec![1]),
            ]
        );
        assert!(list.iter().all(|h| h.r == 1));
    }

    #[test]
    fn certificates_match_mode() {
        for n in 2..=4 {
            for h in generate_horn_inequalities(n, HornMode::LrOne).iter() {
                assert_eq!(h.certificate, HornCertificate::Lr(1));
            }
            for h in generate_horn_inequalities(n, HornMode::LrPositive).iter() {
                assert!(matches!(h.certificate, HornCertificate::Lr(l) if l >= 1));
            }
        }
    }

    #[test]
    fn membership_examples() {
        for mode in HornMode::ALL {
            let zero =
                RealTriple::new(ints(&[0, 0, 0]), ints(&[0, 0, 0]), ints(&[0, 0, 0])).unwrap();
            assert!(horn_membership(&zero, mode).unwrap());

            let t = RealTriple::from_integers(&[1, 0], &[1, 0], &[-1, -1]).unwrap();
            assert!(horn_membership(&t, mode).unwrap());

            let t = RealTriple::new(
                ints(&[1, 0]),
                ints(&[1, 0]),
                vec![rational(1, 2), rational(-5, 2)],
            )
            .unwrap();
            assert!(!horn_membership(&t, mode).unwrap());
        }
    }

    #[test]
    fn trace_must_vanish() {
        let t = RealTriple::from_integers(&[1, 0], &[0, 0], &[0, 0]).unwrap();
        assert!(!horn_membership(&t, HornMode::LrOne).unwrap());
    }

    #[test]
    fn rejects_non_decreasing() {
        assert!(RealTriple::from_integers(&[0, 1], &[0, 0], &[0, 0]).is_err());
        assert!(RealTriple::from_integers(&[1, 0], &[0], &[0, 0]).is_err());
        let bad = RealTriple {
            x: ints(&[0, 1]),
            y: ints(&[0, 0]),
            z: ints(&[0, 0]),
        };
        assert!(horn_membership(&bad, HornMode::LrOne).is_err());
    }

    #[test]
    fn modes_parse() {
        for mode in HornMode::ALL {
            assert_eq!(mode.as_str().parse::<HornMode>().unwrap(), mode);
        }
        assert!("lr_one".parse::<HornMode>().is_ok());
        assert!("nope".parse::<HornMode>().is_err());
    }
}
