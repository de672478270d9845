//! Triple intersection numbers of Schubert classes in `G(r, m)` and the
//! Belkale–Kumar product on the two-step flag variety `F(r, n-r; n)`.
//!
//! Schubert classes are addressed by subsets throughout. In `G(r, m)` the
//! class `[X_I]` has codimension `|λ(I)|` and `X_{{m-r+1,…,m}}` is the whole
//! Grassmannian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{complement_partition, lr_coefficient, Subset};

/// `I^o = {m + 1 - k : k ∈ I}`.
pub fn duality_partner(subset: &Subset) -> Subset {
    subset.dual()
}

/// The integer `ℓ` with `[X_A]·[X_B]·[X_C] = ℓ[pt]` in `H*(G(r, m))`, where
/// `r` and `m` are read off the subsets.
///
/// Computed as `c^{λ(C)*}_{λ(A) λ(B)}` with `λ(C)*` the complement of `λ(C)`
/// in the `r × (m - r)` box.
pub fn triple_intersection(a: &Subset, b: &Subset, c: &Subset) -> Result<u64> {
    let (r, m) = (a.len(), a.ambient());
    for x in [b, c] {
        if x.len() != r || x.ambient() != m {
            return Err(Error::CardinalityMismatch(format!(
                "{x} in [{}] does not match cardinality {r} in [{m}]",
                x.ambient()
            )));
        }
    }
    if r == 0 {
        return Err(Error::InvalidSubset("cardinality must be positive".into()));
    }
    let la = a.to_partition()?;
    let lb = b.to_partition()?;
    let lc = c.to_partition()?;
    if la.weight() + lb.weight() + lc.weight() != r * (m - r) {
        return Ok(0);
    }
    let dual = complement_partition(&lc, m - r)?;
    Ok(lr_coefficient(&la, &lb, &dual))
}

/// A balanced polarized subset `A = A₊ ∐ A₋` of `[n]` with `♯A₊ = ♯A₋ = r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalancedPolarizedSubset {
    plus: Subset,
    minus: Subset,
}

impl BalancedPolarizedSubset {
    pub fn new(plus: Subset, minus: Subset) -> Result<Self> {
        if plus.ambient() != minus.ambient() {
            return Err(Error::NotPolarized(format!(
                "{plus} and {minus} live in different ambient sets"
            )));
        }
        if plus.len() != minus.len() || plus.is_empty() {
            return Err(Error::NotPolarized(format!(
                "{plus} and {minus} must have the same positive cardinality"
            )));
        }
        if plus.elements().iter().any(|&k| minus.contains(k)) {
            return Err(Error::NotPolarized(format!("{plus} and {minus} intersect")));
        }
        Ok(Self { plus, minus })
    }

    pub fn plus(&self) -> &Subset {
        &self.plus
    }

    pub fn minus(&self) -> &Subset {
        &self.minus
    }

    pub fn rank(&self) -> usize {
        self.plus.len()
    }

    pub fn ambient(&self) -> usize {
        self.plus.ambient()
    }
}

/// `A''`: with `(A₊)^c = {u_1 < … < u_{n-r}}`, `A' = {i : u_i ∈ A₋}` and
/// `A'' = {k ∈ [n-r] : n - r + 1 - k ∈ A'}`.
pub fn double_prime(a: &BalancedPolarizedSubset) -> Subset {
    let rest = a.plus.complement();
    let m = rest.len();
    let mut elements: Vec<usize> = rest
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, u)| a.minus.contains(**u))
        .map(|(i0, _)| m - i0)
        .collect();
    elements.reverse();
    Subset::new(elements, m).expect("ranks of a subset form a subset")
}

/// The two Grassmannian factors of a Belkale–Kumar product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkProduct {
    /// `ℓ'` from `H*(G(r, n))`.
    pub outer: u64,
    /// `ℓ''` from `H*(G(r, n-r))`.
    pub inner: u64,
    /// Whether `|A₊|+|B₊|+|C₊| = |A₋|+|B₋|+|C₋| + r(n-r)`.
    pub degree_ok: bool,
}

impl BkProduct {
    /// `ℓ = ℓ'ℓ''` when the degree condition holds, else 0.
    pub fn value(&self) -> u64 {
        if self.degree_ok {
            self.outer * self.inner
        } else {
            0
        }
    }
}

/// `[X_A] ⊙₀ [X_B] ⊙₀ [X_C] = ℓ[pt]` in `H*(F(r, n-r; n))`, through the
/// factorization into `G(r, n)` and `G(r, n-r)` triple intersections.
///
/// When `n = 2r` the flag variety is `G(r, n)` itself; the second factor is
/// then the trivial class of the point `G(r, r)` and `ℓ = ℓ'`.
pub fn bk_two_step_product(
    a: &BalancedPolarizedSubset,
    b: &BalancedPolarizedSubset,
    c: &BalancedPolarizedSubset,
) -> Result<BkProduct> {
    let (r, n) = (a.rank(), a.ambient());
    for x in [b, c] {
        if x.rank() != r || x.ambient() != n {
            return Err(Error::CardinalityMismatch(
                "balanced polarized subsets must share rank and ambient set".into(),
            ));
        }
    }
    if 2 * r > n {
        return Err(Error::InvalidParameters(format!(
            "rank {r} exceeds half of {n}"
        )));
    }
    let plus_sum: usize = [a, b, c].iter().map(|x| x.plus.element_sum()).sum();
    let minus_sum: usize = [a, b, c].iter().map(|x| x.minus.element_sum()).sum();
    let degree_ok = plus_sum == minus_sum + r * (n - r);
    let outer = triple_intersection(&a.plus, &b.plus, &c.plus)?;
    let inner = if 2 * r == n {
        1
    } else {
        triple_intersection(&double_prime(a), &double_prime(b), &double_prime(c))?
    };
    Ok(BkProduct {
        outer,
        inner,
        degree_ok,
    })
}
