//! Partitions, subsets of `[m]`, the dictionary between them, and
//! Littlewood–Richardson coefficients.
//!
//! A cardinality `r` subset `I = {i_1 < … < i_r}` of `[m]` corresponds to the
//! partition `λ(I)` with `λ_a = m - r + a - i_a`, which fits in the
//! `r × (m - r)` box. This is the indexing used for Schubert classes in the
//! Grassmannian `G(r, m)`: `|λ(I)|` is the codimension of `X_I`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers.
///
/// The length (trailing zeros included) is part of the value because box
/// complements depend on it, but equality and hashing ignore trailing zeros.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn zero(len: usize) -> Self {
        Self {
            parts: vec![0; len],
        }
    }

    /// `(width, …, width)` with `len` parts, i.e. `width · 1^len`.
    pub fn rectangle(len: usize, width: usize) -> Self {
        Self {
            parts: vec![width; len],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `a` (0-based), reading zero past the stored length.
    pub fn part(&self, a: usize) -> usize {
        self.parts.get(a).copied().unwrap_or(0)
    }

    /// The parts with trailing zeros removed.
    pub fn trimmed(&self) -> &[usize] {
        let end = self
            .parts
            .iter()
            .rposition(|&x| x != 0)
            .map_or(0, |i| i + 1);
        &self.parts[..end]
    }

    /// `|λ|`, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Whether the Young diagram of `self` is contained in that of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.trimmed().len() <= other.trimmed().len()
            && self
                .trimmed()
                .iter()
                .zip(other.parts.iter())
                .all(|(a, b)| a <= b)
    }

    /// The complement of `λ` inside the `len × width` box, read backwards:
    /// `λ*_a = width - λ_{len+1-a}`.
    pub fn complement(&self, width: usize) -> Result<Partition> {
        complement_partition(self, width)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// A subset of `[m] = {1, …, m}` stored as a strictly increasing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    ambient: usize,
    elements: Vec<usize>,
}

impl Subset {
    pub fn new(elements: Vec<usize>, ambient: usize) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!(
                "{elements:?} is not strictly increasing"
            )));
        }
        if let Some(&x) = elements.iter().find(|&&x| x == 0 || x > ambient) {
            return Err(Error::InvalidSubset(format!(
                "element {x} is not in [1, {ambient}]"
            )));
        }
        Ok(Self { ambient, elements })
    }

    /// Builds a subset from arbitrary-order elements, sorting them first.
    pub fn from_unsorted(mut elements: Vec<usize>, ambient: usize) -> Result<Self> {
        elements.sort_unstable();
        Self::new(elements, ambient)
    }

    /// The interval `{lo, …, hi}` of `[ambient]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize, ambient: usize) -> Result<Self> {
        Self::new((lo..=hi).collect(), ambient)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    /// Sum of the elements, written `|I|`.
    pub fn element_sum(&self) -> usize {
        self.elements.iter().sum()
    }

    /// `[m] \ I`.
    pub fn complement(&self) -> Subset {
        Subset {
            ambient: self.ambient,
            elements: (1..=self.ambient).filter(|&k| !self.contains(k)).collect(),
        }
    }

    /// `I^o = {m + 1 - k : k ∈ I}`.
    pub fn dual(&self) -> Subset {
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .rev()
            .map(|&k| self.ambient + 1 - k)
            .collect();
        elements.shrink_to_fit();
        Subset {
            ambient: self.ambient,
            elements,
        }
    }

    /// `λ(I)` for `r = |I|`.
    pub fn to_partition(&self) -> Result<Partition> {
        subset_to_partition(self, self.len())
    }

    /// Inverse of [`subset_to_partition`]: `i_a = m - r + a - λ_a`.
    pub fn from_partition(lambda: &Partition, ambient: usize) -> Result<Subset> {
        let r = lambda.len();
        if r > ambient {
            return Err(Error::InvalidPartition(format!(
                "{lambda} has more than {ambient} parts"
            )));
        }
        if lambda.part(0) > ambient - r {
            return Err(Error::InvalidPartition(format!(
                "{lambda} does not fit in the {r}x{} box",
                ambient - r
            )));
        }
        let elements = (1..=r)
            .map(|a| ambient - r + a - lambda.parts[a - 1])
            .collect();
        Subset::new(elements, ambient)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

/// All cardinality `r` subsets of `[m]`, in lexicographic order.
pub fn subsets_of_size(m: usize, r: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    if r > m {
        return out;
    }
    let mut current: Vec<usize> = (1..=r).collect();
    loop {
        out.push(Subset {
            ambient: m,
            elements: current.clone(),
        });
        // Advance to the next combination.
        let mut a = r;
        while a > 0 && current[a - 1] == m - r + a {
            a -= 1;
        }
        if a == 0 {
            return out;
        }
        current[a - 1] += 1;
        for b in a..r {
            current[b] = current[b - 1] + 1;
        }
    }
}

/// `λ(I) = (λ_1 ≥ … ≥ λ_r)` with `λ_a = m - r + a - i_a`.
pub fn subset_to_partition(subset: &Subset, r: usize) -> Result<Partition> {
    if r == 0 {
        return Err(Error::InvalidSubset("cardinality must be positive".into()));
    }
    if subset.len() != r {
        return Err(Error::CardinalityMismatch(format!(
            "{subset} has cardinality {}, expected {r}",
            subset.len()
        )));
    }
    let m = subset.ambient;
    let parts = subset
        .elements
        .iter()
        .enumerate()
        .map(|(a0, &i)| m - r + a0 + 1 - i)
        .collect();
    Ok(Partition { parts })
}

pub fn partition_weight(lambda: &Partition) -> usize {
    lambda.weight()
}

/// Complement of `λ` in the `r × box_width` box, `r = λ.len()`.
pub fn complement_partition(lambda: &Partition, box_width: usize) -> Result<Partition> {
    if lambda.part(0) > box_width {
        return Err(Error::InvalidPartition(format!(
            "{lambda} does not fit in width {box_width}"
        )));
    }
    let parts = lambda.parts.iter().rev().map(|&p| box_width - p).collect();
    Ok(Partition { parts })
}

type LrKey = (Vec<usize>, Vec<usize>, Vec<usize>);

fn lr_memo() -> &'static RwLock<HashMap<LrKey, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<LrKey, u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The Littlewood–Richardson coefficient `c^ν_{λμ}`: the number of skew
/// tableaux of shape `ν/λ` and content `μ` whose reverse reading word is a
/// lattice word. Memoized process-wide.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let (l, m, n) = (lambda.trimmed(), mu.trimmed(), nu.trimmed());
    if l.iter().sum::<usize>() + m.iter().sum::<usize>() != n.iter().sum::<usize>()
        || !lambda.is_contained_in(nu)
        || !mu.is_contained_in(nu)
        || n.len() > l.len() + m.len()
    {
        return 0;
    }
    if m.is_empty() || l.is_empty() {
        // c^ν_{λ∅} = δ_{λν}; the containment and weight checks already force ν = λ.
        return 1;
    }
    let key = (l.to_vec(), m.to_vec(), n.to_vec());
    if let Some(&c) = lr_memo().read().expect("lr memo poisoned").get(&key) {
        return c;
    }
    let c = count_lr_tableaux(l, m, n);
    lr_memo().write().expect("lr memo poisoned").insert(key, c);
    c
}

/// One memo entry, as persisted by the CLI cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrEntry {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub value: u64,
}

/// A sorted copy of the memo table.
pub fn lr_cache_snapshot() -> Vec<LrEntry> {
    let memo = lr_memo().read().expect("lr memo poisoned");
    let mut entries: Vec<LrEntry> = memo
        .iter()
        .map(|((l, m, n), &value)| LrEntry {
            lambda: l.clone(),
            mu: m.clone(),
            nu: n.clone(),
            value,
        })
        .collect();
    entries.sort_by(|a, b| (&a.lambda, &a.mu, &a.nu).cmp(&(&b.lambda, &b.mu, &b.nu)));
    entries
}

/// Seeds the memo table. Entries are trusted as given.
pub fn lr_cache_load(entries: impl IntoIterator<Item = LrEntry>) {
    let mut memo = lr_memo().write().expect("lr memo poisoned");
    for e in entries {
        memo.insert((e.lambda, e.mu, e.nu), e.value);
    }
}

fn count_lr_tableaux(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    // Cells of ν/λ in reading order: rows top to bottom, right to left.
    let rows = nu.len();
    let lam = |a: usize| lambda.get(a).copied().unwrap_or(0);
    let mut cells = Vec::new();
    for a in 0..rows {
        for c in (lam(a)..nu[a]).rev() {
            cells.push((a, c));
        }
    }
    let width = nu[0];
    let mut grid = vec![vec![0u8; width]; rows];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut total = 0u64;
    fill(0, &cells, lambda, mu, &mut grid, &mut counts, &mut total);
    total
}

fn fill(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &[usize],
    mu: &[usize],
    grid: &mut [Vec<u8>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (a, c) = cells[idx];
    // Row weakly increases to the right; the cell to the right is already filled.
    let mut hi = mu.len();
    if idx > 0 && cells[idx - 1].0 == a {
        hi = hi.min(grid[a][c + 1] as usize);
    }
    // Columns strictly increase downwards; cells inside λ impose nothing.
    let mut lo = 1;
    if a > 0 && c >= lambda.get(a - 1).copied().unwrap_or(0) {
        lo = grid[a - 1][c] as usize + 1;
    }
    // An entry v in row a (0-based) of an LR tableau satisfies v ≤ a + 1.
    hi = hi.min(a + 1);
    for v in lo..=hi {
        if counts[v] >= mu[v - 1] {
            continue;
        }
        if v > 1 && counts[v] >= counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        grid[a][c] = v as u8;
        fill(idx + 1, cells, lambda, mu, grid, counts, total);
        counts[v] -= 1;
    }
    grid[a][c] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(elements: &[usize], m: usize) -> Subset {
        Subset::new(elements.to_vec(), m).unwrap()
    }

    #[test]
    fn subset_partition_examples() {
        assert_eq!(s(&[4, 5, 6], 6).to_partition().unwrap().parts(), &[0, 0, 0]);
        assert_eq!(s(&[1, 2, 3], 6).to_partition().unwrap().parts(), &[3, 3, 3]);
        assert_eq!(s(&[2, 4, 6], 6).to_partition().unwrap().parts(), &[2, 1, 0]);
    }

    #[test]
    fn subset_partition_errors() {
        assert!(subset_to_partition(&s(&[], 4), 0).is_err());
        assert!(subset_to_partition(&s(&[1, 2], 4), 3).is_err());
        assert!(Subset::new(vec![0, 2], 4).is_err());
        assert!(Subset::new(vec![2, 5], 4).is_err());
        assert!(Subset::new(vec![3, 2], 4).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(partition_weight(&p(&[0, 0, 0])), 0);
        assert_eq!(partition_weight(&p(&[3, 3, 3])), 9);
        assert_eq!(partition_weight(&p(&[2, 1, 0])), 3);
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert_ne!(p(&[2, 1, 1]), p(&[2, 1]));
    }

    #[test]
    fn complements() {
        assert_eq!(
            complement_partition(&p(&[0, 0]), 2).unwrap().parts(),
            &[2, 2]
        );
        assert_eq!(
            complement_partition(&p(&[2, 2]), 2).unwrap().parts(),
            &[0, 0]
        );
        assert_eq!(
            complement_partition(&p(&[2, 1, 0]), 3).unwrap().parts(),
            &[3, 2, 1]
        );
        assert!(complement_partition(&p(&[3, 1]), 2).is_err());
    }

    #[test]
    fn lr_small_cases() {
        assert_eq!(lr_coefficient(&p(&[]), &p(&[2, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        // Degree filter.
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])), 0);
        // λ not inside ν.
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1]), &p(&[2, 2])), 0);
    }

    #[test]
    fn subsets_enumeration_counts() {
        assert_eq!(subsets_of_size(6, 3).len(), 20);
        assert_eq!(subsets_of_size(4, 0).len(), 1);
        assert_eq!(subsets_of_size(3, 4).len(), 0);
        let all = subsets_of_size(5, 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dual_and_complement() {
        assert_eq!(s(&[1], 6).dual(), s(&[6], 6));
        assert_eq!(s(&[3, 4], 6).dual(), s(&[3, 4], 6));
        assert_eq!(s(&[2, 4, 6], 6).dual(), s(&[1, 3, 5], 6));
        assert_eq!(s(&[2, 4, 6], 6).complement(), s(&[1, 3, 5], 6));
    }
}
