//! The singular Horn cone `Singular(p, q)`: triples of singular spectra of
//! complex `p × q` matrices `A + B + C = 0`, `p ≥ q`.
//!
//! Inequalities are indexed by triples of polarized subsets of `[q]`. Each
//! polarized subset `X = X₊ ∐ X₋` lifts to a subset `X^p` of `[p+q]` and to a
//! subset `X̃^p` of `[p+q-r]`; admission is decided in `G(r, p+q)` and
//! `G(r, p+q-r)` (or on the two-step flag variety that combines them).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{minimize_system, InequalitySystem, Row};
use crate::error::{Error, Result};
use crate::horn::{horn_membership, shifted_triple, HornMode, RealTriple};
use crate::partitions::{Partition, Subset};
use crate::schubert::{
    bk_two_step_product, double_prime, triple_intersection, BalancedPolarizedSubset,
};

/// A polarized subset `X₊ ∐ X₋` of `[q]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolarizedSubset {
    plus: Subset,
    minus: Subset,
}

impl PolarizedSubset {
    pub fn new(plus: Subset, minus: Subset) -> Result<Self> {
        if plus.ambient() != minus.ambient() {
            return Err(Error::NotPolarized(format!(
                "{plus} and {minus} live in different ambient sets"
            )));
        }
        if plus.is_empty() && minus.is_empty() {
            return Err(Error::NotPolarized("polarized subsets are nonempty".into()));
        }
        if plus.elements().iter().any(|&k| minus.contains(k)) {
            return Err(Error::NotPolarized(format!("{plus} and {minus} intersect")));
        }
        Ok(Self { plus, minus })
    }

    /// Convenience constructor from element lists.
    pub fn from_parts(plus: &[usize], minus: &[usize], q: usize) -> Result<Self> {
        Self::new(
            Subset::from_unsorted(plus.to_vec(), q)?,
            Subset::from_unsorted(minus.to_vec(), q)?,
        )
    }

    pub fn plus(&self) -> &Subset {
        &self.plus
    }

    pub fn minus(&self) -> &Subset {
        &self.minus
    }

    pub fn q(&self) -> usize {
        self.plus.ambient()
    }

    /// `♯X = ♯X₊ + ♯X₋`.
    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All polarized subsets of `[q]` of cardinality `r`, ordered by the
    /// sign word read from 1 to `q` (`-` before `0` before `+`).
    pub fn all_of_size(q: usize, r: usize) -> Vec<PolarizedSubset> {
        let mut out = Vec::new();
        let total = 3usize.pow(q as u32);
        for code in 0..total {
            let mut c = code;
            let mut signs = vec![0i8; q];
            for k in (0..q).rev() {
                signs[k] = (c % 3) as i8 - 1;
                c /= 3;
            }
            if signs.iter().filter(|&&s| s != 0).count() != r {
                continue;
            }
            let pick = |want: i8| -> Vec<usize> {
                (0..q)
                    .filter(|&k| signs[k] == want)
                    .map(|k| k + 1)
                    .collect()
            };
            out.push(
                PolarizedSubset::new(
                    Subset::new(pick(1), q).expect("increasing"),
                    Subset::new(pick(-1), q).expect("increasing"),
                )
                .expect("nonempty and disjoint"),
            );
        }
        out
    }
}

impl fmt::Display for PolarizedSubset {
    /// Written `{1-,2+,3-}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for k in 1..=self.q() {
            let sign = if self.plus.contains(k) {
                '+'
            } else if self.minus.contains(k) {
                '-'
            } else {
                continue;
            };
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{k}{sign}")?;
        }
        write!(f, "}}")
    }
}

fn check_pq(x: &PolarizedSubset, p: usize, q: usize) -> Result<()> {
    if p < q {
        return Err(Error::InvalidParameters(format!(
            "p = {p} is smaller than q = {q}"
        )));
    }
    if x.q() != q {
        return Err(Error::InvalidParameters(format!(
            "{x} is a subset of [{}], expected [{q}]",
            x.q()
        )));
    }
    Ok(())
}

/// `X^p = X₊ ∪ {p+q+1-x : x ∈ X₋}` in `[p+q]`.
pub fn lift_subset(x: &PolarizedSubset, p: usize, q: usize) -> Result<Subset> {
    check_pq(x, p, q)?;
    let n = p + q;
    let mut elements: Vec<usize> = x.plus.elements().to_vec();
    elements.extend(x.minus.elements().iter().map(|&k| n + 1 - k));
    Subset::from_unsorted(elements, n)
}

/// `X^p` paired with its dual, as a Schubert class of `F(r, n-r; n)`.
pub fn hat_subset(x: &PolarizedSubset, p: usize, q: usize) -> Result<BalancedPolarizedSubset> {
    let lifted = lift_subset(x, p, q)?;
    let dual = lifted.dual();
    BalancedPolarizedSubset::new(lifted, dual)
}

/// `X̃^p ⊂ [p+q-r]`: the ranks of `(X^p)^o` inside `(X^p)^c`, reflected.
pub fn tilde_subset(x: &PolarizedSubset, p: usize, q: usize) -> Result<Subset> {
    Ok(double_prime(&hat_subset(x, p, q)?))
}

/// `δ_X = ♯{(a, b) ∈ X₊ × X₋ : a < b}`.
pub fn delta(x: &PolarizedSubset) -> usize {
    x.plus
        .elements()
        .iter()
        .map(|&a| x.minus.elements().iter().filter(|&&b| a < b).count())
        .sum()
}

/// Conditions (C1)–(C3) on cardinalities, sums and `δ`.
pub fn check_c_conditions(
    i: &PolarizedSubset,
    j: &PolarizedSubset,
    k: &PolarizedSubset,
    p: usize,
    q: usize,
) -> bool {
    let r = i.len();
    if j.len() != r || k.len() != r || r == 0 {
        return false;
    }
    let xs = [i, j, k];
    let plus_sum: i64 = xs.iter().map(|x| x.plus.element_sum() as i64).sum();
    let minus_sum: i64 = xs.iter().map(|x| x.minus.element_sum() as i64).sum();
    let plus_count: i64 = xs.iter().map(|x| x.plus.len() as i64).sum();
    let r = r as i64;
    let c2 = plus_sum - minus_sum + r * (r + 1) / 2 == (p + q + 1) as i64 * (plus_count - r);
    let squares: i64 = xs.iter().map(|x| (x.plus.len() as i64).pow(2)).sum();
    let deltas: i64 = xs.iter().map(|x| delta(x) as i64).sum();
    c2 && squares + 2 * deltas == r * r
}

/// Admission rule for a triple `(I, J, K)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularMode {
    /// Both shifted partition triples lie in `Horn(r)`.
    HornPair,
    /// Both Grassmannian triple intersections equal `[pt]`.
    GrassmannPairOne,
    /// The Belkale–Kumar product of `(Î, Ĵ, K̂)` equals `[pt]`.
    BkFlagOne,
    /// The Belkale–Kumar product of `(Î, Ĵ, K̂)` is nonzero.
    BkFlagPositive,
}

impl SingularMode {
    pub const ALL: [SingularMode; 4] = [
        SingularMode::HornPair,
        SingularMode::GrassmannPairOne,
        SingularMode::BkFlagOne,
        SingularMode::BkFlagPositive,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SingularMode::HornPair => "horn-pair",
            SingularMode::GrassmannPairOne => "grassmann-pair-one",
            SingularMode::BkFlagOne => "bk-flag-one",
            SingularMode::BkFlagPositive => "bk-flag-positive",
        }
    }
}

impl fmt::Display for SingularMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SingularMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        SingularMode::ALL
            .into_iter()
            .find(|m| m.as_str() == norm)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown singular mode `{s}`")))
    }
}

/// Intersection numbers recorded when a triple is admitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularCertificate {
    pub mode: SingularMode,
    /// Triple intersection of `(I^p, J^p, K^p)` in `G(r, p+q)`.
    pub outer: u64,
    /// Triple intersection of `(Ĩ^p, J̃^p, K̃^p)` in `G(r, p+q-r)`.
    pub inner: u64,
}

impl SingularCertificate {
    pub fn value(&self) -> u64 {
        self.outer * self.inner
    }
}

/// `|x|_{I₊} - |x|_{I₋} + |y|_{J₊} - |y|_{J₋} + |z|_{K₊} - |z|_{K₋} ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularInequality {
    pub r: usize,
    pub i: PolarizedSubset,
    pub j: PolarizedSubset,
    pub k: PolarizedSubset,
    pub certificate: SingularCertificate,
}

impl SingularInequality {
    pub fn q(&self) -> usize {
        self.i.q()
    }

    pub fn roles(&self) -> [&PolarizedSubset; 3] {
        [&self.i, &self.j, &self.k]
    }

    /// The functional on `ℝ^{3q}`, entries in `{-1, 0, 1}`.
    pub fn coeffs(&self) -> Vec<i64> {
        signed_coeffs(self.roles())
    }

    pub fn label(&self) -> String {
        format!("s{}:{}|{}|{}", self.r, self.i, self.j, self.k)
    }

    /// `coeffs · (x, y, z)`; the inequality holds when this is `≤ 0`.
    pub fn evaluate(&self, x: &[BigRational], y: &[BigRational], z: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (role, v) in self.roles().into_iter().zip([x, y, z]) {
            for &e in role.plus.elements() {
                total += &v[e - 1];
            }
            for &e in role.minus.elements() {
                total -= &v[e - 1];
            }
        }
        total
    }
}

fn signed_coeffs(roles: [&PolarizedSubset; 3]) -> Vec<i64> {
    let q = roles[0].q();
    let mut out = vec![0; 3 * q];
    for (block, x) in roles.into_iter().enumerate() {
        for &e in x.plus.elements() {
            out[block * q + e - 1] = 1;
        }
        for &e in x.minus.elements() {
            out[block * q + e - 1] = -1;
        }
    }
    out
}

/// Decides admission of one ordered triple.
pub fn admit_triple(
    i: &PolarizedSubset,
    j: &PolarizedSubset,
    k: &PolarizedSubset,
    p: usize,
    q: usize,
    mode: SingularMode,
) -> Result<Option<SingularCertificate>> {
    let r = i.len();
    if j.len() != r || k.len() != r {
        return Err(Error::CardinalityMismatch(format!(
            "{i}, {j}, {k} do not share a cardinality"
        )));
    }
    let n = p + q;
    let hats = [
        hat_subset(i, p, q)?,
        hat_subset(j, p, q)?,
        hat_subset(k, p, q)?,
    ];
    let tildes: Vec<Subset> = hats.iter().map(double_prime).collect();
    let outer = triple_intersection(hats[0].plus(), hats[1].plus(), hats[2].plus())?;
    let inner = triple_intersection(&tildes[0], &tildes[1], &tildes[2])?;
    let certificate = SingularCertificate { mode, outer, inner };
    let admitted = match mode {
        SingularMode::HornPair => {
            let lifted: Vec<Partition> = hats
                .iter()
                .map(|h| h.plus().to_partition())
                .collect::<Result<_>>()?;
            let small: Vec<Partition> = tildes
                .iter()
                .map(|t| t.to_partition())
                .collect::<Result<_>>()?;
            let first = shifted_triple(&lifted[0], &lifted[1], &lifted[2], n - r);
            let second = shifted_triple(&small[0], &small[1], &small[2], n - 2 * r);
            horn_membership(&first, HornMode::LrPositive)?
                && horn_membership(&second, HornMode::LrPositive)?
        }
        SingularMode::GrassmannPairOne => outer == 1 && inner == 1,
        SingularMode::BkFlagOne | SingularMode::BkFlagPositive => {
            let bk = bk_two_step_product(&hats[0], &hats[1], &hats[2])?;
            let v = bk.value();
            if mode == SingularMode::BkFlagOne {
                v == 1
            } else {
                v >= 1
            }
        }
    };
    Ok(admitted.then_some(certificate))
}

type SingularKey = (usize, usize, SingularMode);

fn singular_memo() -> &'static RwLock<HashMap<SingularKey, Arc<Vec<SingularInequality>>>> {
    static MEMO: OnceLock<RwLock<HashMap<SingularKey, Arc<Vec<SingularInequality>>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All admitted ordered triples with `r ∈ [q]`, ordered by `r` and then by
/// the enumeration order of [`PolarizedSubset::all_of_size`]; rows with equal
/// coefficient vectors are kept once.
pub fn generate_singular_inequalities(
    p: usize,
    q: usize,
    mode: SingularMode,
) -> Result<Arc<Vec<SingularInequality>>> {
    if q == 0 || p < q {
        return Err(Error::InvalidParameters(format!(
            "need p >= q >= 1, got p = {p}, q = {q}"
        )));
    }
    if let Some(list) = singular_memo()
        .read()
        .expect("singular memo poisoned")
        .get(&(p, q, mode))
    {
        return Ok(Arc::clone(list));
    }
    let mut out = Vec::new();
    for r in 1..=q {
        let subsets = PolarizedSubset::all_of_size(q, r);
        let found: Vec<Vec<SingularInequality>> = subsets
            .par_iter()
            .map(|i| -> Result<Vec<SingularInequality>> {
                let mut local = Vec::new();
                for j in &subsets {
                    for k in &subsets {
                        if let Some(certificate) = admit_triple(i, j, k, p, q, mode)? {
                            local.push(SingularInequality {
                                r,
                                i: i.clone(),
                                j: j.clone(),
                                k: k.clone(),
                                certificate,
                            });
                        }
                    }
                }
                Ok(local)
            })
            .collect::<Result<_>>()?;
        out.extend(found.into_iter().flatten());
    }
    let mut seen = HashSet::new();
    out.retain(|ineq| seen.insert(ineq.coeffs()));
    let list = Arc::new(out);
    Ok(singular_memo()
        .write()
        .expect("singular memo poisoned")
        .entry((p, q, mode))
        .or_insert(list)
        .clone())
}

fn check_chamber(v: &[BigRational], q: usize, name: &str) -> Result<()> {
    if v.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            actual: v.len(),
        });
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotInChamber(format!(
            "{name} is not weakly decreasing"
        )));
    }
    if v.last().is_some_and(|t| t.is_negative()) {
        return Err(Error::NotInChamber(format!("{name} has a negative entry")));
    }
    Ok(())
}

/// Exact membership in `Singular(p, q)` using the `grassmann-pair-one` list.
pub fn membership_singular(
    x: &[BigRational],
    y: &[BigRational],
    z: &[BigRational],
    p: usize,
    q: usize,
) -> Result<bool> {
    membership_singular_with(x, y, z, p, q, SingularMode::GrassmannPairOne)
}

pub fn membership_singular_with(
    x: &[BigRational],
    y: &[BigRational],
    z: &[BigRational],
    p: usize,
    q: usize,
    mode: SingularMode,
) -> Result<bool> {
    check_chamber(x, q, "x")?;
    check_chamber(y, q, "y")?;
    check_chamber(z, q, "z")?;
    let list = generate_singular_inequalities(p, q, mode)?;
    Ok(list
        .iter()
        .all(|ineq| !ineq.evaluate(x, y, z).is_positive()))
}

/// `x̃ = (x_1, …, x_q, 0, …, 0, -x_q, …, -x_1)` of length `p + q`.
pub fn embed_tilde(x: &[BigRational], p: usize, q: usize) -> Result<Vec<BigRational>> {
    if p < q {
        return Err(Error::InvalidParameters(format!(
            "p = {p} is smaller than q = {q}"
        )));
    }
    check_chamber(x, q, "x")?;
    let mut out: Vec<BigRational> = x.to_vec();
    out.extend(std::iter::repeat_n(BigRational::zero(), p - q));
    out.extend(x.iter().rev().map(|t| -t));
    Ok(out)
}

/// `Horn(p+q)` membership of the embedded triple.
pub fn embedded_horn_membership(
    x: &[BigRational],
    y: &[BigRational],
    z: &[BigRational],
    p: usize,
    q: usize,
    mode: HornMode,
) -> Result<bool> {
    let t = RealTriple::new(
        embed_tilde(x, p, q)?,
        embed_tilde(y, p, q)?,
        embed_tilde(z, p, q)?,
    )?;
    horn_membership(&t, mode)
}

/// Classical families, recognised up to a permutation of the three roles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Weyl,
    Lidskii,
    SignedLidskii,
    Thompson,
    Other,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Weyl,
        Family::Lidskii,
        Family::SignedLidskii,
        Family::Thompson,
        Family::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Weyl => "weyl",
            Family::Lidskii => "lidskii",
            Family::SignedLidskii => "signed-lidskii",
            Family::Thompson => "thompson",
            Family::Other => "other",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const ROLE_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn is_weyl(a: &PolarizedSubset, b: &PolarizedSubset, c: &PolarizedSubset) -> bool {
    if !(a.plus.is_empty() && b.plus.is_empty() && c.minus.is_empty()) {
        return false;
    }
    match (a.minus.elements(), b.minus.elements(), c.plus.elements()) {
        ([i], [j], [k]) => i + j == k + 1,
        _ => false,
    }
}

fn is_lidskii(a: &PolarizedSubset, b: &PolarizedSubset, c: &PolarizedSubset) -> bool {
    let r = a.len();
    a.plus.is_empty()
        && a.minus.elements().iter().copied().eq(1..=r)
        && b.plus.is_empty()
        && c.minus.is_empty()
        && b.minus == c.plus
}

fn is_signed_lidskii(a: &PolarizedSubset, b: &PolarizedSubset, c: &PolarizedSubset) -> bool {
    let r = a.len();
    if !(a.plus.is_empty() && a.minus.elements().iter().copied().eq(1..=r)) {
        return false;
    }
    // B = (S \ {s}) ∐ {s} and C = {s} ∐ (S \ {s}).
    b.minus.len() == 1 && b.plus == c.minus && b.minus == c.plus
}

fn is_thompson(a: &PolarizedSubset, b: &PolarizedSubset, c: &PolarizedSubset) -> bool {
    if !(a.plus.is_empty() && b.plus.is_empty() && c.minus.is_empty()) {
        return false;
    }
    let (i, j, k) = (a.minus.elements(), b.minus.elements(), c.plus.elements());
    i.len() == k.len() && j.len() == k.len() && (0..k.len()).all(|t| i[t] + j[t] == k[t] + t + 1)
}

/// The first family in the order Weyl, Lidskii, signed Lidskii, Thompson
/// whose pattern matches some permutation of the roles.
pub fn classify_family(ineq: &SingularInequality) -> Family {
    classify_roles(ineq.roles())
}

pub fn classify_roles(roles: [&PolarizedSubset; 3]) -> Family {
    let tests: [(
        Family,
        fn(&PolarizedSubset, &PolarizedSubset, &PolarizedSubset) -> bool,
    ); 4] = [
        (Family::Weyl, is_weyl),
        (Family::Lidskii, is_lidskii),
        (Family::SignedLidskii, is_signed_lidskii),
        (Family::Thompson, is_thompson),
    ];
    for (family, test) in tests {
        if roles[0].len() == 1 && family != Family::Weyl {
            // Rank-one rows are Weyl or nothing.
            continue;
        }
        if ROLE_PERMUTATIONS
            .iter()
            .any(|s| test(roles[s[0]], roles[s[1]], roles[s[2]]))
        {
            return family;
        }
    }
    Family::Other
}

/// `♯I₊ + ♯J₊ + ♯K₊ = r`.
pub fn is_regular(ineq: &SingularInequality) -> bool {
    ineq.roles().iter().map(|x| x.plus.len()).sum::<usize>() == ineq.r
}

/// Number of distinct coefficient vectors among the role permutations.
pub fn orbit_size(ineq: &SingularInequality) -> usize {
    let roles = ineq.roles();
    ROLE_PERMUTATIONS
        .iter()
        .map(|s| signed_coeffs([roles[s[0]], roles[s[1]], roles[s[2]]]))
        .collect::<HashSet<_>>()
        .len()
}

/// The rows of a generated list as a system on `ℝ^{3q}`.
pub fn singular_system(q: usize, list: &[SingularInequality]) -> Result<InequalitySystem> {
    let mut sys = InequalitySystem::new(3 * q);
    for ineq in list {
        if ineq.q() != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                actual: ineq.q(),
            });
        }
        sys.push_inequality(Row::from_integers(ineq.label(), &ineq.coeffs(), 0))?;
    }
    Ok(sys)
}

/// `ℝ^q_{++}` for each of `x, y, z`: `x_a ≥ x_{a+1}` and `x_q ≥ 0`.
pub fn singular_chamber(q: usize) -> InequalitySystem {
    let mut sys = InequalitySystem::new(3 * q);
    for (block, name) in ["x", "y", "z"].into_iter().enumerate() {
        for a in 0..q {
            let mut coeffs = vec![0i64; 3 * q];
            coeffs[block * q + a] = -1;
            let label = if a + 1 < q {
                coeffs[block * q + a + 1] = 1;
                format!("{name}{}>={name}{}", a + 1, a + 2)
            } else {
                format!("{name}{}>=0", a + 1)
            };
            sys.push_inequality(Row::from_integers(label, &coeffs, 0))
                .expect("chamber labels are unique");
        }
    }
    sys
}

/// The minimal system `E^min_{p,q}` and what it says about stabilization.
#[derive(Clone, Debug)]
pub struct Stabilization {
    /// Surviving rows of the `horn-pair` list, in generation order.
    pub minimal: Vec<SingularInequality>,
    /// Chamber rows with their essential flag.
    pub chamber_essential: Vec<(String, bool)>,
    /// Labels of eliminated generated rows.
    pub eliminated: Vec<String>,
}

impl Stabilization {
    pub fn non_regular(&self) -> Vec<&SingularInequality> {
        self.minimal.iter().filter(|i| !is_regular(i)).collect()
    }

    pub fn is_stable(&self) -> bool {
        self.minimal.iter().all(is_regular)
    }
}

/// Minimizes the `horn-pair` list of `Singular(p, q)` against the chamber.
pub fn minimal_singular_system(p: usize, q: usize) -> Result<Stabilization> {
    let list = generate_singular_inequalities(p, q, SingularMode::HornPair)?;
    let sys = singular_system(q, &list)?;
    let min = minimize_system(&sys, &singular_chamber(q))?;
    let kept: HashSet<&str> = min
        .system
        .inequalities()
        .iter()
        .map(|r| r.label.as_str())
        .collect();
    let minimal = list
        .iter()
        .filter(|i| kept.contains(i.label().as_str()))
        .cloned()
        .collect();
    let eliminated = min.eliminated.into_iter().map(|(l, _)| l).collect();
    Ok(Stabilization {
        minimal,
        chamber_essential: min.chamber_essential,
        eliminated,
    })
}

/// Whether every row of `E^min_{p,q}` is regular, which certifies
/// `Singular(∞, q) = Singular(p, q)`.
pub fn stabilization_check(p: usize, q: usize) -> Result<bool> {
    Ok(minimal_singular_system(p, q)?.is_stable())
}

/// `(p' - p)·1^r_{♯X₊}`, after checking that both `λ(X^{p'}) - λ(X^p)` and
/// `λ(X̃^{p'}) - λ(X̃^p)` equal it.
pub fn shift_lambda(x: &PolarizedSubset, p: usize, p_prime: usize, q: usize) -> Result<Vec<usize>> {
    if p_prime < p {
        return Err(Error::InvalidParameters(format!(
            "p' = {p_prime} is smaller than p = {p}"
        )));
    }
    let r = x.len();
    let plus = x.plus.len();
    let increment: Vec<usize> = (0..r)
        .map(|a| if a < plus { p_prime - p } else { 0 })
        .collect();
    let diff = |a: &Partition, b: &Partition| -> Vec<i64> {
        (0..r)
            .map(|t| a.part(t) as i64 - b.part(t) as i64)
            .collect()
    };
    let expected: Vec<i64> = increment.iter().map(|&v| v as i64).collect();
    let lifted = diff(
        &lift_subset(x, p_prime, q)?.to_partition()?,
        &lift_subset(x, p, q)?.to_partition()?,
    );
    let tilde = diff(
        &tilde_subset(x, p_prime, q)?.to_partition()?,
        &tilde_subset(x, p, q)?.to_partition()?,
    );
    if lifted != expected || tilde != expected {
        return Err(Error::Inconsistent(format!(
            "shift of {x} from p = {p} to {p_prime}: lifted {lifted:?}, tilde {tilde:?}, expected {expected:?}"
        )));
    }
    Ok(increment)
}
