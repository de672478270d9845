//! Row documents shared by every command, and their CSV and text renderings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use singularhorn::horn::{HornCertificate, HornInequality};
use singularhorn::schubert::triple_intersection;
use singularhorn::singular::{classify_family, is_regular, SingularInequality};

/// Certificate value: `ℓ` for Horn rows, `[ℓ', ℓ'']` for singular rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertValue {
    Single(u64),
    Pair([u64; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: String,
    pub value: CertValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularRow {
    pub r: usize,
    #[serde(rename = "I_plus")]
    pub i_plus: Vec<usize>,
    #[serde(rename = "I_minus")]
    pub i_minus: Vec<usize>,
    #[serde(rename = "J_plus")]
    pub j_plus: Vec<usize>,
    #[serde(rename = "J_minus")]
    pub j_minus: Vec<usize>,
    #[serde(rename = "K_plus")]
    pub k_plus: Vec<usize>,
    #[serde(rename = "K_minus")]
    pub k_minus: Vec<usize>,
    pub certificate: Certificate,
    pub family: String,
    pub regular: bool,
    pub coeffs: Vec<i64>,
}

impl SingularRow {
    pub fn new(ineq: &SingularInequality) -> Self {
        let c = ineq.certificate;
        Self {
            r: ineq.r,
            i_plus: ineq.i.plus().elements().to_vec(),
            i_minus: ineq.i.minus().elements().to_vec(),
            j_plus: ineq.j.plus().elements().to_vec(),
            j_minus: ineq.j.minus().elements().to_vec(),
            k_plus: ineq.k.plus().elements().to_vec(),
            k_minus: ineq.k.minus().elements().to_vec(),
            certificate: Certificate {
                mode: c.mode.as_str().to_string(),
                value: CertValue::Pair([c.outer, c.inner]),
            },
            family: classify_family(ineq).as_str().to_string(),
            regular: is_regular(ineq),
            coeffs: ineq.coeffs(),
        }
    }

    pub const CSV_HEADER: [&'static str; 12] = [
        "r",
        "I_plus",
        "I_minus",
        "J_plus",
        "J_minus",
        "K_plus",
        "K_minus",
        "certificate_mode",
        "certificate_value",
        "family",
        "regular",
        "coeffs",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.r.to_string(),
            join(&self.i_plus),
            join(&self.i_minus),
            join(&self.j_plus),
            join(&self.j_minus),
            join(&self.k_plus),
            join(&self.k_minus),
            self.certificate.mode.clone(),
            self.certificate.value.to_string(),
            self.family.clone(),
            self.regular.to_string(),
            join(&self.coeffs),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornRow {
    pub r: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub certificate: Certificate,
    pub coeffs: Vec<i64>,
}

impl HornRow {
    /// Rows admitted recursively carry the intersection number computed here.
    pub fn new(ineq: &HornInequality, mode: &str) -> Self {
        let value = match ineq.certificate {
            HornCertificate::Lr(l) => l,
            HornCertificate::Recursive => triple_intersection(&ineq.i, &ineq.j, &ineq.k)
                .expect("generated subsets share a Grassmannian"),
        };
        Self {
            r: ineq.r,
            i: ineq.i.elements().to_vec(),
            j: ineq.j.elements().to_vec(),
            k: ineq.k.elements().to_vec(),
            certificate: Certificate {
                mode: mode.to_string(),
                value: CertValue::Single(value),
            },
            coeffs: ineq.coeffs(),
        }
    }

    pub const CSV_HEADER: [&'static str; 7] = [
        "r",
        "I",
        "J",
        "K",
        "certificate_mode",
        "certificate_value",
        "coeffs",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.r.to_string(),
            join(&self.i),
            join(&self.j),
            join(&self.k),
            self.certificate.mode.clone(),
            self.certificate.value.to_string(),
            join(&self.coeffs),
        ]
    }
}

impl std::fmt::Display for CertValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertValue::Single(l) => write!(f, "{l}"),
            CertValue::Pair([a, b]) => write!(f, "{a} {b}"),
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The distinct vectors obtained by permuting the three blocks.
pub fn orbit(coeffs: &[i64]) -> BTreeSet<Vec<i64>> {
    let m = coeffs.len() / 3;
    let b = [&coeffs[..m], &coeffs[m..2 * m], &coeffs[2 * m..]];
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
    .iter()
    .map(|s| [b[s[0]], b[s[1]], b[s[2]]].concat())
    .collect()
}

/// Groups sorted coefficient vectors by orbit, keeping the first member of
/// each orbit as its representative. Returns `(index, orbit size)` pairs.
pub fn orbit_representatives(rows: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (index, c) in rows.iter().enumerate() {
        if seen.contains(c) {
            continue;
        }
        let o = orbit(c);
        let size = o.iter().filter(|v| rows.binary_search(v).is_ok()).count();
        seen.extend(o);
        out.push((index, size));
    }
    out
}

fn terms(block: &[i64], name: char, sign: i64) -> Vec<(i64, String)> {
    block
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(a, &c)| (sign * c, format!("{name}{}", a + 1)))
        .collect()
}

fn side(terms: &[(i64, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, name)) in terms.iter().enumerate() {
        let coef = if c.abs() == 1 {
            String::new()
        } else {
            c.abs().to_string()
        };
        match (k, *c < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&coef);
        out.push_str(name);
    }
    out
}

/// `coeffs·(a, b, c) ≤ 0` rendered as `a… + b… >= c…`.
pub fn singular_text(coeffs: &[i64]) -> String {
    let q = coeffs.len() / 3;
    let mut lhs = terms(&coeffs[..q], 'a', -1);
    lhs.extend(terms(&coeffs[q..2 * q], 'b', -1));
    let rhs = terms(&coeffs[2 * q..], 'c', 1);
    format!("{} >= {}", side(&lhs), side(&rhs))
}

/// `coeffs·(x, y, z) ≤ 0` rendered as `x… + y… + z… <= 0`.
pub fn horn_text(coeffs: &[i64]) -> String {
    let n = coeffs.len() / 3;
    let mut all = terms(&coeffs[..n], 'x', 1);
    all.extend(terms(&coeffs[n..2 * n], 'y', 1));
    all.extend(terms(&coeffs[2 * n..], 'z', 1));
    format!("{} <= 0", side(&all))
}

pub fn permutations_note(orbit_size: usize) -> String {
    match orbit_size {
        0 | 1 => String::new(),
        2 => " (and 1 permutation)".into(),
        k => format!(" (and {} permutations)", k - 1),
    }
}
