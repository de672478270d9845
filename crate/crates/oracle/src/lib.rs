//! Floating-point checks of the singular Horn inequalities.
//!
//! Samples `τ(A + B)` for Haar-random `A, B` with prescribed singular
//! spectra, evaluates exact systems on the samples, and searches for
//! explicit witnesses `(A, B)` with `τ(A + B) ≈ z`.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use singularhorn::cone::InequalitySystem;
use singularhorn::{Error, Result};

pub use nalgebra::Complex;

pub type CMatrix = DMatrix<Complex<f64>>;

/// Default tolerance for inequality checks.
pub const CHECK_TOL: f64 = 1e-9;
/// Default tolerance for accepting a witness.
pub const WITNESS_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z_observed: Vec<f64>,
    pub seed: u64,
    pub trial: u64,
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A Haar-distributed element of `U(n)`: QR of a complex Gaussian matrix
/// with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let norm = d.norm();
        let phase = if norm > 0.0 {
            d / norm
        } else {
            Complex::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// The `p × q` matrix with `x` on its diagonal.
pub fn diag_embed(x: &[f64], p: usize, q: usize) -> CMatrix {
    CMatrix::from_fn(p, q, |i, j| {
        if i == j && i < x.len() {
            Complex::new(x[i], 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

/// Singular values in decreasing order, clamped at zero.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().map(|v| v.max(0.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

struct Svd {
    u: CMatrix,
    s: Vec<f64>,
    v: CMatrix,
}

/// Thin SVD with singular triples sorted by decreasing value.
fn sorted_svd(m: &CMatrix) -> Svd {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let v = v_t.adjoint();
    Svd {
        u: CMatrix::from_columns(
            &order
                .iter()
                .map(|&k| u.column(k).into_owned())
                .collect::<Vec<_>>(),
        ),
        s: order
            .iter()
            .map(|&k| svd.singular_values[k].max(0.0))
            .collect(),
        v: CMatrix::from_columns(
            &order
                .iter()
                .map(|&k| v.column(k).into_owned())
                .collect::<Vec<_>>(),
        ),
    }
}

fn check_spectrum(v: &[f64], q: usize, name: &str, tol: f64) -> Result<()> {
    if v.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            actual: v.len(),
        });
    }
    if v.iter().any(|t| !t.is_finite() || *t < -tol) || v.windows(2).any(|w| w[0] < w[1] - tol) {
        return Err(Error::NotInChamber(format!(
            "{name} is not a singular spectrum"
        )));
    }
    Ok(())
}

fn check_shape(p: usize, q: usize) -> Result<()> {
    if q == 0 || q > p {
        return Err(Error::InvalidParameters(format!(
            "need p >= q >= 1, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `τ(U₁ a V₁* + U₂ b V₂*)` for `trials` independent Haar draws.
pub fn sample_matrix_sum(a: &CMatrix, b: &CMatrix, trials: u64, seed: u64) -> Vec<Vec<f64>> {
    let (p, q) = a.shape();
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let u1 = haar_unitary(p, &mut rng);
            let v1 = haar_unitary(q, &mut rng);
            let u2 = haar_unitary(p, &mut rng);
            let v2 = haar_unitary(q, &mut rng);
            let m = &u1 * a * v1.adjoint() + &u2 * b * v2.adjoint();
            singular_values(&m)
        })
        .collect()
}

/// Samples `τ(A + B)` with `τ(A) = x`, `τ(B) = y` and `A, B` independently
/// Haar-rotated. Reproducible from `seed`, independent of thread count.
pub fn sample_singular_sum(
    x: &[f64],
    y: &[f64],
    p: usize,
    q: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<SingularSample>> {
    check_shape(p, q)?;
    check_spectrum(x, q, "x", CHECK_TOL)?;
    check_spectrum(y, q, "y", CHECK_TOL)?;
    let zs = sample_matrix_sum(&diag_embed(x, p, q), &diag_embed(y, p, q), trials, seed);
    Ok(zs
        .into_iter()
        .enumerate()
        .map(|(trial, z)| SingularSample {
            x: x.to_vec(),
            y: y.to_vec(),
            z_observed: z,
            seed,
            trial: trial as u64,
        })
        .collect())
}

/// Result of evaluating a system on sampled triples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub trials: u64,
    /// Number of (trial, row) pairs whose margin exceeds the tolerance.
    pub violations: u64,
    /// Number of trials with at least one violation.
    pub violating_trials: u64,
    /// Largest margin `a·v - b` seen over all rows and trials.
    pub worst_margin: f64,
    pub worst_label: Option<String>,
    pub z_min: Vec<f64>,
    pub z_max: Vec<f64>,
}

struct FloatRow {
    label: String,
    coeffs: Vec<f64>,
    rhs: f64,
    equality: bool,
}

fn float_rows(sys: &InequalitySystem) -> Vec<FloatRow> {
    let conv = |r: &singularhorn::cone::Row, equality| FloatRow {
        label: r.label.clone(),
        coeffs: r
            .coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect(),
        rhs: r.rhs.to_f64().unwrap_or(f64::NAN),
        equality,
    };
    sys.inequalities()
        .iter()
        .map(|r| conv(r, false))
        .chain(sys.equalities().iter().map(|r| conv(r, true)))
        .collect()
}

/// Evaluates `sys` (on `ℝ^{3q}`, coordinates `(x, y, z)`) at every sample.
pub fn check_samples(
    sys: &InequalitySystem,
    samples: &[SingularSample],
    tol: f64,
) -> Result<ViolationReport> {
    let rows = float_rows(sys);
    let q = samples.first().map_or(sys.dimension() / 3, |s| s.x.len());
    if sys.dimension() != 3 * q {
        return Err(Error::DimensionMismatch {
            expected: 3 * q,
            actual: sys.dimension(),
        });
    }
    let mut report = ViolationReport {
        trials: samples.len() as u64,
        violations: 0,
        violating_trials: 0,
        worst_margin: f64::NEG_INFINITY,
        worst_label: None,
        z_min: vec![f64::INFINITY; q],
        z_max: vec![f64::NEG_INFINITY; q],
    };
    for s in samples {
        let point: Vec<f64> =
            s.x.iter()
                .chain(&s.y)
                .chain(&s.z_observed)
                .copied()
                .collect();
        let mut hit = false;
        for row in &rows {
            let value: f64 = row
                .coeffs
                .iter()
                .zip(&point)
                .map(|(a, v)| a * v)
                .sum::<f64>()
                - row.rhs;
            let margin = if row.equality { value.abs() } else { value };
            if margin > report.worst_margin {
                report.worst_margin = margin;
                report.worst_label = Some(row.label.clone());
            }
            if margin > tol {
                report.violations += 1;
                hit = true;
            }
        }
        report.violating_trials += u64::from(hit);
        for (k, z) in s.z_observed.iter().enumerate() {
            report.z_min[k] = report.z_min[k].min(*z);
            report.z_max[k] = report.z_max[k].max(*z);
        }
    }
    Ok(report)
}

/// Samples `trials` triples `(x, y, τ(A + B))` and evaluates `sys` on them.
#[allow(clippy::too_many_arguments)]
pub fn verify_necessity(
    sys: &InequalitySystem,
    x: &[f64],
    y: &[f64],
    p: usize,
    q: usize,
    trials: u64,
    tol: f64,
    seed: u64,
) -> Result<ViolationReport> {
    let samples = sample_singular_sum(x, y, p, q, trials, seed)?;
    check_samples(sys, &samples, tol)
}

/// Matrices `A, B` with `τ(A) = x`, `τ(B) = y` and `τ(A + B) ≈ z`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub a: CMatrix,
    pub b: CMatrix,
    /// `‖τ(A + B) - z‖₂`.
    pub residual: f64,
}

/// Search parameters for [`realize`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub restarts: u32,
    pub iters: u32,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            iters: 400,
            tol: WITNESS_TOL,
            seed: 0,
        }
    }
}

/// `(I - H/2)⁻¹ (I + H/2)`, unitary for skew-Hermitian `H`.
fn cayley(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    let id = CMatrix::identity(n, n);
    let half = h * Complex::new(0.5, 0.0);
    let inv = (&id - &half)
        .try_inverse()
        .expect("I - H/2 is invertible for skew-Hermitian H");
    inv * (&id + &half)
}

fn residual(s: &[f64], z: &[f64]) -> f64 {
    s.iter()
        .zip(z)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Local search for a witness of `(x, y, z) ∈ Singular(p, q)`.
///
/// Since `τ` is invariant under `A + B ↦ U(A + B)V*`, it suffices to fix
/// `A = diag(x)` and move `B = U diag(y) V*` over `U(p) × U(q)`. Each step is
/// a gradient step on `‖τ(A + B) - z‖` along skew-Hermitian directions,
/// retracted with the Cayley transform, with backtracking on the step size.
/// A witness certifies membership up to `tol`; `None` certifies nothing.
pub fn realize(
    x: &[f64],
    y: &[f64],
    z: &[f64],
    p: usize,
    q: usize,
    opts: SearchOptions,
) -> Result<Option<Witness>> {
    check_shape(p, q)?;
    for (v, name) in [(x, "x"), (y, "y"), (z, "z")] {
        check_spectrum(v, q, name, opts.tol)?;
    }
    let a = diag_embed(x, p, q);
    let yd = diag_embed(y, p, q);
    let objective = |u: &CMatrix, v: &CMatrix| -> f64 {
        let m = &a + u * &yd * v.adjoint();
        residual(&singular_values(&m), z)
    };
    let mut best: Option<Witness> = None;
    for restart in 0..opts.restarts {
        let mut rng = trial_rng(opts.seed, u64::from(restart));
        let mut u = haar_unitary(p, &mut rng);
        let mut v = haar_unitary(q, &mut rng);
        let mut f = objective(&u, &v);
        let mut eta = 0.5;
        for _ in 0..opts.iters {
            if f < opts.tol {
                break;
            }
            let svd = sorted_svd(&(&a + &u * &yd * v.adjoint()));
            let mut gu = CMatrix::zeros(p, p);
            let mut gv = CMatrix::zeros(q, q);
            let uy = &u * &yd;
            for k in 0..q {
                let w = Complex::new((svd.s[k] - z[k]) / f, 0.0);
                let uk: DVector<Complex<f64>> = svd.u.column(k).into_owned();
                let vk: DVector<Complex<f64>> = svd.v.column(k).into_owned();
                let left = &yd * (v.adjoint() * &vk);
                let right = uk.adjoint() * &u;
                gu += &left * &right * w;
                gv += v.adjoint() * &vk * (uk.adjoint() * &uy) * w;
            }
            let hu = (gu.adjoint() - &gu) * Complex::new(-0.5, 0.0);
            let hv = (gv.adjoint() - &gv) * Complex::new(0.5, 0.0);
            let mut improved = false;
            while eta > 1e-12 {
                let nu = &u * cayley(&(&hu * Complex::new(eta, 0.0)));
                let nv = &v * cayley(&(&hv * Complex::new(eta, 0.0)));
                let nf = objective(&nu, &nv);
                if nf < f {
                    u = nu;
                    v = nv;
                    f = nf;
                    eta = (eta * 1.5).min(4.0);
                    improved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|w| f < w.residual) {
            best = Some(Witness {
                a: a.clone(),
                b: &u * &yd * v.adjoint(),
                residual: f,
            });
        }
        if f < opts.tol {
            break;
        }
    }
    Ok(best.filter(|w| w.residual < opts.tol))
}
