#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A rational in `[-10, 10]` with denominator at most 8.
pub fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.random_range(1..=8);
    let num: i64 = rng.random_range(-10 * den..=10 * den);
    BigRational::new(num.into(), den.into())
}

pub fn decreasing(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (0..n).map(|_| rational(rng)).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// A weakly decreasing nonnegative vector, with ties and zeros common.
pub fn chamber(rng: &mut ChaCha8Rng, q: usize) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (0..q)
        .map(|_| {
            if rng.random_bool(0.15) {
                BigRational::from_integer(0.into())
            } else {
                let r = rational(rng);
                if r < BigRational::from_integer(0.into()) {
                    -r
                } else {
                    r
                }
            }
        })
        .collect();
    if q > 1 && rng.random_bool(0.2) {
        v[1] = v[0].clone();
    }
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Random Horn-chamber triple with zero trace: `z` is shifted by a constant.
pub fn trace_free_triple(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let x = decreasing(rng, n);
    let y = decreasing(rng, n);
    let mut z = decreasing(rng, n);
    let total: BigRational = x.iter().chain(&y).chain(&z).sum();
    let shift = total / BigRational::from_integer((n as i64).into());
    for t in &mut z {
        *t -= &shift;
    }
    (x, y, z)
}

/// Half the time a commuting (diagonal) triple, which always lies in the
/// cone; otherwise [`trace_free_triple`].
pub fn mixed_triple(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    use rand::seq::SliceRandom;
    if rng.random_bool(0.5) {
        return trace_free_triple(rng, n);
    }
    let x = decreasing(rng, n);
    let mut y = decreasing(rng, n);
    let mut perm = y.clone();
    perm.shuffle(rng);
    let mut z: Vec<BigRational> = x.iter().zip(&perm).map(|(a, b)| -(a + b)).collect();
    z.sort_by(|a, b| b.cmp(a));
    if rng.random_bool(0.5) {
        // Nudge towards or across the boundary.
        let eps = BigRational::new(1.into(), rng.random_range(1..=16i64).into());
        y[0] += &eps;
        z[n - 1] -= &eps;
    }
    (x, y, z)
}
