use crate::problem::Bounds;
use crate::rng::RngStream;

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut n = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|p| *p * *p <= n)
            .all(|p| !n.is_multiple_of(*p))
        {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// Van der Corput radical inverse of `i` in `base`.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut v = 0.0;
    while i > 0 {
        v += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    v
}

/// Radical inverse with digit `l` mapped through `perms[l]`; the permutations
/// also act on leading zeros, so every digit level down to double precision is used.
fn scrambled_inverse(mut i: u64, base: u64, perms: &[Vec<u64>]) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut v = 0.0;
    for perm in perms {
        v += perm[(i % base) as usize] as f64 * scale;
        i /= base;
        scale *= inv;
    }
    v.min(1.0 - f64::EPSILON)
}

/// `n` points of a Hammersley set with randomly permuted digits, mapped into `bounds`.
/// The first coordinate is `i / n`; coordinate `k >= 1` uses the `k`-th prime base.
pub fn scrambled_hammersley(n: usize, bounds: &Bounds, rng: &mut RngStream) -> Vec<Vec<f64>> {
    let d = bounds.dim();
    let primes = first_primes(d.saturating_sub(1));
    let perms: Vec<Vec<Vec<u64>>> = primes
        .iter()
        .map(|&b| {
            let levels = (53.0 * 2f64.ln() / (b as f64).ln()).ceil() as usize;
            (0..levels)
                .map(|_| {
                    let mut p: Vec<u64> = (0..b).collect();
                    rng.shuffle(&mut p);
                    p
                })
                .collect()
        })
        .collect();

    (0..n)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let u = if k == 0 {
                        i as f64 / n as f64
                    } else {
                        scrambled_inverse(i as u64, primes[k - 1], &perms[k - 1])
                    };
                    bounds.lower()[k] + u * bounds.width(k)
                })
                .collect()
        })
        .collect()
}
