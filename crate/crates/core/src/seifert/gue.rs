use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::par;
use crate::symfun::Partition;
use crate::{Error, Result};

pub const MIN_SAMPLES: usize = 1000;
const BATCH: usize = 250;

/// Hermitian matrix with density `∝ exp(-½ tr M²)`: diagonal entries
/// `N(0, 1)`, real and imaginary parts above the diagonal `N(0, ½)`.
fn sample(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        let d: f64 = StandardNormal.sample(rng);
        m[i * n + i] = Complex64::new(d, 0.0);
        for j in i + 1..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            let z = Complex64::new(re * half, im * half);
            m[i * n + j] = z;
            m[j * n + i] = z.conj();
        }
    }
    m
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// `∏ tr M^{λ_i}` for one sample.
fn power_sum_product(m: &[Complex64], n: usize, lambda: &Partition) -> f64 {
    let top = lambda.parts().first().copied().unwrap_or(0) as usize;
    let mut traces = Vec::with_capacity(top + 1);
    let mut power = m.to_vec();
    traces.push(n as f64);
    for k in 1..=top {
        traces.push((0..n).map(|i| power[i * n + i].re).sum());
        if k < top {
            power = matmul(&power, m, n);
        }
    }
    lambda.parts().iter().map(|&j| traces[j as usize]).product()
}

/// Monte Carlo `⟨p_λ(M)⟩` over `samples` GUE draws; returns the mean and
/// its standard error. Each batch has its own ChaCha stream derived from
/// `seed`, so results do not depend on the thread count.
pub fn gue_sample_moments(n: usize, lambda: &Partition, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::OutOfRange("matrix size must be positive".into()));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::OutOfRange(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if lambda.is_empty() {
        return Ok((1.0, 0.0));
    }
    let batches = samples.div_ceil(BATCH);
    let sums = par::map_indexed(batches, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let count = BATCH.min(samples - b * BATCH);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..count {
            let v = power_sum_product(&sample(n, &mut rng), n, lambda);
            s += v;
            s2 += v * v;
        }
        (s, s2)
    });
    let (s, s2) = sums.into_iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let k = samples as f64;
    let mean = s / k;
    let var = ((s2 - k * mean * mean) / (k - 1.0)).max(0.0);
    Ok((mean, (var / k).sqrt()))
}
