//! Eigenvalue joint density of locally diagonalizable bipartite states and
//! the Hilbert-Schmidt volume of that set, exact and Monte Carlo.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::RngStream;
use crate::error::{Error, Result};
use crate::exactnum::{
    factorial, integrate_over_simplex, poly_density_capped, ExactVolume, DEFAULT_EXPANSION_LIMIT,
};
use crate::liegeom::hc_flag_volume_un;

/// Samples per deterministic RNG stream; the stream layout is fixed so the
/// merged estimate is bit-identical for any worker count.
const MC_CHUNK: u64 = 16384;

/// Real eigenvalue grid λ_ij, row-major with the A-major flattening
/// (i,j) ↦ i·n + j.
#[derive(Debug, Clone, PartialEq)]
pub struct EigGrid {
    m: usize,
    n: usize,
    values: Vec<f64>,
}

impl EigGrid {
    pub fn new(m: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("grid dims must be positive".into()));
        }
        if values.len() != m * n {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", m * n),
                got: format!("{}", values.len()),
            });
        }
        Ok(Self { m, n, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Eigenvalues of tr_B(Λ) (an m×m diagonal marginal): a_i = Σ_j λ_ij.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.m).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect()
    }

    /// Eigenvalues of tr_A(Λ): b_j = Σ_i λ_ij.
    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.n).map(|j| (0..self.m).map(|i| self.get(i, j)).sum()).collect()
    }
}

fn density_of(m: usize, n: usize, values: &[f64]) -> f64 {
    let idx = |i: usize, j: usize| i * n + j;
    let mut prod = 1.0;
    for i in 0..m {
        for ip in (i + 1)..m {
            prod *= (0..n)
                .map(|j| {
                    let d = values[idx(i, j)] - values[idx(ip, j)];
                    d * d
                })
                .sum::<f64>();
        }
    }
    for j in 0..n {
        for jp in (j + 1)..n {
            prod *= (0..m)
                .map(|i| {
                    let d = values[idx(i, j)] - values[idx(i, jp)];
                    d * d
                })
                .sum::<f64>();
        }
    }
    prod
}

/// Unnormalized eigenvalue density
/// ∏_{i<i'} Σ_j (λ_ij − λ_i'j)² · ∏_{j<j'} Σ_i (λ_ij − λ_ij')².
///
/// Zero exactly when one of the factors vanishes; 1 for a 1×1 grid (empty
/// products).
pub fn density_unnormalized(grid: &EigGrid) -> f64 {
    density_of(grid.m(), grid.n(), grid.values())
}

/// The constant C_{m,n} = 2^{C(m,2)+C(n,2)} · vol(U(m))/vol(T_m) ·
/// vol(U(n))/vol(T_n), assembled from the Harish-Chandra flag volumes.
pub fn c_mn(m: usize, n: usize) -> ExactVolume {
    let two_power = (m * (m - 1) / 2 + n * (n - 1) / 2) as u32;
    let factor = BigRational::from_integer(BigInt::from(2).pow(two_power));
    hc_flag_volume_un(m).mul(&hc_flag_volume_un(n)).scale(&factor)
}

/// Exact Hilbert-Schmidt volume of the locally diagonalizable set:
/// C_{m,n} × ∫_simplex P.
pub fn lu_set_volume_exact(m: usize, n: usize) -> Result<ExactVolume> {
    lu_set_volume_exact_capped(m, n, DEFAULT_EXPANSION_LIMIT)
}

/// Same as [`lu_set_volume_exact`] with an explicit expansion cap.
pub fn lu_set_volume_exact_capped(m: usize, n: usize, limit: usize) -> Result<ExactVolume> {
    let poly = poly_density_capped(m, n, limit)?;
    let integral = integrate_over_simplex(&poly);
    Ok(c_mn(m, n).scale(&integral))
}

/// Monte Carlo estimate of the locally diagonalizable set volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McVolume {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Monte Carlo evaluation of C_{m,n} × ∫ P δ(1−Σλ) dλ by uniform
/// Dirichlet(1,…,1) sampling on the simplex:
/// estimate = C_{m,n} · mean(P) / (mn−1)!.
///
/// Deterministic for a fixed seed: samples are split into fixed-size chunks,
/// each drawn from an independent counter-based stream (seed, chunk index),
/// and partial sums are merged in chunk order regardless of worker count.
pub fn lu_set_volume_mc(m: usize, n: usize, samples: u64, seed: u64) -> Result<McVolume> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("m and n must be positive".into()));
    }
    if samples < 1000 {
        return Err(Error::InvalidParameter(format!(
            "need at least 1000 samples, got {samples}"
        )));
    }
    let nvars = m * n;
    let n_chunks = samples.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = RngStream::new(seed, chunk);
            let count = if chunk == n_chunks - 1 { samples - chunk * MC_CHUNK } else { MC_CHUNK };
            let mut point = vec![0.0f64; nvars];
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                crate::ensemble::sample_uniform_simplex_into(&mut point, &mut rng);
                let p = density_of(m, n, &point);
                sum += p;
                sum_sq += p * p;
            }
            (sum, sum_sq)
        })
        .collect();

    let (sum, sum_sq) = partials.iter().fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let count = samples as f64;
    let mean = sum / count;
    let variance = ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    let stderr_mean = (variance / count).sqrt();

    let surface_factor = factorial(nvars - 1).to_f64().unwrap();
    let scale = c_mn(m, n).approx() / surface_factor;
    Ok(McVolume { estimate: scale * mean, stderr: scale * stderr_mean, samples, seed })
}

/// f(t) = t⁷/420, the Laplace-transform evaluation of the (2,2) eigenvalue
/// integral at trace t.
pub fn f22(t: f64) -> f64 {
    t.powi(7) / 420.0
}
