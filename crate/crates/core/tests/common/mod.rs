#![allow(dead_code)]

use qchsh_core::numerics::ComplexMatrix;
use qchsh_core::representation::{CoefficientVector, GellMannBasis};
use qchsh_core::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)))
}

pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    random_matrix(n, rng).symmetrized()
}

pub fn random_traceless_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = random_hermitian(n, rng);
    let shift = h.trace().re / n as f64;
    &h - &ComplexMatrix::identity(n).scale(shift)
}

pub fn gaussian_vector(basis: &GellMannBasis, rng: &mut ChaCha8Rng) -> CoefficientVector {
    let v = (0..basis.len()).map(|_| normal(rng)).collect();
    CoefficientVector::new(basis.dim(), v).unwrap()
}

pub fn random_unit_state(d: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(normal(rng), normal(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Maximum of `sum lambda_i mu_i` over every vertex of
/// `{mu in [-1,1]^n : sum mu = 0}`: all but one coordinate at +-1, the
/// remaining one fixed by the trace constraint when it lands in [-1, 1].
pub fn vertex_enumeration_max(eigenvalues: &[f64]) -> f64 {
    let n = eigenvalues.len();
    let mut best = f64::NEG_INFINITY;
    for free in 0..n {
        for mask in 0u32..(1 << (n - 1)) {
            let mut mu = vec![0.0; n];
            let mut bit = 0;
            for (i, m) in mu.iter_mut().enumerate() {
                if i == free {
                    continue;
                }
                *m = if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
                bit += 1;
            }
            let rest: f64 = mu.iter().sum();
            if rest.abs() > 1.0 {
                continue;
            }
            mu[free] = -rest;
            let v: f64 = eigenvalues.iter().zip(&mu).map(|(l, m)| l * m).sum();
            best = best.max(v);
        }
    }
    best
}
