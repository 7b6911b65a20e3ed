//! Seeded sampling of states, unitaries and probability vectors.
//!
//! All samplers take the generator explicitly. [`seeded_rng`] is the
//! canonical source: ChaCha8 keyed from a single `u64` seed, so every run is
//! reproducible from that one number.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::states::{DensityMatrix, PureState};

/// The deterministic generator used throughout the crate.
pub type DetRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> DetRng {
    DetRng::seed_from_u64(seed)
}

/// Independent sub-seed for trial `trial` of a run seeded with `seed`.
///
/// Feeding the result to [`seeded_rng`] replays that trial alone.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    // SplitMix64 finalizer over the pair
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn random_complex_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_row_major(data).expect("square by construction")
}

/// Uniform draw from the probability simplex (flat Dirichlet).
pub fn random_probabilities<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("need at least one weight".into()));
    }
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|x| x / total).collect())
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange("dimension must be >= 1".into()));
    }
    loop {
        let v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        if let Ok(state) = PureState::normalized(v) {
            return Ok(state);
        }
    }
}

/// Ginibre-ensemble density matrix `GG† / tr(GG†)` with `G` of shape
/// `dim × rank`.
pub fn random_density_matrix<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::ParamOutOfRange(format!(
            "need 1 <= rank <= dim, got dim={dim} rank={rank}"
        )));
    }
    let g: Vec<C64> = (0..dim * rank).map(|_| complex_gaussian(rng)).collect();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let v: C64 = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum();
            m.set(i, j, v);
        }
    }
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr))
}

/// Haar-random unitary: Gram-Schmidt QR of a complex Gaussian matrix. The
/// triangular factor comes out with a positive real diagonal, which is the
/// phase fix that makes the distribution exactly Haar.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange("dimension must be >= 1".into()));
    }
    let g = random_complex_matrix(dim, rng);
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        // two passes of modified Gram-Schmidt for orthogonality to round-off
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let q = &done[k];
                let proj: C64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, qi) in rest[0].iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let norm = libm::sqrt(cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>());
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u.set(i, j, x);
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_is_normalized() {
        let psi = random_pure_state(4, &mut seeded_rng(7)).unwrap();
        let norm: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_invariants() {
        let rho = random_density_matrix(3, 3, &mut seeded_rng(1)).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let min = *rho.eigenvalues().last().unwrap();
        assert!(min >= -1e-12);
    }

    #[test]
    fn rank_one_draw_is_pure() {
        let mut rng = seeded_rng(12);
        for dim in 1..5 {
            let rho = random_density_matrix(dim, 1, &mut rng).unwrap();
            assert!((rho.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(3, &mut seeded_rng(2)).unwrap();
        assert!(u.unitary_deviation() < 1e-10);
        let mut rng = seeded_rng(99);
        for dim in 1..10 {
            let u = random_unitary(dim, &mut rng).unwrap();
            assert!(u.unitary_deviation() < 1e-12);
            assert!(u.matmul(&u.adjoint()).unwrap().max_abs_diff(&ComplexMatrix::identity(dim)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut rng = seeded_rng(0);
        assert!(random_pure_state(0, &mut rng).is_err());
        assert!(random_density_matrix(2, 3, &mut rng).is_err());
        assert!(random_density_matrix(2, 0, &mut rng).is_err());
        assert!(random_unitary(0, &mut rng).is_err());
        assert!(random_probabilities(0, &mut rng).is_err());
    }

    #[test]
    fn same_seed_same_draws() {
        let a = random_density_matrix(3, 2, &mut seeded_rng(5)).unwrap();
        let b = random_density_matrix(3, 2, &mut seeded_rng(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let seeds: Vec<u64> = (0..1000).map(|t| trial_seed(42, t)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn probabilities_sum_to_one() {
        let p = random_probabilities(6, &mut seeded_rng(3)).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn haar_projectors_average_to_maximally_mixed() {
        let mut rng = seeded_rng(2024);
        let dim = 3;
        let draws = 10_000;
        let mut acc = ComplexMatrix::zeros(dim);
        for _ in 0..draws {
            let p = random_pure_state(dim, &mut rng).unwrap().projector();
            acc = acc.add(p.matrix()).unwrap();
        }
        let mean = acc.scale_real(1.0 / draws as f64);
        let target = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
        let dev = mean.max_abs_diff(&target).unwrap();
        assert!(dev <= 5.0 / libm::sqrt(draws as f64), "deviation {dev}");
    }
}
