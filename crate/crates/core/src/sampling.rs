//! Seeded random streams shared by the Monte-Carlo oracle and the geometry checks.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::multiindex::Partition;
use crate::scalar::Real;

/// Name of the generator recorded in report metadata.
pub const RNG_ALGORITHM: &str = "ChaCha20";

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

pub fn unit_phase<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::from_polar(T::one(), T::lit(theta))
}

/// Point of ℂⁿ distributed by the Fubini–Study probability measure: the chart image
/// `w_i / w_0` of a uniformly distributed point `w` of the unit sphere in ℂⁿ⁺¹.
/// Normalizing `w` is unnecessary since the ratio is scale invariant.
pub fn fubini_study_point<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    loop {
        let w0: Complex<T> = complex_gaussian(rng);
        if w0.norm_sqr() < T::min_positive_value().sqrt() {
            continue;
        }
        return (0..n).map(|_| complex_gaussian::<T, R>(rng) / w0).collect();
    }
}

/// Point of `V_k` in the projective chart with every block nonzero and moderate size.
pub fn chart_point<T: Real, R: Rng + ?Sized>(rng: &mut R, k: &Partition) -> Vec<Complex<T>> {
    loop {
        let z: Vec<Complex<T>> = (0..k.n()).map(|_| complex_gaussian(rng)).collect();
        if blocks_nonzero(&z, k) {
            return z;
        }
    }
}

/// Point of `V_k ∩ 𝔹ⁿ`: a Gaussian direction scaled to a radius uniform in (0.05, 0.95).
pub fn ball_point<T: Real, R: Rng + ?Sized>(rng: &mut R, k: &Partition) -> Vec<Complex<T>> {
    let z = chart_point::<T, R>(rng, k);
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
    let radius = T::lit(rng.random_range(0.05..0.95));
    z.into_iter().map(|c| c * (radius / norm)).collect()
}

fn blocks_nonzero<T: Real>(z: &[Complex<T>], k: &Partition) -> bool {
    let floor = T::lit(1e-3);
    k.blocks().all(|r| z[r].iter().map(|c| c.norm_sqr()).sum::<T>().sqrt() > floor)
}
