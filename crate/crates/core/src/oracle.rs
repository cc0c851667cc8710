//! Brute-force Toeplitz matrices straight from `⟨a ξᵖ ξ̄^q z^α, z^β⟩_m`, independent of
//! the spectral formulas.
//!
//! Two routes:
//! * `separated` — polar coordinates per block: the sphere integral
//!   `∫ ξ^a ξ̄^b dS = δ_{ab} 2π^k a!/(k−1+|a|)!` times a radial integral that is always
//!   evaluated by quadrature (never by the Beta closed form);
//! * `montecarlo` — `z_i = w_i / w_0` for Gaussian `w ∈ ℂⁿ⁺¹` is distributed by the
//!   Fubini–Study probability measure, and `dν_m` has density
//!   `binom(n+m, m) (1+|z|²)^{−m}` against it.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bergman::{monomial, BergmanSpace};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::multiindex::{binomial, factorial_exact, MultiIndex, Partition};
use crate::quadrature::{radial_moments, QuadratureSpec};
use crate::sampling::{fubini_study_point, stream_rng, RNG_ALGORITHM};
use crate::scalar::{from_rational, Real};
use crate::symbols::QuasiHomogeneousSymbol;
use crate::toeplitz::OperatorMatrix;

pub const DEFAULT_SAMPLE_COUNT: u64 = 2_000_000;
pub const MIN_SAMPLE_COUNT: u64 = 10_000;
pub const DEFAULT_BATCH_SIZE: u64 = 1 << 16;
pub const DEFAULT_SEED: u64 = 0x5E_ED0F_B3E6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    #[default]
    Separated,
    Montecarlo,
}

impl OracleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Separated => "separated",
            Self::Montecarlo => "montecarlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McConfig {
    pub sample_count: u64,
    pub seed: u64,
    pub method: OracleMethod,
    /// Samples per independent stream; fixes the reduction tree.
    pub batch_size: u64,
    /// Radial quadrature for the separated route.
    pub quadrature: QuadratureSpec,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            sample_count: DEFAULT_SAMPLE_COUNT,
            seed: DEFAULT_SEED,
            method: OracleMethod::Separated,
            batch_size: DEFAULT_BATCH_SIZE,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl McConfig {
    pub fn separated() -> Self {
        Self::default()
    }

    pub fn montecarlo(seed: u64, sample_count: u64) -> Self {
        Self { seed, sample_count, method: OracleMethod::Montecarlo, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count < MIN_SAMPLE_COUNT {
            return Err(Error::InvalidArgument(format!(
                "sample_count = {} is below the minimum {MIN_SAMPLE_COUNT}",
                self.sample_count
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch_size must be positive".into()));
        }
        self.quadrature.validate()
    }
}

/// An estimate with per-component standard errors (zero for the separated route).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: Complex<T>,
    pub stderr_re: T,
    pub stderr_im: T,
}

impl<T: Real> Estimate<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Self { value, stderr_re: T::zero(), stderr_im: T::zero() }
    }

    pub fn stderr(&self) -> T {
        self.stderr_re.max(self.stderr_im)
    }

    /// `|re − target.re| ≤ σ·se_re` and the same for the imaginary parts.
    pub fn within_sigma(&self, target: Complex<T>, sigmas: T) -> bool {
        (self.value.re - target.re).abs() <= sigmas * self.stderr_re
            && (self.value.im - target.im).abs() <= sigmas * self.stderr_im
    }
}

/// `⟨sym · z^α, z^β⟩_m` for unnormalized monomials.
pub fn inner_product_direct<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    alpha: &MultiIndex,
    beta: &MultiIndex,
    space: &BergmanSpace<T>,
    cfg: &McConfig,
) -> Result<Estimate<T>> {
    check_args(sym, k, space, cfg)?;
    for idx in [alpha, beta] {
        k.check_len(idx.len())?;
        if idx.degree() > space.m() {
            return Err(Error::DegreeOverflow { degree: idx.degree(), m: space.m() });
        }
    }
    match cfg.method {
        OracleMethod::Separated => {
            let mut out = separated_batch(sym, k, space.m(), &[(alpha.clone(), beta.clone())], &cfg.quadrature)?;
            Ok(Estimate::exact(out.pop().unwrap()))
        }
        OracleMethod::Montecarlo => {
            let f = |z: &[Complex<T>], sv: Complex<T>, w: T| sv * monomial(z, alpha) * monomial(z, beta).conj() * w;
            let acc = mc_accumulate(sym, k, space, cfg, 1, |z, sv, w, out: &mut [Moments<T>]| out[0].push(f(z, sv, w)))?;
            Ok(acc[0].estimate(cfg.sample_count))
        }
    }
}

fn check_args<T: Real>(sym: &QuasiHomogeneousSymbol<T>, k: &Partition, space: &BergmanSpace<T>, cfg: &McConfig) -> Result<()> {
    cfg.validate()?;
    k.check_len(space.n())?;
    sym.check_partition(k)
}

/// Separated route for many `(α, β)` pairs, sharing one batched radial quadrature.
/// Pairs violating the per-block selection rule `α_(j) + p_(j) = β_(j) + q_(j)` are exactly zero.
fn separated_batch<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    m: u32,
    pairs: &[(MultiIndex, MultiIndex)],
    quadrature: &QuadratureSpec,
) -> Result<Vec<Complex<T>>> {
    let n = k.n();
    let mut out = vec![Complex::zero(); pairs.len()];
    let mut live = Vec::new();
    let mut exps = Vec::new();
    let mut consts = Vec::new();
    // (n+m)!/m!; the π^{-n} of the density cancels the π^{k_j} of the spheres
    let density = from_rational::<T>(&num_rational::BigRational::new(
        factorial_exact((n as u64) + m as u64).into(),
        factorial_exact(m as u64).into(),
    ));
    for (idx, (alpha, beta)) in pairs.iter().enumerate() {
        let upper = alpha.checked_add(sym.p())?;
        let lower = beta.checked_add(sym.q())?;
        if upper != lower {
            continue;
        }
        // ∏_j 2 a_(j)! / (k_j − 1 + |a_(j)|)! with a = α + p
        let mut sphere = T::one();
        let mut e = Vec::with_capacity(k.len());
        for j in 0..k.len() {
            let kj = k.part(j) as u64;
            let a_j = upper.block(k, j);
            let a_fact: num_bigint::BigUint = a_j.iter().map(|&x| factorial_exact(x as u64)).product();
            let deg: u64 = a_j.iter().map(|&x| x as u64).sum();
            let ratio = num_rational::BigRational::new(
                (a_fact * 2u32).into(),
                factorial_exact(kj - 1 + deg).into(),
            );
            sphere = sphere * from_rational::<T>(&ratio);
            let da: u32 = alpha.block(k, j).iter().sum();
            let db: u32 = beta.block(k, j).iter().sum();
            e.push(da + db + 2 * kj as u32 - 1);
        }
        live.push(idx);
        exps.push(e);
        consts.push(density * sphere);
    }
    if live.is_empty() {
        return Ok(out);
    }
    let power = n as u32 + m + 1;
    let radial = radial_moments(sym.radial(), &exps, power, quadrature)?;
    for ((&idx, c), r) in live.iter().zip(consts).zip(radial) {
        out[idx] = r.value * c;
    }
    Ok(out)
}

/// Running sums for one estimated quantity.
#[derive(Clone, Copy, Debug)]
struct Moments<T> {
    sum: Complex<T>,
    sq_re: T,
    sq_im: T,
}

impl<T: Real> Moments<T> {
    fn zero() -> Self {
        Self { sum: Complex::zero(), sq_re: T::zero(), sq_im: T::zero() }
    }

    fn push(&mut self, v: Complex<T>) {
        self.sum = self.sum + v;
        self.sq_re = self.sq_re + v.re * v.re;
        self.sq_im = self.sq_im + v.im * v.im;
    }

    fn merge(a: Self, b: Self) -> Self {
        Self { sum: a.sum + b.sum, sq_re: a.sq_re + b.sq_re, sq_im: a.sq_im + b.sq_im }
    }

    fn estimate(&self, count: u64) -> Estimate<T> {
        let n = T::lit(count as f64);
        let mean = self.sum / n;
        let var = |sq: T, mu: T| ((sq / n - mu * mu).max(T::zero()) * n / (n - T::one())).sqrt() / n.sqrt();
        Estimate { value: mean, stderr_re: var(self.sq_re, mean.re), stderr_im: var(self.sq_im, mean.im) }
    }
}

/// Pairwise reduction in a fixed tree shape.
fn tree_reduce<T: Real>(mut level: Vec<Vec<Moments<T>>>) -> Vec<Moments<T>> {
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.into_iter().zip(b).map(|(x, y)| Moments::merge(x, y)).collect()),
                None => next.push(a),
            }
        }
        level = next;
    }
    level.pop().unwrap_or_default()
}

/// Draws `cfg.sample_count` Fubini–Study points in batches (stream = batch index), and
/// feeds `(z, sym(z), density)` to `visit`, which accumulates `width` quantities.
fn mc_accumulate<T, F>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    space: &BergmanSpace<T>,
    cfg: &McConfig,
    width: usize,
    visit: F,
) -> Result<Vec<Moments<T>>>
where
    T: Real,
    F: Fn(&[Complex<T>], Complex<T>, T, &mut [Moments<T>]) + Sync,
{
    let n = space.n();
    let m = space.m();
    let scale: T = binomial((n as u64) + m as u64, m as u64);
    let batches = cfg.sample_count.div_ceil(cfg.batch_size);
    let partial: Vec<Vec<Moments<T>>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(cfg.seed, b);
            let count = cfg.batch_size.min(cfg.sample_count - b * cfg.batch_size);
            let mut acc = vec![Moments::zero(); width];
            let mut drawn = 0;
            while drawn < count {
                let z: Vec<Complex<T>> = fubini_study_point(&mut rng, n);
                // a vanishing block is a null set; redraw
                let Ok(sv) = sym.eval(&z, k) else { continue };
                let r2: T = z.iter().map(|c| c.norm_sqr()).sum();
                let w = scale * (T::one() + r2).powi(-(m as i32));
                visit(&z, sv, w, &mut acc);
                drawn += 1;
            }
            acc
        })
        .collect();
    let total = tree_reduce(partial);
    if total.iter().any(|mo| !mo.sq_re.is_finite() || !mo.sq_im.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Monte-Carlo variance overflow for symbol {}",
            sym.label()
        )));
    }
    Ok(total)
}

/// Toeplitz matrix from direct inner products of normalized monomials, with the
/// largest per-entry standard error (zero for the separated route).
pub fn assemble_direct<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    space: &Arc<BergmanSpace<T>>,
    cfg: &McConfig,
) -> Result<(OperatorMatrix<T>, T)> {
    check_args(sym, k, space, cfg)?;
    let dim = space.dim();
    let basis = space.basis().as_slice();
    let norms: Vec<T> = space.norm_consts().iter().map(|x| x.sqrt()).collect();
    match cfg.method {
        OracleMethod::Separated => {
            let pairs: Vec<(MultiIndex, MultiIndex)> = (0..dim)
                .flat_map(|r| (0..dim).map(move |c| (basis[c].clone(), basis[r].clone())))
                .collect();
            let values = separated_batch(sym, k, space.m(), &pairs, &cfg.quadrature)?;
            let mut mat = CMatrix::zeros(dim, dim);
            for r in 0..dim {
                for c in 0..dim {
                    mat.set(r, c, values[r * dim + c] / (norms[r] * norms[c]));
                }
            }
            Ok((OperatorMatrix::from_matrix(space.clone(), mat)?, T::zero()))
        }
        OracleMethod::Montecarlo => {
            let acc = mc_accumulate(sym, k, space, cfg, dim * dim, |z, sv, w, out| {
                let e: Vec<Complex<T>> = basis.iter().zip(&norms).map(|(a, &nm)| monomial(z, a) / nm).collect();
                for r in 0..dim {
                    let er = e[r].conj() * w;
                    for c in 0..dim {
                        out[r * dim + c].push(sv * e[c] * er);
                    }
                }
            })?;
            let mut mat = CMatrix::zeros(dim, dim);
            let mut worst = T::zero();
            for r in 0..dim {
                for c in 0..dim {
                    let est = acc[r * dim + c].estimate(cfg.sample_count);
                    mat.set(r, c, est.value);
                    worst = worst.max(est.stderr());
                }
            }
            Ok((OperatorMatrix::from_matrix(space.clone(), mat)?, worst))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproducingReport<T> {
    /// `max_β |⟨z^α, e_β⟩ − δ_{αβ}‖z^α‖|`.
    pub deviation: T,
    /// Largest standard error among the coefficients (zero for the separated route).
    pub stderr: T,
}

impl<T: Real> ReproducingReport<T> {
    /// Deviation within `sigmas` standard errors, or below `floor` on the exact route.
    pub fn passes(&self, sigmas: T, floor: T) -> bool {
        self.deviation <= floor.max(sigmas * self.stderr)
    }
}

/// Coefficients of `z^α` in the orthonormal basis, computed without the kernel.
pub fn reproducing_check<T: Real>(alpha: &MultiIndex, space: &Arc<BergmanSpace<T>>, cfg: &McConfig) -> Result<ReproducingReport<T>> {
    let n = space.n();
    let k = Partition::single(n)?;
    let ai = space
        .index_of(alpha)
        .ok_or(Error::DegreeOverflow { degree: alpha.degree(), m: space.m() })?;
    let one = QuasiHomogeneousSymbol::radial_only(crate::symbols::QuasiRadialSymbol::one(), n);
    check_args(&one, &k, space, cfg)?;
    let basis = space.basis().as_slice();
    let norms: Vec<T> = space.norm_consts().iter().map(|x| x.sqrt()).collect();
    let expected = |b: usize| if b == ai { norms[ai] } else { T::zero() };
    match cfg.method {
        OracleMethod::Separated => {
            let pairs: Vec<_> = basis.iter().map(|b| (alpha.clone(), b.clone())).collect();
            let values = separated_batch(&one, &k, space.m(), &pairs, &cfg.quadrature)?;
            let deviation = values
                .iter()
                .enumerate()
                .map(|(b, v)| (v / norms[b] - Complex::new(expected(b), T::zero())).norm())
                .fold(T::zero(), T::max);
            Ok(ReproducingReport { deviation, stderr: T::zero() })
        }
        OracleMethod::Montecarlo => {
            let dim = space.dim();
            let acc = mc_accumulate(&one, &k, space, cfg, dim, |z, _, w, out| {
                let za = monomial(z, alpha) * w;
                for (b, o) in out.iter_mut().enumerate() {
                    o.push(za * (monomial(z, &basis[b]) / norms[b]).conj());
                }
            })?;
            let mut deviation = T::zero();
            let mut stderr = T::zero();
            for (b, mo) in acc.iter().enumerate() {
                let est = mo.estimate(cfg.sample_count);
                let err = Complex::new(expected(b), T::zero()) - est.value;
                deviation = deviation.max(err.re.abs().max(err.im.abs()));
                stderr = stderr.max(est.stderr());
            }
            Ok(ReproducingReport { deviation, stderr })
        }
    }
}

/// Oracle-versus-spectral comparison, serialized into reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub max_abs_diff: f64,
    pub mean_abs_diff: f64,
    pub stderr: f64,
    pub seed: u64,
    pub samples: u64,
    pub method: OracleMethod,
    pub rng: String,
}

pub fn compare<T: Real>(
    spectral: &OperatorMatrix<T>,
    direct: &OperatorMatrix<T>,
    stderr: T,
    cfg: &McConfig,
) -> Result<ComparisonReport> {
    let diff = spectral.matrix().try_sub(direct.matrix())?;
    let abs: Vec<f64> = diff.as_slice().iter().map(|c| c.norm().as_f64()).collect();
    let samples = match cfg.method {
        OracleMethod::Separated => 0,
        OracleMethod::Montecarlo => cfg.sample_count,
    };
    Ok(ComparisonReport {
        max_abs_diff: abs.iter().copied().fold(0.0, f64::max),
        mean_abs_diff: abs.iter().sum::<f64>() / abs.len().max(1) as f64,
        stderr: stderr.as_f64(),
        seed: cfg.seed,
        samples,
        method: cfg.method,
        rng: RNG_ALGORITHM.to_string(),
    })
}
