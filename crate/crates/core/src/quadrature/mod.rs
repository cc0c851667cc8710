//! Radial integrals `∫_{ℝ₊^l} a(r) (1 + r²)^{−D} ∏ r_j^{e_j} dr`.
//!
//! Closed-form families reduce, after `s_j = r_j²`, to a Dirichlet-type Beta moment
//! times `2^{−l}`. Everything else goes through a tensor Gauss–Legendre rule in polar
//! coordinates `r = tan(φ)·ω`, with an error estimate from comparing `N` against `N/2`
//! nodes per axis.

mod gauss;
pub mod special;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::factorial_exact;
use crate::scalar::{from_rational, Real};
use crate::symbols::QuasiRadialSymbol;

pub use gauss::GaussLegendre;
pub use special::{beta_fn, beta_moment, beta_moment_exact, ln_gamma};

pub const DEFAULT_NODES_PER_AXIS: usize = 80;
pub const MIN_NODES_PER_AXIS: usize = 8;
pub const CLOSED_FORM_REL_TOL: f64 = 1e-13;
pub const NUMERIC_REL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub nodes_per_axis: usize,
    /// Largest accepted relative change between the `N/2` and `N` node rules.
    pub numeric_rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_axis: DEFAULT_NODES_PER_AXIS, numeric_rel_tol: NUMERIC_REL_TOL }
    }
}

impl QuadratureSpec {
    pub fn with_nodes(nodes_per_axis: usize) -> Self {
        Self { nodes_per_axis, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < MIN_NODES_PER_AXIS {
            return Err(Error::InvalidArgument(format!(
                "nodes_per_axis = {} is below the minimum {MIN_NODES_PER_AXIS}",
                self.nodes_per_axis
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialMethod {
    /// Closed form when the family has one, numeric otherwise.
    #[default]
    Auto,
    ClosedForm,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathUsed {
    ClosedForm,
    Numeric,
}

impl PathUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed_form",
            Self::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadialIntegrand<T> {
    /// `e_j`, one per block.
    pub exponents: Vec<u32>,
    /// `D` (equal to `n + m + 1` for Bergman inner products).
    pub power: u32,
    pub radial: QuasiRadialSymbol<T>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialValue<T> {
    pub value: Complex<T>,
    pub path: PathUsed,
    /// Absolute error estimate; zero for the closed form.
    pub error_estimate: T,
}

/// Checks `Σ_j (e_j + 1)/2 + growth(a) < D`.
pub fn check_convergence<T: Real>(radial: &QuasiRadialSymbol<T>, exponents: &[u32], power: u32) -> Result<()> {
    radial.check_blocks(exponents.len())?;
    let ok = match radial.closed_form(exponents.len()) {
        Some(params) => {
            let lhs: u64 = exponents.iter().zip(&params.c).map(|(&e, &c)| e as u64 + 1 + 2 * c as u64).sum();
            lhs < 2 * (power as u64 + params.t as u64)
        }
        None => {
            let lhs: f64 = exponents.iter().map(|&e| (e as f64 + 1.0) / 2.0).sum::<f64>() + radial.growth();
            lhs < power as f64
        }
    };
    if !ok {
        return Err(Error::Divergent(format!(
            "radial integral with exponents {exponents:?}, decay power {power} and symbol {} diverges",
            radial.label()
        )));
    }
    Ok(())
}

/// Exact rational value of the closed form without the complex coefficient, when
/// every Beta argument is an integer (all `e_j` odd).
pub fn closed_form_exact<T: Real>(ig: &RadialIntegrand<T>) -> Result<Option<BigRational>> {
    check_convergence(&ig.radial, &ig.exponents, ig.power)?;
    let Some(params) = ig.radial.closed_form(ig.exponents.len()) else {
        return Ok(None);
    };
    if ig.exponents.iter().any(|e| e % 2 == 0) {
        return Ok(None);
    }
    let d: Vec<u64> = ig.exponents.iter().zip(&params.c).map(|(&e, &c)| (e as u64).div_ceil(2) + c as u64).collect();
    let moment = beta_moment_exact(&d, ig.power as u64 + params.t as u64)?;
    let scale = BigRational::new(1.into(), num_bigint::BigInt::one() << ig.exponents.len());
    Ok(Some(moment * scale))
}

/// Closed-form value `coef · 2^{−l} · B(d, D + t)` with `d_j = (e_j + 1)/2 + c_j`.
pub fn closed_form<T: Real>(ig: &RadialIntegrand<T>) -> Result<Complex<T>> {
    check_convergence(&ig.radial, &ig.exponents, ig.power)?;
    let params = ig.radial.closed_form(ig.exponents.len()).ok_or_else(|| {
        Error::InvalidArgument(format!("symbol {} has no closed form", ig.radial.label()))
    })?;
    if let Some(exact) = closed_form_exact(ig)? {
        return Ok(params.coef * from_rational::<T>(&exact));
    }
    let d: Vec<T> = ig
        .exponents
        .iter()
        .zip(&params.c)
        .map(|(&e, &c)| T::lit((e as f64 + 1.0) / 2.0 + c as f64))
        .collect();
    let moment = beta_moment(&d, T::lit(ig.power as f64 + params.t as f64))?;
    let scale = T::lit(0.5).powi(ig.exponents.len() as i32);
    Ok(params.coef * (moment * scale))
}

pub fn radial_integral<T: Real>(
    ig: &RadialIntegrand<T>,
    spec: &QuadratureSpec,
    method: RadialMethod,
) -> Result<RadialValue<T>> {
    let use_closed = match method {
        RadialMethod::Auto => ig.radial.closed_form(ig.exponents.len()).is_some(),
        RadialMethod::ClosedForm => true,
        RadialMethod::Numeric => false,
    };
    if use_closed {
        return Ok(RadialValue { value: closed_form(ig)?, path: PathUsed::ClosedForm, error_estimate: T::zero() });
    }
    let mut out = radial_moments(&ig.radial, std::slice::from_ref(&ig.exponents), ig.power, spec)?;
    Ok(out.pop().unwrap())
}

/// Numeric values of many integrals sharing `a` and `D`, on one tensor grid.
pub fn radial_moments<T: Real>(
    radial: &QuasiRadialSymbol<T>,
    exponents: &[Vec<u32>],
    power: u32,
    spec: &QuadratureSpec,
) -> Result<Vec<RadialValue<T>>> {
    spec.validate()?;
    let Some(l) = exponents.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    for e in exponents {
        if e.len() != l {
            return Err(Error::DimensionMismatch { expected: l, found: e.len() });
        }
        check_convergence(radial, e, power)?;
    }
    let fine = tensor_moments(radial, l, exponents, power, spec.nodes_per_axis);
    let coarse_nodes = (spec.nodes_per_axis / 2).max(MIN_NODES_PER_AXIS / 2);
    let coarse = tensor_moments(radial, l, exponents, power, coarse_nodes);
    let mut out = Vec::with_capacity(exponents.len());
    for (f, c) in fine.into_iter().zip(coarse) {
        let err = (f - c).norm();
        let rel = if f.norm() > T::zero() { err / f.norm() } else { err };
        if rel.as_f64() > spec.numeric_rel_tol {
            return Err(Error::NotConverged { rel_change: rel.as_f64() });
        }
        out.push(RadialValue { value: f, path: PathUsed::Numeric, error_estimate: err });
    }
    Ok(out)
}

/// Tensor Gauss–Legendre evaluation of every requested moment in polar form
/// `r = tan(φ) · ω(ψ)`, with `ω` the positive orthant of `S^{l−1}` in spherical
/// angles. The weight `(1 + r²)^{−D}` then becomes `cos^{2D}φ`, so the integrand is
/// smooth on the box `[0, π/2]^l` even when the decay is barely integrable.
///
/// The non-separable part (symbol and Jacobian) is tabulated once; the monomials are
/// contracted axis by axis, keyed by `Σe` on the φ axis and by `(e_i, e_{i+1} + ... + e_l)`
/// on the i-th angle.
fn tensor_moments<T: Real>(
    radial: &QuasiRadialSymbol<T>,
    l: usize,
    exponents: &[Vec<u32>],
    power: u32,
    nodes: usize,
) -> Vec<Complex<T>> {
    let rule = GaussLegendre::cached(nodes);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let angle: Vec<f64> = rule.nodes.iter().map(|&u| u * half_pi).collect();
    let (sin, cos): (Vec<T>, Vec<T>) = angle.iter().map(|&a| (T::lit(a.sin()), T::lit(a.cos()))).unzip();
    let weight: Vec<T> = rule.weights.iter().map(|&w| T::lit(w * half_pi)).collect();

    let key = |e: &[u32], a: usize| -> (u32, u32) {
        if a == 0 {
            (e.iter().sum(), 0)
        } else {
            (e[a - 1], e[a..].iter().sum())
        }
    };
    let axis_keys: Vec<Vec<(u32, u32)>> = (0..l)
        .map(|a| {
            let mut v: Vec<(u32, u32)> = exponents.iter().map(|e| key(e, a)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let lf = l as i32;
    let factor = |a: usize, g: usize, (x, y): (u32, u32)| -> T {
        if a == 0 {
            // ρ^{E+l−1} (1+ρ²)^{−D} dρ = sin^{E+l−1}φ cos^{2D−E−l−1}φ dφ
            sin[g].powi(x as i32 + lf - 1) * cos[g].powi(2 * power as i32 - x as i32 - lf - 1)
        } else {
            cos[g].powi(x as i32) * sin[g].powi(y as i32)
        }
    };

    let total = nodes.pow(l as u32);
    let base: Vec<Complex<T>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut idx = vec![0usize; l];
            let mut rem = flat;
            for a in (0..l).rev() {
                idx[a] = rem % nodes;
                rem /= nodes;
            }
            let rho = sin[idx[0]] / cos[idx[0]];
            let mut w = weight[idx[0]];
            let mut r = vec![T::zero(); l];
            let mut tail = rho;
            for a in 1..l {
                let g = idx[a];
                r[a - 1] = tail * cos[g];
                tail = tail * sin[g];
                w = w * weight[g] * sin[g].powi(lf - 1 - a as i32);
            }
            r[l - 1] = tail;
            radial.eval(&r) * w
        })
        .collect();

    // contract the last remaining grid axis into its key axis
    let mut tensor = base;
    let mut inner = 1usize;
    for a in (0..l).rev() {
        let outer = nodes.pow(a as u32);
        let keys = &axis_keys[a];
        let table: Vec<T> = (0..nodes).flat_map(|g| keys.iter().map(move |&k| factor(a, g, k))).collect();
        let nk = keys.len();
        let src = &tensor;
        let next: Vec<Complex<T>> = (0..outer)
            .into_par_iter()
            .flat_map_iter(|o| {
                let mut block = vec![Complex::<T>::zero(); nk * inner];
                for g in 0..nodes {
                    let row = &src[(o * nodes + g) * inner..(o * nodes + g + 1) * inner];
                    for (ki, &pw) in table[g * nk..(g + 1) * nk].iter().enumerate() {
                        let dst = &mut block[ki * inner..(ki + 1) * inner];
                        for (d, &s) in dst.iter_mut().zip(row) {
                            *d = *d + s * pw;
                        }
                    }
                }
                block
            })
            .collect();
        tensor = next;
        inner *= nk;
    }

    exponents
        .iter()
        .map(|e| {
            let mut flat = 0;
            for a in 0..l {
                let pos = axis_keys[a].binary_search(&key(e, a)).unwrap();
                flat = flat * axis_keys[a].len() + pos;
            }
            tensor[flat]
        })
        .collect()
}

/// `∫_{ℂⁿ} dν_m` by polar reduction to `(n+m)!/(π^n m!) · |S^{2n−1}| · ∫ r^{2n−1} (1+r²)^{−(n+m+1)} dr`.
pub fn fs_normalization<T: Real>(n: usize, m: u32, spec: &QuadratureSpec) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let ig = RadialIntegrand {
        exponents: vec![2 * n as u32 - 1],
        power: n as u32 + m + 1,
        radial: QuasiRadialSymbol::one(),
    };
    let radial = radial_integral(&ig, spec, RadialMethod::Numeric)?.value.re;
    let pi_n = T::PI().powi(n as i32);
    let density = from_rational::<T>(&BigRational::new(
        factorial_exact(n as u64 + m as u64).into(),
        factorial_exact(m as u64).into(),
    )) / pi_n;
    let sphere_area = T::lit(2.0) * pi_n / from_rational::<T>(&BigRational::from_integer(factorial_exact(n as u64 - 1).into()));
    Ok(density * sphere_area * radial)
}
