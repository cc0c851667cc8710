//! Quasi-radial and quasi-homogeneous symbols, the class `R_k(h)` and the torus `T_k`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::{block_degrees, MultiIndex, Partition};
use crate::scalar::Real;

type RadialFn<T> = dyn Fn(&[T]) -> Complex<T> + Send + Sync;

/// A quasi-radial function given only as a callable of the block radii.
#[derive(Clone)]
pub struct TabulatedRadial<T> {
    name: String,
    growth: f64,
    f: Arc<RadialFn<T>>,
}

impl<T: Real> TabulatedRadial<T> {
    /// `growth` bounds `|a(r)| ≤ C (1 + r²)^growth`; quadrature uses it to decide convergence.
    pub fn new<F>(name: impl Into<String>, growth: f64, f: F) -> Self
    where
        F: Fn(&[T]) -> Complex<T> + Send + Sync + 'static,
    {
        Self { name: name.into(), growth, f: Arc::new(f) }
    }

    /// `exp(−Σ w_j r_j²)`.
    pub fn exp_neg(weights: Vec<f64>) -> Self {
        let name = format!("exp_neg{weights:?}");
        let w: Vec<T> = weights.iter().map(|&x| T::lit(x)).collect();
        Self::new(name, 0.0, move |r: &[T]| {
            let s = r.iter().zip(&w).fold(T::zero(), |acc, (&ri, &wi)| acc + wi * ri * ri);
            Complex::new((-s).exp(), T::zero())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn eval(&self, r: &[T]) -> Complex<T> {
        (self.f)(r)
    }
}

impl<T> fmt::Debug for TabulatedRadial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TabulatedRadial").field("name", &self.name).field("growth", &self.growth).finish()
    }
}

/// `a(r_1, ..., r_l)` for a partition with `l` blocks; `r² = r_1² + ... + r_l²`.
#[derive(Clone, Debug)]
pub enum QuasiRadialSymbol<T> {
    Constant(Complex<T>),
    /// `∏_j r_j^{2 c_j}`.
    RadialMonomial { c: Vec<u32> },
    /// `(1 + r²)^{−t}`.
    InversePower { t: u32 },
    /// `∏_j r_j^{2 c_j} (1 + r²)^{−t}`.
    BoundedRational { c: Vec<u32>, t: u32 },
    Tabulated(TabulatedRadial<T>),
}

/// Parameters of the families with a Beta-function closed form:
/// `coef · ∏ r_j^{2 c_j} (1 + r²)^{−t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormParams<T> {
    pub coef: Complex<T>,
    pub c: Vec<u32>,
    pub t: u32,
}

impl<T: Real> QuasiRadialSymbol<T> {
    pub fn one() -> Self {
        Self::Constant(Complex::one())
    }

    pub fn constant(re: f64, im: f64) -> Self {
        Self::Constant(Complex::new(T::lit(re), T::lit(im)))
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Self::Constant(_) => true,
            Self::RadialMonomial { c } => c.iter().all(|&x| x == 0),
            Self::InversePower { t } => *t == 0,
            Self::BoundedRational { c, t } => *t == 0 && c.iter().all(|&x| x == 0),
            Self::Tabulated(_) => false,
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        matches!(self, Self::Constant(c) if c.is_zero())
    }

    /// Closed-form parameters for `l` blocks, or `None` for tabulated symbols.
    pub fn closed_form(&self, l: usize) -> Option<ClosedFormParams<T>> {
        let pad = |c: &[u32]| if c.is_empty() { vec![0; l] } else { c.to_vec() };
        match self {
            Self::Constant(coef) => Some(ClosedFormParams { coef: *coef, c: vec![0; l], t: 0 }),
            Self::RadialMonomial { c } => Some(ClosedFormParams { coef: Complex::one(), c: pad(c), t: 0 }),
            Self::InversePower { t } => Some(ClosedFormParams { coef: Complex::one(), c: vec![0; l], t: *t }),
            Self::BoundedRational { c, t } => {
                Some(ClosedFormParams { coef: Complex::one(), c: pad(c), t: *t })
            }
            Self::Tabulated(_) => None,
        }
    }

    /// Exponent `g` with `|a(r)| = O((1 + r²)^g)`.
    pub fn growth(&self) -> f64 {
        match self {
            Self::Tabulated(tab) => tab.growth(),
            _ => {
                let p = self.closed_form(0).unwrap();
                p.c.iter().sum::<u32>() as f64 - p.t as f64
            }
        }
    }

    /// Checks that the block-exponent vector (if any) matches the partition.
    pub fn check_blocks(&self, l: usize) -> Result<()> {
        match self {
            Self::RadialMonomial { c } | Self::BoundedRational { c, .. } if c.len() != l => {
                Err(Error::DimensionMismatch { expected: l, found: c.len() })
            }
            _ => Ok(()),
        }
    }

    /// `a(r_1, ..., r_l)`.
    pub fn eval(&self, r: &[T]) -> Complex<T> {
        let monomial = |c: &[u32]| {
            r.iter().zip(c).fold(T::one(), |acc, (&ri, &ci)| acc * ri.powi(2 * ci as i32))
        };
        let inverse = |t: u32| {
            let r2 = r.iter().fold(T::zero(), |acc, &ri| acc + ri * ri);
            (T::one() + r2).powi(-(t as i32))
        };
        match self {
            Self::Constant(c) => *c,
            Self::RadialMonomial { c } => Complex::new(monomial(c), T::zero()),
            Self::InversePower { t } => Complex::new(inverse(*t), T::zero()),
            Self::BoundedRational { c, t } => Complex::new(monomial(c) * inverse(*t), T::zero()),
            Self::Tabulated(tab) => tab.eval(r),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Constant(c) if c.im.is_zero() => format!("{}", c.re),
            Self::Constant(c) => format!("({}{:+}i)", c.re, c.im),
            Self::RadialMonomial { c } => format!("r^2{c:?}"),
            Self::InversePower { t } => format!("(1+r^2)^-{t}"),
            Self::BoundedRational { c, t } => format!("r^2{c:?}(1+r^2)^-{t}"),
            Self::Tabulated(tab) => tab.name().to_string(),
        }
    }
}

/// `a(r) ξᵖ ξ̄^q` with `p · q = 0`.
#[derive(Clone, Debug)]
pub struct QuasiHomogeneousSymbol<T> {
    radial: QuasiRadialSymbol<T>,
    p: MultiIndex,
    q: MultiIndex,
}

impl<T: Real> QuasiHomogeneousSymbol<T> {
    pub fn new(radial: QuasiRadialSymbol<T>, p: MultiIndex, q: MultiIndex) -> Result<Self> {
        if !validate_orthogonal(&p, &q)? {
            return Err(Error::NotOrthogonal { dot: p.dot(&q)? });
        }
        Ok(Self { radial, p, q })
    }

    /// The quasi-radial symbol `a` viewed with `p = q = 0`.
    pub fn radial_only(radial: QuasiRadialSymbol<T>, n: usize) -> Self {
        Self { radial, p: MultiIndex::zeros(n), q: MultiIndex::zeros(n) }
    }

    pub fn radial(&self) -> &QuasiRadialSymbol<T> {
        &self.radial
    }

    pub fn p(&self) -> &MultiIndex {
        &self.p
    }

    pub fn q(&self) -> &MultiIndex {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn with_radial(&self, radial: QuasiRadialSymbol<T>) -> Self {
        Self { radial, p: self.p.clone(), q: self.q.clone() }
    }

    pub fn is_quasi_radial(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// `|p_(j)| = |q_(j)|` for every block.
    pub fn is_balanced(&self, k: &Partition) -> Result<bool> {
        Ok(block_degrees(&self.p, k)? == block_degrees(&self.q, k)?)
    }

    pub fn check_partition(&self, k: &Partition) -> Result<()> {
        if self.n() != k.n() {
            return Err(Error::DimensionMismatch { expected: k.n(), found: self.n() });
        }
        self.radial.check_blocks(k.len())
    }

    /// `a(r) ξᵖ ξ̄^q` at `z`, with `r_j = |z_(j)|` and `ξ_(j) = z_(j) / r_j`.
    pub fn eval(&self, z: &[Complex<T>], k: &Partition) -> Result<Complex<T>> {
        self.check_partition(k)?;
        let radii = block_radii(z, k);
        let mut value = self.radial.eval(&radii);
        for (j, range) in k.blocks().enumerate() {
            let touched = range.clone().any(|i| self.p.entries()[i] + self.q.entries()[i] > 0);
            if !touched {
                continue;
            }
            if radii[j].is_zero() {
                return Err(Error::UndefinedCoordinates { block: j });
            }
            for i in range {
                let xi = z[i] / radii[j];
                let (pi, qi) = (self.p.entries()[i], self.q.entries()[i]);
                if pi > 0 {
                    value = value * xi.powu(pi);
                }
                if qi > 0 {
                    value = value * xi.conj().powu(qi);
                }
            }
        }
        Ok(value)
    }

    pub fn label(&self) -> String {
        if self.is_quasi_radial() {
            self.radial.label()
        } else {
            format!("{} xi^{} xibar^{}", self.radial.label(), self.p, self.q)
        }
    }
}

/// `(|z_(1)|, ..., |z_(l)|)`.
pub fn block_radii<T: Real>(z: &[Complex<T>], k: &Partition) -> Vec<T> {
    k.blocks().map(|r| z[r].iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()).collect()
}

/// `p · q = 0`.
pub fn validate_orthogonal(p: &MultiIndex, q: &MultiIndex) -> Result<bool> {
    Ok(p.dot(q)? == 0)
}

/// The class `R_k(h)`: in block `j`, `p` lives on the first `h_j` coordinates, `q` on
/// the remaining ones, and `|p_(j)| = |q_(j)|`. Blocks with `k_j = 1` carry no `h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClassRkh {
    k: Partition,
    h: Vec<Option<usize>>,
}

impl SymbolClassRkh {
    pub fn new(k: Partition, h: Vec<Option<usize>>) -> Result<Self> {
        if h.len() != k.len() {
            return Err(Error::DimensionMismatch { expected: k.len(), found: h.len() });
        }
        for (j, (&kj, hj)) in k.parts().iter().zip(&h).enumerate() {
            match (kj, hj) {
                (1, None) => {}
                (1, Some(_)) => {
                    return Err(Error::InvalidClass(format!("block {j} has k_j = 1 and admits no bound h_j")))
                }
                (_, None) => return Err(Error::InvalidClass(format!("block {j} needs a bound h_j"))),
                (kj, Some(hj)) if *hj < 1 || *hj > kj - 1 => {
                    return Err(Error::InvalidClass(format!("h_{j} = {hj} outside 1..={}", kj - 1)))
                }
                _ => {}
            }
        }
        Ok(Self { k, h })
    }

    /// Builds `h` from integers, using `None` for blocks of size one.
    pub fn from_bounds(k: Partition, bounds: &[usize]) -> Result<Self> {
        let h = k
            .parts()
            .iter()
            .zip(bounds)
            .map(|(&kj, &hj)| if kj == 1 { None } else { Some(hj) })
            .collect();
        if bounds.len() != k.len() {
            return Err(Error::DimensionMismatch { expected: k.len(), found: bounds.len() });
        }
        Self::new(k, h)
    }

    pub fn partition(&self) -> &Partition {
        &self.k
    }

    pub fn bounds(&self) -> &[Option<usize>] {
        &self.h
    }

    pub fn contains<T: Real>(&self, sym: &QuasiHomogeneousSymbol<T>) -> Result<bool> {
        self.contains_indices(sym.p(), sym.q())
    }

    pub fn contains_indices(&self, p: &MultiIndex, q: &MultiIndex) -> Result<bool> {
        for x in [p, q] {
            if x.len() != self.k.n() {
                return Err(Error::DimensionMismatch { expected: self.k.n(), found: x.len() });
            }
        }
        for j in 0..self.k.len() {
            let (pj, qj) = (p.block(&self.k, j), q.block(&self.k, j));
            match self.h[j] {
                None => {
                    if pj.iter().chain(qj).any(|&x| x != 0) {
                        return Ok(false);
                    }
                }
                Some(h) => {
                    if pj[h..].iter().any(|&x| x != 0) || qj[..h].iter().any(|&x| x != 0) {
                        return Ok(false);
                    }
                    if pj.iter().sum::<u32>() != qj.iter().sum::<u32>() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every `(p, q)` in the class with `|p_(j)| ≤ max_block_degree` for all blocks.
    pub fn index_pairs(&self, max_block_degree: u32) -> Vec<(MultiIndex, MultiIndex)> {
        let n = self.k.n();
        let mut acc: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::with_capacity(n), Vec::with_capacity(n))];
        for j in 0..self.k.len() {
            let kj = self.k.part(j);
            let options: Vec<(Vec<u32>, Vec<u32>)> = match self.h[j] {
                None => vec![(vec![0; kj], vec![0; kj])],
                Some(h) => {
                    let mut opts = Vec::new();
                    for d in 0..=max_block_degree {
                        for head in compositions_of(d, h) {
                            for tail in compositions_of(d, kj - h) {
                                let mut p = head.clone();
                                p.extend(std::iter::repeat_n(0, kj - h));
                                let mut q = vec![0; h];
                                q.extend(tail);
                                opts.push((p, q));
                            }
                        }
                    }
                    opts
                }
            };
            acc = acc
                .into_iter()
                .flat_map(|(p, q)| {
                    options.iter().map(move |(op, oq)| {
                        let mut p = p.clone();
                        let mut q = q.clone();
                        p.extend_from_slice(op);
                        q.extend_from_slice(oq);
                        (p, q)
                    })
                })
                .collect();
        }
        acc.into_iter().map(|(p, q)| (MultiIndex::new(p), MultiIndex::new(q))).collect()
    }

    /// The witness symbol `ξ_r ξ̄_s` of block `j0` with `r ≤ h_{j0} < s` (0-based `r`, `s`).
    pub fn witness<T: Real>(&self, j0: usize, r: usize, s: usize) -> Result<QuasiHomogeneousSymbol<T>> {
        let h = self.h.get(j0).copied().flatten().ok_or_else(|| {
            Error::InvalidClass(format!("block {j0} has no bound and carries no witness"))
        })?;
        if r >= h || s < h || s >= self.k.part(j0) {
            return Err(Error::InvalidArgument(format!("need r < {h} <= s < {}", self.k.part(j0))));
        }
        let n = self.k.n();
        let base = self.k.block(j0).start;
        QuasiHomogeneousSymbol::new(
            QuasiRadialSymbol::one(),
            MultiIndex::unit(n, base + r, 1),
            MultiIndex::unit(n, base + s, 1),
        )
    }
}

fn compositions_of(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|first| {
            compositions_of(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Element `t ∈ 𝕋ⁿ` acting by `t · z = (t_1 z_1, ..., t_n z_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<T> {
    t: Vec<Complex<T>>,
}

impl<T: Real> TorusElement<T> {
    pub fn new(t: Vec<Complex<T>>, tol: T) -> Result<Self> {
        for (index, c) in t.iter().enumerate() {
            let modulus = c.norm();
            if (modulus - T::one()).abs() > tol {
                return Err(Error::NonUnitModulus { index, modulus: modulus.as_f64() });
            }
        }
        Ok(Self { t })
    }

    pub fn from_angles(theta: &[T]) -> Self {
        Self { t: theta.iter().map(|&a| Complex::from_polar(T::one(), a)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self { t: vec![Complex::one(); n] }
    }

    pub fn coords(&self) -> &[Complex<T>] {
        &self.t
    }

    pub fn act(&self, z: &[Complex<T>]) -> Vec<Complex<T>> {
        self.t.iter().zip(z).map(|(a, b)| a * b).collect()
    }
}

/// Whether `t ∈ T_k`, i.e. `t` is constant on every block.
pub fn is_in_tk<T: Real>(t: &TorusElement<T>, k: &Partition, tol: T) -> Result<bool> {
    if t.t.len() != k.n() {
        return Err(Error::DimensionMismatch { expected: k.n(), found: t.t.len() });
    }
    TorusElement::new(t.t.clone(), tol)?;
    Ok(k.blocks().all(|r| {
        let first = t.t[r.start];
        t.t[r].iter().all(|c| (c - first).norm() <= tol)
    }))
}

/// `max_z |φ(t·z) − φ(z)|` over the sample points.
pub fn invariance_deviation<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    t: &TorusElement<T>,
    k: &Partition,
    samples: &[Vec<Complex<T>>],
) -> Result<T> {
    let mut worst = T::zero();
    for z in samples {
        let moved = t.act(z);
        let d = (sym.eval(&moved, k)? - sym.eval(z, k)?).norm();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// For `t ∉ T_k`: the block `j0` and pair `r ≤ h_{j0} < s` maximizing `|1 − t_r t̄_s|`,
/// together with that value. `None` when `t` is invariant on all constrained pairs.
pub fn worst_witness_pair<T: Real>(cls: &SymbolClassRkh, t: &TorusElement<T>) -> Option<(usize, usize, usize, T)> {
    let mut best: Option<(usize, usize, usize, T)> = None;
    for j in 0..cls.k.len() {
        let Some(h) = cls.h[j] else { continue };
        let base = cls.k.block(j).start;
        for r in 0..h {
            for s in h..cls.k.part(j) {
                let ratio = t.t[base + r] * t.t[base + s].conj();
                let gap = (Complex::<T>::one() - ratio).norm();
                if best.as_ref().is_none_or(|b| gap > b.3) {
                    best = Some((j, r, s, gap));
                }
            }
        }
    }
    best
}
