//! Torus actions, the map `π_k`, the Lagrangian frame fields and Kähler-form checks,
//! on the projective chart `ℂⁿ ⊂ Pⁿ(ℂ)` (Fubini–Study) and on the unit ball
//! (complex hyperbolic).
//!
//! Conventions: `h` is the Hermitian form of the Kähler metric, `ω(v, w) = −2 Im h(v, w)`,
//! `J` is multiplication by `i` and `g(v, w) = ω(v, Jw) = 2 Re h(v, w)`. With these,
//! `J X_j = −(β_j velocity)`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::Partition;
use crate::sampling::{ball_point, chart_point, complex_gaussian, stream_rng, unit_phase};
use crate::scalar::Real;

/// Tolerance of the group-membership checks.
pub const GROUP_TOL: f64 = 1e-12;
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    ProjectiveChart,
    Ball,
}

impl Ambient {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ProjectiveChart => "projective-chart",
            Self::Ball => "ball",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint<T> {
    z: Vec<Complex<T>>,
    ambient: Ambient,
}

impl<T: Real> ChartPoint<T> {
    pub fn new(z: Vec<Complex<T>>, ambient: Ambient) -> Result<Self> {
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("point has non-finite coordinates".into()));
        }
        if ambient == Ambient::Ball && norm_sq(&z) >= T::one() {
            return Err(Error::InvalidArgument("ball points need |z| < 1".into()));
        }
        Ok(Self { z, ambient })
    }

    pub fn z(&self) -> &[Complex<T>] {
        &self.z
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// Error unless every block of `z` is nonzero.
    pub fn check_vk(&self, k: &Partition) -> Result<()> {
        k.check_len(self.n())?;
        for (j, r) in k.blocks().enumerate() {
            if self.z[r].iter().all(|c| c.is_zero()) {
                return Err(Error::Indeterminacy { block: j });
            }
        }
        Ok(())
    }

    fn moved(&self, z: Vec<Complex<T>>) -> Self {
        Self { z, ambient: self.ambient }
    }
}

/// Tangent vector, in the same coordinates as the point it is attached to.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangent<T>(pub Vec<Complex<T>>);

impl<T: Real> Tangent<T> {
    pub fn coords(&self) -> &[Complex<T>] {
        &self.0
    }

    /// `J v = i v`.
    pub fn j(&self) -> Self {
        Self(self.0.iter().map(|c| c * Complex::i()).collect())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }
}

fn norm_sq<T: Real>(z: &[Complex<T>]) -> T {
    z.iter().map(|c| c.norm_sqr()).sum()
}

fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Hermitian form of the Kähler metric at `z`:
/// chart `[(1+|z|²) ⟨v,w⟩ − ⟨v,z⟩⟨z,w⟩] / (1+|z|²)²`,
/// ball `[(1−|z|²) ⟨v,w⟩ + ⟨v,z⟩⟨z,w⟩] / (1−|z|²)²`.
pub fn hermitian_form<T: Real>(at: &ChartPoint<T>, v: &Tangent<T>, w: &Tangent<T>) -> Complex<T> {
    let z = &at.z;
    let r2 = norm_sq(z);
    let vw = dot(&v.0, &w.0);
    let vz = dot(&v.0, z);
    let zw = dot(z, &w.0);
    match at.ambient {
        Ambient::ProjectiveChart => {
            let d = T::one() + r2;
            (vw * d - vz * zw) / (d * d)
        }
        Ambient::Ball => {
            let d = T::one() - r2;
            (vw * d + vz * zw) / (d * d)
        }
    }
}

/// `ω(v, w) = −2 Im h(v, w)`, evaluated antisymmetrically so that `ω(v, v) = 0` exactly.
pub fn kahler_form<T: Real>(at: &ChartPoint<T>, v: &Tangent<T>, w: &Tangent<T>) -> T {
    hermitian_form(at, w, v).im - hermitian_form(at, v, w).im
}

/// `g(v, w) = ω(v, Jw)`.
pub fn metric_g<T: Real>(at: &ChartPoint<T>, v: &Tangent<T>, w: &Tangent<T>) -> T {
    kahler_form(at, v, &w.j())
}

fn block_field<T: Real>(j: usize, at: &ChartPoint<T>, k: &Partition, factor: Complex<T>) -> Result<Tangent<T>> {
    k.check_len(at.n())?;
    if j >= k.len() {
        return Err(Error::InvalidArgument(format!("block index {j} out of range for {} blocks", k.len())));
    }
    let range = k.block(j);
    Ok(Tangent(
        at.z.iter()
            .enumerate()
            .map(|(i, &c)| if range.contains(&i) { c * factor } else { Complex::zero() })
            .collect(),
    ))
}

/// `X_j`: `i z_(j)` in block `j`, zero elsewhere (velocity of the torus flow `ψ_j`).
pub fn field_x<T: Real>(j: usize, at: &ChartPoint<T>, k: &Partition) -> Result<Tangent<T>> {
    block_field(j, at, k, Complex::i())
}

/// `z_(j)` in block `j`: velocity of the scaling flow `β_j`; equals `−J X_j`.
pub fn field_jx<T: Real>(j: usize, at: &ChartPoint<T>, k: &Partition) -> Result<Tangent<T>> {
    block_field(j, at, k, Complex::one())
}

/// Point of `∏_j P^{k_j−1}(ℂ)`: each block scaled to unit length with its first
/// non-negligible coordinate real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjTuple<T> {
    blocks: Vec<Vec<Complex<T>>>,
}

impl<T: Real> ProjTuple<T> {
    pub fn from_blocks(blocks: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .enumerate()
            .map(|(j, b)| normalize_block(b).ok_or(Error::Indeterminacy { block: j }))
            .collect::<Result<_>>()?;
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<Complex<T>>] {
        &self.blocks
    }

    /// Largest coordinate difference between canonical representatives.
    pub fn distance(&self, other: &Self) -> T {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(T::zero(), T::max)
    }

    /// Induced action of a diagonal element on `∏ P^{k_j−1}`.
    pub fn act(&self, g: &GroupElement<T>) -> Result<Self> {
        let mut offset = 0;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let out = b.iter().zip(&g.data[offset..offset + b.len()]).map(|(x, y)| x * y).collect();
                offset += b.len();
                out
            })
            .collect();
        Self::from_blocks(blocks)
    }
}

fn normalize_block<T: Real>(b: Vec<Complex<T>>) -> Option<Vec<Complex<T>>> {
    let norm = norm_sq(&b).sqrt();
    if norm.is_zero() {
        return None;
    }
    let floor = norm * T::lit(1e-8);
    let lead = b.iter().find(|c| c.norm() > floor)?;
    // divide by |b| · (lead/|lead|)
    let phase = lead / lead.norm();
    let s = (phase * norm).inv();
    Some(b.into_iter().map(|c| c * s).collect())
}

/// `π_k(z) = ([z_(1)], ..., [z_(l)])`.
pub fn pi_k<T: Real>(at: &ChartPoint<T>, k: &Partition) -> Result<ProjTuple<T>> {
    at.check_vk(k)?;
    ProjTuple::from_blocks(k.blocks().map(|r| at.z[r].to_vec()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Torus,
    Ak,
    Bk,
}

/// Diagonal element of `(ℂ*)ⁿ` of a given kind; it acts by coordinatewise product.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    kind: GroupKind,
    data: Vec<Complex<T>>,
}

impl<T: Real> GroupElement<T> {
    pub fn new(kind: GroupKind, data: Vec<Complex<T>>, k: &Partition) -> Result<Self> {
        k.check_len(data.len())?;
        let tol = T::lit(GROUP_TOL);
        if data.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidGroupElement("entries must be nonzero".into()));
        }
        match kind {
            GroupKind::Torus => {
                if let Some(i) = data.iter().position(|c| (c.norm() - T::one()).abs() > tol) {
                    return Err(Error::InvalidGroupElement(format!("torus entry {i} is not unimodular")));
                }
            }
            GroupKind::Ak => {
                for (j, r) in k.blocks().enumerate() {
                    let first = data[r.start];
                    if data[r].iter().any(|c| (c - first).norm() > tol * first.norm()) {
                        return Err(Error::InvalidGroupElement(format!("A_k element is not constant on block {j}")));
                    }
                }
            }
            GroupKind::Bk => {
                for (j, r) in k.blocks().enumerate() {
                    let prod: Complex<T> = data[r].iter().product();
                    if (prod - Complex::one()).norm() > tol {
                        return Err(Error::InvalidGroupElement(format!("B_k block {j} has product ≠ 1")));
                    }
                }
            }
        }
        Ok(Self { kind, data })
    }

    pub fn identity(kind: GroupKind, n: usize) -> Self {
        Self { kind, data: vec![Complex::one(); n] }
    }

    /// `A_k` element with the given value on each block.
    pub fn ak_from_blocks(values: &[Complex<T>], k: &Partition) -> Result<Self> {
        if values.len() != k.len() {
            return Err(Error::DimensionMismatch { expected: k.len(), found: values.len() });
        }
        let data = k.blocks().zip(values).flat_map(|(r, &v)| std::iter::repeat_n(v, r.len())).collect();
        Self::new(GroupKind::Ak, data, k)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn act(&self, z: &[Complex<T>]) -> Vec<Complex<T>> {
        z.iter().zip(&self.data).map(|(a, b)| a * b).collect()
    }

    pub fn act_point(&self, at: &ChartPoint<T>) -> ChartPoint<T> {
        at.moved(self.act(&at.z))
    }

    pub fn act_tangent(&self, v: &Tangent<T>) -> Tangent<T> {
        Tangent(self.act(&v.0))
    }

    pub fn random_torus<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        Self { kind: GroupKind::Torus, data: (0..n).map(|_| unit_phase(rng)).collect() }
    }

    pub fn random_ak<R: Rng + ?Sized>(rng: &mut R, k: &Partition) -> Self {
        let values: Vec<Complex<T>> = (0..k.len()).map(|_| nonzero_gaussian(rng)).collect();
        Self::ak_from_blocks(&values, k).expect("block-constant by construction")
    }

    pub fn random_bk<R: Rng + ?Sized>(rng: &mut R, k: &Partition) -> Self {
        let c: Vec<Complex<T>> = (0..k.n()).map(|_| nonzero_gaussian(rng)).collect();
        ak_decompose(&c, k).expect("nonzero input").1
    }
}

fn nonzero_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    loop {
        let c: Complex<T> = complex_gaussian(rng);
        if c.norm() > T::lit(1e-3) {
            return c;
        }
    }
}

/// `c = a·b` with `a ∈ A_k` the principal `k_j`-th root of each block product and
/// `b = c/a ∈ B_k`.
pub fn ak_decompose<T: Real>(c: &[Complex<T>], k: &Partition) -> Result<(GroupElement<T>, GroupElement<T>)> {
    k.check_len(c.len())?;
    if c.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidGroupElement("entries must be nonzero".into()));
    }
    let mut a = Vec::with_capacity(c.len());
    let mut b = Vec::with_capacity(c.len());
    for r in k.blocks() {
        let kj = r.len();
        let prod: Complex<T> = c[r.clone()].iter().product();
        let root = if kj == 1 { prod } else { prod.powf(T::one() / T::from_usize_lossy(kj)) };
        for &x in &c[r] {
            a.push(root);
            b.push(x / root);
        }
    }
    Ok((GroupElement { kind: GroupKind::Ak, data: a }, GroupElement { kind: GroupKind::Bk, data: b }))
}

/// `max_{i≤j} |ω(X_i, X_j)|`.
pub fn lagrangian_deviation<T: Real>(at: &ChartPoint<T>, k: &Partition) -> Result<T> {
    at.check_vk(k)?;
    let x: Vec<Tangent<T>> = (0..k.len()).map(|j| field_x(j, at, k)).collect::<Result<_>>()?;
    let mut worst = T::zero();
    for i in 0..x.len() {
        for j in i..x.len() {
            worst = worst.max(kahler_form(at, &x[i], &x[j]).abs());
        }
    }
    Ok(worst)
}

/// `max_{i,j} |g(J X_i, X_j)|`.
pub fn frame_orthogonality<T: Real>(at: &ChartPoint<T>, k: &Partition) -> Result<T> {
    at.check_vk(k)?;
    let x: Vec<Tangent<T>> = (0..k.len()).map(|j| field_x(j, at, k)).collect::<Result<_>>()?;
    let mut worst = T::zero();
    for xi in &x {
        let jxi = xi.j();
        for xj in &x {
            worst = worst.max(metric_g(at, &jxi, xj).abs());
        }
    }
    Ok(worst)
}

/// One-parameter flow generated by a block field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flow {
    /// `ψ_j(t)`: block `j` times `e^{it}`.
    Torus(usize),
    /// `β_j(e^s)`: block `j` times `e^s`.
    Scaling(usize),
}

impl Flow {
    /// Coordinatewise multiplier of the time-`t` map.
    fn multiplier<T: Real>(self, t: T, k: &Partition) -> Vec<Complex<T>> {
        let (j, factor) = match self {
            Flow::Torus(j) => (j, Complex::from_polar(T::one(), t)),
            Flow::Scaling(j) => (j, Complex::new(t.exp(), T::zero())),
        };
        let range = k.block(j);
        (0..k.n()).map(|i| if range.contains(&i) { factor } else { Complex::one() }).collect()
    }

    fn block(self) -> usize {
        match self {
            Flow::Torus(j) | Flow::Scaling(j) => j,
        }
    }
}

/// `‖f(ε) g(ε) z − g(ε) f(ε) z‖ / ε²`, maximized over `ε` and `ε/2`. The flows are
/// diagonal linear maps, so each composite is formed as one multiplier before it is
/// applied to `z`.
pub fn bracket_fd<T: Real>(f: Flow, g: Flow, at: &ChartPoint<T>, k: &Partition, eps: T) -> Result<T> {
    if !(T::lit(1e-6)..=T::lit(1e-2)).contains(&eps) {
        return Err(Error::InvalidArgument(format!("finite-difference step {} outside [1e-6, 1e-2]", eps.as_f64())));
    }
    k.check_len(at.n())?;
    for b in [f.block(), g.block()] {
        if b >= k.len() {
            return Err(Error::InvalidArgument(format!("block index {b} out of range")));
        }
    }
    let mut worst = T::zero();
    for h in [eps, eps * T::lit(0.5)] {
        let mf = f.multiplier(h, k);
        let mg = g.multiplier(h, k);
        let fg: Vec<Complex<T>> = mf.iter().zip(&mg).map(|(a, b)| a * b).collect();
        let gf: Vec<Complex<T>> = mg.iter().zip(&mf).map(|(a, b)| a * b).collect();
        let d: T = at.z.iter().zip(fg.iter().zip(&gf)).map(|(z, (a, b))| (z * a - z * b).norm_sqr()).sum();
        worst = worst.max(d.sqrt() / (h * h));
    }
    Ok(worst)
}

/// Central difference of `π_k` along a flow; zero for flows inside `A_k`.
pub fn tangency_fd<T: Real>(flow: Flow, at: &ChartPoint<T>, k: &Partition, h: T) -> Result<T> {
    let forward = GroupElement { kind: GroupKind::Ak, data: flow.multiplier(h, k) };
    let backward = GroupElement { kind: GroupKind::Ak, data: flow.multiplier(-h, k) };
    let p = pi_k(&forward.act_point(at), k)?;
    let m = pi_k(&backward.act_point(at), k)?;
    Ok(p.distance(&m) / (h + h))
}

/// Distance between `π_k(b·z)` and `b·π_k(z)`.
pub fn bk_equivariance<T: Real>(b: &GroupElement<T>, at: &ChartPoint<T>, k: &Partition) -> Result<T> {
    let lhs = pi_k(&b.act_point(at), k)?;
    let rhs = pi_k(at, k)?.act(b)?;
    Ok(lhs.distance(&rhs))
}

/// Distance between `π_k(a·z)` and `π_k(z)`.
pub fn ak_invariance<T: Real>(a: &GroupElement<T>, at: &ChartPoint<T>, k: &Partition) -> Result<T> {
    Ok(pi_k(&a.act_point(at), k)?.distance(&pi_k(at, k)?))
}

/// `max_i |a_i b_i − c_i|`.
pub fn recomposition_deviation<T: Real>(a: &GroupElement<T>, b: &GroupElement<T>, c: &[Complex<T>]) -> T {
    a.data.iter().zip(&b.data).zip(c).map(|((x, y), z)| (x * y - z).norm()).fold(T::zero(), T::max)
}

/// `max_j |∏ b_(j) − 1|`.
pub fn bk_constraint_deviation<T: Real>(b: &GroupElement<T>, k: &Partition) -> T {
    k.blocks()
        .map(|r| (b.data[r].iter().product::<Complex<T>>() - Complex::one()).norm())
        .fold(T::zero(), T::max)
}

/// `|g_{t·z}(t·v, t·w) − g_z(v, w)|`.
pub fn isometry_deviation<T: Real>(t: &GroupElement<T>, at: &ChartPoint<T>, v: &Tangent<T>, w: &Tangent<T>) -> Result<T> {
    if t.kind != GroupKind::Torus {
        return Err(Error::InvalidGroupElement("isometry check needs a torus element".into()));
    }
    let moved = t.act_point(at);
    Ok((metric_g(&moved, &t.act_tangent(v), &t.act_tangent(w)) - metric_g(at, v, w)).abs())
}

/// `‖a·z − z‖`.
pub fn displacement<T: Real>(a: &GroupElement<T>, at: &ChartPoint<T>) -> T {
    at.z.iter().zip(&a.data).map(|(z, x)| (z * x - z).norm_sqr()).sum::<T>().sqrt()
}

pub fn random_point<T: Real, R: Rng + ?Sized>(rng: &mut R, k: &Partition, ambient: Ambient) -> ChartPoint<T> {
    let z = match ambient {
        Ambient::ProjectiveChart => chart_point(rng, k),
        Ambient::Ball => ball_point(rng, k),
    };
    ChartPoint { z, ambient }
}

/// Uniformly distributed unit tangent; the metric checks are bilinear, so unit length
/// keeps their absolute tolerances meaningful.
fn random_tangent<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tangent<T> {
    let v: Vec<Complex<T>> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let norm = norm_sq(&v).sqrt();
    Tangent(v.into_iter().map(|c| c / norm).collect())
}

/// Maxima of every check over a batch of random points.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub ambient: Option<Ambient>,
    pub samples: usize,
    pub seed: u64,
    pub lagrangian: f64,
    pub frame_orthogonality: f64,
    pub bracket_torus: f64,
    pub bracket_scaling: f64,
    pub bracket_mixed: f64,
    pub ak_invariance: f64,
    pub bk_equivariance: f64,
    pub isometry: f64,
    pub recomposition: f64,
    pub bk_constraint: f64,
    pub tangency: f64,
    pub metric_symmetry: f64,
    pub metric_j_invariance: f64,
    /// Smallest `g(v, v) / |v|²` seen; positive for a Riemannian metric.
    pub metric_min_ratio: f64,
    /// Smallest `‖a·z − z‖` over `a ≠ 1`; positive when the action is free.
    pub min_displacement: f64,
}

impl GeometrySummary {
    fn merge(mut self, o: &Self) -> Self {
        macro_rules! mx {
            ($($f:ident),*) => { $( self.$f = self.$f.max(o.$f); )* };
        }
        mx!(
            lagrangian, frame_orthogonality, bracket_torus, bracket_scaling, bracket_mixed, ak_invariance,
            bk_equivariance, isometry, recomposition, bk_constraint, tangency, metric_symmetry, metric_j_invariance
        );
        self.metric_min_ratio = self.metric_min_ratio.min(o.metric_min_ratio);
        self.min_displacement = self.min_displacement.min(o.min_displacement);
        self.samples += o.samples;
        self
    }
}

/// Runs every check at `samples` random points of `V_k` (sample `i` uses stream `i`).
pub fn survey(k: &Partition, ambient: Ambient, samples: usize, seed: u64, eps: f64) -> Result<GeometrySummary> {
    let per: Vec<GeometrySummary> = (0..samples)
        .into_par_iter()
        .map(|i| survey_one(k, ambient, seed, i as u64, eps))
        .collect::<Result<_>>()?;
    let start = GeometrySummary {
        ambient: Some(ambient),
        seed,
        metric_min_ratio: f64::INFINITY,
        min_displacement: f64::INFINITY,
        ..Default::default()
    };
    Ok(per.iter().fold(start, |acc, s| acc.merge(s)))
}

fn survey_one(k: &Partition, ambient: Ambient, seed: u64, stream: u64, eps: f64) -> Result<GeometrySummary> {
    let mut rng = stream_rng(seed, stream);
    let at: ChartPoint<f64> = random_point(&mut rng, k, ambient);
    let l = k.len();
    let mut s = GeometrySummary { samples: 1, ..Default::default() };
    s.lagrangian = lagrangian_deviation(&at, k)?;
    s.frame_orthogonality = frame_orthogonality(&at, k)?;
    for i in 0..l {
        for j in 0..l {
            s.bracket_torus = s.bracket_torus.max(bracket_fd(Flow::Torus(i), Flow::Torus(j), &at, k, eps)?);
            s.bracket_scaling = s.bracket_scaling.max(bracket_fd(Flow::Scaling(i), Flow::Scaling(j), &at, k, eps)?);
            s.bracket_mixed = s.bracket_mixed.max(bracket_fd(Flow::Torus(i), Flow::Scaling(j), &at, k, eps)?);
        }
        s.tangency = s.tangency.max(tangency_fd(Flow::Torus(i), &at, k, eps)?);
        s.tangency = s.tangency.max(tangency_fd(Flow::Scaling(i), &at, k, eps)?);
    }
    let a = GroupElement::random_ak(&mut rng, k);
    s.ak_invariance = ak_invariance(&a, &at, k)?;
    s.min_displacement = displacement(&a, &at);
    let c: Vec<Complex<f64>> = (0..k.n()).map(|_| nonzero_gaussian(&mut rng)).collect();
    let (ca, cb) = ak_decompose(&c, k)?;
    s.recomposition = recomposition_deviation(&ca, &cb, &c);
    s.bk_constraint = bk_constraint_deviation(&cb, k);
    s.bk_equivariance = bk_equivariance(&cb, &at, k)?;
    let t = GroupElement::random_torus(&mut rng, k.n());
    let v = random_tangent(&mut rng, k.n());
    let w = random_tangent(&mut rng, k.n());
    s.isometry = isometry_deviation(&t, &at, &v, &w)?;
    s.metric_symmetry = (metric_g(&at, &v, &w) - metric_g(&at, &w, &v)).abs();
    s.metric_j_invariance = (metric_g(&at, &v.j(), &w.j()) - metric_g(&at, &v, &w)).abs();
    s.metric_min_ratio = metric_g(&at, &v, &v) / norm_sq(&v.0);
    Ok(s)
}
