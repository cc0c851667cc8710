//! Toeplitz operators with quasi-radial and quasi-homogeneous symbols, assembled from
//! their action on monomials:
//!
//! * `T_a z^α = γ(α) z^α` for quasi-radial `a`;
//! * `T_{aξᵖξ̄^q} z^α = γ̃(α) z^{α+p−q}`, and `0` when `α + p − q ∉ J_n(m)`.
//!
//! Both coefficients are a rational prefactor times one radial integral; see
//! [`gamma_quasi_radial`] and [`gamma_tilde`].

use std::io::Write;
use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bergman::BergmanSpace;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::multiindex::{block_degrees, enumerate_basis, factorial_exact, MultiIndex, Partition};
use crate::quadrature::{
    check_convergence, closed_form, closed_form_exact, radial_moments, PathUsed, QuadratureSpec, RadialIntegrand, RadialMethod,
};
use crate::scalar::{from_rational, Real};
use crate::symbols::{QuasiHomogeneousSymbol, QuasiRadialSymbol};

/// How radial integrals are evaluated during assembly.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub method: RadialMethod,
}

impl SpectralOptions {
    pub fn numeric(quadrature: QuadratureSpec) -> Self {
        Self { quadrature, method: RadialMethod::Numeric }
    }
}

/// A spectral coefficient with the path that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralValue<T> {
    pub value: Complex<T>,
    pub path: PathUsed,
    pub error_estimate: T,
}

/// One coefficient before its radial integral is evaluated.
#[derive(Clone, Debug)]
struct Term {
    prefactor: BigRational,
    exponents: Vec<u32>,
}

/// `2^l (n+m)! num / (den (m − deg)! ∏_j (k_j − 1 + s_j)!)`.
fn prefactor(k: &Partition, m: u32, num: BigUint, den: BigUint, deg: u32, s: &[u32]) -> BigRational {
    let n = k.n() as u64;
    let mut top = num * factorial_exact(n + m as u64);
    top <<= k.len();
    let mut bottom = den * factorial_exact((m - deg) as u64);
    for (j, &sj) in s.iter().enumerate() {
        bottom *= factorial_exact(k.part(j) as u64 - 1 + sj as u64);
    }
    BigRational::new(top.into(), bottom.into())
}

fn radial_term(k: &Partition, m: u32, s: &[u32]) -> Result<Term> {
    if s.len() != k.len() {
        return Err(Error::DimensionMismatch { expected: k.len(), found: s.len() });
    }
    let deg: u32 = s.iter().sum();
    if deg > m {
        return Err(Error::DegreeOverflow { degree: deg, m });
    }
    let exponents = s.iter().enumerate().map(|(j, &sj)| 2 * sj + 2 * k.part(j) as u32 - 1).collect();
    Ok(Term { prefactor: prefactor(k, m, BigUint::one(), BigUint::one(), deg, s), exponents })
}

/// Term of `γ̃(α)` together with `β = α + p − q`; `None` when `β ∉ J_n(m)`.
fn shift_term(
    k: &Partition,
    m: u32,
    p: &MultiIndex,
    q: &MultiIndex,
    alpha: &MultiIndex,
) -> Result<Option<(MultiIndex, Term)>> {
    k.check_len(alpha.len())?;
    if alpha.degree() > m {
        return Err(Error::DegreeOverflow { degree: alpha.degree(), m });
    }
    let Some(beta) = alpha.shift(p, q)? else {
        return Ok(None);
    };
    if beta.degree() > m {
        return Ok(None);
    }
    let lifted = alpha.checked_add(p)?;
    let s_lift = block_degrees(&lifted, k)?;
    let s_a = block_degrees(alpha, k)?;
    let s_b = block_degrees(&beta, k)?;
    let exponents = (0..k.len()).map(|j| s_a[j] + s_b[j] + 2 * k.part(j) as u32 - 1).collect();
    let pre = prefactor(k, m, lifted.factorial_exact(), beta.factorial_exact(), beta.degree(), &s_lift);
    Ok(Some((beta, Term { prefactor: pre, exponents })))
}

fn use_closed_form<T: Real>(radial: &QuasiRadialSymbol<T>, l: usize, method: RadialMethod) -> Result<bool> {
    Ok(match method {
        RadialMethod::Auto => radial.closed_form(l).is_some(),
        RadialMethod::Numeric => false,
        RadialMethod::ClosedForm => {
            if radial.closed_form(l).is_none() {
                return Err(Error::InvalidArgument(format!("symbol {} has no closed form", radial.label())));
            }
            true
        }
    })
}

fn evaluate_terms<T: Real>(
    radial: &QuasiRadialSymbol<T>,
    terms: &[Term],
    power: u32,
    l: usize,
    opts: &SpectralOptions,
) -> Result<Vec<SpectralValue<T>>> {
    if terms.is_empty() {
        return Ok(Vec::new());
    }
    if use_closed_form(radial, l, opts.method)? {
        return terms
            .iter()
            .map(|t| {
                let ig = RadialIntegrand { exponents: t.exponents.clone(), power, radial: radial.clone() };
                let value = match closed_form_exact(&ig)? {
                    Some(exact) => {
                        let coef = radial.closed_form(l).expect("closed form").coef;
                        coef * from_rational::<T>(&(&t.prefactor * exact))
                    }
                    None => closed_form(&ig)? * from_rational::<T>(&t.prefactor),
                };
                Ok(SpectralValue { value, path: PathUsed::ClosedForm, error_estimate: T::zero() })
            })
            .collect();
    }
    let exps: Vec<Vec<u32>> = terms.iter().map(|t| t.exponents.clone()).collect();
    let raw = radial_moments(radial, &exps, power, &opts.quadrature)?;
    Ok(terms
        .iter()
        .zip(raw)
        .map(|(t, r)| {
            let pre: T = from_rational(&t.prefactor);
            SpectralValue { value: r.value * pre, path: PathUsed::Numeric, error_estimate: r.error_estimate * pre }
        })
        .collect())
}

/// `γ(s) = 2^l (n+m)! / ((m−|s|)! ∏_j (k_j−1+s_j)!) · ∫ a(r)(1+r²)^{−(n+m+1)} ∏_j r_j^{2s_j+2k_j−1} dr`,
/// the eigenvalue of `T_a` on every `z^α` with block degrees `s`.
pub fn gamma_quasi_radial<T: Real>(
    a: &QuasiRadialSymbol<T>,
    k: &Partition,
    m: u32,
    s: &[u32],
    opts: &SpectralOptions,
) -> Result<SpectralValue<T>> {
    a.check_blocks(k.len())?;
    let term = radial_term(k, m, s)?;
    let power = (k.n() as u32) + m + 1;
    Ok(evaluate_terms(a, std::slice::from_ref(&term), power, k.len(), opts)?.remove(0))
}

/// `γ(s)` as an exact rational, divided by the symbol's constant coefficient; `None`
/// when the closed form leaves ℚ or the symbol has none.
pub fn gamma_quasi_radial_exact<T: Real>(
    a: &QuasiRadialSymbol<T>,
    k: &Partition,
    m: u32,
    s: &[u32],
) -> Result<Option<BigRational>> {
    a.check_blocks(k.len())?;
    let term = radial_term(k, m, s)?;
    let ig = RadialIntegrand { exponents: term.exponents, power: k.n() as u32 + m + 1, radial: a.clone() };
    Ok(closed_form_exact(&ig)?.map(|v| v * term.prefactor))
}

/// `γ̃(α)` with `β = α + p − q`:
/// `2^l (α+p)! (n+m)! / (β! (m−|β|)! ∏_j (k_j−1+|α_(j)+p_(j)|)!) · ∫ a(r)(1+r²)^{−(n+m+1)} ∏_j r_j^{|α_(j)|+|β_(j)|+2k_j−1} dr`.
pub fn gamma_tilde<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    m: u32,
    alpha: &MultiIndex,
    opts: &SpectralOptions,
) -> Result<SpectralValue<T>> {
    sym.check_partition(k)?;
    let (_, term) = shift_term(k, m, sym.p(), sym.q(), alpha)?.ok_or_else(|| {
        Error::InvalidArgument(format!("{alpha} + p − q leaves J_{}({m}); the operator maps z^{alpha} to 0", k.n()))
    })?;
    let power = (k.n() as u32) + m + 1;
    Ok(evaluate_terms(sym.radial(), std::slice::from_ref(&term), power, k.len(), opts)?.remove(0))
}

/// Factor relating `γ̃(α)` to `γ(α)` for balanced shifts:
/// `∏_j (α_(j)+p_(j))! (k_j−1+|α_(j)|)! / ((α_(j)+p_(j)−q_(j))! (k_j−1+|α_(j)+p_(j)|)!)`.
pub fn ratio_factor_exact(k: &Partition, p: &MultiIndex, q: &MultiIndex, alpha: &MultiIndex) -> Result<Option<BigRational>> {
    if block_degrees(p, k)? != block_degrees(q, k)? {
        return Err(Error::Precondition("the ratio identity needs |p_(j)| = |q_(j)| in every block".into()));
    }
    let Some(beta) = alpha.shift(p, q)? else {
        return Ok(None);
    };
    let lifted = alpha.checked_add(p)?;
    let s_a = block_degrees(alpha, k)?;
    let s_lift = block_degrees(&lifted, k)?;
    let mut num = lifted.factorial_exact();
    let mut den = beta.factorial_exact();
    for j in 0..k.len() {
        let kj = k.part(j) as u64 - 1;
        num *= factorial_exact(kj + s_a[j] as u64);
        den *= factorial_exact(kj + s_lift[j] as u64);
    }
    Ok(Some(BigRational::new(num.into(), den.into())))
}

/// Right-hand side of the ratio identity: `ratio · γ(block_degrees(α))`.
pub fn ratio_identity<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    m: u32,
    alpha: &MultiIndex,
    opts: &SpectralOptions,
) -> Result<Option<Complex<T>>> {
    let Some(ratio) = ratio_factor_exact(k, sym.p(), sym.q(), alpha)? else {
        return Ok(None);
    };
    let g = gamma_quasi_radial(sym.radial(), k, m, &block_degrees(alpha, k)?, opts)?;
    Ok(Some(g.value * from_rational::<T>(&ratio)))
}

/// A Toeplitz (or derived) operator on a Bergman space, in the orthonormal basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix<T> {
    space: Arc<BergmanSpace<T>>,
    matrix: CMatrix<T>,
    path: Option<PathUsed>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn from_matrix(space: Arc<BergmanSpace<T>>, matrix: CMatrix<T>) -> Result<Self> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: matrix.rows() });
        }
        Ok(Self { space, matrix, path: None })
    }

    pub fn identity(space: Arc<BergmanSpace<T>>) -> Self {
        let matrix = CMatrix::identity(space.dim());
        Self { space, matrix, path: None }
    }

    pub fn space(&self) -> &Arc<BergmanSpace<T>> {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Radial-integral path used during assembly; `None` for derived operators.
    pub fn path(&self) -> Option<PathUsed> {
        self.path
    }

    /// Matrix entry `⟨T e_col, e_row⟩`.
    pub fn entry(&self, row: &MultiIndex, col: &MultiIndex) -> Option<Complex<T>> {
        Some(self.matrix.get(self.space.index_of(row)?, self.space.index_of(col)?))
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space.n() != other.space.n() || self.space.m() != other.space.m() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Self::from_matrix(self.space.clone(), self.matrix.try_mul(&other.matrix)?)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Self::from_matrix(self.space.clone(), self.matrix.commutator(&other.matrix)?)
    }

    /// `‖A − B‖₂`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.check_same_space(other)?;
        Ok(self.matrix.try_sub(&other.matrix)?.spectral_norm())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_space(other)?;
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// All entries as CSV rows `row,col,re,im` (row-major, with header).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["row", "col", "re", "im"])?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.matrix.get(i, j);
                w.write_record([i.to_string(), j.to_string(), v.re.to_string(), v.im.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<Vec<u32>> = self.space.basis().iter().map(|a| a.entries().to_vec()).collect();
        let re: Vec<Vec<f64>> =
            (0..self.dim()).map(|i| self.matrix.row(i).iter().map(|c| c.re.as_f64()).collect()).collect();
        let im: Vec<Vec<f64>> =
            (0..self.dim()).map(|i| self.matrix.row(i).iter().map(|c| c.im.as_f64()).collect()).collect();
        serde_json::json!({
            "n": self.space.n(),
            "m": self.space.m(),
            "dim": self.dim(),
            "basis": basis,
            "re": re,
            "im": im,
        })
    }
}

/// Diagonal matrix `γ(block_degrees(α))`.
pub fn assemble_quasi_radial<T: Real>(
    a: &QuasiRadialSymbol<T>,
    k: &Partition,
    space: &Arc<BergmanSpace<T>>,
    opts: &SpectralOptions,
) -> Result<OperatorMatrix<T>> {
    k.check_len(space.n())?;
    a.check_blocks(k.len())?;
    let m = space.m();
    // equal block-degree vectors share one eigenvalue
    let degrees: Vec<Vec<u32>> = space.basis().iter().map(|al| block_degrees(al, k)).collect::<Result<_>>()?;
    let mut distinct = degrees.clone();
    distinct.sort();
    distinct.dedup();
    let terms = distinct.iter().map(|s| radial_term(k, m, s)).collect::<Result<Vec<_>>>()?;
    let values = evaluate_terms(a, &terms, k.n() as u32 + m + 1, k.len(), opts)?;
    let diag: Vec<Complex<T>> =
        degrees.iter().map(|s| values[distinct.binary_search(s).unwrap()].value).collect();
    let path = values.first().map(|v| v.path);
    Ok(OperatorMatrix { space: space.clone(), matrix: CMatrix::from_diag(&diag), path })
}

/// Matrix with `M[β, α] = γ̃(α) ‖z^β‖/‖z^α‖` for `β = α + p − q ∈ J_n(m)`, zero columns otherwise.
pub fn assemble_quasi_homogeneous<T: Real>(
    sym: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    space: &Arc<BergmanSpace<T>>,
    opts: &SpectralOptions,
) -> Result<OperatorMatrix<T>> {
    k.check_len(space.n())?;
    sym.check_partition(k)?;
    if sym.is_quasi_radial() {
        return assemble_quasi_radial(sym.radial(), k, space, opts);
    }
    let m = space.m();
    let mut cols = Vec::new();
    let mut terms = Vec::new();
    for (ci, alpha) in space.basis().iter().enumerate() {
        if let Some((beta, term)) = shift_term(k, m, sym.p(), sym.q(), alpha)? {
            let ri = space.index_of(&beta).expect("β lies in the basis");
            cols.push((ri, ci));
            terms.push(term);
        }
    }
    let values = evaluate_terms(sym.radial(), &terms, k.n() as u32 + m + 1, k.len(), opts)?;
    let mut matrix = CMatrix::zeros(space.dim(), space.dim());
    for (&(ri, ci), v) in cols.iter().zip(&values) {
        let scale = (space.norm_sq(ri) / space.norm_sq(ci)).sqrt();
        matrix.set(ri, ci, v.value * scale);
    }
    let path = values.first().map(|v| v.path);
    Ok(OperatorMatrix { space: space.clone(), matrix, path })
}

/// Checks, without evaluating anything, that every coefficient of `T_sym` on `A²_m`
/// is a convergent integral.
pub fn check_assembly<T: Real>(sym: &QuasiHomogeneousSymbol<T>, k: &Partition, m: u32) -> Result<()> {
    k.check_len(sym.n())?;
    sym.check_partition(k)?;
    sym.radial().check_blocks(k.len())?;
    let power = k.n() as u32 + m + 1;
    for alpha in enumerate_basis(k.n(), m).iter() {
        let term = if sym.is_quasi_radial() {
            Some(radial_term(k, m, &block_degrees(alpha, k)?)?)
        } else {
            shift_term(k, m, sym.p(), sym.q(), alpha)?.map(|(_, t)| t)
        };
        if let Some(term) = term {
            check_convergence(sym.radial(), &term.exponents, power)?;
        }
    }
    Ok(())
}

/// `‖AB − BA‖₂`.
pub fn commutator_norm<T: Real>(a: &OperatorMatrix<T>, b: &OperatorMatrix<T>) -> Result<T> {
    Ok(a.commutator(b)?.matrix.spectral_norm())
}

/// Commutation of `T_{aξᵖξ̄^q}` and `T_{bξᵘξ̄^v}` for block-balanced symbols: at every
/// coordinate `i` one of `p_i = q_i = 0`, `u_i = v_i = 0`, `p_i = u_i = 0`, `q_i = v_i = 0`.
pub fn predict_commutes<T: Real>(
    sym1: &QuasiHomogeneousSymbol<T>,
    sym2: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
) -> Result<bool> {
    sym1.check_partition(k)?;
    sym2.check_partition(k)?;
    if !sym1.is_balanced(k)? || !sym2.is_balanced(k)? {
        return Err(Error::Precondition(
            "commutation rule needs |p_(j)| = |q_(j)| and |u_(j)| = |v_(j)| in every block".into(),
        ));
    }
    Ok(coordinate_rule(sym1.p(), sym1.q(), sym2.p(), sym2.q()))
}

fn coordinate_rule(p: &MultiIndex, q: &MultiIndex, u: &MultiIndex, v: &MultiIndex) -> bool {
    (0..p.len()).all(|i| {
        let (p, q, u, v) = (p.entries()[i], q.entries()[i], u.entries()[i], v.entries()[i]);
        (p == 0 && q == 0) || (u == 0 && v == 0) || (p == 0 && u == 0) || (q == 0 && v == 0)
    })
}

/// Prediction for an arbitrary pair on every `A²_m` at once, or `None` where it is
/// not decided without fixing `m`:
///
/// * a constant symbol commutes with everything;
/// * two balanced symbols follow [`predict_commutes`];
/// * `(1+r²)^{−t}` has eigenvalues strictly monotone in `|α|`, so it commutes with an
///   unbalanced symbol exactly when `|p| = |q|`;
/// * `∏ r_j^{2c_j}(1+r²)^{−t}` commutes with an unbalanced symbol that keeps `s_j` for
///   every `c_j > 0` and keeps `|s|` (or has `t = |c|`, where `|s|` drops out).
pub fn predict_commutes_extended<T: Real>(
    sym1: &QuasiHomogeneousSymbol<T>,
    sym2: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
) -> Result<Option<bool>> {
    sym1.check_partition(k)?;
    sym2.check_partition(k)?;
    let constant = |s: &QuasiHomogeneousSymbol<T>| s.is_quasi_radial() && s.radial().is_constant();
    if constant(sym1) || constant(sym2) {
        return Ok(Some(true));
    }
    let (b1, b2) = (sym1.is_balanced(k)?, sym2.is_balanced(k)?);
    if b1 && b2 {
        return Ok(Some(coordinate_rule(sym1.p(), sym1.q(), sym2.p(), sym2.q())));
    }
    let Some((radial, other)) = radial_and_shift(sym1, sym2) else {
        return Ok(None);
    };
    let same_total = other.p().degree() == other.q().degree();
    Ok(match radial.radial() {
        QuasiRadialSymbol::InversePower { .. } => Some(same_total),
        QuasiRadialSymbol::Tabulated(_) => None,
        a => {
            let params = a.closed_form(k.len()).expect("closed-form family");
            let (dp, dq) = (block_degrees(other.p(), k)?, block_degrees(other.q(), k)?);
            let keeps_weighted = params.c.iter().zip(dp.iter().zip(&dq)).all(|(&c, (x, y))| c == 0 || x == y);
            let c_total: u32 = params.c.iter().sum();
            (keeps_weighted && (same_total || params.t == c_total)).then_some(true)
        }
    })
}

/// `(quasi-radial, other)` when exactly one symbol is quasi-radial.
fn radial_and_shift<'a, T: Real>(
    sym1: &'a QuasiHomogeneousSymbol<T>,
    sym2: &'a QuasiHomogeneousSymbol<T>,
) -> Option<(&'a QuasiHomogeneousSymbol<T>, &'a QuasiHomogeneousSymbol<T>)> {
    match (sym1.is_quasi_radial(), sym2.is_quasi_radial()) {
        (true, false) => Some((sym1, sym2)),
        (false, true) => Some((sym2, sym1)),
        _ => None,
    }
}

/// Whether `T_sym` is the zero operator on `A²_m`: no `α ∈ J_n(m)` has `α + p − q ∈ J_n(m)`.
pub fn vanishes_on<T: Real>(sym: &QuasiHomogeneousSymbol<T>, m: u32) -> bool {
    sym.radial().is_identically_zero() || sym.p().degree() > m || sym.q().degree() > m
}

/// Whether both `T_1 T_2` and `T_2 T_1` send every monomial of `A²_m` out of `J_n(m)`.
pub fn products_vanish_on<T: Real>(
    sym1: &QuasiHomogeneousSymbol<T>,
    sym2: &QuasiHomogeneousSymbol<T>,
    m: u32,
) -> Result<bool> {
    let step = |a: &MultiIndex, s: &QuasiHomogeneousSymbol<T>| -> Result<Option<MultiIndex>> {
        Ok(a.shift(s.p(), s.q())?.filter(|b| b.degree() <= m))
    };
    for alpha in enumerate_basis(sym1.n(), m).iter() {
        for (x, y) in [(sym1, sym2), (sym2, sym1)] {
            if let Some(b) = step(alpha, x)? {
                if step(&b, y)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Prediction on `A²_m` alone. Beyond [`predict_commutes_extended`]:
///
/// * an operator that vanishes, or a pair whose products both vanish, commutes;
/// * a closed-form quasi-radial symbol against a shift with a closed-form (hence
///   nowhere-vanishing) coefficient commutes iff its exact eigenvalues agree at `α`
///   and `α + p − q` for every `α` the shift keeps in `J_n(m)`.
pub fn predict_commutes_on<T: Real>(
    sym1: &QuasiHomogeneousSymbol<T>,
    sym2: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    m: u32,
) -> Result<Option<bool>> {
    sym1.check_partition(k)?;
    sym2.check_partition(k)?;
    if vanishes_on(sym1, m) || vanishes_on(sym2, m) || products_vanish_on(sym1, sym2, m)? {
        return Ok(Some(true));
    }
    if let Some((radial, other)) = radial_and_shift(sym1, sym2) {
        if radial.radial().closed_form(k.len()).is_some() && other.radial().closed_form(k.len()).is_some() {
            if let Some(v) = exact_eigenvalue_match(radial.radial(), other, k, m)? {
                return Ok(Some(v));
            }
        }
    }
    predict_commutes_extended(sym1, sym2, k)
}

fn exact_eigenvalue_match<T: Real>(
    a: &QuasiRadialSymbol<T>,
    shift: &QuasiHomogeneousSymbol<T>,
    k: &Partition,
    m: u32,
) -> Result<Option<bool>> {
    for alpha in enumerate_basis(k.n(), m).iter() {
        let Some(beta) = alpha.shift(shift.p(), shift.q())?.filter(|b| b.degree() <= m) else { continue };
        let (s, t) = (block_degrees(alpha, k)?, block_degrees(&beta, k)?);
        if s == t {
            continue;
        }
        match (gamma_quasi_radial_exact(a, k, m, &s)?, gamma_quasi_radial_exact(a, k, m, &t)?) {
            (Some(x), Some(y)) if x != y => return Ok(Some(false)),
            (Some(_), Some(_)) => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(true))
}
