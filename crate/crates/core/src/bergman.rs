//! The weighted Bergman space `A²_m`, modeled on the chart `ℂⁿ` as polynomials of
//! degree at most `m` with the orthonormal basis `z^α / ‖z^α‖`.

use std::sync::Arc;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::{enumerate_basis, monomial_norm_sq, monomial_norm_sq_exact, BasisOrder, MultiIndex};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct BergmanSpace<T> {
    n: usize,
    m: u32,
    basis: BasisOrder,
    norm_sq: Vec<T>,
    norm_sq_exact: Vec<BigRational>,
}

impl<T: Real> BergmanSpace<T> {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("the dimension n must be positive".into()));
        }
        let basis = enumerate_basis(n, m);
        let norm_sq_exact = basis.iter().map(|a| monomial_norm_sq_exact(a, m)).collect::<Result<Vec<_>>>()?;
        let norm_sq = basis.iter().map(|a| monomial_norm_sq(a, m)).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, m, basis, norm_sq, norm_sq_exact })
    }

    pub fn shared(n: usize, m: u32) -> Result<Arc<Self>> {
        Self::new(n, m).map(Arc::new)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &BasisOrder {
        &self.basis
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.basis.index_of(alpha)
    }

    /// `‖z^α‖² = α!(m−|α|)!/m!` for the i-th basis element.
    pub fn norm_sq(&self, i: usize) -> T {
        self.norm_sq[i]
    }

    pub fn norm_sq_exact(&self, i: usize) -> &BigRational {
        &self.norm_sq_exact[i]
    }

    pub fn norm_consts(&self) -> &[T] {
        &self.norm_sq
    }

    /// Values of the orthonormal basis at `z`.
    pub fn basis_values(&self, z: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: z.len() });
        }
        Ok(self
            .basis
            .iter()
            .zip(&self.norm_sq)
            .map(|(a, &ns)| monomial(z, a) / ns.sqrt())
            .collect())
    }
}

/// `z^α`.
pub fn monomial<T: Real>(z: &[Complex<T>], alpha: &MultiIndex) -> Complex<T> {
    z.iter()
        .zip(alpha.entries())
        .fold(Complex::one(), |acc, (&zi, &a)| if a == 0 { acc } else { acc * zi.powu(a) })
}

/// Reproducing kernel `(1 + z·w̄)^m`.
pub fn kernel<T: Real>(z: &[Complex<T>], w: &[Complex<T>], m: u32) -> Complex<T> {
    let s: Complex<T> = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum();
    (Complex::<T>::one() + s).powu(m)
}

/// `⟨z^α, z^β⟩_m = δ_{αβ} α!(m−|α|)!/m!`.
pub fn inner_product_monomials<T: Real>(alpha: &MultiIndex, beta: &MultiIndex, m: u32) -> Result<Complex<T>> {
    check_pair(alpha, beta, m)?;
    if alpha != beta {
        return Ok(Complex::zero());
    }
    Ok(Complex::new(monomial_norm_sq(alpha, m)?, T::zero()))
}

pub fn inner_product_monomials_exact(alpha: &MultiIndex, beta: &MultiIndex, m: u32) -> Result<BigRational> {
    check_pair(alpha, beta, m)?;
    if alpha != beta {
        return Ok(BigRational::zero());
    }
    monomial_norm_sq_exact(alpha, m)
}

fn check_pair(alpha: &MultiIndex, beta: &MultiIndex, m: u32) -> Result<()> {
    if alpha.len() != beta.len() {
        return Err(Error::DimensionMismatch { expected: alpha.len(), found: beta.len() });
    }
    for d in [alpha.degree(), beta.degree()] {
        if d > m {
            return Err(Error::DegreeOverflow { degree: d, m });
        }
    }
    Ok(())
}

/// Element of `A²_m` by its coefficients in the orthonormal basis.
#[derive(Clone, Debug)]
pub struct SectionPoly<T> {
    space: Arc<BergmanSpace<T>>,
    coefficients: Vec<Complex<T>>,
}

impl<T: Real> SectionPoly<T> {
    pub fn new(space: Arc<BergmanSpace<T>>, coefficients: Vec<Complex<T>>) -> Result<Self> {
        if coefficients.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: coefficients.len() });
        }
        Ok(Self { space, coefficients })
    }

    /// The orthonormal basis element `e_α`.
    pub fn basis_element(space: Arc<BergmanSpace<T>>, alpha: &MultiIndex) -> Result<Self> {
        let i = space
            .index_of(alpha)
            .ok_or(Error::DegreeOverflow { degree: alpha.degree(), m: space.m() })?;
        let mut coefficients = vec![Complex::zero(); space.dim()];
        coefficients[i] = Complex::one();
        Ok(Self { space, coefficients })
    }

    pub fn space(&self) -> &Arc<BergmanSpace<T>> {
        &self.space
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }
}

pub fn evaluate_section<T: Real>(s: &SectionPoly<T>, z: &[Complex<T>]) -> Result<Complex<T>> {
    let values = s.space.basis_values(z)?;
    Ok(values.iter().zip(&s.coefficients).map(|(v, c)| v * c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, CMatrix};
    use crate::sampling::{fubini_study_point, stream_rng};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&[c(0.0, 0.0); 3], &[c(0.0, 0.0); 3], 7), c(1.0, 0.0));
        assert_eq!(kernel(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)], 2), c(4.0, 0.0));
        assert_eq!(kernel(&[c(0.0, 1.0)], &[c(0.0, 1.0)], 3), c(8.0, 0.0));
    }

    #[test]
    fn kernel_hermitian_symmetry() {
        let mut rng = stream_rng(11, 0);
        for _ in 0..1000 {
            let z: Vec<Complex<f64>> = fubini_study_point(&mut rng, 3);
            let w: Vec<Complex<f64>> = fubini_study_point(&mut rng, 3);
            let a = kernel(&z, &w, 4);
            let b = kernel(&w, &z, 4).conj();
            assert!((a - b).norm() <= 1e-15 * a.norm().max(1.0));
        }
    }

    #[test]
    fn kernel_gram_is_positive_semidefinite() {
        let mut rng = stream_rng(12, 0);
        for trial in 0..20 {
            let pts: Vec<Vec<Complex<f64>>> = (0..8).map(|_| fubini_study_point(&mut rng, 2)).collect();
            let m = 1 + trial % 4;
            let mut g = CMatrix::zeros(8, 8);
            for i in 0..8 {
                for j in 0..8 {
                    g.set(i, j, kernel(&pts[i], &pts[j], m));
                }
            }
            let ev = hermitian_eigenvalues(&g).unwrap();
            assert!(ev[0] >= -1e-10 * ev[7].max(1.0), "{ev:?}");
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product_monomials::<f64>(&mi(&[0, 0]), &mi(&[0, 0]), 3).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product_monomials::<f64>(&mi(&[1, 0]), &mi(&[0, 1]), 3).unwrap(), c(0.0, 0.0));
        // 1/2 frozen from direct radial quadrature of ‖z‖² in n=1, m=2 (mpmath)
        let v = inner_product_monomials::<f64>(&mi(&[1]), &mi(&[1]), 2).unwrap();
        assert!((v.re - 0.5).abs() < 1e-15);
        assert_eq!(
            inner_product_monomials_exact(&mi(&[1]), &mi(&[1]), 2).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert!(matches!(
            inner_product_monomials::<f64>(&mi(&[2, 1]), &mi(&[0, 0]), 2),
            Err(Error::DegreeOverflow { degree: 3, m: 2 })
        ));
    }

    #[test]
    fn section_evaluation() {
        let space = BergmanSpace::<f64>::shared(2, 3).unwrap();
        let one = SectionPoly::basis_element(space.clone(), &mi(&[0, 0])).unwrap();
        assert_eq!(evaluate_section(&one, &[c(0.3, 1.0), c(-2.0, 0.5)]).unwrap(), c(1.0, 0.0));
        let e = SectionPoly::basis_element(space.clone(), &mi(&[1, 1])).unwrap();
        assert_eq!(evaluate_section(&e, &[c(0.0, 0.0); 2]).unwrap(), c(0.0, 0.0));
        let line = BergmanSpace::<f64>::shared(1, 2).unwrap();
        let e1 = SectionPoly::basis_element(line, &mi(&[1])).unwrap();
        let v = evaluate_section(&e1, &[c(1.0, 0.0)]).unwrap();
        assert!((v - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(SectionPoly::new(space, vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn kernel_expands_in_orthonormal_basis() {
        // K(z, w) = Σ e_α(z) conj(e_α(w))
        let space = BergmanSpace::<f64>::new(3, 3).unwrap();
        let mut rng = stream_rng(13, 0);
        for _ in 0..50 {
            let z = fubini_study_point(&mut rng, 3);
            let w = fubini_study_point(&mut rng, 3);
            let ez = space.basis_values(&z).unwrap();
            let ew = space.basis_values(&w).unwrap();
            let sum: Complex<f64> = ez.iter().zip(&ew).map(|(a, b)| a * b.conj()).sum();
            let k = kernel(&z, &w, 3);
            assert!((sum - k).norm() <= 1e-12 * k.norm().max(1.0));
        }
    }
}
