//! Partitions, multi-indices and the graded-lex monomial basis `J_n(m)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Block structure `k = (k_1, ..., k_l)` of `n = k_1 + ... + k_l`, parts nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    offsets: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("at least one block is required".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an empty block")));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not nondecreasing")));
        }
        // offsets[j] = k_1 + ... + k_{j-1}; the empty sum is 0
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &k in &parts {
            acc += k;
            offsets.push(acc);
        }
        Ok(Self { parts, offsets })
    }

    /// The radial partition `(n)`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The separately radial partition `(1, ..., 1)`.
    pub fn separate(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn n(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Number of blocks `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> usize {
        self.parts[j]
    }

    /// Coordinate range of block `j` (0-based).
    pub fn block(&self, j: usize) -> Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..self.len()).map(move |j| self.block(j))
    }

    /// Block containing coordinate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        debug_assert!(i < self.n());
        self.offsets[1..].iter().position(|&end| i < end).unwrap()
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: len });
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(k: Partition) -> Self {
        k.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

/// Multi-index `α ∈ ℕⁿ` with cached degree `|α|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiIndex {
    entries: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        let degree = entries.iter().sum();
        Self { entries, degree }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// `e_i` scaled by `value`.
    pub fn unit(n: usize, i: usize, value: u32) -> Self {
        let mut entries = vec![0; n];
        entries[i] = value;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    fn check_same_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_len(other)?;
        Ok(Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect()))
    }

    /// `α + p − q`, or `None` when a component would be negative.
    pub fn shift(&self, p: &Self, q: &Self) -> Result<Option<Self>> {
        self.check_same_len(p)?;
        self.check_same_len(q)?;
        let mut out = Vec::with_capacity(self.len());
        for ((&a, &pi), &qi) in self.entries.iter().zip(&p.entries).zip(&q.entries) {
            match (a + pi).checked_sub(qi) {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(Self::new(out)))
    }

    /// `Σ α_i β_i`.
    pub fn dot(&self, other: &Self) -> Result<u64> {
        self.check_same_len(other)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(&a, &b)| a as u64 * b as u64).sum())
    }

    /// The sub-index `α_(j)` of block `j`.
    pub fn block<'a>(&'a self, k: &Partition, j: usize) -> &'a [u32] {
        &self.entries[k.block(j)]
    }

    /// Restriction to block `j`, zero elsewhere (`p̃_(j)`).
    pub fn restrict_to_block(&self, k: &Partition, j: usize) -> Self {
        let range = k.block(j);
        Self::new(
            self.entries
                .iter()
                .enumerate()
                .map(|(i, &a)| if range.contains(&i) { a } else { 0 })
                .collect(),
        )
    }

    /// `α! = α_1! ... α_n!` exactly.
    pub fn factorial_exact(&self) -> BigUint {
        self.entries.iter().map(|&a| factorial_exact(a as u64)).product()
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(entries: Vec<u32>) -> Self {
        Self::new(entries)
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(a: MultiIndex) -> Self {
        a.entries
    }
}

/// Graded lexicographic: lower degree first, then larger leading entries first,
/// so that `(1,0)` precedes `(0,1)`.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

fn write_tuple<D: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[D]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Ordered basis `J_n(m) = {α : |α| ≤ m}`.
#[derive(Clone, Debug)]
pub struct BasisOrder {
    n: usize,
    m: u32,
    elems: Vec<MultiIndex>,
    index: HashMap<Vec<u32>, usize>,
}

impl BasisOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.elems[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[MultiIndex] {
        &self.elems
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index.get(alpha.entries()).copied()
    }
}

impl<'a> IntoIterator for &'a BasisOrder {
    type Item = &'a MultiIndex;
    type IntoIter = std::slice::Iter<'a, MultiIndex>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// All `α ∈ ℕⁿ` with `|α| ≤ m`, in graded-lex order.
pub fn enumerate_basis(n: usize, m: u32) -> BasisOrder {
    assert!(n >= 1, "enumerate_basis requires n >= 1");
    let mut elems = Vec::new();
    let mut buf = vec![0u32; n];
    for d in 0..=m {
        compositions(d, 0, &mut buf, &mut elems);
    }
    let index = elems.iter().enumerate().map(|(i, a)| (a.entries.clone(), i)).collect();
    BasisOrder { n, m, elems, index }
}

fn compositions(rest: u32, pos: usize, buf: &mut [u32], out: &mut Vec<MultiIndex>) {
    if pos + 1 == buf.len() {
        buf[pos] = rest;
        out.push(MultiIndex::new(buf.to_vec()));
        return;
    }
    for v in (0..=rest).rev() {
        buf[pos] = v;
        compositions(rest - v, pos + 1, buf, out);
    }
    buf[pos] = 0;
}

/// `(|α_(1)|, ..., |α_(l)|)`.
pub fn block_degrees(alpha: &MultiIndex, k: &Partition) -> Result<Vec<u32>> {
    k.check_len(alpha.len())?;
    Ok(k.blocks().map(|r| alpha.entries[r].iter().sum()).collect())
}

pub fn factorial_exact(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient by the multiplicative recurrence in floating point; every
/// intermediate value is an integer, so the result is exact below 2^53 in f64.
pub fn binomial<T: Real>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_u64(n - i).unwrap() / T::from_u64(i + 1).unwrap();
    }
    acc
}

/// `α!(m−|α|)!/m!`, the squared norm of `z^α` in `A²_m`, exactly.
pub fn monomial_norm_sq_exact(alpha: &MultiIndex, m: u32) -> Result<BigRational> {
    if alpha.degree() > m {
        return Err(Error::DegreeOverflow { degree: alpha.degree(), m });
    }
    let num = alpha.factorial_exact() * factorial_exact((m - alpha.degree()) as u64);
    let den = factorial_exact(m as u64);
    Ok(BigRational::new(num.into(), den.into()))
}

/// `α!(m−|α|)!/m!` in floating point, as the reciprocal of the multinomial
/// coefficient `m!/(α_1! ... α_n! (m−|α|)!)` built from successive binomials.
pub fn monomial_norm_sq<T: Real>(alpha: &MultiIndex, m: u32) -> Result<T> {
    if alpha.degree() > m {
        return Err(Error::DegreeOverflow { degree: alpha.degree(), m });
    }
    let mut remaining = m as u64;
    let mut multinomial = T::one();
    for &a in alpha.entries() {
        multinomial = multinomial * binomial::<T>(remaining, a as u64);
        remaining -= a as u64;
    }
    Ok(multinomial.recip())
}
