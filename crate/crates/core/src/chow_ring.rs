//! The Chow ring of a product of projective spaces.
//!
//! For `P = P^{m_1} x ... x P^{m_k}` the ring is
//! `Z[h_1, ..., h_k] / (h_1^{m_1+1}, ..., h_k^{m_k+1})`, where `h_i` is the
//! pull-back of the hyperplane class of the i-th factor. Coefficients are kept
//! as exact rationals so that Todd classes live in the same ring.
//!
//! Classes are stored sparsely and canonically: no zero coefficient is ever
//! stored, and monomials killed by the truncation ideal are dropped as soon
//! as they are produced. Equality of classes is therefore structural.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product of projective spaces, given by its factor dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AmbientSpace {
    dims: Arc<[u32]>,
}

impl AmbientSpace {
    pub fn new(dims: &[u32]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidAmbient(
                "at least one factor is required".into(),
            ));
        }
        if let Some(pos) = dims.iter().position(|&m| m == 0) {
            return Err(Error::InvalidAmbient(format!(
                "factor {pos} has dimension 0; every factor must have dimension >= 1"
            )));
        }
        Ok(Self { dims: dims.into() })
    }

    /// `P^1 x P^n`.
    pub fn line_times(n: u32) -> Result<Self> {
        Self::new(&[1, n])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factor_count(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `sum m_i`.
    pub fn dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn generator(&self, index: usize) -> Result<ChowClass> {
        ChowClass::generator(self, index)
    }

    /// Exponent vector of the point class `h_1^{m_1} ... h_k^{m_k}`.
    pub fn top_exponents(&self) -> ExponentVector {
        ExponentVector(self.dims.to_vec())
    }

    /// All monomials of the basis, in lexicographic order.
    pub fn monomial_basis(&self) -> Vec<ExponentVector> {
        let mut out = vec![Vec::with_capacity(self.dims.len())];
        for &m in self.dims.iter() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=m).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(ExponentVector).collect()
    }

    /// Basis monomials of total degree `degree`.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<ExponentVector> {
        self.monomial_basis()
            .into_iter()
            .filter(|e| e.degree() == degree)
            .collect()
    }

    pub(crate) fn ensure_same(&self, other: &AmbientSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl TryFrom<Vec<u32>> for AmbientSpace {
    type Error = Error;

    fn try_from(dims: Vec<u32>) -> Result<Self> {
        Self::new(&dims)
    }
}

impl From<AmbientSpace> for Vec<u32> {
    fn from(p: AmbientSpace) -> Self {
        p.dims.to_vec()
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "P^{m}")?;
        }
        Ok(())
    }
}

/// Exponents of a monomial `h_1^{e_1} ... h_k^{e_k}`. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    /// Returns `Ok(None)` when the monomial is killed by the truncation ideal.
    pub fn new(ambient: &AmbientSpace, exps: Vec<u32>) -> Result<Option<Self>> {
        if exps.len() != ambient.factor_count() {
            return Err(Error::LengthMismatch {
                expected: ambient.factor_count(),
                found: exps.len(),
            });
        }
        if exps.iter().zip(ambient.dims()).any(|(e, m)| e > m) {
            return Ok(None);
        }
        Ok(Some(Self(exps)))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn product(&self, other: &Self, bounds: &[u32]) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for ((a, b), m) in self.0.iter().zip(&other.0).zip(bounds) {
            let e = a + b;
            if e > *m {
                return None;
            }
            out.push(e);
        }
        Some(Self(out))
    }
}

/// An element of the Chow ring with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChowClassRepr", into = "ChowClassRepr")]
pub struct ChowClass {
    ambient: AmbientSpace,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl ChowClass {
    pub fn zero(ambient: &AmbientSpace) -> Self {
        Self {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &AmbientSpace) -> Self {
        Self::constant(ambient, BigRational::one())
    }

    pub fn constant(ambient: &AmbientSpace, c: BigRational) -> Self {
        let mut out = Self::zero(ambient);
        out.accumulate(ExponentVector(vec![0; ambient.factor_count()]), c);
        out
    }

    pub fn generator(ambient: &AmbientSpace, index: usize) -> Result<Self> {
        if index >= ambient.factor_count() {
            return Err(Error::IndexOutOfRange {
                index,
                factors: ambient.factor_count(),
            });
        }
        let mut exps = vec![0; ambient.factor_count()];
        exps[index] = 1;
        // m_i >= 1, so h_i is never truncated.
        Self::monomial(ambient, exps, BigRational::one())
    }

    /// `coeff * h^exps`; zero if the monomial is truncated.
    pub fn monomial(ambient: &AmbientSpace, exps: Vec<u32>, coeff: BigRational) -> Result<Self> {
        let mut out = Self::zero(ambient);
        if let Some(e) = ExponentVector::new(ambient, exps)? {
            out.accumulate(e, coeff);
        }
        Ok(out)
    }

    /// Builds a class from arbitrary terms, canonicalizing as it goes.
    pub fn from_terms<I>(ambient: &AmbientSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = Self::zero(ambient);
        for (exps, c) in terms {
            if let Some(e) = ExponentVector::new(ambient, exps)? {
                out.accumulate(e, c);
            }
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .iter()
            .find(|(e, _)| e.exps() == exps)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    fn accumulate(&mut self, exps: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ambient.ensure_same(&other.ambient)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ambient.ensure_same(&other.ambient)?;
        let bounds = self.ambient.dims();
        let mut out = Self::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if let Some(e) = ea.product(eb, bounds) {
                    out.accumulate(e, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ambient);
        }
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(&self.ambient);
        for _ in 0..exponent {
            if out.is_zero() {
                break;
            }
            out = out.checked_mul(self).expect("powers share one ambient");
        }
        out
    }

    /// Degree map: the coefficient of the point class.
    pub fn integrate(&self) -> BigRational {
        self.terms
            .get(&self.ambient.top_exponents())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `∫ self · other` without forming the full product: each monomial pairs
    /// only with its complement under the point class.
    pub fn integrate_product(&self, other: &Self) -> Result<BigRational> {
        self.ambient.ensure_same(&other.ambient)?;
        let top = self.ambient.dims();
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let complement = ExponentVector(top.iter().zip(e.exps()).map(|(m, x)| m - x).collect());
            if let Some(d) = other.terms.get(&complement) {
                total += c * d;
            }
        }
        Ok(total)
    }

    /// The part of total degree `degree`.
    pub fn grade_component(&self, degree: u32) -> Self {
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.ambient.factor_count()])
    }
}

impl fmt::Display for ChowClass {
    /// Canonical text form `c * h1^e1*...*hk^ek + ...`; factors with exponent 0 are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let magnitude = if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            write!(f, "{magnitude}")?;
            let mut first = true;
            for (slot, &exp) in e.exps().iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                f.write_str(if first { " * " } else { "*" })?;
                first = false;
                write!(f, "h{}^{}", slot + 1, exp)?;
            }
        }
        Ok(())
    }
}

/// Structured wire form of a [`ChowClass`]. Numerators and denominators are
/// decimal strings so that arbitrary-precision values survive JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct ChowClassRepr {
    ambient: AmbientSpace,
    terms: Vec<TermRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    numerator: String,
    denominator: String,
}

impl From<ChowClass> for ChowClassRepr {
    fn from(x: ChowClass) -> Self {
        Self {
            terms: x
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exps: e.exps().to_vec(),
                    numerator: c.numer().to_string(),
                    denominator: c.denom().to_string(),
                })
                .collect(),
            ambient: x.ambient,
        }
    }
}

impl TryFrom<ChowClassRepr> for ChowClass {
    type Error = Error;

    fn try_from(repr: ChowClassRepr) -> Result<Self> {
        let mut out = ChowClass::zero(&repr.ambient);
        for t in repr.terms {
            let parse = |s: &str| {
                s.parse::<BigInt>().map_err(|_| Error::Parse {
                    what: "integer",
                    token: s.to_string(),
                })
            };
            let num = parse(&t.numerator)?;
            let den = parse(&t.denominator)?;
            if den.is_zero() {
                return Err(Error::Parse {
                    what: "nonzero denominator",
                    token: t.denominator,
                });
            }
            let token = format!("{:?}", t.exps);
            let e = ExponentVector::new(&repr.ambient, t.exps)?.ok_or(Error::Parse {
                what: "exponent vector within the truncation bounds",
                token,
            })?;
            out.accumulate(e, BigRational::new(num, den));
        }
        Ok(out)
    }
}

/// Shorthand for an integer-valued rational.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Converts an exact rational to `i64`, failing if it is not integral.
pub fn to_integer(value: &BigRational, what: &'static str) -> Result<i64> {
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "{what} = {value} is not an integer"
        )));
    }
    i64::try_from(value.to_integer()).map_err(|_| Error::Overflow(what))
}
