//! Characteristic classes of line bundles and split vector bundles on a
//! product of projective spaces, and the Todd class of its tangent bundle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chow_ring::{rational, AmbientSpace, ChowClass};
use crate::error::{Error, Result};

/// The line bundle `O_P(d_1, ..., d_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(degs: Vec<i64>) -> Self {
        Self(degs)
    }

    pub fn zero(factors: usize) -> Self {
        Self(vec![0; factors])
    }

    pub fn degs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Componentwise non-negative and not the trivial bundle.
    pub fn is_effective_nonzero(&self) -> bool {
        self.0.iter().all(|&d| d >= 0) && !self.is_zero()
    }

    /// Tensor product of line bundles.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self ⊗ other^{-1}`.
    pub fn untwist(&self, other: &Self) -> Result<Self> {
        self.same_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn dual(&self) -> Self {
        Self(self.0.iter().map(|d| -d).collect())
    }

    pub fn check_on(&self, ambient: &AmbientSpace) -> Result<()> {
        if self.0.len() != ambient.factor_count() {
            return Err(Error::LengthMismatch {
                expected: ambient.factor_count(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    fn same_len(&self, other: &Self) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::LengthMismatch {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        Ok(())
    }

    /// `O(2,3)` style label.
    pub fn sheaf_label(&self) -> String {
        format!("O({self})")
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Multidegree {
    type Err = Error;

    /// Parses `d1,d2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let degs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    what: "multidegree entry",
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(degs))
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// A direct sum of line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Multidegree>", into = "Vec<Multidegree>")]
pub struct SplitBundle {
    summands: Vec<Multidegree>,
}

impl SplitBundle {
    pub fn new(summands: Vec<Multidegree>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return Err(Error::InvalidRank(
                "a split bundle needs at least one summand".into(),
            ));
        };
        let len = first.len();
        if let Some(bad) = summands.iter().find(|s| s.len() != len) {
            return Err(Error::LengthMismatch {
                expected: len,
                found: bad.len(),
            });
        }
        Ok(Self { summands })
    }

    pub fn line(l: Multidegree) -> Self {
        Self { summands: vec![l] }
    }

    pub fn summands(&self) -> &[Multidegree] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Self::new(summands)
    }

    /// Same bundle with summands sorted lexicographically.
    pub fn canonical(&self) -> Self {
        let mut summands = self.summands.clone();
        summands.sort();
        Self { summands }
    }

    pub fn check_on(&self, ambient: &AmbientSpace) -> Result<()> {
        self.summands.iter().try_for_each(|s| s.check_on(ambient))
    }

    /// `O(1,1) ⊕ O(1,3)` style label.
    pub fn sheaf_label(&self) -> String {
        self.summands
            .iter()
            .map(Multidegree::sheaf_label)
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

impl TryFrom<Vec<Multidegree>> for SplitBundle {
    type Error = Error;

    fn try_from(v: Vec<Multidegree>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SplitBundle> for Vec<Multidegree> {
    fn from(b: SplitBundle) -> Self {
        b.summands
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SplitBundle {
    type Err = Error;

    /// Parses `d11,d12;d21,d22;...`.
    fn from_str(s: &str) -> Result<Self> {
        let summands = s
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Multidegree>>>()?;
        Self::new(summands)
    }
}

/// First Chern class `sum d_i h_i`.
pub fn c1(ambient: &AmbientSpace, line: &Multidegree) -> Result<ChowClass> {
    line.check_on(ambient)?;
    let mut out = ChowClass::zero(ambient);
    for (i, &d) in line.degs().iter().enumerate() {
        if d != 0 {
            out = out.checked_add(&ambient.generator(i)?.scale(&rational(d)))?;
        }
    }
    Ok(out)
}

/// Total Chern class `prod (1 + c1(L_i))`.
pub fn total_chern(ambient: &AmbientSpace, bundle: &SplitBundle) -> Result<ChowClass> {
    bundle.check_on(ambient)?;
    let one = ChowClass::one(ambient);
    bundle.summands().iter().try_fold(one.clone(), |acc, l| {
        acc.checked_mul(&one.checked_add(&c1(ambient, l)?)?)
    })
}

/// Top Chern class `prod c1(L_i)`: the fundamental class of the zero locus of
/// a general section.
pub fn top_chern(ambient: &AmbientSpace, bundle: &SplitBundle) -> Result<ChowClass> {
    bundle.check_on(ambient)?;
    if bundle.rank() as u64 > u64::from(ambient.dim()) {
        return Err(Error::InvalidRank(format!(
            "rank {} exceeds dim {} of {ambient}",
            bundle.rank(),
            ambient.dim()
        )));
    }
    bundle
        .summands()
        .iter()
        .try_fold(ChowClass::one(ambient), |acc, l| {
            acc.checked_mul(&c1(ambient, l)?)
        })
}

/// Determinant line bundle.
pub fn det_bundle(bundle: &SplitBundle) -> Multidegree {
    let mut degs = vec![0; bundle.summands()[0].len()];
    for s in bundle.summands() {
        for (acc, d) in degs.iter_mut().zip(s.degs()) {
            *acc += d;
        }
    }
    Multidegree(degs)
}

/// `exp(x) = sum_{d=0}^{dim P} x^d / d!`; `x` must have no constant term.
pub fn exp_class(x: &ChowClass) -> Result<ChowClass> {
    if !x.constant_term().is_zero() {
        return Err(Error::NotNilpotent(x.to_string()));
    }
    let ambient = x.ambient();
    let mut out = ChowClass::one(ambient);
    let mut power = ChowClass::one(ambient);
    let mut factorial = BigInt::one();
    for d in 1..=ambient.dim() {
        power = power.checked_mul(x)?;
        if power.is_zero() {
            break;
        }
        factorial *= d;
        out = out.checked_add(&power.scale(&BigRational::new(BigInt::one(), factorial.clone())))?;
    }
    Ok(out)
}

/// Chern character `sum_i exp(c1(L_i))`.
pub fn chern_character(ambient: &AmbientSpace, bundle: &SplitBundle) -> Result<ChowClass> {
    bundle.check_on(ambient)?;
    bundle
        .summands()
        .iter()
        .try_fold(ChowClass::zero(ambient), |acc, l| {
            acc.checked_add(&exp_class(&c1(ambient, l)?)?)
        })
}

/// Coefficients `q_0, ..., q_degree` of `x / (1 - e^{-x})`.
///
/// Obtained by inverting the power series `(1 - e^{-x}) / x`, whose n-th
/// coefficient is `(-1)^n / (n+1)!`.
pub fn todd_series(degree: u32) -> Vec<BigRational> {
    let n = degree as usize;
    let mut inv_fact = Vec::with_capacity(n + 1);
    let mut fact = BigInt::one();
    for k in 0..=n {
        fact *= k + 1;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        inv_fact.push(BigRational::new(BigInt::from(sign), fact.clone()));
    }
    let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
    q.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for k in 1..=m {
            acc -= &inv_fact[k] * &q[m - k];
        }
        q.push(acc);
    }
    q
}

/// Todd class of `T_P = ⊕ pr_i^* T_{P^{m_i}}`, i.e. `prod_i Q(h_i)^{m_i + 1}`.
pub fn todd_ambient(ambient: &AmbientSpace) -> ChowClass {
    let coeffs = todd_series(ambient.dim());
    let mut out = ChowClass::one(ambient);
    for (i, &m) in ambient.dims().iter().enumerate() {
        let factor = ChowClass::from_terms(
            ambient,
            (0..=m).map(|e| {
                let mut exps = vec![0; ambient.factor_count()];
                exps[i] = e;
                (exps, coeffs[e as usize].clone())
            }),
        )
        .expect("exponent vectors sized to the ambient");
        out = out
            .checked_mul(&factor.pow(m + 1))
            .expect("factors share one ambient");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn bundle(s: &str) -> SplitBundle {
        s.parse().unwrap()
    }

    fn p1p(n: u32) -> AmbientSpace {
        AmbientSpace::line_times(n).unwrap()
    }

    fn class(p: &AmbientSpace, terms: &[(&[u32], i64)]) -> ChowClass {
        ChowClass::from_terms(p, terms.iter().map(|(e, c)| (e.to_vec(), rational(*c)))).unwrap()
    }

    #[test]
    fn first_chern_class() {
        let p = p1p(3);
        assert_eq!(
            c1(&p, &md(&[5, 1])).unwrap(),
            class(&p, &[(&[1, 0], 5), (&[0, 1], 1)])
        );
        assert!(c1(&p, &md(&[0, 0])).unwrap().is_zero());
        let p2 = p1p(2);
        assert_eq!(
            c1(&p2, &md(&[2, 3])).unwrap().to_string(),
            "3 * h2^1 + 2 * h1^1"
        );
        assert!(matches!(
            c1(&p, &md(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn total_chern_case_two() {
        let p = p1p(3);
        let e = bundle("1,1;1,3");
        let expected = class(
            &p,
            &[
                (&[0, 0], 1),
                (&[1, 0], 2),
                (&[0, 1], 4),
                (&[1, 1], 4),
                (&[0, 2], 3),
            ],
        );
        assert_eq!(total_chern(&p, &e).unwrap(), expected);
        assert_eq!(total_chern(&p, &bundle("0,0")).unwrap(), ChowClass::one(&p));
    }

    #[test]
    fn total_chern_case_three_top_piece() {
        let p = p1p(4);
        let c = total_chern(&p, &bundle("0,3;1,1;1,1")).unwrap();
        assert_eq!(
            c.grade_component(3),
            class(&p, &[(&[1, 2], 6), (&[0, 3], 3)])
        );
    }

    #[test]
    fn top_chern_classes() {
        assert_eq!(
            top_chern(&p1p(2), &bundle("2,3")).unwrap(),
            class(&p1p(2), &[(&[1, 0], 2), (&[0, 1], 3)])
        );
        assert_eq!(
            top_chern(&p1p(3), &bundle("1,1;1,3")).unwrap(),
            class(&p1p(3), &[(&[1, 1], 4), (&[0, 2], 3)])
        );
        assert!(top_chern(&p1p(3), &bundle("0,0;1,3")).unwrap().is_zero());
        let too_big = bundle("1,1;1,1;1,1;1,1");
        assert!(matches!(
            top_chern(&p1p(2), &too_big),
            Err(Error::InvalidRank(_))
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_bundle(&bundle("1,1;1,3")), md(&[2, 4]));
        assert_eq!(det_bundle(&bundle("0,3;1,1;1,1")), md(&[2, 5]));
        assert_eq!(det_bundle(&bundle("4,-2")), md(&[4, -2]));
    }

    #[test]
    fn chern_character_examples() {
        let p = AmbientSpace::new(&[1, 1]).unwrap();
        assert_eq!(
            chern_character(&p, &bundle("0,0")).unwrap(),
            ChowClass::one(&p)
        );
        for (a, b) in [(2, 3), (-1, 4), (0, -5)] {
            let got = chern_character(&p, &SplitBundle::line(md(&[a, b]))).unwrap();
            let expected = class(
                &p,
                &[(&[0, 0], 1), (&[1, 0], a), (&[0, 1], b), (&[1, 1], a * b)],
            );
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let p = p1p(2);
        assert!(matches!(
            exp_class(&ChowClass::one(&p)),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn todd_series_matches_bernoulli_table() {
        // x/(1-e^{-x}) = 1 + x/2 + x^2/12 - x^4/720 + x^6/30240 - x^8/1209600
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let expected = [
            r(1, 1),
            r(1, 2),
            r(1, 12),
            r(0, 1),
            r(-1, 720),
            r(0, 1),
            r(1, 30240),
            r(0, 1),
            r(-1, 1209600),
        ];
        assert_eq!(todd_series(8), expected.to_vec());
    }

    #[test]
    fn todd_of_p1() {
        let p = AmbientSpace::new(&[1]).unwrap();
        let td = todd_ambient(&p);
        assert_eq!(td, class(&p, &[(&[0], 1), (&[1], 1)]));
        assert_eq!(td.grade_component(1), p.generator(0).unwrap());
    }

    #[test]
    fn todd_of_p2_is_one_plus_three_halves_h_plus_h2() {
        let p = AmbientSpace::new(&[2]).unwrap();
        let expected = ChowClass::from_terms(
            &p,
            [
                (vec![0], rational(1)),
                (vec![1], BigRational::new(3.into(), 2.into())),
                (vec![2], rational(1)),
            ],
        )
        .unwrap();
        assert_eq!(todd_ambient(&p), expected);
    }

    #[test]
    fn hrr_small_checks() {
        let p = AmbientSpace::new(&[1, 1]).unwrap();
        let chi = chern_character(&p, &bundle("0,0"))
            .unwrap()
            .checked_mul(&todd_ambient(&p))
            .unwrap()
            .integrate();
        assert_eq!(chi, rational(1));
        let p2 = AmbientSpace::new(&[2]).unwrap();
        let chi = chern_character(&p2, &bundle("1"))
            .unwrap()
            .checked_mul(&todd_ambient(&p2))
            .unwrap()
            .integrate();
        assert_eq!(chi, rational(3));
    }

    #[test]
    fn text_forms() {
        let b = bundle(" 0,3; 1,1 ;1,1");
        assert_eq!(b.to_string(), "0,3;1,1;1,1");
        assert_eq!(b.sheaf_label(), "O(0,3) ⊕ O(1,1) ⊕ O(1,1)");
        assert_eq!("2,-3".parse::<Multidegree>().unwrap(), md(&[2, -3]));
        let err = "2,x".parse::<Multidegree>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                what: "multidegree entry",
                token: "x".into()
            }
        );
        assert!(matches!(
            "1,1;1".parse::<SplitBundle>(),
            Err(Error::LengthMismatch { .. })
        ));
        assert!("".parse::<SplitBundle>().is_err());
    }

    #[test]
    fn canonical_bundle_order() {
        assert_eq!(bundle("1,3;1,1").canonical(), bundle("1,1;1,3"));
    }
}
