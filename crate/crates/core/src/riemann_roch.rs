//! Euler characteristics of line bundles.
//!
//! Three independent routes are kept side by side:
//!
//! * [`euler_char_ambient`]: Hirzebruch-Riemann-Roch, `∫ ch(L)·td(T_P)`.
//! * [`euler_char_ambient_closed`]: the binomial product
//!   `prod_i C(d_i + m_i, m_i)`, extended polynomially to negative `d_i`.
//! * [`euler_char_ci`]: the Koszul alternating sum on a complete intersection.
//!
//! On a K3 surface [`k3_riemann_roch_h0`] gives the count `2 + D²/2` from the
//! restricted intersection pairing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::char_classes::{chern_character, todd_ambient, Multidegree, SplitBundle};
use crate::chow_ring::{to_integer, AmbientSpace, ChowClass};
use crate::error::{Error, Result};
use crate::k3_families::{check_k3, RestrictedPairing};

/// The zero locus of a general section of a split bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteIntersection {
    ambient: AmbientSpace,
    bundle: SplitBundle,
}

impl CompleteIntersection {
    pub fn new(ambient: AmbientSpace, bundle: SplitBundle) -> Result<Self> {
        bundle.check_on(&ambient)?;
        if bundle.rank() >= ambient.dim() as usize {
            return Err(Error::InvalidCompleteIntersection(format!(
                "rank {} must be below dim {} of {ambient}",
                bundle.rank(),
                ambient.dim()
            )));
        }
        if let Some(bad) = bundle.summands().iter().find(|s| !s.is_effective_nonzero()) {
            return Err(Error::InvalidCompleteIntersection(format!(
                "summand {} must be componentwise >= 0 and nonzero",
                bad.sheaf_label()
            )));
        }
        Ok(Self { ambient, bundle })
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }

    pub fn dim(&self) -> u32 {
        self.ambient.dim() - self.bundle.rank() as u32
    }
}

/// Hirzebruch-Riemann-Roch on a fixed ambient, with its Todd class computed once.
#[derive(Clone, Debug)]
pub struct HrrEngine {
    ambient: AmbientSpace,
    todd: ChowClass,
}

impl HrrEngine {
    pub fn new(ambient: &AmbientSpace) -> Self {
        Self {
            ambient: ambient.clone(),
            todd: todd_ambient(ambient),
        }
    }

    pub fn todd(&self) -> &ChowClass {
        &self.todd
    }

    pub fn chi(&self, line: &Multidegree) -> Result<i64> {
        let ch = chern_character(&self.ambient, &SplitBundle::line(line.clone()))?;
        let total = ch.integrate_product(&self.todd)?;
        to_integer(&total, "HRR Euler characteristic")
    }
}

/// `χ(P, L) = ∫ ch(L)·td(T_P)`.
pub fn euler_char_ambient(ambient: &AmbientSpace, line: &Multidegree) -> Result<i64> {
    HrrEngine::new(ambient).chi(line)
}

/// `χ(P, O(d)) = prod_i (d_i + 1)...(d_i + m_i) / m_i!`.
pub fn euler_char_ambient_closed(ambient: &AmbientSpace, line: &Multidegree) -> Result<i64> {
    line.check_on(ambient)?;
    let mut total = BigInt::one();
    for (&m, &d) in ambient.dims().iter().zip(line.degs()) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for j in 1..=i64::from(m) {
            num *= d + j;
            den *= j;
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(
            r == BigInt::from(0),
            "binomial polynomial is integer-valued"
        );
        total *= q;
    }
    i64::try_from(total).map_err(|_| Error::Overflow("binomial Euler characteristic"))
}

/// Koszul alternating sum `sum_I (-1)^{|I|} χ(P, D - sum_{i in I} d_i)`, with
/// each ambient term evaluated by `ambient_chi`.
pub fn koszul_sum<F>(
    s: &CompleteIntersection,
    twist: &Multidegree,
    mut ambient_chi: F,
) -> Result<i64>
where
    F: FnMut(&Multidegree) -> Result<i64>,
{
    twist.check_on(&s.ambient)?;
    let summands = s.bundle.summands();
    let mut total: i64 = 0;
    for mask in 0u64..(1u64 << summands.len()) {
        let mut d = twist.clone();
        for (i, l) in summands.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = d.untwist(l)?;
            }
        }
        let term = ambient_chi(&d)?;
        let signed = if mask.count_ones() % 2 == 0 {
            term
        } else {
            -term
        };
        total = total
            .checked_add(signed)
            .ok_or(Error::Overflow("Koszul sum"))?;
    }
    Ok(total)
}

/// `χ(S, O_S(D))` via the Koszul resolution and the binomial ambient formula.
pub fn euler_char_ci(s: &CompleteIntersection, twist: &Multidegree) -> Result<i64> {
    koszul_sum(s, twist, |d| euler_char_ambient_closed(&s.ambient, d))
}

/// `h^0(O_S(D)) = 2 + D_S²/2` on a K3 surface, assuming `h^1 = h^2 = 0`.
pub fn k3_riemann_roch_h0(
    s: &CompleteIntersection,
    twist: &Multidegree,
    pairing: &RestrictedPairing,
) -> Result<i64> {
    s.ambient.ensure_same(pairing.ambient())?;
    let check = check_k3(&s.ambient, &s.bundle);
    if !check.passed {
        return Err(Error::NotK3(check.detail));
    }
    let self_int = pairing.pair(twist, twist)?;
    if self_int % 2 != 0 {
        return Err(Error::Parity(format!(
            "D_S² = {self_int} is odd for D = {}",
            twist.sheaf_label()
        )));
    }
    Ok(2 + self_int / 2)
}

/// An Euler characteristic on `S` together with how it may be read as `h^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCount {
    pub twist: Multidegree,
    pub chi: i64,
    /// `Some(chi)` when the twist is componentwise `>= 0` and nonzero.
    pub h0: Option<i64>,
    /// Set whenever `h0` is reported: `h^i = 0` for `i > 0` is not verified.
    pub vanishing_assumed: bool,
}

impl SectionCount {
    pub fn from_chi(twist: Multidegree, chi: i64) -> Self {
        let as_h0 = twist.is_effective_nonzero();
        Self {
            twist,
            chi,
            h0: as_h0.then_some(chi),
            vanishing_assumed: as_h0,
        }
    }
}

/// Koszul χ on `S`, packaged with the h⁰ reporting policy.
pub fn section_count(s: &CompleteIntersection, twist: &Multidegree) -> Result<SectionCount> {
    Ok(SectionCount::from_chi(
        twist.clone(),
        euler_char_ci(s, twist)?,
    ))
}
