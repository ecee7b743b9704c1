//! Test-only oracles and generators. Nothing here calls the ring arithmetic
//! under test except to convert between representations.

#![allow(dead_code)]

use k3_chow::char_classes::{Multidegree, SplitBundle};
use k3_chow::chow_ring::{rational, AmbientSpace, ChowClass};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Dense coefficient array over all exponent vectors with `e_i <= bound_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub bounds: Vec<u32>,
    pub coeffs: Vec<BigRational>,
}

impl Dense {
    pub fn zero(bounds: &[u32]) -> Self {
        let size = bounds.iter().map(|&b| b as usize + 1).product();
        Self {
            bounds: bounds.to_vec(),
            coeffs: vec![BigRational::zero(); size],
        }
    }

    fn index(&self, exps: &[u32]) -> usize {
        let mut idx = 0;
        for (e, b) in exps.iter().zip(&self.bounds) {
            idx = idx * (*b as usize + 1) + *e as usize;
        }
        idx
    }

    fn exps(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.bounds.len()];
        for (slot, b) in self.bounds.iter().enumerate().rev() {
            let base = *b as usize + 1;
            out[slot] = (idx % base) as u32;
            idx /= base;
        }
        out
    }

    pub fn from_class(x: &ChowClass) -> Self {
        let mut d = Self::zero(x.ambient().dims());
        for (e, c) in x.terms() {
            let i = d.index(e.exps());
            d.coeffs[i] = c.clone();
        }
        d
    }

    /// Full (untruncated) product; bounds add.
    pub fn mul_untruncated(&self, other: &Self) -> Self {
        let bounds: Vec<u32> = self
            .bounds
            .iter()
            .zip(&other.bounds)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = Self::zero(&bounds);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.exps(i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let eb = other.exps(j);
                let e: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                let k = out.index(&e);
                out.coeffs[k] += a * b;
            }
        }
        out
    }

    /// Drops every monomial with some `e_i > m_i`.
    pub fn reduce(&self, ambient: &AmbientSpace) -> ChowClass {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps(i), c.clone()))
            .filter(|(e, _)| e.iter().zip(ambient.dims()).all(|(x, m)| x <= m))
            .collect::<Vec<_>>();
        ChowClass::from_terms(ambient, terms).unwrap()
    }
}

/// Dense multiply then reduce modulo `(h_i^{m_i+1})`.
pub fn dense_mul(x: &ChowClass, y: &ChowClass) -> ChowClass {
    Dense::from_class(x)
        .mul_untruncated(&Dense::from_class(y))
        .reduce(x.ambient())
}

pub fn random_ambient(rng: &mut ChaCha8Rng, max_total: u32) -> AmbientSpace {
    loop {
        let k = rng.gen_range(1..=3);
        let dims: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
        if dims.iter().sum::<u32>() <= max_total {
            return AmbientSpace::new(&dims).unwrap();
        }
    }
}

/// A random class with small integer or half-integer coefficients.
pub fn random_class(rng: &mut ChaCha8Rng, ambient: &AmbientSpace) -> ChowClass {
    let basis = ambient.monomial_basis();
    let n_terms = rng.gen_range(0..=basis.len().min(6));
    let terms = (0..n_terms).map(|_| {
        let e = basis[rng.gen_range(0..basis.len())].exps().to_vec();
        let num: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=2);
        (e, BigRational::new(num.into(), den.into()))
    });
    ChowClass::from_terms(ambient, terms).unwrap()
}

pub fn random_multidegree(rng: &mut ChaCha8Rng, factors: usize, range: i64) -> Multidegree {
    Multidegree::new(
        (0..factors)
            .map(|_| rng.gen_range(-range..=range))
            .collect(),
    )
}

pub fn random_bundle(
    rng: &mut ChaCha8Rng,
    factors: usize,
    max_rank: usize,
    range: i64,
) -> SplitBundle {
    let rank = rng.gen_range(1..=max_rank);
    SplitBundle::new(
        (0..rank)
            .map(|_| random_multidegree(rng, factors, range))
            .collect(),
    )
    .unwrap()
}

pub fn int(n: i64) -> BigRational {
    rational(n)
}
