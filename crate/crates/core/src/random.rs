//! Seeded random polynomials, tensors and maps for the property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycNum;
use crate::group::ReflectionGroup;
use crate::localization::{mu, TensorElement};
use crate::monomial::Monomial;
use crate::operators::{hw_member, WMap};
use crate::Poly;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut p: i64 = rng.gen_range(-3..=3);
    if p == 0 {
        p = 1;
    }
    let q: i64 = rng.gen_range(1..=3);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// A sparse polynomial with one to four terms of degree at most `max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> Poly {
    let terms = rng.gen_range(1..=4);
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        p.add_term(random_monomial(rng, nvars, d), &CycNum::rational(small_rational(rng)));
    }
    p
}

/// A simple tensor `f ⊗ g` with `deg f + deg g ≤ max_degree`.
pub fn random_simple_tensor<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> TensorElement {
    let df = rng.gen_range(0..=max_degree);
    let dg = rng.gen_range(0..=max_degree - df);
    TensorElement::simple(random_poly(rng, nvars, df), random_poly(rng, nvars, dg))
}

/// A sum of one to three simple tensors.
pub fn random_tensor<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> TensorElement {
    let k = rng.gen_range(1..=3);
    let mut t = TensorElement::zero(nvars);
    for _ in 0..k {
        t = &t + &random_simple_tensor(rng, nvars, max_degree);
    }
    t
}

/// `μ(T)` for a random tensor `T` of degree at most 5.
pub fn random_member<R: Rng>(rng: &mut R, w: &ReflectionGroup) -> WMap {
    mu(w, &random_tensor(rng, w.nvars(), 5))
}

/// A random member with a random polynomial added at one vertex, kept only when
/// it actually fails membership.
pub fn random_non_member<R: Rng>(rng: &mut R, w: &ReflectionGroup) -> WMap {
    loop {
        let f = random_member(rng, w);
        let x = rng.gen_range(0..w.order());
        let mut values = f.values().to_vec();
        values[x] = &values[x] + &random_poly(rng, w.nvars(), 3);
        let g = WMap::new(values);
        if !hw_member(w, &g).ok {
            return g;
        }
    }
}
