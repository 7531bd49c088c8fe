//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored as a residue modulo the cyclotomic polynomial `Φ_m`
//! with a common positive denominator.  The representation is canonical:
//! numerators and denominator are coprime, and any rational value is stored
//! with conductor 1, so equal values at one conductor are structurally equal.
//! Values at different conductors compare equal when they agree inside
//! `Q(ζ_lcm)`.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

type PolyZ = Vec<BigInt>;

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<PolyZ>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<PolyZ>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<PolyZ> {
    assert!(m > 0, "cyclotomic polynomial of conductor 0");
    if let Some(p) = phi_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut p: PolyZ = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d);
            p = div_monic(&p, &q);
        }
    }
    let p = Arc::new(p);
    phi_cache().write().unwrap().insert(m, p.clone());
    p
}

fn div_monic(a: &[BigInt], b: &[BigInt]) -> PolyZ {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// Reduce an integer polynomial modulo `Φ_m`, returning exactly `φ(m)` coefficients.
fn reduce_mod_phi(mut a: PolyZ, m: u32) -> PolyZ {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    if a.len() > d {
        for k in (d..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[k]);
            for j in 0..d {
                if !phi[j].is_zero() {
                    a[k - d + j] -= &c * &phi[j];
                }
            }
        }
    }
    a.resize(d, BigInt::zero());
    a
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    num: PolyZ,
    den: BigInt,
}

impl CycNum {
    /// Builds `Σ coeffs[k] ζ_m^k`, canonically reduced.
    pub fn new(m: u32, coeffs: &[BigRational]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        if coeffs.len() > m as usize {
            return Err(Error::CoefficientsTooLong { len: coeffs.len(), conductor: m });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_parts(m, num, den))
    }

    fn from_parts(m: u32, num: PolyZ, den: BigInt) -> Self {
        let num = reduce_mod_phi(num, m);
        let mut out = CycNum { conductor: m, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        if self.num.iter().skip(1).all(Zero::is_zero) {
            self.conductor = 1;
            self.num.truncate(1);
            if self.num.is_empty() {
                self.num.push(BigInt::zero());
            }
            if self.num[0].is_zero() {
                self.den = BigInt::one();
            }
        }
    }

    pub fn rational(q: BigRational) -> Self {
        CycNum { conductor: 1, num: vec![q.numer().clone()], den: q.denom().clone() }
    }

    pub fn integer(n: i64) -> Self {
        CycNum { conductor: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    /// `ζ_m^k`, stored at the smallest conductor `m / gcd(m, k)`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m > 0, "root of unity of conductor 0");
        let k = k.rem_euclid(m as i64) as u32;
        let g = m.gcd(&k);
        let (m, k) = (m / g, k / g);
        let mut num = vec![BigInt::zero(); k as usize + 1];
        num[k as usize] = BigInt::one();
        Self::from_parts(m, num, BigInt::one())
    }

    /// `ζ_m^k` lifted to conductor `m` even when a smaller one would do.
    pub fn root_of_unity_at(m: u32, k: i64) -> Self {
        Self::root_of_unity(m, k).lift_to(m).expect("divisor conductor").into_owned()
    }

    /// The conductor this value is stored at (1 for rationals).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Canonical rational coefficients at the stored conductor.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Re-express this value in `Q(ζ_m)`; `m` must be a multiple of the stored conductor.
    ///
    /// Rationals keep conductor 1 since that is their canonical form.
    pub fn lift_to(&self, m: u32) -> Result<Cow<'_, CycNum>> {
        if self.conductor == m || self.is_rational() {
            return Ok(Cow::Borrowed(self));
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch(self.conductor, m));
        }
        Ok(Cow::Owned(self.embed(m)))
    }

    /// Raw embedding into conductor `m` without renormalizing rationals.
    fn embed(&self, m: u32) -> CycNum {
        let step = (m / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (k, c) in self.num.iter().enumerate() {
            num[k * step] = c.clone();
        }
        CycNum { conductor: m, num: reduce_mod_phi(num, m), den: self.den.clone() }
    }

    /// Numerators and denominator at conductor `m`; structural key for hashing.
    pub fn key_at(&self, m: u32) -> (Vec<BigInt>, BigInt) {
        if self.conductor == m {
            return (self.num.clone(), self.den.clone());
        }
        let e = self.embed(m);
        (e.num, e.den)
    }

    fn common_conductor(&self, other: &CycNum) -> Result<u32> {
        let (a, b) = (self.conductor, other.conductor);
        if a == b || b == 1 {
            Ok(a)
        } else if a == 1 || b % a == 0 {
            Ok(b)
        } else if a % b == 0 {
            Ok(a)
        } else {
            Err(Error::ConductorMismatch(a, b))
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.add_sub(other, false)
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.add_sub(other, true)
    }

    fn add_sub(&self, other: &CycNum, negate: bool) -> Result<CycNum> {
        let m = self.common_conductor(other)?;
        let a = self.lift_to(m)?;
        let b = other.lift_to(m)?;
        let len = a.num.len().max(b.num.len());
        let mut num = vec![BigInt::zero(); len];
        let den = if a.den == b.den {
            for (k, c) in a.num.iter().enumerate() {
                num[k] += c;
            }
            for (k, c) in b.num.iter().enumerate() {
                if negate {
                    num[k] -= c;
                } else {
                    num[k] += c;
                }
            }
            a.den.clone()
        } else {
            for (k, c) in a.num.iter().enumerate() {
                num[k] += c * &b.den;
            }
            for (k, c) in b.num.iter().enumerate() {
                let t = c * &a.den;
                if negate {
                    num[k] -= t;
                } else {
                    num[k] += t;
                }
            }
            &a.den * &b.den
        };
        Ok(Self::from_parts(m, num, den))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        if self.is_rational() || other.is_rational() {
            let (r, x) = if self.is_rational() { (self, other) } else { (other, self) };
            let s = &r.num[0];
            let num = x.num.iter().map(|c| c * s).collect();
            let mut out = CycNum { conductor: x.conductor, num, den: &x.den * &r.den };
            out.normalize();
            return Ok(out);
        }
        let m = self.common_conductor(other)?;
        let a = self.lift_to(m)?;
        let b = other.lift_to(m)?;
        let mut num = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    num[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_parts(m, num, &a.den * &b.den))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Φ_m`.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(CycNum {
                conductor: 1,
                num: vec![self.den.clone() * self.num[0].signum()],
                den: self.num[0].abs(),
            });
        }
        let m = self.conductor;
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut old_r = to_q(&cyclotomic_polynomial(m));
        let mut r = to_q(&self.num);
        trim(&mut r);
        let mut old_s: Vec<BigRational> = vec![];
        let mut s = vec![BigRational::one()];
        while !r.is_empty() {
            let (q, rem) = divrem_q(&old_r, &r);
            let new_s = sub_q(&old_s, &mul_q(&q, &s));
            old_r = std::mem::replace(&mut r, rem);
            old_s = std::mem::replace(&mut s, new_s);
        }
        // old_r is a nonzero constant since Φ_m is irreducible
        debug_assert_eq!(old_r.len(), 1);
        let c = old_r[0].clone();
        let scale = BigRational::from_integer(self.den.clone()) / c;
        let coeffs: Vec<BigRational> = old_s.into_iter().map(|x| x * &scale).collect();
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Some(Self::from_parts(m, num, den))
    }

    /// Smallest `k >= 1` with `self^k = 1`, if it is at most `limit`.
    pub fn multiplicative_order(&self, limit: u32) -> Option<u32> {
        let one = CycNum::one();
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == one {
                return Some(k);
            }
            acc = acc.try_mul(self).ok()?;
        }
        None
    }

    /// Parses the `z`-polynomial text form at conductor `m`.
    pub fn parse(text: &str, m: u32) -> Result<CycNum> {
        crate::parse::parse_scalar(text, m)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (k, x) in a.iter().enumerate() {
        out[k] += x;
    }
    for (k, x) in b.iter().enumerate() {
        out[k] -= x;
    }
    trim(&mut out);
    out
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() || other.is_rational() {
            return false;
        }
        let m = self.conductor.lcm(&other.conductor);
        let a = self.embed(m);
        let b = other.embed(m);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::integer(0)
    }

    fn is_zero(&self) -> bool {
        self.conductor == 1 && self.num[0].is_zero()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::integer(1)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::integer(n)
    }
}

impl From<BigRational> for CycNum {
    fn from(q: BigRational) -> Self {
        CycNum::rational(q)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

// Operator sugar panics on incompatible conductors; the `try_*` methods report it.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a, 'b> $tr<&'b CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'b CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'b> $tr<&'b CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'b CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl<'a> AddAssign<&'a CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &'a CycNum) {
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &'a CycNum) {
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &'a CycNum) {
        *self = &*self * rhs;
    }
}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_integer(n: i64) -> Self {
        CycNum::integer(n)
    }

    fn from_rational(q: &BigRational) -> Self {
        CycNum::rational(q.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let a = q.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let zpow = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&zpow)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), zpow)?;
            }
        }
        Ok(())
    }
}
