//! Sparse multivariate polynomials over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::monomial::{default_names, Monomial};

/// Total degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, k), F::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds from (monomial, coefficient) pairs, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::NvarsMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes every variable `x_k` by `images[k]`.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, MultiPoly::nvars);
        let mut powers: Vec<Vec<MultiPoly<F>>> = images.iter().map(|g| vec![MultiPoly::one(g.nvars)]).collect();
        let mut out = MultiPoly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(nv, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc);
            }
        }
        out
    }

    /// Substitutes only variable `var` by `image`, keeping the others.
    pub fn substitute_one(&self, var: usize, image: &MultiPoly<F>) -> Self {
        let mut powers = vec![MultiPoly::one(self.nvars)];
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * image;
                powers.push(next);
            }
            let mut rest = m.exponents().to_vec();
            rest[var] = 0;
            let rest = Monomial::new(rest);
            for (pm, pc) in &powers[e].terms {
                out.add_term(pm.mul(&rest), &pc.mul_ref(c));
            }
        }
        out
    }

    /// Linear change of variables `x_k ↦ Σ_j rows[k][j] x_j`.
    pub fn linear_substitute(&self, rows: &Matrix<F>) -> Self {
        let images: Vec<MultiPoly<F>> = (0..self.nvars)
            .map(|k| {
                MultiPoly::from_terms(
                    self.nvars,
                    (0..self.nvars).map(|j| (Monomial::var(self.nvars, j), rows[(k, j)].clone())),
                )
            })
            .collect();
        self.substitute(&images)
    }

    /// `w · f`, where `(w · f)(v) = f(w⁻¹ v)`.
    pub fn apply_linear(&self, w: &Matrix<F>) -> Result<Self> {
        let winv = w.inverse()?;
        Ok(self.apply_with_inverse(&winv))
    }

    /// Same as [`apply_linear`](Self::apply_linear) given `w⁻¹` directly.
    pub fn apply_with_inverse(&self, winv: &Matrix<F>) -> Self {
        self.linear_substitute(winv)
    }

    /// Coefficients on a list of monomials, for building linear systems.
    pub fn coords(&self, basis: &[Monomial]) -> Vec<F> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(nvars: usize, basis: &[Monomial], coords: &[F]) -> Self {
        MultiPoly::from_terms(nvars, basis.iter().cloned().zip(coords.iter().cloned()))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let term = format_term(&c.to_string(), m, names);
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn format_term(coeff: &str, m: &Monomial, names: &[String]) -> String {
    let multi = coeff[1..].contains(" + ") || coeff[1..].contains(" - ");
    if m.is_one() {
        return if multi { format!("({coeff})") } else { coeff.to_string() };
    }
    let mono = m.format(names);
    if multi {
        format!("({coeff})*{mono}")
    } else if coeff == "1" {
        mono
    } else if coeff == "-1" {
        format!("-{mono}")
    } else {
        format!("{coeff}*{mono}")
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_names(self.nvars)))
    }
}

impl<F: Field> serde::Serialize for MultiPoly<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

// Operator sugar panics on mismatched variable counts; `try_*` reports it.
impl<'b, F: Field> Add<&'b MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'b, F: Field> Sub<&'b MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'b, F: Field> Mul<&'b MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycNum;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type P = MultiPoly<BigRational>;

    fn x(n: usize, k: usize) -> P {
        P::var(n, k)
    }

    fn c(n: i64) -> P {
        P::constant(2, BigRational::from_integer(n.into()))
    }

    #[test]
    fn ring_examples() {
        let (a, b) = (x(2, 0), x(2, 1));
        assert_eq!(&(&a - &b) * &(&a + &b), &a.pow(2) - &b.pow(2));
        let f = &a.pow(3) + &c(7);
        assert!(f.try_add(&f.scale(&BigRational::from_integer((-1).into()))).unwrap().is_zero());
        let cube = (&a + &b).pow(3);
        assert_eq!(cube.coeff(&Monomial::new(vec![2, 1])), BigRational::from_integer(3.into()));
        assert_eq!(a.try_add(&x(3, 0)), Err(Error::NvarsMismatch(2, 3)));
    }

    #[test]
    fn degrees() {
        assert_eq!(P::zero(2).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        let f = &x(2, 0).pow(2) * &x(2, 1);
        assert_eq!(f.degree(), Degree::Finite(3));
        assert_eq!((&f * &f).degree(), Degree::Finite(6));
        assert!(f.is_homogeneous());
        assert!(!(&f + &c(1)).is_homogeneous());
    }

    #[test]
    fn apply_linear_examples() {
        let swap = Matrix::from_rows(vec![
            vec![CycNum::zero(), CycNum::one()],
            vec![CycNum::one(), CycNum::zero()],
        ]);
        let f = &MultiPoly::<CycNum>::var(2, 0).pow(2) * &MultiPoly::var(2, 1);
        let g = &MultiPoly::<CycNum>::var(2, 1).pow(2) * &MultiPoly::var(2, 0);
        assert_eq!(f.apply_linear(&swap).unwrap(), g);

        let w = Matrix::from_rows(vec![vec![CycNum::root_of_unity(3, 1)]]);
        let xx = MultiPoly::<CycNum>::var(1, 0);
        assert_eq!(xx.apply_linear(&w).unwrap(), xx.scale(&CycNum::root_of_unity(3, 2)));
        assert_eq!(f.apply_linear(&Matrix::identity(2)).unwrap(), f);

        let singular = Matrix::from_rows(vec![vec![CycNum::zero()]]);
        assert_eq!(xx.apply_linear(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn formatting() {
        let f = &(&x(2, 0).pow(2) * &x(2, 1)).scale(&BigRational::new(2.into(), 3.into())) - &c(1);
        assert_eq!(f.to_string(), "2/3*x1^2*x2 - 1");
        assert_eq!(P::zero(2).to_string(), "0");
        let z = CycNum::root_of_unity(3, 1);
        let g = MultiPoly::<CycNum>::var(2, 0).scale(&(CycNum::one() + &z));
        assert_eq!(g.to_string(), "(z + 1)*x1");
        let h = MultiPoly::<CycNum>::var(2, 1).scale(&-z);
        assert_eq!(h.to_string(), "-z*x2");
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let f = &(&x(2, 0) + &c(2)) * &x(2, 1);
        let g = &x(2, 0).pow(3) - &c(5);
        let pt = [BigRational::new(1.into(), 3.into()), BigRational::from_integer((-2).into())];
        assert_eq!((&f * &g).eval(&pt), f.eval(&pt) * g.eval(&pt));
    }
}
