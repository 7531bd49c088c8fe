//! Linear forms and exact division by their powers.
//!
//! Division by `ℓ^i` works in coordinates where `ℓ` is a variable: with `p`
//! the first index where `ℓ` has a nonzero coefficient, substitute
//! `x_p = y_p − Σ_{k≠p} c_k y_k`.  Then `ℓ^i | f` exactly when every monomial
//! of the transformed polynomial has `y_p`-exponent at least `i`.

use crate::field::Field;
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;

/// A nonzero linear form with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> LinearForm<F> {
    /// Normalizes `coeffs`, returning the form and the scalar `c` with `coeffs = c · form`.
    pub fn normalize(coeffs: Vec<F>) -> Option<(Self, F)> {
        let p = coeffs.iter().position(|c| !c.is_zero())?;
        let lead = coeffs[p].clone();
        let inv = lead.inv().expect("nonzero");
        let coeffs = coeffs.into_iter().map(|c| c.mul_ref(&inv)).collect();
        Some((LinearForm { coeffs }, lead))
    }

    pub fn new(coeffs: Vec<F>) -> Option<Self> {
        Self::normalize(coeffs).map(|(l, _)| l)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn pivot(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form")
    }

    pub fn to_poly(&self) -> MultiPoly<F> {
        poly_of(&self.coeffs)
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (c, x) in self.coeffs.iter().zip(point) {
            acc += &c.mul_ref(x);
        }
        acc
    }
}

/// The degree-one polynomial `Σ coeffs[k] x_k`.
pub fn poly_of<F: Field>(coeffs: &[F]) -> MultiPoly<F> {
    let n = coeffs.len();
    MultiPoly::from_terms(n, coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(n, k), c.clone())))
}

/// Coefficient vector of `w · ℓ` given `w⁻¹`: the row vector `c · w⁻¹`.
pub fn act_on_coeffs<F: Field>(winv: &Matrix<F>, coeffs: &[F]) -> Vec<F> {
    winv.left_mul_vec(coeffs)
}

/// Failure of exact division, carrying the part of `f` that obstructs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDivisible<F: Field> {
    /// Terms of `f` of `ℓ`-adic order below the requested power, in original coordinates.
    pub witness: MultiPoly<F>,
}

/// Coordinate change that makes a linear form the variable `y_p`.
#[derive(Clone, Debug)]
pub struct LinearChange<F: Field> {
    pivot: usize,
    forward: MultiPoly<F>,
    backward: MultiPoly<F>,
}

impl<F: Field> LinearChange<F> {
    pub fn new(form: &LinearForm<F>) -> Self {
        let n = form.nvars();
        let p = form.pivot();
        // x_p = y_p - Σ_{k≠p} c_k y_k
        let mut fwd: Vec<F> = form.coeffs.iter().map(|c| -c.clone()).collect();
        fwd[p] = F::one();
        LinearChange { pivot: p, forward: poly_of(&fwd), backward: poly_of(&form.coeffs[..n]) }
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// `f` expressed in the adapted coordinates.
    pub fn to_adapted(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        f.substitute_one(self.pivot, &self.forward)
    }

    pub fn from_adapted(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        f.substitute_one(self.pivot, &self.backward)
    }

    pub fn divide(&self, f: &MultiPoly<F>, i: u32) -> Result<MultiPoly<F>, NotDivisible<F>> {
        if i == 0 {
            return Ok(f.clone());
        }
        let g = self.to_adapted(f);
        let n = f.nvars();
        let mut low = MultiPoly::zero(n);
        let mut quot = MultiPoly::zero(n);
        for (m, c) in g.terms() {
            let e = m.exponents();
            if e[self.pivot] < i {
                low.add_term(m.clone(), c);
            } else {
                let mut shifted = e.to_vec();
                shifted[self.pivot] -= i;
                quot.add_term(Monomial::new(shifted), c);
            }
        }
        if low.is_zero() {
            Ok(self.from_adapted(&quot))
        } else {
            Err(NotDivisible { witness: self.from_adapted(&low) })
        }
    }
}

/// `f / ℓ^i` when the division is exact.
pub fn divide_exact_by_linear_power<F: Field>(
    f: &MultiPoly<F>,
    form: &LinearForm<F>,
    i: u32,
) -> Result<MultiPoly<F>, NotDivisible<F>> {
    LinearChange::new(form).divide(f, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = MultiPoly<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn xy() -> (P, P) {
        (P::var(2, 0), P::var(2, 1))
    }

    #[test]
    fn difference_of_cubes() {
        let (x, y) = xy();
        let f = &x.pow(3) - &y.pow(3);
        let l = LinearForm::new(vec![q(1, 1), q(-1, 1)]).unwrap();
        let expected = &(&x.pow(2) + &(&x * &y)) + &y.pow(2);
        assert_eq!(divide_exact_by_linear_power(&f, &l, 1).unwrap(), expected);
    }

    #[test]
    fn not_divisible_witness() {
        let (x, y) = xy();
        let f = &x.pow(2) + &y.pow(2);
        let l = LinearForm::new(vec![q(1, 1), q(0, 1)]).unwrap();
        let err = divide_exact_by_linear_power(&f, &l, 1).unwrap_err();
        assert_eq!(err.witness, y.pow(2));
    }

    #[test]
    fn squared_form_with_rational_normalization() {
        let (x, y) = xy();
        let two_x_minus_y = &x.scale(&q(2, 1)) - &y;
        let f = &two_x_minus_y.pow(2) * &(&x + &y);
        let (l, c) = LinearForm::normalize(vec![q(2, 1), q(-1, 1)]).unwrap();
        assert_eq!(l.coeffs(), &[q(1, 1), q(-1, 2)]);
        assert_eq!(c, q(2, 1));
        let quotient = divide_exact_by_linear_power(&f, &l, 2).unwrap();
        assert_eq!(quotient, (&x + &y).scale(&q(4, 1)));
        assert_eq!(&quotient * &l.to_poly().pow(2), f);
    }

    #[test]
    fn pivot_past_first_variable() {
        let (x, y) = xy();
        let l = LinearForm::new(vec![q(0, 1), q(3, 1)]).unwrap();
        assert_eq!(l.pivot(), 1);
        let f = &(&x * &y) * &y;
        assert_eq!(divide_exact_by_linear_power(&f, &l, 2).unwrap(), x);
        assert!(divide_exact_by_linear_power(&f, &l, 3).is_err());
        assert!(LinearForm::<BigRational>::new(vec![q(0, 1), q(0, 1)]).is_none());
    }

    #[test]
    fn zero_is_divisible_by_anything() {
        let l = LinearForm::new(vec![q(1, 1), q(1, 1)]).unwrap();
        assert!(divide_exact_by_linear_power(&P::zero(2), &l, 7).unwrap().is_zero());
    }
}
