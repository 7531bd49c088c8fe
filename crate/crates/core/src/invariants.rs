//! Graded pieces of the invariant ring, the Hilbert ideal, and a standard-monomial
//! basis of the coinvariant ring, all by per-degree exact linear algebra.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::ReflectionGroup;
use crate::linalg::Echelon;
use crate::molien::{coinvariant_histogram, molien_series, top_coinvariant_degree};
use crate::monomial::graded_monomials;
use crate::Poly;

/// Linearly independent homogeneous polynomials of one degree.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: u32,
    pub vectors: Vec<Poly>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Chosen lifts `e_1, …, e_N` of a basis of `R_W`.
#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantBasis {
    pub lifts: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub fundamental_degrees: Vec<u32>,
}

impl CoinvariantBasis {
    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }

    /// Number of lifts in each degree.
    pub fn histogram(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut h = vec![0; top + 1];
        for &d in &self.degrees {
            h[d as usize] += 1;
        }
        h
    }
}

/// `|W|⁻¹ Σ_w w · f`.
pub fn reynolds(w: &ReflectionGroup, f: &Poly) -> Poly {
    let mut acc = Poly::zero(f.nvars());
    for x in 0..w.order() {
        acc = &acc + &w.act(x, f);
    }
    acc.scale(&CycNum::integer(w.order() as i64).inv().expect("nonzero order"))
}

fn echelon_to_basis(nvars: usize, degree: u32, ech: &Echelon<CycNum>) -> GradedBasis {
    let monos = graded_monomials(nvars, degree);
    let vectors = ech.reduced_basis().iter().map(|v| Poly::from_coords(nvars, &monos, v)).collect();
    GradedBasis { degree, vectors }
}

/// Row-reduced basis of `(R^W)_d`: the Reynolds images of degree-`d` monomials.
pub fn invariant_basis(w: &ReflectionGroup, d: u32) -> GradedBasis {
    let n = w.nvars();
    let monos = graded_monomials(n, d);
    let images: Vec<Vec<CycNum>> = monos
        .par_iter()
        .map(|m| reynolds(w, &Poly::monomial(n, m.clone(), CycNum::one())).coords(&monos))
        .collect();
    let mut ech = Echelon::new(monos.len());
    for v in images {
        ech.insert(v);
    }
    echelon_to_basis(n, d, &ech)
}

fn hilbert_echelon(w: &ReflectionGroup, d: u32, invariants: &[GradedBasis]) -> Echelon<CycNum> {
    let n = w.nvars();
    let monos = graded_monomials(n, d);
    let mut ech = Echelon::new(monos.len());
    for k in 1..=d {
        let cofactors = graded_monomials(n, d - k);
        for f in &invariants[k as usize].vectors {
            for m in &cofactors {
                if ech.rank() == monos.len() {
                    return ech;
                }
                ech.insert(f.mul_monomial(m).coords(&monos));
            }
        }
    }
    ech
}

fn invariant_pieces(w: &ReflectionGroup, dmax: u32) -> Vec<GradedBasis> {
    (0..=dmax).into_par_iter().map(|k| invariant_basis(w, k)).collect()
}

/// Basis of `(J_W)_d`, where `J_W` is generated by invariants of positive degree.
pub fn hilbert_ideal_piece(w: &ReflectionGroup, d: u32) -> GradedBasis {
    let inv = invariant_pieces(w, d);
    echelon_to_basis(w.nvars(), d, &hilbert_echelon(w, d, &inv))
}

/// Greedy standard monomials of `R_W` in every degree up to `dmax`.
pub fn coinvariant_basis(w: &ReflectionGroup, dmax: u32) -> Result<CoinvariantBasis> {
    let degrees = molien_series(w)?;
    let needed = top_coinvariant_degree(&degrees);
    if dmax < needed {
        return Err(Error::DegreeBoundTooSmall { given: dmax as usize, needed: needed as usize });
    }
    let n = w.nvars();
    let inv = invariant_pieces(w, dmax);
    let per_degree: Vec<Vec<Poly>> = (0..=dmax)
        .into_par_iter()
        .map(|d| {
            let monos = graded_monomials(n, d);
            let mut ech = hilbert_echelon(w, d, &inv);
            let mut chosen = Vec::new();
            for m in &monos {
                if ech.rank() == monos.len() {
                    break;
                }
                let p = Poly::monomial(n, m.clone(), CycNum::one());
                if ech.insert(p.coords(&monos)) {
                    chosen.push(p);
                }
            }
            chosen
        })
        .collect();
    let found: Vec<usize> = per_degree.iter().map(Vec::len).collect();
    let mut expected = coinvariant_histogram(&degrees);
    expected.resize(found.len().max(expected.len()), 0);
    let mut found_padded = found.clone();
    found_padded.resize(expected.len(), 0);
    if found_padded != expected {
        return Err(Error::HistogramMismatch { found, expected });
    }
    let mut lifts = Vec::new();
    let mut lift_degrees = Vec::new();
    for (d, ps) in per_degree.into_iter().enumerate() {
        for p in ps {
            lifts.push(p);
            lift_degrees.push(d as u32);
        }
    }
    Ok(CoinvariantBasis { lifts, degrees: lift_degrees, fundamental_degrees: degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::molien::molien_coefficients;
    use crate::monomial::default_names;
    use crate::DEFAULT_CAP;

    fn cyclic(d: u32) -> ReflectionGroup {
        let g = Matrix::from_rows(vec![vec![CycNum::root_of_unity(d, 1)]]);
        ReflectionGroup::close("z", d, vec![g], DEFAULT_CAP).unwrap()
    }

    fn s3() -> ReflectionGroup {
        let i = CycNum::integer;
        let a = Matrix::from_rows(vec![vec![i(-1), i(1)], vec![i(0), i(1)]]);
        let b = Matrix::from_rows(vec![vec![i(1), i(0)], vec![i(1), i(-1)]]);
        ReflectionGroup::close("s3", 1, vec![a, b], DEFAULT_CAP).unwrap()
    }

    fn x() -> Poly {
        Poly::var(1, 0)
    }

    #[test]
    fn reynolds_examples() {
        let z2 = cyclic(2);
        assert!(reynolds(&z2, &x()).is_zero());
        assert_eq!(reynolds(&z2, &x().pow(2)), x().pow(2));
        assert_eq!(reynolds(&cyclic(3), &x().pow(3)), x().pow(3));
    }

    #[test]
    fn invariant_dimensions_follow_molien() {
        let z2 = cyclic(2);
        assert_eq!(invariant_basis(&z2, 2).vectors, vec![x().pow(2)]);
        assert_eq!(invariant_basis(&z2, 1).dim(), 0);
        let g = s3();
        let molien = molien_coefficients(&g, 8);
        for d in 0..8u32 {
            let dim = invariant_basis(&g, d).dim();
            assert_eq!(num_rational::BigRational::from_integer(dim.into()), molien[d as usize], "degree {d}");
        }
    }

    #[test]
    fn coinvariant_examples() {
        let names = default_names(1);
        let b = coinvariant_basis(&cyclic(2), 3).unwrap();
        assert_eq!(b.lifts.iter().map(|p| p.format_with(&names)).collect::<Vec<_>>(), ["1", "x1"]);
        let b = coinvariant_basis(&cyclic(3), 2).unwrap();
        assert_eq!(b.lifts.iter().map(|p| p.format_with(&names)).collect::<Vec<_>>(), ["1", "x1", "x1^2"]);
        let b = coinvariant_basis(&s3(), 5).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.histogram(), vec![1, 2, 2, 1]);
        assert_eq!(
            coinvariant_basis(&s3(), 2).unwrap_err(),
            Error::DegreeBoundTooSmall { given: 2, needed: 3 }
        );
    }

    #[test]
    fn hilbert_ideal_complements_coinvariants() {
        let g = s3();
        let b = coinvariant_basis(&g, 5).unwrap();
        for d in 0..=5u32 {
            let total = graded_monomials(2, d).len();
            let j = hilbert_ideal_piece(&g, d).dim();
            let c = b.degrees.iter().filter(|&&e| e == d).count();
            assert_eq!(total, j + c, "degree {d}");
        }
    }
}
