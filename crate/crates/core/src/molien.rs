//! The Molien series `|W|⁻¹ Σ_w det(1 − t·w)⁻¹` and the fundamental degrees read off it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;

/// Canonical form of one characteristic-polynomial coefficient.
type CharKey = (Vec<BigInt>, BigInt);

/// First `terms` coefficients of the Molien series, as rationals.
pub fn molien_coefficients(w: &ReflectionGroup, terms: usize) -> Vec<BigRational> {
    let n = w.nvars();
    let m = w.conductor();
    // elements sharing a characteristic polynomial contribute identical series
    let mut classes: BTreeMap<Vec<CharKey>, (Vec<CycNum>, usize)> = BTreeMap::new();
    for e in w.elements() {
        let cp = e.matrix.charpoly();
        let key = cp.iter().map(|c| c.key_at(m)).collect();
        classes.entry(key).or_insert_with(|| (cp, 0)).1 += 1;
    }
    let mut total = vec![CycNum::zero(); terms];
    for (cp, count) in classes.values() {
        // det(1 − t·w) = Σ_j cp[n − j] t^j
        let den: Vec<CycNum> = (0..=n).map(|j| cp[n - j].clone()).collect();
        let inv = invert_series(&den, terms);
        let count = CycNum::integer(*count as i64);
        for (acc, c) in total.iter_mut().zip(inv) {
            *acc += &(c * &count);
        }
    }
    let order = BigRational::from_integer(BigInt::from(w.order()));
    total
        .into_iter()
        .map(|c| c.to_rational().expect("Molien coefficients are rational") / &order)
        .collect()
}

/// Power-series inverse of `a` (with `a[0] = 1`) to `terms` coefficients.
fn invert_series(a: &[CycNum], terms: usize) -> Vec<CycNum> {
    debug_assert!(a[0].is_one());
    let mut b: Vec<CycNum> = Vec::with_capacity(terms);
    for k in 0..terms {
        if k == 0 {
            b.push(CycNum::one());
            continue;
        }
        let mut acc = CycNum::zero();
        for j in 1..a.len().min(k + 1) {
            acc -= &(&a[j] * &b[k - j]);
        }
        b.push(acc);
    }
    b
}

/// Number of series terms that suffices to read off all degrees.
fn working_terms(w: &ReflectionGroup) -> usize {
    (w.nvars() + 1) * w.order() + w.nvars() + 1
}

/// Fundamental degrees `d_1 ≤ … ≤ d_n`, found by peeling factors `(1 − t^d)` off the series.
pub fn molien_series(w: &ReflectionGroup) -> Result<Vec<u32>> {
    let terms = working_terms(w);
    let mut h = molien_coefficients(w, terms);
    let mut degrees = Vec::new();
    while let Some(d) = (1..terms).find(|&k| !h[k].is_zero()) {
        let c = &h[d];
        if !c.is_integer() || c.is_negative() || degrees.len() >= w.nvars() {
            return Err(Error::NotPolynomialInvariantRing);
        }
        // multiply by (1 − t^d)
        for k in (d..terms).rev() {
            let prev = h[k - d].clone();
            h[k] -= prev;
        }
        degrees.push(d as u32);
    }
    if degrees.len() != w.nvars() {
        return Err(Error::NotPolynomialInvariantRing);
    }
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if w.generated_by_reflections() && product != w.order() as u64 {
        return Err(Error::NotPolynomialInvariantRing);
    }
    Ok(degrees)
}

/// Coefficients of `∏_i (1 + t + … + t^{d_i − 1})`, the graded dimensions of the coinvariant ring.
pub fn coinvariant_histogram(degrees: &[u32]) -> Vec<usize> {
    let mut out = vec![1usize];
    for &d in degrees {
        let mut next = vec![0usize; out.len() + d as usize - 1];
        for (k, c) in out.iter().enumerate() {
            for j in 0..d as usize {
                next[k + j] += c;
            }
        }
        out = next;
    }
    out
}

/// Coefficients `0..=dmax` of `∏_i (1 + … + t^{d_i − 1}) / (1 − t)^n`.
pub fn expected_dims(degrees: &[u32], nvars: usize, dmax: u32) -> Vec<usize> {
    let mut series: Vec<usize> = coinvariant_histogram(degrees);
    series.resize(series.len().max(dmax as usize + 1), 0);
    series.truncate(dmax as usize + 1);
    for _ in 0..nvars {
        for k in 1..series.len() {
            series[k] += series[k - 1];
        }
    }
    series
}

/// `Σ_i (d_i − 1)`, the top degree of the coinvariant ring.
pub fn top_coinvariant_degree(degrees: &[u32]) -> u32 {
    degrees.iter().map(|d| d - 1).sum()
}

/// Convenience for tests and reports: rational coefficients as `i64` when integral.
pub fn integral_coefficients(coeffs: &[BigRational]) -> Option<Vec<i64>> {
    coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::DEFAULT_CAP;

    fn group(m: u32, gens: Vec<Vec<Vec<CycNum>>>) -> ReflectionGroup {
        ReflectionGroup::close("t", m, gens.into_iter().map(Matrix::from_rows).collect(), DEFAULT_CAP).unwrap()
    }

    fn cyclic(d: u32) -> ReflectionGroup {
        group(d, vec![vec![vec![CycNum::root_of_unity(d, 1)]]])
    }

    fn int(n: i64) -> CycNum {
        CycNum::integer(n)
    }

    #[test]
    fn cyclic_degrees() {
        assert_eq!(molien_series(&cyclic(2)).unwrap(), vec![2]);
        assert_eq!(molien_series(&cyclic(3)).unwrap(), vec![3]);
        let c = integral_coefficients(&molien_coefficients(&cyclic(3), 7)).unwrap();
        assert_eq!(c, vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn s3_degrees() {
        let s3 = group(1, vec![vec![vec![int(-1), int(1)], vec![int(0), int(1)]], vec![vec![int(1), int(0)], vec![int(1), int(-1)]]]);
        assert_eq!(s3.order(), 6);
        assert_eq!(molien_series(&s3).unwrap(), vec![2, 3]);
        let c = integral_coefficients(&molien_coefficients(&s3, 7)).unwrap();
        assert_eq!(c, vec![1, 0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn non_reflection_group_is_rejected() {
        // -I in two variables: invariants x², xy, y² are not a polynomial ring
        let g = group(1, vec![vec![vec![int(-1), int(0)], vec![int(0), int(-1)]]]);
        assert!(!g.generated_by_reflections());
        assert_eq!(molien_series(&g), Err(Error::NotPolynomialInvariantRing));
    }

    #[test]
    fn expected_rows() {
        assert_eq!(coinvariant_histogram(&[2, 3]), vec![1, 2, 2, 1]);
        assert_eq!(expected_dims(&[2], 1, 4), vec![1, 2, 2, 2, 2]);
        assert_eq!(expected_dims(&[2, 3], 2, 4), vec![1, 4, 9, 15, 21]);
        assert_eq!(expected_dims(&[2, 4], 2, 4), vec![1, 4, 9, 16, 24]);
        assert_eq!(expected_dims(&[3, 6], 2, 4), vec![1, 4, 10, 19, 31]);
    }
}
