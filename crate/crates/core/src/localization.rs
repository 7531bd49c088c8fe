//! Tensors in `R ⊗_{R^W} R`, the twisted multiplications `μ_x`, the localization
//! map `μ`, and the graded dimension counts comparing its image with `𝓗_W`.

use std::ops::{Add, Mul};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::ReflectionGroup;
use crate::invariants::{coinvariant_basis, CoinvariantBasis};
use crate::linalg::Echelon;
use crate::linear_form::NotDivisible;
use crate::molien::{expected_dims, molien_series, top_coinvariant_degree};
use crate::monomial::graded_monomials;
use crate::operators::{hw_graded_basis, op_a, op_delta, WMap};
use crate::{CycNum, Poly};

/// A formal sum of simple tensors `f ⊗ g`.
#[derive(Clone, Debug)]
pub struct TensorElement {
    nvars: usize,
    summands: Vec<(Poly, Poly)>,
}

impl TensorElement {
    pub fn zero(nvars: usize) -> Self {
        TensorElement { nvars, summands: Vec::new() }
    }

    pub fn simple(f: Poly, g: Poly) -> Self {
        assert_eq!(f.nvars(), g.nvars());
        TensorElement { nvars: f.nvars(), summands: vec![(f, g)] }
    }

    pub fn from_summands(nvars: usize, summands: Vec<(Poly, Poly)>) -> Self {
        TensorElement { nvars, summands }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn summands(&self) -> &[(Poly, Poly)] {
        &self.summands
    }

    /// `T · w`: each `f ⊗ g` becomes `f ⊗ w⁻¹(g)`.
    pub fn act_right(&self, w: &ReflectionGroup, g: usize) -> Self {
        let ginv = w.inv(g);
        let summands = self.summands.iter().map(|(a, b)| (a.clone(), w.act(ginv, b))).collect();
        TensorElement { nvars: self.nvars, summands }
    }

    /// `Σ f ⊗ ᵢΔ_s(g)`.
    pub fn apply_delta(&self, w: &ReflectionGroup, s: usize, i: i64) -> Result<Self, NotDivisible<CycNum>> {
        let summands = self
            .summands
            .iter()
            .map(|(a, b)| Ok((a.clone(), op_delta(w, s, i, b)?)))
            .collect::<Result<_, NotDivisible<CycNum>>>()?;
        Ok(TensorElement { nvars: self.nvars, summands })
    }
}

impl Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut summands = self.summands.clone();
        summands.extend(rhs.summands.iter().cloned());
        TensorElement { nvars: self.nvars, summands }
    }
}

impl Mul<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        let mut summands = Vec::with_capacity(self.summands.len() * rhs.summands.len());
        for (a, b) in &self.summands {
            for (c, d) in &rhs.summands {
                summands.push((a * c, b * d));
            }
        }
        TensorElement { nvars: self.nvars, summands }
    }
}

/// `μ_x(f ⊗ g) = f · x(g)`, extended additively.
pub fn mu_x(w: &ReflectionGroup, t: &TensorElement, x: usize) -> Poly {
    let mut acc = Poly::zero(t.nvars);
    for (f, g) in &t.summands {
        acc = &acc + &(f * &w.act(x, g));
    }
    acc
}

/// The localization map `T ↦ (x ↦ μ_x(T))`.
pub fn mu(w: &ReflectionGroup, t: &TensorElement) -> WMap {
    WMap::new((0..w.order()).into_par_iter().map(|x| mu_x(w, t, x)).collect())
}

/// Whether `ᵢA_s(μ(T)) = μ(Σ f ⊗ ᵢΔ_s(g))`.
pub fn check_comdi(w: &ReflectionGroup, s: usize, i: i64, t: &TensorElement) -> bool {
    let (Ok(lhs), Ok(delta)) = (op_a(w, s, i, &mu(w, t)), t.apply_delta(w, s, i)) else {
        return false;
    };
    lhs == mu(w, &delta)
}

/// Rank of `{ m · μ(1 ⊗ e_i) : deg m = d − deg e_i }` in degree `d`.
pub fn image_graded_dim(w: &ReflectionGroup, coinv: &CoinvariantBasis, d: u32) -> usize {
    let images: Vec<WMap> =
        coinv.lifts.iter().map(|e| mu(w, &TensorElement::simple(w.one_poly(), e.clone()))).collect();
    image_rank(w, coinv, &images, d)
}

fn image_rank(w: &ReflectionGroup, coinv: &CoinvariantBasis, images: &[WMap], d: u32) -> usize {
    let n = w.nvars();
    let monos = graded_monomials(n, d);
    let cols = w.order() * monos.len();
    let mut ech = Echelon::new(cols);
    for (img, &de) in images.iter().zip(&coinv.degrees) {
        if de > d {
            continue;
        }
        for m in graded_monomials(n, d - de) {
            if ech.rank() == cols {
                return cols;
            }
            ech.insert(img.mul_poly(&Poly::monomial(n, m, CycNum::integer(1))).coords(&monos));
        }
    }
    ech.rank()
}

/// Expected, image and `𝓗_W` dimensions in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub degree: u32,
    pub expected: usize,
    pub image: usize,
    pub hw: usize,
}

impl DimensionRow {
    pub fn pass(&self) -> bool {
        self.expected == self.image && self.image == self.hw
    }
}

/// The three graded counts for `d = 0..=dmax`.
pub fn dimension_rows(w: &ReflectionGroup, dmax: u32) -> Result<Vec<DimensionRow>> {
    let degrees = molien_series(w)?;
    let expected = expected_dims(&degrees, w.nvars(), dmax);
    let coinv = coinvariant_basis(w, dmax.max(top_coinvariant_degree(&degrees)))?;
    let images: Vec<WMap> =
        coinv.lifts.iter().map(|e| mu(w, &TensorElement::simple(w.one_poly(), e.clone()))).collect();
    Ok((0..=dmax)
        .into_par_iter()
        .map(|d| DimensionRow {
            degree: d,
            expected: expected[d as usize],
            image: image_rank(w, &coinv, &images, d),
            hw: hw_graded_basis(w, d).dim(),
        })
        .collect())
}
