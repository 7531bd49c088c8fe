//! Maps `W → R`, the operators `ᵢΔ_s` and `ᵢA_s`, and membership in the set
//! `𝓗_W` cut out by the divisibility conditions on weighted coset sums.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::field::Field;
use crate::group::ReflectionGroup;
use crate::linalg::{Echelon, Matrix};
use crate::linear_form::{poly_of, LinearChange, LinearForm, NotDivisible};
use crate::monomial::{graded_monomials, Monomial};
use crate::poly::Degree;
use crate::Poly;

/// A map `F: W → R`, stored as one polynomial per group element index.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct WMap {
    values: Vec<Poly>,
}

impl WMap {
    pub fn new(values: Vec<Poly>) -> Self {
        WMap { values }
    }

    pub fn constant(w: &ReflectionGroup, f: &Poly) -> Self {
        WMap { values: vec![f.clone(); w.order()] }
    }

    pub fn one(w: &ReflectionGroup) -> Self {
        Self::constant(w, &w.one_poly())
    }

    pub fn zero(w: &ReflectionGroup) -> Self {
        Self::constant(w, &w.zero_poly())
    }

    pub fn values(&self) -> &[Poly] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Poly {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    /// Largest degree among the values.
    pub fn degree(&self) -> Degree {
        self.values.iter().map(Poly::degree).max().unwrap_or(Degree::NegInfinity)
    }

    pub fn is_homogeneous(&self) -> bool {
        let Some(d) = self.degree().finite() else { return true };
        self.values.iter().all(|v| v.is_zero() || (v.is_homogeneous() && v.degree() == Degree::Finite(d)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        WMap { values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    /// Multiplies every value by `f` (the `R`-module structure).
    pub fn mul_poly(&self, f: &Poly) -> Self {
        WMap { values: self.values.iter().map(|v| v * f).collect() }
    }

    /// Concatenated coordinates of all values on `basis`.
    pub fn coords(&self, basis: &[Monomial]) -> Vec<CycNum> {
        self.values.iter().flat_map(|v| v.coords(basis)).collect()
    }

    pub fn from_coords(nvars: usize, basis: &[Monomial], coords: &[CycNum]) -> Self {
        let m = basis.len().max(1);
        let values = if basis.is_empty() {
            Vec::new()
        } else {
            coords.chunks(m).map(|c| Poly::from_coords(nvars, basis, c)).collect()
        };
        WMap { values }
    }

    pub fn format_with(&self, names: &[String]) -> Vec<String> {
        self.values.iter().map(|v| v.format_with(names)).collect()
    }

    fn zip(&self, other: &WMap, f: impl Fn(&Poly, &Poly) -> Poly) -> WMap {
        assert_eq!(self.len(), other.len(), "maps on different groups");
        WMap { values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() }
    }
}

impl std::fmt::Debug for WMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.values.iter().map(ToString::to_string)).finish()
    }
}

impl Add<&WMap> for &WMap {
    type Output = WMap;
    fn add(self, rhs: &WMap) -> WMap {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&WMap> for &WMap {
    type Output = WMap;
    fn sub(self, rhs: &WMap) -> WMap {
        self.zip(rhs, |a, b| a - b)
    }
}

/// Pointwise product.
impl Mul<&WMap> for &WMap {
    type Output = WMap;
    fn mul(self, rhs: &WMap) -> WMap {
        self.zip(rhs, |a, b| a * b)
    }
}

/// `(F · w)(x) = F(x w⁻¹)`.
pub fn wmap_act(w: &ReflectionGroup, f: &WMap, g: usize) -> WMap {
    let ginv = w.inv(g);
    WMap { values: (0..w.order()).map(|x| f.values[w.mul(x, ginv)].clone()).collect() }
}

/// `L_s(x) = x(ℓ_s)` for reflection number `s`.
pub fn coroot_map(w: &ReflectionGroup, s: usize) -> WMap {
    WMap { values: (0..w.order()).map(|x| w.coroot_image(x, s)).collect() }
}

/// Right cosets `x⟨g⟩`, each listed as `[x, xg, xg², …]` with `x` the smallest index.
pub fn right_cosets(w: &ReflectionGroup, g: usize) -> Vec<Vec<usize>> {
    let ord = w.element(g).order as usize;
    let mut seen = vec![false; w.order()];
    let mut out = Vec::new();
    for x in 0..w.order() {
        if seen[x] {
            continue;
        }
        let mut coset = Vec::with_capacity(ord);
        let mut y = x;
        for _ in 0..ord {
            seen[y] = true;
            coset.push(y);
            y = w.mul(y, g);
        }
        out.push(coset);
    }
    out
}

/// `λ_s^{-ij}` for `j = 0..|s|`.
fn weights(w: &ReflectionGroup, s: usize, i: i64) -> Vec<CycNum> {
    let r = &w.reflections()[s];
    let step = r.eigenvalue.powi(-i).expect("root of unity");
    let mut out = Vec::with_capacity(r.order as usize);
    let mut acc = CycNum::one();
    for _ in 0..r.order {
        out.push(acc.clone());
        acc *= &step;
    }
    out
}

/// `Σ_j λ_s^{-ij} F(x s^j)`, the numerator of `ᵢA_s(F)(x)`.
pub fn op_a_numerator(w: &ReflectionGroup, s: usize, i: i64, f: &WMap, x: usize) -> Poly {
    let se = w.reflections()[s].element;
    let mut acc = w.zero_poly();
    let mut y = x;
    for c in weights(w, s, i) {
        acc = &acc + &f.values[y].scale(&c);
        y = w.mul(y, se);
    }
    acc
}

/// One failed divisibility condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipFailure {
    /// Coset representative `x`.
    pub rep: usize,
    /// Index into `s(W)`.
    pub reflection: usize,
    pub exponent: i64,
    /// Low-order part of the numerator obstructing division by `x(ℓ_s)^i`.
    pub witness: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub ok: bool,
    pub failures: Vec<MembershipFailure>,
}

impl MembershipCertificate {
    fn from_failures(mut failures: Vec<MembershipFailure>) -> Self {
        failures.sort_by_key(|f| (f.reflection, f.exponent, f.rep));
        MembershipCertificate { ok: failures.is_empty(), failures }
    }
}

/// `N · (c·form)^{-i}`: divides for `i > 0`, multiplies for `i < 0`.
fn apply_power(n: &Poly, form_coeffs: &[CycNum], i: i64) -> Result<Poly, NotDivisible<CycNum>> {
    if i <= 0 {
        return Ok(n * &poly_of(form_coeffs).pow((-i) as u32));
    }
    let (form, c) = LinearForm::normalize(form_coeffs.to_vec()).expect("nonzero co-root image");
    let q = LinearChange::new(&form).divide(n, i as u32)?;
    Ok(q.scale(&c.powi(-i).expect("nonzero")))
}

/// `ᵢA_s(F)` computed with an explicit co-root (any nonzero multiple of `ℓ_s`).
pub fn op_a_with_coroot(
    w: &ReflectionGroup,
    s: usize,
    coroot: &[CycNum],
    i: i64,
    f: &WMap,
) -> Result<WMap, Vec<MembershipFailure>> {
    let se = w.reflections()[s].element;
    let mut values = vec![w.zero_poly(); w.order()];
    let mut failures = Vec::new();
    for coset in right_cosets(w, se) {
        let x = coset[0];
        let n = op_a_numerator(w, s, i, f, x);
        match apply_power(&n, &w.act_on_form(x, coroot), i) {
            Ok(v) => {
                for &y in &coset {
                    values[y] = v.clone();
                }
            }
            Err(e) => failures.push(MembershipFailure { rep: x, reflection: s, exponent: i, witness: e.witness }),
        }
    }
    if failures.is_empty() {
        Ok(WMap { values })
    } else {
        Err(failures)
    }
}

/// `ᵢA_s(F)(x) = x(ℓ_s)^{-i} Σ_j λ_s^{-ij} F(x s^j)`, when every value is a polynomial.
pub fn op_a(w: &ReflectionGroup, s: usize, i: i64, f: &WMap) -> Result<WMap, Vec<MembershipFailure>> {
    op_a_with_coroot(w, s, w.reflections()[s].coroot.coeffs(), i, f)
}

/// `ᵢΔ_s(f) = ℓ_s^{-i} Σ_j λ_s^{-ij} s^j(f)`.
pub fn op_delta(w: &ReflectionGroup, s: usize, i: i64, f: &Poly) -> Result<Poly, NotDivisible<CycNum>> {
    let r = &w.reflections()[s];
    let mut acc = w.zero_poly();
    let mut y = 0;
    for c in weights(w, s, i) {
        acc = &acc + &w.act(y, f).scale(&c);
        y = w.mul(y, r.element);
    }
    apply_power(&acc, r.coroot.coeffs(), i)
}

/// Checks every condition defining `𝓗_W`: all `s ∈ s(W)`, `1 ≤ i ≤ |s| − 1`, one `x` per coset.
pub fn hw_member(w: &ReflectionGroup, f: &WMap) -> MembershipCertificate {
    let failures: Vec<MembershipFailure> = (0..w.reflections().len())
        .into_par_iter()
        .flat_map_iter(|s| {
            let ord = w.reflections()[s].order as i64;
            (1..ord).flat_map(move |i| op_a(w, s, i, f).err().unwrap_or_default())
        })
        .collect();
    MembershipCertificate::from_failures(failures)
}

/// `[₀A_s(F), …, _{|s|−1}A_s(F)]` for a member `F`.
pub fn decompose_along_s(w: &ReflectionGroup, f: &WMap, s: usize) -> Result<Vec<WMap>, MembershipCertificate> {
    let ord = w.reflections()[s].order as i64;
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for j in 0..ord {
        match op_a(w, s, j, f) {
            Ok(a) => out.push(a),
            Err(e) => failures.extend(e),
        }
    }
    if failures.is_empty() {
        Ok(out)
    } else {
        Err(MembershipCertificate::from_failures(failures))
    }
}

/// `|s|⁻¹ Σ_j components[j] · L_s^j`.
pub fn reconstruct(w: &ReflectionGroup, s: usize, components: &[WMap]) -> WMap {
    let l = coroot_map(w, s);
    let mut power = WMap::one(w);
    let mut acc = WMap::zero(w);
    for c in components {
        acc = &acc + &(c * &power);
        power = &power * &l;
    }
    acc.scale(&CycNum::integer(w.reflections()[s].order as i64).inv().expect("nonzero"))
}

/// Linearly independent maps spanning one graded piece.
#[derive(Clone, Debug)]
pub struct MapBasis {
    pub degree: u32,
    pub maps: Vec<WMap>,
}

impl MapBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

/// Adapted-coordinate images of the degree-`d` monomials, one table per distinct line.
pub(crate) struct AdaptedTables {
    monos: Vec<Monomial>,
    tables: Vec<(LinearForm<CycNum>, usize, Vec<Poly>)>,
}

impl AdaptedTables {
    pub(crate) fn new(nvars: usize, d: u32) -> Self {
        AdaptedTables { monos: graded_monomials(nvars, d), tables: Vec::new() }
    }

    pub(crate) fn monos(&self) -> &[Monomial] {
        &self.monos
    }

    /// `(pivot, images)` for the line spanned by `coeffs`.
    pub(crate) fn get(&mut self, coeffs: &[CycNum]) -> (usize, &[Poly]) {
        let form = LinearForm::new(coeffs.to_vec()).expect("nonzero form");
        let pos = match self.tables.iter().position(|(f, _, _)| *f == form) {
            Some(p) => p,
            None => {
                let change = LinearChange::new(&form);
                let n = form.nvars();
                let images =
                    self.monos.iter().map(|m| change.to_adapted(&Poly::monomial(n, m.clone(), CycNum::one()))).collect();
                self.tables.push((form, change.pivot(), images));
                self.tables.len() - 1
            }
        };
        let (_, p, imgs) = &self.tables[pos];
        (*p, imgs)
    }
}

/// Adds to `ech` the conditions that `Σ_j weight_j F(members_j)` has order at least `i`
/// along the line `coeffs`; unknowns are laid out element-major over `tables.monos()`.
pub(crate) fn add_divisibility_rows(
    ech: &mut Echelon<CycNum>,
    tables: &mut AdaptedTables,
    coeffs: &[CycNum],
    members: &[(usize, CycNum)],
    i: u32,
) {
    let m = tables.monos().len();
    let total = ech.cols();
    let (p, images) = tables.get(coeffs);
    let mut rows: std::collections::BTreeMap<Monomial, Vec<CycNum>> = Default::default();
    for (k, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            if mono.exponents()[p] >= i {
                continue;
            }
            let row = rows.entry(mono.clone()).or_insert_with(|| vec![CycNum::zero(); total]);
            for (x, wt) in members {
                row[x * m + k] += &c.mul_ref(wt);
            }
        }
    }
    for (_, row) in rows {
        if ech.rank() == total {
            return;
        }
        ech.insert(row);
    }
}

/// Nullspace basis of the rows collected in `ech`, as maps.
pub(crate) fn nullspace_maps(ech: &Echelon<CycNum>, nvars: usize, monos: &[Monomial], d: u32) -> MapBasis {
    let cols = ech.cols();
    let kernel: Vec<Vec<CycNum>> = if ech.rank() == 0 {
        (0..cols)
            .map(|c| (0..cols).map(|k| if k == c { CycNum::one() } else { CycNum::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(ech.reduced_basis()).nullspace()
    };
    MapBasis { degree: d, maps: kernel.iter().map(|v| WMap::from_coords(nvars, monos, v)).collect() }
}

/// Basis of `(𝓗_W)_d` as the solution space of the homogeneous divisibility system.
pub fn hw_graded_basis(w: &ReflectionGroup, d: u32) -> MapBasis {
    let n = w.nvars();
    let mut tables = AdaptedTables::new(n, d);
    let cols = w.order() * tables.monos().len();
    let mut ech = Echelon::new(cols);
    for (s, r) in w.reflections().iter().enumerate() {
        for i in 1..r.order as i64 {
            let wts = weights(w, s, i);
            for coset in right_cosets(w, r.element) {
                let members: Vec<(usize, CycNum)> = coset.iter().copied().zip(wts.iter().cloned()).collect();
                let line = w.act_on_form(coset[0], r.coroot.coeffs());
                add_divisibility_rows(&mut ech, &mut tables, &line, &members, i as u32);
            }
        }
    }
    let monos = tables.monos().to_vec();
    nullspace_maps(&ech, n, &monos, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    fn cyclic(d: u32) -> ReflectionGroup {
        let g = Matrix::from_rows(vec![vec![CycNum::root_of_unity(d, 1)]]);
        ReflectionGroup::close("z", d, vec![g], DEFAULT_CAP).unwrap()
    }

    fn x() -> Poly {
        Poly::var(1, 0)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(1, CycNum::integer(n))
    }

    fn map(v: Vec<Poly>) -> WMap {
        WMap::new(v)
    }

    #[test]
    fn action_and_coroot_examples() {
        let z2 = cyclic(2);
        let f = map(vec![x(), c(0)]);
        assert_eq!(wmap_act(&z2, &f, 0), f);
        assert_eq!(wmap_act(&z2, &f, 1), map(vec![c(0), x()]));
        assert_eq!(coroot_map(&z2, 0), map(vec![x(), -&x()]));

        let z3 = cyclic(3);
        let l = coroot_map(&z3, 0);
        let zeta = |k| CycNum::root_of_unity(3, k);
        assert_eq!(l, map(vec![x(), x().scale(&zeta(2)), x().scale(&zeta(4))]));
        let f = map(vec![x(), x().pow(2), c(5)]);
        assert_eq!(wmap_act(&z3, &wmap_act(&z3, &wmap_act(&z3, &f, 1), 1), 1), f);
    }

    #[test]
    fn delta_examples() {
        let z2 = cyclic(2);
        assert_eq!(op_delta(&z2, 0, 1, &x().pow(3)).unwrap(), x().pow(2).scale(&CycNum::integer(2)));
        assert!(op_delta(&z2, 0, 1, &x().pow(2)).unwrap().is_zero());
        let z3 = cyclic(3);
        let s = z3.reflection_index(1).unwrap();
        assert_eq!(op_delta(&z3, s, 2, &x().pow(2)).unwrap(), c(3));
    }

    #[test]
    fn a_examples() {
        let z2 = cyclic(2);
        let f = map(vec![x(), c(0)]);
        assert_eq!(op_a(&z2, 0, 1, &f).unwrap(), WMap::one(&z2));
        assert_eq!(op_a(&z2, 0, 0, &f).unwrap(), map(vec![x(), x()]));
        for g in [cyclic(3), cyclic(4)] {
            for (s, r) in g.reflections().iter().enumerate() {
                for i in 1..r.order as i64 {
                    assert!(op_a(&g, s, i, &WMap::one(&g)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let z2 = cyclic(2);
        assert!(hw_member(&z2, &WMap::one(&z2)).ok);
        let bad = hw_member(&z2, &map(vec![c(1), c(0)]));
        assert!(!bad.ok);
        assert_eq!(bad.failures[0].witness, c(1));
        assert!(hw_member(&z2, &map(vec![x(), c(0)])).ok);
    }

    #[test]
    fn decomposition_examples() {
        let z2 = cyclic(2);
        let f = map(vec![x(), c(0)]);
        let parts = decompose_along_s(&z2, &f, 0).unwrap();
        assert_eq!(parts, vec![map(vec![x(), x()]), WMap::one(&z2)]);
        assert_eq!(reconstruct(&z2, 0, &parts), f);

        let z3 = cyclic(3);
        for s in 0..z3.reflections().len() {
            let l = coroot_map(&z3, s);
            let parts = decompose_along_s(&z3, &l, s).unwrap();
            assert!(parts[0].is_zero() && parts[2].is_zero());
            assert_eq!(parts[1], WMap::one(&z3).scale(&CycNum::integer(3)));
            assert_eq!(reconstruct(&z3, s, &parts), l);
        }
        assert!(decompose_along_s(&z2, &map(vec![c(1), c(0)]), 0).is_err());
    }

    #[test]
    fn graded_dimensions_rank_one() {
        let dims = |g: &ReflectionGroup, top: u32| (0..=top).map(|d| hw_graded_basis(g, d).dim()).collect::<Vec<_>>();
        assert_eq!(dims(&cyclic(2), 4), vec![1, 2, 2, 2, 2]);
        assert_eq!(dims(&cyclic(3), 3), vec![1, 2, 3, 3]);
        assert_eq!(dims(&cyclic(4), 4), vec![1, 2, 3, 4, 4]);
        for m in hw_graded_basis(&cyclic(3), 2).maps {
            assert!(hw_member(&cyclic(3), &m).ok);
        }
    }
}
