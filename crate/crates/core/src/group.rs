//! Finite matrix groups enumerated from generators, with their pseudo-reflections.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::linear_form::{act_on_coeffs, LinearForm};
use crate::monomial::default_names;
use crate::poly::MultiPoly;
use crate::{CycForm, CycMatrix, Poly};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub index: usize,
    pub matrix: CycMatrix,
    pub inverse: CycMatrix,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoReflection {
    /// Index of the element in the group enumeration.
    pub element: usize,
    pub order: u32,
    /// Normalized co-root `ℓ_s`, vanishing on the fixed hyperplane.
    pub coroot: CycForm,
    /// `λ_s` with `s · ℓ_s = λ_s ℓ_s`.
    pub eigenvalue: CycNum,
    pub hyperplane_id: usize,
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    name: String,
    variables: Vec<String>,
    nvars: usize,
    conductor: u32,
    elements: Vec<GroupElement>,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    reflections: Vec<PseudoReflection>,
    reflection_of: Vec<Option<usize>>,
    hyperplanes: Vec<CycForm>,
    generated_by_reflections: bool,
}

type MatrixKey = Vec<(Vec<BigInt>, BigInt)>;

fn key(m: &CycMatrix, conductor: u32) -> MatrixKey {
    m.to_rows().iter().flatten().map(|x| x.key_at(conductor)).collect()
}

/// Enumerates the group generated by `generators`, inferring the conductor.
pub fn group_close(generators: Vec<CycMatrix>, cap: usize) -> Result<ReflectionGroup> {
    let conductor = generators
        .iter()
        .flat_map(|g| g.to_rows().into_iter().flatten())
        .fold(1u32, |acc, x| num_integer::lcm(acc, x.conductor()));
    ReflectionGroup::close("W", conductor, generators, cap)
}

impl ReflectionGroup {
    /// BFS closure from the identity, right-multiplying by generators in order.
    pub fn close(name: &str, conductor: u32, generators: Vec<CycMatrix>, cap: usize) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let n = generators.first().map_or(0, Matrix::nrows);
        for (i, g) in generators.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::BadShape { rows: g.nrows(), cols: g.ncols(), expected: n });
            }
            for x in g.to_rows().iter().flatten() {
                if x.lift_to(conductor).is_err() {
                    return Err(Error::ConductorMismatch(x.conductor(), conductor));
                }
            }
            if g.inverse().is_err() {
                return Err(Error::SingularGenerator(i));
            }
        }

        let ngens = generators.len();
        let mut matrices = vec![Matrix::identity(n)];
        let mut index: HashMap<MatrixKey, usize> = HashMap::new();
        index.insert(key(&matrices[0], conductor), 0);
        // right[x * ngens + g] = index of x · gen_g; parent[x] = (y, g) with x = y · gen_g
        let mut right: Vec<usize> = Vec::new();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let p = matrices[x].mul(g);
                let k = key(&p, conductor);
                let idx = match index.get(&k) {
                    Some(&i) => i,
                    None => {
                        let i = matrices.len();
                        if i >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        index.insert(k, i);
                        matrices.push(p);
                        parent.push(Some((x, gi)));
                        queue.push_back(i);
                        i
                    }
                };
                if right.len() < (x + 1) * ngens {
                    right.resize((x + 1) * ngens, usize::MAX);
                }
                right[x * ngens + gi] = idx;
            }
        }
        let size = matrices.len();

        // a · b = (a · parent(b)) · gen, filled in BFS order of b
        let mut mult = vec![usize::MAX; size * size];
        for a in 0..size {
            mult[a * size] = a;
        }
        for b in 1..size {
            let (pb, gi) = parent[b].expect("non-identity has a parent");
            for a in 0..size {
                let ap = mult[a * size + pb];
                mult[a * size + b] = right[ap * ngens + gi];
            }
        }
        let mut inverse = vec![usize::MAX; size];
        for a in 0..size {
            inverse[a] = (0..size).find(|&b| mult[a * size + b] == 0).expect("finite group");
        }
        let orders: Vec<u32> = (0..size)
            .map(|a| {
                let mut k = 1;
                let mut p = a;
                while p != 0 {
                    p = mult[p * size + a];
                    k += 1;
                }
                k
            })
            .collect();
        let elements: Vec<GroupElement> = matrices
            .iter()
            .enumerate()
            .map(|(i, m)| GroupElement {
                index: i,
                matrix: m.clone(),
                inverse: matrices[inverse[i]].clone(),
                order: orders[i],
            })
            .collect();

        let mut group = ReflectionGroup {
            name: name.to_string(),
            variables: default_names(n),
            nvars: n,
            conductor,
            elements,
            mult,
            inverse,
            reflections: Vec::new(),
            reflection_of: vec![None; size],
            hyperplanes: Vec::new(),
            generated_by_reflections: false,
        };
        group.scan_pseudo_reflections();
        Ok(group)
    }

    /// Fills `s(W)`: every element with `rank(s − 1) = 1`.
    fn scan_pseudo_reflections(&mut self) {
        let id = Matrix::identity(self.nvars);
        for e in &self.elements[1..] {
            let a = e.matrix.sub(&id);
            if a.rank() != 1 {
                continue;
            }
            let row = (0..self.nvars)
                .map(|i| a.row(i).to_vec())
                .find(|r| r.iter().any(|x| !x.is_zero()))
                .expect("rank one");
            let coroot = LinearForm::new(row).expect("nonzero row");
            let image = act_on_coeffs(&e.inverse, coroot.coeffs());
            let eigenvalue = image[coroot.pivot()].clone();
            debug_assert!(image
                .iter()
                .zip(coroot.coeffs())
                .all(|(a, b)| *a == eigenvalue.mul_ref(b)));
            let hyperplane_id = match self.hyperplanes.iter().position(|h| *h == coroot) {
                Some(i) => i,
                None => {
                    self.hyperplanes.push(coroot.clone());
                    self.hyperplanes.len() - 1
                }
            };
            self.reflection_of[e.index] = Some(self.reflections.len());
            self.reflections.push(PseudoReflection {
                element: e.index,
                order: e.order,
                coroot,
                eigenvalue,
                hyperplane_id,
            });
        }
        let gens: Vec<usize> = self.reflections.iter().map(|r| r.element).collect();
        self.generated_by_reflections = self.subgroup_size(&gens) == self.order();
    }

    fn subgroup_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Variable names used for printing and parsing; `x1..xn` unless overridden.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn with_variables(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.nvars);
        self.variables = names;
        self
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `|W|`.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.elements[a].order as i64;
        let k = k.rem_euclid(ord);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// The set `s(W)` in enumeration order.
    pub fn reflections(&self) -> &[PseudoReflection] {
        &self.reflections
    }

    pub fn reflection_index(&self, element: usize) -> Option<usize> {
        self.reflection_of[element]
    }

    /// Distinct normalized co-roots, indexed by `hyperplane_id`.
    pub fn hyperplanes(&self) -> &[CycForm] {
        &self.hyperplanes
    }

    pub fn generated_by_reflections(&self) -> bool {
        self.generated_by_reflections
    }

    /// `x · f` for the element with index `x`.
    pub fn act(&self, x: usize, f: &Poly) -> Poly {
        f.apply_with_inverse(&self.elements[x].inverse)
    }

    /// Coefficients of `x · ℓ` (not normalized).
    pub fn act_on_form(&self, x: usize, coeffs: &[CycNum]) -> Vec<CycNum> {
        act_on_coeffs(&self.elements[x].inverse, coeffs)
    }

    /// The linear polynomial `x(ℓ_s)` for reflection number `s`.
    pub fn coroot_image(&self, x: usize, s: usize) -> Poly {
        crate::linear_form::poly_of(&self.act_on_form(x, self.reflections[s].coroot.coeffs()))
    }

    /// Record for `w s w⁻¹` and the scalar `c` with `w(ℓ_s) = c · ℓ_{wsw⁻¹}`.
    pub fn conjugate_reflection(&self, w: usize, s: usize) -> (usize, CycNum) {
        let refl = &self.reflections[s];
        let t_elem = self.mul(self.mul(w, refl.element), self.inv(w));
        let t = self.reflection_of[t_elem].expect("s(W) is closed under conjugation");
        let image = self.act_on_form(w, refl.coroot.coeffs());
        let c = image[self.reflections[t].coroot.pivot()].clone();
        (t, c)
    }

    /// `Σ_H (|W_H| − 1)` over fixed hyperplanes, where `W_H` is the cyclic pointwise stabilizer.
    pub fn hyperplane_count_check(&self) -> usize {
        let mut per_h = vec![1u32; self.hyperplanes.len()];
        for r in &self.reflections {
            per_h[r.hyperplane_id] = per_h[r.hyperplane_id].max(r.order);
        }
        per_h.iter().map(|&k| k as usize - 1).sum()
    }

    pub fn zero_poly(&self) -> Poly {
        MultiPoly::zero(self.nvars)
    }

    pub fn one_poly(&self) -> Poly {
        MultiPoly::constant(self.nvars, CycNum::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<CycNum>>) -> CycMatrix {
        Matrix::from_rows(rows)
    }

    fn zeta(k: i64) -> CycNum {
        CycNum::root_of_unity(3, k)
    }

    pub(crate) fn g312() -> ReflectionGroup {
        let o = CycNum::zero;
        let i = CycNum::one;
        ReflectionGroup::close(
            "g312",
            3,
            vec![m(vec![vec![zeta(1), o()], vec![o(), i()]]), m(vec![vec![o(), i()], vec![i(), o()]])],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn small_closures() {
        let z2 = group_close(vec![m(vec![vec![CycNum::integer(-1)]])], 100).unwrap();
        assert_eq!(z2.order(), 2);
        let r = &z2.reflections()[0];
        assert_eq!((r.order, r.eigenvalue.clone()), (2, CycNum::integer(-1)));
        assert_eq!(r.coroot.coeffs(), &[CycNum::one()]);

        let z3 = group_close(vec![m(vec![vec![zeta(1)]])], 100).unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.conductor(), 3);
        assert_eq!(z3.reflections()[0].eigenvalue, zeta(2));
    }

    #[test]
    fn g312_inventory() {
        let g = g312();
        assert_eq!(g.order(), 18);
        assert_eq!(g.reflections().len(), 7);
        let order3: Vec<_> = g.reflections().iter().filter(|r| r.order == 3).collect();
        let order2: Vec<_> = g.reflections().iter().filter(|r| r.order == 2).collect();
        assert_eq!((order3.len(), order2.len()), (4, 3));
        for r in &order3 {
            let c = r.coroot.coeffs();
            assert!(c[0].is_zero() || c[1].is_zero());
        }
        for r in &order2 {
            assert!(r.coroot.coeffs()[0].is_one());
            assert!(!r.coroot.coeffs()[1].is_zero());
        }
        assert_eq!(g.hyperplanes().len(), 5);
        assert_eq!(g.hyperplane_count_check(), 7);
        assert!(g.generated_by_reflections());
    }

    #[test]
    fn tables_form_a_group() {
        let g = g312();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
            for b in 0..n {
                let prod = g.element(a).matrix.mul(&g.element(b).matrix);
                assert_eq!(prod, g.element(g.mul(a, b)).matrix);
            }
        }
    }

    #[test]
    fn eigenvalue_orders_match() {
        let g = g312();
        for r in g.reflections() {
            assert_eq!(r.eigenvalue.multiplicative_order(10), Some(r.order));
            let l = r.coroot.to_poly();
            assert_eq!(g.act(r.element, &l), l.scale(&r.eigenvalue));
        }
    }

    #[test]
    fn conjugation_example() {
        let g = g312();
        // generator order: diag(ζ,1) is element 1, swap is element 2
        let s = g.reflection_index(1).unwrap();
        let swap = 2;
        let (t, c) = g.conjugate_reflection(swap, s);
        let expected = m(vec![vec![CycNum::one(), CycNum::zero()], vec![CycNum::zero(), zeta(1)]]);
        assert_eq!(g.element(g.reflections()[t].element).matrix, expected);
        assert_eq!(c, CycNum::one());
        assert_eq!(g.reflections()[t].eigenvalue, g.reflections()[s].eigenvalue);
        assert_eq!(g.conjugate_reflection(0, s), (s, CycNum::one()));
    }

    #[test]
    fn errors() {
        let sing = m(vec![vec![CycNum::zero()]]);
        assert_eq!(group_close(vec![sing], 10).unwrap_err(), Error::SingularGenerator(0));
        let two = m(vec![vec![CycNum::integer(2)]]);
        assert_eq!(group_close(vec![two], 10).unwrap_err(), Error::CapExceeded(10));
    }
}
