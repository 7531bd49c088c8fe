//! The linear hypergraph of a pseudo-reflection group: vertices `W`, hyperedges the
//! right `⟨s⟩`-cosets, axial lines `x(ℓ_s)`, and generating classes `τ(x s^j) = λ_s^j x(ℓ_s)`.
//!
//! Membership is decided edge by edge with a Vandermonde solve, independently of
//! the operators `ᵢA_s`; the integral formula is evaluated directly for comparison.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::field::Field;
use crate::group::ReflectionGroup;
use crate::linalg::{Echelon, Matrix};
use crate::linear_form::{divide_exact_by_linear_power, LinearForm};
use crate::operators::{add_divisibility_rows, nullspace_maps, right_cosets, AdaptedTables, MapBasis, WMap};
use crate::{CycForm, Poly};

#[derive(Clone, Debug)]
pub struct HyperEdge {
    /// Index into `s(W)`.
    pub reflection: usize,
    pub rep: usize,
    /// `[x, xs, …, xs^{|s|−1}]`.
    pub members: Vec<usize>,
    /// Normalized generator of the axial line.
    pub axial: CycForm,
    /// `x(ℓ_s) = axial_scale · axial`.
    pub axial_scale: CycNum,
    /// `τ(members[j]) = tau[j] · axial`.
    pub tau: Vec<CycNum>,
}

impl HyperEdge {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Values of `F` on the members, in member order.
    pub fn restrict(&self, f: &WMap) -> Vec<Poly> {
        self.members.iter().map(|&p| f.value(p).clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Hypergraph {
    pub vertices: usize,
    pub edges: Vec<HyperEdge>,
    /// Edges incident to each vertex.
    pub by_vertex: Vec<Vec<usize>>,
}

pub fn build_hypergraph(w: &ReflectionGroup) -> Hypergraph {
    let mut seen: BTreeSet<(Vec<usize>, usize)> = BTreeSet::new();
    let mut edges = Vec::new();
    for (s, r) in w.reflections().iter().enumerate() {
        for coset in right_cosets(w, r.element) {
            let mut set = coset.clone();
            set.sort_unstable();
            if !seen.insert((set, r.hyperplane_id)) {
                continue;
            }
            let x = coset[0];
            let (axial, axial_scale) =
                LinearForm::normalize(w.act_on_form(x, r.coroot.coeffs())).expect("nonzero co-root image");
            let mut tau = Vec::with_capacity(coset.len());
            let mut t = axial_scale.clone();
            for _ in 0..coset.len() {
                tau.push(t.clone());
                t *= &r.eigenvalue;
            }
            edges.push(HyperEdge { reflection: s, rep: x, members: coset, axial, axial_scale, tau });
        }
    }
    let mut by_vertex = vec![Vec::new(); w.order()];
    for (k, e) in edges.iter().enumerate() {
        for &p in &e.members {
            by_vertex[p].push(k);
        }
    }
    Hypergraph { vertices: w.order(), edges, by_vertex }
}

/// The first coefficient `g_i` of `G = Σ g_i τ^i` that is not a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotMember {
    pub coefficient: usize,
    /// Low-order part of `g_i · axial^i` blocking the division.
    pub witness: Poly,
}

/// Solves `G = Σ_i g_i τ_e^i` on one edge and checks each `g_i ∈ R`.
pub fn edge_member_vandermonde(values: &[Poly], e: &HyperEdge) -> Result<Vec<Poly>, NotMember> {
    assert_eq!(values.len(), e.len());
    let k = e.len();
    let v = Matrix::from_rows(e.tau.iter().map(|t| (0..k as u32).map(|i| t.pow(i)).collect()).collect());
    let vinv = v.inverse().expect("τ is injective on the edge");
    let nv = values.first().map_or(0, Poly::nvars);
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        // g_i · axial^i = Σ_j (V⁻¹)_{ij} G_j
        let mut num = Poly::zero(nv);
        for (j, g) in values.iter().enumerate() {
            num = &num + &g.scale(&vinv[(i, j)]);
        }
        match divide_exact_by_linear_power(&num, &e.axial, i as u32) {
            Ok(q) => out.push(q),
            Err(err) => return Err(NotMember { coefficient: i, witness: err.witness }),
        }
    }
    Ok(out)
}

/// `numerator · axial^exponent`, a rational function with a single linear denominator.
#[derive(Clone, Debug)]
pub struct AxialFraction {
    pub numerator: Poly,
    pub axial: CycForm,
    pub exponent: i64,
}

impl AxialFraction {
    pub fn is_polynomial(&self) -> bool {
        self.exponent >= 0 || divide_exact_by_linear_power(&self.numerator, &self.axial, (-self.exponent) as u32).is_ok()
    }

    /// Equality as rational functions (same axial line assumed).
    pub fn same_as(&self, other: &AxialFraction) -> bool {
        assert_eq!(self.axial, other.axial);
        let base = self.exponent.min(other.exponent);
        let a = self.axial.to_poly();
        let lhs = &self.numerator * &a.pow((self.exponent - base) as u32);
        let rhs = &other.numerator * &a.pow((other.exponent - base) as u32);
        lhs == rhs
    }
}

/// `Σ_p G(p) τ(p)^k / Π_{q≠p} (τ(p) − τ(q))`, evaluated from the scalars `τ(p) = t_p · axial`.
pub fn edge_integral(values: &[Poly], e: &HyperEdge, k: u32) -> AxialFraction {
    let nv = values.first().map_or(0, Poly::nvars);
    let mut num = Poly::zero(nv);
    for (p, g) in values.iter().enumerate() {
        let mut den = CycNum::one();
        for (q, tq) in e.tau.iter().enumerate() {
            if q != p {
                den *= &(&e.tau[p] - tq);
            }
        }
        let c = e.tau[p].pow(k) * &den.inv().expect("distinct τ values");
        num = &num + &g.scale(&c);
    }
    AxialFraction { numerator: num, axial: e.axial.clone(), exponent: k as i64 - (e.len() as i64 - 1) }
}

/// `|s|⁻¹ · _{|s|−1−k}A_s(F)(x)` at the edge representative, kept as a fraction.
pub fn edge_operator_side(w: &ReflectionGroup, f: &WMap, e: &HyperEdge, k: u32) -> AxialFraction {
    let s = e.reflection;
    let ord = w.reflections()[s].order as i64;
    let i = ord - 1 - k as i64;
    let raw = crate::operators::op_a_numerator(w, s, i, f, e.rep);
    let c = e.axial_scale.powi(-i).expect("nonzero") * &CycNum::integer(ord).inv().expect("nonzero");
    AxialFraction { numerator: raw.scale(&c), axial: e.axial.clone(), exponent: -i }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeFailure {
    pub edge: usize,
    pub coefficient: usize,
    pub witness: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergraphCertificate {
    pub ok: bool,
    pub failures: Vec<EdgeFailure>,
}

/// Membership in the hypergraph cohomology: every edge restriction lies in `H(e, τ_e)`.
pub fn hypergraph_member(f: &WMap, g: &Hypergraph) -> HypergraphCertificate {
    let failures: Vec<EdgeFailure> = g
        .edges
        .par_iter()
        .enumerate()
        .filter_map(|(k, e)| {
            edge_member_vandermonde(&e.restrict(f), e)
                .err()
                .map(|nm| EdgeFailure { edge: k, coefficient: nm.coefficient, witness: nm.witness })
        })
        .collect();
    HypergraphCertificate { ok: failures.is_empty(), failures }
}

/// The pairwise condition: `F(q) − F(p)` divisible by the axial form on every edge.
pub fn naive_pairwise_member(f: &WMap, g: &Hypergraph) -> bool {
    g.edges.par_iter().all(|e| {
        e.members.iter().enumerate().all(|(a, &p)| {
            e.members[a + 1..]
                .iter()
                .all(|&q| divide_exact_by_linear_power(&(f.value(q) - f.value(p)), &e.axial, 1).is_ok())
        })
    })
}

/// Degree-`d` solutions of the pairwise condition.
pub fn naive_graded_basis(w: &ReflectionGroup, g: &Hypergraph, d: u32) -> MapBasis {
    let n = w.nvars();
    let mut tables = AdaptedTables::new(n, d);
    let mut ech = Echelon::new(w.order() * tables.monos().len());
    for e in &g.edges {
        let p = e.members[0];
        for &q in &e.members[1..] {
            let pair = [(q, CycNum::one()), (p, -CycNum::one())];
            add_divisibility_rows(&mut ech, &mut tables, e.axial.coeffs(), &pair, 1);
        }
    }
    let monos = tables.monos().to_vec();
    nullspace_maps(&ech, n, &monos, d)
}

#[derive(Serialize)]
struct EdgeJson {
    reflection_element: usize,
    rep: usize,
    members: Vec<usize>,
    axial: String,
    tau: Vec<String>,
}

#[derive(Serialize)]
struct HypergraphJson<'a> {
    group: &'a str,
    vertices: usize,
    edges: Vec<EdgeJson>,
}

impl Hypergraph {
    pub fn to_json(&self, w: &ReflectionGroup, names: &[String]) -> String {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                reflection_element: w.reflections()[e.reflection].element,
                rep: e.rep,
                members: e.members.clone(),
                axial: e.axial.to_poly().format_with(names),
                tau: e.tau.iter().map(ToString::to_string).collect(),
            })
            .collect();
        let doc = HypergraphJson { group: w.name(), vertices: self.vertices, edges };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Graphviz form: each hyperedge drawn as a clique labeled by its axial form.
    pub fn to_dot(&self, w: &ReflectionGroup, names: &[String]) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"{}\" {{", w.name()).unwrap();
        for v in 0..self.vertices {
            writeln!(out, "  {v};").unwrap();
        }
        for (k, e) in self.edges.iter().enumerate() {
            let label = e.axial.to_poly().format_with(names);
            for (a, &p) in e.members.iter().enumerate() {
                for &q in &e.members[a + 1..] {
                    writeln!(out, "  {p} -- {q} [label=\"{label}\", edge_id={k}];").unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `Π_{a≠j} (1 − λ^a / λ^j)` for the eigenvalue of reflection `s` and each `j`.
pub fn normalization_constants(w: &ReflectionGroup, s: usize) -> Vec<CycNum> {
    let r = &w.reflections()[s];
    let ord = r.order as i64;
    (0..ord)
        .map(|j| {
            (0..ord).filter(|&a| a != j).fold(CycNum::one(), |acc, a| {
                let ratio = r.eigenvalue.powi(a - j).expect("nonzero");
                acc * &(CycNum::one() - ratio)
            })
        })
        .collect()
}

/// Whether the `τ` scalars on every edge are pairwise distinct.
pub fn tau_injective(g: &Hypergraph) -> bool {
    g.edges.iter().all(|e| {
        e.tau.iter().enumerate().all(|(a, t)| e.tau[a + 1..].iter().all(|u| !(t - u).is_zero()))
    })
}
