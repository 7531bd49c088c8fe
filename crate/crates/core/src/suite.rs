//! Seeded verification suites and the report they produce.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::ReflectionGroup;
use crate::hypergraph::{
    build_hypergraph, edge_integral, edge_member_vandermonde, edge_operator_side, hypergraph_member,
    naive_graded_basis, naive_pairwise_member, normalization_constants, tau_injective, Hypergraph,
};
use crate::invariants::invariant_basis;
use crate::localization::{check_comdi, dimension_rows, mu, DimensionRow, TensorElement};
use crate::molien::{molien_series, top_coinvariant_degree};
use crate::operators::{
    decompose_along_s, hw_graded_basis, hw_member, op_a, op_a_with_coroot, reconstruct, wmap_act, WMap,
};
use crate::random::{random_member, random_non_member, random_poly, random_simple_tensor, random_tensor, rng};

/// Outcome of one property checked over many inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Descriptions of the first few failures.
    #[serde(default)]
    pub examples: Vec<String>,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(name: &str, outcomes: Vec<Option<String>>) -> Self {
        let trials = outcomes.len();
        let failed: Vec<String> = outcomes.into_iter().flatten().collect();
        SuiteResult {
            name: name.to_string(),
            trials,
            failures: failed.len(),
            examples: failed.into_iter().take(3).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub rows: Vec<DimensionRow>,
    pub sample: SuiteResult,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(DimensionRow::pass) && self.sample.pass()
    }
}

/// Graded triple counts up to `dmax` plus `μ(T) ∈ 𝓗_W` on random tensors.
pub fn verify_theorem(w: &ReflectionGroup, dmax: u32, trials: usize, seed: u64) -> Result<TheoremReport> {
    let rows = dimension_rows(w, dmax)?;
    let mut r = rng(seed);
    let tensors: Vec<TensorElement> = (0..trials).map(|_| random_tensor(&mut r, w.nvars(), 5)).collect();
    let outcomes = tensors
        .par_iter()
        .enumerate()
        .map(|(k, t)| (!hw_member(w, &mu(w, t)).ok).then(|| format!("tensor {k}: μ(T) not a member")))
        .collect();
    Ok(TheoremReport { rows, sample: SuiteResult::from_outcomes("image_in_hw", outcomes) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaiveControl {
    pub naive_degree1: usize,
    pub hw_degree1: usize,
    /// Whether every reflection has order 2, where both notions should coincide.
    pub all_order_two: bool,
    pub agreement: SuiteResult,
}

impl NaiveControl {
    pub fn pass(&self) -> bool {
        let dims_ok = if self.all_order_two {
            self.naive_degree1 == self.hw_degree1
        } else {
            self.naive_degree1 >= self.hw_degree1
        };
        dims_ok && self.agreement.pass()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Timings(pub Vec<(String, Duration)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub reflections: usize,
    pub hyperplanes: usize,
    pub degrees: Vec<u32>,
    pub generated_by_reflections: bool,
    pub max_degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub dimension_rows: Vec<DimensionRow>,
    pub lemmas: Vec<SuiteResult>,
    pub hypergraph: Vec<SuiteResult>,
    pub naive_control: Option<NaiveControl>,
    /// Wall-clock time per suite; left out of the JSON form so reports are reproducible.
    #[serde(skip)]
    pub timings: Timings,
    pub pass: bool,
}

impl VerificationReport {
    fn compute_pass(&self) -> bool {
        self.dimension_rows.iter().all(DimensionRow::pass)
            && self.lemmas.iter().all(SuiteResult::pass)
            && self.hypergraph.iter().all(SuiteResult::pass)
            && self.naive_control.as_ref().is_none_or(NaiveControl::pass)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.lemmas.iter().chain(&self.hypergraph).find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Defaults to `Σ(d_i − 1) + 3`.
    pub max_degree: Option<u32>,
    pub trials: usize,
    pub seed: u64,
    pub naive_control: bool,
    pub force: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_degree: None, trials: 100, seed: 0, naive_control: false, force: false }
    }
}

/// Independent stream per suite so suites can be reordered without changing inputs.
fn stream(seed: u64, suite: u64) -> crate::random::SuiteRng {
    rng(seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn members(w: &ReflectionGroup, seed: u64, suite: u64, n: usize) -> Vec<WMap> {
    let mut r = stream(seed, suite);
    (0..n).map(|_| random_member(&mut r, w)).collect()
}

fn reflection_exponents(w: &ReflectionGroup) -> Vec<(usize, i64)> {
    w.reflections()
        .iter()
        .enumerate()
        .flat_map(|(s, r)| (1..r.order as i64).map(move |i| (s, i)))
        .collect()
}

pub fn suite_constants(w: &ReflectionGroup) -> SuiteResult {
    let one = WMap::one(w);
    let outcomes = reflection_exponents(w)
        .into_iter()
        .map(|(s, i)| match op_a(w, s, i, &one) {
            Ok(a) if a.is_zero() => None,
            _ => Some(format!("s={s}, i={i}")),
        })
        .collect();
    SuiteResult::from_outcomes("constants", outcomes)
}

/// `F · w ∈ 𝓗_W` and `ᵢA_s(F·w) = c^{-i} ᵢA_t(F)·w` with `t = wsw⁻¹`, `w(ℓ_s) = c ℓ_t`.
pub fn suite_conjugation(w: &ReflectionGroup, fs: &[WMap]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let outcomes = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            for g in 0..w.order() {
                let fw = wmap_act(w, f, g);
                if !hw_member(w, &fw).ok {
                    return Some(format!("member {k}: F·w not a member for w={g}"));
                }
                for &(s, i) in &ri {
                    let (t, c) = w.conjugate_reflection(g, s);
                    let lhs = op_a(w, s, i, &fw).ok();
                    let rhs = op_a(w, t, i, f).ok().map(|a| wmap_act(w, &a, g).scale(&c.powi(-i).expect("nonzero")));
                    if lhs.is_none() || lhs != rhs {
                        return Some(format!("member {k}: conjugation identity fails for w={g}, s={s}, i={i}"));
                    }
                }
            }
            None
        })
        .collect();
    SuiteResult::from_outcomes("conjugation", outcomes)
}

pub fn suite_decomposition(w: &ReflectionGroup, fs: &[WMap]) -> SuiteResult {
    let outcomes = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            (0..w.reflections().len()).find_map(|s| match decompose_along_s(w, f, s) {
                Ok(parts) if reconstruct(w, s, &parts) == *f => None,
                _ => Some(format!("member {k}, s={s}")),
            })
        })
        .collect();
    SuiteResult::from_outcomes("decomposition", outcomes)
}

/// `ᵢA_s(FG) = |s|⁻¹ Σ_a ₐA_s(F) · _{i−a}A_s(G)`.
pub fn product_rule_holds(w: &ReflectionGroup, f: &WMap, g: &WMap, s: usize, i: i64) -> bool {
    let ord = w.reflections()[s].order as i64;
    let Ok(lhs) = op_a(w, s, i, &(f * g)) else { return false };
    let mut rhs = WMap::zero(w);
    for a in 0..ord {
        let (Ok(fa), Ok(gb)) = (op_a(w, s, a, f), op_a(w, s, i - a, g)) else { return false };
        rhs = &rhs + &(&fa * &gb);
    }
    lhs == rhs.scale(&CycNum::integer(ord).inv().expect("nonzero"))
}

pub fn suite_product_rule(w: &ReflectionGroup, pairs: &[(WMap, WMap)]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let outcomes = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (f, g))| {
            ri.iter().find(|&&(s, i)| !product_rule_holds(w, f, g, s, i)).map(|(s, i)| format!("pair {k}, s={s}, i={i}"))
        })
        .collect();
    SuiteResult::from_outcomes("product_rule", outcomes)
}

pub fn suite_delta_commutes(w: &ReflectionGroup, ts: &[TensorElement]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let outcomes = ts
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            ri.iter().find(|&&(s, i)| !check_comdi(w, s, i, t)).map(|(s, i)| format!("tensor {k}, s={s}, i={i}"))
        })
        .collect();
    SuiteResult::from_outcomes("delta_commutes", outcomes)
}

pub fn suite_operator_closure(w: &ReflectionGroup, fs: &[WMap]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let outcomes = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            ri.iter()
                .find(|&&(s, i)| !op_a(w, s, i, f).is_ok_and(|a| hw_member(w, &a).ok))
                .map(|(s, i)| format!("member {k}, s={s}, i={i}"))
        })
        .collect();
    SuiteResult::from_outcomes("operator_closure", outcomes)
}

fn s_invariance(w: &ReflectionGroup, fs: &[WMap]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let outcomes = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            ri.iter()
                .find(|&&(s, i)| {
                    let a = op_a(w, s, i, f).expect("member");
                    wmap_act(w, &a, w.reflections()[s].element) != a
                })
                .map(|(s, i)| format!("member {k}, s={s}, i={i}"))
        })
        .collect();
    SuiteResult::from_outcomes("s_invariance", outcomes)
}

/// Rescaling the co-root by `c` rescales `ᵢA_s` by `c^{-i}` and keeps membership.
fn coroot_scaling(w: &ReflectionGroup, fs: &[WMap]) -> SuiteResult {
    let ri = reflection_exponents(w);
    let c = CycNum::integer(3) + CycNum::root_of_unity(w.conductor(), 1);
    let outcomes = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            ri.iter()
                .find(|&&(s, i)| {
                    let scaled: Vec<CycNum> = w.reflections()[s].coroot.coeffs().iter().map(|a| a * &c).collect();
                    let lhs = op_a_with_coroot(w, s, &scaled, i, f);
                    let rhs = op_a(w, s, i, f).map(|a| a.scale(&c.powi(-i).expect("nonzero")));
                    lhs != rhs
                })
                .map(|(s, i)| format!("member {k}, s={s}, i={i}"))
        })
        .collect();
    SuiteResult::from_outcomes("coroot_scaling", outcomes)
}

fn closure_under_products(w: &ReflectionGroup, pairs: &[(WMap, WMap)]) -> SuiteResult {
    let outcomes = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (f, g))| (!hw_member(w, &(f * g)).ok).then(|| format!("pair {k}")))
        .collect();
    SuiteResult::from_outcomes("product_closure", outcomes)
}

fn mu_properties(w: &ReflectionGroup, seed: u64, trials: usize) -> Vec<SuiteResult> {
    let mut r = stream(seed, 7);
    let n = w.nvars();
    let inputs: Vec<(TensorElement, TensorElement)> =
        (0..trials).map(|_| (random_tensor(&mut r, n, 3), random_tensor(&mut r, n, 3))).collect();
    let hom = inputs
        .par_iter()
        .enumerate()
        .map(|(k, (a, b))| (mu(w, &(a * b)) != &mu(w, a) * &mu(w, b)).then(|| format!("pair {k}")))
        .collect();
    let equiv = inputs
        .par_iter()
        .enumerate()
        .map(|(k, (a, _))| {
            let fa = mu(w, a);
            (0..w.order()).find(|&g| mu(w, &a.act_right(w, g)) != wmap_act(w, &fa, g)).map(|g| format!("tensor {k}, w={g}"))
        })
        .collect();

    // f h ⊗ g = f ⊗ h g for invariants h in the fundamental degrees
    let invariants: Vec<_> = molien_series(w)
        .unwrap_or_default()
        .into_iter()
        .flat_map(|d| invariant_basis(w, d).vectors)
        .collect();
    let mut r = stream(seed, 8);
    let middle_inputs: Vec<(crate::Poly, crate::Poly, usize)> = (0..trials)
        .map(|_| {
            let h = rand::Rng::gen_range(&mut r, 0..invariants.len().max(1));
            (random_poly(&mut r, n, 2), random_poly(&mut r, n, 2), h)
        })
        .collect();
    let middle = middle_inputs
        .par_iter()
        .enumerate()
        .map(|(k, (f, g, h))| {
            let h = invariants.get(*h)?;
            let left = mu(w, &TensorElement::simple(f * h, g.clone()));
            let right = mu(w, &TensorElement::simple(f.clone(), h * g));
            (left != right).then(|| format!("sample {k}"))
        })
        .collect();
    vec![
        SuiteResult::from_outcomes("ring_homomorphism", hom),
        SuiteResult::from_outcomes("equivariance", equiv),
        SuiteResult::from_outcomes("middle_invariance", middle),
    ]
}

fn hypergraph_suites(w: &ReflectionGroup, g: &Hypergraph, fs: &[WMap], non: &[WMap]) -> Vec<SuiteResult> {
    let agree = |f: &WMap| hw_member(w, f).ok == hypergraph_member(f, g).ok;
    let mut outcomes: Vec<Option<String>> = fs
        .par_iter()
        .enumerate()
        .map(|(k, f)| (!agree(f) || !hw_member(w, f).ok).then(|| format!("member {k}")))
        .collect();
    outcomes.extend(
        non.par_iter()
            .enumerate()
            .map(|(k, f)| (!agree(f) || hypergraph_member(f, g).ok).then(|| format!("non-member {k}")))
            .collect::<Vec<_>>(),
    );
    let equality = SuiteResult::from_outcomes("equality", outcomes);

    let integral_outcomes = fs
        .par_iter()
        .chain(non.par_iter())
        .enumerate()
        .map(|(k, f)| {
            for (ei, e) in g.edges.iter().enumerate() {
                let vals = e.restrict(f);
                for kk in 0..e.len() as u32 {
                    if !edge_integral(&vals, e, kk).same_as(&edge_operator_side(w, f, e, kk)) {
                        return Some(format!("map {k}, edge {ei}, k={kk}"));
                    }
                }
            }
            None
        })
        .collect();
    let integral = SuiteResult::from_outcomes("integral_identity", integral_outcomes);

    // Vandermonde membership on an edge ⇔ all integrals with k ≤ |e| − 2 are polynomial
    let vdm_outcomes = fs
        .par_iter()
        .chain(non.par_iter())
        .enumerate()
        .map(|(k, f)| {
            g.edges.iter().enumerate().find_map(|(ei, e)| {
                let vals = e.restrict(f);
                let by_vdm = edge_member_vandermonde(&vals, e).is_ok();
                let by_int = (0..e.len() as u32 - 1).all(|kk| edge_integral(&vals, e, kk).is_polynomial());
                (by_vdm != by_int).then(|| format!("map {k}, edge {ei}"))
            })
        })
        .collect();
    let vdm = SuiteResult::from_outcomes("vandermonde_vs_integral", vdm_outcomes);

    let structural = (0..w.reflections().len())
        .map(|s| {
            let ord = CycNum::integer(w.reflections()[s].order as i64);
            (!normalization_constants(w, s).iter().all(|c| *c == ord)).then(|| format!("s={s}"))
        })
        .chain(std::iter::once((!tau_injective(g)).then(|| "τ not injective".to_string())))
        .collect();
    let structural = SuiteResult::from_outcomes("edge_normalization", structural);
    vec![equality, integral, vdm, structural]
}

fn naive_control(w: &ReflectionGroup, g: &Hypergraph, fs: &[WMap], non: &[WMap]) -> NaiveControl {
    let all_order_two = w.reflections().iter().all(|r| r.order == 2);
    let outcomes = if all_order_two {
        fs.par_iter()
            .chain(non.par_iter())
            .enumerate()
            .map(|(k, f)| (naive_pairwise_member(f, g) != hypergraph_member(f, g).ok).then(|| format!("map {k}")))
            .collect()
    } else {
        // members of 𝓗_W always pass the pairwise test
        fs.par_iter().enumerate().map(|(k, f)| (!naive_pairwise_member(f, g)).then(|| format!("member {k}"))).collect()
    };
    NaiveControl {
        naive_degree1: naive_graded_basis(w, g, 1).dim(),
        hw_degree1: hw_graded_basis(w, 1).dim(),
        all_order_two,
        agreement: SuiteResult::from_outcomes("naive_agreement", outcomes),
    }
}

/// Runs every suite on `w`; deterministic in `(w, config)` apart from timings.
pub fn run_suite(w: &ReflectionGroup, cfg: &SuiteConfig) -> Result<VerificationReport> {
    if !w.generated_by_reflections() && !cfg.force {
        return Err(Error::NotReflectionGenerated);
    }
    let mut timings = Vec::new();
    let mut timed = |name: &str, start: Instant| timings.push((name.to_string(), start.elapsed()));

    let t = Instant::now();
    let degrees = molien_series(w)?;
    let dmax = cfg.max_degree.unwrap_or(top_coinvariant_degree(&degrees) + 3);
    let theorem = verify_theorem(w, dmax, cfg.trials, cfg.seed)?;
    timed("theorem", t);

    let n = cfg.trials;
    let fs = members(w, cfg.seed, 1, n);
    let mut r = stream(cfg.seed, 2);
    let pairs: Vec<(WMap, WMap)> = (0..n).map(|_| (random_member(&mut r, w), random_member(&mut r, w))).collect();
    let mut r = stream(cfg.seed, 3);
    let simple: Vec<TensorElement> = (0..n).map(|_| random_simple_tensor(&mut r, w.nvars(), 5)).collect();
    let mut r = stream(cfg.seed, 4);
    let non: Vec<WMap> = (0..n).map(|_| random_non_member(&mut r, w)).collect();

    let mut lemmas = vec![theorem.sample.clone()];
    let t = Instant::now();
    lemmas.push(suite_constants(w));
    lemmas.push(suite_conjugation(w, &fs));
    lemmas.push(suite_decomposition(w, &fs));
    lemmas.push(suite_product_rule(w, &pairs));
    lemmas.push(suite_delta_commutes(w, &simple));
    lemmas.push(suite_operator_closure(w, &fs));
    lemmas.push(s_invariance(w, &fs));
    lemmas.push(coroot_scaling(w, &fs));
    lemmas.push(closure_under_products(w, &pairs));
    lemmas.extend(mu_properties(w, cfg.seed, n));
    timed("lemmas", t);

    let t = Instant::now();
    let g = build_hypergraph(w);
    let hypergraph = hypergraph_suites(w, &g, &fs, &non);
    let naive = cfg.naive_control.then(|| naive_control(w, &g, &fs, &non));
    timed("hypergraph", t);

    let mut report = VerificationReport {
        group: w.name().to_string(),
        order: w.order(),
        reflections: w.reflections().len(),
        hyperplanes: w.hyperplanes().len(),
        degrees,
        generated_by_reflections: w.generated_by_reflections(),
        max_degree: dmax,
        trials: n,
        seed: cfg.seed,
        dimension_rows: theorem.rows,
        lemmas,
        hypergraph,
        naive_control: naive,
        timings: Timings(timings),
        pass: false,
    };
    report.pass = report.compute_pass();
    Ok(report)
}
