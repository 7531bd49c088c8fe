//! Values fixed by independent computations, and scalar-evaluation oracles for the operators.

use num_traits::{One, Zero};
use rand::Rng;
use reflect_gkm::random::{random_member, rng};
use reflect_gkm::{
    bundled, divide_exact_by_linear_power, graded_monomials, molien_coefficients, op_a, BigRational, CycNum, Field,
    LinearForm, Matrix, Monomial, MultiPoly, Poly, ReflectionGroup, WMap,
};

fn load(name: &str) -> ReflectionGroup {
    bundled::load(name).unwrap().unwrap()
}

fn ints(v: &[BigRational]) -> Vec<i64> {
    v.iter()
        .map(|c| {
            assert!(c.is_integer());
            i64::try_from(c.to_integer()).unwrap()
        })
        .collect()
}

// Series expansions of the Molien sum computed symbolically outside this crate.
#[test]
fn molien_series_prefixes() {
    assert_eq!(ints(&molien_coefficients(&load("s3"), 9)), [1, 0, 1, 1, 1, 1, 2, 1, 2]);
    assert_eq!(ints(&molien_coefficients(&load("b2"), 9)), [1, 0, 1, 0, 2, 0, 2, 0, 3]);
    assert_eq!(ints(&molien_coefficients(&load("g312"), 9)), [1, 0, 0, 1, 0, 0, 2, 0, 0]);
    assert_eq!(ints(&molien_coefficients(&load("z4"), 9)), [1, 0, 0, 0, 1, 0, 0, 0, 1]);
}

#[test]
fn g312_expected_row() {
    assert_eq!(reflect_gkm::expected_dims(&[3, 6], 2, 5), [1, 4, 10, 19, 31, 46]);
}

fn random_point<R: Rng>(r: &mut R, n: usize) -> Vec<CycNum> {
    (0..n)
        .map(|_| {
            let p: i64 = r.gen_range(-9..=9);
            let q: i64 = r.gen_range(1..=7);
            CycNum::rational(BigRational::new(p.into(), q.into()))
        })
        .collect()
}

/// `ᵢA_s(F)(x)` at a point, from the defining sum with scalar arithmetic only.
fn a_at_point(w: &ReflectionGroup, s: usize, i: i64, f: &WMap, x: usize, v: &[CycNum]) -> Option<CycNum> {
    let r = &w.reflections()[s];
    let mut y = x;
    let mut sum = CycNum::zero();
    for j in 0..r.order as i64 {
        let wt = r.eigenvalue.powi(-i * j)?;
        sum += &(f.value(y).eval(v) * &wt);
        y = w.mul(y, r.element);
    }
    let lx = w.coroot_image(x, s).eval(v);
    Some(sum * &lx.powi(-i)?)
}

#[test]
fn operator_matches_point_evaluation() {
    for name in ["z3", "z4", "b2", "g312"] {
        let w = load(name);
        let mut r = rng(11);
        for _ in 0..10 {
            let f = random_member(&mut r, &w);
            let v = random_point(&mut r, w.nvars());
            for (s, refl) in w.reflections().iter().enumerate() {
                for i in 0..refl.order as i64 {
                    let a = op_a(&w, s, i, &f).unwrap();
                    for x in 0..w.order() {
                        if let Some(expected) = a_at_point(&w, s, i, &f, x, &v) {
                            assert_eq!(a.value(x).eval(&v), expected, "{name} s={s} i={i} x={x}");
                        }
                    }
                }
            }
        }
    }
}

// Both sides of the product rule from raw sums at a point; the left side is
// evaluated independently of the operator implementation.
#[test]
fn product_rule_at_points() {
    for name in ["z3", "z4", "g312"] {
        let w = load(name);
        let mut r = rng(5);
        for _ in 0..6 {
            let f = random_member(&mut r, &w);
            let g = random_member(&mut r, &w);
            let fg = &f * &g;
            let v = random_point(&mut r, w.nvars());
            for (s, refl) in w.reflections().iter().enumerate() {
                let ord = refl.order as i64;
                for i in 1..ord {
                    for x in 0..w.order() {
                        let Some(lhs) = a_at_point(&w, s, i, &fg, x, &v) else { continue };
                        let mut rhs = CycNum::zero();
                        for a in 0..ord {
                            let fa = a_at_point(&w, s, a, &f, x, &v).unwrap();
                            let gb = a_at_point(&w, s, i - a, &g, x, &v).unwrap();
                            rhs += &(fa * &gb);
                        }
                        assert_eq!(lhs, rhs.clone() * &CycNum::integer(ord).inv().unwrap(), "{name} s={s} i={i} x={x}");
                        // the statement without the 1/|s| factor is off by exactly |s|
                        if !lhs.is_zero() {
                            assert_ne!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

/// Whether some `q` of degree `deg f − i` satisfies `q · ℓ^i = f`, by solving for its coefficients.
fn solvable(f: &MultiPoly<BigRational>, l: &LinearForm<BigRational>, i: u32) -> bool {
    let n = f.nvars();
    let d = f.degree().finite().unwrap();
    if d < i {
        return f.is_zero();
    }
    let qbasis = graded_monomials(n, d - i);
    let fbasis = graded_monomials(n, d);
    let li = l.to_poly().pow(i);
    let cols: Vec<Vec<BigRational>> = qbasis
        .iter()
        .map(|m| (&MultiPoly::monomial(n, m.clone(), BigRational::one()) * &li).coords(&fbasis))
        .collect();
    // augmented system [A | f]; consistent iff rank A = rank [A | f]
    let rows = fbasis.len();
    let a: Vec<Vec<BigRational>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let target = f.coords(&fbasis);
    let aug: Vec<Vec<BigRational>> =
        a.iter().zip(&target).map(|(row, t)| row.iter().cloned().chain([t.clone()]).collect()).collect();
    Matrix::from_rows(a).rank() == Matrix::from_rows(aug).rank()
}

#[test]
fn division_failures_have_no_quotient() {
    let mut r = rng(3);
    let q = |r: &mut reflect_gkm::random::SuiteRng| BigRational::from_integer(r.gen_range(-2i64..=2).into());
    for _ in 0..60 {
        let n = 2;
        let d = r.gen_range(1..=4u32);
        let mut f = MultiPoly::<BigRational>::zero(n);
        for m in graded_monomials(n, d) {
            f.add_term(m, &q(&mut r));
        }
        let l = LinearForm::new(vec![BigRational::one(), q(&mut r)]).unwrap();
        let i = r.gen_range(1..=d);
        // bias toward divisible inputs half the time
        let f = if r.gen_bool(0.5) {
            let m = Monomial::new(vec![d - i, 0]);
            &MultiPoly::monomial(n, m, BigRational::one()) * &l.to_poly().pow(i)
        } else {
            f
        };
        if f.is_zero() {
            continue;
        }
        let ok = divide_exact_by_linear_power(&f, &l, i).is_ok();
        assert_eq!(ok, solvable(&f, &l, i), "f = {f}, i = {i}");
    }
}

#[test]
fn delta_on_z3_squares_is_three() {
    let w = load("z3");
    let s = w.reflection_index(1).unwrap();
    let x2: Poly = Poly::var(1, 0).pow(2);
    assert_eq!(reflect_gkm::op_delta(&w, s, 2, &x2).unwrap(), Poly::constant(1, CycNum::integer(3)));
}
