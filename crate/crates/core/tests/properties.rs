use num_traits::{One, Zero};
use proptest::prelude::*;
use reflect_gkm::parse::parse_poly;
use reflect_gkm::{
    bundled, divide_exact_by_linear_power, mu, wmap_act, BigRational, CycNum, Field, LinearForm, Monomial, Poly,
    ReflectionGroup, TensorElement,
};
use std::sync::OnceLock;

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn cyc_at(m: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(rational(), m as usize).prop_map(move |c| CycNum::new(m, &c).unwrap())
}

fn cyc() -> impl Strategy<Value = CycNum> {
    prop_oneof![cyc_at(1), cyc_at(3), cyc_at(4), cyc_at(6), cyc_at(12)]
}

fn poly(n: usize, maxdeg: u32, m: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, n), cyc_at(m)), 0..5).prop_map(move |terms| {
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            p.add_term(Monomial::new(e), &c);
        }
        p
    })
}

fn groups() -> &'static [ReflectionGroup] {
    static G: OnceLock<Vec<ReflectionGroup>> = OnceLock::new();
    G.get_or_init(|| bundled::NAMES.iter().map(|n| bundled::load(n).unwrap().unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((a, b, c) in (prop_oneof![Just(1u32), Just(3), Just(4), Just(6), Just(12)])
        .prop_flat_map(|m| (cyc_at(m), cyc_at(m), cyc_at(m))))
    {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() - &a, CycNum::zero());
        if let Some(ai) = a.inv() {
            prop_assert_eq!(a.clone() * &ai, CycNum::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn mixed_conductors_are_refused(a in cyc_at(3), b in cyc_at(4)) {
        if !a.is_rational() && !b.is_rational() {
            prop_assert!(a.try_mul(&b).is_err());
        }
    }

    #[test]
    fn canonical_form_round_trips(a in cyc()) {
        prop_assert_eq!(CycNum::new(a.conductor(), &a.coeffs()).unwrap(), a.clone());
        prop_assert_eq!(CycNum::parse(&a.to_string(), a.conductor()).unwrap(), a);
    }

    #[test]
    fn roots_of_unity(m in 1u32..=12, k in -24i64..24) {
        let z = CycNum::root_of_unity(m, k);
        prop_assert_eq!(z.pow(m), CycNum::one());
        prop_assert_eq!(z * &CycNum::root_of_unity(m, -k), CycNum::one());
    }

    #[test]
    fn poly_display_parses_back(p in poly(3, 3, 4)) {
        let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_poly(&p.format_with(&names), 4, &names).unwrap(), p);
    }

    #[test]
    fn action_is_a_ring_action(gi in 0usize..6, a in 0usize..64, b in 0usize..64, f in poly(2, 3, 3), g in poly(2, 3, 3)) {
        let w = &groups()[gi];
        if w.nvars() != 2 { return Ok(()); }
        let (a, b) = (a % w.order(), b % w.order());
        prop_assert_eq!(w.act(w.mul(a, b), &f), w.act(a, &w.act(b, &f)));
        prop_assert_eq!(w.act(a, &(&f * &g)), &w.act(a, &f) * &w.act(a, &g));
        prop_assert_eq!(w.act(0, &f), f);
    }

    #[test]
    fn group_is_associative(gi in 0usize..6, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let w = &groups()[gi];
        let (a, b, c) = (a % w.order(), b % w.order(), c % w.order());
        prop_assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
        prop_assert_eq!(w.mul(a, w.inv(a)), 0);
    }

    #[test]
    fn division_round_trip(q in poly(2, 3, 3), c in cyc_at(3), i in 0u32..4) {
        let l = LinearForm::new(vec![CycNum::one(), c]).unwrap();
        let f = &q * &l.to_poly().pow(i);
        prop_assert_eq!(divide_exact_by_linear_power(&f, &l, i).unwrap(), q);
    }

    #[test]
    fn mu_is_equivariant(gi in 0usize..6, g in 0usize..64, f in poly(2, 2, 3), h in poly(2, 2, 3)) {
        let w = &groups()[gi];
        if w.nvars() != 2 { return Ok(()); }
        let g = g % w.order();
        let t = TensorElement::simple(f, h);
        prop_assert_eq!(mu(w, &t.act_right(w, g)), wmap_act(w, &mu(w, &t), g));
    }
}
