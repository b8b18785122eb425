use proptest::prelude::*;
use realforms::kernel::{
    buchberger, groebner::default_step_budget, parse_poly, GaussianRational, Ideal, Monomial,
    MonomialOrder, Poly, RatFunc, RingMap, VarTable, Vars,
};

fn table() -> Vars {
    VarTable::new(&["x", "y", "z"]).unwrap()
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-5i64..6, 1i64..4, -2i64..3).prop_map(|(n, d, im)| {
        &GaussianRational::from_ratio(n, d)
            + &(&GaussianRational::i() * &GaussianRational::from_integer(im))
    })
}

fn poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (coeff(), proptest::collection::vec(0..=max_deg, 3)),
        0..=max_terms,
    )
    .prop_map(|ts| {
        let v = table();
        Poly::from_terms(
            &v,
            ts.into_iter()
                .map(|(c, e)| (Monomial::from_exponents(e), c)),
        )
    })
}

fn nonzero(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    poly(max_terms, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::block([0]))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(4, 2), b in poly(4, 2), c in poly(4, 2)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn coefficient_conjugation_is_involutive(a in poly(5, 3), b in poly(5, 3)) {
        prop_assert_eq!(a.conj_coefficients().conj_coefficients(), a.clone());
        prop_assert_eq!((&a * &b).conj_coefficients(), &a.conj_coefficients() * &b.conj_coefficients());
    }

    #[test]
    fn print_parse_round_trip(a in poly(6, 3)) {
        let back = parse_poly(&table(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn groebner_reduction(gens in proptest::collection::vec(nonzero(3, 2), 1..4), p in poly(5, 3), ord in order()) {
        let v = table();
        let gb = buchberger(&v, &gens, &ord, default_step_budget()).unwrap();
        prop_assert!(gb.s_pairs_reduce_to_zero());
        prop_assert!(gb.is_reduced());
        let nf = gb.normal_form(&p, &ord).unwrap();
        prop_assert_eq!(gb.normal_form(&nf, &ord).unwrap(), nf.clone());
        for g in &gens {
            prop_assert!(gb.normal_form(g, &ord).unwrap().is_zero());
        }
        // p − nf(p) lies in the ideal
        prop_assert!(gb.normal_form(&(&p - &nf), &ord).unwrap().is_zero());
    }

    #[test]
    fn combinations_are_members(gens in proptest::collection::vec(nonzero(3, 2), 1..3), hs in proptest::collection::vec(poly(3, 1), 2)) {
        let v = table();
        let i = Ideal::new(&v, gens.clone()).unwrap();
        let mut comb = Poly::zero(&v);
        for (g, h) in gens.iter().zip(&hs) {
            comb = &comb + &(g * h);
        }
        prop_assert!(i.contains(&comb).unwrap());
    }

    #[test]
    fn fraction_arithmetic(a in nonzero(3, 2), b in nonzero(3, 2), c in poly(3, 2)) {
        let f = RatFunc::new(a.clone(), b.clone()).unwrap();
        let g = RatFunc::new(b, a).unwrap();
        prop_assert!(f.mul(&g).unwrap().equals(&RatFunc::one(&table())).unwrap());
        let h = RatFunc::from_poly(c);
        let lhs = f.add(&h).unwrap().sub(&h).unwrap();
        prop_assert!(lhs.equals(&f).unwrap());
    }

    #[test]
    fn substitution_composes(imgs1 in proptest::collection::vec(poly(3, 1), 3), imgs2 in proptest::collection::vec(poly(3, 1), 3), p in poly(4, 2)) {
        let v = table();
        let wrap = |ps: Vec<Poly>| RingMap::new(&v, &v, ps.into_iter().map(RatFunc::from_poly).collect(), false).unwrap();
        let first = wrap(imgs1);
        let second = wrap(imgs2);
        let both = second.after(&first).unwrap();
        let step = second.apply_ratfunc(&first.apply(&p).unwrap()).unwrap();
        prop_assert!(both.apply(&p).unwrap().equals(&step).unwrap());
    }
}
