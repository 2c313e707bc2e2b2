//! Property tests: algebraic laws of the polynomial arithmetic, Groebner
//! invariances, and colengths of random monomial ideals against the lattice
//! oracle.

mod common;

use proptest::prelude::*;

use chern::field::PrimeField;
use chern::ideal::{Ideal, Length};
use chern::monomial::Monomial;
use chern::poly::Polynomial;

use common::lattice_colength;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(((0u16..5, 0u16..5), 0i64..50), 0..6).prop_map(|terms| {
        let raw = terms
            .into_iter()
            .map(|((a, b), c)| (Monomial::new(vec![a, b]), field().elem(c)))
            .collect();
        Polynomial::from_terms(field(), 2, raw)
    })
}

/// An m-primary monomial ideal in k[x,y]: pure powers plus interior points.
fn arb_monomial_ideal() -> impl Strategy<Value = Vec<(u32, u32)>> {
    (1u32..6, 1u32..6, proptest::collection::vec((1u32..6, 1u32..6), 0..4)).prop_map(
        |(a, b, mut extra)| {
            let mut gens = vec![(a, 0), (0, b)];
            gens.append(&mut extra);
            gens
        },
    )
}

fn ideal_from_exps(gens: &[(u32, u32)]) -> Ideal {
    let polys = gens
        .iter()
        .map(|&(a, b)| Polynomial::monomial(field(), Monomial::new(vec![a as u16, b as u16]), 1))
        .collect();
    Ideal::new(field(), 2, polys)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
    }

    #[test]
    fn multiplication_commutes_and_distributes(
        p in arb_poly(), q in arb_poly(), r in arb_poly()
    ) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        let lhs = p.mul(&q.add(&r).unwrap()).unwrap();
        let rhs = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_associates(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let lhs = p.mul(&q).unwrap().mul(&r).unwrap();
        let rhs = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_parse_round_trip(p in arb_poly()) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let q = chern::parse::parse_poly(&p.render(&vars), &vars, field()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn colength_matches_lattice_oracle(gens in arb_monomial_ideal()) {
        let engine = ideal_from_exps(&gens).colength().unwrap();
        prop_assert_eq!(engine, Length::Finite(lattice_colength(&gens)));
    }

    #[test]
    fn groebner_membership_is_generator_order_invariant(
        gens in arb_monomial_ideal(), probe in arb_poly()
    ) {
        let a = ideal_from_exps(&gens);
        let mut rev = gens.clone();
        rev.reverse();
        let b = ideal_from_exps(&rev);
        prop_assert_eq!(a.contains_poly(&probe).unwrap(), b.contains_poly(&probe).unwrap());
        prop_assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn product_contained_in_intersection(x in arb_monomial_ideal(), y in arb_monomial_ideal()) {
        let a = ideal_from_exps(&x);
        let b = ideal_from_exps(&y);
        let product = a.product(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert!(meet.contains_ideal(&product).unwrap());
        prop_assert!(a.contains_ideal(&meet).unwrap());
        prop_assert!(b.contains_ideal(&meet).unwrap());
    }

    #[test]
    fn colon_undoes_principal_multiplication(gens in arb_monomial_ideal(), a in 1u32..4, b in 1u32..4) {
        let i = ideal_from_exps(&gens);
        let f = Polynomial::monomial(field(), Monomial::new(vec![a as u16, b as u16]), 1);
        let principal = Ideal::new(field(), 2, vec![f.clone()]);
        let scaled = i.product(&principal).unwrap();
        let back = scaled.colon(&principal).unwrap();
        prop_assert!(back.equals(&i).unwrap());
    }

    #[test]
    fn powers_multiply(gens in arb_monomial_ideal(), a in 0u32..3, b in 0u32..3) {
        let i = ideal_from_exps(&gens);
        let lhs = i.power(a)?.product(&i.power(b)?)?;
        let rhs = i.power(a + b)?;
        prop_assert!(lhs.equals(&rhs).unwrap());
    }
}
