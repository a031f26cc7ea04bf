//! Randomized structural laws: anything that must hold for every
//! element, shape, or polynomial, checked over generated instances.

use proptest::prelude::*;

use wittlang::covers::{as_reduce, ASPoly};
use wittlang::gf::{Field, FieldSpec};
use wittlang::hopf;
use wittlang::lang::LangContext;
use wittlang::lgroup::{self, from_index};
use wittlang::subgrp;

/// Small group shapes (n, d, field) with at most 256 elements.
fn shape_strategy() -> impl Strategy<Value = (usize, usize, Field)> {
    (1usize..=2, 1usize..=2, prop_oneof![Just((2u32, 1usize)), Just((2, 2)), Just((3, 1))])
        .prop_map(|(n, d, (p, r))| (n, d, FieldSpec::default_for(p, r).unwrap()))
        .prop_filter("group must stay enumerable", |(n, d, f)| {
            f.order().checked_pow((n * n * d) as u32).is_some_and(|o| o <= 256)
        })
}

/// A shape together with element indices to instantiate.
fn elements_strategy(
    how_many: usize,
) -> impl Strategy<Value = (usize, usize, Field, Vec<u128>)> {
    shape_strategy().prop_flat_map(move |(n, d, f)| {
        let order = f.order().pow((n * n * d) as u32) as u64;
        (Just(n), Just(d), Just(f), proptest::collection::vec(0..order, how_many))
            .prop_map(|(n, d, f, idx)| (n, d, f, idx.into_iter().map(u128::from).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws_hold_pointwise((n, d, f, idx) in elements_strategy(3)) {
        let a = from_index(n, d, &f, idx[0]);
        let b = from_index(n, d, &f, idx[1]);
        let c = from_index(n, d, &f, idx[2]);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
        prop_assert_eq!(ab.inv(), b.inv().mul(&a.inv()).unwrap());
        // enumeration index is a faithful encoding
        prop_assert_eq!(from_index(n, d, &f, a.index()), a);
    }

    #[test]
    fn determinant_and_truncation_are_homomorphisms((n, d, f, idx) in elements_strategy(2)) {
        let a = from_index(n, d, &f, idx[0]);
        let b = from_index(n, d, &f, idx[1]);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det_map(), a.det_map().mul(&b.det_map()).unwrap());
        prop_assert_eq!(
            ab.truncate(1).unwrap(),
            a.truncate(1).unwrap().mul(&b.truncate(1).unwrap()).unwrap()
        );
    }

    #[test]
    fn frobenius_commutes_with_multiplication((n, d, idx) in (1usize..=2, 1usize..=2, proptest::collection::vec(0u64..=255, 2))) {
        let f4 = FieldSpec::from_table(2, 2).unwrap();
        let order = f4.order().pow((n * n * d) as u32);
        let a = from_index(n, d, &f4, u128::from(idx[0]) % order);
        let b = from_index(n, d, &f4, u128::from(idx[1]) % order);
        prop_assert_eq!(
            a.mul(&b).unwrap().frobenius(2).unwrap(),
            a.frobenius(2).unwrap().mul(&b.frobenius(2).unwrap()).unwrap()
        );
    }

    #[test]
    fn wire_roundtrips_preserve_elements((n, d, f, idx) in elements_strategy(1)) {
        let a = from_index(n, d, &f, idx[0]);
        let json = lgroup::trunc_to_json(&a);
        prop_assert_eq!(lgroup::trunc_from_json(&json).unwrap(), a.clone());
        let p = lgroup::PuncturedElem { nu: (idx[0] as i64 % 7) - 3, body: a };
        let pj = lgroup::punctured_to_json(&p);
        prop_assert_eq!(lgroup::punctured_from_json(&pj).unwrap(), p);
    }

    #[test]
    fn reduction_is_idempotent_and_coset_constant(
        p in prop_oneof![Just(2u32), Just(3), Just(5)],
        f_coeffs in proptest::collection::vec(0u32..5, 1..8),
        g_coeffs in proptest::collection::vec(0u32..5, 1..4),
    ) {
        let mut fc = vec![0];
        fc.extend(f_coeffs);
        let mut gc = vec![0];
        gc.extend(g_coeffs);
        let f = ASPoly::new(p, fc).unwrap();
        let g = ASPoly::new(p, gc).unwrap();
        let class = as_reduce(&f);
        prop_assert_eq!(&as_reduce(class.rep()), &class);
        prop_assert_eq!(&as_reduce(&f.add(&g.wp()).unwrap()), &class);
        // scaling by a unit then by its inverse lands back in the class
        for c in 1..p {
            let back = f.scale(c).scale(mod_inverse(c, p));
            prop_assert_eq!(&as_reduce(&back), &class);
        }
    }

    #[test]
    fn pairing_duality_on_random_pairs(idx in proptest::collection::vec(0u64..81, 2), gen_pick in 0usize..4) {
        let f3 = FieldSpec::prime(3).unwrap();
        let (n, d) = (1usize, 4usize);
        let a = from_index(n, d, &f3, u128::from(idx[0]));
        let b = from_index(n, d, &f3, u128::from(idx[1]));
        let gens = hopf::generators(n, d);
        let g = gens[gen_pick % gens.len()];
        prop_assert!(hopf::pairing_check(&f3, g, &a, &b).unwrap());
    }

    #[test]
    fn lang_fibers_are_rationality_cosets(idx in proptest::collection::vec(0u64..16, 2)) {
        let f4 = FieldSpec::from_table(2, 2).unwrap();
        let ctx = LangContext::new(1, 2, &f4, 2).unwrap();
        let x = from_index(1, 2, &f4, u128::from(idx[0]));
        let y = from_index(1, 2, &f4, u128::from(idx[1]));
        let same_fiber = ctx.lang(&x).unwrap() == ctx.lang(&y).unwrap();
        let rational_quotient = ctx.is_rational(&y.mul(&x.inv()).unwrap()).unwrap();
        prop_assert_eq!(same_fiber, rational_quotient);
    }

    #[test]
    fn cyclic_lattices_list_one_subgroup_per_divisor(k in 1usize..=24) {
        let table = subgrp::cyclic(k);
        let subs = table.all_subgroups().unwrap();
        let divisors = (1..=k).filter(|m| k % m == 0).count();
        prop_assert_eq!(subs.len(), divisors);
        for h in &subs {
            prop_assert_eq!(k % h.len(), 0);
        }
    }

    #[test]
    fn monomial_evaluation_is_multiplicative((n, d, f, idx) in elements_strategy(1), picks in proptest::collection::vec(0usize..8, 2)) {
        let a = from_index(n, d, &f, idx[0]);
        let gens = hopf::generators(n, d);
        let g1 = gens[picks[0] % gens.len()];
        let g2 = gens[picks[1] % gens.len()];
        let m1 = hopf::Monomial::generator(n, d, g1.i, g1.j, g1.lam).unwrap();
        let m2 = hopf::Monomial::generator(n, d, g2.i, g2.j, g2.lam).unwrap();
        let prod = m1.mul(&m2).unwrap();
        prop_assert_eq!(
            hopf::evaluate(&prod, &a).unwrap(),
            hopf::evaluate(&m1, &a).unwrap().mul(&hopf::evaluate(&m2, &a).unwrap())
        );
    }
}

fn mod_inverse(c: u32, p: u32) -> u32 {
    (1..p).find(|k| (k * c) % p == 1).expect("p is prime and c is nonzero")
}
