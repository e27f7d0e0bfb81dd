mod common;

use common::*;
use monoretract::exactalg::{
    apply_substitution, compose, extract_basis_indices, graded_piece, ideal_equal, in_span, rank, Monomial,
};
use monoretract::{Field, GradedSubstitution, Polynomial};
use proptest::prelude::*;

fn terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -6i64..7), 0..5)
}

fn matrix() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn substitution_is_additive(fc in 0u8..5, n in 1usize..4, f in terms(), g in terms(), m in matrix()) {
        let r = ring(n, field(fc));
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        let s = substitution(&r, &m);
        let lhs = apply_substitution(&f.add(&g).unwrap(), &s).unwrap();
        let rhs = apply_substitution(&f, &s).unwrap().add(&apply_substitution(&g, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_multiplicative(fc in 0u8..5, n in 1usize..4, f in terms(), g in terms(), m in matrix()) {
        let r = ring(n, field(fc));
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        let s = substitution(&r, &m);
        let lhs = apply_substitution(&f.mul(&g).unwrap(), &s).unwrap();
        let rhs = apply_substitution(&f, &s).unwrap().mul(&apply_substitution(&g, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(fc in 0u8..5, n in 1usize..4, a in matrix(), b in matrix(), c in matrix()) {
        let r = ring(n, field(fc));
        let (a, b, c) = (substitution(&r, &a), substitution(&r, &b), substitution(&r, &c));
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = GradedSubstitution::identity(&r);
        prop_assert_eq!(&compose(&a, &id).unwrap(), &a);
        prop_assert_eq!(&compose(&id, &a).unwrap(), &a);
    }

    #[test]
    fn composition_matches_sequential_application(fc in 0u8..5, f in terms(), a in matrix(), b in matrix()) {
        let r = ring(3, field(fc));
        let f = poly(&r, &f);
        let (a, b) = (substitution(&r, &a), substitution(&r, &b));
        let seq = apply_substitution(&apply_substitution(&f, &b).unwrap(), &a).unwrap();
        prop_assert_eq!(apply_substitution(&f, &compose(&a, &b).unwrap()).unwrap(), seq);
    }

    #[test]
    fn frobenius_collapse(pc in 0usize..3, r_exp in 1u32..3, coeffs in prop::collection::vec(-4i64..5, 3)) {
        let p = [2u32, 3, 5][pc];
        let q = p.pow(r_exp);
        prop_assume!(q <= 9);
        let f = Field::prime(u64::from(p)).unwrap();
        let r = ring(3, f);
        let cs: Vec<_> = coeffs.iter().map(|&c| f.from_i64(c)).collect();
        let ell = Polynomial::linear(&r, &cs);
        let images = vec![ell.clone(), Polynomial::var(&r, 1), Polynomial::var(&r, 2)];
        let s = GradedSubstitution::new(&r, &r, images).unwrap();
        let x0q = Polynomial::monomial(&r, Monomial::var_pow(3, 0, q));
        let lhs = apply_substitution(&x0q, &s).unwrap();
        let mut rhs = Polynomial::zero(&r);
        for (i, c) in cs.iter().enumerate() {
            rhs = rhs.add(&Polynomial::term(&r, Monomial::var_pow(3, i, q), c.pow(u64::from(q)))).unwrap();
        }
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(ell.pow(q), rhs);
        prop_assert!(lhs.terms().keys().all(|m| m.pure_power_var().is_some()));
    }

    #[test]
    fn graded_piece_is_monotone(fc in 0u8..5, e in 1u32..3, extra in 0u32..2, a in prop::collection::vec(terms(), 1..3), b in prop::collection::vec(terms(), 0..3)) {
        let r = ring(3, field(fc));
        let ga: Vec<Polynomial> = a.iter().map(|t| homogeneous(&r, e, t)).collect();
        let mut gb = ga.clone();
        gb.extend(b.iter().map(|t| homogeneous(&r, e + 1, t)));
        let d = e + 1 + extra;
        let small = graded_piece(&r, &ga, d).unwrap().len();
        let big = graded_piece(&r, &gb, d).unwrap().len();
        prop_assert!(small <= big);
    }

    #[test]
    fn ideal_equality_is_an_equivalence(fc in 0u8..5, a in prop::collection::vec(terms(), 1..4), scale in 1i64..4, b in prop::collection::vec(terms(), 1..3)) {
        let r = ring(3, field(fc));
        let ga: Vec<Polynomial> = a.iter().map(|t| homogeneous(&r, 2, t)).collect();
        // Same ideal: reversed, rescaled, plus a redundant combination.
        let f = r.field();
        let mut gb: Vec<Polynomial> = ga.iter().rev().map(|g| g.scale(&f.from_i64(scale))).collect();
        if f.from_i64(scale).is_zero() {
            gb = ga.clone();
        }
        gb.push(ga[0].mul(&Polynomial::var(&r, 0)).unwrap());
        let mut gc = gb.clone();
        gc.push(ga.iter().fold(Polynomial::zero(&r), |acc, g| acc.add(g).unwrap()));
        let other: Vec<Polynomial> = b.iter().map(|t| homogeneous(&r, 2, t)).collect();
        prop_assert!(ideal_equal(&ga, &ga).unwrap());
        prop_assert!(ideal_equal(&ga, &gb).unwrap());
        prop_assert!(ideal_equal(&gb, &ga).unwrap());
        prop_assert!(ideal_equal(&gb, &gc).unwrap());
        prop_assert!(ideal_equal(&ga, &gc).unwrap());
        let ab = ideal_equal(&ga, &other).unwrap();
        prop_assert_eq!(ab, ideal_equal(&other, &ga).unwrap());
        if ab {
            prop_assert!(ideal_equal(&gc, &other).unwrap());
        }
    }

    #[test]
    fn basis_extraction_is_greedy(fc in 0u8..5, vs in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 0..7)) {
        let f = field(fc);
        let r = ring(3, f);
        let vectors: Vec<Polynomial> = vs
            .iter()
            .map(|v| Polynomial::linear(&r, &v.iter().map(|&c| f.from_i64(c)).collect::<Vec<_>>()))
            .collect();
        let chosen = extract_basis_indices(&vectors).unwrap();
        prop_assert_eq!(&chosen, &extract_basis_indices(&vectors).unwrap());
        prop_assert_eq!(chosen.len(), rank(&vectors).unwrap());
        for (i, v) in vectors.iter().enumerate() {
            let earlier = if i == 0 { v.is_zero() } else { in_span(&vectors[..i], v).unwrap() };
            prop_assert_eq!(chosen.contains(&i), !earlier, "index {}", i);
        }
    }
}
