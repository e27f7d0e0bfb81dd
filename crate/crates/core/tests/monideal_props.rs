mod common;

use common::*;
use monoretract::exactalg::{monomials_of_degree, Monomial};
use monoretract::monideal::MonomialIdeal;
use monoretract::VarSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn squarefree_ideal(n: usize, masks: &[u64]) -> MonomialIdeal {
    let gens: Vec<Monomial> = masks
        .iter()
        .map(|m| m % (1 << n))
        .filter(|m| m.count_ones() >= 1)
        .map(|m| Monomial::new((0..n).map(|i| (m >> i & 1) as u32).collect()))
        .collect();
    MonomialIdeal::new(&VARS[..n], gens).unwrap()
}

fn agree_up_to(a: &MonomialIdeal, b: &MonomialIdeal, d: u32) -> bool {
    (0..=d).all(|e| {
        monomials_of_degree(a.nvars(), e)
            .iter()
            .all(|m| naive_contains(a, m) == naive_contains(b, m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn squarefree_decomposition_round_trip(n in 1usize..9, masks in prop::collection::vec(any::<u64>(), 1..6)) {
        let i = squarefree_ideal(n, &masks);
        prop_assume!(!i.is_zero());
        let vars = i.vars().to_vec();
        let comps: Vec<MonomialIdeal> = i
            .primary_decomposition_squarefree()
            .unwrap()
            .iter()
            .map(|p| MonomialIdeal::new(&vars, p.vars.iter().map(|k| Monomial::var(n, k)).collect()).unwrap())
            .collect();
        prop_assert_eq!(&MonomialIdeal::intersect_all(&comps).unwrap(), &i);
        for k in 0..comps.len() {
            let mut rest = comps.clone();
            rest.remove(k);
            if !rest.is_empty() {
                prop_assert_ne!(&MonomialIdeal::intersect_all(&rest).unwrap(), &i);
            }
        }
    }

    #[test]
    fn irreducible_decomposition_agrees(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_monomial_ideal(&mut rng, n, 4);
        let comps = i.irreducible_decomposition().unwrap();
        prop_assert!(comps.iter().all(|c| c.pure_powers().is_some()));
        let meet = MonomialIdeal::intersect_all(&comps).unwrap();
        prop_assert!(agree_up_to(&meet, &i, i.max_degree() + 2));
        for k in 0..comps.len() {
            let mut rest = comps.clone();
            rest.remove(k);
            if !rest.is_empty() {
                let partial = MonomialIdeal::intersect_all(&rest).unwrap();
                prop_assert_ne!(&partial, &i);
            }
        }
    }

    #[test]
    fn restriction_composes(seed in any::<u64>(), n in 1usize..7, w in any::<u64>(), w2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_monomial_ideal(&mut rng, n, 3);
        let w = VarSet::from_bits(w % (1 << n));
        let w2 = VarSet::from_bits(w2 % (1 << n)).intersection(w);
        let iw = i.restrict(w).unwrap();
        let inner = VarSet::from_names(iw.vars(), &w2.names(i.vars())).unwrap();
        prop_assert_eq!(iw.restrict(inner).unwrap(), i.restrict(w2).unwrap());
    }

    #[test]
    fn membership_is_divisibility(seed in any::<u64>(), n in 1usize..5, d in 0u32..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_monomial_ideal(&mut rng, n, 3);
        for m in monomials_of_degree(n, d) {
            prop_assert_eq!(i.contains(&m).unwrap(), naive_contains(&i, &m));
        }
    }
}
