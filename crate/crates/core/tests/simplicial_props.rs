mod common;

use common::*;
use monoretract::simplicial::SimplicialComplex;
use monoretract::VarSet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complex_ideal_round_trip(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, n);
        let ideal = c.stanley_reisner_ideal().unwrap();
        prop_assume!(!ideal.is_unit());
        let back = SimplicialComplex::complex_of_ideal(&ideal).unwrap();
        let effective = c.effective_vertices().names(c.vertices());
        let rebuilt = SimplicialComplex::from_names(&effective, &c.facet_names()).unwrap();
        prop_assert_eq!(back.facet_names(), rebuilt.facet_names());
    }

    #[test]
    fn restriction_matches_ideal_restriction(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, n);
        let ideal = c.stanley_reisner_ideal().unwrap();
        let eff = c.effective_vertices();
        for bits in 0u64..(1 << n) {
            let w = VarSet::from_bits(bits).intersection(eff);
            let lhs = c.restriction(w).unwrap().stanley_reisner_ideal().unwrap();
            let inner = VarSet::from_names(ideal.vars(), &w.names(c.vertices())).unwrap();
            let rhs = ideal.restrict(inner).unwrap();
            prop_assert_eq!(lhs.generator_strings(), rhs.generator_strings(), "W = {:?}", w.names(c.vertices()));
        }
    }

    #[test]
    fn restriction_composes(seed in any::<u64>(), n in 1usize..8, w in any::<u64>(), w2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, n);
        let w = VarSet::from_bits(w % (1 << n));
        let w2 = VarSet::from_bits(w2 % (1 << n));
        let once = c.restriction(w).unwrap();
        let names = w2.intersection(w).names(c.vertices());
        let twice = once.restriction_by_names(&names).unwrap();
        let direct = c.restriction(w.intersection(w2)).unwrap();
        prop_assert_eq!(twice.to_json(), direct.to_json());
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut corpus = Vec::new();
    for _ in 0..12 {
        let n = rng.gen_range(2..6);
        let c = random_complex(&mut rng, n);
        // A relabelled copy by reversing the vertex names.
        let names: Vec<&str> = VARS[..n].iter().rev().copied().collect();
        let copy = SimplicialComplex::new(&names, c.facets().to_vec()).unwrap();
        corpus.push(c);
        corpus.push(copy);
    }
    let iso = |a: &SimplicialComplex, b: &SimplicialComplex| a.is_isomorphic(b).unwrap().is_some();
    for a in &corpus {
        assert!(iso(a, a));
        for b in &corpus {
            assert_eq!(iso(a, b), iso(b, a));
            if !iso(a, b) {
                continue;
            }
            for c in &corpus {
                if iso(b, c) {
                    assert!(iso(a, c));
                }
            }
        }
    }
    for pair in corpus.chunks(2) {
        assert!(iso(&pair[0], &pair[1]));
    }
}
