#![allow(dead_code)]

use std::sync::Arc;

use monoretract::exactalg::{Monomial, Terms};
use monoretract::monideal::MonomialIdeal;
use monoretract::simplicial::SimplicialComplex;
use monoretract::{Field, GradedSubstitution, Polynomial, Ring, VarSet};
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn field(code: u8) -> Field {
    match code % 5 {
        0 => Field::Rationals,
        1 => Field::prime(2).unwrap(),
        2 => Field::prime(3).unwrap(),
        3 => Field::prime(5).unwrap(),
        _ => Field::prime(7).unwrap(),
    }
}

pub fn ring(n: usize, f: Field) -> Arc<Ring> {
    Ring::new(&VARS[..n], f).unwrap()
}

pub fn poly(ring: &Arc<Ring>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let n = ring.nvars();
    let f = ring.field();
    let mut acc = Polynomial::zero(ring);
    for (e, c) in terms {
        let m = Monomial::new(e.iter().copied().take(n).chain(std::iter::repeat(0)).take(n).collect());
        acc = acc.add(&Polynomial::term(ring, m, f.from_i64(*c))).unwrap();
    }
    acc
}

/// Homogeneous of degree `d`: each exponent vector is rescaled onto degree `d`
/// by moving surplus into the last variable.
pub fn homogeneous(ring: &Arc<Ring>, d: u32, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let n = ring.nvars();
    let f = ring.field();
    let mut t = Terms::new();
    for (e, c) in terms {
        let mut v = vec![0u32; n];
        let mut left = d;
        for i in 0..n - 1 {
            let take = e.get(i).copied().unwrap_or(0).min(left);
            v[i] = take;
            left -= take;
        }
        v[n - 1] = left;
        let m = Monomial::new(v);
        let prev = t.remove(&m).unwrap_or_else(|| f.zero());
        t.insert(m, &prev + &f.from_i64(*c));
    }
    Polynomial::from_terms(ring, t)
}

pub fn substitution(ring: &Arc<Ring>, entries: &[i64]) -> GradedSubstitution {
    let n = ring.nvars();
    let f = ring.field();
    let m: Vec<Vec<_>> = (0..n)
        .map(|r| (0..n).map(|c| f.from_i64(entries[(r * n + c) % entries.len()])).collect())
        .collect();
    GradedSubstitution::from_matrix(ring, ring, &m).unwrap()
}

pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=n + 2);
    let facets: Vec<VarSet> = (0..k)
        .map(|_| VarSet::from_bits(rng.gen_range(0..(1u64 << n))))
        .collect();
    SimplicialComplex::new(&VARS[..n], facets).unwrap()
}

pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> MonomialIdeal {
    let k = rng.gen_range(1..=4);
    let gens = (0..k)
        .map(|_| loop {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    MonomialIdeal::new(&VARS[..n], gens).unwrap()
}

/// Membership by divisibility against every generator.
pub fn naive_contains(ideal: &MonomialIdeal, m: &Monomial) -> bool {
    ideal.generators().iter().any(|g| g.exps().iter().zip(m.exps()).all(|(a, b)| a <= b))
}

/// Every squarefree monomial ideal on `n` variables with generators of
/// degree at least two, including the zero ideal.
pub fn squarefree_ideals(n: usize) -> Vec<MonomialIdeal> {
    let subsets: Vec<u64> = (0..(1u64 << n)).filter(|s| s.count_ones() >= 2).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << subsets.len()) {
        let chosen: Vec<u64> = (0..subsets.len()).filter(|&k| mask >> k & 1 == 1).map(|k| subsets[k]).collect();
        let antichain = chosen.iter().all(|&a| chosen.iter().all(|&b| a == b || a & b != a));
        if !antichain {
            continue;
        }
        let gens = chosen
            .iter()
            .map(|&s| Monomial::new((0..n).map(|i| (s >> i & 1) as u32).collect()))
            .collect();
        out.push(MonomialIdeal::new(&VARS[..n], gens).unwrap());
    }
    out
}

/// `Δ` as a monoidal complex: vertex `i` goes to the unit vector `e_i` and
/// each face to the cone it spans. Phantom vertices are dropped.
pub fn embed(c: &SimplicialComplex) -> monoretract::toric::MonoidalComplex {
    let names = c.effective_vertices().names(c.vertices());
    let c = SimplicialComplex::from_names(&names, &c.facet_names()).unwrap();
    let n = names.len();
    let mut faces: Vec<VarSet> = Vec::new();
    for bits in 0u64..(1 << n) {
        let s = VarSet::from_bits(bits);
        if c.is_face(s) {
            faces.push(s);
        }
    }
    let label = |s: VarSet| format!("O{}", s.names(&names).concat());
    let mut generators = serde_json::Map::new();
    for (i, name) in names.iter().enumerate() {
        let e: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
        generators.insert(name.clone(), serde_json::json!(e));
    }
    let cones: Vec<serde_json::Value> = faces
        .iter()
        .map(|&s| {
            let below: Vec<String> = s
                .iter()
                .map(|i| {
                    let mut t = s;
                    t.remove(i);
                    label(t)
                })
                .collect();
            serde_json::json!({"name": label(s), "gens": s.names(&names), "faces": below})
        })
        .collect();
    let j = serde_json::json!({"dim": n, "generators": generators, "cones": cones});
    monoretract::toric::MonoidalComplex::from_json(&serde_json::from_value(j).unwrap()).unwrap()
}
