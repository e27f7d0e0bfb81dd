//! Bases of retracts of Stanley-Reisner rings.

use crate::error::{Error, Result};
use crate::exactalg::{
    check_piece_size, extract_basis_indices, intersect_spaces, monomials_of_degree, rank, Echelon,
    GradedIdeal, Monomial, Polynomial, Terms,
};
use crate::monideal::LinearPrime;
use crate::retract::{brute_force_base, certify, is_base, require_retract, BaseMethod, FoundBase, RetractDatum};
use crate::varset::{combinations, VarSet};

/// Largest number of primes handled by the subset recursion.
pub const MAX_PRIMES: usize = 20;

fn image_inside(datum: &RetractDatum, from: VarSet, into: VarSet) -> bool {
    from.iter()
        .all(|a| datum.image(a).terms().keys().all(|m| m.support().is_subset(into)))
}

/// Largest number of complement choices tried before falling back to
/// exhaustive search.
pub const MAX_CHOICES: usize = 1 << 12;

fn reduced_primes(datum: &RetractDatum) -> Result<Vec<LinearPrime>> {
    let mut primes = datum.ideal().primary_decomposition_squarefree()?;
    while let Some(f) = primes
        .iter()
        .position(|p| !image_inside(datum, p.vars, p.vars))
    {
        let pf = primes[f].vars;
        let partner = (0..primes.len()).find(|&j| j != f && image_inside(datum, primes[j].vars, pf));
        if partner.is_none() {
            return Err(Error::NotARetract(format!(
                "no prime maps into ({})",
                datum.names(pf).join(", ")
            )));
        }
        primes.remove(f);
    }
    Ok(primes)
}

/// Drops primes `p_f` with `ψ(p_f) ⊄ p_f` (smallest `f` first) while a
/// partner `p_j` with `ψ(p_j) ⊆ p_f` survives, then builds `L` from the rest.
///
/// A base of the reduced ideal need not be a base of `I` (for
/// `I = (ad, bc)` with `a, c -> c` and `b, d -> b` the greedy `L = {a, b}`
/// has `I_L = 0`), so every choice of complements `C_T` is tried in
/// lexicographic order, the greedy one first. Exhaustive search is the last
/// resort and is reported through `fallback`.
pub fn find_base_squarefree(datum: &RetractDatum) -> Result<FoundBase> {
    if !datum.ideal().is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    require_retract(datum)?;
    if datum.ideal().is_zero() {
        return Ok(FoundBase {
            base: VarSet::EMPTY,
            method: BaseMethod::ZeroIdeal,
            fallback: false,
        });
    }
    let primes = reduced_primes(datum)?;
    let steps = complement_choices(datum, &primes)?;
    let mut pick = vec![0usize; steps.len()];
    for _ in 0..MAX_CHOICES {
        let l = steps
            .iter()
            .zip(&pick)
            .fold(VarSet::EMPTY, |acc, (opts, &k)| acc.union(opts[k]));
        if is_base(datum, l)? {
            return Ok(FoundBase {
                base: l,
                method: BaseMethod::Squarefree,
                fallback: false,
            });
        }
        if !advance(&mut pick, &steps) {
            break;
        }
    }
    let base = brute_force_base(datum)?.ok_or_else(|| {
        Error::AlgorithmContract("no subset of supp(I) is a base of a squarefree retract".into())
    })?;
    Ok(FoundBase {
        base: certify(datum, base, "the exhaustive search")?,
        method: BaseMethod::BruteForce,
        fallback: true,
    })
}

/// Odometer step over the choice lists, last list fastest.
fn advance(pick: &mut [usize], steps: &[Vec<VarSet>]) -> bool {
    for k in (0..pick.len()).rev() {
        pick[k] += 1;
        if pick[k] < steps[k].len() {
            return true;
        }
        pick[k] = 0;
    }
    false
}

/// Builds `L` by reverse induction over index sets `T` of the primes: `C_T`
/// extends a basis of `Σ V_T'` (`T' ⊋ T`, one larger) to one of `V_T` using
/// variables of `B_T`, the variables of `P_T` in no other prime. Each `C_T`
/// is the greedy choice.
pub fn construct_from_primes(datum: &RetractDatum, primes: &[LinearPrime]) -> Result<VarSet> {
    Ok(complement_choices(datum, primes)?
        .iter()
        .fold(VarSet::EMPTY, |acc, opts| acc.union(opts[0])))
}

/// Every admissible `C_T` for each `T`, in the order `T` is visited. Each
/// list is nonempty and starts with the greedy choice.
fn complement_choices(datum: &RetractDatum, primes: &[LinearPrime]) -> Result<Vec<Vec<VarSet>>> {
    let s = primes.len();
    if s > MAX_PRIMES {
        return Err(Error::guard("number of primes", MAX_PRIMES as u128, s as u128));
    }
    if let Some(p) = primes.iter().find(|p| !image_inside(datum, p.vars, p.vars)) {
        return Err(Error::Precondition(format!(
            "psi does not preserve ({})",
            datum.names(p.vars).join(", ")
        )));
    }
    let all = VarSet::full(s);
    let common = |t: VarSet| {
        t.iter()
            .fold(VarSet::full(datum.nvars()), |acc, i| acc.intersection(primes[i].vars))
    };
    let mut steps = Vec::new();
    for t in (1..=s).rev() {
        let idx: Vec<usize> = (0..s).collect();
        let mut sets = Vec::new();
        combinations(&idx, t, &mut |c| sets.push(VarSet::from_indices(c.iter().copied())));
        for tset in sets {
            let p_t = common(tset);
            let others = all
                .difference(tset)
                .iter()
                .fold(VarSet::EMPTY, |acc, j| acc.union(primes[j].vars));
            let b_t = p_t.difference(others);
            let inner: Vec<Polynomial> = all
                .difference(tset)
                .iter()
                .flat_map(|j| {
                    let mut bigger = tset;
                    bigger.insert(j);
                    datum.images_of(common(bigger))
                })
                .collect();
            let target = rank(&[inner.clone(), datum.images_of(p_t)].concat())?;
            let need = target - rank(&inner)?;
            let candidates = b_t.to_vec();
            let mut options = Vec::new();
            let mut failure = None;
            combinations(&candidates, need, &mut |c| {
                if failure.is_some() {
                    return;
                }
                let c = VarSet::from_indices(c.iter().copied());
                match rank(&[inner.clone(), datum.images_of(c)].concat()) {
                    Ok(r) if r == target => options.push(c),
                    Ok(_) => {}
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if options.is_empty() {
                return Err(Error::AlgorithmContract(format!(
                    "variables {{{}}} cannot complete the span for primes {:?}",
                    datum.names(b_t).join(","),
                    tset.to_vec()
                )));
            }
            steps.push(options);
        }
    }
    Ok(steps)
}

/// Degree-`d` piece of the ideal generated by linear forms.
fn linear_piece(datum: &RetractDatum, forms: &[Polynomial], d: u32) -> Vec<Terms> {
    let n = datum.nvars();
    let basis = extract_basis_indices(forms).expect("linear forms");
    let mut ech: Echelon<Monomial> = Echelon::new(datum.field());
    if d >= 1 {
        for &b in &basis {
            for m in monomials_of_degree(n, d - 1) {
                ech.insert(forms[b].mul_monomial(&m).into_terms());
            }
        }
    }
    ech.reduced_basis()
}

/// Checks `φ(I) = φ(p_1) ∩ ... ∩ φ(p_s)` on graded pieces.
///
/// Both sides are compared in every degree up to `max(deg I, s)`: an
/// intersection of `s` ideals generated by linear forms is generated in
/// degrees `<= s`, so agreement there forces equality.
pub fn decomposition_images_check(datum: &RetractDatum) -> Result<bool> {
    if !datum.ideal().is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    require_retract(datum)?;
    let primes = datum.ideal().primary_decomposition_squarefree()?;
    if primes.is_empty() {
        return Ok(true);
    }
    let top = datum.ideal().max_degree().max(primes.len() as u32);
    let field = datum.field();
    let mut lhs = GradedIdeal::new(datum.ring(), &datum.ideal_images())?;
    for d in 1..=top {
        check_piece_size(datum.nvars(), d)?;
        let mut meet: Option<Vec<Terms>> = None;
        for p in &primes {
            let piece = linear_piece(datum, &datum.images_of(p.vars), d);
            meet = Some(match meet {
                None => piece,
                Some(acc) => intersect_spaces(field, &acc, &piece),
            });
        }
        let meet = meet.expect("at least one prime");
        let left = lhs.piece(d)?;
        // φ(I) ⊆ ∩ φ(p_i) always, so equal dimensions suffice.
        if left.rank() != meet.len() || !meet.iter().all(|v| left.contains(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::retract::fixtures::*;
    use crate::retract::{brute_force_base, verify_base};

    #[test]
    fn three_points_trace() {
        let d = three_points();
        let w = find_base_squarefree(&d).unwrap().base;
        assert_eq!(d.names(w), vec!["x", "y"]);
        assert!(decomposition_images_check(&d).unwrap());
    }

    #[test]
    fn pentagon_projection_base() {
        let d = pentagon_projection();
        let w = find_base_squarefree(&d).unwrap().base;
        assert!(verify_base(&d, w).unwrap().valid);
        let restricted = d.ideal().restrict(w).unwrap();
        assert_eq!(restricted.generator_strings(), vec!["x*z", "x*t"]);
        assert!(decomposition_images_check(&d).unwrap());
    }

    #[test]
    fn identity_gives_a_base() {
        let d = datum("Q", &["x", "y", "z"], &["x*y", "y*z"], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let w = find_base_squarefree(&d).unwrap().base;
        assert!(verify_base(&d, w).unwrap().valid);
        assert!(verify_base(&d, d.ideal().support()).unwrap().valid);
        assert!(decomposition_images_check(&d).unwrap());
    }

    #[test]
    fn prime_dropping_is_exercised() {
        // x -> x + y and y, z -> 0 on three points: ψ(x) leaves (x, z), whose
        // partner (y, z) is killed.
        let d = datum("Q", &["x", "y", "z"], &["x*y", "x*z", "y*z"], &[&[1, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(crate::retract::verify_retract(&d).holds());
        let w = find_base_squarefree(&d).unwrap().base;
        assert_eq!(d.names(w), vec!["x"]);
        assert!(verify_base(&d, w).unwrap().valid);
        assert_eq!(brute_force_base(&d).unwrap(), Some(VarSet::EMPTY));
        assert!(decomposition_images_check(&d).unwrap());
    }

    #[test]
    fn reduced_base_is_not_enough() {
        // Dropping (a, b) and (c, d) leaves (a, c) ∩ (b, d), whose greedy
        // base {a, b} misses I = (ad, bc) entirely.
        let d = datum(
            "F2",
            &["a", "b", "c", "d"],
            &["a*d", "b*c"],
            &[&[0, 0, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 0, 0, 0]],
        );
        let primes = reduced_primes(&d).unwrap();
        let greedy = construct_from_primes(&d, &primes).unwrap();
        assert_eq!(d.names(greedy), vec!["a", "b"]);
        assert!(!is_base(&d, greedy).unwrap());
        let found = find_base_squarefree(&d).unwrap();
        assert!(!found.fallback);
        assert_eq!(d.names(found.base), vec!["a", "d"]);
        assert!(verify_base(&d, found.base).unwrap().valid);
    }

    #[test]
    fn zero_ideal() {
        let d = datum("Q", &["x"], &[], &[&[1]]);
        assert_eq!(find_base_squarefree(&d).unwrap().base, VarSet::EMPTY);
    }

    #[test]
    fn single_prime_identity() {
        let d = datum("Q", &["x", "y"], &["x*y"], &[&[1, 0], &[0, 1]]);
        let primes = vec![LinearPrime { vars: VarSet::from_indices([0]) }];
        assert_eq!(construct_from_primes(&d, &primes).unwrap(), VarSet::from_indices([0]));
    }
}
