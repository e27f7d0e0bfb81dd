//! Bases of retracts of `S/I` for `I` generated by pure powers of variables
//! or equal to a power of an ideal of variables.

use crate::error::{Error, Result};
use crate::exactalg::{complement_basis_from, extract_basis_indices, Field, Polynomial};
use crate::retract::{
    brute_force_base, certify, is_base, require_retract, BaseMethod, FoundBase, RetractDatum,
};
use crate::varset::VarSet;

fn supported_in(f: &Polynomial, x: VarSet) -> bool {
    f.terms().keys().all(|m| m.support().is_subset(x))
}

fn is_power_of(d: u32, p: u32) -> bool {
    if p == 0 || d < p {
        return false;
    }
    let mut d = d;
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// `Σ c_k images[k]` for `f = Σ c_k x_k`.
fn linear_apply(images: &[Polynomial], f: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    for (k, c) in f.linear_coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&images[k].scale(c)).expect("same ring");
        }
    }
    acc
}

/// Map `x_i -> images[i]` on the variables `x`, with `images[i]` supported in `x`.
struct Stage<'a> {
    field: Field,
    exps: &'a [u32],
    names: &'a [String],
}

impl Stage<'_> {
    fn solve(&self, x: VarSet, images: &[Polynomial]) -> Result<VarSet> {
        let Some(d) = x.iter().map(|i| self.exps[i]).max() else {
            return Ok(VarSet::EMPTY);
        };
        let high = VarSet::from_indices(x.iter().filter(|&i| self.exps[i] == d));
        let low = x.difference(high);
        if let Some(j) = low.iter().find(|&j| !supported_in(&images[j], low)) {
            return Err(Error::NotARetract(format!(
                "image of {} involves a variable of larger exponent",
                self.names[j]
            )));
        }
        let u = self.solve(low, images)?;
        let p = self.field.characteristic();
        if !is_power_of(d, p) {
            self.case_one(x, high, u, images)
        } else {
            let outer: Vec<Polynomial> = x.iter().map(|i| images[i].clone()).collect();
            let inner: Vec<Polynomial> = u.iter().map(|i| images[i].clone()).collect();
            let candidates = high.to_vec();
            let cand_images: Vec<Polynomial> = candidates.iter().map(|&i| images[i].clone()).collect();
            let chosen = complement_basis_from(&cand_images, &outer, &inner)?.ok_or_else(|| {
                Error::InfeasibleBasis(format!(
                    "images indexed by exponent-{d} variables do not complete a basis"
                ))
            })?;
            Ok(chosen.into_iter().fold(u, |mut w, k| {
                w.insert(candidates[k]);
                w
            }))
        }
    }

    fn case_one(&self, x: VarSet, high: VarSet, u: VarSet, images: &[Polynomial]) -> Result<VarSet> {
        let unipotent = high.iter().all(|i| {
            let img = &images[i];
            img.linear_coeff(i).is_one()
                && high.iter().all(|j| j == i || img.linear_coeff(j).is_zero())
        });
        if unipotent {
            return Ok(u.union(high));
        }
        let Some(i) = high.iter().find(|&i| images[i].linear_coeff(i).is_zero()) else {
            return Err(Error::NotARetract(format!(
                "images of exponent-{} variables are neither unipotent nor eliminable",
                high.iter().map(|i| self.exps[i]).next().unwrap_or(0)
            )));
        };
        // Eliminate x_i via x_i -> ψ(x_i) and continue on the other variables.
        let ell = images[i].clone();
        let mut next: Vec<Polynomial> = images.to_vec();
        let rest = x.difference(VarSet::singleton(i));
        for j in rest.iter() {
            let c = images[j].linear_coeff(i);
            if !c.is_zero() {
                let without = images[j].sub(&Polynomial::var(ell.ring(), i).scale(&c)).expect("same ring");
                next[j] = without.add(&ell.scale(&c)).expect("same ring");
            }
        }
        next[i] = Polynomial::zero(ell.ring());
        for j in rest.iter() {
            if linear_apply(&next, &next[j]) != next[j] {
                return Err(Error::AlgorithmContract(format!(
                    "eliminating {} broke idempotency",
                    self.names[i]
                )));
            }
        }
        self.solve(rest, &next)
    }
}

/// Follows the induction on the largest exponent: recurse on the variables
/// of smaller exponent, then either adjoin the top block, eliminate one of
/// its variables, or (exponent a power of the characteristic) complete a
/// basis greedily. An infeasible completion falls back to brute force.
pub fn find_base_irreducible(datum: &RetractDatum) -> Result<FoundBase> {
    let ideal = datum.ideal();
    let powers = ideal
        .pure_powers()
        .ok_or_else(|| Error::Precondition("ideal is not generated by pure powers".into()))?;
    require_retract(datum)?;
    let n = datum.nvars();
    let mut exps = vec![0u32; n];
    for (i, d) in powers {
        exps[i] = d;
    }
    let x = ideal.support();
    if let Some(i) = x.iter().find(|&i| !supported_in(datum.image(i), x)) {
        return Err(Error::NotARetract(format!(
            "image of {} leaves the support of I",
            datum.ring().vars()[i]
        )));
    }
    let images: Vec<Polynomial> = (0..n).map(|i| datum.image(i).clone()).collect();
    let stage = Stage {
        field: datum.field(),
        exps: &exps,
        names: datum.ring().vars(),
    };
    match stage.solve(x, &images) {
        Ok(w) => Ok(FoundBase {
            base: certify(datum, w, "the irreducible construction")?,
            method: BaseMethod::Irreducible,
            fallback: false,
        }),
        Err(Error::InfeasibleBasis(msg)) => match brute_force_base(datum)? {
            Some(w) => Ok(FoundBase {
                base: w,
                method: BaseMethod::Irreducible,
                fallback: true,
            }),
            None => Err(Error::InfeasibleBasis(msg)),
        },
        Err(e) => Err(e),
    }
}

/// For `I = (x_a : a ∈ A)^d`, any `W ⊆ A` whose images form a basis of the
/// image of `span(x_A)` is a base.
pub fn find_base_power(datum: &RetractDatum) -> Result<VarSet> {
    let (a, d) = datum
        .ideal()
        .linear_power()
        .ok_or_else(|| Error::Precondition("ideal is not a power of an ideal of variables".into()))?;
    if d < 2 {
        return Err(Error::Precondition("exponent must be at least 2".into()));
    }
    require_retract(datum)?;
    if let Some(i) = a.iter().find(|&i| !supported_in(datum.image(i), a)) {
        return Err(Error::NotARetract(format!(
            "image of {} leaves the support of I",
            datum.ring().vars()[i]
        )));
    }
    let vars = a.to_vec();
    let chosen = extract_basis_indices(&datum.images_of(a))?;
    let w = VarSet::from_indices(chosen.into_iter().map(|k| vars[k]));
    if !is_base(datum, w)? {
        return Err(Error::NotARetract(format!(
            "{{{}}} fails the base conditions",
            datum.names(w).join(",")
        )));
    }
    Ok(w)
}
