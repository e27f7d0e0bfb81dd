//! Monomial ideals: membership, intersections, restriction to variable
//! subsets, and the primary/irreducible decompositions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{generator_order, Field, Monomial, Polynomial, Ring};
use crate::varset::{VarSet, MAX_VARS};

/// A monomial ideal stored by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Arc<Vec<String>>,
    gens: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdealJson {
    pub ring: Vec<String>,
    pub generators: Vec<String>,
}

/// The prime generated by a set of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearPrime {
    pub vars: VarSet,
}

impl LinearPrime {
    pub fn to_ideal(&self, vars: &Arc<Vec<String>>) -> MonomialIdeal {
        let n = vars.len();
        MonomialIdeal::new_unchecked(vars.clone(), self.vars.iter().map(|i| Monomial::var(n, i)).collect())
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(generator_order);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // Ascending degree: a divisor always comes before its multiples.
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new<S: AsRef<str>>(vars: &[S], gens: Vec<Monomial>) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        // Reuse the ring validation for names.
        Ring::new(&vars, Field::Rationals)?;
        let n = vars.len();
        if gens.iter().any(|g| g.nvars() != n) {
            return Err(Error::RingMismatch("generator length differs from variable count".into()));
        }
        Ok(Self::new_unchecked(Arc::new(vars), gens))
    }

    pub(crate) fn new_unchecked(vars: Arc<Vec<String>>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            vars,
            gens: minimalize(gens),
        }
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        Self::new(vars, vec![])
    }

    /// Parses generator strings such as `x^2*y`; each must be a monic monomial.
    pub fn parse<S: AsRef<str>, T: AsRef<str>>(vars: &[S], gens: &[T]) -> Result<Self> {
        let ring = Ring::new(vars, Field::Rationals)?;
        let mut ms = Vec::with_capacity(gens.len());
        for g in gens {
            let p = Polynomial::parse(&ring, g.as_ref())?;
            match p.terms().iter().next() {
                Some((m, c)) if p.terms().len() == 1 && c.is_one() => ms.push(m.clone()),
                _ => {
                    return Err(Error::Parse(format!(
                        "'{}' is not a monomial",
                        g.as_ref()
                    )))
                }
            }
        }
        Self::new(vars, ms)
    }

    pub fn from_json(j: &MonomialIdealJson) -> Result<Self> {
        Self::parse(&j.ring, &j.generators)
    }

    pub fn to_json(&self) -> MonomialIdealJson {
        MonomialIdealJson {
            ring: self.vars.to_vec(),
            generators: self.generator_strings(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.format(&self.vars)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.nvars() {
            return Err(Error::RingMismatch("monomial length differs from variable count".into()));
        }
        Ok(self.gens.iter().any(|g| g.divides(m)))
    }

    /// A polynomial lies in a monomial ideal iff all its monomials do.
    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        if f.ring().vars() != self.vars.as_slice() {
            return Err(Error::RingMismatch(format!(
                "polynomial ring [{}] vs ideal ring [{}]",
                f.ring().vars().join(","),
                self.vars.join(",")
            )));
        }
        Ok(f.terms().keys().all(|m| self.gens.iter().any(|g| g.divides(m))))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::new_unchecked(self.vars.clone(), gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::new_unchecked(self.vars.clone(), gens))
    }

    /// Intersection of a nonempty list of ideals over the same ring.
    pub fn intersect_all(ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
        let (first, rest) = ideals
            .split_first()
            .ok_or_else(|| Error::Precondition("empty intersection".into()))?;
        rest.iter().try_fold(first.clone(), |acc, i| acc.intersect(i))
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::new_unchecked(self.vars.clone(), self.gens.iter().map(Monomial::radical).collect())
    }

    /// Variables dividing some minimal generator.
    pub fn support(&self) -> VarSet {
        self.gens
            .iter()
            .fold(VarSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    fn check_subset(&self, w: VarSet) -> Result<()> {
        if !w.is_subset(VarSet::full(self.nvars())) {
            return Err(Error::RingMismatch(format!("{w:?} is not a subset of the variables")));
        }
        Ok(())
    }

    /// `I_W`: the ideal of `S_W` generated by the minimal generators of `I`
    /// supported in `W`. Variables keep their original relative order.
    pub fn restrict(&self, w: VarSet) -> Result<MonomialIdeal> {
        self.check_subset(w)?;
        let keep = w.to_vec();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().is_subset(w))
            .map(|g| g.project(&keep))
            .collect();
        Ok(Self::new_unchecked(Arc::new(vars), gens))
    }

    /// `I_W S`: same ring, keeping only generators supported in `W`.
    pub fn restrict_extended(&self, w: VarSet) -> Result<MonomialIdeal> {
        self.check_subset(w)?;
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().is_subset(w))
            .cloned()
            .collect();
        Ok(Self::new_unchecked(self.vars.clone(), gens))
    }

    /// Generators as polynomials of `ring`, which must have the same variables.
    pub fn to_polynomials(&self, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
        if ring.vars() != self.vars.as_slice() {
            return Err(Error::RingMismatch("ideal and ring variables differ".into()));
        }
        Ok(self.gens.iter().map(|g| Polynomial::monomial(ring, g.clone())).collect())
    }

    /// Exponents `(variable, d)` when every generator is a pure power.
    pub fn pure_powers(&self) -> Option<Vec<(usize, u32)>> {
        self.gens
            .iter()
            .map(|g| g.pure_power_var().map(|i| (i, g.exp(i))))
            .collect()
    }

    /// `Some((A, d))` when the ideal equals `(x_a : a in A)^d` with `d >= 1`.
    pub fn linear_power(&self) -> Option<(VarSet, u32)> {
        let d = self.gens.first()?.degree();
        if d == 0 || self.gens.iter().any(|g| g.degree() != d) {
            return None;
        }
        let support = self.support();
        let count = crate::exactalg::count_monomials(support.len(), d);
        (count == self.gens.len() as u128).then_some((support, d))
    }

    /// Components `(x_i : i not in F)` over the facets `F` of the complex of
    /// non-faces, ordered by size and then lexicographically. The zero ideal
    /// yields no components.
    pub fn primary_decomposition_squarefree(&self) -> Result<Vec<LinearPrime>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(vec![]);
        }
        let edges: Vec<VarSet> = self.gens.iter().map(Monomial::support).collect();
        let mut primes: Vec<LinearPrime> = minimal_transversals(&edges)
            .into_iter()
            .map(|vars| LinearPrime { vars })
            .collect();
        primes.sort_by_key(|p| p.vars.size_lex_key());
        Ok(primes)
    }

    /// Irredundant decomposition into ideals generated by pure powers, by
    /// repeatedly splitting `(ab) + J = ((a) + J) ∩ ((b) + J)`.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut leaves = Vec::new();
        self.split_into(&mut leaves);
        leaves.sort_by_key(|a| component_key(a));
        leaves.dedup();
        // Drop components containing another one.
        let keep: Vec<bool> = (0..leaves.len())
            .map(|i| {
                !(0..leaves.len()).any(|j| j != i && contains_ideal(&leaves[i], &leaves[j]))
            })
            .collect();
        Ok(leaves
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect())
    }

    fn split_into(&self, out: &mut Vec<MonomialIdeal>) {
        let pivot = self.gens.iter().position(|g| g.support().len() >= 2);
        let Some(pi) = pivot else {
            out.push(self.clone());
            return;
        };
        let g = &self.gens[pi];
        let j = g.support().first().expect("nonempty support");
        let n = self.nvars();
        let a = Monomial::var_pow(n, j, g.exp(j));
        let mut b_exps = g.exps().to_vec();
        b_exps[j] = 0;
        let b = Monomial::new(b_exps);
        let rest: Vec<Monomial> = self
            .gens
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pi)
            .map(|(_, m)| m.clone())
            .collect();
        for part in [a, b] {
            let mut gens = rest.clone();
            gens.push(part);
            Self::new_unchecked(self.vars.clone(), gens).split_into(out);
        }
    }

    pub fn format_ring(&self) -> String {
        format!("k[{}]", self.vars.join(","))
    }
}

/// `big ⊇ small` for monomial ideals.
pub fn contains_ideal(big: &MonomialIdeal, small: &MonomialIdeal) -> bool {
    small.gens.iter().all(|g| big.gens.iter().any(|h| h.divides(g)))
}

fn component_key(c: &MonomialIdeal) -> (usize, Vec<usize>, Vec<u32>, Vec<Vec<u32>>) {
    let s = c.support();
    (
        s.len(),
        s.to_vec(),
        c.gens.iter().map(Monomial::degree).collect(),
        c.gens.iter().map(|g| g.exps().to_vec()).collect(),
    )
}

/// Minimal sets meeting every edge (Berge's incremental algorithm).
pub(crate) fn minimal_transversals(edges: &[VarSet]) -> Vec<VarSet> {
    let mut current: Vec<VarSet> = vec![VarSet::EMPTY];
    for &e in edges {
        let mut next: Vec<VarSet> = Vec::new();
        for &t in &current {
            if !t.intersection(e).is_empty() {
                next.push(t);
            } else {
                for v in e.iter() {
                    let mut u = t;
                    u.insert(v);
                    next.push(u);
                }
            }
        }
        next.sort_by_key(|s| (s.len(), s.bits()));
        next.dedup();
        let mut minimal: Vec<VarSet> = Vec::with_capacity(next.len());
        for s in next {
            if !minimal.iter().any(|m| m.is_subset(s)) {
                minimal.push(s);
            }
        }
        current = minimal;
    }
    current
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

const _: () = assert!(MAX_VARS == 64);

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(vars, gens).unwrap()
    }

    const XYZ: [&str; 3] = ["x", "y", "z"];
    const PENTAGON: [&str; 5] = ["x", "y", "z", "t", "w"];

    #[test]
    fn minimal_generators_and_order() {
        let i = ideal(&XYZ, &["x^2*y", "y*z", "x*y", "z*x"]);
        assert_eq!(i.generator_strings(), vec!["x*y", "x*z", "y*z"]);
        assert!(MonomialIdeal::parse(&XYZ, &["2*x"]).is_err());
        assert!(MonomialIdeal::parse(&XYZ, &["x + y"]).is_err());
    }

    #[test]
    fn membership() {
        let i = ideal(&XYZ, &["x*y", "y*z"]);
        let m = |s: &str| ideal(&XYZ, &[s]).generators()[0].clone();
        assert!(i.contains(&m("x^2*y")).unwrap());
        assert!(!i.contains(&m("x*z")).unwrap());
        let r = Ring::new(&XYZ, Field::Rationals).unwrap();
        let xy = ideal(&XYZ, &["x*y"]);
        assert!(!xy.contains_poly(&Polynomial::parse(&r, "x + y").unwrap()).unwrap());
    }

    #[test]
    fn fifth_powers_contain_frobenius_image() {
        let f5 = Field::prime(5).unwrap();
        let r = Ring::new(&XYZ, f5).unwrap();
        let i = ideal(&XYZ, &["x^5", "y^5", "z^5"]);
        let f = Polynomial::parse(&r, "x + y").unwrap().pow(5);
        assert_eq!(f.to_string(), "x^5 + y^5");
        assert!(i.contains_poly(&f).unwrap());
    }

    #[test]
    fn intersections_and_radical() {
        let a = ideal(&["x", "y"], &["x^2"]);
        let b = ideal(&["x", "y"], &["y"]);
        assert_eq!(a.intersect(&b).unwrap().generator_strings(), vec!["x^2*y"]);
        let p = |g: &[&str]| ideal(&XYZ, g);
        let i = MonomialIdeal::intersect_all(&[p(&["x", "y"]), p(&["y", "z"]), p(&["x", "z"])]).unwrap();
        assert_eq!(i, ideal(&XYZ, &["x*y", "y*z", "z*x"]));
        assert_eq!(ideal(&XYZ, &["x^5", "y^5", "z^5"]).radical(), ideal(&XYZ, &["x", "y", "z"]));
        assert!(a.intersect(&p(&["x"])).is_err());
    }

    #[test]
    fn restriction() {
        let pent = ideal(&PENTAGON, &["x*z", "x*t", "y*t", "y*w", "z*w"]);
        let w = VarSet::from_names(pent.vars(), &["x", "z", "t"]).unwrap();
        let r = pent.restrict(w).unwrap();
        assert_eq!(r.vars(), &["x", "z", "t"]);
        assert_eq!(r.generator_strings(), vec!["x*z", "x*t"]);
        assert!(ideal(&["x", "y"], &["x*y"]).restrict(VarSet::singleton(0)).unwrap().is_zero());
        let p = ideal(&XYZ, &["x^5", "y^5", "z^5"]).restrict(VarSet::singleton(2)).unwrap();
        assert_eq!(p.to_string(), "(z^5)");
    }

    #[test]
    fn primary_decomposition_of_three_points() {
        let i = ideal(&XYZ, &["x*y", "y*z", "z*x"]);
        let primes: Vec<Vec<usize>> = i
            .primary_decomposition_squarefree()
            .unwrap()
            .iter()
            .map(|p| p.vars.to_vec())
            .collect();
        assert_eq!(primes, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn primary_decomposition_of_pentagon() {
        let pent = ideal(&PENTAGON, &["x*z", "x*t", "y*t", "y*w", "z*w"]);
        let mut got: Vec<Vec<String>> = pent
            .primary_decomposition_squarefree()
            .unwrap()
            .iter()
            .map(|p| p.vars.names(pent.vars()))
            .collect();
        got.sort();
        let mut want: Vec<Vec<String>> = [
            ["z", "t", "w"],
            ["x", "t", "w"],
            ["x", "y", "w"],
            ["x", "y", "z"],
            ["y", "z", "t"],
        ]
        .iter()
        .map(|c| {
            let mut v: Vec<String> = c.iter().map(|s| s.to_string()).collect();
            v.sort_by_key(|s| PENTAGON.iter().position(|p| p == s));
            v
        })
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn decomposition_edge_cases() {
        assert!(MonomialIdeal::zero(&["x"]).unwrap().primary_decomposition_squarefree().unwrap().is_empty());
        assert_eq!(
            ideal(&["x", "y"], &["x^2"]).primary_decomposition_squarefree(),
            Err(Error::NotSquarefree)
        );
        assert_eq!(ideal(&["x"], &["1"]).irreducible_decomposition(), Err(Error::UnitIdeal));
    }

    #[test]
    fn irreducible_split() {
        let i = ideal(&XYZ, &["x^2*y", "z"]);
        let comps: Vec<String> = i
            .irreducible_decomposition()
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(comps, vec!["(z, x^2)", "(y, z)"]);
        let irr = ideal(&XYZ, &["x^5", "y^5", "z^5"]);
        assert_eq!(irr.irreducible_decomposition().unwrap(), vec![irr]);
    }

    #[test]
    fn irreducible_keeps_repeated_leaves_once() {
        let vars = ["a", "b", "c", "d", "e", "f"];
        let i = ideal(
            &vars,
            &["a^3*b^3*d*e^4*f", "a^2*b^2*c^4*d^4*e^2*f", "a^3*b*c*d^4*e^4*f^3", "a^2*b^3*c^4*d^3*e*f^4"],
        );
        let comps = i.irreducible_decomposition().unwrap();
        assert_eq!(MonomialIdeal::intersect_all(&comps).unwrap(), i);
        assert!(comps.iter().any(|c| c.to_string() == "(b^2, a^3)"));
    }

    #[test]
    fn irreducible_matches_primary_on_squarefree() {
        let i = ideal(&XYZ, &["x*y", "y*z", "z*x"]);
        let irr: Vec<MonomialIdeal> = i.irreducible_decomposition().unwrap();
        let prim: Vec<MonomialIdeal> = i
            .primary_decomposition_squarefree()
            .unwrap()
            .iter()
            .map(|p| p.to_ideal(i.vars_arc()))
            .collect();
        assert_eq!(irr, prim);
    }

    #[test]
    fn support_and_shapes() {
        assert_eq!(ideal(&XYZ, &["x*y", "y*z"]).support().to_vec(), vec![0, 1, 2]);
        assert!(MonomialIdeal::zero(&XYZ).unwrap().support().is_empty());
        assert_eq!(
            ideal(&XYZ, &["x^2", "y^3"]).pure_powers(),
            Some(vec![(0, 2), (1, 3)])
        );
        assert_eq!(ideal(&XYZ, &["x^2", "x*y"]).pure_powers(), None);
        let sq = ideal(&XYZ, &["x^2", "x*y", "y^2"]);
        assert_eq!(sq.linear_power(), Some((VarSet::from_indices([0, 1]), 2)));
        assert_eq!(ideal(&XYZ, &["x^2", "y^2"]).linear_power(), None);
    }
}
