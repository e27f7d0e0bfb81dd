//! Monomials and binomials generating the kernel of `k[x_1..x_n] -> k[M]`,
//! with binomials enumerated up to a total-degree bound.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{check_piece_size, monomials_of_degree, Echelon, Field, Monomial, Polynomial, Ring};
use crate::monideal::MonomialIdeal;
use crate::simplicial::SimplicialComplex;
use crate::toric::MonoidalComplex;
use crate::varset::VarSet;

#[derive(Debug, Clone)]
pub struct DefiningIdeal {
    ring: Arc<Ring>,
    monomials: Vec<Polynomial>,
    binomials: Vec<Polynomial>,
    degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningIdealJson {
    pub ring: Vec<String>,
    pub monomials: Vec<String>,
    pub binomials: Vec<String>,
    pub complete_up_to_degree: u32,
}

impl DefiningIdeal {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn monomials(&self) -> &[Polynomial] {
        &self.monomials
    }

    pub fn binomials(&self) -> &[Polynomial] {
        &self.binomials
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.monomials.iter().chain(&self.binomials).cloned().collect()
    }

    pub fn complete_up_to_degree(&self) -> u32 {
        self.degree
    }

    /// The monomial part as a monomial ideal.
    pub fn monomial_ideal(&self) -> Result<MonomialIdeal> {
        let gens = self
            .monomials
            .iter()
            .map(|f| f.leading().expect("nonzero").0.clone())
            .collect();
        MonomialIdeal::new(self.ring.vars(), gens)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators().iter().map(Polynomial::to_string).collect()
    }

    /// `k[x,y]/(x*y)`-style summary.
    pub fn summary(&self) -> String {
        let vars = self.ring.vars().join(",");
        let gens = self.generator_strings();
        if gens.is_empty() {
            format!("k[{vars}]")
        } else {
            format!("k[{vars}]/({})", gens.join(", "))
        }
    }

    pub fn to_json(&self) -> DefiningIdealJson {
        DefiningIdealJson {
            ring: self.ring.vars().to_vec(),
            monomials: self.monomials.iter().map(Polynomial::to_string).collect(),
            binomials: self.binomials.iter().map(Polynomial::to_string).collect(),
            complete_up_to_degree: self.degree,
        }
    }
}

fn lattice_point(vectors: &[Vec<i64>], dim: usize, m: &Monomial) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            for (c, a) in v.iter_mut().zip(&vectors[i]) {
                *c += i64::from(e) * a;
            }
        }
    }
    v
}

/// Monomials of total degree at most `d` in the variables `vars` of an
/// `n`-variable ring.
fn monomials_up_to(n: usize, vars: &[usize], d: u32) -> Result<Vec<Monomial>> {
    check_piece_size(vars.len() + 1, d)?;
    Ok((0..=d)
        .flat_map(|e| monomials_of_degree(vars.len(), e))
        .map(|m| m.embed(n, vars))
        .collect())
}

/// Grlex-leading coefficient normalized to `+1`.
fn binomial(ring: &Arc<Ring>, a: &Monomial, b: &Monomial) -> Polynomial {
    let f = Polynomial::monomial(ring, a.clone())
        .sub(&Polynomial::monomial(ring, b.clone()))
        .expect("same ring");
    if f.leading().expect("distinct monomials").1.is_negative() {
        f.neg()
    } else {
        f
    }
}

/// Span of `m·g` over earlier generators `g` and multipliers `m` with every
/// product of total degree at most `bound`, sliced by lattice point.
struct BoundedMembership {
    bound: u32,
    by_point: HashMap<Vec<i64>, Vec<Monomial>>,
    gens: Vec<(Polynomial, Vec<i64>)>,
}

impl BoundedMembership {
    fn contains(&self, f: &Polynomial, point: &[i64], field: Field) -> bool {
        let mut ech: Echelon<Monomial> = Echelon::new(field);
        for (g, gp) in &self.gens {
            let need: Vec<i64> = point.iter().zip(gp).map(|(a, b)| a - b).collect();
            let Some(ms) = self.by_point.get(&need) else { continue };
            let gdeg = g.degree().unwrap_or(0);
            for m in ms {
                if m.degree() + gdeg <= self.bound {
                    ech.insert(g.mul_monomial(m).into_terms());
                }
            }
        }
        ech.contains(f.terms())
    }
}

/// Part (i): the minimal sets of generators lying in no common monoid.
/// Part (ii): binomials `x^η - x^ν` from exponent vectors on one maximal
/// cone with `Σ η_i a_i = Σ ν_i a_i`, of total degree at most `degree`,
/// keeping those not already implied by earlier output in that degree range.
pub fn defining_ideal(m: &MonoidalComplex, degree: Option<u32>) -> Result<DefiningIdeal> {
    m.require_valid()?;
    let d = degree.unwrap_or_else(|| m.default_degree());
    if d < 2 {
        return Err(Error::Precondition(format!("degree bound {d} is below 2")));
    }
    let names = m.generator_names();
    let n = names.len();
    let ring = Ring::new(names, Field::Rationals)?;
    let maximal = m.maximal_cones();
    let supports: Vec<VarSet> = maximal.iter().map(|&c| m.cone_support(c)).collect();
    let complex = SimplicialComplex::new(names, supports.clone())?;
    let mut nonfaces = complex.minimal_nonfaces()?;
    let covered = supports.iter().fold(VarSet::EMPTY, |a, s| a.union(*s));
    nonfaces.extend(VarSet::full(n).difference(covered).iter().map(VarSet::singleton));
    let monomial_part = MonomialIdeal::new(
        names,
        nonfaces
            .iter()
            .map(|h| Monomial::new((0..n).map(|i| u32::from(h.contains(i))).collect()))
            .collect(),
    )?;
    let monomials = monomial_part.to_polynomials(&ring)?;

    let mut binomials = Vec::new();
    if let (Some(vectors), Some(dim)) = (m.vectors(), m.dim()) {
        let mut candidates: Vec<(Monomial, Monomial, Vec<i64>)> = Vec::new();
        for s in &supports {
            let mut buckets: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
            for mono in monomials_up_to(n, &s.to_vec(), d)? {
                buckets.entry(lattice_point(vectors, dim, &mono)).or_default().push(mono);
            }
            for (point, ms) in buckets {
                for (k, a) in ms.iter().enumerate() {
                    for b in &ms[k + 1..] {
                        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
                        candidates.push((hi.clone(), lo.clone(), point.clone()));
                    }
                }
            }
        }
        candidates.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        candidates.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
        if !candidates.is_empty() {
            let mut by_point: HashMap<Vec<i64>, Vec<Monomial>> = HashMap::new();
            for mono in monomials_up_to(n, &(0..n).collect::<Vec<_>>(), d)? {
                by_point.entry(lattice_point(vectors, dim, &mono)).or_default().push(mono);
            }
            let mut member = BoundedMembership {
                bound: d,
                by_point,
                gens: monomials
                    .iter()
                    .map(|g| (g.clone(), lattice_point(vectors, dim, g.leading().expect("nonzero").0)))
                    .collect(),
            };
            for (a, b, point) in candidates {
                let f = binomial(&ring, &a, &b);
                if !member.contains(&f, &point, ring.field()) {
                    member.gens.push((f.clone(), point));
                    binomials.push(f);
                }
            }
        }
    }
    Ok(DefiningIdeal {
        ring,
        monomials,
        binomials,
        degree: d,
    })
}
