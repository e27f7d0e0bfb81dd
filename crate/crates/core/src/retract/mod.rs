//! Graded algebra retracts of monomial quotient rings `S/I`, each given by an
//! idempotent degree-one endomorphism `ψ = θ∘φ` of `S` with `ψ(I) ⊆ I`.
//!
//! Ideal comparisons for `φ` happen in `S`: the image ring `R` is a polynomial
//! subring over which `S` is free, so ideals of `R` are determined by their
//! extensions to `S`, and `φ(f)` extends to `ψ(f)`.

mod enumerate;
mod irreducible;
mod squarefree;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{
    extract_basis_indices, ideal_equal, minimal_generators, rank, Echelon, Field, GradedIdeal,
    GradedSubstitution, LinearSpan, Monomial, Polynomial, Ring, Scalar,
};
use crate::monideal::MonomialIdeal;
use crate::simplicial::SimplicialComplex;
use crate::varset::{subsets_by_size, VarSet};

pub use enumerate::{
    enumerate_idempotents, enumerate_retracts, naive_idempotents, retract_guard, MAX_IDEMPOTENT_SCAN,
};
pub use irreducible::{find_base_irreducible, find_base_power};
pub use squarefree::{decomposition_images_check, find_base_squarefree, construct_from_primes};

/// Largest support scanned by [`brute_force_base`].
pub const MAX_BRUTE_SUPPORT: usize = 20;

/// Ambient ring `S`, monomial ideal `I ⊆ (S_+)^2`, and the endomorphism `ψ`.
#[derive(Debug, Clone)]
pub struct RetractDatum {
    ring: Arc<Ring>,
    ideal: MonomialIdeal,
    psi: GradedSubstitution,
}

impl RetractDatum {
    pub fn new(ring: &Arc<Ring>, ideal: MonomialIdeal, psi: GradedSubstitution) -> Result<Self> {
        if ideal.vars() != ring.vars() {
            return Err(Error::RingMismatch("ideal and ring variables differ".into()));
        }
        if psi.source().as_ref() != ring.as_ref() || psi.target().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch("psi must be an endomorphism of the ring".into()));
        }
        if let Some(g) = ideal.generators().iter().find(|g| g.degree() < 2) {
            return Err(Error::LowDegreeGenerator(g.format(ring.vars())));
        }
        Ok(RetractDatum {
            ring: ring.clone(),
            ideal,
            psi,
        })
    }

    /// `E[j][i]` is the coefficient of `x_j` in `ψ(x_i)`.
    pub fn from_matrix(ring: &Arc<Ring>, ideal: MonomialIdeal, matrix: &[Vec<Scalar>]) -> Result<Self> {
        let psi = GradedSubstitution::from_matrix(ring, ring, matrix)?;
        Self::new(ring, ideal, psi)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn psi(&self) -> &GradedSubstitution {
        &self.psi
    }

    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        self.psi.matrix()
    }

    pub(crate) fn apply(&self, f: &Polynomial) -> Polynomial {
        self.psi.apply(f).expect("datum polynomials live in the ambient ring")
    }

    pub(crate) fn image(&self, i: usize) -> &Polynomial {
        self.psi.image(i)
    }

    pub(crate) fn images_of(&self, w: VarSet) -> Vec<Polynomial> {
        w.iter().map(|i| self.image(i).clone()).collect()
    }

    pub(crate) fn monomial_poly(&self, m: &Monomial) -> Polynomial {
        Polynomial::monomial(&self.ring, m.clone())
    }

    /// `ψ(g)` for the minimal generators `g` of `I`.
    pub(crate) fn ideal_images(&self) -> Vec<Polynomial> {
        self.ideal
            .generators()
            .iter()
            .map(|g| self.apply(&self.monomial_poly(g)))
            .collect()
    }

    pub fn names(&self, w: VarSet) -> Vec<String> {
        w.names(self.ring.vars())
    }

    pub fn varset<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet> {
        VarSet::from_names(self.ring.vars(), names)
    }

    /// `dim R_1`, the rank of the coefficient matrix.
    pub fn image_rank(&self) -> usize {
        rank(self.psi.images()).expect("images are linear")
    }

    pub fn from_json(j: &RetractJson) -> Result<Self> {
        let field: Field = j.field.parse()?;
        let ring = Ring::new(&j.ring, field)?;
        let ideal = MonomialIdeal::parse(&j.ring, &j.ideal)?;
        let psi = match (&j.psi, &j.theta, &j.phi) {
            (Some(rows), None, None) => {
                let matrix = rows
                    .iter()
                    .map(|row| row.iter().map(|c| field.parse_scalar(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                GradedSubstitution::from_matrix(&ring, &ring, &matrix)?
            }
            (None, Some(theta), Some(phi)) => {
                let r = Ring::new(&theta.ring, field)?;
                let parse_all = |ring: &Arc<Ring>, ss: &[String]| {
                    ss.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()
                };
                let theta_map = GradedSubstitution::new(&r, &ring, parse_all(&ring, &theta.images)?)?;
                let phi_map = GradedSubstitution::new(&ring, &r, parse_all(&r, &phi.images)?)?;
                if phi_map.compose(&theta_map)? != GradedSubstitution::identity(&r) {
                    return Err(Error::NotARetract("phi∘theta is not the identity".into()));
                }
                theta_map.compose(&phi_map)?
            }
            _ => {
                return Err(Error::Parse(
                    "retract needs either \"psi\" or both \"theta\" and \"phi\"".into(),
                ))
            }
        };
        Self::new(&ring, ideal, psi)
    }

    pub fn to_json(&self) -> RetractJson {
        RetractJson {
            field: self.field().to_string(),
            ring: self.ring.vars().to_vec(),
            ideal: self.ideal.generator_strings(),
            psi: Some(
                self.matrix()
                    .iter()
                    .map(|row| row.iter().map(|c| c.to_string()).collect())
                    .collect(),
            ),
            theta: None,
            phi: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractJson {
    pub field: String,
    pub ring: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiJson>,
}

/// Inclusion `R -> S`: a ring for `R` and the images of its variables in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub ring: Vec<String>,
    pub images: Vec<String>,
}

/// Retraction `S -> R`: images of the variables of `S` in `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiJson {
    pub images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractReport {
    pub idempotent: bool,
    pub compatible: bool,
    /// Minimal generators `g` with `ψ(g) ∉ I`.
    pub failing: Vec<String>,
}

impl RetractReport {
    pub fn holds(&self) -> bool {
        self.idempotent && self.compatible
    }
}

pub fn verify_retract(datum: &RetractDatum) -> RetractReport {
    let failing = datum
        .ideal
        .generators()
        .iter()
        .zip(datum.ideal_images())
        .filter(|(_, img)| !datum.ideal.contains_poly(img).expect("same ring"))
        .map(|(g, _)| g.format(datum.ring.vars()))
        .collect::<Vec<_>>();
    RetractReport {
        idempotent: datum.psi.is_idempotent(),
        compatible: failing.is_empty(),
        failing,
    }
}

pub(crate) fn require_retract(datum: &RetractDatum) -> Result<()> {
    let report = verify_retract(datum);
    if !report.idempotent {
        return Err(Error::NotARetract("psi is not idempotent".into()));
    }
    if !report.compatible {
        return Err(Error::NotARetract(format!(
            "psi(g) lies outside I for {}",
            report.failing.join(", ")
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum CoordKey {
    Tag(usize),
    Coord(Monomial),
}

/// Coordinates of `v` in the (independent) family `basis`, if it lies in
/// their span.
pub(crate) fn coordinates(field: Field, basis: &[Polynomial], v: &Polynomial) -> Option<Vec<Scalar>> {
    let mut ech: Echelon<CoordKey> = Echelon::new(field);
    for (b, u) in basis.iter().enumerate() {
        let mut row: crate::exactalg::SparseVec<CoordKey> = u
            .terms()
            .iter()
            .map(|(m, c)| (CoordKey::Coord(m.clone()), c.clone()))
            .collect();
        row.insert(CoordKey::Tag(b), field.one());
        ech.insert(row);
    }
    let v: crate::exactalg::SparseVec<CoordKey> = v
        .terms()
        .iter()
        .map(|(m, c)| (CoordKey::Coord(m.clone()), c.clone()))
        .collect();
    let rem = ech.reduce(v);
    if rem.keys().any(|k| matches!(k, CoordKey::Coord(_))) {
        return None;
    }
    let mut out = vec![field.zero(); basis.len()];
    for (k, c) in rem {
        if let CoordKey::Tag(b) = k {
            out[b] = -&c;
        }
    }
    Some(out)
}

/// `R`, the retraction `φ: S -> R`, and the minimal generators of `J = φ(I)`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub basis: Vec<usize>,
    pub ring: Arc<Ring>,
    pub phi: GradedSubstitution,
    pub relations: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ring: Vec<String>,
    pub phi: Vec<String>,
    pub relations: Vec<String>,
    pub summary: String,
}

fn quotient_summary(vars: &[String], relations: &[String]) -> String {
    let ring = format!("k[{}]", vars.join(","));
    if relations.is_empty() {
        ring
    } else {
        format!("{ring}/({})", relations.join(", "))
    }
}

impl Presentation {
    pub fn summary(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|p| p.to_string()).collect();
        quotient_summary(self.ring.vars(), &rels)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            ring: self.ring.vars().to_vec(),
            phi: self.phi.images().iter().map(|p| p.to_string()).collect(),
            relations: self.relations.iter().map(|p| p.to_string()).collect(),
            summary: self.summary(),
        }
    }
}

/// Coordinates of `R` are the `ψ(x_b)` for the greedy basis indices `b`;
/// the variables of `R` reuse the names `x_b`.
pub fn presentation(datum: &RetractDatum) -> Result<Presentation> {
    require_retract(datum)?;
    let images = datum.psi.images();
    let basis = extract_basis_indices(images)?;
    let r = datum.ring.subring(&basis);
    let basis_vecs: Vec<Polynomial> = basis.iter().map(|&b| images[b].clone()).collect();
    let phi_images = images
        .iter()
        .map(|img| {
            let c = coordinates(datum.field(), &basis_vecs, img)
                .ok_or_else(|| Error::AlgorithmContract("image outside its own span".into()))?;
            Ok(Polynomial::linear(&r, &c))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = GradedSubstitution::new(&datum.ring, &r, phi_images)?;
    let j_images = datum
        .ideal
        .generators()
        .iter()
        .map(|g| phi.apply(&datum.monomial_poly(g)))
        .collect::<Result<Vec<_>>>()?;
    let relations = minimal_generators(&r, &j_images)?;
    if let Some(bad) = relations.iter().find(|p| p.degree().unwrap_or(2) < 2) {
        return Err(Error::AlgorithmContract(format!("J has a linear element {bad}")));
    }
    Ok(Presentation {
        basis,
        ring: r,
        phi,
        relations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWitness {
    pub generator: String,
    pub image: String,
    pub in_base_ideal: bool,
}

/// Evidence for both base conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCertificate {
    pub base: Vec<String>,
    pub independent: bool,
    pub rank: usize,
    pub generators: Vec<GeneratorWitness>,
    /// Members of the base outside `supp(I)`, accepted but noted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outside_support: Vec<String>,
    pub valid: bool,
}

fn images_independent(datum: &RetractDatum, w: VarSet) -> (bool, usize) {
    let r = rank(&datum.images_of(w)).expect("images are linear");
    (r == w.len(), r)
}

/// `ψ(I) ⊆ ψ(I_W S)`, generator by generator; the reverse inclusion is
/// automatic. Stops at the first failure unless `all` is set.
fn image_containment(datum: &RetractDatum, w: VarSet, all: bool) -> Result<Vec<(usize, bool)>> {
    let restricted: Vec<Polynomial> = datum
        .ideal
        .generators()
        .iter()
        .filter(|g| g.support().is_subset(w))
        .map(|g| datum.apply(&datum.monomial_poly(g)))
        .collect();
    let mut ideal = GradedIdeal::new(&datum.ring, &restricted)?;
    let mut out = Vec::new();
    for (k, g) in datum.ideal.generators().iter().enumerate() {
        let ok = g.support().is_subset(w) || ideal.contains(&datum.apply(&datum.monomial_poly(g)))?;
        out.push((k, ok));
        if !ok && !all {
            break;
        }
    }
    Ok(out)
}

pub fn verify_base(datum: &RetractDatum, w: VarSet) -> Result<BaseCertificate> {
    if !w.is_subset(VarSet::full(datum.nvars())) {
        return Err(Error::RingMismatch("base has unknown variables".into()));
    }
    let (independent, r) = images_independent(datum, w);
    let checks = image_containment(datum, w, true)?;
    let vars = datum.ring.vars();
    let generators: Vec<GeneratorWitness> = checks
        .iter()
        .map(|&(k, ok)| {
            let g = &datum.ideal.generators()[k];
            GeneratorWitness {
                generator: g.format(vars),
                image: datum.apply(&datum.monomial_poly(g)).to_string(),
                in_base_ideal: ok,
            }
        })
        .collect();
    let valid = independent && generators.iter().all(|g| g.in_base_ideal);
    Ok(BaseCertificate {
        base: datum.names(w),
        independent,
        rank: r,
        generators,
        outside_support: datum.names(w.difference(datum.ideal.support())),
        valid,
    })
}

pub(crate) fn is_base(datum: &RetractDatum, w: VarSet) -> Result<bool> {
    if !images_independent(datum, w).0 {
        return Ok(false);
    }
    Ok(image_containment(datum, w, false)?.iter().all(|&(_, ok)| ok))
}

/// First subset of `supp(I)`, by size then lexicographically, that is a base.
pub fn brute_force_base(datum: &RetractDatum) -> Result<Option<VarSet>> {
    let supp = datum.ideal.support();
    if supp.len() > MAX_BRUTE_SUPPORT {
        return Err(Error::guard("support size", MAX_BRUTE_SUPPORT as u128, supp.len() as u128));
    }
    for w in subsets_by_size(supp) {
        if is_base(datum, w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Which algorithm produced a base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseMethod {
    ZeroIdeal,
    Squarefree,
    Irreducible,
    LinearPower,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundBase {
    pub base: VarSet,
    pub method: BaseMethod,
    /// Set when the constructive algorithm gave up and the brute-force
    /// search supplied the base.
    pub fallback: bool,
}

/// Dispatches on the shape of `I`: squarefree, pure powers, a power of a
/// linear ideal, and otherwise exhaustive search.
pub fn find_base(datum: &RetractDatum) -> Result<FoundBase> {
    let ideal = &datum.ideal;
    if ideal.is_zero() {
        require_retract(datum)?;
        return Ok(FoundBase {
            base: VarSet::EMPTY,
            method: BaseMethod::ZeroIdeal,
            fallback: false,
        });
    }
    if ideal.is_squarefree() {
        return find_base_squarefree(datum);
    }
    if ideal.pure_powers().is_some() {
        return find_base_irreducible(datum);
    }
    if ideal.linear_power().is_some() {
        return Ok(FoundBase {
            base: find_base_power(datum)?,
            method: BaseMethod::LinearPower,
            fallback: false,
        });
    }
    require_retract(datum)?;
    let base = brute_force_base(datum)?
        .ok_or_else(|| Error::InfeasibleBasis("no subset of supp(I) is a base".into()))?;
    Ok(FoundBase {
        base,
        method: BaseMethod::BruteForce,
        fallback: false,
    })
}

pub(crate) fn certify(datum: &RetractDatum, w: VarSet, what: &str) -> Result<VarSet> {
    if !is_base(datum, w)? {
        return Err(Error::AlgorithmContract(format!(
            "{what} returned {{{}}}, which is not a base",
            datum.names(w).join(",")
        )));
    }
    Ok(w)
}

/// Identification `R/J ≅ S_W'/I_W'` for a base `W` extended to `W'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub base: Vec<String>,
    /// `W` enlarged so that its images span `R_1`.
    pub extended_base: Vec<String>,
    pub ring: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<crate::simplicial::ComplexJson>,
    pub summary: String,
    /// `x_w -> ψ(x_w)` maps `S_W'` isomorphically onto `R` and carries
    /// `I_W'` onto `J`.
    pub isomorphism: bool,
}

pub fn classification_report(datum: &RetractDatum, w: VarSet) -> Result<Classification> {
    if !is_base(datum, w)? {
        return Err(Error::Precondition(format!(
            "{{{}}} is not a base",
            datum.names(w).join(",")
        )));
    }
    let mut span = LinearSpan::from_vectors(datum.field(), &datum.images_of(w))?;
    let mut extended = w;
    for i in 0..datum.nvars() {
        if !extended.contains(i) && span.insert(datum.image(i)) {
            extended.insert(i);
        }
    }
    let spans_r = span.rank() == datum.image_rank() && span.rank() == extended.len();
    let target = datum.ideal.restrict(extended)?;
    let kappa_images: Vec<Polynomial> = target
        .generators()
        .iter()
        .map(|g| {
            let m = g.embed(datum.nvars(), &extended.to_vec());
            datum.apply(&datum.monomial_poly(&m))
        })
        .collect();
    let ideal_match = ideal_equal(&datum.ideal_images(), &kappa_images)?;
    let complex = if target.is_squarefree() && !target.is_unit() {
        Some(SimplicialComplex::complex_of_ideal(&target)?.to_json())
    } else {
        None
    };
    let ideal = target.generator_strings();
    Ok(Classification {
        base: datum.names(w),
        extended_base: datum.names(extended),
        ring: target.vars().to_vec(),
        summary: quotient_summary(target.vars(), &ideal),
        ideal,
        complex,
        isomorphism: spans_r && ideal_match,
    })
}
