//! Graded pieces of homogeneous ideals and the degree-bounded membership and
//! equality tests built on them.
//!
//! For an ideal generated in degrees `<= D`, membership of a homogeneous `f`
//! only depends on the degree-`deg f` piece, and two such ideals agree iff
//! each contains the other's generators.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::linalg::Echelon;
use crate::exactalg::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::exactalg::poly::{check_same_ring, Polynomial, Ring};

pub const DEFAULT_MAX_MONOMIALS: u128 = 2_000_000;
pub const MAX_MONOMIALS_ENV: &str = "MONORETRACT_MAX_MONOMIALS";

/// Upper bound on the monomial basis size of a materialized graded piece.
pub fn monomial_guard() -> u128 {
    std::env::var(MAX_MONOMIALS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_MONOMIALS)
}

pub(crate) fn check_piece_size(nvars: usize, d: u32) -> Result<()> {
    let count = count_monomials(nvars, d);
    let limit = monomial_guard();
    if count > limit {
        return Err(Error::guard(format!("monomials of degree {d}"), limit, count));
    }
    Ok(())
}

/// A homogeneous ideal with memoized graded pieces.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    pieces: HashMap<u32, Echelon<Monomial>>,
}

impl GradedIdeal {
    /// Zero generators are dropped; inhomogeneous ones are an error.
    pub fn new(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Self> {
        let mut ideal = GradedIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
            pieces: HashMap::new(),
        };
        for g in gens {
            ideal.add_generator(g.clone())?;
        }
        Ok(ideal)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Polynomial::degree).max()
    }

    pub fn add_generator(&mut self, g: Polynomial) -> Result<()> {
        check_same_ring(g.ring(), &self.ring)?;
        if g.is_zero() {
            return Ok(());
        }
        let e = g
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(g.to_string()))?;
        let n = self.ring.nvars();
        for (&d, piece) in self.pieces.iter_mut() {
            if d >= e {
                for m in monomials_of_degree(n, d - e) {
                    piece.insert(g.mul_monomial(&m).into_terms());
                }
            }
        }
        self.gens.push(g);
        Ok(())
    }

    /// Echelon form of the degree-`d` piece.
    pub fn piece(&mut self, d: u32) -> Result<&Echelon<Monomial>> {
        if !self.pieces.contains_key(&d) {
            check_piece_size(self.ring.nvars(), d)?;
            let n = self.ring.nvars();
            let mut ech = Echelon::new(self.ring.field());
            for g in &self.gens {
                let e = g.homogeneous_degree().expect("checked on insert");
                if e > d {
                    continue;
                }
                for m in monomials_of_degree(n, d - e) {
                    ech.insert(g.mul_monomial(&m).into_terms());
                }
            }
            self.pieces.insert(d, ech);
        }
        Ok(&self.pieces[&d])
    }

    pub fn contains(&mut self, f: &Polynomial) -> Result<bool> {
        check_same_ring(f.ring(), &self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(f.to_string()))?;
        Ok(self.piece(d)?.contains(f.terms()))
    }

    pub fn contains_all(&mut self, fs: &[Polynomial]) -> Result<bool> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced basis of the degree-`d` component of the ideal generated by `gens`.
pub fn graded_piece(ring: &Arc<Ring>, gens: &[Polynomial], d: u32) -> Result<Vec<Polynomial>> {
    let mut ideal = GradedIdeal::new(ring, gens)?;
    let piece = ideal.piece(d)?;
    Ok(piece
        .reduced_basis()
        .into_iter()
        .map(|t| Polynomial::from_terms(ring, t))
        .collect())
}

pub fn ideal_contains(f: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    GradedIdeal::new(f.ring(), gens)?.contains(f)
}

fn common_ring(a: &[Polynomial], b: &[Polynomial]) -> Option<Arc<Ring>> {
    a.iter().chain(b).next().map(|p| p.ring().clone())
}

pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    let Some(ring) = common_ring(a, b) else {
        return Ok(true);
    };
    let mut ia = GradedIdeal::new(&ring, a)?;
    let mut ib = GradedIdeal::new(&ring, b)?;
    Ok(ib.contains_all(a)? && ia.contains_all(b)?)
}

/// Drops generators lying in the ideal generated by the ones kept before
/// them, processing in ascending degree and then graded-lex order of the
/// leading term. Kept generators are scaled to leading coefficient 1.
pub fn minimal_generators(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut sorted: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    for g in &sorted {
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
    }
    sorted.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.leading().map(|t| t.0).cmp(&a.leading().map(|t| t.0)))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    let mut kept = GradedIdeal::new(ring, &[])?;
    let mut out = Vec::new();
    for g in sorted {
        if !kept.contains(&g)? {
            kept.add_generator(g.clone())?;
            out.push(g);
        }
    }
    Ok(out)
}
