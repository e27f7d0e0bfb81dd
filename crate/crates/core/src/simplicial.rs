//! Simplicial complexes and their Stanley-Reisner ideals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Monomial;
use crate::monideal::{minimal_transversals, MonomialIdeal};
use crate::varset::VarSet;

/// Largest effective vertex set for the minimal non-face scan.
pub const MAX_SCAN_VERTICES: usize = 20;
/// Largest effective vertex set for the isomorphism search.
pub const MAX_ISO_VERTICES: usize = 9;

/// A complex given by its facets over a labelled vertex set. Labels not
/// covered by any facet are phantom vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<VarSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phantom: Vec<String>,
}

fn maximal_sets(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    sets.dedup();
    let mut out: Vec<VarSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|f| s.is_subset(*f)) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| s.size_lex_key());
    out
}

impl SimplicialComplex {
    /// Non-maximal faces in `facets` are discarded.
    pub fn new<S: AsRef<str>>(vertices: &[S], facets: Vec<VarSet>) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        crate::exactalg::Ring::new(&vertices, crate::exactalg::Field::Rationals)?;
        let all = VarSet::full(vertices.len());
        if let Some(bad) = facets.iter().find(|f| !f.is_subset(all)) {
            return Err(Error::InvalidComplex(vec![format!(
                "facet {:?} uses an unknown vertex",
                bad.to_vec()
            )]));
        }
        Ok(SimplicialComplex {
            vertices,
            facets: maximal_sets(facets),
        })
    }

    pub fn from_names<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], facets: &[Vec<T>]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let sets = facets
            .iter()
            .map(|f| {
                VarSet::from_names(&vs, f)
                    .map_err(|e| Error::InvalidComplex(vec![e.to_string()]))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&vs, sets)
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        Self::from_names(&j.vertices, &j.facets)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            facets: self.facets.iter().map(|f| f.names(&self.vertices)).collect(),
            phantom: self.phantom_vertices(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[VarSet] {
        &self.facets
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.names(&self.vertices)).collect()
    }

    /// Vertices `i` with `{i}` a face.
    pub fn effective_vertices(&self) -> VarSet {
        self.facets.iter().fold(VarSet::EMPTY, |a, f| a.union(*f))
    }

    pub fn phantom_vertices(&self) -> Vec<String> {
        VarSet::full(self.vertices.len())
            .difference(self.effective_vertices())
            .names(&self.vertices)
    }

    pub fn is_face(&self, s: VarSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Minimal non-faces inside the effective vertex set, by an
    /// ascending-size scan that skips supersets of non-faces already found.
    pub fn minimal_nonfaces(&self) -> Result<Vec<VarSet>> {
        let v = self.effective_vertices();
        if v.len() > MAX_SCAN_VERTICES {
            return Err(Error::guard(
                "effective vertices",
                MAX_SCAN_VERTICES as u128,
                v.len() as u128,
            ));
        }
        let mut found: Vec<VarSet> = Vec::new();
        for s in crate::varset::subsets_by_size(v) {
            if found.iter().any(|m| m.is_subset(s)) {
                continue;
            }
            if !self.is_face(s) {
                found.push(s);
            }
        }
        Ok(found)
    }

    /// `I_Δ` over the effective vertices.
    pub fn stanley_reisner_ideal(&self) -> Result<MonomialIdeal> {
        let v = self.effective_vertices();
        let keep = v.to_vec();
        let names = v.names(&self.vertices);
        let n = keep.len();
        let gens = self
            .minimal_nonfaces()?
            .into_iter()
            .map(|s| {
                let mut e = vec![0u32; n];
                for (k, &i) in keep.iter().enumerate() {
                    if s.contains(i) {
                        e[k] = 1;
                    }
                }
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::new(&names, gens)
    }

    /// The complex whose faces are the supports avoiding every generator
    /// support of a squarefree ideal.
    pub fn complex_of_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let all = VarSet::full(ideal.nvars());
        let edges: Vec<VarSet> = ideal.generators().iter().map(Monomial::support).collect();
        let facets = minimal_transversals(&edges)
            .into_iter()
            .map(|t| all.difference(t))
            .collect();
        Self::new(ideal.vars(), facets)
    }

    /// `Δ_W`, on the vertex labels of `W` in their original order.
    pub fn restriction(&self, w: VarSet) -> Result<Self> {
        if !w.is_subset(VarSet::full(self.vertices.len())) {
            return Err(Error::InvalidComplex(vec!["restriction set has unknown vertices".into()]));
        }
        let keep = w.to_vec();
        let relabel = |s: VarSet| VarSet::from_indices(keep.iter().enumerate().filter(|(_, &i)| s.contains(i)).map(|(k, _)| k));
        let facets = self.facets.iter().map(|f| relabel(f.intersection(w))).collect();
        Self::new(&w.names(&self.vertices), facets)
    }

    pub fn restriction_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let w = VarSet::from_names(&self.vertices, names)
            .map_err(|e| Error::InvalidComplex(vec![e.to_string()]))?;
        self.restriction(w)
    }

    /// Searches for a bijection of effective vertices carrying the facets of
    /// `self` onto those of `other`. Returns the witness as label pairs.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> Result<Option<Vec<(String, String)>>> {
        let va = self.effective_vertices().to_vec();
        let vb = other.effective_vertices().to_vec();
        for n in [va.len(), vb.len()] {
            if n > MAX_ISO_VERTICES {
                return Err(Error::guard("effective vertices", MAX_ISO_VERTICES as u128, n as u128));
            }
        }
        if va.len() != vb.len() || self.facets.len() != other.facets.len() {
            return Ok(None);
        }
        // Vertex invariant: sorted sizes of the facets containing it.
        let profile = |c: &SimplicialComplex, v: usize| {
            let mut s: Vec<usize> = c.facets.iter().filter(|f| f.contains(v)).map(|f| f.len()).collect();
            s.sort_unstable();
            s
        };
        let pa: Vec<Vec<usize>> = va.iter().map(|&v| profile(self, v)).collect();
        let pb: Vec<Vec<usize>> = vb.iter().map(|&v| profile(other, v)).collect();
        let mut target: Vec<VarSet> = other.facets.clone();
        target.sort_by_key(|s| s.bits());
        let mut assign = vec![usize::MAX; va.len()];
        let mut used = vec![false; vb.len()];
        let ok = search(0, &va, &vb, &pa, &pb, &mut assign, &mut used, &self.facets, &target);
        Ok(ok.then(|| {
            va.iter()
                .zip(&assign)
                .map(|(&a, &b)| (self.vertices[a].clone(), other.vertices[vb[b]].clone()))
                .collect()
        }))
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    k: usize,
    va: &[usize],
    vb: &[usize],
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    facets: &[VarSet],
    target: &[VarSet],
) -> bool {
    if k == va.len() {
        let mut mapped: Vec<VarSet> = facets
            .iter()
            .map(|f| {
                VarSet::from_indices(
                    va.iter()
                        .enumerate()
                        .filter(|(_, &v)| f.contains(v))
                        .map(|(i, _)| vb[assign[i]]),
                )
            })
            .collect();
        mapped.sort_by_key(|s| s.bits());
        return mapped == target;
    }
    for j in 0..vb.len() {
        if used[j] || pa[k] != pb[j] {
            continue;
        }
        used[j] = true;
        assign[k] = j;
        if search(k + 1, va, vb, pa, pb, assign, used, facets, target) {
            return true;
        }
        used[j] = false;
    }
    false
}
