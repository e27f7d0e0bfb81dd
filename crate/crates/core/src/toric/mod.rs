//! Monoidal complexes on fans, their toric face rings, and the restricted
//! subfans classifying multigraded retracts.
//!
//! A complex lists generator symbols, optionally with integer vectors, and
//! cones given by a name, the generators of their monoid and their faces.
//! Without vectors only the poset and generator sets are checked.

mod geometry;
mod ideal;
mod subfan;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::varset::VarSet;

pub use geometry::{cone_hrep, HRep, MAX_FM_ROWS};
pub use ideal::{defining_ideal, DefiningIdeal, DefiningIdealJson};
pub use subfan::{
    classify_retracts, enumerate_restricted_subfans, is_restricted_by_generators, is_restricted_subfan, RetractClass,
    RetractClassJson, MAX_SUBFAN_CONES,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub name: String,
    pub gens: VarSet,
    pub faces: Vec<usize>,
    pub rays: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone)]
pub struct MonoidalComplex {
    dim: Option<usize>,
    names: Vec<String>,
    vectors: Option<Vec<Vec<i64>>>,
    cones: Vec<Cone>,
    /// `le[d][c]`: cone `d` is a face of cone `c` (reflexive, transitive).
    le: Vec<Vec<bool>>,
    hreps: Option<Vec<HRep>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub name: String,
    pub gens: Vec<String>,
    #[serde(default)]
    pub faces: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
}

/// Generators as `{"name": [coords]}` or, without geometry, `["name", ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorsJson {
    Names(Vec<String>),
    Vectors(Map<String, Value>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub generators: GeneratorsJson,
    pub cones: Vec<ConeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mode: String,
    pub valid: bool,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn closure(cones: &[Cone]) -> Vec<Vec<bool>> {
    let n = cones.len();
    let mut le = vec![vec![false; n]; n];
    for c in 0..n {
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if !le[x][c] {
                le[x][c] = true;
                stack.extend(cones[x].faces.iter().copied());
            }
        }
    }
    le
}

impl MonoidalComplex {
    pub fn new(
        dim: Option<usize>,
        names: Vec<String>,
        vectors: Option<Vec<Vec<i64>>>,
        cones: Vec<Cone>,
    ) -> Result<Self> {
        crate::exactalg::Ring::new(&names, crate::exactalg::Field::Rationals)?;
        let dim = match (&vectors, dim) {
            (Some(vs), d) => {
                let d = d.or_else(|| vs.first().map(Vec::len)).unwrap_or(0);
                if let Some(v) = vs.iter().find(|v| v.len() != d) {
                    return Err(Error::InvalidComplex(vec![format!("vector {v:?} is not in dimension {d}")]));
                }
                Some(d)
            }
            (None, d) => d,
        };
        let mut seen = std::collections::HashSet::new();
        if let Some(c) = cones.iter().find(|c| !seen.insert(c.name.clone())) {
            return Err(Error::InvalidComplex(vec![format!("duplicate cone '{}'", c.name)]));
        }
        let le = closure(&cones);
        let hreps = match (&vectors, dim) {
            (Some(vs), Some(d)) => Some(
                cones
                    .iter()
                    .map(|c| {
                        let spanning = c
                            .rays
                            .clone()
                            .unwrap_or_else(|| c.gens.iter().map(|i| vs[i].clone()).collect());
                        cone_hrep(d, &spanning)
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => None,
        };
        Ok(MonoidalComplex {
            dim,
            names,
            vectors,
            cones,
            le,
            hreps,
        })
    }

    pub fn from_json(j: &FanJson) -> Result<Self> {
        let (names, vectors) = match &j.generators {
            GeneratorsJson::Names(ns) => (ns.clone(), None),
            GeneratorsJson::Vectors(map) => {
                let mut names = Vec::new();
                let mut vecs = Vec::new();
                for (k, v) in map {
                    let coords: Vec<i64> = serde_json::from_value(v.clone()).map_err(|_| {
                        Error::Parse(format!("generator '{k}' must be a list of integers"))
                    })?;
                    names.push(k.clone());
                    vecs.push(coords);
                }
                (names, Some(vecs))
            }
        };
        let cone_index = |n: &str| {
            j.cones
                .iter()
                .position(|c| c.name == n)
                .ok_or_else(|| Error::InvalidComplex(vec![format!("unknown cone '{n}'")]))
        };
        let cones = j
            .cones
            .iter()
            .map(|c| {
                let gens = VarSet::from_names(&names, &c.gens)
                    .map_err(|e| Error::InvalidComplex(vec![format!("cone '{}': {e}", c.name)]))?;
                let faces = c.faces.iter().map(|f| cone_index(f)).collect::<Result<Vec<_>>>()?;
                Ok(Cone {
                    name: c.name.clone(),
                    gens,
                    faces,
                    rays: c.rays.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.dim, names, vectors, cones)
    }

    pub fn to_json(&self) -> FanJson {
        let generators = match &self.vectors {
            None => GeneratorsJson::Names(self.names.clone()),
            Some(vs) => GeneratorsJson::Vectors(
                self.names
                    .iter()
                    .zip(vs)
                    .map(|(n, v)| (n.clone(), serde_json::json!(v)))
                    .collect(),
            ),
        };
        FanJson {
            dim: self.dim,
            generators,
            cones: self
                .cones
                .iter()
                .map(|c| ConeJson {
                    name: c.name.clone(),
                    gens: c.gens.names(&self.names),
                    faces: c.faces.iter().map(|&f| self.cones[f].name.clone()).collect(),
                    rays: c.rays.clone(),
                })
                .collect(),
        }
    }

    pub fn is_geometric(&self) -> bool {
        self.vectors.is_some()
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn vectors(&self) -> Option<&[Vec<i64>]> {
        self.vectors.as_deref()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone_index(&self, name: &str) -> Option<usize> {
        self.cones.iter().position(|c| c.name == name)
    }

    pub fn cone_set<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = names
            .iter()
            .map(|n| {
                self.cone_index(n.as_ref())
                    .ok_or_else(|| Error::NotASubfan(format!("unknown cone '{}'", n.as_ref())))
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `d ≤ c` in the face order.
    pub fn le(&self, d: usize, c: usize) -> bool {
        self.le[d][c]
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&c| (0..self.cones.len()).all(|e| e == c || !self.le[c][e]))
            .collect()
    }

    pub fn cone_membership(&self, v: &[BigRational], cone: &str) -> Result<bool> {
        let c = self
            .cone_index(cone)
            .ok_or_else(|| Error::InvalidComplex(vec![format!("unknown cone '{cone}'")]))?;
        let hreps = self.hreps.as_ref().ok_or(Error::NoGeometry)?;
        hreps[c].contains(v)
    }

    fn vector_in(&self, i: usize, c: usize) -> bool {
        match (&self.vectors, &self.hreps) {
            (Some(vs), Some(h)) => h[c].contains_int(&vs[i]).unwrap_or(false),
            _ => false,
        }
    }

    /// Generators `i` with `a_i ∈ M_C`: listed for a face of `C`, or (with
    /// geometry) lying in `C`.
    pub fn cone_support(&self, c: usize) -> VarSet {
        let mut s = (0..self.cones.len())
            .filter(|&d| self.le[d][c])
            .fold(VarSet::EMPTY, |acc, d| acc.union(self.cones[d].gens));
        for i in 0..self.names.len() {
            if self.vector_in(i, c) {
                s.insert(i);
            }
        }
        s
    }

    /// Largest common face of `c` and `d`, if the common faces have one.
    pub fn meet(&self, c: usize, d: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.cones.len()).filter(|&e| self.le[e][c] && self.le[e][d]).collect();
        lower
            .iter()
            .copied()
            .find(|&e| lower.iter().all(|&f| self.le[f][e]))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let mut notes = Vec::new();
        let n = self.cones.len();
        let name = |c: usize| self.cones[c].name.as_str();
        for c in 0..n {
            for d in (c + 1)..n {
                if self.le[c][d] && self.le[d][c] {
                    failures.push(format!("face relation has a cycle through '{}' and '{}'", name(c), name(d)));
                }
            }
        }
        for c in 0..n {
            for d in 0..n {
                if c != d && self.le[d][c] && !self.cones[d].gens.is_subset(self.cones[c].gens) {
                    failures.push(format!("generators of '{}' are not among those of '{}'", name(d), name(c)));
                }
            }
        }
        for c in 0..n {
            for d in (c + 1)..n {
                let shared = self.cones[c].gens.intersection(self.cones[d].gens);
                let lower_exists = (0..n).any(|e| self.le[e][c] && self.le[e][d]);
                match self.meet(c, d) {
                    Some(e) if self.cones[e].gens != shared => failures.push(format!(
                        "'{}' and '{}' share generators other than those of their meet '{}'",
                        name(c),
                        name(d),
                        name(e)
                    )),
                    None if lower_exists => failures.push(format!(
                        "'{}' and '{}' have no largest common face",
                        name(c),
                        name(d)
                    )),
                    None if !shared.is_empty() => failures.push(format!(
                        "'{}' and '{}' share generators but no face",
                        name(c),
                        name(d)
                    )),
                    _ => {}
                }
            }
        }
        let covered = (0..n).fold(VarSet::EMPTY, |acc, c| acc.union(self.cones[c].gens));
        for i in VarSet::full(self.names.len()).difference(covered).iter() {
            failures.push(format!("generator '{}' belongs to no cone", self.names[i]));
        }
        match (&self.vectors, &self.hreps, self.dim) {
            (Some(vs), Some(hreps), Some(dim)) => {
                for c in 0..n {
                    let cone = &self.cones[c];
                    if !hreps[c].is_pointed() {
                        failures.push(format!("cone '{}' is not pointed", name(c)));
                    }
                    for i in cone.gens.iter() {
                        if !self.vector_in(i, c) {
                            failures.push(format!("generator '{}' lies outside cone '{}'", self.names[i], name(c)));
                        }
                    }
                    if let Some(rays) = &cone.rays {
                        let by_gens: Vec<Vec<i64>> = cone.gens.iter().map(|i| vs[i].clone()).collect();
                        match cone_hrep(dim, &by_gens) {
                            Ok(h) => {
                                if rays.iter().any(|r| !h.contains_int(r).unwrap_or(false)) {
                                    failures.push(format!("generators of '{}' do not span the cone", name(c)));
                                }
                            }
                            Err(e) => failures.push(e.to_string()),
                        }
                    }
                    for d in 0..n {
                        if d == c || !self.le[d][c] {
                            continue;
                        }
                        let in_d = VarSet::from_indices(cone.gens.iter().filter(|&i| self.vector_in(i, d)));
                        if in_d != self.cones[d].gens {
                            failures.push(format!(
                                "generators of '{}' inside face '{}' differ from that face's generators",
                                name(c),
                                name(d)
                            ));
                        }
                        if !self.is_geometric_face(d, c) {
                            failures.push(format!("'{}' is not a face of '{}'", name(d), name(c)));
                        }
                    }
                }
            }
            _ => notes.push(
                "combinatorial mode: pointedness, cone membership and spanning are not checked".into(),
            ),
        }
        ValidationReport {
            mode: if self.is_geometric() { "geometric" } else { "combinatorial" }.into(),
            valid: failures.is_empty(),
            failures,
            notes,
        }
    }

    /// `D` is the face of `C` cut out by the inequalities of `C` that are
    /// tight on every generator of `D`.
    fn is_geometric_face(&self, d: usize, c: usize) -> bool {
        let (Some(vs), Some(hreps)) = (&self.vectors, &self.hreps) else {
            return true;
        };
        let hc = &hreps[c];
        let spanning = |k: usize| -> Vec<Vec<i64>> {
            self.cones[k]
                .rays
                .clone()
                .unwrap_or_else(|| self.cones[k].gens.iter().map(|i| vs[i].clone()).collect())
        };
        let d_vecs = spanning(d);
        if d_vecs.iter().any(|v| !hc.contains_int(v).unwrap_or(false)) {
            return false;
        }
        let tight: Vec<usize> = (0..hc.rows().len())
            .filter(|k| d_vecs.iter().all(|v| hc.tight_at(v).contains(k)))
            .collect();
        spanning(c)
            .iter()
            .filter(|v| {
                let t = hc.tight_at(v);
                tight.iter().all(|k| t.contains(k))
            })
            .all(|v| hreps[d].contains_int(v).unwrap_or(false))
    }

    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.valid {
            Ok(())
        } else {
            Err(Error::InvalidComplex(r.failures))
        }
    }

    /// `2 · (largest coordinate sum of a generator)`, at least 2.
    pub fn default_degree(&self) -> u32 {
        let m = self
            .vectors
            .as_ref()
            .map(|vs| vs.iter().map(|v| v.iter().sum::<i64>()).max().unwrap_or(1))
            .unwrap_or(1);
        (2 * m).max(2) as u32
    }

    /// The complex on the cones `gamma` with their generators.
    pub fn restrict(&self, gamma: &[usize]) -> Result<MonoidalComplex> {
        let keep_gens = gamma
            .iter()
            .fold(VarSet::EMPTY, |acc, &c| acc.union(self.cone_support(c)));
        let idx = keep_gens.to_vec();
        let relabel = |s: VarSet| VarSet::from_indices(idx.iter().enumerate().filter(|(_, &i)| s.contains(i)).map(|(k, _)| k));
        let cones = gamma
            .iter()
            .map(|&c| Cone {
                name: self.cones[c].name.clone(),
                gens: relabel(self.cones[c].gens),
                faces: self.cones[c]
                    .faces
                    .iter()
                    .filter_map(|f| gamma.iter().position(|g| g == f))
                    .collect(),
                rays: self.cones[c].rays.clone(),
            })
            .collect();
        let vectors = self
            .vectors
            .as_ref()
            .map(|vs| idx.iter().map(|&i| vs[i].clone()).collect());
        MonoidalComplex::new(self.dim, keep_gens.names(&self.names), vectors, cones)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn plane_wall_is_valid() {
        let m = plane_wall_fan();
        let r = m.validate();
        assert!(r.valid, "{:?}", r.failures);
        assert_eq!(r.mode, "geometric");
        let q = |v: [i64; 3]| v.map(|c| BigRational::from_integer(c.into()));
        assert!(m.cone_membership(&q([1, 1, 0]), "Oxy").unwrap());
        assert!(!m.cone_membership(&q([0, 0, 2]), "Oxy").unwrap());
        assert!(m.cone_membership(&q([0, 0, 0]), "Oyz").unwrap());
        assert_eq!(m.default_degree(), 4);
    }

    #[test]
    fn unsaturated_ray_is_valid() {
        let m = single_cone(&[("a", vec![2])], 1);
        assert!(m.validate().valid);
    }

    #[test]
    fn line_is_rejected() {
        let m = single_cone(&[("a", vec![1]), ("b", vec![-1])], 1);
        let r = m.validate();
        assert!(!r.valid);
        assert!(r.failures.iter().any(|f| f.contains("not pointed")), "{:?}", r.failures);
    }

    #[test]
    fn face_generators_must_match() {
        let j: FanJson = serde_json::from_value(serde_json::json!({
            "generators": {"a": [1, 0], "b": [0, 1], "c": [2, 0]},
            "cones": [
                {"name": "O", "gens": []},
                {"name": "Oa", "gens": ["a"], "faces": ["O"]},
                {"name": "Oab", "gens": ["a", "b", "c"], "faces": ["Oa", "O"]}
            ]
        }))
        .unwrap();
        let r = MonoidalComplex::from_json(&j).unwrap().validate();
        assert!(r.failures.iter().any(|f| f.contains("inside face 'Oa'")), "{:?}", r.failures);
    }

    #[test]
    fn combinatorial_mode_and_cycles() {
        let j: FanJson = serde_json::from_value(serde_json::json!({
            "generators": ["a", "b"],
            "cones": [
                {"name": "A", "gens": ["a"], "faces": ["B"]},
                {"name": "B", "gens": ["a"], "faces": ["A"]}
            ]
        }))
        .unwrap();
        let r = MonoidalComplex::from_json(&j).unwrap().validate();
        assert_eq!(r.mode, "combinatorial");
        assert!(r.failures.iter().any(|f| f.contains("cycle")));
        assert!(r.failures.iter().any(|f| f.contains("'b' belongs to no cone")));
        let err = MonoidalComplex::from_json(&j).unwrap().cone_membership(&[], "A");
        assert_eq!(err, Err(Error::NoGeometry));
    }

    #[test]
    fn json_round_trip() {
        let m = plane_wall_fan();
        let j = m.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"dim":3,"generators":{"x":[2,0,0],"y""#));
        let back: FanJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
    }
}
