//! Restricted subfans and the multigraded retracts they classify.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::toric::{defining_ideal, DefiningIdeal, DefiningIdealJson, MonoidalComplex};
use crate::varset::VarSet;

/// Largest fan whose subsets are scanned.
pub const MAX_SUBFAN_CONES: usize = 16;

fn check_subfan(m: &MonoidalComplex, gamma: &[usize]) -> Result<()> {
    let n = m.cones().len();
    if let Some(&c) = gamma.iter().find(|&&c| c >= n) {
        return Err(Error::NotASubfan(format!("cone index {c} out of range")));
    }
    for &c in gamma {
        if let Some(d) = (0..n).find(|&d| m.le(d, c) && !gamma.contains(&d)) {
            return Err(Error::NotASubfan(format!(
                "face '{}' of '{}' is missing",
                m.cones()[d].name,
                m.cones()[c].name
            )));
        }
    }
    Ok(())
}

fn restricted(m: &MonoidalComplex, gamma: &[usize]) -> bool {
    let n = m.cones().len();
    gamma.iter().enumerate().all(|(k, &c)| {
        gamma[k + 1..].iter().all(|&c2| {
            let bounded = (0..n).any(|e| m.le(c, e) && m.le(c2, e));
            !bounded || gamma.iter().any(|&d| m.le(c, d) && m.le(c2, d))
        })
    })
}

/// Any two cones of `gamma` lying in a common cone of the fan lie in a
/// common cone of `gamma`.
pub fn is_restricted_subfan(m: &MonoidalComplex, gamma: &[usize]) -> Result<bool> {
    check_subfan(m, gamma)?;
    Ok(restricted(m, gamma))
}

/// The same condition on generators: every set of generators of `|gamma|`
/// lying in one monoid of the complex lies in one monoid of `gamma`.
pub fn is_restricted_by_generators(m: &MonoidalComplex, gamma: &[usize]) -> Result<bool> {
    check_subfan(m, gamma)?;
    let all: Vec<VarSet> = (0..m.cones().len()).map(|c| m.cone_support(c)).collect();
    let inside: Vec<VarSet> = gamma.iter().map(|&c| all[c]).collect();
    let universe = inside.iter().fold(VarSet::EMPTY, |a, s| a.union(*s));
    Ok(crate::varset::subsets_by_size(universe).into_iter().all(|x| {
        !all.iter().any(|s| x.is_subset(*s)) || inside.iter().any(|s| x.is_subset(*s))
    }))
}

/// Nonempty restricted subfans, by size and then lexicographically by cone
/// index.
pub fn enumerate_restricted_subfans(m: &MonoidalComplex) -> Result<Vec<Vec<usize>>> {
    let n = m.cones().len();
    if n > MAX_SUBFAN_CONES {
        return Err(Error::guard("fan cones", MAX_SUBFAN_CONES as u128, n as u128));
    }
    let below: Vec<u32> = (0..n)
        .map(|c| (0..n).filter(|&d| m.le(d, c)).fold(0u32, |acc, d| acc | (1 << d)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let closed = (0..n).all(|c| mask & (1 << c) == 0 || below[c] & !mask == 0);
        if !closed {
            continue;
        }
        let gamma: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        if restricted(m, &gamma) {
            out.push(gamma);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// A multigraded retract `k[M_Γ]` of `k[M]`.
#[derive(Debug, Clone)]
pub struct RetractClass {
    pub cones: Vec<String>,
    pub kept: Vec<String>,
    pub ideal: DefiningIdeal,
    /// Generator symbol and its image under the projection `k[M] -> k[M_Γ]`.
    pub project: Vec<(String, Option<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractClassJson {
    pub cones: Vec<String>,
    pub presentation: String,
    pub ideal: DefiningIdealJson,
    pub include: Vec<[String; 2]>,
    pub project: Vec<[String; 2]>,
}

impl RetractClass {
    pub fn include(&self) -> Vec<(String, String)> {
        self.kept.iter().map(|g| (g.clone(), g.clone())).collect()
    }

    pub fn to_json(&self) -> RetractClassJson {
        RetractClassJson {
            cones: self.cones.clone(),
            presentation: self.ideal.summary(),
            ideal: self.ideal.to_json(),
            include: self.include().into_iter().map(|(a, b)| [a, b]).collect(),
            project: self
                .project
                .iter()
                .map(|(a, b)| [a.clone(), b.clone().unwrap_or_else(|| "0".into())])
                .collect(),
        }
    }
}

/// One presentation per restricted subfan, with the degree bound of the
/// whole complex.
pub fn classify_retracts(m: &MonoidalComplex, degree: Option<u32>) -> Result<Vec<RetractClass>> {
    m.require_valid()?;
    let d = degree.unwrap_or_else(|| m.default_degree());
    let names = m.generator_names();
    enumerate_restricted_subfans(m)?
        .into_iter()
        .map(|gamma| {
            let sub = m.restrict(&gamma)?;
            let ideal = defining_ideal(&sub, Some(d))?;
            let kept = sub.generator_names().to_vec();
            let project = names
                .iter()
                .map(|g| (g.clone(), kept.contains(g).then(|| g.clone())))
                .collect();
            Ok(RetractClass {
                cones: gamma.iter().map(|&c| m.cones()[c].name.clone()).collect(),
                kept,
                ideal,
                project,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::fixtures::*;
    use crate::toric::FanJson;

    fn quadrant() -> MonoidalComplex {
        let j: FanJson = serde_json::from_value(serde_json::json!({
            "generators": {"a": [1, 0], "b": [0, 1]},
            "cones": [
                {"name": "O", "gens": []},
                {"name": "Oa", "gens": ["a"], "faces": ["O"]},
                {"name": "Ob", "gens": ["b"], "faces": ["O"]},
                {"name": "Oab", "gens": ["a", "b"], "faces": ["Oa", "Ob", "O"]}
            ]
        }))
        .unwrap();
        MonoidalComplex::from_json(&j).unwrap()
    }

    #[test]
    fn plane_wall_subfans() {
        let m = plane_wall_fan();
        let good = m.cone_set(&["O", "Ox", "Oz"]).unwrap();
        let bad = m.cone_set(&["O", "Ox", "Oy"]).unwrap();
        assert!(is_restricted_subfan(&m, &good).unwrap());
        assert!(!is_restricted_subfan(&m, &bad).unwrap());
        assert!(is_restricted_subfan(&m, &(0..m.cones().len()).collect::<Vec<_>>()).unwrap());
        let all = enumerate_restricted_subfans(&m).unwrap();
        assert!(all.contains(&good));
        assert!(!all.contains(&bad));
        assert!(matches!(
            is_restricted_subfan(&m, &m.cone_set(&["Ox"]).unwrap()),
            Err(Error::NotASubfan(_))
        ));
    }

    #[test]
    fn plane_wall_classification() {
        let classes = classify_retracts(&plane_wall_fan(), Some(2)).unwrap();
        let c = classes.iter().find(|c| c.cones == ["O", "Ox", "Oz"]).unwrap();
        assert_eq!(c.ideal.summary(), "k[x,z]/(x*z)");
        assert_eq!(c.project[1], ("y".to_string(), None));
        let whole = classes.last().unwrap();
        assert_eq!(whole.ideal.summary(), "k[x,y,z,t]/(x*z, z*t, x*y - t^2)");
    }

    #[test]
    fn quadrant_subfans_are_faces() {
        let m = quadrant();
        let got: Vec<Vec<String>> = enumerate_restricted_subfans(&m)
            .unwrap()
            .iter()
            .map(|g| g.iter().map(|&c| m.cones()[c].name.clone()).collect())
            .collect();
        assert_eq!(got, vec![vec!["O"], vec!["O", "Oa"], vec!["O", "Ob"], vec!["O", "Oa", "Ob", "Oab"]]);
    }

    #[test]
    fn generator_test_agrees() {
        for m in [plane_wall_fan(), quadrant()] {
            for g in enumerate_restricted_subfans(&m).unwrap() {
                assert!(is_restricted_by_generators(&m, &g).unwrap());
            }
            let bad = vec![0, 1, 2];
            assert!(!is_restricted_subfan(&m, &bad).unwrap());
            assert!(!is_restricted_by_generators(&m, &bad).unwrap());
        }
    }

    #[test]
    fn zero_fan() {
        let m = single_cone(&[], 1);
        let only_zero = m.restrict(&[0]).unwrap();
        assert_eq!(enumerate_restricted_subfans(&only_zero).unwrap(), vec![vec![0]]);
    }
}
