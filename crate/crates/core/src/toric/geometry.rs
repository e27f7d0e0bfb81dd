//! Inequality descriptions of rational polyhedral cones by exact
//! Fourier-Motzkin elimination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Field, Scalar};

/// Upper bound on intermediate inequality counts during elimination.
pub const MAX_FM_ROWS: usize = 200_000;

/// `{x : h·x >= 0 for every row h}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

fn normalize(mut r: Vec<BigInt>) -> Vec<BigInt> {
    let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && g != BigInt::from(1) {
        for c in r.iter_mut() {
            *c = &*c / &g;
        }
    }
    r
}

impl HRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn eval(row: &[BigInt], v: &[BigRational]) -> BigRational {
        row.iter()
            .zip(v)
            .fold(BigRational::zero(), |acc, (h, x)| acc + BigRational::from_integer(h.clone()) * x)
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DegreeMismatch(format!(
                "point has {} coordinates, cone lives in dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(self.rows.iter().all(|h| !Self::eval(h, v).is_negative()))
    }

    pub fn contains_int(&self, v: &[i64]) -> Result<bool> {
        let q: Vec<BigRational> = v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        self.contains(&q)
    }

    /// Rows vanishing at `v`.
    pub fn tight_at(&self, v: &[i64]) -> Vec<usize> {
        let q: Vec<BigRational> = v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        (0..self.rows.len())
            .filter(|&k| Self::eval(&self.rows[k], &q).is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech: Echelon<usize> = Echelon::new(Field::Rationals);
        for r in &self.rows {
            let v = r
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, Scalar::Rational(BigRational::from_integer(c.clone()))))
                .collect();
            ech.insert(v);
        }
        ech.rank()
    }

    /// A cone is pointed iff its only lineality is zero, i.e. the
    /// inequalities have full rank.
    pub fn is_pointed(&self) -> bool {
        self.rank() == self.dim
    }
}

fn combine(p: &[BigInt], q: &[BigInt], c: usize) -> Vec<BigInt> {
    // Positive multiples of `p` and `q` cancelling column `c`; `p[c] > 0`.
    let a = -&q[c];
    let b = &p[c];
    normalize(p.iter().zip(q).map(|(x, y)| x * &a + y * b).collect())
}

/// Inequalities of the cone spanned by `gens` in `Q^dim`, from eliminating
/// `λ` in `x = Σ λ_j g_j`, `λ >= 0`.
///
/// The equations are used first to substitute away as many `λ_j` as they
/// determine; the rest are eliminated pairwise, discarding any combination
/// built from more than `k + 1` of the original inequalities after `k`
/// eliminations (such a row is always implied by the others).
pub fn cone_hrep(dim: usize, gens: &[Vec<i64>]) -> Result<HRep> {
    if let Some(g) = gens.iter().find(|g| g.len() != dim) {
        return Err(Error::DegreeMismatch(format!(
            "generator {g:?} does not have {dim} coordinates"
        )));
    }
    let m = gens.len();
    let width = dim + m;
    let mut eqs: Vec<Vec<BigInt>> = (0..dim)
        .map(|k| {
            let mut r = vec![BigInt::zero(); width];
            r[k] = BigInt::from(1);
            for (j, g) in gens.iter().enumerate() {
                r[dim + j] = BigInt::from(-g[k]);
            }
            r
        })
        .collect();
    // Each inequality remembers which `λ_j >= 0` it was built from.
    let mut ineqs: Vec<(Vec<BigInt>, BTreeSet<usize>)> = (0..m)
        .map(|j| {
            let mut r = vec![BigInt::zero(); width];
            r[dim + j] = BigInt::from(1);
            (r, BTreeSet::from([j]))
        })
        .collect();

    let mut free = Vec::new();
    for c in dim..width {
        let Some(k) = eqs.iter().position(|e| !e[c].is_zero()) else {
            free.push(c);
            continue;
        };
        let mut e = eqs.swap_remove(k);
        if e[c].is_negative() {
            e = e.iter().map(|x| -x).collect();
        }
        for r in eqs.iter_mut().chain(ineqs.iter_mut().map(|(r, _)| r)) {
            if !r[c].is_zero() {
                let scaled: Vec<BigInt> = r.iter().zip(&e).map(|(x, y)| x * &e[c] - y * &r[c]).collect();
                *r = normalize(scaled);
            }
        }
    }

    for (eliminated, &c) in free.iter().enumerate() {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for row in ineqs {
            if row.0[c].is_positive() {
                pos.push(row);
            } else if row.0[c].is_negative() {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        for (p, po) in &pos {
            for (q, qo) in &neg {
                let origin: BTreeSet<usize> = po.union(qo).copied().collect();
                if origin.len() > eliminated + 2 {
                    continue;
                }
                next.push((combine(p, q, c), origin));
                if next.len() > MAX_FM_ROWS {
                    return Err(Error::guard("Fourier-Motzkin rows", MAX_FM_ROWS as u128, next.len() as u128));
                }
            }
        }
        ineqs = next;
    }

    let mut rows: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for e in eqs {
        let e = normalize(e[..dim].to_vec());
        rows.insert(e.iter().map(|x| -x).collect());
        rows.insert(e);
    }
    rows.extend(ineqs.into_iter().map(|(r, _)| normalize(r[..dim].to_vec())));
    let rows = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    Ok(HRep { dim, rows })
}
