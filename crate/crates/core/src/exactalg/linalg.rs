//! Exact sparse row reduction and the degree-one span operations built on it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, Scalar};
use crate::exactalg::poly::{check_same_ring, Polynomial, Terms};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// Incremental row echelon form over an exact field. Each stored row is
/// keyed by its largest key (the pivot) and normalized to pivot coefficient 1.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    field: Field,
    rows: BTreeMap<K, SparseVec<K>>,
}

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, row: &SparseVec<K>) {
    for (k, a) in row {
        let d = a * c;
        match v.get_mut(k) {
            Some(x) => {
                let s = &*x + &d;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *x = s;
                }
            }
            None => {
                if !d.is_zero() {
                    v.insert(k.clone(), d);
                }
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().rev().find(|k| self.rows.contains_key(k)).cloned(),
                Some(b) => v
                    .range(..b.clone())
                    .rev()
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let c = -&v[&k];
            axpy(&mut v, &c, &self.rows[&k]);
            bound = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((k, lead)) = r.iter().next_back() else {
            return false;
        };
        let k = k.clone();
        let inv = lead.inverse().expect("nonzero pivot");
        let row: SparseVec<K> = r.into_iter().map(|(key, c)| (key, &c * &inv)).collect();
        self.rows.insert(k, row);
        true
    }

    /// Fully reduced basis, ordered by descending pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec<K>> {
        let mut done: BTreeMap<K, SparseVec<K>> = BTreeMap::new();
        // Ascending pivots: lower rows are already reduced when used.
        for (p, row) in &self.rows {
            let mut r = row.clone();
            let keys: Vec<K> = r.keys().filter(|k| *k != p).cloned().collect();
            for k in keys.into_iter().rev() {
                if let (Some(c), Some(lower)) = (r.get(&k).cloned(), done.get(&k)) {
                    axpy(&mut r, &-&c, lower);
                }
            }
            done.insert(p.clone(), r);
        }
        done.into_values().rev().collect()
    }
}

fn check_linear(vectors: &[Polynomial]) -> Result<()> {
    for w in vectors.windows(2) {
        check_same_ring(w[0].ring(), w[1].ring())?;
    }
    for v in vectors {
        if !v.is_zero() && v.homogeneous_degree() != Some(1) {
            return Err(Error::DegreeMismatch(format!("{v} is not a linear form")));
        }
    }
    Ok(())
}

fn field_of(vectors: &[Polynomial]) -> Field {
    vectors.first().map(|v| v.ring().field()).unwrap_or(Field::Rationals)
}

/// Span of a list of linear forms.
#[derive(Debug, Clone)]
pub struct LinearSpan {
    echelon: Echelon<crate::exactalg::Monomial>,
}

impl LinearSpan {
    pub fn new(field: Field) -> Self {
        LinearSpan {
            echelon: Echelon::new(field),
        }
    }

    pub fn from_vectors(field: Field, vectors: &[Polynomial]) -> Result<Self> {
        check_linear(vectors)?;
        let mut s = LinearSpan::new(field);
        for v in vectors {
            s.insert(v);
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn insert(&mut self, v: &Polynomial) -> bool {
        self.echelon.insert(v.terms().clone())
    }

    pub fn contains(&self, v: &Polynomial) -> bool {
        self.echelon.contains(v.terms())
    }
}

/// Rank of a list of linear forms.
pub fn rank(vectors: &[Polynomial]) -> Result<usize> {
    Ok(LinearSpan::from_vectors(field_of(vectors), vectors)?.rank())
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Polynomial], v: &Polynomial) -> Result<bool> {
    check_linear(std::slice::from_ref(v))?;
    Ok(LinearSpan::from_vectors(field_of(vectors), vectors)?.contains(v))
}

/// Greedy smallest-index-first basis selection; the result is the
/// lexicographically least index set spanning the same space.
pub fn extract_basis_indices(vectors: &[Polynomial]) -> Result<Vec<usize>> {
    check_linear(vectors)?;
    let mut span = LinearSpan::new(field_of(vectors));
    Ok((0..vectors.len()).filter(|&i| span.insert(&vectors[i])).collect())
}

/// Picks indices from `candidates` (greedily, in order) whose vectors extend
/// a basis of `span(inner)` to a basis of `span(outer)`. Returns `None` when
/// the candidates cannot reach `span(outer)`.
///
/// Fails if a candidate or an `inner` vector lies outside `span(outer)`.
pub fn complement_basis_from(
    candidates: &[Polynomial],
    outer: &[Polynomial],
    inner: &[Polynomial],
) -> Result<Option<Vec<usize>>> {
    let field = [outer, candidates, inner]
        .iter()
        .find_map(|vs| vs.first().map(|v| v.ring().field()))
        .unwrap_or(Field::Rationals);
    let outer_span = LinearSpan::from_vectors(field, outer)?;
    check_linear(candidates)?;
    check_linear(inner)?;
    for v in candidates.iter().chain(inner) {
        if !outer_span.contains(v) {
            return Err(Error::OutsideSpan(v.to_string()));
        }
    }
    let mut span = LinearSpan::from_vectors(field, inner)?;
    let target = outer_span.rank();
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if span.rank() == target {
            break;
        }
        if span.insert(c) {
            chosen.push(i);
        }
    }
    Ok((span.rank() == target).then_some(chosen))
}

/// Intersection of two subspaces given by spanning sets (Zassenhaus).
pub fn intersect_spaces(field: Field, a: &[Terms], b: &[Terms]) -> Vec<Terms> {
    use crate::exactalg::Monomial;
    // Tag 1 sorts above tag 0, so pivots land in the first half first.
    let mut ech: Echelon<(u8, Monomial)> = Echelon::new(field);
    for v in a {
        let mut row = SparseVec::new();
        for (m, c) in v {
            row.insert((1, m.clone()), c.clone());
            row.insert((0, m.clone()), c.clone());
        }
        ech.insert(row);
    }
    for v in b {
        let row = v.iter().map(|(m, c)| ((1, m.clone()), c.clone())).collect();
        ech.insert(row);
    }
    let mut out = Echelon::new(field);
    for (pivot, row) in &ech.rows {
        if pivot.0 == 0 {
            out.insert(row.iter().map(|((_, m), c)| (m.clone(), c.clone())).collect());
        }
    }
    out.reduced_basis()
}

/// Dense matrix over an exact field, stored as rows.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity_matrix(field: Field, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

pub fn mat_mul(field: Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix by Gauss-Jordan elimination, `None` if singular.
pub fn mat_inverse(field: Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(identity_matrix(field, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inverse()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&c * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
