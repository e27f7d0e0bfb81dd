//! Exhaustive enumeration of idempotent coefficient matrices over small
//! prime fields, and of the compatible retracts they induce.
//!
//! An idempotent is the projection onto its image `U` along a complement `K`.
//! Subspaces `U` are listed by reduced row echelon form; with `K0` spanned by
//! the unit vectors off the pivot columns, complements are the graphs
//! `{v + f(v) : v ∈ K0}` of linear maps `f: K0 -> U`.

use crate::error::{Error, Result};
use crate::exactalg::{identity_matrix, mat_inverse, mat_mul, Field, Matrix, Ring, Scalar};
use crate::monideal::MonomialIdeal;
use crate::retract::RetractDatum;
use crate::varset::combinations;

/// Default ring-size limits `(p, n)`: `n <= 5` over `F_2`, `n <= 4` over
/// `F_3`, and `n <= 3` otherwise.
pub const MAX_IDEMPOTENT_SCAN: [(u32, usize); 2] = [(2, 5), (3, 4)];

pub fn retract_guard(p: u32) -> usize {
    MAX_IDEMPOTENT_SCAN
        .iter()
        .find(|(q, _)| *q == p)
        .map_or(3, |&(_, n)| n)
}

fn prime_of(field: Field) -> Result<u32> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::Precondition("enumeration needs a finite prime field".into())),
    }
}

fn check_guard(p: u32, n: usize, guard_n: Option<usize>) -> Result<()> {
    let limit = guard_n.unwrap_or_else(|| retract_guard(p));
    if n > limit {
        return Err(Error::guard(format!("ring size over F{p}"), limit as u128, n as u128));
    }
    Ok(())
}

fn residue(c: &Scalar) -> u32 {
    match c {
        Scalar::Mod { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("finite field scalars only"),
    }
}

fn row_major_key(m: &Matrix) -> Vec<u32> {
    m.iter().flatten().map(residue).collect()
}

/// Calls `f` with every assignment of field elements to `slots` positions.
fn for_each_assignment(elements: &[Scalar], slots: usize, f: &mut dyn FnMut(&[Scalar])) {
    let q = elements.len();
    let mut digits = vec![0usize; slots];
    let mut current: Vec<Scalar> = vec![elements[0].clone(); slots];
    loop {
        f(&current);
        let mut k = 0;
        loop {
            if k == slots {
                return;
            }
            digits[k] += 1;
            if digits[k] < q {
                current[k] = elements[digits[k]].clone();
                break;
            }
            digits[k] = 0;
            current[k] = elements[0].clone();
            k += 1;
        }
    }
}

/// Every idempotent `n x n` matrix over `F_p`, sorted row-major.
pub fn enumerate_idempotents(field: Field, n: usize, guard_n: Option<usize>) -> Result<Vec<Matrix>> {
    let p = prime_of(field)?;
    check_guard(p, n, guard_n)?;
    let elements = field.elements().expect("finite field");
    let cols: Vec<usize> = (0..n).collect();
    let mut out: Vec<Matrix> = Vec::new();
    for k in 0..=n {
        let mut pivot_sets = Vec::new();
        combinations(&cols, k, &mut |c| pivot_sets.push(c.to_vec()));
        for pivots in pivot_sets {
            let free_cols: Vec<usize> = cols.iter().copied().filter(|c| !pivots.contains(c)).collect();
            // Free RREF entries: row r, column c > pivots[r], c not a pivot.
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| free_cols.iter().filter(move |&&c| c > pc).map(move |&c| (r, c)))
                .collect();
            for_each_assignment(&elements, slots.len(), &mut |vals| {
                let mut rows: Vec<Vec<Scalar>> = vec![vec![field.zero(); n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = field.one();
                }
                for (&(r, c), v) in slots.iter().zip(vals) {
                    rows[r][c] = v.clone();
                }
                for_each_assignment(&elements, k * (n - k), &mut |coef| {
                    // Columns of B: the u_r, then e_c + f(e_c).
                    let mut b = vec![vec![field.zero(); n]; n];
                    for (r, u) in rows.iter().enumerate() {
                        for i in 0..n {
                            b[i][r] = u[i].clone();
                        }
                    }
                    for (m, &c) in free_cols.iter().enumerate() {
                        let col = k + m;
                        b[c][col] = field.one();
                        for (r, u) in rows.iter().enumerate() {
                            let a = &coef[m * k + r];
                            if a.is_zero() {
                                continue;
                            }
                            for i in 0..n {
                                b[i][col] = &b[i][col] + &(a * &u[i]);
                            }
                        }
                    }
                    let inv = mat_inverse(field, &b).expect("U and K are complementary");
                    let mut d = identity_matrix(field, n);
                    for (i, row) in d.iter_mut().enumerate().skip(k) {
                        row[i] = field.zero();
                    }
                    out.push(mat_mul(field, &mat_mul(field, &b, &d), &inv));
                });
            });
        }
    }
    out.sort_by_key(row_major_key);
    Ok(out)
}

/// Reference scan over all `p^(n^2)` matrices.
pub fn naive_idempotents(field: Field, n: usize) -> Result<Vec<Matrix>> {
    prime_of(field)?;
    let elements = field.elements().expect("finite field");
    let mut out = Vec::new();
    for_each_assignment(&elements, n * n, &mut |vals| {
        let m: Matrix = vals.chunks(n.max(1)).map(|r| r.to_vec()).take(n).collect();
        if mat_mul(field, &m, &m) == m {
            out.push(m);
        }
    });
    out.sort_by_key(row_major_key);
    Ok(out)
}

/// Every compatible retract of `S/I` over `F_p`, in row-major matrix order.
pub fn enumerate_retracts(ideal: &MonomialIdeal, field: Field, guard_n: Option<usize>) -> Result<Vec<RetractDatum>> {
    let ring = Ring::new(ideal.vars(), field)?;
    let mut out = Vec::new();
    for m in enumerate_idempotents(field, ring.nvars(), guard_n)? {
        let datum = RetractDatum::from_matrix(&ring, ideal.clone(), &m)?;
        let compatible = datum
            .ideal_images()
            .iter()
            .all(|img| ideal.contains_poly(img).expect("same ring"));
        if compatible {
            out.push(datum);
        }
    }
    Ok(out)
}
