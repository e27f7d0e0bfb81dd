//! Degree-one substitutions between polynomial rings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::field::Scalar;
use crate::exactalg::poly::{check_same_ring, Polynomial, Ring, Terms};

/// A graded ring map `source -> target` sending each source variable to a
/// linear form (possibly zero) of the target.
///
/// Equivalently a coefficient matrix `E` with `E[j][i]` the coefficient of
/// target variable `j` in the image of source variable `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubstitution {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Polynomial>,
}

impl GradedSubstitution {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<Polynomial>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(
                source.field().to_string(),
                target.field().to_string(),
            ));
        }
        if images.len() != source.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        for img in &images {
            check_same_ring(img.ring(), target)?;
            if !img.is_zero() && img.homogeneous_degree() != Some(1) {
                return Err(Error::DegreeMismatch(format!("image {img} is not a linear form")));
            }
        }
        Ok(GradedSubstitution {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        GradedSubstitution {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    /// Builds the substitution whose matrix is `matrix` (rows indexed by
    /// target variables, columns by source variables).
    pub fn from_matrix(source: &Arc<Ring>, target: &Arc<Ring>, matrix: &[Vec<Scalar>]) -> Result<Self> {
        if matrix.len() != target.nvars() || matrix.iter().any(|r| r.len() != source.nvars()) {
            return Err(Error::RingMismatch(format!(
                "matrix must be {}x{}",
                target.nvars(),
                source.nvars()
            )));
        }
        for row in matrix {
            for c in row {
                if c.field() != target.field() {
                    return Err(Error::FieldMismatch(c.field().to_string(), target.field().to_string()));
                }
            }
        }
        let images = (0..source.nvars())
            .map(|i| {
                let col: Vec<Scalar> = matrix.iter().map(|row| row[i].clone()).collect();
                Polynomial::linear(target, &col)
            })
            .collect();
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    /// Coefficient matrix, `E[j][i]`.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        (0..self.target.nvars())
            .map(|j| self.images.iter().map(|img| img.linear_coeff(j)).collect())
            .collect()
    }

    /// Applies the substitution with full multinomial expansion.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        check_same_ring(f.ring(), &self.source)?;
        let n = self.source.nvars();
        let field = self.target.field();
        let mut powers: Vec<Vec<Polynomial>> =
            vec![vec![Polynomial::constant(&self.target, field.one())]; n];
        let mut out = Terms::new();
        for (m, c) in f.terms() {
            let mut prod = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&self.images[i]);
                    powers[i].push(next);
                }
                prod = prod.mul_unchecked(&powers[i][e as usize]);
                if prod.is_zero() {
                    break;
                }
            }
            crate::exactalg::poly::add_into(&mut out, prod.terms(), None);
        }
        Ok(Polynomial::from_terms(&self.target, out))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GradedSubstitution) -> Result<GradedSubstitution> {
        check_same_ring(&inner.target, &self.source)?;
        let images = inner
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        GradedSubstitution::new(&inner.source, &self.target, images)
    }

    pub fn is_endomorphism(&self) -> bool {
        check_same_ring(&self.source, &self.target).is_ok()
    }

    /// `self ∘ self == self`, i.e. `E^2 = E`.
    pub fn is_idempotent(&self) -> bool {
        self.is_endomorphism() && self.compose(self).map(|sq| sq == *self).unwrap_or(false)
    }
}

/// Convenience wrapper for [`GradedSubstitution::apply`].
pub fn apply_substitution(f: &Polynomial, sigma: &GradedSubstitution) -> Result<Polynomial> {
    sigma.apply(f)
}

/// Convenience wrapper for [`GradedSubstitution::compose`].
pub fn compose(outer: &GradedSubstitution, inner: &GradedSubstitution) -> Result<GradedSubstitution> {
    outer.compose(inner)
}
