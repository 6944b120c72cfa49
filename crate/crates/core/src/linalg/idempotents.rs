use super::{roots_in_field, LinalgError, Matrix};
use crate::scalars::Scalar;

/// Eigenvalues of a multiplicity-free matrix paired with its primitive idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    pub eigenvalues: Vec<Scalar>,
    pub idempotents: Vec<Matrix>,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The same set listed in the order `perm[0], perm[1], ...`.
    pub fn permuted(&self, perm: &[usize]) -> IdempotentSet {
        IdempotentSet {
            eigenvalues: perm.iter().map(|&i| self.eigenvalues[i].clone()).collect(),
            idempotents: perm.iter().map(|&i| self.idempotents[i].clone()).collect(),
        }
    }

    pub fn reversed(&self) -> IdempotentSet {
        let n = self.len();
        self.permuted(&(0..n).rev().collect::<Vec<_>>())
    }
}

/// The distinct eigenvalues of `a`, in sorted order, when `a` is
/// multiplicity-free over its field.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Scalar>, LinalgError> {
    let roots = roots_in_field(&a.char_poly());
    if let Some((r, m)) = roots.iter().find(|(_, m)| *m > 1) {
        return Err(LinalgError::NotMultiplicityFree(format!("eigenvalue {r} has multiplicity {m}")));
    }
    if roots.len() < a.dim() {
        return Err(LinalgError::FieldExtensionRequired);
    }
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

/// `E_i = prod_{l != i} (A - theta_l I) / (theta_i - theta_l)` for the given
/// ordering of the eigenvalues.
pub fn primitive_idempotents(a: &Matrix, eigs: &[Scalar]) -> Result<IdempotentSet, LinalgError> {
    let n = a.dim();
    if eigs.len() != n {
        return Err(LinalgError::DimensionMismatch(n, eigs.len()));
    }
    for (i, x) in eigs.iter().enumerate() {
        if eigs[..i].contains(x) {
            return Err(LinalgError::NotMultiplicityFree(format!("eigenvalue {x} listed twice")));
        }
    }
    let cp = a.char_poly();
    if let Some(bad) = eigs.iter().find(|t| !cp.eval(t).is_zero()) {
        return Err(LinalgError::EigenvalueMismatch(bad.to_string()));
    }
    let field = a.field();
    let shifted: Vec<Matrix> = eigs.iter().map(|t| a.shift(t)).collect();
    let mut idempotents = Vec::with_capacity(n);
    for (i, ti) in eigs.iter().enumerate() {
        let mut e = Matrix::identity(field, n);
        let mut denom = field.one();
        for (l, tl) in eigs.iter().enumerate() {
            if l != i {
                e = &e * &shifted[l];
                denom = &denom * &(ti - tl);
            }
        }
        idempotents.push(e.scale(&denom.inv().expect("distinct eigenvalues")));
    }
    Ok(IdempotentSet {
        eigenvalues: eigs.to_vec(),
        idempotents,
    })
}
