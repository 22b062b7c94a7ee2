//! Exact row reduction and canonical subspaces.

use crate::scalar::{Field, Scalar, ScalarError};

/// A coordinate vector over some [`Field`].
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, dim: usize) -> Vector {
    vec![field.zero(); dim]
}

pub fn unit_vector(field: Field, dim: usize, index: usize) -> Vector {
    let mut v = zero_vector(field, dim);
    v[index] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Indices of nonzero coordinates.
pub fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// `acc += factor * v`
pub fn axpy(acc: &mut [Scalar], factor: &Scalar, v: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(factor * x);
        }
    }
}

pub fn scale(v: &[Scalar], factor: &Scalar) -> Vector {
    v.iter().map(|x| factor * x).collect()
}

fn check_row(field: Field, dim: usize, row: &[Scalar]) -> Result<(), ScalarError> {
    if row.len() != dim {
        return Err(ScalarError::DimensionMismatch {
            expected: dim,
            found: row.len(),
        });
    }
    if let Some(x) = row.iter().find(|x| x.field() != field) {
        return Err(ScalarError::FieldMismatch {
            left: field,
            right: x.field(),
        });
    }
    Ok(())
}

/// A linear subspace of `field^ambient_dim`, stored as its reduced row-echelon
/// basis. Two subspaces are equal exactly when their rows are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

/// Reduced row-echelon form of `rows`, as a [`Subspace`].
pub fn rref<I>(field: Field, ambient_dim: usize, rows: I) -> Result<Subspace, ScalarError>
where
    I: IntoIterator<Item = Vector>,
{
    let mut space = Subspace::zero(field, ambient_dim);
    for row in rows {
        check_row(field, ambient_dim, &row)?;
        space.insert(row);
    }
    Ok(space)
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self::coordinate(field, ambient_dim, 0..ambient_dim)
    }

    /// Span of the unit vectors at `indices`.
    pub fn coordinate<I: IntoIterator<Item = usize>>(field: Field, ambient_dim: usize, indices: I) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        assert!(idx.iter().all(|&i| i < ambient_dim), "coordinate index out of range");
        Subspace {
            field,
            ambient_dim,
            rows: idx.iter().map(|&i| unit_vector(field, ambient_dim, i)).collect(),
            pivots: idx,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot column.
    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let factor = -&r[p];
                axpy(&mut r, &factor, row);
            }
        }
        r
    }

    /// Membership test. Panics if `v` has the wrong length.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        r = scale(&r, &inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = -&row[p];
                axpy(row, &factor, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// The span of `self` and `vectors`.
    pub fn extended<I: IntoIterator<Item = Vector>>(&self, vectors: I) -> Subspace {
        let mut s = self.clone();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// When the subspace is spanned by unit vectors, their indices.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .all(|(row, &p)| support(row) == [p])
            .then(|| self.pivots.clone())
    }
}
