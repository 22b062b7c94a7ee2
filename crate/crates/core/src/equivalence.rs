//! Linear maps between bases: automorphisms, change of basis, and the graph
//! isomorphisms and decomposition correspondences they induce.

use thiserror::Error;

use crate::algebra::{AlgebraError, LeibnizAlgebra};
use crate::graph::DiGraph;
use crate::linalg::{axpy, rref, unit_vector, zero_vector, Vector};
use crate::scalar::{Field, Scalar};
use crate::structure::{format_combination, Decomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("linear map is singular")]
    SingularMap,
    #[error("map is {found}-dimensional, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a bijection between the vertex sets: {0}")]
    BadBijection(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// A square matrix stored by columns: column `i` is the image of `v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    field: Field,
    columns: Vec<Vector>,
}

impl LinearMap {
    pub fn from_columns(field: Field, columns: Vec<Vector>) -> Result<Self, EquivalenceError> {
        let n = columns.len();
        for c in &columns {
            if c.len() != n {
                return Err(EquivalenceError::DimensionMismatch { expected: n, found: c.len() });
            }
            if let Some(x) = c.iter().find(|x| x.field() != field) {
                return Err(AlgebraError::from(crate::scalar::ScalarError::FieldMismatch {
                    left: field,
                    right: x.field(),
                })
                .into());
            }
        }
        Ok(LinearMap { field, columns })
    }

    pub fn identity(field: Field, n: usize) -> Self {
        LinearMap {
            field,
            columns: (0..n).map(|i| unit_vector(field, n, i)).collect(),
        }
    }

    /// Sends `v_i` to `v_{perm[i]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Result<Self, EquivalenceError> {
        check_bijection(perm, perm.len())?;
        let n = perm.len();
        Ok(LinearMap {
            field,
            columns: perm.iter().map(|&p| unit_vector(field, n, p)).collect(),
        })
    }

    /// Sends `v_i` to `factors[i] v_i`.
    pub fn diagonal(field: Field, factors: &[Scalar]) -> Self {
        let n = factors.len();
        let columns = factors
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut c = zero_vector(field, n);
                c[i] = s.clone();
                c
            })
            .collect();
        LinearMap { field, columns }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (xi, col) in x.iter().zip(&self.columns) {
            axpy(&mut out, xi, col);
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        rref(self.field, self.dim(), self.columns.iter().cloned())
            .map(|s| s.rank() == self.dim())
            .unwrap_or(false)
    }

    /// Gauss-Jordan on `[F | I]`.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.dim();
        let f = self.field;
        // row-major working copy of F
        let mut a: Vec<Vector> = (0..n)
            .map(|r| (0..n).map(|c| self.columns[c][r].clone()).collect())
            .collect();
        let mut inv: Vec<Vector> = (0..n).map(|r| unit_vector(f, n, r)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = a[col][col].inv().expect("nonzero pivot");
            a[col] = a[col].iter().map(|x| x * &s).collect();
            inv[col] = inv[col].iter().map(|x| x * &s).collect();
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = -&a[r][col];
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    axpy(&mut a[r], &factor, &pa);
                    axpy(&mut inv[r], &factor, &pi);
                }
            }
        }
        let columns = (0..n).map(|c| (0..n).map(|r| inv[r][c].clone()).collect()).collect();
        Some(LinearMap { field: f, columns })
    }

    fn check_for(&self, algebra: &LeibnizAlgebra) -> Result<(), EquivalenceError> {
        if self.dim() != algebra.dim() {
            return Err(EquivalenceError::DimensionMismatch {
                expected: algebra.dim(),
                found: self.dim(),
            });
        }
        if self.field != algebra.field() {
            return Err(AlgebraError::from(crate::scalar::ScalarError::FieldMismatch {
                left: algebra.field(),
                right: self.field,
            })
            .into());
        }
        Ok(())
    }
}

/// First basis pair `(i, j)` with `[f v_i, f v_j] != f [v_i, v_j]`, or
/// `None` when `f` is an automorphism. Bilinearity makes basis pairs enough.
pub fn automorphism_witness(algebra: &LeibnizAlgebra, f: &LinearMap) -> Result<Option<(usize, usize)>, EquivalenceError> {
    f.check_for(algebra)?;
    if !f.is_invertible() {
        return Err(EquivalenceError::SingularMap);
    }
    let n = algebra.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = algebra.product(&f.columns[i], &f.columns[j])?;
            let rhs = f.apply(algebra.basis_product(i, j));
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_automorphism(algebra: &LeibnizAlgebra, f: &LinearMap) -> Result<bool, EquivalenceError> {
    automorphism_witness(algebra, f).map(|w| w.is_none())
}

/// When every column of `f` equals exactly one of the `target` vectors,
/// with no scalar slack, the induced bijection `i ↦ j` with
/// `f(v_i) = target[j]`.
pub fn maps_basis_to_basis(f: &LinearMap, target: &[Vector]) -> Option<Vec<usize>> {
    if target.len() != f.dim() {
        return None;
    }
    let mut used = vec![false; target.len()];
    let mut bij = Vec::with_capacity(f.dim());
    for col in &f.columns {
        let j = target.iter().position(|t| t == col)?;
        if std::mem::replace(&mut used[j], true) {
            return None;
        }
        bij.push(j);
    }
    Some(bij)
}

/// [`maps_basis_to_basis`] with the standard basis as target.
pub fn maps_standard_basis(f: &LinearMap) -> Option<Vec<usize>> {
    let n = f.dim();
    let standard: Vec<Vector> = (0..n).map(|i| unit_vector(f.field, n, i)).collect();
    maps_basis_to_basis(f, &standard)
}

/// The algebra rewritten in the basis `f(v_1), ..., f(v_n)`. Labels default
/// to the images written as combinations of the old labels.
pub fn change_basis(
    algebra: &LeibnizAlgebra,
    f: &LinearMap,
    labels: Option<Vec<String>>,
) -> Result<LeibnizAlgebra, EquivalenceError> {
    f.check_for(algebra)?;
    let inv = f.inverse().ok_or(EquivalenceError::SingularMap)?;
    let n = algebra.dim();
    let mut tensor = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let p = algebra.product(&f.columns[i], &f.columns[j])?;
            tensor.extend(inv.apply(&p));
        }
    }
    let labels = labels.unwrap_or_else(|| {
        f.columns
            .iter()
            .map(|c| format_combination(algebra.labels(), c).replace(' ', ""))
            .collect()
    });
    if labels.len() != n {
        return Err(EquivalenceError::DimensionMismatch {
            expected: n,
            found: labels.len(),
        });
    }
    LeibnizAlgebra::new(algebra.field(), labels, tensor).map_err(|e| match e {
        AlgebraError::NotLeibniz { .. } => {
            EquivalenceError::InternalInvariantViolation(format!("change of basis broke the Leibniz identity: {e}"))
        }
        other => other.into(),
    })
}

fn check_bijection(bij: &[usize], n: usize) -> Result<(), EquivalenceError> {
    if bij.len() != n {
        return Err(EquivalenceError::BadBijection(format!(
            "{} images for {n} vertices",
            bij.len()
        )));
    }
    let mut seen = vec![false; n];
    for &b in bij {
        if b >= n || std::mem::replace(&mut seen[b], true) {
            return Err(EquivalenceError::BadBijection(format!("{bij:?}")));
        }
    }
    Ok(())
}

/// Whether `(a, b)` is an edge of `g` exactly when `(bij[a], bij[b])` is an
/// edge of `h`.
pub fn induced_graph_isomorphism(g: &DiGraph, h: &DiGraph, bij: &[usize]) -> Result<bool, EquivalenceError> {
    if g.vertex_count() != h.vertex_count() {
        return Err(EquivalenceError::BadBijection(format!(
            "{} vertices vs {}",
            g.vertex_count(),
            h.vertex_count()
        )));
    }
    check_bijection(bij, g.vertex_count())?;
    Ok(g.edge_count() == h.edge_count() && g.edges().all(|(a, b)| h.has_edge(bij[a], bij[b])))
}

/// An isomorphism invariant on which `g` and `h` differ, proving that no
/// bijection is an isomorphism. `None` means the cheap invariants agree.
pub fn non_isomorphism_certificate(g: &DiGraph, h: &DiGraph) -> Option<String> {
    let degrees = |x: &DiGraph| {
        let n = x.vertex_count();
        let (mut out, mut inn, mut loops) = (vec![0usize; n], vec![0usize; n], 0usize);
        for (a, b) in x.edges() {
            out[a] += 1;
            inn[b] += 1;
            loops += usize::from(a == b);
        }
        out.sort_unstable();
        inn.sort_unstable();
        (out, inn, loops)
    };
    if g.vertex_count() != h.vertex_count() {
        return Some(format!("vertex counts {} vs {}", g.vertex_count(), h.vertex_count()));
    }
    if g.edge_count() != h.edge_count() {
        return Some(format!("edge counts {} vs {}", g.edge_count(), h.edge_count()));
    }
    let (go, gi, gl) = degrees(g);
    let (ho, hi, hl) = degrees(h);
    if gl != hl {
        return Some(format!("loop counts {gl} vs {hl}"));
    }
    if go != ho {
        return Some(format!("out-degree multisets {go:?} vs {ho:?}"));
    }
    if gi != hi {
        return Some(format!("in-degree multisets {gi:?} vs {hi:?}"));
    }
    None
}

/// The part bijection `σ` when `bij` carries every part of `d` onto exactly
/// one part of `e`; `None` if some part is split or merged.
pub fn decomposition_correspondence(
    d: &Decomposition,
    e: &Decomposition,
    bij: &[usize],
) -> Result<Option<Vec<usize>>, EquivalenceError> {
    let n: usize = d.parts.iter().map(|p| p.members.len()).sum();
    let m: usize = e.parts.iter().map(|p| p.members.len()).sum();
    if n != m {
        return Err(EquivalenceError::BadBijection(format!("{n} basis vectors vs {m}")));
    }
    check_bijection(bij, n)?;
    if d.parts.len() != e.parts.len() {
        return Ok(None);
    }
    let mut sigma = Vec::with_capacity(d.parts.len());
    let mut used = vec![false; e.parts.len()];
    for part in &d.parts {
        let mut image: Vec<usize> = part.members.iter().map(|&v| bij[v]).collect();
        image.sort_unstable();
        let Some(target) = e.parts.iter().position(|q| q.members == image) else {
            return Ok(None);
        };
        if std::mem::replace(&mut used[target], true) {
            return Ok(None);
        }
        sigma.push(target);
    }
    Ok(Some(sigma))
}

pub fn decomposition_equivalence(d: &Decomposition, e: &Decomposition, bij: &[usize]) -> Result<bool, EquivalenceError> {
    decomposition_correspondence(d, e, bij).map(|s| s.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let f = LinearMap::from_columns(Field::Rationals, vec![q(&[1, 1, 0]), q(&[1, -1, 0]), q(&[0, 2, 3])]).unwrap();
        let inv = f.inverse().unwrap();
        for i in 0..3 {
            let e = unit_vector(Field::Rationals, 3, i);
            assert_eq!(inv.apply(&f.apply(&e)), e);
            assert_eq!(f.apply(&inv.apply(&e)), e);
        }
        let singular = LinearMap::from_columns(Field::Rationals, vec![q(&[1, 2]), q(&[2, 4])]).unwrap();
        assert!(singular.inverse().is_none());
        assert!(!singular.is_invertible());
    }

    #[test]
    fn basis_to_basis() {
        let id = LinearMap::identity(Field::Rationals, 3);
        assert_eq!(maps_standard_basis(&id), Some(vec![0, 1, 2]));
        let p = LinearMap::permutation(Field::Rationals, &[2, 0, 1]).unwrap();
        assert_eq!(maps_standard_basis(&p), Some(vec![2, 0, 1]));
        let scaled = LinearMap::diagonal(Field::Rationals, &q(&[1, 2, 1]));
        assert_eq!(maps_standard_basis(&scaled), None);
        assert!(LinearMap::permutation(Field::Rationals, &[0, 0]).is_err());
    }

    #[test]
    fn bijection_errors() {
        let g = DiGraph::from_edges(2, [(0, 1)]);
        let h = DiGraph::from_edges(2, [(1, 0)]);
        assert!(induced_graph_isomorphism(&g, &h, &[1, 0]).unwrap());
        assert!(!induced_graph_isomorphism(&g, &h, &[0, 1]).unwrap());
        assert!(matches!(
            induced_graph_isomorphism(&g, &h, &[0, 0]),
            Err(EquivalenceError::BadBijection(_))
        ));
        assert!(induced_graph_isomorphism(&g, &DiGraph::from_edges(3, []), &[0, 1]).is_err());
    }

    #[test]
    fn certificates() {
        let g = DiGraph::from_edges(3, [(0, 1), (1, 2)]);
        let h = DiGraph::from_edges(3, [(0, 1), (0, 2)]);
        assert!(non_isomorphism_certificate(&g, &h).unwrap().contains("out-degree"));
        assert!(non_isomorphism_certificate(&g, &g).is_none());
        let k = DiGraph::from_edges(3, [(0, 1)]);
        assert!(non_isomorphism_certificate(&g, &k).unwrap().contains("edge counts"));
    }
}
