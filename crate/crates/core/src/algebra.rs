//! Leibniz algebras given by structure constants, their kernel ideal, and
//! multiplicative bases split along that kernel.
//!
//! The product is stored densely: `[v_i, v_j] = Σ_k c[i][j][k] v_k`.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::linalg::{axpy, rref, support, unit_vector, zero_vector, Subspace, Vector};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure tensor has {found} entries, expected {expected}")]
    TensorShape { expected: usize, found: usize },
    #[error("vector length {found} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Leibniz identity fails for {count} basis triple(s), first at (x, y, z) = ({}, {}, {})", first.0, first.1, first.2)]
    NotLeibniz { count: usize, first: (usize, usize, usize) },
    #[error("invalid basis split: {0}")]
    InvalidSplit(String),
    #[error("[{left}, {right}] is not a multiple of a single basis vector")]
    NotMonomial { left: String, right: String },
    #[error("[{left}, {right}] = {product} lands in the wrong part of the basis split")]
    ShapeViolation {
        left: String,
        right: String,
        product: String,
    },
}

/// A basis triple `(x, y, z)` where `[[y,z],x] - [[y,x],z] - [y,[z,x]]` is
/// nonzero, together with that residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub residual: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    field: Field,
    labels: Vec<String>,
    tensor: Vec<Scalar>,
    // sparse copy of each c[i][j][.]
    supports: Vec<Vec<(usize, Scalar)>>,
    verified: bool,
}

impl LeibnizAlgebra {
    /// Builds the algebra and rejects it unless the Leibniz identity holds.
    pub fn new(field: Field, labels: Vec<String>, tensor: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let mut a = Self::unchecked(field, labels, tensor)?;
        let violations = a.check_leibniz();
        if let Some(v) = violations.first() {
            return Err(AlgebraError::NotLeibniz {
                count: violations.len(),
                first: (v.x, v.y, v.z),
            });
        }
        a.verified = true;
        Ok(a)
    }

    /// Builds the algebra without checking the Leibniz identity. Only the
    /// tensor shape, field and labels are validated.
    pub fn unchecked(field: Field, labels: Vec<String>, tensor: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        if tensor.len() != n * n * n {
            return Err(AlgebraError::TensorShape {
                expected: n * n * n,
                found: tensor.len(),
            });
        }
        if let Some(x) = tensor.iter().find(|x| x.field() != field) {
            return Err(ScalarError::FieldMismatch {
                left: field,
                right: x.field(),
            }
            .into());
        }
        let supports = tensor
            .chunks(n.max(1))
            .take(n * n)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        Ok(LeibnizAlgebra {
            field,
            labels,
            tensor,
            supports,
            verified: false,
        })
    }

    pub fn builder<S: Into<String>>(field: Field, labels: impl IntoIterator<Item = S>) -> AlgebraBuilder {
        AlgebraBuilder {
            field,
            labels: labels.into_iter().map(Into::into).collect(),
            products: Vec::new(),
        }
    }

    /// The zero-dimensional algebra.
    pub fn trivial(field: Field) -> Self {
        Self::new(field, Vec::new(), Vec::new()).expect("empty algebra")
    }

    /// The `dim`-dimensional algebra with zero product.
    pub fn abelian(field: Field, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        Self::new(field, labels, vec![field.zero(); n * n * n])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    /// Whether construction verified the Leibniz identity.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.tensor[(i * n + j) * n + k]
    }

    /// Coordinates of `[v_i, v_j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.tensor[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Nonzero coordinates of `[v_i, v_j]`.
    pub fn basis_product_support(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.supports[i * self.dim() + j]
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `[x, y]` for arbitrary coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vector(self.field, self.dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let coef = xi * yj;
                for (k, c) in self.basis_product_support(i, j) {
                    out[*k] = &out[*k] + &(&coef * c);
                }
            }
        }
        Ok(out)
    }

    /// `[x, v_i]`. `x` must have length `dim`.
    pub fn times_basis(&self, x: &[Scalar], i: usize) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (m, xm) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, c) in self.basis_product_support(m, i) {
                out[*k] = &out[*k] + &(xm * c);
            }
        }
        out
    }

    /// `[v_i, x]`. `x` must have length `dim`.
    pub fn basis_times(&self, i: usize, x: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (m, xm) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, c) in self.basis_product_support(i, m) {
                out[*k] = &out[*k] + &(xm * c);
            }
        }
        out
    }

    /// Every basis triple violating the Leibniz identity. By trilinearity an
    /// empty result means the identity holds on the whole algebra.
    pub fn check_leibniz(&self) -> Vec<LeibnizViolation> {
        let n = self.dim();
        let mut violations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // [[y,z],x] - [[y,x],z] - [y,[z,x]]
                    let mut r = self.times_basis(self.basis_product(y, z), x);
                    let minus = [
                        self.times_basis(self.basis_product(y, x), z),
                        self.basis_times(y, self.basis_product(z, x)),
                    ];
                    let neg_one = -self.field.one();
                    for m in &minus {
                        axpy(&mut r, &neg_one, m);
                    }
                    if !crate::linalg::is_zero_vector(&r) {
                        violations.push(LeibnizViolation { x, y, z, residual: r });
                    }
                }
            }
        }
        violations
    }

    fn require_leibniz(&self) -> Result<(), AlgebraError> {
        if self.verified {
            return Ok(());
        }
        let violations = self.check_leibniz();
        match violations.first() {
            None => Ok(()),
            Some(v) => Err(AlgebraError::NotLeibniz {
                count: violations.len(),
                first: (v.x, v.y, v.z),
            }),
        }
    }

    /// Smallest subspace containing `seed` and closed under left and right
    /// products with every basis vector, i.e. the two-sided ideal it
    /// generates.
    pub fn ideal_closure(&self, seed: Subspace) -> Subspace {
        let n = self.dim();
        let mut space = seed;
        loop {
            let before = space.rank();
            let snapshot = space.rows().to_vec();
            for w in &snapshot {
                for i in 0..n {
                    space.insert(self.times_basis(w, i));
                    space.insert(self.basis_times(i, w));
                }
            }
            if space.rank() == before {
                return space;
            }
        }
    }

    /// The ideal generated by all squares `[x, x]`.
    ///
    /// Seeds with `[v_i,v_i]` and `[v_i,v_j] + [v_j,v_i]`, which span the
    /// squares over any field, then closes under products.
    pub fn leibniz_kernel(&self) -> Result<Subspace, AlgebraError> {
        self.require_leibniz()?;
        let n = self.dim();
        let mut seed = Vec::new();
        for i in 0..n {
            seed.push(self.basis_product(i, i).to_vec());
            for j in i + 1..n {
                let mut s = self.basis_product(i, j).to_vec();
                axpy(&mut s, &self.field.one(), self.basis_product(j, i));
                seed.push(s);
            }
        }
        let seed = rref(self.field, n, seed)?;
        Ok(self.ideal_closure(seed))
    }

    /// Whether `[v_i, w] = 0` for every basis vector and every row of `ideal`.
    pub fn verify_right_annihilation(&self, ideal: &Subspace) -> Result<bool, AlgebraError> {
        if ideal.ambient_dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: ideal.ambient_dim(),
            });
        }
        Ok(ideal.rows().iter().all(|w| {
            (0..self.dim()).all(|i| crate::linalg::is_zero_vector(&self.basis_times(i, w)))
        }))
    }

    /// Whether the unit vectors at `split.kernel()` span exactly the kernel
    /// ideal. False for algebras that are not Leibniz.
    pub fn validate_split(&self, split: &BasisSplit) -> bool {
        if split.dim() != self.dim() {
            return false;
        }
        match self.leibniz_kernel() {
            Ok(kernel) => kernel == Subspace::coordinate(self.field, self.dim(), split.kernel().iter().copied()),
            Err(_) => false,
        }
    }

    /// The algebra in the basis `s_i v_i`. Every factor must be nonzero.
    pub fn rescaled(&self, factors: &[Scalar]) -> Result<LeibnizAlgebra, AlgebraError> {
        self.check_len(factors)?;
        let inverses = factors
            .iter()
            .map(|s| s.inv().ok_or(ScalarError::DivisionByZero))
            .collect::<Result<Vec<_>, _>>()?;
        let n = self.dim();
        let mut tensor = vec![self.field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let sij = &factors[i] * &factors[j];
                for (k, c) in self.basis_product_support(i, j) {
                    tensor[(i * n + j) * n + k] = &(&sij * c) * &inverses[*k];
                }
            }
        }
        let mut a = Self::unchecked(self.field, self.labels.clone(), tensor)?;
        a.verified = self.verified;
        Ok(a)
    }

    /// Reorders the basis: old vector `i` becomes new vector `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = self.dim();
        check_permutation(perm, n)?;
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        let mut tensor = vec![self.field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product_support(i, j) {
                    tensor[(perm[i] * n + perm[j]) * n + perm[*k]] = c.clone();
                }
            }
        }
        let mut a = Self::unchecked(self.field, labels, tensor)?;
        a.verified = self.verified;
        Ok(a)
    }

    /// Structure constants restricted to the basis vectors at `indices`,
    /// dropping any coordinate outside them. The result is not checked.
    pub fn restrict(&self, indices: &[usize]) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = self.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(AlgebraError::IndexOutOfRange { index: bad, dim: n });
        }
        let m = indices.len();
        let mut tensor = Vec::with_capacity(m * m * m);
        for &i in indices {
            for &j in indices {
                for &k in indices {
                    tensor.push(self.constant(i, j, k).clone());
                }
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Self::unchecked(self.field, labels, tensor)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), AlgebraError> {
    if perm.len() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(AlgebraError::InvalidSplit(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Label-based construction of structure constants.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    field: Field,
    labels: Vec<String>,
    products: Vec<(String, String, String, Scalar)>,
}

impl AlgebraBuilder {
    /// Adds `coef * out` to `[left, right]`.
    pub fn product(mut self, left: &str, right: &str, out: &str, coef: Scalar) -> Self {
        self.products
            .push((left.to_string(), right.to_string(), out.to_string(), coef));
        self
    }

    /// Integer-coefficient shorthand for [`AlgebraBuilder::product`].
    pub fn int(self, left: &str, right: &str, out: &str, coef: i64) -> Self {
        let c = self.field.from_i64(coef);
        self.product(left, right, out, c)
    }

    fn tensor(&self) -> Result<Vec<Scalar>, AlgebraError> {
        let n = self.labels.len();
        let index = |l: &str| {
            self.labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()))
        };
        let mut tensor = vec![self.field.zero(); n * n * n];
        for (l, r, o, c) in &self.products {
            let at = (index(l)? * n + index(r)?) * n + index(o)?;
            tensor[at] = tensor[at].checked_add(c)?;
        }
        Ok(tensor)
    }

    pub fn build(self) -> Result<LeibnizAlgebra, AlgebraError> {
        let tensor = self.tensor()?;
        LeibnizAlgebra::new(self.field, self.labels, tensor)
    }

    pub fn build_unchecked(self) -> Result<LeibnizAlgebra, AlgebraError> {
        let tensor = self.tensor()?;
        LeibnizAlgebra::unchecked(self.field, self.labels, tensor)
    }
}

/// Which side of the kernel split a basis vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Kernel,
    Complement,
}

/// Partition of the basis indices into a kernel part (a basis of the kernel
/// ideal) and a complement part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSplit {
    kernel: Vec<usize>,
    complement: Vec<usize>,
}

impl BasisSplit {
    pub fn new(dim: usize, kernel: impl IntoIterator<Item = usize>) -> Result<Self, AlgebraError> {
        let mut in_kernel = vec![false; dim];
        for k in kernel {
            if k >= dim {
                return Err(AlgebraError::IndexOutOfRange { index: k, dim });
            }
            if std::mem::replace(&mut in_kernel[k], true) {
                return Err(AlgebraError::InvalidSplit(format!("index {k} listed twice")));
            }
        }
        let (kernel, complement) = (0..dim).partition(|&i| in_kernel[i]);
        Ok(BasisSplit { kernel, complement })
    }

    pub fn from_labels(algebra: &LeibnizAlgebra, kernel: &[&str]) -> Result<Self, AlgebraError> {
        let idx = kernel
            .iter()
            .map(|l| algebra.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra.dim(), idx)
    }

    /// The split whose kernel part is every basis vector lying in the kernel
    /// ideal. Fails unless those vectors span the whole kernel.
    pub fn infer(algebra: &LeibnizAlgebra) -> Result<Self, AlgebraError> {
        let kernel = algebra.leibniz_kernel()?;
        let n = algebra.dim();
        let members: Vec<usize> = (0..n).filter(|&i| kernel.contains(&algebra.unit(i))).collect();
        if members.len() != kernel.rank() {
            return Err(AlgebraError::InvalidSplit(format!(
                "the kernel ideal has dimension {} but only {} basis vectors lie in it",
                kernel.rank(),
                members.len()
            )));
        }
        Self::new(n, members)
    }

    pub fn dim(&self) -> usize {
        self.kernel.len() + self.complement.len()
    }

    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn indices(&self, part: Part) -> &[usize] {
        match part {
            Part::Kernel => &self.kernel,
            Part::Complement => &self.complement,
        }
    }

    pub fn is_kernel(&self, i: usize) -> bool {
        self.kernel.binary_search(&i).is_ok()
    }

    pub fn part_of(&self, i: usize) -> Part {
        if self.is_kernel(i) {
            Part::Kernel
        } else {
            Part::Complement
        }
    }

    /// The split after [`LeibnizAlgebra::permuted`] with the same `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        check_permutation(perm, self.dim())?;
        Self::new(self.dim(), self.kernel.iter().map(|&k| perm[k]))
    }
}

/// Sparse form of a multiplicative basis: `[v_i, v_j] = λ v_k` for stored
/// `(i, j) ↦ (k, λ)`, zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeTable {
    dim: usize,
    entries: BTreeMap<(usize, usize), (usize, Scalar)>,
}

impl MultiplicativeTable {
    /// Reads the structure constants as a multiplicative table and checks
    /// the shape a Leibniz multiplicative basis must have: nothing times a
    /// kernel vector is nonzero, and kernel-times-complement stays in the
    /// kernel.
    pub fn from_algebra(algebra: &LeibnizAlgebra, split: &BasisSplit) -> Result<Self, AlgebraError> {
        if !algebra.validate_split(split) {
            return Err(AlgebraError::InvalidSplit(
                "kernel part does not span the kernel ideal".to_string(),
            ));
        }
        Self::read(algebra, split)
    }

    fn read(algebra: &LeibnizAlgebra, split: &BasisSplit) -> Result<Self, AlgebraError> {
        let n = algebra.dim();
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let (k, lambda) = match algebra.basis_product_support(i, j) {
                    [] => continue,
                    [(k, c)] => (*k, c.clone()),
                    _ => {
                        return Err(AlgebraError::NotMonomial {
                            left: algebra.label(i).to_string(),
                            right: algebra.label(j).to_string(),
                        })
                    }
                };
                let wrong = split.is_kernel(j) || (split.is_kernel(i) && !split.is_kernel(k));
                if wrong {
                    return Err(AlgebraError::ShapeViolation {
                        left: algebra.label(i).to_string(),
                        right: algebra.label(j).to_string(),
                        product: algebra.label(k).to_string(),
                    });
                }
                entries.insert((i, j), (k, lambda));
            }
        }
        Ok(MultiplicativeTable { dim: n, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, left: usize, right: usize) -> Option<(usize, &Scalar)> {
        self.entries.get(&(left, right)).map(|(k, c)| (*k, c))
    }

    /// Entries `((left, right), (product, λ))` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), (usize, &Scalar))> + '_ {
        self.entries.iter().map(|(&ij, (k, c))| (ij, (*k, c)))
    }

    /// Expands back into a dense structure tensor.
    pub fn to_tensor(&self, field: Field) -> Vec<Scalar> {
        let n = self.dim;
        let mut tensor = vec![field.zero(); n * n * n];
        for ((i, j), (k, c)) in self.iter() {
            tensor[(i * n + j) * n + k] = c.clone();
        }
        tensor
    }
}

/// Whether every basis product of `algebra` is zero or a single scaled
/// basis vector, ignoring any split.
pub fn is_monomial(algebra: &LeibnizAlgebra) -> bool {
    let n = algebra.dim();
    (0..n).all(|i| (0..n).all(|j| support(algebra.basis_product(i, j)).len() <= 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_dim() -> LeibnizAlgebra {
        LeibnizAlgebra::builder(Field::Rationals, ["e", "h", "f", "p", "q"])
            .int("e", "h", "e", 2)
            .int("h", "e", "e", -2)
            .int("h", "f", "f", 2)
            .int("f", "h", "f", -2)
            .int("e", "f", "h", 1)
            .int("f", "e", "h", -1)
            .int("p", "h", "p", 1)
            .int("q", "e", "p", -1)
            .int("p", "f", "q", 1)
            .int("q", "h", "q", -1)
            .build()
            .unwrap()
    }

    fn q(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn products_of_the_five_dimensional_algebra() {
        let a = five_dim();
        assert_eq!(a.product(&a.unit(0), &a.unit(1)).unwrap(), q(&[2, 0, 0, 0, 0]));
        assert_eq!(a.product(&a.unit(3), &a.unit(2)).unwrap(), q(&[0, 0, 0, 0, 1]));
        let zero = q(&[0; 5]);
        assert_eq!(a.product(&q(&[1, -3, 2, 5, 7]), &zero).unwrap(), zero);
        assert!(matches!(
            a.product(&q(&[1]), &zero),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_and_split() {
        let a = five_dim();
        let kernel = a.leibniz_kernel().unwrap();
        assert_eq!(kernel, Subspace::coordinate(Field::Rationals, 5, [3, 4]));
        assert!(a.verify_right_annihilation(&kernel).unwrap());
        assert!(a.validate_split(&BasisSplit::from_labels(&a, &["p", "q"]).unwrap()));
        assert!(!a.validate_split(&BasisSplit::from_labels(&a, &["p"]).unwrap()));
        assert_eq!(BasisSplit::infer(&a).unwrap().kernel(), &[3, 4]);
    }

    #[test]
    fn right_annihilation_fails_off_the_kernel() {
        let a = five_dim();
        let span_e = Subspace::coordinate(Field::Rationals, 5, [0]);
        // [h, e] = -2e
        assert!(!a.verify_right_annihilation(&span_e).unwrap());
        assert!(a.verify_right_annihilation(&Subspace::zero(Field::Rationals, 5)).unwrap());
        assert!(a
            .verify_right_annihilation(&Subspace::zero(Field::Rationals, 3))
            .is_err());
    }

    #[test]
    fn broken_identity_is_reported() {
        let broken = LeibnizAlgebra::builder(Field::Rationals, ["e", "h", "f", "p", "q"])
            .int("e", "h", "e", 2)
            .int("h", "e", "e", -2)
            .int("h", "f", "f", 2)
            .int("f", "h", "f", -2)
            .int("e", "f", "e", 1)
            .int("f", "e", "h", -1)
            .int("p", "h", "p", 1)
            .int("q", "e", "p", -1)
            .int("p", "f", "q", 1)
            .int("q", "h", "q", -1)
            .build_unchecked()
            .unwrap();
        let v = broken.check_leibniz();
        assert!(!v.is_empty());
        assert!(v.iter().any(|t| [t.x, t.y, t.z].iter().all(|i| [0, 1, 2].contains(i))));
        assert!(matches!(broken.leibniz_kernel(), Err(AlgebraError::NotLeibniz { .. })));
        assert!(!broken.validate_split(&BasisSplit::new(5, [3, 4]).unwrap()));
    }

    #[test]
    fn abelian_has_empty_kernel_and_table() {
        let a = LeibnizAlgebra::abelian(Field::Rationals, vec!["a".into(), "b".into()]).unwrap();
        assert!(a.check_leibniz().is_empty());
        assert!(a.leibniz_kernel().unwrap().is_zero());
        let split = BasisSplit::new(2, []).unwrap();
        assert!(a.validate_split(&split));
        assert!(MultiplicativeTable::from_algebra(&a, &split).unwrap().is_empty());
    }

    #[test]
    fn lie_algebras_have_zero_kernel() {
        // sl2 in the basis e, h, f
        let sl2 = LeibnizAlgebra::builder(Field::Rationals, ["e", "h", "f"])
            .int("e", "h", "e", 2)
            .int("h", "e", "e", -2)
            .int("h", "f", "f", 2)
            .int("f", "h", "f", -2)
            .int("e", "f", "h", 1)
            .int("f", "e", "h", -1)
            .build()
            .unwrap();
        assert!(sl2.leibniz_kernel().unwrap().is_zero());
    }

    #[test]
    fn multiplicative_table_of_five_dim() {
        let a = five_dim();
        let split = BasisSplit::infer(&a).unwrap();
        let t = MultiplicativeTable::from_algebra(&a, &split).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(t.get(0, 1), Some((0, &Field::Rationals.from_i64(2))));
        assert_eq!(t.get(4, 0), Some((3, &Field::Rationals.from_i64(-1))));
        assert_eq!(t.to_tensor(Field::Rationals), a.tensor());
    }

    #[test]
    fn non_monomial_product_is_rejected() {
        // two-step nilpotent, so Leibniz; the kernel is span{e1, e2}
        let a = LeibnizAlgebra::builder(Field::Rationals, ["u", "w", "e1", "e2"])
            .int("u", "u", "e1", 1)
            .int("w", "w", "e2", 1)
            .int("u", "w", "e1", 1)
            .int("u", "w", "e2", 1)
            .build()
            .unwrap();
        let split = BasisSplit::infer(&a).unwrap();
        assert_eq!(split.kernel(), &[2, 3]);
        assert!(matches!(
            MultiplicativeTable::from_algebra(&a, &split),
            Err(AlgebraError::NotMonomial { left, right }) if left == "u" && right == "w"
        ));
        assert!(!is_monomial(&a));
    }

    #[test]
    fn kernel_not_spanned_by_basis_vectors() {
        let a = LeibnizAlgebra::builder(Field::Rationals, ["a", "b", "c"])
            .int("a", "a", "b", 1)
            .int("a", "a", "c", 1)
            .build()
            .unwrap();
        assert_eq!(a.leibniz_kernel().unwrap().rank(), 1);
        assert!(matches!(BasisSplit::infer(&a), Err(AlgebraError::InvalidSplit(_))));
    }

    #[test]
    fn shape_check_catches_inconsistent_splits() {
        let a = LeibnizAlgebra::builder(Field::Rationals, ["u", "e"])
            .int("u", "u", "e", 1)
            .int("e", "u", "e", 1)
            .build_unchecked()
            .unwrap();
        // u declared as kernel: [u, u] has a kernel right factor
        let swapped = BasisSplit::new(2, [0]).unwrap();
        assert!(matches!(
            MultiplicativeTable::read(&a, &swapped),
            Err(AlgebraError::ShapeViolation { .. })
        ));
        assert!(matches!(
            MultiplicativeTable::from_algebra(&a, &swapped),
            Err(AlgebraError::InvalidSplit(_))
        ));
        let good = BasisSplit::new(2, [1]).unwrap();
        assert_eq!(MultiplicativeTable::read(&a, &good).unwrap().len(), 2);
    }

    #[test]
    fn duplicate_labels_and_bad_tensors() {
        let f = Field::Rationals;
        assert!(matches!(
            LeibnizAlgebra::new(f, vec!["a".into(), "a".into()], vec![f.zero(); 8]),
            Err(AlgebraError::DuplicateLabel(_))
        ));
        assert!(matches!(
            LeibnizAlgebra::new(f, vec!["a".into()], vec![f.zero(); 2]),
            Err(AlgebraError::TensorShape { .. })
        ));
        assert!(matches!(
            LeibnizAlgebra::builder(f, ["a"]).int("a", "b", "a", 1).build(),
            Err(AlgebraError::UnknownLabel(_))
        ));
    }

    #[test]
    fn rescale_and_permute() {
        let a = five_dim();
        let f = Field::Rationals;
        let s: Vec<Scalar> = [2, -1, 3, 5, 7].iter().map(|&x| f.from_i64(x)).collect();
        let r = a.rescaled(&s).unwrap();
        // [2e, -h] = -4e = -2 (2e)
        assert_eq!(r.constant(0, 1, 0), &f.from_i64(-2));
        assert!(r.check_leibniz().is_empty());
        assert_eq!(r.leibniz_kernel().unwrap(), a.leibniz_kernel().unwrap());

        let perm = [4, 3, 2, 1, 0];
        let p = a.permuted(&perm).unwrap();
        assert_eq!(p.labels(), &["q", "p", "f", "h", "e"]);
        assert_eq!(p.constant(4, 3, 4), &f.from_i64(2));
        let split = BasisSplit::new(5, [3, 4]).unwrap().permuted(&perm).unwrap();
        assert_eq!(split.kernel(), &[0, 1]);
        assert!(p.validate_split(&split));
        assert!(a.rescaled(&vec![f.zero(); 5]).is_err());
        assert!(a.permuted(&[0, 0, 1, 2, 3]).is_err());
    }

    #[test]
    fn kernel_is_closed() {
        let a = five_dim();
        let k = a.leibniz_kernel().unwrap();
        assert_eq!(a.ideal_closure(k.clone()), k);
    }
}
