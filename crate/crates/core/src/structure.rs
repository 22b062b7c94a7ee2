//! Structural results read off the associated graph, each paired with a
//! direct linear-algebra check.
//!
//! * orthogonal decomposition along undirected components,
//! * ideals generated by a vector versus directed reachability,
//! * weak division versus weak symmetry of the two induced subgraphs,
//! * minimality versus strong connectivity, with a subset-enumeration
//!   oracle for the definition itself.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraError, BasisSplit, LeibnizAlgebra, MultiplicativeTable, Part};
use crate::graph::{build_graph, DiGraph, Edge, GraphError};
use crate::linalg::{is_zero_vector, support, Subspace, Vector};

/// Largest dimension for which subsets of the basis are enumerated.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("subspace lives in dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the enumeration bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Whether `space` is a two-sided ideal: `[s, v_i]` and `[v_i, s]` lie in
/// `space` for every row `s` and basis vector `v_i`.
pub fn is_ideal(algebra: &LeibnizAlgebra, space: &Subspace) -> Result<bool, StructureError> {
    if space.ambient_dim() != algebra.dim() {
        return Err(StructureError::DimensionMismatch {
            expected: algebra.dim(),
            found: space.ambient_dim(),
        });
    }
    Ok(space.rows().iter().all(|s| {
        (0..algebra.dim()).all(|i| {
            space.contains(&algebra.times_basis(s, i)) && space.contains(&algebra.basis_times(i, s))
        })
    }))
}

/// The ideal generated by `x`, by closing `span{x}` under products with
/// basis vectors.
pub fn generated_ideal(algebra: &LeibnizAlgebra, x: &[crate::Scalar]) -> Result<Subspace, StructureError> {
    if x.len() != algebra.dim() {
        return Err(StructureError::DimensionMismatch {
            expected: algebra.dim(),
            found: x.len(),
        });
    }
    let mut seed = Subspace::zero(algebra.field(), algebra.dim());
    seed.insert(x.to_vec());
    Ok(algebra.ideal_closure(seed))
}

/// A connected graph is necessary for simplicity. `false` rules simplicity
/// out; `true` decides nothing.
pub fn simplicity_necessary(graph: &DiGraph) -> bool {
    graph.is_connected()
}

/// A Leibniz algebra together with a validated multiplicative basis split
/// and its associated graph.
#[derive(Debug, Clone)]
pub struct MultiplicativeAlgebra {
    algebra: LeibnizAlgebra,
    split: BasisSplit,
    table: MultiplicativeTable,
    graph: DiGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPart {
    /// Smallest basis index in the part.
    pub id: usize,
    pub members: Vec<usize>,
    pub subspace: Subspace,
}

/// Orthogonal direct sum of ideals, one per connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<DecompositionPart>,
}

impl Decomposition {
    /// Index into `parts` of the part holding basis vector `i`.
    pub fn part_containing(&self, i: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.members.binary_search(&i).is_ok())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.members.len()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDivisionViolation {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    /// The factor missing from the ideal generated by the product vector.
    pub missing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDivisionReport {
    pub violations: Vec<WeakDivisionViolation>,
}

impl WeakDivisionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Why one of the induced subgraphs fails to be strongly connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongConnectivityFailure {
    /// An edge, in basis indices, with no way back.
    NotWeaklySymmetric { part: Part, edge: Edge },
    /// Undirected components, in basis indices.
    Disconnected { part: Part, components: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphRoute {
    pub kernel_strong: bool,
    pub complement_strong: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionRoute {
    pub weak_division: bool,
    pub kernel_connected: bool,
    pub complement_connected: bool,
}

/// Minimality decided through strong connectivity, through weak division
/// plus connectivity, and optionally by enumerating basis-subset ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    pub via_graph: GraphRoute,
    pub via_division: DivisionRoute,
    pub via_oracle: Option<bool>,
    pub failures: Vec<StrongConnectivityFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorptionReport {
    pub kernel_strong: bool,
    pub complement_strong: bool,
    pub ideals_checked: usize,
    /// Subset ideals contradicting an absorption statement.
    pub failures: Vec<Vec<usize>>,
}

impl AbsorptionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl MultiplicativeAlgebra {
    pub fn new(algebra: LeibnizAlgebra, split: BasisSplit) -> Result<Self, StructureError> {
        let table = MultiplicativeTable::from_algebra(&algebra, &split)?;
        let graph = build_graph(&table, &split, algebra.labels());
        Ok(MultiplicativeAlgebra {
            algebra,
            split,
            table,
            graph,
        })
    }

    /// As [`MultiplicativeAlgebra::new`] with the split read off the kernel.
    pub fn infer(algebra: LeibnizAlgebra) -> Result<Self, StructureError> {
        let split = BasisSplit::infer(&algebra)?;
        Self::new(algebra, split)
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn split(&self) -> &BasisSplit {
        &self.split
    }

    pub fn table(&self) -> &MultiplicativeTable {
        &self.table
    }

    pub fn graph(&self) -> &DiGraph {
        &self.graph
    }

    pub fn into_parts(self) -> (LeibnizAlgebra, BasisSplit) {
        (self.algebra, self.split)
    }

    pub fn subgraph(&self, part: Part) -> DiGraph {
        self.graph.induced_subgraph(part)
    }

    pub fn kernel_subspace(&self) -> Subspace {
        Subspace::coordinate(self.algebra.field(), self.algebra.dim(), self.split.kernel().iter().copied())
    }

    fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    /// One ideal per connected component of the graph. Ideal membership and
    /// pairwise orthogonality are checked exhaustively before returning.
    pub fn decompose(&self) -> Result<Decomposition, StructureError> {
        let comps = self.graph.undirected_components();
        let field = self.algebra.field();
        let n = self.algebra.dim();
        // vertices are in basis order, so class members are basis indices
        let parts: Vec<DecompositionPart> = comps
            .classes()
            .into_iter()
            .map(|members| DecompositionPart {
                id: members[0],
                subspace: Subspace::coordinate(field, n, members.iter().copied()),
                members,
            })
            .collect();

        for part in &parts {
            if !is_ideal(&self.algebra, &part.subspace)? {
                return Err(StructureError::InternalInvariantViolation(format!(
                    "component of {} does not span an ideal",
                    self.label(part.id)
                )));
            }
        }
        let owner: Vec<usize> = {
            let mut o = vec![0; n];
            for (p, part) in parts.iter().enumerate() {
                for &m in &part.members {
                    o[m] = p;
                }
            }
            o
        };
        for a in 0..n {
            for b in 0..n {
                if owner[a] != owner[b] && !is_zero_vector(self.algebra.basis_product(a, b)) {
                    return Err(StructureError::InternalInvariantViolation(format!(
                        "[{}, {}] is nonzero across components",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(Decomposition { parts })
    }

    /// The algebra and split carried by one decomposition part.
    pub fn restrict_to(&self, part: &DecompositionPart) -> Result<(LeibnizAlgebra, BasisSplit), StructureError> {
        let sub = self.algebra.restrict(&part.members)?;
        let kernel = part
            .members
            .iter()
            .enumerate()
            .filter(|(_, &m)| self.split.is_kernel(m))
            .map(|(i, _)| i);
        let split = BasisSplit::new(part.members.len(), kernel)?;
        Ok((sub, split))
    }

    /// Basis vectors of `part` reachable from basis vector `v` inside the
    /// induced subgraph of that part.
    pub fn reachability_members(&self, part: Part, v: usize) -> Result<BTreeSet<usize>, StructureError> {
        let g = self.subgraph(part);
        let local = g
            .position_of_basis(v)
            .ok_or_else(|| GraphError::UnknownVertex(format!("basis index {v} in {part:?} part")))?;
        Ok(g.reachable_from(local)?
            .into_iter()
            .map(|w| g.vertex(w).basis_index)
            .collect())
    }

    /// Same-part pairs `(v, w)` of basis indices where "`w` is reachable from
    /// `v` in the part's subgraph" and "`w` lies in the ideal generated by
    /// `v`" disagree. Empty when the graph describes ideal generation.
    pub fn reachability_mismatches(&self) -> Result<Vec<(usize, usize)>, StructureError> {
        let mut out = Vec::new();
        for part in [Part::Kernel, Part::Complement] {
            let members = self.split.indices(part);
            for &v in members {
                let reach = self.reachability_members(part, v)?;
                let ideal = generated_ideal(&self.algebra, &self.algebra.unit(v))?;
                out.extend(
                    members
                        .iter()
                        .filter(|&&w| reach.contains(&w) != ideal.contains(&self.algebra.unit(w)))
                        .map(|&w| (v, w)),
                );
            }
        }
        Ok(out)
    }

    /// Whether the direct weak-division test agrees with weak symmetry of
    /// both induced subgraphs.
    pub fn weak_division_matches_graph(&self) -> bool {
        let graph_says = [Part::Kernel, Part::Complement]
            .into_iter()
            .all(|p| self.subgraph(p).is_weakly_symmetric());
        self.check_weak_division().holds() == graph_says
    }

    /// Tests weak division directly: for `[e_i, u_j] = λ e_k`, `e_i` must lie
    /// in the ideal generated by `e_k`; for `[u_i, u_j] = λ u_k`, both
    /// factors must lie in the ideal generated by `u_k`.
    pub fn check_weak_division(&self) -> WeakDivisionReport {
        let mut ideals: HashMap<usize, Subspace> = HashMap::new();
        let mut ideal_of = |k: usize| -> Subspace {
            ideals
                .entry(k)
                .or_insert_with(|| generated_ideal(&self.algebra, &self.algebra.unit(k)).expect("unit vector"))
                .clone()
        };
        let mut violations = Vec::new();
        for ((i, j), (k, _)) in self.table.iter() {
            let factors: Vec<usize> = match (self.split.part_of(i), self.split.part_of(j), self.split.part_of(k)) {
                (Part::Kernel, Part::Complement, Part::Kernel) => vec![i],
                (Part::Complement, Part::Complement, Part::Complement) => vec![i, j],
                _ => continue,
            };
            let ideal = ideal_of(k);
            let mut seen = BTreeSet::new();
            for f in factors {
                if seen.insert(f) && !ideal.contains(&self.algebra.unit(f)) {
                    violations.push(WeakDivisionViolation {
                        left: i,
                        right: j,
                        product: k,
                        missing: f,
                    });
                }
            }
        }
        WeakDivisionReport { violations }
    }

    fn connectivity_failure(&self, part: Part) -> Option<StrongConnectivityFailure> {
        let g = self.subgraph(part);
        let to_basis = |v: usize| g.vertex(v).basis_index;
        if let Some((a, b)) = g.weak_symmetry_witness() {
            return Some(StrongConnectivityFailure::NotWeaklySymmetric {
                part,
                edge: (to_basis(a), to_basis(b)),
            });
        }
        let comps = g.undirected_components();
        if comps.count() > 1 {
            return Some(StrongConnectivityFailure::Disconnected {
                part,
                components: comps
                    .classes()
                    .into_iter()
                    .map(|c| c.into_iter().map(to_basis).collect())
                    .collect(),
            });
        }
        None
    }

    /// Decides minimality by strong connectivity of both induced subgraphs
    /// and cross-checks it against weak division plus connectivity, and
    /// against subset enumeration when `oracle_bound` admits the dimension.
    pub fn check_minimality(&self, oracle_bound: Option<usize>) -> Result<MinimalityVerdict, StructureError> {
        let kernel_graph = self.subgraph(Part::Kernel);
        let complement_graph = self.subgraph(Part::Complement);
        let via_graph = GraphRoute {
            kernel_strong: kernel_graph.is_strongly_connected(),
            complement_strong: complement_graph.is_strongly_connected(),
        };
        let via_division = DivisionRoute {
            weak_division: self.check_weak_division().holds(),
            kernel_connected: kernel_graph.is_connected(),
            complement_connected: complement_graph.is_connected(),
        };
        let via_oracle = match oracle_bound {
            Some(bound) if self.algebra.dim() <= bound => Some(self.minimality_oracle(bound)?),
            _ => None,
        };

        let graph_says = via_graph.kernel_strong && via_graph.complement_strong;
        let division_says =
            via_division.weak_division && via_division.kernel_connected && via_division.complement_connected;
        if graph_says != division_says || via_oracle.is_some_and(|o| o != graph_says) {
            return Err(StructureError::InternalInvariantViolation(format!(
                "minimality routes disagree: strong connectivity {graph_says}, weak division {division_says}, enumeration {via_oracle:?}"
            )));
        }
        let failures = [Part::Kernel, Part::Complement]
            .into_iter()
            .filter_map(|p| self.connectivity_failure(p))
            .collect();
        Ok(MinimalityVerdict {
            minimal: graph_says,
            via_graph,
            via_division,
            via_oracle,
            failures,
        })
    }

    /// Minimal per the definition: the only nonzero subset ideals are the
    /// kernel ideal and the whole algebra.
    pub fn minimality_oracle(&self, bound: usize) -> Result<bool, StructureError> {
        let ideals = self.enumerate_basis_ideals(bound)?;
        let all: Vec<usize> = (0..self.algebra.dim()).collect();
        let mut expected: BTreeSet<Vec<usize>> = [self.split.kernel().to_vec(), all].into_iter().collect();
        expected.remove(&Vec::new());
        let found: BTreeSet<Vec<usize>> = ideals.into_iter().filter(|s| !s.is_empty()).collect();
        Ok(found == expected)
    }

    /// Every subset `S` of the basis whose span is an ideal, including the
    /// empty set and the whole basis. Sorted by size, then lexicographically.
    ///
    /// An ideal with a multiplicative basis contained in the basis is the
    /// span of a subset, and the span of any subset that is an ideal
    /// inherits a multiplicative basis, so this lists exactly the ideals the
    /// minimality definition quantifies over.
    pub fn enumerate_basis_ideals(&self, bound: usize) -> Result<Vec<Vec<usize>>, StructureError> {
        let n = self.algebra.dim();
        if n > bound || n >= usize::BITS as usize {
            return Err(StructureError::DimensionTooLarge { dim: n, bound });
        }
        // reach[s]: coordinates appearing in some product with v_s on either side
        let mut reach = vec![0usize; n];
        for (s, mask) in reach.iter_mut().enumerate() {
            for j in 0..n {
                for v in [self.algebra.basis_product(s, j), self.algebra.basis_product(j, s)] {
                    for k in support(v) {
                        *mask |= 1 << k;
                    }
                }
            }
        }
        let field = self.algebra.field();
        let mut ideals = Vec::new();
        for subset in 0usize..(1 << n) {
            let closed = (0..n)
                .filter(|s| subset >> s & 1 == 1)
                .all(|s| reach[s] & !subset == 0);
            if !closed {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|s| subset >> s & 1 == 1).collect();
            let span = Subspace::coordinate(field, n, members.iter().copied());
            if !is_ideal(&self.algebra, &span)? {
                return Err(StructureError::InternalInvariantViolation(format!(
                    "support-closed subset {members:?} fails the ideal test"
                )));
            }
            ideals.push(members);
        }
        ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(ideals)
    }

    /// Checks, over every subset ideal, that strong connectivity of the
    /// kernel subgraph forces the kernel inside any ideal meeting the kernel
    /// part, and strong connectivity of the complement subgraph forces any
    /// ideal meeting the complement part to be everything.
    pub fn check_ideal_absorption_props(&self, bound: usize) -> Result<AbsorptionReport, StructureError> {
        let ideals = self.enumerate_basis_ideals(bound)?;
        let kernel_strong = self.subgraph(Part::Kernel).is_strongly_connected();
        let complement_strong = self.subgraph(Part::Complement).is_strongly_connected();
        let n = self.algebra.dim();
        let mut failures = Vec::new();
        for s in &ideals {
            let meets_kernel = s.iter().any(|&i| self.split.is_kernel(i));
            let meets_complement = s.iter().any(|&i| !self.split.is_kernel(i));
            let kernel_inside = self.split.kernel().iter().all(|k| s.binary_search(k).is_ok());
            let bad = (kernel_strong && meets_kernel && !kernel_inside)
                || (complement_strong && meets_complement && s.len() != n);
            if bad {
                failures.push(s.clone());
            }
        }
        Ok(AbsorptionReport {
            kernel_strong,
            complement_strong,
            ideals_checked: ideals.len(),
            failures,
        })
    }
}

/// Coordinates of `v` in terms of basis labels, e.g. `2e - f`.
pub fn format_combination(labels: &[String], v: &Vector) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            let m = magnitude.to_string();
            if m.contains('/') {
                out.push_str(&format!("({m})"));
            } else {
                out.push_str(&m);
            }
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn five_dim() -> MultiplicativeAlgebra {
        let a = LeibnizAlgebra::builder(Field::Rationals, ["e", "h", "f", "p", "q"])
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
            .unwrap();
        MultiplicativeAlgebra::infer(a).unwrap()
    }

    #[test]
    fn ideals_of_the_five_dimensional_algebra() {
        let m = five_dim();
        let a = m.algebra();
        let f = Field::Rationals;
        assert!(is_ideal(a, &Subspace::coordinate(f, 5, [3, 4])).unwrap());
        assert!(is_ideal(a, &Subspace::zero(f, 5)).unwrap());
        assert!(is_ideal(a, &Subspace::full(f, 5)).unwrap());
        assert!(!is_ideal(a, &Subspace::coordinate(f, 5, [0])).unwrap());
        assert!(is_ideal(a, &Subspace::zero(f, 2)).is_err());
        assert_eq!(
            m.enumerate_basis_ideals(16).unwrap(),
            vec![vec![], vec![3, 4], vec![0, 1, 2, 3, 4]]
        );
    }

    #[test]
    fn generated_ideal_of_p() {
        let m = five_dim();
        let a = m.algebra();
        let ideal = generated_ideal(a, &a.unit(3)).unwrap();
        assert_eq!(ideal, Subspace::coordinate(Field::Rationals, 5, [3, 4]));
        let zero = vec![Field::Rationals.zero(); 5];
        assert!(generated_ideal(a, &zero).unwrap().is_zero());
    }

    #[test]
    fn five_dim_is_minimal_and_of_weak_division() {
        let m = five_dim();
        assert!(m.check_weak_division().holds());
        let v = m.check_minimality(Some(16)).unwrap();
        assert!(v.minimal);
        assert_eq!(v.via_oracle, Some(true));
        assert!(v.failures.is_empty());
        assert!(m.check_ideal_absorption_props(16).unwrap().holds());
        assert_eq!(m.decompose().unwrap().parts.len(), 1);
        assert!(simplicity_necessary(m.graph()));
    }

    #[test]
    fn enumeration_bound() {
        let m = five_dim();
        assert_eq!(
            m.enumerate_basis_ideals(4),
            Err(StructureError::DimensionTooLarge { dim: 5, bound: 4 })
        );
        assert_eq!(m.check_minimality(Some(4)).unwrap().via_oracle, None);
    }

    #[test]
    fn abelian_decomposes_into_lines() {
        let f = Field::Rationals;
        let a = LeibnizAlgebra::abelian(f, vec!["a".into(), "b".into()]).unwrap();
        let m = MultiplicativeAlgebra::infer(a).unwrap();
        assert_eq!(m.decompose().unwrap().dims(), vec![1, 1]);
        assert_eq!(m.enumerate_basis_ideals(16).unwrap().len(), 4);
        assert!(m.check_weak_division().holds());
        assert!(m.check_ideal_absorption_props(16).unwrap().holds());
        // two isolated complement vertices: not strongly connected
        let v = m.check_minimality(Some(16)).unwrap();
        assert!(!v.minimal);
        assert!(matches!(
            v.failures.as_slice(),
            [StrongConnectivityFailure::Disconnected { part: Part::Complement, .. }]
        ));
    }

    #[test]
    fn combinations_render_like_algebra() {
        let labels: Vec<String> = ["e", "h", "f"].iter().map(|s| s.to_string()).collect();
        let f = Field::Rationals;
        let v = vec![f.from_i64(2), f.zero(), f.from_i64(-1)];
        assert_eq!(format_combination(&labels, &v), "2e - f");
        let w = vec![f.from_i64(-1), f.from_ratio(1, 2).unwrap(), f.zero()];
        assert_eq!(format_combination(&labels, &w), "-e + (1/2)h");
        assert_eq!(format_combination(&labels, &vec![f.zero(); 3]), "0");
    }
}
