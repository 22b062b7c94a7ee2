//! Directed graphs on basis vectors and the connectivity predicates used to
//! read algebraic structure off them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{BasisSplit, MultiplicativeTable, Part};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

/// A directed edge between local vertex positions.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    /// Position of the vertex in the basis of the algebra it came from.
    pub basis_index: usize,
    pub label: String,
    pub part: Part,
}

/// Simple digraph: loops allowed, parallel edges collapsed, edges kept in
/// lexicographic order of vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<Edge>,
}

impl DiGraph {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        DiGraph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    /// An unlabelled graph on `n` vertices named `0..n`, used for fuzzing
    /// the graph predicates on their own.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let vertices = (0..n)
            .map(|i| Vertex {
                basis_index: i,
                label: i.to_string(),
                part: Part::Complement,
            })
            .collect();
        let mut g = DiGraph::new(vertices);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Panics if either endpoint is not a vertex.
    pub fn add_edge(&mut self, from: usize, to: usize) -> bool {
        assert!(from < self.vertices.len() && to < self.vertices.len(), "edge endpoint out of range");
        self.edges.insert((from, to))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].label
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn position_of_label(&self, label: &str) -> Result<usize, GraphError> {
        self.vertices
            .iter()
            .position(|v| v.label == label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn position_of_basis(&self, basis_index: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.basis_index == basis_index)
    }

    /// Edges written with vertex labels, in edge order.
    pub fn labelled_edges(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(a, b)| (self.label(a).to_string(), self.label(b).to_string()))
            .collect()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (a, b) in self.edges() {
            adj[a].push(b);
        }
        adj
    }

    /// The vertex-induced subgraph on the vertices lying in `part`.
    pub fn induced_subgraph(&self, part: Part) -> DiGraph {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.vertices[v].part == part)
            .collect();
        self.induced_on(&keep)
    }

    /// The vertex-induced subgraph on `keep` (local positions, any order;
    /// the original order is preserved).
    pub fn induced_on(&self, keep: &[usize]) -> DiGraph {
        let mut new_pos = vec![None; self.vertex_count()];
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            new_pos[v] = Some(i);
        }
        let mut g = DiGraph::new(sorted.iter().map(|&v| self.vertices[v].clone()).collect());
        for (a, b) in self.edges() {
            if let (Some(x), Some(y)) = (new_pos[a], new_pos[b]) {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// Vertices reachable from `v` by a directed path, including `v` itself.
    pub fn reachable_from(&self, v: usize) -> Result<BTreeSet<usize>, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        let adj = self.successors();
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !std::mem::replace(&mut seen[b], true) {
                    queue.push_back(b);
                }
            }
        }
        Ok((0..self.vertex_count()).filter(|&i| seen[i]).collect())
    }

    /// Connected components of the underlying undirected graph.
    pub fn undirected_components(&self) -> ComponentPartition {
        let mut uf = UnionFind::new(self.vertex_count());
        for (a, b) in self.edges() {
            uf.union(a, b);
        }
        let roots: Vec<usize> = (0..self.vertex_count()).map(|v| uf.find(v)).collect();
        ComponentPartition::from_keys(ComponentKind::Undirected, &roots)
    }

    /// Strongly connected components (Tarjan, iterative).
    pub fn strong_components(&self) -> ComponentPartition {
        let n = self.vertex_count();
        let adj = self.successors();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut scc_of = vec![usize::MAX; n];
        let mut next_index = 0;
        let mut next_scc = 0;

        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // (vertex, next successor to visit)
            let mut call = vec![(root, 0usize)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut child)) = call.last_mut() {
                if let Some(&w) = adj[v].get(*child) {
                    *child += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        scc_of[w] = next_scc;
                        if w == v {
                            break;
                        }
                    }
                    next_scc += 1;
                }
            }
        }
        ComponentPartition::from_keys(ComponentKind::Strong, &scc_of)
    }

    /// An edge `(a, b)` with no directed path back from `b` to `a`, if any.
    /// Edges are scanned in order, so the witness is the smallest one.
    pub fn weak_symmetry_witness(&self) -> Option<Edge> {
        let scc = self.strong_components();
        self.edges().find(|&(a, b)| scc.component_of(a) != scc.component_of(b))
    }

    /// Every edge can be reversed by a directed path.
    pub fn is_weakly_symmetric(&self) -> bool {
        self.weak_symmetry_witness().is_none()
    }

    /// At most one strong component; true for the empty and singleton graphs.
    pub fn is_strongly_connected(&self) -> bool {
        self.strong_components().count() <= 1
    }

    /// At most one undirected component.
    pub fn is_connected(&self) -> bool {
        self.undirected_components().count() <= 1
    }

    /// One `a -> b` line per edge, in edge order.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{} -> {}", self.label(a), self.label(b));
        }
        out
    }

    /// Graphviz rendering. Kernel-part vertices are drawn as double circles.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_quote(name));
        let _ = writeln!(out, "  node [shape=circle];");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = match v.part {
                Part::Kernel => ", shape=doublecircle",
                Part::Complement => "",
            };
            let _ = writeln!(out, "  v{i} [label={}{shape}];", dot_quote(&v.label));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                q.push('\\');
                q.push(c);
            }
            '\n' => q.push_str("\\n"),
            _ => q.push(c),
        }
    }
    q.push('"');
    q
}

/// Edges of the graph associated with a multiplicative basis: every nonzero
/// product `[v_a, v_b] = λ v_k` contributes `(a, k)` and `(b, k)`.
pub fn build_graph(table: &MultiplicativeTable, split: &BasisSplit, labels: &[String]) -> DiGraph {
    let vertices = (0..table.dim())
        .map(|i| Vertex {
            basis_index: i,
            label: labels[i].clone(),
            part: split.part_of(i),
        })
        .collect();
    let mut g = DiGraph::new(vertices);
    for ((a, b), (k, _)) in table.iter() {
        g.add_edge(a, k);
        g.add_edge(b, k);
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Undirected,
    Strong,
}

/// A partition of the vertex set. Component ids are the smallest vertex
/// position in each class, so they do not depend on traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentPartition {
    kind: ComponentKind,
    assignment: Vec<usize>,
}

impl ComponentPartition {
    fn from_keys(kind: ComponentKind, keys: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let assignment = keys
            .iter()
            .enumerate()
            .map(|(v, k)| *first.entry(*k).or_insert(v))
            .collect();
        ComponentPartition { kind, assignment }
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn count(&self) -> usize {
        self.assignment.iter().enumerate().filter(|(v, c)| v == *c).count()
    }

    /// Members of every class, classes ordered by id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &c) in self.assignment.iter().enumerate() {
            classes.entry(c).or_default().push(v);
        }
        classes.into_values().collect()
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> DiGraph {
        DiGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Reachability by repeated squaring of the adjacency relation.
    fn closure(g: &DiGraph) -> Vec<Vec<bool>> {
        let n = g.vertex_count();
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in g.edges() {
            r[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r
    }

    #[test]
    fn directed_cycle_is_one_scc() {
        let g = cycle(3);
        assert_eq!(g.strong_components().count(), 1);
        assert!(g.is_strongly_connected());
        assert!(cycle(6).is_weakly_symmetric());
    }

    #[test]
    fn path_graph() {
        let g = DiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.strong_components().count(), 4);
        assert!(g.is_connected());
        assert!(!g.is_strongly_connected());
        assert_eq!(g.weak_symmetry_witness(), Some((0, 1)));
        assert_eq!(g.reachable_from(1).unwrap(), BTreeSet::from([1, 2, 3]));
        assert!(g.reachable_from(9).is_err());
    }

    #[test]
    fn edgeless_and_singletons() {
        let g = DiGraph::from_edges(3, []);
        assert_eq!(g.undirected_components().count(), 3);
        assert_eq!(g.reachable_from(2).unwrap(), BTreeSet::from([2]));
        assert!(DiGraph::from_edges(1, []).is_strongly_connected());
        assert!(DiGraph::from_edges(1, [(0, 0)]).is_strongly_connected());
        assert!(DiGraph::from_edges(0, []).is_strongly_connected());
        assert!(g.is_weakly_symmetric());
    }

    #[test]
    fn symmetric_graphs_are_weakly_symmetric() {
        let g = DiGraph::from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2), (2, 2)]);
        assert!(g.is_weakly_symmetric());
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn weakly_symmetric_figures() {
        // a hub shared by two triangles, and by three 2-cycles-through-hub
        let two = DiGraph::from_edges(7, [(0, 1), (1, 2), (2, 6), (6, 5), (5, 4), (4, 3), (3, 6), (6, 0)]);
        assert!(two.is_weakly_symmetric());
        let three = DiGraph::from_edges(7, [(0, 1), (1, 6), (6, 2), (2, 3), (3, 6), (6, 4), (4, 5), (5, 6), (6, 0)]);
        assert!(three.is_weakly_symmetric());
        assert!(three.is_strongly_connected());
    }

    #[test]
    fn component_ids_are_smallest_members() {
        let g = DiGraph::from_edges(5, [(4, 2), (3, 1)]);
        let c = g.undirected_components();
        assert_eq!(c.assignment(), &[0, 1, 2, 1, 2]);
        assert_eq!(c.classes(), vec![vec![0], vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn tarjan_matches_transitive_closure() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let n = (next() % 9) as usize + 1;
            let edges: Vec<Edge> = (0..n * n)
                .filter(|_| next() % 4 == 0)
                .map(|e| (e / n, e % n))
                .collect();
            let g = DiGraph::from_edges(n, edges);
            let r = closure(&g);
            let scc = g.strong_components();
            for a in 0..n {
                for b in 0..n {
                    let together = scc.component_of(a) == scc.component_of(b);
                    assert_eq!(together, r[a][b] && r[b][a]);
                }
                let reach: BTreeSet<usize> = (0..n).filter(|&b| r[a][b]).collect();
                assert_eq!(g.reachable_from(a).unwrap(), reach);
            }
        }
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let g = DiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 3)]);
        let h = g.induced_on(&[3, 2]);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        assert_eq!(h.vertex(0).basis_index, 2);
    }

    #[test]
    fn dot_output() {
        let mut g = DiGraph::new(vec![
            Vertex {
                basis_index: 0,
                label: "u".into(),
                part: Part::Complement,
            },
            Vertex {
                basis_index: 1,
                label: "e\"0".into(),
                part: Part::Kernel,
            },
        ]);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        assert_eq!(
            g.to_dot("G"),
            "digraph \"G\" {\n  node [shape=circle];\n  v0 [label=\"u\"];\n  v1 [label=\"e\\\"0\", shape=doublecircle];\n  v0 -> v1;\n}\n"
        );
        assert_eq!(g.edge_list(), "u -> e\"0\n");
    }
}
