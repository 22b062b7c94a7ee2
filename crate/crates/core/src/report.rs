//! Serializable analysis summaries. Field order is fixed by the struct
//! definitions and every list is sorted, so equal inputs give equal bytes.

use serde::Serialize;

use crate::algebra::Part;
use crate::graph::DiGraph;
use crate::structure::{
    Decomposition, MinimalityVerdict, MultiplicativeAlgebra, StrongConnectivityFailure, StructureError,
    WeakDivisionReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub kernel: Vec<String>,
    pub complement: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    pub total: usize,
    pub kernel: usize,
    pub complement: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub kernel: Option<[String; 2]>,
    pub complement: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub left: String,
    pub right: String,
    pub product: String,
    pub missing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakDivisionSummary {
    pub holds: bool,
    pub violations: Vec<ViolationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteSummary {
    pub kernel: bool,
    pub complement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionSummary {
    pub weak_division: bool,
    pub kernel_connected: bool,
    pub complement_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReport {
    NotWeaklySymmetric { part: &'static str, edge: [String; 2] },
    Disconnected { part: &'static str, components: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalitySummary {
    pub minimal: bool,
    pub strongly_connected: RouteSummary,
    pub weak_division_route: DivisionSummary,
    pub enumeration: Option<bool>,
    pub failures: Vec<FailureReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub field: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub split: SplitReport,
    pub edges: EdgeCounts,
    pub edge_list: Vec<[String; 2]>,
    pub components: Vec<Vec<String>>,
    pub weak_symmetry_witnesses: WitnessReport,
    pub weak_division: WeakDivisionSummary,
    pub minimality: MinimalitySummary,
    pub subset_ideals: Option<Vec<Vec<String>>>,
    /// Conventions that decided a verdict vacuously.
    pub notes: Vec<String>,
}

pub fn part_name(part: Part) -> &'static str {
    match part {
        Part::Kernel => "kernel",
        Part::Complement => "complement",
    }
}

struct Names<'a>(&'a MultiplicativeAlgebra);

impl Names<'_> {
    fn one(&self, i: usize) -> String {
        self.0.algebra().label(i).to_string()
    }

    fn many(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| self.one(i)).collect()
    }

    fn pair(&self, (a, b): (usize, usize)) -> [String; 2] {
        [self.one(a), self.one(b)]
    }
}

fn witness(g: &DiGraph) -> Option<[String; 2]> {
    g.weak_symmetry_witness()
        .map(|(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
}

pub fn weak_division_summary(m: &MultiplicativeAlgebra, report: &WeakDivisionReport) -> WeakDivisionSummary {
    let names = Names(m);
    WeakDivisionSummary {
        holds: report.holds(),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationReport {
                left: names.one(v.left),
                right: names.one(v.right),
                product: names.one(v.product),
                missing: names.one(v.missing),
            })
            .collect(),
    }
}

pub fn minimality_summary(m: &MultiplicativeAlgebra, verdict: &MinimalityVerdict) -> MinimalitySummary {
    let names = Names(m);
    MinimalitySummary {
        minimal: verdict.minimal,
        strongly_connected: RouteSummary {
            kernel: verdict.via_graph.kernel_strong,
            complement: verdict.via_graph.complement_strong,
        },
        weak_division_route: DivisionSummary {
            weak_division: verdict.via_division.weak_division,
            kernel_connected: verdict.via_division.kernel_connected,
            complement_connected: verdict.via_division.complement_connected,
        },
        enumeration: verdict.via_oracle,
        failures: verdict
            .failures
            .iter()
            .map(|f| match f {
                StrongConnectivityFailure::NotWeaklySymmetric { part, edge } => FailureReport::NotWeaklySymmetric {
                    part: part_name(*part),
                    edge: names.pair(*edge),
                },
                StrongConnectivityFailure::Disconnected { part, components } => FailureReport::Disconnected {
                    part: part_name(*part),
                    components: components.iter().map(|c| names.many(c)).collect(),
                },
            })
            .collect(),
    }
}

pub fn decomposition_parts(m: &MultiplicativeAlgebra, d: &Decomposition) -> Vec<Vec<String>> {
    let names = Names(m);
    d.parts.iter().map(|p| names.many(&p.members)).collect()
}

/// Full analysis. Subset ideals are enumerated only when the dimension is
/// within `enumeration_bound`.
pub fn analyze(m: &MultiplicativeAlgebra, enumeration_bound: usize) -> Result<AnalysisReport, StructureError> {
    let names = Names(m);
    let a = m.algebra();
    let (kg, cg) = (m.subgraph(Part::Kernel), m.subgraph(Part::Complement));
    let decomposition = m.decompose()?;
    let verdict = m.check_minimality(Some(enumeration_bound))?;
    let subset_ideals = if a.dim() <= enumeration_bound {
        Some(
            m.enumerate_basis_ideals(enumeration_bound)?
                .iter()
                .map(|s| names.many(s))
                .collect(),
        )
    } else {
        None
    };
    let mut notes = Vec::new();
    if a.dim() <= 1 {
        notes.push(format!("degenerate: dimension {}", a.dim()));
    }
    if m.split().kernel().is_empty() {
        notes.push("empty kernel: the kernel subgraph is empty and counts as strongly connected".into());
    }
    if subset_ideals.is_none() {
        notes.push(format!("subset enumeration skipped above dimension {enumeration_bound}"));
    }
    Ok(AnalysisReport {
        field: a.field().to_string(),
        dim: a.dim(),
        labels: a.labels().to_vec(),
        split: SplitReport {
            kernel: names.many(m.split().kernel()),
            complement: names.many(m.split().complement()),
        },
        edges: EdgeCounts {
            total: m.graph().edge_count(),
            kernel: kg.edge_count(),
            complement: cg.edge_count(),
        },
        edge_list: m.graph().edges().map(|e| names.pair(e)).collect(),
        components: decomposition_parts(m, &decomposition),
        weak_symmetry_witnesses: WitnessReport {
            kernel: witness(&kg),
            complement: witness(&cg),
        },
        weak_division: weak_division_summary(m, &m.check_weak_division()),
        minimality: minimality_summary(m, &verdict),
        subset_ideals,
        notes,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}
