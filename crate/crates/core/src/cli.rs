//! The `leibniz` command line.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal invariant violated,
//! 3 the checked property is false.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraError, LeibnizAlgebra, Part};
use crate::corpus::{self, CorpusError, Params, ENTRIES};
use crate::equivalence::{
    automorphism_witness, decomposition_correspondence, induced_graph_isomorphism, maps_standard_basis,
    EquivalenceError,
};
use crate::graph::DiGraph;
use crate::io::{algebra_to_json, parse_algebra, parse_map, FormatError};
use crate::report::{self, part_name, to_json};
use crate::scalar::Field;
use crate::structure::{
    format_combination, generated_ideal, MultiplicativeAlgebra, StructureError, DEFAULT_ENUMERATION_BOUND,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_FALSE: i32 = 3;

pub const ENUM_BOUND_ENV: &str = "LEIBNIZ_ENUM_BOUND";

#[derive(Debug, Parser)]
#[command(name = "leibniz", version, about = "Analyze Leibniz algebras with multiplicative bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartArg {
    Kernel,
    Complement,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Part {
        match p {
            PartArg::Kernel => Part::Kernel,
            PartArg::Complement => Part::Complement,
        }
    }
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Algebra document (JSON)
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, clap::Args)]
struct Bound {
    /// Largest dimension for which basis subsets are enumerated
    #[arg(long = "enum-bound", env = ENUM_BOUND_ENV, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    enum_bound: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the document and print the full analysis
    Validate {
        #[command(flatten)]
        io: Input,
        #[command(flatten)]
        bound: Bound,
    },
    /// Print the associated graph
    Graph {
        #[command(flatten)]
        io: Input,
    },
    /// Print the subgraph induced on one part of the split
    Subgraph {
        #[command(flatten)]
        io: Input,
        #[arg(long, value_enum)]
        part: PartArg,
    },
    /// Decompose into orthogonal ideals along graph components
    Decompose {
        #[command(flatten)]
        io: Input,
    },
    /// Ideal generated by a basis vector, or all ideals spanned by basis subsets
    Ideal {
        #[command(flatten)]
        io: Input,
        /// Basis label generating the ideal
        #[arg(long)]
        of: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Decide minimality; exit 3 when not minimal
    Minimal {
        #[command(flatten)]
        io: Input,
        #[command(flatten)]
        bound: Bound,
    },
    /// Check weak division; exit 3 when it fails
    Weakdiv {
        #[command(flatten)]
        io: Input,
    },
    /// Check a linear map against the algebra; exit 3 unless every check holds
    Equiv {
        #[command(flatten)]
        io: Input,
        /// Map document (JSON), columns are images of basis vectors
        map: PathBuf,
    },
    /// Built-in examples
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Cross-check the structural results on random instances
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = corpus::MAX_FUZZ_DIM)]
        dim: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an entry as an algebra document
    Export {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        /// `Q` or a prime
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Equivalence(EquivalenceError::InternalInvariantViolation(m)) => {
                Failure { code: EXIT_INTERNAL, message: m }
            }
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::InternalInvariantViolation(m) => Failure {
                code: EXIT_INTERNAL,
                message: format!("internal invariant violated: {m}"),
            },
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<EquivalenceError> for Failure {
    fn from(e: EquivalenceError) -> Self {
        match e {
            EquivalenceError::InternalInvariantViolation(_) => Failure {
                code: EXIT_INTERNAL,
                message: e.to_string(),
            },
            other => Failure::input(other.to_string()),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<MultiplicativeAlgebra, Failure> {
    let text = read(path)?;
    let (algebra, split) = parse_algebra(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(MultiplicativeAlgebra::new(algebra, split)?)
}

fn reject_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(Failure::input("--format dot is only available for graph and subgraph"));
    }
    Ok(())
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    if text == "Q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = text
        .parse()
        .map_err(|_| Failure::input(format!("field `{text}` is neither Q nor a prime")))?;
    Field::prime(p).map_err(|e| Failure::input(e.to_string()))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate { io, bound } => validate(&io, bound.enum_bound),
        Command::Graph { io } => {
            let m = load(&io.input)?;
            Ok((render_graph(m.graph(), "gamma", io.format), EXIT_OK))
        }
        Command::Subgraph { io, part } => {
            let m = load(&io.input)?;
            let part = Part::from(part);
            Ok((render_graph(&m.subgraph(part), part_name(part), io.format), EXIT_OK))
        }
        Command::Decompose { io } => decompose(&io),
        Command::Ideal { io, of, bound } => ideal(&io, of.as_deref(), bound.enum_bound),
        Command::Minimal { io, bound } => minimal(&io, bound.enum_bound),
        Command::Weakdiv { io } => weakdiv(&io),
        Command::Equiv { io, map } => equiv(&io, &map),
        Command::Corpus { action } => match action {
            CorpusAction::List { format } => corpus_list(format),
            CorpusAction::Export { name, n, field } => {
                let field = parse_field(&field)?;
                let (a, s) = corpus::build_example(&name, &Params { n, field })?;
                Ok((algebra_to_json(&a, Some(&s)), EXIT_OK))
            }
        },
        Command::Fuzz { seed, trials, dim, p, format } => fuzz(seed, trials, dim, p, format),
    }
}

fn validate(io: &Input, bound: usize) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let r = report::analyze(&m, bound)?;
    let text = match io.format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "field: {}", r.field);
            let _ = writeln!(s, "dimension: {}", r.dim);
            let _ = writeln!(s, "kernel: {}", r.split.kernel.join(" "));
            let _ = writeln!(s, "complement: {}", r.split.complement.join(" "));
            let _ = writeln!(s, "nonzero products: {}", m.table().len());
            let _ = writeln!(
                s,
                "edges: {} (kernel {}, complement {})",
                r.edges.total, r.edges.kernel, r.edges.complement
            );
            let _ = writeln!(s, "components: {}", r.components.len());
            let _ = writeln!(s, "weak division: {}", r.weak_division.holds);
            let _ = writeln!(s, "minimal: {}", r.minimality.minimal);
            s
        }
    };
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct VertexJson<'a> {
    label: &'a str,
    part: &'static str,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: Vec<VertexJson<'a>>,
    edges: Vec<(String, String)>,
}

fn render_graph(g: &DiGraph, name: &str, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(name),
        Format::Text => g.edge_list(),
        Format::Json => to_json(&GraphJson {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexJson { label: &v.label, part: part_name(v.part) })
                .collect(),
            edges: g.labelled_edges(),
        }),
    }
}

#[derive(Serialize)]
struct PartJson {
    dim: usize,
    labels: Vec<String>,
}

fn decompose(io: &Input) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let d = m.decompose()?;
    for part in &d.parts {
        let (sub, split) = m.restrict_to(part)?;
        let sub = LeibnizAlgebra::new(sub.field(), sub.labels().to_vec(), sub.tensor().to_vec()).map_err(|e| {
            Failure { code: EXIT_INTERNAL, message: format!("a component is not a Leibniz algebra: {e}") }
        })?;
        if !sub.validate_split(&split) {
            return Err(Failure {
                code: EXIT_INTERNAL,
                message: format!("component of {} does not inherit the split", m.algebra().label(part.id)),
            });
        }
    }
    let parts = report::decomposition_parts(&m, &d);
    let text = match io.format {
        Format::Json => to_json(&serde_json::json!({
            "parts": parts.into_iter().map(|labels| PartJson { dim: labels.len(), labels }).collect::<Vec<_>>()
        })),
        _ => parts
            .iter()
            .enumerate()
            .map(|(i, p)| format!("part {}: {}\n", i + 1, p.join(" ")))
            .collect(),
    };
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct GeneratedIdealJson {
    generator: String,
    dim: usize,
    basis: Vec<String>,
    basis_members: Vec<String>,
    reachable: Vec<String>,
}

fn ideal(io: &Input, of: Option<&str>, bound: usize) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let a = m.algebra();
    let Some(label) = of else {
        let ideals = m.enumerate_basis_ideals(bound)?;
        let named: Vec<Vec<String>> = ideals
            .iter()
            .map(|s| s.iter().map(|&i| a.label(i).to_string()).collect())
            .collect();
        let text = match io.format {
            Format::Json => to_json(&serde_json::json!({ "ideals": named })),
            _ => named.iter().map(|s| format!("{{{}}}\n", s.join(", "))).collect(),
        };
        return Ok((text, EXIT_OK));
    };
    let v = a.index_of(label)?;
    let ideal = generated_ideal(a, &a.unit(v))?;
    let part = m.split().part_of(v);
    let reach = m.reachability_members(part, v)?;
    let same_part: Vec<usize> = m
        .split()
        .indices(part)
        .iter()
        .copied()
        .filter(|&w| ideal.contains(&a.unit(w)))
        .collect();
    if same_part != reach.iter().copied().collect::<Vec<_>>() {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("reachability from {label} disagrees with the ideal it generates"),
        });
    }
    let names = |xs: &mut dyn Iterator<Item = usize>| xs.map(|i| a.label(i).to_string()).collect::<Vec<_>>();
    let r = GeneratedIdealJson {
        generator: label.to_string(),
        dim: ideal.rank(),
        basis: ideal.rows().iter().map(|row| format_combination(a.labels(), row)).collect(),
        basis_members: names(&mut (0..a.dim()).filter(|&w| ideal.contains(&a.unit(w)))),
        reachable: names(&mut reach.iter().copied()),
    };
    let text = match io.format {
        Format::Json => to_json(&r),
        _ => format!(
            "ideal generated by {}: dimension {}\nbasis: {}\nbasis vectors inside: {}\nreachable in {} subgraph: {}\n",
            r.generator,
            r.dim,
            r.basis.join(", "),
            r.basis_members.join(" "),
            part_name(part),
            r.reachable.join(" ")
        ),
    };
    Ok((text, EXIT_OK))
}

fn minimal(io: &Input, bound: usize) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let verdict = m.check_minimality(Some(bound))?;
    let r = report::minimality_summary(&m, &verdict);
    let text = match io.format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "minimal: {}", r.minimal);
            let _ = writeln!(
                s,
                "strongly connected: kernel {}, complement {}",
                r.strongly_connected.kernel, r.strongly_connected.complement
            );
            let d = &r.weak_division_route;
            let _ = writeln!(
                s,
                "weak division {}, connected: kernel {}, complement {}",
                d.weak_division, d.kernel_connected, d.complement_connected
            );
            match r.enumeration {
                Some(e) => {
                    let _ = writeln!(s, "subset enumeration: {e}");
                }
                None => {
                    let _ = writeln!(s, "subset enumeration: skipped (dimension above {bound})");
                }
            }
            for f in &r.failures {
                let _ = match f {
                    report::FailureReport::NotWeaklySymmetric { part, edge } => {
                        writeln!(s, "{part} subgraph: no path back along {} -> {}", edge[0], edge[1])
                    }
                    report::FailureReport::Disconnected { part, components } => {
                        let cs: Vec<String> = components.iter().map(|c| format!("{{{}}}", c.join(", "))).collect();
                        writeln!(s, "{part} subgraph: disconnected, components {}", cs.join(" "))
                    }
                };
            }
            s
        }
    };
    Ok((text, if verdict.minimal { EXIT_OK } else { EXIT_FALSE }))
}

fn weakdiv(io: &Input) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let wd = m.check_weak_division();
    if !m.weak_division_matches_graph() {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: "weak division disagrees with weak symmetry of the induced subgraphs".into(),
        });
    }
    let r = report::weak_division_summary(&m, &wd);
    let text = match io.format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = format!("weak division: {}\n", r.holds);
            for v in &r.violations {
                let _ = writeln!(
                    s,
                    "[{}, {}] -> {}: {} is not in the ideal generated by {}",
                    v.left, v.right, v.product, v.missing, v.product
                );
            }
            s
        }
    };
    Ok((text, if r.holds { EXIT_OK } else { EXIT_FALSE }))
}

#[derive(Serialize)]
struct EquivJson {
    automorphism: bool,
    witness: Option<[String; 2]>,
    basis_bijection: Option<Vec<[String; 2]>>,
    graph_isomorphism: Option<bool>,
    decomposition_equivalence: Option<bool>,
    part_bijection: Option<Vec<usize>>,
}

fn equiv(io: &Input, map: &Path) -> Outcome {
    reject_dot(io.format)?;
    let m = load(&io.input)?;
    let a = m.algebra();
    let f = parse_map(&read(map)?, a.field()).map_err(|e| Failure::input(format!("{}: {e}", map.display())))?;
    let witness = automorphism_witness(a, &f)?;
    let label = |i: usize| a.label(i).to_string();
    let bijection = maps_standard_basis(&f);
    let (mut iso, mut deq, mut sigma) = (None, None, None);
    if let (None, Some(bij)) = (witness, &bijection) {
        // f permutes the basis, so both graphs live on the same labelled basis
        let d = m.decompose()?;
        iso = Some(induced_graph_isomorphism(m.graph(), m.graph(), bij)?);
        sigma = decomposition_correspondence(&d, &d, bij)?;
        deq = Some(sigma.is_some());
        if iso != Some(true) || deq != Some(true) {
            return Err(Failure {
                code: EXIT_INTERNAL,
                message: "a basis-permuting automorphism failed to induce a graph isomorphism".into(),
            });
        }
    }
    let r = EquivJson {
        automorphism: witness.is_none(),
        witness: witness.map(|(i, j)| [label(i), label(j)]),
        basis_bijection: bijection
            .as_ref()
            .map(|b| b.iter().enumerate().map(|(i, &j)| [label(i), label(j)]).collect()),
        graph_isomorphism: iso,
        decomposition_equivalence: deq,
        part_bijection: sigma,
    };
    let holds = r.automorphism && r.basis_bijection.is_some();
    let text = match io.format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = String::new();
            match &r.witness {
                None => s.push_str("automorphism: true\n"),
                Some([x, y]) => {
                    let _ = writeln!(s, "automorphism: false, [f({x}), f({y})] != f([{x}, {y}])");
                }
            }
            match &r.basis_bijection {
                Some(b) => {
                    let pairs: Vec<String> = b.iter().map(|[x, y]| format!("{x}->{y}")).collect();
                    let _ = writeln!(s, "basis to basis: {}", pairs.join(" "));
                }
                None => s.push_str("basis to basis: false\n"),
            }
            if let (Some(i), Some(d)) = (r.graph_isomorphism, r.decomposition_equivalence) {
                let _ = writeln!(s, "graph isomorphism: {i}");
                let _ = writeln!(s, "decomposition equivalence: {d}");
            }
            s
        }
    };
    Ok((text, if holds { EXIT_OK } else { EXIT_FALSE }))
}

#[derive(Serialize)]
struct EntryJson {
    name: &'static str,
    param: Option<String>,
    fields: &'static str,
    provenance: &'static str,
    summary: &'static str,
}

fn corpus_list(format: Format) -> Outcome {
    reject_dot(format)?;
    let rows: Vec<EntryJson> = ENTRIES
        .iter()
        .map(|e| EntryJson {
            name: e.name,
            param: e.param.map(|p| {
                format!("n >= {}{}, default {}", p.min, if p.odd_only { " odd" } else { "" }, p.default)
            }),
            fields: e.fields.describe(),
            provenance: e.provenance.as_str(),
            summary: e.summary,
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&rows),
        _ => rows
            .iter()
            .map(|r| {
                format!(
                    "{:<19} {:<26} {:<21} {:<11} {}\n",
                    r.name,
                    r.param.as_deref().unwrap_or("-"),
                    r.fields,
                    r.provenance,
                    r.summary
                )
            })
            .collect(),
    };
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct FuzzJson {
    seed: u64,
    trials: u64,
    dim: usize,
    field: String,
    accepted: usize,
    nonzero_tables: usize,
    minimal: usize,
    weak_division: usize,
    mismatches: Vec<String>,
}

fn fuzz(seed: u64, trials: u64, dim: usize, p: u64, format: Format) -> Outcome {
    reject_dot(format)?;
    if dim == 0 || dim > corpus::MAX_FUZZ_DIM {
        return Err(Failure::input(format!("--dim must be between 1 and {}", corpus::MAX_FUZZ_DIM)));
    }
    let field = Field::prime(p).map_err(|e| Failure::input(e.to_string()))?;
    let batch = corpus::fuzz_batch(seed, usize::MAX, dim, field, trials);
    let mut r = FuzzJson {
        seed,
        trials,
        dim,
        field: field.to_string(),
        accepted: batch.len(),
        nonzero_tables: 0,
        minimal: 0,
        weak_division: 0,
        mismatches: Vec::new(),
    };
    for (s, a, split) in batch {
        r.nonzero_tables += usize::from(a.tensor().iter().any(|c| !c.is_zero()));
        let m = MultiplicativeAlgebra::new(a, split)?;
        match m.check_minimality(Some(DEFAULT_ENUMERATION_BOUND)) {
            Ok(v) => r.minimal += usize::from(v.minimal),
            Err(e) => r.mismatches.push(format!("seed {s}: {e}")),
        }
        if !m.reachability_mismatches()?.is_empty() {
            r.mismatches.push(format!("seed {s}: reachability differs from ideal generation"));
        }
        if !m.weak_division_matches_graph() {
            r.mismatches.push(format!("seed {s}: weak division differs from weak symmetry"));
        }
        r.weak_division += usize::from(m.check_weak_division().holds());
        let g = m.graph();
        if g.is_strongly_connected() != (g.is_connected() && g.is_weakly_symmetric()) {
            r.mismatches.push(format!("seed {s}: strong connectivity differs from connected and weakly symmetric"));
        }
    }
    let code = if r.mismatches.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
    let text = match format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = format!(
                "seeds {}..{} over {} up to dimension {}: {} accepted, {} with nonzero products\n",
                seed,
                seed.wrapping_add(trials),
                r.field,
                dim,
                r.accepted,
                r.nonzero_tables
            );
            let _ = writeln!(s, "minimal: {}, weak division: {}", r.minimal, r.weak_division);
            let _ = writeln!(s, "mismatches: {}", r.mismatches.len());
            for x in &r.mismatches {
                let _ = writeln!(s, "  {x}");
            }
            s
        }
    };
    Ok((text, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("leibniz").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_flags_are_input_errors() {
        let (code, _, err) = run_args(&["graph", "x.json", "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--bogus"));
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("minimal"));
    }

    #[test]
    fn missing_file() {
        let (code, _, err) = run_args(&["validate", "/nonexistent/algebra.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.starts_with("error: /nonexistent/algebra.json"));
    }

    #[test]
    fn corpus_export_and_list() {
        let (code, out, _) = run_args(&["corpus", "export", "ud_component"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"u_d\""));
        let (code, _, err) = run_args(&["corpus", "export", "odd_family", "--n", "4"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("odd"));
        let (code, out, _) = run_args(&["corpus", "list"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), ENTRIES.len());
    }

    #[test]
    fn fuzz_reports_no_mismatches() {
        let (code, out, _) = run_args(&["fuzz", "--trials", "300", "--dim", "3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("mismatches: 0"));
        assert_eq!(run_args(&["fuzz", "--dim", "9"]).0, EXIT_INPUT);
    }
}
