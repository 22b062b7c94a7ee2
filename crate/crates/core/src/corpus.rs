//! Built-in example algebras, direct sums, and seeded random instances.
//!
//! Every entry is built from explicit structure constants and checked
//! against the Leibniz identity at construction. The expected facts attached
//! to each entry are hand-derived and kept separate from the analysis code so
//! golden tests compare two independent sources.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, BasisSplit, LeibnizAlgebra};
use crate::equivalence::{change_basis, EquivalenceError, LinearMap};
use crate::linalg::Vector;
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("`{name}` is not available over {field}")]
    FieldCharUnsupported { name: String, field: Field },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
}

/// Which fields an entry can be built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSupport {
    Any,
    OddCharacteristic,
    RationalsOnly,
}

impl FieldSupport {
    pub fn allows(self, field: Field) -> bool {
        match self {
            FieldSupport::Any => true,
            FieldSupport::OddCharacteristic => field.characteristic() != 2,
            FieldSupport::RationalsOnly => field == Field::Rationals,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            FieldSupport::Any => "any field",
            FieldSupport::OddCharacteristic => "characteristic not 2",
            FieldSupport::RationalsOnly => "Q only",
        }
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Stated alongside the published example.
    Published,
    /// Worked out by hand from the structure constants.
    Derived,
    /// Follows from a convention adopted here.
    Convention,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Convention => "convention",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactValue {
    KernelLabels(Vec<String>),
    EdgeCount(usize),
    Components(usize),
    Minimal(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub value: FactValue,
    pub provenance: Provenance,
}

/// Parameter range for entries taking `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpec {
    pub min: usize,
    pub odd_only: bool,
    pub default: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub param: Option<ParamSpec>,
    pub fields: FieldSupport,
    /// Where the structure constants themselves come from.
    pub provenance: Provenance,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "five_dim",
        summary: "sl2 acting on a 2-dim kernel, basis e,h,f,p,q",
        param: None,
        fields: FieldSupport::OddCharacteristic,
        provenance: Provenance::Published,
    },
    CorpusEntry {
        name: "five_dim_alt",
        summary: "five_dim in the basis e+f, e-f, h, p+q, p-q",
        param: None,
        fields: FieldSupport::OddCharacteristic,
        provenance: Provenance::Published,
    },
    CorpusEntry {
        name: "filiform",
        summary: "model filiform algebra [e_i,e_1]=e_(i+1) for 1<=i<n",
        param: Some(ParamSpec { min: 3, odd_only: false, default: 4 }),
        fields: FieldSupport::Any,
        provenance: Provenance::Convention,
    },
    CorpusEntry {
        name: "filiform_truncated",
        summary: "filiform products for 2<=i<n only, with the computed kernel e_3..e_n",
        param: Some(ParamSpec { min: 3, odd_only: false, default: 4 }),
        fields: FieldSupport::Any,
        provenance: Provenance::Published,
    },
    CorpusEntry {
        name: "odd_family",
        summary: "sl2 acting on an (n-3)-dim kernel, odd n >= 5",
        param: Some(ParamSpec { min: 5, odd_only: true, default: 5 }),
        fields: FieldSupport::RationalsOnly,
        provenance: Provenance::Published,
    },
    CorpusEntry {
        name: "ud_component",
        summary: "[u_d,u_d]=e_0, [e_0,u_d]=e_1",
        param: None,
        fields: FieldSupport::Any,
        provenance: Provenance::Published,
    },
    CorpusEntry {
        name: "ud_plus_five",
        summary: "ud_component + five_dim",
        param: None,
        fields: FieldSupport::OddCharacteristic,
        provenance: Provenance::Derived,
    },
    CorpusEntry {
        name: "five_plus_five",
        summary: "five_dim + five_dim",
        param: None,
        fields: FieldSupport::OddCharacteristic,
        provenance: Provenance::Derived,
    },
];

pub fn entry(name: &str) -> Result<&'static CorpusEntry, CorpusError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::UnknownExample(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub n: Option<usize>,
    pub field: Field,
}

impl Default for Params {
    fn default() -> Self {
        Params { n: None, field: Field::Rationals }
    }
}

impl Params {
    pub fn with_n(n: usize) -> Self {
        Params { n: Some(n), ..Params::default() }
    }

    pub fn over(field: Field) -> Self {
        Params { n: None, field }
    }
}

fn check_params(e: &CorpusEntry, params: &Params) -> Result<usize, CorpusError> {
    if !e.fields.allows(params.field) {
        return Err(CorpusError::FieldCharUnsupported {
            name: e.name.to_string(),
            field: params.field,
        });
    }
    let bad = |reason: String| CorpusError::BadParams { name: e.name.to_string(), reason };
    match (e.param, params.n) {
        (None, None) => Ok(0),
        (None, Some(_)) => Err(bad("takes no parameter n".into())),
        (Some(spec), n) => {
            let n = n.unwrap_or(spec.default);
            if n < spec.min {
                return Err(bad(format!("n must be at least {}", spec.min)));
            }
            if spec.odd_only && n % 2 == 0 {
                return Err(bad("n must be odd".into()));
            }
            Ok(n)
        }
    }
}

/// Builds a registry entry with its multiplicative basis split.
pub fn build_example(name: &str, params: &Params) -> Result<(LeibnizAlgebra, BasisSplit), CorpusError> {
    let e = entry(name)?;
    let n = check_params(e, params)?;
    let field = params.field;
    let built = match e.name {
        "five_dim" => five_dim(field)?,
        "five_dim_alt" => {
            let (a, _) = five_dim(field)?;
            let b = change_basis(&a, &alternate_basis_map(field), None)?;
            let split = BasisSplit::from_labels(&b, &["p+q", "p-q"])?;
            (b, split)
        }
        "filiform" => filiform(field, n, true)?,
        "filiform_truncated" => filiform(field, n, false)?,
        "odd_family" => odd_family(n)?,
        "ud_component" => ud_component(field)?,
        "ud_plus_five" => {
            let (a, sa) = ud_component(field)?;
            let (b, sb) = five_dim(field)?;
            direct_sum(&a, &sa, &b, &sb)?
        }
        "five_plus_five" => {
            let (a, sa) = five_dim(field)?;
            direct_sum(&a, &sa, &a, &sa)?
        }
        other => unreachable!("registry entry {other} has no builder"),
    };
    Ok(built)
}

fn five_dim(field: Field) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    let a = LeibnizAlgebra::builder(field, ["e", "h", "f", "p", "q"])
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
        .build()?;
    let split = BasisSplit::from_labels(&a, &["p", "q"])?;
    Ok((a, split))
}

/// `with_square` adds `[e_1,e_1] = e_2`, which is what puts `e_2` in the
/// kernel ideal.
fn filiform(field: Field, n: usize, with_square: bool) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    let labels: Vec<String> = (1..=n).map(|i| format!("e_{i}")).collect();
    let first = if with_square { 1 } else { 2 };
    let mut b = LeibnizAlgebra::builder(field, labels.clone());
    for i in first..n {
        b = b.int(&labels[i - 1], "e_1", &labels[i], 1);
    }
    let a = b.build()?;
    let kernel_start = if with_square { 1 } else { 2 };
    let split = BasisSplit::new(n, kernel_start..n)?;
    Ok((a, split))
}

fn odd_family(n: usize) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    let m = n - 3;
    let x: Vec<String> = (0..m).map(|k| format!("x_{k}")).collect();
    let labels = ["e", "h", "f"].into_iter().map(String::from).chain(x.iter().cloned());
    let mut b = LeibnizAlgebra::builder(Field::Rationals, labels)
        .int("e", "f", "h", 1)
        .int("f", "e", "h", -1)
        .int("e", "h", "e", 2)
        .int("h", "e", "e", -2)
        .int("h", "f", "f", 2)
        .int("f", "h", "f", -2);
    let (n, m) = (n as i64, m as i64);
    for k in 0..m {
        let xk = &x[k as usize];
        if k >= 1 {
            b = b.int(xk, "e", &x[k as usize - 1], k * (k + 3 - n));
        }
        b = b.int(xk, "h", xk, n - 4 - 2 * k);
        if k + 1 < m {
            b = b.int(xk, "f", &x[k as usize + 1], 1);
        }
    }
    let a = b.build()?;
    let split = BasisSplit::new(a.dim(), 3..a.dim())?;
    Ok((a, split))
}

fn ud_component(field: Field) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    let a = LeibnizAlgebra::builder(field, ["u_d", "e_0", "e_1"])
        .int("u_d", "u_d", "e_0", 1)
        .int("e_0", "u_d", "e_1", 1)
        .build()?;
    let split = BasisSplit::from_labels(&a, &["e_0", "e_1"])?;
    Ok((a, split))
}

/// Columns `e+f, e-f, h, p+q, p-q` in the coordinates of `e,h,f,p,q`.
pub fn alternate_basis_map(field: Field) -> LinearMap {
    let col = |xs: [i64; 5]| -> Vector { xs.iter().map(|&x| field.from_i64(x)).collect() };
    LinearMap::from_columns(
        field,
        vec![
            col([1, 0, 1, 0, 0]),
            col([1, 0, -1, 0, 0]),
            col([0, 1, 0, 0, 0]),
            col([0, 0, 0, 1, 1]),
            col([0, 0, 0, 1, -1]),
        ],
    )
    .expect("square map")
}

/// Permutation exchanging `v_i` and `v_{i+block}` for `i < block`.
pub fn block_swap(block: usize) -> Vec<usize> {
    (0..2 * block).map(|i| (i + block) % (2 * block)).collect()
}

/// Block-diagonal sum. Labels of `b` that clash with earlier labels get
/// primes appended until unique.
pub fn direct_sum(
    a: &LeibnizAlgebra,
    split_a: &BasisSplit,
    b: &LeibnizAlgebra,
    split_b: &BasisSplit,
) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    if a.field() != b.field() {
        return Err(ScalarError::FieldMismatch { left: a.field(), right: b.field() }.into());
    }
    for (alg, split) in [(a, split_a), (b, split_b)] {
        if split.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: alg.dim(), found: split.dim() });
        }
    }
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut l = l.clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    let mut tensor = vec![field.zero(); n * n * n];
    for (alg, off) in [(a, 0), (b, da)] {
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in alg.basis_product_support(i, j) {
                    tensor[((i + off) * n + j + off) * n + k + off] = c.clone();
                }
            }
        }
    }
    let summed = LeibnizAlgebra::new(field, labels, tensor)?;
    let kernel = split_a
        .kernel()
        .iter()
        .copied()
        .chain(split_b.kernel().iter().map(|&k| k + da));
    let split = BasisSplit::new(n, kernel)?;
    Ok((summed, split))
}

/// Hand-derived expected facts for an entry.
pub fn expected_facts(name: &str, params: &Params) -> Result<Vec<Fact>, CorpusError> {
    use FactValue::*;
    use Provenance::*;
    let e = entry(name)?;
    let n = check_params(e, params)?;
    let labels = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let fact = |value, provenance| Fact { value, provenance };
    let facts = match e.name {
        "five_dim" => vec![
            fact(KernelLabels(labels(&["p", "q"])), Published),
            fact(EdgeCount(14), Published),
            fact(Components(1), Derived),
            fact(Minimal(true), Published),
        ],
        "five_dim_alt" => vec![
            fact(KernelLabels(labels(&["p+q", "p-q"])), Derived),
            fact(EdgeCount(16), Published),
            fact(Components(1), Derived),
            fact(Minimal(true), Derived),
        ],
        "filiform" => vec![
            fact(KernelLabels((2..=n).map(|i| format!("e_{i}")).collect()), Published),
            fact(EdgeCount(2 * n - 3), Derived),
            fact(Components(1), Derived),
            fact(Minimal(false), Derived),
        ],
        "filiform_truncated" => vec![
            fact(KernelLabels((3..=n).map(|i| format!("e_{i}")).collect()), Derived),
            fact(EdgeCount(2 * (n - 2)), Published),
            fact(Components(1), Derived),
            fact(Minimal(false), Derived),
        ],
        "odd_family" => vec![
            fact(KernelLabels((0..n - 3).map(|k| format!("x_{k}")).collect()), Published),
            fact(EdgeCount(6 * (n - 3) + 2), Derived),
            fact(Components(1), Derived),
            fact(Minimal(true), Published),
        ],
        "ud_component" => vec![
            fact(KernelLabels(labels(&["e_0", "e_1"])), Published),
            fact(EdgeCount(3), Published),
            fact(Components(1), Published),
            fact(Minimal(false), Derived),
        ],
        "ud_plus_five" => vec![
            fact(KernelLabels(labels(&["e_0", "e_1", "p", "q"])), Derived),
            fact(EdgeCount(17), Derived),
            fact(Components(2), Derived),
            fact(Minimal(false), Derived),
        ],
        "five_plus_five" => vec![
            fact(KernelLabels(labels(&["p", "q", "p'", "q'"])), Derived),
            fact(EdgeCount(28), Derived),
            fact(Components(2), Derived),
            fact(Minimal(false), Derived),
        ],
        other => unreachable!("registry entry {other} has no facts"),
    };
    Ok(facts)
}

/// The parameter choices exercised by golden tests and `corpus export`.
pub fn standard_instances() -> Vec<(&'static str, Params)> {
    let mut out = vec![("five_dim", Params::default()), ("five_dim_alt", Params::default())];
    out.extend((3..=8).map(|n| ("filiform", Params::with_n(n))));
    out.extend((3..=6).map(|n| ("filiform_truncated", Params::with_n(n))));
    out.extend([5, 7, 9].map(|n| ("odd_family", Params::with_n(n))));
    out.extend(
        ["ud_component", "ud_plus_five", "five_plus_five"].map(|name| (name, Params::default())),
    );
    out
}

/// Largest dimension [`fuzz_algebra`] samples.
pub const MAX_FUZZ_DIM: usize = 4;

fn random_nonzero(rng: &mut ChaCha8Rng, p: u64) -> Scalar {
    Field::Prime(p).from_i64(rng.random_range(1..p) as i64)
}

/// One rejection-sampling trial: a random split, then a sparse table with
/// products into the kernel part only when the right factor is outside it
/// and with kernel-left products landing in the kernel part. Kept when the
/// Leibniz identity holds and the split is exactly the kernel split.
/// `None` on rejection, on `dim > MAX_FUZZ_DIM`, or over `Q`.
pub fn fuzz_algebra(seed: u64, dim: usize, field: Field) -> Option<(LeibnizAlgebra, BasisSplit)> {
    let Field::Prime(p) = field else {
        return None;
    };
    if dim > MAX_FUZZ_DIM {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let in_kernel: Vec<bool> = (0..dim).map(|_| rng.random_bool(0.5)).collect();
    let kernel: Vec<usize> = (0..dim).filter(|&i| in_kernel[i]).collect();
    let density = [0.1, 0.2, 0.35][rng.random_range(0..3)];
    let n = dim;
    let mut tensor = vec![field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            if in_kernel[j] || !rng.random_bool(density) {
                continue;
            }
            let k = if in_kernel[i] {
                if kernel.is_empty() {
                    continue;
                }
                kernel[rng.random_range(0..kernel.len())]
            } else {
                rng.random_range(0..n)
            };
            tensor[(i * n + j) * n + k] = random_nonzero(&mut rng, p);
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let algebra = LeibnizAlgebra::unchecked(field, labels, tensor).ok()?;
    if !algebra.check_leibniz().is_empty() {
        return None;
    }
    let algebra = LeibnizAlgebra::new(field, algebra.labels().to_vec(), algebra.tensor().to_vec()).ok()?;
    let split = BasisSplit::new(n, kernel).ok()?;
    algebra.validate_split(&split).then_some((algebra, split))
}

/// Accepted instances from consecutive seeds starting at `first_seed`,
/// cycling through dimensions `1..=max_dim`, until `count` are found or
/// `max_trials` seeds are spent.
pub fn fuzz_batch(
    first_seed: u64,
    count: usize,
    max_dim: usize,
    field: Field,
    max_trials: u64,
) -> Vec<(u64, LeibnizAlgebra, BasisSplit)> {
    let max_dim = max_dim.clamp(1, MAX_FUZZ_DIM);
    let mut out = Vec::with_capacity(count.min(max_trials as usize).min(1 << 16));
    for t in 0..max_trials {
        if out.len() >= count {
            break;
        }
        let seed = first_seed.wrapping_add(t);
        let dim = 1 + (t as usize % max_dim);
        if let Some((a, s)) = fuzz_algebra(seed, dim, field) {
            out.push((seed, a, s));
        }
    }
    out
}

/// Random nonzero diagonal factors for `algebra`'s field. Over `Q` the
/// factors are small signed fractions.
pub fn random_scaling(rng: &mut impl Rng, field: Field, dim: usize) -> Vec<Scalar> {
    (0..dim)
        .map(|_| match field {
            Field::Prime(p) => field.from_i64(rng.random_range(1..p) as i64),
            Field::Rationals => {
                let num = rng.random_range(1..=9i64) * if rng.random_bool(0.5) { -1 } else { 1 };
                let den = rng.random_range(1..=5i64);
                field.from_ratio(num, den).expect("nonzero denominator")
            }
        })
        .collect()
}

pub fn random_permutation(rng: &mut impl Rng, dim: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    perm
}

/// A structure-preserving variant of an instance: a random rescaling and
/// relabelling permutation, and with probability one half a direct sum with
/// a second instance.
pub fn transformed_variant(
    rng: &mut impl Rng,
    base: (&LeibnizAlgebra, &BasisSplit),
    partner: Option<(&LeibnizAlgebra, &BasisSplit)>,
) -> Result<(LeibnizAlgebra, BasisSplit), AlgebraError> {
    let (mut a, mut s) = (base.0.clone(), base.1.clone());
    if let Some((b, sb)) = partner {
        if rng.random_bool(0.5) {
            (a, s) = direct_sum(&a, &s, b, sb)?;
        }
    }
    let factors = random_scaling(rng, a.field(), a.dim());
    a = a.rescaled(&factors)?;
    let perm = random_permutation(rng, a.dim());
    Ok((a.permuted(&perm)?, s.permuted(&perm)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds_standard_instances() {
        for (name, params) in standard_instances() {
            let (a, split) = build_example(name, &params).unwrap();
            assert!(a.validate_split(&split), "{name} {params:?}");
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            build_example("nope", &Params::default()),
            Err(CorpusError::UnknownExample(_))
        ));
        assert!(matches!(
            build_example("odd_family", &Params::with_n(6)),
            Err(CorpusError::BadParams { .. })
        ));
        assert!(matches!(
            build_example("filiform", &Params::with_n(2)),
            Err(CorpusError::BadParams { .. })
        ));
        assert!(matches!(
            build_example("five_dim", &Params::with_n(5)),
            Err(CorpusError::BadParams { .. })
        ));
        assert!(matches!(
            build_example("five_dim", &Params::over(Field::Prime(2))),
            Err(CorpusError::FieldCharUnsupported { .. })
        ));
        assert!(matches!(
            build_example("odd_family", &Params { n: Some(5), field: Field::Prime(7) }),
            Err(CorpusError::FieldCharUnsupported { .. })
        ));
        assert!(build_example("five_dim", &Params::over(Field::Prime(3))).is_ok());
    }

    #[test]
    fn odd_family_at_five_is_five_dim() {
        let (a, _) = build_example("odd_family", &Params::with_n(5)).unwrap();
        let (b, _) = build_example("five_dim", &Params::default()).unwrap();
        assert_eq!(a.tensor(), b.tensor());
    }

    #[test]
    fn direct_sum_labels_and_kernel() {
        let (a, s) = build_example("five_plus_five", &Params::default()).unwrap();
        assert_eq!(a.labels()[5..], ["e'", "h'", "f'", "p'", "q'"]);
        assert_eq!(s.kernel(), [3, 4, 8, 9]);
        let (five, fs) = build_example("five_dim", &Params::default()).unwrap();
        let zero = LeibnizAlgebra::trivial(Field::Rationals);
        let zs = BasisSplit::new(0, []).unwrap();
        let (same, ss) = direct_sum(&five, &fs, &zero, &zs).unwrap();
        assert_eq!(same.tensor(), five.tensor());
        assert_eq!(ss, fs);
        let (g, gs) = build_example("five_dim", &Params::over(Field::Prime(5))).unwrap();
        assert!(direct_sum(&five, &fs, &g, &gs).is_err());
    }

    #[test]
    fn fuzz_is_deterministic_and_sound() {
        let f = Field::Prime(5);
        let batch = fuzz_batch(0, 50, 4, f, 20_000);
        assert_eq!(batch.len(), 50);
        for (seed, a, s) in &batch {
            assert!(a.check_leibniz().is_empty());
            assert!(a.validate_split(s));
            let (b, t) = fuzz_algebra(*seed, a.dim(), f).unwrap();
            assert_eq!((a, s), (&b, &t));
        }
        assert!(fuzz_algebra(1, 5, f).is_none());
        assert!(fuzz_algebra(1, 3, Field::Rationals).is_none());
    }

    #[test]
    fn fuzz_reaches_nonabelian_instances() {
        let batch = fuzz_batch(1000, 200, 4, Field::Prime(5), 50_000);
        assert!(batch.iter().any(|(_, a, _)| a.tensor().iter().any(|c| !c.is_zero())));
        assert!(batch.iter().any(|(_, _, s)| !s.kernel().is_empty()));
    }
}
