//! Subcommand implementations. Each returns a report; printing and exit
//! codes are handled by `main`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, ensure, Result};
use clap::{Args, Subcommand, ValueEnum};
use hyperforest::cactus::{self, count_cacti, theorem2_lhs, theorem2_terms};
use hyperforest::forest::ForestProblem;
use hyperforest::linalg::{
    det_with, hyperpfaffian_with, pfaffian_with, signed_minor_berezin, AntisymmetricTensor, DetBackend,
    IndexSet, PfaffianBackend, SquareMatrix, TensorFamily,
};
use hyperforest::ring::{parity_sign, Ring};
use hyperforest::Guard;

use crate::input::{self, load_family, load_matrix, load_tensor, MatrixShape, Source};
use crate::report::{
    BackendValue, CountReport, Counts, Inputs, PairCheck, Report, RootValue, Stratum, Term, ValueReport,
    VerificationReport,
};
use crate::with_ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Grassmann-Berezin integral
    Berezin,
    /// Sum over permutations or perfect matchings
    Direct,
    /// Fraction-free Gaussian elimination (determinants only)
    Elimination,
    /// Every available backend, compared against each other
    All,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub guard: Guard,
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    /// Deleted rows, comma separated (omit for the full determinant)
    #[arg(long = "I", value_name = "LIST", value_delimiter = ',')]
    pub rows: Vec<usize>,
    /// Deleted columns, comma separated
    #[arg(long = "J", value_name = "LIST", value_delimiter = ',')]
    pub cols: Vec<usize>,
}

impl IndexArgs {
    fn sets(&self, n: usize) -> Result<(IndexSet, IndexSet)> {
        ensure!(
            self.rows.len() == self.cols.len(),
            "I and J must have the same size, got {} and {}",
            self.rows.len(),
            self.cols.len()
        );
        let rows = IndexSet::new(self.rows.clone())?;
        let cols = IndexSet::new(self.cols.clone())?;
        rows.check_within(n)?;
        cols.check_within(n)?;
        Ok((rows, cols))
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyForestArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub index: IndexArgs,
    /// Backend for the minor on the left-hand side
    #[arg(long, value_enum, default_value_t = Backend::Elimination)]
    pub backend: Backend,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyCactusArgs {
    #[command(flatten)]
    pub source: Source,
    /// Tensor arities for --symbolic and --random, comma separated
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Integrate only at this root instead of at every root
    #[arg(long, value_name = "I")]
    pub root: Option<usize>,
    /// Reject an even number of vertices instead of reporting 0 = 0
    #[arg(long)]
    pub strict: bool,
    /// List every cactus with its signed monomial
    #[arg(long)]
    pub terms: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CountKind {
    /// Admissible pairs (F, R) for deleted rows I and columns J
    Forests {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        index: IndexArgs,
        /// Check this one pair instead of enumerating
        #[arg(long, value_name = "PATH")]
        pair: Option<PathBuf>,
    },
    /// Odd cacti on n vertices with block sizes from --k
    Cacti {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "LIST", value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
    /// Refined cacti over one cactus: one per starting point in every block
    Refinements {
        /// Cactus file
        #[arg(long, value_name = "PATH", required_unless_present = "example")]
        json: Option<PathBuf>,
        /// Use the built-in 19-vertex cactus
        #[arg(long, conflicts_with = "json")]
        example: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ValueArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
    /// Run every backend and compare (same as --backend all)
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Args)]
pub struct HyperpfaffianArgs {
    #[command(flatten)]
    pub value: ValueArgs,
    /// Tensor arity for --symbolic and --random
    #[arg(long)]
    pub k: Option<usize>,
}

impl ValueArgs {
    fn backend(&self, default: Backend) -> Backend {
        if self.check {
            Backend::All
        } else {
            self.backend.unwrap_or(default)
        }
    }
}

fn backend_value(name: &str, value: &impl Ring) -> BackendValue {
    BackendValue {
        backend: name.into(),
        value: value.to_string(),
    }
}

fn all_equal<R: PartialEq>(values: &[(&str, R)]) -> bool {
    values.windows(2).all(|w| w[0].1 == w[1].1)
}

fn minor_by<R: Ring>(a: &SquareMatrix<R>, rows: &IndexSet, cols: &IndexSet, b: Backend) -> Result<R> {
    Ok(match b {
        Backend::Berezin => signed_minor_berezin(a, rows, cols)?.signed(parity_sign(rows.sum() + cols.sum())),
        Backend::Direct => det_with(&a.submatrix_without(rows, cols)?, DetBackend::Leibniz)?,
        Backend::Elimination => det_with(&a.submatrix_without(rows, cols)?, DetBackend::Elimination)?,
        Backend::All => unreachable!(),
    })
}

fn verify_forest_in<R: Ring>(
    a: &SquareMatrix<R>,
    rows: IndexSet,
    cols: IndexSet,
    backend: Backend,
    ctx: Context,
    inputs: Inputs,
) -> Result<Report> {
    let chosen: &[(Backend, &str)] = match backend {
        Backend::All => &[
            (Backend::Elimination, "elimination"),
            (Backend::Direct, "direct"),
            (Backend::Berezin, "berezin"),
        ],
        Backend::Elimination => &[(Backend::Elimination, "elimination")],
        Backend::Direct => &[(Backend::Direct, "direct")],
        Backend::Berezin => &[(Backend::Berezin, "berezin")],
    };
    let mut minors = Vec::new();
    for &(b, name) in chosen {
        minors.push((name, minor_by(a, &rows, &cols, b)?));
    }

    let problem = ForestProblem::new(a.n(), rows, cols)?;
    let sums = a.column_sums();
    let mut total = R::zero();
    let mut strata: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    problem.for_each(ctx.guard, |p| {
        total += p.weight(a, &sums);
        *strata.entry((p.forest().len(), p.roots().len())).or_default() += 1;
    })?;
    let rhs = total.signed(problem.global_sign());

    let lhs = minors[0].1.clone();
    let (backends, backends_agree) = if minors.len() > 1 {
        (
            minors.iter().map(|(n, v)| backend_value(n, v)).collect(),
            Some(all_equal(&minors)),
        )
    } else {
        (Vec::new(), None)
    };
    Ok(Report::Verification(VerificationReport {
        task: "verify-forest".into(),
        inputs,
        difference_is_zero: (lhs.clone() - &rhs).is_zero(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        lhs_by_root: Vec::new(),
        all_roots_equal: None,
        backends,
        backends_agree,
        counts: Counts {
            admissible_pairs: Some(strata.values().sum()),
            strata: strata_list(&strata),
            ..Counts::default()
        },
        terms: Vec::new(),
        wall_time_ms: None,
    }))
}

fn strata_list(strata: &BTreeMap<(usize, usize), u64>) -> Vec<Stratum> {
    strata
        .iter()
        .map(|(&(edges, roots), &count)| Stratum { edges, roots, count })
        .collect()
}

pub fn verify_forest(args: &VerifyForestArgs, ctx: Context) -> Result<Report> {
    let (a, mut inputs) = load_matrix(&args.source, MatrixShape::General, ctx.seed)?;
    let (rows, cols) = args.index.sets(inputs.n)?;
    inputs.rows = Some(rows.as_slice().to_vec());
    inputs.cols = Some(cols.as_slice().to_vec());
    with_ring!(a, m => verify_forest_in(&m, rows, cols, args.backend, ctx, inputs))
}

fn verify_cactus_in<R: Ring>(
    family: &TensorFamily<R>,
    args: &VerifyCactusArgs,
    ctx: Context,
    inputs: Inputs,
) -> Result<Report> {
    let n = family.n();
    if args.strict && n.is_multiple_of(2) {
        bail!("n = {n} is even; the expansion is only claimed for odd n (drop --strict to check 0 = 0)");
    }
    let roots: Vec<usize> = match args.root {
        Some(i) => {
            ensure!((1..=n).contains(&i), "root {i} outside 1..={n}");
            vec![i]
        }
        None => (1..=n).collect(),
    };
    let terms = theorem2_terms(family, ctx.guard)?;
    let mut rhs = R::zero();
    let mut refinements: u128 = 0;
    for (c, v) in &terms {
        rhs += v;
        refinements += c.starting_point_count();
    }
    let mut values = Vec::new();
    for &i in &roots {
        values.push((i, theorem2_lhs(family, i)?));
    }
    let lhs = values[0].1.clone();
    let all_equal = values.iter().all(|(_, v)| *v == lhs);
    let matches = values.iter().all(|(_, v)| (v.clone() - &rhs).is_zero());
    let several = roots.len() > 1;
    Ok(Report::Verification(VerificationReport {
        task: "verify-cactus".into(),
        inputs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        difference_is_zero: matches,
        lhs_by_root: if several {
            values
                .iter()
                .map(|(root, v)| RootValue {
                    root: *root,
                    value: v.to_string(),
                })
                .collect()
        } else {
            Vec::new()
        },
        all_roots_equal: several.then_some(all_equal),
        backends: Vec::new(),
        backends_agree: None,
        counts: Counts {
            cacti: Some(terms.len() as u64),
            refinements: Some(u64::try_from(refinements)?),
            ..Counts::default()
        },
        terms: if args.terms {
            terms
                .iter()
                .map(|(c, v)| Term {
                    blocks: c.blocks().to_vec(),
                    value: v.to_string(),
                })
                .collect()
        } else {
            Vec::new()
        },
        wall_time_ms: None,
    }))
}

pub fn verify_cactus(args: &VerifyCactusArgs, ctx: Context) -> Result<Report> {
    let (family, mut inputs) = load_family(&args.source, &args.k, ctx.seed)?;
    inputs.root = args.root;
    with_ring!(family, f => verify_cactus_in(&f, args, ctx, inputs))
}

pub fn count(kind: &CountKind, ctx: Context) -> Result<Report> {
    let bare = |n: usize| Inputs {
        source: "combinatorial".into(),
        ring: "none".into(),
        n,
        ..Inputs::default()
    };
    let report = match kind {
        CountKind::Forests { n, index, pair } => {
            let (rows, cols) = index.sets(*n)?;
            let mut inputs = bare(*n);
            inputs.rows = Some(rows.as_slice().to_vec());
            inputs.cols = Some(cols.as_slice().to_vec());
            let problem = ForestProblem::new(*n, rows, cols)?;
            if let Some(path) = pair {
                let p = input::load_pair(path)?;
                let check = match problem.check(&p.edges(), &p.roots()?) {
                    Ok(pair) => PairCheck {
                        admissible: true,
                        rejection: None,
                        signature: Some(pair.signature()),
                        components: pair.forest().components(),
                    },
                    Err(r) => PairCheck {
                        admissible: false,
                        rejection: Some(r.to_string()),
                        signature: None,
                        components: Vec::new(),
                    },
                };
                inputs.source = format!("json:{}", path.display());
                return Ok(Report::Count(CountReport {
                    task: "count-forests".into(),
                    inputs,
                    total: u64::from(check.admissible),
                    strata: Vec::new(),
                    pair: Some(check),
                    wall_time_ms: None,
                }));
            }
            let mut strata: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            problem.for_each(ctx.guard, |p| {
                *strata.entry((p.forest().len(), p.roots().len())).or_default() += 1;
            })?;
            CountReport {
                task: "count-forests".into(),
                inputs,
                total: strata.values().sum(),
                strata: strata_list(&strata),
                pair: None,
                wall_time_ms: None,
            }
        }
        CountKind::Cacti { n, k } => {
            let mut inputs = bare(*n);
            inputs.arities = Some(k.clone());
            CountReport {
                task: "count-cacti".into(),
                inputs,
                total: count_cacti(*n, k, ctx.guard)?,
                strata: Vec::new(),
                pair: None,
                wall_time_ms: None,
            }
        }
        CountKind::Refinements { json, example } => {
            let (c, source) = match json {
                Some(path) => (input::load_cactus(path)?, format!("json:{}", path.display())),
                None => {
                    debug_assert!(*example);
                    (
                        cactus::Cactus::new(cactus::example::N, cactus::example::blocks())?,
                        "example".into(),
                    )
                }
            };
            let mut inputs = bare(c.n());
            inputs.source = source;
            CountReport {
                task: "count-refinements".into(),
                inputs,
                total: u64::try_from(c.starting_point_count())?,
                strata: Vec::new(),
                pair: None,
                wall_time_ms: None,
            }
        }
    };
    Ok(Report::Count(report))
}

fn value_report(task: &str, inputs: Inputs, values: Vec<(&str, String)>, agree: bool) -> Report {
    Report::Value(ValueReport {
        task: task.into(),
        inputs,
        value: values[0].1.clone(),
        backends: values
            .iter()
            .map(|(b, v)| BackendValue {
                backend: (*b).into(),
                value: v.clone(),
            })
            .collect(),
        backends_agree: agree,
        wall_time_ms: None,
    })
}

fn pfaffian_backends(b: Backend) -> Result<Vec<(&'static str, PfaffianBackend)>> {
    Ok(match b {
        Backend::Direct => vec![("direct", PfaffianBackend::Combinatorial)],
        Backend::Berezin => vec![("berezin", PfaffianBackend::Berezin)],
        Backend::All => vec![
            ("direct", PfaffianBackend::Combinatorial),
            ("berezin", PfaffianBackend::Berezin),
        ],
        Backend::Elimination => bail!("the Pfaffian has no elimination backend; use direct or berezin"),
    })
}

fn evaluate<R: Ring, B: Copy>(
    task: &str,
    inputs: Inputs,
    backends: Vec<(&'static str, B)>,
    run: impl Fn(B) -> Result<R>,
) -> Result<Report> {
    let mut values = Vec::new();
    for (name, b) in backends {
        values.push((name, run(b)?));
    }
    let agree = all_equal(&values);
    Ok(value_report(
        task,
        inputs,
        values.into_iter().map(|(n, v)| (n, v.to_string())).collect(),
        agree,
    ))
}

fn pfaffian_in<R: Ring>(a: &SquareMatrix<R>, b: Backend, inputs: Inputs) -> Result<Report> {
    evaluate("pfaffian", inputs, pfaffian_backends(b)?, |which| Ok(pfaffian_with(a, which)?))
}

pub fn pfaffian(args: &ValueArgs, ctx: Context) -> Result<Report> {
    let (a, inputs) = load_matrix(&args.source, MatrixShape::Skew, ctx.seed)?;
    let b = args.backend(Backend::Direct);
    with_ring!(a, m => pfaffian_in(&m, b, inputs))
}

fn hyperpfaffian_in<R: Ring>(t: &AntisymmetricTensor<R>, b: Backend, inputs: Inputs) -> Result<Report> {
    evaluate("hyperpfaffian", inputs, pfaffian_backends(b)?, |which| Ok(hyperpfaffian_with(t, which)?))
}

pub fn hyperpfaffian(args: &HyperpfaffianArgs, ctx: Context) -> Result<Report> {
    let (t, inputs) = load_tensor(&args.value.source, args.k, ctx.seed)?;
    let b = args.value.backend(Backend::Direct);
    with_ring!(t, y => hyperpfaffian_in(&y, b, inputs))
}

fn det_in<R: Ring>(a: &SquareMatrix<R>, b: Backend, inputs: Inputs) -> Result<Report> {
    let backends: Vec<(&'static str, DetBackend)> = match b {
        Backend::Elimination => vec![("elimination", DetBackend::Elimination)],
        Backend::Direct => vec![("direct", DetBackend::Leibniz)],
        Backend::Berezin => vec![("berezin", DetBackend::Berezin)],
        Backend::All => vec![
            ("elimination", DetBackend::Elimination),
            ("direct", DetBackend::Leibniz),
            ("berezin", DetBackend::Berezin),
        ],
    };
    evaluate("det", inputs, backends, |which| Ok(det_with(a, which)?))
}

pub fn det(args: &ValueArgs, ctx: Context) -> Result<Report> {
    let (a, inputs) = load_matrix(&args.source, MatrixShape::General, ctx.seed)?;
    let b = args.backend(Backend::Elimination);
    with_ring!(a, m => det_in(&m, b, inputs))
}
