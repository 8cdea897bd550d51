//! Reading inputs from JSON files or generating them.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Args;
use hyperforest::io::{CactusJson, FamilyInput, MatrixJson, PairJson, TensorJson};
use hyperforest::linalg::{AntisymmetricTensor, SquareMatrix, TensorFamily};
use hyperforest::random;
use hyperforest::ring::{Polynomial, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

use crate::report::Inputs;

/// Largest numerator and denominator of random rational entries.
const RANDOM_BOUND: i64 = 9;

/// Where a matrix or tensor comes from. Exactly one source must be given.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Read the input from a JSON file
    #[arg(long, value_name = "PATH")]
    pub json: Option<std::path::PathBuf>,
    /// Fully generic input of size N with one indeterminate per free entry
    #[arg(long, value_name = "N")]
    pub symbolic: Option<usize>,
    /// Random rational input of size N (see --seed)
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// Laplacian of the complete graph on N vertices (matrix inputs only)
    #[arg(long, value_name = "N")]
    pub complete_graph: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixShape {
    General,
    Skew,
}

pub enum Loaded<T, U> {
    Rational(T),
    Symbolic(U),
}

pub type AnyMatrix = Loaded<SquareMatrix<Rational>, SquareMatrix<Polynomial>>;
pub type AnyTensor = Loaded<AntisymmetricTensor<Rational>, AntisymmetricTensor<Polynomial>>;
pub type AnyFamily = Loaded<TensorFamily<Rational>, TensorFamily<Polynomial>>;

/// Expands to the same body for either ring.
#[macro_export]
macro_rules! with_ring {
    ($value:expr, $bind:ident => $body:expr) => {
        match $value {
            $crate::input::Loaded::Rational($bind) => $body,
            $crate::input::Loaded::Symbolic($bind) => $body,
        }
    };
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn inputs(source: &str, ring: &str, n: usize, seed: Option<u64>) -> Inputs {
    Inputs {
        source: source.into(),
        ring: ring.into(),
        n,
        seed,
        ..Inputs::default()
    }
}

pub fn load_matrix(src: &Source, shape: MatrixShape, seed: u64) -> Result<(AnyMatrix, Inputs)> {
    if let Some(path) = &src.json {
        let m: MatrixJson = read_json(path)?;
        let label = format!("json:{}", path.display());
        return Ok(if m.is_constant() {
            (Loaded::Rational(m.to_matrix()?), inputs(&label, "rational", m.n, None))
        } else {
            (Loaded::Symbolic(m.to_matrix()?), inputs(&label, "polynomial", m.n, None))
        });
    }
    if let Some(n) = src.symbolic {
        let m = match shape {
            MatrixShape::General => SquareMatrix::generic(n, "a"),
            MatrixShape::Skew => SquareMatrix::generic_skew(n, "a"),
        };
        return Ok((Loaded::Symbolic(m), inputs("symbolic", "polynomial", n, None)));
    }
    if let Some(n) = src.random {
        let mut r = rng(seed);
        let m = match shape {
            MatrixShape::General => random::matrix(&mut r, n, RANDOM_BOUND),
            MatrixShape::Skew => random::skew_matrix(&mut r, n, RANDOM_BOUND),
        };
        return Ok((Loaded::Rational(m), inputs("random", "rational", n, Some(seed))));
    }
    if let Some(n) = src.complete_graph {
        if n == 0 {
            bail!("the complete graph needs at least one vertex");
        }
        let l = SquareMatrix::laplacian(&SquareMatrix::<Rational>::complete_graph(n))?;
        return Ok((Loaded::Rational(l), inputs("complete-graph", "rational", n, None)));
    }
    unreachable!("clap requires one source")
}

pub fn load_tensor(src: &Source, arity: Option<usize>, seed: u64) -> Result<(AnyTensor, Inputs)> {
    if src.complete_graph.is_some() {
        bail!("--complete-graph only applies to matrix inputs");
    }
    if let Some(path) = &src.json {
        let t: TensorJson = read_json(path)?;
        let label = format!("json:{}", path.display());
        let mut info = inputs(&label, "rational", t.n, None);
        info.arities = Some(vec![t.k]);
        return Ok(if t.is_constant() {
            (Loaded::Rational(t.to_tensor()?), info)
        } else {
            info.ring = "polynomial".into();
            (Loaded::Symbolic(t.to_tensor()?), info)
        });
    }
    let Some(k) = arity else {
        bail!("--k is required with --symbolic and --random");
    };
    let (loaded, mut info) = if let Some(n) = src.symbolic {
        let t = AntisymmetricTensor::generic(n, k, "y")?;
        (Loaded::Symbolic(t), inputs("symbolic", "polynomial", n, None))
    } else {
        let n = src.random.expect("clap requires one source");
        let t = random::tensor(&mut rng(seed), n, k, RANDOM_BOUND)?;
        (Loaded::Rational(t), inputs("random", "rational", n, Some(seed)))
    };
    info.arities = Some(vec![k]);
    Ok((loaded, info))
}

pub fn load_family(src: &Source, arities: &[usize], seed: u64) -> Result<(AnyFamily, Inputs)> {
    if src.complete_graph.is_some() {
        bail!("--complete-graph only applies to matrix inputs");
    }
    if let Some(path) = &src.json {
        let f = read_json::<FamilyInput>(path)?.into_family_json();
        let label = format!("json:{}", path.display());
        let mut info = inputs(&label, "rational", f.n, None);
        let mut ks: Vec<usize> = f.tensors.iter().map(|t| t.k).collect();
        ks.sort_unstable();
        info.arities = Some(ks);
        return Ok(if f.is_constant() {
            (Loaded::Rational(f.to_family()?), info)
        } else {
            info.ring = "polynomial".into();
            (Loaded::Symbolic(f.to_family()?), info)
        });
    }
    if arities.is_empty() {
        bail!("--k is required with --symbolic and --random");
    }
    let mut ks = arities.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let (loaded, mut info) = if let Some(n) = src.symbolic {
        let f = TensorFamily::generic(n, &ks, "y")?;
        (Loaded::Symbolic(f), inputs("symbolic", "polynomial", n, None))
    } else {
        let n = src.random.expect("clap requires one source");
        let f = random::family(&mut rng(seed), n, &ks, RANDOM_BOUND)?;
        (Loaded::Rational(f), inputs("random", "rational", n, Some(seed)))
    };
    info.arities = Some(ks);
    Ok((loaded, info))
}

pub fn load_cactus(path: &Path) -> Result<hyperforest::cactus::Cactus> {
    Ok(read_json::<CactusJson>(path)?.to_cactus()?)
}

pub fn load_pair(path: &Path) -> Result<PairJson> {
    read_json(path)
}
