//! Command-line configuration and input resolution.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use sel_core::groups::{
    parse_laurent, parse_word_polynomial, ExplicitGroup, FiniteQuotient, GroupElement,
    GroupRingElement, Letter,
};
use sel_core::report::Format;
use sel_core::Limits;

use crate::RunError;

#[derive(Debug, Parser)]
#[command(
    name = "sel",
    version,
    about = "Entropy of algebraic actions and subshifts from finite quotients"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

impl RunConfig {
    pub fn output(&self) -> &Output {
        match &self.command {
            Command::Algebraic(a) => &a.output,
            Command::Subshift(a) => &a.output,
            Command::Mahler(a) => &a.output,
            Command::SoficCheck(a) => &a.output,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fixed-point entropy trace of a principal algebraic action.
    Algebraic(AlgebraicArgs),
    /// Microstate entropy table of a subshift of finite type.
    Subshift(SubshiftArgs),
    /// Mahler measure of a Laurent polynomial.
    Mahler(MahlerArgs),
    /// Multiplicative and freeness defects of quotient-induced maps.
    SoficCheck(SoficCheckArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Report format.
    #[arg(long, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report path (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    /// Ambient group: Z, Z2, Z3, Z4 or file:<quotient-chain.json>.
    #[arg(long, default_value = "Z")]
    pub group: GroupSpec,
    /// Inclusive range a..b of cyclic (or square torus) quotients.
    #[arg(long)]
    pub quotients: Option<QuotientRange>,
    /// One torus quotient per occurrence, e.g. `--moduli 4,6`.
    #[arg(long, value_parser = parse_moduli)]
    pub moduli: Vec<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct AlgebraicArgs {
    #[command(flatten)]
    pub quotients: QuotientArgs,
    /// Group ring element, e.g. "3 - x - x^-1".
    #[arg(long)]
    pub poly: String,
    /// Points per axis for the quadrature reference and the invertibility check.
    #[arg(long)]
    pub grid: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SubshiftArgs {
    /// SFT description in JSON.
    #[arg(long)]
    pub sft: PathBuf,
    /// Inclusive range a..b of cycle lengths.
    #[arg(long, default_value = "1..30")]
    pub quotients: QuotientRange,
    /// Numbers of sites allowed to violate the constraints.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub budget: Vec<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MahlerArgs {
    /// Ambient group: Z, Z2, Z3 or Z4.
    #[arg(long, default_value = "Z")]
    pub group: GroupSpec,
    #[arg(long)]
    pub poly: String,
    /// Quadrature grid sizes (points per axis).
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SoficCheckArgs {
    #[command(flatten)]
    pub quotients: QuotientArgs,
    /// Element pair `s:t` as monomials, e.g. `x:x^6` (repeatable).
    #[arg(long = "pair")]
    pub pairs: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

/// The ambient group of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Lattice(usize),
    Chain(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "Z1" => Ok(GroupSpec::Lattice(1)),
            "Z2" => Ok(GroupSpec::Lattice(2)),
            "Z3" => Ok(GroupSpec::Lattice(3)),
            "Z4" => Ok(GroupSpec::Lattice(4)),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(GroupSpec::Chain(path.into())),
                _ => Err(format!(
                    "unknown group {s:?} (expected Z, Z2, Z3, Z4 or file:<path>)"
                )),
            },
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Lattice(1) => f.write_str("Z"),
            GroupSpec::Lattice(d) => write!(f, "Z{d}"),
            GroupSpec::Chain(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// `a..b`, both ends included, `1 ≤ a ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientRange {
    pub start: u64,
    pub end: u64,
}

impl FromStr for QuotientRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected a range a..b, got {s:?}"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad range bound {t:?}: {e}"))
        };
        let (start, end) = (parse(a)?, parse(b)?);
        if start == 0 {
            return Err("range must start at 1 or above".into());
        }
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(QuotientRange { start, end })
    }
}

impl QuotientRange {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

fn parse_moduli(s: &str) -> Result<Vec<u64>, String> {
    let moduli = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad modulus {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if moduli.contains(&0) {
        return Err("moduli must be at least 1".into());
    }
    Ok(moduli)
}

/// A quotient chain file: generator names and one Cayley table per quotient.
///
/// ```json
/// {"generators": ["a", "b"],
///  "quotients": [{"label": "S3", "table": [[0, 1], [1, 0]], "generator_images": [1, 1]}]}
/// ```
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub generators: Vec<String>,
    pub quotients: Vec<ChainEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainEntry {
    pub label: String,
    pub table: Vec<Vec<usize>>,
    pub generator_images: Vec<usize>,
}

/// The resolved ambient group with its quotient sweep.
pub struct Ambient {
    pub rank: usize,
    pub generators: Vec<char>,
    pub quotients: Vec<FiniteQuotient>,
}

impl Ambient {
    pub fn parse_poly(&self, text: &str) -> Result<GroupRingElement, RunError> {
        let f = if self.rank == 0 {
            parse_word_polynomial(text, &self.generators)
        } else {
            parse_laurent(text, self.rank)
        };
        f.map_err(|e| RunError::Parse(format!("polynomial {text:?}: {e}")))
    }

    /// A single monomial with coefficient 1, or `1` for the identity.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, RunError> {
        let f = self.parse_poly(text)?;
        match f.terms().iter().collect::<Vec<_>>().as_slice() {
            [(s, 1)] => Ok((*s).clone()),
            _ => Err(RunError::Parse(format!("{text:?} is not a group element"))),
        }
    }

    /// The first generator.
    pub fn generator(&self) -> GroupElement {
        if self.rank == 0 {
            GroupElement::word([Letter {
                generator: 0,
                power: 1,
            }])
        } else {
            let mut e = vec![0; self.rank];
            e[0] = 1;
            GroupElement::lattice(e)
        }
    }
}

/// Resolves the group and its quotient list.
pub fn resolve_quotients(args: &QuotientArgs, limits: &Limits) -> Result<Ambient, RunError> {
    match &args.group {
        GroupSpec::Lattice(rank) => {
            let rank = *rank;
            let mut moduli: Vec<Vec<u64>> = Vec::new();
            if let Some(r) = args.quotients {
                moduli.extend(r.iter().map(|n| vec![n; rank]));
            }
            for m in &args.moduli {
                if m.len() != rank {
                    return Err(RunError::Config(format!(
                        "--moduli {m:?} has {} entries for a rank-{rank} group",
                        m.len()
                    )));
                }
                moduli.push(m.clone());
            }
            if moduli.is_empty() {
                return Err(RunError::Config("give --quotients or --moduli".into()));
            }
            let quotients = moduli
                .iter()
                .map(|m| FiniteQuotient::torus_with_limit(m, limits.max_quotient_size))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Ambient {
                rank,
                generators: Vec::new(),
                quotients,
            })
        }
        GroupSpec::Chain(path) => {
            if args.quotients.is_some() || !args.moduli.is_empty() {
                return Err(RunError::Config(
                    "a quotient chain file lists its own quotients; drop --quotients/--moduli"
                        .into(),
                ));
            }
            load_chain(path)
        }
    }
}

pub fn load_chain(path: &PathBuf) -> Result<Ambient, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    let chain: ChainFile = serde_json::from_str(&text).map_err(|e| {
        RunError::Parse(format!(
            "{} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let mut generators = Vec::new();
    for g in &chain.generators {
        let mut chars = g.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() && !generators.contains(&c) => {
                generators.push(c)
            }
            _ => {
                return Err(RunError::Parse(format!(
                    "generator names must be distinct single letters, got {g:?}"
                )))
            }
        }
    }
    if chain.quotients.is_empty() {
        return Err(RunError::Config("quotient chain is empty".into()));
    }
    let mut quotients = Vec::new();
    for entry in chain.quotients {
        if entry.generator_images.len() != generators.len() {
            return Err(RunError::Parse(format!(
                "quotient {} gives {} generator images for {} generators",
                entry.label,
                entry.generator_images.len(),
                generators.len()
            )));
        }
        let group = ExplicitGroup::new(entry.table, entry.generator_images)
            .map_err(|e| RunError::Parse(format!("quotient {}: {e}", entry.label)))?;
        quotients.push(FiniteQuotient::explicit(entry.label, group));
    }
    Ok(Ambient {
        rank: 0,
        generators,
        quotients,
    })
}
