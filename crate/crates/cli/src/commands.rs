use sel_core::algebraic::entropy_trace_with_limits;
use sel_core::groups::{defect_rows, GroupElement, Letter};
use sel_core::report::{AlgebraicReport, MahlerReport, Report, SoficCheckReport};
use sel_core::spectral::{
    certify_invertible_torus, mahler_jensen, mahler_quadrature, reference_log_det,
    InvertibilityCertificate, SpectralError, Verdict,
};
use sel_core::subshift::{subshift_entropy_table_with_limits, SubshiftSFT};
use sel_core::Limits;

use crate::config::{
    resolve_quotients, AlgebraicArgs, Ambient, Command, GroupSpec, MahlerArgs, RunConfig,
    SoficCheckArgs, SubshiftArgs,
};
use crate::{RunError, EXIT_NOT_INVERTIBLE, EXIT_OK};

/// A rendered report plus the diagnostics meant for standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub exit_code: i32,
    pub messages: Vec<String>,
}

pub fn run(config: &RunConfig) -> Result<Outcome, RunError> {
    match &config.command {
        Command::Algebraic(a) => run_algebraic(a),
        Command::Subshift(a) => run_subshift(a),
        Command::Mahler(a) => run_mahler(a),
        Command::SoficCheck(a) => run_sofic_check(a),
    }
}

/// Points per axis used when `--grid` is absent.
pub fn default_grid(rank: usize) -> usize {
    match rank {
        1 => 4096,
        2 => 512,
        3 => 64,
        _ => 16,
    }
}

fn not_invertible(c: &Option<InvertibilityCertificate>) -> bool {
    matches!(
        c,
        Some(InvertibilityCertificate {
            verdict: Verdict::NotInvertible { .. },
            ..
        })
    )
}

pub fn run_algebraic(args: &AlgebraicArgs) -> Result<Outcome, RunError> {
    let limits = Limits::from_env();
    let ambient = resolve_quotients(&args.quotients, &limits)?;
    let f = ambient.parse_poly(&args.poly)?;
    let mut messages = Vec::new();

    let (reference, certificate) = if ambient.rank == 0 {
        messages.push("no spectral reference for a quotient-chain group".to_string());
        (None, None)
    } else {
        let grid = args.grid.unwrap_or_else(|| default_grid(ambient.rank));
        let reference = match reference_log_det(&f, grid) {
            Ok(e) => Some(e),
            Err(e @ (SpectralError::NearZero { .. } | SpectralError::ZeroPolynomial)) => {
                messages.push(format!("no spectral reference: {e}"));
                None
            }
            Err(e) => return Err(e.into()),
        };
        (reference, Some(certify_invertible_torus(&f, grid)?))
    };

    let trace = entropy_trace_with_limits(
        &f,
        &ambient.quotients,
        reference.as_ref().map(|e| e.value),
        &limits,
    )?;
    let residual = trace.residual();
    match (trace.last(), residual) {
        (Some(last), Some(r)) => messages.push(format!(
            "residual |h - reference| at {} = {r:e}",
            last.label
        )),
        _ => messages.push("residual unavailable".to_string()),
    }
    let singular = !trace.skipped.is_empty() || not_invertible(&certificate);
    if singular {
        messages.push(format!(
            "{} is not invertible: {} quotient(s) skipped",
            trace.polynomial,
            trace.skipped.len()
        ));
    }
    let report = AlgebraicReport {
        trace,
        reference_method: reference.as_ref().map(|e| e.method.clone()),
        reference_error_bound: reference.as_ref().map(|e| e.error_bound),
        certificate,
        residual,
    };
    Ok(Outcome {
        report: report.render(args.output.format),
        exit_code: if singular {
            EXIT_NOT_INVERTIBLE
        } else {
            EXIT_OK
        },
        messages,
    })
}

pub fn run_subshift(args: &SubshiftArgs) -> Result<Outcome, RunError> {
    let limits = Limits::from_env();
    let text = std::fs::read_to_string(&args.sft)
        .map_err(|e| RunError::Io(format!("{}: {e}", args.sft.display())))?;
    let sft = SubshiftSFT::from_json(&text)
        .map_err(|e| RunError::Parse(format!("{}: {e}", args.sft.display())))?;
    let lengths: Vec<usize> = args.quotients.iter().map(|n| n as usize).collect();
    let table = subshift_entropy_table_with_limits(&sft, &lengths, &args.budget, &limits)?;
    let mut messages = Vec::new();
    if let Some(c) = table.principal().last() {
        match c.h {
            Some(h) => messages.push(format!(
                "h(n={}, budget=0) = {h} (log|A| = {})",
                c.n, table.log_alphabet
            )),
            None => messages.push(format!("no periodic points of period {}", c.n)),
        }
    }
    Ok(Outcome {
        report: table.render(args.output.format),
        exit_code: EXIT_OK,
        messages,
    })
}

pub fn run_mahler(args: &MahlerArgs) -> Result<Outcome, RunError> {
    let rank = match args.group {
        GroupSpec::Lattice(r) => r,
        GroupSpec::Chain(_) => {
            return Err(RunError::Config(
                "Mahler measures need a lattice group Z..Z4".into(),
            ))
        }
    };
    let ambient = Ambient {
        rank,
        generators: Vec::new(),
        quotients: Vec::new(),
    };
    let f = ambient.parse_poly(&args.poly)?;
    let mut messages = Vec::new();
    let mut estimates = Vec::new();
    if rank == 1 {
        estimates.push(mahler_jensen(&f)?);
    }
    let grids = if args.grid.is_empty() && rank > 1 {
        vec![default_grid(rank)]
    } else {
        args.grid.clone()
    };
    for &g in &grids {
        match mahler_quadrature(&f, g) {
            Ok(e) => estimates.push(e),
            Err(e @ SpectralError::NearZero { .. }) => {
                messages.push(format!("quadrature at grid {g}: {e}"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let cert_grid = grids.iter().copied().max().unwrap_or(default_grid(rank));
    let certificate = Some(certify_invertible_torus(&f, cert_grid)?);
    for e in &estimates {
        messages.push(format!(
            "log M = {} ± {:e} ({:?})",
            e.value, e.error_bound, e.method
        ));
    }
    let singular = not_invertible(&certificate);
    let report = MahlerReport {
        polynomial: f.render(),
        estimates,
        certificate,
    };
    Ok(Outcome {
        report: report.render(args.output.format),
        exit_code: if singular {
            EXIT_NOT_INVERTIBLE
        } else {
            EXIT_OK
        },
        messages,
    })
}

fn generator_power(ambient: &Ambient, k: i64) -> GroupElement {
    if ambient.rank == 0 {
        GroupElement::word([Letter {
            generator: 0,
            power: k,
        }])
    } else {
        let mut e = vec![0; ambient.rank];
        e[0] = k;
        GroupElement::lattice(e)
    }
}

/// Without `--pair`: the pairs among `g, g², g³` for the first generator `g`,
/// plus `(g, g^{m+1})` where `m` is the order of `g` in each quotient.
pub fn run_sofic_check(args: &SoficCheckArgs) -> Result<Outcome, RunError> {
    let limits = Limits::from_env();
    let ambient = resolve_quotients(&args.quotients, &limits)?;
    let explicit = args
        .pairs
        .iter()
        .map(|p| {
            let (s, t) = p
                .split_once(':')
                .ok_or_else(|| RunError::Parse(format!("pair {p:?} is not of the form s:t")))?;
            Ok((ambient.parse_element(s)?, ambient.parse_element(t)?))
        })
        .collect::<Result<Vec<_>, RunError>>()?;

    let mut rows = Vec::new();
    for q in &ambient.quotients {
        let pairs = if explicit.is_empty() {
            let g = ambient.generator();
            let image = q.project(&g)?;
            let mut order = 1;
            let mut acc = image;
            while acc != q.identity() {
                acc = q.mul(acc, image);
                order += 1;
            }
            let p = |k| generator_power(&ambient, k);
            vec![
                (p(1), p(2)),
                (p(1), p(3)),
                (p(2), p(3)),
                (p(1), p(order + 1)),
            ]
        } else {
            explicit.clone()
        };
        rows.extend(defect_rows(q, &pairs)?);
    }
    let multiplicative_ok = rows.iter().all(|r| r.multiplicative_defect == 0.into());
    let flagged = rows
        .iter()
        .filter(|r| r.freeness_defect == Some(1.into()))
        .count();
    let messages = vec![
        format!(
            "multiplicative defects {}",
            if multiplicative_ok {
                "all 0"
            } else {
                "nonzero somewhere"
            }
        ),
        format!("{flagged} pair(s) flagged with freeness defect 1"),
    ];
    Ok(Outcome {
        report: SoficCheckReport { rows }.render(args.output.format),
        exit_code: EXIT_OK,
        messages,
    })
}
