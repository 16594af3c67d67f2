//! Command-line front end: argument parsing, the commands, and text or JSON
//! output.

pub mod analysis;
pub mod dto;
mod text;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tietze_core::{
    normalize, parse_elem, parse_matrix, render, solve, verify_construction, DiffOp, Error,
    FieldElem, LinearDiffOp, NormalizationResult,
};

use analysis::{analyze, Options, DEFAULT_DEGREE_BOUND};
use dto::{
    CertificateDto, ConstructionDto, HypothesisDto, NormalizationDto, OperatorDto, OutcomeDto,
    SolveDto, Verdict, VerdictReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for bad input or usage, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(Error::Internal(_)) | CliError::Internal(_) => 1,
            CliError::Input(_) | CliError::Usage(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tietze",
    version,
    about = "Exact analysis of difference Riccati equations over Q(q)(t)"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Transforming operator: shift:<c>, qdilation or mahler:<p>.
    #[arg(long, global = true, default_value = "qdilation")]
    pub op: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauge a matrix [[a,b],[c,d]] to Tietze form.
    Normalize {
        matrix: String,
        /// Show every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Build the linear criterion equation for a Tietze parameter r.
    Criterion { r: String },
    /// Solve sum_k c_k tau^k g = rhs for g in Q(q)(t); coefficients c_0 .. c_n.
    Solve {
        #[arg(required = true)]
        coeffs: Vec<String>,
        #[arg(long, default_value = "0")]
        rhs: String,
        /// Laurent window [-n, n] for operators without a complete solver.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Run the full pipeline on a matrix and report a verdict.
    Verdict {
        matrix: String,
        /// Assert that no Eq(A, i) has a solution algebraic over the base field.
        #[arg(long)]
        assume_no_algebraic_solutions: bool,
        /// Run bounded null-space checks and bound the fallback search.
        #[arg(long)]
        degree_bound: Option<usize>,
        #[arg(long)]
        trace: bool,
    },
    /// Check the Riccati construction for r and a candidate g.
    Verify {
        r: String,
        #[arg(long)]
        g: String,
    },
    /// Verdict for the q-Airy equation, checked against known values.
    PresetQairy {
        #[arg(long)]
        trace: bool,
    },
}

pub const QAIRY_MATRIX: &str = "[[-q*t,1],[1,0]]";

fn elem(src: &str) -> Result<FieldElem, CliError> {
    parse_elem(src).map_err(|e| CliError::Input(e.into()))
}

fn emit<T: Serialize>(
    json: bool,
    value: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<String, CliError> {
    if json {
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))
    } else {
        Ok(text(value))
    }
}

#[derive(Debug, Serialize)]
struct CriterionReport {
    criterion: OperatorDto,
    hypothesis: HypothesisDto,
}

/// Run a parsed command line and return what should be printed.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let op = DiffOp::parse(&cli.op)?;
    match &cli.command {
        Command::Normalize { matrix, trace } => {
            let a = parse_matrix(matrix).map_err(Error::from)?;
            let res = normalize(&op, &a)?;
            if let NormalizationResult::Degenerate { reason } = &res {
                return Err(Error::DegenerateInput(reason.clone()).into());
            }
            emit(
                cli.json,
                &NormalizationDto::new(&res, *trace),
                text::normalization,
            )
        }
        Command::Criterion { r } => {
            let r = elem(r)?;
            let l = tietze_core::build_criterion(&op, &r)?;
            let report = CriterionReport {
                criterion: OperatorDto::from(&l),
                hypothesis: HypothesisDto::from(&tietze_core::hypothesis_check(&op, &r)),
            };
            emit(cli.json, &report, |rep| {
                format!(
                    "{}\n{}",
                    text::operator(&rep.criterion),
                    text::hypothesis(&rep.hypothesis)
                )
            })
        }
        Command::Solve {
            coeffs,
            rhs,
            degree_bound,
        } => {
            let coeffs = coeffs
                .iter()
                .map(|c| elem(c))
                .collect::<Result<Vec<_>, _>>()?;
            let l = LinearDiffOp::new(op, coeffs, elem(rhs)?);
            let rep = solve(&l, degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND))?;
            emit(
                cli.json,
                &SolveDto::new(&rep.outcome, &rep.scope, &l),
                text::solve,
            )
        }
        Command::Verdict {
            matrix,
            assume_no_algebraic_solutions,
            degree_bound,
            trace,
        } => {
            let opts = Options {
                assume_no_algebraic_solutions: *assume_no_algebraic_solutions,
                degree_bound: *degree_bound,
                trace: *trace,
            };
            emit(cli.json, &analyze(matrix, &cli.op, &opts)?, text::report)
        }
        Command::Verify { r, g } => {
            let (r, g) = (elem(r)?, elem(g)?);
            let check = verify_construction(&op, &r, &g)?;
            emit(
                cli.json,
                &ConstructionDto::new(&g, &check),
                text::construction,
            )
        }
        Command::PresetQairy { trace } => {
            if op != DiffOp::QDilation {
                return Err(CliError::Usage("preset-qairy uses --op qdilation".into()));
            }
            let report = preset_qairy(*trace)?;
            emit(cli.json, &report, |rep| {
                format!("{}\ngolden values: all checks passed", text::report(rep))
            })
        }
    }
}

/// Golden values for the q-Airy equation `y(q^2 t) + q t y(q t) - y(t) = 0`.
pub fn preset_qairy(trace: bool) -> Result<VerdictReport, CliError> {
    let opts = Options {
        assume_no_algebraic_solutions: true,
        degree_bound: None,
        trace,
    };
    let report = analyze(QAIRY_MATRIX, "qdilation", &opts)?;
    let canon = |s: &str| render(&parse_elem(s).expect("golden literal"));
    let mut mismatches = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            mismatches.push(what.to_string());
        }
    };
    match &report.normalization {
        NormalizationDto::Tietze { e, r, q, .. } => {
            expect("e = -q^2 t", *e == canon("-q^2*t"));
            expect("r = 1/(q^3 t^2)", *r == canon("1/(q^3*t^2)"));
            expect("Q = [[-q t, 1], [-q t, 0]]", q == "[[-q*t,1],[-q*t,0]]");
        }
        _ => expect("Tietze normal form", false),
    }
    match &report.hypothesis {
        Some(h) => {
            expect("Dr = -2/(q^3 t^3)", h.dr == canon("-2/(q^3*t^3)"));
            let w = h.place_witness.as_ref();
            expect(
                "witness at infinity with v = 2",
                w.is_some_and(|w| w.place == "inf" && w.order == "2"),
            );
        }
        None => expect("hypothesis report", false),
    }
    match &report.criterion {
        Some(c) => {
            let want = [
                "-1/(q^3*t^2)",
                "-(1/(q^4*t^2)+q)",
                "1/(q^3*t^2)+q^2",
                "1/(q^4*t^2)",
            ];
            let want: Vec<String> = want.iter().map(|s| canon(s)).collect();
            expect("criterion coefficients", c.coeffs == want);
            expect("criterion right-hand side 2/t", c.rhs == canon("2/t"));
        }
        None => expect("criterion", false),
    }
    let cert_ok = report.solve.as_ref().is_some_and(|s| {
        matches!(
            &s.outcome,
            OutcomeDto::NoSolution {
                certificate: CertificateDto::IndicialAtInfinity { order: 1, residual },
                replayed: true,
            } if residual == "-2"
        )
    });
    expect(
        "indicial obstruction at infinity, order 1, residual -2",
        cert_ok,
    );
    expect(
        "verdict NoDiffAlgebraicSolution(conditional)",
        report.verdict == Verdict::NoDiffAlgebraicSolution { conditional: true },
    );
    if mismatches.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Internal(format!(
            "q-Airy golden values differ: {}",
            mismatches.join(", ")
        )))
    }
}
