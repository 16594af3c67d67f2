//! The verdict pipeline: normalize, check hypotheses, build the criterion,
//! solve it and map the outcome to a verdict.

use tietze_core::{
    build_criterion, hypothesis_check, lemma_nullspace_check, normalize, parse_matrix, render_gen,
    solve, verify_construction, DiffOp, Error, Field, FieldElem, Lemma, NormalizationResult,
    SearchScope, SolveOutcome,
};

use crate::dto::{
    ConstructionDto, HypothesisDto, InputDto, LemmaDto, NormalizationDto, OperatorDto, OutcomeDto,
    SolveDto, Verdict, VerdictReport,
};
use crate::CliError;

/// Laurent window `[-b, b]` searched when no complete solver applies.
pub const DEFAULT_DEGREE_BOUND: usize = 4;

pub const CAVEAT_CONDITIONAL: &str = "conditional on the asserted hypothesis that no Eq(A, i) has a solution algebraic over the base field; this tool does not verify that hypothesis";
pub const CAVEAT_NOT_ASSERTED: &str = "the hypothesis that no Eq(A, i) has a solution algebraic over the base field is unverified; rerun with --assume-no-algebraic-solutions to obtain the conditional verdict";
pub const CAVEAT_DR_ZERO: &str =
    "Dr = 0: the transcendence criterion's hypotheses are not met; the Riccati construction is shown";

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub assume_no_algebraic_solutions: bool,
    pub degree_bound: Option<usize>,
    pub trace: bool,
}

fn lemma_checks(op: &DiffOp, r: &FieldElem, bound: usize) -> Result<Vec<LemmaDto>, Error> {
    let one = FieldElem::one();
    let lemmas = [
        (
            "N = Y^lambda Y^nu tau(N)",
            Lemma::L31 { alpha: one.clone() },
        ),
        (
            "R = (-r/Y^2) tau(R)",
            Lemma::L32 {
                alpha: one.clone(),
                gamma: 1,
            },
        ),
        ("S + (r/Y^2) tau(S) + 1/Y = 0", Lemma::L33 { alpha: one }),
    ];
    lemmas
        .iter()
        .map(|(name, lemma)| {
            let c = lemma_nullspace_check(op, r, lemma, bound)?;
            Ok(LemmaDto {
                lemma: name.to_string(),
                degree_bound: bound,
                only_trivial: c.only_trivial,
                basis: c.basis.iter().map(render_gen).collect(),
                blocks: c.blocks,
                certified_mod_p: c.certified_mod_p,
            })
        })
        .collect()
}

fn inconclusive(reason: impl Into<String>) -> Verdict {
    Verdict::Inconclusive {
        reason: reason.into(),
    }
}

pub fn analyze(matrix_src: &str, op_spec: &str, opts: &Options) -> Result<VerdictReport, CliError> {
    let op = DiffOp::parse(op_spec)?;
    let a = parse_matrix(matrix_src).map_err(Error::from)?;
    let norm = normalize(&op, &a)?;
    let mut report = VerdictReport {
        input: InputDto {
            matrix: matrix_src.to_string(),
            op: op.to_string(),
        },
        normalization: NormalizationDto::new(&norm, opts.trace),
        hypothesis: None,
        criterion: None,
        solve: None,
        construction: None,
        lemma_checks: Vec::new(),
        verdict: inconclusive("pending"),
        caveats: Vec::new(),
    };
    let r = match &norm {
        NormalizationResult::Tietze { r, .. } => r.clone(),
        NormalizationResult::Periodic { .. } => {
            report.verdict = inconclusive(
                "Periodic: the equation reduces to (tau B) B = r I with tau r = r; the criterion applies to Tietze forms only",
            );
            return Ok(report);
        }
        NormalizationResult::Degenerate { reason } => {
            report.verdict = inconclusive(format!("Degenerate: {reason}"));
            return Ok(report);
        }
    };

    let mut hyp = hypothesis_check(&op, &r);
    if opts.assume_no_algebraic_solutions {
        hyp = hyp.assert_no_algebraic_solutions();
    }
    report.hypothesis = Some(HypothesisDto::from(&hyp));

    let l = build_criterion(&op, &r)?;
    report.criterion = Some(OperatorDto::from(&l));

    let solved = match solve(&l, opts.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND)) {
        Ok(s) => s,
        Err(Error::Internal(msg)) => return Err(CliError::Internal(msg)),
        Err(e) => {
            report.verdict = inconclusive(format!("criterion could not be solved: {e}"));
            return Ok(report);
        }
    };
    report.solve = Some(SolveDto::new(&solved.outcome, &solved.scope, &l));

    if let Some(bound) = opts.degree_bound {
        if hyp.place_witness.is_some() {
            report.lemma_checks = lemma_checks(&op, &r, bound)?;
            if report.lemma_checks.iter().any(|c| !c.only_trivial) {
                report.caveats.push(
                    "a bounded null-space check found solutions beyond the permitted ones".into(),
                );
            }
        } else {
            report.caveats.push(
                "null-space checks skipped: no stable place certifies v_P(tau^i r) > 0".into(),
            );
        }
    }

    match &solved.outcome {
        SolveOutcome::Solution { g, .. } => {
            let check = verify_construction(&op, &r, g)?;
            if !check.holds() {
                return Err(CliError::Internal(
                    "solver output does not yield a commuting derivation".into(),
                ));
            }
            report.construction = Some(ConstructionDto::new(g, &check));
            report.verdict = Verdict::DiffRiccatiConstructed {
                r: render_gen(&check.r_poly),
            };
            if !hyp.dr_nonzero {
                report.caveats.push(CAVEAT_DR_ZERO.into());
            }
            if let SearchScope::BoundedSearchOnly { .. } = solved.scope {
                report
                    .caveats
                    .push(format!("solution found by {}", solved.scope));
            }
        }
        SolveOutcome::NoSolution { .. } => {
            if let SearchScope::BoundedSearchOnly { .. } = solved.scope {
                report.verdict = inconclusive(format!(
                    "no solution found, but the solver ran a {}",
                    solved.scope
                ));
            } else if hyp.fully_passes() {
                report.verdict = Verdict::NoDiffAlgebraicSolution { conditional: true };
                report.caveats.push(CAVEAT_CONDITIONAL.into());
            } else if !hyp.dr_nonzero {
                report.verdict = inconclusive("Dr = 0, so the criterion does not apply");
            } else if hyp.place_witness.is_none() {
                report.verdict =
                    inconclusive("no tau-stable place with v_P(tau^i r) > 0 for all i was found");
            } else {
                report.verdict = inconclusive("no-algebraic-solutions hypothesis not asserted");
                report.caveats.push(CAVEAT_NOT_ASSERTED.into());
            }
        }
    }
    check_invariants(&report)?;
    Ok(report)
}

/// The verdict rules, checked on the serialized report itself.
pub fn check_invariants(report: &VerdictReport) -> Result<(), CliError> {
    let fail = |msg: &str| {
        Err(CliError::Internal(format!(
            "verdict invariant violated: {msg}"
        )))
    };
    match &report.verdict {
        Verdict::NoDiffAlgebraicSolution { conditional } => {
            if !conditional {
                return fail("an unconditional verdict is never issued");
            }
            if !report.hypothesis.as_ref().is_some_and(|h| h.fully_passes) {
                return fail("hypotheses do not fully pass");
            }
            let Some(solve) = &report.solve else {
                return fail("no solver outcome");
            };
            if solve.scope != SearchScope::Complete.to_string() {
                return fail("solver search was not complete");
            }
            if !matches!(solve.outcome, OutcomeDto::NoSolution { replayed: true, .. }) {
                return fail("no replayed nonexistence certificate");
            }
        }
        Verdict::DiffRiccatiConstructed { r } => {
            let Some(c) = &report.construction else {
                return fail("no construction check");
            };
            if !c.holds || c.commutation_defect != "0" || c.criterion_residual != "0" {
                return fail("construction defect is nonzero");
            }
            if &c.r_poly != r {
                return fail("reported R differs from the checked one");
            }
        }
        Verdict::Inconclusive { .. } => {}
    }
    Ok(())
}
