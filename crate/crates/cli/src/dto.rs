//! Serializable views of pipeline results. Field elements are stored as
//! their canonical rendering.

use serde::{Deserialize, Serialize};
use tietze_core::solver::{ObstructionCert, SearchScope, SolveOutcome};
use tietze_core::tietze::TraceStep;
use tietze_core::{
    render, render_gen, render_matrix, AlgebraicHypothesis, ConstructionCheck, FieldElem,
    HypothesisReport, LinearDiffOp, NormalizationResult, Order, Place,
};

fn render_order(o: Order) -> String {
    match o {
        Order::Finite(v) => v.to_string(),
        Order::Infinite => "inf".into(),
    }
}

fn render_place(p: &Place) -> String {
    match p {
        Place::Zero => "0".into(),
        Place::Infinity => "inf".into(),
        Place::FinitePoint(a) => format!("t = {}", render(&FieldElem::from_const(a.clone()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDto {
    pub matrix: String,
    pub op: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepDto {
    pub class: String,
    pub p: String,
    pub result: String,
}

impl From<&TraceStep> for TraceStepDto {
    fn from(s: &TraceStep) -> Self {
        TraceStepDto {
            class: s.class.to_string(),
            p: render_matrix(&s.p),
            result: render_matrix(&s.result),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalizationDto {
    Tietze {
        e: String,
        r: String,
        q: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        trace: Vec<TraceStepDto>,
    },
    Periodic {
        r: String,
        q: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        trace: Vec<TraceStepDto>,
    },
    Degenerate {
        reason: String,
    },
}

impl NormalizationDto {
    pub fn new(res: &NormalizationResult, with_trace: bool) -> Self {
        let trace = |t: &[TraceStep]| {
            if with_trace {
                t.iter().map(TraceStepDto::from).collect()
            } else {
                Vec::new()
            }
        };
        match res {
            NormalizationResult::Tietze { e, r, q, trace: t } => NormalizationDto::Tietze {
                e: render(e),
                r: render(r),
                q: render_matrix(q),
                trace: trace(t),
            },
            NormalizationResult::Periodic { r, q, trace: t } => NormalizationDto::Periodic {
                r: render(r),
                q: render_matrix(q),
                trace: trace(t),
            },
            NormalizationResult::Degenerate { reason } => NormalizationDto::Degenerate {
                reason: reason.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub place: String,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisDto {
    pub r_nonzero: bool,
    pub dr: String,
    pub dr_nonzero: bool,
    pub place_witness: Option<WitnessDto>,
    /// `asserted` or `unchecked`.
    pub algebraic_solution_hypothesis: String,
    pub fully_passes: bool,
}

impl From<&HypothesisReport> for HypothesisDto {
    fn from(h: &HypothesisReport) -> Self {
        HypothesisDto {
            r_nonzero: h.r_nonzero,
            dr: render(&h.dr),
            dr_nonzero: h.dr_nonzero,
            place_witness: h.place_witness.as_ref().map(|w| WitnessDto {
                place: render_place(&w.place),
                order: render_order(w.order),
            }),
            algebraic_solution_hypothesis: match h.algebraic_solution_hypothesis {
                AlgebraicHypothesis::Asserted => "asserted".into(),
                AlgebraicHypothesis::Unchecked => "unchecked".into(),
            },
            fully_passes: h.fully_passes(),
        }
    }
}

/// `sum_k coeffs[k] tau^k g = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDto {
    pub op: String,
    pub coeffs: Vec<String>,
    pub rhs: String,
}

impl From<&LinearDiffOp> for OperatorDto {
    fn from(l: &LinearDiffOp) -> Self {
        OperatorDto {
            op: l.op.to_string(),
            coeffs: l.coeffs.iter().map(render).collect(),
            rhs: render(&l.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateDto {
    IndicialAtInfinity {
        order: i64,
        residual: String,
    },
    IndicialAtZero {
        order: i64,
        residual: String,
    },
    LinearSystemInconsistent {
        rank: usize,
        augmented_rank: usize,
        window: (i64, i64),
        denominator: String,
    },
}

impl From<&ObstructionCert> for CertificateDto {
    fn from(c: &ObstructionCert) -> Self {
        let rc = |x: &tietze_core::Const| render(&FieldElem::from_const(x.clone()));
        match c {
            ObstructionCert::IndicialAtInfinity { order, residual } => {
                CertificateDto::IndicialAtInfinity {
                    order: *order,
                    residual: rc(residual),
                }
            }
            ObstructionCert::IndicialAtZero { order, residual } => CertificateDto::IndicialAtZero {
                order: *order,
                residual: rc(residual),
            },
            ObstructionCert::LinearSystemInconsistent {
                rank,
                augmented_rank,
                window,
                denominator,
            } => CertificateDto::LinearSystemInconsistent {
                rank: *rank,
                augmented_rank: *augmented_rank,
                window: *window,
                denominator: render(&FieldElem::from_poly(denominator.clone())),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeDto {
    Solution {
        g: String,
        nullspace_basis: Vec<String>,
    },
    NoSolution {
        certificate: CertificateDto,
        replayed: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveDto {
    pub scope: String,
    pub outcome: OutcomeDto,
}

impl SolveDto {
    pub fn new(outcome: &SolveOutcome, scope: &SearchScope, l: &LinearDiffOp) -> Self {
        let outcome = match outcome {
            SolveOutcome::Solution { g, nullspace_basis } => OutcomeDto::Solution {
                g: render(g),
                nullspace_basis: nullspace_basis.iter().map(render).collect(),
            },
            SolveOutcome::NoSolution { certificate } => OutcomeDto::NoSolution {
                certificate: certificate.into(),
                replayed: certificate.replay(l),
            },
        };
        SolveDto {
            scope: scope.to_string(),
            outcome,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionDto {
    pub g: String,
    pub criterion_residual: String,
    pub r_poly: String,
    pub commutation_defect: String,
    pub holds: bool,
}

impl ConstructionDto {
    pub fn new(g: &FieldElem, c: &ConstructionCheck) -> Self {
        ConstructionDto {
            g: render(g),
            criterion_residual: render(&c.criterion_residual),
            r_poly: render_gen(&c.r_poly),
            commutation_defect: render_gen(&c.commutation_defect),
            holds: c.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaDto {
    pub lemma: String,
    pub degree_bound: usize,
    pub only_trivial: bool,
    pub basis: Vec<String>,
    pub blocks: usize,
    pub certified_mod_p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No solution differentially algebraic over the base field, relying on
    /// the no-algebraic-solutions hypothesis.
    NoDiffAlgebraicSolution {
        conditional: bool,
    },
    DiffRiccatiConstructed {
        r: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::NoDiffAlgebraicSolution { conditional: true } => {
                "NoDiffAlgebraicSolution(conditional)".into()
            }
            Verdict::NoDiffAlgebraicSolution { conditional: false } => {
                "NoDiffAlgebraicSolution".into()
            }
            Verdict::DiffRiccatiConstructed { r } => format!("DiffRiccatiConstructed{{R = {r}}}"),
            Verdict::Inconclusive { reason } => format!("Inconclusive{{{reason}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub input: InputDto,
    pub normalization: NormalizationDto,
    pub hypothesis: Option<HypothesisDto>,
    pub criterion: Option<OperatorDto>,
    pub solve: Option<SolveDto>,
    pub construction: Option<ConstructionDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemma_checks: Vec<LemmaDto>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
}
