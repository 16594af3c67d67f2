//! Human-readable output.

use std::fmt::Write;

use crate::dto::{
    CertificateDto, ConstructionDto, HypothesisDto, NormalizationDto, OperatorDto, OutcomeDto,
    SolveDto, VerdictReport,
};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn normalization(n: &NormalizationDto) -> String {
    let mut out = String::new();
    let trace = match n {
        NormalizationDto::Tietze { e, r, q, trace } => {
            let _ = writeln!(out, "normalization: Tietze form e*[[1,r],[1,0]]");
            let _ = writeln!(out, "  e = {e}");
            let _ = writeln!(out, "  r = {r}");
            let _ = write!(out, "  Q = {q}");
            trace
        }
        NormalizationDto::Periodic { r, q, trace } => {
            let _ = writeln!(out, "normalization: periodic form [[0,r],[1,0]], tau r = r");
            let _ = writeln!(out, "  r = {r}");
            let _ = write!(out, "  Q = {q}");
            trace
        }
        NormalizationDto::Degenerate { reason } => {
            let _ = write!(out, "normalization: degenerate ({reason})");
            return out;
        }
    };
    for (i, s) in trace.iter().enumerate() {
        let _ = write!(
            out,
            "\n  step {}: {} with P = {} gives {}",
            i + 1,
            s.class,
            s.p,
            s.result
        );
    }
    out
}

pub fn hypothesis(h: &HypothesisDto) -> String {
    let witness = match &h.place_witness {
        Some(w) => format!("v_{}(r) = {}", w.place, w.order),
        None => "none".into(),
    };
    format!(
        "hypotheses: r != 0: {}; Dr = {} (nonzero: {}); stable place witness: {}; no algebraic solutions: {}; all pass: {}",
        yes_no(h.r_nonzero),
        h.dr,
        yes_no(h.dr_nonzero),
        witness,
        h.algebraic_solution_hypothesis,
        yes_no(h.fully_passes)
    )
}

pub fn operator(l: &OperatorDto) -> String {
    let mut out = format!("criterion ({}): sum_k c_k tau^k g = rhs", l.op);
    for (k, c) in l.coeffs.iter().enumerate() {
        let _ = write!(out, "\n  c{k} = {c}");
    }
    let _ = write!(out, "\n  rhs = {}", l.rhs);
    out
}

fn certificate(c: &CertificateDto) -> String {
    match c {
        CertificateDto::IndicialAtInfinity { order, residual } => format!(
            "indicial obstruction at infinity: order {order}, coefficient equation 0 = {residual}"
        ),
        CertificateDto::IndicialAtZero { order, residual } => format!(
            "indicial obstruction at zero: order {order}, coefficient equation 0 = {residual}"
        ),
        CertificateDto::LinearSystemInconsistent {
            rank,
            augmented_rank,
            window,
            denominator,
        } => format!(
            "inconsistent linear system: rank {rank} < augmented rank {augmented_rank} for t^{} .. t^{} over {denominator}",
            window.0, window.1
        ),
    }
}

pub fn solve(s: &SolveDto) -> String {
    match &s.outcome {
        OutcomeDto::Solution { g, nullspace_basis } => {
            let mut out = format!("solve ({}): solution g = {g}", s.scope);
            for h in nullspace_basis {
                let _ = write!(out, "\n  homogeneous solution: {h}");
            }
            out
        }
        OutcomeDto::NoSolution {
            certificate: c,
            replayed,
        } => format!(
            "solve ({}): no solution; {} (replayed: {})",
            s.scope,
            certificate(c),
            yes_no(*replayed)
        ),
    }
}

pub fn construction(c: &ConstructionDto) -> String {
    format!(
        "construction for g = {}:\n  criterion residual = {}\n  R(Y) = {}\n  commutation defect = {}\n  holds: {}",
        c.g,
        c.criterion_residual,
        c.r_poly,
        c.commutation_defect,
        yes_no(c.holds)
    )
}

pub fn report(r: &VerdictReport) -> String {
    let mut parts = vec![
        format!("input: A = {}, op = {}", r.input.matrix, r.input.op),
        normalization(&r.normalization),
    ];
    parts.extend(r.hypothesis.as_ref().map(hypothesis));
    parts.extend(r.criterion.as_ref().map(operator));
    parts.extend(r.solve.as_ref().map(solve));
    parts.extend(r.construction.as_ref().map(construction));
    for c in &r.lemma_checks {
        parts.push(format!(
            "null-space check {} (bound {}): only permitted solutions: {}; {} of {} systems settled mod p",
            c.lemma,
            c.degree_bound,
            yes_no(c.only_trivial),
            c.certified_mod_p,
            c.blocks
        ));
    }
    parts.push(format!("verdict: {}", r.verdict.label()));
    parts.extend(r.caveats.iter().map(|c| format!("caveat: {c}")));
    parts.join("\n")
}
