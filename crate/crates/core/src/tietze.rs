//! Reduction of a Riccati matrix to Tietze form `e * [[1, r], [1, 0]]`.
//!
//! Forms, tested in this order:
//!
//! | tag  | shape                                   |
//! |------|-----------------------------------------|
//! | `FT` | `e * [[1, r], [1, 0]]`, `e, r != 0`     |
//! | `F2` | `[[a, b], [1, 0]]`, `a != 0`            |
//! | `F3` | `[[0, b], [1, 0]]`, `tau b != b`        |
//! | `F4` | `[[0, b], [1, 0]]`, `tau b == b`        |
//! | `F1` | `c != 0`, anything else                 |
//!
//! Matrices with `c = 0` or `det = 0` are degenerate.

use std::fmt;

use crate::arith::{Field, FieldElem};
use crate::difference::DiffOp;
use crate::error::{Error, Result};
use crate::mobius::{cocycle, gauge, Mat2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormClass {
    F1,
    F2,
    F3,
    F4,
    FT,
    Degenerate,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormClass::F1 => "F1",
            FormClass::F2 => "F2",
            FormClass::F3 => "F3",
            FormClass::F4 => "F4",
            FormClass::FT => "FT",
            FormClass::Degenerate => "Degenerate",
        };
        f.write_str(s)
    }
}

/// One reduction step: the class before the step, the gauge matrix used and
/// the resulting matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub class: FormClass,
    pub p: Mat2,
    pub result: Mat2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizationResult {
    /// `gauge(A, q) = e * [[1, r], [1, 0]]`.
    Tietze {
        e: FieldElem,
        r: FieldElem,
        q: Mat2,
        trace: Vec<TraceStep>,
    },
    /// Reduced to `B = [[0, r], [1, 0]]` with `tau r = r`, so
    /// `(tau B) B = r I` and the equation is periodic of period two.
    Periodic {
        r: FieldElem,
        q: Mat2,
        trace: Vec<TraceStep>,
    },
    Degenerate {
        reason: String,
    },
}

impl NormalizationResult {
    pub fn trace(&self) -> &[TraceStep] {
        match self {
            NormalizationResult::Tietze { trace, .. }
            | NormalizationResult::Periodic { trace, .. } => trace,
            NormalizationResult::Degenerate { .. } => &[],
        }
    }
}

fn degenerate_reason(a: &Mat2) -> Option<&'static str> {
    if a.c.is_zero() {
        Some("lower-left entry c is zero (first-order linear equation)")
    } else if a.det().is_zero() {
        Some("matrix is singular (det = 0)")
    } else {
        None
    }
}

pub fn classify(op: &DiffOp, a: &Mat2) -> FormClass {
    if degenerate_reason(a).is_some() {
        return FormClass::Degenerate;
    }
    let lower_form = a.c.is_one() && a.d.is_zero();
    if a.d.is_zero() && a.a == a.c && !a.b.is_zero() {
        FormClass::FT
    } else if lower_form && !a.a.is_zero() {
        FormClass::F2
    } else if lower_form && op.tau(&a.b) != a.b {
        FormClass::F3
    } else if lower_form {
        FormClass::F4
    } else {
        FormClass::F1
    }
}

/// Apply the reduction step for an `F1`, `F2` or `F3` matrix.
pub fn step(op: &DiffOp, a: &Mat2) -> Result<(Mat2, Mat2)> {
    let class = classify(op, a);
    let p = match class {
        FormClass::F1 => Mat2::new(
            a.c.clone(),
            a.d.clone(),
            FieldElem::zero(),
            FieldElem::one(),
        ),
        FormClass::F2 => Mat2::new(a.a.clone(), a.b.clone(), a.a.clone(), FieldElem::zero()),
        FormClass::F3 => {
            // tau fixes 1, so tau b != b already forces b != 1
            if a.b.is_one() {
                return Err(Error::Internal("F3 step with b = 1".into()));
            }
            Mat2::new(
                FieldElem::one(),
                a.b.clone(),
                FieldElem::one(),
                FieldElem::one(),
            )
        }
        other => {
            return Err(Error::WrongForm {
                found: other.to_string(),
            })
        }
    };
    let next = gauge(op, a, &p)?;
    Ok((p, next))
}

const MAX_STEPS: usize = 3;

pub fn normalize(op: &DiffOp, a: &Mat2) -> Result<NormalizationResult> {
    if let Some(reason) = degenerate_reason(a) {
        return Ok(NormalizationResult::Degenerate {
            reason: reason.to_string(),
        });
    }
    let mut cur = a.clone();
    let mut q = Mat2::identity();
    let mut trace = Vec::new();
    loop {
        let class = classify(op, &cur);
        match class {
            FormClass::FT => {
                let e = cur.a.clone();
                let r = cur.b.checked_div(&e)?;
                let target = Mat2::tietze(&e, &r);
                if !gauge(op, a, &q)?.sub(&target).is_zero() {
                    return Err(Error::Internal(
                        "composite gauge does not reproduce FT form".into(),
                    ));
                }
                return Ok(NormalizationResult::Tietze { e, r, q, trace });
            }
            FormClass::F4 => {
                let r = cur.b.clone();
                let scalar = Mat2::identity().scale(&r);
                if cocycle(op, &cur, 2).product != scalar {
                    return Err(Error::Internal(
                        "periodic form violates (tau B) B = r I".into(),
                    ));
                }
                return Ok(NormalizationResult::Periodic { r, q, trace });
            }
            FormClass::Degenerate => {
                return Err(Error::Internal(
                    "reduction step produced a degenerate matrix".into(),
                ));
            }
            FormClass::F1 | FormClass::F2 | FormClass::F3 => {
                if trace.len() == MAX_STEPS {
                    return Err(Error::Internal(format!(
                        "reduction did not terminate within {MAX_STEPS} steps"
                    )));
                }
                if class == FormClass::F1 && !trace.is_empty() {
                    // F1 images always have the lower-form shape
                    return Err(Error::Internal(
                        "re-entered F1 after a reduction step".into(),
                    ));
                }
                let (p, next) = step(op, &cur)?;
                q = p.mul(&q);
                trace.push(TraceStep {
                    class,
                    p,
                    result: next.clone(),
                });
                cur = next;
            }
        }
    }
}
