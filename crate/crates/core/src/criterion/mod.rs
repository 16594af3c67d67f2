//! The third-order linear criterion attached to `tau Y = 1 + r/Y`, the
//! quadratic `R(Y)` built from one of its solutions, and the hypothesis
//! report that decides whether the criterion applies.

mod lemmas;

pub use lemmas::{lemma_nullspace_check, Lemma, LemmaCheck};

use crate::arith::{valuation, Field, FieldElem, Order, Poly, Valuation};
use crate::difference::{derive, DiffOp};
use crate::error::{Error, Result};
use crate::generic::{commutation_defect, GenStructure};
use crate::mobius::GenElem;

/// `sum_i coeffs[i] * tau^i(g) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDiffOp {
    pub op: DiffOp,
    pub coeffs: Vec<FieldElem>,
    pub rhs: FieldElem,
}

impl LinearDiffOp {
    /// Trailing zero coefficients are dropped.
    pub fn new(op: DiffOp, mut coeffs: Vec<FieldElem>, rhs: FieldElem) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        LinearDiffOp { op, coeffs, rhs }
    }

    /// Highest `i` with `c_i != 0`; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    /// `sum_i c_i tau^i(g)`.
    pub fn apply(&self, g: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        let mut shifted = g.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = self.op.tau(&shifted);
            }
            if !c.is_zero() {
                acc = acc.add(&c.mul(&shifted));
            }
        }
        acc
    }

    /// `sum_i c_i tau^i(g) - rhs`.
    pub fn residual(&self, g: &FieldElem) -> FieldElem {
        self.apply(g).sub(&self.rhs)
    }

    /// Multiply the whole equation by `k != 0`.
    pub fn scaled(&self, k: &FieldElem) -> Self {
        LinearDiffOp::new(
            self.op.clone(),
            self.coeffs.iter().map(|c| c.mul(k)).collect(),
            self.rhs.mul(k),
        )
    }
}

/// `c3 tau^3 g + c2 tau^2 g + c1 tau g + c0 g = rhs` with
/// `c3 = tau^2(s r) tau(s) s`, `c2 = (tau r + 1) tau(s) s`,
/// `c1 = -(tau r + 1) s`, `c0 = -r` and `rhs = -s tau(Dr / r)`.
pub fn build_criterion(op: &DiffOp, r: &FieldElem) -> Result<LinearDiffOp> {
    let r_inv = r.inv().ok_or(Error::ZeroR)?;
    let s = op.s_factor();
    let ts = op.tau(&s);
    let tr1 = op.tau(r).add(&FieldElem::one());
    let c3 = op.tau_n(&s.mul(r), 2).mul(&ts).mul(&s);
    let c2 = tr1.mul(&ts).mul(&s);
    let c1 = tr1.mul(&s).neg();
    let c0 = r.neg();
    let rhs = s.mul(&op.tau(&derive(r).mul(&r_inv))).neg();
    Ok(LinearDiffOp::new(op.clone(), vec![c0, c1, c2, c3], rhs))
}

/// `R(Y) = g Y^2 - (tau(s r) s tau^2(g) + s tau(g) - r g + Dr/r) Y - s r tau(g)`.
pub fn build_r(op: &DiffOp, r: &FieldElem, g: &FieldElem) -> Result<GenElem> {
    let r_inv = r.inv().ok_or(Error::ZeroR)?;
    let s = op.s_factor();
    let tg = op.tau(g);
    let ttg = op.tau(&tg);
    let linear = op
        .tau(&s.mul(r))
        .mul(&s)
        .mul(&ttg)
        .add(&s.mul(&tg))
        .sub(&r.mul(g))
        .add(&derive(r).mul(&r_inv));
    let constant = s.mul(r).mul(&tg).neg();
    Ok(GenElem::from_poly(Poly::from_coeffs(vec![
        constant,
        linear.neg(),
        g.clone(),
    ])))
}

/// Both sides of the construction: how far `g` is from solving the
/// criterion, and whether `D Y = -R(Y)` commutes with `tau Y = 1 + r/Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCheck {
    pub criterion_residual: FieldElem,
    pub r_poly: GenElem,
    pub commutation_defect: GenElem,
}

impl ConstructionCheck {
    pub fn holds(&self) -> bool {
        self.criterion_residual.is_zero() && self.commutation_defect.is_zero()
    }
}

pub fn verify_construction(op: &DiffOp, r: &FieldElem, g: &FieldElem) -> Result<ConstructionCheck> {
    let criterion = build_criterion(op, r)?;
    let r_poly = build_r(op, r, g)?;
    let s = GenStructure::tietze(op, r).with_d_y(r_poly.neg());
    Ok(ConstructionCheck {
        criterion_residual: criterion.residual(g),
        commutation_defect: commutation_defect(&s)?,
        r_poly,
    })
}

/// Status of the hypothesis that no `Eq(A, i)` has a solution algebraic
/// over the base field. It is never decided here, only recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraicHypothesis {
    Asserted,
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub r_nonzero: bool,
    pub dr_nonzero: bool,
    pub dr: FieldElem,
    /// A `tau`-stable place `P` with `v_P(tau^i r) > 0` for every `i >= 0`,
    /// together with `v_P(r)`.
    pub place_witness: Option<Valuation>,
    pub algebraic_solution_hypothesis: AlgebraicHypothesis,
}

impl HypothesisReport {
    /// Every hypothesis of the criterion holds or is asserted.
    pub fn fully_passes(&self) -> bool {
        self.r_nonzero
            && self.dr_nonzero
            && self.place_witness.is_some()
            && self.algebraic_solution_hypothesis == AlgebraicHypothesis::Asserted
    }

    pub fn assert_no_algebraic_solutions(mut self) -> Self {
        self.algebraic_solution_hypothesis = AlgebraicHypothesis::Asserted;
        self
    }
}

/// Checks `r != 0`, `Dr != 0` and searches the `tau`-stable places.
///
/// At a stable place `v_P(tau x) = k v_P(x)` with `k >= 1`, so `v_P(r) > 0`
/// already gives `v_P(tau^i r) > 0` for all `i`.
pub fn hypothesis_check(op: &DiffOp, r: &FieldElem) -> HypothesisReport {
    let dr = derive(r);
    let place_witness = if r.is_zero() {
        None
    } else {
        op.stable_places().into_iter().find_map(|place| {
            let order = valuation(r, &place);
            matches!(order, Order::Finite(v) if v > 0).then_some(Valuation { place, order })
        })
    };
    HypothesisReport {
        r_nonzero: !r.is_zero(),
        dr_nonzero: !dr.is_zero(),
        dr,
        place_witness,
        algebraic_solution_hypothesis: AlgebraicHypothesis::Unchecked,
    }
}
