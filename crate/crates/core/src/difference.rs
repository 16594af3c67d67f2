//! The transforming operator `tau`, the derivation `D = d/dt` and the
//! commutation factor `s` with `D tau = s tau D` on `Q(q)(t)`.

use std::fmt;

use crate::arith::{Const, Field, FieldElem, Place, Poly, TPoly};
use crate::error::{Error, Result};
use crate::expr::{parse_elem, render};

/// A transforming operator `x(t) -> x(phi(t))` fixing `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffOp {
    /// `phi(t) = t + c`
    Shift(Const),
    /// `phi(t) = q t`
    QDilation,
    /// `phi(t) = t^p`, `p >= 2`
    Mahler(u32),
}

impl DiffOp {
    /// Parse `shift:c`, `qdilation` or `mahler:p`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = || Error::InvalidOperator(spec.to_string());
        if spec == "qdilation" {
            return Ok(DiffOp::QDilation);
        }
        if let Some(c) = spec.strip_prefix("shift:") {
            let c = parse_elem(c)?.as_constant().ok_or_else(bad)?;
            return Ok(DiffOp::Shift(c));
        }
        if let Some(p) = spec.strip_prefix("mahler:") {
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            if p < 2 {
                return Err(bad());
            }
            return Ok(DiffOp::Mahler(p));
        }
        Err(bad())
    }

    /// `phi(t)` as a polynomial in `t`.
    pub fn substitution(&self) -> TPoly {
        match self {
            DiffOp::Shift(c) => Poly::from_coeffs(vec![c.clone(), Const::one()]),
            DiffOp::QDilation => Poly::monomial(Const::q(), 1),
            DiffOp::Mahler(p) => Poly::monomial(Const::one(), *p as usize),
        }
    }

    /// `s = d phi / dt`, so that `D tau = s tau D`.
    pub fn s_factor(&self) -> FieldElem {
        FieldElem::from_poly(self.substitution().derivative())
    }

    pub fn tau(&self, x: &FieldElem) -> FieldElem {
        let (n, d) = (x.num(), x.den());
        match self {
            DiffOp::QDilation => {
                let scale = |p: &TPoly| {
                    Poly::from_coeffs(
                        p.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(k, c)| c.mul(&Const::q_pow(k as i64)))
                            .collect(),
                    )
                };
                FieldElem::from_coprime(scale(n), scale(d))
            }
            _ => {
                let phi = self.substitution();
                FieldElem::from_coprime(n.compose(&phi), d.compose(&phi))
            }
        }
    }

    pub fn tau_n(&self, x: &FieldElem, n: usize) -> FieldElem {
        (0..n).fold(x.clone(), |acc, _| self.tau(&acc))
    }

    /// Places `P` with `tau P = P`; valuations there transform predictably.
    pub fn stable_places(&self) -> Vec<Place> {
        match self {
            DiffOp::Shift(_) => vec![Place::Infinity],
            DiffOp::QDilation | DiffOp::Mahler(_) => vec![Place::Infinity, Place::Zero],
        }
    }

    /// `v_P(tau x) = factor * v_P(x)` at each stable place.
    pub fn valuation_factor(&self) -> i64 {
        match self {
            DiffOp::Shift(_) | DiffOp::QDilation => 1,
            DiffOp::Mahler(p) => *p as i64,
        }
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffOp::Shift(c) => write!(f, "shift:{}", render(&FieldElem::from_const(c.clone()))),
            DiffOp::QDilation => write!(f, "qdilation"),
            DiffOp::Mahler(p) => write!(f, "mahler:{p}"),
        }
    }
}

/// `d/dt` with `Q(q)` as constants.
pub fn derive(x: &FieldElem) -> FieldElem {
    x.derivative()
}

/// `D(tau x) - s * tau(D x) == 0`.
pub fn verify_commutation(op: &DiffOp, x: &FieldElem) -> bool {
    let lhs = derive(&op.tau(x));
    let rhs = op.s_factor().mul(&op.tau(&derive(x)));
    lhs == rhs
}
