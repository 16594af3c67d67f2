//! The field `F(Y)` generated by a formal Riccati solution `Y`.
//!
//! `tau` acts on coefficients through the base operator and sends `Y` to a
//! prescribed image; a derivation extends `d/dt` once `D Y` is chosen.

use crate::arith::{Field, FieldElem, Poly};
use crate::difference::{derive, DiffOp};
use crate::error::{Error, Result};
use crate::mobius::{mobius_apply, GenElem, Mat2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenStructure {
    pub base_op: DiffOp,
    pub tau_y: GenElem,
    pub d_y: Option<GenElem>,
}

impl GenStructure {
    /// `tau Y = (a Y + b) / (c Y + d)`.
    pub fn from_matrix(op: &DiffOp, a: &Mat2) -> Result<Self> {
        Ok(GenStructure {
            base_op: op.clone(),
            tau_y: mobius_apply(a, &GenElem::var())?,
            d_y: None,
        })
    }

    /// `tau Y = 1 + r / Y`.
    pub fn tietze(op: &DiffOp, r: &FieldElem) -> Self {
        let y = Poly::x();
        GenStructure {
            base_op: op.clone(),
            tau_y: GenElem::new(&y + &Poly::constant(r.clone()), y).expect("Y is nonzero"),
            d_y: None,
        }
    }

    pub fn with_d_y(mut self, d_y: GenElem) -> Self {
        self.d_y = Some(d_y);
        self
    }

    fn d_y(&self) -> Result<&GenElem> {
        self.d_y.as_ref().ok_or(Error::MissingDY)
    }
}

/// Substitute `Y -> num/den` into `p` after transforming its coefficients,
/// homogenized to degree `deg`: returns `sum tau(p_k) num^k den^(deg - k)`.
fn homogeneous_image(
    op: &DiffOp,
    p: &Poly<FieldElem>,
    num: &Poly<FieldElem>,
    den: &Poly<FieldElem>,
    deg: usize,
) -> Poly<FieldElem> {
    let mut num_pows = vec![Poly::one()];
    let mut den_pows = vec![Poly::one()];
    for _ in 0..deg {
        num_pows.push(num_pows.last().expect("nonempty") * num);
        den_pows.push(den_pows.last().expect("nonempty") * den);
    }
    p.terms().fold(Poly::zero(), |acc, (k, c)| {
        let term = (&num_pows[k] * &den_pows[deg - k]).scale(&op.tau(c));
        &acc + &term
    })
}

/// The ring endomorphism of `F(Y)` extending `tau`.
pub fn ext_tau(s: &GenStructure, x: &GenElem) -> Result<GenElem> {
    let (n, d) = (x.num(), x.den());
    let (yn, yd) = (s.tau_y.num(), s.tau_y.den());
    let (dn, dd) = (n.degree().unwrap_or(0), d.degree().unwrap_or(0));
    let deg = dn.max(dd);
    let top = homogeneous_image(&s.base_op, n, yn, yd, deg);
    let bottom = homogeneous_image(&s.base_op, d, yn, yd, deg);
    GenElem::new(top, bottom).map_err(|_| Error::PoleOfTransform)
}

pub fn ext_tau_n(s: &GenStructure, x: &GenElem, n: usize) -> Result<GenElem> {
    (0..n).try_fold(x.clone(), |acc, _| ext_tau(s, &acc))
}

fn derive_poly(p: &Poly<FieldElem>, d_y: &GenElem) -> GenElem {
    let coeffwise = GenElem::from_poly(p.map_coeffs(derive));
    let along_y = GenElem::from_poly(p.derivative()).mul(d_y);
    coeffwise.add(&along_y)
}

/// The derivation of `F(Y)` extending `d/dt` with `D Y = d_y`.
pub fn ext_derive(s: &GenStructure, x: &GenElem) -> Result<GenElem> {
    let d_y = s.d_y()?;
    let (n, d) = (x.num(), x.den());
    let dn = derive_poly(n, d_y);
    let dd = derive_poly(d, d_y);
    let (n, d) = (GenElem::from_poly(n.clone()), GenElem::from_poly(d.clone()));
    let top = dn.mul(&d).sub(&n.mul(&dd));
    top.div(&d.mul(&d))
        .ok_or_else(|| Error::Internal("zero denominator in F(Y)".into()))
}

/// `D(tau Y) - s * tau(D Y)`; zero iff `D tau = s tau D` holds on `F(Y)`.
pub fn commutation_defect(s: &GenStructure) -> Result<GenElem> {
    let d_y = s.d_y()?;
    let lhs = ext_derive(s, &s.tau_y)?;
    let sf = GenElem::constant(s.base_op.s_factor());
    Ok(lhs.sub(&sf.mul(&ext_tau(s, d_y)?)))
}
