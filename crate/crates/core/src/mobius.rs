//! 2x2 matrices over `Q(q)(t)`, their cocycle products and the Riccati
//! equations they encode.
//!
//! A matrix `A = [[a, b], [c, d]]` stands for `y_1 (c y + d) = a y + b`.
//! Equations are represented by residuals so a failure shows its defect.

use crate::arith::{Field, FieldElem, RatFunc};
use crate::difference::DiffOp;
use crate::error::{Error, Result};

/// Element of `F(Y)`, rational functions in `Y` over the base field.
pub type GenElem = RatFunc<FieldElem>;

/// Rings that contain the base field `F`: `F` itself and `F(Y)`.
pub trait OverBase: Field {
    fn lift(x: &FieldElem) -> Self;
}

impl OverBase for FieldElem {
    fn lift(x: &FieldElem) -> Self {
        x.clone()
    }
}

impl OverBase for GenElem {
    fn lift(x: &FieldElem) -> Self {
        GenElem::constant(x.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(
            FieldElem::one(),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::one(),
        )
    }

    /// `e * [[1, r], [1, 0]]`.
    pub fn tietze(e: &FieldElem, r: &FieldElem) -> Self {
        Self::new(e.clone(), e.mul(r), e.clone(), FieldElem::zero())
    }

    pub fn entries(&self) -> [&FieldElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FieldElem {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a.sub(&o.a),
            self.b.sub(&o.b),
            self.c.sub(&o.c),
            self.d.sub(&o.d),
        )
    }

    pub fn scale(&self, k: &FieldElem) -> Mat2 {
        self.map(|x| x.mul(k))
    }

    pub fn map(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Mat2 {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    /// `None` when `det = 0`.
    pub fn inverse(&self) -> Option<Mat2> {
        let inv = self.det().inv()?;
        Some(Mat2::new(
            self.d.mul(&inv),
            self.b.neg().mul(&inv),
            self.c.neg().mul(&inv),
            self.a.mul(&inv),
        ))
    }

    /// Entrywise transform.
    pub fn tau(&self, op: &DiffOp) -> Mat2 {
        self.map(|x| op.tau(x))
    }

    pub fn tau_n(&self, op: &DiffOp, n: usize) -> Mat2 {
        self.map(|x| op.tau_n(x, n))
    }
}

/// `A_i = (tau^(i-1) A) ... (tau A) A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleProduct {
    pub base: Mat2,
    pub order: usize,
    pub product: Mat2,
}

/// # Panics
/// If `i == 0`.
pub fn cocycle(op: &DiffOp, a: &Mat2, i: usize) -> CocycleProduct {
    assert!(i >= 1, "cocycle order starts at 1");
    let mut product = a.clone();
    let mut shifted = a.clone();
    for _ in 1..i {
        shifted = shifted.tau(op);
        product = shifted.mul(&product);
    }
    CocycleProduct {
        base: a.clone(),
        order: i,
        product,
    }
}

/// `f_i (c f + d) - (a f + b)` for the entries of `A_i`.
pub fn eq_residual<E: OverBase>(op: &DiffOp, f_i: &E, a: &Mat2, i: usize, f: &E) -> E {
    eq_pair(f_i, &cocycle(op, a, i).product, f)
}

/// Residual of `Eq(f; A; g)`: `f (c g + d) - (a g + b)`.
pub fn eq_pair<E: OverBase>(f: &E, a: &Mat2, g: &E) -> E {
    let [ea, eb, ec, ed] = a.entries().map(E::lift);
    f.mul(&ec.mul(g).add(&ed)).sub(&ea.mul(g).add(&eb))
}

/// `(tau P) A P^(-1)`.
pub fn gauge(op: &DiffOp, a: &Mat2, p: &Mat2) -> Result<Mat2> {
    let inv = p.inverse().ok_or(Error::SingularGauge)?;
    Ok(p.tau(op).mul(a).mul(&inv))
}

/// `(a y + b) / (c y + d)`.
pub fn mobius_apply<E: OverBase>(a: &Mat2, y: &E) -> Result<E> {
    let [ea, eb, ec, ed] = a.entries().map(E::lift);
    let den = ec.mul(y).add(&ed);
    ea.mul(y).add(&eb).div(&den).ok_or(Error::PoleOfTransform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_elem, parse_matrix};

    fn e(s: &str) -> FieldElem {
        parse_elem(s).unwrap()
    }

    fn y() -> GenElem {
        GenElem::var()
    }

    #[test]
    fn cocycle_order_two_shift() {
        // A = [[-t, -1], [1, 0]] under t -> t+1
        let op = DiffOp::Shift(crate::arith::Const::one());
        let a = parse_matrix("[[-t,-1],[1,0]]").unwrap();
        assert_eq!(cocycle(&op, &a, 1).product, a);
        let a2 = cocycle(&op, &a, 2).product;
        // with a = t, b = 1: top row (a1 a - b1, a1 b), bottom row (-a, -b)
        assert_eq!(a2.a, e("(t+1)*t-1"));
        assert_eq!(a2.b, e("t+1"));
        assert_eq!(a2.c, e("-t"));
        assert_eq!(a2.d, e("-1"));
    }

    #[test]
    fn residual_examples() {
        let op = DiffOp::QDilation;
        let airy = parse_matrix("[[-q*t,1],[1,0]]").unwrap();
        let one = FieldElem::one();
        assert_eq!(eq_residual(&op, &one, &airy, 1, &one), e("q*t"));
        let z = parse_matrix("[[0,0],[0,1]]").unwrap();
        assert!(eq_pair(&FieldElem::zero(), &z, &FieldElem::zero()).is_zero());
        let x = e("t/(t+q)");
        assert!(eq_pair(&x, &Mat2::identity(), &x).is_zero());
    }

    #[test]
    fn tietze_form_in_generic_extension() {
        let r = e("1/(q^3*t^2)");
        let b = Mat2::tietze(&FieldElem::one(), &r);
        let ty = mobius_apply(&b, &y()).unwrap();
        let want = GenElem::one().add(&GenElem::constant(r).div(&y()).unwrap());
        assert_eq!(ty, want);
        assert!(eq_pair(&ty, &b, &y()).is_zero());
        assert_eq!(mobius_apply(&Mat2::identity(), &y()).unwrap(), y());
    }

    #[test]
    fn airy_mobius_and_gauge() {
        let op = DiffOp::QDilation;
        let a = parse_matrix("[[-q*t,1],[1,0]]").unwrap();
        let ty = mobius_apply(&a, &y()).unwrap();
        let want = GenElem::constant(e("-q*t")).add(&y().inv().unwrap());
        assert_eq!(ty, want);
        let p = parse_matrix("[[-q*t,1],[-q*t,0]]").unwrap();
        let b = gauge(&op, &a, &p).unwrap();
        assert_eq!(b, Mat2::tietze(&e("-q^2*t"), &e("1/(q^3*t^2)")));
        assert_eq!(
            gauge(&op, &a, &parse_matrix("[[t,1],[t,1]]").unwrap()),
            Err(Error::SingularGauge)
        );
    }

    #[test]
    fn mobius_pole() {
        let m = parse_matrix("[[1,0],[1,-1]]").unwrap();
        assert_eq!(
            mobius_apply(&m, &FieldElem::one()),
            Err(Error::PoleOfTransform)
        );
    }
}
