use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced fraction of polynomials over `K`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`.
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    /// Build `num/den` and bring it to canonical form.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<K>, den: Poly<K>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: Poly<K>, den: Poly<K>) -> Self {
        if den.is_monic() {
            return RatFunc { num, den };
        }
        let (lc, den) = den.monic();
        let inv = lc.inv().expect("nonzero leading coefficient");
        RatFunc {
            num: num.scale(&inv),
            den,
        }
    }

    /// Canonicalize a fraction already known to be in lowest terms (only
    /// the leading coefficient of the denominator is normalized).
    pub(crate) fn from_coprime(num: Poly<K>, den: Poly<K>) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert!(num.is_zero() || Poly::gcd(&num, &den).is_one());
        if num.is_zero() {
            return Self::from_poly(num);
        }
        Self::with_monic_den(num, den)
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate of this level.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The coefficient-field value if this element does not involve the
    /// indeterminate.
    pub fn as_constant(&self) -> Option<K> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Field::div(self, other).ok_or(Error::DivisionByZero)
    }

    /// Formal derivative with respect to the indeterminate.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::reduce(num, den)
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Result<RatFunc<L>> {
        RatFunc::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    /// Substitute an element of an extension field for the indeterminate.
    pub fn eval_in<E: Field>(&self, x: &E, lift: impl Fn(&K) -> E) -> Result<E> {
        let n = self.num.eval_in(x, &lift);
        let d = self.den.eval_in(x, &lift);
        n.div(&d).ok_or(Error::PoleOfTransform)
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, x: &K) -> Option<K> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// Substitute a polynomial for the indeterminate.
    pub fn compose_poly(&self, inner: &Poly<K>) -> Result<Self> {
        Self::new(self.num.compose(inner), self.den.compose(inner))
    }

    /// Substitute a rational function for the indeterminate.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.eval_in(inner, |c| Self::constant(c.clone()))
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn from_int(n: i64) -> Self {
        Self::constant(K::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(&self.num + &other.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &other.den);
        let a_cof = self.den.exact_div(&g).expect("gcd divides");
        let b_cof = other.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b_cof) + &(&other.num * &a_cof);
        let den = &self.den * &b_cof;
        Self::reduce(num, den)
    }
    fn sub(&self, other: &Self) -> Self {
        Field::add(self, &Field::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::with_monic_den(&n1 * &n2, &d1 * &d2)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        super::gcd::fraction_field_gcd(a, b)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<K: Field> $tr<&RatFunc<K>> for &RatFunc<K> {
            type Output = RatFunc<K>;
            fn $m(self, rhs: &RatFunc<K>) -> RatFunc<K> {
                $body(self, rhs)
            }
        }
        impl<K: Field> $tr<RatFunc<K>> for RatFunc<K> {
            type Output = RatFunc<K>;
            fn $m(self, rhs: RatFunc<K>) -> RatFunc<K> {
                $body(&self, &rhs)
            }
        }
        impl<K: Field> $tr<&RatFunc<K>> for RatFunc<K> {
            type Output = RatFunc<K>;
            fn $m(self, rhs: &RatFunc<K>) -> RatFunc<K> {
                $body(&self, rhs)
            }
        }
        impl<K: Field> $tr<RatFunc<K>> for &RatFunc<K> {
            type Output = RatFunc<K>;
            fn $m(self, rhs: RatFunc<K>) -> RatFunc<K> {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc<K>, b: &RatFunc<K>| Field::add(a, b));
forward_binop!(Sub, sub, |a: &RatFunc<K>, b: &RatFunc<K>| Field::sub(a, b));
forward_binop!(Mul, mul, |a: &RatFunc<K>, b: &RatFunc<K>| Field::mul(a, b));
// Panics on a zero divisor, like integer division; use `checked_div` when
// the divisor is not known to be nonzero.
forward_binop!(Div, div, |a: &RatFunc<K>, b: &RatFunc<K>| a
    .checked_div(b)
    .expect("division by zero"));

impl<K: Field> Neg for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn neg(self) -> RatFunc<K> {
        Field::neg(self)
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = RatFunc<K>;
    fn neg(self) -> RatFunc<K> {
        Field::neg(&self)
    }
}
