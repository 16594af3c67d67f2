//! Exact arithmetic for the tower Q ⊂ Q(q) ⊂ Q(q)(t).
//!
//! Every level is a [`RatFunc`] over the level below, so the same reduced
//! fraction code serves the constant field `Q(q)`, the base field
//! `Q(q)(t)` and the generic extension `Q(q)(t)(Y)`.

pub mod field;
mod gcd;
pub mod linalg;
pub mod poly;
pub mod qpower;
pub mod ratfunc;
pub mod valuation;

pub use field::{Field, Rat};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use valuation::{laurent_expand, valuation, LaurentSeries, Order, Place, Valuation};

use num_bigint::BigInt;

/// Element of `Q(q)`; `q` is a transcendental indeterminate.
pub type Const = RatFunc<Rat>;

/// Polynomial in `t` with coefficients in `Q(q)`.
pub type TPoly = Poly<Const>;

/// Element of the base field `Q(q)(t)`.
pub type FieldElem = RatFunc<Const>;

pub fn rat(n: i64) -> Rat {
    Rat::from_int(n)
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl RatFunc<Rat> {
    pub fn q() -> Self {
        Self::var()
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(Rat::from_int(1), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            Self::new(Poly::one(), m).expect("nonzero monomial")
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(r)
    }

    /// Specialize `q` to a rational value (`None` at a pole).
    pub fn eval_q(&self, q0: &Rat) -> Option<Rat> {
        self.eval(q0)
    }
}

impl RatFunc<Const> {
    pub fn t() -> Self {
        Self::var()
    }

    /// `q` embedded as a constant of `Q(q)(t)`.
    pub fn q() -> Self {
        Self::constant(Const::q())
    }

    pub fn from_const(c: Const) -> Self {
        Self::constant(c)
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(Const::from_rat(r))
    }

    pub fn t_pow(k: i64) -> Self {
        let m = Poly::monomial(Const::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            Self::new(Poly::one(), m).expect("nonzero monomial")
        }
    }

    /// `c * t^k`.
    pub fn monomial(c: Const, k: i64) -> Self {
        Self::from_const(c).mul(&Self::t_pow(k))
    }
}
