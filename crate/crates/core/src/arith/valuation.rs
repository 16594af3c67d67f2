//! Discrete valuations of `Q(q)(t)/Q(q)` and Laurent expansions at places.

use std::cmp::Ordering;
use std::fmt;

use super::field::Field;
use super::poly::Poly;
use super::{Const, FieldElem};
use crate::error::{Error, Result};

/// A place of `Q(q)(t)` over `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Prime element `t`.
    Zero,
    /// Prime element `1/t`.
    Infinity,
    /// Prime element `t - alpha`.
    FinitePoint(Const),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Zero => write!(f, "P_0"),
            Place::Infinity => write!(f, "P_inf"),
            Place::FinitePoint(a) => write!(f, "P_({a:?})"),
        }
    }
}

/// Order of an element at a place; the zero element has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinite => None,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A place together with the order of some element there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub place: Place,
    pub order: Order,
}

pub fn valuation(x: &FieldElem, place: &Place) -> Order {
    if x.is_zero() {
        return Order::Infinite;
    }
    let (n, d) = (x.num(), x.den());
    let v = match place {
        Place::Infinity => deg(d) - deg(n),
        Place::Zero => trailing(n) - trailing(d),
        Place::FinitePoint(alpha) => {
            mult(n.root_multiplicity(alpha)) - mult(d.root_multiplicity(alpha))
        }
    };
    Order::Finite(v)
}

fn deg(p: &Poly<Const>) -> i64 {
    p.degree().expect("nonzero") as i64
}

fn trailing(p: &Poly<Const>) -> i64 {
    p.trailing_exponent().expect("nonzero") as i64
}

fn mult(m: Option<usize>) -> i64 {
    m.expect("nonzero") as i64
}

/// Coefficient of the lowest-order term of `x` at `Zero` or `Infinity`,
/// i.e. the first Laurent coefficient.
pub fn leading_coefficient_at(x: &FieldElem, place: &Place) -> Option<Const> {
    if x.is_zero() {
        return None;
    }
    let (n, d) = (x.num(), x.den());
    match place {
        Place::Infinity => n.lead()?.div(d.lead()?),
        Place::Zero => n.trailing_coeff()?.div(d.trailing_coeff()?),
        Place::FinitePoint(_) => laurent_expand(x, place, 1)
            .ok()
            .map(|s| s.coeffs[0].clone()),
    }
}

/// Truncated Laurent series in the prime element of a place:
/// `x = sum_k coeffs[k] * pi^(start + k) + O(pi^(start + len))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub place: Place,
    pub start: i64,
    pub coeffs: Vec<Const>,
}

impl LaurentSeries {
    /// The truncation as an element of `Q(q)(t)`.
    pub fn to_elem(&self) -> FieldElem {
        let prime = match &self.place {
            Place::Zero => FieldElem::t(),
            Place::Infinity => FieldElem::t_pow(-1),
            Place::FinitePoint(a) => FieldElem::t().sub(&FieldElem::from_const(a.clone())),
        };
        self.coeffs
            .iter()
            .enumerate()
            .fold(FieldElem::zero(), |acc, (k, c)| {
                let e = self.start + k as i64;
                let term = FieldElem::from_const(c.clone())
                    .mul(&prime.powi(e).expect("prime element is nonzero"));
                acc.add(&term)
            })
    }
}

pub fn laurent_expand(x: &FieldElem, place: &Place, n_terms: usize) -> Result<LaurentSeries> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (num, den, start) = match place {
        Place::Infinity => {
            // With u = 1/t, x = u^(deg d - deg n) * rev(n)(u) / rev(d)(u).
            let start = deg(x.den()) - deg(x.num());
            (x.num().reversed(), x.den().reversed(), start)
        }
        Place::Zero => {
            let (a, b) = (trailing(x.num()), trailing(x.den()));
            (
                x.num().shift_down(a as usize),
                x.den().shift_down(b as usize),
                a - b,
            )
        }
        Place::FinitePoint(alpha) => {
            let shift = Poly::from_coeffs(vec![alpha.clone(), Const::one()]);
            let shifted = x.compose_poly(&shift)?;
            return laurent_expand(&shifted, &Place::Zero, n_terms).map(|s| LaurentSeries {
                place: place.clone(),
                ..s
            });
        }
    };
    Ok(LaurentSeries {
        place: place.clone(),
        start,
        coeffs: power_series_div(&num, &den, n_terms),
    })
}

/// First `n` coefficients of `num/den` as a power series; `den(0) != 0`.
fn power_series_div(num: &Poly<Const>, den: &Poly<Const>, n: usize) -> Vec<Const> {
    let d0_inv = den.coeff(0).inv().expect("unit constant term");
    let mut out: Vec<Const> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            acc = acc.sub(&den.coeff(j).mul(&out[k - j]));
        }
        out.push(acc.mul(&d0_inv));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_elem;

    fn e(s: &str) -> FieldElem {
        parse_elem(s).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            valuation(&e("1/(q^3*t^2)"), &Place::Infinity),
            Order::Finite(2)
        );
        assert_eq!(valuation(&e("t+1"), &Place::Zero), Order::Finite(0));
        assert_eq!(
            valuation(&e("(t-q)^3/t"), &Place::FinitePoint(Const::q())),
            Order::Finite(3)
        );
        assert_eq!(valuation(&FieldElem::zero(), &Place::Zero), Order::Infinite);
        assert_eq!(valuation(&e("t^3/(t^2+1)"), &Place::Zero), Order::Finite(3));
        assert_eq!(
            valuation(&e("t^3/(t^2+1)"), &Place::Infinity),
            Order::Finite(-1)
        );
    }

    #[test]
    fn geometric_series_at_infinity() {
        // 1/(1 - 1/t) = 1 + 1/t + 1/t^2 + ...
        let s = laurent_expand(&e("1/(1-1/t)"), &Place::Infinity, 3).unwrap();
        assert_eq!(s.start, 0);
        assert_eq!(s.coeffs, vec![Const::one(); 3]);
    }

    #[test]
    fn monomial_expansions() {
        let s = laurent_expand(&e("t^2"), &Place::Infinity, 1).unwrap();
        assert_eq!((s.start, s.coeffs.clone()), (-2, vec![Const::one()]));
        let s = laurent_expand(&e("2/t"), &Place::Infinity, 1).unwrap();
        assert_eq!((s.start, s.coeffs.clone()), (1, vec![Const::from_int(2)]));
    }

    #[test]
    fn zero_has_no_expansion() {
        assert_eq!(
            laurent_expand(&FieldElem::zero(), &Place::Zero, 2),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn finite_point_expansion_reconstructs() {
        let x = e("(t-q)^2/(t+1)");
        let p = Place::FinitePoint(Const::q());
        let s = laurent_expand(&x, &p, 4).unwrap();
        assert_eq!(s.start, 2);
        let diff = x.sub(&s.to_elem());
        assert!(valuation(&diff, &p) >= Order::Finite(6));
    }
}
