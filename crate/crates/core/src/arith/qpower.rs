//! Integer `q`-power roots of polynomials over `Q(q)`.
//!
//! Because `q` is transcendental, `P(q^m) = 0` for an integer `m` is an
//! identity of Laurent polynomials in `q`; two monomials can only cancel
//! when their exponents, as affine functions of `m`, agree. That pins the
//! candidate set down to finitely many values, each tested exactly.

use std::collections::BTreeSet;

use super::field::Field;
use super::poly::Poly;
use super::Const;

/// Integer roots of `m -> P(q^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QPowerRoots {
    /// `P` is the zero polynomial, so every integer is a root.
    All,
    Finite(BTreeSet<i64>),
}

impl QPowerRoots {
    pub fn contains(&self, m: i64) -> bool {
        match self {
            QPowerRoots::All => true,
            QPowerRoots::Finite(s) => s.contains(&m),
        }
    }
}

pub fn q_power_roots(p: &Poly<Const>) -> QPowerRoots {
    if p.is_zero() {
        return QPowerRoots::All;
    }
    // Clear q-denominators: p_i = c_i * L with L the lcm of all denominators.
    let l = p
        .terms()
        .fold(Poly::one(), |acc, (_, c)| Poly::lcm(&acc, c.den()));
    // Monomials (i, k): coefficient of q^k in p_i, contributing q^(k + i m).
    let mut monos: Vec<(i64, i64)> = Vec::new();
    for (i, c) in p.terms() {
        let scaled = c.num() * &l.exact_div(c.den()).expect("lcm divisible");
        for (k, _) in scaled.terms() {
            monos.push((i as i64, k as i64));
        }
    }
    let mut candidates = BTreeSet::new();
    for (a, &(i1, k1)) in monos.iter().enumerate() {
        for &(i2, k2) in &monos[a + 1..] {
            if i1 != i2 && (k2 - k1) % (i1 - i2) == 0 {
                candidates.insert((k2 - k1) / (i1 - i2));
            }
        }
    }
    QPowerRoots::Finite(
        candidates
            .into_iter()
            .filter(|&m| eval_at_q_power(p, m).is_zero())
            .collect(),
    )
}

/// `P(q^m)` computed exactly.
pub fn eval_at_q_power(p: &Poly<Const>, m: i64) -> Const {
    p.eval(&Const::q_pow(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(p: &Poly<Const>) -> Vec<i64> {
        match q_power_roots(p) {
            QPowerRoots::Finite(s) => s.into_iter().collect(),
            QPowerRoots::All => panic!("zero polynomial"),
        }
    }

    #[test]
    fn simple_roots() {
        // x - 1 -> m = 0; x - q -> m = 1; x - 1/q^2 -> m = -2
        let one = Const::one();
        assert_eq!(
            roots(&Poly::from_coeffs(vec![one.neg(), one.clone()])),
            vec![0]
        );
        assert_eq!(
            roots(&Poly::from_coeffs(vec![Const::q().neg(), one.clone()])),
            vec![1]
        );
        assert_eq!(
            roots(&Poly::from_coeffs(vec![
                Const::q_pow(-2).neg(),
                one.clone()
            ])),
            vec![-2]
        );
    }

    #[test]
    fn airy_characteristic_at_infinity() {
        // q^6 x^2 - q^5 x vanishes at x = q^(-1): the root in x is q^k with k = -1.
        let p = Poly::from_coeffs(vec![Const::zero(), Const::q_pow(5).neg(), Const::q_pow(6)]);
        assert_eq!(roots(&p), vec![-1]);
    }

    #[test]
    fn no_roots_for_single_term_or_mismatched_coefficients() {
        assert!(roots(&Poly::monomial(Const::q(), 3)).is_empty());
        // x - 2 has no q-power root
        let p = Poly::from_coeffs(vec![Const::from_int(-2), Const::one()]);
        assert!(roots(&p).is_empty());
    }
}
