use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `x^k`.
///
/// The highest stored coefficient is nonzero, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn monomial(c: K, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn trailing_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn trailing_coeff(&self) -> Option<&K> {
        self.trailing_exponent().map(|k| &self.coeffs[k])
    }

    pub fn as_constant(&self) -> Option<K> {
        match self.coeffs.len() {
            0 => Some(K::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &K)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `x^k`, dropping any lower terms.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Polynomial whose coefficient list is reversed over `deg + 1` slots.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    /// Leading coefficient and the monic associate. The zero polynomial is
    /// returned unchanged with a unit factor.
    pub fn monic(&self) -> (K, Self) {
        match self.lead() {
            None => (K::one(), Self::zero()),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                (lc.clone(), self.scale(&inv))
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// Euclidean division; `None` if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc_inv = divisor.lead()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        K::poly_gcd(a, b)
    }

    pub fn euclid_gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic().1;
        }
        a.monic().1
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        (a * &b.exact_div(&g).expect("gcd divides")).monic().1
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Horner evaluation at an element of an extension field.
    pub fn eval_in<E: Field>(&self, x: &E, lift: impl Fn(&K) -> E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(E::zero(), |acc, c| acc.mul(x).add(&lift(c)))
    }

    /// Substitute another polynomial for the indeterminate.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&K::from_int(k as i64)))
                .collect(),
        )
    }

    /// Multiplicity of `x - alpha` as a factor (`None` for the zero polynomial).
    pub fn root_multiplicity(&self, alpha: &K) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let divisor = Self::from_coeffs(vec![alpha.neg(), K::one()]);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (quot, rem) = p.div_rem(&divisor).expect("nonzero divisor");
            if !rem.is_zero() {
                return Some(m);
            }
            p = quot;
            m += 1;
        }
    }

    /// Resultant of two polynomials via the Euclidean remainder sequence.
    pub fn resultant(a: &Self, b: &Self) -> K {
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return K::zero();
        };
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = K::one();
        loop {
            if db == 0 {
                return acc.mul(&b.lead().expect("nonzero").pow(da as u64));
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            let Some(dr) = r.degree() else {
                return K::zero();
            };
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.lead().expect("nonzero").pow((da - dr) as u64));
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }
}

impl<K: Field> Add<&Poly<K>> for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<K: Field> Sub<&Poly<K>> for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        self + &(-rhs)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
}

impl<K: Field> Mul<&Poly<K>> for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(coeffs)
    }
}
