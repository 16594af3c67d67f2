//! Polynomial gcds over the fraction fields of the tower.
//!
//! Euclid over `Q` or `Q(x)` swells coefficients badly, so gcds are taken on
//! integral representatives: a primitive remainder sequence in `Z[y]`, and
//! evaluation at integer points followed by rational reconstruction in
//! `K(x)[y]`, with the remainder sequence in `K[x][y]` as fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Rat};
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Integer associate with unit content (signs are irrelevant here).
fn primitive_integer(p: &Poly<Rat>) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(p.coeffs().iter().map(|c| (c * &l).to_integer()).collect())
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_one() {
        p
    } else {
        p.into_iter().map(|c| c / &g).collect()
    }
}

fn integer_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = b.len() - 1;
    let lc = &b[n];
    let mut r = a.to_vec();
    while r.len() > n {
        let top = r.len() - 1;
        let lead = r[top].clone();
        let shift = top - n;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lead * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over `Q` through the primitive remainder sequence in `Z[y]`.
pub(crate) fn rational_gcd(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        return nz.monic().1;
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Poly::one();
    }
    let mut u = primitive_integer(a);
    let mut v = primitive_integer(b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let r = integer_pseudo_rem(&u, &v);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Poly::one();
        }
        u = v;
        v = primitive(r);
    }
    Poly::from_coeffs(v.into_iter().map(BigRational::from_integer).collect())
        .monic()
        .1
}

/// Polynomial in `y` with coefficients in `K[x]`, low degree first.
type Nested<K> = Vec<Poly<K>>;

fn trim<K: Field>(mut p: Nested<K>) -> Nested<K> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Scale by the lcm of the coefficient denominators.
fn clear_denominators<K: Field>(p: &Poly<RatFunc<K>>) -> Nested<K> {
    let l = p
        .coeffs()
        .iter()
        .fold(Poly::one(), |acc, c| Poly::lcm(&acc, c.den()));
    p.coeffs()
        .iter()
        .map(|c| c.num() * &l.exact_div(c.den()).expect("lcm is a multiple"))
        .collect()
}

fn primitive_part<K: Field>(p: Nested<K>) -> Nested<K> {
    let mut content = Poly::zero();
    for c in &p {
        content = Poly::gcd(&content, c);
        if content.degree() == Some(0) {
            break;
        }
    }
    if content.degree() == Some(0) {
        let inv = content
            .lead()
            .and_then(|c| c.inv())
            .expect("nonzero content");
        return p.iter().map(|c| c.scale(&inv)).collect();
    }
    p.iter()
        .map(|c| c.exact_div(&content).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn pseudo_rem<K: Field>(a: &Nested<K>, b: &Nested<K>) -> Nested<K> {
    let n = b.len() - 1;
    let lc = &b[n];
    let mut r = a.clone();
    while r.len() > n {
        let top = r.len() - 1;
        let lead = r[top].clone();
        let shift = top - n;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lead * bc);
        }
        r = trim(r);
    }
    r
}

fn lift<K: Field>(p: &Nested<K>) -> Poly<RatFunc<K>> {
    Poly::from_coeffs(p.iter().cloned().map(RatFunc::from_poly).collect())
}

fn prs_gcd<K: Field>(mut u: Nested<K>, mut v: Nested<K>) -> Poly<RatFunc<K>> {
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let r = pseudo_rem(&u, &v);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Poly::one();
        }
        u = v;
        v = primitive_part(r);
    }
    lift(&v).monic().1
}

/// Evaluation points `2, -2, 3, -3, ...`.
fn point(i: usize) -> i64 {
    let k = (i / 2 + 2) as i64;
    if i.is_multiple_of(2) {
        k
    } else {
        -k
    }
}

fn x_degree<K: Field>(p: &Nested<K>) -> usize {
    p.iter().filter_map(Poly::degree).max().unwrap_or(0)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate<K: Field>(xs: &[K], ys: &[K]) -> Poly<K> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = xs[i].sub(&xs[i - j]);
            c[i] = c[i].sub(&c[i - 1]).div(&dx).expect("distinct points");
        }
    }
    let mut p = Poly::constant(c[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = Poly::from_coeffs(vec![xs[i].neg(), K::one()]);
        p = &(&p * &factor) + &Poly::constant(c[i].clone());
    }
    p
}

/// Gcd from images at `x = x0` (Brown's dense interpolation), `None` if the
/// points run out.
///
/// Where both leading coefficients survive, the monic image gcd has degree
/// at least that of the true gcd, with equality at all but finitely many
/// points. Scaled by `gamma(x0)`, with `gamma = gcd(lc u, lc v)`, lucky
/// images are values of a polynomial of degree at most
/// `deg gamma + min(deg_x u, deg_x v)`, recovered by interpolation. A
/// candidate is tried once one further point agrees with it, and accepted
/// only if it divides both inputs.
fn interpolation_gcd<K: Field>(u: &Nested<K>, v: &Nested<K>) -> Option<Poly<RatFunc<K>>> {
    let (lu, lv) = (u.last()?, v.last()?);
    let gamma = Poly::gcd(lu, lv);
    let needed = gamma.degree()? + x_degree(u).min(x_degree(v)) + 1;
    let (wu, wv) = (lift(u), lift(v));
    let image = |p: &Nested<K>, x0: &K| Poly::from_coeffs(p.iter().map(|c| c.eval(x0)).collect());
    let mut xs: Vec<K> = Vec::new();
    let mut images: Vec<Poly<K>> = Vec::new();
    let mut next_check = 1;
    for i in 0..(4 * needed + 16) {
        let x0 = K::from_int(point(i));
        if lu.eval(&x0).is_zero() || lv.eval(&x0).is_zero() {
            continue;
        }
        let g = Poly::gcd(&image(u, &x0), &image(v, &x0));
        let deg = g.degree().expect("nonzero images");
        if deg == 0 {
            return Some(Poly::one());
        }
        if let Some(k) = images.first().and_then(Poly::degree) {
            if deg > k {
                continue;
            }
            if deg < k {
                xs.clear();
                images.clear();
                next_check = 1;
            }
        }
        xs.push(x0);
        images.push(g.scale(&gamma.eval(xs.last().expect("just pushed"))));
        let n = xs.len();
        if n <= next_check && n <= needed {
            continue;
        }
        next_check = 2 * n;
        // interpolate through all but the newest point, then compare there
        let k = deg;
        let coeffs: Nested<K> = (0..=k)
            .map(|j| {
                let ys: Vec<K> = images[..n - 1].iter().map(|g| g.coeff(j)).collect();
                interpolate(&xs[..n - 1], &ys)
            })
            .collect();
        let agrees = coeffs
            .iter()
            .zip(images[n - 1].coeffs())
            .all(|(c, y)| c.eval(&xs[n - 1]) == *y);
        if agrees {
            let c = lift(&primitive_part(trim(coeffs))).monic().1;
            if wu.div_rem(&c)?.1.is_zero() && wv.div_rem(&c)?.1.is_zero() {
                return Some(c);
            }
        }
        if n > needed {
            return None;
        }
    }
    None
}

/// Monic gcd over `K(x)`.
pub(crate) fn fraction_field_gcd<K: Field>(
    a: &Poly<RatFunc<K>>,
    b: &Poly<RatFunc<K>>,
) -> Poly<RatFunc<K>> {
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        return nz.monic().1;
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Poly::one();
    }
    let u = primitive_part(clear_denominators(a));
    let v = primitive_part(clear_denominators(b));
    interpolation_gcd(&u, &v).unwrap_or_else(|| prs_gcd(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::TPoly;
    use crate::expr::parse_elem;

    fn tp(s: &str) -> TPoly {
        let e = parse_elem(s).unwrap();
        assert!(e.den().is_one());
        e.num().clone()
    }

    #[test]
    fn rational_gcd_of_integer_polynomials() {
        let p = |c: &[i64]| Poly::from_coeffs(c.iter().map(|&x| Rat::from_int(x)).collect());
        // (x - 1)(x + 2) and (x - 1)(3x + 5)
        let g = rational_gcd(&p(&[-2, 1, 1]), &p(&[-5, 2, 3]));
        assert_eq!(g, p(&[-1, 1]));
        assert!(rational_gcd(&p(&[1, 1]), &p(&[-1, 1])).is_one());
    }

    #[test]
    fn interpolated_gcd_matches_euclid() {
        let common = tp("q^2*t^2-3*q^2*t-2*t+6");
        let a = &common * &tp("(q^3+1)*t^3-q*t+7");
        let b = &common * &tp("t^2-q^5*t+q-2");
        let want = Poly::euclid_gcd(&a, &b);
        assert_eq!(fraction_field_gcd(&a, &b), want);
        assert_eq!(want.degree(), Some(2));
        let c = tp("t-q");
        assert!(fraction_field_gcd(&c, &tp("t-1")).is_one());
        assert_eq!(fraction_field_gcd(&c, &(&c * &c)), c);
    }

    #[test]
    fn newton_interpolation() {
        let xs: Vec<Rat> = (1..=4).map(<Rat as Field>::from_int).collect();
        let f = |x: &Rat| x * x * x - <Rat as Field>::from_int(2) * x;
        let ys: Vec<Rat> = xs.iter().map(f).collect();
        let p = interpolate(&xs, &ys);
        assert_eq!(p.degree(), Some(3));
        let x = <Rat as Field>::from_int(11);
        assert_eq!(p.eval(&x), f(&x));
    }
}
