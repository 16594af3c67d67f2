//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tietze_core::arith::linalg::{self, clear_t_denominators};
use tietze_core::{Const, DiffOp, Field, FieldElem, LinearDiffOp, Mat2, Poly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n q^k` with small `n` and `k`, occasionally `n / d`.
pub fn small_const(rng: &mut impl Rng) -> Const {
    let n: i64 = rng.gen_range(-4..=4);
    let n = if n == 0 { 1 } else { n };
    let mut c = Const::from_int(n).mul(&Const::q_pow(rng.gen_range(-2..=2)));
    if rng.gen_bool(0.2) {
        c = c.div(&Const::from_int(rng.gen_range(2..=5))).unwrap();
    }
    if rng.gen_bool(0.15) {
        c = c.add(&Const::from_int(rng.gen_range(1..=3)));
    }
    c
}

/// Polynomial in `t` with at most `terms` nonzero terms of degree `<= deg`.
pub fn small_tpoly(rng: &mut impl Rng, deg: usize, terms: usize) -> Poly<Const> {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        p = &p + &Poly::monomial(small_const(rng), rng.gen_range(0..=deg));
    }
    p
}

pub fn nonzero_tpoly(rng: &mut impl Rng, deg: usize, terms: usize) -> Poly<Const> {
    loop {
        let p = small_tpoly(rng, deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_elem(rng: &mut impl Rng) -> FieldElem {
    if rng.gen_bool(0.1) {
        return FieldElem::zero();
    }
    let num = nonzero_tpoly(rng, 3, 3);
    let den = nonzero_tpoly(rng, 2, 2);
    FieldElem::new(num, den).unwrap()
}

pub fn nonzero_elem(rng: &mut impl Rng) -> FieldElem {
    loop {
        let x = random_elem(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Entries with at most one term above and below, to keep products small.
pub fn small_elem(rng: &mut impl Rng) -> FieldElem {
    let num = nonzero_tpoly(rng, 2, 2);
    let den = if rng.gen_bool(0.5) {
        Poly::one()
    } else {
        nonzero_tpoly(rng, 1, 2)
    };
    FieldElem::new(num, den).unwrap()
}

fn entry<R: Rng>(rng: &mut R) -> FieldElem {
    if rng.gen_bool(0.15) {
        FieldElem::zero()
    } else {
        small_elem(rng)
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> Mat2 {
    let (a, b) = (entry(rng), entry(rng));
    let (c, d) = (entry(rng), entry(rng));
    Mat2::new(a, b, c, d)
}

pub fn regular_matrix(rng: &mut impl Rng) -> Mat2 {
    loop {
        let m = random_matrix(rng);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn random_op(rng: &mut impl Rng) -> DiffOp {
    match rng.gen_range(0..4) {
        0 => DiffOp::Shift(Const::one()),
        1 => DiffOp::Shift(small_const(rng)),
        2 => DiffOp::QDilation,
        _ => DiffOp::Mahler(rng.gen_range(2..=3)),
    }
}

/// A q-dilation operator of order `<= 3` with polynomial coefficients of
/// degree `<= 4`, a planted solution `g`, and `rhs = L g`.
pub fn planted_operator(rng: &mut impl Rng) -> (LinearDiffOp, FieldElem) {
    let n = rng.gen_range(1..=3);
    let coeffs: Vec<FieldElem> = (0..=n)
        .map(|i| {
            if i == 0 || i == n || rng.gen_bool(0.7) {
                FieldElem::from_poly(nonzero_tpoly(rng, 4, 3))
            } else {
                FieldElem::zero()
            }
        })
        .collect();
    let g = planted_solution(rng);
    let l = LinearDiffOp::new(DiffOp::QDilation, coeffs, FieldElem::zero());
    let rhs = l.apply(&g);
    (LinearDiffOp::new(DiffOp::QDilation, l.coeffs, rhs), g)
}

fn planted_solution(rng: &mut impl Rng) -> FieldElem {
    let num = nonzero_tpoly(rng, 2, 2);
    let mut den = Poly::<Const>::one();
    if rng.gen_bool(0.5) {
        den = &den * &Poly::monomial(Const::one(), rng.gen_range(1..=2));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let root = match rng.gen_range(0..3) {
            0 => Const::q_pow(rng.gen_range(-2..=2)),
            1 => Const::from_int(rng.gen_range(1..=3)),
            _ => small_const(rng),
        };
        den = &den * &Poly::from_coeffs(vec![root.neg(), Const::one()]);
    }
    FieldElem::new(num, den).unwrap()
}

/// Whether `x` is a `Q(q)`-linear combination of `basis`.
pub fn in_span(basis: &[FieldElem], x: &FieldElem) -> bool {
    if x.is_zero() {
        return true;
    }
    let cols: Vec<Vec<FieldElem>> = basis.iter().map(|b| vec![b.clone()]).collect();
    let sys = clear_t_denominators(&cols, std::slice::from_ref(x));
    linalg::solve_fraction_free(&sys.rows, &sys.rhs, sys.ncols).is_ok()
}
