//! Bounded null-space checks for the functional equations in `F(Y)` that
//! the criterion rests on.
//!
//! Unknowns are Laurent polynomials in `Y` and `t` with exponents in
//! `[-b, b]` (`N` is a polynomial in `Y` for the first equation). After
//! clearing the denominators `Y^k (Y + r)^k` each equation becomes a finite
//! linear system over `Q(q)`. A full-rank certificate modulo a prime is
//! tried first; exact elimination is the fallback.

use rayon::prelude::*;

use super::hypothesis_check;
use crate::arith::linalg::{self, clear_t_denominators, rank_mod_p, ClearedSystem};
use crate::arith::{Const, Field, FieldElem, Poly};
use crate::difference::DiffOp;
use crate::error::{Error, Result};
use crate::mobius::GenElem;

/// The equation to probe. `alpha` must be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `N = alpha Y^lambda Y^nu tau(N)` with `Y^lambda || N` and
    /// `nu = deg N`; only `N in F` is allowed.
    L31 { alpha: FieldElem },
    /// `R - alpha (-r/Y^2)^gamma tau(R) = 0`, `gamma >= 1`; only `R = 0`.
    L32 { alpha: FieldElem, gamma: u32 },
    /// `S + (r/Y^2) tau(S) + alpha/Y = 0`; no solution at all.
    L33 { alpha: FieldElem },
}

impl Lemma {
    fn alpha(&self) -> &FieldElem {
        match self {
            Lemma::L31 { alpha } | Lemma::L32 { alpha, .. } | Lemma::L33 { alpha } => alpha,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    /// Only the permitted solutions exist inside the search window.
    pub only_trivial: bool,
    /// `L31`: basis of the solutions in `F`; otherwise any solutions found.
    pub basis: Vec<GenElem>,
    /// Linear systems examined.
    pub blocks: usize,
    /// Systems settled by the modular rank bound alone.
    pub certified_mod_p: usize,
}

/// Evaluation points for the modular rank bound.
const EVAL_POINTS: [u64; 3] = [2, 3, 12345];

struct Ctx<'a> {
    r: &'a FieldElem,
    alpha: &'a FieldElem,
    bound: i64,
    /// `(k, t^k, tau(t^k))` for `k` in the window.
    t_basis: Vec<(i64, FieldElem, FieldElem)>,
    /// `(Y + r)^k` for `k <= 2 bound`.
    y_plus_r: Vec<Poly<FieldElem>>,
}

impl<'a> Ctx<'a> {
    fn new(op: &'a DiffOp, r: &'a FieldElem, alpha: &'a FieldElem, bound: i64) -> Self {
        let t_basis = (-bound..=bound)
            .map(|k| {
                let tk = FieldElem::t_pow(k);
                let ttk = op.tau(&tk);
                (k, tk, ttk)
            })
            .collect();
        let base = Poly::from_coeffs(vec![r.clone(), FieldElem::one()]);
        let mut y_plus_r = vec![Poly::one()];
        for _ in 0..2 * bound {
            let next = y_plus_r.last().expect("nonempty") * &base;
            y_plus_r.push(next);
        }
        Ctx {
            r,
            alpha,
            bound,
            t_basis,
            y_plus_r,
        }
    }
}

fn y_pow(n: i64) -> Poly<FieldElem> {
    Poly::monomial(
        FieldElem::one(),
        usize::try_from(n).expect("nonnegative Y power"),
    )
}

fn slots(p: &Poly<FieldElem>, n: usize) -> Vec<FieldElem> {
    (0..n).map(|k| p.coeff(k)).collect()
}

fn monomial(x: &Const, k: i64, j: i64) -> GenElem {
    let y = GenElem::var().powi(j).expect("Y is nonzero");
    GenElem::constant(FieldElem::monomial(x.clone(), k)).mul(&y)
}

/// Null space of `A`; the flag records a modular full-rank certificate.
fn homogeneous(sys: &ClearedSystem) -> (bool, Vec<Vec<Const>>) {
    let full = EVAL_POINTS
        .iter()
        .any(|&q0| rank_mod_p(&sys.rows, sys.ncols, q0) == Some(sys.ncols));
    if full {
        return (true, Vec::new());
    }
    let zero = vec![Const::zero(); sys.rows.len()];
    let sol = linalg::solve_fraction_free(&sys.rows, &zero, sys.ncols)
        .expect("homogeneous systems are consistent");
    (false, sol.nullspace)
}

/// A solution of `A x = b` if one exists; the flag records a modular
/// certificate of inconsistency.
fn inhomogeneous(sys: &ClearedSystem) -> (bool, Option<Vec<Const>>) {
    let aug: Vec<Vec<Const>> = sys
        .rows
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let full = EVAL_POINTS
        .iter()
        .any(|&q0| rank_mod_p(&aug, sys.ncols + 1, q0) == Some(sys.ncols + 1));
    if full {
        return (true, None);
    }
    (
        false,
        linalg::solve_fraction_free(&sys.rows, &sys.rhs, sys.ncols)
            .ok()
            .map(|s| s.particular),
    )
}

pub fn lemma_nullspace_check(
    op: &DiffOp,
    r: &FieldElem,
    lemma: &Lemma,
    degree_bound: usize,
) -> Result<LemmaCheck> {
    let report = hypothesis_check(op, r);
    if !report.r_nonzero {
        return Err(Error::ZeroR);
    }
    if report.place_witness.is_none() {
        return Err(Error::HypothesisNotCertified);
    }
    if degree_bound == 0 {
        return Err(Error::DegenerateInput(
            "degree bound must be at least 1".into(),
        ));
    }
    if lemma.alpha().is_zero() {
        return Err(Error::DegenerateInput("alpha must be nonzero".into()));
    }
    let bound = i64::try_from(degree_bound)
        .map_err(|_| Error::DegenerateInput("degree bound too large".into()))?;
    let ctx = Ctx::new(op, r, lemma.alpha(), bound);
    Ok(match lemma {
        Lemma::L31 { .. } => check_l31(&ctx),
        Lemma::L32 { gamma, .. } => {
            if *gamma == 0 {
                return Err(Error::DegenerateInput("gamma must be positive".into()));
            }
            check_l32(&ctx, i64::from(*gamma))
        }
        Lemma::L33 { .. } => check_l33(&ctx),
    })
}

/// One system per `(lambda, nu)` with `0 <= lambda <= nu <= b`, unknowns
/// `N = sum_{lambda <= i <= nu} n_i Y^i`, equation
/// `N - alpha Y^lambda sum_i tau(n_i) (Y + r)^i Y^(nu - i) = 0`.
fn check_l31(ctx: &Ctx) -> LemmaCheck {
    let b = ctx.bound;
    let pairs: Vec<(i64, i64)> = (0..=b)
        .flat_map(|nu| (0..=nu).map(move |lambda| (lambda, nu)))
        .collect();
    let width = ctx.t_basis.len();
    let results: Vec<(bool, Vec<Vec<Const>>)> = pairs
        .par_iter()
        .map(|&(lambda, nu)| {
            let n_slots = usize::try_from(lambda + nu + 1).expect("nonnegative");
            let mut cols = Vec::new();
            for i in lambda..=nu {
                for (_, tk, ttk) in &ctx.t_basis {
                    let lhs = y_pow(i).scale(tk);
                    let image = (&ctx.y_plus_r[i as usize] * &y_pow(lambda + nu - i))
                        .scale(&ctx.alpha.mul(ttk));
                    cols.push(slots(&(&lhs - &image), n_slots));
                }
            }
            let zeros = vec![FieldElem::zero(); n_slots];
            homogeneous(&clear_t_denominators(&cols, &zeros))
        })
        .collect();
    let mut only_trivial = true;
    let mut basis = Vec::new();
    let mut certified = 0;
    for (&(lambda, nu), (by_mod_p, null)) in pairs.iter().zip(&results) {
        certified += usize::from(*by_mod_p);
        if nu == 0 {
            basis.extend(null.iter().map(|v| {
                (0..width).fold(GenElem::zero(), |acc, c| {
                    acc.add(&monomial(&v[c], ctx.t_basis[c].0, 0))
                })
            }));
            continue;
        }
        // a violation needs n_lambda != 0 and n_nu != 0 on a common solution;
        // over an infinite field that happens iff neither block vanishes on
        // the whole null space
        let block_nonzero = |i: i64| {
            let off = usize::try_from(i - lambda).expect("in range") * width;
            null.iter()
                .any(|v| v[off..off + width].iter().any(|x| !x.is_zero()))
        };
        if block_nonzero(lambda) && block_nonzero(nu) {
            only_trivial = false;
        }
    }
    LemmaCheck {
        only_trivial,
        basis,
        blocks: pairs.len(),
        certified_mod_p: certified,
    }
}

/// Unknown `R = sum x_{j,k} t^k Y^j`; multiply through by
/// `Y^(b + 2 gamma) (Y + r)^b`.
fn check_l32(ctx: &Ctx, gamma: i64) -> LemmaCheck {
    let b = ctx.bound;
    let n_slots = usize::try_from(2 * b + 2 * gamma + 1).expect("nonnegative");
    let factor = ctx.alpha.mul(&ctx.r.neg().pow(gamma.unsigned_abs()));
    let cols = laurent_columns(ctx, n_slots, |j, tk, ttk| {
        let lhs = (&ctx.y_plus_r[b as usize] * &y_pow(j + b + 2 * gamma)).scale(tk);
        let image = (&ctx.y_plus_r[(j + b) as usize] * &y_pow(b - j)).scale(&factor.mul(ttk));
        &lhs - &image
    });
    let zeros = vec![FieldElem::zero(); n_slots];
    let (by_mod_p, null) = homogeneous(&clear_t_denominators(&cols, &zeros));
    LemmaCheck {
        only_trivial: null.is_empty(),
        basis: null.iter().map(|v| laurent_elem(ctx, v)).collect(),
        blocks: 1,
        certified_mod_p: usize::from(by_mod_p),
    }
}

/// Unknown `S = sum x_{j,k} t^k Y^j`; multiply through by
/// `Y^(b + 2) (Y + r)^b`.
fn check_l33(ctx: &Ctx) -> LemmaCheck {
    let b = ctx.bound;
    let n_slots = usize::try_from(2 * b + 3).expect("nonnegative");
    let cols = laurent_columns(ctx, n_slots, |j, tk, ttk| {
        let lhs = (&ctx.y_plus_r[b as usize] * &y_pow(j + b + 2)).scale(tk);
        let image = (&ctx.y_plus_r[(j + b) as usize] * &y_pow(b - j)).scale(&ctx.r.mul(ttk));
        &lhs + &image
    });
    let rhs = (&ctx.y_plus_r[b as usize] * &y_pow(b + 1)).scale(&ctx.alpha.neg());
    let (by_mod_p, particular) = inhomogeneous(&clear_t_denominators(&cols, &slots(&rhs, n_slots)));
    LemmaCheck {
        only_trivial: particular.is_none(),
        basis: particular.iter().map(|v| laurent_elem(ctx, v)).collect(),
        blocks: 1,
        certified_mod_p: usize::from(by_mod_p),
    }
}

/// Columns for unknowns indexed by `(j, k)` in `[-b, b]^2`, `j` outer.
fn laurent_columns(
    ctx: &Ctx,
    n_slots: usize,
    column: impl Fn(i64, &FieldElem, &FieldElem) -> Poly<FieldElem> + Sync,
) -> Vec<Vec<FieldElem>> {
    let b = ctx.bound;
    (-b..=b)
        .into_par_iter()
        .flat_map_iter(|j| {
            let column = &column;
            ctx.t_basis
                .iter()
                .map(move |(_, tk, ttk)| slots(&column(j, tk, ttk), n_slots))
        })
        .collect()
}

fn laurent_elem(ctx: &Ctx, v: &[Const]) -> GenElem {
    let width = ctx.t_basis.len();
    v.iter().enumerate().fold(GenElem::zero(), |acc, (idx, x)| {
        if x.is_zero() {
            return acc;
        }
        let j = (idx / width) as i64 - ctx.bound;
        acc.add(&monomial(x, ctx.t_basis[idx % width].0, j))
    })
}
