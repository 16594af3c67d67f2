//! Rational solutions of `sum_i c_i(t) g(q^i t) = b(t)`.
//!
//! For the q-dilation the search is complete: pole orders at `0` and `inf`
//! are bounded by the indicial equations, finite poles by a universal
//! denominator built from the q-dispersion of `c_0` and `c_n`, and what is
//! left is a finite linear system over `Q(q)`. Other operators only get a
//! bounded Laurent search.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::linalg::{self, clear_t_denominators};
use crate::arith::qpower::{q_power_roots, QPowerRoots};
use crate::arith::valuation::leading_coefficient_at;
use crate::arith::{valuation, Const, Field, FieldElem, Place, Poly, TPoly};
use crate::criterion::LinearDiffOp;
use crate::difference::DiffOp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionCert {
    /// The only candidate leading order `m` at infinity (`g ~ a t^-m`) is a
    /// root of the indicial polynomial, so its coefficient equation reads
    /// `0 * a = residual` with `residual != 0`.
    IndicialAtInfinity { order: i64, residual: Const },
    /// Same at zero, with `g ~ a t^m`.
    IndicialAtZero { order: i64, residual: Const },
    /// The ansatz `g = sum_{lo <= j <= hi} a_j t^j / denominator` leads to an
    /// inconsistent linear system.
    LinearSystemInconsistent {
        rank: usize,
        augmented_rank: usize,
        window: (i64, i64),
        denominator: TPoly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Every solution is `g + span(nullspace_basis)` within the searched set.
    Solution {
        g: FieldElem,
        nullspace_basis: Vec<FieldElem>,
    },
    NoSolution {
        certificate: ObstructionCert,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchScope {
    /// The outcome covers all of `Q(q)(t)`.
    Complete,
    /// Only `g = sum_{lo <= j <= hi} a_j t^j` was searched.
    BoundedSearchOnly { lo: i64, hi: i64 },
}

impl fmt::Display for SearchScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchScope::Complete => f.write_str("complete"),
            SearchScope::BoundedSearchOnly { lo, hi } => {
                write!(f, "bounded search only (t^{lo} .. t^{hi})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub scope: SearchScope,
}

/// `sum_i c_i tau^i(g) - rhs`, recomputed from scratch.
pub fn verify_solution(l: &LinearDiffOp, g: &FieldElem) -> FieldElem {
    l.coeffs
        .iter()
        .enumerate()
        .fold(FieldElem::zero(), |acc, (i, c)| {
            acc.add(&c.mul(&l.op.tau_n(g, i)))
        })
        .sub(&l.rhs)
}

fn require_qdilation(l: &LinearDiffOp) -> Result<()> {
    if l.op == DiffOp::QDilation {
        Ok(())
    } else {
        Err(Error::NotQDilation)
    }
}

fn require_regular(l: &LinearDiffOp) -> Result<()> {
    match (l.coeffs.first(), l.coeffs.last()) {
        (Some(c0), Some(_)) if !c0.is_zero() => Ok(()),
        (None, _) => Err(Error::DegenerateOperator("all coefficients vanish".into())),
        _ => Err(Error::DegenerateOperator("c_0 vanishes".into())),
    }
}

/// Leading-order data of the operator at `0` or `inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Indicial {
    /// `min_i v(c_i)`.
    w_min: i64,
    /// Integer leading orders `m` that annihilate the dominant terms.
    roots: BTreeSet<i64>,
    /// `v(rhs)` and the leading coefficient of `rhs` there.
    rhs: Option<(i64, Const)>,
}

impl Indicial {
    fn compute(l: &LinearDiffOp, place: &Place) -> Self {
        let orders: Vec<Option<i64>> = l
            .coeffs
            .iter()
            .map(|c| valuation(c, place).finite())
            .collect();
        let w_min = orders
            .iter()
            .flatten()
            .copied()
            .min()
            .expect("nonzero operator");
        let poly = Poly::from_coeffs(
            l.coeffs
                .iter()
                .zip(&orders)
                .map(|(c, w)| match w {
                    Some(w) if *w == w_min => leading_coefficient_at(c, place).expect("nonzero"),
                    _ => Const::zero(),
                })
                .collect(),
        );
        let QPowerRoots::Finite(ks) = q_power_roots(&poly) else {
            unreachable!("indicial polynomial has a nonzero coefficient")
        };
        // at infinity g ~ t^-m and tau^i t^-m = q^(-i m) t^-m
        let roots = match place {
            Place::Infinity => ks.into_iter().map(|k| -k).collect(),
            _ => ks,
        };
        let rhs = valuation(&l.rhs, place)
            .finite()
            .map(|v| (v, leading_coefficient_at(&l.rhs, place).expect("nonzero")));
        Indicial { w_min, roots, rhs }
    }

    /// Orders `v(g)` compatible with the leading terms.
    fn admissible(&self) -> BTreeSet<i64> {
        match &self.rhs {
            None => self.roots.clone(),
            Some((rho, _)) => {
                let mut out: BTreeSet<i64> = self
                    .roots
                    .iter()
                    .copied()
                    .filter(|m| self.w_min + m < *rho)
                    .collect();
                let forced = rho - self.w_min;
                if !self.roots.contains(&forced) {
                    out.insert(forced);
                }
                out
            }
        }
    }

    /// An obstruction when no order is admissible and the equation is
    /// inhomogeneous: `(m, residual)`.
    fn blocked(&self) -> Option<(i64, Const)> {
        let (rho, lead) = self.rhs.as_ref()?;
        self.admissible()
            .is_empty()
            .then(|| (rho - self.w_min, lead.neg()))
    }
}

/// Integer orders `m` making the dominant terms cancel: `g ~ a t^-m` at
/// infinity, `g ~ a t^m` at zero.
pub fn indicial_orders(l: &LinearDiffOp, place: &Place) -> Result<BTreeSet<i64>> {
    require_qdilation(l)?;
    require_regular(l)?;
    if !matches!(place, Place::Zero | Place::Infinity) {
        return Err(Error::DegenerateInput(
            "indicial orders live at 0 or infinity".into(),
        ));
    }
    Ok(Indicial::compute(l, place).roots)
}

/// `p(c t)`.
fn scale_var(p: &TPoly, c: &Const) -> TPoly {
    let mut pow = Const::one();
    let mut out = Vec::with_capacity(p.coeffs().len());
    for a in p.coeffs() {
        out.push(a.mul(&pow));
        pow = pow.mul(c);
    }
    Poly::from_coeffs(out)
}

fn strip_t(p: &TPoly) -> TPoly {
    p.shift_down(p.trailing_exponent().unwrap_or(0))
}

/// A polynomial `U` with `U(0) != 0` divisible by the denominator of every
/// rational solution, once powers of `t` are set aside.
///
/// Finite nonzero poles of a solution form chains along q-orbits that start
/// at a root of `B = c_0 den(b)` and end at a root of
/// `A = (c_n den(b))(t / q^n)`; each chain length `h` is a q-dispersion.
pub fn universal_denominator(l: &LinearDiffOp) -> Result<TPoly> {
    require_qdilation(l)?;
    require_regular(l)?;
    let n = l.coeffs.len() - 1;
    let common = l
        .coeffs
        .iter()
        .fold(TPoly::one(), |acc, c| Poly::lcm(&acc, c.den()));
    let cleared = |c: &FieldElem| c.num() * &common.exact_div(c.den()).expect("lcm divisible");
    // a pole of g at the end of a q-orbit survives in c_0 g(t) or in
    // c_n g(q^n t) unless the coefficient or the right-hand side absorbs it
    let rhs_den = l
        .rhs
        .mul(&FieldElem::from_poly(common.clone()))
        .den()
        .clone();
    let top = &cleared(&l.coeffs[n]) * &rhs_den;
    let mut a = strip_t(&scale_var(&top, &Const::q_pow(-(n as i64))));
    let mut b = strip_t(&(&cleared(&l.coeffs[0]) * &rhs_den));
    let mut u = TPoly::one();
    if a.degree().unwrap_or(0) == 0 || b.degree().unwrap_or(0) == 0 {
        return Ok(u);
    }
    for h in dispersion(&a, &b).into_iter().rev() {
        let d = Poly::gcd(&a, &scale_var(&b, &Const::q_pow(h)));
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        a = a.exact_div(&d).expect("gcd divides");
        b = b
            .exact_div(&scale_var(&d, &Const::q_pow(-h)))
            .expect("shifted gcd divides");
        for j in 0..=h {
            u = &u * &scale_var(&d, &Const::q_pow(-j)).monic().1;
        }
    }
    Ok(u)
}

/// Candidate `q`-adic valuations (at `q = 0`) of the roots of `p`: every
/// root valuation is a slope between two nonzero coefficients.
fn root_valuations(p: &TPoly) -> BTreeSet<(i64, i64)> {
    let vals: Vec<(i64, i64)> = p
        .terms()
        .map(|(k, c)| {
            let v = c.num().trailing_exponent().expect("nonzero") as i64
                - c.den().trailing_exponent().expect("nonzero") as i64;
            (k as i64, v)
        })
        .collect();
    let mut out = BTreeSet::new();
    for (x, &(i, vi)) in vals.iter().enumerate() {
        for &(j, vj) in &vals[x + 1..] {
            // a root of valuation (vi - vj) / (j - i), kept as a reduced pair
            let (mut num, mut den) = (vi - vj, j - i);
            let g = num_integer::gcd(num, den);
            num /= g;
            den /= g;
            if den < 0 {
                (num, den) = (-num, -den);
            }
            out.insert((num, den));
        }
    }
    out
}

/// `{h >= 0 : gcd(a(t), b(q^h t)) != 1}`.
///
/// A common root `a(alpha) = 0 = b(q^h alpha)` has `h = v(q^h alpha) - v(alpha)`
/// for the `q`-adic valuation `v`, which bounds `h` to finitely many
/// candidates; each is then tested exactly.
fn dispersion(a: &TPoly, b: &TPoly) -> BTreeSet<i64> {
    let (va, vb) = (root_valuations(a), root_valuations(b));
    let mut candidates = BTreeSet::new();
    for &(na, da) in &va {
        for &(nb, db) in &vb {
            let (num, den) = (nb * da - na * db, da * db);
            if num >= 0 && num % den == 0 {
                candidates.insert(num / den);
            }
        }
    }
    candidates
        .into_iter()
        .filter(|&h| Poly::gcd(a, &scale_var(b, &Const::q_pow(h))).degree() != Some(0))
        .collect()
}

struct Ansatz {
    lo: i64,
    hi: i64,
    denominator: TPoly,
}

impl Ansatz {
    fn basis(&self) -> Vec<FieldElem> {
        let inv = FieldElem::from_poly(self.denominator.clone())
            .inv()
            .expect("nonzero denominator");
        (self.lo..=self.hi)
            .map(|j| FieldElem::t_pow(j).mul(&inv))
            .collect()
    }

    fn system(&self, l: &LinearDiffOp) -> linalg::ClearedSystem {
        let cols: Vec<Vec<FieldElem>> = self.basis().iter().map(|e| vec![l.apply(e)]).collect();
        clear_t_denominators(&cols, std::slice::from_ref(&l.rhs))
    }

    fn combine(&self, xs: &[Const]) -> FieldElem {
        self.basis()
            .iter()
            .zip(xs)
            .filter(|(_, x)| !x.is_zero())
            .fold(FieldElem::zero(), |acc, (e, x)| {
                acc.add(&e.mul(&FieldElem::from_const(x.clone())))
            })
    }

    fn solve(&self, l: &LinearDiffOp) -> Result<SolveOutcome> {
        let sys = self.system(l);
        match linalg::solve_fraction_free(&sys.rows, &sys.rhs, sys.ncols) {
            Ok(sol) => {
                let g = self.combine(&sol.particular);
                let nullspace_basis: Vec<FieldElem> =
                    sol.nullspace.iter().map(|v| self.combine(v)).collect();
                let homogeneous =
                    LinearDiffOp::new(l.op.clone(), l.coeffs.clone(), FieldElem::zero());
                if !verify_solution(l, &g).is_zero()
                    || nullspace_basis
                        .iter()
                        .any(|h| !verify_solution(&homogeneous, h).is_zero())
                {
                    return Err(Error::Internal(
                        "solver output fails re-substitution".into(),
                    ));
                }
                Ok(SolveOutcome::Solution { g, nullspace_basis })
            }
            Err(inc) => Ok(SolveOutcome::NoSolution {
                certificate: ObstructionCert::LinearSystemInconsistent {
                    rank: inc.rank,
                    augmented_rank: inc.augmented_rank,
                    window: (self.lo, self.hi),
                    denominator: self.denominator.clone(),
                },
            }),
        }
    }
}

fn trivial_outcome(l: &LinearDiffOp, window: (i64, i64), denominator: TPoly) -> SolveOutcome {
    if l.rhs.is_zero() {
        SolveOutcome::Solution {
            g: FieldElem::zero(),
            nullspace_basis: Vec::new(),
        }
    } else {
        SolveOutcome::NoSolution {
            certificate: ObstructionCert::LinearSystemInconsistent {
                rank: 0,
                augmented_rank: 1,
                window,
                denominator,
            },
        }
    }
}

/// Complete decision for the q-dilation.
pub fn solve_linear_qdifference(l: &LinearDiffOp) -> Result<SolveOutcome> {
    require_qdilation(l)?;
    require_regular(l)?;
    let at_inf = Indicial::compute(l, &Place::Infinity);
    let at_zero = Indicial::compute(l, &Place::Zero);
    if let Some((order, residual)) = at_inf.blocked() {
        return Ok(SolveOutcome::NoSolution {
            certificate: ObstructionCert::IndicialAtInfinity { order, residual },
        });
    }
    if let Some((order, residual)) = at_zero.blocked() {
        return Ok(SolveOutcome::NoSolution {
            certificate: ObstructionCert::IndicialAtZero { order, residual },
        });
    }
    let u = universal_denominator(l)?;
    let (Some(&lo), Some(&m_inf)) = (at_zero.admissible().first(), at_inf.admissible().first())
    else {
        // homogeneous with no admissible order somewhere: only g = 0
        return Ok(trivial_outcome(l, (0, -1), u));
    };
    let hi = u.degree().expect("nonzero") as i64 - m_inf;
    if hi < lo {
        return Ok(trivial_outcome(l, (lo, hi), u));
    }
    Ansatz {
        lo,
        hi,
        denominator: u,
    }
    .solve(l)
}

/// Search `g = sum_{lo <= j <= hi} a_j t^j` for any operator.
pub fn solve_bounded(l: &LinearDiffOp, lo: i64, hi: i64) -> Result<SolveOutcome> {
    require_regular(l)?;
    if hi < lo {
        return Ok(trivial_outcome(l, (lo, hi), TPoly::one()));
    }
    Ansatz {
        lo,
        hi,
        denominator: TPoly::one(),
    }
    .solve(l)
}

/// Complete search for the q-dilation, Laurent window `[-bound, bound]`
/// otherwise.
pub fn solve(l: &LinearDiffOp, bound: usize) -> Result<SolveReport> {
    if l.op == DiffOp::QDilation {
        return Ok(SolveReport {
            outcome: solve_linear_qdifference(l)?,
            scope: SearchScope::Complete,
        });
    }
    let b = i64::try_from(bound).map_err(|_| Error::DegenerateInput("bound too large".into()))?;
    Ok(SolveReport {
        outcome: solve_bounded(l, -b, b)?,
        scope: SearchScope::BoundedSearchOnly { lo: -b, hi: b },
    })
}

impl ObstructionCert {
    /// Recompute the obstruction from `l` alone.
    pub fn replay(&self, l: &LinearDiffOp) -> bool {
        match self {
            ObstructionCert::IndicialAtInfinity { order, residual } => {
                replay_indicial(l, &Place::Infinity, *order, residual)
            }
            ObstructionCert::IndicialAtZero { order, residual } => {
                replay_indicial(l, &Place::Zero, *order, residual)
            }
            ObstructionCert::LinearSystemInconsistent {
                rank,
                augmented_rank,
                window: (lo, hi),
                denominator,
            } => {
                if require_regular(l).is_err() || denominator.is_zero() {
                    return false;
                }
                if hi < lo {
                    return *rank == 0 && *augmented_rank == 1 && !l.rhs.is_zero();
                }
                let sys = Ansatz {
                    lo: *lo,
                    hi: *hi,
                    denominator: denominator.clone(),
                }
                .system(l);
                let aug: Vec<Vec<Const>> = sys
                    .rows
                    .iter()
                    .zip(&sys.rhs)
                    .map(|(row, b)| row.iter().chain(std::iter::once(b)).cloned().collect())
                    .collect();
                let r = linalg::rank_fraction_free(&sys.rows, sys.ncols);
                let ra = linalg::rank_fraction_free(&aug, sys.ncols + 1);
                r == *rank && ra == *augmented_rank && ra > r
            }
        }
    }
}

fn replay_indicial(l: &LinearDiffOp, place: &Place, order: i64, residual: &Const) -> bool {
    if require_qdilation(l).is_err() || require_regular(l).is_err() {
        return false;
    }
    let ind = Indicial::compute(l, place);
    let Some((rho, lead)) = &ind.rhs else {
        return false;
    };
    // the forced order is a root, no smaller root is admissible, and the
    // coefficient equation 0 * a = -lead is inconsistent
    *rho - ind.w_min == order
        && ind.roots.contains(&order)
        && ind.roots.iter().all(|m| ind.w_min + m >= *rho)
        && lead.neg() == *residual
        && !residual.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::build_criterion;
    use crate::expr::parse_elem;

    fn e(s: &str) -> FieldElem {
        parse_elem(s).unwrap()
    }

    fn op(coeffs: &[&str], rhs: &str) -> LinearDiffOp {
        LinearDiffOp::new(
            DiffOp::QDilation,
            coeffs.iter().map(|c| e(c)).collect(),
            e(rhs),
        )
    }

    #[test]
    fn airy_obstruction() {
        let l = build_criterion(&DiffOp::QDilation, &e("1/(q^3*t^2)")).unwrap();
        let inf: Vec<i64> = indicial_orders(&l, &Place::Infinity)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(inf, vec![1]);
        assert_eq!(universal_denominator(&l).unwrap(), TPoly::one());
        let out = solve_linear_qdifference(&l).unwrap();
        let SolveOutcome::NoSolution { certificate } = out else {
            panic!("{out:?}")
        };
        assert_eq!(
            certificate,
            ObstructionCert::IndicialAtInfinity {
                order: 1,
                residual: Const::from_int(-2)
            }
        );
        assert!(certificate.replay(&l));
        // scaling by t keeps order and leading coefficient; scaling by 2 does not
        assert!(certificate.replay(&l.scaled(&e("t"))));
        assert!(!certificate.replay(&l.scaled(&e("2"))));
        assert_eq!(verify_solution(&l, &FieldElem::zero()), e("-2/t"));
    }

    #[test]
    fn simple_operators() {
        // tau - 1
        let l = op(&["-1", "1"], "0");
        let zero: Vec<i64> = indicial_orders(&l, &Place::Zero)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(zero, vec![0]);
        assert_eq!(
            solve_linear_qdifference(&l).unwrap(),
            SolveOutcome::Solution {
                g: FieldElem::zero(),
                nullspace_basis: vec![FieldElem::one()]
            }
        );
        assert!(verify_solution(&l, &FieldElem::one()).is_zero());
        // tau - q: g = t
        let l = op(&["-q", "1"], "0");
        let inf: Vec<i64> = indicial_orders(&l, &Place::Infinity)
            .unwrap()
            .into_iter()
            .collect();
        let zero: Vec<i64> = indicial_orders(&l, &Place::Zero)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!((inf, zero), (vec![-1], vec![1]));
        assert_eq!(
            solve_linear_qdifference(&l).unwrap(),
            SolveOutcome::Solution {
                g: FieldElem::zero(),
                nullspace_basis: vec![e("t")]
            }
        );
    }

    #[test]
    fn finite_pole_is_captured() {
        // g = 1/(t - 1); c_0 = t - 1, c_1 = t - q^2
        let g = e("1/(t-1)");
        let coeffs = vec![e("t-1"), e("t-q^2")];
        let rhs = LinearDiffOp::new(DiffOp::QDilation, coeffs.clone(), FieldElem::zero()).apply(&g);
        let l = LinearDiffOp::new(DiffOp::QDilation, coeffs, rhs);
        let u = universal_denominator(&l).unwrap();
        assert!(u.exact_div(&e("t-1").num().clone()).is_some(), "{u:?}");
        match solve_linear_qdifference(&l).unwrap() {
            SolveOutcome::Solution {
                g: found,
                nullspace_basis,
            } => {
                assert!(nullspace_basis.is_empty());
                assert_eq!(found, g);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dispersion_chain() {
        // c_0 = t - 1, c_2 = t - 1/q^5: A(t) = c_2(t/q^2) ~ t - 1/q^3, h = 3
        let l = op(&["t-1", "1", "t-1/q^5"], "0");
        let u = universal_denominator(&l).unwrap();
        assert_eq!(u, e("(t-1)*(t-1/q)*(t-1/q^2)*(t-1/q^3)").num().clone());
        // coprime, root-free coefficients
        let l = op(&["2", "t", "3"], "1");
        assert_eq!(universal_denominator(&l).unwrap(), TPoly::one());
    }

    #[test]
    fn rejects_other_operators_and_degenerate_ones() {
        let l = LinearDiffOp::new(DiffOp::Mahler(2), vec![e("1"), e("1")], e("0"));
        assert_eq!(solve_linear_qdifference(&l), Err(Error::NotQDilation));
        let l = op(&["0", "1"], "1");
        assert!(matches!(
            solve_linear_qdifference(&l),
            Err(Error::DegenerateOperator(_))
        ));
    }

    #[test]
    fn bounded_search_for_shift() {
        let sh = DiffOp::Shift(Const::one());
        // g(t+1) - g(t) = 1 has g = t
        let l = LinearDiffOp::new(sh, vec![e("-1"), e("1")], e("1"));
        let rep = solve(&l, 2).unwrap();
        assert_eq!(rep.scope, SearchScope::BoundedSearchOnly { lo: -2, hi: 2 });
        match rep.outcome {
            SolveOutcome::Solution { g, nullspace_basis } => {
                assert_eq!(g, e("t"));
                assert_eq!(nullspace_basis, vec![FieldElem::one()]);
            }
            other => panic!("{other:?}"),
        }
    }
}
