//! Dense exact linear algebra over any [`Field`].
//!
//! Elimination always pivots on the first usable row of the leftmost
//! remaining column, so results do not depend on scheduling.

use super::field::{Field, Rat};
use super::{Const, FieldElem, Poly, RatFunc, TPoly};

/// Affine solution set `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<K> {
    pub particular: Vec<K>,
    pub nullspace: Vec<Vec<K>>,
    pub rank: usize,
}

/// Witness that `A x = b` has no solution: `rank [A|b] > rank A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    pub rank: usize,
    pub augmented_rank: usize,
}

struct Rref<K> {
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

fn rref<K: Field>(mut rows: Vec<Vec<K>>, ncols: usize) -> Rref<K> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut().skip(col) {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[j] = row[j].sub(&f.mul(pv));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Rref { rows, pivots }
}

pub fn rank<K: Field>(rows: &[Vec<K>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).pivots.len()
}

/// Solve `A x = b` exactly; rows of `a` have length `ncols`.
pub fn solve<K: Field>(
    a: &[Vec<K>],
    b: &[K],
    ncols: usize,
) -> Result<AffineSolution<K>, Inconsistent> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let aug: Vec<Vec<K>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            debug_assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let Rref { rows, pivots } = rref(aug, ncols);
    let rank = pivots.len();
    if rows.iter().skip(rank).any(|row| !row[ncols].is_zero()) {
        return Err(Inconsistent {
            rank,
            augmented_rank: rank + 1,
        });
    }
    let mut particular = vec![K::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][ncols].clone();
    }
    let nullspace = free_columns(&pivots, ncols)
        .map(|f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = rows[r][f].neg();
            }
            v
        })
        .collect();
    Ok(AffineSolution {
        particular,
        nullspace,
        rank,
    })
}

pub fn nullspace<K: Field>(a: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let b = vec![K::zero(); a.len()];
    solve(a, &b, ncols)
        .expect("homogeneous systems are consistent")
        .nullspace
}

fn free_columns(pivots: &[usize], ncols: usize) -> impl Iterator<Item = usize> + '_ {
    (0..ncols).filter(move |c| !pivots.contains(c))
}

/// Multiply each row by the lcm of its denominators.
fn clear_rows<L: Field>(rows: Vec<Vec<RatFunc<L>>>) -> Vec<Vec<Poly<L>>> {
    rows.into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(Poly::one(), |acc, x| Poly::lcm(&acc, x.den()));
            row.iter()
                .map(|x| x.num() * &l.exact_div(x.den()).expect("lcm divisible"))
                .collect()
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination over `L[x]`. Every entry stays a
/// minor of the input, so all divisions are exact; on return each pivot
/// row carries the same pivot value `d`, and `rows / d` is the reduced
/// echelon form.
fn bareiss<L: Field>(
    mut rows: Vec<Vec<Poly<L>>>,
    ncols: usize,
) -> (Vec<Vec<Poly<L>>>, Vec<usize>, Poly<L>) {
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col].clone();
            for (j, x) in row.iter_mut().enumerate() {
                let next = if f.is_zero() {
                    &pv * &*x
                } else {
                    &(&pv * &*x) - &(&f * &pivot_row[j])
                };
                *x = next.exact_div(&prev).expect("fraction-free step is exact");
            }
        }
        prev = pv;
        pivots.push(col);
        r += 1;
    }
    (rows, pivots, prev)
}

/// [`solve`] for matrices over a field of fractions `L(x)`, eliminating
/// fraction-free in `L[x]`. Produces the same reduced solution.
pub fn solve_fraction_free<L: Field>(
    a: &[Vec<RatFunc<L>>],
    b: &[RatFunc<L>],
    ncols: usize,
) -> Result<AffineSolution<RatFunc<L>>, Inconsistent> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let aug: Vec<Vec<RatFunc<L>>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (rows, pivots, d) = bareiss(clear_rows(aug), ncols);
    let rank = pivots.len();
    if rows.iter().skip(rank).any(|row| !row[ncols].is_zero()) {
        return Err(Inconsistent {
            rank,
            augmented_rank: rank + 1,
        });
    }
    let over_d = |p: &Poly<L>| RatFunc::new(p.clone(), d.clone()).expect("nonzero pivot");
    let mut particular = vec![RatFunc::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = over_d(&rows[r][ncols]);
    }
    let nullspace = free_columns(&pivots, ncols)
        .map(|f| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[f] = RatFunc::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = over_d(&rows[r][f]).neg();
            }
            v
        })
        .collect();
    Ok(AffineSolution {
        particular,
        nullspace,
        rank,
    })
}

/// [`rank`] for matrices over `L(x)`, eliminating fraction-free.
pub fn rank_fraction_free<L: Field>(rows: &[Vec<RatFunc<L>>], ncols: usize) -> usize {
    bareiss(clear_rows(rows.to_vec()), ncols).1.len()
}

/// Specialize a matrix over `Q(q)` at `q = q0`; `None` if some entry has a
/// pole there.
pub fn specialize(rows: &[Vec<Const>], q0: &Rat) -> Option<Vec<Vec<Rat>>> {
    rows.iter()
        .map(|row| row.iter().map(|c| c.eval_q(q0)).collect())
        .collect()
}

/// A linear system over `Q(q)` obtained by comparing `t`-coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedSystem {
    pub rows: Vec<Vec<Const>>,
    pub rhs: Vec<Const>,
    pub ncols: usize,
}

/// Turn `sum_j x_j columns[j][e] = rhs[e]` (one equation per slot `e`, with
/// coefficients in `Q(q)(t)` and unknowns `x_j` in `Q(q)`) into the
/// equivalent system over `Q(q)`: multiply by a common denominator in `t`
/// and compare coefficients of each power of `t`.
pub fn clear_t_denominators(columns: &[Vec<FieldElem>], rhs: &[FieldElem]) -> ClearedSystem {
    let slots = rhs.len();
    let mut dens: Vec<&TPoly> = Vec::new();
    for x in columns.iter().flatten().chain(rhs) {
        if !x.is_zero() && !x.den().is_one() && !dens.contains(&x.den()) {
            dens.push(x.den());
        }
    }
    let l = dens.iter().fold(TPoly::one(), |acc, d| Poly::lcm(&acc, d));
    let clear = |x: &FieldElem| -> TPoly {
        if x.is_zero() {
            return TPoly::zero();
        }
        x.num() * &l.exact_div(x.den()).expect("lcm divisible")
    };
    let cleared: Vec<Vec<TPoly>> = columns
        .iter()
        .map(|col| {
            debug_assert_eq!(col.len(), slots);
            col.iter().map(clear).collect()
        })
        .collect();
    let rhs_cleared: Vec<TPoly> = rhs.iter().map(clear).collect();
    let mut rows = Vec::new();
    let mut out_rhs = Vec::new();
    for e in 0..slots {
        let height = cleared
            .iter()
            .map(|c| &c[e])
            .chain(std::iter::once(&rhs_cleared[e]))
            .filter_map(Poly::degree)
            .max();
        let Some(height) = height else { continue };
        for k in 0..=height {
            let row: Vec<Const> = cleared.iter().map(|c| c[e].coeff(k)).collect();
            let b = rhs_cleared[e].coeff(k);
            if row.iter().all(Field::is_zero) && b.is_zero() {
                continue;
            }
            rows.push(row);
            out_rhs.push(b);
        }
    }
    ClearedSystem {
        rows,
        rhs: out_rhs,
        ncols: columns.len(),
    }
}

/// Prime used for modular rank bounds.
pub const MODULUS: u64 = 1_000_000_007;

fn rat_mod_p(x: &Rat) -> Option<u64> {
    let p = num_bigint::BigInt::from(MODULUS);
    let n = u64::try_from(((x.numer() % &p) + &p) % &p).expect("reduced");
    let d = u64::try_from(((x.denom() % &p) + &p) % &p).expect("reduced");
    (d != 0).then(|| n * pow_mod(d, MODULUS - 2) % MODULUS)
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= MODULUS;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

fn const_mod_p(c: &Const, q0: u64) -> Option<u64> {
    let eval = |p: &Poly<Rat>| -> Option<u64> {
        let mut acc = 0u64;
        for k in (0..p.coeffs().len()).rev() {
            acc = (acc * q0 + rat_mod_p(&p.coeff(k))?) % MODULUS;
        }
        Some(acc)
    };
    let n = eval(c.num())?;
    let d = eval(c.den())?;
    (d != 0).then(|| n * pow_mod(d, MODULUS - 2) % MODULUS)
}

/// Rank of the matrix after sending `q -> q0` and reducing modulo
/// [`MODULUS`]; `None` if some entry has a pole there.
///
/// Both maps are ring homomorphisms on the entries, so the result is a
/// lower bound for the rank over `Q(q)`.
pub fn rank_mod_p(rows: &[Vec<Const>], ncols: usize, q0: u64) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|c| const_mod_p(c, q0)).collect())
        .collect::<Option<_>>()?;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][col], MODULUS - 2);
        for v in m[rank].iter_mut().skip(col) {
            *v = *v * inv % MODULUS;
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (j, pv) in pivot.iter().enumerate().skip(col) {
                row[j] = (row[j] + MODULUS - f * pv % MODULUS) % MODULUS;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn solves_with_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let b = vec![rat(1), rat(2)];
        let s = solve(&a, &b, 3).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.nullspace.len(), 2);
        for v in std::iter::once(&s.particular) {
            let lhs: Rat = (0..3).map(|j| &a[0][j] * &v[j]).sum();
            assert_eq!(lhs, rat(1));
        }
        for v in &s.nullspace {
            let lhs: Rat = (0..3).map(|j| &a[1][j] * &v[j]).sum();
            assert_eq!(lhs, rat(0));
        }
    }

    #[test]
    fn modular_rank_bounds_generic_rank() {
        // [[1, q], [q, q^2]] has rank 1; [[1, q], [1, 1]] has rank 2
        let q = Const::q();
        let one = Const::one();
        let singular = vec![vec![one.clone(), q.clone()], vec![q.clone(), q.mul(&q)]];
        let regular = vec![vec![one.clone(), q.clone()], vec![one.clone(), one.clone()]];
        assert_eq!(rank_mod_p(&singular, 2, 7), Some(1));
        assert_eq!(rank_mod_p(&regular, 2, 7), Some(2));
        // q0 = 1 is a bad point for the second matrix
        assert_eq!(rank_mod_p(&regular, 2, 1), Some(1));
        let pole = vec![vec![Const::q_pow(-1)]];
        assert_eq!(rank_mod_p(&pole, 1, 0), None);
    }

    #[test]
    fn fraction_free_matches_rref() {
        let c = |s: &str| crate::expr::parse_elem(s).unwrap().as_constant().unwrap();
        let a = vec![
            vec![c("q"), c("1/(q+1)"), c("2"), c("q^2")],
            vec![c("q^2"), c("q/(q+1)"), c("2*q"), c("q^3")],
            vec![c("1"), c("0"), c("1/q"), c("3")],
        ];
        let b = vec![c("1"), c("q"), c("q-1")];
        let want = solve(&a, &b, 4).unwrap();
        assert_eq!(solve_fraction_free(&a, &b, 4).unwrap(), want);
        assert_eq!(rank_fraction_free(&a, 4), 2);
        let bad = vec![c("1"), c("1"), c("0")];
        assert_eq!(
            solve_fraction_free(&a, &bad, 4),
            solve(&a, &bad, 4).map(|_| unreachable!())
        );
    }

    #[test]
    fn reports_inconsistency() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = vec![rat(0), rat(1)];
        assert_eq!(
            solve(&a, &b, 2),
            Err(Inconsistent {
                rank: 1,
                augmented_rank: 2
            })
        );
        assert_eq!(rank(&a, 2), 1);
    }
}
