//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use tietze_core::arith::{valuation, Order, Place};
use tietze_core::generic::ext_tau_n;
use tietze_core::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn e(s: &str) -> FieldElem {
    parse_elem(s).expect("valid literal")
}

fn m(s: &str) -> Mat2 {
    parse_matrix(s).expect("valid literal")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn airy_gauge() -> Outcome {
    let op = DiffOp::QDilation;
    let a = m("[[-q*t,1],[1,0]]");
    let NormalizationResult::Tietze { e: ee, r, q, trace } =
        normalize(&op, &a).map_err(|x| x.to_string())?
    else {
        return Err("not a Tietze outcome".into());
    };
    ensure(ee == e("-q^2*t"), || format!("e = {}", render(&ee)))?;
    ensure(r == e("1/(q^3*t^2)"), || format!("r = {}", render(&r)))?;
    ensure(q == m("[[-q*t,1],[-q*t,0]]"), || {
        format!("Q = {}", render_matrix(&q))
    })?;
    let defect = gauge(&op, &a, &q)
        .map_err(|x| x.to_string())?
        .sub(&Mat2::tietze(&ee, &r));
    ensure(defect.is_zero(), || "gauge identity fails".into())?;
    Ok(format!(
        "e = {}, r = {}, {} step(s)",
        render(&ee),
        render(&r),
        trace.len()
    ))
}

fn airy_criterion() -> Outcome {
    let l = build_criterion(&DiffOp::QDilation, &e("1/(q^3*t^2)")).map_err(|x| x.to_string())?;
    let want = [
        "-1/(q^3*t^2)",
        "-(1/(q^4*t^2)+q)",
        "1/(q^3*t^2)+q^2",
        "1/(q^4*t^2)",
    ];
    ensure(l.coeffs.len() == 4, || format!("order {:?}", l.order()))?;
    for (i, w) in want.iter().enumerate() {
        ensure(l.coeffs[i] == e(w), || {
            format!("c{i} = {}", render(&l.coeffs[i]))
        })?;
    }
    ensure(l.rhs == e("2/t"), || format!("rhs = {}", render(&l.rhs)))?;
    Ok(format!("rhs = {}", render(&l.rhs)))
}

fn airy_nonexistence() -> Outcome {
    let l = build_criterion(&DiffOp::QDilation, &e("1/(q^3*t^2)")).map_err(|x| x.to_string())?;
    match solve_linear_qdifference(&l).map_err(|x| x.to_string())? {
        SolveOutcome::NoSolution {
            certificate: cert @ ObstructionCert::IndicialAtInfinity { order: 1, .. },
        } => {
            let ObstructionCert::IndicialAtInfinity { residual, .. } = &cert else {
                unreachable!()
            };
            ensure(*residual == Const::from_int(-2), || {
                format!("residual {residual:?}")
            })?;
            ensure(cert.replay(&l), || "certificate does not replay".into())?;
            Ok("indicial obstruction at infinity, m = 1, residual -2, replayed".into())
        }
        other => Err(format!("unexpected outcome {other:?}")),
    }
}

fn hypothesis() -> Outcome {
    let rep = hypothesis_check(&DiffOp::QDilation, &e("1/(q^3*t^2)"));
    let want = Valuation {
        place: Place::Infinity,
        order: Order::Finite(2),
    };
    ensure(rep.place_witness == Some(want), || {
        format!("{:?}", rep.place_witness)
    })?;
    ensure(rep.r_nonzero && rep.dr_nonzero, || {
        "r or Dr vanishes".into()
    })?;
    ensure(rep.dr == e("-2/(q^3*t^3)"), || {
        format!("Dr = {}", render(&rep.dr))
    })?;
    for i in 0..6 {
        let v = valuation(
            &DiffOp::QDilation.tau_n(&e("1/(q^3*t^2)"), i),
            &Place::Infinity,
        );
        ensure(v == Order::Finite(2), || format!("v_inf(tau^{i} r) = {v}"))?;
    }
    Ok(format!("witness inf with v = 2, Dr = {}", render(&rep.dr)))
}

fn construction_round_trip() -> Outcome {
    let q = DiffOp::QDilation;
    let mut checked = Vec::new();
    let trivial =
        verify_construction(&q, &e("q"), &FieldElem::zero()).map_err(|x| x.to_string())?;
    ensure(trivial.holds(), || "trivial instance fails".into())?;
    checked.push("r = q, g = 0".to_string());
    let instances = [
        (q.clone(), "q"),
        (q.clone(), "2"),
        (q.clone(), "q^2+1"),
        (q.clone(), "-3/q"),
        (DiffOp::Shift(Const::one()), "5"),
        (DiffOp::Shift(Const::q()), "q+2"),
    ];
    for (op, r) in instances {
        let r = e(r);
        let l = build_criterion(&op, &r).map_err(|x| x.to_string())?;
        let rep = solve(&l, 2).map_err(|x| x.to_string())?;
        let SolveOutcome::Solution { g, nullspace_basis } = rep.outcome else {
            return Err(format!("no solution for {op} r = {}", render(&r)));
        };
        let candidate = nullspace_basis.iter().fold(g, |acc, h| acc.add(h));
        ensure(!candidate.is_zero(), || format!("only g = 0 for {op}"))?;
        let check = verify_construction(&op, &r, &candidate).map_err(|x| x.to_string())?;
        ensure(check.criterion_residual.is_zero(), || {
            format!("residual for {op}")
        })?;
        ensure(check.commutation_defect.is_zero(), || {
            format!(
                "defect for {op}, r = {}, g = {}",
                render(&r),
                render(&candidate)
            )
        })?;
        checked.push(format!(
            "{op} r = {} g = {}",
            render(&r),
            render(&candidate)
        ));
    }
    Ok(format!(
        "{} instances: {}",
        checked.len(),
        checked.join("; ")
    ))
}

fn cocycle_gauge_suite() -> Outcome {
    const N: u64 = 50;
    let y = GenElem::var();
    let mut counts = [0usize; 4];
    for seed in 0..N {
        let mut rng = rng(1000 + seed);
        let op = random_op(&mut rng);
        let a = random_matrix(&mut rng);
        // cocycle law
        // Mahler images grow like p^i in degree, so keep its orders small
        let span = if matches!(op, DiffOp::Mahler(_)) {
            1
        } else {
            2
        };
        let (i, j) = (1 + seed as usize % span, 1 + seed as usize / 2 % span);
        let lhs = cocycle(&op, &a, i + j).product;
        let rhs = cocycle(&op, &a, i)
            .product
            .tau_n(&op, j)
            .mul(&cocycle(&op, &a, j).product);
        ensure(lhs == rhs, || format!("cocycle law, seed {seed}"))?;
        counts[0] += 1;
        // Mobius form of the cocycle: mobius(A_i, Y) = tau^i Y
        let a = regular_matrix(&mut rng);
        let s = GenStructure::from_matrix(&op, &a).map_err(|x| x.to_string())?;
        let k = 1 + seed as usize % (span + 1);
        let lhs = mobius_apply(&cocycle(&op, &a, k).product, &y).map_err(|x| x.to_string())?;
        let rhs = ext_tau_n(&s, &y, k).map_err(|x| x.to_string())?;
        ensure(lhs == rhs, || format!("Mobius cocycle, seed {seed}"))?;
        ensure(eq_residual(&op, &rhs, &a, k, &y).is_zero(), || {
            format!("Eq(A,{k}), seed {seed}")
        })?;
        counts[1] += 1;
        // composition: Eq(f; A; g), Eq(g; B; h) => Eq(f; AB; h)
        let b = regular_matrix(&mut rng);
        let h = nonzero_elem(&mut rng);
        let Ok(g) = mobius_apply(&b, &h) else {
            continue;
        };
        let Ok(f) = mobius_apply(&a, &g) else {
            continue;
        };
        ensure(
            eq_pair(&f, &a, &g).is_zero() && eq_pair(&g, &b, &h).is_zero(),
            || format!("triple construction, seed {seed}"),
        )?;
        ensure(eq_pair(&f, &a.mul(&b), &h).is_zero(), || {
            format!("composition, seed {seed}")
        })?;
        counts[2] += 1;
        // covariance: g = P(Y) solves the gauged equation
        let p = regular_matrix(&mut rng);
        let g = mobius_apply(&p, &y).map_err(|x| x.to_string())?;
        let tg = tietze_core::ext_tau(&s, &g).map_err(|x| x.to_string())?;
        let ga = gauge(&op, &a, &p).map_err(|x| x.to_string())?;
        ensure(eq_residual(&op, &tg, &ga, 1, &g).is_zero(), || {
            format!("covariance, seed {seed}")
        })?;
        let inv = p.inverse().expect("regular");
        ensure(
            mobius_apply(&inv, &g).map_err(|x| x.to_string())? == y,
            || format!("inverse transform, seed {seed}"),
        )?;
        counts[3] += 1;
    }
    ensure(counts.iter().all(|&c| c >= 50), || {
        format!("too few instances {counts:?}")
    })?;
    Ok(format!(
        "cocycle {}, Mobius form {}, composition {}, covariance {}",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn lemma_suite() -> Outcome {
    let op = DiffOp::QDilation;
    let r = e("1/(q^3*t^2)");
    let one = FieldElem::one();
    let lemmas = [
        ("L31", Lemma::L31 { alpha: one.clone() }),
        (
            "L32",
            Lemma::L32 {
                alpha: one.clone(),
                gamma: 1,
            },
        ),
        ("L33", Lemma::L33 { alpha: one.clone() }),
    ];
    let mut notes = Vec::new();
    for (name, lemma) in &lemmas {
        for bound in 1..=6 {
            let c = lemma_nullspace_check(&op, &r, lemma, bound).map_err(|x| x.to_string())?;
            ensure(c.only_trivial, || {
                format!("{name} bound {bound}: nontrivial solutions")
            })?;
            if *name == "L31" {
                ensure(c.basis == vec![GenElem::one()], || {
                    format!("L31 bound {bound}: basis {:?}", c.basis)
                })?;
            }
        }
        notes.push(format!("{name} ok"));
    }
    Ok(format!("{} for bounds 1..=6", notes.join(", ")))
}

fn solver_completeness() -> Outcome {
    let mut recovered = 0;
    for seed in 0..50u64 {
        let mut rng = rng(5000 + seed);
        let (l, planted) = planted_operator(&mut rng);
        let out = solve_linear_qdifference(&l).map_err(|x| format!("seed {seed}: {x}"))?;
        let SolveOutcome::Solution { g, nullspace_basis } = out else {
            return Err(format!(
                "seed {seed}: planted {} not found",
                render(&planted)
            ));
        };
        ensure(verify_solution(&l, &g).is_zero(), || {
            format!("seed {seed}: residual")
        })?;
        ensure(in_span(&nullspace_basis, &planted.sub(&g)), || {
            format!(
                "seed {seed}: planted {} outside solution set",
                render(&planted)
            )
        })?;
        recovered += 1;
    }
    Ok(format!("{recovered}/50 planted solutions recovered"))
}

fn parser_round_trip() -> Outcome {
    for seed in 0..200u64 {
        let mut rng = rng(9000 + seed);
        let x = random_elem(&mut rng);
        let back = parse_elem(&render(&x)).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(back == x, || format!("seed {seed}: {}", render(&x)))?;
        let a = random_matrix(&mut rng);
        let back = parse_matrix(&render_matrix(&a)).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(back == a, || format!("seed {seed}: {}", render_matrix(&a)))?;
    }
    Ok("200 elements and 200 matrices".into())
}

fn commutation_law() -> Outcome {
    let ops = [
        DiffOp::Shift(Const::one()),
        DiffOp::QDilation,
        DiffOp::Mahler(2),
        DiffOp::Mahler(3),
    ];
    for op in &ops {
        for seed in 0..100u64 {
            let x = random_elem(&mut rng(20_000 + seed));
            ensure(verify_commutation(op, &x), || format!("{op}, seed {seed}"))?;
        }
    }
    Ok("100 elements for each of shift, q-dilation, Mahler 2 and 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("q-Airy gauge to Tietze form", airy_gauge),
        ("q-Airy criterion coefficients", airy_criterion),
        (
            "q-Airy criterion has no rational solution",
            airy_nonexistence,
        ),
        ("hypothesis check for r = 1/(q^3 t^2)", hypothesis),
        ("construction round trip", construction_round_trip),
        ("cocycle and gauge properties", cocycle_gauge_suite),
        ("bounded null-space checks", lemma_suite),
        (
            "solver completeness on planted operators",
            solver_completeness,
        ),
        ("parser round trip", parser_round_trip),
        ("commutation law", commutation_law),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
