//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use lacunae::arith::{int, rat};
use lacunae::closed_form::{closed_form_hk0, closed_form_hkl, nieto_truax_check, rk_series};
use lacunae::hermite::{hermite_egf, hermite_poly};
use lacunae::hypergeom::gmfc_check;
use lacunae::normal_order::{
    apply_exp_op, crofton_check, normal_order, random_operator_corpus, random_poly_pairs,
    SemiLinearOp,
};
use lacunae::verify::structural_checks;
use lacunae::{BivarPoly, LambdaSeries};

const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn exact_identities(k: u32, l: u32, ns: std::ops::RangeInclusive<u32>) -> Result<usize, String> {
    let top = *ns.end();
    let series = closed_form_hkl(k, l, top as usize).map_err(|e| e.to_string())?;
    let mut count = 0;
    for n in ns {
        let got = series.egf_coeff(n as usize);
        if let Some(t) = got.first_difference(&hermite_poly(n * k + l)) {
            return Err(format!("K={k} L={l} n={n}: first difference {t:?}"));
        }
        count += 1;
    }
    Ok(count)
}

fn triple_index_reconstruction() -> Outcome {
    let n = exact_identities(3, 0, 1..=16)?;
    Ok(format!(
        "{n} identities n!·[λ^n] H_(3,0) = H_(3n), n = 1..16"
    ))
}

fn quadruple_and_quintuple_reconstruction() -> Outcome {
    let a = exact_identities(4, 0, 1..=16)?;
    let b = exact_identities(5, 0, 1..=15)?;
    Ok(format!(
        "{a} identities at K=4 (n ≤ 16), {b} at K=5 (n ≤ 15)"
    ))
}

fn shifted_sweep() -> Outcome {
    let mut total = 0;
    for k in 2..=6 {
        for l in 0..=3 {
            total += exact_identities(k, l, 0..=6)?;
        }
    }
    if total != 140 {
        return Err(format!("expected 140 identities, ran {total}"));
    }
    Ok(format!("{total} identities over K 2..6, L 0..3, n 0..6"))
}

fn resummation_matches_bruteforce() -> Outcome {
    let mut checks = 0;
    for k in 1..=8 {
        for rec in structural_checks(k, 5, SEED).map_err(|e| e.to_string())? {
            if !rec.pass {
                return Err(format!(
                    "{} failed at K={k}: {:?}",
                    rec.check, rec.diff_term
                ));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} resummation and parity-split checks, K 1..8, order 5, seed {SEED}"
    ))
}

fn mu_extraction_matches_shifted_forms() -> Outcome {
    let mut checks = 0;
    for k in [3, 4] {
        let r = rk_series(k, 3, 4).map_err(|e| e.to_string())?;
        for l in 1..=3 {
            let direct = closed_form_hkl(k, l, 4).map_err(|e| e.to_string())?;
            if r.shifted(l as usize) != direct {
                return Err(format!("K={k} L={l}: μ-extraction differs"));
            }
            checks += 1;
        }
        if r.shifted(0) != closed_form_hk0(k, 4).map_err(|e| e.to_string())? {
            return Err(format!("K={k}: μ⁰ coefficient differs"));
        }
    }
    Ok(format!("{checks} (K, L) pairs agree to λ-order 4"))
}

fn normal_ordering_witness() -> Outcome {
    let op = SemiLinearOp::new(BivarPoly::monomial(int(2), 0, 1), BivarPoly::x());
    let r = normal_order(&op, 8);
    let mut t = LambdaSeries::constant(BivarPoly::x(), 8);
    t.add_at(1, &BivarPoly::monomial(int(2), 0, 1));
    if r.t_series != t {
        return Err(format!("T = {}", r.t_series.pretty_in("μ")));
    }
    if r.g_series != hermite_egf(8) {
        return Err(format!("g = {}", r.g_series.pretty_in("μ")));
    }
    let corpus = random_operator_corpus(SEED, 50);
    for (i, (op, f)) in corpus.iter().enumerate() {
        apply_exp_op(op, 5, f).map_err(|e| format!("pair {i}: {e}"))?;
    }
    Ok(format!(
        "T and g exact to μ-order 8; {} seeded pairs consistent to order 5",
        corpus.len()
    ))
}

fn crofton_identity() -> Outcome {
    let pairs = random_poly_pairs(SEED, 25, 4);
    let mut checks = 0;
    for m in 1..=3 {
        for (i, (f, g)) in pairs.iter().enumerate() {
            for order in 0..=4 {
                if !crofton_check(m, &int(1), f, g, order) {
                    return Err(format!("m={m} pair {i} order {order}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} checks: m 1..3, {} seeded pairs, λ-order 0..4",
        pairs.len()
    ))
}

fn multiplication_formula() -> Outcome {
    let xs = [rat(1, 4), rat(1, 3), rat(1, 2), int(1), rat(5, 4)];
    let mut checks = 0;
    for n in 2..=6 {
        for s in 0..=5 {
            for x in &xs {
                match gmfc_check(n, s, x) {
                    Ok(true) => checks += 1,
                    Ok(false) => return Err(format!("n={n} s={s} x={x}")),
                    Err(e) => return Err(format!("n={n} s={s} x={x}: {e}")),
                }
            }
        }
    }
    Ok(format!("{checks} exact identities"))
}

fn roots_of_unity_filter() -> Outcome {
    let (lambda, x, y) = (rat(1, 10), int(1), rat(1, 2));
    let mut worst = (0f64, 0f64);
    for (k, l) in [(1, 0), (2, 0), (2, 1), (3, 1), (4, 3)] {
        let c = nieto_truax_check(k, l, &lambda, &x, &y, 256, 30).map_err(|e| e.to_string())?;
        if !c.passes(1e-20, 1e-30) {
            return Err(format!(
                "K={k} L={l}: rel {:e}, im {:e}",
                c.rel_err, c.im_residue
            ));
        }
        worst = (worst.0.max(c.rel_err), worst.1.max(c.im_residue));
    }
    Ok(format!(
        "5 cases at 256 bits; max rel {:.1e}, max |im| {:.1e}",
        worst.0, worst.1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("K=3 lacunary reconstruction", triple_index_reconstruction),
        (
            "K=4,5 lacunary reconstruction",
            quadruple_and_quintuple_reconstruction,
        ),
        ("shifted closed-form sweep", shifted_sweep),
        ("resummation vs brute force", resummation_matches_bruteforce),
        (
            "μ-generating function extraction",
            mu_extraction_matches_shifted_forms,
        ),
        ("normal-ordering witness", normal_ordering_witness),
        ("Crofton identity", crofton_identity),
        ("multiplication formula", multiplication_formula),
        ("roots-of-unity numeric filter", roots_of_unity_filter),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2} s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
