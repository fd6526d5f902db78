//! Acceptance criteria. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use latpath::asymptotics::Estimator;
use latpath::dual::{eval_character, invert_moment_map, rate_function, SolverOptions};
use latpath::exact::{count_paths, TensorPowerTable};
use latpath::numeric::{int, ln_biguint};
use latpath::roots::u2::U2Golden;
use latpath::{build_root_system, freudenthal_diagram, GroupName, WeightedStepSet};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{binomial, ln_big, uniform_power};

type Outcome = (bool, String);

fn non_increasing(errs: &[f64]) -> bool {
    errs.windows(2).all(|w| w[1] <= w[0])
}

fn fmt_errs(errs: &[f64]) -> String {
    errs.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(", ")
}

/// Binomial strong deviation vs the exact central binomial coefficient.
type Criterion = (&'static str, fn() -> Outcome);

fn criterion_1() -> Outcome {
    let s = WeightedStepSet::one_dim(&[0, 1, 2], &[1, 2, 1]).unwrap();
    let mut errs = Vec::new();
    let mut ok = true;
    for n in [8u64, 16, 32, 64, 128] {
        let exact = binomial(2 * n, n as i64);
        let table = count_paths(&s, n).unwrap();
        assert_eq!(table.integer_value(&[n as i64]).unwrap(), exact);
        let est = latpath::estimate_strong_deviation(&s, &[1], &[0], n).unwrap();
        let err = (est.ratio(ln_big(&exact)) - 1.0).abs();
        ok &= err <= 2.0 / n as f64;
        errs.push(err);
    }
    ok &= non_increasing(&errs);
    (ok, format!("|ratio-1| = [{}] vs 2/N", fmt_errs(&errs)))
}

/// Central limit for SU(2) spin 1/2 at all even offsets within 3 sqrt(N).
fn criterion_2() -> Outcome {
    let a1 = build_root_system(GroupName::A1);
    let d = freudenthal_diagram(&a1, &[1]).unwrap();
    let est = Estimator::default();
    let mut ok = true;
    let mut worst = Vec::new();
    for n in [64u64, 256, 1024] {
        let table = TensorPowerTable::new(&d, n).unwrap();
        let nf = n as f64;
        let lim = (3.0 * nf.sqrt()).floor() as i64;
        let mut w = 0.0f64;
        for k in (-lim..=lim).filter(|k| k % 2 == 0) {
            let exact = table.weight_multiplicity(&[k]).unwrap();
            assert_eq!(exact, binomial(n, (n as i64 + k) / 2));
            let gamma = d.shifted(&[k], n).unwrap();
            let e = est.central_limit(&d.step_set, &gamma, n).unwrap();
            let gauss = (-(k * k) as f64 / (2.0 * nf)).exp();
            assert!((e.linear_term.exp() - gauss).abs() < 1e-12);
            let peak = e.log_value - e.linear_term;
            let lhs = (ln_biguint(&exact) - peak).exp();
            w = w.max((lhs - gauss).abs());
        }
        ok &= w <= 1.5 / nf.sqrt();
        worst.push(w);
    }
    (ok, format!("max deviation = [{}] vs 1.5/sqrt(N)", fmt_errs(&worst)))
}

/// Parity support for the simple walk and the |Pi| = 2 factor at the peak.
fn criterion_3() -> Outcome {
    let s = WeightedStepSet::one_dim(&[-1, 1], &[1, 1]).unwrap();
    let mut ok = true;
    for n in 1..=100u64 {
        let t = count_paths(&s, n).unwrap();
        for g in -(n as i64) - 2..=n as i64 + 2 {
            let admissible = (g - n as i64).rem_euclid(2) == 0;
            ok &= s.support_test(n, &[g]) == admissible;
            if !admissible {
                ok &= t.scaled(&[g]).is_zero();
            }
        }
    }
    let n = 1024u64;
    let t = count_paths(&s, n).unwrap();
    let e = latpath::estimate_central_limit(&s, &[0], n).unwrap();
    let ratio = e.ratio(t.log_value(&[0]));
    ok &= (ratio - 1.0).abs() <= 0.1;
    (
        ok,
        format!("odd-parity counts all zero for N <= 100; peak ratio at N=1024 = {ratio:.6}"),
    )
}

/// U(2) irreducible strong deviation, lambda = (3,0), j = 1, plus the n = 2 wall case.
fn criterion_4() -> Outcome {
    let u2 = build_root_system(GroupName::U2);
    let d = freudenthal_diagram(&u2, &[3, 0]).unwrap();
    let ns = [10u64, 20, 40, 80];
    let mut errs = Vec::new();
    for &n in &ns {
        // mu = N nu_1 = (2N, N); a_N = m_N(mu) - m_N(mu + alpha)
        let counts = uniform_power(3, n as usize);
        let exact = BigInt::from(counts[n as usize].clone()) - BigInt::from(counts[n as usize - 1].clone());
        let oracle = TensorPowerTable::new(&d, n)
            .unwrap()
            .irreducible_multiplicity(&[2 * n as i64, n as i64])
            .unwrap();
        assert_eq!(BigInt::from(oracle.clone()), exact);
        let e = latpath::estimate_irreducible_sd(&d, &[2, 1], n).unwrap();
        errs.push((e.ratio(ln_biguint(&oracle)) - 1.0).abs());
    }
    let c = errs[0] * ns[0] as f64;
    let bound_ok = ns.iter().zip(&errs).all(|(&n, e)| *e <= c / n as f64 + 1e-15);
    let d2 = freudenthal_diagram(&u2, &[2, 0]).unwrap();
    let flagged = latpath::estimate_irreducible_sd(&d2, &[1, 1], 10)
        .unwrap()
        .degenerate_leading_term;
    let scaled: Vec<f64> = ns.iter().zip(&errs).map(|(&n, e)| e * n as f64).collect();
    (
        bound_ok && flagged,
        format!(
            "|ratio-1| = [{}], N*|ratio-1| = [{}] vs C = {c:.4}; n=2 degenerate flag = {flagged}",
            fmt_errs(&errs),
            scaled.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

/// Biane's central limit for SU(2), mu = 0 and mu ~ sqrt(N).
fn criterion_5() -> Outcome {
    let a1 = build_root_system(GroupName::A1);
    let d = freudenthal_diagram(&a1, &[1]).unwrap();
    let ns = [64u64, 256, 1024];
    let mut ok = true;
    let mut parts = Vec::new();
    for grow in [false, true] {
        let mut errs = Vec::new();
        for &n in &ns {
            let mu = if grow {
                2 * ((n as f64).sqrt() / 2.0).floor() as i64
            } else {
                0
            };
            let half = (n as i64 + mu) / 2;
            let exact = BigInt::from(binomial(n, half)) - BigInt::from(binomial(n, half + 1));
            let oracle = TensorPowerTable::new(&d, n)
                .unwrap()
                .irreducible_multiplicity(&[mu])
                .unwrap();
            assert_eq!(BigInt::from(oracle.clone()), exact);
            let e = latpath::estimate_irreducible_cl(&d, &[mu], n).unwrap();
            errs.push((e.ratio(ln_biguint(&oracle)) - 1.0).abs());
        }
        let c = errs[0] * (ns[0] as f64).sqrt();
        ok &= ns.iter().zip(&errs).all(|(&n, e)| *e <= c / (n as f64).sqrt() + 1e-15);
        ok &= non_increasing(&errs);
        parts.push(format!(
            "mu={}: [{}]",
            if grow { "2floor(sqrt(N)/2)" } else { "0" },
            fmt_errs(&errs)
        ));
    }
    (ok, format!("|ratio-1| {}", parts.join("; ")))
}

/// Empirical large-deviation exponent against the rate function at x = 1/2.
fn criterion_6() -> Outcome {
    let s = WeightedStepSet::one_dim(&[-1, 1], &[1, 1]).unwrap();
    let rate = rate_function(&s, &[0.5]).unwrap();
    let mut ok = true;
    let mut diffs = Vec::new();
    for n in [100u64, 400, 1600] {
        let mut g = (n / 2) as i64;
        if (g - n as i64).rem_euclid(2) != 0 {
            g += 1;
        }
        let t = count_paths(&s, n).unwrap();
        let exact = binomial(n, (n as i64 + g) / 2);
        assert_eq!(t.integer_value(&[g]).unwrap(), exact);
        let nf = n as f64;
        let empirical = -(t.log_value(&[g]) - nf * 2f64.ln()) / nf;
        let diff = (empirical - rate).abs();
        ok &= diff <= (2.0 * std::f64::consts::PI * nf).ln() / (2.0 * nf) + 3.0 / nf;
        diffs.push(diff);
    }
    (
        ok,
        format!("I(1/2) = {rate:.6}; |empirical - I| = [{}]", fmt_errs(&diffs)),
    )
}

fn random_step_set(rng: &mut StdRng) -> WeightedStepSet {
    loop {
        let dim = rng.gen_range(1..=2usize);
        let size = rng.gen_range(2..=6usize);
        let mut steps: Vec<Vec<i64>> = Vec::new();
        while steps.len() < size {
            let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..=5)).collect();
            if !steps.contains(&v) {
                steps.push(v);
            }
        }
        let weights = (0..size)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=10)), BigInt::from(rng.gen_range(1..=3))))
            .collect();
        if let Ok(s) = WeightedStepSet::new(dim, steps, weights) {
            return s;
        }
    }
}

/// Random interior point as a strictly positive convex combination of the steps.
fn random_interior(rng: &mut StdRng, s: &WeightedStepSet) -> Vec<f64> {
    let t: Vec<f64> = (0..s.len()).map(|_| 0.05 + rng.gen::<f64>()).collect();
    let total: f64 = t.iter().sum();
    (0..s.dim())
        .map(|k| s.steps().iter().zip(&t).map(|(b, w)| b[k] as f64 * w / total).sum())
        .collect()
}

/// Dual-solver properties on random step sets.
fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let opts = SolverOptions::with_tol(1e-12);
    let (mut round, mut eig, mut grad, mut legendre) = (0.0f64, f64::INFINITY, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let s = random_step_set(&mut rng);
        let x = random_interior(&mut rng, &s);
        let dp = invert_moment_map(&s, &x, opts).unwrap();
        let back = eval_character(&s, &dp.tau).unwrap().gradient;
        round = round.max(back.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        eig = eig.min(dp.hessian.clone().symmetric_eigen().eigenvalues.min());

        let tau: Vec<f64> = (0..s.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ev = eval_character(&s, &tau).unwrap();
        for k in 0..s.dim() {
            let h = 1e-5;
            let mut up = tau.clone();
            let mut dn = tau.clone();
            up[k] += h;
            dn[k] -= h;
            let fd =
                (eval_character(&s, &up).unwrap().log_value - eval_character(&s, &dn).unwrap().log_value) / (2.0 * h);
            grad = grad.max((fd - ev.gradient[k]).abs() / ev.gradient[k].abs().max(1.0));
        }

        let log_v: f64 = s
            .weights()
            .iter()
            .map(latpath::numeric::rational_to_f64)
            .sum::<f64>()
            .ln();
        let rate = rate_function(&s, &x).unwrap();
        legendre = legendre.max((rate - (log_v - dp.delta)).abs());
    }
    let ok = round <= 1e-10 && eig > 0.0 && grad <= 1e-6 && legendre <= 1e-12;
    (
        ok,
        format!(
            "round trip {round:.2e}, min eigenvalue {eig:.3e}, gradient rel err {grad:.2e}, Legendre {legendre:.2e}"
        ),
    )
}

/// Exact oracle identities: mass, dimension, vanishing center of mass.
fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for _ in 0..20 {
        let s = random_step_set(&mut rng);
        let n = rng.gen_range(1..=12u64);
        let t = count_paths(&s, n).unwrap();
        if t.total() != Pow::pow(s.total_weight(), n as u32) {
            return (false, format!("mass identity fails for N={n}, steps {:?}", s.steps()));
        }
    }
    let cases: [(GroupName, &[i64], u64); 4] = [
        (GroupName::A1, &[1], 10),
        (GroupName::A1, &[2], 10),
        (GroupName::A2, &[1, 1], 6),
        (GroupName::U2, &[3, 0], 8),
    ];
    let mut checked = 0;
    for (g, lambda, max_n) in cases {
        let r = build_root_system(g);
        let d = freudenthal_diagram(&r, lambda).unwrap();
        for n in 1..=max_n {
            let t = TensorPowerTable::new(&d, n).unwrap();
            let mut sum = BigUint::zero();
            for mu in t.dominant_weights() {
                sum += t.irreducible_multiplicity(&mu).unwrap() * r.dim_weyl(&mu).unwrap();
            }
            if sum != Pow::pow(BigUint::from(d.dimension), n as u32) {
                return (false, format!("dimension identity fails for {g} {lambda:?} N={n}"));
            }
            checked += 1;
        }
    }
    let mut centers = 0;
    for k in 1..=6 {
        let d = freudenthal_diagram(&build_root_system(GroupName::A1), &[k]).unwrap();
        if d.q_star != vec![int(0)] {
            return (false, format!("Q* nonzero for A1 lambda={k}"));
        }
        centers += 1;
    }
    for lambda in [[1, 0], [0, 1], [1, 1], [2, 0], [2, 1], [3, 1], [2, 2]] {
        let d = freudenthal_diagram(&build_root_system(GroupName::A2), &lambda).unwrap();
        if d.q_star.iter().any(|x| !x.is_zero()) {
            return (false, format!("Q* nonzero for A2 lambda={lambda:?}"));
        }
        centers += 1;
    }
    (
        true,
        format!(
            "mass on 20 random sets; dimension identity on {checked} (group, lambda, N); Q*=0 on {centers} weights"
        ),
    )
}

/// Generic dual solver vs the U(2) closed forms.
fn criterion_9() -> Outcome {
    let u2 = build_root_system(GroupName::U2);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 2..=5u32 {
        let g = U2Golden::new(n).unwrap();
        let d = freudenthal_diagram(&u2, &g.lambda()).unwrap();
        for j in 1..=g.max_j() {
            let x = d.shifted(&g.nu(j), 1).unwrap();
            let dp = invert_moment_map(&d.step_set, &[x[0] as f64], SolverOptions::default()).unwrap();
            let diffs = [
                (dp.tau[0] - g.lattice_tau(j).unwrap()).abs(),
                (dp.delta - g.delta(j).unwrap()).abs(),
                (dp.hessian[(0, 0)] - g.lattice_hessian(j).unwrap()).abs(),
            ];
            worst = diffs.iter().fold(worst, |a, &b| a.max(b));
            cases += 1;
        }
    }
    (
        worst <= 1e-9,
        format!("{cases} (n, j) cases, max |generic - closed form| = {worst:.2e}"),
    )
}

/// Moderate deviations for the binomial at gamma = N + floor(N^0.6).
fn criterion_10() -> Outcome {
    let s = WeightedStepSet::one_dim(&[0, 1, 2], &[1, 2, 1]).unwrap();
    let ns = [64u64, 256, 1024];
    let mut errs = Vec::new();
    for &n in &ns {
        let g = n as i64 + (n as f64).powf(0.6).floor() as i64;
        let exact = binomial(2 * n, g);
        let e = latpath::estimate_moderate_deviation(&s, &[g], n).unwrap();
        errs.push((e.ratio(ln_big(&exact)) - 1.0).abs());
    }
    let c = errs[0] * (ns[0] as f64).powf(0.4);
    let ok = ns
        .iter()
        .zip(&errs)
        .all(|(&n, e)| *e <= c * (n as f64).powf(-0.4) + 1e-15)
        && non_increasing(&errs);
    (ok, format!("|ratio-1| = [{}] vs C N^-0.4, C = {c:.4}", fmt_errs(&errs)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("binomial strong deviation", criterion_1),
        ("SU(2) central limit", criterion_2),
        ("parity support and |Pi| factor", criterion_3),
        ("U(2) irreducible strong deviation", criterion_4),
        ("SU(2) irreducible central limit", criterion_5),
        ("rate function vs empirical exponent", criterion_6),
        ("dual solver properties", criterion_7),
        ("exact oracle identities", criterion_8),
        ("U(2) closed forms vs generic solver", criterion_9),
        ("binomial moderate deviation", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        println!(
            "criterion {:>2} {} {name}: {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
