//! Exit criteria, one line per criterion. Run with
//! `cargo test -p ensconc --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ensconc::crossover::entanglement_gain;
use ensconc::find_crossover;
use ensconc::selftest::max_entry_gap;
use ensconc_core::eigen::{symmetric_eigen, symmetric_eigenvalues, SymMatrix};
use ensconc_core::oracle::oracle_conditional_state;
use ensconc_core::{
    apply_effective_beamsplitter, build_tmss, condition_on_clicks_ideal, condition_on_clicks_lossy,
    heralded_entanglement, success_probability_ideal, success_probability_lossy, tmss_entanglement,
    tmss_negativity_closed, DetectorModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within_budget(start: Instant, budget: Duration) -> (bool, String) {
    let took = start.elapsed();
    (took < budget, format!("runtime {:.1}s / {}s", took.as_secs_f64(), budget.as_secs()))
}

fn tmss_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for lambda in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let numeric = tmss_entanglement(lambda, 150).unwrap().log_negativity;
        let closed = tmss_negativity_closed(lambda).unwrap().1;
        let gap = (numeric - closed).abs();
        if gap > 1e-7 {
            pass = false;
            notes.push(format!("lambda={lambda} gap {gap:.2e} > 1e-7"));
        }
    }
    let half = tmss_entanglement(0.5, 150).unwrap().log_negativity;
    if (half - 3f64.ln()).abs() > 1e-9 {
        pass = false;
        notes.push(format!("lambda=0.5 E_N = {half} != ln 3"));
    }
    let (ok, time) = within_budget(start, Duration::from_secs(30));
    notes.push(time);
    outcome(pass && ok, notes.join("; "))
}

fn success_probability_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst_ideal: f64 = 0.0;
    let mut worst_lossy: f64 = 0.0;
    for i in 2..=9 {
        let lambda = i as f64 / 10.0;
        for phi in [0.01, 0.05, 0.1] {
            let table = apply_effective_beamsplitter(&build_tmss(lambda, 100).unwrap(), phi).unwrap();
            let ideal = condition_on_clicks_ideal(&table).trace();
            worst_ideal = worst_ideal.max((ideal - success_probability_ideal(lambda, phi).unwrap()).abs());
            for eta in [0.2, 0.5, 0.8, 1.0] {
                let lossy = condition_on_clicks_lossy(&table, DetectorModel::new(eta).unwrap()).trace();
                worst_lossy = worst_lossy.max((lossy - success_probability_lossy(lambda, phi, eta).unwrap()).abs());
            }
        }
    }
    let (ok, time) = within_budget(start, Duration::from_secs(300));
    let pass = worst_ideal <= 1e-9 && worst_lossy <= 1e-9 && ok;
    outcome(pass, format!("worst ideal {worst_ideal:.2e}, worst lossy {worst_lossy:.2e} (tol 1e-9); {time}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for lambda in [0.2, 0.5, 0.8] {
        for phi in [0.05, 0.1, 0.3] {
            let table = apply_effective_beamsplitter(&build_tmss(lambda, 4).unwrap(), phi).unwrap();
            let ideal = condition_on_clicks_ideal(&table);
            for eta in [0.2, 0.5, 1.0] {
                let oracle = oracle_conditional_state(lambda, phi, eta, 4).unwrap();
                let lossy = condition_on_clicks_lossy(&table, DetectorModel::new(eta).unwrap());
                worst = worst.max(max_entry_gap(&lossy, &oracle)).max(max_entry_gap(&oracle, &lossy));
                if eta == 1.0 {
                    worst = worst.max(max_entry_gap(&ideal, &oracle)).max(max_entry_gap(&oracle, &ideal));
                }
                points += 1;
            }
        }
    }
    let (ok, time) = within_budget(start, Duration::from_secs(120));
    outcome(worst <= 1e-12 && points == 27 && ok, format!("{points} points, worst entry gap {worst:.2e} (atol 1e-12); {time}"))
}

fn identity_reductions() -> Outcome {
    let mut worst: f64 = 0.0;
    for (lambda, phi) in [(0.3, 0.05), (0.6, 0.1), (0.9, 0.3)] {
        let table = apply_effective_beamsplitter(&build_tmss(lambda, 60).unwrap(), phi).unwrap();
        let ideal = condition_on_clicks_ideal(&table);
        let unit = condition_on_clicks_lossy(&table, DetectorModel::ideal());
        worst = worst.max(max_entry_gap(&ideal, &unit));
    }
    let mut exact_zero = true;
    for lambda in [0.0, 0.2, 0.5, 0.9, 0.99] {
        exact_zero &= success_probability_ideal(lambda, 0.0).unwrap() == 0.0;
        for phi in [0.0, 0.01, 0.1, 0.35] {
            exact_zero &= success_probability_lossy(lambda, phi, 0.0).unwrap() == 0.0;
            exact_zero &= success_probability_lossy(lambda, 0.0, 0.5).unwrap() == 0.0;
        }
    }
    outcome(worst <= 1e-12 && exact_zero, format!("eta=1 vs ideal worst {worst:.2e}; S == 0 exactly at phi=0 and eta=0: {exact_zero}"))
}

fn figure3_shape() -> Outcome {
    let mut weakest = f64::INFINITY;
    for i in 0..=16 {
        let lambda = 0.1 + 0.05 * i as f64;
        let gain = entanglement_gain(lambda, 0.1, 1.0, 100).unwrap().expect("nonzero success");
        weakest = weakest.min(gain);
    }
    let crossing = find_crossover(0.1, 1.0, 100).unwrap();
    let star = crossing.as_ref().map(|c| c.lambda_star);
    let located = star.is_some_and(|s| (0.93..=0.97).contains(&s));
    outcome(
        weakest > 0.0 && located,
        format!("min gain on [0.1, 0.9] = {weakest:.4}; crossover lambda* = {star:?} (want [0.93, 0.97])"),
    )
}

fn figure5_shape() -> Outcome {
    let mut ordered = true;
    let mut gain_at_low_eta = f64::NEG_INFINITY;
    for i in 1..=9 {
        let lambda = i as f64 / 10.0;
        let values: Vec<f64> = [1.0, 0.8, 0.5, 0.2]
            .iter()
            .map(|&eta| heralded_entanglement(lambda, 0.1, eta, 100).unwrap().unwrap().log_negativity)
            .collect();
        ordered &= values.windows(2).all(|w| w[1] <= w[0]);
        gain_at_low_eta = gain_at_low_eta.max(values[3] - tmss_negativity_closed(lambda).unwrap().1);
    }
    outcome(
        ordered && gain_at_low_eta > 0.0,
        format!("nonincreasing in falling eta: {ordered}; best gain at eta=0.2: {gain_at_low_eta:.4}"),
    )
}

fn convergence() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let lambda = i as f64 / 10.0;
        let fine = heralded_entanglement(lambda, 0.1, 1.0, 100).unwrap().unwrap().log_negativity;
        let coarse = heralded_entanglement(lambda, 0.1, 1.0, 50).unwrap().unwrap().log_negativity;
        let delta = (fine - coarse).abs();
        worst = worst.max(delta);
        if delta >= 5e-8 {
            failures.push(format!("lambda={lambda}: {delta:.2e}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("worst |E(100) - E(50)| = {worst:.2e} (tol 5e-8)")
    } else {
        format!("|E(100) - E(50)| >= 5e-8 at {}", failures.join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn eigensolver_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for dim in [1, 2, 3, 5, 10, 20, 37, 64, 101] {
        for _ in 0..3 {
            let mut m = SymMatrix::zeros(dim);
            for i in 0..dim {
                for j in 0..=i {
                    let x: f64 = rng.gen_range(-1.0..1.0);
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            let eig = symmetric_eigen(&m).unwrap();
            let r = eig.reconstruct();
            let res = SymMatrix::from_fn(dim, |i, j| r.get(i, j) - m.get(i, j)).frobenius() / m.frobenius();
            worst = worst.max(res);
        }
    }
    let identity = symmetric_eigenvalues(&SymMatrix::identity(3)).unwrap() == vec![1.0, 1.0, 1.0];
    let swap = symmetric_eigenvalues(&SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap();
    let swap_ok = (swap[0] + 1.0).abs() < 1e-15 && (swap[1] - 1.0).abs() < 1e-15;
    outcome(
        worst <= 1e-9 && identity && swap_ok,
        format!("worst relative residual {worst:.2e} up to dim 101; hand cases: identity {identity}, swap {swap_ok}"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let recipes = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../recipes");
    let mut notes = Vec::new();
    let mut pass = true;
    for name in ["fig3", "fig4", "fig5"] {
        let cfg = recipes.join(format!("{name}.toml"));
        let run = |tag: &str| {
            let out = dir.path().join(format!("{name}-{tag}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_ensconc"))
                .args(["--config", cfg.to_str().unwrap(), "sweep", "--out", out.to_str().unwrap()])
                .output()
                .unwrap();
            assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
            std::fs::read(out).unwrap()
        };
        let (a, b) = (run("a"), run("b"));
        let same = a == b && !a.is_empty();
        pass &= same;
        notes.push(format!("{name}: {} bytes {}", a.len(), if same { "identical" } else { "DIFFER" }));
    }
    outcome(pass, notes.join("; "))
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; only a name
    // filter is honoured here.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 TMSS closed forms", tmss_closed_forms),
        ("2 success-probability equivalence", success_probability_equivalence),
        ("3 oracle equivalence", oracle_equivalence),
        ("4 identity reductions", identity_reductions),
        ("5 figure 3 sign structure and crossover", figure3_shape),
        ("6 figure 5 efficiency ordering", figure5_shape),
        ("7 convergence n_max 100 vs 50", convergence),
        ("8 eigensolver soundness", eigensolver_soundness),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {name}: {} [{:.1}s]", result.detail, start.elapsed().as_secs_f64());
        if !result.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
