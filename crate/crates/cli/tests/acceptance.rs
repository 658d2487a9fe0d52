//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use calogero_cli::document::{MatrixDocument, MatrixKind};
use calogero_cli::random::random_rational_nodes;
use calogero_core::calogero::{d_matrix_bzb, d_matrix_vandermonde, x_matrix};
use calogero_core::lagrange::{
    delta_samples, inner_product, interpolate, inverse_vandermonde, lagrange_coefficients,
    vandermonde,
};
use calogero_core::qmatrix::{nq_matrix, q_d_matrix, verify_qd_oracle};
use calogero_core::{
    basic_number, generate_nodes, Discrepancy, Matrix, NodeKind, NodeSet, QParam, Rational, Scalar,
};

const SETS: u64 = 50;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

/// Node sets for the dual-construction criterion: n cycles through 2..=12.
fn dual_grid() -> Vec<NodeSet<Rational>> {
    (0..SETS)
        .map(|i| random_rational_nodes(2 + (i as usize % 11), 1000 + i).unwrap())
        .collect()
}

/// Node sets for the q criteria: n cycles through 2..=10.
fn q_grid() -> Vec<NodeSet<Rational>> {
    (0..SETS)
        .map(|i| random_rational_nodes(2 + (i as usize % 9), 2000 + i).unwrap())
        .collect()
}

fn q_values() -> Vec<QParam<Rational>> {
    ["2", "3/2", "-2", "7/5"]
        .iter()
        .map(|t| QParam::new(Rational::parse_literal(t).unwrap()).unwrap())
        .collect()
}

fn chebyshev(n: usize) -> NodeSet<f64> {
    generate_nodes(&NodeKind::Chebyshev { a: 1.0, b: 2.0 }, n).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut all_zero = true;
    for ns in dual_grid() {
        let d = Discrepancy::of_matrices(&d_matrix_bzb(&ns), &d_matrix_vandermonde(&ns).unwrap());
        all_zero &= d.exact_zero;
        worst = worst.max(d.max_abs);
    }
    let t = start.elapsed();
    outcome(
        all_zero && within(t, 10),
        format!("50 sets n=2..12, max residual {worst:e}, {:.2}s (limit 10s)", t.as_secs_f64()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut all_zero = true;
    let mut worst = 0.0f64;
    let mut runs = 0;
    for ns in q_grid() {
        for q in q_values() {
            let d = verify_qd_oracle(&ns, &q).unwrap();
            all_zero &= d.exact_zero;
            worst = worst.max(d.max_abs);
            runs += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        all_zero && within(t, 20),
        format!("{runs} runs, max discrepancy {worst:e}, {:.2}s (limit 20s)", t.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let mut all_zero = true;
    let mut checked = 0;
    for ns in q_grid() {
        for q in q_values() {
            let qd = q_d_matrix(&ns, &q).unwrap();
            for m in 0..ns.len() as u32 {
                let got = qd.apply(&ns.sample(|x| x.powu(m))).unwrap();
                let want = ns.sample(|x| {
                    if m == 0 {
                        Rational::from_i64(0)
                    } else {
                        basic_number(m, &q) * x.powu(m - 1)
                    }
                });
                all_zero &= got == want;
                checked += 1;
            }
        }
    }
    outcome(all_zero, format!("{checked} monomial actions, all residuals exactly 0: {all_zero}"))
}

fn criterion_4() -> Outcome {
    let mut all_zero = true;
    let mut checked = 0;
    for ns in q_grid() {
        let v = vandermonde(&ns);
        for q in q_values() {
            let xqd = x_matrix(&ns).mul_left(&q_d_matrix(&ns, &q).unwrap());
            let residual = &(&xqd * &v) - &nq_matrix(ns.len(), &q).mul_right(&v);
            all_zero &= residual == Matrix::zeros(ns.len(), ns.len());
            checked += 1;
        }
    }
    outcome(all_zero, format!("(X qD) V - V [N]_q == 0 on {checked} cases: {all_zero}"))
}

fn criterion_5() -> Outcome {
    let mut exact_ok = true;
    for ns in dual_grid() {
        exact_ok &= q_d_matrix(&ns, &QParam::one()).unwrap() == d_matrix_vandermonde(&ns).unwrap();
    }
    let ns = chebyshev(8);
    let qd = q_d_matrix(&ns, &QParam::new(1.0 + 1e-6).unwrap()).unwrap();
    let d = Discrepancy::of_matrices(&qd, &d_matrix_bzb(&ns));
    let float_ok = d.max_rel < 1e-3;
    outcome(
        exact_ok && float_ok,
        format!(
            "q=1 exact reduction on 50 sets: {exact_ok}; q=1+1e-6 chebyshev n=8 max entrywise rel {:.3e} (limit 1e-3)",
            d.max_rel
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut sets = 0;
    for i in 0..SETS {
        let ns = random_rational_nodes(1 + (i as usize % 12), 3000 + i).unwrap();
        let n = ns.len();
        let id = Matrix::<Rational>::identity(n);
        let deltas: Vec<Vec<Rational>> = (0..n).map(|j| delta_samples(&ns, j).unwrap()).collect();
        let cardinal = Matrix::from_fn(n, n, |j, k| deltas[j][k].clone());
        let gram = Matrix::from_fn(n, n, |j, k| inner_product(&ns, &deltas[j], &deltas[k]).unwrap());
        let values: Vec<Rational> = (0..n).map(|j| Rational::from_i64(7 * j as i64 - 3) / Rational::from_i64(4)).collect();
        let reproduced: Vec<Rational> = ns
            .nodes()
            .iter()
            .map(|x| interpolate(&ns, &values, x).unwrap())
            .collect();
        let c_t = lagrange_coefficients(&ns).transpose();
        let v = vandermonde(&ns);
        ok &= cardinal == id
            && gram == id
            && reproduced == values
            && &c_t * &v == id
            && &v * &c_t == id
            && inverse_vandermonde(&ns) == c_t;
        sets += 1;
    }
    outcome(
        ok,
        format!("{sets} sets n=1..12: cardinality, orthogonality, node reproduction, C^T V = V C^T = I exact: {ok}"),
    )
}

fn criterion_7() -> Outcome {
    let q = QParam::new(1.5).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=16 {
        let d = verify_qd_oracle(&chebyshev(n), &q).unwrap();
        let pass = d.within_entrywise(1e-8);
        ok &= pass;
        if !pass {
            parts.push(format!("n={n}: {:.1e}", d.max_rel));
        }
    }
    let detail = if parts.is_empty() {
        "n=1..16 all within entrywise rel 1e-8".to_string()
    } else {
        format!("entrywise rel > 1e-8 at {}", parts.join(", "))
    };
    outcome(ok, detail)
}

fn calogero(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_calogero"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run calogero")
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();

    let ns = random_rational_nodes(5, 8).unwrap();
    let nodes_json = calogero_cli::document::NodesDocument::from_nodes(&ns).to_json();
    std::fs::write(dir.path().join("n.json"), nodes_json).unwrap();
    let out = calogero(&["build", "qD", "--nodes", "n.json", "--q", "3/2", "--out", "qd.json"], dir.path());
    if out.status.code() != Some(0) {
        failures.push("build qD exit".to_string());
    } else {
        let doc = MatrixDocument::from_json(&std::fs::read_to_string(dir.path().join("qd.json")).unwrap()).unwrap();
        let q = QParam::new(Rational::parse_literal("3/2").unwrap()).unwrap();
        let want = MatrixDocument::new(MatrixKind::QD, &ns, Some(q.value()), &q_d_matrix(&ns, &q).unwrap());
        if doc != want || doc.matrix::<Rational>().unwrap() != q_d_matrix(&ns, &q).unwrap() {
            failures.push("round trip".to_string());
        }
    }

    let expect = [
        (vec!["nodes", "geometric", "1", "2", "4"], 0),
        (vec!["nodes", "geometric", "1", "1", "2"], 2),
        (vec!["build", "qD", "--nodes", "[0,1,2]", "--q", "2"], 2),
        (vec!["build", "D-vandermonde", "--nodes", "[0,1,2]"], 2),
        (vec!["build", "qD", "--nodes", "[1,2]"], 2),
        (vec!["build", "D", "--nodes", "missing.json"], 1),
        (vec!["frobnicate"], 2),
    ];
    for (args, code) in expect {
        let got = calogero(&args, dir.path()).status.code();
        if got != Some(code) {
            failures.push(format!("{args:?} exited {got:?}, expected {code}"));
        }
    }

    let out = calogero(&["verify", "--random", "6", "--seed", "42", "--q", "3/2", "--mode", "exact"], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let verdicts: Vec<&str> = stdout
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("SKIPPED"))
        .collect();
    if out.status.code() != Some(0) || verdicts.is_empty() || !verdicts.iter().all(|l| l.starts_with("PASS")) {
        failures.push("verify --random 6 --seed 42 not all PASS".to_string());
    }
    let t = start.elapsed();
    if !within(t, 5) {
        failures.push(format!("took {:.2}s", t.as_secs_f64()));
    }
    let detail = if failures.is_empty() {
        format!("round trip, exit codes 0/1/2, verify all {} PASS, {:.2}s (limit 5s)", verdicts.len(), t.as_secs_f64())
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 dual-construction equality", criterion_1),
        ("2 q-matrix oracle equivalence", criterion_2),
        ("3 monomial exactness", criterion_3),
        ("4 spectrum by similarity", criterion_4),
        ("5 classical reduction", criterion_5),
        ("6 interpolation layer", criterion_6),
        ("7 float-mode sanity", criterion_7),
        ("8 CLI contract", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] criterion {name}: {}", o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
