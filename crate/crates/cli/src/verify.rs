//! The invariant suite behind `calogero verify`.
//!
//! Each check compares two independently computed arrays. Exact mode demands
//! equality; float mode accepts a residual up to [`FLOAT_TOLERANCE`], measured
//! relative to the largest reference entry, except for the `V⁻¹ V = I` checks
//! (scaled by `|V⁻¹| |V|`) and interpolation off the node interval (scaled by
//! `Σ|f_j δ^(j)(x)|`), where the reference entries say nothing about the
//! magnitudes that were summed. Checks whose preconditions fail (a node at the origin,
//! `q = 1` for the raw Jackson quotient) are reported as skipped.

use std::fmt;

use calogero_core::calogero::{
    b_matrix, d_matrix_bzb, d_matrix_vandermonde, n_matrix, x_matrix, z_matrix,
};
use calogero_core::lagrange::{
    delta_samples, inner_product, interpolate, inverse_vandermonde, lagrange_coefficients,
    vandermonde,
};
use calogero_core::qmatrix::{nq_matrix, q_d_matrix, verify_qd_oracle};
use calogero_core::{
    basic_number, parse_operator, realize, Discrepancy, Matrix, NodeSet, OperatorExpr, Polynomial,
    QParam, Scalar, ScalarMode, Variant,
};

pub const FLOAT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// Scaled residual; 0 for exact equality.
    pub residual: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS     {:<28} residual={:.3e}", self.name, self.residual),
            Status::Fail => write!(f, "FAIL     {:<28} residual={:.3e}", self.name, self.residual),
            Status::Skipped(why) => write!(f, "SKIPPED  {:<28} ({why})", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let skipped = self
            .checks
            .iter()
            .filter(|c| matches!(c.status, Status::Skipped(_)))
            .count();
        write!(
            f,
            "{} checks: {} passed, {failed} failed, {skipped} skipped",
            self.checks.len(),
            self.checks.len() - failed - skipped
        )
    }
}

fn judge<S: Scalar>(name: &'static str, d: Discrepancy) -> Check {
    let (ok, residual) = match S::MODE {
        ScalarMode::Exact => (d.exact_zero, d.normwise()),
        ScalarMode::Float => (d.within_normwise(FLOAT_TOLERANCE), d.normwise()),
    };
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        residual,
    }
}

fn compare<S: Scalar>(name: &'static str, got: &[S], want: &[S]) -> Check {
    judge::<S>(name, Discrepancy::between(got, want))
}

fn compare_m<S: Scalar>(name: &'static str, got: &Matrix<S>, want: &Matrix<S>) -> Check {
    judge::<S>(name, Discrepancy::of_matrices(got, want))
}

/// Residual measured against `scale` instead of the reference entries.
fn compare_scaled<S: Scalar>(name: &'static str, got: &[S], want: &[S], scale: f64) -> Check {
    let d = Discrepancy::between(got, want);
    let residual = if d.exact_zero { 0.0 } else { d.max_abs / scale };
    let ok = match S::MODE {
        ScalarMode::Exact => d.exact_zero,
        ScalarMode::Float => residual <= FLOAT_TOLERANCE,
    };
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        residual,
    }
}

/// Largest entry of `|A| |B|`, the rounding scale of the product `A B`.
fn product_scale<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> f64 {
    let mut scale: f64 = 0.0;
    for r in 0..a.rows() {
        for c in 0..b.cols() {
            let s: f64 = (0..a.cols())
                .map(|k| a.get(r, k).to_f64().abs() * b.get(k, c).to_f64().abs())
                .sum();
            scale = scale.max(s);
        }
    }
    scale
}

fn skipped(name: &'static str, why: &str) -> Check {
    Check {
        name,
        status: Status::Skipped(why.to_string()),
        residual: 0.0,
    }
}

fn kron<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::identity(n)
}

/// Runs every invariant on one node set and one `q`.
pub fn run_suite<S: Scalar>(ns: &NodeSet<S>, q: &QParam<S>) -> Report {
    let n = ns.len();
    let xs = ns.nodes();
    let mut checks = Vec::new();
    let zero_node = "a node is at the origin";

    // Interpolation layer.
    let deltas: Vec<Vec<S>> = (0..n)
        .map(|j| delta_samples(ns, j).expect("index in range"))
        .collect();
    let cardinal = Matrix::from_fn(n, n, |j, k| deltas[j][k].clone());
    checks.push(compare_m("cardinality", &cardinal, &kron(n)));

    let gram = Matrix::from_fn(n, n, |j, k| {
        inner_product(ns, &deltas[j], &deltas[k]).expect("lengths match")
    });
    checks.push(compare_m("orthogonality", &gram, &kron(n)));

    let x_pairing = Matrix::from_fn(n, n, |j, k| {
        let x_delta: Vec<S> = xs.iter().zip(&deltas[k]).map(|(x, d)| x.clone() * d.clone()).collect();
        inner_product(ns, &deltas[j], &x_delta).expect("lengths match")
    });
    checks.push(compare_m("diagonal-x-pairing", &x_pairing, &x_matrix(ns).to_matrix()));

    let values: Vec<S> = (0..n).map(|j| S::from_i64(2 * j as i64 + 1)).collect();
    let reproduced: Vec<S> = xs
        .iter()
        .map(|x| interpolate(ns, &values, x).expect("lengths match"))
        .collect();
    checks.push(compare("node-reproduction", &reproduced, &values));

    let p = Polynomial::new(
        (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                S::from_i64(sign * (i as i64 + 1)) / S::from_i64(i as i64 + 2)
            })
            .collect(),
    );
    let samples = ns.sample(|x| p.eval(x));
    let probes: Vec<S> = (-10..10).map(|k| S::from_i64(k) / S::from_i64(7)).collect();
    let interp: Vec<S> = probes
        .iter()
        .map(|x| interpolate(ns, &samples, x).expect("lengths match"))
        .collect();
    let exact: Vec<S> = probes.iter().map(|x| p.eval(x)).collect();
    // Off the node interval the basis values grow; Σ|f_j δ^(j)(x)| is the
    // magnitude the interpolant is summed from.
    let lebesgue = probes
        .iter()
        .map(|x| {
            (0..n)
                .map(|j| {
                    let d = calogero_core::lagrange::delta_eval(ns, j, x).expect("index in range");
                    (samples[j].to_f64() * d.to_f64()).abs()
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    checks.push(compare_scaled("polynomial-reproduction", &interp, &exact, lebesgue));

    let v = vandermonde(ns);
    let v_inv = inverse_vandermonde(ns);
    let id = kron::<S>(n);
    checks.push(compare_scaled(
        "inverse-vandermonde-left",
        (&v_inv * &v).as_slice(),
        id.as_slice(),
        product_scale(&v_inv, &v),
    ));
    checks.push(compare_scaled(
        "inverse-vandermonde-right",
        (&v * &v_inv).as_slice(),
        id.as_slice(),
        product_scale(&v, &v_inv),
    ));

    // Classical matrices.
    let d = d_matrix_bzb(ns);
    match d_matrix_vandermonde(ns) {
        Ok(dv) => checks.push(compare_m("dual-construction", &dv, &d)),
        Err(_) => checks.push(skipped("dual-construction", zero_node)),
    }

    let mut got = Vec::new();
    let mut want = Vec::new();
    for m in 0..n as u32 {
        got.extend(d.apply(&ns.sample(|x| x.powu(m))).expect("square"));
        want.extend(ns.sample(|x| {
            if m == 0 {
                S::zero()
            } else {
                S::from_i64(m as i64) * x.powu(m - 1)
            }
        }));
    }
    checks.push(compare("derivative-exactness", &got, &want));

    let c = lagrange_coefficients(ns);
    let symbolic = Matrix::from_fn(n, n, |j, k| {
        Polynomial::new(c.row(k).to_vec()).derivative().eval(&xs[j])
    });
    checks.push(compare_m("derivative-direct-oracle", &d, &symbolic));

    let xd = x_matrix(ns).mul_left(&d);
    checks.push(compare_m("euler-similarity", &(&xd * &v), &n_matrix(n).mul_right(&v)));

    let z = z_matrix(ns);
    let neg_zt = Matrix::from_fn(n, n, |j, k| {
        if j == k {
            z.get(j, j).clone()
        } else {
            -z.get(k, j).clone()
        }
    });
    checks.push(compare_m("z-antisymmetry", &z, &neg_zt));

    let b = b_matrix(ns).to_matrix();
    let x = x_matrix(ns).to_matrix();
    checks.push(compare_m("b-commutes-with-x", &(&b * &x), &(&x * &b)));

    let expr = parse_operator::<S>("x^2*D^2 - 3/2*x*D + 2*D + 1").expect("fixed expression");
    let reparsed: Result<OperatorExpr<S>, _> = parse_operator(&expr.to_string());
    checks.push(Check {
        name: "operator-print-parse",
        status: if reparsed.as_ref() == Ok(&expr) {
            Status::Pass
        } else {
            Status::Fail
        },
        residual: 0.0,
    });
    let d_expr = parse_operator::<S>("D").expect("fixed expression");
    let realized = realize(&d_expr, ns, &Variant::Classical).expect("classical accepts any nodes");
    checks.push(compare_m("realize-classical", &realized, &d));

    // q-deformed matrices.
    let qd = q_d_matrix(ns, q).ok();
    let Some(qd) = qd else {
        for name in [
            "q-oracle-equivalence",
            "q-monomial-action",
            "q-similarity",
            "q-classical-reduction",
            "realize-q-deformed",
            "realize-q-euler",
        ] {
            checks.push(skipped(name, zero_node));
        }
        return Report { checks };
    };

    if q.is_one() {
        checks.push(skipped("q-oracle-equivalence", "jackson quotient undefined at q = 1"));
    } else {
        let d = verify_qd_oracle(ns, q).expect("preconditions checked");
        checks.push(judge::<S>("q-oracle-equivalence", d));
    }

    let mut got = Vec::new();
    let mut want = Vec::new();
    for m in 0..n as u32 {
        got.extend(qd.apply(&ns.sample(|x| x.powu(m))).expect("square"));
        want.extend(ns.sample(|x| {
            if m == 0 {
                S::zero()
            } else {
                basic_number(m, q) * x.powu(m - 1)
            }
        }));
    }
    checks.push(compare("q-monomial-action", &got, &want));

    let xqd = x_matrix(ns).mul_left(&qd);
    let nq = nq_matrix(n, q);
    checks.push(compare_m("q-similarity", &(&xqd * &v), &nq.mul_right(&v)));

    let qd_one = q_d_matrix(ns, &QParam::one()).expect("nonzero nodes");
    let dv = d_matrix_vandermonde(ns).expect("nonzero nodes");
    checks.push(compare_m("q-classical-reduction", &qd_one, &dv));

    let variant = Variant::QDeformed(q.clone());
    let realized = realize(&d_expr, ns, &variant).expect("nonzero nodes");
    checks.push(compare_m("realize-q-deformed", &realized, &qd));
    let xd_expr = parse_operator::<S>("x*D").expect("fixed expression");
    let euler = realize(&xd_expr, ns, &variant).expect("nonzero nodes");
    checks.push(compare_m("realize-q-euler", &(&euler * &v), &nq.mul_right(&v)));

    Report { checks }
}
