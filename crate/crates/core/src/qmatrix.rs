//! The Jackson q-derivative and its Calogero matrix.
//!
//! `D_q` maps `x^m` to `[m]_q x^(m-1)`, so it preserves polynomials of degree
//! `< n` and has an `n × n` matrix `𝒟` on node samples. The matrix is built as
//! `X⁻¹ V [N]_q V⁻¹`; [`verify_qd_oracle`] recomputes it entry by entry from
//! the raw quotient `(f(qx) - f(x)) / (x (q - 1))` applied to each `δ^(k)`.
//! Every path here needs all nodes nonzero.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::calogero::{conjugated_diagonal, euler_form};
use crate::lagrange::delta_eval;
use crate::{basic_number, Diagonal, Discrepancy, Error, Matrix, NodeSet, Polynomial, QParam, Scalar};

/// A pure function that can be evaluated anywhere, including off the node grid.
pub trait SampledFunction<S> {
    fn eval(&self, x: &S) -> S;
}

impl<S, F: Fn(&S) -> S> SampledFunction<S> for F {
    fn eval(&self, x: &S) -> S {
        self(x)
    }
}

/// Built-in functions addressable by name: `monomial:m` and `poly:c0,c1,...`.
#[derive(Debug, Clone, PartialEq)]
pub enum Function<S> {
    Monomial(u32),
    Poly(Polynomial<S>),
}

impl<S: Scalar> Function<S> {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let unknown = || Error::UnknownFunction(text.to_string());
        let (name, arg) = text.split_once(':').ok_or_else(unknown)?;
        match name.trim() {
            "monomial" => arg.trim().parse().map(Function::Monomial).map_err(|_| unknown()),
            "poly" => {
                let coeffs = arg
                    .split(',')
                    .map(|c| S::parse_literal(c.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Function::Poly(Polynomial::new(coeffs)))
            }
            _ => Err(unknown()),
        }
    }
}

impl<S: Scalar> SampledFunction<S> for Function<S> {
    fn eval(&self, x: &S) -> S {
        match self {
            Function::Monomial(m) => x.powu(*m),
            Function::Poly(p) => p.eval(x),
        }
    }
}

/// `(f(qx) - f(x)) / (x (q - 1))`. Undefined at `x = 0` and at `q = 1`.
pub fn jackson_apply<S: Scalar, F: SampledFunction<S> + ?Sized>(
    f: &F,
    x: &S,
    q: &QParam<S>,
) -> Result<S, Error> {
    if x.is_zero() {
        return Err(Error::JacksonAtOrigin);
    }
    if q.is_one() {
        return Err(Error::JacksonAtQOne);
    }
    let qx = q.value().clone() * x.clone();
    Ok((f.eval(&qx) - f.eval(x)) / (x.clone() * (q.value().clone() - S::one())))
}

/// `[N]_q = diag([0]_q, [1]_q, ..., [n-1]_q)`.
pub fn nq_matrix<S: Scalar>(n: usize, q: &QParam<S>) -> Diagonal<S> {
    Diagonal::new((0..n as u32).map(|m| basic_number(m, q)).collect())
}

/// `𝒟 = X⁻¹ V [N]_q V⁻¹`. At `q = 1` this is exactly the classical `D`.
pub fn q_d_matrix<S: Scalar>(ns: &NodeSet<S>, q: &QParam<S>) -> Result<Matrix<S>, Error> {
    ns.require_nonzero()?;
    Ok(conjugated_diagonal(ns, &nq_matrix(ns.len(), q)))
}

/// `X 𝒟 = V [N]_q V⁻¹`, whose eigenvalues are `[0]_q, ..., [n-1]_q` for any nodes.
pub fn q_euler_matrix<S: Scalar>(ns: &NodeSet<S>, q: &QParam<S>) -> Result<Matrix<S>, Error> {
    ns.require_nonzero()?;
    Ok(euler_form(ns, &nq_matrix(ns.len(), q)))
}

/// `𝒟` recomputed entrywise as `(D_q δ^(k))(x_j)` through [`jackson_apply`].
pub fn q_d_matrix_direct<S: Scalar>(ns: &NodeSet<S>, q: &QParam<S>) -> Result<Matrix<S>, Error> {
    ns.require_nonzero()?;
    let n = ns.len();
    let mut data = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let delta_k = |x: &S| delta_eval(ns, k, x).expect("index in range");
            data.push(jackson_apply(&delta_k, ns.get(j), q)?);
        }
    }
    Matrix::new(n, n, data)
}

/// Compares [`q_d_matrix_direct`] (candidate) against [`q_d_matrix`] (reference).
///
/// In exact mode the discrepancy is exactly zero for every admissible input.
pub fn verify_qd_oracle<S: Scalar>(ns: &NodeSet<S>, q: &QParam<S>) -> Result<Discrepancy, Error> {
    let direct = q_d_matrix_direct(ns, q)?;
    let formula = q_d_matrix(ns, q)?;
    Ok(Discrepancy::of_matrices(&direct, &formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calogero::{d_matrix_bzb, d_matrix_vandermonde, x_matrix};
    use crate::lagrange::vandermonde;
    use crate::Rational;
    use alloc::vec;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from_i64(p) / Rational::from_i64(q)
    }

    fn qp(p: i64, d: i64) -> QParam<Rational> {
        QParam::new(r(p, d)).unwrap()
    }

    fn nodes(v: &[i64]) -> NodeSet<Rational> {
        NodeSet::new(v.iter().map(|&x| r(x, 1)).collect()).unwrap()
    }

    #[test]
    fn jackson_examples() {
        let sq = |x: &Rational| x * x;
        // ((6^2 - 3^2) / (3 * 1)) = 9 = [2]_2 * 3
        assert_eq!(jackson_apply(&sq, &r(3, 1), &qp(2, 1)).unwrap(), r(9, 1));
        assert_eq!(basic_number(2, &qp(2, 1)) * r(3, 1), r(9, 1));
        let konst = |_: &Rational| r(7, 2);
        assert_eq!(jackson_apply(&konst, &r(-4, 3), &qp(5, 2)).unwrap(), r(0, 1));
        let id = |x: &Rational| x.clone();
        assert_eq!(jackson_apply(&id, &r(11, 7), &qp(-3, 1)).unwrap(), r(1, 1));
        assert_eq!(jackson_apply(&id, &r(0, 1), &qp(2, 1)), Err(Error::JacksonAtOrigin));
        assert_eq!(
            jackson_apply(&id, &r(1, 1), &QParam::one()),
            Err(Error::JacksonAtQOne)
        );
    }

    #[test]
    fn nq_examples() {
        assert_eq!(nq_matrix(3, &QParam::<Rational>::one()).entries(), &[r(0, 1), r(1, 1), r(2, 1)]);
        assert_eq!(nq_matrix(3, &qp(2, 1)).entries(), &[r(0, 1), r(1, 1), r(3, 1)]);
        assert_eq!(nq_matrix(1, &qp(9, 4)).entries(), &[r(0, 1)]);
    }

    #[test]
    fn two_nodes_match_classical() {
        let ns = nodes(&[1, 2]);
        let want = Matrix::new(2, 2, vec![r(-1, 1), r(1, 1), r(-1, 1), r(1, 1)]).unwrap();
        assert_eq!(q_d_matrix(&ns, &qp(3, 1)).unwrap(), want);
        assert_eq!(q_d_matrix_direct(&ns, &qp(3, 1)).unwrap(), want);
    }

    #[test]
    fn q_one_is_classical() {
        let ns = nodes(&[1, 2, 4]);
        assert_eq!(q_d_matrix(&ns, &QParam::one()).unwrap(), d_matrix_bzb(&ns));
    }

    #[test]
    fn acts_on_squares() {
        let ns = nodes(&[1, 2, 4]);
        let qd = q_d_matrix(&ns, &qp(2, 1)).unwrap();
        let sq = ns.sample(|x| x * x);
        assert_eq!(qd.apply(&sq).unwrap(), vec![r(3, 1), r(6, 1), r(12, 1)]);
    }

    #[test]
    fn euler_examples() {
        let ns = nodes(&[3, -2, 5]);
        let q = qp(2, 1);
        let v = vandermonde(&ns);
        let xd = q_euler_matrix(&ns, &q).unwrap();
        let spectrum = Diagonal::new(vec![r(0, 1), r(1, 1), r(3, 1)]);
        assert_eq!(&xd * &v, spectrum.mul_right(&v));
        assert_eq!(
            q_euler_matrix(&nodes(&[7]), &q).unwrap(),
            Matrix::new(1, 1, vec![r(0, 1)]).unwrap()
        );
        let classical = q_euler_matrix(&nodes(&[1, 2]), &QParam::one()).unwrap();
        assert_eq!(
            classical,
            x_matrix(&nodes(&[1, 2])).mul_left(&d_matrix_bzb(&nodes(&[1, 2])))
        );
    }

    #[test]
    fn oracle_examples() {
        let ns = nodes(&[1, 2, 4]);
        assert!(verify_qd_oracle(&ns, &qp(2, 1)).unwrap().exact_zero);
        assert!(verify_qd_oracle(&ns, &qp(3, 2)).unwrap().exact_zero);
        assert_eq!(verify_qd_oracle(&ns, &QParam::one()), Err(Error::JacksonAtQOne));
        assert_eq!(
            verify_qd_oracle(&nodes(&[0, 1]), &qp(2, 1)),
            Err(Error::ZeroNode(0))
        );
    }

    #[test]
    fn zero_nodes_rejected() {
        let ns = nodes(&[2, 0, 1]);
        assert_eq!(q_d_matrix(&ns, &qp(2, 1)), Err(Error::ZeroNode(1)));
        assert_eq!(q_euler_matrix(&ns, &qp(2, 1)), Err(Error::ZeroNode(1)));
    }

    #[test]
    fn function_catalogue() {
        let f = Function::<Rational>::parse("monomial:3").unwrap();
        assert_eq!(f.eval(&r(2, 1)), r(8, 1));
        let p = Function::<Rational>::parse("poly:1,-1/2,3").unwrap();
        assert_eq!(p.eval(&r(2, 1)), r(12, 1));
        let pf = Function::<f64>::parse("poly:1, 0.5").unwrap();
        assert_eq!(pf.eval(&2.0), 2.0);
        for bad in ["monomial", "monomial:-1", "sin:1", "poly:1,x"] {
            assert!(Function::<Rational>::parse(bad).is_err(), "{bad}");
        }
    }

    fn nonzero_nodes(max: usize) -> impl Strategy<Value = NodeSet<Rational>> {
        proptest::collection::vec((-50i64..=50, 1i64..=10), 1..=max).prop_filter_map(
            "distinct nonzero",
            |v| {
                let ns = NodeSet::new(v.into_iter().map(|(p, q)| r(p, q)).collect()).ok()?;
                ns.all_nonzero().then_some(ns)
            },
        )
    }

    fn q_strategy() -> impl Strategy<Value = QParam<Rational>> {
        (-9i64..=9, 1i64..=6)
            .prop_filter("q != 0, 1", |(p, d)| *p != 0 && p != d)
            .prop_map(|(p, d)| qp(p, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn monomial_action(ns in nonzero_nodes(8), q in q_strategy()) {
            let qd = q_d_matrix(&ns, &q).unwrap();
            for m in 0..ns.len() as u32 {
                let want = ns.sample(|x| {
                    if m == 0 { r(0, 1) } else { basic_number(m, &q) * x.powu(m - 1) }
                });
                prop_assert_eq!(qd.apply(&ns.sample(|x| x.powu(m))).unwrap(), want);
            }
        }

        #[test]
        fn oracle_is_exact(ns in nonzero_nodes(8), q in q_strategy()) {
            prop_assert!(verify_qd_oracle(&ns, &q).unwrap().exact_zero);
        }

        #[test]
        fn similarity(ns in nonzero_nodes(8), q in q_strategy()) {
            let v = vandermonde(&ns);
            let xd = x_matrix(&ns).mul_left(&q_d_matrix(&ns, &q).unwrap());
            prop_assert_eq!(&xd * &v, nq_matrix(ns.len(), &q).mul_right(&v));
        }

        #[test]
        fn classical_reduction(ns in nonzero_nodes(8)) {
            prop_assert_eq!(
                q_d_matrix(&ns, &QParam::one()).unwrap(),
                d_matrix_vandermonde(&ns).unwrap()
            );
        }
    }
}
