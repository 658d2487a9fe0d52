use std::collections::BTreeSet;

use calogero_core::{NodeSet, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Upper bound on `n`; there are only a few hundred distinct candidates.
pub const MAX_RANDOM_NODES: usize = 200;

/// Seeded random rational nodes `p/q` with `p ∈ [-50, 50] \ {0}` and
/// `q ∈ [1, 10]`, rejection-sampled until `n` distinct values are found.
pub fn random_rational_nodes(n: usize, seed: u64) -> Result<NodeSet<Rational>, CliError> {
    if n == 0 || n > MAX_RANDOM_NODES {
        return Err(CliError::Invalid(format!(
            "random node count must be in 1..={MAX_RANDOM_NODES}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        let mut p: i64 = rng.gen_range(-50..=49);
        if p >= 0 {
            p += 1;
        }
        let q: i64 = rng.gen_range(1..=10);
        let x = Rational::from_i64(p) / Rational::from_i64(q);
        if seen.insert(x.clone()) {
            values.push(x);
        }
    }
    Ok(NodeSet::new(values)?)
}

/// The same node set converted to the field `S` (exact for rationals).
pub fn random_nodes<S: Scalar>(n: usize, seed: u64) -> Result<NodeSet<S>, CliError> {
    let exact = random_rational_nodes(n, seed)?;
    let values = exact
        .nodes()
        .iter()
        .map(|x| S::parse_literal(&x.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NodeSet::new(values)?)
}
