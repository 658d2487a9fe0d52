//! Interpolation node sets and node generators.

use alloc::vec::Vec;

use crate::{Error, Scalar};

/// An ordered list of pairwise-distinct interpolation nodes.
///
/// Input order is preserved. In exact mode distinct means unequal; in float
/// mode any two nodes must be at least `1e-12` times the node span apart.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<S> {
    nodes: Vec<S>,
    all_nonzero: bool,
}

impl<S: Scalar> NodeSet<S> {
    pub fn new(values: Vec<S>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut lo = &values[0];
        let mut hi = &values[0];
        for v in &values {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        let span = hi.clone() - lo.clone();
        for j in 0..values.len() {
            for k in j + 1..values.len() {
                if !S::separated(&values[j], &values[k], &span) {
                    return Err(Error::DuplicateNode(j, k));
                }
            }
        }
        let all_nonzero = values.iter().all(|v| !v.is_zero());
        Ok(NodeSet {
            nodes: values,
            all_nonzero,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false; a node set has at least one node.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    pub fn get(&self, j: usize) -> &S {
        &self.nodes[j]
    }

    pub fn all_nonzero(&self) -> bool {
        self.all_nonzero
    }

    /// Fails with [`Error::ZeroNode`] naming the first node at the origin.
    pub fn require_nonzero(&self) -> Result<(), Error> {
        match self.nodes.iter().position(|v| v.is_zero()) {
            Some(j) => Err(Error::ZeroNode(j)),
            None => Ok(()),
        }
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(&S) -> S) -> Vec<S> {
        self.nodes.iter().map(f).collect()
    }
}

/// `nodeset_from_list`: validates a list of nodes.
pub fn nodeset_from_list<S: Scalar>(values: Vec<S>) -> Result<NodeSet<S>, Error> {
    NodeSet::new(values)
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind<S> {
    /// `a + (j-1)(b-a)/(n-1)`; the midpoint when `n = 1`.
    Equispaced { a: S, b: S },
    /// Chebyshev points of the first kind mapped to `[a, b]`. Float only.
    Chebyshev { a: S, b: S },
    /// The q-lattice `c · r^(j-1)`.
    Geometric { c: S, r: S },
}

pub fn generate_nodes<S: Scalar>(kind: &NodeKind<S>, n: usize) -> Result<NodeSet<S>, Error> {
    if n == 0 {
        return Err(Error::InvalidGenerator("node count must be at least 1"));
    }
    let values = match kind {
        NodeKind::Equispaced { a, b } => {
            if a >= b {
                return Err(Error::InvalidGenerator("equispaced nodes need a < b"));
            }
            if n == 1 {
                alloc::vec![(a.clone() + b.clone()) / S::from_i64(2)]
            } else {
                let step = (b.clone() - a.clone()) / S::from_i64(n as i64 - 1);
                (0..n)
                    .map(|j| a.clone() + step.clone() * S::from_i64(j as i64))
                    .collect()
            }
        }
        NodeKind::Chebyshev { a, b } => {
            if S::MODE == crate::ScalarMode::Exact {
                return Err(Error::ChebyshevExact);
            }
            if a >= b {
                return Err(Error::InvalidGenerator("chebyshev nodes need a < b"));
            }
            let (a, b) = (a.to_f64(), b.to_f64());
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            (1..=n)
                .map(|j| {
                    let theta = (2 * j - 1) as f64 * core::f64::consts::PI / (2 * n) as f64;
                    S::from_f64(mid + half * libm::cos(theta))
                })
                .collect()
        }
        NodeKind::Geometric { c, r } => {
            if c.is_zero() {
                return Err(Error::InvalidGenerator("geometric nodes need c != 0"));
            }
            if r.is_zero() || r.is_one() || *r == -S::one() {
                return Err(Error::InvalidGenerator(
                    "geometric nodes need a ratio r outside {0, 1, -1}",
                ));
            }
            let mut values = Vec::with_capacity(n);
            let mut x = c.clone();
            for _ in 0..n {
                values.push(x.clone());
                x = x * r.clone();
            }
            values
        }
    };
    NodeSet::new(values)
}
