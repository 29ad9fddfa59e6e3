//! Shared inputs for the benchmark suite.

use cmineq::NodeSet;

/// `n` geometrically spaced nodes on `[0.1, 50]`.
pub fn geometric_nodes(n: usize) -> NodeSet {
    let (lo, hi) = (0.1f64, 50.0f64);
    let step = if n > 1 {
        (hi / lo).ln() / (n - 1) as f64
    } else {
        0.0
    };
    NodeSet::new((0..n).map(|i| lo * (step * i as f64).exp()).collect())
        .expect("geometric nodes are distinct")
}
