//! Bidirectionally connected network topologies and their incidence /
//! Laplacian matrices.
//!
//! Conventions: nodes are `0..n`; every undirected edge `{i, j}` is stored
//! as the two directed arcs `(i, j)` and `(j, i)`; the arc list is sorted
//! lexicographically by `(source, destination)`, which fixes every matrix
//! layout and makes topology generation reproducible.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{sym_eigen, Mat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("edge_fraction must lie in (0, 1], got {0}")]
    EdgeFractionOutOfRange(f64),
    #[error(
        "edge_fraction {fraction} selects {chosen} edges but {needed} are needed for connectivity on {n} nodes"
    )]
    TooFewEdges {
        fraction: f64,
        chosen: usize,
        needed: usize,
        n: usize,
    },
    #[error("failed to sample a connected topology in {0} attempts")]
    ConnectivityRetriesExhausted(usize),
    #[error("edge ({0}, {1}) is out of range or a self-loop")]
    BadEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("all singular values fall below the rank cutoff; graph is degenerate")]
    DegenerateSpectrum,
}

/// Topology families used by the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TopologyKind {
    Line,
    Star,
    Complete,
    /// `edge_fraction` of all possible undirected edges, resampled until
    /// connected.
    Random { edge_fraction: f64 },
}

/// A bidirectionally connected communication graph.
///
/// Invariants (all enforced at construction): `(i, j)` is an arc iff
/// `(j, i)` is, the graph is connected, and there are no self-loops or
/// duplicate arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    arcs: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Network {
    /// Assemble a network from undirected edges; each edge contributes both
    /// directed arcs.
    pub fn from_undirected_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewNodes(n));
        }
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(GraphError::BadEdge(i, j));
            }
            if neighbors[i].contains(&j) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let mut arcs = Vec::with_capacity(2 * edges.len());
        for (i, list) in neighbors.iter().enumerate() {
            for &j in list {
                arcs.push((i, j));
            }
        }
        let net = Network { n, arcs, neighbors };
        if !net.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(net)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of directed arcs (twice the edge count).
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Directed arcs in lexicographic `(source, destination)` order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbors[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == self.n
    }
}

/// Build one of the experiment topologies.
///
/// The random kind selects `ceil(edge_fraction * n(n-1)/2)` undirected edges
/// uniformly without replacement and resamples (up to 10^4 attempts) until
/// the result is connected; everything is deterministic in `seed` (ChaCha8
/// keyed by the 64-bit seed). The star is centered on node 0.
pub fn build_topology(kind: TopologyKind, n: usize, seed: u64) -> Result<Network, GraphError> {
    if n < 2 {
        return Err(GraphError::TooFewNodes(n));
    }
    match kind {
        TopologyKind::Line => {
            let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Network::from_undirected_edges(n, &edges)
        }
        TopologyKind::Star => {
            let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
            Network::from_undirected_edges(n, &edges)
        }
        TopologyKind::Complete => {
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    edges.push((i, j));
                }
            }
            Network::from_undirected_edges(n, &edges)
        }
        TopologyKind::Random { edge_fraction } => {
            if !(edge_fraction > 0.0 && edge_fraction <= 1.0) {
                return Err(GraphError::EdgeFractionOutOfRange(edge_fraction));
            }
            let total = n * (n - 1) / 2;
            let chosen = libm::ceil(edge_fraction * total as f64) as usize;
            if chosen < n - 1 {
                return Err(GraphError::TooFewEdges {
                    fraction: edge_fraction,
                    chosen,
                    needed: n - 1,
                    n,
                });
            }
            let mut all_pairs = Vec::with_capacity(total);
            for i in 0..n {
                for j in (i + 1)..n {
                    all_pairs.push((i, j));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            const MAX_ATTEMPTS: usize = 10_000;
            for _ in 0..MAX_ATTEMPTS {
                // Partial Fisher-Yates: the first `chosen` slots end up as a
                // uniform sample without replacement.
                let mut pool = all_pairs.clone();
                for i in 0..chosen {
                    let j = rng.gen_range(i..pool.len());
                    pool.swap(i, j);
                }
                let mut edges: Vec<(usize, usize)> = pool[..chosen].to_vec();
                edges.sort_unstable();
                match Network::from_undirected_edges(n, &edges) {
                    Ok(net) => return Ok(net),
                    Err(GraphError::Disconnected) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(GraphError::ConnectivityRetriesExhausted(MAX_ATTEMPTS))
        }
    }
}

/// Block incidence matrices of a network, with `p x p` identity blocks.
///
/// * `arc_source` / `arc_dest` — block row `e` carries `I_p` in the column
///   of the arc's source / destination node;
/// * `oriented = arc_source - arc_dest`, `unoriented = arc_source + arc_dest`;
/// * `oriented_laplacian = oriented^T oriented / 2`, likewise for
///   `unoriented_laplacian`;
/// * `degree` — block diagonal with `d_ii * I_p`.
///
/// The dense matrices are kept for diagnostics and tests; the hot paths use
/// the structured `apply_*` operators, which walk the arc list instead.
#[derive(Debug, Clone)]
pub struct IncidenceSet {
    n: usize,
    p: usize,
    arcs: Vec<(usize, usize)>,
    pub arc_source: Mat,
    pub arc_dest: Mat,
    pub oriented: Mat,
    pub unoriented: Mat,
    pub oriented_laplacian: Mat,
    pub unoriented_laplacian: Mat,
    pub degree: Mat,
}

/// Build the incidence set of `net` for variable dimension `p`.
pub fn incidence_set(net: &Network, p: usize) -> IncidenceSet {
    assert!(p >= 1, "variable dimension must be at least 1");
    let n = net.node_count();
    let m = net.arc_count();
    let mut arc_source = Mat::zeros(m * p, n * p);
    let mut arc_dest = Mat::zeros(m * p, n * p);
    for (e, &(i, j)) in net.arcs().iter().enumerate() {
        for r in 0..p {
            arc_source[(e * p + r, i * p + r)] = 1.0;
            arc_dest[(e * p + r, j * p + r)] = 1.0;
        }
    }
    let oriented = arc_source.sub(&arc_dest);
    let unoriented = arc_source.add(&arc_dest);
    let oriented_laplacian = oriented.matmul_t(&oriented).scale(0.5);
    let unoriented_laplacian = unoriented.matmul_t(&unoriented).scale(0.5);
    let degree = oriented_laplacian.add(&unoriented_laplacian).scale(0.5);
    IncidenceSet {
        n,
        p,
        arcs: net.arcs().to_vec(),
        arc_source,
        arc_dest,
        oriented,
        unoriented,
        oriented_laplacian,
        unoriented_laplacian,
        degree,
    }
}

impl IncidenceSet {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    /// `oriented * x`: arc block `e = (i, j)` gets `x_i - x_j`.
    pub fn apply_oriented(&self, x: &[f64]) -> Vec<f64> {
        self.apply_arcwise(x, -1.0)
    }

    /// `unoriented * x`: arc block `e = (i, j)` gets `x_i + x_j`.
    pub fn apply_unoriented(&self, x: &[f64]) -> Vec<f64> {
        self.apply_arcwise(x, 1.0)
    }

    fn apply_arcwise(&self, x: &[f64], dest_sign: f64) -> Vec<f64> {
        let p = self.p;
        assert_eq!(x.len(), self.n * p, "node vector dimension mismatch");
        let mut out = vec![0.0; self.arcs.len() * p];
        for (e, &(i, j)) in self.arcs.iter().enumerate() {
            for r in 0..p {
                out[e * p + r] = x[i * p + r] + dest_sign * x[j * p + r];
            }
        }
        out
    }

    /// `oriented^T * v`.
    pub fn apply_oriented_t(&self, v: &[f64]) -> Vec<f64> {
        self.apply_arcwise_t(v, -1.0)
    }

    /// `unoriented^T * v`.
    pub fn apply_unoriented_t(&self, v: &[f64]) -> Vec<f64> {
        self.apply_arcwise_t(v, 1.0)
    }

    fn apply_arcwise_t(&self, v: &[f64], dest_sign: f64) -> Vec<f64> {
        let p = self.p;
        assert_eq!(v.len(), self.arcs.len() * p, "arc vector dimension mismatch");
        let mut out = vec![0.0; self.n * p];
        for (e, &(i, j)) in self.arcs.iter().enumerate() {
            for r in 0..p {
                out[i * p + r] += v[e * p + r];
                out[j * p + r] += dest_sign * v[e * p + r];
            }
        }
        out
    }

    /// `oriented_laplacian * x` without touching the dense matrix.
    pub fn apply_oriented_laplacian(&self, x: &[f64]) -> Vec<f64> {
        let mut out = self.apply_oriented_t(&self.apply_oriented(x));
        for v in &mut out {
            *v *= 0.5;
        }
        out
    }
}

/// Spectral constants of an incidence set.
///
/// All values are nonnegative; the "nonzero" cutoff for the smallest
/// nonzero singular value of the oriented incidence matrix is
/// `1e-9 * sigma_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralInfo {
    /// Smallest eigenvalue of the unoriented Laplacian.
    pub unoriented_laplacian_min_eig: f64,
    /// Largest singular value of the unoriented incidence matrix.
    pub unoriented_max_sv: f64,
    /// Largest singular value of the oriented incidence matrix.
    pub oriented_max_sv: f64,
    /// Smallest nonzero singular value of the oriented incidence matrix.
    pub oriented_min_nonzero_sv: f64,
    /// Graph condition number: `unoriented_max_sv / oriented_min_nonzero_sv`.
    pub graph_condition: f64,
}

/// Compute spectral constants by dense symmetric eigendecomposition of
/// `unoriented^T unoriented` and `oriented^T oriented`.
pub fn spectral_info(inc: &IncidenceSet) -> Result<SpectralInfo, GraphError> {
    let gram_u = inc.unoriented.matmul_t(&inc.unoriented);
    let eig_u = sym_eigen(&gram_u);
    let min_u = eig_u.values.first().copied().unwrap_or(0.0);
    let max_u = eig_u.values.last().copied().unwrap_or(0.0);
    let unoriented_laplacian_min_eig = (min_u / 2.0).max(0.0);
    let unoriented_max_sv = libm::sqrt(max_u.max(0.0));

    let gram_o = inc.oriented.matmul_t(&inc.oriented);
    let eig_o = sym_eigen(&gram_o);
    let max_o = eig_o.values.last().copied().unwrap_or(0.0);
    let oriented_max_sv = libm::sqrt(max_o.max(0.0));
    let cutoff = 1e-9 * oriented_max_sv;
    let oriented_min_nonzero_sv = eig_o
        .values
        .iter()
        .map(|&lam| libm::sqrt(lam.max(0.0)))
        .filter(|&sv| sv > cutoff)
        .fold(f64::INFINITY, f64::min);
    if !oriented_min_nonzero_sv.is_finite() || oriented_min_nonzero_sv <= 0.0 {
        return Err(GraphError::DegenerateSpectrum);
    }
    Ok(SpectralInfo {
        unoriented_laplacian_min_eig,
        unoriented_max_sv,
        oriented_max_sv,
        oriented_min_nonzero_sv,
        graph_condition: unoriented_max_sv / oriented_min_nonzero_sv,
    })
}

/// Stack `n` copies of `v`: the consensus lift `1 ⊗ v`.
pub fn consensus_lift(v: &[f64], n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * v.len());
    for _ in 0..n {
        out.extend_from_slice(v);
    }
    out
}
