//! Per-node cost oracles for the two benchmark problems (least squares and
//! logistic regression), their data generators, smoothness/strong-convexity
//! constants, and a centralized reference solver.
//!
//! Randomness everywhere is ChaCha8 keyed by a 64-bit seed, so generated
//! instances are reproducible across platforms.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{axpy, norm, solve_sym_conditioned, sym_eigen, Mat, SolveError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("normal matrix is singular beyond the 1e-12 conditioning cutoff")]
    SingularNormalMatrix,
    #[error("gradient descent did not reach tolerance {tolerance} within {steps} steps")]
    DidNotConverge { steps: usize, tolerance: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// Decentralized least squares: node `i` holds `f_i(x) = 0.5 ||A_i x - y_i||^2`
/// with a `p x p` design matrix and a `p`-vector response.
#[derive(Debug, Clone)]
pub struct LeastSquaresProblem {
    p: usize,
    designs: Vec<Mat>,
    responses: Vec<Vec<f64>>,
    gram_max_eigs: Vec<f64>,
    gram_min_eigs: Vec<f64>,
}

impl LeastSquaresProblem {
    pub fn new(designs: Vec<Mat>, responses: Vec<Vec<f64>>) -> Self {
        assert!(!designs.is_empty(), "need at least one node");
        assert_eq!(designs.len(), responses.len());
        let p = designs[0].cols();
        let mut gram_max_eigs = Vec::with_capacity(designs.len());
        let mut gram_min_eigs = Vec::with_capacity(designs.len());
        for (a, y) in designs.iter().zip(&responses) {
            assert_eq!(a.rows(), p, "design matrices must be p x p");
            assert_eq!(a.cols(), p, "design matrices must be p x p");
            assert_eq!(y.len(), p, "responses must be p-vectors");
            let eig = sym_eigen(&a.matmul_t(a));
            gram_max_eigs.push(eig.values.last().copied().unwrap_or(0.0).max(0.0));
            gram_min_eigs.push(eig.values.first().copied().unwrap_or(0.0).max(0.0));
        }
        LeastSquaresProblem {
            p,
            designs,
            responses,
            gram_max_eigs,
            gram_min_eigs,
        }
    }

    pub fn design(&self, i: usize) -> &Mat {
        &self.designs[i]
    }

    pub fn response(&self, i: usize) -> &[f64] {
        &self.responses[i]
    }
}

/// Decentralized logistic regression: node `i` holds `l_i` samples as the
/// columns of a `p x l_i` matrix with labels in {-1, +1}, and
/// `f_i(x) = (1/l_i) sum_l ln(1 + exp(-y_l q_l^T x))`.
#[derive(Debug, Clone)]
pub struct LogisticProblem {
    p: usize,
    samples: Vec<Mat>,
    labels: Vec<Vec<f64>>,
    lipschitz: Vec<f64>,
}

impl LogisticProblem {
    pub fn new(samples: Vec<Mat>, labels: Vec<Vec<f64>>) -> Self {
        assert!(!samples.is_empty(), "need at least one node");
        assert_eq!(samples.len(), labels.len());
        let p = samples[0].rows();
        let mut lipschitz = Vec::with_capacity(samples.len());
        for (q, y) in samples.iter().zip(&labels) {
            assert_eq!(q.rows(), p, "sample matrices must share the dimension p");
            let l = q.cols();
            assert!(l >= 1, "every node needs at least one sample");
            assert_eq!(y.len(), l);
            assert!(
                y.iter().all(|&v| v == 1.0 || v == -1.0),
                "labels must be +/-1"
            );
            // Outer-product Gram Q Q^T is p x p; the logistic curvature is
            // bounded by 1/4 per sample.
            let eig = sym_eigen(&q.matmul(&q.transpose()));
            let lam_max = eig.values.last().copied().unwrap_or(0.0).max(0.0);
            lipschitz.push(lam_max / (4.0 * l as f64));
        }
        LogisticProblem {
            p,
            samples,
            labels,
            lipschitz,
        }
    }

    pub fn samples(&self, i: usize) -> &Mat {
        &self.samples[i]
    }

    pub fn labels(&self, i: usize) -> &[f64] {
        &self.labels[i]
    }

    pub fn sample_count(&self, i: usize) -> usize {
        self.samples[i].cols()
    }
}

/// A node-partitioned problem instance.
#[derive(Debug, Clone)]
pub enum Problem {
    LeastSquares(LeastSquaresProblem),
    Logistic(LogisticProblem),
}

/// Global smoothness and strong-convexity constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConstants {
    /// Lipschitz constant of every local gradient (max over nodes).
    pub lipschitz: f64,
    /// Strong-convexity constant (min over nodes; 0 when absent).
    pub strong_convexity: f64,
}

impl ProblemConstants {
    /// `M / m`, undefined when the problem is not strongly convex.
    pub fn condition_number(&self) -> Option<f64> {
        (self.strong_convexity > 0.0).then(|| self.lipschitz / self.strong_convexity)
    }
}

impl Problem {
    pub fn node_count(&self) -> usize {
        match self {
            Problem::LeastSquares(ls) => ls.designs.len(),
            Problem::Logistic(lr) => lr.samples.len(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Problem::LeastSquares(ls) => ls.p,
            Problem::Logistic(lr) => lr.p,
        }
    }

    /// Local cost `f_i(x)`.
    pub fn local_value(&self, i: usize, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim(), "local_value dimension mismatch");
        match self {
            Problem::LeastSquares(ls) => {
                let mut r = ls.designs[i].matvec(x);
                for (rv, yv) in r.iter_mut().zip(&ls.responses[i]) {
                    *rv -= yv;
                }
                0.5 * r.iter().map(|v| v * v).sum::<f64>()
            }
            Problem::Logistic(lr) => {
                let q = &lr.samples[i];
                let l = q.cols();
                let mut acc = 0.0;
                for col in 0..l {
                    let mut s = 0.0;
                    for r in 0..lr.p {
                        s += q[(r, col)] * x[r];
                    }
                    let t = -lr.labels[i][col] * s;
                    // ln(1 + e^t) = max(t, 0) + ln(1 + e^{-|t|})
                    acc += t.max(0.0) + libm::log1p(libm::exp(-libm::fabs(t)));
                }
                acc / l as f64
            }
        }
    }

    /// Local gradient `grad f_i(x)`.
    pub fn local_gradient(&self, i: usize, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim(), "local_gradient dimension mismatch");
        match self {
            Problem::LeastSquares(ls) => {
                let a = &ls.designs[i];
                let mut r = a.matvec(x);
                for (rv, yv) in r.iter_mut().zip(&ls.responses[i]) {
                    *rv -= yv;
                }
                a.matvec_t(&r)
            }
            Problem::Logistic(lr) => {
                let q = &lr.samples[i];
                let l = q.cols();
                let mut g = vec![0.0; lr.p];
                for col in 0..l {
                    let y = lr.labels[i][col];
                    let mut s = 0.0;
                    for r in 0..lr.p {
                        s += q[(r, col)] * x[r];
                    }
                    let margin = y * s;
                    // 1 / (1 + e^{margin}), evaluated without overflow.
                    let w = if margin > 0.0 {
                        let e = libm::exp(-margin);
                        e / (1.0 + e)
                    } else {
                        1.0 / (1.0 + libm::exp(margin))
                    };
                    let coef = -y * w / l as f64;
                    for r in 0..lr.p {
                        g[r] += coef * q[(r, col)];
                    }
                }
                g
            }
        }
    }

    /// Gradient Lipschitz constant of node `i` alone.
    pub fn node_lipschitz(&self, i: usize) -> f64 {
        match self {
            Problem::LeastSquares(ls) => ls.gram_max_eigs[i],
            Problem::Logistic(lr) => lr.lipschitz[i],
        }
    }

    /// Global constants: `M = max_i` of the node Lipschitz constants and
    /// `m = min_i` of the node strong-convexity constants (0 for logistic,
    /// which is convex but not strongly convex).
    pub fn constants(&self) -> ProblemConstants {
        match self {
            Problem::LeastSquares(ls) => ProblemConstants {
                lipschitz: ls.gram_max_eigs.iter().copied().fold(0.0, f64::max),
                strong_convexity: ls.gram_min_eigs.iter().copied().fold(f64::INFINITY, f64::min),
            },
            Problem::Logistic(lr) => ProblemConstants {
                lipschitz: lr.lipschitz.iter().copied().fold(0.0, f64::max),
                strong_convexity: 0.0,
            },
        }
    }

    /// `sum_i grad f_i(x)` for a single shared point `x`.
    pub fn total_gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        for i in 0..self.node_count() {
            let gi = self.local_gradient(i, x);
            axpy(&mut g, 1.0, &gi);
        }
        g
    }

    /// Gradients of all nodes at their own blocks of a stacked `n*p` point.
    pub fn stacked_gradient(&self, x_stacked: &[f64]) -> Vec<f64> {
        let p = self.dim();
        assert_eq!(x_stacked.len(), self.node_count() * p);
        let mut out = Vec::with_capacity(x_stacked.len());
        for (i, xi) in x_stacked.chunks_exact(p).enumerate() {
            out.extend_from_slice(&self.local_gradient(i, xi));
        }
        out
    }
}

/// Generate a least squares instance: design entries and a latent regressor
/// are i.i.d. uniform on [0,1), and the response is `y_i = A_i b_i`.
///
/// Sampling order per node: the `p*p` design entries row-major, then the
/// `p` latent entries.
pub fn ls_generate(n: usize, p: usize, seed: u64) -> LeastSquaresProblem {
    assert!(n >= 1 && p >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut designs = Vec::with_capacity(n);
    let mut responses = Vec::with_capacity(n);
    for _ in 0..n {
        let mut a = Mat::zeros(p, p);
        for r in 0..p {
            for c in 0..p {
                a[(r, c)] = rng.gen::<f64>();
            }
        }
        let b: Vec<f64> = (0..p).map(|_| rng.gen::<f64>()).collect();
        responses.push(a.matvec(&b));
        designs.push(a);
    }
    LeastSquaresProblem::new(designs, responses)
}

/// Generate a logistic regression instance: node `i` holds `l_i` samples
/// with `l_i` uniform on {1..10}; the first `p-1` feature rows are i.i.d.
/// uniform on {0.1, 0.2, ..., 1.0}, the last row is the constant 1, and
/// labels are uniform on {-1, +1}.
///
/// Sampling order per node: `l_i`, then the feature rows row-major, then
/// the labels.
pub fn lr_generate(n: usize, p: usize, seed: u64) -> LogisticProblem {
    assert!(n >= 1 && p >= 2, "p must be at least 2 (last row is the intercept)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let l = rng.gen_range(1..=10usize);
        let mut q = Mat::zeros(p, l);
        for r in 0..p - 1 {
            for c in 0..l {
                q[(r, c)] = 0.1 * rng.gen_range(1..=10u32) as f64;
            }
        }
        for c in 0..l {
            q[(p - 1, c)] = 1.0;
        }
        let y: Vec<f64> = (0..l)
            .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        samples.push(q);
        labels.push(y);
    }
    LogisticProblem::new(samples, labels)
}

/// Number of gradient-descent steps allowed to the centralized logistic
/// solver before it gives up.
pub const CENTRALIZED_MAX_STEPS: usize = 10_000_000;

/// Solve the aggregate problem `min_x sum_i f_i(x)` centrally.
///
/// Least squares is a direct solve of the normal equations (rejected when
/// conditioning is worse than 1e12). Logistic regression runs gradient
/// descent with step `1/(n*M)` until the total gradient norm falls below
/// `tolerance`, starting from `warm_start` when given (zero otherwise).
pub fn solve_centralized(
    problem: &Problem,
    tolerance: f64,
    warm_start: Option<&[f64]>,
) -> Result<Vec<f64>, ProblemError> {
    if !(tolerance > 0.0) {
        return Err(ProblemError::BadTolerance(tolerance));
    }
    let p = problem.dim();
    match problem {
        Problem::LeastSquares(ls) => {
            let mut normal = Mat::zeros(p, p);
            let mut rhs = vec![0.0; p];
            for (a, y) in ls.designs.iter().zip(&ls.responses) {
                normal = normal.add(&a.matmul_t(a));
                axpy(&mut rhs, 1.0, &a.matvec_t(y));
            }
            solve_sym_conditioned(&normal, &rhs, 1e-12).map_err(|e| match e {
                SolveError::Singular => ProblemError::SingularNormalMatrix,
            })
        }
        Problem::Logistic(_) => {
            let n = problem.node_count() as f64;
            let step = 1.0 / (n * problem.constants().lipschitz);
            let mut x = warm_start.map(|w| w.to_vec()).unwrap_or_else(|| vec![0.0; p]);
            assert_eq!(x.len(), p, "warm start dimension mismatch");
            for _ in 0..CENTRALIZED_MAX_STEPS {
                let g = problem.total_gradient(&x);
                if norm(&g) <= tolerance {
                    return Ok(x);
                }
                axpy(&mut x, -step, &g);
            }
            Err(ProblemError::DidNotConverge {
                steps: CENTRALIZED_MAX_STEPS,
                tolerance,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::solve;

    fn scalar_ls(a: f64, y: f64) -> Problem {
        Problem::LeastSquares(LeastSquaresProblem::new(
            vec![Mat::from_rows(&[&[a]])],
            vec![vec![y]],
        ))
    }

    #[test]
    fn hand_scalar_least_squares() {
        let p = scalar_ls(2.0, 2.0);
        assert_eq!(p.local_value(0, &[0.0]), 2.0);
        assert_eq!(p.local_gradient(0, &[0.0]), vec![-4.0]);
    }

    #[test]
    fn hand_half_design() {
        // A = 0.5, b = 2 so y = 1; grad at 0 is 0.5 * (0 - 1).
        let p = scalar_ls(0.5, 1.0);
        assert_eq!(p.local_gradient(0, &[0.0]), vec![-0.5]);
    }

    #[test]
    fn generated_ls_ranges_and_determinism() {
        let a = ls_generate(50, 3, 42);
        let b = ls_generate(50, 3, 42);
        for i in 0..50 {
            for r in 0..3 {
                for c in 0..3 {
                    let v = a.designs[i][(r, c)];
                    assert!((0.0..1.0).contains(&v));
                    assert_eq!(v, b.designs[i][(r, c)]);
                }
            }
        }
        let other = ls_generate(50, 3, 43);
        assert!(a.designs[0] != other.designs[0]);
    }

    #[test]
    fn ls_gradient_vanishes_at_latent_regressor() {
        let ls = ls_generate(6, 3, 9);
        let p = Problem::LeastSquares(ls.clone());
        for i in 0..6 {
            // Recover b_i by solving A_i b = y_i, then the residual is zero.
            let b = solve(ls.design(i), ls.response(i)).unwrap();
            let g = p.local_gradient(i, &b);
            assert!(norm(&g) < 1e-10, "node {i}: |g| = {}", norm(&g));
        }
    }

    #[test]
    fn generated_lr_shapes() {
        let lr = lr_generate(50, 3, 5);
        for i in 0..50 {
            let l = lr.sample_count(i);
            assert!((1..=10).contains(&l));
            for c in 0..l {
                for r in 0..2 {
                    let v = lr.samples[i][(r, c)];
                    assert!((0.1..=1.0).contains(&v));
                    assert!((v * 10.0 - libm::round(v * 10.0)).abs() < 1e-12);
                }
                assert_eq!(lr.samples[i][(2, c)], 1.0);
                assert!(lr.labels[i][c] == 1.0 || lr.labels[i][c] == -1.0);
            }
        }
        let again = lr_generate(50, 3, 5);
        assert_eq!(lr.labels, again.labels);
    }

    #[test]
    fn logistic_value_at_origin_is_ln2() {
        let p = Problem::Logistic(lr_generate(5, 3, 1));
        for i in 0..5 {
            assert!((p.local_value(i, &[0.0; 3]) - libm::log(2.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn logistic_single_sample_gradient_at_origin() {
        let q = Mat::from_rows(&[&[0.3], &[1.0]]);
        let p = Problem::Logistic(LogisticProblem::new(vec![q], vec![vec![-1.0]]));
        let g = p.local_gradient(0, &[0.0, 0.0]);
        // -y * q / 2 with y = -1.
        assert!((g[0] - 0.15).abs() < 1e-14);
        assert!((g[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn logistic_two_samples_average() {
        let q = Mat::from_rows(&[&[0.2, 0.9], &[1.0, 1.0]]);
        let both = Problem::Logistic(LogisticProblem::new(
            vec![q.clone()],
            vec![vec![1.0, -1.0]],
        ));
        let first = Problem::Logistic(LogisticProblem::new(
            vec![Mat::from_rows(&[&[0.2], &[1.0]])],
            vec![vec![1.0]],
        ));
        let second = Problem::Logistic(LogisticProblem::new(
            vec![Mat::from_rows(&[&[0.9], &[1.0]])],
            vec![vec![-1.0]],
        ));
        let x = [0.4, -0.7];
        let g = both.local_gradient(0, &x);
        let g1 = first.local_gradient(0, &x);
        let g2 = second.local_gradient(0, &x);
        for r in 0..2 {
            assert!((g[r] - 0.5 * (g1[r] + g2[r])).abs() < 1e-14);
        }
    }

    #[test]
    fn logistic_is_overflow_safe() {
        let p = Problem::Logistic(lr_generate(4, 3, 77));
        let far = [1e3, -1e3, 1e3];
        for i in 0..4 {
            assert!(p.local_value(i, &far).is_finite());
            assert!(p.local_gradient(i, &far).iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn constants_scalar_and_single_sample() {
        let p = scalar_ls(3.0, 0.0);
        let c = p.constants();
        assert!((c.lipschitz - 9.0).abs() < 1e-12);
        assert!((c.strong_convexity - 9.0).abs() < 1e-12);
        assert_eq!(c.condition_number(), Some(1.0));

        let q = Mat::from_rows(&[&[1.0], &[1.0]]);
        let lr = Problem::Logistic(LogisticProblem::new(vec![q], vec![vec![1.0]]));
        let c = lr.constants();
        assert!((c.lipschitz - 0.5).abs() < 1e-12);
        assert_eq!(c.strong_convexity, 0.0);
        assert_eq!(c.condition_number(), None);
    }

    #[test]
    fn constants_ordering() {
        let c = Problem::LeastSquares(ls_generate(10, 3, 3)).constants();
        assert!(c.lipschitz >= c.strong_convexity);
        assert!(c.strong_convexity >= 0.0);
    }

    #[test]
    fn centralized_identity_designs_average() {
        let n = 5;
        let mut designs = Vec::new();
        let mut responses = Vec::new();
        let mut mean = vec![0.0; 2];
        for i in 0..n {
            designs.push(Mat::identity(2));
            let b = vec![i as f64, 1.0 - i as f64];
            axpy(&mut mean, 1.0 / n as f64, &b);
            responses.push(b);
        }
        let p = Problem::LeastSquares(LeastSquaresProblem::new(designs, responses));
        let x = solve_centralized(&p, 1e-10, None).unwrap();
        for (xi, mi) in x.iter().zip(&mean) {
            assert!((xi - mi).abs() < 1e-12);
        }
    }

    #[test]
    fn centralized_symmetric_quadratics() {
        // 0.5 (x-1)^2 and 0.5 (x+1)^2 balance at zero.
        let p = Problem::LeastSquares(LeastSquaresProblem::new(
            vec![Mat::identity(1), Mat::identity(1)],
            vec![vec![1.0], vec![-1.0]],
        ));
        let x = solve_centralized(&p, 1e-10, None).unwrap();
        assert!(x[0].abs() < 1e-14);
    }

    #[test]
    fn centralized_matches_qr_oracle() {
        // Independent oracle: stack all designs/responses into one tall
        // regression and solve it by Householder QR.
        let ls = ls_generate(5, 2, 21);
        let p = Problem::LeastSquares(ls.clone());
        let x = solve_centralized(&p, 1e-10, None).unwrap();

        let rows = 5 * 2;
        let mut stacked = Mat::zeros(rows, 2);
        let mut rhs = vec![0.0; rows];
        for i in 0..5 {
            for r in 0..2 {
                for c in 0..2 {
                    stacked[(i * 2 + r, c)] = ls.design(i)[(r, c)];
                }
                rhs[i * 2 + r] = ls.response(i)[r];
            }
        }
        let oracle = qr_least_squares(&stacked, &rhs);
        for (a, b) in x.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }

        let g = p.total_gradient(&x);
        assert!(norm(&g) <= 1e-10);
    }

    /// Householder QR least squares, used only as a test oracle.
    fn qr_least_squares(a: &Mat, b: &[f64]) -> Vec<f64> {
        let m = a.rows();
        let n = a.cols();
        let mut r = a.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let mut nrm = 0.0;
            for i in col..m {
                nrm += r[(i, col)] * r[(i, col)];
            }
            let nrm = libm::sqrt(nrm);
            if nrm == 0.0 {
                continue;
            }
            let sign = if r[(col, col)] >= 0.0 { 1.0 } else { -1.0 };
            let mut v = vec![0.0; m];
            for i in col..m {
                v[i] = r[(i, col)];
            }
            v[col] += sign * nrm;
            let vtv: f64 = v.iter().map(|x| x * x).sum();
            if vtv == 0.0 {
                continue;
            }
            for j in col..n {
                let mut dot = 0.0;
                for i in col..m {
                    dot += v[i] * r[(i, j)];
                }
                let f = 2.0 * dot / vtv;
                for i in col..m {
                    r[(i, j)] -= f * v[i];
                }
            }
            let mut dot = 0.0;
            for i in col..m {
                dot += v[i] * rhs[i];
            }
            let f = 2.0 * dot / vtv;
            for i in col..m {
                rhs[i] -= f * v[i];
            }
        }
        let mut x = vec![0.0; n];
        for col in (0..n).rev() {
            let mut acc = rhs[col];
            for j in (col + 1)..n {
                acc -= r[(col, j)] * x[j];
            }
            x[col] = acc / r[(col, col)];
        }
        x
    }

    #[test]
    fn centralized_rejects_singular_normal_matrix() {
        let p = Problem::LeastSquares(LeastSquaresProblem::new(
            vec![Mat::zeros(2, 2)],
            vec![vec![1.0, 1.0]],
        ));
        assert_eq!(
            solve_centralized(&p, 1e-10, None),
            Err(ProblemError::SingularNormalMatrix)
        );
    }

    #[test]
    fn centralized_logistic_reaches_tolerance() {
        let p = Problem::Logistic(lr_generate(8, 3, 2));
        let x = solve_centralized(&p, 1e-8, None).unwrap();
        assert!(norm(&p.total_gradient(&x)) <= 1e-8);
        // Warm start from the solution terminates immediately at a tighter
        // tolerance than a cold start would reach in the same budget.
        let again = solve_centralized(&p, 1e-8, Some(&x)).unwrap();
        assert!(norm(&p.total_gradient(&again)) <= 1e-8);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let problems = [
            Problem::LeastSquares(ls_generate(3, 3, 11)),
            Problem::Logistic(lr_generate(3, 3, 12)),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for p in &problems {
            for probe in 0..100 {
                let i = probe % p.node_count();
                let x: Vec<f64> = (0..p.dim()).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect();
                let g = p.local_gradient(i, &x);
                let h = 1e-6;
                for r in 0..p.dim() {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[r] += h;
                    xm[r] -= h;
                    let fd = (p.local_value(i, &xp) - p.local_value(i, &xm)) / (2.0 * h);
                    let denom = g[r].abs().max(1.0);
                    assert!(
                        (fd - g[r]).abs() / denom <= 1e-5,
                        "probe {probe} coord {r}: fd {fd} vs {}",
                        g[r]
                    );
                }
            }
        }
    }

    #[test]
    fn convexity_bounds_hold_with_computed_constants() {
        let problems = [
            Problem::LeastSquares(ls_generate(4, 3, 31)),
            Problem::Logistic(lr_generate(4, 3, 32)),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in &problems {
            let c = p.constants();
            for _ in 0..100 {
                let i = rng.gen_range(0..p.node_count());
                let x: Vec<f64> = (0..p.dim()).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
                let y: Vec<f64> = (0..p.dim()).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
                let gx = p.local_gradient(i, &x);
                let gy = p.local_gradient(i, &y);
                let mut inner = 0.0;
                let mut dist2 = 0.0;
                for r in 0..p.dim() {
                    inner += (gx[r] - gy[r]) * (x[r] - y[r]);
                    dist2 += (x[r] - y[r]) * (x[r] - y[r]);
                }
                assert!(inner >= c.strong_convexity * dist2 - 1e-9);
                assert!(inner <= c.lipschitz * dist2 + 1e-9);
            }
        }
    }
}
