#pragma once

#include "cosetlab/blockmat.hpp"
#include "cosetlab/cosets.hpp"
#include "cosetlab/random_stream.hpp"

#include <complex>
#include <vector>

namespace cosetlab {

/// Knobs for the alternating / majorization solvers.
struct SolverOptions {
  int restarts = 4;  // random starts in addition to the identity start
  int max_iters = 200;
  double tol = 1e-12;  // stop when the Frobenius objective improves by less
};

/// Upper bound on the operator-norm distance from x to a K_N orbit.
///
/// The bound is realized by explicit witnesses in K_N:
///   double cosets: upper_bound == ||x - left * r * right||
///   conjugacy:     upper_bound == ||x - left * r * left^{-1}||, right == left^{-1}
struct DistanceEstimate {
  double upper_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  BlockMatrix left;
  BlockMatrix right;
};

/// Two-sided alternating Procrustes minimization of ||x - U r V||_F over
/// U, V in K_N, started from the identity and from `options.restarts` random
/// elements of K_N; the best result in operator norm is returned. For the
/// symmetric family the subproblems are linear assignments and the witnesses
/// are exact permutations.
DistanceEstimate dist_double_coset(const BlockMatrix& x, const CosetTarget& target, const SolverOptions& options,
                                   RandomStream& rng);

/// Minimizes ||x W - W r||_F over W = diag(1_alpha, w), w unitary: start from
/// the smallest right singular vector of the linear map W -> xW - Wr
/// projected to the unitary group, then refine by monotone polar-factor
/// (majorization) steps. The identity and random unitary starts are refined
/// too; the best result in operator norm is returned.
DistanceEstimate dist_conjugacy(const BlockMatrix& x, const CosetTarget& target, const SolverOptions& options,
                                RandomStream& rng);

/// Distance from a convolution draw to the target, exploiting the factored
/// form of the draw: tail-only elements of K_N commute with embed(g) and
/// embed(h), so the middle K_N block is first reduced to act on 2k
/// coordinates (plus an identity), the solver runs on the resulting problem
/// at N = k, and its witnesses are lifted back and re-verified on the full
/// matrix. Falls back to the full-size solver if the reduction is degenerate.
DistanceEstimate estimate_distance(const ConvolutionDraw& draw, const BlockMatrix& g, const BlockMatrix& h,
                                   const CosetTarget& target, const SolverOptions& options, RandomStream& rng);

/// Recomputes the bound from the witnesses of `estimate`.
double reverify(const BlockMatrix& x, const CosetTarget& target, const DistanceEstimate& estimate);

/// Exact test x in K_N r K_N for the symmetric family, by backtracking over
/// the permutation defining the right factor.
bool sym_membership(const Permutation& x, const CosetTarget& target);

/// The alpha x alpha top-left block of the permutation matrix of x.
Eigen::MatrixXi sym_corner_invariant(const Permutation& x, int alpha);

/// theta(z) = a + b (z - d)^{-1} c for g = [[a, b], [c, d]] with a of size
/// alpha. Throws SingularPoint if some z lies within 1e-8 of the spectrum of d.
std::vector<Matrix> colligation_char_function(const BlockMatrix& g, int alpha,
                                              const std::vector<std::complex<double>>& z_grid);

/// Bottleneck matching distance between the eigenvalue multisets of a and b.
double spectral_distance(const Matrix& a, const Matrix& b);

}  // namespace cosetlab
