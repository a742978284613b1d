#include "cosetlab/geometry.hpp"

#include "cosetlab/errors.hpp"
#include "cosetlab/haar.hpp"
#include "linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <limits>
#include <optional>
#include <type_traits>

namespace cosetlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual above which the tail reduction of a draw is treated as degenerate.
constexpr double kReductionTolerance = 1e-8;

// An element of K_N given by its (k+N)-square block.
struct KElement {
  Matrix block;
  std::optional<Permutation> perm;
};

KElement identity_element(int n) { return {Matrix::Identity(n, n), Permutation::identity(n)}; }

BlockMatrix embed_element(const KElement& e, const BlockSpec& spec) {
  return e.perm ? embed_k(*e.perm, spec) : embed_k(e.block, spec);
}

Matrix copy_block_sum(const Matrix& m, const BlockSpec& spec) {
  const int n = spec.copy_size();
  Matrix sum = Matrix::Zero(n, n);
  for (int c = 0; c < spec.m; ++c) sum += m.block(spec.copy_offset(c), spec.copy_offset(c), n, n);
  return sum;
}

// argmax over K_N of Re tr(U M), U = diag(1_alpha, u, ..., u).
KElement best_k_element(const Matrix& m, const BlockSpec& spec, FamilyKind kind) {
  const RealMatrix s = copy_block_sum(m, spec).real();
  if (kind == FamilyKind::symmetric) {
    auto p = Permutation::from_zero_based(detail::max_weight_assignment(s));
    return {p.matrix(), std::move(p)};
  }
  return {detail::polar_orthogonal(s.transpose()).cast<std::complex<double>>(), std::nullopt};
}

KElement random_element(const GroupFamily& family, RandomStream& rng) {
  const int n = family.spec.copy_size();
  if (family.kind == FamilyKind::symmetric) {
    auto p = uniform_permutation(n, rng);
    return {p.matrix(), std::move(p)};
  }
  if (family.kind == FamilyKind::unitary_conjugation) return {haar_unitary(n, rng), std::nullopt};
  return {haar_orthogonal(n, rng).cast<std::complex<double>>(), std::nullopt};
}

struct Run {
  KElement left;
  KElement right;
  double op_distance = kInf;
  int iterations = 0;
  bool converged = false;
};

Run alternate(const Matrix& x, const Matrix& r, const GroupFamily& family, KElement right,
              const SolverOptions& options) {
  const auto& spec = family.spec;
  KElement left = identity_element(spec.copy_size());
  Matrix residual;
  double previous = kInf;
  Run run;
  for (int it = 1; it <= options.max_iters; ++it) {
    run.iterations = it;
    const Matrix rv = r * embed_element(right, spec).entries();
    left = best_k_element(rv * x.adjoint(), spec, family.kind);
    const Matrix ur = embed_element(left, spec).entries() * r;
    right = best_k_element(x.adjoint() * ur, spec, family.kind);
    residual = x - ur * embed_element(right, spec).entries();
    const double f = residual.norm();
    if (previous - f < options.tol) {
      run.converged = true;
      break;
    }
    previous = f;
  }
  if (options.max_iters < 1) residual = x - r;
  run.op_distance = operator_norm(residual);
  run.left = std::move(left);
  run.right = std::move(right);
  return run;
}

void check_double_coset_inputs(const BlockMatrix& x, const CosetTarget& target) {
  target.validate();
  if (target.family.kind == FamilyKind::unitary_conjugation) {
    throw InvalidArgument("dist_double_coset: conjugation family needs dist_conjugacy");
  }
  if (x.dim() != target.representative.dim()) {
    throw DimensionError("dist_double_coset: sample has size " + std::to_string(x.dim()) + ", target " +
                         std::to_string(target.representative.dim()));
  }
}

DistanceEstimate finish(const BlockMatrix& x, const CosetTarget& target, BlockMatrix left, BlockMatrix right,
                        int iterations, bool converged) {
  DistanceEstimate est;
  est.left = std::move(left);
  est.right = std::move(right);
  est.iterations = iterations;
  est.converged = converged;
  est.upper_bound = reverify(x, target, est);
  return est;
}

// --- conjugacy -------------------------------------------------------------

Matrix embed_conjugator(const Matrix& w, const BlockSpec& spec) { return embed_k(w, spec).entries(); }

// Largest problem (number of complex unknowns) for the singular-vector start.
constexpr int kMaxLinearUnknowns = 401;

// Generic element of the (numerical) null space of `lin`: a random combination
// of the right singular vectors whose singular values vanish. Falls back to
// the smallest singular vector when the system has no exact solution.
template <typename Mat>
Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, 1> generic_null_vector(const Mat& lin, RandomStream& rng) {
  using Vec = Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, 1>;
  Eigen::BDCSVD<Mat> svd(lin, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  const Eigen::Index cols = lin.cols();
  if (rank == cols) return svd.matrixV().col(cols - 1);
  Vec v = Vec::Zero(cols);
  for (Eigen::Index j = rank; j < cols; ++j) {
    if constexpr (std::is_same_v<typename Mat::Scalar, double>) {
      v += rng.normal() * svd.matrixV().col(j);
    } else {
      v += rng.complex_normal() * svd.matrixV().col(j);
    }
  }
  return v;
}

// Sum of E_{ij} over the copies of the active block.
Matrix copy_unit(const BlockSpec& spec, int i, int j) {
  Matrix e = Matrix::Zero(spec.dim(), spec.dim());
  for (int c = 0; c < spec.m; ++c) e(spec.copy_offset(c) + i, spec.copy_offset(c) + j) = 1.0;
  return e;
}

Matrix corner_unit(const BlockSpec& spec) {
  Matrix e = Matrix::Zero(spec.dim(), spec.dim());
  e.topLeftCorner(spec.alpha, spec.alpha).setIdentity();
  return e;
}

// Conjugator start: block-form W with x W = W r. Exact solutions form a coset
// of a *-algebra, so the polar factor of a generic one is again exact.
std::optional<Matrix> linear_start(const Matrix& x, const Matrix& r, const BlockSpec& spec, RandomStream& rng) {
  const int a = spec.alpha;
  const int n = spec.copy_size();
  const int dim = spec.dim();
  const int unknowns = n * n + (a > 0 ? 1 : 0);
  if (unknowns > kMaxLinearUnknowns) return std::nullopt;

  Matrix lin(static_cast<Eigen::Index>(dim) * dim, unknowns);
  int col = 0;
  auto push = [&](const Matrix& e) {
    const Matrix image = x * e - e * r;
    lin.col(col++) = Eigen::Map<const Eigen::VectorXcd>(image.data(), image.size());
  };
  if (a > 0) push(corner_unit(spec));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) push(copy_unit(spec, i, j));
  }
  const Eigen::VectorXcd v = generic_null_vector(lin, rng);
  Matrix w = Eigen::Map<const Matrix>(v.data() + (a > 0 ? 1 : 0), n, n);
  if (a > 0) {
    if (std::abs(v(0)) < 1e-12) return std::nullopt;
    w /= v(0);
  }
  if (w.norm() < 1e-12) return std::nullopt;
  return detail::polar_unitary(w);
}

// Right-factor start for the orthogonal double coset: real block-form A, B
// with x A = B r (then x = B r A^{-1}); same polar argument as above.
std::optional<KElement> linear_double_coset_start(const Matrix& x, const Matrix& r, const BlockSpec& spec,
                                                  RandomStream& rng) {
  const int a = spec.alpha;
  const int n = spec.copy_size();
  const int dim = spec.dim();
  const int unknowns = 2 * n * n + (a > 0 ? 1 : 0);
  if (unknowns > kMaxLinearUnknowns) return std::nullopt;

  const Eigen::Index cells = static_cast<Eigen::Index>(dim) * dim;
  RealMatrix lin(2 * cells, unknowns);
  int col = 0;
  auto push = [&](const Matrix& image) {
    const Eigen::Map<const Eigen::VectorXcd> flat(image.data(), image.size());
    lin.col(col).head(cells) = flat.real();
    lin.col(col).tail(cells) = flat.imag();
    ++col;
  };
  if (a > 0) push(x * corner_unit(spec) - corner_unit(spec) * r);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) push(x * copy_unit(spec, i, j));
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) push(-copy_unit(spec, i, j) * r);
  }
  const Eigen::VectorXd v = generic_null_vector(lin, rng);
  const int shift = a > 0 ? 1 : 0;
  RealMatrix right = Eigen::Map<const RealMatrix>(v.data() + shift, n, n);
  if (a > 0) {
    if (std::abs(v(0)) < 1e-12) return std::nullopt;
    right /= v(0);
  }
  if (right.norm() < 1e-12) return std::nullopt;
  return KElement{detail::polar_orthogonal(right).transpose().cast<std::complex<double>>(), std::nullopt};
}

struct ConjugacyRun {
  Matrix w;
  double op_distance = kInf;
  int iterations = 0;
  bool converged = false;
};

ConjugacyRun refine_conjugator(const Matrix& x, const Matrix& r, const BlockSpec& spec, Matrix w,
                               const SolverOptions& options) {
  const int a = spec.alpha;
  const int n = spec.copy_size();
  ConjugacyRun run;
  Matrix big = embed_conjugator(w, spec);
  double previous = (x * big - big * r).norm();
  for (int it = 1; it <= options.max_iters; ++it) {
    run.iterations = it;
    // Gradient of Re tr(W^H x^H W r) + ||W||^2; the added term makes the
    // quadratic convex, so the polar step never increases ||xW - Wr||.
    const Matrix grad = x.adjoint() * big * r + x * big * r.adjoint() + 2.0 * big;
    w = detail::polar_unitary(grad.block(a, a, n, n));
    big = embed_conjugator(w, spec);
    const double f = (x * big - big * r).norm();
    const bool small_step = previous - f < options.tol;
    previous = std::min(previous, f);
    if (small_step) {
      run.converged = true;
      break;
    }
  }
  run.op_distance = operator_norm(x - big * r * big.adjoint());
  run.w = std::move(w);
  return run;
}

void check_conjugacy_inputs(const BlockMatrix& x, const CosetTarget& target) {
  target.validate();
  if (target.family.kind != FamilyKind::unitary_conjugation) {
    throw InvalidArgument("dist_conjugacy: target must belong to the conjugation family");
  }
  if (x.dim() != target.representative.dim()) {
    throw DimensionError("dist_conjugacy: sample has size " + std::to_string(x.dim()) + ", target " +
                         std::to_string(target.representative.dim()));
  }
}

// --- tail reduction ----------------------------------------------------------

// For a (k+N)-square unitary x = [[u, v], [w, y]] (N >= k) finds unitary
// xi, eta of size N with
//   diag(1_k, xi) x diag(1_k, eta) = core (+) 1_{N-k}   up to `residual`.
// With `need_tail_identity` false the trailing (N-k) block is left as an
// arbitrary unitary and only the off-diagonal coupling is measured.
template <typename Mat>
struct Reduction {
  Mat xi;
  Mat eta;
  Mat core;
  double residual = kInf;
};

template <typename Mat>
Reduction<Mat> reduce_tail(const Mat& x, int k, bool need_tail_identity) {
  const int n = static_cast<int>(x.rows());
  const int tail = n - k;
  const Mat w = x.bottomLeftCorner(tail, k);
  const Mat v_adj = x.topRightCorner(k, tail).adjoint();

  Eigen::HouseholderQR<Mat> qr_w(w);
  Eigen::HouseholderQR<Mat> qr_v(v_adj);
  Mat xi = qr_w.householderQ().adjoint();
  Mat eta = qr_v.householderQ();

  const Mat y = xi * x.bottomRightCorner(tail, tail) * eta;
  const Mat xi_w = xi * w;
  const Mat v_eta = x.topRightCorner(k, tail) * eta;
  const int rest = tail - k;

  Reduction<Mat> out;
  double residual = std::max(xi_w.bottomRows(rest).norm(), v_eta.rightCols(rest).norm());
  residual = std::max(residual, y.topRightCorner(k, rest).norm());
  residual = std::max(residual, y.bottomLeftCorner(rest, k).norm());

  if (need_tail_identity && rest > 0) {
    Eigen::HouseholderQR<Mat> qr_y(y.bottomRightCorner(rest, rest));
    Mat q = qr_y.householderQ();
    const auto& ry = qr_y.matrixQR();
    for (int j = 0; j < rest; ++j) {
      const auto d = ry(j, j);
      const double mod = std::abs(d);
      if (mod > 0.0) q.col(j) *= d / mod;
    }
    Mat gamma = Mat::Identity(tail, tail);
    gamma.bottomRightCorner(rest, rest) = q.adjoint();
    xi = gamma * xi;
    const Mat tail_block = gamma.bottomRightCorner(rest, rest) * y.bottomRightCorner(rest, rest);
    residual = std::max(residual, (tail_block - Mat::Identity(rest, rest)).norm());
  }

  out.core = Mat(2 * k, 2 * k);
  out.core.topLeftCorner(k, k) = x.topLeftCorner(k, k);
  out.core.topRightCorner(k, k) = v_eta.leftCols(k);
  out.core.bottomLeftCorner(k, k) = xi_w.topRows(k);
  out.core.bottomRightCorner(k, k) = y.topLeftCorner(k, k);
  out.xi = std::move(xi);
  out.eta = std::move(eta);
  out.residual = residual;
  return out;
}

// diag(1_k, t) for a tail transform t.
template <typename Mat>
Mat with_active_identity(const Mat& t, int k) {
  const auto n = t.rows() + k;
  Mat out = Mat::Identity(n, n);
  out.bottomRightCorner(t.rows(), t.cols()) = t;
  return out;
}

Matrix pad_identity(const Matrix& small, int n) {
  Matrix out = Matrix::Identity(n, n);
  out.topLeftCorner(small.rows(), small.cols()) = small;
  return out;
}

Matrix k_block(const BlockMatrix& element, const BlockSpec& spec) {
  return element.entries().block(spec.alpha, spec.alpha, spec.copy_size(), spec.copy_size());
}

DistanceEstimate reduced_double_coset(const ConvolutionDraw& draw, const BlockMatrix& g, const BlockMatrix& h,
                                      const CosetTarget& target, const SolverOptions& options,
                                      RandomStream& rng) {
  const auto& spec = target.family.spec;
  const int k = spec.k;
  const RealMatrix middle = draw.middle_block.real();
  const auto red = reduce_tail<RealMatrix>(middle, k, true);
  if (!(red.residual <= kReductionTolerance)) return dist_double_coset(draw.value, target, options, rng);

  const auto small_spec = spec.with_tail(k);
  const auto small_target = circ_n(g, h, small_spec, target.family.kind);
  const auto x_small = embed(g, small_spec) * embed_k(Matrix(red.core.cast<std::complex<double>>()), small_spec) *
                       embed(h, small_spec);
  const auto est = dist_double_coset(x_small, small_target, options, rng);

  const int n = spec.copy_size();
  const Matrix left_block = with_active_identity<RealMatrix>(red.xi, k).transpose().cast<std::complex<double>>() *
                            pad_identity(k_block(est.left, small_spec), n);
  const Matrix right_block = pad_identity(k_block(est.right, small_spec), n) *
                             with_active_identity<RealMatrix>(red.eta, k).transpose().cast<std::complex<double>>();
  auto left = draw.outer_left * embed_k(left_block, spec);
  auto right = embed_k(right_block, spec) * draw.outer_right;
  return finish(draw.value, target, std::move(left), std::move(right), est.iterations, est.converged);
}

DistanceEstimate reduced_conjugacy(const ConvolutionDraw& draw, const BlockMatrix& g, const BlockMatrix& h,
                                   const CosetTarget& target, const SolverOptions& options, RandomStream& rng) {
  const auto& spec = target.family.spec;
  const int k = spec.k;
  const auto red = reduce_tail<Matrix>(draw.middle_block, k, false);
  if (!(red.residual <= kReductionTolerance)) return dist_conjugacy(draw.value, target, options, rng);

  const auto small_spec = spec.with_tail(k);
  const auto small_target = circ_n(g, h, small_spec, FamilyKind::unitary_conjugation);
  const auto core = embed_k(red.core, small_spec);
  const auto x_small = embed(g, small_spec) * core * embed(h, small_spec) * core.inverse();
  const auto est = dist_conjugacy(x_small, small_target, options, rng);

  const int n = spec.copy_size();
  const Matrix w_block = with_active_identity<Matrix>(red.xi, k).adjoint() * pad_identity(k_block(est.left, small_spec), n);
  auto left = draw.outer_left * embed_k(w_block, spec);
  auto right = left.inverse();
  return finish(draw.value, target, std::move(left), std::move(right), est.iterations, est.converged);
}

}  // namespace

DistanceEstimate dist_double_coset(const BlockMatrix& x, const CosetTarget& target, const SolverOptions& options,
                                   RandomStream& rng) {
  check_double_coset_inputs(x, target);
  const auto& family = target.family;
  const Matrix& xm = x.entries();
  const Matrix& rm = target.representative.entries();

  Run best = alternate(xm, rm, family, identity_element(family.spec.copy_size()), options);
  if (family.kind == FamilyKind::unitary_orthogonal) {
    if (auto start = linear_double_coset_start(xm, rm, family.spec, rng)) {
      Run run = alternate(xm, rm, family, std::move(*start), options);
      if (run.op_distance < best.op_distance) best = std::move(run);
    }
  }
  for (int i = 0; i < options.restarts; ++i) {
    Run run = alternate(xm, rm, family, random_element(family, rng), options);
    if (run.op_distance < best.op_distance) best = std::move(run);
  }
  return finish(x, target, embed_element(best.left, family.spec), embed_element(best.right, family.spec),
                best.iterations, best.converged);
}

DistanceEstimate dist_conjugacy(const BlockMatrix& x, const CosetTarget& target, const SolverOptions& options,
                                RandomStream& rng) {
  check_conjugacy_inputs(x, target);
  const auto& spec = target.family.spec;
  const Matrix& xm = x.entries();
  const Matrix& rm = target.representative.entries();
  const int n = spec.copy_size();

  std::vector<Matrix> starts;
  starts.push_back(Matrix::Identity(n, n));
  if (auto w = linear_start(xm, rm, spec, rng)) starts.push_back(std::move(*w));
  for (int i = 0; i < options.restarts; ++i) starts.push_back(haar_unitary(n, rng));

  ConjugacyRun best;
  for (auto& w : starts) {
    ConjugacyRun run = refine_conjugator(xm, rm, spec, std::move(w), options);
    if (run.op_distance < best.op_distance) best = std::move(run);
  }
  auto left = embed_k(best.w, spec);
  auto right = left.inverse();
  return finish(x, target, std::move(left), std::move(right), best.iterations, best.converged);
}

DistanceEstimate estimate_distance(const ConvolutionDraw& draw, const BlockMatrix& g, const BlockMatrix& h,
                                   const CosetTarget& target, const SolverOptions& options, RandomStream& rng) {
  target.validate();
  const auto& spec = target.family.spec;
  if (draw.value.dim() != spec.dim() || draw.middle_block.rows() != spec.copy_size()) {
    throw DimensionError("estimate_distance: draw does not match the target layout");
  }
  const bool reducible = spec.n_tail > spec.k;
  switch (target.family.kind) {
    case FamilyKind::unitary_orthogonal:
      if (reducible) return reduced_double_coset(draw, g, h, target, options, rng);
      return dist_double_coset(draw.value, target, options, rng);
    case FamilyKind::unitary_conjugation:
      if (reducible) return reduced_conjugacy(draw, g, h, target, options, rng);
      return dist_conjugacy(draw.value, target, options, rng);
    case FamilyKind::symmetric:
      return dist_double_coset(draw.value, target, options, rng);
  }
  return {};
}

double reverify(const BlockMatrix& x, const CosetTarget& target, const DistanceEstimate& estimate) {
  const auto orbit_point = estimate.left * target.representative * estimate.right;
  return operator_norm(x.entries() - orbit_point.entries());
}

// --- symmetric family ---------------------------------------------------------

namespace {

class MembershipSearch {
 public:
  MembershipSearch(const Permutation& x, const Permutation& r, const BlockSpec& spec)
      : x_(x), r_(r), spec_(spec), n_(spec.copy_size()) {
    sigma_.assign(static_cast<std::size_t>(n_), -1);
    sigma_inv_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), 0);
  }

  bool run() {
    // Corner points are fixed by the right factor.
    for (int p = 0; p < spec_.alpha; ++p) {
      if (!require(r_(p), x_(p))) return false;
    }
    return extend(0);
  }

 private:
  struct Location {
    int copy;  // -1 for the corner
    int pos;
  };

  Location locate(int point) const {
    if (point < spec_.alpha) return {-1, point};
    const int rel = point - spec_.alpha;
    return {rel / n_, rel % n_};
  }

  int point(int copy, int pos) const { return spec_.copy_offset(copy) + pos; }

  // Records that the left factor must send q to y; false if impossible.
  bool require(int q, int y) {
    const auto lq = locate(q);
    const auto ly = locate(y);
    if (lq.copy < 0 || ly.copy < 0) return q == y;
    if (lq.copy != ly.copy) return false;
    const auto i = static_cast<std::size_t>(lq.pos);
    const auto j = static_cast<std::size_t>(ly.pos);
    if (sigma_[i] >= 0) return sigma_[i] == ly.pos;
    if (sigma_inv_[j] >= 0) return false;
    sigma_[i] = ly.pos;
    sigma_inv_[j] = lq.pos;
    trail_.push_back(lq.pos);
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto i = static_cast<std::size_t>(trail_.back());
      trail_.pop_back();
      sigma_inv_[static_cast<std::size_t>(sigma_[i])] = -1;
      sigma_[i] = -1;
    }
  }

  // Right factor k2 = diag-copy(u); assigns u(s) for s = symbol, s+1, ...
  bool extend(int symbol) {
    if (symbol == n_) return true;
    for (int t = 0; t < n_; ++t) {
      if (used_[static_cast<std::size_t>(t)]) continue;
      const auto mark = trail_.size();
      bool ok = true;
      // k2 sends (c, symbol) to (c, t), so k1 sends r(c, t) to x(c, symbol).
      for (int c = 0; c < spec_.m && ok; ++c) ok = require(r_(point(c, t)), x_(point(c, symbol)));
      if (ok) {
        used_[static_cast<std::size_t>(t)] = 1;
        if (extend(symbol + 1)) return true;
        used_[static_cast<std::size_t>(t)] = 0;
      }
      undo_to(mark);
    }
    return false;
  }

  const Permutation& x_;
  const Permutation& r_;
  BlockSpec spec_;
  int n_;
  std::vector<int> sigma_;
  std::vector<int> sigma_inv_;
  std::vector<char> used_;
  std::vector<int> trail_;
};

}  // namespace

bool sym_membership(const Permutation& x, const CosetTarget& target) {
  target.validate();
  if (target.family.kind != FamilyKind::symmetric) {
    throw InvalidArgument("sym_membership: target must belong to the symmetric family");
  }
  const auto& r = *target.representative.permutation();
  if (x.degree() != r.degree()) {
    throw DimensionError("sym_membership: degree " + std::to_string(x.degree()) + " differs from target degree " +
                         std::to_string(r.degree()));
  }
  return MembershipSearch(x, r, target.family.spec).run();
}

Eigen::MatrixXi sym_corner_invariant(const Permutation& x, int alpha) {
  if (alpha < 0 || alpha > x.degree()) throw InvalidArgument("sym_corner_invariant: alpha outside 0..degree");
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(alpha, alpha);
  for (int j = 0; j < alpha; ++j) {
    if (x(j) < alpha) a(x(j), j) = 1;
  }
  return a;
}

std::vector<Matrix> colligation_char_function(const BlockMatrix& g, int alpha,
                                              const std::vector<std::complex<double>>& z_grid) {
  const int dim = g.dim();
  if (alpha < 0 || alpha > dim) throw DimensionError("colligation_char_function: alpha outside 0..dim");
  const int n = dim - alpha;
  const Matrix& gm = g.entries();
  const Matrix a = gm.topLeftCorner(alpha, alpha);
  const Matrix b = gm.topRightCorner(alpha, n);
  const Matrix c = gm.bottomLeftCorner(n, alpha);
  const Matrix d = gm.bottomRightCorner(n, n);
  const auto spectrum = n > 0 ? detail::eigenvalues(d) : std::vector<std::complex<double>>{};

  std::vector<Matrix> out;
  out.reserve(z_grid.size());
  for (const auto z : z_grid) {
    for (const auto lambda : spectrum) {
      if (std::abs(z - lambda) < 1e-8) {
        throw SingularPoint("colligation_char_function: z = (" + std::to_string(z.real()) + ", " +
                            std::to_string(z.imag()) + ") lies on the spectrum of d");
      }
    }
    if (n == 0) {
      out.push_back(a);
      continue;
    }
    const Matrix resolvent_c = (z * Matrix::Identity(n, n) - d).partialPivLu().solve(c);
    out.push_back(a + b * resolvent_c);
  }
  return out;
}

double spectral_distance(const Matrix& a, const Matrix& b) {
  return detail::bottleneck_distance(detail::eigenvalues(a), detail::eigenvalues(b));
}

}  // namespace cosetlab
