#include "cosetlab/haar.hpp"

#include "cosetlab/errors.hpp"

#include <Eigen/QR>

#include <numeric>

namespace cosetlab {

RealMatrix haar_orthogonal(int n, RandomStream& rng) {
  if (n < 1) throw InvalidArgument("haar_orthogonal: n must be positive");
  RealMatrix gaussian(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) gaussian(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<RealMatrix> qr(gaussian);
  RealMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix haar_unitary(int n, RandomStream& rng) {
  if (n < 1) throw InvalidArgument("haar_unitary: n must be positive");
  Matrix gaussian(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) gaussian(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

Permutation uniform_permutation(int n, RandomStream& rng) {
  if (n < 1) throw InvalidArgument("uniform_permutation: n must be positive");
  std::vector<int> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(map[static_cast<std::size_t>(i)], map[j]);
  }
  return Permutation::from_zero_based(std::move(map));
}

RealMatrix top_block(const RealMatrix& u_full, int k) {
  if (k < 0 || k > u_full.rows() || k > u_full.cols()) {
    throw DimensionError("top_block: k = " + std::to_string(k) + " exceeds the matrix dimension " +
                         std::to_string(u_full.rows()));
  }
  return u_full.topLeftCorner(k, k);
}

}  // namespace cosetlab
