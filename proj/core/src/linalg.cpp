#include "linalg.hpp"

#include "cosetlab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace cosetlab::detail {

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& score) {
  // Shortest augmenting path Hungarian algorithm on cost = -score, 1-based
  // potentials as in the classical formulation.
  const int n = static_cast<int>(score.rows());
  if (score.cols() != n) throw DimensionError("assignment: score matrix must be square");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = -score(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> result(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= n; ++j) result[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return result;
}

namespace {

bool has_perfect_matching(const std::vector<std::vector<int>>& adj, int n) {
  std::vector<int> match_right(static_cast<std::size_t>(n), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int left) -> bool {
    for (int right : adj[static_cast<std::size_t>(left)]) {
      if (visited[static_cast<std::size_t>(right)]) continue;
      visited[static_cast<std::size_t>(right)] = 1;
      if (match_right[static_cast<std::size_t>(right)] < 0 ||
          self(self, match_right[static_cast<std::size_t>(right)])) {
        match_right[static_cast<std::size_t>(right)] = left;
        return true;
      }
    }
    return false;
  };
  for (int left = 0; left < n; ++left) {
    visited.assign(static_cast<std::size_t>(n), 0);
    if (!augment(augment, left)) return false;
  }
  return true;
}

}  // namespace

double bottleneck_distance(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) throw DimensionError("bottleneck_distance: multisets differ in size");
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  std::vector<double> dist;
  dist.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) dist.push_back(std::abs(x - y));
  }
  std::vector<double> thresholds = dist;
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto feasible = [&](double eps) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (dist[static_cast<std::size_t>(i) * a.size() + static_cast<std::size_t>(j)] <= eps) {
          adj[static_cast<std::size_t>(i)].push_back(j);
        }
      }
    }
    return has_perfect_matching(adj, n);
  };

  std::size_t lo = 0;
  std::size_t hi = thresholds.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(thresholds[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return thresholds[lo];
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue computation did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace cosetlab::detail
