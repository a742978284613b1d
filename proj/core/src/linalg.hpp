#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace cosetlab::detail {

/// Unitary (orthogonal for real input) polar factor U V^H of M = U S V^H;
/// the maximizer of Re tr(W^H M) over unitary W.
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m);
Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& m);

/// Assignment maximizing sum_l score(l, result[l]) (Hungarian method, O(n^3)).
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& score);

/// Smallest eps such that the two multisets can be matched with every pair
/// within eps (bottleneck matching distance). Sizes must agree.
double bottleneck_distance(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b);

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace cosetlab::detail
