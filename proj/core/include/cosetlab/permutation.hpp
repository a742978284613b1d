#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cosetlab {

/// Exact element of the symmetric group S(n).
///
/// Points are 0-based internally; the textual forms (image lists and cycle
/// notation) are 1-based. Composition follows function notation:
/// (a * b)(p) == a(b(p)), and matrix() returns the 0-1 matrix P with
/// P(a(j), j) == 1, so matrix(a * b) == matrix(a) * matrix(b).
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);
  /// `images` is a 1-based image list; throws InvalidArgument if it is not a bijection.
  static Permutation from_images(const std::vector<int>& images);
  static Permutation from_zero_based(std::vector<int> map);
  /// Parses cycle notation ("(1 2)(3 4 5)", "()") or an image list
  /// ("2 1 3", "[2,1,3]"). A leading '(' means cycles. The result has degree
  /// max(min_degree, largest symbol mentioned).
  static Permutation parse(std::string_view text, int min_degree = 0);
  /// Recovers a permutation from an exact 0-1 matrix; nullopt otherwise.
  static std::optional<Permutation> from_matrix(const Eigen::MatrixXcd& m);

  int degree() const { return static_cast<int>(map_.size()); }
  int operator()(int p) const { return map_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& map() const { return map_; }
  std::vector<int> images() const;

  Permutation inverse() const;
  /// Same permutation acting on {0..n-1}, fixing the new points.
  Permutation extended(int n) const;
  bool is_identity() const;

  std::string cycles() const;
  Eigen::MatrixXcd matrix() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> map) : map_(std::move(map)) {}

  std::vector<int> map_;
};

}  // namespace cosetlab
