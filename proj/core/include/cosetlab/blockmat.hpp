#pragma once

#include "cosetlab/permutation.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>

namespace cosetlab {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Block partition of a square matrix of size alpha + m * (k + n_tail).
///
/// The layout is: a corner of size alpha, then m copies, each made of an
/// active block of size k followed by a tail of size n_tail.
struct BlockSpec {
  int alpha = 0;
  int k = 1;
  int n_tail = 0;
  int m = 1;

  int dim() const { return alpha + m * (k + n_tail); }
  int copy_size() const { return k + n_tail; }
  /// Dimension of the embedded subgroup U(alpha + m k).
  int small_dim() const { return alpha + m * k; }
  int copy_offset(int copy) const { return alpha + copy * copy_size(); }
  int active_offset(int copy) const { return copy_offset(copy); }
  int tail_offset(int copy) const { return copy_offset(copy) + k; }

  /// Same alpha, k, m with a different tail length.
  BlockSpec with_tail(int n) const { return BlockSpec{alpha, k, n, m}; }

  /// Throws InvalidArgument unless alpha, n_tail >= 0, k, m >= 1 and dim() >= 1.
  void validate() const;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

std::string to_string(const BlockSpec& spec);

/// Names a block of a BlockSpec partition: "corner", "active_<i>", "tail_<i>"
/// with 1-based copy index i.
struct BlockName {
  enum class Kind { corner, active, tail };
  Kind kind = Kind::corner;
  int copy = 0;  // 0-based

  static BlockName parse(std::string_view name);
  friend bool operator==(const BlockName&, const BlockName&) = default;
};

/// Dense complex square matrix with an optional block partition.
///
/// Permutation matrices additionally carry their exact Permutation, and
/// products of two exact permutations stay exact.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  explicit BlockMatrix(Matrix entries, std::optional<BlockSpec> spec = std::nullopt);
  explicit BlockMatrix(Permutation perm, std::optional<BlockSpec> spec = std::nullopt);

  static BlockMatrix identity(int dim, std::optional<BlockSpec> spec = std::nullopt);
  static BlockMatrix identity(const BlockSpec& spec) { return identity(spec.dim(), spec); }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  const std::optional<BlockSpec>& spec() const { return spec_; }
  const std::optional<Permutation>& permutation() const { return perm_; }
  bool is_permutation() const { return perm_.has_value(); }

  /// The spec, or DimensionError if none is attached.
  const BlockSpec& require_spec() const;
  BlockMatrix with_spec(std::optional<BlockSpec> spec) const;
  /// Inverse of a unitary matrix (its adjoint); exact for permutations.
  BlockMatrix inverse() const;

  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);

 private:
  Matrix entries_;
  std::optional<BlockSpec> spec_;
  std::optional<Permutation> perm_;
};

/// Row/column range [offset, offset + size) of a named block.
struct BlockRange {
  int offset = 0;
  int size = 0;
};
BlockRange block_range(const BlockSpec& spec, const BlockName& name);

/// Copy of the addressed sub-matrix.
Matrix block(const BlockMatrix& m, const BlockName& row_block, const BlockName& col_block);
Matrix block(const BlockMatrix& m, std::string_view row_block, std::string_view col_block);

/// Places g (of size alpha + m k, blocks a, b_j, c_i, d_ij) into the
/// alpha + m (k + N) layout of `spec` with an identity on every tail.
BlockMatrix embed(const BlockMatrix& g, const BlockSpec& spec);

/// Block-diagonal diag(1_alpha, u, ..., u) with m copies of the (k+N)-square u.
BlockMatrix embed_k(const Matrix& u, const BlockSpec& spec);
BlockMatrix embed_k(const Permutation& u, const BlockSpec& spec);

/// Places a matrix laid out by `from` into the layout of `to` (same alpha,
/// m; to.copy_size() >= from.copy_size()). Copy j, position i maps to copy
/// j, position i; the added positions carry the identity.
BlockMatrix inflate(const BlockMatrix& x, const BlockSpec& from, const BlockSpec& to);

/// Involutive permutation that, inside every copy, swaps the active block with
/// the first k tail coordinates. Requires n_tail >= k.
BlockMatrix build_jn(const BlockSpec& spec);

/// Largest singular value; 0 for an empty matrix.
double operator_norm(const Matrix& m);
/// True iff ||m^H m - I||_op <= tol.
bool is_unitary(const Matrix& m, double tol);

}  // namespace cosetlab
