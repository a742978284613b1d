#include "cosetlab/blockmat.hpp"

#include "cosetlab/errors.hpp"

#include <Eigen/SVD>

#include <charconv>
#include <vector>

namespace cosetlab {

void BlockSpec::validate() const {
  if (alpha < 0) throw InvalidArgument("BlockSpec: alpha must be nonnegative");
  if (k < 1) throw InvalidArgument("BlockSpec: k must be at least 1");
  if (n_tail < 0) throw InvalidArgument("BlockSpec: N must be nonnegative");
  if (m < 1) throw InvalidArgument("BlockSpec: m must be at least 1");
  if (dim() < 1) throw InvalidArgument("BlockSpec: total dimension must be at least 1");
}

std::string to_string(const BlockSpec& spec) {
  return "BlockSpec{alpha=" + std::to_string(spec.alpha) + ", k=" + std::to_string(spec.k) +
         ", N=" + std::to_string(spec.n_tail) + ", m=" + std::to_string(spec.m) + "}";
}

BlockName BlockName::parse(std::string_view name) {
  if (name == "corner") return BlockName{Kind::corner, 0};
  auto parse_indexed = [&](std::string_view prefix, Kind kind) -> std::optional<BlockName> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    const auto digits = name.substr(prefix.size());
    int index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || index < 1) return std::nullopt;
    return BlockName{kind, index - 1};
  };
  if (auto b = parse_indexed("active_", Kind::active)) return *b;
  if (auto b = parse_indexed("tail_", Kind::tail)) return *b;
  throw InvalidArgument("unknown block name '" + std::string(name) +
                        "' (expected corner, active_<i> or tail_<i>)");
}

BlockMatrix::BlockMatrix(Matrix entries, std::optional<BlockSpec> spec)
    : entries_(std::move(entries)), spec_(spec) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("BlockMatrix: entries must be square");
  if (spec_) {
    spec_->validate();
    if (spec_->dim() != dim()) {
      throw DimensionError("BlockMatrix: dimension " + std::to_string(dim()) + " does not match " +
                           to_string(*spec_));
    }
  }
}

BlockMatrix::BlockMatrix(Permutation perm, std::optional<BlockSpec> spec)
    : BlockMatrix(perm.matrix(), spec) {
  perm_ = std::move(perm);
}

BlockMatrix BlockMatrix::identity(int dim, std::optional<BlockSpec> spec) {
  return BlockMatrix(Permutation::identity(dim), spec);
}

const BlockSpec& BlockMatrix::require_spec() const {
  if (!spec_) throw DimensionError("BlockMatrix: operation needs a block spec but none is attached");
  return *spec_;
}

BlockMatrix BlockMatrix::with_spec(std::optional<BlockSpec> spec) const {
  if (perm_) return BlockMatrix(*perm_, spec);
  return BlockMatrix(entries_, spec);
}

BlockMatrix BlockMatrix::inverse() const {
  if (perm_) return BlockMatrix(perm_->inverse(), spec_);
  return BlockMatrix(Matrix(entries_.adjoint()), spec_);
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("BlockMatrix product: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
  }
  std::optional<BlockSpec> spec;
  if (a.spec_ && (!b.spec_ || *a.spec_ == *b.spec_)) {
    spec = a.spec_;
  } else if (!a.spec_) {
    spec = b.spec_;
  }
  if (a.perm_ && b.perm_) return BlockMatrix(*a.perm_ * *b.perm_, spec);
  return BlockMatrix(Matrix(a.entries_ * b.entries_), spec);
}

BlockRange block_range(const BlockSpec& spec, const BlockName& name) {
  switch (name.kind) {
    case BlockName::Kind::corner:
      return {0, spec.alpha};
    case BlockName::Kind::active:
    case BlockName::Kind::tail:
      if (name.copy < 0 || name.copy >= spec.m) {
        throw InvalidArgument("block copy index " + std::to_string(name.copy + 1) + " outside 1.." +
                              std::to_string(spec.m));
      }
      if (name.kind == BlockName::Kind::active) return {spec.active_offset(name.copy), spec.k};
      return {spec.tail_offset(name.copy), spec.n_tail};
  }
  return {};
}

Matrix block(const BlockMatrix& m, const BlockName& row_block, const BlockName& col_block) {
  const auto& spec = m.require_spec();
  const auto rows = block_range(spec, row_block);
  const auto cols = block_range(spec, col_block);
  return m.entries().block(rows.offset, cols.offset, rows.size, cols.size);
}

Matrix block(const BlockMatrix& m, std::string_view row_block, std::string_view col_block) {
  return block(m, BlockName::parse(row_block), BlockName::parse(col_block));
}

namespace {

// Position of each index of `from` inside `to`.
std::vector<int> inflation_map(const BlockSpec& from, const BlockSpec& to) {
  std::vector<int> map(static_cast<std::size_t>(from.dim()));
  for (int i = 0; i < from.alpha; ++i) map[static_cast<std::size_t>(i)] = i;
  for (int c = 0; c < from.m; ++c) {
    for (int i = 0; i < from.copy_size(); ++i) {
      map[static_cast<std::size_t>(from.copy_offset(c) + i)] = to.copy_offset(c) + i;
    }
  }
  return map;
}

}  // namespace

BlockMatrix inflate(const BlockMatrix& x, const BlockSpec& from, const BlockSpec& to) {
  from.validate();
  to.validate();
  if (from.alpha != to.alpha || from.m != to.m || from.copy_size() > to.copy_size()) {
    throw DimensionError("inflate: cannot place " + to_string(from) + " inside " + to_string(to));
  }
  if (x.dim() != from.dim()) {
    throw DimensionError("inflate: matrix of size " + std::to_string(x.dim()) + " does not fit " +
                         to_string(from));
  }
  const auto map = inflation_map(from, to);
  if (x.permutation()) {
    std::vector<int> big(static_cast<std::size_t>(to.dim()));
    for (int p = 0; p < to.dim(); ++p) big[static_cast<std::size_t>(p)] = p;
    const auto& small = *x.permutation();
    for (int p = 0; p < from.dim(); ++p) {
      big[static_cast<std::size_t>(map[static_cast<std::size_t>(p)])] = map[static_cast<std::size_t>(small(p))];
    }
    return BlockMatrix(Permutation::from_zero_based(std::move(big)), to);
  }
  Matrix big = Matrix::Identity(to.dim(), to.dim());
  for (int j = 0; j < from.dim(); ++j) {
    for (int i = 0; i < from.dim(); ++i) {
      big(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = x.entries()(i, j);
    }
  }
  return BlockMatrix(std::move(big), to);
}

BlockMatrix embed(const BlockMatrix& g, const BlockSpec& spec) {
  spec.validate();
  if (g.dim() != spec.small_dim()) {
    throw DimensionError("embed: expected a matrix of size alpha + m k = " + std::to_string(spec.small_dim()) +
                         ", got " + std::to_string(g.dim()));
  }
  return inflate(g, spec.with_tail(0), spec);
}

BlockMatrix embed_k(const Matrix& u, const BlockSpec& spec) {
  spec.validate();
  if (u.rows() != spec.copy_size() || u.cols() != spec.copy_size()) {
    throw DimensionError("embed_k: expected a square matrix of size k + N = " + std::to_string(spec.copy_size()));
  }
  Matrix big = Matrix::Zero(spec.dim(), spec.dim());
  big.topLeftCorner(spec.alpha, spec.alpha).setIdentity();
  for (int c = 0; c < spec.m; ++c) {
    big.block(spec.copy_offset(c), spec.copy_offset(c), spec.copy_size(), spec.copy_size()) = u;
  }
  return BlockMatrix(std::move(big), spec);
}

BlockMatrix embed_k(const Permutation& u, const BlockSpec& spec) {
  spec.validate();
  if (u.degree() != spec.copy_size()) {
    throw DimensionError("embed_k: expected a permutation of degree k + N = " + std::to_string(spec.copy_size()));
  }
  std::vector<int> big(static_cast<std::size_t>(spec.dim()));
  for (int p = 0; p < spec.alpha; ++p) big[static_cast<std::size_t>(p)] = p;
  for (int c = 0; c < spec.m; ++c) {
    const int off = spec.copy_offset(c);
    for (int i = 0; i < spec.copy_size(); ++i) big[static_cast<std::size_t>(off + i)] = off + u(i);
  }
  return BlockMatrix(Permutation::from_zero_based(std::move(big)), spec);
}

BlockMatrix build_jn(const BlockSpec& spec) {
  spec.validate();
  if (spec.n_tail < spec.k) {
    throw InvalidArgument("build_jn: N = " + std::to_string(spec.n_tail) + " is smaller than k = " +
                          std::to_string(spec.k) + "; the swap needs a k-block inside the tail");
  }
  std::vector<int> map(static_cast<std::size_t>(spec.dim()));
  for (int p = 0; p < spec.dim(); ++p) map[static_cast<std::size_t>(p)] = p;
  for (int c = 0; c < spec.m; ++c) {
    const int active = spec.active_offset(c);
    const int tail = spec.tail_offset(c);
    for (int i = 0; i < spec.k; ++i) {
      map[static_cast<std::size_t>(active + i)] = tail + i;
      map[static_cast<std::size_t>(tail + i)] = active + i;
    }
  }
  return BlockMatrix(Permutation::from_zero_based(std::move(map)), spec);
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  if (tol == 0.0) return defect.isZero(0.0);
  return operator_norm(defect) <= tol;
}

}  // namespace cosetlab
