#include "cosetlab/permutation.hpp"

#include "cosetlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace cosetlab {

namespace {

bool is_bijection(const std::vector<int>& map) {
  std::vector<char> seen(map.size(), 0);
  for (int v : map) {
    if (v < 0 || v >= static_cast<int>(map.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

std::vector<int> read_integers(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc()) throw InvalidArgument("permutation: integer out of range in '" + std::string(text) + "'");
      out.push_back(value);
      i = static_cast<std::size_t>(ptr - text.data());
    } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '[' || ch == ']') {
      ++i;
    } else {
      throw InvalidArgument("permutation: unexpected character '" + std::string(1, ch) + "' in '" +
                            std::string(text) + "'");
    }
  }
  return out;
}

}  // namespace

Permutation Permutation::identity(int n) {
  if (n < 0) throw InvalidArgument("permutation: negative degree");
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(map));
}

Permutation Permutation::from_images(const std::vector<int>& images) {
  std::vector<int> map(images.size());
  std::transform(images.begin(), images.end(), map.begin(), [](int v) { return v - 1; });
  if (!is_bijection(map)) throw InvalidArgument("permutation: image list is not a bijection of {1..n}");
  return Permutation(std::move(map));
}

Permutation Permutation::from_zero_based(std::vector<int> map) {
  if (!is_bijection(map)) throw InvalidArgument("permutation: map is not a bijection of {0..n-1}");
  return Permutation(std::move(map));
}

Permutation Permutation::parse(std::string_view text, int min_degree) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InvalidArgument("permutation: empty text");
  text.remove_prefix(first);

  if (text == "identity" || text == "id") return identity(min_degree);

  if (text.front() != '(') {
    auto images = read_integers(text);
    Permutation p = from_images(images);
    return p.extended(std::max(min_degree, p.degree()));
  }

  std::vector<std::vector<int>> cycles;
  int max_symbol = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw InvalidArgument("permutation: expected '(' in '" + std::string(text) + "'");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw InvalidArgument("permutation: unbalanced '(' in '" + std::string(text) + "'");
    auto symbols = read_integers(text.substr(i + 1, close - i - 1));
    for (int s : symbols) {
      if (s < 1) throw InvalidArgument("permutation: cycle symbols are 1-based");
      max_symbol = std::max(max_symbol, s);
    }
    cycles.push_back(std::move(symbols));
    i = close + 1;
  }

  const int n = std::max(min_degree, max_symbol);
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) map[static_cast<std::size_t>(p)] = p;
  // Cycles are composed right to left, as in (1 2)(2 3) = (1 2) * (2 3).
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& c = *it;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s : c) {
      if (seen[static_cast<std::size_t>(s - 1)]) throw InvalidArgument("permutation: repeated symbol in a cycle");
      seen[static_cast<std::size_t>(s - 1)] = 1;
    }
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) cyc[static_cast<std::size_t>(p)] = p;
    for (std::size_t j = 0; j < c.size(); ++j) {
      cyc[static_cast<std::size_t>(c[j] - 1)] = c[(j + 1) % c.size()] - 1;
    }
    std::vector<int> composed(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) composed[static_cast<std::size_t>(p)] = cyc[static_cast<std::size_t>(map[static_cast<std::size_t>(p)])];
    map = std::move(composed);
  }
  return Permutation(std::move(map));
}

std::optional<Permutation> Permutation::from_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const auto n = static_cast<int>(m.rows());
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto v = m(i, j);
      if (v == std::complex<double>(1.0, 0.0)) {
        if (map[static_cast<std::size_t>(j)] != -1) return std::nullopt;
        map[static_cast<std::size_t>(j)] = i;
      } else if (v != std::complex<double>(0.0, 0.0)) {
        return std::nullopt;
      }
    }
  }
  if (!is_bijection(map)) return std::nullopt;
  return Permutation(std::move(map));
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(map_.size());
  std::transform(map_.begin(), map_.end(), out.begin(), [](int v) { return v + 1; });
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::extended(int n) const {
  if (n < degree()) throw InvalidArgument("permutation: cannot shrink degree");
  std::vector<int> map = map_;
  for (int p = degree(); p < n; ++p) map.push_back(p);
  return Permutation(std::move(map));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::string Permutation::cycles() const {
  std::ostringstream out;
  std::vector<char> seen(map_.size(), 0);
  for (std::size_t start = 0; start < map_.size(); ++start) {
    if (seen[start] || map_[start] == static_cast<int>(start)) continue;
    out << '(';
    std::size_t p = start;
    bool first = true;
    while (!seen[p]) {
      seen[p] = 1;
      if (!first) out << ' ';
      out << p + 1;
      first = false;
      p = static_cast<std::size_t>(map_[p]);
    }
    out << ')';
  }
  const auto s = out.str();
  return s.empty() ? "()" : s;
}

Eigen::MatrixXcd Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(map_.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(map_[static_cast<std::size_t>(j)], j) = 1.0;
  return m;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DimensionError("permutation: degree mismatch in product");
  std::vector<int> map(a.map_.size());
  for (std::size_t p = 0; p < map.size(); ++p) map[p] = a.map_[static_cast<std::size_t>(b.map_[p])];
  return Permutation(std::move(map));
}

}  // namespace cosetlab
