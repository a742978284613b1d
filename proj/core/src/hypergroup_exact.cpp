#include "cosetlab/hypergroup_exact.hpp"

#include "cosetlab/errors.hpp"
#include "cosetlab/geometry.hpp"
#include "cosetlab/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace cosetlab {

namespace {

std::uint64_t checked_factorial(int n, std::uint64_t budget) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
    if (f > budget) {
      throw BudgetExceeded("exact enumeration of S(" + std::to_string(n) + ") exceeds the budget of " +
                           std::to_string(budget) + " elements; lower k + N");
    }
  }
  return f;
}

void check_inputs(const Permutation& g, const Permutation& h, const GroupFamily& family) {
  family.validate();
  if (family.kind != FamilyKind::symmetric) throw InvalidArgument("exact enumeration needs the symmetric family");
  const int small = family.spec.small_dim();
  if (g.degree() != small || h.degree() != small) {
    throw DimensionError("exact enumeration: g and h must act on alpha + m k = " + std::to_string(small) + " points");
  }
}

// Invariants of K x K' on S(alpha + m n) that are cheap to compare: where each
// corner point goes (itself/copy index) and from where, and how many points
// of each copy land in each other copy.
std::vector<int> signature(const Permutation& x, const BlockSpec& spec) {
  const int a = spec.alpha;
  const int n = spec.copy_size();
  const auto inv = x.inverse();
  auto kind = [&](int p) { return p < a ? p : a + (p - a) / n; };
  std::vector<int> sig;
  sig.reserve(static_cast<std::size_t>(2 * a + spec.m * spec.m));
  for (int p = 0; p < a; ++p) sig.push_back(kind(x(p)));
  for (int p = 0; p < a; ++p) sig.push_back(kind(inv(p)));
  std::vector<int> counts(static_cast<std::size_t>(spec.m * spec.m), 0);
  for (int p = a; p < spec.dim(); ++p) {
    const int q = x(p);
    if (q >= a) ++counts[static_cast<std::size_t>(((p - a) / n) * spec.m + (q - a) / n)];
  }
  sig.insert(sig.end(), counts.begin(), counts.end());
  return sig;
}

struct Classes {
  std::vector<Permutation> reps;
  std::vector<std::uint64_t> counts;
  std::map<std::vector<int>, std::vector<std::size_t>> by_signature;

  void add(const Permutation& x, std::uint64_t count, const GroupFamily& family) {
    auto& bucket = by_signature[signature(x, family.spec)];
    for (const auto idx : bucket) {
      if (sym_membership(x, CosetTarget{BlockMatrix(reps[idx], family.spec), family})) {
        counts[idx] += count;
        return;
      }
    }
    bucket.push_back(reps.size());
    reps.push_back(x);
    counts.push_back(count);
  }
};

// The u with lexicographic rank `rank` among permutations of {0..n-1}.
std::vector<int> unrank(std::uint64_t rank, int n) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;
  std::vector<int> out;
  out.reserve(pool.size());
  for (int i = n; i >= 1; --i) {
    const auto f = fact[static_cast<std::size_t>(i) - 1];
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

// Calls visit(x) for x = G diag(u..u) H over u in [begin, end) (lexicographic ranks).
template <typename Visit>
void enumerate_range(const Permutation& big_g, const Permutation& big_h, const BlockSpec& spec, std::uint64_t begin,
                     std::uint64_t end, Visit&& visit) {
  const int n = spec.copy_size();
  auto u = unrank(begin, n);
  for (std::uint64_t i = begin; i < end; ++i) {
    const auto k = *embed_k(Permutation::from_zero_based(u), spec).permutation();
    visit(big_g * k * big_h);
    std::next_permutation(u.begin(), u.end());
  }
}

Permutation embedded(const Permutation& g, const BlockSpec& spec) {
  return *embed(BlockMatrix(g, spec.with_tail(0)), spec).permutation();
}

}  // namespace

Rational ExactDistribution::probability_of(const Permutation& x) const {
  for (const auto& atom : atoms) {
    if (sym_membership(x, atom.target)) return atom.probability;
  }
  return Rational(0);
}

int ExactDistribution::unique_maximum() const {
  int best = -1;
  bool shared = false;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (best < 0 || atoms[i].probability > atoms[static_cast<std::size_t>(best)].probability) {
      best = static_cast<int>(i);
      shared = false;
    } else if (atoms[i].probability == atoms[static_cast<std::size_t>(best)].probability) {
      shared = true;
    }
  }
  return shared ? -1 : best;
}

ExactDistribution exact_convolution(const Permutation& g, const Permutation& h, const GroupFamily& family,
                                    std::uint64_t budget) {
  check_inputs(g, h, family);
  const auto& spec = family.spec;
  const auto total = checked_factorial(spec.copy_size(), budget);
  const auto big_g = embedded(g, spec);
  const auto big_h = embedded(h, spec);

  const std::size_t chunks = std::min<std::uint64_t>(total, 4ull * worker_count());
  std::vector<Classes> local(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const auto begin = total * c / chunks;
    const auto end = total * (c + 1) / chunks;
    enumerate_range(big_g, big_h, spec, begin, end, [&](const Permutation& x) { local[c].add(x, 1, family); });
  });

  // Merging in chunk order keeps first-discovery order of the sequential scan.
  Classes merged;
  for (const auto& part : local) {
    for (std::size_t i = 0; i < part.reps.size(); ++i) merged.add(part.reps[i], part.counts[i], family);
  }
  ExactDistribution dist{family, {}};
  for (std::size_t i = 0; i < merged.reps.size(); ++i) {
    dist.atoms.push_back({CosetTarget{BlockMatrix(merged.reps[i], spec), family},
                          Rational(static_cast<std::int64_t>(merged.counts[i]), static_cast<std::int64_t>(total))});
  }
  return dist;
}

std::vector<std::pair<int, Rational>> concentration_exact(const Permutation& g, const Permutation& h,
                                                          const GroupFamily& family, const std::vector<int>& n_list,
                                                          std::uint64_t budget) {
  std::vector<std::pair<int, Rational>> out;
  for (const int n_tail : n_list) {
    const GroupFamily fam{family.kind, family.spec.with_tail(n_tail)};
    check_inputs(g, h, fam);
    const auto total = checked_factorial(fam.spec.copy_size(), budget);
    const auto target = circ_n(BlockMatrix(g, fam.spec.with_tail(0)), BlockMatrix(h, fam.spec.with_tail(0)), fam.spec,
                               FamilyKind::symmetric);
    const auto big_g = embedded(g, fam.spec);
    const auto big_h = embedded(h, fam.spec);
    const std::size_t chunks = std::min<std::uint64_t>(total, 4ull * worker_count());
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
      enumerate_range(big_g, big_h, fam.spec, total * c / chunks, total * (c + 1) / chunks,
                      [&](const Permutation& x) { hits[c] += sym_membership(x, target) ? 1 : 0; });
    });
    const auto count = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    out.emplace_back(n_tail, Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(total)));
  }
  return out;
}

std::string to_json(const ExactDistribution& dist, int indent) {
  const auto& s = dist.family.spec;
  nlohmann::ordered_json doc;
  doc["family"] = to_string(dist.family.kind);
  doc["spec"] = {{"alpha", s.alpha}, {"k", s.k}, {"N", s.n_tail}, {"m", s.m}};
  doc["atoms"] = nlohmann::ordered_json::array();
  for (const auto& atom : dist.atoms) {
    const auto& p = *atom.target.representative.permutation();
    doc["atoms"].push_back(
        {{"representative", p.images()}, {"cycles", p.cycles()}, {"prob", atom.probability.to_string()}});
  }
  return doc.dump(indent);
}

}  // namespace cosetlab
