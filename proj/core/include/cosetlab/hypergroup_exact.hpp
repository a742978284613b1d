#pragma once

#include "cosetlab/cosets.hpp"
#include "cosetlab/permutation.hpp"
#include "cosetlab/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cosetlab {

/// Default limit on |K_N| = (k+N)! for exact enumeration.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 5040;

struct ExactAtom {
  CosetTarget target;
  Rational probability;
};

/// A finite probability measure on double cosets of the symmetric family.
/// Atoms are listed in order of first discovery during enumeration.
struct ExactDistribution {
  GroupFamily family;
  std::vector<ExactAtom> atoms;

  /// Probability of the coset containing x (0 if x lies in no atom).
  Rational probability_of(const Permutation& x) const;
  /// Index of the atom of largest probability, or -1 if that maximum is shared.
  int unique_maximum() const;
};

/// Law of the double coset of embed(g) diag(u, ..., u) embed(h) for uniform u
/// in S(k+N). g, h act on alpha + m k points; family.kind must be symmetric.
/// Throws BudgetExceeded when (k+N)! > budget.
ExactDistribution exact_convolution(const Permutation& g, const Permutation& h, const GroupFamily& family,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Exact probability that the sample lies in circ_n(g, h) for each N.
/// `family.spec.n_tail` is ignored.
std::vector<std::pair<int, Rational>> concentration_exact(const Permutation& g, const Permutation& h,
                                                          const GroupFamily& family, const std::vector<int>& n_list,
                                                          std::uint64_t budget = kDefaultEnumerationBudget);

/// JSON document {"family", "spec", "atoms": [{"representative", "cycles", "prob"}]};
/// representatives are 1-based image lists and prob is "p/q".
std::string to_json(const ExactDistribution& dist, int indent = 2);

}  // namespace cosetlab
