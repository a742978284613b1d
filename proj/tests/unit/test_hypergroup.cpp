#include "cosetlab/errors.hpp"
#include "cosetlab/experiments.hpp"
#include "cosetlab/geometry.hpp"
#include "cosetlab/haar.hpp"
#include "cosetlab/hypergroup_exact.hpp"
#include "cosetlab/parallel.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <atomic>
#include <stdexcept>

using namespace cosetlab;

namespace {

// Counts, over every u, the samples G diag(u) H lying in the coset of r.
int enumerate_hits(const Permutation& g, const Permutation& h, const Permutation& r, const BlockSpec& spec) {
  const BlockSpec small = spec.with_tail(0);
  std::vector<int> gmap(static_cast<std::size_t>(spec.dim()));
  std::vector<int> hmap(gmap.size());
  // Embed by explicit index placement.
  auto place = [&](const Permutation& p, std::vector<int>& out) {
    auto where = [&](int i) {
      if (i < spec.alpha) return i;
      const int c = (i - spec.alpha) / spec.k;
      return spec.alpha + c * spec.copy_size() + (i - spec.alpha) % spec.k;
    };
    for (int i = 0; i < spec.dim(); ++i) out[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < small.dim(); ++i) out[static_cast<std::size_t>(where(i))] = where(p(i));
  };
  place(g, gmap);
  place(h, hmap);
  int hits = 0;
  for (const auto& u : oracle::all_perms(spec.copy_size())) {
    const auto x = oracle::compose(oracle::compose(gmap, oracle::diag_copy(u, spec)), hmap);
    hits += oracle::member(x, r.map(), spec) ? 1 : 0;
  }
  return hits;
}

GroupFamily sym(const BlockSpec& s) { return GroupFamily{FamilyKind::symmetric, s}; }

}  // namespace

TEST_SUITE("hypergroup") {

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK(Rational(1).to_string() == "1/1");
  CHECK(Rational::parse("18/24") == Rational(3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("1/x"), InvalidArgument);
  const Rational big(INT64_MAX / 2 + 1);
  CHECK_THROWS_AS(big * Rational(3), std::overflow_error);
  CHECK_THROWS_AS(Rational(1, INT64_MAX) + Rational(1, INT64_MAX - 1), std::overflow_error);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> seen(1000);
  parallel_for(seen.size(), [&](std::size_t i) { ++seen[i]; });
  for (const auto& s : seen) CHECK(s.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
}

TEST_CASE("identity inputs give a single atom") {
  const BlockSpec spec{1, 1, 3, 1};
  const auto dist = exact_convolution(Permutation::identity(2), Permutation::identity(2), sym(spec));
  REQUIRE(dist.atoms.size() == 1);
  CHECK(dist.atoms[0].probability == Rational(1));
  CHECK(sym_membership(Permutation::identity(5), dist.atoms[0].target));
}

TEST_CASE("swap fixture at N = 3") {
  const BlockSpec spec{1, 1, 3, 1};
  const auto g = Permutation::parse("(1 2)");
  const auto dist = exact_convolution(g, g, sym(spec));
  REQUIRE(dist.atoms.size() == 2);
  CHECK(dist.probability_of(Permutation::parse("(1 3)", 5)) == Rational(3, 4));
  CHECK(dist.probability_of(Permutation::identity(5)) == Rational(1, 4));
  CHECK(enumerate_hits(g, g, Permutation::parse("(1 3)", 5), spec) == 18);
  CHECK(enumerate_hits(g, g, Permutation::identity(5), spec) == 6);
}

TEST_CASE("swap fixture: 1 - 1/(k+N)") {
  const auto g = Permutation::parse("(1 2)");
  for (int n_tail : {2, 3, 4}) {
    const BlockSpec spec{1, 1, n_tail, 1};
    const auto dist = exact_convolution(g, g, sym(spec));
    const auto target = circ_n(BlockMatrix(g, spec.with_tail(0)), BlockMatrix(g, spec.with_tail(0)), spec, FamilyKind::symmetric);
    const auto p = dist.probability_of(*target.representative.permutation());
    CHECK(p == Rational(1) - Rational(1, 1 + n_tail));
    const int hits = enumerate_hits(g, g, *target.representative.permutation(), spec);
    int total = 1;
    for (int i = 2; i <= 1 + n_tail; ++i) total *= i;
    CHECK(p == Rational(hits, total));
  }
  const auto conc = concentration_exact(g, g, sym(BlockSpec{1, 1, 0, 1}), {2, 3, 4});
  REQUIRE(conc.size() == 3);
  CHECK(conc[0] == std::pair<int, Rational>{2, Rational(2, 3)});
  CHECK(conc[1] == std::pair<int, Rational>{3, Rational(3, 4)});
  CHECK(conc[2] == std::pair<int, Rational>{4, Rational(4, 5)});
}

TEST_CASE("concentration_exact with identity inputs") {
  const auto conc = concentration_exact(Permutation::identity(3), Permutation::identity(3), sym(BlockSpec{1, 1, 0, 2}), {1, 2, 3});
  for (const auto& [n, p] : conc) CHECK(p == Rational(1));
}

TEST_CASE("distributions are normalized and atoms are distinct cosets") {
  RandomStream rng(1, 0);
  for (const auto& spec : {BlockSpec{1, 1, 3, 1}, BlockSpec{1, 1, 2, 2}, BlockSpec{2, 1, 2, 2}, BlockSpec{0, 2, 2, 2}}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto g = uniform_permutation(spec.small_dim(), rng);
      const auto h = uniform_permutation(spec.small_dim(), rng);
      const auto dist = exact_convolution(g, h, sym(spec));
      Rational total(0);
      for (const auto& a : dist.atoms) {
        CHECK(a.probability > Rational(0));
        total += a.probability;
      }
      CHECK(total == Rational(1));
      for (std::size_t i = 0; i < dist.atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < dist.atoms.size(); ++j) {
          CHECK_FALSE(sym_membership(*dist.atoms[i].target.representative.permutation(), dist.atoms[j].target));
        }
      }
      // Each atom's mass matches direct counting.
      int total_count = 1;
      for (int i = 2; i <= spec.copy_size(); ++i) total_count *= i;
      for (const auto& a : dist.atoms) {
        CHECK(a.probability == Rational(enumerate_hits(g, h, *a.target.representative.permutation(), spec), total_count));
      }
    }
  }
}

TEST_CASE("the predicted coset carries the largest mass") {
  RandomStream rng(2, 0);
  for (const auto& spec : {BlockSpec{1, 1, 3, 1}, BlockSpec{2, 1, 4, 1}, BlockSpec{1, 1, 3, 2}, BlockSpec{1, 2, 2, 1}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = uniform_permutation(spec.small_dim(), rng);
      const auto h = uniform_permutation(spec.small_dim(), rng);
      const auto dist = exact_convolution(g, h, sym(spec));
      const auto target =
          circ_n(BlockMatrix(g, spec.with_tail(0)), BlockMatrix(h, spec.with_tail(0)), spec, FamilyKind::symmetric);
      const int best = dist.unique_maximum();
      REQUIRE(best >= 0);
      CHECK(sym_membership(*target.representative.permutation(), dist.atoms[static_cast<std::size_t>(best)].target));
    }
  }
}

TEST_CASE("inversion symmetry") {
  RandomStream rng(3, 0);
  const BlockSpec spec{1, 1, 2, 2};
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = uniform_permutation(spec.small_dim(), rng);
    const auto h = uniform_permutation(spec.small_dim(), rng);
    const auto forward = exact_convolution(g, h, sym(spec));
    const auto backward = exact_convolution(h.inverse(), g.inverse(), sym(spec));
    REQUIRE(forward.atoms.size() == backward.atoms.size());
    for (const auto& a : forward.atoms) {
      CHECK(backward.probability_of(a.target.representative.permutation()->inverse()) == a.probability);
    }
  }
}

TEST_CASE("m = 2 exact law agrees with Monte Carlo") {
  RandomStream rng(4, 0);
  const BlockSpec spec{0, 1, 2, 2};
  const auto g = uniform_permutation(2, rng);
  const auto h = uniform_permutation(2, rng);
  const auto exact = concentration_exact(g, h, sym(spec), {2})[0].second.to_double();

  ExperimentConfig cfg;
  cfg.family = FamilyKind::symmetric;
  cfg.alpha = 0;
  cfg.k = 1;
  cfg.m = 2;
  cfg.N_list = {2};
  cfg.epsilon_list = {0.5};
  cfg.samples = 10000;
  cfg.seed = 17;
  cfg.g_spec = "[" + std::to_string(g.images()[0]) + "," + std::to_string(g.images()[1]) + "]";
  cfg.h_spec = "[" + std::to_string(h.images()[0]) + "," + std::to_string(h.images()[1]) + "]";
  const auto report = run_concentration(cfg);
  REQUIRE(report.rows.size() == 1);
  const double se = std::sqrt(exact * (1.0 - exact) / cfg.samples);
  CHECK(std::abs(report.rows[0].fraction - exact) <= 3.0 * se + 1e-12);
}

TEST_CASE("budget and input checks") {
  const auto g = Permutation::identity(2);
  CHECK_THROWS_AS(exact_convolution(g, g, sym(BlockSpec{1, 1, 7, 1})), BudgetExceeded);
  CHECK_NOTHROW(exact_convolution(g, g, sym(BlockSpec{1, 1, 3, 1}), 24));
  CHECK_THROWS_AS(exact_convolution(g, g, sym(BlockSpec{1, 1, 3, 1}), 23), BudgetExceeded);
  CHECK_THROWS_AS(concentration_exact(g, g, sym(BlockSpec{1, 1, 0, 1}), {2, 9}), BudgetExceeded);
  CHECK_THROWS_AS(exact_convolution(Permutation::identity(3), g, sym(BlockSpec{1, 1, 3, 1})), DimensionError);
  CHECK_THROWS_AS(exact_convolution(g, g, GroupFamily{FamilyKind::unitary_orthogonal, BlockSpec{1, 1, 3, 1}}),
                  InvalidArgument);
}

TEST_CASE("JSON form") {
  const auto g = Permutation::parse("(1 2)");
  const auto dist = exact_convolution(g, g, sym(BlockSpec{1, 1, 3, 1}));
  const auto doc = nlohmann::json::parse(to_json(dist));
  CHECK(doc["family"] == "symmetric");
  CHECK(doc["spec"]["N"] == 3);
  REQUIRE(doc["atoms"].size() == 2);
  Rational total(0);
  for (const auto& a : doc["atoms"]) {
    CHECK(a["representative"].size() == 5);
    total += Rational::parse(a["prob"].get<std::string>());
  }
  CHECK(total == Rational(1));
  CHECK(to_json(dist) == to_json(exact_convolution(g, g, sym(BlockSpec{1, 1, 3, 1}))));
}

}  // TEST_SUITE
