#include "cosetlab/blockmat.hpp"
#include "cosetlab/errors.hpp"
#include "cosetlab/haar.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cosetlab;

namespace {

Matrix random_complex(int rows, int cols, RandomStream& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

}  // namespace

TEST_SUITE("blockmat") {

TEST_CASE("permutation parsing and composition") {
  const auto c = Permutation::parse("(1 2)(3 4 5)");
  CHECK(c.images() == std::vector<int>{2, 1, 4, 5, 3});
  CHECK(Permutation::parse("[2, 1, 3]").images() == std::vector<int>{2, 1, 3});
  CHECK(Permutation::parse("2 1", 4).images() == std::vector<int>{2, 1, 3, 4});
  CHECK(Permutation::parse("()", 3).is_identity());
  CHECK(Permutation::parse("identity", 2).is_identity());
  CHECK(c.cycles() == "(1 2)(3 4 5)");
  CHECK(Permutation::identity(3).cycles() == "()");
  CHECK_THROWS_AS(Permutation::from_images({1, 1, 3}), InvalidArgument);
  CHECK_THROWS_AS(Permutation::parse("(1 x)"), InvalidArgument);

  // (a * b)(p) = a(b(p)), and the matrix map is a homomorphism.
  const auto a = Permutation::parse("(1 2 3)");
  const auto b = Permutation::parse("(1 2)", 3);
  const auto ab = a * b;
  for (int p = 0; p < 3; ++p) CHECK(ab(p) == a(b(p)));
  CHECK((ab.matrix() - a.matrix() * b.matrix()).norm() == 0.0);
  CHECK((a * a.inverse()).is_identity());
}

TEST_CASE("permutation word round-trips through its matrix") {
  RandomStream rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = uniform_permutation(7, rng);
    const auto back = Permutation::from_matrix(p.matrix());
    REQUIRE(back.has_value());
    CHECK(*back == p);
    CHECK(Permutation::from_images(p.images()) == p);
  }
  CHECK_FALSE(Permutation::from_matrix(Matrix::Identity(2, 2) * 0.5).has_value());
}

TEST_CASE("block addressing") {
  const BlockSpec spec{2, 1, 3, 1};
  const auto id = BlockMatrix::identity(spec);
  CHECK(block(id, "corner", "corner").isApprox(Matrix::Identity(2, 2)));
  CHECK(block(id, "active_1", "tail_1").rows() == 1);
  CHECK(block(id, "active_1", "tail_1").cols() == 3);

  RandomStream rng(1, 0);
  const BlockSpec gspec{2, 2, 0, 1};
  const BlockMatrix g(haar_unitary(4, rng), gspec);
  CHECK((block(g, "corner", "corner") - g.entries().topLeftCorner(2, 2)).norm() == 0.0);
  CHECK((block(g, "active_1", "corner") - g.entries().bottomLeftCorner(2, 2)).norm() == 0.0);

  CHECK_THROWS_AS(block(id, "active_2", "corner"), InvalidArgument);
  CHECK_THROWS_AS(block(id, "middle", "corner"), InvalidArgument);
  CHECK_THROWS_AS(block(BlockMatrix(Matrix::Identity(3, 3)), "corner", "corner"), DimensionError);
}

TEST_CASE("BlockSpec validation") {
  CHECK_THROWS_AS((BlockSpec{-1, 1, 0, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((BlockSpec{0, 0, 0, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((BlockSpec{0, 1, 0, 0}.validate()), InvalidArgument);
  CHECK_NOTHROW((BlockSpec{0, 1, 0, 1}.validate()));
  CHECK(BlockSpec{1, 2, 3, 2}.dim() == 11);
}

TEST_CASE("embed") {
  const BlockSpec spec{1, 1, 5, 1};
  const auto e = embed(BlockMatrix::identity(spec.with_tail(0)), spec);
  CHECK(e.entries().isApprox(Matrix::Identity(7, 7)));
  CHECK(e.is_permutation());

  const auto swap = embed(BlockMatrix(Permutation::parse("(1 2)"), BlockSpec{1, 1, 0, 1}), BlockSpec{1, 1, 3, 1});
  REQUIRE(swap.is_permutation());
  CHECK(swap.permutation()->images() == std::vector<int>{2, 1, 3, 4, 5});
  CHECK(swap.dim() == 5);

  SUBCASE("m = 2 layout") {
    RandomStream rng(2, 0);
    const BlockSpec small{1, 2, 0, 2};
    const BlockSpec big{1, 2, 3, 2};
    const Matrix g = haar_unitary(small.dim(), rng);
    const auto e2 = embed(BlockMatrix(g, small), big);
    // Index map: corner stays, copy c position i < k goes to alpha + c (k+N) + i.
    std::vector<int> where = {0, 1, 2, 6, 7};
    Matrix expected = Matrix::Identity(big.dim(), big.dim());
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) expected(where[i], where[j]) = g(i, j);
    CHECK((e2.entries() - expected).norm() < 1e-15);
    CHECK(is_unitary(e2.entries(), 1e-10));
  }

  SUBCASE("homomorphism") {
    RandomStream rng(5, 0);
    const BlockSpec small{2, 1, 0, 2};
    const BlockSpec big{2, 1, 4, 2};
    const BlockMatrix g1(haar_unitary(small.dim(), rng), small);
    const BlockMatrix g2(haar_unitary(small.dim(), rng), small);
    const auto lhs = embed(g1 * g2, big);
    const auto rhs = embed(g1, big) * embed(g2, big);
    CHECK((lhs.entries() - rhs.entries()).cwiseAbs().maxCoeff() < 1e-12);
  }

  CHECK_THROWS_AS(embed(BlockMatrix(Matrix::Identity(3, 3)), spec), DimensionError);
}

TEST_CASE("embed_k") {
  const BlockSpec spec{2, 1, 2, 2};
  CHECK(embed_k(Matrix::Identity(3, 3), spec).entries().isApprox(Matrix::Identity(8, 8)));

  RandomStream rng(4, 0);
  const Matrix u = haar_orthogonal(3, rng).cast<std::complex<double>>();
  const auto x = embed_k(u, spec);
  CHECK(block(x, "corner", "corner").isApprox(Matrix::Identity(2, 2)));
  CHECK((block(x, "active_1", "active_1") - block(x, "active_2", "active_2")).norm() == 0.0);
  CHECK((x.entries().block(2, 2, 3, 3) - u).norm() == 0.0);
  CHECK((x.entries().block(5, 5, 3, 3) - u).norm() == 0.0);
  CHECK(x.entries().block(2, 5, 3, 3).norm() == 0.0);
  CHECK(is_unitary(x.entries(), 1e-10));

  const auto p = embed_k(Permutation::parse("(1 3)", 3), BlockSpec{1, 1, 2, 1});
  REQUIRE(p.is_permutation());
  CHECK(p.permutation()->images() == std::vector<int>{1, 4, 3, 2});

  CHECK_THROWS_AS(embed_k(Matrix::Identity(2, 2), spec), DimensionError);

  SUBCASE("homomorphism") {
    const Matrix v = haar_orthogonal(3, rng).cast<std::complex<double>>();
    const auto lhs = embed_k(u * v, spec);
    const auto rhs = embed_k(u, spec) * embed_k(v, spec);
    CHECK((lhs.entries() - rhs.entries()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("J_N") {
  const BlockSpec spec{1, 1, 3, 1};
  const auto j = build_jn(spec);
  REQUIRE(j.is_permutation());
  CHECK(j.permutation()->cycles() == "(2 3)");
  CHECK(block(j, "active_1", "tail_1").leftCols(1).isApprox(Matrix::Identity(1, 1)));

  for (const auto& s : {BlockSpec{0, 1, 1, 1}, BlockSpec{3, 2, 5, 1}, BlockSpec{1, 2, 2, 3}, BlockSpec{2, 1, 4, 2}}) {
    const auto jn = build_jn(s);
    const Matrix& e = jn.entries();
    CHECK((e * e - Matrix::Identity(s.dim(), s.dim())).norm() == 0.0);
    CHECK((e - e.transpose()).norm() == 0.0);
    CHECK(e.imag().norm() == 0.0);
    CHECK(((e.real().array() == 0.0) || (e.real().array() == 1.0)).all());
    CHECK(block(jn, "corner", "corner").isApprox(Matrix::Identity(s.alpha, s.alpha)));
    // Inside every copy the two leading k-blocks are exchanged.
    for (int c = 0; c < s.m; ++c) {
      for (int i = 0; i < s.k; ++i) {
        CHECK(e(s.active_offset(c) + i, s.tail_offset(c) + i) == 1.0);
        CHECK(e(s.tail_offset(c) + i, s.active_offset(c) + i) == 1.0);
      }
      for (int t = s.k; t < s.n_tail; ++t) CHECK(e(s.tail_offset(c) + t, s.tail_offset(c) + t) == 1.0);
    }
  }
  CHECK_THROWS_AS(build_jn(BlockSpec{1, 2, 1, 1}), InvalidArgument);
  CHECK_NOTHROW(build_jn(BlockSpec{1, 2, 2, 1}));
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(Matrix::Zero(4, 4)) == 0.0);
  CHECK(operator_norm(Matrix(0, 0)) == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  CHECK(operator_norm(d) == doctest::Approx(4.0).epsilon(1e-12));

  RandomStream rng(11, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_complex(20, 20, rng);
    const Matrix b = random_complex(20, 20, rng);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-9);
    CHECK(operator_norm(a) == doctest::Approx(oracle::spectral_norm(a)).epsilon(1e-10));
  }
  const Matrix rect = random_complex(3, 7, rng);
  CHECK(operator_norm(rect) == doctest::Approx(oracle::spectral_norm(rect)).epsilon(1e-10));
}

TEST_CASE("is_unitary") {
  RandomStream rng(12, 0);
  CHECK(is_unitary(haar_unitary(6, rng), 1e-10));
  CHECK_FALSE(is_unitary(2.0 * Matrix::Identity(3, 3), 1e-10));
  CHECK(is_unitary(Permutation::parse("(1 3 2)").matrix(), 0.0));
}

TEST_CASE("exact products stay exact") {
  const BlockMatrix a(Permutation::parse("(1 2 3)"));
  const BlockMatrix b(Permutation::parse("(1 2)", 3));
  const auto ab = a * b;
  REQUIRE(ab.is_permutation());
  CHECK(*ab.permutation() == *a.permutation() * *b.permutation());
  CHECK(ab.inverse().is_permutation());
  CHECK_THROWS_AS(a * BlockMatrix(Matrix::Identity(4, 4)), DimensionError);
}

}  // TEST_SUITE
