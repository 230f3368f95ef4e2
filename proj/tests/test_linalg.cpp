#include <doctest.h>

#include <random>

#include "altsing/linalg.hpp"

using namespace altsing;

namespace {

template <FieldContext F>
Matrix<F> from_rows(F f, std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<F> m(f, static_cast<int>(rows.size()),
              static_cast<int>(rows.size() ? rows.begin()->size() : 0));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m.at(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rref on small examples") {
    PrimeField f2(2);
    Rationals qq;
    auto id3 = Matrix<Rationals>::identity(qq, 3);
    auto [r1, k1] = rref_rank(id3);
    CHECK(r1 == id3);
    CHECK(k1 == 3);
    Matrix<Rationals> z(qq, 2, 3);
    auto [r2, k2] = rref_rank(z);
    CHECK(r2 == z);
    CHECK(k2 == 0);
    auto m = from_rows(f2, {{1, 1, 0}, {1, 1, 0}});
    CHECK(rref_rank(m).second == 1);
  }

  TEST_CASE("kernel on small examples") {
    PrimeField f2(2);
    Rationals qq;
    CHECK(kernel(Matrix<Rationals>::identity(qq, 4)).dim() == 0);
    CHECK(kernel(Matrix<Rationals>(qq, 3, 3)) == Subspace<Rationals>::full(qq, 3));
    auto k = kernel(from_rows(f2, {{1, 1, 0}}));
    CHECK(k.dim() == 2);
    CHECK(k.contains({1, 1, 0}));
    CHECK(k.contains({0, 0, 1}));
    CHECK(!k.contains({1, 0, 0}));
  }

  TEST_CASE("kernel vectors are annihilated and dimensions add up") {
    PrimeField f5(5);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      int rows = 1 + static_cast<int>(uniform_below(rng, 6));
      int cols = 1 + static_cast<int>(uniform_below(rng, 6));
      auto m = random_matrix(f5, rows, cols, rng);
      auto k = kernel(m);
      CHECK(k.dim() + rank(m) == cols);
      for (int i = 0; i < k.dim(); ++i) {
        auto img = m * k.basis.row(i);
        for (const auto& x : img) CHECK(f5.is_zero(x));
      }
    }
  }

  TEST_CASE("subspace equality is invariant under respanning") {
    PrimeField f3(3);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      auto m = random_matrix(f3, 3, 6, rng);
      auto s = Subspace<PrimeField>::span(m);
      // mix rows by a random invertible 3x3
      auto g = random_invertible(f3, 3, rng());
      auto t = Subspace<PrimeField>::span(g * m);
      CHECK(s == t);
    }
  }

  TEST_CASE("solve returns exact solutions") {
    Rationals qq;
    PrimeField f7(7);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      int rows = 1 + static_cast<int>(uniform_below(rng, 5));
      int cols = 1 + static_cast<int>(uniform_below(rng, 5));
      auto m = random_matrix(f7, rows, cols, rng);
      std::vector<PrimeField::Elem> x(cols);
      for (auto& v : x) v = f7.random(rng);
      auto b = m * x;
      auto sol = solve(m, b);
      REQUIRE(sol.has_value());
      CHECK(m * *sol == b);
    }
    // inconsistent system
    auto m = from_rows(qq, {{1, 0}, {1, 0}});
    CHECK(!solve(m, {mpq_class(1), mpq_class(2)}).has_value());
  }

  TEST_CASE("random invertible matrices") {
    PrimeField f2(2);
    auto one = random_invertible(f2, 1, 5);
    CHECK(one.at(0, 0) == 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto m = random_invertible(f2, 5, seed);
      CHECK(rank(m) == 5);
      CHECK(m == random_invertible(f2, 5, seed));
    }
    Rationals qq;
    auto mq = random_invertible(qq, 4, 3);
    CHECK(rank(mq) == 4);
  }

  TEST_CASE("determinant and inverse") {
    PrimeField f7(7);
    std::mt19937_64 rng(17);
    CHECK(determinant(Matrix<PrimeField>::identity(f7, 4)) == 1);
    CHECK(determinant(from_rows(f7, {{1, 1}, {1, 1}})) == 0);
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_matrix(f7, 4, 4, rng);
      auto b = random_matrix(f7, 4, 4, rng);
      CHECK(determinant(a * b) == f7.mul(determinant(a), determinant(b)));
    }
    auto g = random_invertible(f7, 5, 23);
    CHECK(g * inverse(g) == Matrix<PrimeField>::identity(f7, 5));
    CHECK_THROWS_AS(inverse(from_rows(f7, {{1, 1}, {1, 1}})), SingularMatrix);
  }

  TEST_CASE("subspace enumeration matches the gaussian binomial") {
    PrimeField f2(2), f3(3);
    auto count = [](const PrimeField& f, int n, int d) {
      std::uint64_t c = 0;
      enumerate_subspaces(f, n, d, [&](const Subspace<PrimeField>&) { ++c; });
      return c;
    };
    CHECK(count(f2, 4, 2) == 35);
    CHECK(count(f2, 6, 3) == 1395);
    CHECK(count(f2, 6, 4) == 651);
    CHECK(count(f3, 4, 2) == 130);
    for (int n = 1; n <= 5; ++n) {
      for (int d = 0; d <= n; ++d) {
        CHECK(count(f2, n, d) == count_subspaces(2, n, d));
        CHECK(count(f3, n, d) == count_subspaces(3, n, d));
      }
    }
    // every visited subspace is already canonical and visited once
    std::vector<Subspace<PrimeField>> seen;
    enumerate_subspaces(f2, 5, 2, [&](const Subspace<PrimeField>& s) {
      CHECK(Subspace<PrimeField>::span(s.basis) == s);
      seen.push_back(s);
    });
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }

  TEST_CASE("image of a subspace under a map") {
    PrimeField f3(3);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
      auto s = Subspace<PrimeField>::span(random_matrix(f3, 2, 5, rng));
      auto g = random_invertible(f3, 5, rng());
      auto img = apply(g, s);
      CHECK(img.dim() == s.dim());
      for (int i = 0; i < s.dim(); ++i) CHECK(img.contains(g * s.basis.row(i)));
      CHECK(apply(inverse(g), img) == s);
    }
  }
}
