#include <doctest.h>

#include <random>

#include "altsing/rings.hpp"

using namespace altsing;

namespace {

// Randomized ring-axiom battery shared by every coefficient ring.
template <class R, class Gen>
void check_ring_axioms(const R& r, Gen gen, int cases) {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < cases; ++i) {
    auto a = gen(rng), b = gen(rng), c = gen(rng);
    CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
    CHECK(r.add(a, b) == r.add(b, a));
    CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
    CHECK(r.mul(a, b) == r.mul(b, a));
    CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
    CHECK(r.add(a, r.zero()) == a);
    CHECK(r.mul(a, r.one()) == a);
    CHECK(r.is_zero(r.add(a, r.neg(a))));
    CHECK(r.sub(a, b) == r.add(a, r.neg(b)));
  }
}

HomogPoly<Rationals> q_poly(const PolyRing<Rationals>& pr,
                            std::initializer_list<std::pair<std::vector<std::uint32_t>, long>> ts) {
  auto f = pr.zero();
  for (const auto& [e, c] : ts) f = pr.add(f, pr.monomial(e, mpq_class(c)));
  return f;
}

}  // namespace

TEST_SUITE("rings") {
  TEST_CASE("field spec checks primality") {
    CHECK(FieldSpec::gf(2).characteristic() == 2);
    CHECK(FieldSpec::gf(2147483647).characteristic() == 2147483647);  // 2^31 - 1
    CHECK(FieldSpec::rationals().characteristic() == 0);
    CHECK_THROWS_AS(FieldSpec::gf(1), Error);
    CHECK_THROWS_AS(FieldSpec::gf(6), Error);
    CHECK_THROWS_AS(FieldSpec::gf(100), Error);
    CHECK_THROWS_AS(PrimeField(9), Error);
  }

  TEST_CASE("ring axioms hold on random triples") {
    PrimeField f2(2), f97(97);
    check_ring_axioms(f2, [&](std::mt19937_64& g) { return f2.random(g); }, 1000);
    check_ring_axioms(f97, [&](std::mt19937_64& g) { return f97.random(g); }, 1000);
    Rationals qq;
    check_ring_axioms(qq, [&](std::mt19937_64& g) {
      return qq.from_fraction(static_cast<long long>(uniform_below(g, 41)) - 20,
                              static_cast<long long>(uniform_below(g, 9)) + 1);
    }, 1000);
    PrimeField f5(5);
    PolyRing<PrimeField> pr{f5, 3};
    auto gen = [&](std::mt19937_64& g) {
      auto f = pr.zero();
      for (int t = 0; t < 3; ++t) {
        std::vector<std::uint32_t> e(3, 0);
        // random exponent vector of total degree 2
        e[uniform_below(g, 3)] += 1;
        e[uniform_below(g, 3)] += 1;
        f = pr.add(f, pr.monomial(e, f5.random(g)));
      }
      return f;
    };
    check_ring_axioms(pr, gen, 1000);
  }

  TEST_CASE("inverses are exact for every prime up to 101") {
    for (std::uint32_t p = 2; p <= 101; ++p) {
      if (!is_prime(p)) continue;
      PrimeField f(p);
      for (std::uint64_t a = 1; a < p; ++a) {
        CHECK(f.mul(a, f.inv(a)) == f.one());
        CHECK(f.div(a, a) == f.one());
      }
    }
    CHECK_THROWS_AS(PrimeField(7).inv(0), Error);
  }

  TEST_CASE("polynomial evaluation is a ring homomorphism") {
    PrimeField f7(7);
    PolyRing<PrimeField> pr{f7, 4};
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      auto rand_poly = [&](int deg) {
        auto f = pr.zero();
        for (int t = 0; t < 4; ++t) {
          std::vector<std::uint32_t> e(4, 0);
          for (int k = 0; k < deg; ++k) e[uniform_below(rng, 4)] += 1;
          f = pr.add(f, pr.monomial(e, f7.random(rng)));
        }
        return f;
      };
      auto f = rand_poly(2), g = rand_poly(3);
      std::vector<PrimeField::Elem> u(4);
      for (auto& x : u) x = f7.random(rng);
      CHECK(poly_eval(f7, pr.mul(f, g), u) == f7.mul(poly_eval(f7, f, u), poly_eval(f7, g, u)));
      CHECK(poly_eval(f7, pr.add(f, pr.scale(g, f7.zero())), u) == poly_eval(f7, f, u));
    }
  }

  TEST_CASE("rationals canonicalize") {
    Rationals qq;
    CHECK(qq.from_fraction(2, 4) == qq.from_fraction(1, 2));
    CHECK(qq.from_fraction(-3, -6) == qq.from_fraction(1, 2));
    CHECK(qq.from_fraction(3, -6) == qq.from_fraction(-1, 2));
    CHECK(qq.str(qq.from_fraction(10, -4)) == "-5/2");
    CHECK(qq.str(qq.from_fraction(8, 4)) == "2");
    CHECK_THROWS_AS(qq.from_fraction(1, 0), Error);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
      long long a = static_cast<long long>(uniform_below(rng, 41)) - 20;
      long long b = static_cast<long long>(uniform_below(rng, 20)) + 1;
      long long k = static_cast<long long>(uniform_below(rng, 15)) + 1;
      CHECK(qq.from_fraction(k * a, k * b) == qq.from_fraction(a, b));
    }
  }

  TEST_CASE("poly_eval worked examples") {
    Rationals qq;
    PolyRing<Rationals> pr{qq, 2};
    auto f = q_poly(pr, {{{2, 1}, 1}});  // t1^2 t2
    CHECK(poly_eval(qq, f, {mpq_class(2), mpq_class(3)}) == mpq_class(12));
    CHECK(poly_eval(qq, pr.zero(), {mpq_class(5), mpq_class(7)}) == mpq_class(0));
    PrimeField f2(2);
    PolyRing<PrimeField> p2{f2, 2};
    auto g = p2.add(p2.variable(0), p2.variable(1));
    CHECK(poly_eval(f2, g, {1, 1}) == 0);
    CHECK_THROWS_AS(poly_eval(qq, f, {mpq_class(1)}), DimensionMismatch);
  }

  TEST_CASE("exact division") {
    Rationals qq;
    PolyRing<Rationals> pr{qq, 3};
    auto t1 = pr.variable(0), t2 = pr.variable(1), t3 = pr.variable(2);
    auto f = q_poly(pr, {{{2, 1, 0}, 1}});  // t1^2 t2
    CHECK(poly_divide_exact(pr, f, t1) == pr.mul(t1, t2));
    CHECK(poly_divide_exact(pr, f, f) == pr.one());
    CHECK_THROWS_AS(poly_divide_exact(pr, pr.mul(t1, t2), t3), NonExactDivision);
    CHECK(poly_divide_exact(pr, pr.zero(), t1) == pr.zero());
    CHECK_THROWS_AS(poly_divide_exact(pr, f, pr.zero()), Error);
    // multi-term divisor
    auto s = pr.add(t1, t2);
    auto prod = pr.mul(s, pr.add(t2, t3));
    CHECK(poly_divide_exact(pr, prod, s) == pr.add(t2, t3));
    CHECK_THROWS_AS(poly_divide_exact(pr, pr.add(prod, pr.mul(t3, t3)), s), NonExactDivision);
  }

  TEST_CASE("polynomial text format") {
    Rationals qq;
    PolyRing<Rationals> pr{qq, 3};
    CHECK(render_poly(pr, pr.zero()) == "0\n");
    auto f = q_poly(pr, {{{0, 0, 2}, 3}, {{1, 1, 0}, -1}, {{2, 0, 0}, 1}});
    // descending lex by exponent vector
    CHECK(render_poly(pr, f) == "1 2 0 0\n-1 1 1 0\n3 0 0 2\n");
  }

  TEST_CASE("homogeneity is enforced") {
    PrimeField f5(5);
    PolyRing<PrimeField> pr{f5, 2};
    CHECK_THROWS_AS(pr.add(pr.variable(0), pr.one()), GradeError);
    CHECK(pr.variable(0).degree() == 1);
    CHECK(!pr.zero().degree().has_value());
    CHECK(pr.one().degree() == 0);
  }
}
