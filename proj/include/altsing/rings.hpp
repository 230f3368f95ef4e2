#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "altsing/errors.hpp"

namespace altsing {

// Deterministic Miller-Rabin, valid for all m < 2^32.
inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (m == q) return true;
    if (m % q == 0) return false;
  }
  std::uint64_t d = m - 1;
  int r = 0;
  while (d % 2 == 0) d /= 2, ++r;
  auto powmod = [m](std::uint64_t b, std::uint64_t e) {
    unsigned __int128 acc = 1, x = b % m;
    while (e) {
      if (e & 1) acc = acc * x % m;
      x = x * x % m;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {  // sufficient below 3.2e9
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Draw a uniform integer in [0, m) by rejection; bias-free and reproducible
// (mt19937_64 output is fully specified by the standard).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t limit = m * (UINT64_MAX / m);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % m;
}

// Which ground field a value lives in: GF(p) for prime p, or Q.
struct FieldSpec {
  enum class Kind { PrimeField, Rationals };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec gf(std::uint32_t p) {
    if (p < 2 || !is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{Kind::PrimeField, p};
  }
  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

  std::uint32_t characteristic() const { return kind == Kind::PrimeField ? p : 0; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// The ring interface the exterior-algebra core is generic over. Contexts are
// small value types; elements carry no back-pointer to their ring.
template <class R>
concept RingContext = requires(const R r, const typename R::Elem a, const typename R::Elem b) {
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.add(a, b) } -> std::same_as<typename R::Elem>;
  { r.sub(a, b) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.mul(a, b) } -> std::same_as<typename R::Elem>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.str(a) } -> std::same_as<std::string>;
  { a == b } -> std::convertible_to<bool>;
};

template <class R>
concept FieldContext = RingContext<R> && requires(const R r, const typename R::Elem a) {
  { r.inv(a) } -> std::same_as<typename R::Elem>;
  { r.div(a, a) } -> std::same_as<typename R::Elem>;
  { r.spec() } -> std::same_as<FieldSpec>;
};

// GF(p) for prime p < 2^31. Elements are canonical residues in [0, p) stored
// in 64 bits, so products fit without overflow.
struct PrimeField {
  using Elem = std::uint64_t;

  std::uint64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t modulus) : p(modulus) {
    if (modulus < 2 || !is_prime(modulus)) {
      throw Error("modulus " + std::to_string(modulus) + " is not prime");
    }
  }

  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::PrimeField, static_cast<std::uint32_t>(p)}; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const {
    long long m = static_cast<long long>(p);
    long long r = v % m;
    return static_cast<Elem>(r < 0 ? r + m : r);
  }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const { return a * b % p; }
  Elem inv(Elem a) const {
    if (a == 0) throw Error("inverse of zero in GF(" + std::to_string(p) + ")");
    // extended Euclid on (a, p)
    long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a);
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return static_cast<Elem>(t < 0 ? t + static_cast<long long>(p) : t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  Elem random(std::mt19937_64& rng) const { return uniform_below(rng, p); }
  std::string str(Elem a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

// Exact rationals on GMP integers; always stored in lowest terms with a
// positive denominator (mpq canonical form).
struct Rationals {
  using Elem = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
  Elem from_fraction(long long num, long long den) const {
    if (den == 0) throw Error("zero denominator");
    Elem q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
  }
  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem inv(const Elem& a) const {
    if (a == 0) throw Error("inverse of zero");
    return Elem(1 / a);
  }
  Elem div(const Elem& a, const Elem& b) const {
    if (b == 0) throw Error("division by zero");
    return Elem(a / b);
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  // Uniform over the integers {-20..20}; there is no uniform measure on Q,
  // and small integers keep randomized identities cheap.
  Elem random(std::mt19937_64& rng) const {
    return Elem(static_cast<long>(uniform_below(rng, 41)) - 20);
  }
  std::string str(const Elem& a) const { return a.get_str(); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

// Homogeneous sparse polynomial over the coefficient field K: a map from
// exponent vectors (all of the same total degree) to nonzero coefficients.
// The zero polynomial has no terms and carries no degree.
template <class K>
struct HomogPoly {
  using Coeff = typename K::Elem;
  using Exps = std::vector<std::uint32_t>;

  int nvars = 0;
  std::map<Exps, Coeff> terms;

  bool is_zero() const { return terms.empty(); }
  std::optional<int> degree() const {
    if (terms.empty()) return std::nullopt;
    int d = 0;
    for (auto e : terms.begin()->first) d += static_cast<int>(e);
    return d;
  }
  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;
};

// The polynomial ring K[t_1..t_nvars], restricted to homogeneous elements.
template <FieldContext K>
struct PolyRing {
  using Elem = HomogPoly<K>;

  K base;
  int nvars = 0;

  Elem zero() const { return Elem{nvars, {}}; }
  Elem one() const { return constant(base.one()); }
  Elem constant(typename K::Elem c) const {
    Elem f{nvars, {}};
    if (!base.is_zero(c)) f.terms.emplace(typename Elem::Exps(nvars, 0), c);
    return f;
  }
  // t_{i+1} (0-based i)
  Elem variable(int i) const {
    typename Elem::Exps e(nvars, 0);
    e.at(i) = 1;
    Elem f{nvars, {}};
    f.terms.emplace(std::move(e), base.one());
    return f;
  }
  Elem monomial(typename Elem::Exps exps, typename K::Elem c) const {
    if (static_cast<int>(exps.size()) != nvars) throw DimensionMismatch("exponent vector length");
    Elem f{nvars, {}};
    if (!base.is_zero(c)) f.terms.emplace(std::move(exps), c);
    return f;
  }

  Elem add(const Elem& a, const Elem& b) const {
    check(a), check(b);
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree()) {
      throw GradeError("sum of polynomials of different degrees is not homogeneous");
    }
    Elem r = a;
    for (const auto& [e, c] : b.terms) {
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        r.terms.emplace(e, c);
      } else {
        it->second = base.add(it->second, c);
        if (base.is_zero(it->second)) r.terms.erase(it);
      }
    }
    return r;
  }
  Elem neg(const Elem& a) const {
    check(a);
    Elem r = a;
    for (auto& [e, c] : r.terms) c = base.neg(c);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    check(a), check(b);
    Elem r{nvars, {}};
    for (const auto& [ea, ca] : a.terms) {
      for (const auto& [eb, cb] : b.terms) {
        typename Elem::Exps e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = ea[i] + eb[i];
        auto c = base.mul(ca, cb);
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
          if (!base.is_zero(c)) r.terms.emplace(std::move(e), c);
        } else {
          it->second = base.add(it->second, c);
          if (base.is_zero(it->second)) r.terms.erase(it);
        }
      }
    }
    return r;
  }
  Elem scale(const Elem& a, const typename K::Elem& c) const {
    if (base.is_zero(c)) return zero();
    Elem r = a;
    for (auto& [e, v] : r.terms) v = base.mul(v, c);
    return r;
  }
  bool is_zero(const Elem& a) const { return a.terms.empty(); }
  std::string str(const Elem& a) const { return render_terms(a); }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  void check(const Elem& a) const {
    if (a.nvars != nvars) throw RingMismatch("polynomial from a different ring");
  }
  std::string render_terms(const Elem& a) const;
};

// Exact evaluation of f at the point u.
template <FieldContext K>
typename K::Elem poly_eval(const K& base, const HomogPoly<K>& f,
                           const std::vector<typename K::Elem>& u) {
  if (static_cast<int>(u.size()) != f.nvars) throw DimensionMismatch("point has wrong length");
  auto acc = base.zero();
  for (const auto& [exps, c] : f.terms) {
    auto m = c;
    for (int i = 0; i < f.nvars; ++i) {
      for (std::uint32_t k = 0; k < exps[i]; ++k) m = base.mul(m, u[i]);
    }
    acc = base.add(acc, m);
  }
  return acc;
}

// Exact division: returns q with q*g == f, or throws NonExactDivision.
// Single-divisor multivariate division with leading terms in lex order; the
// remainder must come out zero.
template <FieldContext K>
HomogPoly<K> poly_divide_exact(const PolyRing<K>& ring, const HomogPoly<K>& f,
                               const HomogPoly<K>& g) {
  if (g.is_zero()) throw Error("division by the zero polynomial");
  if (f.is_zero()) return ring.zero();
  const auto& lg = *g.terms.rbegin();  // leading term, lex order
  HomogPoly<K> q = ring.zero();
  HomogPoly<K> r = f;
  while (!r.is_zero()) {
    const auto& lr = *r.terms.rbegin();
    typename HomogPoly<K>::Exps e(ring.nvars);
    for (int i = 0; i < ring.nvars; ++i) {
      if (lr.first[i] < lg.first[i]) throw NonExactDivision("quotient does not exist");
      e[i] = lr.first[i] - lg.first[i];
    }
    auto t = ring.monomial(std::move(e), ring.base.div(lr.second, lg.second));
    q = ring.add(q, t);
    r = ring.sub(r, ring.mul(t, g));
  }
  return q;
}

// Text rendering used by the CLI: one term per line, `<coeff> <e1> ... <en>`,
// terms in descending lex order of the exponent vector; zero renders as "0".
template <FieldContext K>
std::string render_poly(const PolyRing<K>& ring, const HomogPoly<K>& f) {
  if (f.is_zero()) return "0\n";
  std::ostringstream out;
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    out << ring.base.str(it->second);
    for (auto e : it->first) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

template <FieldContext K>
std::string PolyRing<K>::render_terms(const Elem& a) const {
  return render_poly(*this, a);
}

}  // namespace altsing
