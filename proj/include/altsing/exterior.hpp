#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "altsing/errors.hpp"
#include "altsing/linalg.hpp"
#include "altsing/rings.hpp"

namespace altsing {

// Basis d-subsets of [n] are n-bit masks; bit i (0-based) is basis index i+1.
using Mask = std::uint32_t;

inline constexpr int kMaxAmbient = 24;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool subset(Mask i, Mask j) { return (i & ~j) == 0; }
inline Mask full_mask(int n) { return (Mask(1) << n) - 1; }

// Parity of #{(a,b) in A x B : a > b}; the sign of merging e_A ^ e_B into
// sorted order is (-1)^this.
inline int merge_parity(Mask a, Mask b) {
  int par = 0;
  while (b) {
    int j = std::countr_zero(b);
    par ^= popcount(a >> (j + 1)) & 1;
    b &= b - 1;
  }
  return par;
}

// Sign of <e_I, x_J> for I a subset of J: with I = {i_1 < ... < i_d} and
// pos_J(i) the 1-based position of i inside J, the sign is
// (-1)^(sum_k pos_J(i_k) - k). Derived from the injection-sum formula in
// pair_reference and cross-checked against it exhaustively in the tests.
inline int subset_parity(Mask i, Mask j) {
  int par = 0, k = 0;
  Mask rest = i;
  while (rest) {
    int bit = std::countr_zero(rest);
    int pos = popcount(j & ((Mask(1) << bit) - 1));  // 0-based position in J
    par ^= (pos - k) & 1;
    ++k;
    rest &= rest - 1;
  }
  return par;
}

// Visits all k-subsets of [n] in increasing mask order (Gosper's hack).
template <class Fn>
void for_each_mask(int n, int k, Fn visit) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    visit(Mask(0));
    return;
  }
  Mask m = full_mask(k);
  const Mask limit = Mask(1) << n;
  while (m < limit) {
    visit(m);
    Mask c = m & (0u - m);
    Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

// A grade-homogeneous element of the d-th exterior power: a sparse map from
// d-subsets of [n] to nonzero ring elements. kForm distinguishes the
// contravariant side (elements of /\^d V*) from the covariant one (/\^d V),
// so that contraction is only defined Multivector x FormVector.
template <RingContext R, bool kForm>
class ExtVector {
 public:
  using Elem = typename R::Elem;

  ExtVector() = default;
  ExtVector(R ring, int n, int d) : ring_(std::move(ring)), n_(n), d_(d) {
    if (n < 0 || n > kMaxAmbient) throw DimensionMismatch("ambient dimension out of range");
    if (d < 0) throw GradeError("negative grade");
  }

  static ExtVector basis(R ring, int n, Mask m) {
    ExtVector v(ring, n, popcount(m));
    v.add_term(m, v.ring_.one());
    return v;
  }
  // e_{i+1} resp. x_{i+1} for 0-based i.
  static ExtVector unit(R ring, int n, int i) { return basis(std::move(ring), n, Mask(1) << i); }
  static ExtVector from_coords(R ring, const std::vector<Elem>& u) {
    ExtVector v(std::move(ring), static_cast<int>(u.size()), 1);
    for (size_t i = 0; i < u.size(); ++i) v.add_term(Mask(1) << i, u[i]);
    return v;
  }

  const R& ring() const { return ring_; }
  int ambient() const { return n_; }
  int grade() const { return d_; }
  const std::map<Mask, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Elem coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(Mask m, const Elem& c) {
    if (m >= (Mask(1) << n_)) throw DimensionMismatch("mask outside the ambient space");
    if (popcount(m) != d_) throw GradeError("mask has the wrong grade");
    if (ring_.is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  // Grade-0 vectors hold their value on the empty mask.
  Elem scalar() const {
    if (d_ != 0) throw GradeError("scalar() on a vector of positive grade");
    return coeff(0);
  }
  std::vector<Elem> coords() const {
    if (d_ != 1) throw GradeError("coords() on a vector of grade != 1");
    std::vector<Elem> u(n_, ring_.zero());
    for (const auto& [m, c] : terms_) u[std::countr_zero(m)] = c;
    return u;
  }

  ExtVector scaled(const Elem& c) const {
    ExtVector v(ring_, n_, d_);
    if (ring_.is_zero(c)) return v;
    for (const auto& [m, x] : terms_) v.add_term(m, ring_.mul(x, c));
    return v;
  }
  ExtVector operator-() const {
    ExtVector v(ring_, n_, d_);
    for (const auto& [m, x] : terms_) v.terms_.emplace(m, ring_.neg(x));
    return v;
  }
  ExtVector operator+(const ExtVector& o) const {
    check_compatible(o);
    ExtVector v = *this;
    for (const auto& [m, x] : o.terms_) v.add_term(m, x);
    return v;
  }
  ExtVector operator-(const ExtVector& o) const { return *this + (-o); }

  friend bool operator==(const ExtVector& x, const ExtVector& y) {
    return x.ring_ == y.ring_ && x.n_ == y.n_ && x.d_ == y.d_ && x.terms_ == y.terms_;
  }

 private:
  void check_compatible(const ExtVector& o) const {
    if (!(ring_ == o.ring_) || n_ != o.n_) throw RingMismatch("vectors from different spaces");
    if (d_ != o.d_) throw GradeError("vectors of different grades");
  }

  R ring_{};
  int n_ = 0;
  int d_ = 0;
  std::map<Mask, Elem> terms_;
};

template <RingContext R>
using Multivector = ExtVector<R, false>;
template <RingContext R>
using FormVector = ExtVector<R, true>;

// Grassmann product. Same variance and ambient space; grade overflow gives 0.
template <RingContext R, bool kF>
ExtVector<R, kF> wedge(const ExtVector<R, kF>& a, const ExtVector<R, kF>& b) {
  if (!(a.ring() == b.ring()) || a.ambient() != b.ambient()) {
    throw RingMismatch("wedge of vectors from different spaces");
  }
  const R& ring = a.ring();
  ExtVector<R, kF> res(ring, a.ambient(), a.grade() + b.grade());
  if (a.grade() + b.grade() > a.ambient()) return res;
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      if (i & j) continue;
      auto c = ring.mul(x, y);
      res.add_term(i | j, merge_parity(i, j) ? ring.neg(c) : c);
    }
  }
  return res;
}

// The contraction <lambda, omega> : /\^d V x /\^e V* -> /\^{e-d} V*, the
// bilinear extension of the injection-sum pairing. On basis masks it is
// supported on I subset J with coefficient subset_parity(I, J).
template <RingContext R>
FormVector<R> pair(const Multivector<R>& lambda, const FormVector<R>& omega) {
  if (!(lambda.ring() == omega.ring()) || lambda.ambient() != omega.ambient()) {
    throw RingMismatch("pairing of vectors from different spaces");
  }
  if (lambda.grade() > omega.grade()) throw GradeError("contraction needs d <= e");
  const R& ring = lambda.ring();
  FormVector<R> res(ring, omega.ambient(), omega.grade() - lambda.grade());
  for (const auto& [j, y] : omega.terms()) {
    for (const auto& [i, x] : lambda.terms()) {
      if (!subset(i, j)) continue;
      auto c = ring.mul(x, y);
      res.add_term(j & ~i, subset_parity(i, j) ? ring.neg(c) : c);
    }
  }
  return res;
}

// Literal transcription of the defining formula: the sum over all injections
// pi : [d] -> [e] of sgn(pi) * prod_i <v_i, y_pi(i)> * /\_{j not in im pi} y_j,
// where sgn(pi) is the sign of the unique extension of pi to a permutation of
// [e] that is increasing on the remaining positions. This is the oracle the
// fast path above is checked against.
template <RingContext R>
FormVector<R> pair_reference(const std::vector<Multivector<R>>& vectors,
                             const std::vector<FormVector<R>>& covectors) {
  const int d = static_cast<int>(vectors.size());
  const int e = static_cast<int>(covectors.size());
  if (d > e) throw GradeError("contraction needs d <= e");
  if (e == 0) throw DimensionMismatch("pair_reference needs at least one covector");
  const R& ring = covectors.front().ring();
  const int n = covectors.front().ambient();
  for (const auto& v : vectors) {
    if (v.grade() != 1 || v.ambient() != n || !(v.ring() == ring)) {
      throw RingMismatch("pair_reference takes grade-1 vectors over one space");
    }
  }
  for (const auto& y : covectors) {
    if (y.grade() != 1 || y.ambient() != n || !(y.ring() == ring)) {
      throw RingMismatch("pair_reference takes grade-1 covectors over one space");
    }
  }

  auto dot = [&](const Multivector<R>& v, const FormVector<R>& y) {
    auto s = ring.zero();
    for (const auto& [m, c] : v.terms()) s = ring.add(s, ring.mul(c, y.coeff(m)));
    return s;
  };

  FormVector<R> res(ring, n, e - d);
  std::vector<int> image(d, 0);
  std::vector<bool> used(e, false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == d) {
      // sign of the extension: [image(1..d), remaining positions ascending]
      std::vector<int> perm(image.begin(), image.end());
      for (int j = 0; j < e; ++j) {
        if (!used[j]) perm.push_back(j);
      }
      int par = 0;
      for (int x = 0; x < e; ++x) {
        for (int y = x + 1; y < e; ++y) par ^= perm[x] > perm[y];
      }
      auto prod = ring.one();
      for (int i = 0; i < d; ++i) prod = ring.mul(prod, dot(vectors[i], covectors[image[i]]));
      if (ring.is_zero(prod)) return;
      FormVector<R> tail = FormVector<R>::basis(ring, n, 0);
      for (int j = 0; j < e; ++j) {
        if (!used[j]) tail = wedge(tail, covectors[j]);
      }
      res = res + tail.scaled(par ? ring.neg(prod) : prod);
      return;
    }
    for (int j = 0; j < e; ++j) {
      if (used[j]) continue;
      used[j] = true;
      image[depth] = j;
      self(self, depth + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return res;
}

// k-th divided power of an even-grade vector: for each (kd)-subset I the
// coefficient is the sum over unordered partitions {I_1,...,I_k} of I into
// d-subsets of prod_j alpha_{I_j} times the sign of e_{I_1} ^ ... ^ e_{I_k}.
// Each partition is enumerated exactly once by always placing the smallest
// unused index into the next block.
template <RingContext R, bool kF>
ExtVector<R, kF> divided_power(const ExtVector<R, kF>& w, int k) {
  const int d = w.grade();
  const int n = w.ambient();
  const R& ring = w.ring();
  if (d % 2 != 0) throw GradeError("divided powers need an even grade");
  if (k < 0) throw GradeError("negative power");
  if (k == 0) return ExtVector<R, kF>::basis(ring, n, 0);
  if (k == 1) return w;
  if (d == 0) {  // grade 0: plain k-th power of the scalar
    auto c = w.coeff(0);
    auto acc = ring.one();
    for (int i = 0; i < k; ++i) acc = ring.mul(acc, c);
    auto res = ExtVector<R, kF>(ring, n, 0);
    res.add_term(0, acc);
    return res;
  }
  ExtVector<R, kF> res(ring, n, k * d);
  if (k * d > n) return res;

  // terms grouped by lowest set bit, for the canonical block choice
  std::array<std::vector<std::pair<Mask, typename R::Elem>>, kMaxAmbient> by_low{};
  for (const auto& [m, c] : w.terms()) by_low[std::countr_zero(m)].push_back({m, c});

  for_each_mask(n, k * d, [&](Mask target) {
    auto cell = ring.zero();
    bool nonzero = false;
    auto rec = [&](auto&& self, Mask rem, Mask used, const typename R::Elem& prod) -> void {
      if (rem == 0) {
        cell = ring.add(cell, prod);
        nonzero = true;
        return;
      }
      const int low = std::countr_zero(rem);
      for (const auto& [block, alpha] : by_low[low]) {
        if (!subset(block, rem)) continue;
        auto next = ring.mul(prod, alpha);
        if (merge_parity(used, block)) next = ring.neg(next);
        self(self, rem & ~block, used | block, next);
      }
    };
    rec(rec, target, 0, ring.one());
    if (nonzero) res.add_term(target, cell);
  });
  return res;
}

// Pfaffian of a grade-2 vector on an even-dimensional space: the coefficient
// of the full basis mask in the (n/2)-th divided power.
template <RingContext R, bool kF>
typename R::Elem pfaffian(const ExtVector<R, kF>& w) {
  if (w.grade() != 2) throw GradeError("pfaffian needs grade 2");
  if (w.ambient() % 2 != 0) throw DimensionMismatch("pfaffian needs even ambient dimension");
  return divided_power(w, w.ambient() / 2).coeff(full_mask(w.ambient()));
}

// iota(u) := <u, x_1 ^ ... ^ x_n>, the volume-contraction identification of
// V with /\^{n-1} V*. iota(u) spans /\^{n-1}(u^0): <u, iota(u)> = 0.
template <RingContext R>
FormVector<R> vector_contract_volume(const Multivector<R>& u) {
  if (u.grade() != 1) throw GradeError("vector_contract_volume needs grade 1");
  auto vol = FormVector<R>::basis(u.ring(), u.ambient(), full_mask(u.ambient()));
  return pair(u, vol);
}

// Functorial pushforward /\^d A on the covariant side: on decomposables,
// e_I maps to the wedge of the columns of A indexed by I. A may be
// rectangular (a map V -> W).
template <FieldContext F>
Multivector<F> map_power(const Matrix<F>& a, const Multivector<F>& v) {
  if (a.cols != v.ambient()) throw DimensionMismatch("map/vector shapes");
  const F& f = v.ring();
  Multivector<F> res(f, a.rows, v.grade());
  for (const auto& [m, c] : v.terms()) {
    auto acc = Multivector<F>::basis(f, a.rows, 0);
    Mask rest = m;
    while (rest) {
      int i = std::countr_zero(rest);
      acc = wedge(acc, Multivector<F>::from_coords(f, a.col(i)));
      rest &= rest - 1;
    }
    res = res + acc.scaled(c);
  }
  return res;
}

// Contravariant action on forms: coordinates transform by /\^d (A^{-T}), so
// that <(/\A) v, (mapped) w> = (/\ A^{-T}) <v, w> stays functorial. Requires
// an invertible A.
template <FieldContext F>
FormVector<F> map_power(const Matrix<F>& a, const FormVector<F>& w) {
  if (a.rows != a.cols || a.cols != w.ambient()) throw DimensionMismatch("map/vector shapes");
  const F& f = w.ring();
  Matrix<F> m = inverse(a).transpose();
  FormVector<F> res(f, a.rows, w.grade());
  for (const auto& [mask, c] : w.terms()) {
    auto acc = FormVector<F>::basis(f, a.rows, 0);
    Mask rest = mask;
    while (rest) {
      int i = std::countr_zero(rest);
      acc = wedge(acc, FormVector<F>::from_coords(f, m.col(i)));
      rest &= rest - 1;
    }
    res = res + acc.scaled(c);
  }
  return res;
}

}  // namespace altsing
