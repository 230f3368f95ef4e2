#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "altsing/errors.hpp"
#include "altsing/exterior.hpp"
#include "altsing/linalg.hpp"
#include "altsing/rings.hpp"

namespace altsing {

// An alternating e-form on K^n, e >= 2: a contravariant grade-e vector
// interpreted as the multilinear map omega(v_1..v_e) = <v_1 ^...^ v_e, omega>.
template <FieldContext F>
struct AltForm {
  FormVector<F> omega;

  explicit AltForm(FormVector<F> w) : omega(std::move(w)) {
    if (omega.grade() < 2) throw GradeError("an alternating form needs degree >= 2");
  }

  int n() const { return omega.ambient(); }
  int e() const { return omega.grade(); }
  const F& field() const { return omega.ring(); }

  // omega(v_1, ..., v_e) for coordinate vectors.
  typename F::Elem value(const std::vector<std::vector<typename F::Elem>>& vs) const {
    if (static_cast<int>(vs.size()) != e()) throw DimensionMismatch("wrong number of arguments");
    auto acc = Multivector<F>::basis(field(), n(), 0);
    for (const auto& v : vs) acc = wedge(acc, Multivector<F>::from_coords(field(), v));
    return pair(acc, omega).scalar();
  }

  friend bool operator==(const AltForm& x, const AltForm& y) { return x.omega == y.omega; }
};

namespace detail {
// Column indexing for the contraction matrix: all (e-1)-masks in increasing
// mask order.
inline std::vector<Mask> masks_of_size(int n, int k) {
  std::vector<Mask> out;
  for_each_mask(n, k, [&](Mask m) { out.push_back(m); });
  return out;
}
inline int mask_index(const std::vector<Mask>& sorted, Mask m) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), m) - sorted.begin());
}
}  // namespace detail

// Radical of omega: the kernel of v -> <v, omega>. The matrix of that map
// has one column per basis vector e_i (its contraction) and C(n, e-1) rows.
template <FieldContext F>
Subspace<F> radical(const AltForm<F>& form) {
  const F& f = form.field();
  const int n = form.n();
  auto rows = detail::masks_of_size(n, form.e() - 1);
  Matrix<F> m(f, static_cast<int>(rows.size()), n);
  for (int i = 0; i < n; ++i) {
    auto img = pair(Multivector<F>::unit(f, n, i), form.omega);
    for (const auto& [mask, c] : img.terms()) m.at(detail::mask_index(rows, mask), i) = c;
  }
  return kernel(m);
}

template <FieldContext F>
bool is_nondegenerate(const AltForm<F>& form) {
  return radical(form).dim() == 0;
}

// Is U f-singular for omega, i.e. does every f-dimensional subspace of U pair
// to zero? By multilinearity it suffices to contract the f-subsets of a basis
// of U; dim U < f is vacuously true, f = dim U is plain singularity.
template <FieldContext F>
bool is_singular_subspace(const AltForm<F>& form, const Subspace<F>& u, int f) {
  if (f > form.e()) throw GradeError("singularity order exceeds the form degree");
  if (f < 0) throw GradeError("negative singularity order");
  if (u.ambient != form.n()) throw DimensionMismatch("subspace/form ambient mismatch");
  if (u.dim() < f) return true;
  const F& field = form.field();
  std::vector<Multivector<F>> rows;
  for (int i = 0; i < u.dim(); ++i) {
    rows.push_back(Multivector<F>::from_coords(field, u.basis.row(i)));
  }
  bool ok = true;
  for_each_mask(u.dim(), f, [&](Mask sel) {
    if (!ok) return;
    auto acc = Multivector<F>::basis(field, form.n(), 0);
    Mask rest = sel;
    while (rest) {
      int i = std::countr_zero(rest);
      acc = wedge(acc, rows[i]);
      rest &= rest - 1;
    }
    if (!pair(acc, form.omega).is_zero()) ok = false;
  });
  return ok;
}

// The GL(V)-action (g.omega)(v_1..v_e) = omega(g^{-1} v_1, ..., g^{-1} v_e),
// realized on coordinates by the contravariant pushforward.
template <FieldContext F>
AltForm<F> gl_act(const Matrix<F>& g, const AltForm<F>& form) {
  if (g.rows != form.n() || g.cols != form.n()) throw DimensionMismatch("matrix/form shapes");
  return AltForm<F>(map_power(g, form.omega));
}

// ---- named forms ----------------------------------------------------------

namespace detail {
inline Mask triple(int a, int b, int c) {  // 1-based indices
  return (Mask(1) << (a - 1)) | (Mask(1) << (b - 1)) | (Mask(1) << (c - 1));
}
}  // namespace detail

// The 7-term trilinear form on K^7 whose index triples are the lines of a
// Fano plane ({i, i+1, i+3} mod 7); over the reals its stabilizer is compact
// G_2 and it has no singular lines.
template <FieldContext F>
AltForm<F> fano7(F f) {
  FormVector<F> w(f, 7, 3);
  for (int i = 1; i <= 7; ++i) {
    auto wrap = [](int x) { return (x - 1) % 7 + 1; };
    w.add_term(detail::triple(i, wrap(i + 1), wrap(i + 3)), f.one());
  }
  return AltForm<F>(std::move(w));
}

// x2^x3^x4 + x1^x3^x5 + x1^x2^x6 on K^6: the canonical representative of the
// unique orbit of non-degenerate trilinear forms with a 2-singular subspace
// of codimension 3.
template <FieldContext F>
AltForm<F> example_n6(F f) {
  FormVector<F> w(f, 6, 3);
  w.add_term(detail::triple(2, 3, 4), f.one());
  w.add_term(detail::triple(1, 3, 5), f.one());
  w.add_term(detail::triple(1, 2, 6), f.one());
  return AltForm<F>(std::move(w));
}

// x1^x2^x3 + x4^x5^x6 + ... with `parts` blocks, on K^{3*parts}. For three
// parts this is the 9-dimensional form with f identically zero but trivial
// radical.
template <FieldContext F>
AltForm<F> triple_sum(F f, int parts) {
  if (parts < 1 || 3 * parts > kMaxAmbient) throw DimensionMismatch("parts out of range");
  FormVector<F> w(f, 3 * parts, 3);
  for (int b = 0; b < parts; ++b) {
    w.add_term(detail::triple(3 * b + 1, 3 * b + 2, 3 * b + 3), f.one());
  }
  return AltForm<F>(std::move(w));
}

// The invariant trilinear form omega(X,Y,Z) = kappa([X,Y], Z) on sl_m, with
// the Killing form kappa(X,Y) = 2m tr(XY). Basis of sl_m: E_ij (i != j) in
// row-major order, then H_k = E_kk - E_{k+1,k+1}. Requires a characteristic
// not dividing 2m.
template <FieldContext F>
AltForm<F> killing_sl(F f, int m) {
  if (m < 2 || m * m - 1 > kMaxAmbient) throw DimensionMismatch("m out of range");
  std::uint32_t p = f.spec().characteristic();
  if (p != 0 && (2 * m) % p == 0) {
    throw Error("killing_sl(" + std::to_string(m) + ") needs characteristic not dividing " +
                std::to_string(2 * m));
  }
  const int n = m * m - 1;
  using Mat = std::vector<long long>;  // m x m integer matrix, row-major
  std::vector<Mat> basis;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Mat b(m * m, 0);
      b[i * m + j] = 1;
      basis.push_back(std::move(b));
    }
  }
  for (int k = 0; k + 1 < m; ++k) {
    Mat b(m * m, 0);
    b[k * m + k] = 1;
    b[(k + 1) * m + (k + 1)] = -1;
    basis.push_back(std::move(b));
  }
  auto mul = [m](const Mat& x, const Mat& y) {
    Mat r(m * m, 0);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) r[i * m + j] += x[i * m + k] * y[k * m + j];
    return r;
  };
  auto trace = [m](const Mat& x) {
    long long t = 0;
    for (int i = 0; i < m; ++i) t += x[i * m + i];
    return t;
  };
  // kappa([A,B], C) = 2m (tr(ABC) - tr(BAC))
  auto omega3 = [&](int a, int b, int c) {
    auto ab = mul(basis[a], basis[b]);
    auto ba = mul(basis[b], basis[a]);
    return 2 * m * (trace(mul(ab, basis[c])) - trace(mul(ba, basis[c])));
  };
  FormVector<F> w(f, n, 3);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        w.add_term(detail::triple(a + 1, b + 1, c + 1), f.from_int(omega3(a, b, c)));
      }
    }
  }
  return AltForm<F>(std::move(w));
}

// Uniform independent coefficients over a finite field (small integers over
// Q); a deterministic function of the seed.
template <FieldContext F>
AltForm<F> random_form(F f, int n, int e, std::uint64_t seed) {
  if (e < 2 || e > n) throw GradeError("need 2 <= e <= n");
  std::mt19937_64 rng(seed);
  FormVector<F> w(f, n, e);
  for_each_mask(n, e, [&](Mask m) { w.add_term(m, f.random(rng)); });
  return AltForm<F>(std::move(w));
}

}  // namespace altsing
