#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "altsing/errors.hpp"
#include "altsing/exterior.hpp"
#include "altsing/forms.hpp"
#include "altsing/linalg.hpp"
#include "altsing/rings.hpp"
#include "altsing/singular.hpp"

namespace altsing {

// The unique s >= 2 with C(s,2) < n <= C(s+1,2): the smallest possible
// codimension of a 2-singular subspace for a non-degenerate trilinear form.
inline int codim_bound(int n) {
  if (n < 3) throw DimensionTooSmall("codim_bound needs n >= 3");
  int s = 2;
  while (n > s * (s + 1) / 2) ++s;
  return s;
}

namespace detail {
// 2-subsets of [s] in lexicographic order: (1,2), (1,3), ..., (2,3), ...
inline std::vector<std::pair<int, int>> pairs_lex(int s) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= s; ++i) {
    for (int j = i + 1; j <= s; ++j) out.emplace_back(i, j);
  }
  return out;
}
}  // namespace detail

// The data behind a canonical 2-singular configuration on K^n = W + U with
// W = <e_1..e_s>, U = <e_{s+1}..e_n>: the injective map L : U -> /\^2 W*.
// Row j of L holds the coefficients of L(e_{s+1+j}) over the basis 2-forms
// of W in lexicographic order.
template <FieldContext F>
struct TwoSingularProfile {
  int n = 0;
  int s = 0;
  int r = 0;          // dim U = n - s
  Matrix<F> L;        // r x C(s,2)

  // L(u) for u in U-coordinates, as a 2-form on W (ambient s).
  FormVector<F> image(const std::vector<typename F::Elem>& u) const {
    const F& f = L.field;
    auto pairs = detail::pairs_lex(s);
    FormVector<F> w(f, s, 2);
    for (int j = 0; j < r; ++j) {
      for (size_t k = 0; k < pairs.size(); ++k) {
        auto c = f.mul(u[j], L.at(j, static_cast<int>(k)));
        w.add_term((Mask(1) << (pairs[k].first - 1)) | (Mask(1) << (pairs[k].second - 1)), c);
      }
    }
    return w;
  }

  Subspace<F> u_subspace() const {
    Matrix<F> m(L.field, r, n);
    for (int j = 0; j < r; ++j) m.at(j, s + j) = L.field.one();
    return Subspace<F>::span(std::move(m));
  }

  // Common kernel of all Gram matrices in the image of L, inside W.
  Subspace<F> joint_radical() const {
    const F& f = L.field;
    auto pairs = detail::pairs_lex(s);
    Matrix<F> stacked(f, r * s, s);
    for (int j = 0; j < r; ++j) {
      std::vector<typename F::Elem> u(r, f.zero());
      u[j] = f.one();
      auto g = gram_matrix(image(u));
      for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) stacked.at(j * s + a, b) = g.at(a, b);
      }
    }
    return kernel(stacked);
  }
};

template <FieldContext F>
bool is_2_singular(const AltForm<F>& form, const Subspace<F>& u) {
  return is_singular_subspace(form, u, 2);
}

// Deterministic form omega_L with U = <e_{s+1}..e_n> 2-singular of
// codimension exactly s = codim_bound(n). The j-th basis vector of U (from
// the top, e_n downward) is assigned the j-th basis 2-form of W in
// lexicographic order; when the chosen pairs fail to cover [s] the first one
// or two images get the parity-dependent rank corrections that force the
// joint radical to vanish. The output is non-degenerate for every n except
// n = 4, where /\^3 (K^4)* consists of decomposable forms only and no
// non-degenerate trilinear form exists at all.
template <FieldContext F>
std::pair<AltForm<F>, TwoSingularProfile<F>> canonical_form(F f, int n) {
  const int s = codim_bound(n);
  const int r = n - s;
  auto pairs = detail::pairs_lex(s);
  TwoSingularProfile<F> profile{n, s, r, Matrix<F>(f, r, static_cast<int>(pairs.size()))};
  // e_{s+1+j} is assigned pair number r-1-j, so e_n gets the lex-first pair.
  for (int j = 0; j < r; ++j) profile.L.at(j, r - 1 - j) = f.one();

  if (profile.joint_radical().dim() > 0) {
    auto pair_col = [&](int a, int b) {
      for (size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k] == std::pair<int, int>(a, b)) return static_cast<int>(k);
      }
      throw DimensionMismatch("pair out of range");
    };
    if (s % 2 == 0) {
      // make L(e_n) = x12 + x34 + ... + x_{s-1,s}, a non-degenerate 2-form
      for (int a = 3; a + 1 <= s; a += 2) {
        profile.L.at(r - 1, pair_col(a, a + 1)) = f.one();
      }
    } else {
      // two rank-(s-1) images with distinct radicals:
      // L(e_n)     += x34 + x56 + ... + x_{s-2,s-1}   (radical <e_s>)
      // L(e_{n-1}) += x45 + x67 + ... + x_{s-1,s}     (radical <e_2>)
      for (int a = 3; a + 1 <= s - 1; a += 2) {
        profile.L.at(r - 1, pair_col(a, a + 1)) = f.one();
      }
      if (r >= 2) {
        for (int a = 4; a + 1 <= s; a += 2) {
          profile.L.at(r - 2, pair_col(a, a + 1)) = f.one();
        }
      }
    }
  }

  if (rank(profile.L) != r) {
    throw InternalProportionalityViolation("constructed L is not injective");
  }
  if (n != 4 && profile.joint_radical().dim() != 0) {
    throw InternalProportionalityViolation("constructed L has a joint radical");
  }

  FormVector<F> w(f, n, 3);
  for (int j = 0; j < r; ++j) {
    std::vector<typename F::Elem> u(r, f.zero());
    u[j] = f.one();
    FormVector<F> mu(f, n, 2);
    auto img = profile.image(u);
    for (const auto& [m, c] : img.terms()) mu.add_term(m, c);
    w = w + wedge(FormVector<F>::unit(f, n, s + j), mu);
  }
  AltForm<F> form(std::move(w));

  if (!is_2_singular(form, profile.u_subspace())) {
    throw InternalProportionalityViolation("U is not 2-singular for the constructed form");
  }
  if (n != 4 && !is_nondegenerate(form)) {
    throw InternalProportionalityViolation("constructed form is degenerate");
  }
  return {std::move(form), std::move(profile)};
}

// Exhaustive list of the d-dimensional 2-singular subspaces over a finite
// field, canonically sorted.
inline std::vector<Subspace<PrimeField>> enumerate_2_singular(
    const AltForm<PrimeField>& form, int d, std::uint64_t budget = kDefaultSubspaceBudget) {
  const PrimeField f = form.field();
  if (count_subspaces(f.p, form.n(), d) > budget) {
    throw BudgetExceeded("too many subspaces to enumerate within the budget");
  }
  std::vector<Subspace<PrimeField>> out;
  enumerate_subspaces(f, form.n(), d, [&](const Subspace<PrimeField>& s) {
    if (is_2_singular(form, s)) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Moves a non-degenerate trilinear form with a 2-singular subspace of
// codimension s back to the canonical form, in the binomial dimension
// n = C(s+1,2) where that orbit is unique. Returns the witness g with
// g . omega' = omega_L, verified exactly. The three moves follow the
// uniqueness proof: transport the 2-singular subspace onto U, adjust the
// U-block by A = L^{-1} L', then kill the residual /\^3 W* component with a
// shear B solved from sum_l x_l ^ L(B e_l) = mu'.
template <FieldContext F>
Matrix<F> normalize(const AltForm<F>& form,
                    std::optional<Subspace<F>> two_singular = std::nullopt,
                    std::uint64_t budget = kDefaultSubspaceBudget) {
  if (form.e() != 3) throw GradeError("normalize is defined for trilinear forms");
  const F f = form.field();
  const int n = form.n();
  const int s = codim_bound(n);
  if (n != s * (s + 1) / 2) {
    throw NotBinomialDimension("normalize needs n = s(s+1)/2 (got n = " + std::to_string(n) + ")");
  }
  const int r = n - s;
  if (!is_nondegenerate(form)) throw Degenerate("the form has a nonzero radical");

  Subspace<F> u_prime(f, n);
  if (two_singular) {
    u_prime = *two_singular;
    if (u_prime.ambient != n || u_prime.dim() != r || !is_2_singular(form, u_prime)) {
      throw No2SingularSubspace("supplied subspace is not 2-singular of codimension s");
    }
  } else {
    if constexpr (std::is_same_v<F, PrimeField>) {
      if (count_subspaces(f.p, n, r) > budget) {
        throw BudgetExceeded("too many subspaces to search within the budget");
      }
      bool found = false;
      enumerate_subspaces(f, n, r, [&](const Subspace<PrimeField>& cand) {
        if (!found && is_2_singular(form, cand)) {
          u_prime = cand;
          found = true;
        }
      });
      if (!found) throw No2SingularSubspace("no 2-singular subspace of codimension s exists");
    } else {
      throw BudgetExceeded("subspace search needs a finite field; pass the subspace explicitly");
    }
  }

  auto [canonical, profile] = canonical_form(f, n);

  // move 1: an invertible map taking U' onto U = <e_{s+1}..e_n>
  std::vector<bool> is_pivot(n, false);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!f.is_zero(u_prime.basis.at(i, j))) {
        is_pivot[j] = true;
        break;
      }
    }
  }
  Matrix<F> t(f, n, n);
  int wcol = 0;
  for (int j = 0; j < n; ++j) {
    if (!is_pivot[j]) t.at(j, wcol++) = f.one();
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) t.at(j, s + i) = u_prime.basis.at(i, j);
  }
  Matrix<F> g1 = inverse(t);
  AltForm<F> w1 = gl_act(g1, form);

  // L' : U -> /\^2 W*, read off by contracting the U basis vectors
  auto pairs = detail::pairs_lex(s);
  auto pair_index = [&](Mask m) {
    int a = std::countr_zero(m) + 1;
    int b = std::countr_zero(m & (m - 1)) + 1;
    if (a > b) std::swap(a, b);
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k] == std::pair<int, int>(a, b)) return static_cast<int>(k);
    }
    throw InternalProportionalityViolation("contraction left the W pair space");
  };
  Matrix<F> l_prime(f, r, static_cast<int>(pairs.size()));
  for (int j = 0; j < r; ++j) {
    auto row = pair(Multivector<F>::unit(f, n, s + j), w1.omega);
    for (const auto& [m, c] : row.terms()) {
      if (m & ~full_mask(s)) {
        throw InternalProportionalityViolation("transported form is not 2-singular on U");
      }
      l_prime.at(j, pair_index(m)) = c;
    }
  }

  // move 2: A = L^{-1} L' on the U block (as maps, columns are images)
  Matrix<F> a = inverse(profile.L.transpose()) * l_prime.transpose();
  Matrix<F> g2 = Matrix<F>::identity(f, n);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) g2.at(s + i, s + j) = a.at(i, j);
  }
  AltForm<F> w2 = gl_act(g2, w1);

  // move 3: the residual component mu' in /\^3 W*, killed by a shear
  auto wmasks = detail::masks_of_size(s, 3);
  std::vector<typename F::Elem> rhs(wmasks.size(), f.zero());
  for (const auto& [m, c] : w2.omega.terms()) {
    if (!(m & ~full_mask(s))) rhs[detail::mask_index(wmasks, m)] = c;
  }
  Matrix<F> sys(f, static_cast<int>(wmasks.size()), r * s);
  for (int j = 0; j < r; ++j) {
    std::vector<typename F::Elem> u(r, f.zero());
    u[j] = f.one();
    auto mu_j = profile.image(u);  // on ambient s
    for (int l = 0; l < s; ++l) {
      auto wprod = wedge(FormVector<F>::unit(f, s, l), mu_j);
      for (const auto& [m, c] : wprod.terms()) {
        sys.at(detail::mask_index(wmasks, m), j * s + l) = c;
      }
    }
  }
  auto b = solve(sys, rhs);
  if (!b) throw InternalProportionalityViolation("shear system is inconsistent");
  Matrix<F> g3 = Matrix<F>::identity(f, n);
  for (int j = 0; j < r; ++j) {
    for (int l = 0; l < s; ++l) g3.at(s + j, l) = (*b)[j * s + l];
  }

  Matrix<F> g = g3 * (g2 * g1);
  if (!(gl_act(g, form) == canonical)) {
    throw InternalProportionalityViolation("normalization failed its final verification");
  }
  return g;
}

// The singular lines the classification predicts for the canonical form at
// n = C(s+1,2), with U identified with /\^2 W* via L: every line inside U,
// plus the lines K mu_1 + K(mu_2 + w_2) with w_2 in the radical of mu_1.
inline std::vector<Subspace<PrimeField>> predicted_singular_lines(
    const TwoSingularProfile<PrimeField>& profile,
    std::uint64_t budget = kDefaultSubspaceBudget) {
  const PrimeField f = profile.L.field;
  const int n = profile.n, s = profile.s, r = profile.r;
  if (n != s * (s + 1) / 2) {
    throw NotBinomialDimension("the classification applies at n = s(s+1)/2");
  }
  const std::uint64_t q = f.p;
  std::uint64_t points = 1;
  for (int i = 0; i < r; ++i) points *= q;
  if (points * points > budget) throw BudgetExceeded("too many candidate lines");

  std::set<Subspace<PrimeField>> lines;
  auto embed_u = [&](const std::vector<PrimeField::Elem>& u) {
    std::vector<PrimeField::Elem> v(n, 0);
    for (int j = 0; j < r; ++j) v[s + j] = u[j];
    return v;
  };

  enumerate_subspaces(f, r, 2, [&](const Subspace<PrimeField>& inner) {
    Matrix<PrimeField> m(f, 2, n);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < r; ++j) m.at(i, s + j) = inner.basis.at(i, j);
    }
    lines.insert(Subspace<PrimeField>::span(std::move(m)));
  });

  std::vector<PrimeField::Elem> u1(r, 0);
  for (std::uint64_t v1 = 1; v1 < points; ++v1) {
    std::uint64_t x = v1;
    for (int j = 0; j < r; ++j) u1[j] = x % q, x /= q;
    auto rad = kernel(gram_matrix(profile.image(u1)));
    if (rad.dim() == 0) continue;
    std::uint64_t rad_points = 1;
    for (int i = 0; i < rad.dim(); ++i) rad_points *= q;
    auto first = embed_u(u1);
    for (std::uint64_t rv = 1; rv < rad_points; ++rv) {
      std::vector<PrimeField::Elem> w2(n, 0);
      std::uint64_t y = rv;
      for (int i = 0; i < rad.dim(); ++i) {
        auto c = y % q;
        y /= q;
        for (int l = 0; l < s; ++l) w2[l] = f.add(w2[l], f.mul(c, rad.basis.at(i, l)));
      }
      std::vector<PrimeField::Elem> u2(r, 0);
      for (std::uint64_t v2 = 0; v2 < points; ++v2) {
        std::uint64_t z = v2;
        for (int j = 0; j < r; ++j) u2[j] = z % q, z /= q;
        auto second = embed_u(u2);
        for (int l = 0; l < s; ++l) second[l] = w2[l];
        lines.insert(Subspace<PrimeField>::span_of(f, n, {first, second}));
      }
    }
  }
  return {lines.begin(), lines.end()};
}

}  // namespace altsing
