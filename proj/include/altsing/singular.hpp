#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altsing/errors.hpp"
#include "altsing/exterior.hpp"
#include "altsing/forms.hpp"
#include "altsing/linalg.hpp"
#include "altsing/rings.hpp"

namespace altsing {

// Largest number of subspaces an exhaustive enumeration is willing to visit;
// covers lines in dimension <= 7 over GF(q), q <= 3, with slack.
inline constexpr std::uint64_t kDefaultSubspaceBudget = 4'000'000;

// Symbolic computations blow up combinatorially; beyond this ambient
// dimension f_poly refuses to run.
inline constexpr int kMaxSymbolicAmbient = 11;

// A certified singular line: u, u' independent with <u ^ u', omega> = 0.
template <FieldContext F>
struct SingularLineCertificate {
  std::vector<typename F::Elem> u;
  std::vector<typename F::Elem> uprime;

  Subspace<F> line(F f) const {
    return Subspace<F>::span_of(f, static_cast<int>(u.size()), {u, uprime});
  }
};

template <FieldContext F>
struct LineSearchOptions {
  // Starting point for the even-dimensional constructive path (defaults to
  // e_1), or the required point when supplied.
  std::optional<std::vector<typename F::Elem>> through;
  // Over Q the scan is bounded: coordinates are drawn from
  // {0, 1, -1, ..., rational_bound, -rational_bound} in that order.
  int rational_bound = 3;
};

namespace detail {
template <FieldContext F>
void require_trilinear(const AltForm<F>& form) {
  if (form.e() != 3) throw GradeError("operation is defined for trilinear forms");
}

template <FieldContext F>
bool is_zero_vec(const F& f, const std::vector<typename F::Elem>& u) {
  for (const auto& c : u) {
    if (!f.is_zero(c)) return false;
  }
  return true;
}
}  // namespace detail

// omega_u := <u, omega>, the alternating bilinear form obtained by plugging
// u into the first slot. u always lies in its radical.
template <FieldContext F>
FormVector<F> omega_u(const AltForm<F>& form, const std::vector<typename F::Elem>& u) {
  detail::require_trilinear(form);
  return pair(Multivector<F>::from_coords(form.field(), u), form.omega);
}

// Gram matrix of a grade-2 form: G[a][b] = value on (e_{a+1}, e_{b+1}).
template <FieldContext F>
Matrix<F> gram_matrix(const FormVector<F>& w) {
  if (w.grade() != 2) throw GradeError("gram matrix needs grade 2");
  const F& f = w.ring();
  Matrix<F> g(f, w.ambient(), w.ambient());
  for (const auto& [m, c] : w.terms()) {
    int a = std::countr_zero(m);
    int b = std::countr_zero(m & (m - 1));
    if (a > b) std::swap(a, b);
    g.at(a, b) = c;
    g.at(b, a) = f.neg(c);
  }
  return g;
}

// The radical of omega_u: every w in it that is independent of u spans a
// singular line together with u, and all singular lines through u arise this
// way. Contains u; has dimension >= 2 whenever n is even.
template <FieldContext F>
Subspace<F> singular_directions(const AltForm<F>& form, const std::vector<typename F::Elem>& u) {
  detail::require_trilinear(form);
  if (detail::is_zero_vec(form.field(), u)) throw DimensionMismatch("u must be nonzero");
  return kernel(gram_matrix(omega_u(form, u)));
}

namespace detail {
// Proportionality rho = c * iota, exact; throws if rho is not a multiple.
template <FieldContext F>
typename F::Elem proportionality_factor(const F& f, const FormVector<F>& rho,
                                        const FormVector<F>& iota) {
  auto c = f.zero();
  if (!rho.is_zero()) {
    if (iota.is_zero()) throw InternalProportionalityViolation("iota vanished but rho did not");
    const auto& [m, lead] = *iota.terms().begin();
    c = f.div(rho.coeff(m), lead);
  }
  if (!(rho == iota.scaled(c))) {
    throw InternalProportionalityViolation("divided power is not proportional to iota(u)");
  }
  return c;
}
}  // namespace detail

// f_omega(u): with k = (n-1)/2, the factor c in (omega_u)^(k) = c * iota(u).
// Zero exactly on the union of the singular lines.
template <FieldContext F>
typename F::Elem f_eval(const AltForm<F>& form, const std::vector<typename F::Elem>& u) {
  detail::require_trilinear(form);
  const int n = form.n();
  if (n % 2 == 0 || n < 5) throw DimensionMismatch("f_omega needs odd ambient dimension >= 5");
  if (static_cast<int>(u.size()) != n) throw DimensionMismatch("point has wrong length");
  const F& f = form.field();
  if (detail::is_zero_vec(f, u)) return f.zero();
  auto uv = Multivector<F>::from_coords(f, u);
  auto rho = divided_power(pair(uv, form.omega), (n - 1) / 2);
  return detail::proportionality_factor(f, rho, vector_contract_volume(uv));
}

// The polynomial f_omega itself, by running the same computation with a
// generic point t = sum t_i e_i over K[t_1..t_n]: the coordinates of
// (omega_t)^(k) are f(t) * iota(t)_i, and f is recovered by one exact
// division. Returns the zero polynomial when f_omega is identically zero.
template <FieldContext F>
HomogPoly<F> f_poly(const AltForm<F>& form) {
  detail::require_trilinear(form);
  const int n = form.n();
  if (n % 2 == 0 || n < 5) throw DimensionMismatch("f_omega needs odd ambient dimension >= 5");
  if (n > kMaxSymbolicAmbient) {
    throw BudgetExceeded("symbolic computation is limited to ambient dimension " +
                         std::to_string(kMaxSymbolicAmbient));
  }
  const F& f = form.field();
  PolyRing<F> pr{f, n};

  FormVector<PolyRing<F>> lifted(pr, n, 3);
  for (const auto& [m, c] : form.omega.terms()) lifted.add_term(m, pr.constant(c));
  Multivector<PolyRing<F>> t(pr, n, 1);
  for (int i = 0; i < n; ++i) t.add_term(Mask(1) << i, pr.variable(i));

  auto rho = divided_power(pair(t, lifted), (n - 1) / 2);
  auto iota = vector_contract_volume(t);

  HomogPoly<F> result = pr.zero();
  bool found = false;
  for (const auto& [m, w] : rho.terms()) {
    result = poly_divide_exact(pr, w, iota.coeff(m));
    found = true;
    break;
  }
  // cross-check the division against every coordinate, including zero ones
  for (int i = 0; i < n; ++i) {
    Mask m = full_mask(n) & ~(Mask(1) << i);
    if (!(pr.mul(result, iota.coeff(m)) == rho.coeff(m))) {
      throw InternalProportionalityViolation("f * iota(t) does not match (omega_t)^(k)");
    }
  }
  if (found && !result.is_zero() && result.degree() != (n - 1) / 2 - 1) {
    throw InternalProportionalityViolation("f_omega has the wrong degree");
  }
  return result;
}

namespace detail {
// Completes u to a certificate using any independent direction in the
// radical of omega_u; nullopt when the radical is just <u>.
template <FieldContext F>
std::optional<SingularLineCertificate<F>> certificate_through(
    const AltForm<F>& form, const std::vector<typename F::Elem>& u) {
  auto dirs = singular_directions(form, u);
  if (dirs.dim() < 2) return std::nullopt;
  const F& f = form.field();
  for (int i = 0; i < dirs.dim(); ++i) {
    auto w = dirs.basis.row(i);
    if (Subspace<F>::span_of(f, form.n(), {u, w}).dim() == 2) {
      SingularLineCertificate<F> cert{u, w};
      auto check = wedge(Multivector<F>::from_coords(f, u), Multivector<F>::from_coords(f, w));
      if (!pair(check, form.omega).is_zero()) {
        throw InternalProportionalityViolation("radical direction is not singular");
      }
      return cert;
    }
  }
  return std::nullopt;
}
}  // namespace detail

// A singular line of a trilinear form. Even n: constructive through any
// point (the rank of omega_u is at most n-2). Odd n over a finite field:
// deterministic lexicographic scan over all points, guaranteed to hit. Odd n
// over Q: bounded scan that may fail with NoSingularLineFound.
template <FieldContext F>
SingularLineCertificate<F> find_singular_line(const AltForm<F>& form,
                                              const LineSearchOptions<F>& opts = {}) {
  detail::require_trilinear(form);
  const F& f = form.field();
  const int n = form.n();
  if (n < 4) throw DimensionTooSmall("singular lines need ambient dimension >= 4");

  if (opts.through) {
    if (static_cast<int>(opts.through->size()) != n) throw DimensionMismatch("point length");
    if (detail::is_zero_vec(f, *opts.through)) throw DimensionMismatch("point must be nonzero");
    if (auto cert = detail::certificate_through(form, *opts.through)) return *cert;
    throw NoSingularLineFound(0);
  }

  if (n % 2 == 0) {
    std::vector<typename F::Elem> u(n, f.zero());
    u[0] = f.one();
    auto cert = detail::certificate_through(form, u);
    if (!cert) throw InternalProportionalityViolation("even-dimensional radical was too small");
    return *cert;
  }

  // odd n: scan candidate points in lexicographic order (u_1 most
  // significant)
  std::vector<typename F::Elem> candidates;
  if (f.spec().kind == FieldSpec::Kind::PrimeField) {
    for (std::uint64_t v = 0; v < f.spec().characteristic(); ++v) candidates.push_back(f.from_int(v));
  } else {
    candidates.push_back(f.zero());
    for (int v = 1; v <= opts.rational_bound; ++v) {
      candidates.push_back(f.from_int(v));
      candidates.push_back(f.from_int(-v));
    }
  }
  std::vector<size_t> digit(n, 0);
  for (;;) {
    // next tuple: increment the least significant digit (u_n)
    int i = n - 1;
    while (i >= 0 && digit[i] + 1 == candidates.size()) digit[i--] = 0;
    if (i < 0) break;
    ++digit[i];
    std::vector<typename F::Elem> u(n);
    for (int j = 0; j < n; ++j) u[j] = candidates[digit[j]];
    if (auto cert = detail::certificate_through(form, u)) return *cert;
  }
  if (f.spec().kind == FieldSpec::Kind::PrimeField) {
    throw InternalProportionalityViolation("exhaustive scan over a finite field found no line");
  }
  throw NoSingularLineFound(opts.rational_bound);
}

// A singular (e-1)-dimensional subspace of an e-form on n > e dimensions:
// contract with the coordinate subspace spanned by the last e-3 basis
// vectors, find a singular line of the induced trilinear form on the
// quotient, and lift.
template <FieldContext F>
Subspace<F> find_singular_space(const AltForm<F>& form, const LineSearchOptions<F>& opts = {}) {
  const F& f = form.field();
  const int n = form.n();
  const int e = form.e();
  if (e < 3) throw GradeError("find_singular_space needs degree >= 3");
  if (n <= e) {
    throw DimensionTooSmall("an e-form on e-dimensional space has no singular (e-1)-spaces");
  }
  if (e == 3) return find_singular_line(form, opts).line(f);

  const int m = n - (e - 3);
  Mask u0 = full_mask(n) & ~full_mask(m);  // indices m+1 .. n
  auto lambda = Multivector<F>::basis(f, n, u0);
  auto contracted = pair(lambda, form.omega);
  // contracted descends to the quotient by <e_{m+1}..e_n>: no term meets u0
  for (const auto& [mask, c] : contracted.terms()) {
    if (mask & u0) {
      throw InternalProportionalityViolation("contracted form does not descend to the quotient");
    }
  }
  FormVector<F> quotient(f, m, 3);
  for (const auto& [mask, c] : contracted.terms()) quotient.add_term(mask, c);
  LineSearchOptions<F> sub_opts;
  sub_opts.rational_bound = opts.rational_bound;
  auto cert = find_singular_line(AltForm<F>(std::move(quotient)), sub_opts);

  Matrix<F> basis(f, e - 1, n);
  for (int j = 0; j < m; ++j) {
    basis.at(0, j) = cert.u[j];
    basis.at(1, j) = cert.uprime[j];
  }
  for (int i = 0; i < e - 3; ++i) basis.at(2 + i, m + i) = f.one();
  auto space = Subspace<F>::span(std::move(basis));

  auto acc = Multivector<F>::basis(f, n, 0);
  for (int i = 0; i < space.dim(); ++i) {
    acc = wedge(acc, Multivector<F>::from_coords(f, space.basis.row(i)));
  }
  if (space.dim() != e - 1 || !pair(acc, form.omega).is_zero()) {
    throw InternalProportionalityViolation("lifted space failed the singularity check");
  }
  return space;
}

// Exhaustive list of all singular lines over a finite field, canonically
// sorted. The budget bounds the number of 2-subspaces visited.
inline std::vector<Subspace<PrimeField>> enumerate_singular_lines(
    const AltForm<PrimeField>& form, std::uint64_t budget = kDefaultSubspaceBudget) {
  detail::require_trilinear(form);
  const PrimeField f = form.field();
  const int n = form.n();
  if (count_subspaces(f.p, n, 2) > budget) {
    throw BudgetExceeded("too many lines to enumerate within the budget");
  }
  std::vector<Subspace<PrimeField>> out;
  enumerate_subspaces(f, n, 2, [&](const Subspace<PrimeField>& s) {
    auto w = wedge(Multivector<PrimeField>::from_coords(f, s.basis.row(0)),
                   Multivector<PrimeField>::from_coords(f, s.basis.row(1)));
    if (pair(w, form.omega).is_zero()) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

enum class Definiteness { PositiveDefinite, NegativeDefinite, IndefiniteOrDegenerate };

// Certificate for a rational quadratic: symmetric Gaussian elimination with
// diagonal pivoting. n pivots all positive (negative) proves positive
// (negative) definiteness and hence the absence of nontrivial rational
// roots; anything else is reported as indefinite-or-degenerate.
inline Definiteness quadratic_definiteness(const HomogPoly<Rationals>& f) {
  if (f.degree() != std::optional<int>(2)) throw GradeError("definiteness needs a quadratic");
  const int n = f.nvars;
  Rationals q;
  Matrix<Rationals> s(q, n, n);
  for (const auto& [exps, c] : f.terms) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (exps[i] != 0) support.push_back(i);
    }
    if (support.size() == 1) {
      s.at(support[0], support[0]) = c;
    } else {
      auto half = q.div(c, q.from_int(2));
      s.at(support[0], support[1]) = half;
      s.at(support[1], support[0]) = half;
    }
  }
  int positive = 0, negative = 0;
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i) {
      if (!q.is_zero(s.at(i, i))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return Definiteness::IndefiniteOrDegenerate;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(s.at(pivot, j), s.at(k, j));
      for (int i = 0; i < n; ++i) std::swap(s.at(i, pivot), s.at(i, k));
    }
    auto d = s.at(k, k);
    (d > 0 ? positive : negative)++;
    // row updates alone leave the trailing block equal to the (symmetric)
    // Schur complement
    for (int i = k + 1; i < n; ++i) {
      if (q.is_zero(s.at(i, k))) continue;
      auto factor = q.div(s.at(i, k), d);
      for (int j = k; j < n; ++j) s.at(i, j) = q.sub(s.at(i, j), q.mul(factor, s.at(k, j)));
    }
  }
  if (positive == n) return Definiteness::PositiveDefinite;
  if (negative == n) return Definiteness::NegativeDefinite;
  return Definiteness::IndefiniteOrDegenerate;
}

}  // namespace altsing
