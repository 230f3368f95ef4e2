#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "altsing/errors.hpp"
#include "altsing/rings.hpp"

namespace altsing {

// Dense matrix over a field context F, row-major.
template <FieldContext F>
struct Matrix {
  using Elem = typename F::Elem;

  F field;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(F f, int r, int c) : field(f), rows(r), cols(c), a(static_cast<size_t>(r) * c, f.zero()) {}

  static Matrix identity(F f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  Elem& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Elem& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  std::vector<Elem> row(int i) const {
    return std::vector<Elem>(a.begin() + static_cast<size_t>(i) * cols,
                             a.begin() + static_cast<size_t>(i + 1) * cols);
  }
  std::vector<Elem> col(int j) const {
    std::vector<Elem> v;
    v.reserve(rows);
    for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
    return v;
  }

  Matrix transpose() const {
    Matrix t(field, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (!(field == o.field) || cols != o.rows) throw DimensionMismatch("matrix product shapes");
    Matrix r(field, rows, o.cols);
    for (int i = 0; i < rows; ++i) {
      for (int k = 0; k < cols; ++k) {
        if (field.is_zero(at(i, k))) continue;
        for (int j = 0; j < o.cols; ++j) {
          r.at(i, j) = field.add(r.at(i, j), field.mul(at(i, k), o.at(k, j)));
        }
      }
    }
    return r;
  }

  std::vector<Elem> operator*(const std::vector<Elem>& v) const {
    if (static_cast<int>(v.size()) != cols) throw DimensionMismatch("matrix-vector shapes");
    std::vector<Elem> r(rows, field.zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] = field.add(r[i], field.mul(at(i, j), v[j]));
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field == y.field && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

// Reduced row echelon form with deterministic pivoting: for each column left
// to right, the topmost unused row with a nonzero entry becomes the pivot.
template <FieldContext F>
std::pair<Matrix<F>, int> rref_rank(Matrix<F> m) {
  const F& f = m.field;
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i) {
      if (!f.is_zero(m.at(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    auto s = f.inv(m.at(rank, col));
    for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), s);
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank || f.is_zero(m.at(i, col))) continue;
      auto c = m.at(i, col);
      for (int j = col; j < m.cols; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(rank, j)));
      }
    }
    ++rank;
  }
  return {std::move(m), rank};
}

template <FieldContext F>
int rank(const Matrix<F>& m) {
  return rref_rank(m).second;
}

template <FieldContext F>
typename F::Elem determinant(Matrix<F> m) {
  if (m.rows != m.cols) throw DimensionMismatch("determinant of a non-square matrix");
  const F& f = m.field;
  auto det = f.one();
  for (int col = 0; col < m.cols; ++col) {
    int pivot = -1;
    for (int i = col; i < m.rows; ++i) {
      if (!f.is_zero(m.at(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return f.zero();
    if (pivot != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(col, col));
    auto s = f.inv(m.at(col, col));
    for (int i = col + 1; i < m.rows; ++i) {
      if (f.is_zero(m.at(i, col))) continue;
      auto c = f.mul(m.at(i, col), s);
      for (int j = col; j < m.cols; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(col, j)));
      }
    }
  }
  return det;
}

template <FieldContext F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows != m.cols) throw DimensionMismatch("inverse of a non-square matrix");
  const F& f = m.field;
  Matrix<F> aug(f, m.rows, 2 * m.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = f.one();
  }
  auto [r, rk] = rref_rank(std::move(aug));
  if (rk != m.rows) throw SingularMatrix("matrix is not invertible");
  Matrix<F> inv(f, m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) inv.at(i, j) = r.at(i, m.cols + j);
  return inv;
}

// A subspace of K^n held by its canonical representative: the RREF basis
// matrix with no zero rows. Equality of subspaces is equality of these.
template <FieldContext F>
struct Subspace {
  F field;
  int ambient = 0;
  Matrix<F> basis;  // dim x ambient, in RREF

  Subspace() = default;
  Subspace(F f, int n) : field(f), ambient(n), basis(f, 0, n) {}

  // Canonicalizes an arbitrary spanning set.
  static Subspace span(Matrix<F> rows) {
    auto [r, rk] = rref_rank(std::move(rows));
    Subspace s(r.field, r.cols);
    s.basis = Matrix<F>(r.field, rk, r.cols);
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < r.cols; ++j) s.basis.at(i, j) = r.at(i, j);
    return s;
  }
  static Subspace span_of(F f, int n, const std::vector<std::vector<typename F::Elem>>& vecs) {
    Matrix<F> m(f, static_cast<int>(vecs.size()), n);
    for (size_t i = 0; i < vecs.size(); ++i) {
      if (static_cast<int>(vecs[i].size()) != n) throw DimensionMismatch("vector length");
      for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = vecs[i][j];
    }
    return span(std::move(m));
  }
  static Subspace full(F f, int n) { return span(Matrix<F>::identity(f, n)); }

  int dim() const { return basis.rows; }

  bool contains(const std::vector<typename F::Elem>& v) const {
    if (static_cast<int>(v.size()) != ambient) throw DimensionMismatch("vector length");
    // reduce v against the RREF basis
    auto w = v;
    for (int i = 0; i < basis.rows; ++i) {
      int lead = -1;
      for (int j = 0; j < ambient; ++j) {
        if (!field.is_zero(basis.at(i, j))) {
          lead = j;
          break;
        }
      }
      if (lead < 0 || field.is_zero(w[lead])) continue;
      auto c = w[lead];
      for (int j = 0; j < ambient; ++j) w[j] = field.sub(w[j], field.mul(c, basis.at(i, j)));
    }
    for (const auto& x : w) {
      if (!field.is_zero(x)) return false;
    }
    return true;
  }

  Subspace sum(const Subspace& o) const {
    if (ambient != o.ambient || !(field == o.field)) throw DimensionMismatch("subspace sum");
    Matrix<F> m(field, dim() + o.dim(), ambient);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < ambient; ++j) m.at(i, j) = basis.at(i, j);
    for (int i = 0; i < o.dim(); ++i)
      for (int j = 0; j < ambient; ++j) m.at(dim() + i, j) = o.basis.at(i, j);
    return span(std::move(m));
  }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient == y.ambient && x.basis == y.basis;
  }
  // Total order for sorted canonical listings: by dimension, then row-major
  // entry comparison.
  friend bool operator<(const Subspace& x, const Subspace& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    return x.basis.a < y.basis.a;
  }
};

// Kernel of M as a canonical subspace of K^cols.
template <FieldContext F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& f = m.field;
  auto [r, rk] = rref_rank(m);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(m.cols, false);
  for (int i = 0; i < rk; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (!f.is_zero(r.at(i, j))) {
        pivot_col.push_back(j);
        is_pivot[j] = true;
        break;
      }
    }
  }
  Matrix<F> basis(f, m.cols - rk, m.cols);
  int row = 0;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    basis.at(row, j) = f.one();
    for (int i = 0; i < rk; ++i) basis.at(row, pivot_col[i]) = f.neg(r.at(i, j));
    ++row;
  }
  return Subspace<F>::span(std::move(basis));
}

// First solution of M x = b (free variables set to zero), if consistent.
template <FieldContext F>
std::optional<std::vector<typename F::Elem>> solve(const Matrix<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
  if (static_cast<int>(b.size()) != m.rows) throw DimensionMismatch("rhs length");
  const F& f = m.field;
  Matrix<F> aug(f, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto [r, rk] = rref_rank(std::move(aug));
  std::vector<typename F::Elem> x(m.cols, f.zero());
  for (int i = 0; i < rk; ++i) {
    int lead = -1;
    for (int j = 0; j <= m.cols; ++j) {
      if (!f.is_zero(r.at(i, j))) {
        lead = j;
        break;
      }
    }
    if (lead == m.cols) return std::nullopt;  // inconsistent row 0 ... 0 | 1
    if (lead >= 0) x[lead] = r.at(i, m.cols);
  }
  return x;
}

// Image of a subspace under an invertible map.
template <FieldContext F>
Subspace<F> apply(const Matrix<F>& g, const Subspace<F>& s) {
  if (g.cols != s.ambient) throw DimensionMismatch("map/subspace shapes");
  Matrix<F> m(s.field, s.dim(), g.rows);
  for (int i = 0; i < s.dim(); ++i) {
    auto img = g * s.basis.row(i);
    for (int j = 0; j < g.rows; ++j) m.at(i, j) = img[j];
  }
  return Subspace<F>::span(std::move(m));
}

template <FieldContext F>
Matrix<F> random_matrix(F f, int rows, int cols, std::mt19937_64& rng) {
  Matrix<F> m(f, rows, cols);
  for (auto& x : m.a) x = f.random(rng);
  return m;
}

// Uniform-ish invertible matrix by rejection. The singular fraction is
// largest over GF(2), where Prod_i (1 - 2^-i) ~ 0.289, so the expected
// number of draws is at most ~3.5; it approaches 1 for larger fields.
template <FieldContext F>
Matrix<F> random_invertible(F f, int n, std::uint64_t seed) {
  if (n < 1) throw DimensionMismatch("n must be positive");
  std::mt19937_64 rng(seed);
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

// Visits every d-dimensional subspace of GF(p)^n exactly once, as canonical
// RREF matrices: all pivot-column choices, all free-entry assignments.
inline void enumerate_subspaces(const PrimeField& f, int n, int d,
                                const std::function<void(const Subspace<PrimeField>&)>& visit) {
  if (d < 0 || d > n) throw DimensionMismatch("subspace dimension out of range");
  if (d == 0) {
    visit(Subspace<PrimeField>(f, n));
    return;
  }
  std::vector<int> pivots(d);
  for (int i = 0; i < d; ++i) pivots[i] = i;
  for (;;) {
    // free positions: (i, j) with j > pivots[i], j not a pivot column
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int i = 0; i < d; ++i) {
      for (int j = pivots[i] + 1; j < n; ++j) {
        if (!is_pivot[j]) free_pos.emplace_back(i, j);
      }
    }
    Subspace<PrimeField> s(f, n);
    s.basis = Matrix<PrimeField>(f, d, n);
    for (int i = 0; i < d; ++i) s.basis.at(i, pivots[i]) = f.one();
    std::vector<std::uint64_t> digits(free_pos.size(), 0);
    for (;;) {
      for (size_t k = 0; k < free_pos.size(); ++k) {
        s.basis.at(free_pos[k].first, free_pos[k].second) = digits[k];
      }
      visit(s);
      // odometer over free entries
      size_t k = 0;
      while (k < digits.size() && ++digits[k] == f.p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    // next pivot combination in lex order
    int i = d - 1;
    while (i >= 0 && pivots[i] == n - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

// Number of d-dimensional subspaces of GF(q)^n (Gaussian binomial), used for
// search-budget checks. Saturates at UINT64_MAX on overflow.
inline std::uint64_t count_subspaces(std::uint64_t q, int n, int d) {
  if (d < 0 || d > n) return 0;
  // [n choose d]_q = prod_{i=0..d-1} (q^{n-i} - 1) / (q^{d-i} - 1), computed
  // exactly with GMP to dodge intermediate overflow.
  mpz_class num = 1, den = 1;
  mpz_class qz(static_cast<unsigned long>(q));
  for (int i = 0; i < d; ++i) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(n - i));
    num *= t - 1;
    mpz_pow_ui(t.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(d - i));
    den *= t - 1;
  }
  mpz_class res = num / den;
  if (!res.fits_ulong_p()) return UINT64_MAX;
  return res.get_ui();
}

}  // namespace altsing
