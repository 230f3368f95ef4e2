#pragma once

#include <string>
#include <variant>
#include <vector>

#include "altsing/exterior.hpp"
#include "altsing/linalg.hpp"
#include "altsing/rings.hpp"

namespace altsing {

// A graded vector parsed from or destined for the `.alt` text format, over
// either supported field. The format:
//
//   field gf <p>       (or: field q)
//   dim <n>
//   degree <e>
//   <coeff> <i1> ... <ie>     one term per line, 1-based strictly
//   ...                       increasing indices
//
// Parsing sums repeated index sets and drops zero coefficients, so every
// document maps to a unique vector; serialization emits the canonical
// spelling (terms ascending by index tuple, canonical coefficients), making
// parse/serialize a bijection on canonical documents.
struct AnyVector {
  FieldSpec spec;
  std::variant<FormVector<PrimeField>, FormVector<Rationals>> v;

  int ambient() const;
  int grade() const;
  friend bool operator==(const AnyVector&, const AnyVector&) = default;
};

AnyVector parse_alt(const std::string& text);
std::string serialize_alt(const AnyVector& vec);

// One field element from text: an integer over GF(p) (reduced mod p), an
// integer or `a/b` over Q.
template <FieldContext F>
typename F::Elem parse_scalar(const F& f, const std::string& token);

std::string read_file(const std::string& path);

template <FieldContext F>
std::string render_row(const F& f, const std::vector<typename F::Elem>& row) {
  std::string out;
  for (size_t j = 0; j < row.size(); ++j) {
    if (j) out += ' ';
    out += f.str(row[j]);
  }
  return out;
}

template <FieldContext F>
std::string render_matrix(const Matrix<F>& m) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    out += render_row(m.field, m.row(i));
    out += '\n';
  }
  return out;
}

// Canonical subspace output: `dim <d>` then the RREF rows.
template <FieldContext F>
std::string render_subspace(const Subspace<F>& s) {
  return "dim " + std::to_string(s.dim()) + "\n" + render_matrix(s.basis);
}

}  // namespace altsing
