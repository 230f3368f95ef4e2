#include "altsing/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "altsing/errors.hpp"

namespace altsing {

int AnyVector::ambient() const {
  return std::visit([](const auto& w) { return w.ambient(); }, v);
}
int AnyVector::grade() const {
  return std::visit([](const auto& w) { return w.grade(); }, v);
}

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based start column
};

std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

long long parse_int(const Token& tok, int line_no) {
  long long value = 0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  if (!tok.text.empty() && tok.text[0] == '+') ++begin;  // from_chars rejects '+'
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected an integer, got '" + tok.text + "'", line_no, tok.col);
  }
  return value;
}

bool valid_rational(const std::string& s) {
  size_t i = 0;
  auto digits = [&](size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t k = from; k < to; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
  };
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  auto slash = s.find('/');
  if (slash == std::string::npos) return digits(i, s.size());
  return digits(i, slash) && digits(slash + 1, s.size());
}

}  // namespace

template <>
PrimeField::Elem parse_scalar<PrimeField>(const PrimeField& f, const std::string& token) {
  long long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && token[0] == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw Error("bad GF(p) coefficient '" + token + "'");
  return f.from_int(value);
}

template <>
Rationals::Elem parse_scalar<Rationals>(const Rationals&, const std::string& token) {
  std::string t = token;
  if (!t.empty() && t[0] == '+') t.erase(t.begin());
  if (!valid_rational(t)) throw Error("bad rational coefficient '" + token + "'");
  mpq_class q(t);
  if (q.get_den() == 0) throw Error("zero denominator in '" + token + "'");
  q.canonicalize();
  return q;
}

namespace {

template <FieldContext F>
FormVector<F> parse_terms(F field, int n, int e, const std::vector<std::string>& lines,
                          const std::vector<int>& line_nos) {
  FormVector<F> w(field, n, e);
  for (size_t li = 0; li < lines.size(); ++li) {
    const int line_no = line_nos[li];
    auto toks = split_tokens(lines[li]);
    if (toks.empty()) continue;
    if (static_cast<int>(toks.size()) != 1 + e) {
      throw ParseError("term needs a coefficient and " + std::to_string(e) + " indices", line_no,
                       toks[0].col);
    }
    typename F::Elem coeff;
    try {
      coeff = parse_scalar(field, toks[0].text);
    } catch (const Error& err) {
      throw ParseError(err.what(), line_no, toks[0].col);
    }
    Mask mask = 0;
    long long prev = 0;
    for (int k = 0; k < e; ++k) {
      long long idx = parse_int(toks[1 + k], line_no);
      if (idx < 1 || idx > n) {
        throw ParseError("index " + std::to_string(idx) + " out of range 1.." + std::to_string(n),
                         line_no, toks[1 + k].col);
      }
      if (idx <= prev) {
        throw ParseError("indices must be strictly increasing", line_no, toks[1 + k].col);
      }
      prev = idx;
      mask |= Mask(1) << (idx - 1);
    }
    w.add_term(mask, coeff);
  }
  return w;
}

}  // namespace

AnyVector parse_alt(const std::string& text) {
  std::vector<std::string> raw;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) raw.push_back(line);
  }
  // header lines: field, dim, degree; blank lines are ignored throughout
  struct Header {
    std::vector<Token> toks;
    int line_no;
  };
  std::vector<Header> header;
  std::vector<std::string> term_lines;
  std::vector<int> term_line_nos;
  for (size_t i = 0; i < raw.size(); ++i) {
    auto toks = split_tokens(raw[i]);
    if (toks.empty()) continue;
    if (header.size() < 3) {
      header.push_back({std::move(toks), static_cast<int>(i) + 1});
    } else {
      term_lines.push_back(raw[i]);
      term_line_nos.push_back(static_cast<int>(i) + 1);
    }
  }
  if (header.size() < 3) throw ParseError("expected `field`, `dim`, `degree` header lines", 1, 1);

  const auto& fl = header[0];
  if (fl.toks[0].text != "field") throw ParseError("expected `field`", fl.line_no, fl.toks[0].col);
  FieldSpec spec;
  if (fl.toks.size() == 2 && fl.toks[1].text == "q") {
    spec = FieldSpec::rationals();
  } else if (fl.toks.size() == 3 && fl.toks[1].text == "gf") {
    long long p = parse_int(fl.toks[2], fl.line_no);
    if (p < 2 || p >= (1ll << 31) || !is_prime(static_cast<std::uint64_t>(p))) {
      throw ParseError("modulus " + fl.toks[2].text + " is not prime", fl.line_no, fl.toks[2].col);
    }
    spec = FieldSpec::gf(static_cast<std::uint32_t>(p));
  } else {
    throw ParseError("expected `field gf <p>` or `field q`", fl.line_no, fl.toks[0].col);
  }

  const auto& dl = header[1];
  if (dl.toks[0].text != "dim" || dl.toks.size() != 2) {
    throw ParseError("expected `dim <n>`", dl.line_no, dl.toks[0].col);
  }
  long long n = parse_int(dl.toks[1], dl.line_no);
  if (n < 1 || n > kMaxAmbient) {
    throw ParseError("dimension must be in 1.." + std::to_string(kMaxAmbient), dl.line_no,
                     dl.toks[1].col);
  }

  const auto& gl = header[2];
  if (gl.toks[0].text != "degree" || gl.toks.size() != 2) {
    throw ParseError("expected `degree <e>`", gl.line_no, gl.toks[0].col);
  }
  long long e = parse_int(gl.toks[1], gl.line_no);
  if (e < 0 || e > n) {
    throw ParseError("degree must be in 0.." + std::to_string(n), gl.line_no, gl.toks[1].col);
  }

  if (spec.kind == FieldSpec::Kind::PrimeField) {
    return AnyVector{spec, parse_terms(PrimeField(spec.p), static_cast<int>(n),
                                       static_cast<int>(e), term_lines, term_line_nos)};
  }
  return AnyVector{spec, parse_terms(Rationals{}, static_cast<int>(n), static_cast<int>(e),
                                     term_lines, term_line_nos)};
}

namespace {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> idx;
  while (m) {
    idx.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return idx;
}

template <FieldContext F>
std::string serialize_terms(const FormVector<F>& w) {
  const F& f = w.ring();
  std::vector<std::pair<std::vector<int>, std::string>> rows;
  for (const auto& [m, c] : w.terms()) rows.emplace_back(mask_indices(m), f.str(c));
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [idx, coeff] : rows) {
    out += coeff;
    for (int i : idx) out += ' ' + std::to_string(i);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string serialize_alt(const AnyVector& vec) {
  std::string out;
  if (vec.spec.kind == FieldSpec::Kind::PrimeField) {
    out = "field gf " + std::to_string(vec.spec.p) + "\n";
  } else {
    out = "field q\n";
  }
  out += "dim " + std::to_string(vec.ambient()) + "\n";
  out += "degree " + std::to_string(vec.grade()) + "\n";
  out += std::visit([](const auto& w) { return serialize_terms(w); }, vec.v);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace altsing
