#include "altsing/driver.hpp"

#include <utility>

#include "altsing/errors.hpp"
#include "altsing/forms.hpp"
#include "altsing/singular.hpp"
#include "altsing/twosingular.hpp"

namespace altsing {

namespace {

using nlohmann::json;

json field_json(const FieldSpec& spec) {
  if (spec.kind == FieldSpec::Kind::PrimeField) return {{"kind", "gf"}, {"p", spec.p}};
  return {{"kind", "q"}};
}

template <FieldContext F>
json terms_json(const FormVector<F>& w) {
  json terms = json::array();
  for (const auto& [m, c] : w.terms()) {
    json indices = json::array();
    Mask rest = m;
    while (rest) {
      indices.push_back(std::countr_zero(rest) + 1);
      rest &= rest - 1;
    }
    terms.push_back({{"coeff", w.ring().str(c)}, {"indices", indices}});
  }
  return terms;
}

CmdResult vector_result(const char* command, const AnyVector& out) {
  json data{{"schema", 1},
            {"command", command},
            {"field", field_json(out.spec)},
            {"dim", out.ambient()},
            {"degree", out.grade()},
            {"terms", std::visit([](const auto& w) { return terms_json(w); }, out.v)}};
  return {serialize_alt(out), std::move(data)};
}

template <FieldContext F>
json rows_json(const F& f, const Matrix<F>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(f.str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldContext F>
CmdResult subspace_result(const char* command, const Subspace<F>& s) {
  json data{{"schema", 1},
            {"command", command},
            {"field", field_json(s.field.spec())},
            {"result", {{"dim", s.dim()}, {"rows", rows_json(s.field, s.basis)}}}};
  return {render_subspace(s), std::move(data)};
}

template <FieldContext F>
CmdResult scalar_result(const char* command, const F& f, const typename F::Elem& value) {
  json data{{"schema", 1},
            {"command", command},
            {"field", field_json(f.spec())},
            {"result", {{"value", f.str(value)}}}};
  return {f.str(value) + "\n", std::move(data)};
}

template <FieldContext F>
AltForm<F> as_form(const FormVector<F>& w) {
  return AltForm<F>(w);
}

template <FieldContext F>
Multivector<F> as_multivector(const FormVector<F>& w) {
  Multivector<F> v(w.ring(), w.ambient(), w.grade());
  for (const auto& [m, c] : w.terms()) v.add_term(m, c);
  return v;
}

template <FieldContext F>
std::vector<typename F::Elem> parse_point(const F& f, int n,
                                          const std::vector<std::string>& point) {
  if (static_cast<int>(point.size()) != n) {
    throw DimensionMismatch("expected " + std::to_string(n) + " coordinates, got " +
                            std::to_string(point.size()));
  }
  std::vector<typename F::Elem> u;
  u.reserve(point.size());
  for (const auto& tok : point) u.push_back(parse_scalar(f, tok));
  return u;
}

void check_same_field(const AnyVector& a, const AnyVector& b) {
  if (!(a.spec == b.spec)) throw RingMismatch("operands live over different fields");
}

}  // namespace

FieldSpec parse_field_arg(const std::string& arg) {
  if (arg == "q" || arg == "Q") return FieldSpec::rationals();
  std::string body;
  if (arg.rfind("gf", 0) == 0) {
    body = arg.substr(2);
    if (!body.empty() && body[0] == ' ') body.erase(body.begin());
  }
  if (body.empty()) throw Error("expected a field: `q`, `gf<p>` or `gf <p>`");
  for (char ch : body) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error("bad modulus '" + body + "'");
    }
  }
  unsigned long p = std::stoul(body);
  if (p >= (1ull << 31)) throw Error("modulus out of range");
  return FieldSpec::gf(static_cast<std::uint32_t>(p));
}

CmdResult cmd_pair(const AnyVector& lambda, const AnyVector& omega) {
  check_same_field(lambda, omega);
  return std::visit(
      [&](const auto& w) -> CmdResult {
        using FV = std::decay_t<decltype(w)>;
        auto lam = as_multivector(std::get<FV>(lambda.v));
        return vector_result("pair", AnyVector{omega.spec, pair(lam, w)});
      },
      omega.v);
}

CmdResult cmd_wedge(const AnyVector& a, const AnyVector& b) {
  check_same_field(a, b);
  return std::visit(
      [&](const auto& wa) -> CmdResult {
        using FV = std::decay_t<decltype(wa)>;
        return vector_result("wedge", AnyVector{a.spec, wedge(wa, std::get<FV>(b.v))});
      },
      a.v);
}

CmdResult cmd_divided_power(const AnyVector& a, int power) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        return vector_result("divided-power", AnyVector{a.spec, divided_power(w, power)});
      },
      a.v);
}

CmdResult cmd_pfaffian(const AnyVector& a) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        return scalar_result("pfaffian", w.ring(), pfaffian(w));
      },
      a.v);
}

CmdResult cmd_radical(const AnyVector& a) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        return subspace_result("radical", radical(as_form(w)));
      },
      a.v);
}

CmdResult cmd_f_poly(const AnyVector& a) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        using F = std::decay_t<decltype(w.ring())>;
        auto f = f_poly(as_form(w));
        PolyRing<F> pr{w.ring(), w.ambient()};
        json terms = json::array();
        for (const auto& [exps, c] : f.terms) {
          terms.push_back({{"coeff", w.ring().str(c)}, {"exponents", exps}});
        }
        json degree = f.degree() ? json(*f.degree()) : json(nullptr);
        json data{{"schema", 1},
                  {"command", "f-poly"},
                  {"field", field_json(a.spec)},
                  {"result", {{"nvars", f.nvars}, {"degree", degree}, {"terms", terms}}}};
        return {render_poly(pr, f), std::move(data)};
      },
      a.v);
}

CmdResult cmd_f_eval(const AnyVector& a, const std::vector<std::string>& point) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        auto form = as_form(w);
        auto u = parse_point(w.ring(), form.n(), point);
        return scalar_result("f-eval", w.ring(), f_eval(form, u));
      },
      a.v);
}

CmdResult cmd_singular_line(const AnyVector& a,
                            const std::optional<std::vector<std::string>>& through, int bound) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        using F = std::decay_t<decltype(w.ring())>;
        auto form = as_form(w);
        LineSearchOptions<F> opts;
        opts.rational_bound = bound;
        if (through) opts.through = parse_point(w.ring(), form.n(), *through);
        auto cert = find_singular_line(form, opts);
        const auto& f = w.ring();
        json data{{"schema", 1},
                  {"command", "singular-line"},
                  {"field", field_json(a.spec)},
                  {"result",
                   {{"u", json::array()}, {"uprime", json::array()}}}};
        for (const auto& c : cert.u) data["result"]["u"].push_back(f.str(c));
        for (const auto& c : cert.uprime) data["result"]["uprime"].push_back(f.str(c));
        return {render_row(f, cert.u) + "\n" + render_row(f, cert.uprime) + "\n", std::move(data)};
      },
      a.v);
}

CmdResult cmd_singular_space(const AnyVector& a, int bound) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        using F = std::decay_t<decltype(w.ring())>;
        LineSearchOptions<F> opts;
        opts.rational_bound = bound;
        return subspace_result("singular-space", find_singular_space(as_form(w), opts));
      },
      a.v);
}

namespace {

CmdResult subspace_list_result(const char* command, const char* key,
                               const std::vector<Subspace<PrimeField>>& list) {
  std::string text = "count " + std::to_string(list.size()) + "\n";
  json entries = json::array();
  for (const auto& s : list) {
    json rows = rows_json(s.field, s.basis);
    entries.push_back(rows);
    for (int i = 0; i < s.dim(); ++i) {
      if (i) text += " | ";
      text += render_row(s.field, s.basis.row(i));
    }
    text += '\n';
  }
  json data{{"schema", 1},
            {"command", command},
            {"result", {{"count", list.size()}, {key, entries}}}};
  return {std::move(text), std::move(data)};
}

}  // namespace

CmdResult cmd_singular_lines(const AnyVector& a) {
  if (a.spec.kind != FieldSpec::Kind::PrimeField) {
    throw BudgetExceeded("exhaustive line enumeration needs a finite field");
  }
  auto lines = enumerate_singular_lines(as_form(std::get<FormVector<PrimeField>>(a.v)));
  auto res = subspace_list_result("singular-lines", "lines", lines);
  res.data["field"] = field_json(a.spec);
  return res;
}

CmdResult cmd_two_singular(const AnyVector& a, int dim) {
  if (a.spec.kind != FieldSpec::Kind::PrimeField) {
    throw BudgetExceeded("exhaustive subspace enumeration needs a finite field");
  }
  auto subs = enumerate_2_singular(as_form(std::get<FormVector<PrimeField>>(a.v)), dim);
  auto res = subspace_list_result("two-singular", "subspaces", subs);
  res.data["field"] = field_json(a.spec);
  return res;
}

CmdResult cmd_normalize(const AnyVector& a) {
  return std::visit(
      [&](const auto& w) -> CmdResult {
        auto g = normalize(as_form(w));
        json data{{"schema", 1},
                  {"command", "normalize"},
                  {"field", field_json(a.spec)},
                  {"result", {{"rows", rows_json(w.ring(), g)}}}};
        return {render_matrix(g), std::move(data)};
      },
      a.v);
}

namespace {

template <FieldContext F>
AnyVector builtin_impl(F f, const FieldSpec& spec, const std::string& name, int param, int n,
                       int e, std::uint64_t seed) {
  if (name == "fano7") return {spec, fano7(f).omega};
  if (name == "example_n6") return {spec, example_n6(f).omega};
  if (name == "triple_sum") return {spec, triple_sum(f, param).omega};
  if (name == "killing_sl") return {spec, killing_sl(f, param).omega};
  if (name == "canonical") return {spec, canonical_form(f, param).first.omega};
  if (name == "random") return {spec, random_form(f, n, e, seed).omega};
  throw Error("unknown builtin '" + name +
              "' (expected fano7, example_n6, triple_sum, killing_sl, canonical or random)");
}

}  // namespace

CmdResult cmd_builtin(const FieldSpec& spec, const std::string& name, int param, int n, int e,
                      std::uint64_t seed) {
  AnyVector out = spec.kind == FieldSpec::Kind::PrimeField
                      ? builtin_impl(PrimeField(spec.p), spec, name, param, n, e, seed)
                      : builtin_impl(Rationals{}, spec, name, param, n, e, seed);
  return vector_result("builtin", out);
}

}  // namespace altsing
