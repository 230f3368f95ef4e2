#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "altsing/io.hpp"

namespace altsing {

// One command's output: `text` is the human-readable stdout, `data` the
// equivalent JSON object (emitted under --json). Domain failures surface as
// the typed exceptions from errors.hpp; the caller maps them to exit codes.
struct CmdResult {
  std::string text;
  nlohmann::json data;
};

// Accepts "q", "gf<p>" or "gf <p>".
FieldSpec parse_field_arg(const std::string& arg);

CmdResult cmd_pair(const AnyVector& lambda, const AnyVector& omega);
CmdResult cmd_wedge(const AnyVector& a, const AnyVector& b);
CmdResult cmd_divided_power(const AnyVector& a, int power);
CmdResult cmd_pfaffian(const AnyVector& a);
CmdResult cmd_radical(const AnyVector& a);
CmdResult cmd_f_poly(const AnyVector& a);
CmdResult cmd_f_eval(const AnyVector& a, const std::vector<std::string>& point);
CmdResult cmd_singular_line(const AnyVector& a,
                            const std::optional<std::vector<std::string>>& through, int bound);
CmdResult cmd_singular_space(const AnyVector& a, int bound);
CmdResult cmd_singular_lines(const AnyVector& a);
CmdResult cmd_two_singular(const AnyVector& a, int dim);
CmdResult cmd_normalize(const AnyVector& a);

// Library forms by name: fano7, example_n6, triple_sum (param = parts),
// killing_sl (param = m), canonical (param = n), random (n, e, seed).
CmdResult cmd_builtin(const FieldSpec& spec, const std::string& name, int param, int n, int e,
                      std::uint64_t seed);

}  // namespace altsing
