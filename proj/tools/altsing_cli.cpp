// altsing: exact computations with alternating multilinear forms.
//
// Exit codes: 0 success, 1 domain error (no singular line within the budget,
// degenerate input, dimension too small, ...), 2 usage or parse error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "altsing/driver.hpp"
#include "altsing/errors.hpp"

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return altsing::read_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact singular-structure computations for alternating forms"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a single JSON object instead of text");

  std::string input, with_path, at, through, field_arg = "q", name;
  int power = 2, dim = 2, bound = 3, param = 0, amb = 0, degree = 3;
  std::uint64_t seed = 0;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, ".alt file (- for stdin)")->required();
  };

  auto* c_pair = app.add_subcommand("pair", "contract <lambda, omega>");
  add_input(c_pair);
  c_pair->add_option("--with", with_path, ".alt file holding lambda")->required();

  auto* c_wedge = app.add_subcommand("wedge", "wedge product of two vectors");
  add_input(c_wedge);
  c_wedge->add_option("--with", with_path, ".alt file holding the right factor")->required();

  auto* c_dp = app.add_subcommand("divided-power", "k-th divided power");
  add_input(c_dp);
  c_dp->add_option("--power", power, "the exponent k")->required();

  auto* c_pf = app.add_subcommand("pfaffian", "pfaffian of a 2-form");
  add_input(c_pf);

  auto* c_rad = app.add_subcommand("radical", "radical of a form");
  add_input(c_rad);

  auto* c_fp = app.add_subcommand("f-poly", "the polynomial f_omega (odd dimension)");
  add_input(c_fp);

  auto* c_fe = app.add_subcommand("f-eval", "evaluate f_omega at a point");
  add_input(c_fe);
  c_fe->add_option("--at", at, "space-separated coordinates")->required();

  auto* c_sl = app.add_subcommand("singular-line", "find one singular line");
  add_input(c_sl);
  c_sl->add_option("--through", through, "space-separated coordinates of a required point");
  c_sl->add_option("--bound", bound, "coordinate bound for the search over Q (default 3)");

  auto* c_ss = app.add_subcommand("singular-space", "find a singular (e-1)-space");
  add_input(c_ss);
  c_ss->add_option("--bound", bound, "coordinate bound for the search over Q (default 3)");

  auto* c_sls = app.add_subcommand("singular-lines", "enumerate all singular lines (finite field)");
  add_input(c_sls);

  auto* c_ts = app.add_subcommand("two-singular", "enumerate 2-singular subspaces of a dimension");
  add_input(c_ts);
  c_ts->add_option("--dim", dim, "subspace dimension")->required();

  auto* c_norm = app.add_subcommand("normalize", "move a form to the canonical one (binomial n)");
  add_input(c_norm);

  auto* c_bi = app.add_subcommand("builtin", "emit a library form as an .alt document");
  c_bi->add_option("--name", name,
                   "fano7 | example_n6 | triple_sum | killing_sl | canonical | random")
      ->required();
  c_bi->add_option("--field", field_arg, "q (default), gf<p> or 'gf <p>'");
  c_bi->add_option("--param", param, "parts / m / n for the parametrized builtins");
  c_bi->add_option("--n", amb, "ambient dimension (random)");
  c_bi->add_option("--e", degree, "degree (random, default 3)");
  c_bi->add_option("--seed", seed, "RNG seed (random, default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    altsing::CmdResult res;
    if (*c_pair) {
      res = altsing::cmd_pair(altsing::parse_alt(read_input(with_path)),
                              altsing::parse_alt(read_input(input)));
    } else if (*c_wedge) {
      res = altsing::cmd_wedge(altsing::parse_alt(read_input(input)),
                               altsing::parse_alt(read_input(with_path)));
    } else if (*c_dp) {
      res = altsing::cmd_divided_power(altsing::parse_alt(read_input(input)), power);
    } else if (*c_pf) {
      res = altsing::cmd_pfaffian(altsing::parse_alt(read_input(input)));
    } else if (*c_rad) {
      res = altsing::cmd_radical(altsing::parse_alt(read_input(input)));
    } else if (*c_fp) {
      res = altsing::cmd_f_poly(altsing::parse_alt(read_input(input)));
    } else if (*c_fe) {
      res = altsing::cmd_f_eval(altsing::parse_alt(read_input(input)), split_ws(at));
    } else if (*c_sl) {
      std::optional<std::vector<std::string>> thr;
      if (!through.empty()) thr = split_ws(through);
      res = altsing::cmd_singular_line(altsing::parse_alt(read_input(input)), thr, bound);
    } else if (*c_ss) {
      res = altsing::cmd_singular_space(altsing::parse_alt(read_input(input)), bound);
    } else if (*c_sls) {
      res = altsing::cmd_singular_lines(altsing::parse_alt(read_input(input)));
    } else if (*c_ts) {
      res = altsing::cmd_two_singular(altsing::parse_alt(read_input(input)), dim);
    } else if (*c_norm) {
      res = altsing::cmd_normalize(altsing::parse_alt(read_input(input)));
    } else if (*c_bi) {
      res = altsing::cmd_builtin(altsing::parse_field_arg(field_arg), name, param, amb, degree,
                                 seed);
    }
    if (as_json) {
      std::cout << res.data.dump(2) << "\n";
    } else {
      std::cout << res.text;
    }
    return 0;
  } catch (const altsing::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const altsing::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
