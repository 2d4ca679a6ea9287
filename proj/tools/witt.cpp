// Command-line driver: catalog browsing, verification suites, expression
// utilities and numeric spot checks.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "witt/catalog.hpp"
#include "witt/jet.hpp"
#include "witt/oracle.hpp"
#include "witt/report.hpp"
#include "witt/verify.hpp"

namespace {

using namespace witt;

constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string id, eq, params, json, only;
  int range = 4;
  std::uint64_t seed = 42;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c, bool with_range = true) {
  sub->add_option("--params", c.params, "Parameters k=v,... (alpha, beta, gamma, sign, fsign, phi, lambda)");
  sub->add_option("--json", c.json, "Write the JSON report to PATH (- for standard output)");
  sub->add_option("--seed", c.seed, "Sampling seed (default 42)");
  sub->add_option("--jobs", c.jobs, "Worker threads (default: available CPUs)")->check(CLI::PositiveNumber);
  sub->add_flag("--timing", c.timing, "Record per-check elapsed milliseconds");
  if (with_range) sub->add_option("--range", c.range, "Index range N (|m|,|n| <= N)")->check(CLI::Range(0, 64));
}

RealizationId parse_id(const std::string& s) {
  if (auto id = id_from_name(s)) return *id;
  throw UsageError("unknown id: " + s);
}

EquationId parse_eq(const std::string& s) {
  if (auto e = equation_from_name(s)) return *e;
  throw UsageError("unknown equation: " + s);
}

std::vector<Params> grid_or(const std::string& text, const std::vector<Params>& grid) {
  if (text.empty()) return grid;
  return {Params::parse(text)};
}

Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: " + s);
  }
}

// "--json -" puts the report on stdout and the summary on stderr.
int finish(const Report& r, const Common& c, const std::string& command) {
  if (c.json == "-") {
    print_summary(std::cerr, r);
    std::cout << report_json(r, {command, c.seed, c.range});
    return exit_code(r);
  }
  print_summary(std::cout, r);
  if (!c.json.empty()) {
    std::ofstream os(c.json, std::ios::binary);
    if (!os) throw UsageError("cannot write " + c.json);
    os << report_json(r, {command, c.seed, c.range});
  }
  return exit_code(r);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact verification of Witt algebra realizations by vector fields"};
  app.require_subcommand(1);
  int code = 0;
  Common c;

  // catalog ---------------------------------------------------------------
  auto* catalog = app.add_subcommand("catalog", "Browse and export the realization catalog");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "List realization and equation ids");
  cat_list->callback([&] {
    for (RealizationId id : all_ids()) {
      std::cout << id_name(id);
      if (declared_fields(id)) std::cout << "  (" << param_grid(id).size() << " parameter sets)";
      std::cout << "\n";
    }
    for (EquationId eq : all_equations()) std::cout << equation_name(eq) << "\n";
  });
  auto* cat_show = catalog->add_subcommand("show", "Print generators of one realization");
  cat_show->add_option("--id", c.id, "Realization id")->required();
  cat_show->add_option("--params", c.params, "Parameters k=v,...; default: the whole grid");
  cat_show->add_option("--range", c.range, "Print L_n for |n| <= N")->check(CLI::Range(0, 16));
  cat_show->callback([&] {
    const RealizationId id = parse_id(c.id);
    const Catalog cat(std::max(4, c.range));
    std::vector<int> ns;
    for (int k = -c.range; k <= c.range; ++k) ns.push_back(k);
    if (id == RealizationId::REP1 || id == RealizationId::REP2) ns = {-1, 0, 1};
    if (is_central(id) || id == RealizationId::LIOUVILLE_F || id == RealizationId::LIOUVILLE_G) ns = {0};
    if (id == RealizationId::V4_CASE1 || id == RealizationId::V4_CASE2) ns = {-1, 0, 1, 2};
    for (const Params& p : grid_or(c.params, param_grid(id))) {
      std::cout << id_name(id) << (p.key().empty() ? "" : " [" + p.key() + "]") << "\n";
      for (int f = 0; f < (is_direct_sum(id) ? 2 : 1); ++f)
        for (int n : ns)
          std::cout << "  " << (is_direct_sum(id) ? "factor" + std::to_string(f) + " " : "") << "L_" << n << " = "
                    << print(cat.generator(id, n, p, f)) << "\n";
      if (id == RealizationId::V4_CASE1 || id == RealizationId::V4_CASE2)
        std::cout << "  C = " << print(cat.central(id, p)) << "\n";
    }
  });
  auto* cat_export = catalog->add_subcommand("export", "Export the catalog as JSON");
  cat_export->add_option("--range", c.range, "Generators for |n| <= N")->check(CLI::Range(0, 16));
  cat_export->add_option("--json", c.json, "Write to PATH instead of standard output");
  cat_export->callback([&] {
    const std::string doc = catalog_json(c.range);
    if (c.json.empty()) {
      std::cout << doc;
    } else {
      std::ofstream os(c.json, std::ios::binary);
      if (!os) throw UsageError("cannot write " + c.json);
      os << doc;
    }
  });

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->require_subcommand(1);
  auto verifier = [&] { return Verifier({c.seed, c.jobs, c.timing}); };

  auto* v_witt = verify->add_subcommand("witt", "Witt relations [L_m,L_n] = (m-n)L_{m+n}");
  add_common(v_witt, c);
  v_witt->add_option("--id", c.id, "Realization W1..W11")->required();
  v_witt->callback([&] {
    const RealizationId id = parse_id(c.id);
    Verifier v = verifier();
    Report r;
    for (const Params& p : grid_or(c.params, param_grid(id))) r.append(v.check_witt(id, p, c.range));
    r.sort();
    code = finish(r, c, "verify witt");
  });

  auto* v_sl2 = verify->add_subcommand("sl2", "sl(2) triplet relations");
  add_common(v_sl2, c, false);
  v_sl2->add_option("--id", c.id, "REP1 or REP2; default both");
  v_sl2->callback([&] {
    Verifier v = verifier();
    Report r;
    std::vector<RealizationId> ids{RealizationId::REP1, RealizationId::REP2};
    if (!c.id.empty()) ids = {parse_id(c.id)};
    for (RealizationId id : ids)
      for (const Params& p : grid_or(c.params, param_grid(id))) r.append(v.check_sl2(id, p));
    r.sort();
    code = finish(r, c, "verify sl2");
  });

  auto* v_ds = verify->add_subcommand("direct-sum", "Both factors and all cross brackets");
  add_common(v_ds, c);
  v_ds->add_option("--id", c.id, "Realization D1..D10")->required();
  v_ds->callback([&] {
    const RealizationId id = parse_id(c.id);
    Verifier v = verifier();
    Report r;
    for (const Params& p : grid_or(c.params, param_grid(id))) r.append(v.check_direct_sum(id, p, c.range));
    r.sort();
    code = finish(r, c, "verify direct-sum");
  });

  auto* v_central = verify->add_subcommand("central", "[L_0,C] = [L_1,C] = 0");
  add_common(v_central, c, false);
  v_central->add_option("--id", c.id, "C1..C6; default all");
  v_central->callback([&] {
    Verifier v = verifier();
    Report r;
    for (RealizationId id : all_ids()) {
      if (!is_central(id) || (!c.id.empty() && id != parse_id(c.id))) continue;
      for (const Params& p : grid_or(c.params, param_grid(id))) r.append(v.check_central(id, p));
    }
    if (!c.id.empty() && !is_central(parse_id(c.id))) throw UsageError(c.id + " is not a central candidate");
    r.sort();
    code = finish(r, c, "verify central");
  });

  auto* v_vir = verify->add_subcommand("virasoro", "Partial Virasoro constructions");
  add_common(v_vir, c, false);
  v_vir->add_option("--id", c.id, "V4_CASE1 or V4_CASE2; default both");
  v_vir->callback([&] {
    Verifier v = verifier();
    Report r;
    std::vector<RealizationId> ids{RealizationId::V4_CASE1, RealizationId::V4_CASE2};
    if (!c.id.empty()) ids = {parse_id(c.id)};
    for (RealizationId id : ids) r.append(v.check_virasoro_case(id));
    r.sort();
    code = finish(r, c, "verify virasoro");
  });

  auto* v_inv = verify->add_subcommand("invariance", "Annihilation of differential invariants");
  add_common(v_inv, c);
  v_inv->add_option("--eq", c.eq, "Equation id")->required();
  v_inv->add_option("--id", c.id, "Symmetry realization; default all of the equation's");
  v_inv->callback([&] {
    const EquationId eq = parse_eq(c.eq);
    Verifier v = verifier();
    Report r;
    for (RealizationId sym : equation(eq).symmetries) {
      if (!c.id.empty() && sym != parse_id(c.id)) continue;
      if (eq == EquationId::LIO_EQ) continue;
      for (const Params& p : grid_or(c.params, equation_grid(eq))) r.append(v.check_invariance(eq, sym, p, c.range));
    }
    if (eq == EquationId::LIO_EQ) r.append(v.check_liouville());
    r.sort();
    code = finish(r, c, "verify invariance");
  });

  auto* v_d2 = verify->add_subcommand("d2", "Closed-form solution of u_tx = lambda u_t e^u");
  add_common(v_d2, c, false);
  v_d2->callback([&] {
    Verifier v = verifier();
    Report r;
    std::vector<Rational> lambdas{1, -1, 2};
    if (!c.params.empty()) lambdas = {Params::parse(c.params).lambda()};
    for (const auto& l : lambdas) r.append(v.check_solution_d2(l));
    r.sort();
    code = finish(r, c, "verify d2");
  });

  auto* v_lio = verify->add_subcommand("liouville", "Infinite symmetry of u_tx = e^u");
  add_common(v_lio, c, false);
  v_lio->callback([&] {
    Verifier v = verifier();
    code = finish(v.check_liouville(), c, "verify liouville");
  });

  auto* v_all = verify->add_subcommand("all", "Every suite, merged into one report");
  add_common(v_all, c);
  v_all->add_option("--only", c.only, "Comma list of ids, equation ids or check kinds");
  v_all->callback([&] {
    if (c.range < 2) throw UsageError("verify all needs --range >= 2");
    const auto parts = split(c.only, ',');
    const std::set<std::string> only(parts.begin(), parts.end());
    for (const auto& name : only)
      if (!id_from_name(name) && !equation_from_name(name) && !kind_from_name(name) && name != "d2")
        throw UsageError("unknown --only entry: " + name);
    Verifier v = verifier();
    code = finish(v.run_all(c.range, only), c, "verify all");
  });

  // expr ------------------------------------------------------------------
  auto* expr = app.add_subcommand("expr", "Expression utilities");
  expr->require_subcommand(1);
  std::string text, var, at;

  auto* e_diff = expr->add_subcommand("diff", "Differentiate with respect to a variable");
  e_diff->add_option("--var", var, "t, x, u or a jet variable")->required();
  e_diff->add_option("expr", text, "Expression")->required();
  e_diff->callback([&] {
    const auto v = var_from_name(var);
    if (!v) throw UsageError("unknown variable: " + var);
    std::cout << print(differentiate(parse(text), *v)) << "\n";
  });

  auto* e_print = expr->add_subcommand("print", "Print the canonical form");
  e_print->alias("simplify");
  e_print->add_option("expr", text, "Expression")->required();
  e_print->callback([&] { std::cout << print(parse(text)) << "\n"; });

  auto* e_eval = expr->add_subcommand("eval", "Evaluate at a point");
  e_eval->add_option("expr", text, "Expression")->required();
  e_eval->add_option("--at", at, "Values var=x,... (t, x, u, jet variables, c); others are 0");
  e_eval->callback([&] {
    Assignment a;
    for (const auto& kv : split(at, ',')) {
      const auto eqpos = kv.find('=');
      if (eqpos == std::string::npos) throw UsageError("expected var=value: " + kv);
      const std::string name = kv.substr(0, eqpos);
      double value = 0;
      try {
        value = std::stod(kv.substr(eqpos + 1));
      } catch (const std::exception&) {
        throw UsageError("not a number: " + kv);
      }
      if (name == "c") {
        a.c = value;
      } else if (auto v = var_from_name(name)) {
        a[*v] = value;
      } else {
        throw UsageError("unknown variable: " + name);
      }
    }
    std::cout << std::setprecision(17) << eval(parse(text), a) << "\n";
  });

  // oracle ----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Numeric spot checks");
  oracle->require_subcommand(1);
  std::string lambda = "1";
  int points = 10;
  auto numeric = [&](const char* name, auto check) {
    auto* sub = oracle->add_subcommand(name, std::string("Numeric check of the ") + name + " construction");
    sub->add_option("--lambda", lambda, "Nonzero rational lambda (default 1)");
    sub->add_option("--points", points, "Sample points (default 10)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Sampling seed (default 42)");
    sub->callback([&, check] {
      const Rational l = parse_rational(lambda);
      if (l == 0) throw UsageError("lambda must be nonzero");
      SamplePlan plan;
      plan.seed = c.seed;
      plan.points = points;
      const NumericCheck r = check(l, plan);
      std::cout << (r.pass ? "pass" : "fail") << " points=" << r.points << " worst=" << r.worst << "\n";
      code = r.pass ? 0 : 1;
    });
  };
  numeric("hodograph", [](const Rational& l, const SamplePlan& p) { return numeric_hodograph_check(l, p); });
  numeric("d2", [](const Rational& l, const SamplePlan& p) { return numeric_solution_d2_check(l, p); });

  auto* o_fd = oracle->add_subcommand("fd", "Central difference against the symbolic derivative");
  o_fd->add_option("--var", var, "t, x or u")->required();
  o_fd->add_option("--points", points, "Sample points (default 10)")->check(CLI::PositiveNumber);
  o_fd->add_option("--seed", c.seed, "Sampling seed (default 42)");
  o_fd->add_option("expr", text, "Expression")->required();
  o_fd->callback([&] {
    const auto v = var_from_name(var);
    if (!v) throw UsageError("unknown variable: " + var);
    SamplePlan plan;
    plan.seed = c.seed;
    plan.points = points;
    const bool ok = fd_derivative_check(parse(text), *v, plan);
    std::cout << (ok ? "pass" : "fail") << "\n";
    code = ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RecursionBoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Inadmissible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " at offset " << e.offset() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
