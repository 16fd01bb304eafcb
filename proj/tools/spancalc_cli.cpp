// Command line front end: composition, evaluation, homspaces, verification
// suites, and JSON or DOT export.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spancalc/checks.hpp"
#include "spancalc/dot_export.hpp"
#include "spancalc/json_io.hpp"
#include "spancalc/monoid.hpp"
#include "spancalc/spanqc.hpp"
#include "spancalc/spans.hpp"

namespace {

using nlohmann::json;
using namespace spancalc;

// Input problems exit 2; semantic mismatches between valid inputs exit 3.
int exit_for(const error& e) {
  switch (e.code()) {
    case errc::invalid:
    case errc::index_range:
    case errc::out_of_range:
      return 2;
    default:
      return 3;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::invalid, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json load_json(const std::string& path) {
  return parse_json_text(read_file(path));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) fail(errc::invalid, "bad integer " + item);
    } catch (const std::exception&) {
      fail(errc::invalid, "bad integer list entry " + item);
    }
  }
  return out;
}

json suite_to_json(const SuiteReport& r) {
  json lines = json::array();
  for (const CheckLine& l : r.lines)
    lines.push_back(
        json{{"name", l.name}, {"passed", l.passed}, {"detail", l.detail}});
  return json{{"suite", r.suite}, {"passed", r.passed}, {"lines", lines}};
}

int cmd_compose(const std::string& file_s, const std::string& file_t,
                const std::string& format) {
  Span1 s = span_from_json(load_json(file_s));
  Span1 t = span_from_json(load_json(file_t));
  Span1 st = compose_spans(s, t);
  if (format == "dot") {
    std::cout << dot_span(st);
    return 0;
  }
  json out{{"span", to_json(st)}, {"matrix", to_json(span_matrix(st))}};
  std::cout << dump_json(out);
  return 0;
}

int cmd_matrix(const std::string& file_s) {
  Span1 s = span_from_json(load_json(file_s));
  std::cout << dump_json(to_json(span_matrix(s)));
  return 0;
}

int cmd_eval(const std::string& file_s, const std::string& name,
             const std::string& input, int nat_cap) {
  Span1 s = span_from_json(load_json(file_s));
  std::vector<NamedMonoid> catalog = monoid_catalog(nat_cap);
  const CommMonoid* m = nullptr;
  for (const NamedMonoid& nm : catalog)
    if (nm.name == name) m = &nm.monoid;
  if (!m) {
    std::string names;
    for (const NamedMonoid& nm : catalog) names += " " + nm.name;
    fail(errc::invalid, "unknown monoid " + name + "; catalog:" + names);
  }
  std::vector<int> a = parse_int_list(input);
  if (static_cast<int>(a.size()) != s.left_foot.size)
    fail(errc::invalid, "input length must equal the left foot size");
  for (int v : a)
    if (v < 0 || v >= m->carrier.size)
      fail(errc::invalid, "input value outside the monoid carrier");
  std::cout << dump_json(json(eval_span(s, *m, a)));
  return 0;
}

int cmd_homspace(int x, int y, int apex_bound) {
  if (x < 0 || y < 0 || apex_bound < 0)
    fail(errc::invalid, "sizes and bounds must be nonnegative");
  GroupoidPresentation gp = homspace(make_set(x), make_set(y), apex_bound);
  json comps = json::array();
  for (const NatMatrix& m : gp.components) comps.push_back(to_json(m));
  std::cout << dump_json(
      json{{"components", comps}, {"aut_orders", gp.aut_orders}});
  return 0;
}

int cmd_products(int a, int b, int size_bound) {
  if (a < 0 || b < 0 || size_bound < 0)
    fail(errc::invalid, "sizes and bounds must be nonnegative");
  SuiteReport r;
  r.suite = "products";
  ProductCone cone = product_cone(make_set(a), make_set(b));
  {
    std::ostringstream os;
    os << "object size " << cone.object.size;
    r.lines.push_back(
        {"product cone", cone.object.size == a + b, os.str()});
    r.passed = r.passed && r.lines.back().passed;
  }
  for (int n = 0; n <= 1; ++n) {
    FinalityReport fr =
        check_product_finality(make_set(a), make_set(b), n, size_bound);
    std::ostringstream name, os;
    name << "finality n=" << n;
    os << "diagrams=" << fr.diagrams_checked << " failures=" << fr.failures;
    if (!fr.detail.empty()) os << " (" << fr.detail << ")";
    r.lines.push_back({name.str(), fr.passed, os.str()});
    r.passed = r.passed && fr.passed;
  }
  std::cout << render_report(r);
  return r.passed ? 0 : 1;
}

int cmd_check(const std::string& suite, const Config& cfg) {
  bool known = false;
  for (const std::string& s : suite_names()) known = known || s == suite;
  if (!known) fail(errc::invalid, "unknown suite " + suite);
  SuiteReport r = run_suite(suite, cfg);
  if (cfg.format == "json")
    std::cout << dump_json(suite_to_json(r));
  else
    std::cout << render_report(r);
  return r.passed ? 0 : 1;
}

int cmd_export(const std::string& file, const std::string& kind,
               const std::string& format) {
  json j = load_json(file);
  std::string k = kind;
  if (k == "auto") {
    if (j.is_object() && j.contains("lmap"))
      k = "span";
    else if (j.is_object() && j.contains("sets"))
      k = "cell";
    else if (j.is_object() && j.contains("rows"))
      k = "matrix";
    else if (j.is_object() && j.contains("values"))
      k = "map";
    else if (j.is_object() && j.contains("size"))
      k = "set";
    else
      fail(errc::invalid, "cannot infer the object kind");
  }
  if (k == "span") {
    Span1 s = span_from_json(j);
    std::cout << (format == "dot" ? dot_span(s) : dump_json(to_json(s)));
  } else if (k == "cell") {
    SpanCell c = cell_from_json(j);
    std::cout << (format == "dot" ? dot_cell(c) : dump_json(to_json(c)));
  } else if (k == "matrix") {
    if (format == "dot") fail(errc::invalid, "matrices have no dot form");
    std::cout << dump_json(to_json(matrix_from_json(j)));
  } else if (k == "map") {
    if (format == "dot") fail(errc::invalid, "maps have no dot form");
    std::cout << dump_json(to_json(map_from_json(j)));
  } else if (k == "set") {
    if (format == "dot") fail(errc::invalid, "sets have no dot form");
    std::cout << dump_json(to_json(finset_from_json(j)));
  } else {
    fail(errc::invalid, "unknown kind " + k);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"span calculus toolkit"};
  app.require_subcommand(1);

  Config cfg;
  std::string file_s, file_t, monoid_name = "nat-trunc", input;
  std::string suite, kind = "auto";
  int x = 1, y = 1, nat_cap = 15;

  CLI::App* compose = app.add_subcommand("compose", "compose two spans");
  compose->add_option("s", file_s, "first span json file")->required();
  compose->add_option("t", file_t, "second span json file")->required();
  compose->add_option("--format", cfg.format, "json or dot");

  CLI::App* matrix = app.add_subcommand("matrix", "matrix of a span");
  matrix->add_option("s", file_s, "span json file")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate a span on a monoid");
  eval->add_option("s", file_s, "span json file")->required();
  eval->add_option("--monoid", monoid_name, "catalog monoid name");
  eval->add_option("--input", input, "comma separated input vector");
  eval->add_option("--nat-cap", nat_cap, "truncation cap for nat-trunc");

  CLI::App* homsp = app.add_subcommand("homspace", "groupoid of spans x to y");
  homsp->add_option("x", x, "left set size")->required();
  homsp->add_option("y", y, "right set size")->required();
  homsp->add_option("--apex-bound", cfg.apex_bound, "largest apex size");

  CLI::App* products =
      app.add_subcommand("products", "finality of a product cone");
  products->add_option("a", x, "first factor size")->required();
  products->add_option("b", y, "second factor size")->required();
  products->add_option("--size-bound", cfg.size_bound, "slice size bound");

  CLI::App* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite,
                    "quasicat, cartesian, products, monoids, or homspaces")
      ->required();
  check->add_option("--size-bound", cfg.size_bound, "largest set size");
  check->add_option("--apex-bound", cfg.apex_bound, "largest apex size");
  check->add_option("--dim-cap", cfg.dim_cap, "largest cell dimension");
  check->add_option("--format", cfg.format, "text or json");
  check->add_option("--seed", cfg.seed,
                    "reserved for sampled sub-suites; current suites are "
                    "exhaustive");

  CLI::App* exp = app.add_subcommand("export", "re-emit an object");
  exp->add_option("file", file_s, "object json file")->required();
  exp->add_option("--kind", kind, "span, cell, matrix, map, set, or auto");
  exp->add_option("--format", cfg.format, "json or dot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (compose->parsed()) return cmd_compose(file_s, file_t, cfg.format);
    if (matrix->parsed()) return cmd_matrix(file_s);
    if (eval->parsed()) return cmd_eval(file_s, monoid_name, input, nat_cap);
    if (homsp->parsed()) return cmd_homspace(x, y, cfg.apex_bound);
    if (products->parsed()) return cmd_products(x, y, cfg.size_bound);
    if (check->parsed()) return cmd_check(suite, cfg);
    if (exp->parsed()) return cmd_export(file_s, kind, cfg.format);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
