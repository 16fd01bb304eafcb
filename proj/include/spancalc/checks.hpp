// Deterministic verification suites shared by the command line tool and
// the acceptance tests. Reports carry counts only, never timings, so
// repeated runs produce identical bytes at any thread count.
#pragma once

#include <string>
#include <vector>

namespace spancalc {

struct Config {
  int size_bound = 2;
  int apex_bound = 4;
  int dim_cap = 4;
  std::string format = "text";
  unsigned seed = 0;
};

// Bounds must be nonnegative and the dimension cap at most 6.
void validate_config(const Config& cfg);

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  bool passed = true;
  std::vector<CheckLine> lines;
};

// Inner horns of the bounded complex fill uniquely, the (3,1) filler
// matches the composite formula, and outer horns of small nerves behave as
// the degree hypothesis predicts, with a non-unique control at n = 3.
SuiteReport check_quasicat(int size_bound, int dim_cap);

// The structural cartesian test agrees with the bounded probe battery on
// every dim-1 cell, lifts are cartesian over their base, and composable
// pairs fill their inner horn.
SuiteReport check_cartesian(int size_bound);

// Product cones are final: every bounded slice diagram extends.
SuiteReport check_products(int size_bound, int n_max);

// Evaluation on every catalog monoid is functorial, factors through the
// matrix of the span, and matches the pointed-map collapse criterion.
SuiteReport check_monoids(int size_bound);

// Automorphism orders of the point homspace and the two computations of
// the symmetric comparison agree.
SuiteReport check_homspaces(int apex_bound, int size_bound);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const Config& cfg);

std::string render_report(const SuiteReport& r);

}  // namespace spancalc
