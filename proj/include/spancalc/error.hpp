// Error type shared by all spancalc modules. Every precondition failure
// throws spancalc::error carrying a stable machine-readable code.
#pragma once

#include <stdexcept>
#include <string>

namespace spancalc {

enum class errc {
  out_of_range,
  length_mismatch,
  domain_mismatch,
  codomain_mismatch,
  not_commuting,
  foot_mismatch,
  mismatch,
  shape_mismatch,
  dim_over_cap,
  index_range,
  invalid_category,
  compatibility_fail,
  not_invertible,
  not_monotone,
  index,
  shape,
  dim,
  invalid,
  no_natural_map,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what);
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& what);

}  // namespace spancalc
