#pragma once

#include <stdexcept>
#include <string>

namespace slda {

/// Broad failure categories. The CLI maps these onto process exit codes.
enum class Errc {
  invalid_argument,
  dimension_mismatch,
  insufficient_data,
  not_positive_definite,
  infeasible,
  parse,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace slda
