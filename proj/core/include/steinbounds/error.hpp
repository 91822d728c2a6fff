#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steinbounds {

enum class ErrorCode {
  InvalidParams,
  NonIntegrable,
  NaNDensity,
  OutOfRange,
  KernelUnstable,
  NonIntegrableTestFunction,
  KernelZero,
  SupportNotNested,
  NotMonotone,
  MeanUnattainable,
  MgfDivergent,
  ImproperPosterior,
  InvalidData,
  NonConvergent,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace steinbounds
