#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aidw {

enum class ErrorCode {
  InvalidParams,
  InsufficientData,
  DegenerateExtent,
  InvalidArea,
  EmptyNeighborhood,
  InvalidExpectedDistance,
  InvalidBounds,
  InvalidMu,
  EmptyCloud,
  NonFiniteInput,
  NonFiniteResult,
  UnsupportedIsa,
  ParseError,
  IoError,
  EmptyInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. `index` carries the failing query index for batch errors
/// and the 1-based line number for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace aidw
