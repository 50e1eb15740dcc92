#include "aidw/error.hpp"

namespace aidw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateExtent: return "DegenerateExtent";
    case ErrorCode::InvalidArea: return "InvalidArea";
    case ErrorCode::EmptyNeighborhood: return "EmptyNeighborhood";
    case ErrorCode::InvalidExpectedDistance: return "InvalidExpectedDistance";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::InvalidMu: return "InvalidMu";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::UnsupportedIsa: return "UnsupportedIsa";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& what) {
  std::string out{to_string(code)};
  out += ": ";
  out += what;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(compose(code, what)), code_(code), index_(index) {}

}  // namespace aidw
