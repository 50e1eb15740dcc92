#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string_view>

namespace aidw {

enum class Layout { SoA, AoS };
enum class Precision { Single, Double };

std::string_view to_string(Layout layout) noexcept;
std::string_view to_string(Precision precision) noexcept;

/// A data point: planar location plus the attribute being interpolated.
/// Also the record type of AoS storage, so it must stay padding-free.
template <std::floating_point T>
struct Sample {
  T x;
  T y;
  T value;

  friend bool operator==(const Sample&, const Sample&) = default;
};

static_assert(sizeof(Sample<float>) == 3 * sizeof(float));
static_assert(sizeof(Sample<double>) == 3 * sizeof(double));

template <std::floating_point T>
struct QueryPoint {
  T x;
  T y;

  friend bool operator==(const QueryPoint&, const QueryPoint&) = default;
};

template <std::floating_point T>
constexpr T default_zero_dist_tol() noexcept {
  if constexpr (sizeof(T) == sizeof(float)) {
    return T(1e-6);
  } else {
    return T(1e-12);
  }
}

/// AIDW configuration. Unset `area` means "derive from the data bounding box";
/// unset `zero_dist_tol` means the precision default.
struct AidwParams {
  std::size_t k = 10;
  std::array<double, 5> alpha_levels{1.0, 1.5, 2.0, 2.5, 3.0};
  double r_min = 0.0;
  double r_max = 2.0;
  std::optional<double> area;
  std::optional<double> zero_dist_tol;
  Precision precision = Precision::Double;

  /// Throws Error(InvalidParams) on violated invariants.
  void validate() const;

  template <std::floating_point T>
  T tolerance() const noexcept {
    return zero_dist_tol ? static_cast<T>(*zero_dist_tol) : default_zero_dist_tol<T>();
  }
};

}  // namespace aidw
