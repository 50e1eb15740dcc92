#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "aidw/simd/kernels.hpp"
#include "aidw/types.hpp"

namespace aidw {

/// Immutable set of samples in either SoA or AoS storage. The layout is a
/// representation choice only: sample_at(i) is identical for both.
template <std::floating_point T>
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws Error(NonFiniteInput) if any coordinate or value is NaN/Inf.
  static PointCloud from_samples(std::span<const Sample<T>> samples, Layout layout = Layout::SoA);

  Layout layout() const noexcept { return layout_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  Sample<T> sample_at(std::size_t i) const noexcept {
    if (layout_ == Layout::AoS) return records_[i];
    return {xs_[i], ys_[i], values_[i]};
  }

  std::vector<Sample<T>> samples() const;

  // SoA arrays; empty for AoS clouds.
  std::span<const T> xs() const noexcept { return xs_; }
  std::span<const T> ys() const noexcept { return ys_; }
  std::span<const T> values() const noexcept { return values_; }
  // Interleaved records; empty for SoA clouds.
  std::span<const Sample<T>> records() const noexcept { return records_; }

  simd::DataView<T> view() const noexcept;

 private:
  Layout layout_ = Layout::SoA;
  std::size_t count_ = 0;
  std::vector<T> xs_;
  std::vector<T> ys_;
  std::vector<T> values_;
  std::vector<Sample<T>> records_;
};

template <std::floating_point T>
T distance(const QueryPoint<T>& a, const Sample<T>& b) noexcept;

/// Axis-aligned bounding-box area of the sample locations.
/// Throws Error(InsufficientData) for fewer than two samples and
/// Error(DegenerateExtent) for zero width or height.
template <std::floating_point T>
T bounding_area(const PointCloud<T>& cloud);

template <std::floating_point T>
PointCloud<T> convert_layout(const PointCloud<T>& cloud, Layout target);

/// Element-wise precision cast, preserving layout.
template <std::floating_point To, std::floating_point From>
PointCloud<To> cast_cloud(const PointCloud<From>& cloud);

/// True when layouts match and every sample is bit-identical.
template <std::floating_point T>
bool bitwise_equal(const PointCloud<T>& a, const PointCloud<T>& b) noexcept;

template <std::floating_point To, std::floating_point From>
std::vector<QueryPoint<To>> cast_queries(std::span<const QueryPoint<From>> queries) {
  std::vector<QueryPoint<To>> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back({static_cast<To>(q.x), static_cast<To>(q.y)});
  return out;
}

}  // namespace aidw
