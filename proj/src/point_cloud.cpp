#include "aidw/point_cloud.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "aidw/error.hpp"
#include "aidw/simd/scalar_math.hpp"

namespace aidw {

std::string_view to_string(Layout layout) noexcept {
  return layout == Layout::SoA ? "soa" : "aos";
}

std::string_view to_string(Precision precision) noexcept {
  return precision == Precision::Single ? "single" : "double";
}

void AidwParams::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  if (!(r_min < r_max)) throw Error(ErrorCode::InvalidParams, "r_min must be below r_max");
  for (double a : alpha_levels) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidParams, "alpha levels must be positive and finite");
  }
  if (zero_dist_tol && !(*zero_dist_tol > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "zero distance tolerance must be positive");
  }
  if (area && !(*area > 0.0 && std::isfinite(*area))) {
    throw Error(ErrorCode::InvalidArea, "study area must be positive and finite");
  }
}

template <std::floating_point T>
PointCloud<T> PointCloud<T>::from_samples(std::span<const Sample<T>> samples, Layout layout) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.value)) {
      throw Error(ErrorCode::NonFiniteInput, "sample " + std::to_string(i) + " is not finite", i);
    }
  }
  PointCloud c;
  c.layout_ = layout;
  c.count_ = samples.size();
  if (layout == Layout::AoS) {
    c.records_.assign(samples.begin(), samples.end());
  } else {
    c.xs_.reserve(samples.size());
    c.ys_.reserve(samples.size());
    c.values_.reserve(samples.size());
    for (const auto& s : samples) {
      c.xs_.push_back(s.x);
      c.ys_.push_back(s.y);
      c.values_.push_back(s.value);
    }
  }
  return c;
}

template <std::floating_point T>
std::vector<Sample<T>> PointCloud<T>::samples() const {
  if (layout_ == Layout::AoS) return records_;
  std::vector<Sample<T>> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(sample_at(i));
  return out;
}

template <std::floating_point T>
simd::DataView<T> PointCloud<T>::view() const noexcept {
  if (layout_ == Layout::AoS) {
    const Sample<T>* r = records_.data();
    return {&r->x, &r->y, &r->value, 3, count_};
  }
  return {xs_.data(), ys_.data(), values_.data(), 1, count_};
}

template <std::floating_point T>
T distance(const QueryPoint<T>& a, const Sample<T>& b) noexcept {
  return simd::scalar::distance(a.x, a.y, b.x, b.y);
}

template <std::floating_point T>
T bounding_area(const PointCloud<T>& cloud) {
  if (cloud.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "bounding area needs at least two samples");
  }
  Sample<T> first = cloud.sample_at(0);
  T min_x = first.x, max_x = first.x, min_y = first.y, max_y = first.y;
  for (std::size_t i = 1; i < cloud.size(); ++i) {
    const Sample<T> s = cloud.sample_at(i);
    min_x = std::min(min_x, s.x);
    max_x = std::max(max_x, s.x);
    min_y = std::min(min_y, s.y);
    max_y = std::max(max_y, s.y);
  }
  const T width = max_x - min_x;
  const T height = max_y - min_y;
  if (!(width > T(0)) || !(height > T(0))) {
    throw Error(ErrorCode::DegenerateExtent, "data bounding box has zero width or height");
  }
  return width * height;
}

template <std::floating_point T>
PointCloud<T> convert_layout(const PointCloud<T>& cloud, Layout target) {
  const auto s = cloud.samples();
  return PointCloud<T>::from_samples(s, target);
}

template <std::floating_point To, std::floating_point From>
PointCloud<To> cast_cloud(const PointCloud<From>& cloud) {
  std::vector<Sample<To>> out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto s = cloud.sample_at(i);
    out.push_back({static_cast<To>(s.x), static_cast<To>(s.y), static_cast<To>(s.value)});
  }
  return PointCloud<To>::from_samples(out, cloud.layout());
}

template <std::floating_point T>
bool bitwise_equal(const PointCloud<T>& a, const PointCloud<T>& b) noexcept {
  if (a.layout() != b.layout() || a.size() != b.size()) return false;
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto s = a.sample_at(i);
    const auto t = b.sample_at(i);
    if (std::bit_cast<Bits>(s.x) != std::bit_cast<Bits>(t.x) || std::bit_cast<Bits>(s.y) != std::bit_cast<Bits>(t.y) ||
        std::bit_cast<Bits>(s.value) != std::bit_cast<Bits>(t.value)) {
      return false;
    }
  }
  return true;
}

template class PointCloud<float>;
template class PointCloud<double>;
template float distance(const QueryPoint<float>&, const Sample<float>&) noexcept;
template double distance(const QueryPoint<double>&, const Sample<double>&) noexcept;
template float bounding_area(const PointCloud<float>&);
template double bounding_area(const PointCloud<double>&);
template PointCloud<float> convert_layout(const PointCloud<float>&, Layout);
template PointCloud<double> convert_layout(const PointCloud<double>&, Layout);
template PointCloud<float> cast_cloud<float, double>(const PointCloud<double>&);
template PointCloud<double> cast_cloud<double, float>(const PointCloud<float>&);
template PointCloud<float> cast_cloud<float, float>(const PointCloud<float>&);
template PointCloud<double> cast_cloud<double, double>(const PointCloud<double>&);
template bool bitwise_equal(const PointCloud<float>&, const PointCloud<float>&) noexcept;
template bool bitwise_equal(const PointCloud<double>&, const PointCloud<double>&) noexcept;

}  // namespace aidw
