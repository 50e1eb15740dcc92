#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

#include "aidw/io.hpp"
#include "aidw/point_cloud.hpp"

namespace aidw::test {

template <typename T>
PointCloud<T> cloud_of(std::vector<Sample<T>> samples, Layout layout = Layout::SoA) {
  return PointCloud<T>::from_samples(samples, layout);
}

inline PointCloud<double> seeded_cloud(std::size_t count, std::uint64_t seed, double extent = 100.0,
                                       Layout layout = Layout::SoA) {
  io::DatasetSpec spec;
  spec.count = count;
  spec.extent = extent;
  spec.seed = seed;
  return io::generate(spec, layout);
}

inline std::vector<QueryPoint<double>> seeded_queries(std::size_t count, std::uint64_t seed, double extent = 100.0) {
  return io::generate_queries(count, extent, seed);
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

template <typename T>
bool same_bits(T a, T b) {
  return std::memcmp(&a, &b, sizeof(T)) == 0;
}

inline double rel_err(double got, double want) {
  const double scale = want == 0.0 ? 1.0 : (want < 0 ? -want : want);
  const double d = got - want;
  return (d < 0 ? -d : d) / scale;
}

}  // namespace aidw::test
