#include "aidw/knn.hpp"

#include <algorithm>
#include <string>

#include "aidw/error.hpp"
#include "simd/neighbor_insert.hpp"

namespace aidw {

template <std::floating_point T>
NeighborBuffer<T> NeighborBuffer<T>::from_sorted(std::vector<T> dists) {
  if (dists.empty()) throw Error(ErrorCode::InvalidParams, "neighbor buffer needs capacity >= 1");
  if (!std::is_sorted(dists.begin(), dists.end())) {
    throw Error(ErrorCode::InvalidParams, "neighbor buffer contents must be ascending");
  }
  return NeighborBuffer(std::move(dists));
}

template <std::floating_point T>
bool NeighborBuffer<T>::offer(T dist) noexcept {
  return simd::detail::bubble_insert(dists_.data(), dists_.size(), dist);
}

template <std::floating_point T>
NeighborBuffer<T> init_buffer(const PointCloud<T>& cloud, const QueryPoint<T>& query, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  if (cloud.size() < k) {
    throw Error(ErrorCode::InsufficientData,
                "k = " + std::to_string(k) + " exceeds the " + std::to_string(cloud.size()) + " data points");
  }
  std::vector<T> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = distance(query, cloud.sample_at(i));
  std::sort(d.begin(), d.end());
  return NeighborBuffer<T>(std::move(d));
}

template <std::floating_point T>
NeighborBuffer<T> insert_candidate(NeighborBuffer<T> buffer, T dist) {
  buffer.offer(dist);
  return buffer;
}

template <std::floating_point T>
std::vector<T> nearest_k_distances(const PointCloud<T>& cloud, const QueryPoint<T>& query, std::size_t k) {
  auto buf = init_buffer(cloud, query, k);
  for (std::size_t i = k; i < cloud.size(); ++i) buf.offer(distance(query, cloud.sample_at(i)));
  const auto d = buf.distances();
  return {d.begin(), d.end()};
}

#define AIDW_INSTANTIATE_KNN(T)                                                                      \
  template class NeighborBuffer<T>;                                                                  \
  template NeighborBuffer<T> init_buffer(const PointCloud<T>&, const QueryPoint<T>&, std::size_t); \
  template NeighborBuffer<T> insert_candidate(NeighborBuffer<T>, T);                                 \
  template std::vector<T> nearest_k_distances(const PointCloud<T>&, const QueryPoint<T>&, std::size_t);

AIDW_INSTANTIATE_KNN(float)
AIDW_INSTANTIATE_KNN(double)

}  // namespace aidw
