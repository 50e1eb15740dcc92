#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "aidw/point_cloud.hpp"

namespace aidw {

/// Fixed-capacity ascending buffer of the k smallest distances seen so far.
/// Only distances are kept; the weighting pass never needs neighbor identity.
template <std::floating_point T>
class NeighborBuffer {
 public:
  /// Throws Error(InvalidParams) if `dists` is empty or not ascending.
  static NeighborBuffer from_sorted(std::vector<T> dists);

  std::size_t capacity() const noexcept { return dists_.size(); }
  std::span<const T> distances() const noexcept { return dists_; }
  T kth() const noexcept { return dists_.back(); }

  /// In-place form of insert_candidate. Returns whether dist was accepted.
  bool offer(T dist) noexcept;

 private:
  explicit NeighborBuffer(std::vector<T> dists) : dists_(std::move(dists)) {}
  std::vector<T> dists_;

  template <std::floating_point U>
  friend NeighborBuffer<U> init_buffer(const PointCloud<U>&, const QueryPoint<U>&, std::size_t);
};

/// Distances from the query to samples [0, k), sorted ascending.
/// Throws Error(InsufficientData) if the cloud holds fewer than k samples.
template <std::floating_point T>
NeighborBuffer<T> init_buffer(const PointCloud<T>& cloud, const QueryPoint<T>& query, std::size_t k);

/// Replaces the k-th distance if `dist` is strictly smaller and settles it by
/// adjacent swaps toward the front.
template <std::floating_point T>
NeighborBuffer<T> insert_candidate(NeighborBuffer<T> buffer, T dist);

/// The k smallest query-to-sample distances in ascending order, found by
/// init_buffer over the first k samples then insert_candidate over the rest.
template <std::floating_point T>
std::vector<T> nearest_k_distances(const PointCloud<T>& cloud, const QueryPoint<T>& query, std::size_t k);

}  // namespace aidw
