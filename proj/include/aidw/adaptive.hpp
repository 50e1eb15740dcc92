#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <span>

#include "aidw/point_cloud.hpp"
#include "aidw/types.hpp"

namespace aidw {

/// Every intermediate of the per-query decay-parameter pipeline.
template <std::floating_point T>
struct AlphaTrace {
  T r_exp;
  T r_obs;
  T R;
  T mu;
  T alpha;
};

/// Numeric settings of the pipeline at working precision.
template <std::floating_point T>
struct AlphaModel {
  std::array<T, 5> levels;
  T r_min;
  T r_max;

  static AlphaModel from(const AidwParams& params) noexcept;
};

/// Mean nearest-neighbour distance of a random pattern with m points on area A:
/// 1 / (2 sqrt(m / A)). Throws Error(InvalidArea) if A <= 0.
template <std::floating_point T>
T expected_nn_distance(std::size_t m, T area);

/// Arithmetic mean of the neighbour distances. Throws Error(EmptyNeighborhood).
template <std::floating_point T>
T observed_nn_distance(std::span<const T> dists);

/// r_obs / r_exp. Throws Error(InvalidExpectedDistance) if r_exp <= 0.
template <std::floating_point T>
T nn_statistic(T r_obs, T r_exp);

/// Cosine-shaped membership: 0 up to r_min, 1 from r_max, and
/// 0.5 - 0.5 cos(pi / r_max * (R - r_min)) in between.
/// Throws Error(InvalidBounds) if r_min >= r_max.
///
/// The cosine is evaluated as sin(pi (1/2 - x)) so that the landmarks
/// x = 0, 1/2, 1 come out exact. Note that for r_min > 0 the argument does not
/// reach pi at R = r_max, so the curve jumps to 1 at the clamp.
template <std::floating_point T>
T normalize_statistic(T R, T r_min, T r_max);

/// Triangular membership mapping of mu onto the five decay levels: flat a1 on
/// [0, 0.1], linear a1->a2 ... a4->a5 over [0.1, 0.9] in steps of 0.2, flat a5
/// on [0.9, 1]. mu within 1e-9 outside [0, 1] is clamped; further out throws
/// Error(InvalidMu).
template <std::floating_point T>
T decay_parameter(T mu, const std::array<T, 5>& levels);

/// One row of the membership mapping evaluated at mu regardless of its
/// interval (row 0 = flat a1 ... row 5 = flat a5). Used to check continuity.
template <std::floating_point T>
T decay_segment(std::size_t row, T mu, const std::array<T, 5>& levels) noexcept;

/// Pipeline tail shared by every engine: from the sorted k-nearest distances
/// and the expected distance to the final trace.
template <std::floating_point T>
AlphaTrace<T> alpha_from_neighbors(std::span<const T> dists, T r_exp, const AlphaModel<T>& model);

/// params.area if set, else the bounding-box area of the cloud.
template <std::floating_point T>
T resolve_area(const PointCloud<T>& cloud, const AidwParams& params);

/// Full single-query pipeline: k-nearest distances, r_obs, r_exp, R, mu, alpha.
template <std::floating_point T>
AlphaTrace<T> adaptive_alpha(const PointCloud<T>& cloud, const QueryPoint<T>& query, const AidwParams& params);

}  // namespace aidw
