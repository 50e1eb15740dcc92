#include "aidw/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aidw/error.hpp"
#include "aidw/knn.hpp"

namespace aidw {

template <std::floating_point T>
AlphaModel<T> AlphaModel<T>::from(const AidwParams& params) noexcept {
  AlphaModel m{};
  for (std::size_t i = 0; i < 5; ++i) m.levels[i] = static_cast<T>(params.alpha_levels[i]);
  m.r_min = static_cast<T>(params.r_min);
  m.r_max = static_cast<T>(params.r_max);
  return m;
}

template <std::floating_point T>
T expected_nn_distance(std::size_t m, T area) {
  if (!(area > T(0))) throw Error(ErrorCode::InvalidArea, "study area must be positive");
  if (m < 1) throw Error(ErrorCode::InsufficientData, "expected distance needs at least one point");
  return T(1) / (T(2) * std::sqrt(static_cast<T>(m) / area));
}

template <std::floating_point T>
T observed_nn_distance(std::span<const T> dists) {
  if (dists.empty()) throw Error(ErrorCode::EmptyNeighborhood, "no neighbour distances");
  T sum = T(0);
  for (T d : dists) sum = sum + d;
  return sum / static_cast<T>(dists.size());
}

template <std::floating_point T>
T nn_statistic(T r_obs, T r_exp) {
  if (!(r_exp > T(0))) throw Error(ErrorCode::InvalidExpectedDistance, "expected distance must be positive");
  return r_obs / r_exp;
}

template <std::floating_point T>
T normalize_statistic(T R, T r_min, T r_max) {
  if (!(r_min < r_max)) throw Error(ErrorCode::InvalidBounds, "r_min must be below r_max");
  if (R <= r_min) return T(0);
  if (R >= r_max) return T(1);
  const T x = (R - r_min) / r_max;
  return T(0.5) - T(0.5) * std::sin(std::numbers::pi_v<T> * (T(0.5) - x));
}

namespace {

template <std::floating_point T>
constexpr std::array<T, 5> breakpoints{T(0.1), T(0.3), T(0.5), T(0.7), T(0.9)};

}  // namespace

template <std::floating_point T>
T decay_segment(std::size_t row, T mu, const std::array<T, 5>& levels) noexcept {
  if (row == 0) return levels[0];
  if (row >= 5) return levels[4];
  const T lo = breakpoints<T>[row - 1];
  const T a = levels[row - 1];
  const T b = levels[row];
  const T t = std::clamp(T(5) * (mu - lo), T(0), T(1));
  // lerp form: collapses to exactly a when a == b.
  return a + t * (b - a);
}

template <std::floating_point T>
T decay_parameter(T mu, const std::array<T, 5>& levels) {
  constexpr T slack = T(1e-9);
  if (!(mu >= -slack && mu <= T(1) + slack)) {
    throw Error(ErrorCode::InvalidMu, "membership value outside [0, 1]");
  }
  mu = std::clamp(mu, T(0), T(1));
  std::size_t row = 0;
  while (row < 5 && mu >= breakpoints<T>[row]) ++row;
  return decay_segment(row, mu, levels);
}

template <std::floating_point T>
AlphaTrace<T> alpha_from_neighbors(std::span<const T> dists, T r_exp, const AlphaModel<T>& model) {
  AlphaTrace<T> t{};
  t.r_exp = r_exp;
  t.r_obs = observed_nn_distance(dists);
  t.R = nn_statistic(t.r_obs, r_exp);
  t.mu = normalize_statistic(t.R, model.r_min, model.r_max);
  t.alpha = decay_parameter(t.mu, model.levels);
  return t;
}

template <std::floating_point T>
T resolve_area(const PointCloud<T>& cloud, const AidwParams& params) {
  if (params.area) {
    if (!(*params.area > 0.0)) throw Error(ErrorCode::InvalidArea, "study area must be positive");
    return static_cast<T>(*params.area);
  }
  return bounding_area(cloud);
}

template <std::floating_point T>
AlphaTrace<T> adaptive_alpha(const PointCloud<T>& cloud, const QueryPoint<T>& query, const AidwParams& params) {
  params.validate();
  const auto dists = nearest_k_distances(cloud, query, params.k);
  const T r_exp = expected_nn_distance(cloud.size(), resolve_area(cloud, params));
  return alpha_from_neighbors<T>(dists, r_exp, AlphaModel<T>::from(params));
}

#define AIDW_INSTANTIATE_ADAPTIVE(T)                                                                 \
  template struct AlphaModel<T>;                                                                     \
  template T expected_nn_distance(std::size_t, T);                                                   \
  template T observed_nn_distance(std::span<const T>);                                               \
  template T nn_statistic(T, T);                                                                     \
  template T normalize_statistic(T, T, T);                                                           \
  template T decay_segment(std::size_t, T, const std::array<T, 5>&) noexcept;                        \
  template T decay_parameter(T, const std::array<T, 5>&);                                            \
  template AlphaTrace<T> alpha_from_neighbors(std::span<const T>, T, const AlphaModel<T>&);          \
  template T resolve_area(const PointCloud<T>&, const AidwParams&);                                  \
  template AlphaTrace<T> adaptive_alpha(const PointCloud<T>&, const QueryPoint<T>&, const AidwParams&);

AIDW_INSTANTIATE_ADAPTIVE(float)
AIDW_INSTANTIATE_ADAPTIVE(double)

}  // namespace aidw
