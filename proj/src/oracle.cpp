#include "aidw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aidw::oracle {

template <std::floating_point T>
std::vector<T> knn_full_sort(std::span<const Sample<T>> samples, QueryPoint<T> query, std::size_t k) {
  std::vector<T> all;
  all.reserve(samples.size());
  for (const auto& s : samples) {
    const T dx = query.x - s.x;
    const T dy = query.y - s.y;
    all.push_back(std::sqrt(dx * dx + dy * dy));
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min(k, all.size()));
  return all;
}

template std::vector<float> knn_full_sort(std::span<const Sample<float>>, QueryPoint<float>, std::size_t);
template std::vector<double> knn_full_sort(std::span<const Sample<double>>, QueryPoint<double>, std::size_t);

double idw_direct(std::span<const Sample<double>> samples, QueryPoint<double> query, double alpha, double tol) {
  double best = INFINITY;
  double best_value = 0.0;
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : samples) {
    const double d = std::hypot(query.x - s.x, query.y - s.y);
    if (d < best) {
      best = d;
      best_value = s.value;
    }
    const double w = 1.0 / std::pow(d, alpha);
    num += w * s.value;
    den += w;
  }
  if (best < tol) return best_value;
  return num / den;
}

double decay_literal(double mu, const std::array<double, 5>& a) {
  if (mu <= 0.1) return a[0];
  if (mu <= 0.3) return a[0] * (1.0 - 5.0 * (mu - 0.1)) + 5.0 * a[1] * (mu - 0.1);
  if (mu <= 0.5) return 5.0 * a[2] * (mu - 0.3) + a[1] * (1.0 - 5.0 * (mu - 0.3));
  if (mu <= 0.7) return a[2] * (1.0 - 5.0 * (mu - 0.5)) + 5.0 * a[3] * (mu - 0.5);
  if (mu <= 0.9) return 5.0 * a[4] * (mu - 0.7) + a[3] * (1.0 - 5.0 * (mu - 0.7));
  return a[4];
}

AidwReference aidw_direct(std::span<const Sample<double>> samples, QueryPoint<double> query,
                          const AidwParams& params, double area) {
  AidwReference ref{};
  const auto near = knn_full_sort(samples, query, params.k);
  double sum = 0.0;
  for (double d : near) sum += d;
  ref.r_obs = sum / static_cast<double>(near.size());
  ref.r_exp = 1.0 / (2.0 * std::sqrt(static_cast<double>(samples.size()) / area));
  ref.R = ref.r_obs / ref.r_exp;
  if (ref.R <= params.r_min) {
    ref.mu = 0.0;
  } else if (ref.R >= params.r_max) {
    ref.mu = 1.0;
  } else {
    ref.mu = 0.5 - 0.5 * std::cos(std::numbers::pi / params.r_max * (ref.R - params.r_min));
  }
  ref.alpha = decay_literal(ref.mu, params.alpha_levels);
  const double tol = params.zero_dist_tol.value_or(1e-12);
  ref.value = idw_direct(samples, query, ref.alpha, tol);
  return ref;
}

}  // namespace aidw::oracle
