#pragma once

// Straight-line reference implementations, deliberately independent of the
// engines: full sort instead of the insertion buffer, std::pow instead of the
// exp/log kernels, the cosine and the membership rows written out literally.

#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "aidw/types.hpp"

namespace aidw::oracle {

/// All m distances, fully sorted, first k kept.
template <std::floating_point T>
std::vector<T> knn_full_sort(std::span<const Sample<T>> samples, QueryPoint<T> query, std::size_t k);

/// Shepard average in double with std::pow; nearest sample wins within tol.
double idw_direct(std::span<const Sample<double>> samples, QueryPoint<double> query, double alpha, double tol);

struct AidwReference {
  double value;
  double r_exp;
  double r_obs;
  double R;
  double mu;
  double alpha;
};

/// Membership rows evaluated in their literal two-term form.
double decay_literal(double mu, const std::array<double, 5>& a);

/// Whole adaptive pipeline in double; `area` must already be resolved.
AidwReference aidw_direct(std::span<const Sample<double>> samples, QueryPoint<double> query,
                          const AidwParams& params, double area);

}  // namespace aidw::oracle
