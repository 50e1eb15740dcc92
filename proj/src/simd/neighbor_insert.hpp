#pragma once

// Private header shared by translation units built with different ISA flags,
// hence internal linkage.

#include <cstddef>

namespace aidw::simd::detail {

/// Replace-then-settle insertion into an ascending buffer of k distances.
/// A candidate not strictly below the k-th distance is rejected.
template <typename T>
static inline bool bubble_insert(T* buf, std::size_t k, T dist) {
  if (!(dist < buf[k - 1])) return false;
  buf[k - 1] = dist;
  for (std::size_t i = k - 1; i > 0 && buf[i] < buf[i - 1]; --i) {
    const T tmp = buf[i - 1];
    buf[i - 1] = buf[i];
    buf[i] = tmp;
  }
  return true;
}

}  // namespace aidw::simd::detail
