#pragma once

// Query-lane tile kernels. Each kernel processes a group of queries against a
// tile of data points; vector variants map one query to one lane so that every
// query still accumulates over data points in ascending index order. Every
// variant must produce bit-identical output to the scalar one.

#include <cstddef>
#include <string_view>

namespace aidw::simd {

/// Strided read-only view over data samples. SoA clouds use stride 1 with three
/// separate arrays; AoS clouds point into one interleaved record array with
/// stride 3.
template <typename T>
struct DataView {
  const T* x = nullptr;
  const T* y = nullptr;
  const T* value = nullptr;
  std::size_t stride = 1;
  std::size_t count = 0;

  DataView slice(std::size_t begin, std::size_t end) const noexcept {
    const std::size_t off = begin * stride;
    return {x + off, y + off, value + off, stride, end - begin};
  }
};

/// Per-query running state of the weighting pass.
template <typename T>
struct WeightState {
  T* sum_w;
  T* comp_w;   // compensation term of sum_w
  T* sum_wz;
  T* comp_wz;  // compensation term of sum_wz
  T* min_d;    // nearest distance seen so far (first index wins ties)
  T* min_z;    // value of that sample
};

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

template <typename T>
struct KernelTable {
  Isa isa;
  std::size_t lanes;

  /// For each of the nq queries, offers every tile distance to that query's
  /// sorted k-buffer at buffers[q * k, (q + 1) * k) in index order. A candidate
  /// enters only if strictly smaller than the current k-th distance.
  void (*knn_tile)(const T* qx, const T* qy, std::size_t nq, DataView<T> tile, T* buffers,
                   std::size_t k);

  /// Accumulates w = d^-alpha and w * value over the tile into state, and
  /// tracks the nearest sample. neg_alpha[q] holds -alpha for query q.
  void (*weight_tile)(const T* qx, const T* qy, const T* neg_alpha, std::size_t nq,
                      DataView<T> tile, WeightState<T> state);
};

bool isa_supported(Isa isa) noexcept;

/// Best ISA for this CPU. The AIDW_ISA environment variable (scalar|avx2) overrides.
Isa detect_isa() noexcept;

/// Throws Error(UnsupportedIsa) if the CPU cannot run `isa`.
template <typename T>
const KernelTable<T>& kernels(Isa isa);

template <typename T>
const KernelTable<T>& best_kernels() {
  return kernels<T>(detect_isa());
}

namespace scalar {
template <typename T>
const KernelTable<T>& table() noexcept;
}

namespace avx2 {
template <typename T>
const KernelTable<T>& table() noexcept;
}

}  // namespace aidw::simd
