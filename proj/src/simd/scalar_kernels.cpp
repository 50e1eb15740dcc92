#include "aidw/simd/kernels.hpp"
#include "aidw/simd/scalar_math.hpp"
#include "neighbor_insert.hpp"

namespace aidw::simd::scalar {

namespace {

template <typename T>
void knn_tile(const T* qx, const T* qy, std::size_t nq, DataView<T> tile, T* buffers,
              std::size_t k) {
  for (std::size_t q = 0; q < nq; ++q) {
    T* buf = buffers + q * k;
    for (std::size_t j = 0; j < tile.count; ++j) {
      const std::size_t o = j * tile.stride;
      const T d = distance(qx[q], qy[q], tile.x[o], tile.y[o]);
      detail::bubble_insert(buf, k, d);
    }
  }
}

template <typename T>
void weight_tile(const T* qx, const T* qy, const T* neg_alpha, std::size_t nq, DataView<T> tile,
                 WeightState<T> st) {
  for (std::size_t q = 0; q < nq; ++q) {
    WeightSums<T> acc{st.sum_w[q], st.comp_w[q], st.sum_wz[q], st.comp_wz[q]};
    T min_d = st.min_d[q];
    T min_z = st.min_z[q];
    for (std::size_t j = 0; j < tile.count; ++j) {
      const std::size_t o = j * tile.stride;
      const T z = tile.value[o];
      const T d = distance(qx[q], qy[q], tile.x[o], tile.y[o]);
      if (d < min_d) {
        min_d = d;
        min_z = z;
      }
      acc.add(inverse_power(d, neg_alpha[q]), z);
    }
    st.sum_w[q] = acc.sw;
    st.comp_w[q] = acc.cw;
    st.sum_wz[q] = acc.swz;
    st.comp_wz[q] = acc.cwz;
    st.min_d[q] = min_d;
    st.min_z[q] = min_z;
  }
}

}  // namespace

template <typename T>
const KernelTable<T>& table() noexcept {
  static const KernelTable<T> t{Isa::Scalar, 1, &knn_tile<T>, &weight_tile<T>};
  return t;
}

template const KernelTable<float>& table<float>() noexcept;
template const KernelTable<double>& table<double>() noexcept;

}  // namespace aidw::simd::scalar
