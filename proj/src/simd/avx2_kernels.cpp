// AVX2 query-lane kernels. Built with -mavx2 only: no FMA, so every lane
// performs exactly the rounding sequence of scalar_math.hpp.

#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "aidw/simd/kernels.hpp"
#include "aidw/simd/math_constants.hpp"
#include "neighbor_insert.hpp"

namespace aidw::simd::avx2 {

namespace {

template <typename T>
struct Vec;

template <>
struct Vec<double> {
  using reg = __m256d;
  static constexpr std::size_t lanes = 4;

  static reg set1(double v) { return _mm256_set1_pd(v); }
  static reg load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, reg v) { _mm256_storeu_pd(p, v); }
  static reg add(reg a, reg b) { return _mm256_add_pd(a, b); }
  static reg sub(reg a, reg b) { return _mm256_sub_pd(a, b); }
  static reg mul(reg a, reg b) { return _mm256_mul_pd(a, b); }
  static reg div(reg a, reg b) { return _mm256_div_pd(a, b); }
  static reg sqrt(reg a) { return _mm256_sqrt_pd(a); }
  static reg min(reg a, reg b) { return _mm256_min_pd(a, b); }
  static reg max(reg a, reg b) { return _mm256_max_pd(a, b); }
  static reg round(reg a) { return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }
  static reg lt(reg a, reg b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
  static reg gt(reg a, reg b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
  static reg eq(reg a, reg b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
  static reg unord(reg a) { return _mm256_cmp_pd(a, a, _CMP_UNORD_Q); }
  static reg mask_and(reg m, reg v) { return _mm256_and_pd(m, v); }
  static reg mask_or(reg a, reg b) { return _mm256_or_pd(a, b); }
  // m ? b : a
  static reg select(reg a, reg b, reg m) { return _mm256_blendv_pd(a, b, m); }
  static int movemask(reg m) { return _mm256_movemask_pd(m); }

  // Biased exponent field as an exact double.
  static reg exponent_field(reg x) {
    const __m256i e = _mm256_srli_epi64(_mm256_castpd_si256(x), 52);
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(e, magic)), _mm256_set1_pd(4503599627370496.0));
  }
  static reg mantissa_in_one_two(reg x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i m = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll));
    return _mm256_castsi256_pd(_mm256_or_si256(m, _mm256_set1_epi64x(0x3FF0000000000000ll)));
  }
  // 2^(n >> 1) and 2^(n - (n >> 1)) for integral-valued fn.
  static void split_pow2(reg fn, reg& lo, reg& hi) {
    const __m128i n = _mm256_cvtpd_epi32(fn);
    const __m128i n1 = _mm_srai_epi32(n, 1);
    const __m128i n2 = _mm_sub_epi32(n, n1);
    const __m128i bias = _mm_set1_epi32(1023);
    lo = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_cvtepi32_epi64(_mm_add_epi32(n1, bias)), 52));
    hi = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_cvtepi32_epi64(_mm_add_epi32(n2, bias)), 52));
  }
};

template <>
struct Vec<float> {
  using reg = __m256;
  static constexpr std::size_t lanes = 8;

  static reg set1(float v) { return _mm256_set1_ps(v); }
  static reg load(const float* p) { return _mm256_loadu_ps(p); }
  static void store(float* p, reg v) { _mm256_storeu_ps(p, v); }
  static reg add(reg a, reg b) { return _mm256_add_ps(a, b); }
  static reg sub(reg a, reg b) { return _mm256_sub_ps(a, b); }
  static reg mul(reg a, reg b) { return _mm256_mul_ps(a, b); }
  static reg div(reg a, reg b) { return _mm256_div_ps(a, b); }
  static reg sqrt(reg a) { return _mm256_sqrt_ps(a); }
  static reg min(reg a, reg b) { return _mm256_min_ps(a, b); }
  static reg max(reg a, reg b) { return _mm256_max_ps(a, b); }
  static reg round(reg a) { return _mm256_round_ps(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }
  static reg lt(reg a, reg b) { return _mm256_cmp_ps(a, b, _CMP_LT_OQ); }
  static reg gt(reg a, reg b) { return _mm256_cmp_ps(a, b, _CMP_GT_OQ); }
  static reg eq(reg a, reg b) { return _mm256_cmp_ps(a, b, _CMP_EQ_OQ); }
  static reg unord(reg a) { return _mm256_cmp_ps(a, a, _CMP_UNORD_Q); }
  static reg mask_and(reg m, reg v) { return _mm256_and_ps(m, v); }
  static reg mask_or(reg a, reg b) { return _mm256_or_ps(a, b); }
  static reg select(reg a, reg b, reg m) { return _mm256_blendv_ps(a, b, m); }
  static int movemask(reg m) { return _mm256_movemask_ps(m); }

  static reg exponent_field(reg x) {
    return _mm256_cvtepi32_ps(_mm256_srli_epi32(_mm256_castps_si256(x), 23));
  }
  static reg mantissa_in_one_two(reg x) {
    const __m256i bits = _mm256_castps_si256(x);
    const __m256i m = _mm256_and_si256(bits, _mm256_set1_epi32(0x007FFFFF));
    return _mm256_castsi256_ps(_mm256_or_si256(m, _mm256_set1_epi32(0x3F800000)));
  }
  static void split_pow2(reg fn, reg& lo, reg& hi) {
    const __m256i n = _mm256_cvtps_epi32(fn);
    const __m256i n1 = _mm256_srai_epi32(n, 1);
    const __m256i n2 = _mm256_sub_epi32(n, n1);
    const __m256i bias = _mm256_set1_epi32(127);
    lo = _mm256_castsi256_ps(_mm256_slli_epi32(_mm256_add_epi32(n1, bias), 23));
    hi = _mm256_castsi256_ps(_mm256_slli_epi32(_mm256_add_epi32(n2, bias), 23));
  }
};

template <typename T>
typename Vec<T>::reg vexp(typename Vec<T>::reg x) {
  using V = Vec<T>;
  using C = MathConst<T>;
  const auto xc = V::min(V::max(x, V::set1(C::exp_underflow)), V::set1(C::exp_overflow));
  const auto fn = V::round(V::mul(xc, V::set1(C::inv_ln2)));
  const auto r = V::sub(V::sub(xc, V::mul(fn, V::set1(C::ln2_hi))), V::mul(fn, V::set1(C::ln2_lo)));

  constexpr auto& c = C::exp_coef;
  auto p = V::set1(c[c.size() - 1]);
  for (std::size_t i = c.size() - 1; i-- > 0;) p = V::add(V::mul(p, r), V::set1(c[i]));

  typename V::reg lo, hi;
  V::split_pow2(fn, lo, hi);
  auto res = V::mul(V::mul(p, lo), hi);

  res = V::select(res, V::set1(std::numeric_limits<T>::infinity()), V::gt(x, V::set1(C::exp_overflow)));
  res = V::select(res, V::set1(T(0)), V::lt(x, V::set1(C::exp_underflow)));
  res = V::select(res, x, V::unord(x));
  return res;
}

template <typename T>
typename Vec<T>::reg vlog(typename Vec<T>::reg x) {
  using V = Vec<T>;
  using C = MathConst<T>;
  const auto sub = V::lt(x, V::set1(C::min_normal));
  const auto xs = V::select(x, V::mul(x, V::set1(C::subnormal_scale)), sub);
  const auto shift = V::mask_and(sub, V::set1(C::subnormal_shift));

  auto e = V::sub(V::exponent_field(xs), V::set1(static_cast<T>(C::exponent_bias)));
  e = V::sub(e, shift);
  auto m = V::mantissa_in_one_two(xs);
  const auto big = V::gt(m, V::set1(C::sqrt2));
  m = V::select(m, V::mul(m, V::set1(T(0.5))), big);
  e = V::select(e, V::add(e, V::set1(T(1))), big);

  const auto one = V::set1(T(1));
  const auto f = V::sub(m, one);
  const auto s = V::div(f, V::add(m, one));
  const auto z = V::mul(s, s);
  constexpr auto& c = C::log_coef;
  auto q = V::set1(c[c.size() - 1]);
  for (std::size_t i = c.size() - 1; i-- > 0;) q = V::add(V::mul(q, z), V::set1(c[i]));
  const auto t = V::mul(V::mul(s, z), q);
  const auto log_m = V::add(V::add(s, s), V::add(t, t));
  auto res = V::add(V::mul(e, V::set1(C::ln2_hi)), V::add(V::mul(e, V::set1(C::ln2_lo)), log_m));

  const auto zero = V::set1(T(0));
  const auto inf = V::set1(std::numeric_limits<T>::infinity());
  res = V::select(res, V::set1(-std::numeric_limits<T>::infinity()), V::eq(x, zero));
  res = V::select(res, inf, V::eq(x, inf));
  res = V::select(res, V::set1(std::numeric_limits<T>::quiet_NaN()), V::mask_or(V::lt(x, zero), V::unord(x)));
  return res;
}

template <typename T>
void knn_tile(const T* qx, const T* qy, std::size_t nq, DataView<T> tile, T* buffers, std::size_t k) {
  using V = Vec<T>;
  constexpr std::size_t L = V::lanes;
  alignas(32) T gx[L], gy[L], kth[L], dl[L];

  for (std::size_t q0 = 0; q0 < nq; q0 += L) {
    const std::size_t active = nq - q0 < L ? nq - q0 : L;
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t q = q0 + (l < active ? l : 0);
      gx[l] = qx[q];
      gy[l] = qy[q];
      // Inactive lanes can never accept a candidate.
      kth[l] = l < active ? buffers[q * k + k - 1] : -std::numeric_limits<T>::infinity();
    }
    const auto vx = V::load(gx);
    const auto vy = V::load(gy);
    auto vkth = V::load(kth);

    for (std::size_t j = 0; j < tile.count; ++j) {
      const std::size_t o = j * tile.stride;
      const auto dx = V::sub(vx, V::set1(tile.x[o]));
      const auto dy = V::sub(vy, V::set1(tile.y[o]));
      const auto d = V::sqrt(V::add(V::mul(dx, dx), V::mul(dy, dy)));
      int hits = V::movemask(V::lt(d, vkth));
      if (hits == 0) continue;
      V::store(dl, d);
      while (hits != 0) {
        const int l = __builtin_ctz(static_cast<unsigned>(hits));
        hits &= hits - 1;
        T* buf = buffers + (q0 + static_cast<std::size_t>(l)) * k;
        detail::bubble_insert(buf, k, dl[l]);
        kth[l] = buf[k - 1];
      }
      vkth = V::load(kth);
    }
  }
}

// Vector copies of scalar::two_sum / two_prod / WeightSums, same op order.
template <typename T>
void vtwo_sum(typename Vec<T>::reg a, typename Vec<T>::reg b, typename Vec<T>::reg& s, typename Vec<T>::reg& e) {
  using V = Vec<T>;
  s = V::add(a, b);
  const auto bb = V::sub(s, a);
  e = V::add(V::sub(a, V::sub(s, bb)), V::sub(b, bb));
}

template <typename T>
void vtwo_prod(typename Vec<T>::reg a, typename Vec<T>::reg b, typename Vec<T>::reg& p, typename Vec<T>::reg& e) {
  using V = Vec<T>;
  const auto k = V::set1(MathConst<T>::splitter);
  p = V::mul(a, b);
  const auto ca = V::mul(k, a);
  const auto ah = V::sub(ca, V::sub(ca, a));
  const auto al = V::sub(a, ah);
  const auto cb = V::mul(k, b);
  const auto bh = V::sub(cb, V::sub(cb, b));
  const auto bl = V::sub(b, bh);
  e = V::add(V::add(V::add(V::sub(V::mul(ah, bh), p), V::mul(ah, bl)), V::mul(al, bh)), V::mul(al, bl));
  const auto inf = V::set1(std::numeric_limits<T>::infinity());
  e = V::mask_and(V::mask_and(V::lt(e, inf), V::gt(e, V::sub(V::set1(T(0)), inf))), e);
}

template <typename T>
void weight_tile(const T* qx, const T* qy, const T* neg_alpha, std::size_t nq, DataView<T> tile,
                 WeightState<T> st) {
  using V = Vec<T>;
  constexpr std::size_t L = V::lanes;
  alignas(32) T gx[L], gy[L], ga[L], sw[L], cw[L], swz[L], cwz[L], mind[L], minz[L];

  for (std::size_t q0 = 0; q0 < nq; q0 += L) {
    const std::size_t active = nq - q0 < L ? nq - q0 : L;
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t q = q0 + (l < active ? l : 0);
      gx[l] = qx[q];
      gy[l] = qy[q];
      ga[l] = neg_alpha[q];
      sw[l] = st.sum_w[q];
      cw[l] = st.comp_w[q];
      swz[l] = st.sum_wz[q];
      cwz[l] = st.comp_wz[q];
      mind[l] = st.min_d[q];
      minz[l] = st.min_z[q];
    }
    const auto vx = V::load(gx);
    const auto vy = V::load(gy);
    const auto va = V::load(ga);
    auto vsw = V::load(sw);
    auto vcw = V::load(cw);
    auto vswz = V::load(swz);
    auto vcwz = V::load(cwz);
    auto vmind = V::load(mind);
    auto vminz = V::load(minz);

    for (std::size_t j = 0; j < tile.count; ++j) {
      const std::size_t o = j * tile.stride;
      const auto z = V::set1(tile.value[o]);
      const auto dx = V::sub(vx, V::set1(tile.x[o]));
      const auto dy = V::sub(vy, V::set1(tile.y[o]));
      const auto d = V::sqrt(V::add(V::mul(dx, dx), V::mul(dy, dy)));
      const auto closer = V::lt(d, vmind);
      vmind = V::select(vmind, d, closer);
      vminz = V::select(vminz, z, closer);
      const auto w = vexp<T>(V::mul(va, vlog<T>(d)));
      typename V::reg t, p, pe;
      vtwo_sum<T>(vsw, w, vsw, t);
      vcw = V::add(vcw, t);
      vtwo_prod<T>(w, z, p, pe);
      vtwo_sum<T>(vswz, p, vswz, t);
      vcwz = V::add(vcwz, V::add(t, pe));
    }

    V::store(sw, vsw);
    V::store(cw, vcw);
    V::store(swz, vswz);
    V::store(cwz, vcwz);
    V::store(mind, vmind);
    V::store(minz, vminz);
    for (std::size_t l = 0; l < active; ++l) {
      st.sum_w[q0 + l] = sw[l];
      st.comp_w[q0 + l] = cw[l];
      st.sum_wz[q0 + l] = swz[l];
      st.comp_wz[q0 + l] = cwz[l];
      st.min_d[q0 + l] = mind[l];
      st.min_z[q0 + l] = minz[l];
    }
  }
}

}  // namespace

template <typename T>
const KernelTable<T>& table() noexcept {
  static const KernelTable<T> t{Isa::Avx2, Vec<T>::lanes, &knn_tile<T>, &weight_tile<T>};
  return t;
}

template const KernelTable<float>& table<float>() noexcept;
template const KernelTable<double>& table<double>() noexcept;

}  // namespace aidw::simd::avx2
