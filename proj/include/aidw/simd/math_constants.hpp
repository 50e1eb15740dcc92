#pragma once

// Constants shared by the scalar reference math and the vector kernels.
// Both paths evaluate the same operation sequence with these values, which is
// what makes their results bit-identical.

#include <array>
#include <cstddef>
#include <cstdint>

namespace aidw::simd {

namespace detail {

template <std::size_t N>
constexpr std::array<double, N> inverse_factorials() {
  std::array<double, N> out{};
  double f = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) f *= static_cast<double>(i);
    out[i] = 1.0 / f;
  }
  return out;
}

// 1/3, 1/5, 1/7, ... (atanh series tail)
template <std::size_t N>
constexpr std::array<double, N> inverse_odds() {
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = 1.0 / static_cast<double>(2 * i + 3);
  return out;
}

template <typename T, std::size_t N>
constexpr std::array<T, N> narrow(const std::array<double, N>& in) {
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<T>(in[i]);
  return out;
}

}  // namespace detail

template <typename T>
struct MathConst;

template <>
struct MathConst<double> {
  using Bits = std::uint64_t;
  static constexpr int mantissa_bits = 52;
  static constexpr int exponent_bias = 1023;
  static constexpr Bits mantissa_mask = 0x000FFFFFFFFFFFFFull;
  static constexpr Bits one_bits = 0x3FF0000000000000ull;

  // Cody-Waite split; ln2_hi has enough trailing zero bits that n * ln2_hi is exact.
  static constexpr double ln2_hi = 6.93147180369123816490e-01;
  static constexpr double ln2_lo = 1.90821492927058770002e-10;
  static constexpr double inv_ln2 = 1.44269504088896338700e+00;
  static constexpr double exp_overflow = 7.09782712893383973096e+02;
  static constexpr double exp_underflow = -7.45133219101941108420e+02;

  static constexpr double sqrt2 = 1.41421356237309504880;
  static constexpr double min_normal = 2.2250738585072014e-308;
  static constexpr double subnormal_scale = 18014398509481984.0;  // 2^54
  static constexpr double subnormal_shift = 54.0;

  // Veltkamp splitter 2^27 + 1; inputs above split_limit would overflow.
  static constexpr double splitter = 134217729.0;

  static constexpr auto exp_coef = detail::inverse_factorials<14>();
  static constexpr auto log_coef = detail::inverse_odds<11>();
};

template <>
struct MathConst<float> {
  using Bits = std::uint32_t;
  static constexpr int mantissa_bits = 23;
  static constexpr int exponent_bias = 127;
  static constexpr Bits mantissa_mask = 0x007FFFFFu;
  static constexpr Bits one_bits = 0x3F800000u;

  static constexpr float ln2_hi = 0.693359375f;
  static constexpr float ln2_lo = -2.12194440e-4f;
  static constexpr float inv_ln2 = 1.44269504088896341f;
  static constexpr float exp_overflow = 88.7228391f;
  static constexpr float exp_underflow = -103.972076f;

  static constexpr float sqrt2 = 1.41421356237309504880f;
  static constexpr float min_normal = 1.17549435e-38f;
  static constexpr float subnormal_scale = 33554432.0f;  // 2^25
  static constexpr float subnormal_shift = 25.0f;

  static constexpr float splitter = 4097.0f;  // 2^12 + 1

  static constexpr auto exp_coef = detail::narrow<float>(detail::inverse_factorials<9>());
  static constexpr auto log_coef = detail::narrow<float>(detail::inverse_odds<6>());
};

}  // namespace aidw::simd
