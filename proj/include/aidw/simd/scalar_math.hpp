#pragma once

// Scalar reference math. The AVX2 kernels reproduce these operation sequences
// lane by lane; keep the two in sync (the equivalence tests will catch drift).
//
// Must not be included from translation units compiled with extra ISA flags.

#include <bit>
#include <cmath>
#include <concepts>
#include <limits>

#include "aidw/simd/math_constants.hpp"

namespace aidw::simd::scalar {

template <std::floating_point T>
inline T distance(T qx, T qy, T x, T y) {
  const T dx = qx - x;
  const T dy = qy - y;
  return std::sqrt(dx * dx + dy * dy);
}

template <std::floating_point T>
inline T pow2i(int n) {
  using C = MathConst<T>;
  using Bits = typename C::Bits;
  return std::bit_cast<T>(static_cast<Bits>(n + C::exponent_bias) << C::mantissa_bits);
}

/// exp(x) by Cody-Waite reduction and a Taylor polynomial. About 1 ulp.
template <std::floating_point T>
inline T exp(T x) {
  using C = MathConst<T>;
  if (x != x) return x;
  if (x > C::exp_overflow) return std::numeric_limits<T>::infinity();
  if (x < C::exp_underflow) return T(0);

  const T fn = std::nearbyint(x * C::inv_ln2);
  const T r = (x - fn * C::ln2_hi) - fn * C::ln2_lo;

  constexpr auto& c = C::exp_coef;
  T p = c[c.size() - 1];
  for (std::size_t i = c.size() - 1; i-- > 0;) p = p * r + c[i];

  // Two-step scaling keeps both factors normal over the whole accepted range.
  const int n = static_cast<int>(fn);
  const int n1 = n >> 1;
  const int n2 = n - n1;
  return (p * pow2i<T>(n1)) * pow2i<T>(n2);
}

/// Natural log via exponent split and the atanh series on [sqrt(1/2), sqrt(2)].
template <std::floating_point T>
inline T log(T x) {
  using C = MathConst<T>;
  using Bits = typename C::Bits;
  if (x != x || x < T(0)) return std::numeric_limits<T>::quiet_NaN();
  if (x == T(0)) return -std::numeric_limits<T>::infinity();
  if (x == std::numeric_limits<T>::infinity()) return x;

  T shift = T(0);
  if (x < C::min_normal) {
    x = x * C::subnormal_scale;
    shift = C::subnormal_shift;
  }
  const Bits bits = std::bit_cast<Bits>(x);
  T e = static_cast<T>(static_cast<int>(bits >> C::mantissa_bits)) - static_cast<T>(C::exponent_bias);
  e = e - shift;
  T m = std::bit_cast<T>((bits & C::mantissa_mask) | C::one_bits);
  if (m > C::sqrt2) {
    m = m * T(0.5);
    e = e + T(1);
  }

  const T f = m - T(1);
  const T s = f / (m + T(1));
  const T z = s * s;
  constexpr auto& c = C::log_coef;
  T q = c[c.size() - 1];
  for (std::size_t i = c.size() - 1; i-- > 0;) q = q * z + c[i];
  const T t = (s * z) * q;
  const T log_m = (s + s) + (t + t);
  return e * C::ln2_hi + (e * C::ln2_lo + log_m);
}

/// d^-alpha evaluated as exp(-alpha * ln d); callers pass neg_alpha = -alpha.
template <std::floating_point T>
inline T inverse_power(T d, T neg_alpha) {
  return scalar::exp(neg_alpha * scalar::log(d));
}

// Error-free transforms. two_prod uses Veltkamp splitting rather than FMA so
// the vector kernels can repeat it on hardware without FMA. If the split
// overflows the error term is dropped.
template <std::floating_point T>
inline void two_sum(T a, T b, T& s, T& e) {
  s = a + b;
  const T bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

template <std::floating_point T>
inline void two_prod(T a, T b, T& p, T& e) {
  constexpr T k = MathConst<T>::splitter;
  p = a * b;
  const T ca = k * a;
  const T ah = ca - (ca - a);
  const T al = a - ah;
  const T cb = k * b;
  const T bh = cb - (cb - b);
  const T bl = b - bh;
  e = (((ah * bh - p) + ah * bl) + al * bh) + al * bl;
  if (!(std::fabs(e) < std::numeric_limits<T>::infinity())) e = T(0);
}

/// Running sums of w and w*z, each kept as a value plus compensation term.
template <std::floating_point T>
struct WeightSums {
  T sw = T(0);
  T cw = T(0);
  T swz = T(0);
  T cwz = T(0);

  void add(T w, T z) {
    T t;
    two_sum(sw, w, sw, t);
    cw = cw + t;
    T p, pe;
    two_prod(w, z, p, pe);
    two_sum(swz, p, swz, t);
    cwz = cwz + (t + pe);
  }

  /// (swz + cwz) / (sw + cw) with one remainder correction.
  T mean() const {
    T nh, nl, dh, dl;
    two_sum(swz, cwz, nh, nl);
    two_sum(sw, cw, dh, dl);
    const T q = nh / dh;
    T ph, pl;
    two_prod(q, dh, ph, pl);
    const T r = (((nh - ph) - pl) + nl) - q * dl;
    return q + r / dh;
  }
};

}  // namespace aidw::simd::scalar
