#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "aidw/error.hpp"
#include "aidw/io.hpp"
#include "aidw/simd/kernels.hpp"
#include "aidw/simd/scalar_math.hpp"
#include "helpers.hpp"

using namespace aidw;
namespace sm = aidw::simd::scalar;

namespace {

template <typename T>
std::int64_t ulp_distance(T a, T b) {
  using I = std::conditional_t<sizeof(T) == 8, std::int64_t, std::int32_t>;
  auto ordered = [](T v) {
    const I i = std::bit_cast<I>(v);
    return static_cast<std::int64_t>(i < 0 ? std::numeric_limits<I>::min() - i : i);
  };
  const std::int64_t d = ordered(a) - ordered(b);
  return d < 0 ? -d : d;
}

// Worst ulp error of the in-house functions against libm over a seeded sweep.
template <typename T>
std::int64_t worst_ulp(bool log_fn, double lo, double hi, bool log_scale) {
  io::SplitMix64 rng(99);
  std::int64_t worst = 0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    const T x = static_cast<T>(log_scale ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) : lo + u * (hi - lo));
    const T got = log_fn ? sm::log(x) : sm::exp(x);
    const T want = log_fn ? std::log(x) : std::exp(x);
    worst = std::max(worst, ulp_distance(got, want));
  }
  return worst;
}

template <typename T>
struct Fixture {
  std::vector<T> data_x, data_y, data_v, qx, qy, neg_alpha;
  explicit Fixture(std::size_t m, std::size_t nq, std::uint64_t seed) {
    io::SplitMix64 rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
      data_x.push_back(static_cast<T>(rng.uniform() * 50));
      data_y.push_back(static_cast<T>(rng.uniform() * 50));
      data_v.push_back(static_cast<T>(rng.uniform() * 100));
    }
    for (std::size_t i = 0; i < nq; ++i) {
      qx.push_back(static_cast<T>(rng.uniform() * 50));
      qy.push_back(static_cast<T>(rng.uniform() * 50));
      neg_alpha.push_back(static_cast<T>(-(0.5 + 3.0 * rng.uniform())));
    }
    // A query sitting exactly on a sample exercises d = 0.
    qx[0] = data_x[3];
    qy[0] = data_y[3];
  }
  simd::DataView<T> view() const { return {data_x.data(), data_y.data(), data_v.data(), 1, data_x.size()}; }
};

template <typename T>
void check_kernels_agree() {
  if (!simd::isa_supported(simd::Isa::Avx2)) return;
  const auto& s = simd::kernels<T>(simd::Isa::Scalar);
  const auto& v = simd::kernels<T>(simd::Isa::Avx2);
  for (std::size_t nq : {1u, 3u, 8u, 13u, 37u}) {
    Fixture<T> f(700, nq, 1000 + nq);
    const std::size_t k = 7;
    std::vector<T> bs(nq * k, std::numeric_limits<T>::infinity()), bv = bs;
    std::vector<T> ws(nq, T(0)), cws(nq, T(0)), wzs(nq, T(0)), cwzs(nq, T(0));
    std::vector<T> mds(nq, std::numeric_limits<T>::infinity()), mzs(nq, T(0));
    auto wv = ws, cwv = cws, wzv = wzs, cwzv = cwzs, mdv = mds, mzv = mzs;
    for (std::size_t t0 = 0; t0 < 700; t0 += 64) {
      const auto tile = f.view().slice(t0, std::min<std::size_t>(700, t0 + 64));
      s.knn_tile(f.qx.data(), f.qy.data(), nq, tile, bs.data(), k);
      v.knn_tile(f.qx.data(), f.qy.data(), nq, tile, bv.data(), k);
      s.weight_tile(f.qx.data(), f.qy.data(), f.neg_alpha.data(), nq, tile, {ws.data(), cws.data(), wzs.data(), cwzs.data(), mds.data(), mzs.data()});
      v.weight_tile(f.qx.data(), f.qy.data(), f.neg_alpha.data(), nq, tile, {wv.data(), cwv.data(), wzv.data(), cwzv.data(), mdv.data(), mzv.data()});
    }
    CHECK(test::same_bits(bs, bv));
    CHECK(test::same_bits(ws, wv));
    CHECK(test::same_bits(wzs, wzv));
    CHECK(test::same_bits(cws, cwv));
    CHECK(test::same_bits(cwzs, cwzv));
    CHECK(test::same_bits(mds, mdv));
    CHECK(test::same_bits(mzs, mzv));
  }
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("exp and log stay within a few ulp of libm (double)") {
  CHECK(worst_ulp<double>(true, 1e-300, 1e300, true) <= 2);
  CHECK(worst_ulp<double>(true, 0.5, 2.0, false) <= 2);
  CHECK(worst_ulp<double>(false, -700.0, 700.0, false) <= 2);
  CHECK(worst_ulp<double>(false, -1.0, 1.0, false) <= 2);
}

TEST_CASE("exp and log stay within a few ulp of libm (float)") {
  CHECK(worst_ulp<float>(true, 1e-30, 1e30, true) <= 2);
  CHECK(worst_ulp<float>(false, -80.0, 80.0, false) <= 2);
}

TEST_CASE("exp and log special values") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(sm::log(1.0) == 0.0);
  CHECK(sm::log(0.0) == -inf);
  CHECK(sm::log(inf) == inf);
  CHECK(std::isnan(sm::log(-1.0)));
  CHECK(std::isnan(sm::log(std::numeric_limits<double>::quiet_NaN())));
  CHECK(sm::exp(0.0) == 1.0);
  CHECK(sm::exp(-inf) == 0.0);
  CHECK(sm::exp(inf) == inf);
  CHECK(sm::exp(1000.0) == inf);
  CHECK(sm::exp(-1000.0) == 0.0);
  CHECK(std::isnan(sm::exp(std::numeric_limits<double>::quiet_NaN())));
  // Subnormal arguments and results.
  CHECK(std::abs(sm::log(4.9406564584124654e-324) - std::log(4.9406564584124654e-324)) < 1e-12);
  CHECK(ulp_distance(sm::exp(-740.0), std::exp(-740.0)) <= 1);
  CHECK(sm::log(1e-40f) == doctest::Approx(std::log(1e-40f)).epsilon(1e-6));
}

TEST_CASE("inverse_power matches pow") {
  CHECK(sm::inverse_power(2.0, -2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sm::inverse_power(10.0, -1.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(sm::inverse_power(0.0, -2.0) == std::numeric_limits<double>::infinity());
  io::SplitMix64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double d = 1e-3 + 200 * rng.uniform();
    const double a = 0.5 + 3 * rng.uniform();
    CHECK(test::rel_err(sm::inverse_power(d, -a), std::pow(d, -a)) < 1e-13);
  }
}

TEST_CASE("scalar table is always available") {
  CHECK(simd::isa_supported(simd::Isa::Scalar));
  CHECK(simd::kernels<double>(simd::Isa::Scalar).lanes == 1);
  CHECK(simd::kernels<float>(simd::Isa::Scalar).isa == simd::Isa::Scalar);
}

TEST_CASE("avx2 table reports its width") {
  if (!simd::isa_supported(simd::Isa::Avx2)) {
    CHECK_THROWS_AS(simd::kernels<double>(simd::Isa::Avx2), Error);
    return;
  }
  CHECK(simd::kernels<double>(simd::Isa::Avx2).lanes == 4);
  CHECK(simd::kernels<float>(simd::Isa::Avx2).lanes == 8);
}

TEST_CASE("avx2 kernels are bit-identical to scalar kernels (double)") { check_kernels_agree<double>(); }

TEST_CASE("avx2 kernels are bit-identical to scalar kernels (float)") { check_kernels_agree<float>(); }

TEST_CASE("avx2 exp and log are bit-identical to scalar on edge inputs") {
  if (!simd::isa_supported(simd::Isa::Avx2)) return;
  // Distances spanning subnormal, tiny, unit and huge magnitudes, fed through
  // the weighting kernel one query at a time.
  const std::vector<double> xs{0.0, 4.9e-324, 1e-310, 1e-200, 1e-12, 0.5, 1.0, 1.5, 1e10, 1e150};
  for (double neg_alpha : {-0.5, -1.0, -2.0, -3.0, -7.25}) {
    for (double x : xs) {
      const double zero = 0.0;
      const double v = 1.0;
      const simd::DataView<double> tile{&x, &zero, &v, 1, 1};
      double q = 0.0;
      double sw[2]{0, 0}, cw[2]{0, 0}, swz[2]{0, 0}, cwz[2]{0, 0}, md[2]{INFINITY, INFINITY}, mz[2]{0, 0};
      simd::kernels<double>(simd::Isa::Scalar).weight_tile(&q, &q, &neg_alpha, 1, tile, {&sw[0], &cw[0], &swz[0], &cwz[0], &md[0], &mz[0]});
      simd::kernels<double>(simd::Isa::Avx2).weight_tile(&q, &q, &neg_alpha, 1, tile, {&sw[1], &cw[1], &swz[1], &cwz[1], &md[1], &mz[1]});
      CHECK(test::same_bits(sw[0], sw[1]));
      CHECK(test::same_bits(cwz[0], cwz[1]));
    }
  }
}

}
