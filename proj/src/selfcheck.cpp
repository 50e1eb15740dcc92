#include "aidw/selfcheck.hpp"

#include <cmath>
#include <cstring>
#include <exception>
#include <functional>
#include <sstream>

#include "aidw/interpolate.hpp"
#include "aidw/io.hpp"
#include "aidw/knn.hpp"
#include "aidw/oracle.hpp"

namespace aidw {

namespace {

struct Fixture {
  PointCloud<double> cloud;
  std::vector<QueryPoint<double>> queries;
};

Fixture make_fixture(std::uint64_t seed, std::size_t m, std::size_t n) {
  io::DatasetSpec spec;
  spec.count = m;
  spec.seed = io::derive_seed(seed, 0);
  return {io::generate(spec), io::generate_queries(n, spec.extent, io::derive_seed(seed, 1))};
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

std::string check_knn(std::uint64_t seed) {
  io::SplitMix64 rng(io::derive_seed(seed, 7));
  const std::size_t ks[] = {1, 5, 10, 50};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = ks[trial % 4];
    const std::size_t m = k + static_cast<std::size_t>(rng.uniform() * 600.0);
    const auto f = make_fixture(rng.next(), m, 8);
    const auto samples = f.cloud.samples();
    std::vector<double> kbuf(f.queries.size() * k, INFINITY);
    std::vector<double> qx, qy;
    for (const auto& q : f.queries) {
      qx.push_back(q.x);
      qy.push_back(q.y);
    }
    simd::best_kernels<double>().knn_tile(qx.data(), qy.data(), f.queries.size(), f.cloud.view(), kbuf.data(), k);
    for (std::size_t i = 0; i < f.queries.size(); ++i) {
      const auto want = oracle::knn_full_sort<double>(samples, f.queries[i], k);
      if (nearest_k_distances(f.cloud, f.queries[i], k) != want) {
        return "nearest_k_distances differs from full sort (m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")";
      }
      if (!std::equal(want.begin(), want.end(), kbuf.begin() + static_cast<std::ptrdiff_t>(i * k))) {
        return "tile kernel differs from full sort (m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")";
      }
    }
  }
  return {};
}

std::string check_idw(std::uint64_t seed) {
  const auto f = make_fixture(seed, 100, 10);
  const auto samples = f.cloud.samples();
  const auto got = interpolate_all<double>(f.cloud, f.queries, IdwMethod{2.0, std::nullopt}, ExecPlan::sequential());
  for (std::size_t i = 0; i < f.queries.size(); ++i) {
    const double want = oracle::idw_direct(samples, f.queries[i], 2.0, 1e-12);
    if (std::abs(got.values[i] - want) > 1e-12 * std::abs(want)) {
      std::ostringstream os;
      os.precision(17);
      os << "query " << i << ": " << got.values[i] << " vs oracle " << want;
      return os.str();
    }
  }
  return {};
}

std::string check_degeneracy(std::uint64_t seed) {
  const auto f = make_fixture(seed, 400, 200);
  AidwParams flat;
  flat.alpha_levels = {2.0, 2.0, 2.0, 2.0, 2.0};
  for (const auto& plan : {ExecPlan::sequential(), ExecPlan::tiled(2, 64)}) {
    const auto a = interpolate_all<double>(f.cloud, f.queries, flat, plan);
    const auto b = interpolate_all<double>(f.cloud, f.queries, IdwMethod{2.0, std::nullopt}, plan);
    if (!same_bits(a.values, b.values)) return "AIDW with flat levels differs from IDW on " + std::string(to_string(plan.engine));
  }
  return {};
}

std::string check_determinism(std::uint64_t seed) {
  const auto f = make_fixture(seed, 500, 300);
  const AidwParams params;
  const auto ref = interpolate_all<double>(f.cloud, f.queries, params, ExecPlan::sequential());
  for (Layout layout : {Layout::SoA, Layout::AoS}) {
    const auto cloud = convert_layout(f.cloud, layout);
    for (std::size_t w : {1u, 2u, 4u, 8u}) {
      for (simd::Isa isa : {simd::Isa::Scalar, simd::Isa::Avx2}) {
        if (!simd::isa_supported(isa)) continue;
        ExecPlan plan = ExecPlan::tiled(w, 96);
        plan.isa = isa;
        const auto got = interpolate_all<double>(cloud, f.queries, params, plan);
        if (!same_bits(ref.values, got.values)) {
          return "tiled(" + std::to_string(w) + " workers, " + std::string(simd::to_string(isa)) + ", " +
                 std::string(to_string(layout)) + ") differs from sequential";
        }
      }
    }
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  const std::pair<const char*, std::function<std::string(std::uint64_t)>> suites[] = {
      {"knn-vs-full-sort", check_knn},
      {"idw-vs-direct-oracle", check_idw},
      {"aidw-idw-degeneracy", check_degeneracy},
      {"determinism-matrix", check_determinism},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : suites) {
    CheckResult r{name, false, {}};
    try {
      r.detail = fn(seed);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace aidw
