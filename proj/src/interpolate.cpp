#include "aidw/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "aidw/error.hpp"
#include "aidw/knn.hpp"
#include "aidw/simd/scalar_math.hpp"

namespace aidw {

std::string_view to_string(Engine engine) noexcept {
  return engine == Engine::Sequential ? "sequential" : "tiled";
}

void ExecPlan::validate() const {
  if (workers < 1) throw Error(ErrorCode::InvalidParams, "workers must be at least 1");
  if (tile_size < 1) throw Error(ErrorCode::InvalidParams, "tile size must be at least 1");
}

namespace {

constexpr std::size_t kQueryBlock = 128;

template <std::floating_point T>
T finish(const simd::scalar::WeightSums<T>& acc, T min_d, T min_z, T tol) {
  if (min_d < tol) return min_z;
  return acc.mean();
}

// Batch-level settings resolved once before any query runs.
template <std::floating_point T>
struct Resolved {
  bool adaptive = false;
  T fixed_neg_alpha = T(0);
  T tol = T(0);
  std::size_t k = 0;
  T r_exp = T(0);
  AlphaModel<T> model{};
};

template <std::floating_point T>
Resolved<T> resolve(const PointCloud<T>& cloud, const Method& method) {
  Resolved<T> r;
  if (const auto* idw = std::get_if<IdwMethod>(&method)) {
    if (!(idw->alpha > 0.0) || !std::isfinite(idw->alpha)) {
      throw Error(ErrorCode::InvalidParams, "alpha must be positive and finite");
    }
    if (idw->zero_dist_tol && !(*idw->zero_dist_tol > 0.0)) {
      throw Error(ErrorCode::InvalidParams, "zero distance tolerance must be positive");
    }
    if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "no data points", 0);
    r.fixed_neg_alpha = -static_cast<T>(idw->alpha);
    r.tol = idw->zero_dist_tol ? static_cast<T>(*idw->zero_dist_tol) : default_zero_dist_tol<T>();
    return r;
  }
  const auto& p = std::get<AidwParams>(method);
  p.validate();
  if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "no data points", 0);
  if (cloud.size() < p.k) {
    throw Error(ErrorCode::InsufficientData,
                "k = " + std::to_string(p.k) + " exceeds the " + std::to_string(cloud.size()) + " data points", 0);
  }
  r.adaptive = true;
  r.tol = p.tolerance<T>();
  r.k = p.k;
  r.model = AlphaModel<T>::from(p);
  r.r_exp = expected_nn_distance(cloud.size(), resolve_area(cloud, p));
  return r;
}

// Naive per-query weighting loop; the reference every other path must match.
template <std::floating_point T>
T weigh_sequential(const simd::DataView<T>& data, const QueryPoint<T>& q, T neg_alpha, T tol) {
  simd::scalar::WeightSums<T> acc;
  T min_d = std::numeric_limits<T>::infinity();
  T min_z = T(0);
  for (std::size_t j = 0; j < data.count; ++j) {
    const std::size_t o = j * data.stride;
    const T z = data.value[o];
    const T d = simd::scalar::distance(q.x, q.y, data.x[o], data.y[o]);
    if (d < min_d) {
      min_d = d;
      min_z = z;
    }
    acc.add(simd::scalar::inverse_power(d, neg_alpha), z);
  }
  return finish(acc, min_d, min_z, tol);
}

template <std::floating_point T>
void check_finite(T value, std::size_t index) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteResult, "prediction for query " + std::to_string(index) + " is not finite", index);
  }
}

template <std::floating_point T>
void run_sequential(const PointCloud<T>& cloud, std::span<const QueryPoint<T>> queries, const Resolved<T>& r,
                    bool traces, PredictionResult<T>& out) {
  const auto data = cloud.view();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    T neg_alpha = r.fixed_neg_alpha;
    if (r.adaptive) {
      const auto dists = nearest_k_distances(cloud, q, r.k);
      const auto trace = alpha_from_neighbors<T>(dists, r.r_exp, r.model);
      neg_alpha = -trace.alpha;
      if (traces) out.traces[i] = trace;
    }
    out.values[i] = weigh_sequential(data, q, neg_alpha, r.tol);
    check_finite(out.values[i], i);
  }
}

// One worker's contiguous slice of queries, walked in query blocks; each block
// visits the data tile by tile in ascending order, twice for AIDW.
template <std::floating_point T>
void run_tiled_slice(const simd::KernelTable<T>& kern, const simd::DataView<T>& data,
                     std::span<const QueryPoint<T>> queries, std::size_t first, std::size_t last,
                     std::size_t tile_size, const Resolved<T>& r, bool traces, PredictionResult<T>& out) {
  const std::size_t block = kQueryBlock;
  std::vector<T> qx(block), qy(block), neg_alpha(block);
  std::vector<T> sum_w(block), comp_w(block), sum_wz(block), comp_wz(block), min_d(block), min_z(block);
  std::vector<T> kbuf(r.adaptive ? block * r.k : 0);

  for (std::size_t b0 = first; b0 < last; b0 += block) {
    const std::size_t nb = std::min(block, last - b0);
    for (std::size_t i = 0; i < nb; ++i) {
      qx[i] = queries[b0 + i].x;
      qy[i] = queries[b0 + i].y;
    }

    if (r.adaptive) {
      // An all-infinite buffer fed the first k samples ends up holding exactly
      // their sorted distances, so one insertion loop covers both phases.
      std::fill(kbuf.begin(), kbuf.begin() + static_cast<std::ptrdiff_t>(nb * r.k),
                std::numeric_limits<T>::infinity());
      for (std::size_t t0 = 0; t0 < data.count; t0 += tile_size) {
        const std::size_t t1 = std::min(data.count, t0 + tile_size);
        kern.knn_tile(qx.data(), qy.data(), nb, data.slice(t0, t1), kbuf.data(), r.k);
      }
      for (std::size_t i = 0; i < nb; ++i) {
        const auto trace = alpha_from_neighbors<T>(std::span<const T>(kbuf.data() + i * r.k, r.k), r.r_exp, r.model);
        neg_alpha[i] = -trace.alpha;
        if (traces) out.traces[b0 + i] = trace;
      }
    } else {
      std::fill(neg_alpha.begin(), neg_alpha.begin() + static_cast<std::ptrdiff_t>(nb), r.fixed_neg_alpha);
    }

    for (auto* v : {&sum_w, &comp_w, &sum_wz, &comp_wz}) std::fill(v->begin(), v->end(), T(0));
    std::fill(min_d.begin(), min_d.end(), std::numeric_limits<T>::infinity());
    std::fill(min_z.begin(), min_z.end(), T(0));
    const simd::WeightState<T> state{sum_w.data(), comp_w.data(), sum_wz.data(), comp_wz.data(),
                                     min_d.data(), min_z.data()};
    for (std::size_t t0 = 0; t0 < data.count; t0 += tile_size) {
      const std::size_t t1 = std::min(data.count, t0 + tile_size);
      kern.weight_tile(qx.data(), qy.data(), neg_alpha.data(), nb, data.slice(t0, t1), state);
    }

    for (std::size_t i = 0; i < nb; ++i) {
      const simd::scalar::WeightSums<T> acc{sum_w[i], comp_w[i], sum_wz[i], comp_wz[i]};
      out.values[b0 + i] = finish(acc, min_d[i], min_z[i], r.tol);
      check_finite(out.values[b0 + i], b0 + i);
    }
  }
}

template <std::floating_point T>
void run_tiled(const PointCloud<T>& cloud, std::span<const QueryPoint<T>> queries, const Resolved<T>& r,
               const ExecPlan& plan, PredictionResult<T>& out) {
  const auto& kern = plan.isa ? simd::kernels<T>(*plan.isa) : simd::best_kernels<T>();
  const auto data = cloud.view();
  const std::size_t n = queries.size();
  const std::size_t workers = std::min(plan.workers, n);
  const std::size_t per = (n + workers - 1) / workers;

  if (workers == 1) {
    run_tiled_slice(kern, data, queries, 0, n, plan.tile_size, r, plan.collect_traces, out);
    return;
  }

  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t first = w * per;
      const std::size_t last = std::min(n, first + per);
      if (first >= last) break;
      pool.emplace_back([&, w, first, last] {
        try {
          run_tiled_slice(kern, data, queries, first, last, plan.tile_size, r, plan.collect_traces, out);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  // Slices are ascending, so the lowest failing worker holds the first failing query.
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

template <std::floating_point T>
T predict_idw(const PointCloud<T>& cloud, const QueryPoint<T>& query, T alpha, T tol) {
  if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "no data points");
  if (!(alpha > T(0))) throw Error(ErrorCode::InvalidParams, "alpha must be positive");
  if (!(tol > T(0))) throw Error(ErrorCode::InvalidParams, "zero distance tolerance must be positive");
  return weigh_sequential(cloud.view(), query, -alpha, tol);
}

template <std::floating_point T>
std::pair<T, AlphaTrace<T>> predict_aidw(const PointCloud<T>& cloud, const QueryPoint<T>& query,
                                         const AidwParams& params) {
  const auto trace = adaptive_alpha(cloud, query, params);
  return {predict_idw(cloud, query, trace.alpha, params.tolerance<T>()), trace};
}

template <std::floating_point T>
PredictionResult<T> interpolate_all(const PointCloud<T>& cloud, std::span<const QueryPoint<T>> queries,
                                    const Method& method, const ExecPlan& plan) {
  plan.validate();
  PredictionResult<T> out;
  if (queries.empty()) return out;

  const auto r = resolve(cloud, method);
  const bool traces = plan.collect_traces && r.adaptive;
  out.values.assign(queries.size(), T(0));
  if (traces) out.traces.assign(queries.size(), AlphaTrace<T>{});

  if (plan.engine == Engine::Sequential) {
    run_sequential(cloud, queries, r, traces, out);
  } else {
    ExecPlan p = plan;
    p.collect_traces = traces;
    run_tiled(cloud, queries, r, p, out);
  }
  return out;
}

#define AIDW_INSTANTIATE_INTERPOLATE(T)                                                                          \
  template T predict_idw(const PointCloud<T>&, const QueryPoint<T>&, T, T);                                      \
  template std::pair<T, AlphaTrace<T>> predict_aidw(const PointCloud<T>&, const QueryPoint<T>&, const AidwParams&); \
  template PredictionResult<T> interpolate_all(const PointCloud<T>&, std::span<const QueryPoint<T>>, const Method&, \
                                               const ExecPlan&);

AIDW_INSTANTIATE_INTERPOLATE(float)
AIDW_INSTANTIATE_INTERPOLATE(double)

}  // namespace aidw
