#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "aidw/adaptive.hpp"
#include "aidw/point_cloud.hpp"
#include "aidw/simd/kernels.hpp"
#include "aidw/types.hpp"

namespace aidw {

enum class Engine { Sequential, TiledParallel };

std::string_view to_string(Engine engine) noexcept;

/// How a batch is executed. The sequential engine is the per-query reference
/// loop and ignores workers, tile_size and isa.
struct ExecPlan {
  Engine engine = Engine::Sequential;
  std::size_t workers = 1;
  std::size_t tile_size = 256;
  std::optional<simd::Isa> isa;  // unset: best available
  bool collect_traces = false;

  static ExecPlan sequential() { return {}; }
  static ExecPlan tiled(std::size_t workers, std::size_t tile_size = 256) {
    return {Engine::TiledParallel, workers, tile_size, std::nullopt, false};
  }

  void validate() const;
};

/// Standard IDW with a fixed exponent.
struct IdwMethod {
  double alpha = 2.0;
  std::optional<double> zero_dist_tol;
};

using Method = std::variant<IdwMethod, AidwParams>;

template <std::floating_point T>
struct PredictionResult {
  std::vector<T> values;
  std::vector<AlphaTrace<T>> traces;  // empty unless traces were requested for AIDW
};

/// Shepard weighted average with w_i = d_i^-alpha over all samples. A query
/// closer than `tol` to some sample returns the value of the nearest one.
/// Throws Error(EmptyCloud), or Error(InvalidParams) for alpha <= 0.
template <std::floating_point T>
T predict_idw(const PointCloud<T>& cloud, const QueryPoint<T>& query, T alpha, T tol);

/// Adaptive alpha for the query, then the IDW average over all samples.
template <std::floating_point T>
std::pair<T, AlphaTrace<T>> predict_aidw(const PointCloud<T>& cloud, const QueryPoint<T>& query,
                                         const AidwParams& params);

/// Predicts every query. Results are bit-identical across engines, worker
/// counts, tile sizes, kernel ISAs and cloud layouts. The first failing query
/// aborts the batch with its index attached to the thrown Error.
template <std::floating_point T>
PredictionResult<T> interpolate_all(const PointCloud<T>& cloud, std::span<const QueryPoint<T>> queries,
                                    const Method& method, const ExecPlan& plan);

}  // namespace aidw
