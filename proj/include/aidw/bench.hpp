#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aidw/interpolate.hpp"
#include "aidw/types.hpp"

namespace aidw::bench {

struct BenchConfig {
  std::vector<std::size_t> sizes{10 * 1024, 50 * 1024, 100 * 1024};
  std::vector<Engine> engines{Engine::Sequential, Engine::TiledParallel};
  std::vector<Layout> layouts{Layout::SoA, Layout::AoS};
  std::vector<Precision> precisions{Precision::Single, Precision::Double};
  std::size_t repetitions = 3;
  std::uint64_t seed = 42;
  double extent = 100.0;
  std::size_t workers = 0;  // 0: hardware concurrency
  std::size_t tile_size = 256;
  std::optional<simd::Isa> isa;
  Method method = AidwParams{};

  /// Throws Error(InvalidParams): empty axes, repetitions < 3, bad sizes.
  void validate() const;
  std::size_t resolved_workers() const noexcept;
};

struct BenchRecord {
  std::size_t size = 0;
  Engine engine = Engine::Sequential;
  Layout layout = Layout::SoA;
  Precision precision = Precision::Double;
  std::size_t workers = 1;
  double wall_time_ms = 0.0;          // median over repetitions
  double speedup_vs_reference = 0.0;  // sequential double-precision time / this time
  bool verified = false;              // output bit-equal to the first cell of this size and precision
  bool failed = false;
  std::string error;
};

/// Runs every size x precision x layout x engine cell one after another.
/// Timings cover interpolate_all only. A failing cell is recorded and the
/// rest proceed. Outputs of cells sharing size and precision must match
/// bitwise; a mismatch marks the cell failed.
std::vector<BenchRecord> run_bench(const BenchConfig& config,
                                   const std::function<void(const BenchRecord&)>& on_record = {});

struct Report {
  std::string table;
  std::string csv;
};

/// Table-1-shaped grids plus per-cell speedup, SoA/AoS and tiled/sequential
/// ratios. Throws Error(EmptyInput) for no records.
Report report(std::span<const BenchRecord> records);

}  // namespace aidw::bench
