#include "aidw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "aidw/error.hpp"
#include "aidw/io.hpp"

namespace aidw::bench {

void BenchConfig::validate() const {
  if (sizes.empty() || engines.empty() || layouts.empty() || precisions.empty()) {
    throw Error(ErrorCode::InvalidParams, "every bench axis needs at least one entry");
  }
  if (repetitions < 3) throw Error(ErrorCode::InvalidParams, "repetitions must be at least 3 for a median");
  for (std::size_t s : sizes) {
    if (s < 1) throw Error(ErrorCode::InvalidParams, "sizes must be positive");
  }
  if (tile_size < 1) throw Error(ErrorCode::InvalidParams, "tile size must be at least 1");
}

std::size_t BenchConfig::resolved_workers() const noexcept {
  if (workers > 0) return workers;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

template <typename T>
double time_cell(const PointCloud<T>& cloud, const std::vector<QueryPoint<T>>& queries, const BenchConfig& cfg,
                 const ExecPlan& plan, std::vector<T>& output) {
  std::vector<double> times;
  times.reserve(cfg.repetitions);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    auto res = interpolate_all<T>(cloud, queries, cfg.method, plan);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    if (r == 0) output = std::move(res.values);
  }
  return median(std::move(times));
}

ExecPlan plan_for(const BenchConfig& cfg, Engine engine, std::size_t workers) {
  ExecPlan plan;
  plan.engine = engine;
  plan.workers = engine == Engine::Sequential ? 1 : workers;
  plan.tile_size = cfg.tile_size;
  plan.isa = cfg.isa;
  return plan;
}

template <typename T>
void run_precision(const BenchConfig& cfg, std::size_t size, Precision precision, const PointCloud<double>& data,
                   const std::vector<QueryPoint<double>>& queries_d, std::size_t workers,
                   std::vector<BenchRecord>& out, const std::function<void(const BenchRecord&)>& on_record) {
  const auto base = cast_cloud<T>(data);
  const auto queries = cast_queries<T, double>(queries_d);
  std::optional<std::vector<T>> reference;

  for (Layout layout : cfg.layouts) {
    const auto cloud = convert_layout(base, layout);
    for (Engine engine : cfg.engines) {
      BenchRecord rec;
      rec.size = size;
      rec.engine = engine;
      rec.layout = layout;
      rec.precision = precision;
      rec.workers = engine == Engine::Sequential ? 1 : workers;
      try {
        std::vector<T> output;
        rec.wall_time_ms = time_cell(cloud, queries, cfg, plan_for(cfg, engine, workers), output);
        if (!reference) {
          reference = std::move(output);
          rec.verified = true;
        } else if (same_bits(*reference, output)) {
          rec.verified = true;
        } else {
          rec.failed = true;
          rec.error = "output differs from the first cell at this size and precision";
        }
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      out.push_back(rec);
      if (on_record) on_record(out.back());
    }
  }
}

const BenchRecord* find(std::span<const BenchRecord> records, std::size_t size, Engine engine, Layout layout,
                        Precision precision) {
  for (const auto& r : records) {
    if (r.size == size && r.engine == engine && r.layout == layout && r.precision == precision && !r.failed) {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg, const std::function<void(const BenchRecord&)>& on_record) {
  cfg.validate();
  const std::size_t workers = cfg.resolved_workers();
  std::vector<BenchRecord> all;

  for (std::size_t size : cfg.sizes) {
    io::DatasetSpec spec;
    spec.count = size;
    spec.extent = cfg.extent;
    spec.seed = io::derive_seed(cfg.seed, 0);
    const auto data = io::generate(spec);
    const auto queries = io::generate_queries(size, cfg.extent, io::derive_seed(cfg.seed, 1));

    std::vector<BenchRecord> cells;
    for (Precision p : cfg.precisions) {
      if (p == Precision::Single) {
        run_precision<float>(cfg, size, p, data, queries, workers, cells, on_record);
      } else {
        run_precision<double>(cfg, size, p, data, queries, workers, cells, on_record);
      }
    }

    const BenchRecord* ref = find(cells, size, Engine::Sequential, Layout::SoA, Precision::Double);
    if (!ref) ref = find(cells, size, Engine::Sequential, Layout::AoS, Precision::Double);
    double ref_ms = ref ? ref->wall_time_ms : 0.0;
    if (!ref) {
      // Reference cell not in the grid (or failed): measure it on its own.
      try {
        std::vector<double> out;
        ref_ms = time_cell<double>(data, queries, cfg, plan_for(cfg, Engine::Sequential, 1), out);
      } catch (const std::exception&) {
        ref_ms = 0.0;
      }
    }
    for (auto& c : cells) {
      if (!c.failed && c.wall_time_ms > 0.0) c.speedup_vs_reference = ref_ms / c.wall_time_ms;
    }
    all.insert(all.end(), cells.begin(), cells.end());
  }
  return all;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string size_label(std::size_t n) {
  if (n % 1024 == 0) return std::to_string(n / 1024) + "K";
  return std::to_string(n);
}

}  // namespace

Report report(std::span<const BenchRecord> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no benchmark records to report");

  std::vector<std::size_t> sizes;
  for (const auto& r : records) {
    if (std::find(sizes.begin(), sizes.end(), r.size) == sizes.end()) sizes.push_back(r.size);
  }

  std::ostringstream table;
  // Grid: one block per precision, rows engine/layout, columns sizes.
  for (Precision p : {Precision::Single, Precision::Double}) {
    std::vector<std::pair<Engine, Layout>> rows;
    for (const auto& r : records) {
      if (r.precision != p) continue;
      const std::pair<Engine, Layout> key{r.engine, r.layout};
      if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
    }
    if (rows.empty()) continue;
    table << "Execution time (ms), " << to_string(p) << " precision\n";
    table << std::left << std::setw(12) << "engine" << std::setw(8) << "layout";
    for (auto s : sizes) table << std::right << std::setw(14) << size_label(s);
    table << '\n';
    for (const auto& [engine, layout] : rows) {
      table << std::left << std::setw(12) << to_string(engine) << std::setw(8) << to_string(layout);
      for (auto s : sizes) {
        const BenchRecord* r = nullptr;
        for (const auto& x : records) {
          if (x.size == s && x.engine == engine && x.layout == layout && x.precision == p) r = &x;
        }
        std::string cell = "-";
        if (r) cell = r->failed ? "FAILED" : fixed(r->wall_time_ms, 1);
        table << std::right << std::setw(14) << cell;
      }
      table << '\n';
    }
    table << '\n';
  }

  std::ostringstream csv;
  csv << "size,engine,layout,precision,workers,median_ms,speedup_vs_reference,soa_over_aos,tiled_over_sequential,"
         "verified,status\n";
  table << std::left << std::setw(8) << "size" << std::setw(12) << "engine" << std::setw(8) << "layout"
        << std::setw(8) << "prec" << std::right << std::setw(9) << "workers" << std::setw(14) << "median_ms"
        << std::setw(10) << "speedup" << std::setw(10) << "soa/aos" << std::setw(12) << "tiled/seq"
        << std::setw(10) << "verified" << '\n';

  for (const auto& r : records) {
    std::string soa_aos = "-";
    std::string tiled_seq = "-";
    if (!r.failed) {
      const BenchRecord* soa = find(records, r.size, r.engine, Layout::SoA, r.precision);
      const BenchRecord* aos = find(records, r.size, r.engine, Layout::AoS, r.precision);
      if (soa && aos) soa_aos = fixed(aos->wall_time_ms / soa->wall_time_ms, 3);
      const BenchRecord* seq = find(records, r.size, Engine::Sequential, r.layout, r.precision);
      const BenchRecord* tiled = find(records, r.size, Engine::TiledParallel, r.layout, r.precision);
      if (seq && tiled) tiled_seq = fixed(seq->wall_time_ms / tiled->wall_time_ms, 3);
    }
    const std::string time = r.failed ? "FAILED" : fixed(r.wall_time_ms, 3);
    const std::string speed = r.failed ? "-" : fixed(r.speedup_vs_reference, 3);

    table << std::left << std::setw(8) << size_label(r.size) << std::setw(12) << to_string(r.engine) << std::setw(8)
          << to_string(r.layout) << std::setw(8) << to_string(r.precision) << std::right << std::setw(9) << r.workers
          << std::setw(14) << time << std::setw(10) << speed << std::setw(10) << soa_aos << std::setw(12)
          << tiled_seq << std::setw(10) << (r.verified ? "yes" : "no") << '\n';
    if (r.failed) table << "    error: " << r.error << '\n';

    csv << r.size << ',' << to_string(r.engine) << ',' << to_string(r.layout) << ',' << to_string(r.precision) << ','
        << r.workers << ',' << (r.failed ? "" : fixed(r.wall_time_ms, 3)) << ',' << (r.failed ? "" : speed) << ','
        << (soa_aos == "-" ? "" : soa_aos) << ',' << (tiled_seq == "-" ? "" : tiled_seq) << ','
        << (r.verified ? "yes" : "no") << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
  table << "\nsoa/aos = AoS time / SoA time; tiled/seq = sequential time / tiled time "
           "(values above 1 favour SoA and tiling respectively)\n";
  return {table.str(), csv.str()};
}

}  // namespace aidw::bench
