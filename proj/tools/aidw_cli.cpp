// aidw: generate datasets, interpolate with IDW/AIDW, benchmark engines, and
// run the built-in oracle checks.
//
// Exit codes: 0 success, 1 runtime error, 2 bad flags.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aidw/bench.hpp"
#include "aidw/error.hpp"
#include "aidw/interpolate.hpp"
#include "aidw/io.hpp"
#include "aidw/selfcheck.hpp"

namespace {

// Flag values that only fail semantic validation after CLI11 parsing.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename E>
E lookup(const std::map<std::string, E>& table, const std::string& key, const char* what) {
  const auto it = table.find(key);
  if (it == table.end()) throw FlagError(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

const std::map<std::string, aidw::Engine> kEngines{{"seq", aidw::Engine::Sequential},
                                                   {"tiled", aidw::Engine::TiledParallel}};
const std::map<std::string, aidw::Layout> kLayouts{{"soa", aidw::Layout::SoA}, {"aos", aidw::Layout::AoS}};
const std::map<std::string, aidw::Precision> kPrecisions{{"single", aidw::Precision::Single},
                                                         {"double", aidw::Precision::Double}};

std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct GenerateOpts {
  std::string count = "10K";
  double extent = 100.0;
  std::uint64_t seed = 42;
  std::string value_model = "uniform";
  bool queries = false;
  std::string out;
};

struct InterpolateOpts {
  std::string data;
  std::string queries;
  std::string method = "aidw";
  double alpha = 2.0;
  std::size_t k = 10;
  std::string alpha_levels = "1,1.5,2,2.5,3";
  double r_min = 0.0;
  double r_max = 2.0;
  std::string area = "auto";
  std::string zero_tol = "default";
  std::string engine = "tiled";
  std::size_t workers = default_workers();
  std::size_t tile_size = 256;
  std::string layout = "soa";
  std::string precision = "double";
  std::string isa = "auto";
  bool emit_trace = false;
  std::string out;
};

struct BenchOpts {
  std::string sizes = "10K,50K,100K";
  std::string engines = "seq,tiled";
  std::string layouts = "soa,aos";
  std::string precisions = "single,double";
  std::size_t reps = 3;
  std::uint64_t seed = 42;
  std::size_t workers = default_workers();
  std::size_t tile_size = 256;
  std::string method = "aidw";
  double alpha = 2.0;
  std::string isa = "auto";
  std::string csv;
};

std::optional<aidw::simd::Isa> parse_isa(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "scalar") return aidw::simd::Isa::Scalar;
  if (s == "avx2") return aidw::simd::Isa::Avx2;
  throw FlagError("unknown isa '" + s + "'");
}

int run_generate(const GenerateOpts& o) {
  std::size_t count = 0;
  aidw::io::ValueModel model;
  try {
    count = aidw::io::parse_count(o.count);
    model = aidw::io::parse_value_model(o.value_model);
  } catch (const aidw::Error& e) {
    throw FlagError(e.what());
  }
  if (o.queries) {
    const auto q = aidw::io::generate_queries(count, o.extent, o.seed);
    aidw::io::write_queries_csv<double>(o.out, q);
  } else {
    aidw::io::DatasetSpec spec{count, o.extent, o.seed, model};
    aidw::io::write_cloud_csv(o.out, aidw::io::generate(spec));
  }
  return 0;
}

aidw::Method build_method(const InterpolateOpts& o) {
  std::optional<double> tol;
  if (o.zero_tol != "default") {
    try {
      tol = std::stod(o.zero_tol);
    } catch (const std::exception&) {
      throw FlagError("bad --zero-tol '" + o.zero_tol + "'");
    }
  }
  if (o.method == "idw") return aidw::IdwMethod{o.alpha, tol};

  aidw::AidwParams p;
  p.k = o.k;
  const auto levels = split_list(o.alpha_levels);
  if (levels.size() != 5) throw FlagError("--alpha-levels needs exactly five values");
  for (std::size_t i = 0; i < 5; ++i) {
    try {
      p.alpha_levels[i] = std::stod(levels[i]);
    } catch (const std::exception&) {
      throw FlagError("bad alpha level '" + levels[i] + "'");
    }
  }
  p.r_min = o.r_min;
  p.r_max = o.r_max;
  if (o.area != "auto") {
    try {
      p.area = std::stod(o.area);
    } catch (const std::exception&) {
      throw FlagError("bad --area '" + o.area + "'");
    }
  }
  p.zero_dist_tol = tol;
  p.precision = lookup(kPrecisions, o.precision, "precision");
  try {
    p.validate();
  } catch (const aidw::Error& e) {
    throw FlagError(e.what());
  }
  return p;
}

template <typename T>
void interpolate_as(const aidw::PointCloud<double>& data, const std::vector<aidw::QueryPoint<double>>& queries_d,
                    const aidw::Method& method, const aidw::ExecPlan& plan, const std::string& out) {
  const auto cloud = aidw::cast_cloud<T>(data);
  const auto queries = aidw::cast_queries<T, double>(queries_d);
  const auto result = aidw::interpolate_all<T>(cloud, queries, method, plan);
  aidw::io::write_result_csv<T>(out, queries, result);
}

int run_interpolate(const InterpolateOpts& o) {
  const auto method = build_method(o);
  aidw::ExecPlan plan;
  plan.engine = lookup(kEngines, o.engine, "engine");
  plan.workers = o.workers;
  plan.tile_size = o.tile_size;
  plan.isa = parse_isa(o.isa);
  plan.collect_traces = o.emit_trace;
  const auto layout = lookup(kLayouts, o.layout, "layout");
  const auto precision = lookup(kPrecisions, o.precision, "precision");
  if (o.workers < 1 || o.tile_size < 1) throw FlagError("--workers and --tile-size must be at least 1");

  const auto data = aidw::io::read_cloud_csv(o.data, layout);
  const auto queries = aidw::io::read_queries_csv(o.queries);
  if (precision == aidw::Precision::Single) {
    interpolate_as<float>(data, queries, method, plan, o.out);
  } else {
    interpolate_as<double>(data, queries, method, plan, o.out);
  }
  return 0;
}

int run_bench(const BenchOpts& o) {
  aidw::bench::BenchConfig cfg;
  cfg.sizes.clear();
  cfg.engines.clear();
  cfg.layouts.clear();
  cfg.precisions.clear();
  try {
    for (const auto& s : split_list(o.sizes)) cfg.sizes.push_back(aidw::io::parse_count(s));
  } catch (const aidw::Error& e) {
    throw FlagError(e.what());
  }
  for (const auto& s : split_list(o.engines)) cfg.engines.push_back(lookup(kEngines, s, "engine"));
  for (const auto& s : split_list(o.layouts)) cfg.layouts.push_back(lookup(kLayouts, s, "layout"));
  for (const auto& s : split_list(o.precisions)) cfg.precisions.push_back(lookup(kPrecisions, s, "precision"));
  cfg.repetitions = o.reps;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.tile_size = o.tile_size;
  cfg.isa = parse_isa(o.isa);
  if (o.method == "idw") {
    cfg.method = aidw::IdwMethod{o.alpha, std::nullopt};
  } else {
    cfg.method = aidw::AidwParams{};
  }
  try {
    cfg.validate();
  } catch (const aidw::Error& e) {
    throw FlagError(e.what());
  }

  const auto records = aidw::bench::run_bench(cfg, [](const aidw::bench::BenchRecord& r) {
    std::cerr << "  " << r.size << ' ' << aidw::to_string(r.engine) << ' ' << aidw::to_string(r.layout) << ' '
              << aidw::to_string(r.precision) << ": " << (r.failed ? "FAILED " + r.error : std::to_string(r.wall_time_ms) + " ms")
              << '\n';
  });
  const auto rep = aidw::bench::report(records);
  std::cout << rep.table;
  if (!o.csv.empty()) {
    std::ofstream f(o.csv, std::ios::binary | std::ios::trunc);
    if (!f) throw aidw::Error(aidw::ErrorCode::IoError, "cannot open '" + o.csv + "' for writing");
    f << rep.csv;
  }
  for (const auto& r : records) {
    if (r.failed) return 1;
  }
  return 0;
}

int run_selfcheck(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : aidw::run_selfcheck(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive inverse distance weighting interpolation"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Write a seeded random point set (uniform on [0, extent]^2)");
  g->add_option("--count", gen.count, "Number of points; K suffix = x1024");
  g->add_option("--extent", gen.extent, "Side length of the square");
  g->add_option("--seed", gen.seed, "PRNG seed (SplitMix64)");
  g->add_option("--value-model", gen.value_model, "uniform[:lo:hi] | plane:a:b:c | hill[:cx:cy:sigma:amp]");
  g->add_flag("--queries", gen.queries, "Write an x,y query file instead of a data file");
  g->add_option("--out", gen.out, "Output CSV")->required();

  InterpolateOpts ip;
  auto* i = app.add_subcommand("interpolate", "Predict values at query points");
  i->add_option("--data", ip.data, "Data CSV (x,y,value)")->required()->check(CLI::ExistingFile);
  i->add_option("--queries", ip.queries, "Query CSV (x,y[,...])")->required()->check(CLI::ExistingFile);
  i->add_option("--method", ip.method, "idw | aidw")->check(CLI::IsMember({"idw", "aidw"}));
  i->add_option("--alpha", ip.alpha, "Fixed exponent for idw");
  i->add_option("--k", ip.k, "Neighbours for the local point-pattern statistic")->check(CLI::PositiveNumber);
  i->add_option("--alpha-levels", ip.alpha_levels, "Five decay levels a1..a5");
  i->add_option("--r-min", ip.r_min, "Lower bound of the nearest-neighbour statistic");
  i->add_option("--r-max", ip.r_max, "Upper bound of the nearest-neighbour statistic");
  i->add_option("--area", ip.area, "Study area, or auto for the data bounding box");
  i->add_option("--zero-tol", ip.zero_tol, "Coincidence distance (default 1e-12 double, 1e-6 single)");
  i->add_option("--engine", ip.engine, "seq | tiled")->check(CLI::IsMember({"seq", "tiled"}));
  i->add_option("--workers", ip.workers, "Worker threads for the tiled engine");
  i->add_option("--tile-size", ip.tile_size, "Data points per tile");
  i->add_option("--layout", ip.layout, "soa | aos")->check(CLI::IsMember({"soa", "aos"}));
  i->add_option("--precision", ip.precision, "single | double")->check(CLI::IsMember({"single", "double"}));
  i->add_option("--isa", ip.isa, "auto | scalar | avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  i->add_flag("--emit-trace", ip.emit_trace, "Append r_exp,r_obs,R,mu,alpha columns (aidw)");
  i->add_option("--out", ip.out, "Output CSV")->required();

  BenchOpts bo;
  auto* b = app.add_subcommand("bench", "Time engines x layouts x precisions x sizes");
  b->add_option("--sizes", bo.sizes, "Comma-separated counts, K = 1024");
  b->add_option("--engines", bo.engines, "Subset of seq,tiled");
  b->add_option("--layouts", bo.layouts, "Subset of soa,aos");
  b->add_option("--precisions", bo.precisions, "Subset of single,double");
  b->add_option("--reps", bo.reps, "Repetitions per cell (median reported, >= 3)");
  b->add_option("--seed", bo.seed, "Dataset seed");
  b->add_option("--workers", bo.workers, "Worker threads for the tiled engine");
  b->add_option("--tile-size", bo.tile_size, "Data points per tile");
  b->add_option("--method", bo.method, "idw | aidw")->check(CLI::IsMember({"idw", "aidw"}));
  b->add_option("--alpha", bo.alpha, "Fixed exponent for idw");
  b->add_option("--isa", bo.isa, "auto | scalar | avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  b->add_option("--csv", bo.csv, "Also write the records as CSV");

  std::uint64_t check_seed = 7;
  auto* s = app.add_subcommand("selfcheck", "Run the oracle suites; nonzero exit on any failure");
  s->add_option("--seed", check_seed, "Seed for the generated fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*g) return run_generate(gen);
    if (*i) return run_interpolate(ip);
    if (*b) return run_bench(bo);
    if (*s) return run_selfcheck(check_seed);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return 2;
  } catch (const aidw::Error& e) {
    std::cerr << "error: " << e.what();
    if (e.index() && e.code() != aidw::ErrorCode::ParseError) std::cerr << " [query index " << *e.index() << ']';
    std::cerr << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
