#include "aidw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "aidw/error.hpp"
#include "aidw/simd/scalar_math.hpp"

namespace aidw::io {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return g.next();
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'",
                line);
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": non-finite number", line);
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

// Reads the header then calls `row(fields, line)` for every non-blank line.
template <typename Row>
void scan_csv(std::istream& in, std::size_t min_fields, std::string_view expect, Row&& row) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    auto fields = split(text, ',');
    if (!have_header) {
      if (fields.size() < min_fields) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected header '" +
                                               std::string(expect) + "'", lineno);
      }
      const auto want = split(expect, ',');
      for (std::size_t i = 0; i < want.size(); ++i) {
        if (trim(fields[i]) != want[i]) {
          throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected header '" +
                                                 std::string(expect) + "'", lineno);
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() < min_fields) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(min_fields) + " fields, got " +
                                             std::to_string(fields.size()), lineno);
    }
    row(fields, lineno);
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed");
  if (!have_header) throw Error(ErrorCode::ParseError, "missing header '" + std::string(expect) + "'", lineno + 1);
}

}  // namespace

ValueModel parse_value_model(std::string_view text) {
  const auto parts = split(text, ':');
  std::vector<double> args;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    try {
      args.push_back(parse_double(parts[i], 0));
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidParams, "bad value model argument '" + std::string(parts[i]) + "'");
    }
  }
  const std::string_view kind = parts[0];
  if (kind == "uniform") {
    if (args.empty()) return UniformValues{};
    if (args.size() == 2 && args[0] <= args[1]) return UniformValues{args[0], args[1]};
  } else if (kind == "plane") {
    if (args.size() == 3) return PlaneValues{args[0], args[1], args[2]};
  } else if (kind == "hill") {
    if (args.empty()) return GaussianHill{};
    if (args.size() == 4 && args[2] > 0.0) return GaussianHill{args[0], args[1], args[2], args[3]};
  }
  throw Error(ErrorCode::InvalidParams, "unknown value model '" + std::string(text) +
                                            "' (uniform[:lo:hi] | plane:a:b:c | hill[:cx:cy:sigma:amp])");
}

void DatasetSpec::validate() const {
  if (count < 1) throw Error(ErrorCode::InvalidParams, "count must be at least 1");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw Error(ErrorCode::InvalidParams, "extent must be positive");
}

std::size_t parse_count(std::string_view text) {
  std::size_t mult = 1;
  if (!text.empty() && (text.back() == 'K' || text.back() == 'k')) {
    mult = 1024;
    text.remove_suffix(1);
  }
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || n == 0) {
    throw Error(ErrorCode::InvalidParams, "bad count '" + std::string(text) + "'");
  }
  return n * mult;
}

PointCloud<double> generate(const DatasetSpec& spec, Layout layout) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  std::vector<Sample<double>> samples;
  samples.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    Sample<double> s{};
    s.x = rng.uniform() * spec.extent;
    s.y = rng.uniform() * spec.extent;
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, UniformValues>) {
            s.value = m.lo + (m.hi - m.lo) * rng.uniform();
          } else if constexpr (std::is_same_v<M, PlaneValues>) {
            s.value = m.a * s.x + m.b * s.y + m.c;
          } else {
            const double dx = s.x - m.cx;
            const double dy = s.y - m.cy;
            s.value = m.amplitude * simd::scalar::exp(-(dx * dx + dy * dy) / (2.0 * m.sigma * m.sigma));
          }
        },
        spec.values);
    samples.push_back(s);
  }
  return PointCloud<double>::from_samples(samples, layout);
}

std::vector<QueryPoint<double>> generate_queries(std::size_t count, double extent, std::uint64_t seed) {
  if (!(extent > 0.0)) throw Error(ErrorCode::InvalidParams, "extent must be positive");
  SplitMix64 rng(seed);
  std::vector<QueryPoint<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = rng.uniform() * extent;
    const double y = rng.uniform() * extent;
    out.push_back({x, y});
  }
  return out;
}

PointCloud<double> read_cloud_csv(std::istream& in, Layout layout) {
  std::vector<Sample<double>> samples;
  scan_csv(in, 3, "x,y,value", [&](const std::vector<std::string_view>& f, std::size_t line) {
    samples.push_back({parse_double(f[0], line), parse_double(f[1], line), parse_double(f[2], line)});
  });
  return PointCloud<double>::from_samples(samples, layout);
}

PointCloud<double> read_cloud_csv(const std::filesystem::path& path, Layout layout) {
  auto in = open_in(path);
  return read_cloud_csv(in, layout);
}

std::vector<QueryPoint<double>> read_queries_csv(std::istream& in) {
  std::vector<QueryPoint<double>> out;
  scan_csv(in, 2, "x,y", [&](const std::vector<std::string_view>& f, std::size_t line) {
    out.push_back({parse_double(f[0], line), parse_double(f[1], line)});
  });
  return out;
}

std::vector<QueryPoint<double>> read_queries_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_queries_csv(in);
}

template <std::floating_point T>
std::string format_number(T value) {
  constexpr int digits = sizeof(T) == sizeof(float) ? 9 : 17;
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  (void)ec;
  return std::string(buf, ptr);
}

template <std::floating_point T>
void write_cloud_csv(std::ostream& out, const PointCloud<T>& cloud) {
  out << "x,y,value\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto s = cloud.sample_at(i);
    out << format_number(s.x) << ',' << format_number(s.y) << ',' << format_number(s.value) << '\n';
  }
}

template <std::floating_point T>
void write_cloud_csv(const std::filesystem::path& path, const PointCloud<T>& cloud) {
  auto out = open_out(path);
  write_cloud_csv(out, cloud);
  finish_write(out, path);
}

template <std::floating_point T>
void write_queries_csv(std::ostream& out, std::span<const QueryPoint<T>> queries) {
  out << "x,y\n";
  for (const auto& q : queries) out << format_number(q.x) << ',' << format_number(q.y) << '\n';
}

template <std::floating_point T>
void write_queries_csv(const std::filesystem::path& path, std::span<const QueryPoint<T>> queries) {
  auto out = open_out(path);
  write_queries_csv(out, queries);
  finish_write(out, path);
}

template <std::floating_point T>
void write_result_csv(std::ostream& out, std::span<const QueryPoint<T>> queries, const PredictionResult<T>& result) {
  const bool traces = !result.traces.empty();
  out << (traces ? "x,y,predicted,r_exp,r_obs,R,mu,alpha\n" : "x,y,predicted\n");
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out << format_number(queries[i].x) << ',' << format_number(queries[i].y) << ','
        << format_number(result.values[i]);
    if (traces) {
      const auto& t = result.traces[i];
      out << ',' << format_number(t.r_exp) << ',' << format_number(t.r_obs) << ',' << format_number(t.R) << ','
          << format_number(t.mu) << ',' << format_number(t.alpha);
    }
    out << '\n';
  }
}

template <std::floating_point T>
void write_result_csv(const std::filesystem::path& path, std::span<const QueryPoint<T>> queries,
                      const PredictionResult<T>& result) {
  auto out = open_out(path);
  write_result_csv(out, queries, result);
  finish_write(out, path);
}

#define AIDW_INSTANTIATE_IO(T)                                                                                   \
  template std::string format_number(T);                                                                         \
  template void write_cloud_csv(std::ostream&, const PointCloud<T>&);                                            \
  template void write_cloud_csv(const std::filesystem::path&, const PointCloud<T>&);                             \
  template void write_queries_csv(std::ostream&, std::span<const QueryPoint<T>>);                                \
  template void write_queries_csv(const std::filesystem::path&, std::span<const QueryPoint<T>>);                 \
  template void write_result_csv(std::ostream&, std::span<const QueryPoint<T>>, const PredictionResult<T>&);     \
  template void write_result_csv(const std::filesystem::path&, std::span<const QueryPoint<T>>,                   \
                                 const PredictionResult<T>&);

AIDW_INSTANTIATE_IO(float)
AIDW_INSTANTIATE_IO(double)

}  // namespace aidw::io
