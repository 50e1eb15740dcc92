#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aidw/interpolate.hpp"
#include "aidw/point_cloud.hpp"

namespace aidw::io {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen because its output is fully
/// specified by 64-bit integer arithmetic, so seeded data is identical on
/// every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent stream seed for a numbered purpose (data = 0, queries = 1, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

struct UniformValues {
  double lo = 0.0;
  double hi = 100.0;
};
struct PlaneValues {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
};
struct GaussianHill {
  double cx = 50.0;
  double cy = 50.0;
  double sigma = 20.0;
  double amplitude = 100.0;
};
using ValueModel = std::variant<UniformValues, PlaneValues, GaussianHill>;

/// Parses "uniform[:lo:hi]", "plane:a:b:c" or "hill[:cx:cy:sigma:amp]".
ValueModel parse_value_model(std::string_view text);

struct DatasetSpec {
  std::size_t count = 10 * 1024;
  double extent = 100.0;
  std::uint64_t seed = 42;
  ValueModel values = UniformValues{};

  void validate() const;
};

/// Parses a point count: plain digits, or digits followed by K (x1024).
std::size_t parse_count(std::string_view text);

/// Samples i.i.d. uniform on [0, extent]^2; value drawn/evaluated per model.
/// Per sample the stream is consumed as x, y, then value (uniform model only).
PointCloud<double> generate(const DatasetSpec& spec, Layout layout = Layout::SoA);

std::vector<QueryPoint<double>> generate_queries(std::size_t count, double extent, std::uint64_t seed);

// CSV: UTF-8, comma separated, '.' decimal point, header row required.
// Doubles print with 17 significant digits, floats with 9.

PointCloud<double> read_cloud_csv(std::istream& in, Layout layout = Layout::SoA);
PointCloud<double> read_cloud_csv(const std::filesystem::path& path, Layout layout = Layout::SoA);

/// Header must start with "x,y"; extra columns are ignored, so a cloud file
/// is also a valid query file.
std::vector<QueryPoint<double>> read_queries_csv(std::istream& in);
std::vector<QueryPoint<double>> read_queries_csv(const std::filesystem::path& path);

template <std::floating_point T>
void write_cloud_csv(std::ostream& out, const PointCloud<T>& cloud);
template <std::floating_point T>
void write_cloud_csv(const std::filesystem::path& path, const PointCloud<T>& cloud);

template <std::floating_point T>
void write_queries_csv(std::ostream& out, std::span<const QueryPoint<T>> queries);
template <std::floating_point T>
void write_queries_csv(const std::filesystem::path& path, std::span<const QueryPoint<T>> queries);

/// Columns x,y,predicted plus r_exp,r_obs,R,mu,alpha when traces are present.
template <std::floating_point T>
void write_result_csv(std::ostream& out, std::span<const QueryPoint<T>> queries, const PredictionResult<T>& result);
template <std::floating_point T>
void write_result_csv(const std::filesystem::path& path, std::span<const QueryPoint<T>> queries,
                      const PredictionResult<T>& result);

/// 17 (double) or 9 (float) significant digits, locale independent.
template <std::floating_point T>
std::string format_number(T value);

}  // namespace aidw::io
