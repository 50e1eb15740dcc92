#include <doctest.h>

#include <algorithm>
#include <vector>

#include "aidw/error.hpp"
#include "aidw/knn.hpp"
#include "aidw/oracle.hpp"
#include "helpers.hpp"

using namespace aidw;
using aidw::test::cloud_of;

namespace {

std::vector<double> as_vec(const NeighborBuffer<double>& b) {
  return {b.distances().begin(), b.distances().end()};
}

}  // namespace

TEST_SUITE("knn") {

TEST_CASE("init_buffer sorts the first k distances") {
  const QueryPoint<double> q{0, 0};
  CHECK(as_vec(init_buffer(cloud_of<double>({{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), q, 3)) == std::vector<double>{1, 2, 3});
  CHECK(as_vec(init_buffer(cloud_of<double>({{3, 0, 0}, {1, 0, 0}, {2, 0, 0}}), q, 3)) == std::vector<double>{1, 2, 3});
  // Only samples 0..k-1 are looked at.
  CHECK(as_vec(init_buffer(cloud_of<double>({{3, 0, 0}, {2, 0, 0}, {1, 0, 0}}), q, 2)) == std::vector<double>{2, 3});
}

TEST_CASE("init_buffer needs at least k samples") {
  try {
    init_buffer(cloud_of<double>({{1, 0, 0}, {2, 0, 0}}), QueryPoint<double>{0, 0}, 3);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
  CHECK_THROWS_AS(nearest_k_distances(cloud_of<double>({{1, 0, 0}}), QueryPoint<double>{0, 0}, 2), Error);
}

TEST_CASE("insert_candidate replaces the last slot and settles") {
  auto b = NeighborBuffer<double>::from_sorted({1, 2, 9});
  CHECK(as_vec(insert_candidate(b, 4.8)) == std::vector<double>{1, 2, 4.8});
  CHECK(as_vec(insert_candidate(NeighborBuffer<double>::from_sorted({1, 2, 3}), 5.0)) == std::vector<double>{1, 2, 3});
  CHECK(as_vec(insert_candidate(NeighborBuffer<double>::from_sorted({2, 4, 6}), 1.0)) == std::vector<double>{1, 2, 4});
}

TEST_CASE("ties with the kth distance are rejected") {
  auto b = NeighborBuffer<double>::from_sorted({1, 2, 3});
  CHECK_FALSE(b.offer(3.0));
  CHECK(b.offer(2.0));
  CHECK(as_vec(b) == std::vector<double>{1, 2, 2});
}

TEST_CASE("from_sorted rejects empty or unsorted input") {
  CHECK_THROWS_AS(NeighborBuffer<double>::from_sorted({}), Error);
  CHECK_THROWS_AS(NeighborBuffer<double>::from_sorted({2, 1}), Error);
}

TEST_CASE("nearest_k_distances on small inputs") {
  std::vector<Sample<double>> line;
  for (int i = 1; i <= 5; ++i) line.push_back({double(i), 0, 0});
  CHECK(nearest_k_distances(cloud_of(line), QueryPoint<double>{0, 0}, 2) == std::vector<double>{1, 2});
  const auto d = nearest_k_distances(cloud_of(line), QueryPoint<double>{4, 0}, 3);
  CHECK(d.front() == 0.0);
}

TEST_CASE("buffer stays sorted and its maximum never grows") {
  const auto cloud = test::seeded_cloud(400, 8);
  const QueryPoint<double> q{50, 50};
  auto b = init_buffer(cloud, q, 10);
  double last_max = b.kth();
  for (std::size_t i = 10; i < cloud.size(); ++i) {
    b = insert_candidate(b, distance(q, cloud.sample_at(i)));
    CHECK(std::is_sorted(b.distances().begin(), b.distances().end()));
    CHECK(b.kth() <= last_max);
    last_max = b.kth();
  }
}

TEST_CASE("1000 samples, 100 queries, k = 10 match the full-sort oracle") {
  const auto cloud = test::seeded_cloud(1000, 21);
  const auto queries = test::seeded_queries(100, 22);
  const auto samples = cloud.samples();
  for (const auto& q : queries) {
    CHECK(nearest_k_distances(cloud, q, 10) == oracle::knn_full_sort<double>(samples, q, 10));
  }
}

TEST_CASE("single precision matches a single-precision oracle") {
  const auto cloud = cast_cloud<float>(test::seeded_cloud(800, 23));
  const auto samples = cloud.samples();
  for (const auto& qd : test::seeded_queries(40, 24)) {
    const QueryPoint<float> q{float(qd.x), float(qd.y)};
    CHECK(nearest_k_distances(cloud, q, 5) == oracle::knn_full_sort<float>(samples, q, 5));
  }
}

TEST_CASE("result multiset ignores sample order") {
  auto samples = test::seeded_cloud(500, 25).samples();
  const QueryPoint<double> q{30, 60};
  const auto ref = nearest_k_distances(cloud_of(samples), q, 12);
  io::SplitMix64 rng(26);
  for (int round = 0; round < 5; ++round) {
    for (std::size_t i = samples.size() - 1; i > 0; --i) std::swap(samples[i], samples[rng.next() % (i + 1)]);
    CHECK(nearest_k_distances(cloud_of(samples), q, 12) == ref);
  }
}

TEST_CASE("layouts give the same neighbours") {
  const auto soa = test::seeded_cloud(300, 27);
  const auto aos = convert_layout(soa, Layout::AoS);
  for (const auto& q : test::seeded_queries(20, 28)) {
    CHECK(test::same_bits(nearest_k_distances(soa, q, 10), nearest_k_distances(aos, q, 10)));
  }
}

}
