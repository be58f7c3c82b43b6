#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "hawkes/parallel.hpp"

using namespace hawkes;

namespace {

const Kernel kSigned = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});

}  // namespace

TEST_CASE("replica counts do not depend on the thread count") {
  const ReplicaPlan plan{kSigned, 1.0, 500.0, 12, 3, 40};
  const auto ref = replica_counts_serial(plan);
  REQUIRE(ref.size() == 40);
  for (int threads : {1, 2, 4, 8}) CHECK(replica_counts(plan, threads) == ref);
}

TEST_CASE("simulated replicas do not depend on the thread count") {
  const ReplicaPlan plan{kSigned, 1.0, 300.0, 9, 0, 24};
  const auto ref = simulate_replicas_serial(plan);
  for (int threads : {1, 3, 8}) {
    const auto got = simulate_replicas(plan, threads);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == ref[i]);
  }
  // Replica i of a shifted plan is replica first_replica + i of the original.
  ReplicaPlan shifted = plan;
  shifted.first_replica = 5;
  shifted.count = 3;
  const auto part = simulate_replicas_serial(shifted);
  for (std::size_t i = 0; i < 3; ++i) CHECK(part[i] == ref[5 + i]);
}

TEST_CASE("pooled windows do not depend on the thread count") {
  const ReplicaPlan plan{kSigned, 1.0, 200.0, 4, 0, 1};
  const WindowSample a = sample_windows(plan, 2.0, 5000, 1);
  const WindowSample b = sample_windows(plan, 2.0, 5000, 8);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() >= 5000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.windows[i].start == b.windows[i].start);
    CHECK(a.windows[i].relative_times == b.windows[i].relative_times);
  }
  CHECK(a.discarded_tail_count == b.discarded_tail_count);
  CHECK(a.provenance.kernel_hash == kSigned.hash());
}

TEST_CASE("parallel_for visits every index once and rethrows failures") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);

  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("too-short horizons are reported") {
  const ReplicaPlan plan{canceling_kernel(1.0, 5.0), 1.0, 1.0, 1, 0, 1};
  CHECK_THROWS_AS(sample_windows(plan, 5.0, 10, 1), std::runtime_error);
}
