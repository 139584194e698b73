#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclelab/cwgen.hpp"

using namespace cyclelab;

namespace {

ZVecCollection coll(int D, int n, std::vector<Vec> vs) {
  ZVecCollection c;
  c.D = D;
  c.n = n;
  c.vectors = std::move(vs);
  c.normalize();
  return c;
}

}  // namespace

TEST_CASE("verify_partition_unique") {
  CHECK_FALSE(verify_partition_unique(coll(3, 3, {{0, 1, 2}}), 3).has_value());

  auto w = verify_partition_unique(coll(3, 3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}), 3);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<Vec>{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});

  // Unbalanced vectors are a precondition violation, not a witness.
  CHECK_THROWS_AS(verify_partition_unique(coll(3, 3, {{0, 0, 1}}), 3),
                  std::invalid_argument);
}

TEST_CASE("cw_construct at (3,1) with a small constant") {
  CWConfig cfg;
  cfg.k = 3;
  cfg.n = 1;
  cfg.seed = 0;
  cfg.c_k = 2.0;
  cfg.trials = 60;
  CWResult r = cw_construct(cfg);
  // multinomial(2;1,1) = 2, M = next_prime(max(ceil(2*2), 4)) = 5.
  CHECK(r.M == 5);
  CHECK(r.partition_count == 6);
  CHECK(r.B.elements == std::vector<std::uint64_t>{1, 2});
  CHECK_FALSE(verify_partition_unique(r.collection, 3).has_value());
  for (const Vec& v : r.collection.vectors) {
    int counts[3] = {0, 0, 0};
    for (int s : v) ++counts[s];
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 1);
    CHECK(counts[2] == 1);
  }
}

TEST_CASE("cw_construct is seed-deterministic") {
  CWConfig cfg;
  cfg.k = 3;
  cfg.n = 2;
  cfg.seed = 7;
  cfg.c_k = 2.0;
  cfg.trials = 20;
  CWResult a = cw_construct(cfg);
  CWResult b = cw_construct(cfg);
  CHECK(a.collection.vectors == b.collection.vectors);
  CHECK(a.w == b.w);
  CHECK(a.c == b.c);
  CHECK(a.winning_trial == b.winning_trial);

  cfg.seed = 8;
  CWResult c = cw_construct(cfg);
  // Different seed gives a different transcript.
  CHECK((a.w != c.w || a.c != c.c));
}

TEST_CASE("cw_construct k=4 n=1 verifies") {
  CWConfig cfg;
  cfg.k = 4;
  cfg.n = 1;
  cfg.seed = 3;
  cfg.c_k = 2.0;
  cfg.trials = 100;
  CWResult r = cw_construct(cfg);
  CHECK(r.partition_count == 24);
  CHECK_FALSE(verify_partition_unique(r.collection, 4).has_value());
}

TEST_CASE("cw_expectation_report") {
  CWConfig cfg;
  cfg.k = 3;
  cfg.n = 1;
  cfg.seed = 1;
  cfg.c_k = 2.0;
  CHECK_THROWS_AS(cw_expectation_report(cfg, 0), std::invalid_argument);

  CWReport rep = cw_expectation_report(cfg, 200);
  CHECK(rep.M == 5);
  CHECK(rep.expected_L == doctest::Approx(6.0 / 25.0));
  CHECK(rep.lower_bound_Lp == doctest::Approx(3.0 / 25.0));
  CHECK(rep.samples > 0);
  CHECK(rep.mean_Lp >= 0.0);
  // 3-standard-error agreement with the exact expectation.
  const double se = std::sqrt(rep.var_L / static_cast<double>(rep.samples));
  CHECK(std::abs(rep.mean_L - rep.expected_L) <= 3.0 * se + 1e-12);
}

TEST_CASE("invalid configs") {
  CWConfig cfg;
  cfg.k = 2;
  cfg.n = 1;
  CHECK_THROWS_AS(cw_construct(cfg), std::invalid_argument);
  cfg.k = 3;
  cfg.n = 0;
  CHECK_THROWS_AS(cw_construct(cfg), std::invalid_argument);
  cfg.n = 1;
  cfg.trials = 0;
  CHECK_THROWS_AS(cw_construct(cfg), std::invalid_argument);
}
