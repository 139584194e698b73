#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cyclelab/pmf.hpp"
#include "cyclelab/tester.hpp"

using namespace cyclelab;

namespace {

LocalPMF two_tuple_example() {
  LocalPMF P;
  P.p = 2;
  P.k = 3;
  P.n = 2;
  P.tuples = {{{0, 0}, {0, 0}, {0, 0}}, {{1, 0}, {0, 1}, {1, 1}}};
  return P;
}

CycleInstance full_instance() {
  CycleInstance inst;
  inst.p = 2;
  inst.k = 3;
  inst.n = 1;
  inst.supports = {{{0}, {1}}, {{0}, {1}}, {{0}, {1}}};
  inst.single_mode = true;
  inst.normalize();
  return inst;
}

}  // namespace

TEST_CASE("count_cycles basics") {
  CycleInstance empty;
  empty.p = 2;
  empty.k = 3;
  empty.n = 1;
  empty.supports = {{}, {}, {}};
  empty.normalize();
  CHECK(count_cycles(empty) == 0);

  CHECK(count_cycles(full_instance()) == 4);

  LocalPMF P = two_tuple_example();
  CHECK(count_cycles(pmf_to_instance(P)) == P.size());
  LocalPMF sq = concat_pmf(P, P);
  CHECK(count_cycles(pmf_to_instance(sq)) == sq.size());
}

TEST_CASE("rejection probability") {
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  CHECK(rejection_probability(inst) == Rational(1, 8));  // 2 / 2^4
  CHECK(rejection_probability(full_instance()) == Rational(1, 1));

  CycleInstance empty;
  empty.p = 2;
  empty.k = 3;
  empty.n = 1;
  empty.supports = {{}, {}, {}};
  empty.normalize();
  CHECK(rejection_probability(empty) == Rational(0, 1));
}

TEST_CASE("simulate_canonical") {
  CycleInstance empty;
  empty.p = 2;
  empty.k = 3;
  empty.n = 2;
  empty.supports = {{}, {}, {}};
  empty.normalize();
  SimulationResult none = simulate_canonical(empty, 1000, 5);
  CHECK_FALSE(none.found);
  CHECK(none.empirical_rate == 0.0);

  SimulationResult all = simulate_canonical(full_instance(), 100, 5);
  CHECK(all.found);
  CHECK(all.trials_used == 1);
  CHECK(all.empirical_rate == doctest::Approx(1.0));

  // Identical seeds agree.
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  SimulationResult a = simulate_canonical(inst, 20000, 11);
  SimulationResult b = simulate_canonical(inst, 20000, 11);
  CHECK(a.hits == b.hits);
  // 99% binomial CI around 1/8 at 2*10^4 iterations.
  const double p0 = 0.125;
  const double half = 2.5758 * std::sqrt(p0 * (1 - p0) / 20000.0);
  CHECK(std::abs(a.empirical_rate - p0) <= half);
}

TEST_CASE("exact_distance") {
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  DistanceResult d = exact_distance(inst);
  CHECK(d.changes == 2);
  CHECK(d.eps == Rational(1, 2));

  CycleInstance empty;
  empty.p = 2;
  empty.k = 3;
  empty.n = 1;
  empty.supports = {{}, {}, {}};
  empty.normalize();
  CHECK(exact_distance(empty).changes == 0);

  // Full instance: killing all 4 cycles needs exactly 2 point removals.
  // Removing f_3 entirely (2 points) works; one removal leaves a cycle.
  CHECK(exact_distance(full_instance()).changes == 2);
}

TEST_CASE("exponent formulas") {
  CHECK(lower_bound_exponent(3, 2, 1.67) == doctest::Approx(4.845).epsilon(0.002));
  CHECK(lower_bound_exponent(3, 2, 3.0 / std::pow(2.0, 2.0 / 3.0)) ==
        doctest::Approx(13.239).epsilon(0.0002));
  CHECK(lower_bound_exponent(3, 3, std::pow(2.0, 4.0 / 3.0)) ==
        doctest::Approx(7.298).epsilon(0.0002));
  CHECK(g_exponent(3, 2) == doctest::Approx(13.239).epsilon(0.0002));
  CHECK(g_exponent(4, 2) == doctest::Approx(11.60).epsilon(0.002));
  CHECK(g_exponent(3, 3) == doctest::Approx(3.38).epsilon(0.005));

  // g(k, p) equals the capacity formula at d = 2^{H(1/k)}.
  for (int k : {3, 4, 5})
    for (double p : {2.0, 3.0, 5.0}) {
      const double H = -(1.0 / k) * std::log2(1.0 / k) -
                       (1.0 - 1.0 / k) * std::log2(1.0 - 1.0 / k);
      CHECK(std::abs(g_exponent(k, p) - lower_bound_exponent(k, p, std::pow(2.0, H))) <
            1e-9);
    }

  CHECK_THROWS_AS(lower_bound_exponent(3, 2, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_exponent(3, 2, 1.0), std::invalid_argument);
}

TEST_CASE("reduce_to_single") {
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  CycleInstance single = reduce_to_single(inst);
  CHECK(single.single_mode);
  CHECK(single.n == inst.n + inst.k - 1);
  CHECK(count_unordered_cycles(single) == count_cycles(inst));

  CycleInstance empty;
  empty.p = 2;
  empty.k = 3;
  empty.n = 1;
  empty.supports = {{{1}}, {{1}}, {}};
  empty.normalize();
  CHECK(count_unordered_cycles(reduce_to_single(empty)) == 0);

  CycleInstance bad;
  bad.p = 2;
  bad.k = 4;
  bad.n = 1;
  bad.supports = {{}, {}, {}, {}};
  bad.normalize();
  CHECK_THROWS_AS(reduce_to_single(bad), std::invalid_argument);
}

TEST_CASE("extend_domain") {
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  CHECK(count_cycles(extend_domain(inst, 3)) == 2);  // 2 * (2^0)^2
  CHECK(count_cycles(extend_domain(inst, 4)) == 8);  // 2 * (2^1)^2
  CHECK_THROWS_AS(extend_domain(inst, 2), std::invalid_argument);

  CycleInstance empty;
  empty.p = 3;
  empty.k = 3;
  empty.n = 1;
  empty.supports = {{}, {}, {}};
  empty.normalize();
  CHECK(count_cycles(extend_domain(empty, 3)) == 0);
}

TEST_CASE("zero_tester") {
  ZeroTestResult a = zero_tester({}, 2, 3, 0.25, 1);
  CHECK(a.accept);
  CHECK(a.queries == 12);  // ceil(3/0.25)

  std::vector<Vec> full;
  for (int i = 0; i < 8; ++i) full.push_back({i / 4, (i / 2) % 2, i % 2});
  ZeroTestResult r = zero_tester(full, 2, 3, 0.25, 1);
  CHECK_FALSE(r.accept);

  CHECK_THROWS_AS(zero_tester({}, 2, 3, 0.0, 1), std::invalid_argument);

  // |supp| = eps * p^n: rejection frequency over seeded runs is high.
  std::vector<Vec> quarter{{0, 0, 0}, {0, 0, 1}};  // 2/8 = 0.25
  int rejects = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed)
    if (!zero_tester(quarter, 2, 3, 0.25, seed).accept) ++rejects;
  CHECK(rejects >= 2000 * 0.93);
}

TEST_CASE("instance normalization and JSON") {
  CycleInstance inst = pmf_to_instance(two_tuple_example());
  nlohmann::json j;
  to_json(j, inst);
  CycleInstance back = j.get<CycleInstance>();
  CHECK(back.supports == inst.supports);

  CycleInstance bad = inst;
  bad.supports.pop_back();
  CHECK_THROWS_AS(bad.normalize(), std::invalid_argument);
}
