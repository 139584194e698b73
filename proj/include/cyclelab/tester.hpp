#ifndef CYCLELAB_TESTER_HPP
#define CYCLELAB_TESTER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "cyclelab/pmf.hpp"
#include "cyclelab/util.hpp"
#include "cyclelab/zvectors.hpp"

namespace cyclelab {

/// A k-tuple of Boolean functions on F_p^n given by their supports.
/// single_mode marks one-function instances, where all k supports are
/// the same set.
struct CycleInstance {
  int p = 2;
  int k = 3;
  int n = 0;
  std::vector<std::vector<Vec>> supports;  // supports[j] = supp(f_{j+1}), sorted
  bool single_mode = false;

  void normalize();  // sorts, dedups, validates
};

/// Characteristic-function instance of a local PMF: support j collects
/// the position-j vectors of all tuples. Has exactly |P| cycles, and
/// they are pairwise disjoint.
CycleInstance pmf_to_instance(const LocalPMF& P);

/// Number of ordered cycles: tuples (x_1,...,x_{k-1}) with x_j in
/// supp(f_j) and -sum x_j in supp(f_k).
std::uint64_t count_cycles(const CycleInstance& inst, std::uint64_t budget = 0);

/// Number of unordered cycles of a single-function instance: multisets
/// {x_1,...,x_k} from the support with zero sum, counted once each.
std::uint64_t count_unordered_cycles(const CycleInstance& inst, std::uint64_t budget = 0);

/// count_cycles / p^((k-1) n) as an exact rational: the per-iteration
/// hit probability of the canonical tester.
Rational rejection_probability(const CycleInstance& inst, std::uint64_t budget = 0);

struct SimulationResult {
  bool found = false;
  std::uint64_t trials_used = 0;  // first-hit trial (1-based), or iterations when no hit
  std::uint64_t hits = 0;
  double empirical_rate = 0.0;
};

/// Seeded canonical-tester simulation: each iteration draws k-1 uniform
/// vectors, completes the zero-sum tuple, and checks membership.
SimulationResult simulate_canonical(const CycleInstance& inst, std::uint64_t iterations,
                                    std::uint64_t seed);

struct DistanceResult {
  std::uint64_t changes = 0;  // minimum value flips destroying all cycles
  Rational eps;               // changes / p^n
};

/// Exact minimum number of 1->0 flips over (function, point) pairs that
/// hits every cycle, by branch and bound over the cycle hypergraph.
/// Adding support never removes a cycle, so restricting to 1->0 flips
/// loses no optimality. Throws budget_error past ~10^4 cycles.
DistanceResult exact_distance(const CycleInstance& inst, std::uint64_t max_cycles = 10000);

/// Query-exponent alpha = (k-1 - log_p d) / (1 - log_p d) for a
/// capacity lower bound d with 1 < d < p.
double lower_bound_exponent(int k, double p, double d);

/// g(k) = (k-1 - H(1/k)/log2 p) / (1 - H(1/k)/log2 p), H the binary
/// entropy. Equals lower_bound_exponent(k, p, 2^H(1/k)).
double g_exponent(int k, double p);

/// Packs a k-tuple of functions into one function on F_p^(n+k-1) using
/// unit-vector markers in the extra coordinates; the unordered cycles of
/// the output biject with the ordered cycles of the input. Requires that
/// p does not divide k.
CycleInstance reduce_to_single(const CycleInstance& inst);

/// Pads the domain to n_target coordinates with zero-sum tails; the
/// ordered cycle count scales by (p^(delta-1))^(k-1) for
/// delta = n_target - n.
CycleInstance extend_domain(const CycleInstance& inst, int n_target);

/// One-sided zero tester: draws ceil(3/eps) uniform points and rejects
/// on any support hit.
struct ZeroTestResult {
  bool accept = true;
  std::uint64_t queries = 0;
};
ZeroTestResult zero_tester(const std::vector<Vec>& support, int p, int n, double eps,
                           std::uint64_t seed);

void to_json(nlohmann::json& j, const CycleInstance& inst);
void from_json(const nlohmann::json& j, CycleInstance& inst);
void to_json(nlohmann::json& j, const Rational& r);
void to_json(nlohmann::json& j, const SimulationResult& r);
void to_json(nlohmann::json& j, const DistanceResult& r);

}  // namespace cyclelab

#endif
