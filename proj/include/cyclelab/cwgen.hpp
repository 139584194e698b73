#ifndef CYCLELAB_CWGEN_HPP
#define CYCLELAB_CWGEN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "cyclelab/behrend.hpp"
#include "cyclelab/zvectors.hpp"

namespace cyclelab {

/// Parameters of the randomized balanced-vector construction.
struct CWConfig {
  int k = 3;                   // cycle length, >= 3
  int n = 1;                   // block size; vectors live in Z_k^{nk}
  std::uint64_t seed = 0;      // PRNG seed
  std::optional<double> c_k;   // constant in the modulus bound; default 2k*(k!)^2*k^k
  int trials = 1;              // random (w, c) attempts, best kept
  std::uint64_t budget = 0;    // partition enumeration budget, 0 = default
};

/// Output collection with per-trial diagnostics and the full RNG
/// transcript of the winning trial for replay.
struct CWResult {
  ZVecCollection collection;              // balanced vectors over Z_k
  std::uint64_t M = 0;                    // hash modulus (prime)
  BehrendSet B;                           // target set
  std::uint64_t partition_count = 0;      // multinomial(nk; n,...,n)
  std::vector<std::uint64_t> w;           // winning trial's hash weights
  std::vector<std::uint64_t> c;           // winning trial's offsets c_1..c_k
  int winning_trial = -1;                 // 0-based
  std::vector<std::uint64_t> L_sizes;     // |L_i| per i, winning trial
  std::vector<std::uint64_t> Lp_sizes;    // |L'_i| per i, winning trial
  // Pooled across all trials and all i, for the expectation diagnostic.
  std::vector<std::uint64_t> all_L_sizes;
  std::vector<std::uint64_t> all_Lp_sizes;
};

/// Runs the randomized construction and keeps the best trial by output
/// size. The result always passes verify_partition_unique.
CWResult cw_construct(const CWConfig& cfg);

/// Exhaustive check over k-tuples (with repetition, not all equal) of
/// collection members: a witness is a tuple whose positional parts
/// v_1|_1, ..., v_k|_k partition [nk]. Also validates balance.
std::optional<std::vector<Vec>> verify_partition_unique(const ZVecCollection& F, int k,
                                                        std::uint64_t budget = 0);

/// Empirical statistics of |L_i| and |L'_i| over repeated trials next to
/// the exact expectation multinomial(nk;n,...,n) * M^{-(k-1)} and the
/// one-half lower bound on E|L'_i|.
struct CWReport {
  std::uint64_t M = 0;
  std::uint64_t behrend_size = 0;
  std::uint64_t partition_count = 0;
  double expected_L = 0.0;        // exact E|L_i|
  double lower_bound_Lp = 0.0;    // (1/2) * expected_L
  double mean_L = 0.0;
  double var_L = 0.0;
  double mean_Lp = 0.0;
  double var_Lp = 0.0;
  std::uint64_t samples = 0;      // trials * |B|
};
CWReport cw_expectation_report(const CWConfig& cfg, int trials);

void to_json(nlohmann::json& j, const CWResult& r);
void to_json(nlohmann::json& j, const CWReport& r);

}  // namespace cyclelab

#endif
