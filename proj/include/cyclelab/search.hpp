#ifndef CYCLELAB_SEARCH_HPP
#define CYCLELAB_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "json.hpp"
#include "cyclelab/zvectors.hpp"

namespace cyclelab {

struct SearchReport {
  int D = 0;
  int n = 0;
  int k = 3;  // tuple arity for the two-symbol predicate; 3 for sunflower searches
  ZVecCollection best;
  bool optimal = false;  // true only when the exhaustive search completed
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;  // seconds
};

struct SearchOptions {
  std::uint64_t budget = 0;     // node budget; 0 = default_budget()
  bool prune = true;            // canonical-form symmetry pruning
  std::string checkpoint;       // if set, the frontier is saved here on budget exhaustion
};

/// Largest 3-sunflower-free subset of Z_D^n by orderly depth-first
/// generation: collections grow by lexicographically larger vectors, and
/// with pruning on only canonical representatives (lex-minimal under
/// coordinate permutation x per-coordinate symbol relabeling) are
/// extended. Budget exhaustion degrades to best-found with
/// optimal = false.
SearchReport max_sunflower_free(int D, int n, const SearchOptions& opts = {});

/// Same search with the k-tuple two-symbol predicate.
SearchReport max_two_symbol(int D, int n, int k, const SearchOptions& opts = {});

/// Resumes a search from a checkpoint written by an exhausted run.
SearchReport resume_search(const std::string& checkpoint_path, const SearchOptions& opts = {});

/// Randomized greedy maximalization: shuffles the candidate vectors with
/// the seeded generator and adds each one that keeps the predicate true.
/// The input must already satisfy the predicate.
ZVecCollection greedy_extend(const ZVecCollection& coll,
                             const std::function<bool(const ZVecCollection&)>& predicate,
                             std::uint64_t seed);

void to_json(nlohmann::json& j, const SearchReport& r);
void from_json(const nlohmann::json& j, SearchReport& r);

}  // namespace cyclelab

#endif
