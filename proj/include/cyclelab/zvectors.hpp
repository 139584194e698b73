#ifndef CYCLELAB_ZVECTORS_HPP
#define CYCLELAB_ZVECTORS_HPP

#include <array>
#include <optional>
#include <vector>

#include "json.hpp"

namespace cyclelab {

using Vec = std::vector<int>;

/// A set of distinct length-n vectors with entries in [0, D).
/// Vectors are kept sorted lexicographically, so iteration order and all
/// first-witness results are deterministic.
struct ZVecCollection {
  int D = 2;
  int n = 0;
  std::vector<Vec> vectors;

  /// Sorts, deduplicates, and validates entries. Throws on out-of-range
  /// symbols or length mismatches.
  void normalize();
  std::size_t size() const { return vectors.size(); }
};

/// True iff in every coordinate the three symbols are all equal or all
/// pairwise distinct. The three vectors must be pairwise distinct and of
/// equal length.
bool is_sunflower(const Vec& v1, const Vec& v2, const Vec& v3);

/// Lexicographically first 3-sunflower among unordered triples of the
/// collection, or nullopt.
std::optional<std::array<Vec, 3>> find_sunflower(const ZVecCollection& coll);

/// Checks two-symbol coverage: every k-tuple of members
/// (with repetition, not all equal) must have a coordinate carrying
/// exactly two distinct symbols. Returns the first k-tuple with no such
/// coordinate, or nullopt. For k = 3 this matches find_sunflower.
std::optional<std::vector<Vec>> two_symbol_property(const ZVecCollection& coll, int k);

/// Replaces each symbol of Z_{q^t} by its t base-q digits, most
/// significant first. Requires D to be exactly a power of q.
ZVecCollection recode_base(const ZVecCollection& coll, int q);

/// A balanced vector in Z_k^{nk} together with its symbol classes.
/// parts[j] holds the 1-based positions i with vector[i-1] = j, and every
/// part has size exactly n.
struct BalancedPartition {
  int k = 0;
  int n = 0;
  Vec vector;
  std::vector<std::vector<int>> parts;
};

/// Encodes k equal-size parts partitioning [nk] (1-based positions) as a
/// balanced vector. Throws on unbalanced or non-partitioning input.
BalancedPartition partition_encode(const std::vector<std::vector<int>>& parts);

/// Inverse of partition_encode.
BalancedPartition partition_decode(const Vec& vector, int k);

void to_json(nlohmann::json& j, const ZVecCollection& c);
void from_json(const nlohmann::json& j, ZVecCollection& c);

}  // namespace cyclelab

#endif
