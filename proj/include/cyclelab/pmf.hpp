#ifndef CYCLELAB_PMF_HPP
#define CYCLELAB_PMF_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "cyclelab/zvectors.hpp"

namespace cyclelab {

/// m ordered k-tuples of vectors in F_p^n. Each tuple sums to zero and
/// no cross-index combination x^(1)_{i_1} + ... + x^(k)_{i_k} vanishes
/// unless i_1 = ... = i_k (checked by verify_local_pmf, not enforced on
/// construction of the struct itself).
struct LocalPMF {
  int p = 2;
  int k = 3;
  int n = 0;
  std::vector<std::vector<Vec>> tuples;  // tuples[i][j] is x^(j+1)_{i+1}

  std::size_t size() const { return tuples.size(); }
};

/// Collection of vectors in Z_3^n with the (strong) unique-solvability
/// property over permutation triples. Symbols are 0-based.
struct USPCollection {
  enum class Strength { usp, strong };
  int n = 0;
  std::vector<Vec> vectors;
  Strength strength = Strength::usp;
};

/// Checks per-tuple zero sums and then exhaustively scans [m]^k for a
/// cross-index zero sum. Returns the first violating index tuple
/// (1-based) in lexicographic order, or nullopt. Throws budget_error when
/// m^k exceeds the budget (0 = default).
std::optional<std::vector<std::size_t>> verify_local_pmf(const LocalPMF& P,
                                                         std::uint64_t budget = 0);

/// Maps a two-symbol-property collection over Z_{p^(k-1)} to a local PMF:
/// vector v becomes the k columns of the stacked matrices
/// B_{v_1}, ..., B_{v_n} from the kind-B gadget family for (p, k-1).
/// Throws std::invalid_argument carrying the witness if the collection
/// fails two_symbol_property.
LocalPMF sunflower_to_pmf(const ZVecCollection& F, int p, int k);

/// The diagonal embedding {(x, x, x)} of a sunflower-free collection
/// over Z_3, a local PMF for triangles over F_3.
LocalPMF diag_pmf(const ZVecCollection& F);

/// Componentwise concatenation: tuple (i, j) joins P1's tuple i with
/// P2's tuple j. Sizes multiply, lengths add.
LocalPMF concat_pmf(const LocalPMF& P1, const LocalPMF& P2);

/// Expands a (global) PMF into a local one with m! tuples: for each
/// permutation of [m], concatenate the m tuples in that order. The input
/// is verified to satisfy the global PMF condition (by checking the
/// output with verify_local_pmf); budget bounds m! (0 = default of 720).
LocalPMF globalize_to_local(const LocalPMF& P, std::uint64_t budget = 0);

/// Maps balanced vectors over Z_k to PMF tuples over F_p: the first k-1
/// vectors are the characteristic vectors of v|_1..v|_{k-1} and the last
/// is -1 times the characteristic vector of [nk] \ v|_k.
LocalPMF balanced_to_pmf(const ZVecCollection& F, int p);

/// Exhaustive USP check over permutation triples. Returns the first
/// uncaught triple (each permutation as a 0-based image list), or
/// nullopt. Budget bounds (m!)^3 (0 = default).
std::optional<std::array<std::vector<std::size_t>, 3>> verify_usp(
    const USPCollection& U, std::uint64_t budget = 0);

/// The query-exponent data of a local PMF: epsilon = m / p^n (exact) and
/// alpha = (k - 1 - log_p(m)/n) / (1 - log_p(m)/n).
struct PmfExponent {
  std::uint64_t eps_num = 0;
  std::uint64_t eps_den = 1;
  double alpha = 0.0;
};
PmfExponent pmf_to_exponent(const LocalPMF& P);

void to_json(nlohmann::json& j, const LocalPMF& P);
void from_json(const nlohmann::json& j, LocalPMF& P);
void to_json(nlohmann::json& j, const USPCollection& U);
void from_json(const nlohmann::json& j, USPCollection& U);

}  // namespace cyclelab

#endif
