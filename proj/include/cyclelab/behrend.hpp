#ifndef CYCLELAB_BEHREND_HPP
#define CYCLELAB_BEHREND_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

namespace cyclelab {

/// Subset of [1, m] free of non-trivial solutions to
/// x_1 + ... + x_r = r * x_{r+1}.
struct BehrendSet {
  int r = 2;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> elements;  // sorted ascending
  // Digit-construction parameters; d = 0 marks the greedy fallback used
  // when no digit parameters fit the range.
  struct Params {
    int d = 0;           // digit count
    int s = 0;           // digit bound (digits in [0, s))
    std::uint64_t q = 0; // base, r * s
    std::uint64_t t = 0; // common squared norm
  } params;
};

/// Smallest prime >= x. Supports magnitudes up to 2^62.
std::uint64_t next_prime(std::uint64_t x);

/// Digit construction: vectors y in {0..s-1}^d on a common sphere
/// |y|^2 = t, mapped to 1 + sum y_i q^{i-1} with base q = r*s so digit
/// sums never carry. Parameters swept exhaustively over q^d <= m,
/// keeping the most populous sphere. Falls back to a greedy scan of
/// [1, m] when no digit parameters fit. The result is re-verified with
/// verify_equation_free before returning.
BehrendSet behrend_construct(int r, std::uint64_t m);

/// First non-trivial solution (x_1,...,x_{r+1}) of the defining equation
/// in lexicographic order, over the integers or mod `modulus`, or
/// nullopt. Trivial means all entries equal.
std::optional<std::vector<std::uint64_t>> verify_equation_free(
    const std::vector<std::uint64_t>& elements, int r,
    std::optional<std::uint64_t> modulus = std::nullopt,
    std::uint64_t budget = 0);

void to_json(nlohmann::json& j, const BehrendSet& b);
void from_json(const nlohmann::json& j, BehrendSet& b);

}  // namespace cyclelab

#endif
