#ifndef CYCLELAB_UTIL_HPP
#define CYCLELAB_UTIL_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclelab {

/// Thrown when an enumeration would exceed its configured budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Default enumeration budget, overridable via CYCLELAB_BUDGET.
std::uint64_t default_budget();

/// b^e with overflow detection. Throws std::range_error past 2^63.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// multinomial(n1+...+nl; n1,...,nl), overflow-checked.
std::uint64_t multinomial(const std::vector<unsigned>& parts);

/// Uniform draw in [0, bound) by rejection; portable across platforms
/// (uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Exact non-negative rational, kept reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    reduce();
  }

  void reduce() {
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// SHA-256 of a byte string, as lowercase hex. Used for run manifests.
std::string sha256_hex(const std::string& data);

}  // namespace cyclelab

#endif
