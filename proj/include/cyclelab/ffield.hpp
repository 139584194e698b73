#ifndef CYCLELAB_FFIELD_HPP
#define CYCLELAB_FFIELD_HPP

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace cyclelab {

/// Element of F_{p^k} in the polynomial basis, constant term first.
/// Coordinates are residues in [0, p).
struct FieldElem {
  std::vector<int> coeffs;

  bool operator==(const FieldElem& o) const { return coeffs == o.coeffs; }
  bool is_zero() const {
    for (int c : coeffs)
      if (c != 0) return false;
    return true;
  }
};

/// The field F_{p^k}: characteristic, degree, a monic irreducible modulus
/// of degree k (coefficient sequence, constant term first, length k+1),
/// and a generator of the multiplicative group.
///
/// Construction is deterministic: the modulus is the lexicographically
/// smallest monic irreducible (compared low-degree-first) and the generator
/// is the first generator in element enumeration order.
class FieldSpec {
 public:
  /// Builds F_{p^k}. Throws std::invalid_argument if p is not prime or
  /// k < 1, std::range_error if p^k > 2^16.
  static FieldSpec make(int p, int k);

  int p() const { return p_; }
  int k() const { return k_; }
  std::uint64_t order() const { return order_; }  // p^k
  const std::vector<int>& modulus() const { return modulus_; }
  const FieldElem& generator() const { return generator_; }

  /// i-th field element in enumeration order (ascending coefficient
  /// vector, base-p digits of i with the constant term least significant).
  /// element(0) is zero, element(1) is one.
  FieldElem element(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElem& a) const;

  FieldElem zero() const { return element(0); }
  FieldElem one() const { return element(1); }

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  /// Throws std::domain_error on zero.
  FieldElem inv(const FieldElem& a) const;
  FieldElem pow(const FieldElem& a, std::uint64_t e) const;

  /// The linear encoding F_{p^k} -> F_p^k: the polynomial-basis
  /// coefficient vector itself.
  std::vector<int> enc(const FieldElem& a) const { return a.coeffs; }

 private:
  FieldSpec() = default;
  void check_member(const FieldElem& a) const;

  int p_ = 0;
  int k_ = 0;
  std::uint64_t order_ = 0;
  std::vector<int> modulus_;
  FieldElem generator_;
};

bool is_prime_u64(std::uint64_t n);

void to_json(nlohmann::json& j, const FieldSpec& f);

}  // namespace cyclelab

#endif
