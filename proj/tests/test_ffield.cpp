#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cyclelab/ffield.hpp"

using namespace cyclelab;

TEST_CASE("F_2 basics") {
  FieldSpec f = FieldSpec::make(2, 1);
  CHECK(f.modulus() == std::vector<int>{0, 1});  // x
  CHECK(f.generator().coeffs == std::vector<int>{1});
  CHECK(f.add(f.one(), f.one()).is_zero());
}

TEST_CASE("F_4: modulus x^2+x+1, generator beta = class of x") {
  FieldSpec f = FieldSpec::make(2, 2);
  CHECK(f.modulus() == std::vector<int>{1, 1, 1});
  const FieldElem beta = f.generator();
  CHECK(beta.coeffs == std::vector<int>{0, 1});
  CHECK(f.enc(beta) == std::vector<int>{0, 1});
  // x^2 = x + 1 mod x^2+x+1
  CHECK(f.mul(beta, beta).coeffs == std::vector<int>{1, 1});
}

TEST_CASE("F_9: modulus x^2+1") {
  FieldSpec f = FieldSpec::make(3, 2);
  CHECK(f.modulus() == std::vector<int>{1, 0, 1});

  // enc is additive over all 81 pairs.
  for (std::uint64_t i = 0; i < 9; ++i)
    for (std::uint64_t j = 0; j < 9; ++j) {
      const FieldElem a = f.element(i), b = f.element(j);
      std::vector<int> expect = f.enc(f.add(a, b));
      std::vector<int> got = f.enc(a);
      const std::vector<int> eb = f.enc(b);
      for (std::size_t c = 0; c < got.size(); ++c) got[c] = (got[c] + eb[c]) % 3;
      CHECK(got == expect);
    }
}

TEST_CASE("inverse axiom and generator order, p^k <= 256") {
  for (auto [p, k] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                      {5, 1}, {5, 2}, {7, 1}, {2, 8}}) {
    FieldSpec f = FieldSpec::make(p, k);
    for (std::uint64_t i = 1; i < f.order(); ++i) {
      const FieldElem a = f.element(i);
      CHECK(f.mul(a, f.inv(a)) == f.one());
    }
    // Powers of the generator hit every nonzero element exactly once.
    std::set<std::uint64_t> seen;
    FieldElem x = f.one();
    for (std::uint64_t e = 0; e + 1 < f.order(); ++e) {
      seen.insert(f.index_of(x));
      x = f.mul(x, f.generator());
    }
    CHECK(seen.size() == f.order() - 1);
    CHECK(x == f.one());
  }
}

TEST_CASE("element enumeration round-trips, constant term least significant") {
  FieldSpec f = FieldSpec::make(3, 2);
  CHECK(f.element(0).is_zero());
  CHECK(f.element(1) == f.one());
  CHECK(f.element(5).coeffs == std::vector<int>{2, 1});  // 5 = 2 + 1*3
  for (std::uint64_t i = 0; i < f.order(); ++i) CHECK(f.index_of(f.element(i)) == i);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(FieldSpec::make(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::make(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::make(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::make(2, 17), std::range_error);
  FieldSpec f = FieldSpec::make(2, 2);
  CHECK_THROWS_AS(f.inv(f.zero()), std::domain_error);
}

TEST_CASE("is_prime_u64 spot checks") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(97));
  CHECK(is_prime_u64(2147483647ULL));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(91));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to several bases
}
