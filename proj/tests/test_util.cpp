#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclelab/util.hpp"

using namespace cyclelab;

TEST_CASE("checked_pow") {
  CHECK(checked_pow(2, 10) == 1024);
  CHECK(checked_pow(3, 0) == 1);
  CHECK(checked_pow(7, 1) == 7);
  CHECK(checked_pow(2, 62) == (std::uint64_t(1) << 62));
  CHECK_THROWS_AS(checked_pow(2, 64), std::range_error);
  CHECK_THROWS_AS(checked_pow(10, 20), std::range_error);
}

TEST_CASE("multinomial") {
  CHECK(multinomial({1, 1, 1}) == 6);
  CHECK(multinomial({2, 2, 2}) == 90);
  CHECK(multinomial({2, 2}) == 6);
  CHECK(multinomial({5}) == 1);
  CHECK(multinomial({1, 1, 1, 1}) == 24);
  CHECK(multinomial({4, 4, 4}) == 34650);
}

TEST_CASE("uniform_below stays in range and is deterministic") {
  std::mt19937_64 a(42), b(42);
  bool seen[5] = {false, false, false, false, false};
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t x = uniform_below(a, 5);
    CHECK(x < 5);
    seen[x] = true;
    CHECK(x == uniform_below(b, 5));
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("Rational reduces") {
  Rational r(2, 16);
  CHECK(r.num == 1);
  CHECK(r.den == 8);
  CHECK(Rational(0, 7) == Rational(0, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK(Rational(4, 4).to_double() == doctest::Approx(1.0));
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("default budget is positive") { CHECK(default_budget() > 0); }
