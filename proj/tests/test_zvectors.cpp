#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "cyclelab/zvectors.hpp"

using namespace cyclelab;

namespace {

ZVecCollection coll(int D, int n, std::vector<Vec> vs) {
  ZVecCollection c;
  c.D = D;
  c.n = n;
  c.vectors = std::move(vs);
  c.normalize();
  return c;
}

/// All vectors of Z_D^n in lexicographic order.
std::vector<Vec> all_vectors(int D, int n) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    int pos = n - 1;
    while (pos >= 0 && v[pos] == D - 1) v[pos--] = 0;
    if (pos < 0) break;
    ++v[pos];
  }
  return out;
}

}  // namespace

TEST_CASE("is_sunflower basics over Z_4") {
  CHECK(is_sunflower({0, 0}, {1, 1}, {2, 2}));
  CHECK(is_sunflower({0, 0}, {0, 1}, {0, 2}));
  CHECK_FALSE(is_sunflower({0, 0}, {0, 1}, {1, 2}));
  CHECK_THROWS_AS(is_sunflower({0, 0}, {0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(is_sunflower({0}, {1, 0}, {2, 0}), std::invalid_argument);
}

TEST_CASE("is_sunflower is argument-order invariant") {
  Vec a{0, 1}, b{1, 1}, c{2, 1};
  const bool expect = is_sunflower(a, b, c);
  CHECK(is_sunflower(a, c, b) == expect);
  CHECK(is_sunflower(b, a, c) == expect);
  CHECK(is_sunflower(c, b, a) == expect);
}

TEST_CASE("find_sunflower") {
  CHECK_FALSE(find_sunflower(coll(4, 1, {{0}, {1}})).has_value());
  auto w = find_sunflower(coll(4, 1, {{0}, {1}, {2}}));
  REQUIRE(w.has_value());
  CHECK((*w)[0] == Vec{0});
  CHECK((*w)[1] == Vec{1});
  CHECK((*w)[2] == Vec{2});
  CHECK_FALSE(find_sunflower(coll(3, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})).has_value());
}

TEST_CASE("two_symbol_property") {
  CHECK_FALSE(two_symbol_property(coll(4, 1, {{0}, {1}}), 3).has_value());
  auto w = two_symbol_property(coll(4, 1, {{0}, {1}, {2}}), 3);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<Vec>{{0}, {1}, {2}});

  // The all-diagonal collection over Z_4^2 fails at k = 4; the witness
  // is the first violating tuple in enumeration order, and no coordinate
  // of it carries exactly two symbols.
  auto w4 = two_symbol_property(coll(4, 2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}), 4);
  REQUIRE(w4.has_value());
  REQUIRE(w4->size() == 4);
  for (int c = 0; c < 2; ++c) {
    std::set<int> symbols;
    for (const Vec& v : *w4) symbols.insert(v[c]);
    CHECK(symbols.size() != 2);
  }
}

TEST_CASE("k=3 two-symbol matches sunflower-freeness exhaustively") {
  for (auto [D, n] : {std::pair{3, 1}, {4, 1}, {3, 2}}) {
    const std::vector<Vec> space = all_vectors(D, n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << space.size()); ++mask) {
      ZVecCollection c;
      c.D = D;
      c.n = n;
      for (std::size_t i = 0; i < space.size(); ++i)
        if (mask & (std::uint64_t(1) << i)) c.vectors.push_back(space[i]);
      c.normalize();
      CHECK(find_sunflower(c).has_value() == two_symbol_property(c, 3).has_value());
    }
  }
}

TEST_CASE("recode_base") {
  ZVecCollection out = recode_base(coll(9, 1, {{0}, {8}}), 3);
  CHECK(out.D == 3);
  CHECK(out.n == 2);
  CHECK(out.vectors == std::vector<Vec>{{0, 0}, {2, 2}});

  ZVecCollection out2 = recode_base(coll(4, 1, {{3}}), 2);
  CHECK(out2.vectors == std::vector<Vec>{{1, 1}});

  CHECK_THROWS_AS(recode_base(coll(6, 1, {{0}}), 2), std::invalid_argument);
}

TEST_CASE("recode_base preserves cardinality and sunflower-freeness over Z_9^1") {
  const std::vector<Vec> space = all_vectors(9, 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
    ZVecCollection c;
    c.D = 9;
    c.n = 1;
    for (std::size_t i = 0; i < 9; ++i)
      if (mask & (std::uint64_t(1) << i)) c.vectors.push_back(space[i]);
    c.normalize();
    if (find_sunflower(c).has_value()) continue;
    ZVecCollection r = recode_base(c, 3);
    CHECK(r.size() == c.size());
    CHECK_FALSE(find_sunflower(r).has_value());
  }
}

TEST_CASE("partition encode/decode") {
  BalancedPartition bp = partition_encode({{1}, {2}, {3}});
  CHECK(bp.vector == Vec{0, 1, 2});
  CHECK(bp.k == 3);
  CHECK(bp.n == 1);

  CHECK_THROWS_AS(partition_encode({{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(partition_encode({{1, 2}, {2, 3}}), std::invalid_argument);

  // decode(encode) = id over all partitions of [6] into three pairs.
  std::vector<int> elems{1, 2, 3, 4, 5, 6};
  int cases = 0;
  std::sort(elems.begin(), elems.end());
  std::vector<int> perm = elems;
  do {
    if (perm[0] > perm[1] || perm[2] > perm[3] || perm[4] > perm[5]) continue;
    std::vector<std::vector<int>> parts{{perm[0], perm[1]}, {perm[2], perm[3]}, {perm[4], perm[5]}};
    BalancedPartition enc = partition_encode(parts);
    BalancedPartition dec = partition_decode(enc.vector, 3);
    CHECK(dec.parts == enc.parts);
    ++cases;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(cases == 90);
}

TEST_CASE("normalize rejects bad symbols") {
  ZVecCollection c;
  c.D = 3;
  c.n = 1;
  c.vectors = {{3}};
  CHECK_THROWS_AS(c.normalize(), std::invalid_argument);
}

TEST_CASE("JSON round-trip") {
  ZVecCollection c = coll(4, 2, {{0, 1}, {3, 2}});
  nlohmann::json j;
  to_json(j, c);
  ZVecCollection d = j.get<ZVecCollection>();
  CHECK(d.D == c.D);
  CHECK(d.n == c.n);
  CHECK(d.vectors == c.vectors);
}
