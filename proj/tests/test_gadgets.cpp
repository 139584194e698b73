#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclelab/gadgets.hpp"

using namespace cyclelab;

namespace {

std::vector<int> column_of(const MatrixFamily& f, std::size_t i, int col) {
  std::vector<int> v;
  for (int r = 0; r < f.rows(); ++r) v.push_back(f.matrices[i][r][col]);
  return v;
}

}  // namespace

TEST_CASE("construct_A(2,1): [0] and [1]") {
  MatrixFamily f = construct_A(2, 1);
  REQUIRE(f.matrices.size() == 2);
  CHECK(f.matrices[0] == std::vector<std::vector<int>>{{0}});
  CHECK(f.matrices[1] == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("construct_A(2,2): zero matrix first, then identity columns for alpha=1") {
  MatrixFamily f = construct_A(2, 2);
  REQUIRE(f.matrices.size() == 4);
  CHECK(f.matrices[0] == std::vector<std::vector<int>>{{0, 0}, {0, 0}});
  CHECK(column_of(f, 1, 0) == std::vector<int>{1, 0});  // enc(1)
  CHECK(column_of(f, 1, 1) == std::vector<int>{0, 1});  // enc(beta)
}

TEST_CASE("construct_B(2,1): [0|0] and [1|1]") {
  MatrixFamily f = construct_B(2, 1);
  REQUIRE(f.matrices.size() == 2);
  CHECK(f.matrices[0] == std::vector<std::vector<int>>{{0, 0}});
  CHECK(f.matrices[1] == std::vector<std::vector<int>>{{1, 1}});
}

TEST_CASE("construct_B(2,2), alpha=1: columns (1,0),(0,1),(1,1)") {
  MatrixFamily f = construct_B(2, 2);
  CHECK(column_of(f, 1, 0) == std::vector<int>{1, 0});
  CHECK(column_of(f, 1, 1) == std::vector<int>{0, 1});
  CHECK(column_of(f, 1, 2) == std::vector<int>{1, 1});
}

TEST_CASE("construct_B(3,1): [a | -a]") {
  MatrixFamily f = construct_B(3, 1);
  REQUIRE(f.matrices.size() == 3);
  for (int a = 0; a < 3; ++a)
    CHECK(f.matrices[a] == std::vector<std::vector<int>>{{a, (3 - a) % 3}});
}

TEST_CASE("kind-B column sums vanish") {
  for (auto [p, k] : {std::pair{2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
    MatrixFamily f = construct_B(p, k);
    for (const auto& m : f.matrices)
      for (const auto& row : m) {
        int s = 0;
        for (int e : row) s += e;
        CHECK(s % p == 0);
      }
  }
}

TEST_CASE("constructed families verify") {
  CHECK_FALSE(verify_gadget(construct_A(2, 2)).has_value());
  CHECK_FALSE(verify_gadget(construct_A(3, 2)).has_value());
  CHECK_FALSE(verify_gadget(construct_B(3, 2)).has_value());
  CHECK_FALSE(verify_gadget(construct_B(2, 3)).has_value());
}

TEST_CASE("duplicated matrices give the singleton-column witness") {
  MatrixFamily f = construct_A(2, 2);
  f.matrices[2] = f.matrices[1];
  auto w = verify_gadget(f);
  REQUIRE(w.has_value());
  CHECK(w->i == 1);
  CHECK(w->j == 2);
  CHECK(w->subset == 1);  // I = {1}
}

TEST_CASE("malformed families are rejected") {
  MatrixFamily f = construct_A(2, 2);
  f.matrices.pop_back();
  CHECK_THROWS_AS(verify_gadget(f), std::invalid_argument);
  MatrixFamily g = construct_A(2, 2);
  g.matrices[0][0][0] = 2;
  CHECK_THROWS_AS(verify_gadget(g), std::invalid_argument);
}

TEST_CASE("JSON round-trip") {
  MatrixFamily f = construct_B(3, 2);
  nlohmann::json j;
  to_json(j, f);
  MatrixFamily g = j.get<MatrixFamily>();
  CHECK(g.p == f.p);
  CHECK(g.k == f.k);
  CHECK(g.kind == f.kind);
  CHECK(g.matrices == f.matrices);
}
