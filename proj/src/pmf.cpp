#include "cyclelab/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cyclelab/cwgen.hpp"
#include "cyclelab/gadgets.hpp"
#include "cyclelab/util.hpp"

namespace cyclelab {

namespace {

void check_shape(const LocalPMF& P) {
  if (P.p < 2 || P.k < 3) throw std::invalid_argument("LocalPMF: need p >= 2 and k >= 3");
  for (const auto& tuple : P.tuples) {
    if (static_cast<int>(tuple.size()) != P.k)
      throw std::invalid_argument("LocalPMF: tuple arity mismatch");
    for (const Vec& v : tuple) {
      if (static_cast<int>(v.size()) != P.n)
        throw std::invalid_argument("LocalPMF: vector length mismatch");
      for (int c : v)
        if (c < 0 || c >= P.p) throw std::invalid_argument("LocalPMF: entry out of range");
    }
  }
}

bool tuple_sum_zero(const std::vector<Vec>& tuple, int p, int n) {
  for (int c = 0; c < n; ++c) {
    int sum = 0;
    for (const Vec& v : tuple) sum += v[c];
    if (sum % p != 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::size_t>> verify_local_pmf(const LocalPMF& P,
                                                         std::uint64_t budget) {
  check_shape(P);
  if (budget == 0) budget = default_budget();
  const std::size_t m = P.size();

  for (std::size_t i = 0; i < m; ++i)
    if (!tuple_sum_zero(P.tuples[i], P.p, P.n)) {
      std::vector<std::size_t> witness(P.k, i + 1);
      return witness;
    }
  if (m < 2) return std::nullopt;

  std::uint64_t cost = 1;
  for (int j = 0; j < P.k; ++j) {
    if (cost > budget / m) throw budget_error("verify_local_pmf: m^k exceeds budget");
    cost *= m;
  }

  // Scan index tuples in lexicographic order keeping prefix sums, so the
  // inner work is one vector addition per step.
  std::vector<std::size_t> idx(P.k, 0);
  std::vector<Vec> prefix(P.k + 1, Vec(P.n, 0));  // prefix[j] = sum of first j picks
  auto recompute_from = [&](int level) {
    for (int j = level; j < P.k; ++j) {
      for (int c = 0; c < P.n; ++c)
        prefix[j + 1][c] = (prefix[j][c] + P.tuples[idx[j]][j][c]) % P.p;
    }
  };
  recompute_from(0);
  while (true) {
    bool zero = true;
    for (int c = 0; c < P.n; ++c)
      if (prefix[P.k][c] != 0) { zero = false; break; }
    if (zero) {
      bool diagonal = true;
      for (int j = 1; j < P.k; ++j)
        if (idx[j] != idx[0]) { diagonal = false; break; }
      if (!diagonal) {
        std::vector<std::size_t> witness(P.k);
        for (int j = 0; j < P.k; ++j) witness[j] = idx[j] + 1;
        return witness;
      }
    }
    int pos = P.k - 1;
    while (pos >= 0 && idx[pos] == m - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
    recompute_from(pos);
  }
  return std::nullopt;
}

LocalPMF sunflower_to_pmf(const ZVecCollection& F, int p, int k) {
  if (k < 3) throw std::invalid_argument("sunflower_to_pmf: k must be >= 3");
  const std::uint64_t expected_D = checked_pow(p, static_cast<unsigned>(k - 1));
  if (static_cast<std::uint64_t>(F.D) != expected_D)
    throw std::invalid_argument("sunflower_to_pmf: alphabet must be p^(k-1)");
  if (auto w = two_symbol_property(F, k)) {
    std::ostringstream msg;
    msg << "sunflower_to_pmf: collection fails the two-symbol property; witness tuple:";
    for (const Vec& v : *w) {
      msg << " (";
      for (std::size_t i = 0; i < v.size(); ++i) msg << (i ? "," : "") << v[i];
      msg << ")";
    }
    throw std::invalid_argument(msg.str());
  }

  const MatrixFamily B = construct_B(p, k - 1);
  LocalPMF out;
  out.p = p;
  out.k = k;
  out.n = F.n * (k - 1);
  out.tuples.reserve(F.size());
  for (const Vec& v : F.vectors) {
    std::vector<Vec> tuple(k, Vec(out.n, 0));
    for (int block = 0; block < F.n; ++block) {
      const auto& matrix = B.matrices[v[block]];
      for (int row = 0; row < k - 1; ++row)
        for (int col = 0; col < k; ++col)
          tuple[col][block * (k - 1) + row] = matrix[row][col];
    }
    out.tuples.push_back(std::move(tuple));
  }
  return out;
}

LocalPMF diag_pmf(const ZVecCollection& F) {
  if (F.D != 3) throw std::invalid_argument("diag_pmf: alphabet must be Z_3");
  if (auto w = find_sunflower(F))
    throw std::invalid_argument("diag_pmf: collection contains a 3-sunflower");
  LocalPMF out;
  out.p = 3;
  out.k = 3;
  out.n = F.n;
  out.tuples.reserve(F.size());
  for (const Vec& v : F.vectors) out.tuples.push_back({v, v, v});
  return out;
}

LocalPMF concat_pmf(const LocalPMF& P1, const LocalPMF& P2) {
  if (P1.p != P2.p || P1.k != P2.k)
    throw std::invalid_argument("concat_pmf: incompatible p or k");
  check_shape(P1);
  check_shape(P2);
  LocalPMF out;
  out.p = P1.p;
  out.k = P1.k;
  out.n = P1.n + P2.n;
  out.tuples.reserve(P1.size() * P2.size());
  for (const auto& t1 : P1.tuples) {
    for (const auto& t2 : P2.tuples) {
      std::vector<Vec> tuple(out.k);
      for (int j = 0; j < out.k; ++j) {
        tuple[j] = t1[j];
        tuple[j].insert(tuple[j].end(), t2[j].begin(), t2[j].end());
      }
      out.tuples.push_back(std::move(tuple));
    }
  }
  return out;
}

LocalPMF globalize_to_local(const LocalPMF& P, std::uint64_t budget) {
  check_shape(P);
  if (budget == 0) budget = 720;  // m <= 6
  const std::size_t m = P.size();
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= m; ++i) {
    fact *= i;
    if (fact > budget) throw budget_error("globalize_to_local: m! exceeds budget");
  }

  LocalPMF out;
  out.p = P.p;
  out.k = P.k;
  out.n = P.n * static_cast<int>(m);
  if (m == 0) return out;
  out.tuples.reserve(fact);

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Vec> tuple(P.k);
    for (int j = 0; j < P.k; ++j) {
      tuple[j].reserve(out.n);
      for (std::size_t i = 0; i < m; ++i) {
        const Vec& piece = P.tuples[perm[i]][j];
        tuple[j].insert(tuple[j].end(), piece.begin(), piece.end());
      }
    }
    out.tuples.push_back(std::move(tuple));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // The output is a local PMF exactly when the input satisfies the global
  // PMF condition over permutation k-tuples, so checking the output
  // doubles as the input verification.
  std::uint64_t verify_budget;
  try {
    verify_budget = checked_pow(fact, static_cast<unsigned>(P.k));
  } catch (const std::range_error&) {
    throw budget_error("globalize_to_local: verification space overflows");
  }
  if (auto w = verify_local_pmf(out, verify_budget))
    throw std::invalid_argument("globalize_to_local: input violates the global PMF condition");
  return out;
}

LocalPMF balanced_to_pmf(const ZVecCollection& F, int p) {
  if (p < 2) throw std::invalid_argument("balanced_to_pmf: p must be >= 2");
  const int k = F.D;
  if (k < 3) throw std::invalid_argument("balanced_to_pmf: alphabet size is the cycle length, >= 3");
  if (auto w = verify_partition_unique(F, k))
    throw std::invalid_argument("balanced_to_pmf: collection fails the unique-partition property");
  LocalPMF out;
  out.p = p;
  out.k = k;
  out.n = F.n;
  out.tuples.reserve(F.size());
  for (const Vec& v : F.vectors) {
    std::vector<Vec> tuple(k, Vec(F.n, 0));
    for (int pos = 0; pos < F.n; ++pos) {
      const int j = v[pos];
      if (j < k - 1) {
        tuple[j][pos] = 1;
        // Last vector: -1 times the characteristic vector of [nk] \ v|_k.
        tuple[k - 1][pos] = p - 1;
      }
    }
    out.tuples.push_back(std::move(tuple));
  }
  return out;
}

std::optional<std::array<std::vector<std::size_t>, 3>> verify_usp(const USPCollection& U,
                                                                  std::uint64_t budget) {
  if (budget == 0) budget = 1728000;  // (5!)^3
  for (const Vec& v : U.vectors) {
    if (static_cast<int>(v.size()) != U.n)
      throw std::invalid_argument("USPCollection: vector length mismatch");
    for (int s : v)
      if (s < 0 || s > 2) throw std::invalid_argument("USPCollection: symbols must be 0..2");
  }
  const std::size_t m = U.vectors.size();
  if (m < 2) return std::nullopt;

  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= m; ++i) fact *= i;
  if (fact > budget / fact / fact)
    throw budget_error("verify_usp: (m!)^3 exceeds budget");

  const bool strong = U.strength == USPCollection::Strength::strong;

  std::vector<std::vector<std::size_t>> perms;
  {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  for (const auto& p1 : perms)
    for (const auto& p2 : perms)
      for (const auto& p3 : perms) {
        if (p1 == p2 && p2 == p3) continue;
        bool caught = false;
        for (std::size_t i = 0; i < m && !caught; ++i) {
          const Vec& x1 = U.vectors[p1[i]];
          const Vec& x2 = U.vectors[p2[i]];
          const Vec& x3 = U.vectors[p3[i]];
          for (int j = 0; j < U.n; ++j) {
            // The usual symbols 1,2,3 are represented as 0,1,2.
            const int hits = (x1[j] == 0) + (x2[j] == 1) + (x3[j] == 2);
            if (strong ? hits == 2 : hits >= 2) { caught = true; break; }
          }
        }
        if (!caught) return std::array<std::vector<std::size_t>, 3>{p1, p2, p3};
      }
  return std::nullopt;
}

PmfExponent pmf_to_exponent(const LocalPMF& P) {
  check_shape(P);
  const std::uint64_t m = P.size();
  if (m < 1) throw std::invalid_argument("pmf_to_exponent: empty PMF");
  const std::uint64_t pn = checked_pow(P.p, static_cast<unsigned>(P.n));
  if (m >= pn) throw std::invalid_argument("pmf_to_exponent: requires m < p^n");

  const Rational eps(m, pn);
  const double log_term =
      P.n == 0 ? 0.0
               : std::log(static_cast<double>(m)) / std::log(static_cast<double>(P.p)) / P.n;
  PmfExponent out;
  out.eps_num = eps.num;
  out.eps_den = eps.den;
  out.alpha = (P.k - 1 - log_term) / (1 - log_term);
  return out;
}

void to_json(nlohmann::json& j, const LocalPMF& P) {
  j = nlohmann::json{{"p", P.p}, {"k", P.k}, {"n", P.n}, {"tuples", P.tuples}};
}

void from_json(const nlohmann::json& j, LocalPMF& P) {
  P.p = j.at("p").get<int>();
  P.k = j.at("k").get<int>();
  P.n = j.at("n").get<int>();
  P.tuples = j.at("tuples").get<std::vector<std::vector<Vec>>>();
  check_shape(P);
}

void to_json(nlohmann::json& j, const USPCollection& U) {
  j = nlohmann::json{{"n", U.n},
                     {"vectors", U.vectors},
                     {"strength", U.strength == USPCollection::Strength::strong ? "strong" : "usp"}};
}

void from_json(const nlohmann::json& j, USPCollection& U) {
  U.n = j.at("n").get<int>();
  U.vectors = j.at("vectors").get<std::vector<Vec>>();
  const std::string s = j.value("strength", "usp");
  if (s == "strong") {
    U.strength = USPCollection::Strength::strong;
  } else if (s == "usp") {
    U.strength = USPCollection::Strength::usp;
  } else {
    throw std::invalid_argument("USPCollection: strength must be \"usp\" or \"strong\"");
  }
}

}  // namespace cyclelab
