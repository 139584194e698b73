#include "cyclelab/cwgen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "cyclelab/util.hpp"

namespace cyclelab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void check_config(const CWConfig& cfg) {
  if (cfg.k < 3) throw std::invalid_argument("CWConfig: k must be >= 3");
  if (cfg.n < 1) throw std::invalid_argument("CWConfig: n must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("CWConfig: trials must be >= 1");
}

double default_ck(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return 2.0 * k * f * f * std::pow(static_cast<double>(k), k);
}

std::uint64_t compute_modulus(const CWConfig& cfg) {
  const int k = cfg.k;
  const double ck = cfg.c_k.value_or(default_ck(k));
  const std::uint64_t multi =
      multinomial(std::vector<unsigned>(k - 1, static_cast<unsigned>(cfg.n)));
  const double bound = ck * std::pow(static_cast<double>(multi), 1.0 / (k - 2));
  if (!(bound < 9e18)) throw std::range_error("cw_construct: modulus bound overflows");
  std::uint64_t lower = static_cast<std::uint64_t>(std::ceil(bound));
  // M must be prime and > k so that k-1 is invertible mod M.
  lower = std::max<std::uint64_t>(lower, k + 1);
  return next_prime(lower);
}

// Visits every balanced vector over Z_k of length nk in lexicographic
// order via next_permutation of the sorted symbol multiset.
template <typename Fn>
void for_each_balanced(int k, int n, Fn&& fn) {
  Vec v;
  v.reserve(n * k);
  for (int j = 0; j < k; ++j) v.insert(v.end(), n, j);
  do {
    fn(static_cast<const Vec&>(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

struct Trial {
  std::vector<std::uint64_t> w;
  std::vector<std::uint64_t> c;
  std::vector<std::uint64_t> L_sizes;
  std::vector<std::uint64_t> Lp_sizes;
  std::vector<Vec> survivors;
};

Trial run_trial(const CWConfig& cfg, std::mt19937_64& rng, std::uint64_t M,
                const BehrendSet& B) {
  const int k = cfg.k;
  const int N = cfg.n * k;
  const std::uint64_t inv_km1 = powmod(static_cast<std::uint64_t>(k - 1) % M, M - 2, M);

  Trial trial;
  trial.w.resize(N);
  for (auto& wi : trial.w) wi = uniform_below(rng, M);
  trial.c.resize(k);
  for (auto& ci : trial.c) ci = uniform_below(rng, M);

  std::unordered_map<std::uint64_t, std::size_t> b_index;
  for (std::size_t i = 0; i < B.elements.size(); ++i) b_index[B.elements[i] % M] = i;

  trial.L_sizes.assign(B.elements.size(), 0);
  trial.Lp_sizes.assign(B.elements.size(), 0);

  // buckets[i] holds the vectors of L_i.
  std::vector<std::vector<Vec>> buckets(B.elements.size());
  std::uint64_t c_sum = 0;
  for (std::uint64_t ci : trial.c) c_sum = (c_sum + ci) % M;

  for_each_balanced(k, cfg.n, [&](const Vec& v) {
    // beta_j(I_j) = <w, I_j> + c_j for j < k;
    // beta_k(I_k) = (<w, [N] \ I_k> + sum c_j) / (k-1), all mod M.
    std::vector<std::uint64_t> dot(k, 0);
    for (int pos = 0; pos < N; ++pos) dot[v[pos]] = (dot[v[pos]] + trial.w[pos]) % M;
    std::vector<std::uint64_t> beta(k);
    for (int j = 0; j < k - 1; ++j) beta[j] = (dot[j] + trial.c[j]) % M;
    std::uint64_t outside = 0;  // <w, [N] \ I_k>
    for (int j = 0; j < k - 1; ++j) outside = (outside + dot[j]) % M;
    beta[k - 1] = mulmod((outside + c_sum - trial.c[k - 1] + M) % M, inv_km1, M);

    // Key identity of the construction: sum_{j<k} beta_j = (k-1) beta_k.
    std::uint64_t lhs = 0;
    for (int j = 0; j < k - 1; ++j) lhs = (lhs + beta[j]) % M;
    assert(lhs == mulmod(static_cast<std::uint64_t>(k - 1) % M, beta[k - 1], M));

    bool all_equal = true;
    for (int j = 1; j < k; ++j)
      if (beta[j] != beta[0]) { all_equal = false; break; }
    if (!all_equal) return;
    const auto it = b_index.find(beta[0]);
    if (it == b_index.end()) return;
    buckets[it->second].push_back(v);
  });

  // Prune: inside each L_i drop every tuple that shares a positional
  // part I_j with another tuple of the same bucket.
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    const auto& bucket = buckets[i];
    trial.L_sizes[i] = bucket.size();
    if (bucket.empty()) continue;
    // part_count[j][I_j as sorted positions] over the bucket
    std::vector<std::map<std::vector<int>, int>> part_count(k);
    auto part_of = [&](const Vec& v, int j) {
      std::vector<int> part;
      for (int pos = 0; pos < N; ++pos)
        if (v[pos] == j) part.push_back(pos);
      return part;
    };
    for (const Vec& v : bucket)
      for (int j = 0; j < k; ++j) ++part_count[j][part_of(v, j)];
    for (const Vec& v : bucket) {
      bool unique_everywhere = true;
      for (int j = 0; j < k && unique_everywhere; ++j)
        unique_everywhere = part_count[j][part_of(v, j)] == 1;
      if (unique_everywhere) {
        trial.survivors.push_back(v);
        ++trial.Lp_sizes[i];
      }
    }
  }
  return trial;
}

}  // namespace

CWResult cw_construct(const CWConfig& cfg) {
  check_config(cfg);
  const int k = cfg.k;
  const int N = cfg.n * k;
  if (N > 64) throw std::range_error("cw_construct: nk above 64 unsupported");
  const std::uint64_t budget = cfg.budget ? cfg.budget : default_budget();
  const std::uint64_t partition_count =
      multinomial(std::vector<unsigned>(k, static_cast<unsigned>(cfg.n)));
  if (partition_count > budget)
    throw budget_error("cw_construct: partition enumeration exceeds budget");

  CWResult result;
  result.M = compute_modulus(cfg);
  result.B = behrend_construct(k - 1, std::max<std::uint64_t>(2, result.M / (k - 1)));
  result.partition_count = partition_count;

  std::mt19937_64 rng(cfg.seed);

  std::size_t best_size = 0;
  bool have_best = false;
  for (int t = 0; t < cfg.trials; ++t) {
    Trial trial = run_trial(cfg, rng, result.M, result.B);
    result.all_L_sizes.insert(result.all_L_sizes.end(), trial.L_sizes.begin(),
                              trial.L_sizes.end());
    result.all_Lp_sizes.insert(result.all_Lp_sizes.end(), trial.Lp_sizes.begin(),
                               trial.Lp_sizes.end());
    if (!have_best || trial.survivors.size() > best_size) {
      have_best = true;
      best_size = trial.survivors.size();
      result.w = std::move(trial.w);
      result.c = std::move(trial.c);
      result.L_sizes = std::move(trial.L_sizes);
      result.Lp_sizes = std::move(trial.Lp_sizes);
      result.winning_trial = t;
      result.collection.D = k;
      result.collection.n = N;
      result.collection.vectors = std::move(trial.survivors);
      result.collection.normalize();
    }
  }

  if (auto w = verify_partition_unique(result.collection, k))
    throw std::logic_error("cw_construct: output failed verify_partition_unique");
  return result;
}

std::optional<std::vector<Vec>> verify_partition_unique(const ZVecCollection& F, int k,
                                                        std::uint64_t budget) {
  if (k < 2) throw std::invalid_argument("verify_partition_unique: k must be >= 2");
  if (F.D != k) throw std::invalid_argument("verify_partition_unique: alphabet must be Z_k");
  if (budget == 0) budget = default_budget();
  const std::size_t m = F.size();
  if (m == 0) return std::nullopt;
  if (F.n % k != 0)
    throw std::invalid_argument("verify_partition_unique: length must be a multiple of k");
  const int n = F.n / k;

  for (const Vec& v : F.vectors) {
    std::vector<int> counts(k, 0);
    for (int s : v) ++counts[s];
    for (int j = 0; j < k; ++j)
      if (counts[j] != n)
        throw std::invalid_argument("verify_partition_unique: collection contains an unbalanced vector");
  }

  std::uint64_t cost = 1;
  for (int j = 0; j < k; ++j) {
    if (cost > budget / m) throw budget_error("verify_partition_unique: m^k exceeds budget");
    cost *= m;
  }

  std::vector<std::size_t> idx(k, 0);
  std::vector<bool> covered(F.n);
  while (true) {
    bool all_equal = true;
    for (int j = 1; j < k; ++j)
      if (idx[j] != idx[0]) { all_equal = false; break; }
    if (!all_equal) {
      // Do the sets v_1|_1, ..., v_k|_k partition [nk]?
      std::fill(covered.begin(), covered.end(), false);
      bool clash = false;
      int total = 0;
      for (int j = 0; j < k && !clash; ++j) {
        const Vec& v = F.vectors[idx[j]];
        for (int pos = 0; pos < F.n; ++pos) {
          if (v[pos] == j) {
            if (covered[pos]) { clash = true; break; }
            covered[pos] = true;
            ++total;
          }
        }
      }
      if (!clash && total == F.n) {
        std::vector<Vec> witness;
        witness.reserve(k);
        for (int j = 0; j < k; ++j) witness.push_back(F.vectors[idx[j]]);
        return witness;
      }
    }
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return std::nullopt;
}

CWReport cw_expectation_report(const CWConfig& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("cw_expectation_report: trials must be >= 1");
  CWConfig run = cfg;
  run.trials = trials;
  const CWResult result = cw_construct(run);

  CWReport report;
  report.M = result.M;
  report.behrend_size = result.B.elements.size();
  report.partition_count = result.partition_count;
  report.expected_L = static_cast<double>(result.partition_count) /
                      std::pow(static_cast<double>(result.M), cfg.k - 1);
  report.lower_bound_Lp = report.expected_L / 2.0;

  auto stats = [](const std::vector<std::uint64_t>& xs, double& mean, double& var) {
    mean = 0.0;
    var = 0.0;
    if (xs.empty()) return;
    for (std::uint64_t x : xs) mean += static_cast<double>(x);
    mean /= static_cast<double>(xs.size());
    for (std::uint64_t x : xs) {
      const double d = static_cast<double>(x) - mean;
      var += d * d;
    }
    var /= static_cast<double>(xs.size());
  };
  stats(result.all_L_sizes, report.mean_L, report.var_L);
  stats(result.all_Lp_sizes, report.mean_Lp, report.var_Lp);
  report.samples = result.all_L_sizes.size();
  return report;
}

void to_json(nlohmann::json& j, const CWResult& r) {
  j = nlohmann::json{{"collection", r.collection},
                     {"M", r.M},
                     {"behrend", r.B},
                     {"partition_count", r.partition_count},
                     {"w", r.w},
                     {"c", r.c},
                     {"winning_trial", r.winning_trial},
                     {"L_sizes", r.L_sizes},
                     {"Lp_sizes", r.Lp_sizes}};
}

void to_json(nlohmann::json& j, const CWReport& r) {
  j = nlohmann::json{{"M", r.M},
                     {"behrend_size", r.behrend_size},
                     {"partition_count", r.partition_count},
                     {"expected_L", r.expected_L},
                     {"lower_bound_Lp", r.lower_bound_Lp},
                     {"mean_L", r.mean_L},
                     {"var_L", r.var_L},
                     {"mean_Lp", r.mean_Lp},
                     {"var_Lp", r.var_Lp},
                     {"samples", r.samples}};
}

}  // namespace cyclelab
