#include "cyclelab/tester.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace cyclelab {

namespace {

void check_vec(const Vec& v, int p, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument(std::string(what) + ": vector length mismatch");
  for (int c : v)
    if (c < 0 || c >= p) throw std::invalid_argument(std::string(what) + ": entry out of range");
}

Vec neg_sum(const std::vector<const Vec*>& xs, int p, int n) {
  Vec r(n, 0);
  for (const Vec* x : xs)
    for (int c = 0; c < n; ++c) r[c] += (*x)[c];
  for (int c = 0; c < n; ++c) r[c] = (p - r[c] % p) % p;
  return r;
}

std::uint64_t product_budget(const CycleInstance& inst, std::uint64_t budget) {
  if (budget == 0) budget = default_budget();
  std::uint64_t cost = 1;
  for (int j = 0; j + 1 < inst.k; ++j) {
    const std::uint64_t s = inst.supports[j].size();
    if (s == 0) return 0;
    if (cost > budget / s) throw budget_error("count_cycles: support product exceeds budget");
    cost *= s;
  }
  return cost;
}

}  // namespace

void CycleInstance::normalize() {
  if (p < 2 || k < 3) throw std::invalid_argument("CycleInstance: need p >= 2 and k >= 3");
  if (static_cast<int>(supports.size()) != k)
    throw std::invalid_argument("CycleInstance: need exactly k supports");
  for (auto& s : supports) {
    for (const Vec& v : s) check_vec(v, p, n, "CycleInstance");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  if (single_mode) {
    for (int j = 1; j < k; ++j)
      if (supports[j] != supports[0])
        throw std::invalid_argument("CycleInstance: single_mode requires equal supports");
  }
}

CycleInstance pmf_to_instance(const LocalPMF& P) {
  CycleInstance inst;
  inst.p = P.p;
  inst.k = P.k;
  inst.n = P.n;
  inst.supports.resize(P.k);
  for (const auto& tuple : P.tuples)
    for (int j = 0; j < P.k; ++j) inst.supports[j].push_back(tuple[j]);
  inst.normalize();
  return inst;
}

std::uint64_t count_cycles(const CycleInstance& inst, std::uint64_t budget) {
  if (product_budget(inst, budget) == 0) return 0;
  const std::set<Vec> last(inst.supports[inst.k - 1].begin(), inst.supports[inst.k - 1].end());

  std::uint64_t count = 0;
  std::vector<std::size_t> idx(inst.k - 1, 0);
  while (true) {
    std::vector<const Vec*> picks;
    picks.reserve(inst.k - 1);
    for (int j = 0; j + 1 < inst.k; ++j) picks.push_back(&inst.supports[j][idx[j]]);
    if (last.count(neg_sum(picks, inst.p, inst.n))) ++count;
    int pos = inst.k - 2;
    while (pos >= 0 && idx[pos] == inst.supports[pos].size() - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return count;
}

std::uint64_t count_unordered_cycles(const CycleInstance& inst, std::uint64_t budget) {
  if (!inst.single_mode)
    throw std::invalid_argument("count_unordered_cycles: requires a single-mode instance");
  if (product_budget(inst, budget) == 0) return 0;
  const auto& supp = inst.supports[0];
  const std::set<Vec> members(supp.begin(), supp.end());

  // Enumerate non-decreasing (k-1)-tuples of support indices; the
  // completion must be >= the last pick so each sorted k-tuple is seen
  // exactly once.
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(inst.k - 1, 0);
  while (true) {
    bool sorted = true;
    for (int j = 1; j + 1 < inst.k; ++j)
      if (supp[idx[j]] < supp[idx[j - 1]]) { sorted = false; break; }
    if (sorted) {
      std::vector<const Vec*> picks;
      for (int j = 0; j + 1 < inst.k; ++j) picks.push_back(&supp[idx[j]]);
      const Vec completion = neg_sum(picks, inst.p, inst.n);
      if (!(completion < supp[idx[inst.k - 2]]) && members.count(completion)) ++count;
    }
    int pos = inst.k - 2;
    while (pos >= 0 && idx[pos] == supp.size() - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return count;
}

Rational rejection_probability(const CycleInstance& inst, std::uint64_t budget) {
  const std::uint64_t cycles = count_cycles(inst, budget);
  const std::uint64_t space =
      checked_pow(inst.p, static_cast<unsigned>((inst.k - 1) * inst.n));
  return Rational(cycles, space);
}

SimulationResult simulate_canonical(const CycleInstance& inst, std::uint64_t iterations,
                                    std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("simulate_canonical: iterations must be >= 1");
  std::vector<std::set<Vec>> supports;
  supports.reserve(inst.k);
  for (const auto& s : inst.supports) supports.emplace_back(s.begin(), s.end());

  std::mt19937_64 rng(seed);
  SimulationResult res;
  Vec x(inst.n);
  Vec acc(inst.n);
  for (std::uint64_t it = 1; it <= iterations; ++it) {
    std::fill(acc.begin(), acc.end(), 0);
    bool hit = true;
    for (int j = 0; j + 1 < inst.k; ++j) {
      for (int c = 0; c < inst.n; ++c) {
        x[c] = static_cast<int>(uniform_below(rng, inst.p));
        acc[c] += x[c];
      }
      if (hit && !supports[j].count(x)) hit = false;
      // Keep drawing the full tuple even after a miss so the RNG stream
      // is independent of the input functions.
    }
    if (hit) {
      for (int c = 0; c < inst.n; ++c) acc[c] = (inst.p - acc[c] % inst.p) % inst.p;
      hit = supports[inst.k - 1].count(acc) != 0;
    }
    if (hit) {
      ++res.hits;
      if (!res.found) {
        res.found = true;
        res.trials_used = it;
      }
    }
  }
  if (!res.found) res.trials_used = iterations;
  res.empirical_rate = static_cast<double>(res.hits) / static_cast<double>(iterations);
  return res;
}

namespace {

// Branch and bound for minimum hitting set over small hypergraphs.
struct HittingSolver {
  // edges as vertex-index lists
  std::vector<std::vector<int>> edges;
  std::size_t best = 0;

  std::size_t greedy_disjoint_bound(const std::vector<char>& alive_edge,
                                    const std::vector<char>& hit_vertex) const {
    // Count pairwise-disjoint uncovered edges: each needs its own vertex.
    std::vector<char> used(hit_vertex.size(), 0);
    std::size_t bound = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!alive_edge[e]) continue;
      bool disjoint = true;
      for (int v : edges[e])
        if (used[v]) { disjoint = false; break; }
      if (disjoint) {
        ++bound;
        for (int v : edges[e]) used[v] = 1;
      }
    }
    return bound;
  }

  void solve(std::vector<char>& alive_edge, std::vector<char>& hit_vertex,
             std::size_t chosen) {
    int open = -1;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (alive_edge[e]) { open = static_cast<int>(e); break; }
    if (open < 0) {
      best = std::min(best, chosen);
      return;
    }
    if (chosen + greedy_disjoint_bound(alive_edge, hit_vertex) >= best) return;

    for (int v : edges[open]) {
      std::vector<char> next_alive(alive_edge);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!next_alive[e]) continue;
        for (int u : edges[e])
          if (u == v) { next_alive[e] = 0; break; }
      }
      hit_vertex[v] = 1;
      solve(next_alive, hit_vertex, chosen + 1);
      hit_vertex[v] = 0;
    }
  }
};

}  // namespace

DistanceResult exact_distance(const CycleInstance& inst, std::uint64_t max_cycles) {
  // Collect all ordered cycles as vertex sets over (function, point).
  const std::set<Vec> last(inst.supports[inst.k - 1].begin(), inst.supports[inst.k - 1].end());
  std::map<std::pair<int, Vec>, int> vertex_id;
  auto vid = [&](int j, const Vec& x) {
    const auto key = std::make_pair(j, x);
    auto it = vertex_id.find(key);
    if (it == vertex_id.end()) it = vertex_id.emplace(key, static_cast<int>(vertex_id.size())).first;
    return it->second;
  };

  HittingSolver solver;
  bool empty_support = false;
  for (int j = 0; j + 1 < inst.k; ++j)
    if (inst.supports[j].empty()) empty_support = true;
  if (!empty_support && !inst.supports[inst.k - 1].empty()) {
    std::vector<std::size_t> idx(inst.k - 1, 0);
    while (true) {
      std::vector<const Vec*> picks;
      for (int j = 0; j + 1 < inst.k; ++j) picks.push_back(&inst.supports[j][idx[j]]);
      const Vec completion = neg_sum(picks, inst.p, inst.n);
      if (last.count(completion)) {
        std::vector<int> edge;
        for (int j = 0; j + 1 < inst.k; ++j) edge.push_back(vid(j, *picks[j]));
        edge.push_back(vid(inst.k - 1, completion));
        std::sort(edge.begin(), edge.end());
        edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
        solver.edges.push_back(std::move(edge));
        if (solver.edges.size() > max_cycles)
          throw budget_error("exact_distance: too many cycles for exact search");
      }
      int pos = inst.k - 2;
      while (pos >= 0 && idx[pos] == inst.supports[pos].size() - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }

  DistanceResult res;
  if (!solver.edges.empty()) {
    solver.best = solver.edges.size();  // one vertex per edge always suffices
    std::vector<char> alive(solver.edges.size(), 1);
    std::vector<char> hit(vertex_id.size(), 0);
    solver.solve(alive, hit, 0);
    res.changes = solver.best;
  }
  res.eps = Rational(res.changes, checked_pow(inst.p, static_cast<unsigned>(inst.n)));
  return res;
}

double lower_bound_exponent(int k, double p, double d) {
  if (k < 3) throw std::invalid_argument("lower_bound_exponent: k must be >= 3");
  if (!(d > 1.0) || !(d < p))
    throw std::invalid_argument("lower_bound_exponent: requires 1 < d < p");
  const double log_term = std::log(d) / std::log(p);
  return (k - 1 - log_term) / (1 - log_term);
}

double g_exponent(int k, double p) {
  if (k < 3) throw std::invalid_argument("g_exponent: k must be >= 3");
  const double x = 1.0 / k;
  const double H = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
  const double log_term = H / std::log2(p);
  return (k - 1 - log_term) / (1 - log_term);
}

CycleInstance reduce_to_single(const CycleInstance& inst) {
  if (inst.k % inst.p == 0)
    throw std::invalid_argument(
        "reduce_to_single: p divides k; the one-function variant reduces to zero testing "
        "and admits no marker construction");
  CycleInstance out;
  out.p = inst.p;
  out.k = inst.k;
  out.n = inst.n + inst.k - 1;
  out.single_mode = true;

  std::vector<Vec> support;
  for (int j = 0; j < inst.k; ++j) {
    // Marker block: e_{j+1} for j < k-1, else -e_1-...-e_{k-1}.
    Vec marker(inst.k - 1, 0);
    if (j + 1 < inst.k) {
      marker[j] = 1;
    } else {
      for (int c = 0; c + 1 < inst.k; ++c) marker[c] = inst.p - 1;
    }
    for (const Vec& x : inst.supports[j]) {
      Vec point(x);
      point.insert(point.end(), marker.begin(), marker.end());
      support.push_back(std::move(point));
    }
  }
  out.supports.assign(inst.k, support);
  out.normalize();
  return out;
}

CycleInstance extend_domain(const CycleInstance& inst, int n_target) {
  if (n_target <= inst.n)
    throw std::invalid_argument("extend_domain: target dimension must exceed n");
  const int delta = n_target - inst.n;
  CycleInstance out;
  out.p = inst.p;
  out.k = inst.k;
  out.n = n_target;
  out.single_mode = inst.single_mode;
  out.supports.resize(inst.k);

  // All zero-sum tails z in F_p^delta.
  std::vector<Vec> tails;
  Vec z(delta, 0);
  while (true) {
    int sum = 0;
    for (int c = 0; c < delta; ++c) sum += z[c];
    if (sum % inst.p == 0) tails.push_back(z);
    int pos = delta - 1;
    while (pos >= 0 && z[pos] == inst.p - 1) z[pos--] = 0;
    if (pos < 0) break;
    ++z[pos];
  }

  for (int j = 0; j < inst.k; ++j) {
    for (const Vec& x : inst.supports[j]) {
      for (const Vec& tail : tails) {
        Vec point(x);
        point.insert(point.end(), tail.begin(), tail.end());
        out.supports[j].push_back(std::move(point));
      }
    }
  }
  out.normalize();
  return out;
}

ZeroTestResult zero_tester(const std::vector<Vec>& support, int p, int n, double eps,
                           std::uint64_t seed) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("zero_tester: eps must lie in (0, 1)");
  const std::set<Vec> members(support.begin(), support.end());
  std::mt19937_64 rng(seed);
  ZeroTestResult res;
  res.queries = static_cast<std::uint64_t>(std::ceil(3.0 / eps));
  Vec x(n);
  for (std::uint64_t q = 0; q < res.queries; ++q) {
    for (int c = 0; c < n; ++c) x[c] = static_cast<int>(uniform_below(rng, p));
    if (members.count(x)) {
      res.accept = false;
      break;
    }
  }
  return res;
}

void to_json(nlohmann::json& j, const CycleInstance& inst) {
  j = nlohmann::json{{"p", inst.p},
                     {"k", inst.k},
                     {"n", inst.n},
                     {"supports", inst.supports},
                     {"single_mode", inst.single_mode}};
}

void from_json(const nlohmann::json& j, CycleInstance& inst) {
  inst.p = j.at("p").get<int>();
  inst.k = j.at("k").get<int>();
  inst.n = j.at("n").get<int>();
  inst.supports = j.at("supports").get<std::vector<std::vector<Vec>>>();
  inst.single_mode = j.value("single_mode", false);
  inst.normalize();
}

void to_json(nlohmann::json& j, const Rational& r) {
  j = nlohmann::json{{"num", r.num}, {"den", r.den}};
}

void to_json(nlohmann::json& j, const SimulationResult& r) {
  j = nlohmann::json{{"found", r.found},
                     {"trials_used", r.trials_used},
                     {"hits", r.hits},
                     {"empirical_rate", r.empirical_rate}};
}

void to_json(nlohmann::json& j, const DistanceResult& r) {
  j = nlohmann::json{{"changes", r.changes}, {"eps", r.eps}};
}

}  // namespace cyclelab
