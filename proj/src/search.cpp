#include "cyclelab/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cyclelab/util.hpp"

namespace cyclelab {

namespace {

Vec index_to_vec(std::uint64_t index, int D, int n) {
  // Most significant digit first, so index order equals lex order.
  Vec v(n, 0);
  for (int c = n - 1; c >= 0; --c) {
    v[c] = static_cast<int>(index % D);
    index /= D;
  }
  return v;
}

ZVecCollection make_collection(int D, int n, const std::vector<std::uint64_t>& indices) {
  ZVecCollection coll;
  coll.D = D;
  coll.n = n;
  for (std::uint64_t i : indices) coll.vectors.push_back(index_to_vec(i, D, n));
  return coll;
}

enum class Predicate { kSunflowerFree, kTwoSymbol };

bool passes(const ZVecCollection& coll, Predicate pred, int k) {
  if (pred == Predicate::kSunflowerFree) return !find_sunflower(coll).has_value();
  return !two_symbol_property(coll, k).has_value();
}

/// The symmetry group: coordinate permutations combined with an
/// independent symbol relabeling per coordinate.
struct SymmetryGroup {
  int D, n;
  std::vector<std::vector<int>> coord_perms;   // each a permutation of [0, n)
  std::vector<std::vector<int>> symbol_perms;  // each a permutation of [0, D)

  SymmetryGroup(int D_, int n_) : D(D_), n(n_) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do coord_perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> relabel(D);
    std::iota(relabel.begin(), relabel.end(), 0);
    do symbol_perms.push_back(relabel);
    while (std::next_permutation(relabel.begin(), relabel.end()));
  }

  /// True iff no group element maps the (sorted) collection to a lex
  /// smaller sorted collection. With the orderly-generation rule that
  /// children append only vectors past the current maximum, restricting
  /// extension to canonical collections is exhaustive: removing the
  /// largest vector of a canonical collection leaves a canonical one.
  bool is_canonical(const std::vector<Vec>& sorted_vecs) const {
    std::vector<int> relabel_idx(n, 0);
    std::vector<Vec> image(sorted_vecs.size(), Vec(n));
    for (const auto& cp : coord_perms) {
      std::fill(relabel_idx.begin(), relabel_idx.end(), 0);
      while (true) {
        for (std::size_t v = 0; v < sorted_vecs.size(); ++v)
          for (int c = 0; c < n; ++c)
            image[v][c] = symbol_perms[relabel_idx[c]][sorted_vecs[v][cp[c]]];
        std::sort(image.begin(), image.end());
        if (image < sorted_vecs) return false;
        int pos = n - 1;
        while (pos >= 0 && relabel_idx[pos] + 1 == static_cast<int>(symbol_perms.size()))
          relabel_idx[pos--] = 0;
        if (pos < 0) break;
        ++relabel_idx[pos];
      }
    }
    return true;
  }
};

struct Frame {
  std::vector<std::uint64_t> indices;  // collection, increasing vector indices
  std::uint64_t next = 0;              // next candidate index to try
};

struct SearchState {
  int D, n, k;
  Predicate pred;
  std::vector<Frame> stack;
  SearchReport report;
};

SearchReport run_dfs(SearchState& st, const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t budget = opts.budget == 0 ? default_budget() : opts.budget;
  const std::uint64_t total = checked_pow(st.D, static_cast<unsigned>(st.n));
  SymmetryGroup group(st.D, st.n);

  auto& report = st.report;
  report.D = st.D;
  report.n = st.n;
  report.k = st.k;
  bool exhausted = false;

  while (!st.stack.empty()) {
    Frame& top = st.stack.back();
    if (top.next >= total) {
      st.stack.pop_back();
      continue;
    }
    if (report.nodes_explored >= budget) {
      exhausted = true;
      break;
    }
    const std::uint64_t candidate_index = top.next++;
    ++report.nodes_explored;

    Frame child;
    child.indices = top.indices;
    child.indices.push_back(candidate_index);
    child.next = candidate_index + 1;

    ZVecCollection candidate = make_collection(st.D, st.n, child.indices);
    if (!passes(candidate, st.pred, st.k)) continue;
    if (opts.prune && !group.is_canonical(candidate.vectors)) continue;
    if (candidate.size() > report.best.size()) report.best = candidate;
    st.stack.push_back(std::move(child));
  }

  if (exhausted) {
    report.optimal = false;
    if (!opts.checkpoint.empty()) {
      nlohmann::json j{{"D", st.D},
                       {"n", st.n},
                       {"k", st.k},
                       {"predicate", st.pred == Predicate::kSunflowerFree ? "sunflower" : "two_symbol"},
                       {"nodes_explored", report.nodes_explored},
                       {"best", report.best}};
      for (const Frame& f : st.stack)
        j["frontier"].push_back({{"indices", f.indices}, {"next", f.next}});
      std::ofstream out(opts.checkpoint);
      if (!out) throw std::runtime_error("cannot write checkpoint: " + opts.checkpoint);
      out << j.dump(2) << '\n';
    }
  } else {
    report.optimal = true;
  }

  if (report.best.vectors.empty()) {
    report.best.D = st.D;
    report.best.n = st.n;
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SearchState fresh_state(int D, int n, int k, Predicate pred) {
  if (pred == Predicate::kSunflowerFree && D < 3)
    throw std::invalid_argument("max_sunflower_free: D must be >= 3");
  if (pred == Predicate::kTwoSymbol && k < 3)
    throw std::invalid_argument("max_two_symbol: k must be >= 3");
  if (n < 1) throw std::invalid_argument("search: n must be >= 1");
  SearchState st;
  st.D = D;
  st.n = n;
  st.k = k;
  st.pred = pred;
  st.stack.push_back(Frame{});
  return st;
}

}  // namespace

SearchReport max_sunflower_free(int D, int n, const SearchOptions& opts) {
  SearchState st = fresh_state(D, n, 3, Predicate::kSunflowerFree);
  return run_dfs(st, opts);
}

SearchReport max_two_symbol(int D, int n, int k, const SearchOptions& opts) {
  SearchState st = fresh_state(D, n, k, Predicate::kTwoSymbol);
  return run_dfs(st, opts);
}

SearchReport resume_search(const std::string& checkpoint_path, const SearchOptions& opts) {
  std::ifstream in(checkpoint_path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + checkpoint_path);
  nlohmann::json j;
  in >> j;

  const std::string pred_name = j.at("predicate").get<std::string>();
  const Predicate pred =
      pred_name == "sunflower" ? Predicate::kSunflowerFree : Predicate::kTwoSymbol;
  SearchState st = fresh_state(j.at("D").get<int>(), j.at("n").get<int>(),
                               j.at("k").get<int>(), pred);
  st.stack.clear();
  for (const auto& f : j.value("frontier", nlohmann::json::array())) {
    Frame frame;
    frame.indices = f.at("indices").get<std::vector<std::uint64_t>>();
    frame.next = f.at("next").get<std::uint64_t>();
    st.stack.push_back(std::move(frame));
  }
  st.report.best = j.at("best").get<ZVecCollection>();
  st.report.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
  return run_dfs(st, opts);
}

ZVecCollection greedy_extend(const ZVecCollection& coll,
                             const std::function<bool(const ZVecCollection&)>& predicate,
                             std::uint64_t seed) {
  ZVecCollection out(coll);
  out.normalize();
  if (!predicate(out))
    throw std::invalid_argument("greedy_extend: input fails the predicate");

  const std::uint64_t total = checked_pow(out.D, static_cast<unsigned>(out.n));
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = total; i > 1; --i)
    std::swap(order[i - 1], order[uniform_below(rng, i)]);

  for (std::uint64_t idx : order) {
    Vec v = index_to_vec(idx, out.D, out.n);
    if (std::binary_search(out.vectors.begin(), out.vectors.end(), v)) continue;
    ZVecCollection candidate(out);
    candidate.vectors.insert(
        std::upper_bound(candidate.vectors.begin(), candidate.vectors.end(), v), v);
    if (predicate(candidate)) out = std::move(candidate);
  }
  return out;
}

void to_json(nlohmann::json& j, const SearchReport& r) {
  j = nlohmann::json{{"D", r.D},
                     {"n", r.n},
                     {"k", r.k},
                     {"best", r.best},
                     {"optimal", r.optimal},
                     {"nodes_explored", r.nodes_explored},
                     {"wall_time", r.wall_time}};
}

void from_json(const nlohmann::json& j, SearchReport& r) {
  r.D = j.at("D").get<int>();
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.best = j.at("best").get<ZVecCollection>();
  r.optimal = j.at("optimal").get<bool>();
  r.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
  r.wall_time = j.value("wall_time", 0.0);
}

}  // namespace cyclelab
