#include "cyclelab/behrend.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "cyclelab/ffield.hpp"
#include "cyclelab/util.hpp"

namespace cyclelab {

std::uint64_t next_prime(std::uint64_t x) {
  if (x < 2) throw std::invalid_argument("next_prime: x must be >= 2");
  if (x > (std::uint64_t(1) << 62)) throw std::range_error("next_prime: magnitude unsupported");
  while (!is_prime_u64(x)) ++x;
  return x;
}

namespace {

constexpr std::uint64_t kSweepVectorCap = 4000000;  // s^d cap per (d, s) cell
constexpr std::uint64_t kSweepTotalCap = 40000000;  // total vectors over the whole sweep
constexpr std::uint64_t kGreedyCap = 4096;          // greedy fallback range cap

bool is_free_with(const std::vector<std::uint64_t>& set, std::uint64_t x, int r) {
  // Checks whether adding x to an equation-free set keeps it free.
  // Any new non-trivial solution uses x at least once; brute force over
  // all (r+1)-tuples from set+{x} containing x.
  std::vector<std::uint64_t> all(set);
  all.push_back(x);
  std::sort(all.begin(), all.end());
  std::unordered_set<std::uint64_t> members(all.begin(), all.end());

  std::vector<std::size_t> idx(r, 0);
  const std::size_t count = all.size();
  while (true) {
    std::uint64_t sum = 0;
    bool uses_x = false;
    for (int j = 0; j < r; ++j) {
      sum += all[idx[j]];
      if (all[idx[j]] == x) uses_x = true;
    }
    if (sum % r == 0) {
      const std::uint64_t target = sum / r;
      if (members.count(target) && (uses_x || target == x)) {
        bool trivial = target == all[idx[0]];
        for (int j = 1; trivial && j < r; ++j) trivial = all[idx[j]] == target;
        if (!trivial) return false;
      }
    }
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == count - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return true;
}

BehrendSet greedy_fallback(int r, std::uint64_t m) {
  BehrendSet out;
  out.r = r;
  out.m = m;
  for (std::uint64_t x = 1; x <= std::min(m, kGreedyCap); ++x)
    if (is_free_with(out.elements, x, r)) out.elements.push_back(x);
  return out;
}

}  // namespace

BehrendSet behrend_construct(int r, std::uint64_t m) {
  if (r < 2) throw std::invalid_argument("behrend_construct: r must be >= 2");
  if (m < 2) throw std::invalid_argument("behrend_construct: m must be >= 2");

  BehrendSet best;
  best.r = r;
  best.m = m;

  std::uint64_t sweep_work = 0;
  for (int d = 1;; ++d) {
    // Smallest base is q = 2r (s = 2); stop once even that exceeds m.
    bool any_s = false;
    // In one digit every sphere is a singleton, so larger digit bounds
    // cannot help; evaluate only s = 2 there.
    const int s_limit = d == 1 ? 2 : 0;
    for (int s = 2; s_limit == 0 || s <= s_limit; ++s) {
      const std::uint64_t q = static_cast<std::uint64_t>(r) * s;
      std::uint64_t qd;
      try {
        qd = checked_pow(q, static_cast<unsigned>(d));
      } catch (const std::range_error&) {
        break;
      }
      if (qd > m) break;
      any_s = true;
      std::uint64_t vec_count;
      try {
        vec_count = checked_pow(s, static_cast<unsigned>(d));
      } catch (const std::range_error&) {
        break;
      }
      if (vec_count > kSweepVectorCap) break;
      if (sweep_work + vec_count > kSweepTotalCap) break;
      sweep_work += vec_count;

      // Bucket digit vectors by squared norm.
      const std::uint64_t max_t = static_cast<std::uint64_t>(d) * (s - 1) * (s - 1);
      std::vector<std::uint64_t> sphere_size(max_t + 1, 0);
      std::vector<int> digits(d, 0);
      for (std::uint64_t v = 0; v < vec_count; ++v) {
        std::uint64_t norm = 0;
        for (int i = 0; i < d; ++i) norm += static_cast<std::uint64_t>(digits[i]) * digits[i];
        ++sphere_size[norm];
        int pos = 0;
        while (pos < d && digits[pos] == s - 1) digits[pos++] = 0;
        if (pos < d) ++digits[pos];
      }
      std::uint64_t best_t = 0;
      for (std::uint64_t t = 1; t <= max_t; ++t)
        if (sphere_size[t] > sphere_size[best_t]) best_t = t;

      if (sphere_size[best_t] > best.elements.size()) {
        // Materialize the winning sphere.
        std::vector<std::uint64_t> elements;
        elements.reserve(sphere_size[best_t]);
        std::fill(digits.begin(), digits.end(), 0);
        for (std::uint64_t v = 0; v < vec_count; ++v) {
          std::uint64_t norm = 0;
          for (int i = 0; i < d; ++i) norm += static_cast<std::uint64_t>(digits[i]) * digits[i];
          if (norm == best_t) {
            std::uint64_t value = 1;
            std::uint64_t weight = 1;
            for (int i = 0; i < d; ++i) {
              value += digits[i] * weight;
              weight *= q;
            }
            elements.push_back(value);
          }
          int pos = 0;
          while (pos < d && digits[pos] == s - 1) digits[pos++] = 0;
          if (pos < d) ++digits[pos];
        }
        std::sort(elements.begin(), elements.end());
        best.elements = std::move(elements);
        best.params = {d, s, q, best_t};
      }
    }
    if (!any_s) break;
  }

  if (best.elements.empty()) best = greedy_fallback(r, m);

  if (auto w = verify_equation_free(best.elements, r))
    throw std::logic_error("behrend_construct: self-check failed");
  return best;
}

std::optional<std::vector<std::uint64_t>> verify_equation_free(
    const std::vector<std::uint64_t>& elements, int r,
    std::optional<std::uint64_t> modulus, std::uint64_t budget) {
  if (r < 2) throw std::invalid_argument("verify_equation_free: r must be >= 2");
  if (budget == 0) budget = default_budget();

  std::vector<std::uint64_t> set(elements);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  const std::size_t count = set.size();
  if (count < 2) return std::nullopt;

  // Cost is |B|^r tuples with an O(1) or O(|B|) completion each.
  std::uint64_t cost = 1;
  for (int j = 0; j <= r; ++j) {
    if (cost > budget / count) throw budget_error("verify_equation_free: budget exceeded");
    cost *= count;
  }

  std::unordered_set<std::uint64_t> members(set.begin(), set.end());
  const std::uint64_t ur = static_cast<std::uint64_t>(r);

  std::vector<std::size_t> idx(r, 0);
  while (true) {
    std::uint64_t sum = 0;
    for (int j = 0; j < r; ++j) sum += set[idx[j]];
    if (!modulus) {
      if (sum % ur == 0 && members.count(sum / ur)) {
        const std::uint64_t target = sum / ur;
        bool trivial = true;
        for (int j = 0; j < r; ++j)
          if (set[idx[j]] != target) { trivial = false; break; }
        if (!trivial) {
          std::vector<std::uint64_t> witness;
          for (int j = 0; j < r; ++j) witness.push_back(set[idx[j]]);
          witness.push_back(target);
          return witness;
        }
      }
    } else {
      const std::uint64_t M = *modulus;
      for (std::uint64_t x : set) {
        if ((sum % M) == (ur * (x % M)) % M) {
          bool trivial = x == set[idx[0]];
          for (int j = 0; trivial && j < r; ++j) trivial = set[idx[j]] == x;
          if (!trivial) {
            std::vector<std::uint64_t> witness;
            for (int j = 0; j < r; ++j) witness.push_back(set[idx[j]]);
            witness.push_back(x);
            return witness;
          }
        }
      }
    }
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == count - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const BehrendSet& b) {
  j = nlohmann::json{{"r", b.r},
                     {"m", b.m},
                     {"elements", b.elements},
                     {"params",
                      {{"d", b.params.d},
                       {"s", b.params.s},
                       {"q", b.params.q},
                       {"t", b.params.t}}}};
}

void from_json(const nlohmann::json& j, BehrendSet& b) {
  b.r = j.at("r").get<int>();
  b.m = j.at("m").get<std::uint64_t>();
  b.elements = j.at("elements").get<std::vector<std::uint64_t>>();
  std::sort(b.elements.begin(), b.elements.end());
  const auto& params = j.at("params");
  b.params.d = params.at("d").get<int>();
  b.params.s = params.at("s").get<int>();
  b.params.q = params.at("q").get<std::uint64_t>();
  b.params.t = params.at("t").get<std::uint64_t>();
}

}  // namespace cyclelab
