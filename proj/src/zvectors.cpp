#include "cyclelab/zvectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclelab {

void ZVecCollection::normalize() {
  if (D < 2) throw std::invalid_argument("ZVecCollection: D must be >= 2");
  if (n < 0) throw std::invalid_argument("ZVecCollection: negative length");
  for (const Vec& v : vectors) {
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("ZVecCollection: vector length mismatch");
    for (int s : v)
      if (s < 0 || s >= D) throw std::invalid_argument("ZVecCollection: symbol out of range");
  }
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
}

bool is_sunflower(const Vec& v1, const Vec& v2, const Vec& v3) {
  if (v1.size() != v2.size() || v2.size() != v3.size())
    throw std::invalid_argument("is_sunflower: length mismatch");
  if (v1 == v2 || v2 == v3 || v1 == v3)
    throw std::invalid_argument("is_sunflower: vectors must be pairwise distinct");
  for (std::size_t i = 0; i < v1.size(); ++i) {
    const bool all_equal = v1[i] == v2[i] && v2[i] == v3[i];
    const bool all_distinct = v1[i] != v2[i] && v2[i] != v3[i] && v1[i] != v3[i];
    if (!all_equal && !all_distinct) return false;
  }
  return true;
}

std::optional<std::array<Vec, 3>> find_sunflower(const ZVecCollection& coll) {
  const auto& vs = coll.vectors;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      for (std::size_t c = b + 1; c < vs.size(); ++c)
        if (is_sunflower(vs[a], vs[b], vs[c])) return std::array<Vec, 3>{vs[a], vs[b], vs[c]};
  return std::nullopt;
}

std::optional<std::vector<Vec>> two_symbol_property(const ZVecCollection& coll, int k) {
  if (k < 3) throw std::invalid_argument("two_symbol_property: k must be >= 3");
  const auto& vs = coll.vectors;
  const std::size_t m = vs.size();
  if (m == 0) return std::nullopt;

  std::vector<std::size_t> idx(k, 0);
  while (true) {
    bool all_equal = true;
    for (int j = 1; j < k; ++j)
      if (idx[j] != idx[0]) { all_equal = false; break; }
    if (!all_equal) {
      bool covered = false;
      for (int coord = 0; coord < coll.n && !covered; ++coord) {
        int seen[2];
        int distinct = 0;
        for (int j = 0; j < k; ++j) {
          const int s = vs[idx[j]][coord];
          bool known = false;
          for (int d = 0; d < distinct; ++d)
            if (seen[d] == s) { known = true; break; }
          if (!known) {
            if (distinct == 2) { distinct = 3; break; }
            seen[distinct++] = s;
          }
        }
        if (distinct == 2) covered = true;
      }
      if (!covered) {
        std::vector<Vec> witness;
        witness.reserve(k);
        for (int j = 0; j < k; ++j) witness.push_back(vs[idx[j]]);
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

ZVecCollection recode_base(const ZVecCollection& coll, int q) {
  if (q < 2) throw std::invalid_argument("recode_base: base must be >= 2");
  int t = 0;
  std::uint64_t power = 1;
  while (power < static_cast<std::uint64_t>(coll.D)) { power *= q; ++t; }
  if (power != static_cast<std::uint64_t>(coll.D) || t == 0)
    throw std::invalid_argument("recode_base: D is not a positive power of the base");

  ZVecCollection out;
  out.D = q;
  out.n = t * coll.n;
  out.vectors.reserve(coll.size());
  for (const Vec& v : coll.vectors) {
    Vec w(out.n);
    for (int i = 0; i < coll.n; ++i) {
      int s = v[i];
      for (int d = t - 1; d >= 0; --d) {  // most significant digit first
        w[i * t + d] = s % q;
        s /= q;
      }
    }
    out.vectors.push_back(std::move(w));
  }
  out.normalize();
  return out;
}

BalancedPartition partition_encode(const std::vector<std::vector<int>>& parts) {
  const int k = static_cast<int>(parts.size());
  if (k < 1 || parts[0].empty())
    throw std::invalid_argument("partition_encode: empty input");
  const int n = static_cast<int>(parts[0].size());
  const int total = n * k;

  BalancedPartition bp;
  bp.k = k;
  bp.n = n;
  bp.vector.assign(total, -1);
  bp.parts.resize(k);
  for (int j = 0; j < k; ++j) {
    if (static_cast<int>(parts[j].size()) != n)
      throw std::invalid_argument("partition_encode: parts must have equal sizes");
    for (int pos : parts[j]) {
      if (pos < 1 || pos > total)
        throw std::invalid_argument("partition_encode: position out of [1, nk]");
      if (bp.vector[pos - 1] != -1)
        throw std::invalid_argument("partition_encode: overlapping parts");
      bp.vector[pos - 1] = j;
    }
    bp.parts[j] = parts[j];
    std::sort(bp.parts[j].begin(), bp.parts[j].end());
  }
  return bp;
}

BalancedPartition partition_decode(const Vec& vector, int k) {
  if (k < 1) throw std::invalid_argument("partition_decode: k must be >= 1");
  if (vector.empty() || static_cast<int>(vector.size()) % k != 0)
    throw std::invalid_argument("partition_decode: length must be a positive multiple of k");
  BalancedPartition bp;
  bp.k = k;
  bp.n = static_cast<int>(vector.size()) / k;
  bp.vector = vector;
  bp.parts.resize(k);
  for (int pos = 0; pos < static_cast<int>(vector.size()); ++pos) {
    const int j = vector[pos];
    if (j < 0 || j >= k) throw std::invalid_argument("partition_decode: symbol out of range");
    bp.parts[j].push_back(pos + 1);
  }
  for (const auto& part : bp.parts)
    if (static_cast<int>(part.size()) != bp.n)
      throw std::invalid_argument("partition_decode: vector is not balanced");
  return bp;
}

void to_json(nlohmann::json& j, const ZVecCollection& c) {
  j = nlohmann::json{{"D", c.D}, {"n", c.n}, {"vectors", c.vectors}};
}

void from_json(const nlohmann::json& j, ZVecCollection& c) {
  c.D = j.at("D").get<int>();
  c.n = j.at("n").get<int>();
  c.vectors = j.at("vectors").get<std::vector<Vec>>();
  c.normalize();
}

}  // namespace cyclelab
