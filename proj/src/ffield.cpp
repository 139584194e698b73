#include "cyclelab/ffield.hpp"

#include <stdexcept>

#include "cyclelab/util.hpp"

namespace cyclelab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Polynomials over F_p as coefficient vectors, constant term first,
// trailing zeros trimmed.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int da = static_cast<int>(a.size()) - 1;
    // m is monic, so the quotient digit is just the leading coefficient.
    const int q = a[da];
    if (q != 0) {
      for (int i = 0; i <= dm; ++i) {
        int& c = a[da - dm + i];
        c = (c - q * m[i]) % p;
        if (c < 0) c += p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// Enumerates monic polynomials of degree d over F_p: index encodes the
// lower coefficients as base-p digits, constant term least significant.
Poly monic_poly(int p, int d, std::uint64_t index) {
  Poly poly(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    poly[i] = static_cast<int>(index % p);
    index /= p;
  }
  poly[d] = 1;
  return poly;
}

// Trial division by every monic polynomial of degree 1..d/2.
bool is_irreducible(const Poly& m, int p) {
  const int d = static_cast<int>(m.size()) - 1;
  for (int dd = 1; dd <= d / 2; ++dd) {
    const std::uint64_t count = checked_pow(p, dd);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Poly divisor = monic_poly(p, dd, idx);
      if (poly_mod(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  // Deterministic Miller-Rabin for 64-bit inputs with the standard base set.
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::make(int p, int k) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("FieldSpec::make: p must be prime");
  if (k < 1) throw std::invalid_argument("FieldSpec::make: k must be >= 1");
  const std::uint64_t order = checked_pow(p, static_cast<unsigned>(k));
  if (order > 65536) throw std::range_error("FieldSpec::make: p^k above 2^16 unsupported");

  FieldSpec f;
  f.p_ = p;
  f.k_ = k;
  f.order_ = order;

  // Lexicographically smallest monic irreducible, compared low-degree-first;
  // the enumeration index order coincides with that comparison reversed per
  // digit weight, so scan indices in lexicographic coefficient order.
  {
    bool found = false;
    // Enumerate coefficient vectors (c_0,...,c_{k-1}) in lexicographic
    // order: c_0 is the most significant position of the comparison.
    std::vector<int> lower(k, 0);
    while (true) {
      Poly candidate(lower);
      candidate.push_back(1);
      if (is_irreducible(candidate, p)) {
        f.modulus_ = candidate;
        found = true;
        break;
      }
      int pos = k - 1;
      while (pos >= 0 && lower[pos] == p - 1) lower[pos--] = 0;
      if (pos < 0) break;
      ++lower[pos];
    }
    if (!found) throw std::logic_error("FieldSpec::make: no irreducible found");
  }

  // First generator in element enumeration order.
  const std::uint64_t group = order - 1;
  std::vector<std::uint64_t> prime_divisors;
  {
    std::uint64_t g = group;
    for (std::uint64_t q = 2; q * q <= g; ++q) {
      if (g % q == 0) {
        prime_divisors.push_back(q);
        while (g % q == 0) g /= q;
      }
    }
    if (g > 1) prime_divisors.push_back(g);
  }
  bool found_gen = false;
  for (std::uint64_t idx = 1; idx < order; ++idx) {
    const FieldElem cand = f.element(idx);
    bool ok = true;
    for (std::uint64_t q : prime_divisors) {
      if (f.pow(cand, group / q) == f.one()) { ok = false; break; }
    }
    if (ok) {
      f.generator_ = cand;
      found_gen = true;
      break;
    }
  }
  if (!found_gen) throw std::logic_error("FieldSpec::make: no generator found");
  return f;
}

FieldElem FieldSpec::element(std::uint64_t index) const {
  FieldElem e;
  e.coeffs.assign(k_, 0);
  for (int i = 0; i < k_; ++i) {
    e.coeffs[i] = static_cast<int>(index % p_);
    index /= p_;
  }
  return e;
}

std::uint64_t FieldSpec::index_of(const FieldElem& a) const {
  check_member(a);
  std::uint64_t idx = 0;
  for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + a.coeffs[i];
  return idx;
}

void FieldSpec::check_member(const FieldElem& a) const {
  if (static_cast<int>(a.coeffs.size()) != k_)
    throw std::invalid_argument("FieldElem: wrong length for this field");
  for (int c : a.coeffs)
    if (c < 0 || c >= p_) throw std::invalid_argument("FieldElem: coordinate out of range");
}

FieldElem FieldSpec::add(const FieldElem& a, const FieldElem& b) const {
  check_member(a);
  check_member(b);
  FieldElem r;
  r.coeffs.resize(k_);
  for (int i = 0; i < k_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
  return r;
}

FieldElem FieldSpec::neg(const FieldElem& a) const {
  check_member(a);
  FieldElem r;
  r.coeffs.resize(k_);
  for (int i = 0; i < k_; ++i) r.coeffs[i] = (p_ - a.coeffs[i]) % p_;
  return r;
}

FieldElem FieldSpec::sub(const FieldElem& a, const FieldElem& b) const {
  return add(a, neg(b));
}

FieldElem FieldSpec::mul(const FieldElem& a, const FieldElem& b) const {
  check_member(a);
  check_member(b);
  Poly prod = poly_mul(a.coeffs, b.coeffs, p_);
  Poly reduced = poly_mod(std::move(prod), modulus_, p_);
  FieldElem r;
  r.coeffs = std::move(reduced);
  r.coeffs.resize(k_, 0);
  return r;
}

FieldElem FieldSpec::pow(const FieldElem& a, std::uint64_t e) const {
  FieldElem base = a;
  FieldElem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FieldElem FieldSpec::inv(const FieldElem& a) const {
  check_member(a);
  if (a.is_zero()) throw std::domain_error("FieldSpec::inv: zero has no inverse");
  // a^(q-2) in a group of order q-1.
  return pow(a, order_ - 2);
}

void to_json(nlohmann::json& j, const FieldSpec& f) {
  j = nlohmann::json{{"p", f.p()},
                     {"k", f.k()},
                     {"modulus", f.modulus()},
                     {"generator", f.generator().coeffs}};
}

}  // namespace cyclelab
