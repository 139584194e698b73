#include "cyclelab/gadgets.hpp"

#include <stdexcept>

#include "cyclelab/ffield.hpp"
#include "cyclelab/util.hpp"

namespace cyclelab {

namespace {

void check_params(int /*p*/, int k) {
  if (k < 1) throw std::invalid_argument("gadget: k must be >= 1");
  // Field construction validates p and the p^k range.
}

void check_well_formed(const MatrixFamily& f) {
  if (f.p < 2 || f.k < 1) throw std::invalid_argument("MatrixFamily: bad parameters");
  const std::uint64_t expect = checked_pow(f.p, static_cast<unsigned>(f.k));
  if (f.matrices.size() != expect)
    throw std::invalid_argument("MatrixFamily: must contain exactly p^k matrices");
  for (const auto& m : f.matrices) {
    if (static_cast<int>(m.size()) != f.rows())
      throw std::invalid_argument("MatrixFamily: wrong row count");
    for (const auto& row : m) {
      if (static_cast<int>(row.size()) != f.cols())
        throw std::invalid_argument("MatrixFamily: wrong column count");
      for (int e : row)
        if (e < 0 || e >= f.p) throw std::invalid_argument("MatrixFamily: entry out of range");
    }
  }
}

}  // namespace

MatrixFamily construct_A(int p, int k) {
  check_params(p, k);
  const FieldSpec field = FieldSpec::make(p, k);
  const std::uint64_t q = field.order();

  MatrixFamily fam;
  fam.p = p;
  fam.k = k;
  fam.kind = MatrixFamily::Kind::A;
  fam.matrices.reserve(q);

  // Powers 1, g, g^2, ..., g^{k-1} of the generator.
  std::vector<FieldElem> powers;
  powers.reserve(k);
  FieldElem acc = field.one();
  for (int l = 0; l < k; ++l) {
    powers.push_back(acc);
    acc = field.mul(acc, field.generator());
  }

  for (std::uint64_t i = 0; i < q; ++i) {
    const FieldElem alpha = field.element(i);
    std::vector<std::vector<int>> matrix(k, std::vector<int>(k, 0));
    for (int l = 0; l < k; ++l) {
      const std::vector<int> col = field.enc(field.mul(alpha, powers[l]));
      for (int r = 0; r < k; ++r) matrix[r][l] = col[r];
    }
    fam.matrices.push_back(std::move(matrix));
  }
  return fam;
}

MatrixFamily construct_B(int p, int k) {
  MatrixFamily fam = construct_A(p, k);
  fam.kind = MatrixFamily::Kind::B;
  for (auto& matrix : fam.matrices) {
    for (int r = 0; r < k; ++r) {
      int sum = 0;
      for (int c = 0; c < k; ++c) sum += matrix[r][c];
      matrix[r].push_back((p - sum % p) % p);
    }
  }
  return fam;
}

std::optional<GadgetWitness> verify_gadget(const MatrixFamily& f) {
  check_well_formed(f);
  const std::size_t count = f.matrices.size();
  const int cols = f.cols();
  const int rows = f.rows();
  const unsigned full = (1u << cols) - 1;

  if (f.kind == MatrixFamily::Kind::B) {
    for (std::size_t i = 0; i < count; ++i) {
      for (int r = 0; r < rows; ++r) {
        int sum = 0;
        for (int c = 0; c < cols; ++c) sum += f.matrices[i][r][c];
        if (sum % f.p != 0) return GadgetWitness{i, i, full};
      }
    }
  }

  std::vector<int> sum(rows);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      // Non-empty subsets; for kind B also exclude the full set, whose
      // complement is empty and whose sum is zero by construction.
      const unsigned last = f.kind == MatrixFamily::Kind::A ? full : full - 1;
      for (unsigned mask = 1; mask <= last; ++mask) {
        std::fill(sum.begin(), sum.end(), 0);
        if (f.kind == MatrixFamily::Kind::A) {
          // sum_I A_i - sum_I A_j must be nonzero.
          for (int c = 0; c < cols; ++c) {
            if (!(mask & (1u << c))) continue;
            for (int r = 0; r < rows; ++r)
              sum[r] += f.matrices[i][r][c] - f.matrices[j][r][c];
          }
        } else {
          // sum_I B_i + sum_{complement} B_j must be nonzero.
          for (int c = 0; c < cols; ++c) {
            const auto& src = (mask & (1u << c)) ? f.matrices[i] : f.matrices[j];
            for (int r = 0; r < rows; ++r) sum[r] += src[r][c];
          }
        }
        bool zero = true;
        for (int r = 0; r < rows; ++r) {
          if (((sum[r] % f.p) + f.p) % f.p != 0) { zero = false; break; }
        }
        if (zero) return GadgetWitness{i, j, mask};
      }
    }
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const MatrixFamily& f) {
  j = nlohmann::json{{"p", f.p},
                     {"k", f.k},
                     {"kind", f.kind == MatrixFamily::Kind::A ? "A" : "B"},
                     {"matrices", f.matrices}};
}

void from_json(const nlohmann::json& j, MatrixFamily& f) {
  f.p = j.at("p").get<int>();
  f.k = j.at("k").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "A") {
    f.kind = MatrixFamily::Kind::A;
  } else if (kind == "B") {
    f.kind = MatrixFamily::Kind::B;
  } else {
    throw std::invalid_argument("MatrixFamily: kind must be \"A\" or \"B\"");
  }
  f.matrices = j.at("matrices").get<std::vector<std::vector<std::vector<int>>>>();
}

}  // namespace cyclelab
