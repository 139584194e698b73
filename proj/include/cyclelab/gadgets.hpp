#ifndef CYCLELAB_GADGETS_HPP
#define CYCLELAB_GADGETS_HPP

#include <optional>
#include <vector>

#include "json.hpp"

namespace cyclelab {

/// An ordered family of p^k matrices over F_p, stored row-major.
/// Kind A matrices are k x k, kind B matrices are k x (k+1) with
/// zero column sums.
struct MatrixFamily {
  enum class Kind { A, B };

  int p = 0;
  int k = 0;
  Kind kind = Kind::A;
  // matrices[i][row][col]
  std::vector<std::vector<std::vector<int>>> matrices;

  int rows() const { return k; }
  int cols() const { return kind == Kind::A ? k : k + 1; }
};

/// A violating (i, j, I): two distinct family indices and a column
/// subset (bitmask over columns, bit l = column l+1 selected).
struct GadgetWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  unsigned subset = 0;

  bool operator==(const GadgetWitness& o) const {
    return i == o.i && j == o.j && subset == o.subset;
  }
};

/// Family of p^k matrices whose column subset sums separate any two
/// members: matrix i has columns enc(a_i * g^l) for l = 0..k-1, a_i the
/// i-th field element and g the generator of F_{p^k}.
MatrixFamily construct_A(int p, int k);

/// Kind-A family with an appended column equal to minus the sum of the
/// other columns, so every matrix's columns sum to zero.
MatrixFamily construct_B(int p, int k);

/// Exhaustive check of the defining separation property. Kind A: for all
/// i != j and non-empty I, the I-column sums differ. Kind B: zero column
/// sums, and for all i != j and non-empty proper I, the mixed sum over
/// B_i's I-columns and B_j's complement columns is nonzero. Returns the
/// smallest violating (i, j, I) in lexicographic order, or nullopt.
std::optional<GadgetWitness> verify_gadget(const MatrixFamily& family);

void to_json(nlohmann::json& j, const MatrixFamily& f);
void from_json(const nlohmann::json& j, MatrixFamily& f);

}  // namespace cyclelab

#endif
