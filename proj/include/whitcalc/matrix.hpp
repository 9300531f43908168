#pragma once

#include <optional>
#include <vector>

#include "whitcalc/scalar.hpp"

namespace whitcalc {

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Isomorphism type of a finitely generated abelian group:
// Z^free_rank  (+)  Z/d_1 (+) ... (+) Z/d_k   with d_1 | d_2 | ... , d_i >= 2.
struct AbelianGroupStructure {
  long free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const AbelianGroupStructure&) const = default;
};

std::string to_string(const AbelianGroupStructure& g);

// S = U * A * V with U, V unimodular and S diagonal, the diagonal entries
// nonnegative and forming a divisibility chain.
struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
  long rank = 0;  // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a);

// Basis of the lattice { v : A v = 0 }. The returned vectors are columns of a
// unimodular matrix, so the lattice they span is a direct summand of Z^cols
// (saturated).
std::vector<IntVector> kernel_basis(const IntMatrix& a);

// Structure of Z^rows / (column span of A).
AbelianGroupStructure cokernel_structure(const IntMatrix& a);

// Solves A x = b exactly over Z; empty when no integer solution exists.
std::optional<IntVector> solve_exact(const IntMatrix& a, const IntVector& b);

// Same, with the normal form computed once for many right-hand sides.
class LinearSolver {
 public:
  explicit LinearSolver(const IntMatrix& a);
  std::optional<IntVector> solve(const IntVector& b) const;

 private:
  long rows_;
  long cols_;
  SmithForm f_;
};

// Linear algebra over the two-element field. Entries are reduced mod 2.
long f2_rank(const IntMatrix& a);
long f2_kernel_dimension(const IntMatrix& a);

// Rank of a packed bit matrix: each row holds `cols` entries, 64 per word.
long f2_rank_packed(std::vector<std::vector<uint64_t>> rows, long cols);

inline bool is_zero(const IntMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) return false;
  return true;
}

inline IntMatrix columns_to_matrix(const std::vector<IntVector>& cols, long rows) {
  IntMatrix m = IntMatrix::Zero(rows, static_cast<long>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<long>(j)) = cols[j];
  return m;
}

}  // namespace whitcalc
