#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "whitcalc/matrix.hpp"
#include "whitcalc/rooted_tree.hpp"
#include "whitcalc/scalar.hpp"

namespace whitcalc {

// ---------------------------------------------------------------------------
// Lyndon words and rank formulas
// ---------------------------------------------------------------------------

// All Lyndon words of length n over the alphabet {'1',...,'m'}, in
// lexicographic order (Duval's generation).
std::vector<std::string> lyndon_words(int m, int n);

bool is_lyndon(const std::string& w);

int mobius(long d);

// Rank of the degree-n part of the free Lie algebra on m generators:
// (1/n) sum_{d|n} mobius(d) m^{n/d}. Requires n >= 1.
long witt_rank(int m, int n);

// Number of linearly independent order-n Milnor invariants:
// m * witt_rank(m, n+1) - witt_rank(m, n+2). Requires n >= 0.
long milnor_rank(int m, int n);

// ---------------------------------------------------------------------------
// Elements of the free Lie algebra over Z in the Lyndon basis
// ---------------------------------------------------------------------------

struct LieElement {
  int m = 1;
  int degree = 1;
  std::map<std::string, Int> coords;  // Lyndon word -> coefficient, no zeros

  static LieElement zero(int m, int degree) { return LieElement{m, degree, {}}; }
  static LieElement generator(int m, int i);

  bool is_zero() const { return coords.empty(); }
  void add_term(const std::string& word, const Int& c);

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Int& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Int& c, LieElement a) { return a *= c; }
  bool operator==(const LieElement&) const = default;
};

std::string to_string(const LieElement& x);

// Lie bracket, rewritten into the Lyndon basis via the tensor-algebra
// embedding. Degrees add; generator counts must agree.
LieElement lie_bracket(const LieElement& a, const LieElement& b);

// Expansion of the standard Lyndon bracketing b(w) in the free associative
// algebra: the word w itself plus lexicographically greater words.
const std::map<std::string, Int>& lyndon_bracket_expansion(const std::string& w);

// Projects a homogeneous degree-n tensor (word -> coefficient) to the Lyndon
// basis. Throws std::domain_error when the tensor is not in the image of the
// free Lie algebra.
LieElement lyndon_project(int m, int degree, std::map<std::string, Int> tensor);

// Formal bracket of a decorated rooted tree: a leaf labeled i maps to the
// i-th generator, a node to the bracket of its children. An order-n tree
// yields an element of degree n+1.
LieElement tree_bracket(const RootedTree& t, int m);

// ---------------------------------------------------------------------------
// The ambient group L_1 (x) L_{n+1} and the bracket map
// ---------------------------------------------------------------------------

// Element of L_1 (x) L_{order+1}, coordinates keyed by (generator index,
// Lyndon word of length order+1).
struct TensorElement {
  int m = 1;
  int order = 0;
  std::map<std::pair<int, std::string>, Int> coords;

  static TensorElement zero(int m, int order) { return TensorElement{m, order, {}}; }

  bool is_zero() const { return coords.empty(); }
  void add_term(int i, const std::string& word, const Int& c);
  void add_tensor(int i, const LieElement& y, const Int& scale);

  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(const Int& c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  bool operator==(const TensorElement&) const = default;
};

std::string to_string(const TensorElement& x);

// Fixed basis of L_1 (x) L_{order+1}: pairs (i, word) in lexicographic order.
std::vector<std::pair<int, std::string>> tensor_basis(int m, int order);

IntVector tensor_to_vector(const TensorElement& x);
TensorElement tensor_from_vector(int m, int order, const IntVector& v);

// Matrix of the bracket map L_1 (x) L_{n+1} -> L_{n+2}, X (x) Y -> [X, Y],
// in the bases above.
IntMatrix bracket_map_matrix(int m, int n);

// Image of x under the bracket map.
LieElement apply_bracket_map(const TensorElement& x);

bool in_bracket_kernel(const TensorElement& x);

// Saturated basis of the kernel of the bracket map inside L_1 (x) L_{n+1};
// its length equals milnor_rank(m, n).
std::vector<TensorElement> dn_basis(int m, int n);

// ---------------------------------------------------------------------------
// Levine's quasi-Lie algebra: antisymmetry without alternativity
// ---------------------------------------------------------------------------

// Presentation of the degree-n part L'_n: free abelian group on all formal
// n-fold bracket expressions, modulo the columns of relation_matrix
// (antisymmetry [X,Y]+[Y,X] and the Jacobi identity, instantiated at every
// vertex of every expression).
struct QuasiLiePresentation {
  int m = 1;
  int degree = 1;
  std::vector<RootedTree> generator_trees;
  IntMatrix relation_matrix;  // rows = generators, columns = relations
};

const QuasiLiePresentation& quasi_lie_presentation(int m, int degree);

AbelianGroupStructure quasi_lie_structure(int m, int degree);

// F_2-dimension of the kernel of the bracket-renaming map
// Z_2 (x) L'_{ell+1} -> Z_2 (x) L_{ell+1}.
long bsl_kernel_dimension(int m, int ell);

// ---------------------------------------------------------------------------
// The Levine quotient of D_{2k}
// ---------------------------------------------------------------------------

// Image of x in D_{2k} / <images of order-2k trees under the summation map>,
// written in a fixed basis of the quotient, which is verified at
// construction time to be (Z_2)^{witt_rank(m, k+1)}. Throws
// std::invalid_argument when x is not in the kernel of the bracket map.
std::vector<uint8_t> sl_quotient(const TensorElement& x, int m, int k);

// F_2-dimension of the quotient above (= witt_rank(m, k+1), checked).
long sl_quotient_dimension(int m, int k);

}  // namespace whitcalc
