#pragma once

#include <map>
#include <string>
#include <vector>

#include "whitcalc/freelie.hpp"
#include "whitcalc/rooted_tree.hpp"
#include "whitcalc/scalar.hpp"
#include "whitcalc/trees.hpp"

namespace whitcalc {

// Freely reduced word in the free group on x_1..x_m. Letters are signed
// generator indices: +i for x_i, -i for its inverse.
class GroupWord {
 public:
  explicit GroupWord(int m) : m_(m) {}
  GroupWord(int m, std::vector<int> letters);

  static GroupWord generator(int m, int i);

  int num_generators() const { return m_; }
  const std::vector<int>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  GroupWord inverse() const;
  GroupWord pow(long e) const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  bool operator==(const GroupWord&) const = default;

 private:
  int m_;
  std::vector<int> letters_;
};

// [a, b] = a b a^-1 b^-1.
GroupWord commutator(const GroupWord& a, const GroupWord& b);

// "x1 x2 X1" with capital letters for inverses; "[w1,w2]" is commutator
// sugar and may nest.
GroupWord parse_word(int m, const std::string& text);
std::string print_word(const GroupWord& w);

// Iterated group commutator of a decorated rooted tree: leaves become
// generators, nodes become commutators.
GroupWord word_from_tree(const RootedTree& t, int m);

// Truncated Magnus expansion: polynomial in noncommuting X_1..X_m with all
// monomials of degree > truncation dropped. Group elements map to
// polynomials with constant term 1.
struct MagnusPoly {
  int m = 1;
  int truncation = 1;
  std::map<std::string, Int> coords;  // monomial word -> coefficient

  Int coefficient(const std::string& monomial) const;
  std::map<std::string, Int> homogeneous_part(int degree) const;
  bool vanishes_in_degrees(int lo, int hi) const;
};

MagnusPoly magnus_expand(const GroupWord& w, int truncation);
MagnusPoly magnus_mul(const MagnusPoly& a, const MagnusPoly& b);

// Degree-q class of a word in F_q under F_q/F_{q+1} = L_q: the degree-q
// homogeneous part of the Magnus expansion, in the Lyndon basis. Throws
// std::domain_error when lower-degree Magnus terms are present (the word is
// not in F_q) or the degree-q part is not primitive.
LieElement lie_class(const GroupWord& w, int q);

// Longitude words read off a formal tree sum: the i-th word is the ordered
// product, over terms and over univalent vertices labeled i, of the
// re-rooted commutator words raised to the term's coefficient; twisted
// terms contribute through one fixed copy of <body, body>. Each word lies
// in F_{n+1}.
std::vector<GroupWord> assemble_longitudes(const TreeSum& ts);

}  // namespace whitcalc
