#pragma once

#include <map>
#include <string>
#include <vector>

#include "whitcalc/freelie.hpp"
#include "whitcalc/rooted_tree.hpp"
#include "whitcalc/scalar.hpp"

namespace whitcalc {

// Decorated unrooted uni-trivalent tree, stored as a canonical pair of
// rooted trees joined at their roots, together with the sign accumulated
// while normalizing the input presentation (child swaps at trivalent
// vertices each contribute -1; re-rooting along edges is sign-free).
class UnrootedTree {
 public:
  UnrootedTree(const RootedTree& a, const RootedTree& b);

  const RootedTree& first() const { return a_; }
  const RootedTree& second() const { return b_; }
  int sign() const { return sign_; }
  int order() const { return a_.order() + b_.order(); }
  int max_label() const { return std::max(a_.max_label(), b_.max_label()); }

  UnrootedTree canonical() const;  // same tree, sign +1

  // "<a,b>" on the canonical pair.
  std::string encoding() const { return "<" + a_.encoding() + "," + b_.encoding() + ">"; }

  friend bool operator==(const UnrootedTree& x, const UnrootedTree& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const UnrootedTree& x, const UnrootedTree& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  static UnrootedTree parse(const std::string& text);

 private:
  RootedTree a_, b_;
  int sign_;
};

// Joins the roots of two rooted trees; order adds.
UnrootedTree inner_product(const RootedTree& a, const RootedTree& b);

// Rooted tree whose root carries the twist marker; only antisymmetry
// normalization applies (the marked root blocks re-rooting).
class TwistedTree {
 public:
  explicit TwistedTree(const RootedTree& body);

  const RootedTree& body() const { return body_; }
  int sign() const { return sign_; }
  int order() const { return body_.order(); }
  int max_label() const { return body_.max_label(); }

  TwistedTree canonical() const;
  std::string encoding() const { return "twist:" + body_.encoding(); }

  friend bool operator==(const TwistedTree& x, const TwistedTree& y) {
    return x.body_ == y.body_;
  }
  friend bool operator<(const TwistedTree& x, const TwistedTree& y) {
    return x.body_ < y.body_;
  }

  static TwistedTree parse(const std::string& text);

 private:
  RootedTree body_;
  int sign_;
};

// Integer formal sum of order-n trees plus, for even n, order-n/2 twisted
// trees. Keys are canonical; the constructor-accumulated signs are folded
// into the coefficients.
class TreeSum {
 public:
  TreeSum(int m, int order);

  int num_generators() const { return m_; }
  int order() const { return order_; }

  void add_plain(const UnrootedTree& t, const Int& c);
  void add_twisted(const TwistedTree& t, const Int& c);

  const std::map<UnrootedTree, Int>& plain_terms() const { return plain_; }
  const std::map<TwistedTree, Int>& twisted_terms() const { return twisted_; }

  bool is_zero() const { return plain_.empty() && twisted_.empty(); }

  TreeSum& operator+=(const TreeSum& o);
  bool operator==(const TreeSum&) const = default;

 private:
  int m_;
  int order_;
  std::map<UnrootedTree, Int> plain_;
  std::map<TwistedTree, Int> twisted_;
};

// All re-rootings of an unrooted tree: one entry (leaf label, tree re-rooted
// at that leaf) per univalent vertex, in a deterministic traversal order.
std::vector<std::pair<int, RootedTree>> univalent_rerootings(const UnrootedTree& t);

// Re-rootings of the inner product <body, body> of a twisted tree with
// itself. With fixed_copy_only, only the univalent vertices of the first
// copy are listed.
std::vector<std::pair<int, RootedTree>> doubled_rerootings(const TwistedTree& t,
                                                           bool fixed_copy_only);

// The summation map into L_1 (x) L_{n+1}: each plain tree contributes
// X_{label(v)} (x) B(t_v) over its univalent vertices v; each twisted tree
// contributes half the sum for <body, body>, which is checked to be
// integral.
TensorElement eta(const TreeSum& ts);

// Every canonical decorated unrooted tree of order n, exactly once. Guarded
// by the enumeration ceiling (WHITCALC_MAX_ORDER, default 6).
std::vector<UnrootedTree> enumerate_trees(int m, int n);

// Every canonical twisted tree of the given order.
std::vector<TwistedTree> enumerate_twisted_trees(int m, int order);

// Summation-map images of all order-n trees and, for even n, all order-n/2
// twisted trees.
std::vector<TensorElement> eta_image_generators(int m, int n);

// The boundary-twist map on an order-l twisted tree (l >= 1): rewrites the
// body into leaf-top form [i, J] by Jacobi expansion and substitutes each
// term with the order-(2l-1) tree <i, (J, J)>.
TreeSum boundary_twist(const TwistedTree& t, int m);

// Enumeration ceiling for tree orders; WHITCALC_MAX_ORDER overrides.
int max_tree_order();

}  // namespace whitcalc
