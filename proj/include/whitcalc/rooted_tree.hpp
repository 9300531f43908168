#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace whitcalc {

// Immutable rooted binary tree with leaves labeled 1..9. The left/right
// order of children encodes the counterclockwise ordering (parent, left,
// right) at each trivalent vertex. Order = number of internal vertices, so
// a tree of order n has n+1 leaves.
class RootedTree {
 public:
  explicit RootedTree(int leaf_label);
  RootedTree(const RootedTree& left, const RootedTree& right);

  bool is_leaf() const { return impl_->label > 0; }
  int label() const;
  RootedTree left() const;
  RootedTree right() const;

  int order() const { return impl_->order; }
  int max_label() const { return impl_->max_label; }

  // Parenthesized form: a leaf prints as its digit, a node as "(l,r)".
  const std::string& encoding() const { return impl_->encoding; }

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.impl_ == b.impl_ || a.encoding() == b.encoding();
  }
  friend bool operator!=(const RootedTree& a, const RootedTree& b) { return !(a == b); }
  friend bool operator<(const RootedTree& a, const RootedTree& b) {
    return a.encoding() < b.encoding();
  }

  static RootedTree parse(std::string_view text);

 private:
  struct Impl {
    int label = 0;  // >0 for leaves
    std::shared_ptr<const Impl> l, r;
    int order = 0;
    int max_label = 0;
    std::string encoding;
  };
  explicit RootedTree(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Normal form under the antisymmetry convention: swapping the two children
// of any internal vertex negates the represented element. Returns the
// lexicographically least representative and the accumulated sign.
std::pair<RootedTree, int> canonical_rooted(const RootedTree& t);

// All decorated rooted trees of the given order over labels 1..m, in a
// deterministic order. Cached; safe for concurrent first use.
const std::vector<RootedTree>& all_rooted_trees(int m, int order);

}  // namespace whitcalc
