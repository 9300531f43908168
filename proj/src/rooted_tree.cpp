#include "whitcalc/rooted_tree.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace whitcalc {

RootedTree::RootedTree(int leaf_label) {
  if (leaf_label < 1 || leaf_label > 9)
    throw std::invalid_argument("leaf label must be in 1..9");
  auto impl = std::make_shared<Impl>();
  impl->label = leaf_label;
  impl->order = 0;
  impl->max_label = leaf_label;
  impl->encoding = std::string(1, static_cast<char>('0' + leaf_label));
  impl_ = std::move(impl);
}

RootedTree::RootedTree(const RootedTree& left, const RootedTree& right) {
  auto impl = std::make_shared<Impl>();
  impl->l = left.impl_;
  impl->r = right.impl_;
  impl->order = left.order() + right.order() + 1;
  impl->max_label = std::max(left.max_label(), right.max_label());
  impl->encoding = "(" + left.encoding() + "," + right.encoding() + ")";
  impl_ = std::move(impl);
}

int RootedTree::label() const {
  if (!is_leaf()) throw std::logic_error("label() on internal node");
  return impl_->label;
}

RootedTree RootedTree::left() const {
  if (is_leaf()) throw std::logic_error("left() on leaf");
  return RootedTree(impl_->l);
}

RootedTree RootedTree::right() const {
  if (is_leaf()) throw std::logic_error("right() on leaf");
  return RootedTree(impl_->r);
}

namespace {

RootedTree parse_impl(std::string_view text, size_t& pos) {
  if (pos >= text.size()) throw std::invalid_argument("tree syntax: unexpected end");
  char c = text[pos];
  if (c >= '1' && c <= '9') {
    ++pos;
    return RootedTree(c - '0');
  }
  if (c != '(') throw std::invalid_argument("tree syntax: expected digit or '('");
  ++pos;
  RootedTree l = parse_impl(text, pos);
  if (pos >= text.size() || text[pos] != ',')
    throw std::invalid_argument("tree syntax: expected ','");
  ++pos;
  RootedTree r = parse_impl(text, pos);
  if (pos >= text.size() || text[pos] != ')')
    throw std::invalid_argument("tree syntax: expected ')'");
  ++pos;
  return RootedTree(l, r);
}

}  // namespace

RootedTree RootedTree::parse(std::string_view text) {
  size_t pos = 0;
  RootedTree t = parse_impl(text, pos);
  if (pos != text.size()) throw std::invalid_argument("tree syntax: trailing characters");
  return t;
}

std::pair<RootedTree, int> canonical_rooted(const RootedTree& t) {
  if (t.is_leaf()) return {t, 1};
  auto [l, sl] = canonical_rooted(t.left());
  auto [r, sr] = canonical_rooted(t.right());
  if (r < l) return {RootedTree(r, l), -sl * sr};
  return {RootedTree(l, r), sl * sr};
}

const std::vector<RootedTree>& all_rooted_trees(int m, int order) {
  if (m < 1 || m > 9) throw std::invalid_argument("generator count must be in 1..9");
  if (order < 0) throw std::invalid_argument("order must be nonnegative");

  static std::recursive_mutex mu;
  static std::map<std::pair<int, int>, std::vector<RootedTree>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);

  auto key = std::make_pair(m, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<RootedTree> out;
  if (order == 0) {
    for (int i = 1; i <= m; ++i) out.emplace_back(i);
  } else {
    for (int k = 0; k < order; ++k) {
      // Recursion through the cache: strictly smaller orders.
      const auto& ls = all_rooted_trees(m, k);
      const auto& rs = all_rooted_trees(m, order - 1 - k);
      for (const auto& l : ls)
        for (const auto& r : rs) out.emplace_back(l, r);
    }
  }
  return cache[key] = std::move(out);
}

}  // namespace whitcalc
