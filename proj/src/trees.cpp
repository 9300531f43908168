#include "whitcalc/trees.hpp"

#include <cstdlib>
#include <set>
#include <stdexcept>

namespace whitcalc {

namespace {

// Working graph form of an unrooted tree. Internal vertices store their
// three neighbors in counterclockwise order; a leaf stores its single
// neighbor and its label.
struct Graph {
  struct Vertex {
    int label = 0;  // >0 for leaves
    std::vector<int> nbrs;
  };
  std::vector<Vertex> v;
  std::vector<int> leaves_first;   // leaf ids of the first side, preorder
  std::vector<int> leaves_second;  // leaf ids of the second side, preorder

  int add_subtree(const RootedTree& t, std::vector<int>& leaves) {
    if (t.is_leaf()) {
      int id = static_cast<int>(v.size());
      v.push_back({t.label(), {-1}});
      leaves.push_back(id);
      return id;
    }
    int id = static_cast<int>(v.size());
    v.push_back({0, {-1, -1, -1}});
    int l = add_subtree(t.left(), leaves);
    int r = add_subtree(t.right(), leaves);
    v[id].nbrs[1] = l;
    v[id].nbrs[2] = r;
    v[l].nbrs[0] = id;
    v[r].nbrs[0] = id;
    return id;
  }

  static Graph join(const RootedTree& a, const RootedTree& b) {
    Graph g;
    int ia = g.add_subtree(a, g.leaves_first);
    int ib = g.add_subtree(b, g.leaves_second);
    g.v[ia].nbrs[0] = ib;
    g.v[ib].nbrs[0] = ia;
    return g;
  }

  // The rooted tree hanging at x, grown away from the neighbor `from`.
  // Children follow the cyclic order after the parent direction.
  RootedTree grow(int x, int from) const {
    const Vertex& vx = v[x];
    if (vx.label > 0) return RootedTree(vx.label);
    int i = 0;
    while (vx.nbrs[i] != from) ++i;
    int l = vx.nbrs[(i + 1) % 3];
    int r = vx.nbrs[(i + 2) % 3];
    return RootedTree(grow(l, x), grow(r, x));
  }
};

struct CanonicalResult {
  RootedTree a;
  RootedTree b;
  int sign;
};

CanonicalResult canonicalize_pair(const RootedTree& a0, const RootedTree& b0) {
  Graph g = Graph::join(a0, b0);
  bool have = false;
  CanonicalResult best{a0, b0, 1};
  for (int x = 0; x < static_cast<int>(g.v.size()); ++x) {
    for (int y : g.v[x].nbrs) {
      if (y < x) continue;
      auto [ca, sa] = canonical_rooted(g.grow(x, y));
      auto [cb, sb] = canonical_rooted(g.grow(y, x));
      if (cb < ca) std::swap(ca, cb);
      int sign = sa * sb;
      if (!have || ca < best.a || (ca == best.a && cb < best.b)) {
        best = {ca, cb, sign};
        have = true;
      } else if (ca == best.a && cb == best.b && sign > best.sign) {
        // Presentations tying for the least key with both signs mean the
        // tree has an orientation-reversing symmetry; prefer +1 so the
        // choice is presentation-independent.
        best.sign = sign;
      }
    }
  }
  return best;
}

}  // namespace

UnrootedTree::UnrootedTree(const RootedTree& a, const RootedTree& b)
    : a_(a), b_(b), sign_(1) {
  CanonicalResult c = canonicalize_pair(a, b);
  a_ = c.a;
  b_ = c.b;
  sign_ = c.sign;
}

UnrootedTree UnrootedTree::canonical() const {
  UnrootedTree t = *this;
  t.sign_ = 1;
  return t;
}

UnrootedTree UnrootedTree::parse(const std::string& text) {
  if (text.size() < 2 || text.front() != '<' || text.back() != '>')
    throw std::invalid_argument("unrooted tree syntax: expected <a,b>");
  std::string inner = text.substr(1, text.size() - 2);
  // Split at the comma at depth zero.
  int depth = 0;
  size_t cut = std::string::npos;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    else if (inner[i] == ')') --depth;
    else if (inner[i] == ',' && depth == 0) {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos)
    throw std::invalid_argument("unrooted tree syntax: missing top-level comma");
  return UnrootedTree(RootedTree::parse(inner.substr(0, cut)),
                      RootedTree::parse(inner.substr(cut + 1)));
}

UnrootedTree inner_product(const RootedTree& a, const RootedTree& b) {
  return UnrootedTree(a, b);
}

TwistedTree::TwistedTree(const RootedTree& body) : body_(body), sign_(1) {
  auto [c, s] = canonical_rooted(body);
  body_ = c;
  sign_ = s;
}

TwistedTree TwistedTree::canonical() const {
  TwistedTree t = *this;
  t.sign_ = 1;
  return t;
}

TwistedTree TwistedTree::parse(const std::string& text) {
  const std::string prefix = "twist:";
  if (text.rfind(prefix, 0) != 0)
    throw std::invalid_argument("twisted tree syntax: expected twist:<body>");
  return TwistedTree(RootedTree::parse(text.substr(prefix.size())));
}

TreeSum::TreeSum(int m, int order) : m_(m), order_(order) {
  if (m < 1 || m > 9) throw std::invalid_argument("generator count must be in 1..9");
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
}

void TreeSum::add_plain(const UnrootedTree& t, const Int& c) {
  if (t.order() != order_)
    throw std::invalid_argument("tree sum: plain term of the wrong order");
  if (t.max_label() > m_) throw std::invalid_argument("tree sum: label out of range");
  if (c == 0) return;
  UnrootedTree key = t.canonical();
  Int& slot = plain_[key];
  slot += c * t.sign();
  if (slot == 0) plain_.erase(key);
}

void TreeSum::add_twisted(const TwistedTree& t, const Int& c) {
  if (order_ % 2 != 0)
    throw std::invalid_argument("tree sum: twisted terms require even order");
  if (2 * t.order() != order_)
    throw std::invalid_argument("tree sum: twisted term of the wrong order");
  if (t.max_label() > m_) throw std::invalid_argument("tree sum: label out of range");
  if (c == 0) return;
  TwistedTree key = t.canonical();
  Int& slot = twisted_[key];
  slot += c * t.sign();
  if (slot == 0) twisted_.erase(key);
}

TreeSum& TreeSum::operator+=(const TreeSum& o) {
  if (m_ != o.m_ || order_ != o.order_)
    throw std::invalid_argument("tree sum: mismatched grading");
  for (const auto& [t, c] : o.plain_) add_plain(t, c);
  for (const auto& [t, c] : o.twisted_) add_twisted(t, c);
  return *this;
}

std::vector<std::pair<int, RootedTree>> univalent_rerootings(const UnrootedTree& t) {
  Graph g = Graph::join(t.first(), t.second());
  std::vector<std::pair<int, RootedTree>> out;
  for (const auto& side : {g.leaves_first, g.leaves_second}) {
    for (int leaf : side) {
      int nbr = g.v[leaf].nbrs[0];
      out.emplace_back(g.v[leaf].label, g.grow(nbr, leaf));
    }
  }
  return out;
}

std::vector<std::pair<int, RootedTree>> doubled_rerootings(const TwistedTree& t,
                                                           bool fixed_copy_only) {
  Graph g = Graph::join(t.body(), t.body());
  std::vector<std::pair<int, RootedTree>> out;
  for (int leaf : g.leaves_first) {
    int nbr = g.v[leaf].nbrs[0];
    out.emplace_back(g.v[leaf].label, g.grow(nbr, leaf));
  }
  if (!fixed_copy_only) {
    for (int leaf : g.leaves_second) {
      int nbr = g.v[leaf].nbrs[0];
      out.emplace_back(g.v[leaf].label, g.grow(nbr, leaf));
    }
  }
  return out;
}

TensorElement eta(const TreeSum& ts) {
  const int m = ts.num_generators();
  const int n = ts.order();
  TensorElement out = TensorElement::zero(m, n);
  for (const auto& [t, c] : ts.plain_terms()) {
    for (const auto& [label, rt] : univalent_rerootings(t))
      out.add_tensor(label, tree_bracket(rt, m), c);
  }
  for (const auto& [t, c] : ts.twisted_terms()) {
    TensorElement acc = TensorElement::zero(m, n);
    for (const auto& [label, rt] : doubled_rerootings(t, false))
      acc.add_tensor(label, tree_bracket(rt, m), 1);
    for (const auto& [key, v] : acc.coords) {
      if (!is_even(v))
        throw std::logic_error("summation map of a twisted tree is not integral");
      out.add_term(key.first, key.second, c * (v / 2));
    }
  }
  return out;
}

int max_tree_order() {
  static const int limit = [] {
    if (const char* env = std::getenv("WHITCALC_MAX_ORDER")) {
      int v = std::atoi(env);
      if (v >= 0) return v;
    }
    return 6;
  }();
  return limit;
}

std::vector<UnrootedTree> enumerate_trees(int m, int n) {
  if (m < 1 || m > 9) throw std::invalid_argument("generator count must be in 1..9");
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  if (n > max_tree_order())
    throw std::runtime_error("tree enumeration limit exceeded (set WHITCALC_MAX_ORDER)");
  std::set<UnrootedTree> seen;
  for (int j = 0; 2 * j <= n; ++j) {
    const auto& left = all_rooted_trees(m, j);
    const auto& right = all_rooted_trees(m, n - j);
    for (const auto& a : left)
      for (const auto& b : right) seen.insert(UnrootedTree(a, b).canonical());
  }
  return {seen.begin(), seen.end()};
}

std::vector<TwistedTree> enumerate_twisted_trees(int m, int order) {
  if (order > max_tree_order())
    throw std::runtime_error("tree enumeration limit exceeded (set WHITCALC_MAX_ORDER)");
  std::set<TwistedTree> seen;
  for (const auto& body : all_rooted_trees(m, order))
    seen.insert(TwistedTree(body).canonical());
  return {seen.begin(), seen.end()};
}

std::vector<TensorElement> eta_image_generators(int m, int n) {
  std::vector<TensorElement> out;
  for (const auto& t : enumerate_trees(m, n)) {
    TreeSum ts(m, n);
    ts.add_plain(t, 1);
    out.push_back(eta(ts));
  }
  if (n % 2 == 0) {
    for (const auto& t : enumerate_twisted_trees(m, n / 2)) {
      TreeSum ts(m, n);
      ts.add_twisted(t, 1);
      out.push_back(eta(ts));
    }
  }
  return out;
}

namespace {

struct LeafTopTerm {
  int sign;
  int leaf;
  RootedTree rest;
};

// Rewrites a bracket expression as a signed sum of terms [leaf, J], using
// antisymmetry and [[A,B],C] = [A,[B,C]] + [[A,C],B].
void expand_leaf_top(const RootedTree& b, int sign, std::vector<LeafTopTerm>& out) {
  RootedTree l = b.left();
  RootedTree r = b.right();
  if (l.is_leaf()) {
    out.push_back({sign, l.label(), r});
    return;
  }
  if (r.is_leaf()) {
    out.push_back({-sign, r.label(), l});
    return;
  }
  RootedTree a1 = l.left();
  RootedTree a2 = l.right();
  expand_leaf_top(RootedTree(a1, RootedTree(a2, r)), sign, out);
  expand_leaf_top(RootedTree(a2, RootedTree(a1, r)), -sign, out);
}

}  // namespace

TreeSum boundary_twist(const TwistedTree& t, int m) {
  const int ell = t.order();
  if (ell < 1)
    throw std::invalid_argument("boundary twist needs a trivalent vertex (order >= 1)");
  std::vector<LeafTopTerm> terms;
  expand_leaf_top(t.body(), t.sign(), terms);
  TreeSum out(m, 2 * ell - 1);
  for (const auto& term : terms) {
    UnrootedTree u = inner_product(RootedTree(term.leaf),
                                   RootedTree(term.rest, term.rest));
    out.add_plain(u, term.sign);
  }
  return out;
}

}  // namespace whitcalc
