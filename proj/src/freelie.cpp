#include "whitcalc/freelie.hpp"

#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "whitcalc/trees.hpp"

namespace whitcalc {

// ---------------------------------------------------------------------------
// Lyndon words
// ---------------------------------------------------------------------------

std::vector<std::string> lyndon_words(int m, int n) {
  if (m < 1 || m > 9) throw std::invalid_argument("generator count must be in 1..9");
  if (n < 1) throw std::invalid_argument("word length must be positive");
  // Duval's algorithm, emitting only the words of length exactly n.
  std::vector<std::string> out;
  std::string w = "1";
  const char top = static_cast<char>('0' + m);
  while (true) {
    if (static_cast<int>(w.size()) == n) out.push_back(w);
    // Extend periodically to length n, then increment.
    std::string x = w;
    while (static_cast<int>(x.size()) < n) x += x[x.size() % w.size()];
    while (!x.empty() && x.back() == top) x.pop_back();
    if (x.empty()) break;
    ++x.back();
    w = x;
  }
  return out;
}

bool is_lyndon(const std::string& w) {
  if (w.empty()) return false;
  for (size_t i = 1; i < w.size(); ++i) {
    if (!(w < w.substr(i))) return false;
  }
  return true;
}

int mobius(long d) {
  int count = 0;
  for (long p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;
      ++count;
    }
  }
  if (d > 1) ++count;
  return (count % 2 == 0) ? 1 : -1;
}

long witt_rank(int m, int n) {
  if (m < 1) throw std::invalid_argument("generator count must be positive");
  if (n < 1) throw std::invalid_argument("degree must be positive");
  Int total = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(m),
                  static_cast<unsigned long>(n / d));
    total += mobius(d) * power;
  }
  Int r = total / n;
  if (r * n != total) throw std::logic_error("witt_rank: divisibility failed");
  return r.get_si();
}

long milnor_rank(int m, int n) {
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  return m * witt_rank(m, n + 1) - witt_rank(m, n + 2);
}

// ---------------------------------------------------------------------------
// Homogeneous tensors and the Lyndon basis
// ---------------------------------------------------------------------------

namespace {

using WordPoly = std::map<std::string, Int>;

void poly_add_scaled(WordPoly& dst, const WordPoly& src, const Int& c) {
  if (c == 0) return;
  for (const auto& [w, a] : src) {
    Int& slot = dst[w];
    slot += c * a;
    if (slot == 0) dst.erase(w);
  }
}

WordPoly poly_mul(const WordPoly& a, const WordPoly& b) {
  WordPoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Int& slot = out[wa + wb];
      slot += ca * cb;
      if (slot == 0) out.erase(wa + wb);
    }
  }
  return out;
}

// Standard factorization of a Lyndon word of length >= 2: w = uv with v the
// lexicographically least proper suffix (which is Lyndon and the longest
// Lyndon proper suffix).
std::pair<std::string, std::string> standard_factorization(const std::string& w) {
  size_t best = 1;
  for (size_t i = 2; i < w.size(); ++i) {
    if (w.compare(i, std::string::npos, w, best, std::string::npos) < 0) best = i;
  }
  return {w.substr(0, best), w.substr(best)};
}

}  // namespace

const std::map<std::string, Int>& lyndon_bracket_expansion(const std::string& w) {
  static std::recursive_mutex mu;
  static std::map<std::string, WordPoly> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;

  WordPoly p;
  if (w.size() == 1) {
    p[w] = 1;
  } else {
    auto [u, v] = standard_factorization(w);
    const WordPoly pu = lyndon_bracket_expansion(u);
    const WordPoly pv = lyndon_bracket_expansion(v);
    p = poly_mul(pu, pv);
    poly_add_scaled(p, poly_mul(pv, pu), -1);
  }
  return cache[w] = std::move(p);
}

LieElement lyndon_project(int m, int degree, std::map<std::string, Int> tensor) {
  LieElement out = LieElement::zero(m, degree);
  while (!tensor.empty()) {
    // Copy before mutating: the subtraction below erases map nodes.
    const std::string w = tensor.begin()->first;
    const Int coeff = tensor.begin()->second;
    if (static_cast<int>(w.size()) != degree)
      throw std::invalid_argument("lyndon_project: tensor not homogeneous of the stated degree");
    if (!is_lyndon(w))
      throw std::domain_error("tensor is not primitive: leading word " + w + " is not Lyndon");
    poly_add_scaled(tensor, lyndon_bracket_expansion(w), -coeff);
    out.coords[w] = coeff;
  }
  return out;
}

// ---------------------------------------------------------------------------
// LieElement
// ---------------------------------------------------------------------------

LieElement LieElement::generator(int m, int i) {
  if (i < 1 || i > m) throw std::invalid_argument("generator index out of range");
  LieElement x = zero(m, 1);
  x.coords[std::string(1, static_cast<char>('0' + i))] = 1;
  return x;
}

void LieElement::add_term(const std::string& word, const Int& c) {
  if (c == 0) return;
  Int& slot = coords[word];
  slot += c;
  if (slot == 0) coords.erase(word);
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (m != o.m || degree != o.degree)
    throw std::invalid_argument("LieElement sum: mismatched grading");
  for (const auto& [w, c] : o.coords) add_term(w, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  if (m != o.m || degree != o.degree)
    throw std::invalid_argument("LieElement difference: mismatched grading");
  for (const auto& [w, c] : o.coords) add_term(w, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Int& c) {
  if (c == 0) {
    coords.clear();
    return *this;
  }
  for (auto& [w, a] : coords) a *= c;
  return *this;
}

std::string to_string(const LieElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : x.coords) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    Int a = abs_of(c);
    if (a != 1) out << a.get_str() << "*";
    out << "[" << w << "]";
    first = false;
  }
  return out.str();
}

namespace {

WordPoly lie_to_tensor(const LieElement& x) {
  WordPoly out;
  for (const auto& [w, c] : x.coords) poly_add_scaled(out, lyndon_bracket_expansion(w), c);
  return out;
}

}  // namespace

LieElement lie_bracket(const LieElement& a, const LieElement& b) {
  if (a.m != b.m) throw std::invalid_argument("lie_bracket: mismatched generator counts");
  const WordPoly ta = lie_to_tensor(a);
  const WordPoly tb = lie_to_tensor(b);
  WordPoly t = poly_mul(ta, tb);
  poly_add_scaled(t, poly_mul(tb, ta), -1);
  return lyndon_project(a.m, a.degree + b.degree, std::move(t));
}

LieElement tree_bracket(const RootedTree& t, int m) {
  if (t.max_label() > m) throw std::invalid_argument("tree label exceeds generator count");
  struct Expand {
    WordPoly operator()(const RootedTree& t) const {
      if (t.is_leaf()) {
        return {{std::string(1, static_cast<char>('0' + t.label())), Int(1)}};
      }
      WordPoly l = (*this)(t.left());
      WordPoly r = (*this)(t.right());
      WordPoly out = poly_mul(l, r);
      poly_add_scaled(out, poly_mul(r, l), -1);
      return out;
    }
  };
  return lyndon_project(m, t.order() + 1, Expand{}(t));
}

// ---------------------------------------------------------------------------
// TensorElement
// ---------------------------------------------------------------------------

void TensorElement::add_term(int i, const std::string& word, const Int& c) {
  if (c == 0) return;
  auto key = std::make_pair(i, word);
  Int& slot = coords[key];
  slot += c;
  if (slot == 0) coords.erase(key);
}

void TensorElement::add_tensor(int i, const LieElement& y, const Int& scale) {
  for (const auto& [w, c] : y.coords) add_term(i, w, scale * c);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  if (m != o.m || order != o.order)
    throw std::invalid_argument("TensorElement sum: mismatched grading");
  for (const auto& [k, c] : o.coords) add_term(k.first, k.second, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  if (m != o.m || order != o.order)
    throw std::invalid_argument("TensorElement difference: mismatched grading");
  for (const auto& [k, c] : o.coords) add_term(k.first, k.second, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Int& c) {
  if (c == 0) {
    coords.clear();
    return *this;
  }
  for (auto& [k, a] : coords) a *= c;
  return *this;
}

std::string to_string(const TensorElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : x.coords) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    Int a = abs_of(c);
    if (a != 1) out << a.get_str() << "*";
    out << "X" << k.first << "(x)[" << k.second << "]";
    first = false;
  }
  return out.str();
}

std::vector<std::pair<int, std::string>> tensor_basis(int m, int order) {
  std::vector<std::pair<int, std::string>> basis;
  const auto words = lyndon_words(m, order + 1);
  for (int i = 1; i <= m; ++i)
    for (const auto& w : words) basis.emplace_back(i, w);
  return basis;
}

IntVector tensor_to_vector(const TensorElement& x) {
  const auto basis = tensor_basis(x.m, x.order);
  IntVector v = IntVector::Zero(static_cast<long>(basis.size()));
  long idx = 0;
  for (const auto& key : basis) {
    auto it = x.coords.find(key);
    if (it != x.coords.end()) v(idx) = it->second;
    ++idx;
  }
  return v;
}

TensorElement tensor_from_vector(int m, int order, const IntVector& v) {
  const auto basis = tensor_basis(m, order);
  if (v.rows() != static_cast<long>(basis.size()))
    throw std::invalid_argument("tensor_from_vector: size mismatch");
  TensorElement x = TensorElement::zero(m, order);
  for (long i = 0; i < v.rows(); ++i) x.add_term(basis[i].first, basis[i].second, v(i));
  return x;
}

IntMatrix bracket_map_matrix(int m, int n) {
  const auto basis = tensor_basis(m, n);
  const auto targets = lyndon_words(m, n + 2);
  std::map<std::string, long> row_of;
  for (size_t r = 0; r < targets.size(); ++r) row_of[targets[r]] = static_cast<long>(r);

  IntMatrix a = IntMatrix::Zero(static_cast<long>(targets.size()),
                                static_cast<long>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    const auto& [i, w] = basis[j];
    LieElement xi = LieElement::generator(m, i);
    LieElement bw = LieElement::zero(m, n + 1);
    bw.coords[w] = 1;
    LieElement image = lie_bracket(xi, bw);
    for (const auto& [tw, c] : image.coords) a(row_of.at(tw), static_cast<long>(j)) = c;
  }
  return a;
}

LieElement apply_bracket_map(const TensorElement& x) {
  LieElement out = LieElement::zero(x.m, x.order + 2);
  for (const auto& [k, c] : x.coords) {
    LieElement xi = LieElement::generator(x.m, k.first);
    LieElement y = LieElement::zero(x.m, x.order + 1);
    y.coords[k.second] = 1;
    out += c * lie_bracket(xi, y);
  }
  return out;
}

bool in_bracket_kernel(const TensorElement& x) { return apply_bracket_map(x).is_zero(); }

std::vector<TensorElement> dn_basis(int m, int n) {
  const IntMatrix a = bracket_map_matrix(m, n);
  std::vector<TensorElement> out;
  for (const IntVector& v : kernel_basis(a)) out.push_back(tensor_from_vector(m, n, v));
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-Lie presentation
// ---------------------------------------------------------------------------

namespace {

// All root-to-node paths of internal vertices, as left(0)/right(1) turns.
void internal_paths(const RootedTree& t, std::vector<int>& prefix,
                    std::vector<std::vector<int>>& out) {
  if (t.is_leaf()) return;
  out.push_back(prefix);
  prefix.push_back(0);
  internal_paths(t.left(), prefix, out);
  prefix.back() = 1;
  internal_paths(t.right(), prefix, out);
  prefix.pop_back();
}

RootedTree subtree_at(const RootedTree& t, const std::vector<int>& path, size_t from = 0) {
  if (from == path.size()) return t;
  return subtree_at(path[from] == 0 ? t.left() : t.right(), path, from + 1);
}

RootedTree replace_at(const RootedTree& t, const std::vector<int>& path,
                      const RootedTree& sub, size_t from = 0) {
  if (from == path.size()) return sub;
  if (path[from] == 0) return RootedTree(replace_at(t.left(), path, sub, from + 1), t.right());
  return RootedTree(t.left(), replace_at(t.right(), path, sub, from + 1));
}

// Sparse relation columns of the degree-n quasi-Lie presentation, in the
// all_rooted_trees(m, n-1) generator basis, deduplicated. Antisymmetry and
// Jacobi are instantiated at every vertex of every bracket expression; each
// unordered instance is emitted once.
using SparseColumn = std::vector<std::pair<long, int>>;

std::vector<SparseColumn> quasi_lie_relation_columns(int m, int degree) {
  const auto& gens = all_rooted_trees(m, degree - 1);
  std::map<std::string, long> index_of;
  for (size_t g = 0; g < gens.size(); ++g)
    index_of[gens[g].encoding()] = static_cast<long>(g);

  std::set<SparseColumn> seen;
  for (size_t g = 0; g < gens.size(); ++g) {
    const RootedTree& t = gens[g];
    std::vector<std::vector<int>> paths;
    std::vector<int> prefix;
    internal_paths(t, prefix, paths);
    for (const auto& path : paths) {
      RootedTree node = subtree_at(t, path);
      auto normalize = [](std::map<long, int> entries) {
        SparseColumn col(entries.begin(), entries.end());
        return col;
      };
      // Antisymmetry: [X,Y] + [Y,X] = 0 at this vertex.
      {
        RootedTree swapped = replace_at(t, path, RootedTree(node.right(), node.left()));
        std::map<long, int> entries;
        entries[static_cast<long>(g)] += 1;
        entries[index_of.at(swapped.encoding())] += 1;
        seen.insert(normalize(std::move(entries)));
      }
      // Jacobi: [A,[B,C]] + [B,[C,A]] + [C,[A,B]] = 0 when the right child
      // is itself a bracket.
      if (!node.right().is_leaf()) {
        RootedTree a = node.left();
        RootedTree b = node.right().left();
        RootedTree c = node.right().right();
        RootedTree t2 = replace_at(t, path, RootedTree(b, RootedTree(c, a)));
        RootedTree t3 = replace_at(t, path, RootedTree(c, RootedTree(a, b)));
        std::map<long, int> entries;
        entries[static_cast<long>(g)] += 1;
        entries[index_of.at(t2.encoding())] += 1;
        entries[index_of.at(t3.encoding())] += 1;
        seen.insert(normalize(std::move(entries)));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

QuasiLiePresentation build_quasi_lie(int m, int degree) {
  QuasiLiePresentation p;
  p.m = m;
  p.degree = degree;
  p.generator_trees = all_rooted_trees(m, degree - 1);
  const auto cols = quasi_lie_relation_columns(m, degree);
  p.relation_matrix = IntMatrix::Zero(static_cast<long>(p.generator_trees.size()),
                                      static_cast<long>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [row, c] : cols[j]) p.relation_matrix(row, static_cast<long>(j)) = c;
  return p;
}

}  // namespace

const QuasiLiePresentation& quasi_lie_presentation(int m, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  static std::mutex mu;
  static std::map<std::pair<int, int>, QuasiLiePresentation> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache[key] = build_quasi_lie(m, degree);
}

AbelianGroupStructure quasi_lie_structure(int m, int degree) {
  const auto& p = quasi_lie_presentation(m, degree);
  return cokernel_structure(p.relation_matrix);
}

long bsl_kernel_dimension(int m, int ell) {
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  const int degree = ell + 1;
  const auto& gens = all_rooted_trees(m, degree - 1);
  const long ngens = static_cast<long>(gens.size());

  // dim_F2 (Z_2 (x) L'_degree) = gens - rank_2(relations), by right
  // exactness of the mod-2 reduction. The relation columns are sparse and
  // can be large, so pack them directly instead of going through the dense
  // presentation matrix.
  const auto cols = quasi_lie_relation_columns(m, degree);
  const size_t words_per_row = static_cast<size_t>(ngens + 63) / 64;
  std::vector<std::vector<uint64_t>> packed;
  packed.reserve(cols.size());
  for (const auto& col : cols) {
    std::vector<uint64_t> row(words_per_row, 0);
    bool any = false;
    for (const auto& [idx, c] : col) {
      if (c % 2 == 0) continue;
      row[static_cast<size_t>(idx) / 64] ^= uint64_t(1) << (idx % 64);
      any = true;
    }
    if (any) packed.push_back(std::move(row));
  }
  const long quasi_dim = ngens - f2_rank_packed(std::move(packed), ngens);

  // The bracket-renaming map factors through the quotient, so its image is
  // the column space of the tree -> Lyndon-coordinates matrix.
  const auto words = lyndon_words(m, degree);
  std::map<std::string, long> row_of;
  for (size_t r = 0; r < words.size(); ++r) row_of[words[r]] = static_cast<long>(r);
  IntMatrix to_lie = IntMatrix::Zero(static_cast<long>(words.size()), ngens);
  for (long g = 0; g < ngens; ++g) {
    LieElement x = tree_bracket(gens[static_cast<size_t>(g)], m);
    for (const auto& [w, c] : x.coords) to_lie(row_of.at(w), g) = c;
  }
  const long image_dim = f2_rank(to_lie);

  const long kernel = quasi_dim - image_dim;
  if (kernel < 0) throw std::logic_error("bsl_kernel_dimension: negative dimension");
  return kernel;
}

// ---------------------------------------------------------------------------
// Levine quotient of D_{2k}
// ---------------------------------------------------------------------------

namespace {

struct SlQuotientData {
  long dim = 0;            // witt_rank(m, k+1)
  IntMatrix dn;            // ambient x rank basis of the bracket kernel
  SmithForm relations;     // SNF of the tree-image coordinates in that basis
  std::vector<long> bits;  // rows of U carrying the Z/2 coordinates
};

SlQuotientData build_sl_quotient(int m, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = 2 * k;
  SlQuotientData q;
  q.dim = witt_rank(m, k + 1);

  const auto basis = dn_basis(m, n);
  const long ambient = static_cast<long>(tensor_basis(m, n).size());
  q.dn = IntMatrix::Zero(ambient, static_cast<long>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    q.dn.col(static_cast<long>(j)) = tensor_to_vector(basis[j]);

  // Coordinates of the summation-map images of all order-n trees, written
  // in the kernel basis.
  const auto trees = enumerate_trees(m, n);
  LinearSolver solver(q.dn);
  IntMatrix images(static_cast<long>(basis.size()), static_cast<long>(trees.size()));
  for (size_t j = 0; j < trees.size(); ++j) {
    TreeSum ts(m, n);
    ts.add_plain(trees[j], 1);
    auto coords = solver.solve(tensor_to_vector(eta(ts)));
    if (!coords) throw std::logic_error("tree image escaped the bracket kernel");
    images.col(static_cast<long>(j)) = *coords;
  }

  q.relations = smith_normal_form(images);
  AbelianGroupStructure s = cokernel_structure(images);
  AbelianGroupStructure expected;
  expected.free_rank = 0;
  expected.torsion.assign(static_cast<size_t>(q.dim), Int(2));
  if (s != expected)
    throw std::logic_error("Levine quotient mismatch: got " + to_string(s) +
                           ", expected " + to_string(expected));
  for (long i = 0; i < q.relations.rank; ++i)
    if (q.relations.s(i, i) == 2) q.bits.push_back(i);
  return q;
}

const SlQuotientData& sl_quotient_data(int m, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, SlQuotientData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache[key] = build_sl_quotient(m, k);
}

}  // namespace

std::vector<uint8_t> sl_quotient(const TensorElement& x, int m, int k) {
  if (x.m != m || x.order != 2 * k)
    throw std::invalid_argument("sl_quotient: element has the wrong grading");
  if (!in_bracket_kernel(x))
    throw std::invalid_argument("sl_quotient: element is not in the bracket-map kernel");
  const SlQuotientData& q = sl_quotient_data(m, k);
  auto coords = solve_exact(q.dn, tensor_to_vector(x));
  if (!coords) throw std::logic_error("kernel element without integral coordinates");
  IntVector z = q.relations.u * (*coords);
  std::vector<uint8_t> out;
  out.reserve(q.bits.size());
  for (long row : q.bits) out.push_back(static_cast<uint8_t>(is_even(z(row)) ? 0 : 1));
  return out;
}

long sl_quotient_dimension(int m, int k) { return sl_quotient_data(m, k).dim; }

}  // namespace whitcalc
