#include "whitcalc/words.hpp"

#include <sstream>
#include <stdexcept>

namespace whitcalc {

GroupWord::GroupWord(int m, std::vector<int> letters) : m_(m) {
  if (m < 1 || m > 9) throw std::invalid_argument("generator count must be in 1..9");
  letters_.reserve(letters.size());
  for (int x : letters) {
    if (x == 0 || std::abs(x) > m) throw std::invalid_argument("letter out of range");
    if (!letters_.empty() && letters_.back() == -x) letters_.pop_back();
    else letters_.push_back(x);
  }
}

GroupWord GroupWord::generator(int m, int i) {
  if (i < 1 || i > m) throw std::invalid_argument("generator index out of range");
  return GroupWord(m, {i});
}

GroupWord GroupWord::inverse() const {
  std::vector<int> rev(letters_.rbegin(), letters_.rend());
  for (int& x : rev) x = -x;
  GroupWord w(m_);
  w.letters_ = std::move(rev);  // already reduced
  return w;
}

GroupWord GroupWord::pow(long e) const {
  GroupWord base = (e < 0) ? inverse() : *this;
  long reps = (e < 0) ? -e : e;
  GroupWord acc(m_);
  for (long i = 0; i < reps; ++i) acc = acc * base;
  return acc;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  if (a.m_ != b.m_) throw std::invalid_argument("word product: mismatched generator counts");
  GroupWord out(a.m_);
  out.letters_ = a.letters_;
  for (int x : b.letters_) {
    if (!out.letters_.empty() && out.letters_.back() == -x) out.letters_.pop_back();
    else out.letters_.push_back(x);
  }
  return out;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
  return a * b * a.inverse() * b.inverse();
}

namespace {

GroupWord parse_word_impl(int m, const std::string& text, size_t& pos) {
  GroupWord out(m);
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    char c = text[pos];
    if (c == ',' || c == ']') break;
    if (c == '[') {
      ++pos;
      GroupWord a = parse_word_impl(m, text, pos);
      if (pos >= text.size() || text[pos] != ',')
        throw std::invalid_argument("word syntax: expected ',' in commutator");
      ++pos;
      GroupWord b = parse_word_impl(m, text, pos);
      if (pos >= text.size() || text[pos] != ']')
        throw std::invalid_argument("word syntax: expected ']'");
      ++pos;
      out = out * commutator(a, b);
    } else if (c == 'x' || c == 'X') {
      ++pos;
      if (pos >= text.size() || text[pos] < '1' || text[pos] > '9')
        throw std::invalid_argument("word syntax: expected generator index");
      int i = text[pos] - '0';
      ++pos;
      if (i > m) throw std::invalid_argument("word syntax: generator index out of range");
      out = out * GroupWord(m, {c == 'x' ? i : -i});
    } else {
      throw std::invalid_argument(std::string("word syntax: unexpected character '") + c + "'");
    }
  }
  return out;
}

}  // namespace

GroupWord parse_word(int m, const std::string& text) {
  size_t pos = 0;
  GroupWord w = parse_word_impl(m, text, pos);
  if (pos != text.size()) throw std::invalid_argument("word syntax: trailing characters");
  return w;
}

std::string print_word(const GroupWord& w) {
  if (w.is_identity()) return "1";
  std::ostringstream out;
  bool first = true;
  for (int x : w.letters()) {
    if (!first) out << " ";
    out << (x > 0 ? 'x' : 'X') << std::abs(x);
    first = false;
  }
  return out.str();
}

GroupWord word_from_tree(const RootedTree& t, int m) {
  if (t.is_leaf()) return GroupWord::generator(m, t.label());
  return commutator(word_from_tree(t.left(), m), word_from_tree(t.right(), m));
}

Int MagnusPoly::coefficient(const std::string& monomial) const {
  auto it = coords.find(monomial);
  return it == coords.end() ? Int(0) : it->second;
}

std::map<std::string, Int> MagnusPoly::homogeneous_part(int degree) const {
  std::map<std::string, Int> out;
  for (const auto& [w, c] : coords)
    if (static_cast<int>(w.size()) == degree) out.emplace(w, c);
  return out;
}

bool MagnusPoly::vanishes_in_degrees(int lo, int hi) const {
  for (const auto& [w, c] : coords) {
    int d = static_cast<int>(w.size());
    if (d >= lo && d <= hi && c != 0) return false;
  }
  return true;
}

MagnusPoly magnus_expand(const GroupWord& w, int truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation degree must be positive");
  MagnusPoly p{w.num_generators(), truncation, {{"", Int(1)}}};
  for (int x : w.letters()) {
    const char g = static_cast<char>('0' + std::abs(x));
    std::map<std::string, Int> next;
    for (const auto& [mono, c] : p.coords) {
      if (x > 0) {
        // multiply by 1 + X_g
        next[mono] += c;
        if (static_cast<int>(mono.size()) < truncation) next[mono + g] += c;
      } else {
        // multiply by 1 - X_g + X_g^2 - ...
        Int sign = 1;
        std::string ext = mono;
        for (;;) {
          next[ext] += sign * c;
          if (static_cast<int>(ext.size()) >= truncation) break;
          ext += g;
          sign = -sign;
        }
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    p.coords = std::move(next);
  }
  return p;
}

MagnusPoly magnus_mul(const MagnusPoly& a, const MagnusPoly& b) {
  if (a.m != b.m) throw std::invalid_argument("magnus product: mismatched generator counts");
  const int q = std::min(a.truncation, b.truncation);
  MagnusPoly out{a.m, q, {}};
  for (const auto& [wa, ca] : a.coords) {
    if (static_cast<int>(wa.size()) > q) continue;
    for (const auto& [wb, cb] : b.coords) {
      if (static_cast<int>(wa.size() + wb.size()) > q) continue;
      Int& slot = out.coords[wa + wb];
      slot += ca * cb;
      if (slot == 0) out.coords.erase(wa + wb);
    }
  }
  return out;
}

LieElement lie_class(const GroupWord& w, int q) {
  if (q < 1) throw std::invalid_argument("degree must be positive");
  MagnusPoly e = magnus_expand(w, q);
  for (int d = 1; d < q; ++d) {
    for (const auto& [mono, c] : e.coords) {
      if (static_cast<int>(mono.size()) == d && c != 0)
        throw std::domain_error("word is not in the required lower central subgroup: "
                                "Magnus term of degree " + std::to_string(d));
    }
  }
  return lyndon_project(w.num_generators(), q, e.homogeneous_part(q));
}

std::vector<GroupWord> assemble_longitudes(const TreeSum& ts) {
  const int m = ts.num_generators();
  std::vector<GroupWord> longs(static_cast<size_t>(m), GroupWord(m));

  auto fold = [&](const std::vector<std::pair<int, RootedTree>>& rerootings, const Int& coeff) {
    if (!coeff.fits_slong_p())
      throw std::invalid_argument("tree sum coefficient too large for word assembly");
    const long e = coeff.get_si();
    for (const auto& [label, rt] : rerootings) {
      GroupWord w = word_from_tree(rt, m);
      longs[static_cast<size_t>(label - 1)] =
          longs[static_cast<size_t>(label - 1)] * w.pow(e);
    }
  };

  for (const auto& [t, c] : ts.plain_terms()) fold(univalent_rerootings(t), c);
  for (const auto& [t, c] : ts.twisted_terms()) fold(doubled_rerootings(t, true), c);
  return longs;
}

}  // namespace whitcalc
