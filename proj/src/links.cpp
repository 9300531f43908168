#include "whitcalc/links.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace whitcalc {

namespace {

long find_class(std::map<long, long>& parent, long x) {
  long root = x;
  while (parent[root] != root) root = parent[root];
  while (parent[x] != root) {
    long up = parent[x];
    parent[x] = root;
    x = up;
  }
  return root;
}

void union_class(std::map<long, long>& parent, long a, long b) {
  long ra = find_class(parent, a);
  long rb = find_class(parent, b);
  if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
}

}  // namespace

LinkDiagram finalize_diagram(LinkDiagram d) {
  if (d.m < 1 || d.m > 9) throw std::invalid_argument("component count must be in 1..9");
  if (d.framings.empty()) d.framings.assign(static_cast<size_t>(d.m), 0);
  if (static_cast<int>(d.framings.size()) != d.m)
    throw std::invalid_argument("framings list must have one entry per component");

  d.component_arcs.assign(static_cast<size_t>(d.m), {});
  for (const auto& [arc, comp] : d.component_of) {
    if (arc <= 0) throw std::invalid_argument("arc labels must be positive");
    if (comp < 1 || comp > d.m)
      throw std::invalid_argument("unknown component index for arc " + std::to_string(arc));
    d.component_arcs[static_cast<size_t>(comp - 1)].push_back(arc);
  }
  for (int c = 0; c < d.m; ++c) {
    auto& arcs = d.component_arcs[static_cast<size_t>(c)];
    if (arcs.empty())
      throw std::invalid_argument("component " + std::to_string(c + 1) + " has no arcs");
    std::sort(arcs.begin(), arcs.end());
    for (size_t i = 0; i < arcs.size(); ++i)
      d.next_arc[arcs[i]] = arcs[(i + 1) % arcs.size()];
  }

  // Every arc label used by a crossing appears exactly twice in the code;
  // an arc absent from the code must be the sole arc of its component.
  std::map<long, int> occurrences;
  for (const auto& x : d.pd) {
    for (long arc : x) {
      if (!d.component_of.count(arc))
        throw std::invalid_argument("crossing references arc " + std::to_string(arc) +
                                    " missing from the component map");
      ++occurrences[arc];
    }
  }
  for (const auto& [arc, comp] : d.component_of) {
    int n = occurrences.count(arc) ? occurrences[arc] : 0;
    if (n == 0) {
      if (d.component_arcs[static_cast<size_t>(comp - 1)].size() != 1)
        throw std::invalid_argument("arc " + std::to_string(arc) +
                                    " meets no crossing but shares its component");
    } else if (n != 2) {
      throw std::invalid_argument("arc " + std::to_string(arc) + " appears " +
                                  std::to_string(n) + " times; expected 2");
    }
  }

  // Under-strand transitions are forced by the arc numbering.
  auto comp_of = [&](long arc) { return d.component_of.at(arc); };
  for (const auto& x : d.pd) {
    if (comp_of(x[0]) != comp_of(x[2]) || d.next_arc.at(x[0]) != x[2])
      throw std::invalid_argument("inconsistent orientation: under-strand " +
                                  std::to_string(x[0]) + " -> " + std::to_string(x[2]));
  }

  // Over-strand directions: propagate from the fact that every arc ends
  // exactly once (under slots already fix ends and begins).
  std::map<long, int> ends, begins;
  for (const auto& x : d.pd) {
    ++ends[x[0]];
    ++begins[x[2]];
  }
  d.over_in_arc.assign(d.pd.size(), 0);
  d.crossing_sign.assign(d.pd.size(), 0);
  std::vector<size_t> pending;
  auto fix_over = [&](size_t idx, long in, long out, int sign) {
    d.over_in_arc[idx] = in;
    d.crossing_sign[idx] = sign;
    ++ends[in];
    ++begins[out];
  };
  for (size_t idx = 0; idx < d.pd.size(); ++idx) {
    const auto& x = d.pd[idx];
    long b = x[1], dd = x[3];
    bool db = comp_of(dd) == comp_of(b) && d.next_arc.at(dd) == b && dd != b;
    bool bd = comp_of(b) == comp_of(dd) && d.next_arc.at(b) == dd && b != dd;
    if (db && bd) pending.push_back(idx);
    else if (db) fix_over(idx, dd, b, +1);
    else if (bd) fix_over(idx, b, dd, -1);
    else
      throw std::invalid_argument("inconsistent orientation: over strand at crossing " +
                                  std::to_string(idx));
  }
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const auto& x = d.pd[*it];
      long b = x[1], dd = x[3];
      bool d_free = ends[dd] == 0 && begins[b] == 0;
      bool b_free = ends[b] == 0 && begins[dd] == 0;
      if (!d_free && !b_free)
        throw std::invalid_argument("inconsistent orientation cycle at crossing " +
                                    std::to_string(*it));
      if (d_free && b_free) {
        ++it;
        continue;
      }
      if (d_free) fix_over(*it, dd, b, +1);
      else fix_over(*it, b, dd, -1);
      it = pending.erase(it);
      progress = true;
    }
  }
  if (!pending.empty())
    throw std::invalid_argument("ambiguous over-strand orientation: a component with "
                                "several arcs never passes under");
  for (const auto& [arc, n] : occurrences) {
    if (n == 2 && (ends[arc] != 1 || begins[arc] != 1))
      throw std::invalid_argument("inconsistent orientation cycle at arc " + std::to_string(arc));
  }

  // Meridian classes: the over strand is unbroken, so the two over arcs of
  // every crossing share a class.
  std::map<long, long> parent;
  for (const auto& [arc, comp] : d.component_of) parent[arc] = arc;
  for (const auto& x : d.pd) union_class(parent, x[1], x[3]);
  for (const auto& [arc, comp] : d.component_of) d.arc_class[arc] = find_class(parent, arc);

  d.writhe.assign(static_cast<size_t>(d.m), 0);
  for (size_t idx = 0; idx < d.pd.size(); ++idx) {
    int cu = comp_of(d.pd[idx][0]);
    int co = comp_of(d.pd[idx][1]);
    if (cu == co) d.writhe[static_cast<size_t>(cu - 1)] += d.crossing_sign[idx];
  }

  d.end_of_arc.clear();
  for (size_t idx = 0; idx < d.pd.size(); ++idx) {
    d.end_of_arc[d.pd[idx][0]] = {idx, true};
    d.end_of_arc[d.over_in_arc[idx]] = {idx, false};
  }
  return d;
}

LinkDiagram parse_pd(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("diagram JSON: ") + e.what());
  }
  LinkDiagram d;
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw std::invalid_argument("diagram JSON: missing integer field \"m\"");
  d.m = j["m"].get<int>();
  if (j.contains("pd")) {
    for (const auto& t : j["pd"]) {
      if (!t.is_array() || t.size() != 4)
        throw std::invalid_argument("diagram JSON: crossings must be 4-tuples");
      d.pd.push_back({t[0].get<long>(), t[1].get<long>(), t[2].get<long>(), t[3].get<long>()});
    }
  }
  if (!j.contains("components") || !j["components"].is_object())
    throw std::invalid_argument("diagram JSON: missing object field \"components\"");
  for (const auto& [key, val] : j["components"].items())
    d.component_of[std::stol(key)] = val.get<int>();
  if (j.contains("framings"))
    for (const auto& f : j["framings"]) d.framings.push_back(f.get<long>());
  if (j.contains("name")) d.name = j["name"].get<std::string>();
  return finalize_diagram(std::move(d));
}

std::vector<WirtingerRelation> wirtinger(const LinkDiagram& d) {
  std::vector<WirtingerRelation> rels;
  rels.reserve(d.pd.size());
  for (size_t idx = 0; idx < d.pd.size(); ++idx) {
    const auto& x = d.pd[idx];
    rels.push_back({x[2], d.over_in_arc[idx], x[0], -d.crossing_sign[idx]});
  }
  return rels;
}

namespace {

std::vector<long> default_bases(const LinkDiagram& d) {
  std::vector<long> bases;
  for (int c = 1; c <= d.m; ++c) bases.push_back(d.base_arc(c));
  return bases;
}

}  // namespace

std::map<long, GroupWord> nilpotent_arc_words(const LinkDiagram& d, int q,
                                              const std::vector<long>& base_arcs) {
  if (q < 1) throw std::invalid_argument("nilpotency class must be positive");
  std::vector<long> bases = base_arcs.empty() ? default_bases(d) : base_arcs;
  if (static_cast<int>(bases.size()) != d.m)
    throw std::invalid_argument("need one base arc per component");
  std::set<long> base_classes;
  for (int c = 1; c <= d.m; ++c) {
    long arc = bases[static_cast<size_t>(c - 1)];
    if (!d.component_of.count(arc) || d.component_of.at(arc) != c)
      throw std::invalid_argument("base arc " + std::to_string(arc) +
                                  " is not on component " + std::to_string(c));
    base_classes.insert(d.arc_class.at(arc));
  }

  // Defining conjugation of every non-base meridian class, read off the
  // crossing where the class begins (its under-out slot).
  struct Defining {
    long over_class;
    long in_class;
    int sign;
  };
  std::map<long, Defining> defining;
  for (size_t idx = 0; idx < d.pd.size(); ++idx) {
    const auto& x = d.pd[idx];
    long cls = d.arc_class.at(x[2]);
    if (base_classes.count(cls)) continue;
    defining[cls] = {d.arc_class.at(d.over_in_arc[idx]), d.arc_class.at(x[0]),
                     -d.crossing_sign[idx]};
  }

  std::map<long, GroupWord> words;
  for (const auto& [arc, comp] : d.component_of) {
    long cls = d.arc_class.at(arc);
    if (!words.count(cls)) words.emplace(cls, GroupWord::generator(d.m, comp));
  }

  // Update order: walk each component from its base arc, so every class is
  // rewritten after the class feeding it. One sweep then pushes the
  // agreement one step up the lower central series; starting from the
  // level-1 assignment, q-1 sweeps reach level q.
  std::vector<long> order;
  for (int c = 1; c <= d.m; ++c) {
    const long start = bases[static_cast<size_t>(c - 1)];
    std::set<long> seen;
    long arc = start;
    do {
      long cls = d.arc_class.at(arc);
      if (!base_classes.count(cls) && seen.insert(cls).second) order.push_back(cls);
      arc = d.next_arc.at(arc);
    } while (arc != start);
  }

  for (int round = 1; round < q; ++round) {
    for (long cls : order) {
      const Defining& def = defining.at(cls);
      const GroupWord conj = words.at(def.over_class).pow(def.sign);
      words.at(cls) = conj * words.at(def.in_class) * conj.inverse();
    }
  }

  std::map<long, GroupWord> out;
  for (const auto& [arc, comp] : d.component_of) out.emplace(arc, words.at(d.arc_class.at(arc)));
  return out;
}

std::vector<GroupWord> longitudes(const LinkDiagram& d, int q,
                                  const std::vector<long>& base_arcs) {
  if (q < 2) throw std::invalid_argument("longitudes need nilpotency class >= 2");
  std::vector<long> bases = base_arcs.empty() ? default_bases(d) : base_arcs;
  const auto words = nilpotent_arc_words(d, q, bases);

  std::vector<GroupWord> out;
  for (int c = 1; c <= d.m; ++c) {
    GroupWord lambda(d.m);
    const long start = bases[static_cast<size_t>(c - 1)];
    long arc = start;
    do {
      auto it = d.end_of_arc.find(arc);
      if (it != d.end_of_arc.end() && it->second.second) {
        const size_t idx = it->second.first;
        lambda = lambda * words.at(d.over_in_arc[idx]).pow(d.crossing_sign[idx]);
      }
      arc = d.next_arc.at(arc);
    } while (arc != start);
    const long correction =
        d.framings[static_cast<size_t>(c - 1)] - d.writhe[static_cast<size_t>(c - 1)];
    lambda = lambda * GroupWord::generator(d.m, c).pow(correction);
    out.push_back(lambda);
  }
  return out;
}

MilnorResult milnor_mu(const LinkDiagram& d, int n, const std::vector<long>& base_arcs) {
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  MilnorResult res;
  res.order = n;
  res.total = TensorElement::zero(d.m, n);

  const auto longs = longitudes(d, n + 2, base_arcs);
  std::vector<MagnusPoly> expansions;
  expansions.reserve(longs.size());
  for (const auto& l : longs) expansions.push_back(magnus_expand(l, n + 1));

  int first_bad = n + 1;
  for (const auto& e : expansions) {
    for (const auto& [mono, c] : e.coords) {
      const int deg = static_cast<int>(mono.size());
      if (deg >= 1 && deg <= n && c != 0) first_bad = std::min(first_bad, deg);
    }
  }
  if (first_bad <= n) {
    res.lower_orders_vanish = false;
    res.first_nonvanishing_order = first_bad - 1;
    return res;
  }

  res.lower_orders_vanish = true;
  for (int i = 1; i <= d.m; ++i) {
    const auto part = expansions[static_cast<size_t>(i - 1)].homogeneous_part(n + 1);
    for (const auto& [mono, c] : part) res.coefficients[{mono, i}] = c;
    res.total.add_tensor(i, lyndon_project(d.m, n + 1, part), 1);
  }
  if (!in_bracket_kernel(res.total))
    throw std::logic_error("computed Milnor invariant escaped the bracket-map kernel");
  return res;
}

SatoLevineResult sato_levine(const LinkDiagram& d, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  SatoLevineResult out;
  MilnorResult mr = milnor_mu(d, 2 * k);
  if (!mr.lower_orders_vanish) {
    out.defined = false;
    out.first_nonvanishing_order = mr.first_nonvanishing_order;
    return out;
  }
  out.defined = true;
  out.value = sl_quotient(mr.total, d.m, k);
  return out;
}

}  // namespace whitcalc
