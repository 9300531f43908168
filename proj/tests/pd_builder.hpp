#pragma once

// Test-side diagram constructors: braid closures and crossing-free band
// sums at the PD level. Kept out of the library on purpose; production
// input is the JSON diagram format.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "whitcalc/links.hpp"

namespace whitcalc::testing {

struct ProtoDiagram {
  std::vector<std::array<long, 4>> pd;
  std::map<long, long> succ;     // provisional arc -> next arc
  std::vector<long> loose_arcs;  // circles meeting no crossing
};

// Renumbers provisional arcs so every component is numbered consecutively
// along its orientation, then validates under the library convention.
inline LinkDiagram realize(const ProtoDiagram& proto, const std::string& name) {
  std::map<long, long> relabel;
  std::map<long, int> comp_of;
  int comp = 0;
  long next_label = 1;
  auto trace = [&](long start) {
    ++comp;
    long arc = start;
    do {
      relabel[arc] = next_label;
      comp_of[next_label] = comp;
      ++next_label;
      arc = proto.succ.at(arc);
    } while (arc != start);
  };
  for (const auto& [arc, next] : proto.succ)
    if (!relabel.count(arc)) trace(arc);
  for (long arc : proto.loose_arcs) {
    ++comp;
    relabel[arc] = next_label;
    comp_of[next_label] = comp;
    ++next_label;
  }

  LinkDiagram d;
  d.m = comp;
  d.name = name;
  d.component_of = comp_of;
  for (const auto& x : proto.pd)
    d.pd.push_back({relabel.at(x[0]), relabel.at(x[1]), relabel.at(x[2]), relabel.at(x[3])});
  return finalize_diagram(std::move(d));
}

// Closure of a braid on `strands` strands; the word lists generators as
// +-g for the crossing of positions g, g+1 (positive: the strand at g
// passes over). Components come out zero framed.
inline LinkDiagram braid_closure(int strands, const std::vector<int>& word,
                                 const std::string& name = "") {
  if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
  ProtoDiagram proto;
  std::map<long, long> parent;
  std::function<long(long)> find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](long a, long b) { parent[find(a)] = find(b); };

  long next_id = 1;
  auto fresh = [&] {
    parent[next_id] = next_id;
    return next_id++;
  };

  std::vector<long> at(static_cast<size_t>(strands));
  std::vector<long> initial(static_cast<size_t>(strands));
  for (int p = 0; p < strands; ++p) initial[static_cast<size_t>(p)] = at[static_cast<size_t>(p)] = fresh();

  struct Event {
    long under_in, over_in, under_out, over_out;
    bool left_over;
  };
  std::vector<Event> events;

  for (int letter : word) {
    int g = std::abs(letter);
    if (g < 1 || g >= strands) throw std::invalid_argument("braid letter out of range");
    long left = at[static_cast<size_t>(g - 1)];
    long right = at[static_cast<size_t>(g)];
    long left_out = fresh();   // continuation of the strand entering at g
    long right_out = fresh();  // continuation of the strand entering at g+1
    if (letter > 0) {
      events.push_back({right, left, right_out, left_out, true});
    } else {
      events.push_back({left, right, left_out, right_out, false});
    }
    proto.succ[left] = left_out;
    proto.succ[right] = right_out;
    at[static_cast<size_t>(g - 1)] = right_out;
    at[static_cast<size_t>(g)] = left_out;
  }

  // Closure: the top of each position meets the bottom of the same position.
  for (int p = 0; p < strands; ++p)
    unite(at[static_cast<size_t>(p)], initial[static_cast<size_t>(p)]);

  std::map<long, long> succ;
  for (const auto& [a, b] : proto.succ) succ[find(a)] = find(b);
  proto.succ = std::move(succ);
  for (const auto& e : events) {
    // counterclockwise from the incoming under arc
    if (e.left_over)
      proto.pd.push_back({find(e.under_in), find(e.over_out), find(e.under_out), find(e.over_in)});
    else
      proto.pd.push_back({find(e.under_in), find(e.over_in), find(e.under_out), find(e.over_out)});
  }
  for (int p = 0; p < strands; ++p) {
    long rep = find(initial[static_cast<size_t>(p)]);
    if (!proto.succ.count(rep)) proto.loose_arcs.push_back(rep);
  }
  std::sort(proto.loose_arcs.begin(), proto.loose_arcs.end());
  proto.loose_arcs.erase(std::unique(proto.loose_arcs.begin(), proto.loose_arcs.end()),
                         proto.loose_arcs.end());
  return realize(proto, name);
}

// Band sum of the closures of two braids with identity permutation: the
// closure of the concatenated word is the componentwise band sum of the two
// separate closures (composition of string links), realized at the PD level
// with the bands running along the closure arcs.
inline LinkDiagram braid_closure_band_sum(int strands, const std::vector<int>& w1,
                                          const std::vector<int>& w2,
                                          const std::string& name = "") {
  std::vector<int> joined = w1;
  joined.insert(joined.end(), w2.begin(), w2.end());
  return braid_closure(strands, joined, name);
}

}  // namespace whitcalc::testing
