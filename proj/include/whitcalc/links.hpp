#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "whitcalc/freelie.hpp"
#include "whitcalc/words.hpp"

namespace whitcalc {

// Oriented, ordered link diagram given by a planar-diagram code. Each
// crossing tuple (a, b, c, d) lists the four arc ends counterclockwise
// starting from the incoming under-arc a; the under-strand continues a -> c.
// Arcs are numbered consecutively along each component's orientation
// (cyclically), which pins the over-strand direction: the crossing is
// positive when the over-strand runs d -> b and negative when b -> d.
struct LinkDiagram {
  int m = 1;
  std::vector<std::array<long, 4>> pd;
  std::map<long, int> component_of;  // arc -> component (1-based)
  std::vector<long> framings;        // one per component; default zero
  std::string name;

  // Derived at validation.
  std::vector<std::vector<long>> component_arcs;  // sorted, per component
  std::map<long, long> next_arc;
  std::vector<int> crossing_sign;     // per crossing
  std::vector<long> over_in_arc;      // per crossing: incoming over arc
  std::map<long, long> arc_class;     // arc -> representative meridian class
  std::vector<long> writhe;           // per component
  // Where each arc ends: crossing index, and whether it ends passing under.
  std::map<long, std::pair<size_t, bool>> end_of_arc;

  long base_arc(int comp) const { return component_arcs[static_cast<size_t>(comp - 1)].front(); }
};

// Validates a raw diagram and fills the derived fields. Throws
// std::invalid_argument with a description of the defect.
LinkDiagram finalize_diagram(LinkDiagram d);

// Parses the JSON input format:
//   {"m": 2, "pd": [[1,3,2,4],[3,1,4,2]], "components": {"1":1,...},
//    "framings": [0,0], "name": "..."}
LinkDiagram parse_pd(const std::string& json_text);

struct WirtingerRelation {
  long out_arc;   // outgoing under arc
  long over_arc;  // incoming over arc (conjugator)
  long in_arc;    // incoming under arc
  int sign;       // out = over^sign * in * over^-sign; the negative of the
                  // crossing sign under this library's meridian conventions
};

// One conjugation relation per crossing, on arc meridian generators.
std::vector<WirtingerRelation> wirtinger(const LinkDiagram& d);

// Meridian word of every arc in the chosen base meridians, correct modulo
// the (q+1)-st lower central subgroup: level 1 assigns each arc its
// component's generator, and each further level substitutes the previous
// words into the crossing conjugations. base_arcs picks the meridian per
// component (defaults to the lowest-numbered arc).
std::map<long, GroupWord> nilpotent_arc_words(const LinkDiagram& d, int q,
                                              const std::vector<long>& base_arcs = {});

// Longitude words at nilpotency class q (q >= 2): the ordered product of
// over-arc words met while traversing each component, times
// x_i^(framing - writhe) so the pushoff realizes the requested framing.
std::vector<GroupWord> longitudes(const LinkDiagram& d, int q,
                                  const std::vector<long>& base_arcs = {});

struct MilnorResult {
  int order = 0;
  bool lower_orders_vanish = false;
  int first_nonvanishing_order = -1;  // set when lower_orders_vanish is false
  TensorElement total;                // defined only when lower orders vanish
  // mu-bar numbers: (index sequence i_1..i_{n+1}, longitude index i) -> value.
  std::map<std::pair<std::string, int>, Int> coefficients;
};

// Total Milnor invariant of order n. Refuses (lower_orders_vanish = false,
// no total) when some lower-order invariant is nonzero.
MilnorResult milnor_mu(const LinkDiagram& d, int n,
                       const std::vector<long>& base_arcs = {});

struct SatoLevineResult {
  bool defined = false;
  int first_nonvanishing_order = -1;  // set on refusal
  std::vector<uint8_t> value;         // length witt_rank(m, k+1)
};

// Higher-order Sato-Levine invariant: the Levine-quotient image of the
// order-2k Milnor invariant, defined when all lower invariants vanish.
SatoLevineResult sato_levine(const LinkDiagram& d, int k);

}  // namespace whitcalc
