#include "whitcalc/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace whitcalc {

using nlohmann::json;

std::string lie_to_json(const LieElement& x) {
  json terms = json::array();
  for (const auto& [w, c] : x.coords) terms.push_back({{"word", w}, {"coeff", c.get_str()}});
  json j{{"m", x.m}, {"degree", x.degree}, {"terms", terms}};
  return j.dump();
}

LieElement lie_from_json(const std::string& text) {
  json j = json::parse(text);
  LieElement x = LieElement::zero(j.at("m").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms"))
    x.add_term(t.at("word").get<std::string>(),
               int_from_string(t.at("coeff").get<std::string>()));
  return x;
}

std::string tensor_to_json(const TensorElement& x) {
  json terms = json::array();
  for (const auto& [k, c] : x.coords)
    terms.push_back({{"word", std::to_string(k.first) + "|" + k.second},
                     {"coeff", c.get_str()}});
  json j{{"m", x.m}, {"degree", x.order}, {"terms", terms}};
  return j.dump();
}

TensorElement tensor_from_json(const std::string& text) {
  json j = json::parse(text);
  TensorElement x = TensorElement::zero(j.at("m").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    std::string w = t.at("word").get<std::string>();
    auto bar = w.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("tensor term word must look like \"i|word\"");
    x.add_term(std::stoi(w.substr(0, bar)), w.substr(bar + 1),
               int_from_string(t.at("coeff").get<std::string>()));
  }
  return x;
}

std::string treesum_to_json(const TreeSum& ts) {
  json terms = json::array();
  for (const auto& [t, c] : ts.plain_terms())
    terms.push_back({{"tree", t.encoding()}, {"coeff", c.get_str()}});
  json twisted = json::array();
  for (const auto& [t, c] : ts.twisted_terms())
    twisted.push_back({{"tree", t.encoding()}, {"coeff", c.get_str()}});
  json j{{"m", ts.num_generators()}, {"order", ts.order()}, {"terms", terms},
         {"twisted", twisted}};
  return j.dump();
}

TreeSum treesum_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    TreeSum ts(j.at("m").get<int>(), j.at("order").get<int>());
    if (j.contains("terms")) {
      for (const auto& t : j.at("terms"))
        ts.add_plain(UnrootedTree::parse(t.at("tree").get<std::string>()),
                     int_from_string(t.at("coeff").get<std::string>()));
    }
    if (j.contains("twisted")) {
      for (const auto& t : j.at("twisted"))
        ts.add_twisted(TwistedTree::parse(t.at("tree").get<std::string>()),
                       int_from_string(t.at("coeff").get<std::string>()));
    }
    return ts;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("tree-sum JSON: ") + e.what());
  }
}

std::string milnor_result_to_json(const MilnorResult& r) {
  json j{{"order", r.order}, {"lower_orders_vanish", r.lower_orders_vanish}};
  if (!r.lower_orders_vanish) {
    j["first_nonvanishing_order"] = r.first_nonvanishing_order;
    return j.dump();
  }
  j["total"] = json::parse(tensor_to_json(r.total));
  json coeffs = json::array();
  for (const auto& [key, c] : r.coefficients)
    coeffs.push_back({{"sequence", key.first}, {"i", key.second}, {"value", c.get_str()}});
  j["coefficients"] = coeffs;
  return j.dump();
}

std::string sato_levine_to_json(const SatoLevineResult& r) {
  json j{{"defined", r.defined}};
  if (!r.defined) {
    j["first_nonvanishing_order"] = r.first_nonvanishing_order;
  } else {
    json v = json::array();
    for (uint8_t b : r.value) v.push_back(static_cast<int>(b));
    j["value"] = v;
  }
  return j.dump();
}

std::string reports_to_json(const std::vector<GradedQuotientReport>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json torsion = json::array();
    for (const auto& d : r.structure.torsion) torsion.push_back(d.get_str());
    arr.push_back({{"m", r.m},
                   {"n", r.n},
                   {"flavor", r.flavor == TowerFlavor::twisted ? "twisted" : "framed"},
                   {"free_rank", r.structure.free_rank},
                   {"torsion", torsion},
                   {"arf_dimension", r.annihilated_arf_dimension},
                   {"invariants", r.invariant_basis_description}});
  }
  return arr.dump();
}

std::string verify_report_to_json(const VerifyReport& rep) {
  json arr = json::array();
  for (const auto& e : rep.entries)
    arr.push_back({{"m", e.m}, {"n", e.n}, {"check", e.check}, {"pass", e.pass},
                   {"detail", e.detail}});
  json j{{"all_pass", rep.all_pass}, {"entries", arr}};
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace whitcalc
