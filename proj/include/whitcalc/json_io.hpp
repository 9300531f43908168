#pragma once

#include <string>

#include "whitcalc/freelie.hpp"
#include "whitcalc/links.hpp"
#include "whitcalc/tables.hpp"
#include "whitcalc/trees.hpp"

namespace whitcalc {

// JSON forms used by the CLI and the tree-sum file format. Coefficients are
// serialized as decimal strings so exact integers survive any JSON reader.

std::string lie_to_json(const LieElement& x);
LieElement lie_from_json(const std::string& text);

std::string tensor_to_json(const TensorElement& x);
TensorElement tensor_from_json(const std::string& text);

// {"m": 2, "order": 1, "terms": [{"tree": "<(1,2),3>", "coeff": "1"}],
//  "twisted": [{"tree": "twist:(1,2)", "coeff": "-1"}]}
std::string treesum_to_json(const TreeSum& ts);
TreeSum treesum_from_json(const std::string& text);

std::string milnor_result_to_json(const MilnorResult& r);

std::string sato_levine_to_json(const SatoLevineResult& r);

std::string reports_to_json(const std::vector<GradedQuotientReport>& rows);

std::string verify_report_to_json(const VerifyReport& rep);

std::string read_text_file(const std::string& path);

}  // namespace whitcalc
