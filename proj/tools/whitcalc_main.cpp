#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "whitcalc/json_io.hpp"
#include "whitcalc/links.hpp"
#include "whitcalc/tables.hpp"
#include "whitcalc/trees.hpp"
#include "whitcalc/words.hpp"

using namespace whitcalc;

namespace {

int run_ranks(int m, int n, const std::string& flavor, const std::string& format) {
  std::vector<GradedQuotientReport> rows;
  for (int mi = 1; mi <= m; ++mi) {
    for (int ni = 0; ni <= n; ++ni) {
      if (flavor == "twisted" || flavor == "both") rows.push_back(twisted_quotient(mi, ni));
      if (flavor == "framed" || flavor == "both") rows.push_back(framed_quotient(mi, ni));
    }
  }
  if (format == "json") std::cout << reports_to_json(rows) << "\n";
  else if (format == "csv") std::cout << render_reports_csv(rows);
  else std::cout << render_reports_text(rows);
  return 0;
}

int run_milnor(const std::string& path, int order, const std::vector<long>& framings) {
  LinkDiagram d = parse_pd(read_text_file(path));
  if (!framings.empty()) {
    d.framings = framings;
    d = finalize_diagram(std::move(d));
  }
  std::cout << milnor_result_to_json(milnor_mu(d, order)) << "\n";
  return 0;
}

int run_sato_levine(const std::string& path, int k) {
  LinkDiagram d = parse_pd(read_text_file(path));
  std::cout << sato_levine_to_json(sato_levine(d, k)) << "\n";
  return 0;
}

int run_eta(const std::string& path) {
  TreeSum ts = treesum_from_json(read_text_file(path));
  std::cout << tensor_to_json(eta(ts)) << "\n";
  return 0;
}

int run_longitudes(const std::string& path) {
  TreeSum ts = treesum_from_json(read_text_file(path));
  const int n = ts.order();
  auto longs = assemble_longitudes(ts);

  TensorElement mu = TensorElement::zero(ts.num_generators(), n);
  for (int i = 1; i <= ts.num_generators(); ++i)
    mu.add_tensor(i, lie_class(longs[static_cast<size_t>(i - 1)], n + 1), 1);
  TensorElement expected = eta(ts);

  std::string words = "[";
  for (size_t i = 0; i < longs.size(); ++i) {
    if (i) words += ",";
    words += "\"" + print_word(longs[i]) + "\"";
  }
  words += "]";
  std::cout << "{\"longitudes\":" << words << ",\"mu\":" << tensor_to_json(mu)
            << ",\"eta\":" << tensor_to_json(expected)
            << ",\"equal\":" << (mu == expected ? "true" : "false") << "}\n";
  return mu == expected ? 0 : 1;
}

int run_verify(int m_max, int n_max, bool as_json) {
  VerifyReport rep = verify_theorems(m_max, n_max);
  if (as_json) {
    std::cout << verify_report_to_json(rep) << "\n";
  } else {
    for (const auto& e : rep.entries) {
      std::cout << (e.pass ? "[PASS] " : "[FAIL] ") << "m=" << e.m << " n=" << e.n << " "
                << e.check << " (" << e.detail << ")\n";
    }
    std::cout << (rep.all_pass ? "all checks passed\n" : "some checks FAILED\n");
  }
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculator for link filtration invariants: free Lie algebra "
               "ranks, tree summation maps, Milnor and Sato-Levine invariants"};
  app.require_subcommand(1);

  int m = 3, n = 4, order = 0, k = 1;
  std::string flavor = "both", format = "text", file;
  std::vector<long> framings;
  bool as_json = false;

  auto* ranks = app.add_subcommand("ranks", "Rank/structure tables of the graded quotients");
  ranks->add_option("--m", m, "max component count")->required();
  ranks->add_option("--n", n, "max order")->required();
  ranks->add_option("--flavor", flavor, "twisted|framed|both")
      ->check(CLI::IsMember({"twisted", "framed", "both"}));
  ranks->add_option("--format", format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* milnor = app.add_subcommand("milnor", "Total Milnor invariant of a diagram");
  milnor->add_option("--diagram", file, "PD-code JSON file")->required();
  milnor->add_option("--order", order, "invariant order n")->required();
  milnor->add_option("--framings", framings, "override per-component framings");

  auto* sl = app.add_subcommand("sato-levine", "Higher-order Sato-Levine invariant");
  sl->add_option("--diagram", file, "PD-code JSON file")->required();
  sl->add_option("--k", k, "invariant index k")->required();

  auto* eta_cmd = app.add_subcommand("eta", "Summation map of a tree-sum file");
  eta_cmd->add_option("--treesum", file, "tree-sum JSON file")->required();

  auto* longs = app.add_subcommand("longitudes",
                                   "Longitude words of a tree sum and their invariant");
  longs->add_option("--treesum", file, "tree-sum JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Structural checks over a range");
  verify->add_option("--m-max", m, "max component count")->default_val(3);
  verify->add_option("--n-max", n, "max order")->default_val(4);
  verify->add_flag("--json", as_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ranks->parsed()) return run_ranks(m, n, flavor, format);
    if (milnor->parsed()) return run_milnor(file, order, framings);
    if (sl->parsed()) return run_sato_levine(file, k);
    if (eta_cmd->parsed()) return run_eta(file);
    if (longs->parsed()) return run_longitudes(file);
    if (verify->parsed()) return run_verify(m, n, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
