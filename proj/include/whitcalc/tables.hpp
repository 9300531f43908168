#pragma once

#include <string>
#include <vector>

#include "whitcalc/freelie.hpp"
#include "whitcalc/matrix.hpp"

namespace whitcalc {

enum class TowerFlavor { twisted, framed };

// Structure of one graded quotient of the filtration by bounding towers in
// rational homology balls.
struct GradedQuotientReport {
  int m = 1;
  int n = 0;
  TowerFlavor flavor = TowerFlavor::twisted;
  AbelianGroupStructure structure;
  std::string invariant_basis_description;
  // F_2-dimension of the rationally annihilated classes at n = 4k-2
  // (the target of the order-k Arf invariant); zero at other orders.
  long annihilated_arf_dimension = 0;
};

// Twisted flavor: free of rank milnor_rank(m, n), cross-checked against the
// computed kernel basis. The Arf column is witt_rank(m, k) at n = 4k-2.
GradedQuotientReport twisted_quotient(int m, int n);

// Framed flavor: Z^milnor_rank for even n; for n = 2l-1 an extra
// (Z/2)^witt_rank(m, l+1) detected by the order-n Sato-Levine invariant,
// cross-checked against the Levine quotient computed from tree images.
GradedQuotientReport framed_quotient(int m, int n);

struct VerifyEntry {
  int m = 0;
  int n = 0;
  std::string check;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  bool all_pass = true;
};

// Runs every structural check on the range m <= m_max, n <= n_max and
// reports pass/fail per (m, n, check).
VerifyReport verify_theorems(int m_max, int n_max);

// Table rendering for the CLI.
std::string render_reports_text(const std::vector<GradedQuotientReport>& rows);
std::string render_reports_csv(const std::vector<GradedQuotientReport>& rows);

}  // namespace whitcalc
