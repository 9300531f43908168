#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whitcalc/tables.hpp"

using namespace whitcalc;

TEST_CASE("twisted quotient reports") {
  {
    GradedQuotientReport r = twisted_quotient(2, 0);
    CHECK(r.structure.free_rank == 3);
    CHECK(r.structure.torsion.empty());
    CHECK(r.annihilated_arf_dimension == 0);
  }
  {
    GradedQuotientReport r = twisted_quotient(2, 2);  // n = 4k-2 with k = 1
    CHECK(r.structure.free_rank == 1);
    CHECK(r.annihilated_arf_dimension == 2);  // witt_rank(2, 1)
  }
  {
    GradedQuotientReport r = twisted_quotient(3, 1);
    CHECK(r.structure.free_rank == 1);
    CHECK(r.annihilated_arf_dimension == 0);
  }
}

TEST_CASE("framed quotient reports") {
  {
    GradedQuotientReport r = framed_quotient(2, 1);  // l = 1: (Z/2)^R(2,2)
    CHECK(r.structure.free_rank == 0);
    REQUIRE(r.structure.torsion.size() == 1);
    CHECK(r.structure.torsion[0] == 2);
  }
  {
    GradedQuotientReport r = framed_quotient(2, 2);
    CHECK(r.structure.free_rank == 1);
    CHECK(r.structure.torsion.empty());
  }
  {
    GradedQuotientReport r = framed_quotient(3, 1);  // Z + (Z/2)^3
    CHECK(r.structure.free_rank == 1);
    CHECK(r.structure.torsion.size() == 3);
  }
}

TEST_CASE("verify runs clean on small bounds") {
  VerifyReport rep = verify_theorems(2, 2);
  CHECK(rep.all_pass);
  CHECK(!rep.entries.empty());
  // Degenerate single-strand row passes too.
  VerifyReport one = verify_theorems(1, 2);
  CHECK(one.all_pass);
}

TEST_CASE("report rendering") {
  std::vector<GradedQuotientReport> rows{twisted_quotient(2, 1), framed_quotient(2, 1)};
  std::string text = render_reports_text(rows);
  CHECK(text.find("twisted") != std::string::npos);
  std::string csv = render_reports_csv(rows);
  CHECK(csv.find("2,1,framed,0,2,0") != std::string::npos);
}
