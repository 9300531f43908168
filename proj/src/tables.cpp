#include "whitcalc/tables.hpp"

#include <sstream>
#include <stdexcept>

#include "whitcalc/trees.hpp"

namespace whitcalc {

namespace {

void check_limits(int m, int n) {
  if (m < 1 || m > 9) throw std::invalid_argument("component count must be in 1..9");
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  if (n > max_tree_order())
    throw std::runtime_error("order exceeds the enumeration ceiling (set WHITCALC_MAX_ORDER)");
}

// Coordinates of the summation-map images inside the kernel lattice;
// columns generate the subgroup the quotients divide by.
IntMatrix eta_images_in_kernel_basis(int m, int n, bool include_twisted) {
  const auto basis = dn_basis(m, n);
  const long ambient = static_cast<long>(tensor_basis(m, n).size());
  IntMatrix dn = IntMatrix::Zero(ambient, static_cast<long>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    dn.col(static_cast<long>(j)) = tensor_to_vector(basis[j]);

  std::vector<TensorElement> images;
  for (const auto& t : enumerate_trees(m, n)) {
    TreeSum ts(m, n);
    ts.add_plain(t, 1);
    images.push_back(eta(ts));
  }
  if (include_twisted && n % 2 == 0) {
    for (const auto& t : enumerate_twisted_trees(m, n / 2)) {
      TreeSum ts(m, n);
      ts.add_twisted(t, 1);
      images.push_back(eta(ts));
    }
  }

  LinearSolver solver(dn);
  IntMatrix coords(static_cast<long>(basis.size()), static_cast<long>(images.size()));
  for (size_t j = 0; j < images.size(); ++j) {
    auto c = solver.solve(tensor_to_vector(images[j]));
    if (!c) throw std::logic_error("tree image escaped the bracket kernel");
    coords.col(static_cast<long>(j)) = *c;
  }
  return coords;
}

long arf_dimension(int m, int n) {
  if (n >= 2 && (n - 2) % 4 == 0) return witt_rank(m, (n + 2) / 4);
  return 0;
}

}  // namespace

GradedQuotientReport twisted_quotient(int m, int n) {
  check_limits(m, n);
  GradedQuotientReport r;
  r.m = m;
  r.n = n;
  r.flavor = TowerFlavor::twisted;
  const long rank = milnor_rank(m, n);
  const long kernel_rank = static_cast<long>(dn_basis(m, n).size());
  if (rank != kernel_rank)
    throw std::logic_error("rank mismatch: formula " + std::to_string(rank) +
                           " vs kernel " + std::to_string(kernel_rank));
  r.structure.free_rank = rank;
  r.invariant_basis_description = "total Milnor invariant of order " + std::to_string(n);
  r.annihilated_arf_dimension = arf_dimension(m, n);
  return r;
}

GradedQuotientReport framed_quotient(int m, int n) {
  check_limits(m, n);
  GradedQuotientReport r;
  r.m = m;
  r.n = n;
  r.flavor = TowerFlavor::framed;
  r.structure.free_rank = milnor_rank(m, n);
  r.annihilated_arf_dimension = arf_dimension(m, n);
  if (n % 2 == 0) {
    r.invariant_basis_description =
        "total Milnor invariant of order " + std::to_string(n);
    return r;
  }
  const int ell = (n + 1) / 2;
  const long torsion_dim = witt_rank(m, ell + 1);
  // Independent route: the quotient of the order-2l kernel by the plain
  // tree images, computed exactly. Its construction verifies the structure.
  const long quotient_dim = sl_quotient_dimension(m, ell);
  if (quotient_dim != torsion_dim)
    throw std::logic_error("Sato-Levine torsion mismatch: formula " +
                           std::to_string(torsion_dim) + " vs quotient " +
                           std::to_string(quotient_dim));
  r.structure.torsion.assign(static_cast<size_t>(torsion_dim), Int(2));
  r.invariant_basis_description = "total Milnor invariant of order " + std::to_string(n) +
                                  " + order-" + std::to_string(n) + " Sato-Levine invariant";
  return r;
}

VerifyReport verify_theorems(int m_max, int n_max) {
  VerifyReport rep;
  auto record = [&](int m, int n, const std::string& check, bool pass,
                    const std::string& detail) {
    rep.entries.push_back({m, n, check, pass, detail});
    if (!pass) rep.all_pass = false;
  };

  for (int m = 1; m <= m_max; ++m) {
    // Witt ranks against direct Lyndon-word counts.
    for (int deg = 1; deg <= n_max + 2; ++deg) {
      const long formula = witt_rank(m, deg);
      const long count = static_cast<long>(lyndon_words(m, deg).size());
      record(m, deg, "witt-rank-vs-lyndon-count", formula == count,
             "formula " + std::to_string(formula) + ", words " + std::to_string(count));
    }

    for (int n = 0; n <= n_max; ++n) {
      // Kernel rank against the closed formula.
      const long rank = static_cast<long>(dn_basis(m, n).size());
      const long expected = milnor_rank(m, n);
      record(m, n, "kernel-rank", rank == expected,
             "kernel " + std::to_string(rank) + ", formula " + std::to_string(expected));

      // Surjectivity of the summation map (twisted trees included).
      AbelianGroupStructure cok = cokernel_structure(eta_images_in_kernel_basis(m, n, true));
      const bool onto = cok.free_rank == 0 && cok.torsion.empty();
      record(m, n, "eta-surjectivity", onto, "cokernel " + to_string(cok));

      // Levine quotient at even orders: plain images leave (Z/2)^R(m,k+1).
      if (n % 2 == 0 && n >= 2) {
        const int k = n / 2;
        AbelianGroupStructure q = cokernel_structure(eta_images_in_kernel_basis(m, n, false));
        AbelianGroupStructure expected_q;
        expected_q.torsion.assign(static_cast<size_t>(witt_rank(m, k + 1)), Int(2));
        record(m, n, "levine-quotient", q == expected_q,
               "got " + to_string(q) + ", expected " + to_string(expected_q));
      }

      // Graded quotient reports are internally cross-checked; surface any
      // mismatch as a failing entry rather than an exception.
      try {
        GradedQuotientReport t = twisted_quotient(m, n);
        record(m, n, "twisted-structure", true, to_string(t.structure));
        if (n >= 2 && (n - 2) % 4 == 0) {
          const int k = (n + 2) / 4;
          const long via_bsl = bsl_kernel_dimension(m, 2 * k - 1);
          record(m, n, "arf-dimension", t.annihilated_arf_dimension == via_bsl,
                 "report " + std::to_string(t.annihilated_arf_dimension) +
                     ", boundary-twist kernel " + std::to_string(via_bsl));
        }
      } catch (const std::exception& e) {
        record(m, n, "twisted-structure", false, e.what());
      }
      try {
        GradedQuotientReport f = framed_quotient(m, n);
        record(m, n, "framed-structure", true, to_string(f.structure));
      } catch (const std::exception& e) {
        record(m, n, "framed-structure", false, e.what());
      }
    }

    // Kernel dichotomy of the bracket-renaming map on the quasi-Lie side.
    for (int ell = 1; ell <= 3; ++ell) {
      const long dim = bsl_kernel_dimension(m, ell);
      const long expected = (ell % 2 == 1) ? witt_rank(m, (ell + 1) / 2) : 0;
      record(m, ell, "quasi-lie-kernel-dichotomy", dim == expected,
             "dimension " + std::to_string(dim) + ", expected " + std::to_string(expected));
    }
  }
  return rep;
}

std::string render_reports_text(const std::vector<GradedQuotientReport>& rows) {
  size_t width = 9;
  for (const auto& r : rows) width = std::max(width, to_string(r.structure).size());
  std::ostringstream out;
  out << "m  n  flavor   " << "structure" << std::string(width - 9 + 2, ' ')
      << "arf-dim  invariants\n";
  for (const auto& r : rows) {
    std::string s = to_string(r.structure);
    out << r.m << "  " << r.n << "  " << (r.flavor == TowerFlavor::twisted ? "twisted" : "framed ")
        << "  " << s << std::string(width - s.size() + 2, ' ')
        << r.annihilated_arf_dimension << "        " << r.invariant_basis_description << "\n";
  }
  return out.str();
}

std::string render_reports_csv(const std::vector<GradedQuotientReport>& rows) {
  std::ostringstream out;
  out << "m,n,flavor,free_rank,torsion,arf_dimension\n";
  for (const auto& r : rows) {
    out << r.m << "," << r.n << ","
        << (r.flavor == TowerFlavor::twisted ? "twisted" : "framed") << ","
        << r.structure.free_rank << ",";
    for (size_t i = 0; i < r.structure.torsion.size(); ++i) {
      if (i) out << ";";
      out << r.structure.torsion[i].get_str();
    }
    out << "," << r.annihilated_arf_dimension << "\n";
  }
  return out.str();
}

}  // namespace whitcalc
