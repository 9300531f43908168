#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "whitcalc/matrix.hpp"

using namespace whitcalc;

namespace {

// Test-side oracle: fraction-free determinant (Bareiss), independent of the
// normal-form code it checks.
Int det_bareiss(IntMatrix a) {
  const long n = a.rows();
  REQUIRE(a.cols() == n);
  if (n == 0) return 1;
  Int denom = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / denom;
      }
      a(i, k) = 0;
    }
    denom = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

void check_smith(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  IntMatrix lhs = f.u * a * f.v;
  CHECK(lhs == f.s);
  CHECK(abs_of(det_bareiss(f.u)) == 1);
  CHECK(abs_of(det_bareiss(f.v)) == 1);
  for (long i = 0; i + 1 < std::min(f.s.rows(), f.s.cols()); ++i) {
    if (f.s(i + 1, i + 1) != 0) {
      REQUIRE(f.s(i, i) != 0);
      CHECK(f.s(i + 1, i + 1) % f.s(i, i) == 0);
    }
  }
  for (long i = 0; i < std::min(f.s.rows(), f.s.cols()); ++i) CHECK(f.s(i, i) >= 0);
  for (long i = 0; i < f.s.rows(); ++i)
    for (long j = 0; j < f.s.cols(); ++j)
      if (i != j) CHECK(f.s(i, j) == 0);
}

IntMatrix make(long r, long c, std::initializer_list<long> vals) {
  IntMatrix m(r, c);
  auto it = vals.begin();
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m(i, j) = Int(*it++);
  return m;
}

IntMatrix random_matrix(std::mt19937& rng, long r, long c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m(i, j) = Int(dist(rng));
  return m;
}

}  // namespace

TEST_CASE("smith normal form on the worked example") {
  IntMatrix a = make(2, 2, {2, 4, 6, 8});
  SmithForm f = smith_normal_form(a);
  CHECK(f.s(0, 0) == 2);
  CHECK(f.s(1, 1) == 4);
  CHECK(f.rank == 2);
  check_smith(a);
}

TEST_CASE("smith normal form trivial cases") {
  IntMatrix id = IntMatrix::Identity(3, 3);
  SmithForm f = smith_normal_form(id);
  CHECK(f.s == id);

  IntMatrix z = IntMatrix::Zero(2, 3);
  SmithForm fz = smith_normal_form(z);
  CHECK(fz.rank == 0);
  CHECK(is_zero(fz.s));
  CHECK(fz.s.rows() == 2);
  CHECK(fz.s.cols() == 3);

  IntMatrix empty(0, 0);
  CHECK(smith_normal_form(empty).rank == 0);
  IntMatrix wide(0, 4);
  CHECK(smith_normal_form(wide).s.cols() == 4);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    long r = 1 + rng() % 5;
    long c = 1 + rng() % 5;
    check_smith(random_matrix(rng, r, c, 9));
  }
  // A few with larger entries to exercise carries.
  for (int trial = 0; trial < 5; ++trial) check_smith(random_matrix(rng, 4, 4, 5000));
}

TEST_CASE("kernel basis forced cases") {
  {
    IntMatrix a = make(1, 2, {1, 1});
    auto k = kernel_basis(a);
    REQUIRE(k.size() == 1);
    CHECK(abs_of(k[0](0)) == 1);
    CHECK(k[0](0) + k[0](1) == 0);
  }
  {
    IntMatrix a = make(2, 2, {1, 2, 3, 4});  // invertible over Q
    CHECK(kernel_basis(a).empty());
  }
}

TEST_CASE("kernel basis against brute-force enumeration") {
  // Rank-2 kernel of [[2,-1,0],[0,0,0]]: enumerate small vectors, collect
  // the kernel, and check both containment directions.
  IntMatrix a = make(2, 3, {2, -1, 0, 0, 0, 0});
  auto basis = kernel_basis(a);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) {
    IntVector img = a * v;
    CHECK(img(0) == 0);
    CHECK(img(1) == 0);
  }
  // Brute force: every kernel vector with entries in [-2,2] must be an
  // integer combination of the basis (solve the 3x2 system).
  IntMatrix bm = columns_to_matrix(basis, 3);
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z) {
        if (2 * x - y != 0) continue;
        IntVector v(3);
        v << Int(x), Int(y), Int(z);
        CHECK(solve_exact(bm, v).has_value());
      }
  // The named vectors lie in the kernel lattice.
  IntVector v1(3), v2(3);
  v1 << Int(1), Int(2), Int(0);
  v2 << Int(0), Int(0), Int(1);
  CHECK(solve_exact(bm, v1).has_value());
  CHECK(solve_exact(bm, v2).has_value());
}

TEST_CASE("kernel lattice is saturated") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix a = random_matrix(rng, 2 + rng() % 3, 2 + rng() % 4, 6);
    auto basis = kernel_basis(a);
    if (basis.empty()) continue;
    IntMatrix bm = columns_to_matrix(basis, a.cols());
    AbelianGroupStructure cok = cokernel_structure(bm);
    CHECK(cok.torsion.empty());  // no new torsion: a direct summand
  }
}

TEST_CASE("cokernel structure examples") {
  {
    IntMatrix a = make(1, 1, {2});
    AbelianGroupStructure g = cokernel_structure(a);
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 2);
  }
  {
    IntMatrix a = make(2, 1, {1, 0});
    AbelianGroupStructure g = cokernel_structure(a);
    CHECK(g.free_rank == 1);
    CHECK(g.torsion.empty());
  }
  {
    IntMatrix a = make(2, 2, {1, 0, 0, 4});
    AbelianGroupStructure g = cokernel_structure(a);
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 4);
  }
}

TEST_CASE("cokernel structure is invariant under column operations") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix a = random_matrix(rng, 3, 4, 7);
    AbelianGroupStructure g = cokernel_structure(a);

    IntMatrix p = a;
    p.col(0).swap(p.col(3));
    CHECK(cokernel_structure(p) == g);

    IntMatrix q = a;
    q.col(1) += 3 * q.col(2);
    CHECK(cokernel_structure(q) == g);
  }
}

TEST_CASE("f2 kernel dimension") {
  CHECK(f2_kernel_dimension(make(2, 2, {1, 1, 1, 1})) == 1);
  CHECK(f2_kernel_dimension(IntMatrix::Identity(4, 4)) == 0);
  CHECK(f2_kernel_dimension(make(2, 2, {2, 0, 0, 2})) == 2);
}

TEST_CASE("exact solve") {
  IntMatrix a = make(2, 2, {2, 0, 0, 3});
  IntVector b(2);
  b << Int(4), Int(9);
  auto x = solve_exact(a, b);
  REQUIRE(x.has_value());
  CHECK((a * *x) == b);

  b << Int(1), Int(3);
  CHECK(!solve_exact(a, b).has_value());
}
