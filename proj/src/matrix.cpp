#include "whitcalc/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace whitcalc {

std::string to_string(const AbelianGroupStructure& g) {
  std::ostringstream out;
  if (g.free_rank == 0 && g.torsion.empty()) return "0";
  bool first = true;
  if (g.free_rank > 0) {
    out << "Z";
    if (g.free_rank > 1) out << "^" << g.free_rank;
    first = false;
  }
  for (const Int& d : g.torsion) {
    if (!first) out << " + ";
    out << "Z/" << d.get_str();
    first = false;
  }
  return out.str();
}

namespace {

// Finds a nonzero entry of minimal absolute value in the submatrix with
// corner (t, t); returns false when the submatrix is zero.
bool find_pivot(const IntMatrix& s, long t, long& pi, long& pj) {
  bool found = false;
  Int best;
  for (long j = t; j < s.cols(); ++j) {
    for (long i = t; i < s.rows(); ++i) {
      const Int& e = s(i, j);
      if (e == 0) continue;
      Int a = abs_of(e);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

// Quotient rounded to nearest, so remainders stay within |b|/2. Keeps the
// coefficient growth of the elimination under control.
Int rounded_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs_of(r) > abs_of(b)) q += (sign_of(r) == sign_of(b)) ? 1 : -1;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const long n = a.rows();
  const long m = a.cols();
  SmithForm f;
  f.s = a;
  f.u = IntMatrix::Identity(n, n);
  f.v = IntMatrix::Identity(m, m);

  IntMatrix& s = f.s;
  IntMatrix& u = f.u;
  IntMatrix& v = f.v;

  const long steps = std::min(n, m);
  long t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Re-select the minimal-absolute-value pivot before every sweep.
      long pi = t, pj = t;
      if (!find_pivot(s, t, pi, pj)) goto done;
      if (pi != t) {
        s.row(pi).swap(s.row(t));
        u.row(pi).swap(u.row(t));
      }
      if (pj != t) {
        s.col(pj).swap(s.col(t));
        v.col(pj).swap(v.col(t));
      }

      bool clean = true;
      for (long i = t + 1; i < n; ++i) {
        if (s(i, t) == 0) continue;
        Int q = rounded_div(s(i, t), s(t, t));
        if (q != 0) {
          s.row(i) -= q * s.row(t);
          u.row(i) -= q * u.row(t);
        }
        if (s(i, t) != 0) clean = false;
      }
      for (long j = t + 1; j < m; ++j) {
        if (s(t, j) == 0) continue;
        Int q = rounded_div(s(t, j), s(t, t));
        if (q != 0) {
          s.col(j) -= q * s.col(t);
          v.col(j) -= q * v.col(t);
        }
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot divides its cleared row and column; enforce divisibility of
      // the remaining submatrix by folding an offending row into row t.
      bool divides_all = true;
      for (long i = t + 1; i < n && divides_all; ++i) {
        for (long j = t + 1; j < m; ++j) {
          if (s(i, j) % s(t, t) != 0) {
            s.row(t) += s.row(i);
            u.row(t) += u.row(i);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }

    if (s(t, t) < 0) {
      s.row(t) = -s.row(t);
      u.row(t) = -u.row(t);
    }
  }
done:
  f.rank = t;
  return f;
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  std::vector<IntVector> basis;
  for (long j = f.rank; j < a.cols(); ++j) basis.push_back(f.v.col(j));
  return basis;
}

AbelianGroupStructure cokernel_structure(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  AbelianGroupStructure g;
  g.free_rank = a.rows() - f.rank;
  for (long i = 0; i < f.rank; ++i) {
    if (f.s(i, i) >= 2) g.torsion.push_back(f.s(i, i));
  }
  return g;
}

std::optional<IntVector> solve_exact(const IntMatrix& a, const IntVector& b) {
  return LinearSolver(a).solve(b);
}

LinearSolver::LinearSolver(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), f_(smith_normal_form(a)) {}

std::optional<IntVector> LinearSolver::solve(const IntVector& b) const {
  if (b.rows() != rows_) throw std::invalid_argument("solve: size mismatch");
  IntVector c = f_.u * b;
  IntVector y = IntVector::Zero(cols_);
  for (long i = 0; i < rows_; ++i) {
    if (i < f_.rank) {
      if (c(i) % f_.s(i, i) != 0) return std::nullopt;
      y(i) = c(i) / f_.s(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(f_.v * y);
}

// Rows packed 64 entries to a word; elimination works a word at a time.
long f2_rank_packed(std::vector<std::vector<uint64_t>> rows, long cols) {
  const long nrows = static_cast<long>(rows.size());
  long rank = 0;
  for (long j = 0; j < cols && rank < nrows; ++j) {
    const size_t word = static_cast<size_t>(j) / 64;
    const uint64_t bit = uint64_t(1) << (j % 64);
    long p = -1;
    for (long i = rank; i < nrows; ++i) {
      if (rows[static_cast<size_t>(i)][word] & bit) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(p)]);
    const auto& pivot = rows[static_cast<size_t>(rank)];
    for (long i = rank + 1; i < nrows; ++i) {
      auto& row = rows[static_cast<size_t>(i)];
      if (row[word] & bit) {
        for (size_t w = word; w < row.size(); ++w) row[w] ^= pivot[w];
      }
    }
    ++rank;
  }
  return rank;
}

long f2_rank(const IntMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const size_t words = static_cast<size_t>(a.cols() + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(static_cast<size_t>(a.rows()),
                                          std::vector<uint64_t>(words, 0));
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (!is_even(a(i, j)))
        rows[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] |= uint64_t(1) << (j % 64);
  return f2_rank_packed(std::move(rows), a.cols());
}

long f2_kernel_dimension(const IntMatrix& a) { return a.cols() - f2_rank(a); }

}  // namespace whitcalc
