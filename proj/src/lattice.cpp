#include "toricstab/lattice.hpp"

#include <algorithm>

#include "toricstab/errors.hpp"

namespace toricstab {

template <class Field>
Matrix<Field> inverse(const Matrix<Field>& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw ComputationError("inverse of a non-square matrix");
  Matrix<Field> aug(n, 2 * n);
  aug << m, Matrix<Field>::Identity(n, n);
  const auto ech = reduced_row_echelon(aug);
  if (static_cast<Eigen::Index>(ech.pivots.size()) < n || ech.pivots.back() >= n)
    throw ComputationError("singular matrix");
  return ech.reduced.rightCols(n);
}

template <class Field>
bool nonnegative_solution_exists(Matrix<Field> a, Vector<Field> b) {
  const Eigen::Index m = a.rows(), k = a.cols();
  if (m == 0) return true;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0) {
      a.row(i) *= Field(-1);
      b(i) = -b(i);
    }
  }
  // Tableau [a | I | b]; artificial variables k..k+m-1 start in the basis.
  const Eigen::Index cols = k + m + 1;
  Matrix<Field> t = Matrix<Field>::Zero(m, cols);
  t.leftCols(k) = a;
  t.block(0, k, m, m) = Matrix<Field>::Identity(m, m);
  t.col(cols - 1) = b;
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = k + i;

  // Reduced costs of "minimise the sum of artificials".
  Vector<Field> cost = Vector<Field>::Zero(cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    cost.head(k) -= t.row(i).head(k).transpose();
    cost(cols - 1) -= t(i, cols - 1);
  }

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < k + m; ++j) {
      if (cost(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Field best;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Field ratio = t(i, cols - 1) / t(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded; cannot happen in phase one
    const Field inv = Field(1) / t(leave, enter);
    t.row(leave) *= inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Field f = t(i, enter);
      t.row(i) -= f * t.row(leave);
    }
    const Field f = cost(enter);
    cost -= f * t.row(leave).transpose();
    basis[leave] = enter;
  }
  return cost(cols - 1) == 0;
}

template Matrix<Rational> inverse<Rational>(const Matrix<Rational>&);
template bool nonnegative_solution_exists<Rational>(Matrix<Rational>, Vector<Rational>);

LatticeVector primitive_vector(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw ComputationError("not a ray direction");
  LatticeVector out = v;
  for (auto& x : out) x /= g;
  return out;
}

bool is_primitive(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Replaces rows (i, j) of both matrices by a unimodular combination that puts
// gcd(a(i,c), a(j,c)) at (i,c) and 0 at (j,c).
void gcd_rows(Matrix<Integer>& a, Matrix<Integer>& u, Eigen::Index i, Eigen::Index j,
              Eigen::Index c) {
  const Integer x = a(i, c), y = a(j, c);
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Integer p = x / g, q = y / g;
  auto combine = [&](Matrix<Integer>& m) {
    const Matrix<Integer> ri = m.row(i), rj = m.row(j);
    m.row(i) = s * ri + t * rj;
    m.row(j) = Integer(-q) * ri + p * rj;
  };
  combine(a);
  combine(u);
}

}  // namespace

HermiteForm hermite_normal_form(Matrix<Integer> a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix<Integer> u = Matrix<Integer>::Identity(m, m);
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    for (Eigen::Index r = row + 1; r < m; ++r)
      if (a(r, col) != 0) gcd_rows(a, u, row, r, col);
    if (a(row, col) == 0) {
      // gcd_rows leaves zeros below only once the pivot row is nonzero
      Eigen::Index p = row + 1;
      while (p < m && a(p, col) == 0) ++p;
      if (p == m) continue;
      a.row(row).swap(a.row(p));
      u.row(row).swap(u.row(p));
      for (Eigen::Index r = row + 1; r < m; ++r)
        if (a(r, col) != 0) gcd_rows(a, u, row, r, col);
    }
    if (a(row, col) < 0) {
      a.row(row) *= Integer(-1);
      u.row(row) *= Integer(-1);
    }
    for (Eigen::Index r = 0; r < row; ++r) {
      const Integer f = floor_div(a(r, col), a(row, col));
      if (f == 0) continue;
      a.row(r) -= f * a.row(row);
      u.row(r) -= f * u.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(u), std::move(pivots)};
}

std::vector<Integer> smith_invariants(Matrix<Integer> a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  std::vector<Integer> out;
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      Eigen::Index bi = -1, bj = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (a(i, j) != 0 && (bi < 0 || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) return out;
      a.row(t).swap(a.row(bi));
      a.col(t).swap(a.col(bj));
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        const Integer q = floor_div(a(i, t), a(t, t));
        if (q != 0) a.row(i) -= q * a.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        const Integer q = floor_div(a(t, j), a(t, t));
        if (q != 0) a.col(j) -= q * a.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the remaining block by the pivot.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

Matrix<Integer> integer_kernel(const Matrix<Integer>& a) {
  const Eigen::Index n = a.cols();
  const HermiteForm h = hermite_normal_form(a.transpose());
  const auto r = static_cast<Eigen::Index>(h.pivots.size());
  return h.transform.bottomRows(n - r);
}

Matrix<Integer> saturation(const Matrix<Integer>& a) {
  return integer_kernel(integer_kernel(a));
}

Matrix<Integer> stack_rows(const std::vector<LatticeVector>& rows, Eigen::Index cols) {
  Matrix<Integer> m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

Integer sublattice_index(const std::vector<LatticeVector>& vectors) {
  if (vectors.empty()) return 1;
  const Eigen::Index n = vectors.front().size();
  const Matrix<Integer> a = stack_rows(vectors, n);
  const auto inv = smith_invariants(a);
  if (inv.size() < vectors.size()) throw ComputationError("not simplicial");
  Integer index = 1;
  for (const auto& d : inv) index *= d;
  return index;
}

}  // namespace toricstab
