#pragma once

#include <vector>

#include "toricstab/scalar.hpp"

namespace toricstab {

// ---------------------------------------------------------------------------
// Exact linear algebra over a field (used with Rational).

template <class Field>
struct RowEchelon {
  Matrix<Field> reduced;             // nonzero rows only
  std::vector<Eigen::Index> pivots;  // pivot column of each row
};

template <class Field>
RowEchelon<Field> reduced_row_echelon(Matrix<Field> m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Field inv = Field(1) / m(row, col);
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Field f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return {Matrix<Field>(m.topRows(row)), std::move(pivots)};
}

template <class Field>
Eigen::Index rank(const Matrix<Field>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivots.size());
}

/// Rows form a basis of { x : m x = 0 }.
template <class Field>
Matrix<Field> kernel_basis(const Matrix<Field>& m) {
  const auto ech = reduced_row_echelon(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  const Eigen::Index nfree = n - static_cast<Eigen::Index>(ech.pivots.size());
  Matrix<Field> basis = Matrix<Field>::Zero(nfree, n);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(k, f) = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i)
      basis(k, ech.pivots[i]) = -ech.reduced(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return basis;
}

/// Inverse of a square matrix; throws ComputationError if singular.
template <class Field>
Matrix<Field> inverse(const Matrix<Field>& m);

/// Solves m x = b. Returns false when inconsistent; x is one solution otherwise.
template <class Field>
bool solve(const Matrix<Field>& m, const Vector<Field>& b, Vector<Field>& x) {
  Matrix<Field> aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const auto ech = reduced_row_echelon(aug);
  x = Vector<Field>::Zero(m.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] == m.cols()) return false;
    x(ech.pivots[i]) = ech.reduced(static_cast<Eigen::Index>(i), m.cols());
  }
  return true;
}

/// Is there λ ≥ 0 with a λ = b? Phase-one simplex with Bland's rule.
template <class Field>
bool nonnegative_solution_exists(Matrix<Field> a, Vector<Field> b);

/// Does x lie in the cone generated by the rows of `generators`?
template <class Field>
bool in_cone(const Matrix<Field>& generators, const Vector<Field>& x) {
  if (generators.rows() == 0) return x.isZero();
  return nonnegative_solution_exists<Field>(generators.transpose(), x);
}

// ---------------------------------------------------------------------------
// Integer lattices.

/// v / gcd(v). Throws ComputationError("not a ray direction") for v = 0.
LatticeVector primitive_vector(const LatticeVector& v);

bool is_primitive(const LatticeVector& v);

struct HermiteForm {
  Matrix<Integer> form;       // transform * input; upper echelon, positive pivots
  Matrix<Integer> transform;  // unimodular
  std::vector<Eigen::Index> pivots;
};

/// Row-style Hermite normal form.
HermiteForm hermite_normal_form(Matrix<Integer> a);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(Matrix<Integer> a);

/// Rows form a Z-basis of { x in Z^n : a x = 0 } (a saturated lattice).
Matrix<Integer> integer_kernel(const Matrix<Integer>& a);

/// Rows form a Z-basis of span(rows of a) ∩ Z^n.
Matrix<Integer> saturation(const Matrix<Integer>& a);

/// Index of Z v_1 + ... + Z v_k inside span(v_i) ∩ Z^n.
/// Throws ComputationError("not simplicial") for dependent input.
Integer sublattice_index(const std::vector<LatticeVector>& vectors);

Matrix<Integer> stack_rows(const std::vector<LatticeVector>& rows, Eigen::Index cols);

}  // namespace toricstab
