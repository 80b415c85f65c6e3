#include "toricstab/subspace.hpp"

#include <sstream>

#include "toricstab/errors.hpp"
#include "toricstab/lattice.hpp"

namespace toricstab {

namespace {

Matrix<Rational> canonical_rows(const Matrix<Rational>& generators) {
  auto ech = reduced_row_echelon(generators);
  Matrix<Rational> rows = std::move(ech.reduced);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const RationalVector r = rows.row(i).transpose();
    rows.row(i) = to_rational(clear_denominators(r)).transpose();
  }
  return rows;
}

}  // namespace

Subspace Subspace::zero(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Matrix<Rational>(0, ambient_dim));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Matrix<Rational>::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::span(const Matrix<Rational>& generators) {
  return Subspace(generators.cols(), canonical_rows(generators));
}

Subspace Subspace::span(const std::vector<RationalVector>& generators, Eigen::Index ambient_dim) {
  Matrix<Rational> m(static_cast<Eigen::Index>(generators.size()), ambient_dim);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_dim)
      throw ComputationError("generator length does not match ambient dimension");
    m.row(static_cast<Eigen::Index>(i)) = generators[i].transpose();
  }
  return span(m);
}

Subspace Subspace::line(const RationalVector& v) {
  return span(Matrix<Rational>(v.transpose()));
}

bool Subspace::contains(const RationalVector& v) const {
  if (v.size() != ambient_) return false;
  Matrix<Rational> m(dim() + 1, ambient_);
  m << basis_, v.transpose();
  return rank(m) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  if (other.dim() > dim()) return false;
  Matrix<Rational> m(dim() + other.dim(), ambient_);
  m << basis_, other.basis_;
  return rank(m) == dim();
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() &&
         (a.basis_.rows() == 0 || a.basis_ == b.basis_);
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  for (Eigen::Index i = 0; i < a.basis_.rows(); ++i)
    for (Eigen::Index j = 0; j < a.basis_.cols(); ++j) {
      const int c = cmp(a.basis_(i, j), b.basis_(i, j));
      if (c < 0) return std::strong_ordering::less;
      if (c > 0) return std::strong_ordering::greater;
    }
  return std::strong_ordering::equal;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "Span(";
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    if (i) os << ", ";
    os << "(";
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
      if (j) os << ",";
      os << toricstab::to_string(basis_(i, j));
    }
    os << ")";
  }
  os << ")";
  return os.str();
}

Subspace annihilator(const Subspace& a) {
  if (a.is_zero()) return Subspace::full(a.ambient_dim());
  return Subspace::span(kernel_basis(a.basis()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ComputationError("ambient dimension mismatch");
  Matrix<Rational> m(a.dim() + b.dim(), a.ambient_dim());
  m << a.basis(), b.basis();
  return Subspace::span(m);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ComputationError("ambient dimension mismatch");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return annihilator(sum(annihilator(a), annihilator(b)));
}

Subspace subspace_meet_join(MeetJoin mode, const Subspace& a, const Subspace& b) {
  return mode == MeetJoin::intersect ? intersect(a, b) : sum(a, b);
}

Subspace coordinates_in(const Subspace& w, const Subspace& frame) {
  if (!frame.contains(w)) throw ComputationError("subspace is not contained in the frame");
  const Matrix<Rational> bt = frame.basis().transpose();
  Matrix<Rational> coords(w.dim(), frame.dim());
  for (Eigen::Index i = 0; i < w.dim(); ++i) {
    RationalVector x;
    solve<Rational>(bt, w.basis().row(i).transpose(), x);
    coords.row(i) = x.transpose();
  }
  if (w.dim() == 0) return Subspace::zero(frame.dim());
  return Subspace::span(coords);
}

Subspace block_sum(const Subspace& a, const Subspace& b) {
  const Eigen::Index n = a.ambient_dim() + b.ambient_dim();
  Matrix<Rational> m = Matrix<Rational>::Zero(a.dim() + b.dim(), n);
  m.topLeftCorner(a.dim(), a.ambient_dim()) = a.basis();
  m.bottomRightCorner(b.dim(), b.ambient_dim()) = b.basis();
  if (m.rows() == 0) return Subspace::zero(n);
  return Subspace::span(m);
}

}  // namespace toricstab
