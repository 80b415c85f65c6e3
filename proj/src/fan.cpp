#include "toricstab/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "toricstab/errors.hpp"
#include "toricstab/lattice.hpp"

namespace toricstab {

Cone::Cone(std::vector<int> r) : rays(std::move(r)) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

bool Cone::contains_ray(int r) const { return std::binary_search(rays.begin(), rays.end(), r); }

bool Cone::contains(const Cone& other) const {
  return std::includes(rays.begin(), rays.end(), other.rays.begin(), other.rays.end());
}

LatticeVector lattice_vector(std::initializer_list<long> coords) {
  LatticeVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (long c : coords) v(i++) = Integer(c);
  return v;
}

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == k) {
      fn(pick);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

Matrix<Rational> rows_of(const Matrix<Rational>& m, const std::vector<int>& idx) {
  Matrix<Rational> out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

Matrix<Rational> without_row(const Matrix<Rational>& m, Eigen::Index skip) {
  Matrix<Rational> out(m.rows() - 1, m.cols());
  for (Eigen::Index i = 0, k = 0; i < m.rows(); ++i)
    if (i != skip) out.row(k++) = m.row(i);
  return out;
}

// Generators g with -g in Cone(all generators); they span the lineality space.
std::vector<bool> lineality_members(const Matrix<Rational>& gens) {
  std::vector<bool> out(static_cast<std::size_t>(gens.rows()));
  for (Eigen::Index i = 0; i < gens.rows(); ++i) {
    const RationalVector neg = -gens.row(i).transpose();
    out[static_cast<std::size_t>(i)] = in_cone<Rational>(gens, neg);
  }
  return out;
}

// The intersection of two cones is a common face iff the generators of each
// lying in the lineality space of σ1 - σ2 are exactly the common rays.
bool meet_in_common_face(const Fan& f, const Cone& a, const Cone& b) {
  const Matrix<Rational> ga = f.rational_generators(a), gb = f.rational_generators(b);
  Matrix<Rational> diff(ga.rows() + gb.rows(), f.rank());
  diff << ga, -gb;
  const auto member = lineality_members(diff);
  for (std::size_t i = 0; i < a.rays.size(); ++i)
    if (member[i] && !b.contains_ray(a.rays[i])) return false;
  for (std::size_t j = 0; j < b.rays.size(); ++j)
    if (member[a.rays.size() + j] && !a.contains_ray(b.rays[j])) return false;
  return true;
}

FanReport compute_report(const Fan& f) {
  FanReport rep;
  rep.ray_count = f.ray_count();
  rep.max_cone_count = static_cast<int>(f.maximal_cones().size());
  rep.is_valid = true;
  auto fail = [&](std::string msg) {
    rep.is_valid = false;
    rep.diagnostics.push_back(std::move(msg));
  };

  if (f.maximal_cones().empty()) fail("fan has no maximal cones");

  std::vector<bool> used(static_cast<std::size_t>(f.ray_count()), false);
  for (const auto& c : f.maximal_cones())
    for (int r : c.rays) used[static_cast<std::size_t>(r)] = true;
  for (int r = 0; r < f.ray_count(); ++r)
    if (!used[static_cast<std::size_t>(r)])
      fail("ray " + std::to_string(r) + " lies in no maximal cone");

  const auto& cones = f.maximal_cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const Matrix<Rational> g = f.rational_generators(cones[i]);
    const auto member = lineality_members(g);
    if (std::find(member.begin(), member.end(), true) != member.end())
      fail("cone " + std::to_string(i) + " is not strictly convex");
    for (Eigen::Index r = 0; r < g.rows() && g.rows() > 1; ++r) {
      const RationalVector gr = g.row(r).transpose();
      if (in_cone<Rational>(without_row(g, r), gr))
        fail("ray " + std::to_string(cones[i].rays[static_cast<std::size_t>(r)]) +
             " is not extremal in cone " + std::to_string(i));
    }
  }

  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (cones[i] == cones[j]) {
        fail("cones " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
        continue;
      }
      if (!meet_in_common_face(f, cones[i], cones[j]))
        fail("cones " + std::to_string(i) + " and " + std::to_string(j) +
             " do not meet in a common face");
      else if (cones[i].contains(cones[j]) || cones[j].contains(cones[i]))
        fail("cones " + std::to_string(i) + " and " + std::to_string(j) + " are nested");
    }

  rep.is_simplicial = true;
  bool full_dim = true;
  for (const auto& c : cones) {
    const int d = cone_dimension(f, c);
    if (d != static_cast<int>(c.size())) rep.is_simplicial = false;
    if (d != f.rank()) full_dim = false;
  }

  rep.is_complete = false;
  if (rep.is_valid && full_dim) {
    std::map<Cone, int> facet_count;
    for (const auto& c : cones)
      for (const auto& facet : cone_facets(f, c)) ++facet_count[facet];
    bool paired = true;
    for (const auto& [facet, count] : facet_count) {
      if (count != 2) {
        paired = false;
        if (count > 2) {
          rep.is_valid = false;
          rep.diagnostics.push_back("a facet is shared by more than two maximal cones");
        }
      }
    }
    rep.is_complete = paired && rep.is_valid;
  }
  return rep;
}

}  // namespace

Fan::Fan(int rank, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(maximal_cones)) {
  if (rank_ < 0) throw SemanticError("negative lattice rank");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != rank_)
      throw SemanticError("ray " + std::to_string(i) + " has wrong length");
    if (rays_[i].isZero()) throw SemanticError("ray " + std::to_string(i) + " is zero");
    if (!is_primitive(rays_[i])) throw SemanticError("ray not primitive: " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[i] == rays_[j])
        throw SemanticError("rays " + std::to_string(j) + " and " + std::to_string(i) +
                            " coincide");
  }
  for (const auto& c : cones_)
    for (int r : c.rays)
      if (r < 0 || r >= ray_count())
        throw SemanticError("cone references unknown ray " + std::to_string(r));
  report_ = compute_report(*this);
}

FanPtr make_fan(int rank, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones) {
  return std::make_shared<const Fan>(rank, std::move(rays), std::move(maximal_cones));
}

Matrix<Integer> Fan::generator_matrix(const Cone& c) const {
  Matrix<Integer> m(static_cast<Eigen::Index>(c.size()), rank_);
  for (std::size_t i = 0; i < c.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = ray(c.rays[i]).transpose();
  return m;
}

Matrix<Rational> Fan::rational_generators(const Cone& c) const {
  return to_rational(generator_matrix(c));
}

bool Fan::has_cone(const Cone& c) const { return find_maximal_cone(c) >= 0; }

int Fan::find_maximal_cone(const Cone& c, bool last) const {
  int found = -1;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (!cones_[i].contains(c) || !is_face_of(*this, c, cones_[i])) continue;
    found = static_cast<int>(i);
    if (!last) break;
  }
  return found;
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.rank_ != b.rank_ || a.rays_.size() != b.rays_.size()) return false;
  for (std::size_t i = 0; i < a.rays_.size(); ++i)
    if (a.rays_[i] != b.rays_[i]) return false;
  auto ca = a.cones_, cb = b.cones_;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

FanReport analyze_fan(const Fan& f) { return f.report(); }

int cone_dimension(const Fan& f, const Cone& c) {
  if (c.size() == 0) return 0;
  return static_cast<int>(rank(f.rational_generators(c)));
}

std::vector<Cone> cone_facets(const Fan& f, const Cone& c) {
  const Matrix<Rational> g = f.rational_generators(c);
  const auto ech = reduced_row_echelon(g);
  const Eigen::Index d = ech.reduced.rows();
  if (d == 0) return {};
  const Matrix<Rational>& span_basis = ech.reduced;  // d x n
  const Matrix<Rational> coords = g * span_basis.transpose();  // generators paired with the basis
  std::set<Cone> facets;
  for_each_subset(static_cast<int>(c.size()), static_cast<int>(d - 1), [&](const std::vector<int>& pick) {
    const Matrix<Rational> sub = rows_of(coords, pick);
    const Matrix<Rational> ker = kernel_basis(sub);
    if (ker.rows() != 1) return;
    const RationalVector normal = span_basis.transpose() * ker.row(0).transpose();
    const RationalVector values = g * normal;
    bool has_pos = false, has_neg = false;
    for (const auto& v : values) {
      if (v > 0) has_pos = true;
      if (v < 0) has_neg = true;
    }
    if (has_pos && has_neg) return;
    std::vector<int> on;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (values(i) == 0) on.push_back(c.rays[static_cast<std::size_t>(i)]);
    facets.insert(Cone(on));
  });
  return {facets.begin(), facets.end()};
}

bool is_face_of(const Fan& f, const Cone& face, const Cone& c) {
  if (!c.contains(face)) return false;
  if (face == c) return true;
  std::vector<int> closure = c.rays;
  bool any = false;
  for (const auto& facet : cone_facets(f, c)) {
    if (!facet.contains(face)) continue;
    any = true;
    std::vector<int> next;
    std::set_intersection(closure.begin(), closure.end(), facet.rays.begin(), facet.rays.end(),
                          std::back_inserter(next));
    closure = std::move(next);
  }
  if (!any) return false;
  return closure == face.rays;
}

Integer multiplicity(const Fan& f, const Cone& c) {
  if (cone_dimension(f, c) != static_cast<int>(c.size()))
    throw ComputationError("multiplicity of a non-simplicial cone");
  std::vector<LatticeVector> gens;
  for (int r : c.rays) gens.push_back(f.ray(r));
  if (gens.empty()) return 1;
  return sublattice_index(gens);
}

StarQuotient star_quotient_fan(const Fan& f, const Cone& c) {
  if (!f.has_cone(c)) throw ComputationError("cone is not in the fan");
  const Matrix<Integer> projection = integer_kernel(f.generator_matrix(c));
  const int qrank = static_cast<int>(projection.rows());
  std::vector<LatticeVector> rays;
  std::vector<int> origin;
  std::map<int, int> index_of;
  std::vector<Cone> cones;
  for (const auto& tau : f.maximal_cones()) {
    if (!tau.contains(c) || !is_face_of(f, c, tau)) continue;
    std::vector<int> img;
    for (int r : tau.rays) {
      if (c.contains_ray(r)) continue;
      auto it = index_of.find(r);
      if (it == index_of.end()) {
        const LatticeVector image = projection * f.ray(r);
        if (image.isZero()) throw ComputationError("ray projects to zero in the quotient");
        const LatticeVector prim = primitive_vector(image);
        int found = -1;
        for (std::size_t k = 0; k < rays.size(); ++k)
          if (rays[k] == prim) found = static_cast<int>(k);
        if (found < 0) {
          found = static_cast<int>(rays.size());
          rays.push_back(prim);
          origin.push_back(r);
        }
        it = index_of.emplace(r, found).first;
      }
      img.push_back(it->second);
    }
    cones.emplace_back(img);
  }
  return {Fan(qrank, std::move(rays), std::move(cones)), projection, std::move(origin)};
}

}  // namespace toricstab
