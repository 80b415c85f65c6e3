#include "toricstab/json_io.hpp"

#include <fstream>
#include <map>

#include "toricstab/errors.hpp"

namespace toricstab {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(where, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<long>();
}

int ray_key(const std::string& key, const Fan& f, const std::string& where) {
  std::size_t used = 0;
  long r = -1;
  try {
    r = std::stol(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw SchemaError(at(where, key), "ray keys must be integers");
  if (r < 0 || r >= f.ray_count()) throw SemanticError("unknown ray " + key);
  return static_cast<int>(r);
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw SchemaError(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where, e.what());
  }
}

FanPtr fan_from_json(const Json& j, const std::string& where) {
  const long rank = integer(field(j, "rank", where), at(where, "rank"));
  if (rank < 0) throw SemanticError("negative lattice rank");
  const std::string rays_at = at(where, "rays");
  std::vector<LatticeVector> rays;
  const Json& jr = array(field(j, "rays", where), rays_at);
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const Json& row = array(jr[i], at(rays_at, i));
    LatticeVector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t k = 0; k < row.size(); ++k) v(static_cast<Eigen::Index>(k)) = integer(row[k], at(at(rays_at, i), k));
    rays.push_back(std::move(v));
  }
  const std::string cones_at = at(where, "maximal_cones");
  std::vector<Cone> cones;
  const Json& jc = array(field(j, "maximal_cones", where), cones_at);
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const Json& row = array(jc[i], at(cones_at, i));
    std::vector<int> idx;
    for (std::size_t k = 0; k < row.size(); ++k) idx.push_back(static_cast<int>(integer(row[k], at(at(cones_at, i), k))));
    cones.emplace_back(std::move(idx));
  }
  return make_fan(static_cast<int>(rank), std::move(rays), std::move(cones));
}

InvariantDivisor divisor_from_json(const Json& j, const Fan& f, const std::string& where) {
  const std::string coeffs_at = at(where, "coeffs");
  const Json& jc = field(j, "coeffs", where);
  if (!jc.is_object()) throw SchemaError(coeffs_at, "expected an object keyed by ray index");
  InvariantDivisor d = zero_divisor(f);
  for (auto it = jc.begin(); it != jc.end(); ++it)
    d(ray_key(it.key(), f, coeffs_at)) = rational_from_json(it.value(), at(coeffs_at, it.key()));
  return d;
}

ToricSheaf sheaf_from_json(const Json& j, FanPtr f, const std::string& where) {
  const long rank = integer(field(j, "rank", where), at(where, "rank"));
  if (rank < 1) throw SemanticError("sheaf rank must be positive");
  const std::string filt_at = at(where, "filtrations");
  const Json& jf = field(j, "filtrations", where);
  if (!jf.is_object()) throw SchemaError(filt_at, "expected an object keyed by ray index");
  std::map<int, Filtration> by_ray;
  for (auto it = jf.begin(); it != jf.end(); ++it) {
    const int ray = ray_key(it.key(), *f, filt_at);
    const std::string ray_at = at(filt_at, it.key());
    const Json& jumps = array(it.value(), ray_at);
    std::vector<Jump> parsed;
    std::vector<RationalVector> gens;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      const std::string jump_at = at(ray_at, k);
      const int level = static_cast<int>(integer(field(jumps[k], "level", jump_at), at(jump_at, "level")));
      const std::string gen_at = at(jump_at, "generators");
      const Json& jg = array(field(jumps[k], "generators", jump_at), gen_at);
      for (std::size_t g = 0; g < jg.size(); ++g) {
        const Json& row = array(jg[g], at(gen_at, g));
        if (static_cast<long>(row.size()) != rank) throw SemanticError("generator length differs from the rank");
        RationalVector v(rank);
        for (std::size_t c = 0; c < row.size(); ++c)
          v(static_cast<Eigen::Index>(c)) = rational_from_json(row[c], at(at(gen_at, g), c));
        gens.push_back(std::move(v));
      }
      parsed.push_back({level, Subspace::span(gens, rank)});
    }
    by_ray.emplace(ray, Filtration(rank, std::move(parsed)));
  }
  std::vector<Filtration> filts;
  for (int r = 0; r < f->ray_count(); ++r) {
    auto it = by_ray.find(r);
    if (it == by_ray.end()) throw SemanticError("no filtration for ray " + std::to_string(r));
    filts.push_back(std::move(it->second));
  }
  return ToricSheaf(std::move(f), rank, std::move(filts));
}

FlipInput flip_from_json(const Json& j, const std::string& where) {
  FlipInput in;
  in.base = fan_from_json(field(j, "fan", where), at(where, "fan"));
  const std::string rays_at = at(where, "flipping_cone_rays");
  const Json& jr = array(field(j, "flipping_cone_rays", where), rays_at);
  std::vector<int> rays;
  for (std::size_t i = 0; i < jr.size(); ++i) rays.push_back(static_cast<int>(integer(jr[i], at(rays_at, i))));
  in.cone = Cone(rays);
  return in;
}

OrderedJson to_json(const Rational& q) { return to_string(q); }

OrderedJson to_json(const EpsPolynomial& p) {
  OrderedJson out = OrderedJson::array();
  for (const auto& c : p.coefficients()) out.push_back(to_string(c));
  return out;
}

OrderedJson to_json(const Subspace& s) {
  OrderedJson out = OrderedJson::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (Eigen::Index k = 0; k < s.ambient_dim(); ++k) row.push_back(to_string(s.basis()(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

OrderedJson fan_to_json(const Fan& f) {
  OrderedJson rays = OrderedJson::array(), cones = OrderedJson::array();
  for (const auto& r : f.rays()) {
    OrderedJson row = OrderedJson::array();
    for (const auto& x : r) row.push_back(x.get_si());
    rays.push_back(std::move(row));
  }
  for (const auto& c : f.maximal_cones()) cones.push_back(c.rays);
  return {{"rank", f.rank()}, {"rays", std::move(rays)}, {"maximal_cones", std::move(cones)}};
}

OrderedJson divisor_to_json(const InvariantDivisor& d) {
  OrderedJson coeffs = OrderedJson::object();
  for (Eigen::Index r = 0; r < d.size(); ++r)
    if (d(r) != 0) coeffs[std::to_string(r)] = to_string(d(r));
  return {{"coeffs", std::move(coeffs)}};
}

OrderedJson sheaf_to_json(const ToricSheaf& s) {
  OrderedJson filts = OrderedJson::object();
  for (int r = 0; r < s.fan().ray_count(); ++r) {
    OrderedJson jumps = OrderedJson::array();
    Subspace prev = Subspace::zero(s.rank());
    for (const auto& j : s.filtration(r).jumps()) {
      OrderedJson gens = OrderedJson::array();
      for (Eigen::Index i = 0; i < j.space.dim(); ++i) {
        const RationalVector row = j.space.basis().row(i).transpose();
        if (prev.contains(row)) continue;
        prev = sum(prev, Subspace::line(row));
        OrderedJson jrow = OrderedJson::array();
        for (const auto& x : row) jrow.push_back(to_string(x));
        gens.push_back(std::move(jrow));
      }
      jumps.push_back({{"level", j.level}, {"generators", std::move(gens)}});
    }
    filts[std::to_string(r)] = std::move(jumps);
  }
  return {{"rank", s.rank()}, {"filtrations", std::move(filts)}};
}

}  // namespace toricstab
