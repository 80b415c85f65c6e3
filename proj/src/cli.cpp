#include "toricstab/cli.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "toricstab/errors.hpp"
#include "toricstab/flip.hpp"
#include "toricstab/json_io.hpp"

namespace toricstab {

namespace {

struct Options {
  std::string format = "text";
  std::string fan, flip, sheaf, polarisation, l0, alpha, alpha_prime, side = "X", epsilon;
  std::vector<std::string> divisors;
  std::vector<int> rays, delta;
  bool tangent = false, force = false, polystable = false, verdict = false;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string divisor_text(const InvariantDivisor& d) {
  std::string out;
  for (Eigen::Index r = 0; r < d.size(); ++r) {
    if (d(r) == 0) continue;
    const bool negative = d(r) < 0;
    out += out.empty() ? (negative ? "−" : "") : (negative ? " − " : " + ");
    const Rational a = abs(d(r));
    if (a != 1) out += to_string(a) + "·";
    out += "D" + std::to_string(r);
  }
  return out.empty() ? "0" : out;
}

std::string ray_set_text(const std::vector<int>& rays) {
  std::string out = "{";
  for (std::size_t i = 0; i < rays.size(); ++i) out += (i ? ", " : "") + std::to_string(rays[i]);
  return out + "}";
}

FanPtr load_fan(const std::string& path) {
  FanPtr f = fan_from_json(load_json_file(path));
  if (!f->report().is_valid) {
    std::string msg = "fan is invalid";
    for (const auto& d : f->report().diagnostics) msg += "; " + d;
    throw SemanticError(msg);
  }
  return f;
}

std::shared_ptr<const FlipData> load_flip(const std::string& path) {
  const FlipInput in = flip_from_json(load_json_file(path));
  if (!in.base->report().is_valid) throw SemanticError("base fan is invalid");
  const FlippingCone fc = validate_flipping_cone(*in.base, in.cone);
  return std::make_shared<const FlipData>(build_flip(in.base, fc));
}

InvariantDivisor load_divisor(const std::string& path, const Fan& f) {
  return divisor_from_json(load_json_file(path), f);
}

ToricSheaf load_sheaf(const Options& o, FanPtr f) {
  if (o.tangent) return tangent_sheaf(std::move(f));
  if (o.sheaf.empty()) throw CLI::ValidationError("--sheaf", "one of --sheaf or --tangent is required");
  return sheaf_from_json(load_json_file(o.sheaf), std::move(f));
}

Rational parse_epsilon(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("--epsilon", e.what());
  }
}

Side parse_side(const std::string& s) { return s == "X" ? Side::x : Side::xprime; }

OrderedJson verdict_json(const StabilityVerdict& v) {
  OrderedJson maxi = OrderedJson::array();
  for (const auto& m : v.maximizers) maxi.push_back(to_json(m));
  return {{"status", to_string(v.status)},
          {"slope", to_json(v.slope)},
          {"witness", v.witness ? to_json(*v.witness) : OrderedJson()},
          {"witness_slope", v.witness ? to_json(v.witness_slope) : OrderedJson()},
          {"maximizers", std::move(maxi)}};
}

std::string threshold_text(const std::optional<Rational>& t) {
  return t ? "for 0 < eps < " + pretty(*t) : "for all eps > 0";
}

OrderedJson small_verdict_json(const SmallEpsVerdict& v) {
  OrderedJson maxi = OrderedJson::array();
  for (const auto& m : v.maximizers) maxi.push_back(to_json(m));
  return {{"status", to_string(v.status)},
          {"slope", to_json(v.slope)},
          {"witness", v.witness ? to_json(*v.witness) : OrderedJson()},
          {"witness_slope", v.witness ? to_json(v.witness_slope) : OrderedJson()},
          {"maximizers", std::move(maxi)},
          {"threshold", v.threshold ? to_json(*v.threshold) : OrderedJson()}};
}

void print_small_verdict(std::ostream& out, const std::string& label, const SmallEpsVerdict& v) {
  out << label << ": " << to_string(v.status) << " " << threshold_text(v.threshold) << "\n";
  out << "  slope: " << to_text(v.slope) << "\n";
  if (v.witness)
    out << "  witness: " << v.witness->to_string() << "  slope " << to_text(v.witness_slope) << "\n";
}

const char* case_code(FlipCase c) {
  switch (c) {
    case FlipCase::case_i: return "i";
    case FlipCase::case_ii: return "ii";
    case FlipCase::case_iii: return "iii";
    case FlipCase::case_iv: return "iv";
    case FlipCase::first_order_inconclusive: return "first_order_inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------

void cmd_analyze(const Options& o, std::ostream& out) {
  const FanPtr f = fan_from_json(load_json_file(o.fan));
  const FanReport rep = analyze_fan(*f);
  if (o.format == "json") {
    out << OrderedJson{{"rank", f->rank()},
                       {"ray_count", rep.ray_count},
                       {"max_cone_count", rep.max_cone_count},
                       {"is_valid", rep.is_valid},
                       {"is_simplicial", rep.is_simplicial},
                       {"is_complete", rep.is_complete},
                       {"diagnostics", rep.diagnostics}}
               .dump(2)
        << "\n";
    return;
  }
  out << "rank: " << f->rank() << "\n"
      << "rays: " << rep.ray_count << "\n"
      << "maximal cones: " << rep.max_cone_count << "\n"
      << "valid: " << yes_no(rep.is_valid) << "\n"
      << "simplicial: " << yes_no(rep.is_simplicial) << "\n"
      << "complete: " << yes_no(rep.is_complete) << "\n";
  for (const auto& d : rep.diagnostics) out << "diagnostic: " << d << "\n";
}

void cmd_intersect(const Options& o, std::ostream& out) {
  const FanPtr f = load_fan(o.fan);
  std::vector<InvariantDivisor> factors;
  if (!o.rays.empty() && !o.divisors.empty()) throw CLI::ValidationError("use either --rays or --divisor");
  for (int r : o.rays) factors.push_back(prime_divisor(*f, r));
  for (const auto& path : o.divisors) factors.push_back(load_divisor(path, *f));
  if (static_cast<int>(factors.size()) != f->rank())
    throw CLI::ValidationError("need exactly " + std::to_string(f->rank()) + " divisors");
  const Rational v = intersection_number(*f, factors);
  if (o.format == "json")
    out << OrderedJson{{"value", to_json(v)}}.dump(2) << "\n";
  else
    out << pretty(v) << "\n";
}

void cmd_degree(const Options& o, std::ostream& out) {
  const FanPtr f = load_fan(o.fan);
  const InvariantDivisor l = load_divisor(o.polarisation, *f);
  IntersectionRing ring(*f);
  if (!o.divisors.empty()) {
    const Rational v = ring.degree(load_divisor(o.divisors.front(), *f), l);
    if (o.format == "json")
      out << OrderedJson{{"value", to_json(v)}}.dump(2) << "\n";
    else
      out << pretty(v) << "\n";
    return;
  }
  const RationalVector degs = ring.degrees(l);
  if (o.format == "json") {
    OrderedJson d = OrderedJson::object();
    for (int r = 0; r < f->ray_count(); ++r) d[std::to_string(r)] = to_json(degs(r));
    out << OrderedJson{{"degrees", std::move(d)}}.dump(2) << "\n";
    return;
  }
  for (int r = 0; r < f->ray_count(); ++r) out << "D" << r << ": " << pretty(degs(r)) << "\n";
}

void cmd_slope(const Options& o, std::ostream& out) {
  const FanPtr f = load_fan(o.fan);
  const ToricSheaf s = load_sheaf(o, f);
  const Rational v = slope(s, load_divisor(o.polarisation, *f), o.force);
  if (o.format == "json")
    out << OrderedJson{{"slope", to_json(v)}}.dump(2) << "\n";
  else
    out << pretty(v) << "\n";
}

void cmd_stability(const Options& o, std::ostream& out) {
  const FanPtr f = load_fan(o.fan);
  const ToricSheaf s = load_sheaf(o, f);
  const RationalVector degs = polarisation_degrees(*f, load_divisor(o.polarisation, *f), o.force);
  const StabilityVerdict v = verdict_for_degrees(s, degs);
  std::optional<std::optional<std::vector<ToricSheaf>>> split;
  if (o.polystable) split = decomposition_for_degrees(s, degs);

  if (o.format == "json") {
    OrderedJson j = verdict_json(v);
    if (split) {
      OrderedJson ranks = OrderedJson::array();
      if (*split)
        for (const auto& t : **split) ranks.push_back(t.rank());
      j["polystable"] = {{"polystable", split->has_value()}, {"summand_ranks", std::move(ranks)}};
    }
    out << j.dump(2) << "\n";
    return;
  }
  out << "status: " << to_string(v.status) << "\n"
      << "slope: " << pretty(v.slope) << "\n";
  if (v.witness) {
    out << "witness: " << v.witness->to_string() << "  slope " << pretty(v.witness_slope) << "\n";
    out << "maximizers:\n";
    for (const auto& m : v.maximizers) out << "  " << m.to_string() << "\n";
  }
  if (split) {
    if (*split)
      out << "polystable: yes (" << (*split)->size() << " summands)\n";
    else
      out << "polystable: no\n";
  }
}

void cmd_flip_build(const Options& o, std::ostream& out) {
  const auto fd = load_flip(o.flip);
  const ExceptionalData ex = exceptional_data(*fd);
  const auto& fc = fd->fc;
  if (o.format == "json") {
    std::vector<long> rel;
    for (const auto& b : fc.relation) rel.push_back(b.get_si());
    out << OrderedJson{{"flipping_cone_rays", fc.cone.rays},
                       {"relation", rel},
                       {"j_plus", fc.j_plus},
                       {"j_minus", fc.j_minus},
                       {"j_zero", fc.j_zero},
                       {"x", fan_to_json(*fd->x)},
                       {"xprime", fan_to_json(*fd->xprime)},
                       {"d_plus", divisor_to_json(fd->d_plus)},
                       {"exceptional",
                        {{"dim_exceptional_x", ex.dim_exceptional_x},
                         {"dim_exceptional_xprime", ex.dim_exceptional_xprime},
                         {"dim_contracted", ex.dim_contracted},
                         {"xr", fan_to_json(*ex.xr)},
                         {"anticanonical_ample", ex.anticanonical_ample}}}}
               .dump(2)
        << "\n";
    return;
  }
  out << "relation:";
  for (std::size_t i = 0; i < fc.relation.size(); ++i) {
    const Integer& b = fc.relation[i];
    if (b == 0) continue;
    out << (b < 0 ? " − " : " + ") << Integer(abs(b)) << "·u" << fc.cone.rays[i];
  }
  out << " = 0\n"
      << "J+: " << ray_set_text(fc.j_plus) << "\n"
      << "J-: " << ray_set_text(fc.j_minus) << "\n"
      << "J0: " << ray_set_text(fc.j_zero) << "\n";
  auto cones = [&](const Fan& f) {
    std::string s;
    for (const auto& c : f.maximal_cones()) s += (s.empty() ? "" : " ") + ray_set_text(c.rays);
    return s;
  };
  out << "X maximal cones: " << cones(*fd->x) << "\n"
      << "X′ maximal cones: " << cones(*fd->xprime) << "\n"
      << "D+: " << divisor_text(fd->d_plus) << "\n"
      << "exceptional dims: X " << ex.dim_exceptional_x << ", X′ " << ex.dim_exceptional_xprime << ", X0 "
      << ex.dim_contracted << "\n"
      << "X_R: rank " << ex.xr->rank() << ", " << ex.xr->ray_count() << " rays, −K ample: "
      << yes_no(ex.anticanonical_ample) << "\n";
}

void cmd_flip_classify(const Options& o, std::ostream& out) {
  const auto fd = load_flip(o.flip);
  const InvariantDivisor l0 = load_divisor(o.l0, *fd->sigma0);
  const ToricSheaf s = load_sheaf(o, fd->x);
  const ClassifierReport rep = classify_flip(fd, l0, s);
  if (o.format == "json") {
    OrderedJson eq = OrderedJson::array();
    for (std::size_t i = 0; i < rep.equal_slope.size(); ++i)
      eq.push_back({{"subspace", to_json(rep.equal_slope[i])}, {"x", to_json(rep.x_f[i])}});
    out << OrderedJson{{"outcome", case_code(rep.outcome)},
                       {"description", to_string(rep.outcome)},
                       {"constant_term", verdict_json(rep.constant_term)},
                       {"x_e", to_json(rep.x_e)},
                       {"equal_slope", std::move(eq)},
                       {"x_side", small_verdict_json(rep.x_side)},
                       {"xprime_side", small_verdict_json(rep.xprime_side)}}
               .dump(2)
        << "\n";
    return;
  }
  out << "outcome: " << to_string(rep.outcome) << "\n"
      << "constant term: " << to_string(rep.constant_term.status) << ", slope "
      << pretty(rep.constant_term.slope) << "\n"
      << "x(E): " << pretty(rep.x_e) << "\n";
  if (!rep.equal_slope.empty()) {
    out << "equal-slope subspaces:\n";
    for (std::size_t i = 0; i < rep.equal_slope.size(); ++i)
      out << "  " << rep.equal_slope[i].to_string() << "  x = " << pretty(rep.x_f[i]) << "\n";
  }
  print_small_verdict(out, "X side", rep.x_side);
  print_small_verdict(out, "X′ side", rep.xprime_side);
}

void cmd_eps_slope(const Options& o, std::ostream& out) {
  const auto fd = load_flip(o.flip);
  const PolarisationFamily pf{fd, load_divisor(o.l0, *fd->sigma0), parse_side(o.side)};
  const ToricSheaf s = load_sheaf(o, pf.fan_ptr());
  const EpsPolynomial p = epsilon_slope(pf, s);
  std::optional<Rational> eps, value;
  if (!o.epsilon.empty()) {
    eps = parse_epsilon(o.epsilon);
    if (!o.force) {
      const auto range = ample_epsilon_range(pf);
      if (*eps <= 0 || (range && *eps >= *range))
        throw NotAmpleError("eps = " + to_string(*eps) + " is outside the ample range" +
                            (range ? " (0, " + to_string(*range) + ")" : std::string()));
    }
    value = p(*eps);
  }
  std::optional<SmallEpsVerdict> v;
  if (o.verdict) v = small_eps_verdict(pf, s);

  if (o.format == "json") {
    OrderedJson j{{"side", o.side}, {"slope", to_json(p)}, {"text", to_text(p)}};
    if (eps) j["value_at"] = {{"epsilon", to_json(*eps)}, {"value", to_json(*value)}};
    if (v) j["verdict"] = small_verdict_json(*v);
    out << j.dump(2) << "\n";
    return;
  }
  out << to_text(p) << "\n";
  if (eps) out << "at eps = " << pretty(*eps) << ": " << pretty(*value) << "\n";
  if (v) print_small_verdict(out, "verdict", *v);
}

void cmd_log_check(const Options& o, std::ostream& out) {
  const auto fd = load_flip(o.flip);
  InvariantDivisor alpha, alpha_prime;
  if (!o.alpha.empty() || !o.alpha_prime.empty()) {
    if (o.alpha.empty() || o.alpha_prime.empty())
      throw CLI::ValidationError("--alpha and --alpha-prime go together");
    alpha = load_divisor(o.alpha, *fd->x);
    alpha_prime = load_divisor(o.alpha_prime, *fd->xprime);
  } else {
    if (o.l0.empty() || o.epsilon.empty())
      throw CLI::ValidationError("give --alpha/--alpha-prime or --l0 with --epsilon");
    const InvariantDivisor l0 = load_divisor(o.l0, *fd->sigma0);
    const Rational eps = parse_epsilon(o.epsilon);
    alpha = PolarisationFamily{fd, l0, Side::x}.at(eps);
    alpha_prime = PolarisationFamily{fd, l0, Side::xprime}.at(eps);
  }
  const LogCheck c = log_preservation_check(*fd, o.delta, alpha, alpha_prime);

  // The rank-one witness sheaf: polystable for α, but not after the flip for α′.
  std::optional<bool> poly_alpha, poly_alpha_prime;
  if (c.witness) {
    const ToricSheaf w = log_witness_sheaf(fd->x, c.degrees_alpha, c.witness->first, c.witness->second);
    poly_alpha = decomposition_for_degrees(w, c.degrees_alpha).has_value();
    poly_alpha_prime = decomposition_for_degrees(flip_functor(*fd, w), c.degrees_alpha_prime).has_value();
  }

  if (o.format == "json") {
    OrderedJson da = OrderedJson::object(), dp = OrderedJson::object();
    for (Eigen::Index r = 0; r < c.degrees_alpha.size(); ++r) {
      da[std::to_string(r)] = to_json(c.degrees_alpha(r));
      dp[std::to_string(r)] = to_json(c.degrees_alpha_prime(r));
    }
    OrderedJson j{{"result", c.preserves ? "preserves" : "fails"},
                  {"vacuous", c.vacuous},
                  {"ratio", c.ratio ? to_json(*c.ratio) : OrderedJson()},
                  {"witness", c.witness ? OrderedJson{c.witness->first, c.witness->second} : OrderedJson()},
                  {"degrees_alpha", std::move(da)},
                  {"degrees_alpha_prime", std::move(dp)}};
    if (c.witness)
      j["witness_sheaf"] = {{"polystable_alpha", *poly_alpha}, {"polystable_alpha_prime", *poly_alpha_prime}};
    out << j.dump(2) << "\n";
    return;
  }
  if (c.vacuous)
    out << "result: preserves (vacuous: every ray is in the boundary)\n";
  else if (c.preserves)
    out << "result: preserves, c = " << pretty(*c.ratio) << "\n";
  else
    out << "result: fails\nwitness rays: " << c.witness->first << ", " << c.witness->second << "\n";
  out << "deg_alpha:";
  for (Eigen::Index r = 0; r < c.degrees_alpha.size(); ++r) out << " " << pretty(c.degrees_alpha(r));
  out << "\ndeg_alpha′:";
  for (Eigen::Index r = 0; r < c.degrees_alpha_prime.size(); ++r) out << " " << pretty(c.degrees_alpha_prime(r));
  out << "\n";
  if (c.witness)
    out << "witness sheaf polystable: alpha " << yes_no(*poly_alpha) << ", alpha′ " << yes_no(*poly_alpha_prime)
        << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toric flip and slope-stability computations", "toricstab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto sheaf_options = [&](CLI::App* sub) {
    auto* s = sub->add_option("--sheaf", o.sheaf, "Sheaf JSON file");
    auto* t = sub->add_flag("--tangent", o.tangent, "Use the tangent sheaf");
    s->excludes(t);
  };

  auto* analyze = app.add_subcommand("analyze", "Validate a fan and report simpliciality/completeness");
  analyze->add_option("--fan", o.fan, "Fan JSON file")->required();

  auto* intersect = app.add_subcommand("intersect", "Intersection number of n divisors");
  intersect->add_option("--fan", o.fan, "Fan JSON file")->required();
  intersect->add_option("--divisor", o.divisors, "Divisor JSON file (repeat n times)");
  intersect->add_option("--rays", o.rays, "Prime divisors by ray index, e.g. 2,2,2")->delimiter(',');

  auto* degree = app.add_subcommand("degree", "Degree D·L^(n-1), or of every D_ρ");
  degree->add_option("--fan", o.fan, "Fan JSON file")->required();
  degree->add_option("--polarisation", o.polarisation, "Divisor JSON file for L")->required();
  degree->add_option("--divisor", o.divisors, "Divisor JSON file for D")->expected(0, 1);

  auto* slope_cmd = app.add_subcommand("slope", "Slope of a toric sheaf");
  slope_cmd->add_option("--fan", o.fan, "Fan JSON file")->required();
  slope_cmd->add_option("--polarisation", o.polarisation, "Ample divisor JSON file")->required();
  slope_cmd->add_flag("--force", o.force, "Skip the ampleness check");
  sheaf_options(slope_cmd);

  auto* stability = app.add_subcommand("stability", "Stability verdict over the candidate subspaces");
  stability->add_option("--fan", o.fan, "Fan JSON file")->required();
  stability->add_option("--polarisation", o.polarisation, "Ample divisor JSON file")->required();
  stability->add_flag("--force", o.force, "Skip the ampleness check");
  stability->add_flag("--polystable", o.polystable, "Also search for a polystable splitting");
  sheaf_options(stability);

  auto* flip_build = app.add_subcommand("flip-build", "Build both sides of a flip and its exceptional data");
  flip_build->add_option("--flip", o.flip, "Flip JSON file")->required();

  auto* flip_classify = app.add_subcommand("flip-classify", "Classify stability across the flip");
  flip_classify->add_option("--flip", o.flip, "Flip JSON file")->required();
  flip_classify->add_option("--l0", o.l0, "Ample divisor on X0 (JSON file)")->required();
  sheaf_options(flip_classify);

  auto* eps_slope = app.add_subcommand("eps-slope", "Slope along L0 ∓ eps·D+ as a polynomial in eps");
  eps_slope->add_option("--flip", o.flip, "Flip JSON file")->required();
  eps_slope->add_option("--l0", o.l0, "Ample divisor on X0 (JSON file)")->required();
  eps_slope->add_option("--side", o.side, "X or Xprime")->check(CLI::IsMember({"X", "Xprime"}));
  eps_slope->add_option("--epsilon", o.epsilon, "Evaluate at eps = p/q");
  eps_slope->add_flag("--force", o.force, "Evaluate even outside the ample range");
  eps_slope->add_flag("--verdict", o.verdict, "Stability for all small eps > 0");
  sheaf_options(eps_slope);

  auto* log_check = app.add_subcommand("log-check", "Does the flip preserve polystability of log sheaves?");
  log_check->add_option("--flip", o.flip, "Flip JSON file")->required();
  log_check->add_option("--delta", o.delta, "Boundary rays, e.g. 0,1")->delimiter(',');
  log_check->add_option("--alpha", o.alpha, "Ample divisor on X (JSON file)");
  log_check->add_option("--alpha-prime", o.alpha_prime, "Ample divisor on X′ (JSON file)");
  log_check->add_option("--l0", o.l0, "Ample divisor on X0; use with --epsilon");
  log_check->add_option("--epsilon", o.epsilon, "Use alpha = L(-eps) on X and L(eps) on X′");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*analyze) cmd_analyze(o, out);
    if (*intersect) cmd_intersect(o, out);
    if (*degree) cmd_degree(o, out);
    if (*slope_cmd) cmd_slope(o, out);
    if (*stability) cmd_stability(o, out);
    if (*flip_build) cmd_flip_build(o, out);
    if (*flip_classify) cmd_flip_classify(o, out);
    if (*eps_slope) cmd_eps_slope(o, out);
    if (*log_check) cmd_log_check(o, out);
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const SchemaError& e) {
    err << "schema error at " << e.what() << "\n";
    return exit_schema;
  } catch (const SemanticError& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_semantic;
  } catch (const ComputationError& e) {
    err << "computation failed: " << e.what() << "\n";
    return exit_computation;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return exit_computation;
  }
  return exit_ok;
}

}  // namespace toricstab
