#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "app.hpp"
#include "cache.hpp"
#include "weyllab/arithmetic.hpp"
#include "weyllab/circle_method.hpp"
#include "weyllab/count_io.hpp"
#include "weyllab/error.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/fit.hpp"
#include "weyllab/format.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/operator.hpp"
#include "weyllab/parallel.hpp"
#include "weyllab/regions.hpp"

namespace weyllab::app {
namespace {

struct Output {
  Json json;
  /// Rows for CSV output; the first row is the header.
  std::vector<std::vector<std::string>> csv;
  /// JSON lines instead of one document.
  bool json_lines = false;
};

Json num(double x) {
  if (!std::isfinite(x)) return Json(format_double(x));
  return Json(round15(x));
}

Json big(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return Json(x.convert_to<std::uint64_t>());
  return Json(to_string(x));
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

int geti(const Json& p, const char* key) { return p.at(key).get<int>(); }
std::uint64_t getu(const Json& p, const char* key) { return p.at(key).get<std::uint64_t>(); }
double getd(const Json& p, const char* key) { return p.at(key).get<double>(); }
std::string gets(const Json& p, const char* key) { return p.at(key).get<std::string>(); }

std::vector<std::uint64_t> doubling(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InvalidArgument("sweep start exceeds sweep end");
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= hi; v *= 2) out.push_back(v);
  return out;
}

CountTable obtain_counts(const ExperimentConfig& config, int s, int k, std::uint64_t N,
                         std::optional<std::uint64_t> bound) {
  if (!config.use_cache) return representation_counts(s, k, N, bound);
  CountCache cache(config.cache_dir);
  if (auto hit = cache.load(s, k, N, bound)) return std::move(*hit);
  CountTable table = representation_counts(s, k, N, bound);
  cache.store(table);
  return table;
}

Output counts(const ExperimentConfig& config) {
  const auto& p = config.params;
  const auto bound = getu(p, "bound") ? std::optional<std::uint64_t>(getu(p, "bound")) : std::nullopt;
  const auto table = obtain_counts(config, geti(p, "s"), geti(p, "k"), getu(p, "N"), bound);
  Output out;
  Json values = Json::array();
  out.csv.push_back({"l", "count"});
  for (std::uint64_t l = 1; l <= table.N; ++l) {
    const BigInt v = table.counts.at(l);
    values.push_back(big(v));
    out.csv.push_back({std::to_string(l), to_string(v)});
  }
  out.json = {{"command", "counts"}, {"s", table.s}, {"k", table.k}, {"N", table.N},
              {"partBound", bound ? Json(*bound) : Json()}, {"counts", values}};
  return out;
}

Output meanvalue(const ExperimentConfig& config) {
  const auto& p = config.params;
  const int s = geti(p, "s");
  const int k = geti(p, "k");
  const auto Ns = doubling(getu(p, "Nmin"), getu(p, "N"));
  const auto table = obtain_counts(config, s, k, Ns.back(), std::nullopt);
  Output out;
  out.csv.push_back({"N", "sum"});
  Json rows = Json::array();
  std::vector<double> xs, ys;
  for (const auto N : Ns) {
    const BigInt sum = sum_of_squares(table.counts, 1, N + 1);
    rows.push_back({{"N", N}, {"sum", big(sum)}});
    out.csv.push_back({std::to_string(N), to_string(sum)});
    xs.push_back(double(N));
    ys.push_back(sum.convert_to<double>());
  }
  Json fit;
  if (xs.size() >= 4) {
    const auto f = growth_exponent_fit(xs, ys);
    fit = {{"slope", num(f.slope)}, {"intercept", num(f.intercept)}, {"rSquared", num(f.r_squared)},
           {"maxAbsResidual", num(f.max_abs_residual)}, {"points", f.points}};
  }
  out.json = {{"command", "meanvalue"}, {"s", s}, {"k", k}, {"rows", rows}, {"fit", fit}};
  return out;
}

Output quadrature(const ExperimentConfig& config) {
  const auto& p = config.params;
  const int s = geti(p, "s");
  const int k = geti(p, "k");
  const auto X = getu(p, "X");
  const BigInt lattice = lattice_mean_value(s, k, X);
  const double quad = mean_value_quadrature(s, k, X);
  const double ld = lattice.convert_to<double>();
  const double rel = std::abs(quad - ld) / ld;
  Output out;
  out.json = {{"command", "quadrature"}, {"s", s}, {"k", k}, {"X", X}, {"lattice", big(lattice)},
              {"quadrature", num(quad)}, {"relativeError", num(rel)}, {"pass", rel <= 1e-9}};
  return out;
}

Output multiplier(const ExperimentConfig& config) {
  const auto& p = config.params;
  const int k = geti(p, "k");
  const double lambda = getd(p, "lambda");
  const auto mode = gets(p, "mode");
  Output out;
  if (mode == "point") {
    const auto m = multiplier_truncated(k, lambda, Frequency::real(getd(p, "theta")), getu(p, "N"));
    out.json = {{"command", "multiplier"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)},
                {"theta", num(m.theta)}, {"N", m.truncation}, {"re", num(m.value.real())},
                {"im", num(m.value.imag())}, {"abs", num(std::abs(m.value))}, {"tailBound", num(m.tail_bound)}};
    return out;
  }
  if (mode == "major") {
    const ReducedFraction frac(getu(p, "a"), getu(p, "q"));
    const auto r = major_arc_approximation(k, lambda, frac, getd(p, "alpha"), geti(p, "j"));
    out.json = {{"command", "multiplier"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)},
                {"a", frac.a()}, {"q", frac.q()}, {"alpha", num(getd(p, "alpha"))}, {"j", geti(p, "j")},
                {"approx", {num(r.approx.real()), num(r.approx.imag())}},
                {"actual", {num(r.actual.real()), num(r.actual.imag())}}, {"error", num(r.error)},
                {"insideMajorArc", r.inside_major_arc}};
    return out;
  }
  std::vector<double> exponents;
  for (const auto& e : p.at("exponents")) exponents.push_back(e.get<double>());
  const auto grid = getu(p, "grid");
  const auto trunc = getu(p, "truncN");
  const auto prof = norm_profile(k, lambda, grid, trunc, exponents);
  const auto half = norm_profile(k, lambda, grid, trunc / 2, exponents);
  out.csv.push_back({"k", "lambda", "truncN", "gridM", "kind", "param", "value"});
  auto row = [&](const std::string& kind, double param, double value) {
    out.csv.push_back({std::to_string(k), format_double(round15(lambda)), std::to_string(trunc),
                       std::to_string(grid), kind, format_double(round15(param)), format_double(round15(value))});
  };
  Json lu = Json::array();
  Json deltas = Json::array();
  for (std::size_t i = 0; i < prof.lu.size(); ++i) {
    lu.push_back({{"u", num(prof.lu[i].u)}, {"estimate", num(prof.lu[i].estimate)}});
    row("Lu", prof.lu[i].u, prof.lu[i].estimate);
    const double prev = half.lu[i].estimate;
    deltas.push_back({{"u", num(prof.lu[i].u)}, {"previous", num(prev)},
                      {"relativeChange", num(std::abs(prof.lu[i].estimate - prev) / prev)}});
  }
  row("weakLr", prof.distribution.r, prof.distribution.weak_lr);
  Json lam = Json::array();
  for (const auto& t : prof.distribution.thresholds) {
    lam.push_back({{"alpha", num(t.alpha)}, {"measure", num(t.measure)}});
    row("lambdaProfile", t.alpha, t.measure);
  }
  out.json = {{"command", "multiplier"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)}, {"truncN", trunc},
              {"gridM", grid}, {"Lu", lu}, {"weakLr", {{"r", num(prof.distribution.r)}, {"value", num(prof.distribution.weak_lr)}}},
              {"lambdaProfile", lam}, {"truncationHalving", deltas}};
  return out;
}

ArcParameters arc_parameters(const Json& p) {
  const int k = geti(p, "k");
  const double lambda = getd(p, "lambda");
  ArcParameters base = gets(p, "preset") == "stein-wainger" ? ArcParameters::stein_wainger_preset(k, lambda)
                                                             : ArcParameters::default_preset(k, lambda);
  auto pick = [&](const char* key, double fallback) { return p.at(key).is_null() ? fallback : getd(p, key); };
  return ArcParameters::make(k, pick("beta", base.beta), pick("beta0", base.beta0), pick("beta1", base.beta1), lambda,
                             p.at("allow_violations").get<bool>());
}

Json arc_params_json(const ArcParameters& a) {
  Json v = Json::array();
  for (const auto& s : a.violations()) v.push_back(s);
  return {{"k", a.k}, {"beta", num(a.beta)}, {"beta0", num(a.beta0)}, {"beta1", num(a.beta1)},
          {"lambda", num(a.lambda)}, {"exploratory", a.exploratory}, {"violations", v}};
}

Output arcs(const ExperimentConfig& config) {
  const auto& p = config.params;
  const auto params = arc_parameters(p);
  const int j = geti(p, "j");
  Output out;
  if (gets(p, "mode") == "classify") {
    const double theta = getd(p, "theta");
    out.json_lines = true;
    out.json = Json::array();
    out.csv.push_back({"theta", "j", "kind", "a", "q", "distance"});
    for (int i = 0; i <= j; ++i) {
      const auto d = classify(theta, i, params);
      const std::string kind = d.kind == ArcKind::major ? "major" : "minor";
      out.json.push_back({{"theta", num(theta)}, {"j", i}, {"kind", kind}, {"a", d.witness.a()},
                          {"q", d.witness.q()}, {"distance", num(d.distance)}});
      out.csv.push_back({format_double(round15(theta)), std::to_string(i), kind, std::to_string(d.witness.a()),
                         std::to_string(d.witness.q()), format_double(round15(d.distance))});
    }
    return out;
  }
  const auto list = enumerate_major_arcs(j, params);
  const bool disjoint = !find_arc_overlap(list, params).has_value();
  Json items = Json::array();
  out.csv.push_back({"j", "a", "q", "center", "radius"});
  for (const auto& a : list) {
    items.push_back({{"a", a.frac.a()}, {"q", a.frac.q()}, {"center", num(a.center)}, {"radius", num(a.radius)}});
    out.csv.push_back({std::to_string(j), std::to_string(a.frac.a()), std::to_string(a.frac.q()),
                       format_double(round15(a.center)), format_double(round15(a.radius))});
  }
  out.json = {{"command", "arcs"}, {"j", j}, {"params", arc_params_json(params)}, {"count", list.size()},
              {"totalMeasure", num(total_arc_measure(list))}, {"disjoint", disjoint}, {"arcs", items}};
  return out;
}

Output operator_command(const ExperimentConfig& config) {
  const auto& p = config.params;
  const int k = geti(p, "k");
  const double lambda = getd(p, "lambda");
  const auto mode = gets(p, "mode");
  Output out;
  if (mode == "delta") {
    const auto Ms = doubling(16, getu(p, "Mmax"));
    const auto w = necessity_witness_delta(k, lambda, getd(p, "q"), Ms);
    Json rows = Json::array();
    out.csv.push_back({"M", "partialSum"});
    for (const auto& r : w.rows) {
      rows.push_back({{"M", r.M}, {"partialSum", num(r.partial_sum)}});
      out.csv.push_back({std::to_string(r.M), format_double(round15(r.partial_sum))});
    }
    out.json = {{"command", "operator"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)}, {"q", num(w.q)},
                {"lambdaQ", num(lambda * w.q)}, {"rows", rows}, {"exponentEstimate", num(w.exponent_estimate)},
                {"divergent", w.divergent}};
    return out;
  }
  if (mode == "apply") {
    const auto g = apply_operator(k, lambda, SignalVector::impulse(0), getu(p, "M"));
    Json rows = Json::array();
    out.csv.push_back({"n", "re", "im"});
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      const auto n = g.offset + std::int64_t(i);
      const auto v = g.values[i];
      if (v == Complex{}) continue;
      rows.push_back({{"n", n}, {"re", num(v.real())}, {"im", num(v.imag())}});
      out.csv.push_back({std::to_string(n), format_double(round15(v.real())), format_double(round15(v.imag()))});
    }
    out.json = {{"command", "operator"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)}, {"M", getu(p, "M")},
                {"impulseResponse", rows}};
    return out;
  }
  const auto Ls = doubling(getu(p, "Lmin"), getu(p, "Lmax"));
  const auto w = necessity_witness_power(k, lambda, getd(p, "invp"), getd(p, "invq"), getd(p, "gamma"), Ls);
  Json rows = Json::array();
  out.csv.push_back({"L", "inputNorm", "outputNorm", "ratio"});
  for (const auto& r : w.rows) {
    rows.push_back({{"L", r.length}, {"inputNorm", num(r.input_norm)}, {"outputNorm", num(r.output_norm)},
                    {"ratio", num(r.ratio)}});
    out.csv.push_back({std::to_string(r.length), format_double(round15(r.input_norm)),
                       format_double(round15(r.output_norm)), format_double(round15(r.ratio))});
  }
  out.json = {{"command", "operator"}, {"mode", mode}, {"k", k}, {"lambda", num(lambda)}, {"invP", num(w.inv_p)},
              {"invQ", num(w.inv_q)}, {"gamma", num(w.gamma)}, {"rows", rows},
              {"strictlyIncreasing", w.strictly_increasing}, {"lastIncrement", num(w.last_increment)},
              {"stabilizes", w.stabilizes}};
  return out;
}

Json rational(const std::optional<Rational>& r) {
  if (!r) return Json();
  return {{"exact", to_string(*r)}, {"value", num(to_double(*r))}};
}

Output regions(const ExperimentConfig& config) {
  const auto& p = config.params;
  const int k = geti(p, "k");
  const bool asymptotic = p.at("asymptotic").get<bool>();
  RegionOptions options;
  options.asymptotic_g_tilde = asymptotic;
  if (geti(p, "sk") > 0) options.s_k = geti(p, "sk");
  Output out;
  if (gets(p, "mode") == "catalogue") {
    const auto cat = threshold_catalogue(geti(p, "kmax"), asymptotic);
    Json rows = Json::array();
    out.csv.push_back({"k", "lambda1", "lambda2", "lambda3", "theorem1Gate", "lambdaStar", "theorem3Gate",
                       "gTilde", "theorem4Gate", "theorem2S"});
    for (const auto& r : cat.rows) {
      rows.push_back({{"k", r.k}, {"lambda1", rational(r.lambda1)}, {"lambda2", num(r.lambda2)},
                      {"lambda3", num(r.lambda3)}, {"lambda3Asymptotic", num(r.lambda3_asymptotic)},
                      {"theorem1Gate", num(r.theorem1_gate)}, {"theorem1Source", r.theorem1_source},
                      {"lambdaStar", rational(r.lambda_star)}, {"dyadicS", r.dyadic_s}, {"delta", rational(r.delta)},
                      {"kStarExponent", rational(r.k_star_exponent)}, {"theorem3Gate", rational(r.theorem3_gate)},
                      {"gTilde", r.g_tilde ? Json(*r.g_tilde) : Json()}, {"gTildeAsymptotic", r.g_tilde_asymptotic},
                      {"theorem4Gate", rational(r.theorem4_gate)}, {"theorem2S", r.theorem2_s}});
      out.csv.push_back({std::to_string(r.k), to_string(r.lambda1), format_double(round15(r.lambda2)),
                         format_double(round15(r.lambda3)), format_double(round15(r.theorem1_gate)),
                         to_string(r.lambda_star), to_string(r.theorem3_gate),
                         r.g_tilde ? std::to_string(*r.g_tilde) : "", r.theorem4_gate ? to_string(*r.theorem4_gate) : "",
                         std::to_string(r.theorem2_s)});
    }
    out.json = {{"command", "regions"}, {"mode", "catalogue"}, {"kMax", cat.k_max}, {"rows", rows}};
    return out;
  }
  const double lambda = getd(p, "lambda");
  const auto grid = getu(p, "grid");
  const bool thm4_available = asymptotic || g_tilde_table(k).has_value();
  const Statement statements[] = {Statement::conjecture, Statement::theorem1, Statement::theorem2,
                                  Statement::theorem3, Statement::theorem4};
  out.csv.push_back({"invP", "invQ", "lambda", "conjecture", "thm1", "thm2", "thm3", "thm4"});
  Json rows = Json::array();
  for (std::uint64_t i = 0; i < grid; ++i) {
    for (std::uint64_t jq = 0; jq < grid; ++jq) {
      RegionQuery q{k, lambda, (double(i) + 0.5) / double(grid), (double(jq) + 0.5) / double(grid)};
      Json row = {{"invP", num(q.inv_p)}, {"invQ", num(q.inv_q)}, {"lambda", num(lambda)}};
      std::vector<std::string> line = {format_double(round15(q.inv_p)), format_double(round15(q.inv_q)),
                                       format_double(round15(lambda))};
      for (const auto st : statements) {
        const bool inside =
            (st == Statement::theorem4 && !thm4_available) ? false : region_predicate(st, q, options).inside;
        row[std::string(to_string(st))] = inside;
        line.push_back(inside ? "1" : "0");
      }
      rows.push_back(row);
      out.csv.push_back(line);
    }
  }
  Json gates = Json::object();
  const RegionQuery probe{k, lambda, 0.5, 0.5};
  for (const auto st : statements) {
    if (st == Statement::theorem4 && !thm4_available) {
      gates[std::string(to_string(st))] = Json();
      continue;
    }
    gates[std::string(to_string(st))] = num(region_predicate(st, probe, options).lambda_gate);
  }
  out.json = {{"command", "regions"}, {"mode", "map"}, {"k", k}, {"lambda", num(lambda)}, {"grid", grid},
              {"gates", gates}, {"theorem4Available", thm4_available}, {"rows", rows}};
  return out;
}

Output fit(const ExperimentConfig& config) {
  const auto& p = config.params;
  if (p.at("input").is_null()) throw InvalidArgument("fit needs --input <csv>");
  const std::string path = gets(p, "input");
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected N,value");
    char* end = nullptr;
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    const double x = std::strtod(a.c_str(), &end);
    const bool x_ok = end != a.c_str() && *end == '\0';
    const double y = std::strtod(b.c_str(), &end);
    const bool y_ok = end != b.c_str() && *end == '\0';
    if (!x_ok || !y_ok) {
      if (lineno == 1) continue;  // header
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": not numeric");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  const auto f = growth_exponent_fit(xs, ys);
  Output out;
  out.json = {{"command", "fit"}, {"slope", num(f.slope)}, {"intercept", num(f.intercept)},
              {"rSquared", num(f.r_squared)}, {"maxAbsResidual", num(f.max_abs_residual)}, {"points", f.points}};
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Output audit(const ExperimentConfig& config) {
  const auto& p = config.params;
  const auto name = gets(p, "name");
  const int s = geti(p, "s");
  const int k = geti(p, "k");
  Json j = {{"command", "audit"}, {"name", name}};
  if (name == "parseval") {
    const auto X = getu(p, "X");
    const BigInt lattice = lattice_mean_value(s, k, X);
    const double quad = mean_value_quadrature(s, k, X);
    const double ld = lattice.convert_to<double>();
    j.update({{"s", s}, {"k", k}, {"X", X}, {"lattice", big(lattice)}, {"quadrature", num(quad)},
              {"pass", std::abs(quad - ld) <= 1e-9 * ld}});
  } else if (name == "gauss") {
    double worst = 0.0;
    std::uint64_t primes = 0;
    for (std::uint64_t q = 3; q <= getu(p, "qmax"); ++q) {
      if (!is_prime(q)) continue;
      ++primes;
      for (std::uint64_t a = 1; a < q; ++a) {
        worst = std::max(worst, std::abs(std::abs(weyl_sum_complete(ReducedFraction(a, q), 2)) - std::sqrt(double(q))));
      }
    }
    j.update({{"qmax", getu(p, "qmax")}, {"primes", primes}, {"maxDeviation", num(worst)}, {"pass", worst <= 1e-9}});
  } else if (name == "weyl-bound") {
    const auto a = classical_bound_audit(k, getu(p, "qmax"));
    Json rows = Json::array();
    for (const auto& r : a.per_q_maxima)
      rows.push_back({{"q", r.q}, {"a", r.a}, {"magnitude", num(r.magnitude)}, {"ratio", num(r.ratio)}});
    j.update({{"k", k}, {"qmax", a.q_max}, {"maxRatio", num(a.max_ratio)}, {"perQ", rows}});
  } else if (name == "mstar") {
    const auto a = mstar_disjointness_audit(getu(p, "qmax"));
    Json ce;
    if (a.counterexample) {
      ce = {{"first", {a.counterexample->first.a(), a.counterexample->first.q()}},
            {"second", {a.counterexample->second.a(), a.counterexample->second.q()}}};
    }
    j.update({{"qmax", getu(p, "qmax")}, {"pass", a.pass}, {"pairsChecked", a.pairs_checked}, {"counterexample", ce}});
  } else if (name == "mellin") {
    double worst = 0.0;
    Json rows = Json::array();
    for (const int kk : {1, 2, 3}) {
      for (const double lam : {0.2, 0.5, 0.9}) {
        for (const std::uint64_t n : {1ULL, 10ULL, 1000ULL}) {
          const auto c = mellin_identity_check(kk, lam, n);
          const double rel = std::abs(c.lhs - c.rhs) / c.lhs;
          worst = std::max(worst, rel);
          rows.push_back({{"k", kk}, {"lambda", num(lam)}, {"n", n}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)},
                          {"relativeError", num(rel)}});
        }
      }
    }
    j.update({{"rows", rows}, {"maxRelativeError", num(worst)}, {"pass", worst <= 1e-9}});
  } else if (name == "theta-parseval") {
    const double y = getd(p, "y");
    const auto t = theta_parseval(s, k, y);
    const double rel = std::abs(t.integral - t.series) / t.series;
    j.update({{"s", s}, {"k", k}, {"y", num(y)}, {"terms", t.terms}, {"integral", num(t.integral)},
              {"series", num(t.series)}, {"relativeError", num(rel)}, {"pass", rel <= 1e-9}});
  } else if (name == "coefficients") {
    const double lambda = getd(p, "lambda");
    const auto rows = coefficient_bound_audit(s, k, lambda, getu(p, "L"));
    bool all = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      all = all && r.holds;
      if (r.representations > 0) min_margin = std::min(min_margin, r.coefficient - r.lower_bound);
    }
    j.update({{"s", s}, {"k", k}, {"lambda", num(lambda)}, {"L", getu(p, "L")}, {"minMargin", num(min_margin)},
              {"pass", all}});
  } else {
    std::mt19937_64 gen(config.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    const auto count = getu(p, "signals");
    for (std::uint64_t t = 0; t < count; ++t) {
      const int kk = 2 + int(t % 2);
      const double lam = (t / 2) % 2 == 0 ? 0.6 : 0.9;
      SignalVector f{0, std::vector<Complex>(64)};
      for (auto& v : f.values) v = Complex(u(gen), u(gen));
      const std::uint64_t M = 9;
      const auto g = apply_operator(kk, lam, f, M);
      for (std::uint64_t i = 0; i < 128; ++i) {
        const auto theta = Frequency::rational(i, 128);
        worst = std::max(worst, std::abs(dft(g, theta) - multiplier_truncated(kk, lam, theta, M).value * dft(f, theta)));
      }
    }
    j.update({{"signals", count}, {"seed", config.seed}, {"maxError", num(worst)}, {"pass", worst <= 1e-8}});
  }
  Output out;
  out.json = j;
  return out;
}

Output dispatch(const ExperimentConfig& config) {
  static const std::map<std::string, std::function<Output(const ExperimentConfig&)>> handlers = {
      {"counts", counts},     {"meanvalue", meanvalue}, {"quadrature", quadrature}, {"multiplier", multiplier},
      {"arcs", arcs},         {"operator", operator_command}, {"regions", regions}, {"fit", fit},
      {"audit", audit},
  };
  const auto it = handlers.find(config.command);
  if (it == handlers.end()) throw InvalidArgument("command '" + config.command + "' produces no report");
  return it->second(config);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      line += '"';
      for (const char ch : c) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      line += '"';
    } else {
      line += c;
    }
  }
  return line + "\n";
}

}  // namespace

std::string render(const ExperimentConfig& config) {
  if (config.threads > 0) set_worker_count(config.threads);
  Output out = dispatch(config);
  std::string text;
  if (config.format == "csv") {
    if (out.csv.empty()) {
      out.csv.push_back({"key", "value"});
      for (const auto& [key, value] : out.json.items()) {
        if (value.is_primitive()) out.csv.push_back({key, cell(value)});
      }
    }
    for (const auto& row : out.csv) text += csv_line(row);
    return text;
  }
  if (out.json_lines) {
    for (const auto& line : out.json) text += line.dump() + "\n";
    return text;
  }
  return out.json.dump(2) + "\n";
}

}  // namespace weyllab::app
