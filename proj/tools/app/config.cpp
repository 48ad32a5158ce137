#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "app.hpp"
#include "params.hpp"
#include "weyllab/error.hpp"
#include "weyllab/format.hpp"

#ifndef WEYLLAB_VERSION
#define WEYLLAB_VERSION "0.0.0"
#endif

namespace weyllab::app {
namespace {

constexpr double kU32 = 4294967295.0;

ParamSpec integer(std::string name, std::int64_t fallback, double lo, double hi, std::string help) {
  return {std::move(name), ParamKind::integer, Json(fallback), lo, hi, false, {}, std::move(help)};
}

ParamSpec real(std::string name, double fallback, double lo, double hi, bool open, std::string help) {
  return {std::move(name), ParamKind::real, Json(fallback), lo, hi, open, {}, std::move(help)};
}

ParamSpec optional_real(std::string name, double lo, double hi, std::string help) {
  return {std::move(name), ParamKind::real, Json(), lo, hi, false, {}, std::move(help)};
}

ParamSpec choice(std::string name, std::string fallback, std::vector<std::string> choices, std::string help) {
  return {std::move(name), ParamKind::text, Json(std::move(fallback)), 0, 0, false, std::move(choices), std::move(help)};
}

ParamSpec flag(std::string name, std::string help) {
  return {std::move(name), ParamKind::flag, Json(false), 0, 0, false, {}, std::move(help)};
}

const std::map<std::string, std::vector<ParamSpec>>& table() {
  static const std::map<std::string, std::vector<ParamSpec>> specs = {
      {"counts",
       {integer("s", 2, 1, 16, "number of summands"), integer("k", 3, 1, 32, "power"),
        integer("N", 2000, 1, 134217727, "largest represented integer"),
        integer("bound", 0, 0, kU32, "bound on each part (0 = none)")}},
      {"meanvalue",
       {integer("s", 2, 1, 16, "number of summands"), integer("k", 3, 1, 32, "power"),
        integer("N", 65536, 4, 134217727, "largest N in the sweep"),
        integer("Nmin", 256, 1, 134217727, "smallest N; the sweep doubles from here")}},
      {"quadrature",
       {integer("s", 2, 1, 8, "number of summands"), integer("k", 2, 1, 8, "power"),
        integer("X", 4, 1, 1000000, "box size")}},
      {"multiplier",
       {choice("mode", "profile", {"profile", "point", "major"}, "what to evaluate"),
        integer("k", 3, 1, 16, "power"), real("lambda", 0.9, 0, 1, true, "decay exponent"),
        real("theta", 0.25, 0, 1, false, "frequency for mode=point"),
        integer("N", 65536, 1, 1073741824, "truncation for mode=point"),
        integer("grid", 4096, 1, 16777216, "sample count for mode=profile"),
        integer("truncN", 65536, 2, 16777216, "truncation for mode=profile"),
        {"exponents", ParamKind::real_list, Json("2,4,8"), 1, 1e6, false, {}, "comma separated u values"},
        integer("a", 1, 0, kU32, "numerator for mode=major"), integer("q", 3, 1, kU32, "denominator for mode=major"),
        real("alpha", 0.0, -0.5, 0.5, false, "offset from a/q for mode=major"),
        integer("j", 8, 0, 40, "dyadic block for mode=major")}},
      {"arcs",
       {choice("mode", "enumerate", {"enumerate", "classify"}, "enumerate arcs or classify theta"),
        integer("k", 3, 1, 16, "power"), real("lambda", 0.9, 0, 1, true, "decay exponent"),
        integer("j", 12, 0, 200, "dyadic scale (classify sweeps 0..j)"),
        choice("preset", "default", {"default", "stein-wainger"}, "parameter preset"),
        optional_real("beta", 0, 1e3, "override beta"), optional_real("beta0", 0, 1e3, "override beta0"),
        optional_real("beta1", 0, 1e3, "override beta1"), flag("allow_violations", "run with violated constraints"),
        real("theta", 0.5, 0, 1, false, "frequency for mode=classify")}},
      {"operator",
       {choice("mode", "power", {"power", "delta", "apply"}, "witness family"), integer("k", 2, 1, 16, "power"),
        real("lambda", 0.7, 0, 1, true, "decay exponent"), real("invp", 0.4, 0, 1, false, "1/p"),
        real("invq", 0.25, 0, 1, false, "1/q (0 means infinity)"), real("gamma", 0.45, 0, 1, false, "witness decay"),
        integer("Lmin", 1024, 2, 134217727, "first window length"),
        integer("Lmax", 65536, 2, 134217727, "last window length"), real("q", 2.0, 1, 1e6, false, "q for mode=delta"),
        integer("Mmax", 1048576, 64, 4294967296.0, "largest M for mode=delta"),
        integer("M", 4, 1, 65536, "truncation for mode=apply")}},
      {"regions",
       {choice("mode", "map", {"map", "catalogue"}, "region map or threshold table"),
        integer("k", 3, 2, 60, "power"), real("lambda", 0.85, 0, 1, true, "decay exponent"),
        integer("grid", 64, 1, 1024, "cells per axis"), integer("kmax", 12, 2, 60, "last k in the catalogue"),
        flag("asymptotic", "use the asymptotic G~ formula beyond the table"),
        integer("sk", 0, 0, 64, "s_k for thm2 (0 = default)")}},
      {"fit", {{"input", ParamKind::text, Json(), 0, 0, false, {}, "CSV file with columns N,value"}}},
      {"audit",
       {choice("name", "parseval",
               {"parseval", "gauss", "weyl-bound", "mstar", "mellin", "theta-parseval", "coefficients", "consistency"},
               "which audit"),
        integer("s", 2, 1, 8, "number of summands"), integer("k", 2, 1, 8, "power"), integer("X", 2, 1, 1000, "box size"),
        integer("qmax", 97, 2, 4096, "largest denominator"), real("lambda", 0.7, 0, 1, true, "decay exponent"),
        real("y", 0.1, 1e-4, 10, false, "theta kernel parameter"), integer("L", 400, 1, 4194304, "coefficient range"),
        integer("signals", 10, 1, 1000, "random signals for consistency")}},
      {"cache", {}},
  };
  return specs;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_real(const std::string& name, const std::string& raw) {
  const std::string text = trimmed(raw);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw InvalidArgument("parameter " + name + ": not a finite number: '" + raw + "'");
  }
  return v;
}

Json coerce(const ParamSpec& spec, const Json& raw) {
  const std::string& name = spec.name;
  switch (spec.kind) {
    case ParamKind::integer: {
      std::int64_t v = 0;
      if (raw.is_number_integer()) {
        v = raw.get<std::int64_t>();
      } else if (raw.is_string()) {
        const std::string text = trimmed(raw.get<std::string>());
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
          throw InvalidArgument("parameter " + name + ": not an integer: '" + raw.get<std::string>() + "'");
        }
      } else {
        throw InvalidArgument("parameter " + name + ": expected an integer");
      }
      if (double(v) < spec.lo || double(v) > spec.hi) {
        throw InvalidArgument("parameter " + name + " = " + std::to_string(v) + " outside [" +
                              format_double(spec.lo) + ", " + format_double(spec.hi) + "]");
      }
      return Json(v);
    }
    case ParamKind::real: {
      double v = 0;
      if (raw.is_number()) {
        v = raw.get<double>();
      } else if (raw.is_string()) {
        v = parse_real(name, raw.get<std::string>());
      } else {
        throw InvalidArgument("parameter " + name + ": expected a number");
      }
      const bool ok = spec.open_interval ? (v > spec.lo && v < spec.hi) : (v >= spec.lo && v <= spec.hi);
      if (!ok) {
        throw InvalidArgument("parameter " + name + " = " + format_double(v) + " outside " +
                              (spec.open_interval ? "(" : "[") + format_double(spec.lo) + ", " +
                              format_double(spec.hi) + (spec.open_interval ? ")" : "]"));
      }
      return Json(v);
    }
    case ParamKind::text: {
      if (!raw.is_string()) throw InvalidArgument("parameter " + name + ": expected a string");
      const auto v = raw.get<std::string>();
      if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), v) == spec.choices.end()) {
        std::string allowed;
        for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + c;
        throw InvalidArgument("parameter " + name + " = '" + v + "' not one of: " + allowed);
      }
      return Json(v);
    }
    case ParamKind::flag: {
      if (raw.is_boolean()) return raw;
      if (raw.is_string()) {
        const auto v = trimmed(raw.get<std::string>());
        if (v == "true" || v == "1" || v == "yes") return Json(true);
        if (v == "false" || v == "0" || v == "no") return Json(false);
      }
      throw InvalidArgument("parameter " + name + ": expected true or false");
    }
    case ParamKind::real_list: {
      Json out = Json::array();
      std::vector<Json> items;
      if (raw.is_array()) {
        items.assign(raw.begin(), raw.end());
      } else if (raw.is_string()) {
        std::stringstream ss(raw.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) items.emplace_back(item);
      } else {
        throw InvalidArgument("parameter " + name + ": expected a comma separated list");
      }
      if (items.empty()) throw InvalidArgument("parameter " + name + ": empty list");
      for (const auto& item : items) {
        const double v = item.is_number() ? item.get<double>()
                         : item.is_string() ? parse_real(name, item.get<std::string>())
                                            : throw InvalidArgument("parameter " + name + ": bad list entry");
        if (v < spec.lo || v > spec.hi) throw InvalidArgument("parameter " + name + ": entry out of range");
        out.push_back(v);
      }
      return out;
    }
  }
  throw InvalidArgument("parameter " + name);
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<ParamSpec>& command_parameters(const std::string& command) {
  const auto it = table().find(command);
  if (it == table().end()) throw InvalidArgument("unknown command '" + command + "'");
  return it->second;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<std::string> parameter_names(const std::string& command) {
  std::vector<std::string> out;
  for (const auto& spec : command_parameters(command)) out.push_back(spec.name);
  return out;
}

ExperimentConfig make_config(const std::string& command, const Json& flags, const Json& file) {
  const auto& specs = command_parameters(command);
  ExperimentConfig config;
  config.command = command;

  Json from_file = Json::object();
  if (!file.is_null()) {
    if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key == "command") {
        if (!value.is_string() || value.get<std::string>() != command) {
          throw InvalidArgument("config file is for command '" + value.dump() + "', not '" + command + "'");
        }
      } else if (key == "params") {
        if (!value.is_object()) throw InvalidArgument("config 'params' must be an object");
        for (const auto& [pk, pv] : value.items()) from_file[pk] = pv;
      } else if (key == "format" || key == "output" || key == "cache_dir" || key == "seed" || key == "threads" ||
                 key == "use_cache") {
        continue;
      } else {
        from_file[key] = value;
      }
    }
    if (file.contains("format")) config.format = file.at("format").get<std::string>();
    if (file.contains("output")) config.output = file.at("output").get<std::string>();
    if (file.contains("cache_dir")) config.cache_dir = file.at("cache_dir").get<std::string>();
    if (file.contains("use_cache")) config.use_cache = file.at("use_cache").get<bool>();
    if (file.contains("seed")) config.seed = file.at("seed").get<std::uint64_t>();
    if (file.contains("threads")) config.threads = file.at("threads").get<std::size_t>();
  }

  auto known = [&](const std::string& key) {
    return std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == key; });
  };
  for (const Json* source : std::initializer_list<const Json*>{&from_file, &flags}) {
    if (source->is_null()) continue;
    for (const auto& [key, _] : source->items()) {
      if (!known(key)) throw InvalidArgument("unknown parameter '" + key + "' for command " + command);
    }
  }

  for (const auto& spec : specs) {
    Json raw = spec.fallback;
    if (from_file.contains(spec.name)) raw = from_file.at(spec.name);
    if (!flags.is_null() && flags.contains(spec.name)) raw = flags.at(spec.name);
    config.params[spec.name] = raw.is_null() ? Json() : coerce(spec, raw);
  }
  if (config.format != "json" && config.format != "csv") {
    throw InvalidArgument("format must be json or csv, got '" + config.format + "'");
  }
  if (config.cache_dir.empty()) config.cache_dir = default_cache_dir();
  return config;
}

Json ExperimentConfig::snapshot() const {
  Json out = Json::object();
  out["command"] = command;
  out["params"] = params;
  out["format"] = format;
  out["seed"] = seed;
  out["use_cache"] = use_cache;
  return out;
}

Json RunManifest::to_json() const {
  Json out = Json::object();
  out["version"] = version;
  out["config"] = config;
  out["started"] = started;
  out["finished"] = finished;
  Json files = Json::array();
  for (const auto& o : outputs) files.push_back(Json{{"path", o.path}, {"bytes", o.bytes}, {"sha256", o.sha256}});
  out["outputs"] = files;
  return out;
}

RunManifest run(const ExperimentConfig& config) {
  RunManifest manifest;
  manifest.version = version_tag();
  manifest.config = config.snapshot();
  manifest.started = iso_now();
  const std::string content = render(config);
  if (config.output.empty() || config.output == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    manifest.outputs.push_back({"-", content.size(), sha256_hex(content)});
  } else {
    write_atomically(config.output, content);
    manifest.outputs.push_back({config.output, content.size(), sha256_hex(content)});
  }
  manifest.finished = iso_now();
  return manifest;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CacheCorruption*>(&e) || dynamic_cast<const CorruptData*>(&e)) return kExitCorrupt;
  if (dynamic_cast<const BudgetExceeded*>(&e)) return kExitBudget;
  if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kExitInvalid;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitInvalid;
  return kExitFailure;
}

std::string version_tag() { return "weyllab " WEYLLAB_VERSION; }

}  // namespace weyllab::app
