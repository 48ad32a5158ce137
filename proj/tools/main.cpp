#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "app/app.hpp"
#include "app/params.hpp"
#include "weyllab/error.hpp"

using weyllab::app::Json;

namespace {

struct Common {
  std::string config_path;
  std::string output;
  std::string format;
  std::string cache_dir;
  std::string manifest;
  bool no_cache = false;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t threads = 0;
};

Json read_config(const std::string& path) {
  if (path.empty()) return Json();
  std::ifstream in(path);
  if (!in) throw weyllab::InvalidArgument("cannot read config file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw weyllab::InvalidArgument("config file " + path + ": " + e.what());
  }
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "JSON config file (flags override it)");
  app->add_option("-o,--output", c.output, "output file (default stdout)");
  app->add_option("--format", c.format, "json or csv");
  app->add_option("--cache-dir", c.cache_dir, "count table cache directory");
  app->add_option("--manifest", c.manifest, "run manifest path (default <output>.manifest.json)");
  app->add_flag("--no-cache", c.no_cache, "neither read nor write the count cache");
  app->add_option("--seed", c.seed, "seed for randomized audits")->each([&c](const std::string&) { c.seed_given = true; });
  app->add_option("--threads", c.threads, "worker threads (0 = hardware)");
}

int execute(const std::string& command, const std::map<std::string, std::string>& given, const Common& c) {
  Json flags = Json::object();
  for (const auto& [k, v] : given) flags[k] = v;
  const Json file = read_config(c.config_path);
  auto config = weyllab::app::make_config(command, flags, file);
  if (!c.format.empty()) config.format = c.format;
  if (config.format != "json" && config.format != "csv") throw weyllab::InvalidArgument("format must be json or csv");
  if (!c.output.empty()) config.output = c.output;
  if (!c.cache_dir.empty()) config.cache_dir = c.cache_dir;
  if (c.no_cache) config.use_cache = false;
  if (c.seed_given) config.seed = c.seed;
  if (c.threads) config.threads = c.threads;

  const auto manifest = weyllab::app::run(config);
  std::string manifest_path = c.manifest;
  if (manifest_path.empty() && !config.output.empty() && config.output != "-") {
    manifest_path = config.output + ".manifest.json";
  }
  if (!manifest_path.empty()) weyllab::app::write_atomically(manifest_path, manifest.to_json().dump(2) + "\n");
  return weyllab::app::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts, exponential sums and discrete fractional integration experiments"};
  app.set_version_flag("--version", weyllab::app::version_tag());
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  add_common(&app, common);

  std::map<std::string, std::map<std::string, std::string>> given;
  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::map<std::string, bool>> flag_storage;
  std::map<std::string, CLI::App*> subs;

  for (const auto& command : weyllab::app::command_names()) {
    if (command == "cache") continue;
    auto* sub = app.add_subcommand(command, "run the " + command + " experiment");
    sub->fallthrough();
    subs[command] = sub;
    for (const auto& spec : weyllab::app::command_parameters(command)) {
      const std::string flag = "--" + spec.name;
      std::string help = spec.help;
      if (!spec.fallback.is_null()) help += " [default " + (spec.fallback.is_string() ? spec.fallback.get<std::string>() : spec.fallback.dump()) + "]";
      if (spec.kind == weyllab::app::ParamKind::flag) {
        sub->add_flag(flag, flag_storage[command][spec.name], help);
      } else {
        const char* type = spec.kind == weyllab::app::ParamKind::integer ? "INT"
                           : spec.kind == weyllab::app::ParamKind::real    ? "REAL"
                           : spec.kind == weyllab::app::ParamKind::real_list ? "LIST"
                                                                              : "TEXT";
        sub->add_option(flag, storage[command][spec.name], help)->type_name(type);
      }
    }
  }
  auto* cache = app.add_subcommand("cache", "manage the count table cache");
  auto* clear = cache->add_subcommand("clear", "remove every cached table");
  cache->require_subcommand(1);
  cache->fallthrough();
  clear->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : weyllab::app::kExitInvalid;
  }

  try {
    if (clear->parsed()) {
      const auto dir = common.cache_dir.empty() ? weyllab::app::default_cache_dir() : std::filesystem::path(common.cache_dir);
      const auto n = weyllab::app::clear_cache(dir);
      std::cout << "removed " << n << " cached table(s) from " << dir.string() << "\n";
      return weyllab::app::kExitOk;
    }
    for (const auto& [command, sub] : subs) {
      if (!sub->parsed()) continue;
      std::map<std::string, std::string> values;
      for (const auto& spec : weyllab::app::command_parameters(command)) {
        if (sub->count("--" + spec.name) == 0) continue;
        values[spec.name] = spec.kind == weyllab::app::ParamKind::flag
                                ? (flag_storage[command][spec.name] ? "true" : "false")
                                : storage[command][spec.name];
      }
      return execute(command, values, common);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return weyllab::app::exit_code_for(e);
  }
  return weyllab::app::kExitInvalid;
}
