// diraclab command-line front end.
//
//   diraclab <experiment> --config cfg.json [--out DIR] [--seed N]
//                         [--tolerance X]
//   diraclab run --config cfg.json      (experiment taken from the config)
//   diraclab conventions                (print the convention ledger)
//
// Exit codes: 0 success, 1 configuration/usage error, 2 a verification
// suite exceeded its tolerance.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "diraclab/conventions.hpp"
#include "diraclab/run_config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

int run_with(const CommonOptions& opts, const std::optional<std::string>& subcommand) {
  using nlohmann::json;
  namespace fs = std::filesystem;

  const auto started = std::chrono::system_clock::now();
  const auto tick = std::chrono::steady_clock::now();

  std::ifstream in(opts.config_path);
  if (!in) {
    std::cerr << "config error: cannot open '" << opts.config_path << "'\n";
    return 1;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  if (subcommand) {
    if (!doc.contains("experiment"))
      doc["experiment"] = *subcommand;
    else if (doc.at("experiment") != *subcommand) {
      std::cerr << "config error at $.experiment: config says '"
                << doc.at("experiment").get<std::string>()
                << "' but the subcommand is '" << *subcommand << "'\n";
      return 1;
    }
  }
  if (opts.out_dir) doc["out"] = *opts.out_dir;
  if (opts.seed) doc["seed"] = *opts.seed;
  if (opts.tolerance) doc["tolerance"] = *opts.tolerance;

  diraclab::RunArtifacts artifacts;
  std::string out_dir;
  try {
    const diraclab::RunConfig config = diraclab::parse_run_config(doc);
    out_dir = config.out_dir;
    artifacts = diraclab::run_experiment(config);
  } catch (const diraclab::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  diraclab::write_artifacts(artifacts, out_dir);

  // Timestamps stay out of result.json so records are reproducible.
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - tick;
  const std::time_t stamp = std::chrono::system_clock::to_time_t(started);
  char stamp_text[32] = {};
  std::strftime(stamp_text, sizeof stamp_text, "%Y-%m-%dT%H:%M:%SZ",
                std::gmtime(&stamp));
  json meta = {{"timestamp_utc", stamp_text}, {"elapsed_seconds", elapsed.count()}};
  std::ofstream meta_out(fs::path(out_dir) / "run_meta.json", std::ios::binary);
  meta_out << meta.dump(2) << "\n";

  std::cout << artifacts.result.at("experiment").get<std::string>() << ": wrote "
            << (fs::path(out_dir) / "result.json").string()
            << (artifacts.table ? " and table.csv" : "") << "\n";
  return artifacts.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Dirac neutral particles with induced "
               "and permanent dipole moments"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "phase", "verify", "potential", "diagnose-factorization", "sweep"};

  CommonOptions opts;
  std::vector<CLI::App*> subs;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sub->add_option("--seed", opts.seed, "RNG seed (overrides config)");
    sub->add_option("--tolerance", opts.tolerance,
                    "verification gate (overrides config)");
    subs.push_back(sub);
  };

  for (const std::string& name : experiments)
    add_common(app.add_subcommand(name, "run the " + name + " experiment"));
  add_common(app.add_subcommand("run", "experiment kind taken from the config"));
  CLI::App* conventions =
      app.add_subcommand("conventions", "print the convention ledger and hash");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (conventions->parsed()) {
    std::cout << diraclab::conventions_text()
              << "hash: fnv1a64:" << diraclab::conventions_hash_hex() << "\n";
    return 0;
  }
  for (CLI::App* sub : subs)
    if (sub->parsed()) {
      const std::string name = sub->get_name();
      return run_with(opts, name == "run" ? std::nullopt
                                          : std::optional<std::string>(name));
    }
  return 1;
}
