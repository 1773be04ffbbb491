// Command-line front end for the exact Cartan workbench.
//
// Subcommands mirror the library scenarios one to one:
//   validate        structural audit of a config (group, cocycle, subgroups)
//   check-cartan    full hypothesis audit for one subgroup
//   weyl            groupoid action, cocycle, and closed-form cross-checks
//   counterexample  commutant probe against the declared subalgebra
//   reproduce       pinned end-to-end suite over the builtin configs
//
// Exit codes: 0 all checks pass, 1 some check failed or was inconclusive,
// 2 usage or configuration error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cartan/config.hpp"
#include "cartan/scenarios.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::string subgroup;
  int ball = -1;
  int kmax = -1;
  long long samples = -1;
  long long seed = -1;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts* o, bool wants_subgroup) {
  cmd->add_option("--config", o->config,
                  "config file path or builtin id (g5, g5mod4, rotation)")
      ->required();
  if (wants_subgroup)
    cmd->add_option("--subgroup", o->subgroup,
                    "subgroup name from the config (default: first declared)");
  cmd->add_option("--ball", o->ball, "override word-length ball radius")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kmax", o->kmax, "override centralizing depth bound")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", o->samples, "override randomized sample count")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o->seed, "override RNG seed")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", o->format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
}

cartan::WorkbenchConfig load_with_overrides(const CommonOpts& o) {
  cartan::WorkbenchConfig cfg = cartan::load_config(o.config);
  if (o.ball > 0) cfg.ball_radius = o.ball;
  if (o.kmax > 0) cfg.k_max = o.kmax;
  if (o.samples >= 0) cfg.samples = o.samples;
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  return cfg;
}

std::string pick_subgroup(const cartan::WorkbenchConfig& cfg, const CommonOpts& o) {
  return o.subgroup.empty() ? cfg.first_subgroup_name() : o.subgroup;
}

cartan::ReportFormat fmt(const CommonOpts& o) {
  return o.format == "text" ? cartan::ReportFormat::kText : cartan::ReportFormat::kJson;
}

int emit_and_code(const cartan::Report& rep, const CommonOpts& o) {
  std::cout << cartan::emit_report(rep, fmt(o));
  return cartan::exit_code_for(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic workbench for twisted group algebras"};
  app.require_subcommand(1);

  CommonOpts vo, co, wo, xo;
  std::string repro_format = "json";
  bool force = false;

  CLI::App* validate = app.add_subcommand("validate", "audit a config's structure");
  add_common(validate, &vo, /*wants_subgroup=*/false);

  CLI::App* cartan_cmd =
      app.add_subcommand("check-cartan", "audit the Cartan hypotheses for one subgroup");
  add_common(cartan_cmd, &co, /*wants_subgroup=*/true);

  CLI::App* weyl = app.add_subcommand("weyl", "groupoid action and cocycle checks");
  add_common(weyl, &wo, /*wants_subgroup=*/true);
  weyl->add_flag("--force", force, "run even when the twist is not trivial on the subgroup");

  CLI::App* counter =
      app.add_subcommand("counterexample", "probe the commutant against the subalgebra");
  add_common(counter, &xo, /*wants_subgroup=*/true);

  CLI::App* repro =
      app.add_subcommand("reproduce", "run the pinned suite over the builtin configs");
  repro->add_option("--format", repro_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) {
      auto cfg = load_with_overrides(vo);
      return emit_and_code(cartan::run_validate(cfg), vo);
    }
    if (cartan_cmd->parsed()) {
      auto cfg = load_with_overrides(co);
      return emit_and_code(cartan::run_check_cartan(cfg, pick_subgroup(cfg, co)), co);
    }
    if (weyl->parsed()) {
      auto cfg = load_with_overrides(wo);
      return emit_and_code(cartan::run_weyl(cfg, pick_subgroup(cfg, wo), force), wo);
    }
    if (counter->parsed()) {
      auto cfg = load_with_overrides(xo);
      return emit_and_code(cartan::run_counterexample(cfg, pick_subgroup(cfg, xo)), xo);
    }
    // reproduce
    cartan::Report rep = cartan::run_reproduce();
    std::cout << cartan::emit_report(rep, repro_format == "text"
                                              ? cartan::ReportFormat::kText
                                              : cartan::ReportFormat::kJson);
    return cartan::exit_code_for(rep);
  } catch (const cartan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
