#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "profinite/cli/report.hpp"

namespace {

using profinite::Errc;
using profinite::Error;
using namespace profinite::cli;

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
  bool timings = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Scenario file (JSON); defaults apply when omitted");
  cmd->add_option("--seed", o.seed, "Override the scenario seed");
  cmd->add_option("--out", o.out, "Write the report here instead of standard output");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(Errc::ConfigInvalid, "cannot open output file " + o.out);
  f << text;
}

std::string render_json(const Scenario& s, const std::string& command, nlohmann::json body) {
  return make_report(s, command, std::move(body)).dump(2) + "\n";
}

Scenario load(const Options& o) {
  Scenario s = o.config.empty() ? default_scenario() : load_scenario(o.config);
  if (o.seed) s.seed = *o.seed;
  return s;
}

int run_verify_command(const Options& o) {
  const auto s = load(o);
  const auto results = run_verify(s, RunOptions{o.jobs, o.timings});
  emit(o, o.format == "csv" ? verify_csv(results) : render_json(s, "verify", verify_body(results)));
  for (const auto& r : results) {
    if (r.status != CheckStatus::Fail) continue;
    std::cerr << "invariant violation in " << r.name << ": " << r.witness.value("law", "unknown law") << "\n";
  }
  return all_passed(results) ? 0 : kExitViolation;
}

int run_demo(const Options& o, const std::string& command) {
  const auto s = load(o);
  nlohmann::json body;
  if (command == "diff-tower") {
    body = diff_tower_body(s);
    if (o.format == "csv") return emit(o, diff_tower_csv(body)), 0;
  } else if (command == "loop-table") {
    body = loop_table_body(s);
    if (o.format == "csv") return emit(o, loop_table_csv(body)), 0;
  } else if (command == "complete") {
    body = complete_body(s);
    if (o.format == "csv") return emit(o, complete_csv(body)), 0;
  } else if (command == "report") {
    body = summary_body(s);
    if (o.format == "csv") throw Error(Errc::ConfigInvalid, "report has no CSV form");
  } else {
    throw Error(Errc::UnknownCommand, command);
  }
  emit(o, render_json(s, command, std::move(body)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-level computations with profinite towers over Z_p"};
  app.require_subcommand(1);
  Options o;
  auto* verify = app.add_subcommand("verify", "Run every invariant suite at the scenario parameters");
  add_common(verify, o);
  verify->add_option("--jobs", o.jobs, "Worker threads; the report does not depend on it")
      ->check(CLI::Range(1u, 256u));
  verify->add_flag("--timings", o.timings, "Add per-check wall time (makes reports nondeterministic)");
  for (const char* name : {"diff-tower", "loop-table", "complete", "report"}) {
    add_common(app.add_subcommand(name, std::string("Emit the ") + name + " demonstration"), o);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return command == "verify" ? run_verify_command(o) : run_demo(o, command);
  } catch (const Error& e) {
    // Invariant failures are reported through the verify results; anything thrown here means the
    // scenario cannot be run as configured.
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
