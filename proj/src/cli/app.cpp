#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include "d2dsec/cli/commands.h"
#include "d2dsec/errors.h"

namespace d2dsec::cli {

namespace {

struct Flag {
  const char* name;
  const char* help;
};

// Flag spelling first; Options::set maps it onto the config key.
constexpr Flag kFlags[] = {
    {"--alpha", "path-loss exponent (> 2)"},
    {"--pt", "transmit power"},
    {"--beta-t", "legitimate SNR threshold"},
    {"--beta-e", "eavesdropper SNR threshold"},
    {"--epsilon", "required secure communication probability"},
    {"--sigma2-p", "noise power at the primary receiver"},
    {"--sigma2-s", "noise power at the eavesdropper"},
    {"--lambda-e", "eavesdropper density"},
    {"--d", "transmitter-receiver distance"},
    {"--r-g", "guard-zone radius"},
    {"--gamma", "information power fraction"},
    {"--trials,--mc", "Monte-Carlo trials (accepts 1e6)"},
    {"--seed", "Monte-Carlo seed"},
    {"--threads", "Monte-Carlo worker threads (0 = all cores)"},
    {"--window-radius", "simulation disk radius (default: automatic)"},
    {"--tail-prob", "truncation bound for the automatic window"},
    {"--grid-start", "first grid value"},
    {"--grid-stop", "last grid value (inclusive)"},
    {"--grid-step", "grid spacing"},
    {"--format", "csv or json"},
    {"--out", "output file, '-' for standard output"},
};

struct Command {
  const char* name;
  const char* help;
  CommandResult (*fn)(const RunConfig&);
};

constexpr Command kCommands[] = {
    {"analytic", "closed-form probabilities for one design", cmd_analytic},
    {"optimize", "density threshold and secrecy-constrained optima", cmd_optimize},
    {"select", "guard zone or artificial noise at one distance", cmd_select},
    {"mc-validate", "Monte-Carlo estimates against the closed forms", cmd_mc_validate},
    {"sweep-d", "selection function over a distance grid", cmd_sweep_d},
    {"sweep-lambda", "critical distance over a density grid", cmd_sweep_lambda},
};

void emit(const CommandResult& result, const RunConfig& cfg, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (cfg.output_format == OutputFormat::Json) {
      write_json(result.report, os);
    } else {
      write_csv(result.report, os);
    }
  };
  if (cfg.output_path == "-") {
    write(out);
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.output_path + "'");
  write(file);
  if (!file) throw UsageError("failed writing '" + cfg.output_path + "'");
  if (!result.verdict.empty()) out << result.verdict << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secrecy technique planning for a D2D link among Poisson eavesdroppers", "d2dsec"};
  app.require_subcommand(1, 1);

  Options flags;
  std::string config_path;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "key = value parameter file; flags override it");
    for (const Flag& f : kFlags) {
      const std::string names = f.name;
      const std::string key = names.substr(0, names.find(','));
      sub->add_option_function<std::string>(
          names, [&flags, key](const std::string& v) { flags.set(key, v); }, f.help);
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto selected = app.get_subcommands();
  const std::string name = selected.front()->get_name();
  const auto* command = std::find_if(std::begin(kCommands), std::end(kCommands),
                                     [&](const Command& c) { return name == c.name; });
  try {
    Options merged = config_path.empty() ? Options{} : load_config_file(config_path);
    merged.overlay(flags);
    const RunConfig cfg = make_run_config(merged);
    const CommandResult result = command->fn(cfg);
    emit(result, cfg, out);
    if (result.exit_code == kExitInsufficientData) {
      err << "warning: some estimates had no trials to average over\n";
    }
    if (result.report.summary.contains("nondecreasing") &&
        !result.report.summary["nondecreasing"].get<bool>()) {
      err << "warning: critical distance is not nondecreasing over the density grid\n";
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateDesign& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInsufficientData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace d2dsec::cli
