#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2dsec/errors.h"
#include "d2dsec/model.h"
#include "d2dsec/montecarlo.h"

namespace d2dsec::cli {

/// Bad flags, a malformed config file, or an invalid combination of settings.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

/// Every setting the CLI understands, each optional so that config-file
/// values and flags can be layered.
struct Options {
  std::optional<double> alpha, p_t, beta_t, beta_e, epsilon, sigma2_p, sigma2_s, lambda_e, d;
  std::optional<double> r_g, gamma;
  std::optional<std::uint64_t> trials, seed;
  std::optional<unsigned> threads;
  std::optional<double> window_radius, tail_prob;
  std::optional<double> grid_start, grid_stop, grid_step;
  std::optional<std::string> format, out;

  /// Replaces every field that `higher` sets.
  void overlay(const Options& higher);

  /// Sets the field named `key` (underscores or dashes) from its text form.
  /// Throws UsageError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
};

/// Parses the flat `key = value` config format. Blank lines, `#`/`;`
/// comments and `[section]` headers are allowed; sections only group keys.
Options parse_config_text(std::string_view text);
Options load_config_file(const std::string& path);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// Inclusive of both endpoints. Throws UsageError unless the grid is
  /// finite, non-empty and strictly increasing.
  std::vector<double> points() const;
};

struct RunConfig {
  SystemParams params;
  bool has_d = false;
  std::optional<double> r_g;
  std::optional<double> gamma;
  mc::TrialConfig trials;
  bool trials_given = false;
  std::optional<Grid> grid;
  std::string output_path = "-";
  OutputFormat output_format = OutputFormat::Csv;
};

/// Resolves options against the defaults (reference operating point with
/// lambda_e = 0.1, no default distance) and validates parameter ranges.
/// Parameter problems surface as UsageError.
RunConfig make_run_config(const Options& options);

}  // namespace d2dsec::cli
