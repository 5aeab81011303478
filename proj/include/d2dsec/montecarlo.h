#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "d2dsec/model.h"

namespace d2dsec::mc {

struct TrialConfig {
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 0;
  /// Simulation disk radius; chosen by auto_window_radius when empty.
  std::optional<double> window_radius;
  double tail_prob = 1e-4;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;

  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Eavesdroppers inside a disk centred on the transmitter, with their
/// channel power gains.
struct EavesdropperField {
  std::vector<Point> points;
  std::vector<double> fading;
};

struct TrialOutcome {
  bool active = false;
  double snr_p = 0.0;
  double snr_s = 0.0;
  bool covered = false;
  /// Present only for active trials.
  std::optional<bool> secure;
};

enum class IntervalMethod { Normal, ClopperPearson };

/// Proportion estimate with a 95% confidence interval.
struct McEstimate {
  double mean = 0.0;
  double half_width = 0.0;
  std::uint64_t n_effective = 0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  IntervalMethod method = IntervalMethod::Normal;
};

/// Indicator tallies from a guard-zone run.
struct GzCounts {
  std::uint64_t trials = 0;
  std::uint64_t active = 0;
  std::uint64_t covered = 0;
  std::uint64_t secure_given_active = 0;
  /// Secure over every trial, judged on the whole field (ignores the
  /// conditioning on an empty guard zone).
  std::uint64_t secure_unconditioned = 0;
  double window_radius = 0.0;
};

struct AnCounts {
  std::uint64_t trials = 0;
  std::uint64_t covered = 0;
  std::uint64_t secure = 0;
  double window_radius = 0.0;
};

struct GzEstimates {
  McEstimate p_active;
  McEstimate p_cov;
  McEstimate p_sec;
  McEstimate p_sec_unconditioned;
  double window_radius = 0.0;
};

struct AnEstimates {
  McEstimate p_cov;
  McEstimate p_sec;
  double window_radius = 0.0;
};

/// Points with norm below this are resampled by sample_field and rejected by
/// strongest_received_power.
inline constexpr double kOriginExclusion = 1e-9;

/// Radius used when there is nothing to truncate (lambda_e == 0).
inline constexpr double kMinimalWindowRadius = 1.0;

/// Smallest radius R whose outside contributes less than tail_prob to the
/// guard-zone secrecy exponent. Returns 0 when the whole plane already does.
double auto_window_radius(const SystemParams& params, double tail_prob);

/// Poisson field on the disk of `radius`; a pure function of (seed, trial_index).
EavesdropperField sample_field(const SystemParams& params, double radius,
                               std::uint64_t trial_index, std::uint64_t seed);

/// max over points of g |y|^-alpha, or 0 for an empty field.
double strongest_received_power(const EavesdropperField& field, const SystemParams& params);

/// Same maximum restricted to points at distance >= min_radius.
double strongest_received_power(const EavesdropperField& field, const SystemParams& params,
                                double min_radius);

/// Single guard-zone trial.
TrialOutcome gz_trial(const SystemParams& params, const GuardZoneDesign& design, double radius,
                      std::uint64_t trial_index, std::uint64_t seed);

/// Single artificial-noise trial.
TrialOutcome an_trial(const SystemParams& params, const NoiseSplitDesign& design, double radius,
                      std::uint64_t trial_index, std::uint64_t seed);

/// Window actually simulated for a design: the configured or automatic
/// radius, enlarged to exceed the guard radius.
double resolve_window_radius(const SystemParams& params, const TrialConfig& cfg, double r_g);

GzCounts count_gz_trials(const SystemParams& params, const GuardZoneDesign& design,
                         const TrialConfig& cfg);
AnCounts count_an_trials(const SystemParams& params, const NoiseSplitDesign& design,
                         const TrialConfig& cfg);

/// Throws InsufficientDataError when no trial was active.
GzEstimates run_gz_trials(const SystemParams& params, const GuardZoneDesign& design,
                          const TrialConfig& cfg);
AnEstimates run_an_trials(const SystemParams& params, const NoiseSplitDesign& design,
                          const TrialConfig& cfg);

/// 95% interval for successes out of n: normal approximation, falling back
/// to Clopper-Pearson when fewer than 10 successes or failures are expected.
/// Throws InsufficientDataError when n == 0.
McEstimate estimate_proportion(std::uint64_t successes, std::uint64_t n);

}  // namespace d2dsec::mc
