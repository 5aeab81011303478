#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "d2dsec/model.h"

namespace d2dsec {

enum class Technique { GuardZone, ArtificialNoise };

std::string_view to_string(Technique technique);

/// Secrecy-constrained optimum of one technique.
///
/// `parameter` is the guard radius for GuardZone and the information power
/// fraction for ArtificialNoise. When the constraint does not bind the
/// parameter is the null design (0 or 1).
struct OptimalDesign {
  Technique technique = Technique::GuardZone;
  double parameter = 0.0;
  TechniqueMetrics metrics;
  bool constraint_active = false;
};

struct SelectionVerdict {
  double f_value = 0.0;
  double h_value = 0.0;
  double g_value = 1.0;
  Technique better = Technique::ArtificialNoise;
  OptimalDesign gz_design;
  OptimalDesign an_design;
};

struct CriticalDistance {
  double d_star = 0.0;
  double d_lo = 0.0;  ///< bracket the search finished with
  double d_hi = 0.0;
};

/// Densities within this relative distance of the threshold are treated as
/// sitting on it.
inline constexpr double kThresholdRelTol = 1e-12;

/// Default search interval and resolution for the critical distance.
inline constexpr std::pair<double, double> kDefaultDistanceBracket{1e-3, 10.0};
inline constexpr double kDistanceTolerance = 1e-10;

/// Eavesdropper density below which neither technique is needed. The
/// lambda_e field of `params` is ignored.
double lambda_threshold(const SystemParams& params);

/// True when lambda_e exceeds the threshold, so both optima move off their
/// null designs.
bool constraint_binds(const SystemParams& params);

/// alpha ln(1/epsilon) / (2 pi lambda_e (P_t/(sigma_s^2 beta_e))^(2/alpha)):
/// the largest incomplete-gamma tail compatible with the secrecy target.
/// Infinite when lambda_e == 0.
double secrecy_budget(const SystemParams& params);

/// Unclamped power split that makes the artificial-noise secrecy constraint
/// tight. Infinite when lambda_e == 0.
double power_split_bound(const SystemParams& params);

/// Smallest guard radius meeting p_sec >= epsilon.
OptimalDesign optimal_guard_radius(const SystemParams& params);

/// Largest information fraction meeting p_sec >= epsilon.
OptimalDesign optimal_power_split(const SystemParams& params);

/// Selection function value at params.d. GuardZone wins iff the value is > 0.
/// Requires lambda_e at or above the threshold.
double selection_value(const SystemParams& params);

/// Full technique comparison at params.d. Throws RegimeError below the
/// density threshold.
SelectionVerdict selection_function(const SystemParams& params);

/// Distance where the selection function crosses zero.
///
/// Bisects on the selection value, widening the bracket geometrically (down
/// to 1e-9, up to 1e6) until the sign changes. At the density threshold the
/// function vanishes identically and the lower bracket edge is returned.
/// Throws RegimeError below the threshold and NoCrossingError when no sign
/// change is found.
CriticalDistance critical_distance(const SystemParams& params,
                                   std::optional<std::pair<double, double>> bracket = std::nullopt,
                                   double d_tol = kDistanceTolerance);

}  // namespace d2dsec
