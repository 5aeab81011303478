#include "d2dsec/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "d2dsec/errors.h"
#include "d2dsec/specfun.h"

namespace d2dsec {

namespace {

constexpr double kMinSearchDistance = 1e-9;
constexpr double kMaxSearchDistance = 1e6;

void require_selection_regime(const SystemParams& params) {
  const double threshold = lambda_threshold(params);
  if (params.lambda_e < threshold * (1.0 - kThresholdRelTol)) {
    std::ostringstream os;
    os << "lambda_e=" << params.lambda_e << " is below the threshold " << threshold
       << "; no secrecy enhancement is needed";
    throw RegimeError(os.str());
  }
}

struct Selection {
  double h;
  double f;
};

// H carries sigma_p^2 next to the beta_t d^alpha term: it descends from the
// coverage exponent, not from the eavesdropper noise.
Selection evaluate_selection(const SystemParams& p, double budget, double split) {
  const double deficit = split < 1.0 ? 1.0 / split - 1.0 : 0.0;
  const double bracket = p.beta_t * std::pow(p.d, p.alpha) * p.sigma2_p /
                         (p.p_t * p.lambda_e * std::numbers::pi) * deficit;
  const double h = p.beta_e * p.sigma2_s / p.p_t * std::pow(bracket, p.alpha / 2.0);
  return {h, budget - specfun::upper_incomplete_gamma(p.shape(), h)};
}

}  // namespace

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::GuardZone:
      return "GuardZone";
    case Technique::ArtificialNoise:
      return "ArtificialNoise";
  }
  return "unknown";
}

double lambda_threshold(const SystemParams& params) {
  SystemParams p = params;
  p.lambda_e = 0.0;
  p.validate();
  const double full = specfun::complete_gamma(p.shape());
  return p.alpha / (2.0 * std::numbers::pi * full) * std::log(1.0 / p.epsilon) *
         std::pow(p.p_t / (p.sigma2_s * p.beta_e), -p.shape());
}

bool constraint_binds(const SystemParams& params) {
  return params.lambda_e > lambda_threshold(params) * (1.0 + kThresholdRelTol);
}

double secrecy_budget(const SystemParams& params) {
  params.validate();
  if (params.lambda_e == 0.0) return std::numeric_limits<double>::infinity();
  return params.alpha * std::log(1.0 / params.epsilon) /
         (2.0 * std::numbers::pi * params.lambda_e *
          std::pow(params.p_t / (params.sigma2_s * params.beta_e), params.shape()));
}

double power_split_bound(const SystemParams& params) {
  params.validate();
  if (params.lambda_e == 0.0) return std::numeric_limits<double>::infinity();
  const double full = specfun::complete_gamma(params.shape());
  const double ratio = params.alpha * std::log(1.0 / params.epsilon) /
                       (2.0 * std::numbers::pi * params.lambda_e * full);
  return params.beta_e / (1.0 + params.beta_e) *
         (1.0 + params.sigma2_s / params.p_t * std::pow(ratio, params.alpha / 2.0));
}

OptimalDesign optimal_guard_radius(const SystemParams& params) {
  params.validate();
  OptimalDesign out;
  out.technique = Technique::GuardZone;
  if (constraint_binds(params)) {
    const double x =
        specfun::inverse_upper_incomplete_gamma(params.shape(), secrecy_budget(params));
    out.parameter = std::pow(x * params.p_t / (params.beta_e * params.sigma2_s), 1.0 / params.alpha);
    out.constraint_active = true;
  }
  out.metrics = gz_metrics(params, GuardZoneDesign{out.parameter});
  return out;
}

OptimalDesign optimal_power_split(const SystemParams& params) {
  params.validate();
  OptimalDesign out;
  out.technique = Technique::ArtificialNoise;
  out.parameter = 1.0;
  if (constraint_binds(params)) {
    out.parameter = std::min(1.0, power_split_bound(params));
    out.constraint_active = out.parameter < 1.0;
  }
  out.metrics = an_metrics(params, NoiseSplitDesign{out.parameter});
  return out;
}

double selection_value(const SystemParams& params) {
  params.validate();
  require_selection_regime(params);
  const double split = constraint_binds(params) ? std::min(1.0, power_split_bound(params)) : 1.0;
  return evaluate_selection(params, secrecy_budget(params), split).f;
}

SelectionVerdict selection_function(const SystemParams& params) {
  params.validate();
  require_selection_regime(params);

  SelectionVerdict v;
  v.gz_design = optimal_guard_radius(params);
  v.an_design = optimal_power_split(params);
  v.g_value = v.an_design.parameter;

  const Selection s = evaluate_selection(params, secrecy_budget(params), v.g_value);
  v.h_value = s.h;
  v.f_value = s.f;
  v.better = v.f_value > 0.0 ? Technique::GuardZone : Technique::ArtificialNoise;
  return v;
}

CriticalDistance critical_distance(const SystemParams& params,
                                   std::optional<std::pair<double, double>> bracket,
                                   double d_tol) {
  params.validate();
  require_selection_regime(params);
  auto [lo, hi] = bracket.value_or(kDefaultDistanceBracket);
  if (!(lo > 0.0) || !(hi > lo)) {
    throw DomainError("critical distance bracket must satisfy 0 < d_lo < d_hi");
  }
  if (!constraint_binds(params)) return {lo, lo, hi};

  const double budget = secrecy_budget(params);
  const double split = std::min(1.0, power_split_bound(params));
  auto f = [&](double d) {
    SystemParams p = params;
    p.d = d;
    return evaluate_selection(p, budget, split).f;
  };

  double f_lo = f(lo);
  while (f_lo > 0.0 && lo > kMinSearchDistance) {
    hi = lo;
    lo = std::max(lo / 10.0, kMinSearchDistance);
    f_lo = f(lo);
  }
  double f_hi = f(hi);
  while (f_hi <= 0.0 && hi < kMaxSearchDistance) {
    lo = hi;
    f_lo = f_hi;
    hi = std::min(hi * 2.0, kMaxSearchDistance);
    f_hi = f(hi);
  }
  if (f_lo > 0.0 || f_hi <= 0.0) {
    std::ostringstream os;
    os << "selection function has no sign change: F(" << lo << ")=" << f_lo << ", F(" << hi
       << ")=" << f_hi;
    throw NoCrossingError(os.str(), lo, f_lo, hi, f_hi);
  }

  while (hi - lo > d_tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo + 0.5 * (hi - lo), lo, hi};
}

}  // namespace d2dsec
