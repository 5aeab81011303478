#include "d2dsec/model.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "d2dsec/errors.h"
#include "d2dsec/specfun.h"

namespace d2dsec {

namespace {

void require(bool ok, const char* field, double value, const char* rule) {
  if (!ok) {
    std::ostringstream os;
    os << field << "=" << value << " violates " << rule;
    throw DomainError(os.str());
  }
}

void check_design(const GuardZoneDesign& design) {
  require(design.r_g >= 0.0, "r_g", design.r_g, "r_g >= 0");
}

void check_design(const NoiseSplitDesign& design) {
  require(design.gamma >= 0.0 && design.gamma <= 1.0, "gamma", design.gamma, "0 <= gamma <= 1");
}

// beta_t sigma_p^2 d^alpha / P_t, the noise-outage exponent at full power.
double noise_exponent(const SystemParams& p) {
  return p.beta_t * p.sigma2_p * std::pow(p.d, p.alpha) / p.p_t;
}

}  // namespace

void SystemParams::validate() const {
  require(alpha > 2.0, "alpha", alpha, "alpha > 2");
  require(p_t > 0.0, "p_t", p_t, "p_t > 0");
  require(beta_t > 0.0, "beta_t", beta_t, "beta_t > 0");
  require(beta_e > 0.0, "beta_e", beta_e, "beta_e > 0");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon", epsilon, "0 < epsilon < 1");
  require(sigma2_p > 0.0, "sigma2_p", sigma2_p, "sigma2_p > 0");
  require(sigma2_s > 0.0, "sigma2_s", sigma2_s, "sigma2_s > 0");
  require(lambda_e >= 0.0, "lambda_e", lambda_e, "lambda_e >= 0");
  require(d > 0.0 && std::isfinite(d), "d", d, "d > 0");
}

double rate_to_threshold(double code_rate) {
  require(code_rate >= 0.0, "code_rate", code_rate, "code_rate >= 0");
  return std::exp2(code_rate) - 1.0;
}

double secrecy_exponent_scale(const SystemParams& p) {
  return 2.0 * std::numbers::pi * p.lambda_e / p.alpha *
         std::pow(p.p_t / (p.sigma2_s * p.beta_e), p.shape());
}

double guard_gamma_argument(const SystemParams& p, double r_g) {
  return std::pow(r_g, p.alpha) * p.beta_e * p.sigma2_s / p.p_t;
}

double p_active(const SystemParams& params, const GuardZoneDesign& design) {
  params.validate();
  check_design(design);
  return std::exp(-params.lambda_e * std::numbers::pi * design.r_g * design.r_g);
}

double p_cov_gz(const SystemParams& params, const GuardZoneDesign& design) {
  params.validate();
  check_design(design);
  const double exponent =
      -params.lambda_e * std::numbers::pi * design.r_g * design.r_g - noise_exponent(params);
  return std::exp(exponent);
}

double p_sec_gz(const SystemParams& params, const GuardZoneDesign& design) {
  params.validate();
  check_design(design);
  if (params.lambda_e == 0.0) return 1.0;
  const double tail = specfun::upper_incomplete_gamma(
      params.shape(), guard_gamma_argument(params, design.r_g));
  return std::exp(-secrecy_exponent_scale(params) * tail);
}

double p_cov_an(const SystemParams& params, const NoiseSplitDesign& design) {
  params.validate();
  check_design(design);
  if (design.gamma == 0.0) {
    throw DegenerateDesign("gamma = 0 leaves no power for information");
  }
  const double exponent = -params.beta_t * params.sigma2_p * std::pow(params.d, params.alpha) /
                          (design.gamma * params.p_t);
  return std::exp(exponent);
}

double p_sec_an(const SystemParams& params, const NoiseSplitDesign& design) {
  params.validate();
  check_design(design);
  const double gamma = design.gamma;
  const double leak = gamma - (1.0 - gamma) * params.beta_e;
  if (params.lambda_e == 0.0 || leak <= 0.0) return 1.0;
  const double scale = 2.0 * std::numbers::pi * params.lambda_e / params.alpha *
                       std::pow(params.p_t * leak / (params.sigma2_s * params.beta_e),
                                params.shape());
  return std::exp(-scale * specfun::complete_gamma(params.shape()));
}

TechniqueMetrics gz_metrics(const SystemParams& params, const GuardZoneDesign& design) {
  return {p_cov_gz(params, design), p_sec_gz(params, design)};
}

TechniqueMetrics an_metrics(const SystemParams& params, const NoiseSplitDesign& design) {
  return {p_cov_an(params, design), p_sec_an(params, design)};
}

}  // namespace d2dsec
