#pragma once

// Closed-form link metrics for a noise-limited D2D pair sharing the plane with
// a Poisson field of eavesdroppers, under the guard-zone and artificial-noise
// secrecy techniques.

namespace d2dsec {

/// Physical and link constants. All powers and thresholds are linear.
struct SystemParams {
  double alpha = 4.0;     ///< path-loss exponent, > 2
  double p_t = 1.0;       ///< transmit power
  double beta_t = 2.0;    ///< legitimate SNR threshold
  double beta_e = 1.0;    ///< eavesdropper SNR threshold
  double epsilon = 0.9;   ///< required secure communication probability
  double sigma2_p = 1.0;  ///< noise power at the primary receiver
  double sigma2_s = 1.0;  ///< noise power at an eavesdropper
  double lambda_e = 0.1;  ///< eavesdropper density per unit area
  double d = 1.0;         ///< transmitter-receiver distance

  /// Throws DomainError naming the first violated field.
  void validate() const;

  /// 2 / alpha, the incomplete-gamma shape used throughout.
  double shape() const { return 2.0 / alpha; }
};

struct GuardZoneDesign {
  double r_g = 0.0;
};

struct NoiseSplitDesign {
  double gamma = 1.0;  ///< fraction of power carrying information
};

struct TechniqueMetrics {
  double p_cov = 0.0;
  double p_sec = 0.0;
};

/// Maps a code rate in bits per channel use to the SNR threshold 2^rate - 1.
double rate_to_threshold(double code_rate);

/// Probability that no eavesdropper falls inside the guard zone.
double p_active(const SystemParams& params, const GuardZoneDesign& design);

double p_cov_gz(const SystemParams& params, const GuardZoneDesign& design);

/// Secure communication probability given the transmitter is active.
double p_sec_gz(const SystemParams& params, const GuardZoneDesign& design);

/// Throws DegenerateDesign when gamma == 0.
double p_cov_an(const SystemParams& params, const NoiseSplitDesign& design);

/// Exactly 1 whenever gamma <= beta_e / (1 + beta_e).
double p_sec_an(const SystemParams& params, const NoiseSplitDesign& design);

TechniqueMetrics gz_metrics(const SystemParams& params, const GuardZoneDesign& design);
TechniqueMetrics an_metrics(const SystemParams& params, const NoiseSplitDesign& design);

/// (2 pi lambda_e / alpha) (P_t / (sigma_s^2 beta_e))^(2/alpha): the factor
/// multiplying the incomplete gamma in the guard-zone secrecy exponent.
double secrecy_exponent_scale(const SystemParams& params);

/// Argument of the incomplete gamma for a guard radius: r^alpha beta_e sigma_s^2 / P_t.
double guard_gamma_argument(const SystemParams& params, double r_g);

}  // namespace d2dsec
