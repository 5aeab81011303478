#include "d2dsec/montecarlo.h"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <exception>
#include <vector>

#include "d2dsec/errors.h"
#include "d2dsec/rng.h"
#include "d2dsec/specfun.h"

namespace d2dsec::mc {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kSmallCount = 10;

void fill_field(const SystemParams& params, double radius, std::uint64_t trial,
                std::uint64_t seed, EavesdropperField& field) {
  field.points.clear();
  field.fading.clear();
  if (params.lambda_e == 0.0) return;

  rng::CounterStream count_rng(seed, trial, rng::Stream::PointCount);
  const std::uint64_t n = count_rng.poisson(params.lambda_e * std::numbers::pi * radius * radius);
  if (n == 0) return;

  rng::CounterStream pos_rng(seed, trial, rng::Stream::Positions);
  rng::CounterStream fade_rng(seed, trial, rng::Stream::Fading);
  field.points.reserve(n);
  field.fading.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    double r = 0.0;
    double theta = 0.0;
    do {
      r = radius * std::sqrt(pos_rng.uniform());
      theta = 2.0 * std::numbers::pi * pos_rng.uniform();
    } while (r < kOriginExclusion);
    field.points.push_back({r * std::cos(theta), r * std::sin(theta)});
    field.fading.push_back(fade_rng.exponential());
  }
}

double norm2(const Point& p) { return p.x * p.x + p.y * p.y; }

// max g |y|^-alpha over points with |y|^2 >= min_r2.
double strongest(const EavesdropperField& field, double alpha, double min_r2) {
  double best = 0.0;
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const double r2 = norm2(field.points[i]);
    if (r2 < kOriginExclusion * kOriginExclusion) {
      throw ExcludedRegionError("eavesdropper at the transmitter location");
    }
    if (r2 < min_r2) continue;
    best = std::max(best, field.fading[i] * std::pow(r2, -alpha / 2.0));
  }
  return best;
}

double legitimate_gain(const SystemParams& params, std::uint64_t trial, std::uint64_t seed) {
  rng::CounterStream h_rng(seed, trial, rng::Stream::LegitimateChannel);
  return h_rng.exponential() * std::pow(params.d, -params.alpha);
}

TrialOutcome gz_outcome(const SystemParams& params, double r_g, const EavesdropperField& field,
                        std::uint64_t trial, std::uint64_t seed, bool& secure_unconditioned) {
  const double r_g2 = r_g * r_g;
  TrialOutcome out;
  out.active = std::none_of(field.points.begin(), field.points.end(),
                            [&](const Point& p) { return norm2(p) < r_g2; });
  out.snr_p = params.p_t * legitimate_gain(params, trial, seed) / params.sigma2_p;
  out.covered = out.active && out.snr_p >= params.beta_t;

  const double all = strongest(field, params.alpha, 0.0);
  secure_unconditioned = params.p_t * all / params.sigma2_s <= params.beta_e;
  if (out.active) {
    out.snr_s = params.p_t * strongest(field, params.alpha, r_g2) / params.sigma2_s;
    out.secure = out.snr_s <= params.beta_e;
  }
  return out;
}

TrialOutcome an_outcome(const SystemParams& params, double gamma, const EavesdropperField& field,
                        std::uint64_t trial, std::uint64_t seed) {
  TrialOutcome out;
  out.active = true;
  out.snr_p = gamma * params.p_t * legitimate_gain(params, trial, seed) / params.sigma2_p;
  out.covered = out.snr_p >= params.beta_t;
  // The eavesdropper ratio is increasing in g |y|^-alpha, so the strongest
  // point under plain SNR is also strongest here.
  const double best = strongest(field, params.alpha, 0.0);
  out.snr_s = gamma * params.p_t * best / ((1.0 - gamma) * params.p_t * best + params.sigma2_s);
  out.secure = out.snr_s <= params.beta_e;
  return out;
}

unsigned worker_count(const TrialConfig& cfg) {
  unsigned n = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  n = std::max(1u, n);
  return static_cast<unsigned>(std::min<std::uint64_t>(n, cfg.n_trials));
}

GzCounts& operator+=(GzCounts& a, const GzCounts& b) {
  a.trials += b.trials;
  a.active += b.active;
  a.covered += b.covered;
  a.secure_given_active += b.secure_given_active;
  a.secure_unconditioned += b.secure_unconditioned;
  return a;
}

AnCounts& operator+=(AnCounts& a, const AnCounts& b) {
  a.trials += b.trials;
  a.covered += b.covered;
  a.secure += b.secure;
  return a;
}

// Splits [0, n_trials) into contiguous chunks, tallies each on its own thread
// and sums the integer counts, so the result is independent of the split.
template <typename Counts, typename Body>
Counts parallel_count(const TrialConfig& cfg, Body body) {
  const unsigned workers = worker_count(cfg);
  std::vector<Counts> partial(workers);
  const std::uint64_t chunk = cfg.n_trials / workers;
  const std::uint64_t extra = cfg.n_trials % workers;

  if (workers == 1) {
    body(0, cfg.n_trials, partial[0]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk + std::min<std::uint64_t>(w, extra);
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] {
          try {
            body(begin, end, partial[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  Counts total{};
  for (const auto& c : partial) total += c;
  return total;
}

}  // namespace

void TrialConfig::validate() const {
  if (n_trials < 1) throw DomainError("n_trials must be >= 1");
  if (window_radius && !(*window_radius > 0.0)) throw DomainError("window_radius must be > 0");
  if (!(tail_prob > 0.0 && tail_prob < 1.0)) throw DomainError("tail_prob must lie in (0, 1)");
}

double auto_window_radius(const SystemParams& params, double tail_prob) {
  params.validate();
  if (!(tail_prob > 0.0 && tail_prob < 1.0)) throw DomainError("tail_prob must lie in (0, 1)");
  if (params.lambda_e == 0.0) return kMinimalWindowRadius;

  const double a = params.shape();
  const double target = tail_prob / secrecy_exponent_scale(params);
  if (target >= specfun::complete_gamma(a)) return 0.0;
  const double x = specfun::inverse_upper_incomplete_gamma(a, target);
  const double radius = std::pow(x * params.p_t / (params.beta_e * params.sigma2_s), 1.0 / params.alpha);
  // Step just past the root so the tail bound holds strictly.
  return radius * (1.0 + 1e-9);
}

EavesdropperField sample_field(const SystemParams& params, double radius,
                               std::uint64_t trial_index, std::uint64_t seed) {
  params.validate();
  if (!(radius > 0.0)) throw DomainError("field radius must be > 0");
  EavesdropperField field;
  fill_field(params, radius, trial_index, seed, field);
  return field;
}

double strongest_received_power(const EavesdropperField& field, const SystemParams& params) {
  return strongest(field, params.alpha, 0.0);
}

double strongest_received_power(const EavesdropperField& field, const SystemParams& params,
                                double min_radius) {
  return strongest(field, params.alpha, min_radius * min_radius);
}

TrialOutcome gz_trial(const SystemParams& params, const GuardZoneDesign& design, double radius,
                      std::uint64_t trial_index, std::uint64_t seed) {
  const EavesdropperField field = sample_field(params, radius, trial_index, seed);
  bool unconditioned = false;
  return gz_outcome(params, design.r_g, field, trial_index, seed, unconditioned);
}

TrialOutcome an_trial(const SystemParams& params, const NoiseSplitDesign& design, double radius,
                      std::uint64_t trial_index, std::uint64_t seed) {
  if (!(design.gamma > 0.0 && design.gamma <= 1.0)) {
    throw DegenerateDesign("artificial-noise trials need 0 < gamma <= 1");
  }
  const EavesdropperField field = sample_field(params, radius, trial_index, seed);
  return an_outcome(params, design.gamma, field, trial_index, seed);
}

double resolve_window_radius(const SystemParams& params, const TrialConfig& cfg, double r_g) {
  if (cfg.window_radius) {
    if (!(*cfg.window_radius > r_g)) {
      std::ostringstream os;
      os << "window_radius=" << *cfg.window_radius << " must exceed the guard radius " << r_g;
      throw DomainError(os.str());
    }
    return *cfg.window_radius;
  }
  const double radius = std::max(auto_window_radius(params, cfg.tail_prob), 1.25 * r_g);
  return radius > 0.0 ? radius : kMinimalWindowRadius;
}

GzCounts count_gz_trials(const SystemParams& params, const GuardZoneDesign& design,
                         const TrialConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!(design.r_g >= 0.0)) throw DomainError("r_g must be >= 0");
  const double radius = resolve_window_radius(params, cfg, design.r_g);

  GzCounts counts = parallel_count<GzCounts>(
      cfg, [&](std::uint64_t begin, std::uint64_t end, GzCounts& c) {
        EavesdropperField field;
        for (std::uint64_t t = begin; t < end; ++t) {
          fill_field(params, radius, t, cfg.seed, field);
          bool unconditioned = false;
          const TrialOutcome o = gz_outcome(params, design.r_g, field, t, cfg.seed, unconditioned);
          ++c.trials;
          c.active += o.active;
          c.covered += o.covered;
          c.secure_given_active += o.secure.value_or(false);
          c.secure_unconditioned += unconditioned;
        }
      });
  counts.window_radius = radius;
  return counts;
}

AnCounts count_an_trials(const SystemParams& params, const NoiseSplitDesign& design,
                         const TrialConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!(design.gamma > 0.0 && design.gamma <= 1.0)) {
    throw DegenerateDesign("artificial-noise trials need 0 < gamma <= 1");
  }
  const double radius = resolve_window_radius(params, cfg, 0.0);

  AnCounts counts = parallel_count<AnCounts>(
      cfg, [&](std::uint64_t begin, std::uint64_t end, AnCounts& c) {
        EavesdropperField field;
        for (std::uint64_t t = begin; t < end; ++t) {
          fill_field(params, radius, t, cfg.seed, field);
          const TrialOutcome o = an_outcome(params, design.gamma, field, t, cfg.seed);
          ++c.trials;
          c.covered += o.covered;
          c.secure += o.secure.value_or(false);
        }
      });
  counts.window_radius = radius;
  return counts;
}

GzEstimates run_gz_trials(const SystemParams& params, const GuardZoneDesign& design,
                          const TrialConfig& cfg) {
  const GzCounts c = count_gz_trials(params, design, cfg);
  if (c.active == 0) {
    throw InsufficientDataError("no active trials; conditioned p_sec is undefined");
  }
  return {estimate_proportion(c.active, c.trials), estimate_proportion(c.covered, c.trials),
          estimate_proportion(c.secure_given_active, c.active),
          estimate_proportion(c.secure_unconditioned, c.trials), c.window_radius};
}

AnEstimates run_an_trials(const SystemParams& params, const NoiseSplitDesign& design,
                          const TrialConfig& cfg) {
  const AnCounts c = count_an_trials(params, design, cfg);
  return {estimate_proportion(c.covered, c.trials), estimate_proportion(c.secure, c.trials),
          c.window_radius};
}

McEstimate estimate_proportion(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) throw InsufficientDataError("cannot estimate a proportion from zero trials");
  if (successes > n) throw DomainError("successes exceed trials");

  McEstimate e;
  e.n_effective = n;
  const double nd = static_cast<double>(n);
  e.mean = static_cast<double>(successes) / nd;

  if (std::min(successes, n - successes) >= kSmallCount) {
    e.method = IntervalMethod::Normal;
    e.half_width = kZ95 * std::sqrt(e.mean * (1.0 - e.mean) / nd);
    e.ci_lo = std::max(0.0, e.mean - e.half_width);
    e.ci_hi = std::min(1.0, e.mean + e.half_width);
    return e;
  }

  e.method = IntervalMethod::ClopperPearson;
  const double k = static_cast<double>(successes);
  constexpr double tail = 0.025;
  e.ci_lo = successes == 0
                ? 0.0
                : boost::math::quantile(boost::math::beta_distribution<>(k, nd - k + 1.0), tail);
  e.ci_hi = successes == n
                ? 1.0
                : boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, nd - k), 1.0 - tail);
  e.half_width = std::max(e.mean - e.ci_lo, e.ci_hi - e.mean);
  return e;
}

}  // namespace d2dsec::mc
