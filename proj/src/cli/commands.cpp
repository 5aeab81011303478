#include "d2dsec/cli/commands.h"

#include <cmath>
#include <limits>

#include "d2dsec/errors.h"
#include "d2dsec/montecarlo.h"
#include "d2dsec/optimizer.h"

namespace d2dsec::cli {

namespace {

nlohmann::ordered_json params_json(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  nlohmann::ordered_json j;
  j["alpha"] = p.alpha;
  j["p_t"] = p.p_t;
  j["beta_t"] = p.beta_t;
  j["beta_e"] = p.beta_e;
  j["epsilon"] = p.epsilon;
  j["sigma2_p"] = p.sigma2_p;
  j["sigma2_s"] = p.sigma2_s;
  j["lambda_e"] = p.lambda_e;
  j["d"] = cfg.has_d ? nlohmann::ordered_json(p.d) : nlohmann::ordered_json(nullptr);
  return j;
}

Report new_report(const char* command, const RunConfig& cfg, std::vector<std::string> columns) {
  Report r;
  r.command = command;
  r.params = params_json(cfg);
  r.columns = std::move(columns);
  return r;
}

void require_d(const RunConfig& cfg, const char* command) {
  if (!cfg.has_d) throw UsageError(std::string(command) + " requires --d");
}

void require_one_design(const RunConfig& cfg, const char* command) {
  if (cfg.r_g.has_value() == cfg.gamma.has_value()) {
    throw UsageError(std::string(command) + " needs exactly one of --r-g or --gamma");
  }
}

Cell prob(double v) { return Probability{v}; }

Cell sign_agreement(double mc_gz, double hw_gz, double mc_an, double hw_an, double f) {
  const double diff = mc_gz - mc_an;
  if (std::abs(diff) <= std::hypot(hw_gz, hw_an)) return std::string("inconclusive");
  return std::string((diff > 0.0) == (f > 0.0) ? "agree" : "disagree");
}

std::string interval_name(mc::IntervalMethod m) {
  return m == mc::IntervalMethod::Normal ? "normal" : "clopper-pearson";
}

std::vector<Cell> validation_row(const char* technique, const char* quantity, double analytic,
                                 const mc::McEstimate& e) {
  return {std::string(technique), std::string(quantity), prob(analytic), prob(e.mean),
          prob(e.half_width),     prob(e.ci_lo),         prob(e.ci_hi),  e.n_effective,
          interval_name(e.method),
          std::abs(analytic - e.mean) <= 3.0 * e.half_width, std::string("ok")};
}

}  // namespace

CommandResult cmd_analytic(const RunConfig& cfg) {
  require_d(cfg, "analytic");
  require_one_design(cfg, "analytic");
  Report r = new_report("analytic", cfg, {"technique", "r_g", "gamma", "p_active", "p_cov", "p_sec"});
  const SystemParams& p = cfg.params;
  if (cfg.r_g) {
    const GuardZoneDesign design{*cfg.r_g};
    r.add_row({std::string("GuardZone"), *cfg.r_g, std::monostate{}, prob(p_active(p, design)),
               prob(p_cov_gz(p, design)), prob(p_sec_gz(p, design))});
  } else {
    const NoiseSplitDesign design{*cfg.gamma};
    r.add_row({std::string("ArtificialNoise"), std::monostate{}, *cfg.gamma, prob(1.0),
               prob(p_cov_an(p, design)), prob(p_sec_an(p, design))});
  }
  return {std::move(r), kExitOk, {}};
}

CommandResult cmd_optimize(const RunConfig& cfg) {
  Report r = new_report("optimize", cfg,
                        {"lambda_e", "lambda_star", "constraint_active", "r_g_star", "p_cov_gz",
                         "p_sec_gz", "gamma_star", "p_cov_an", "p_sec_an"});
  const SystemParams& p = cfg.params;
  const OptimalDesign gz = optimal_guard_radius(p);
  const OptimalDesign an = optimal_power_split(p);
  const double threshold = lambda_threshold(p);
  auto cov = [&](double v) -> Cell { return cfg.has_d ? prob(v) : Cell{}; };
  r.add_row({p.lambda_e, threshold, gz.constraint_active, gz.parameter, cov(gz.metrics.p_cov),
             prob(gz.metrics.p_sec), an.parameter, cov(an.metrics.p_cov), prob(an.metrics.p_sec)});
  r.summary["lambda_star"] = threshold;
  return {std::move(r), kExitOk, {}};
}

CommandResult cmd_select(const RunConfig& cfg) {
  require_d(cfg, "select");
  Report r = new_report("select", cfg,
                        {"lambda_e", "lambda_star", "d", "verdict", "f_value", "h_value", "g_value",
                         "r_g_star", "gamma_star", "p_cov_gz", "p_sec_gz", "p_cov_an", "p_sec_an"});
  const SystemParams& p = cfg.params;
  const double threshold = lambda_threshold(p);
  CommandResult result;
  try {
    const SelectionVerdict v = selection_function(p);
    result.verdict = std::string(to_string(v.better));
    r.add_row({p.lambda_e, threshold, p.d, result.verdict, v.f_value, v.h_value, v.g_value,
               v.gz_design.parameter, v.an_design.parameter, prob(v.gz_design.metrics.p_cov),
               prob(v.gz_design.metrics.p_sec), prob(v.an_design.metrics.p_cov),
               prob(v.an_design.metrics.p_sec)});
  } catch (const RegimeError&) {
    const OptimalDesign gz = optimal_guard_radius(p);
    const OptimalDesign an = optimal_power_split(p);
    result.verdict = kNoEnhancement;
    r.add_row({p.lambda_e, threshold, p.d, result.verdict, std::monostate{}, std::monostate{},
               std::monostate{}, gz.parameter, an.parameter, prob(gz.metrics.p_cov),
               prob(gz.metrics.p_sec), prob(an.metrics.p_cov), prob(an.metrics.p_sec)});
  }
  r.summary["verdict"] = result.verdict;
  result.report = std::move(r);
  return result;
}

CommandResult cmd_mc_validate(const RunConfig& cfg) {
  require_d(cfg, "mc-validate");
  require_one_design(cfg, "mc-validate");
  Report r = new_report("mc-validate", cfg,
                        {"technique", "quantity", "analytic", "mc_mean", "half_width", "ci_lo",
                         "ci_hi", "n_effective", "interval", "pass", "status"});
  const SystemParams& p = cfg.params;
  CommandResult result;
  double window = 0.0;

  if (cfg.r_g) {
    const GuardZoneDesign design{*cfg.r_g};
    const mc::GzCounts c = mc::count_gz_trials(p, design, cfg.trials);
    window = c.window_radius;
    r.add_row(validation_row("GuardZone", "p_active", p_active(p, design),
                             mc::estimate_proportion(c.active, c.trials)));
    r.add_row(validation_row("GuardZone", "p_cov", p_cov_gz(p, design),
                             mc::estimate_proportion(c.covered, c.trials)));
    if (c.active > 0) {
      r.add_row(validation_row("GuardZone", "p_sec", p_sec_gz(p, design),
                               mc::estimate_proportion(c.secure_given_active, c.active)));
    } else {
      r.add_row({std::string("GuardZone"), std::string("p_sec"), prob(p_sec_gz(p, design)),
                 std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                 std::uint64_t{0}, std::monostate{}, std::monostate{},
                 std::string("insufficient-data")});
      result.exit_code = kExitInsufficientData;
    }
  } else {
    const NoiseSplitDesign design{*cfg.gamma};
    const mc::AnCounts c = mc::count_an_trials(p, design, cfg.trials);
    window = c.window_radius;
    r.add_row(validation_row("ArtificialNoise", "p_cov", p_cov_an(p, design),
                             mc::estimate_proportion(c.covered, c.trials)));
    r.add_row(validation_row("ArtificialNoise", "p_sec", p_sec_an(p, design),
                             mc::estimate_proportion(c.secure, c.trials)));
  }
  r.summary["trials"] = cfg.trials.n_trials;
  r.summary["seed"] = cfg.trials.seed;
  r.summary["window_radius"] = window;
  result.report = std::move(r);
  return result;
}

CommandResult cmd_sweep_d(const RunConfig& cfg) {
  const std::vector<double> grid = cfg.grid.value_or(Grid{0.1, 1.5, 0.05}).points();
  if (grid.front() <= 0.0) throw UsageError("distance grid must stay above 0");

  Report r = new_report("sweep-d", cfg,
                        {"d", "f_value", "verdict", "r_g_star", "gamma_star", "p_cov_gz",
                         "p_sec_gz", "p_cov_an", "p_sec_an", "d_star", "mc_p_cov_gz", "mc_hw_gz",
                         "mc_p_cov_an", "mc_hw_an", "mc_agreement"});
  SystemParams p = cfg.params;
  const bool binding = p.lambda_e >= lambda_threshold(p) * (1.0 - kThresholdRelTol);
  const OptimalDesign gz = optimal_guard_radius(p);
  const OptimalDesign an = optimal_power_split(p);

  Cell d_star;
  if (binding) {
    const CriticalDistance cd = critical_distance(p);
    d_star = cd.d_star;
    r.summary["d_star"] = cd.d_star;
  } else {
    r.summary["d_star"] = nullptr;
  }
  r.summary["lambda_star"] = lambda_threshold(p);
  r.summary["trials"] = cfg.trials_given ? nlohmann::ordered_json(cfg.trials.n_trials) : nullptr;
  r.summary["seed"] = cfg.trials.seed;

  for (double d : grid) {
    p.d = d;
    const double cov_gz = p_cov_gz(p, GuardZoneDesign{gz.parameter});
    const double cov_an = p_cov_an(p, NoiseSplitDesign{an.parameter});
    Cell f_cell;
    std::string verdict = kNoEnhancement;
    double f = 0.0;
    if (binding) {
      f = selection_value(p);
      f_cell = f;
      verdict = std::string(to_string(f > 0.0 ? Technique::GuardZone : Technique::ArtificialNoise));
    }

    std::vector<Cell> row = {d,        f_cell,           verdict,          gz.parameter,
                             an.parameter, prob(cov_gz), prob(gz.metrics.p_sec), prob(cov_an),
                             prob(an.metrics.p_sec), d_star};
    if (cfg.trials_given) {
      const mc::GzCounts gc = mc::count_gz_trials(p, GuardZoneDesign{gz.parameter}, cfg.trials);
      const mc::AnCounts ac = mc::count_an_trials(p, NoiseSplitDesign{an.parameter}, cfg.trials);
      const mc::McEstimate eg = mc::estimate_proportion(gc.covered, gc.trials);
      const mc::McEstimate ea = mc::estimate_proportion(ac.covered, ac.trials);
      row.insert(row.end(), {prob(eg.mean), prob(eg.half_width), prob(ea.mean), prob(ea.half_width)});
      row.push_back(binding ? sign_agreement(eg.mean, eg.half_width, ea.mean, ea.half_width, f)
                            : Cell{});
    } else {
      row.insert(row.end(), 5, std::monostate{});
    }
    r.add_row(std::move(row));
  }
  return {std::move(r), kExitOk, {}};
}

CommandResult cmd_sweep_lambda(const RunConfig& cfg) {
  const std::vector<double> grid = cfg.grid.value_or(Grid{0.05, 0.25, 0.025}).points();
  if (grid.front() < 0.0) throw UsageError("density grid must be non-negative");

  Report r = new_report("sweep-lambda", cfg,
                        {"lambda_e", "lambda_star", "status", "d_star", "d_lo", "d_hi"});
  SystemParams p = cfg.params;
  const double threshold = lambda_threshold(p);
  bool nondecreasing = true;
  double prev = -std::numeric_limits<double>::infinity();

  for (double lambda : grid) {
    p.lambda_e = lambda;
    if (lambda < threshold * (1.0 - kThresholdRelTol)) {
      // Both techniques coincide at every distance; report the lower clamp.
      const auto [lo, hi] = kDefaultDistanceBracket;
      r.add_row({lambda, threshold, std::string(kNoEnhancement), lo, lo, hi});
      continue;
    }
    try {
      const CriticalDistance cd = critical_distance(p);
      if (cd.d_star < prev) nondecreasing = false;
      prev = cd.d_star;
      r.add_row({lambda, threshold, std::string("ok"), cd.d_star, cd.d_lo, cd.d_hi});
    } catch (const NoCrossingError& e) {
      r.add_row({lambda, threshold, std::string("no-crossing"), std::monostate{}, e.d_lo(), e.d_hi()});
    } catch (const NumericalFailure&) {
      r.add_row({lambda, threshold, std::string("numerical-failure"), std::monostate{},
                 std::monostate{}, std::monostate{}});
    }
  }
  r.summary["lambda_star"] = threshold;
  r.summary["nondecreasing"] = nondecreasing;
  return {std::move(r), kExitOk, {}};
}

}  // namespace d2dsec::cli
