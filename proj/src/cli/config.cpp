#include "d2dsec/cli/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace d2dsec::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  for (char& c : k) {
    if (c == '-') c = '_';
  }
  if (k == "pt") k = "p_t";
  if (k == "mc") k = "trials";
  return k;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw UsageError("invalid number '" + s + "' for " + std::string(key));
  }
  return v;
}

// Accepts "1000000" as well as "1e6".
std::uint64_t parse_count(std::string_view key, std::string_view text) {
  const double v = parse_real(key, text);
  if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
    throw UsageError("expected a non-negative integer for " + std::string(key));
  }
  return static_cast<std::uint64_t>(v);
}

template <typename T>
void take(std::optional<T>& mine, const std::optional<T>& theirs) {
  if (theirs) mine = theirs;
}

}  // namespace

void Options::overlay(const Options& o) {
  take(alpha, o.alpha);
  take(p_t, o.p_t);
  take(beta_t, o.beta_t);
  take(beta_e, o.beta_e);
  take(epsilon, o.epsilon);
  take(sigma2_p, o.sigma2_p);
  take(sigma2_s, o.sigma2_s);
  take(lambda_e, o.lambda_e);
  take(d, o.d);
  take(r_g, o.r_g);
  take(gamma, o.gamma);
  take(trials, o.trials);
  take(seed, o.seed);
  take(threads, o.threads);
  take(window_radius, o.window_radius);
  take(tail_prob, o.tail_prob);
  take(grid_start, o.grid_start);
  take(grid_stop, o.grid_stop);
  take(grid_step, o.grid_step);
  take(format, o.format);
  take(out, o.out);
}

void Options::set(std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  std::optional<double>* real = nullptr;
  if (key == "alpha") real = &alpha;
  else if (key == "p_t") real = &p_t;
  else if (key == "beta_t") real = &beta_t;
  else if (key == "beta_e") real = &beta_e;
  else if (key == "epsilon") real = &epsilon;
  else if (key == "sigma2_p") real = &sigma2_p;
  else if (key == "sigma2_s") real = &sigma2_s;
  else if (key == "lambda_e") real = &lambda_e;
  else if (key == "d") real = &d;
  else if (key == "r_g") real = &r_g;
  else if (key == "gamma") real = &gamma;
  else if (key == "window_radius") real = &window_radius;
  else if (key == "tail_prob") real = &tail_prob;
  else if (key == "grid_start") real = &grid_start;
  else if (key == "grid_stop") real = &grid_stop;
  else if (key == "grid_step") real = &grid_step;

  if (real) {
    *real = parse_real(key, value);
  } else if (key == "trials") {
    trials = parse_count(key, value);
  } else if (key == "seed") {
    seed = parse_count(key, value);
  } else if (key == "threads") {
    threads = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "format") {
    format = std::string(trim(value));
  } else if (key == "out") {
    out = std::string(trim(value));
  } else {
    throw UsageError("unknown setting '" + std::string(raw_key) + "'");
  }
}

Options parse_config_text(std::string_view text) {
  Options options;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto comment = line.find_first_of("#;");
    line = trim(line.substr(0, comment));
    if (line.empty() || (line.front() == '[' && line.back() == ']')) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      options.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return options;
}

Options load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<double> Grid::points() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(step > 0.0) ||
      stop < start) {
    throw UsageError("grid needs finite start <= stop and step > 0");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) throw UsageError("grid has more than a million points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) pts[i] = start + static_cast<double>(i) * step;
  if (std::abs(pts.back() - stop) <= 1e-9 * step) pts.back() = stop;
  return pts;
}

RunConfig make_run_config(const Options& o) {
  RunConfig cfg;
  SystemParams& p = cfg.params;
  p.alpha = o.alpha.value_or(p.alpha);
  p.p_t = o.p_t.value_or(p.p_t);
  p.beta_t = o.beta_t.value_or(p.beta_t);
  p.beta_e = o.beta_e.value_or(p.beta_e);
  p.epsilon = o.epsilon.value_or(p.epsilon);
  p.sigma2_p = o.sigma2_p.value_or(p.sigma2_p);
  p.sigma2_s = o.sigma2_s.value_or(p.sigma2_s);
  p.lambda_e = o.lambda_e.value_or(p.lambda_e);
  cfg.has_d = o.d.has_value();
  p.d = o.d.value_or(1.0);
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  cfg.r_g = o.r_g;
  cfg.gamma = o.gamma;
  if (cfg.r_g && !(*cfg.r_g >= 0.0)) throw UsageError("--r-g must be >= 0");
  if (cfg.gamma && !(*cfg.gamma > 0.0 && *cfg.gamma <= 1.0)) {
    throw UsageError("--gamma must lie in (0, 1]");
  }

  cfg.trials_given = o.trials.has_value();
  cfg.trials.n_trials = o.trials.value_or(cfg.trials.n_trials);
  cfg.trials.seed = o.seed.value_or(cfg.trials.seed);
  cfg.trials.threads = o.threads.value_or(0);
  cfg.trials.window_radius = o.window_radius;
  cfg.trials.tail_prob = o.tail_prob.value_or(cfg.trials.tail_prob);
  try {
    cfg.trials.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  if (o.grid_start || o.grid_stop || o.grid_step) {
    if (!(o.grid_start && o.grid_stop && o.grid_step)) {
      throw UsageError("--grid-start, --grid-stop and --grid-step go together");
    }
    cfg.grid = Grid{*o.grid_start, *o.grid_stop, *o.grid_step};
  }

  cfg.output_path = o.out.value_or("-");
  const std::string format = o.format.value_or("csv");
  if (format == "csv") {
    cfg.output_format = OutputFormat::Csv;
  } else if (format == "json") {
    cfg.output_format = OutputFormat::Json;
  } else {
    throw UsageError("--format must be csv or json");
  }
  return cfg;
}

}  // namespace d2dsec::cli
