#include <doctest.h>

#include <cmath>
#include <numbers>

#include "d2dsec/errors.h"
#include "d2dsec/montecarlo.h"
#include "d2dsec/optimizer.h"
#include "d2dsec/specfun.h"
#include "test_params.h"

using namespace d2dsec;
using namespace d2dsec::mc;
using testing::reference;

namespace {

TrialConfig config(std::uint64_t n, std::uint64_t seed = 42) {
  TrialConfig cfg;
  cfg.n_trials = n;
  cfg.seed = seed;
  return cfg;
}

bool within(const McEstimate& e, double truth, double k = 3.0) {
  return std::abs(e.mean - truth) <= k * e.half_width;
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("automatic window radius") {
    const SystemParams p = reference(0.1);
    const double r = auto_window_radius(p, 1e-4);
    // Gamma(1/2, R^4) = 2e-4 / (0.1 pi), solved at 30 digits.
    CHECK(r == doctest::Approx(1.58846987938188).epsilon(1e-8));
    const double tail = secrecy_exponent_scale(p) *
                        specfun::upper_incomplete_gamma(p.shape(), guard_gamma_argument(p, r));
    CHECK(tail < 1e-4);
    CHECK(tail > 0.99e-4);

    CHECK(auto_window_radius(p, 0.5) == 0.0);
    CHECK(auto_window_radius(p, 1e-6) > r);
    CHECK(auto_window_radius(reference(0.0), 1e-4) == kMinimalWindowRadius);
    CHECK_THROWS_AS(auto_window_radius(p, 0.0), DomainError);
    CHECK_THROWS_AS(auto_window_radius(p, 1.0), DomainError);
  }

  TEST_CASE("empty field without eavesdroppers") {
    const EavesdropperField f = sample_field(reference(0.0), 5.0, 3, 1);
    CHECK(f.points.empty());
    CHECK(strongest_received_power(f, reference(0.0)) == 0.0);
    CHECK_THROWS_AS(sample_field(reference(0.1), 0.0, 0, 0), DomainError);
  }

  TEST_CASE("field point counts are Poisson with mean lambda pi R^2") {
    const SystemParams p = reference(0.1);
    const double radius = 5.0;
    const int n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    std::uint64_t inner = 0;
    std::uint64_t total = 0;
    for (int t = 0; t < n; ++t) {
      const EavesdropperField f = sample_field(p, radius, t, 99);
      const double k = static_cast<double>(f.points.size());
      sum += k;
      sum2 += k * k;
      for (std::size_t i = 0; i < f.points.size(); ++i) {
        const double r = std::hypot(f.points[i].x, f.points[i].y);
        CHECK(r <= radius);
        CHECK(f.fading[i] > 0.0);
        inner += r < radius / 2.0;
        ++total;
      }
    }
    const double mean = 0.1 * std::numbers::pi * 25.0;  // 7.854
    const double sample_mean = sum / n;
    CHECK(std::abs(sample_mean - mean) <= 3.0 * std::sqrt(mean / n));
    const double var = sum2 / n - sample_mean * sample_mean;
    CHECK(var == doctest::Approx(mean).epsilon(0.03));
    // Uniform on the disk: a quarter of the points fall inside half the radius.
    const double frac = static_cast<double>(inner) / static_cast<double>(total);
    CHECK(std::abs(frac - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / total));
  }

  TEST_CASE("large-mean point counts") {
    const SystemParams p = reference(1.0);
    const double radius = 10.0;
    const double mean = std::numbers::pi * 100.0;
    const int n = 20000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int t = 0; t < n; ++t) {
      const double k = static_cast<double>(sample_field(p, radius, t, 5).points.size());
      sum += k;
      sum2 += k * k;
    }
    const double sample_mean = sum / n;
    CHECK(std::abs(sample_mean - mean) <= 3.0 * std::sqrt(mean / n));
    CHECK(sum2 / n - sample_mean * sample_mean == doctest::Approx(mean).epsilon(0.05));
  }

  TEST_CASE("fields are a pure function of seed and trial") {
    const SystemParams p = reference(0.3);
    const EavesdropperField a = sample_field(p, 4.0, 17, 123);
    const EavesdropperField b = sample_field(p, 4.0, 17, 123);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].x == b.points[i].x);
      CHECK(a.points[i].y == b.points[i].y);
      CHECK(a.fading[i] == b.fading[i]);
    }
    const EavesdropperField c = sample_field(p, 4.0, 18, 123);
    const EavesdropperField d = sample_field(p, 4.0, 17, 124);
    CHECK((c.points.size() != a.points.size() || c.fading != a.fading));
    CHECK((d.points.size() != a.points.size() || d.fading != a.fading));
  }

  TEST_CASE("strongest received power") {
    const SystemParams p = reference();
    EavesdropperField f;
    CHECK(strongest_received_power(f, p) == 0.0);
    f.points = {{2.0, 0.0}};
    f.fading = {1.0};
    CHECK(strongest_received_power(f, p) == doctest::Approx(0.0625));
    f.points = {{0.0, 1.0}, {0.0, -2.0}};
    f.fading = {0.5, 16.0};
    CHECK(strongest_received_power(f, p) == doctest::Approx(1.0));
    CHECK(strongest_received_power(f, p, 1.5) == doctest::Approx(1.0));
    CHECK(strongest_received_power(f, p, 2.5) == 0.0);
    f.points.push_back({0.0, 0.0});
    f.fading.push_back(1.0);
    CHECK_THROWS_AS(strongest_received_power(f, p), ExcludedRegionError);
  }

  TEST_CASE("proportion intervals") {
    const McEstimate big = estimate_proportion(500, 1000);
    CHECK(big.method == IntervalMethod::Normal);
    CHECK(big.half_width == doctest::Approx(1.959963984540054 * std::sqrt(0.25 / 1000)));
    const McEstimate bigger = estimate_proportion(2000, 4000);
    CHECK(bigger.half_width == doctest::Approx(big.half_width / 2.0));

    const McEstimate none = estimate_proportion(0, 100);
    CHECK(none.method == IntervalMethod::ClopperPearson);
    CHECK(none.ci_lo == 0.0);
    CHECK(none.ci_hi == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 100.0)));
    CHECK(none.half_width > 0.0);

    const McEstimate all = estimate_proportion(100, 100);
    CHECK(all.mean == 1.0);
    CHECK(all.ci_hi == 1.0);
    CHECK(all.ci_lo == doctest::Approx(std::pow(0.025, 1.0 / 100.0)));

    // Few successes widen the exact interval beyond the normal one.
    const McEstimate rare = estimate_proportion(3, 100);
    CHECK(rare.method == IntervalMethod::ClopperPearson);
    CHECK(rare.half_width > 1.959963984540054 * std::sqrt(0.03 * 0.97 / 100));

    CHECK_THROWS_AS(estimate_proportion(0, 0), InsufficientDataError);
    CHECK_THROWS_AS(estimate_proportion(5, 4), DomainError);
  }

  TEST_CASE("single trials respect the definitions") {
    const SystemParams p = reference(0.3, 0.7);
    for (std::uint64_t t = 0; t < 2000; ++t) {
      const TrialOutcome o = gz_trial(p, GuardZoneDesign{0.8}, 3.0, t, 7);
      if (o.covered) CHECK(o.active);
      CHECK(o.secure.has_value() == o.active);
      const TrialOutcome a = an_trial(p, NoiseSplitDesign{0.7}, 3.0, t, 7);
      CHECK(a.active);
      CHECK(a.secure.has_value());
    }
    CHECK_THROWS_AS(an_trial(p, NoiseSplitDesign{0.0}, 3.0, 0, 0), DegenerateDesign);
  }

  TEST_CASE("guard-zone estimates agree with the closed forms") {
    const SystemParams p = reference(0.1, 1.0);
    const GzEstimates zone = run_gz_trials(p, GuardZoneDesign{1.0}, config(200000));
    CHECK(within(zone.p_active, p_active(p, GuardZoneDesign{1.0})));
    CHECK(within(zone.p_cov, p_cov_gz(p, GuardZoneDesign{1.0})));
    CHECK(within(zone.p_sec, p_sec_gz(p, GuardZoneDesign{1.0})));

    const GzEstimates open = run_gz_trials(p, GuardZoneDesign{0.0}, config(200000));
    CHECK(open.p_active.mean == 1.0);
    CHECK(within(open.p_cov, 0.1353353));
    CHECK(within(open.p_sec, 0.756982));
  }

  TEST_CASE("artificial-noise estimates agree with the closed forms") {
    const SystemParams p = reference(0.1, 1.0);
    const AnEstimates half = run_an_trials(p, NoiseSplitDesign{0.5}, config(100000));
    CHECK(half.p_sec.mean == 1.0);

    const AnEstimates opt = run_an_trials(p, NoiseSplitDesign{0.5716}, config(200000));
    CHECK(within(opt.p_sec, p_sec_an(p, NoiseSplitDesign{0.5716})));
    CHECK(within(opt.p_cov, p_cov_an(p, NoiseSplitDesign{0.5716})));

    const AnEstimates full = run_an_trials(p, NoiseSplitDesign{1.0}, config(200000));
    CHECK(within(full.p_cov, 0.1353353));
  }

  TEST_CASE("null designs give identical estimates on the same seed") {
    const SystemParams p = reference(0.1, 0.8);
    const GzCounts gz = count_gz_trials(p, GuardZoneDesign{0.0}, config(50000, 9));
    const AnCounts an = count_an_trials(p, NoiseSplitDesign{1.0}, config(50000, 9));
    CHECK(gz.secure_given_active == an.secure);
    CHECK(gz.covered == an.covered);
  }

  TEST_CASE("results do not depend on the thread count") {
    const SystemParams p = reference(0.2, 0.6);
    TrialConfig one = config(30001, 5);
    one.threads = 1;
    TrialConfig many = one;
    many.threads = 7;
    const GzCounts a = count_gz_trials(p, GuardZoneDesign{0.5}, one);
    const GzCounts b = count_gz_trials(p, GuardZoneDesign{0.5}, many);
    CHECK(a.active == b.active);
    CHECK(a.covered == b.covered);
    CHECK(a.secure_given_active == b.secure_given_active);
    CHECK(a.secure_unconditioned == b.secure_unconditioned);
    const AnCounts c = count_an_trials(p, NoiseSplitDesign{0.7}, one);
    const AnCounts d = count_an_trials(p, NoiseSplitDesign{0.7}, many);
    CHECK(c.covered == d.covered);
    CHECK(c.secure == d.secure);
  }

  TEST_CASE("unconditioned secrecy does not match the conditioned law") {
    const SystemParams p = reference(0.1, 1.0);
    const double r_g = optimal_guard_radius(p).parameter;
    const GzEstimates e = run_gz_trials(p, GuardZoneDesign{r_g}, config(200000));
    CHECK(within(e.p_sec, 0.9));
    CHECK_FALSE(within(e.p_sec_unconditioned, 0.9));
  }

  TEST_CASE("secrecy falls with the information fraction on shared fields") {
    const SystemParams p = reference(0.15, 1.0);
    std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
    for (double g : {0.55, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      const AnCounts c = count_an_trials(p, NoiseSplitDesign{g}, config(50000, 3));
      CHECK(c.secure <= prev);
      prev = c.secure;
    }
  }

  TEST_CASE("doubling the window leaves the estimates unchanged") {
    const SystemParams p = reference(0.1, 1.0);
    TrialConfig cfg = config(200000, 8);
    const double r = auto_window_radius(p, cfg.tail_prob);
    cfg.window_radius = r;
    const GzEstimates a = run_gz_trials(p, GuardZoneDesign{0.0}, cfg);
    cfg.window_radius = 2.0 * r;
    const GzEstimates b = run_gz_trials(p, GuardZoneDesign{0.0}, cfg);
    const double hw = std::hypot(a.p_sec.half_width, b.p_sec.half_width);
    CHECK(std::abs(a.p_sec.mean - b.p_sec.mean) <= cfg.tail_prob + hw);
    CHECK(std::abs(a.p_cov.mean - b.p_cov.mean) <= cfg.tail_prob + hw);
  }

  TEST_CASE("no active trials") {
    const SystemParams p = reference(10.0, 1.0);
    CHECK_THROWS_AS(run_gz_trials(p, GuardZoneDesign{3.0}, config(1000)), InsufficientDataError);
    const GzCounts c = count_gz_trials(p, GuardZoneDesign{3.0}, config(1000));
    CHECK(c.active == 0);
  }

  TEST_CASE("configuration checks") {
    const SystemParams p = reference(0.1);
    TrialConfig cfg = config(0);
    CHECK_THROWS_AS(run_gz_trials(p, GuardZoneDesign{0.0}, cfg), DomainError);
    cfg = config(10);
    cfg.window_radius = 0.5;
    CHECK_THROWS_AS(run_gz_trials(p, GuardZoneDesign{0.8}, cfg), DomainError);
    cfg.tail_prob = 0.0;
    CHECK_THROWS_AS(run_an_trials(p, NoiseSplitDesign{1.0}, cfg), DomainError);
    CHECK(resolve_window_radius(p, config(10), 5.0) > 5.0);
  }
}
