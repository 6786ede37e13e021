#include <doctest.h>

#include <cmath>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "tailcr/errors.hpp"
#include "tailcr/estimators.hpp"
#include "tailcr/rng.hpp"
#include "tailcr/sample.hpp"

using tailcr::CompetingRisksSample;
using tailcr::Observation;
using tailcr::ThresholdChoice;

namespace {

CompetingRisksSample uncensored(std::vector<double> z) {
  std::vector<Observation> obs;
  for (double v : z) obs.push_back(Observation::event(v, 1));
  return CompetingRisksSample(std::move(obs), 1);
}

// Four subjects: cause-1 failures at 1 and 4, a censoring at 2, a cause-2
// failure at 3. With k_n = 3 the threshold is 1, G-bar_n(4-) = 2/3,
// F-bar_n^(1)(1) = 3/8, and gamma_aj = log 4.
CompetingRisksSample four_point_sample() {
  return CompetingRisksSample({Observation::event(1.0, 1), Observation::censored(2.0),
                               Observation::event(3.0, 2), Observation::event(4.0, 1)},
                              2);
}

std::vector<oracles::TimedIndicator> to_indicators(const CompetingRisksSample& sample, int cause) {
  std::vector<oracles::TimedIndicator> data;
  for (const Observation& o : sample.observations()) {
    data.push_back({o.z, o.delta && o.cause == cause ? 1 : 0});
  }
  return data;
}

}  // namespace

TEST_CASE("threshold resolution") {
  const CompetingRisksSample sample = uncensored({1.0, 2.0, 3.0});
  CHECK(ThresholdChoice::top_order(1).resolve(sample) == 2.0);
  CHECK(ThresholdChoice::top_order(2).resolve(sample) == 1.0);
  CHECK(ThresholdChoice::deterministic(2.5).resolve(sample) == 2.5);
  CHECK_THROWS_AS(ThresholdChoice::top_order(3).resolve(sample), tailcr::stat_error);
  CHECK_THROWS_AS(ThresholdChoice::top_order(0), tailcr::stat_error);
  CHECK_THROWS_AS(ThresholdChoice::deterministic(-1.0), tailcr::stat_error);
}

TEST_CASE("gamma_aj reduces to the Hill estimator without censoring") {
  const double e = std::exp(1.0);
  const CompetingRisksSample sample = uncensored({1.0, e, e * e});

  const tailcr::TailFit fit = tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(2));
  CHECK(fit.gamma_hat == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fit.threshold == 1.0);
  CHECK(fit.n_exceed_cause == 2);
  CHECK(fit.aj_tail_mass == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(fit.km_censor_at_threshold == 1.0);
  CHECK(fit.v_n_hat == doctest::Approx(2.0).epsilon(1e-14));

  // single log-ratio of e
  const tailcr::TailFit top1 = tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(1));
  CHECK(top1.gamma_hat == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma_aj hand computation with censoring and two causes") {
  const tailcr::TailFit fit =
      tailcr::gamma_aj(four_point_sample(), 1, ThresholdChoice::top_order(3));
  CHECK(fit.threshold == 1.0);
  CHECK(fit.gamma_hat == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(fit.aj_tail_mass == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  CHECK(fit.n_exceed_cause == 1);
  CHECK(fit.km_censor_at_threshold == 1.0);
  CHECK(fit.v_n_hat == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("gamma_aj error paths") {
  const CompetingRisksSample sample = four_point_sample();
  CHECK_THROWS_AS(tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(4)), tailcr::stat_error);
  CHECK_THROWS_AS(tailcr::gamma_aj(sample, 3, ThresholdChoice::top_order(2)), tailcr::stat_error);
  // threshold above every cause-1 failure
  try {
    tailcr::gamma_aj(sample, 2, ThresholdChoice::deterministic(3.5));
    CHECK(false);
  } catch (const tailcr::stat_error& e) {
    CHECK(e.code() == tailcr::errc::no_exceedance);
  }
}

TEST_CASE("property: scale equivariance of gamma_aj with top-order thresholds") {
  tailcr::SplitMix64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const CompetingRisksSample sample =
        generators::censored_two_cause(rng, 60, 0.2, 0.4, 0.35, 0.7);
    const std::size_t kn = 5 + static_cast<std::size_t>(rng.next_uniform() * 40);
    tailcr::TailFit base;
    try {
      base = tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(kn));
    } catch (const tailcr::stat_error&) {
      continue;
    }
    // powers of two scale exactly in floating point
    for (double factor : {0.25, 4.0, 1024.0}) {
      const tailcr::TailFit scaled =
          tailcr::gamma_aj(tailcr::scale_times(sample, factor), 1, ThresholdChoice::top_order(kn));
      CHECK(scaled.gamma_hat == base.gamma_hat);
      CHECK(scaled.aj_tail_mass == base.aj_tail_mass);
    }
    const tailcr::TailFit scaled =
        tailcr::gamma_aj(tailcr::scale_times(sample, 3.7), 1, ThresholdChoice::top_order(kn));
    CHECK(scaled.gamma_hat == doctest::Approx(base.gamma_hat).epsilon(1e-12));
  }
}

TEST_CASE("gamma_bdfg equals Hill for a single fully observed cause") {
  tailcr::SplitMix64 rng(12);
  const std::vector<double> z = generators::frechet_values(rng, 120, 0.4);
  const CompetingRisksSample sample = uncensored(z);
  for (std::size_t kn : {5, 20, 80}) {
    const double hill = oracles::hill(z, kn);
    CHECK(tailcr::gamma_bdfg(sample, 1, kn).gamma_hat == doctest::Approx(hill).epsilon(1e-13));
    CHECK(tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(kn)).gamma_hat ==
          doctest::Approx(hill).epsilon(1e-13));
    CHECK(tailcr::gamma_km(sample, 1, kn).gamma_hat == doctest::Approx(hill).epsilon(1e-13));
  }
}

TEST_CASE("gamma_bdfg inflates the Hill mean by 1 / p-hat") {
  const double e = std::exp(1.0);
  // threshold observation at 2, three tied exceedances at 2e; one of three
  // is a cause-1 failure
  const CompetingRisksSample one_of_three({Observation::event(2.0, 1), Observation::event(2.0 * e, 1),
                                           Observation::censored(2.0 * e),
                                           Observation::censored(2.0 * e)},
                                          1);
  const tailcr::TailFit fit = tailcr::gamma_bdfg(one_of_three, 1, 3);
  CHECK(fit.gamma_hat == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.n_exceed_cause == 1);

  const CompetingRisksSample all_three({Observation::event(2.0, 1), Observation::event(2.0 * e, 1),
                                        Observation::event(2.0 * e, 1),
                                        Observation::event(2.0 * e, 1)},
                                       1);
  CHECK(tailcr::gamma_bdfg(all_three, 1, 3).gamma_hat == doctest::Approx(1.0).epsilon(1e-14));

  const CompetingRisksSample none({Observation::event(2.0, 1), Observation::censored(2.0 * e),
                                   Observation::censored(2.0 * e), Observation::censored(2.0 * e)},
                                  1);
  CHECK_THROWS_AS(tailcr::gamma_bdfg(none, 1, 3), tailcr::stat_error);
}

TEST_CASE("gamma_km equals gamma_aj exactly for a single cause") {
  tailcr::SplitMix64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(rng.next_uniform() * 80);
    const double scale = 0.25 + 4.0 * rng.next_uniform();
    const CompetingRisksSample sample =
        generators::censored_single_risk(rng, n, 0.3, 0.45, scale);
    for (std::size_t kn = 1; kn < n; ++kn) {
      double aj = -1.0, km = -1.0;
      bool aj_failed = false, km_failed = false;
      try {
        aj = tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(kn)).gamma_hat;
      } catch (const tailcr::stat_error&) {
        aj_failed = true;
      }
      try {
        km = tailcr::gamma_km(sample, 1, kn).gamma_hat;
      } catch (const tailcr::stat_error&) {
        km_failed = true;
      }
      REQUIRE(aj_failed == km_failed);
      if (!aj_failed) {
        CHECK(std::abs(aj - km) <= 1e-12);
      }
    }
  }
}

TEST_CASE("gamma_km matches an independent transcription on two-cause data") {
  tailcr::SplitMix64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 40 + static_cast<std::size_t>(rng.next_uniform() * 60);
    const CompetingRisksSample sample =
        generators::censored_two_cause(rng, n, 0.25, 0.5, 0.4, 0.6);
    const auto data = to_indicators(sample, 1);
    for (std::size_t kn : {5ul, 10ul, n / 2}) {
      double lib = -1.0;
      try {
        lib = tailcr::gamma_km(sample, 1, kn).gamma_hat;
      } catch (const tailcr::stat_error&) {
        continue;
      }
      CHECK(lib == doctest::Approx(oracles::km_weighted(data, kn)).epsilon(1e-12));
    }
  }
}

TEST_CASE("moment_alpha normalization and consistency") {
  const CompetingRisksSample sample = four_point_sample();
  const ThresholdChoice thr = ThresholdChoice::top_order(3);
  CHECK(tailcr::moment_alpha(sample, 1, thr, 0.0) == 1.0);
  CHECK(tailcr::moment_alpha(sample, 1, thr, 1.0) ==
        tailcr::gamma_aj(sample, 1, thr).gamma_hat);

  const double e = std::exp(1.0);
  const CompetingRisksSample hill3 = uncensored({1.0, e, e * e});
  CHECK(tailcr::moment_alpha(hill3, 1, ThresholdChoice::top_order(2), 2.0) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(tailcr::moment_alpha(hill3, 1, ThresholdChoice::top_order(2), -0.5),
                  tailcr::stat_error);
}

TEST_CASE("property: estimates are nonnegative") {
  tailcr::SplitMix64 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 30 + static_cast<std::size_t>(rng.next_uniform() * 50);
    const CompetingRisksSample sample =
        generators::censored_two_cause(rng, n, 0.15, 0.35, 0.3, 0.5);
    for (std::size_t kn : {3ul, 10ul, n - 1}) {
      try {
        CHECK(tailcr::gamma_aj(sample, 1, ThresholdChoice::top_order(kn)).gamma_hat >= 0.0);
        CHECK(tailcr::gamma_bdfg(sample, 1, kn).gamma_hat >= 0.0);
        CHECK(tailcr::gamma_km(sample, 1, kn).gamma_hat >= 0.0);
      } catch (const tailcr::stat_error&) {
      }
    }
  }
}

TEST_CASE("weissman quantile worked examples") {
  // n = 10, no censoring: nine points below 10, largest at 10 e^0.5, k_n = 1
  // pins t_n = 10, tail mass 0.1, gamma_hat = 0.5.
  std::vector<double> z = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0, 10.0 * std::exp(0.5)};
  const CompetingRisksSample sample = uncensored(z);
  const ThresholdChoice thr = ThresholdChoice::top_order(1);
  const tailcr::TailFit fit = tailcr::gamma_aj(sample, 1, thr);
  CHECK(fit.threshold == 10.0);
  CHECK(fit.aj_tail_mass == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(fit.gamma_hat == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tailcr::weissman_quantile(sample, 1, thr, 0.001) == doctest::Approx(100.0).epsilon(1e-12));

  // direct formula arithmetic
  CHECK(tailcr::weissman_extrapolate(2.0, 0.16, 0.25, 0.01) == doctest::Approx(4.0).epsilon(1e-14));
  // boundary p = tail mass collapses to the threshold
  CHECK(tailcr::weissman_extrapolate(10.0, 0.1, 0.5, 0.1) == 10.0);

  try {
    tailcr::weissman_quantile(sample, 1, thr, 0.2);
    CHECK(false);
  } catch (const tailcr::stat_error& e) {
    CHECK(e.code() == tailcr::errc::extrapolation_order);
  }
  CHECK_THROWS_AS(tailcr::weissman_quantile(sample, 1, thr, 0.0), tailcr::stat_error);
}

TEST_CASE("property: weissman quantile is scale equivariant") {
  tailcr::SplitMix64 rng(808);
  const CompetingRisksSample sample = generators::censored_single_risk(rng, 100, 0.3, 0.5, 2.0);
  const ThresholdChoice thr = ThresholdChoice::top_order(30);
  const double q = tailcr::weissman_quantile(sample, 1, thr, 1e-4);
  for (double factor : {0.5, 8.0}) {
    const double scaled_q =
        tailcr::weissman_quantile(tailcr::scale_times(sample, factor), 1, thr, 1e-4);
    CHECK(scaled_q == factor * q);
  }
}

TEST_CASE("estimator ids round-trip by name") {
  using tailcr::EstimatorId;
  for (EstimatorId id : {EstimatorId::aj, EstimatorId::bdfg, EstimatorId::km}) {
    CHECK(tailcr::estimator_from_name(tailcr::estimator_name(id)) == id);
  }
  CHECK_THROWS_AS(tailcr::estimator_from_name("hill"), tailcr::stat_error);
}
