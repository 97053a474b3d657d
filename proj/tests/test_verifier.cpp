#include "doctest.h"

#include <cmath>

#include "entgen/verifier.hpp"

using namespace entgen;

TEST_CASE("monte carlo verification") {
  verify::TrialConfig config;
  config.n_trials = 1500;
  config.seed = 42;
  config.n_cross_checks = 4;

  SUBCASE("default suite has zero violations") {
    const auto report = verify::run_monte_carlo(config);
    CHECK(report.all_passed());
    CHECK(report.trials == 1500);
    CHECK(report.cross_check_max <= 1e-8);
    for (const auto& stat : report.inequalities) {
      CHECK(stat.passes == stat.applicable);
      if (stat.applicable > 0) CHECK(stat.worst_margin >= -config.inequality_tol);
    }
  }

  SUBCASE("reports are bit-identical for a fixed seed") {
    const auto a = verify::run_monte_carlo(config).to_json().dump();
    const auto b = verify::run_monte_carlo(config).to_json().dump();
    CHECK(a == b);
  }

  SUBCASE("different seeds explore different protocols") {
    auto other = config;
    other.seed = 43;
    CHECK(verify::run_monte_carlo(config).to_json().dump() !=
          verify::run_monte_carlo(other).to_json().dump());
  }

  SUBCASE("discrimination trials saturate the trade-off") {
    auto usd = config;
    usd.strategy = verify::StrategyKind::usd;
    usd.n_trials = 400;
    const auto report = verify::run_monte_carlo(usd);
    CHECK(report.all_passed());
    for (const auto& stat : report.inequalities) {
      if (stat.name == "psf_tradeoff" || stat.name == "success_probability_cap") {
        CHECK(stat.applicable == 400);
        CHECK(std::abs(stat.worst_margin) <= 1e-9);  // on the boundary
      }
    }
  }

  SUBCASE("trivial trials sit at the always-succeed apex") {
    auto trivial = config;
    trivial.strategy = verify::StrategyKind::trivial;
    trivial.n_trials = 50;
    trivial.n_cross_checks = 0;
    const auto report = verify::run_monte_carlo(trivial);
    CHECK(report.all_passed());
    for (const auto& stat : report.inequalities) {
      if (stat.name == "triangle_containment") CHECK(stat.applicable == 50);
      // The trade-off family does not constrain the degenerate preparation.
      if (stat.name == "psf_tradeoff") CHECK(stat.applicable == 0);
    }
  }

  SUBCASE("config validation") {
    auto bad = config;
    bad.n_trials = 0;
    CHECK_THROWS_AS(verify::run_monte_carlo(bad), std::invalid_argument);
    bad = config;
    bad.transmittance = {0.0, 0.9};
    CHECK_THROWS_AS(verify::run_monte_carlo(bad), std::invalid_argument);
  }
}

TEST_CASE("report serialization carries the schema fields") {
  verify::TrialConfig config;
  config.n_trials = 20;
  config.seed = 7;
  config.n_cross_checks = 1;
  const auto json = verify::run_monte_carlo(config).to_json();
  CHECK(json.contains("trials"));
  CHECK(json.contains("inequalities"));
  CHECK(json.contains("cross_check_max"));
  CHECK(json.contains("seed"));
  CHECK(json["seed"] == 7);
  REQUIRE(json["inequalities"].is_array());
  for (const auto& ineq : json["inequalities"]) {
    CHECK(ineq.contains("name"));
    CHECK(ineq.contains("passes"));
    CHECK(ineq.contains("worst_margin"));
    CHECK(ineq.contains("worst_trial"));
  }
}

TEST_CASE("representation cross validation") {
  SUBCASE("discrimination strategy at moderate amplitude") {
    protocol::ProtocolParams p;
    p.q0 = 0.5;
    p.alpha0 = 1.0;
    p.alpha1 = -1.0;
    p.transmittance = 0.5;
    const fock::TruncationPolicy policy{40, 1e-12};
    const double dev = verify::cross_validate_representations(
        p, strategies::usd_strategy(p), policy);
    CHECK(dev <= 1e-8);
  }

  SUBCASE("random compliant draw") {
    RandomStream rng(7);
    auto p = protocol::ProtocolParams::phase_rotation(0.35, 1.1, 0.8, 0.45);
    p.theta0 = 0.4;
    p.theta1 = 2.1;
    const auto w = fock::coherent_overlap(p.transmitted_amplitude(0),
                                          p.transmitted_amplitude(1));
    const auto strategy = strategies::sample_compliant_strategy(rng, 2, w);
    const fock::TruncationPolicy policy{40, 1e-12};
    CHECK(verify::cross_validate_representations(p, strategy, policy) <= 1e-8);
  }

  SUBCASE("degenerate preparation") {
    protocol::ProtocolParams p;
    p.q0 = 1.0;
    p.alpha0 = 0.9;
    p.alpha1 = -0.9;
    p.transmittance = 0.5;
    const auto w = fock::coherent_overlap(p.transmitted_amplitude(0),
                                          p.transmitted_amplitude(1));
    RandomStream rng(11);
    const auto strategy = strategies::sample_compliant_strategy(rng, 2, w);
    const fock::TruncationPolicy policy{40, 1e-12};
    CHECK(verify::cross_validate_representations(p, strategy, policy) <= 1e-10);
  }
}

TEST_CASE("hull reconstruction of the optimal curve") {
  SUBCASE("concave regime: hull equals the curve") {
    CHECK(verify::hull_check(0.6, 10000) <= 1e-9);
  }

  SUBCASE("kinked regime at grid resolution") {
    CHECK(verify::hull_check(0.25, 10000) <= 5e-4);
  }

  SUBCASE("kink location shows up in the hull") {
    // At T = 0.45 the hull departs from the symmetric curve at T/(1-T) = 9/11.
    CHECK(bounds::ps_star(0.45) == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
    const int grid = 10000;
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < grid; ++i) {
      const double ps = static_cast<double>(i) / (grid - 1);
      pts.push_back({ps, ps * bounds::f_sym(ps, 0.45)});
    }
    const auto hull = bounds::upper_convex_hull(pts);
    // The last hull vertex before the terminal segment approximates the kink.
    double kink_vertex = 0.0;
    for (const auto& v : hull) {
      if (v[0] < 1.0) kink_vertex = v[0];
    }
    CHECK(kink_vertex == doctest::Approx(9.0 / 11.0).epsilon(1e-3));
  }

  SUBCASE("grid floor enforced") {
    CHECK_THROWS_AS(verify::hull_check(0.25, 10), std::invalid_argument);
  }
}
