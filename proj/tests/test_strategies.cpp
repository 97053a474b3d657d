#include "doctest.h"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "entgen/qubit.hpp"
#include "entgen/strategies.hpp"

using namespace entgen;
using protocol::Complex;
using protocol::ProtocolParams;
using strategies::Matrix2;
using strategies::Vector2;

namespace {

// Symmetric preparation with a prescribed pulse overlap u at transmittance T.
ProtocolParams symmetric_params(double u, double transmittance) {
  const double beta = std::sqrt(-std::log(u) / (2.0 * transmittance));
  ProtocolParams p;
  p.q0 = 0.5;
  p.alpha0 = beta;
  p.alpha1 = -beta;
  p.transmittance = transmittance;
  return p;
}

ProtocolParams random_params(RandomStream& rng) {
  const double amp = rng.uniform(0.15, 2.5);
  const double half_angle = rng.uniform(0.05, 1.5);
  auto p = ProtocolParams::phase_rotation(rng.uniform(0.05, 0.95), amp, half_angle,
                                          rng.uniform(0.05, 0.95));
  p.theta0 = rng.uniform(0.0, 2.0 * M_PI);
  p.theta1 = rng.uniform(0.0, 2.0 * M_PI);
  return p;
}

}  // namespace

TEST_CASE("correction unitaries") {
  SUBCASE("aligned input needs no correction") {
    Vector2 w0, w1;
    w0 << 1.0 / std::sqrt(2.0), 0.0;
    w1 << 0.0, 1.0 / std::sqrt(2.0);
    const auto corr = strategies::correction_unitaries(w0, w1);
    CHECK((corr.alice - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((corr.bob - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("swapped memory labels need a bit flip on Bob") {
    Vector2 w0, w1;
    w0 << 0.0, 1.0 / std::sqrt(2.0);
    w1 << 1.0 / std::sqrt(2.0), 0.0;
    const auto corr = strategies::correction_unitaries(w0, w1);
    CHECK((corr.bob - qubit::sigma_x()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((corr.alice - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("output is a Schmidt form with nonnegative ordered weights") {
    RandomStream rng(17);
    for (int i = 0; i < 200; ++i) {
      Vector2 w0, w1;
      w0 << rng.normal_complex(), rng.normal_complex();
      // Orthogonal second branch with random scale.
      w1 << -std::conj(w0(1)), std::conj(w0(0));
      w1 *= rng.uniform(0.0, 1.5) * std::polar(1.0, rng.uniform(0.0, 2 * M_PI));
      const auto corr = strategies::correction_unitaries(w0, w1);
      CHECK((corr.alice * corr.alice.adjoint() - Matrix2::Identity())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      CHECK((corr.bob * corr.bob.adjoint() - Matrix2::Identity())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      Eigen::Vector4cd state;
      state << w0(0), w0(1), w1(0), w1(1);
      state.normalize();
      const Eigen::Vector4cd out =
          Eigen::kroneckerProduct(corr.alice, corr.bob) * state;
      CHECK(std::abs(out(1)) < 1e-12);
      CHECK(std::abs(out(2)) < 1e-12);
      CHECK(out(0).real() >= out(3).real() - 1e-12);
      CHECK(out(0).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(out(3).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(out(3).real() >= -1e-12);
    }
  }

  SUBCASE("fidelity of a corrected outcome in closed form") {
    // weights 0.8 / 0.2 under dephasing weight f = 0.9.
    Vector2 w0, w1;
    w0 << std::sqrt(0.8), 0.0;
    w1 << 0.0, std::sqrt(0.2);
    const auto corr = strategies::correction_unitaries(w0, w1);
    Eigen::Vector4cd state;
    state << w0(0), w0(1), w1(0), w1(1);
    const Eigen::Vector4cd out = Eigen::kroneckerProduct(corr.alice, corr.bob) * state;
    Eigen::Matrix4cd rho = out * out.adjoint();
    const Eigen::Matrix4cd z_a =
        Eigen::kroneckerProduct(qubit::sigma_z(), Matrix2::Identity());
    const double f = 0.9;
    const Eigen::Matrix4cd tau = f * rho + (1 - f) * z_a * rho * z_a;
    const auto phi = qubit::phi_plus();
    CHECK(std::real(phi.dot(tau * phi)) == doctest::Approx(0.82).epsilon(1e-12));
  }

  SUBCASE("non-orthogonal branches are rejected") {
    Vector2 w0, w1;
    w0 << 1.0, 0.0;
    w1 << 0.5, 0.5;
    CHECK_THROWS_AS(strategies::correction_unitaries(w0, w1), std::invalid_argument);
    CHECK_THROWS_AS(strategies::correction_unitaries(Vector2::Zero(), Vector2::Zero()),
                    std::invalid_argument);
  }
}

TEST_CASE("unambiguous discrimination strategy") {
  SUBCASE("reaches the symmetric-protocol performance") {
    const auto p = symmetric_params(0.5, 0.5);
    const auto eval = strategies::evaluate_strategy(p, strategies::usd_strategy(p));
    CHECK(eval.point.ps == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eval.point.fidelity() == doctest::Approx(0.75).epsilon(1e-12));
  }

  SUBCASE("hand-evaluated point at u = 0.6, T = 0.25") {
    const auto p = symmetric_params(0.6, 0.25);
    const auto eval = strategies::evaluate_strategy(p, strategies::usd_strategy(p));
    CHECK(eval.point.ps == doctest::Approx(0.4).epsilon(1e-11));
    CHECK(eval.point.fidelity() == doctest::Approx(0.608).epsilon(1e-11));
  }

  SUBCASE("success probability collapses as the pulses merge") {
    const auto p = symmetric_params(0.999, 0.5);
    const auto eval = strategies::evaluate_strategy(p, strategies::usd_strategy(p));
    CHECK(eval.point.ps == doctest::Approx(0.001).epsilon(1e-6));
  }

  SUBCASE("asymmetric preparation is rejected") {
    auto p = symmetric_params(0.5, 0.5);
    p.q0 = 0.7;
    CHECK_THROWS_AS(strategies::usd_strategy(p), std::invalid_argument);
  }

  SUBCASE("indistinguishable pulses are rejected") {
    ProtocolParams p;
    p.q0 = 0.5;
    p.alpha0 = 1.0;
    p.alpha1 = 1.0;
    p.transmittance = 0.5;
    CHECK_THROWS_AS(strategies::usd_strategy(p), std::invalid_argument);
  }
}

TEST_CASE("trivial strategy realizes the always-succeed apex") {
  const auto eval = strategies::evaluate_strategy(symmetric_params(0.3, 0.4),
                                                  strategies::trivial_strategy());
  CHECK(eval.point.ps == 1.0);
  CHECK(eval.point.fidelity() == 0.5);
  REQUIRE(eval.outcomes.size() == 1);
  const auto& rec = eval.outcomes[0];
  CHECK(rec.tau(0, 0) == Complex(1.0, 0.0));  // |00><00|
  CHECK(rec.bell_a == 0.0);
  CHECK(rec.bell_b == Complex(1.0, 0.0));
  CHECK(rec.alice_z == 1.0);

  SUBCASE("mixing with discrimination sweeps the upper segment") {
    const auto p = symmetric_params(0.5, 0.5);
    const auto usd = strategies::evaluate_strategy(p, strategies::usd_strategy(p));
    const auto mixed = bounds::mix(usd.point, eval.point, 0.5);
    CHECK(mixed.ps == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(mixed.ps_f == doctest::Approx(0.5 * (0.5 * 0.75) + 0.5 * 0.5).epsilon(1e-12));
  }
}

TEST_CASE("compliant sampler") {
  RandomStream rng(90210);
  const auto params = symmetric_params(0.5, 0.35);
  const Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                           params.transmitted_amplitude(1));

  SUBCASE("images orthogonal and completion positive for many draws") {
    Vector2 u0, u1;
    u0 << 1.0, 0.0;
    u1 << w, std::sqrt(1.0 - std::norm(w));
    for (int i = 0; i < 500; ++i) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 3);
      const auto strategy = strategies::sample_compliant_strategy(rng, n, w);
      REQUIRE(static_cast<int>(strategy.success_maps.size()) == n);
      Matrix2 sum = Matrix2::Zero();
      for (const auto& m : strategy.success_maps) {
        const Vector2 a = m * u0;
        const Vector2 b = m * u1;
        CHECK(std::abs(a.dot(b)) <= 1e-10 * std::max(a.norm() * b.norm(), 1e-30));
        sum += m.adjoint() * m;
      }
      Eigen::SelfAdjointEigenSolver<Matrix2> solver(Matrix2::Identity() - sum);
      CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
    }
  }

  SUBCASE("single-outcome draw evaluates like a one-sided discrimination") {
    const auto strategy = strategies::sample_compliant_strategy(rng, 1, w);
    const auto eval = strategies::evaluate_strategy(params, strategy);
    CHECK(eval.point.ps <= 1.0 + 1e-12);
    for (const auto& rec : eval.outcomes) CHECK(rec.fidelity >= 0.5 - 1e-12);
  }

  SUBCASE("degenerate overlap is rejected") {
    CHECK_THROWS_AS(strategies::sample_compliant_strategy(rng, 2, Complex(1.0, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("strategy evaluation invariants over random draws") {
  RandomStream rng(60622);
  const auto psi_plus = qubit::psi_plus();
  const auto psi_minus = qubit::psi_minus();
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const auto params = random_params(rng);
    const Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                             params.transmitted_amplitude(1));
    if (std::abs(w) > 1.0 - 1e-9) continue;
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const auto strategy = strategies::sample_compliant_strategy(rng, n, w);
    const auto eval = strategies::evaluate_strategy(params, strategy);
    ++checked;

    double total_p = 0.0;
    for (const auto& rec : eval.outcomes) {
      CHECK(rec.probability >= 0.0);
      total_p += rec.probability;
      // Final states carry phase errors only.
      CHECK(std::real(psi_plus.dot(rec.tau * psi_plus)) <= 1e-9);
      CHECK(std::real(psi_minus.dot(rec.tau * psi_minus)) <= 1e-9);
      // Bell-coefficient disc, with equality for pure outcomes.
      const double disc = rec.bell_a * rec.bell_a + std::norm(rec.bell_b);
      CHECK(disc <= 1.0 + 1e-9);
      CHECK(disc == doctest::Approx(1.0).epsilon(1e-9));
      // Alice marginal diagonal.
      const Matrix2 marginal =
          rec.rho.block<2, 2>(0, 0) + rec.rho.block<2, 2>(2, 2);
      CHECK(std::abs(marginal(0, 1)) <= 1e-9);
      // Closed-form fidelity.
      CHECK(std::abs(rec.fidelity -
                     0.5 * (1.0 + eval.env_overlap * rec.bell_a)) <= 1e-9);
      CHECK(rec.fidelity >= 0.5 - 1e-12);
    }
    CHECK(total_p <= 1.0 + 1e-9);

    // Marginal conservation across success and failure branches.
    const auto& m = eval.marginals;
    const double failure_p = 1.0 - eval.point.ps;
    CHECK(std::abs(m.x0 - failure_p * m.failure_x) <= 1e-9);
    CHECK(std::abs(m.y0 - failure_p * m.failure_y) <= 1e-9);
    CHECK(std::abs(m.z0 - eval.point.ps * m.success_z - failure_p * m.failure_z) <=
          1e-9);
    CHECK(std::abs(m.z0 - (params.q0 - params.q1())) <= 1e-12);
    CHECK(std::abs(m.x0 * m.x0 + m.y0 * m.y0 -
                   (1.0 - m.z0 * m.z0) * eval.pulse_overlap * eval.pulse_overlap) <=
          1e-10);
    CHECK(m.failure_x * m.failure_x + m.failure_y * m.failure_y +
              m.failure_z * m.failure_z <=
          1.0 + 1e-9);
  }
  CHECK(checked > 350);
}

TEST_CASE("evaluation rejects broken strategies") {
  const auto params = symmetric_params(0.5, 0.5);
  const Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                           params.transmitted_amplitude(1));

  SUBCASE("non-compliant map") {
    strategies::MeasurementStrategy bad;
    bad.success_maps.push_back(0.5 * Matrix2::Identity());
    CHECK_THROWS_AS(strategies::evaluate_strategy(params, bad), std::invalid_argument);
  }

  SUBCASE("over-complete maps") {
    auto strategy = strategies::usd_strategy(params);
    strategy.success_maps[0] *= 1.2;  // compliant but sum M^t M > 1
    CHECK_THROWS_AS(strategies::evaluate_strategy(params, strategy),
                    std::invalid_argument);
  }

  SUBCASE("all-zero maps give a vacuous point") {
    strategies::MeasurementStrategy zero;
    zero.success_maps.push_back(Matrix2::Zero());
    const auto eval = strategies::evaluate_strategy(params, zero);
    CHECK(eval.point.vacuous());
    CHECK(eval.outcomes.empty());
  }
}
