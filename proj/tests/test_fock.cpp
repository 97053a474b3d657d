#include "doctest.h"

#include <cmath>

#include "entgen/fock.hpp"
#include "entgen/rng.hpp"

using namespace entgen;
using fock::Complex;

namespace {

// Independent Poisson tail oracle: direct series sum.
double poisson_tail(double mean, int from) {
  double term = std::exp(-mean);
  double cdf = 0.0;
  for (int n = 0; n < from; ++n) {
    cdf += term;
    term *= mean / (n + 1);
  }
  return 1.0 - cdf;
}

Complex random_amplitude(RandomStream& rng, double max_mod) {
  const double r = max_mod * std::sqrt(rng.uniform());
  return std::polar(r, rng.uniform(0.0, 2.0 * M_PI));
}

}  // namespace

TEST_CASE("coherent vector reproduces closed-form coefficients") {
  const fock::TruncationPolicy policy{30, 1e-12};

  SUBCASE("vacuum") {
    const auto state = fock::coherent_vector(0.0, policy);
    CHECK(state.amplitudes[0] == Complex(1.0, 0.0));
    CHECK(state.amplitudes.tail(29).norm() == 0.0);
  }

  SUBCASE("alpha = 1") {
    const auto state = fock::coherent_vector(1.0, policy);
    // e^{-1/2} * 1 / sqrt(1!)
    CHECK(std::abs(state.amplitudes[1] - std::exp(-0.5)) < 1e-15);
    CHECK(state.amplitudes[1].real() == doctest::Approx(0.6065306597126334).epsilon(1e-12));
    CHECK(std::abs(state.norm() - 1.0) < policy.tail_tol);
  }

  SUBCASE("cutoff too small raises a truncation error") {
    const fock::TruncationPolicy tight{10, 1e-12};
    CHECK(poisson_tail(4.0, 10) == doctest::Approx(8.1e-3).epsilon(0.05));
    CHECK_THROWS_AS(fock::coherent_vector(2.0, tight), fock::TruncationError);
  }
}

TEST_CASE("tail mass matches the series oracle") {
  for (double mod : {0.5, 1.0, 2.0, 2.7}) {
    for (int cutoff : {4, 8, 16}) {
      const fock::TruncationPolicy policy{cutoff, 1e-12};
      const double oracle = poisson_tail(mod * mod, cutoff);
      CHECK(policy.tail_mass(mod) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("default cutoff rule admits its amplitudes") {
  const auto policy = fock::TruncationPolicy::for_amplitudes({Complex(3.0, 0.0)});
  CHECK(policy.admits(3.0));
  CHECK(policy.tail_mass(3.0) < 1e-12);
}

TEST_CASE("coherent overlap closed form") {
  CHECK(std::abs(fock::coherent_overlap(1.2, 1.2) - 1.0) < 1e-15);
  CHECK(std::abs(fock::coherent_overlap(2.0, 0.0) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(fock::coherent_overlap(1.0, -1.0) - std::exp(-2.0)) < 1e-15);
  CHECK(fock::coherent_overlap(2.0, 0.0).real() ==
        doctest::Approx(0.1353352832366127).epsilon(1e-12));
}

TEST_CASE("truncated inner products agree with the overlap formula") {
  RandomStream rng(314159);
  const fock::TruncationPolicy policy{40, 1e-12};
  for (int i = 0; i < 300; ++i) {
    const Complex a = random_amplitude(rng, 2.0);
    const Complex b = random_amplitude(rng, 2.0);
    const auto va = fock::coherent_vector(a, policy);
    const auto vb = fock::coherent_vector(b, policy);
    const Complex numeric = va.amplitudes.dot(vb.amplitudes);
    CHECK(std::abs(numeric - fock::coherent_overlap(a, b)) < 1e-10);
  }
}

TEST_CASE("loss channel is the exact coherent isometry") {
  const fock::TruncationPolicy policy{40, 1e-12};

  SUBCASE("joint output is the product of attenuated coherent states") {
    const auto in = fock::coherent_vector(1.0, policy);
    const auto joint = fock::apply_loss_joint(in, 0.25);
    const auto expected =
        fock::tensor(fock::coherent_vector(0.5, policy).amplitudes,
                     fock::coherent_vector(std::sqrt(0.75), policy).amplitudes);
    CHECK((joint - expected).norm() < 1e-12);
  }

  SUBCASE("vacuum is preserved") {
    const auto in = fock::coherent_vector(0.0, policy);
    const auto out = fock::apply_loss(in, 0.7);
    CHECK(std::abs(out.matrix(0, 0).real() - 1.0) < 1e-14);
    CHECK(out.matrix.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("mean photon number is scaled by the transmittance") {
    const auto in = fock::coherent_vector(1.0, policy);
    const auto out = fock::apply_loss(in, 0.36);
    double mean = 0.0;
    for (int n = 0; n < out.dim(); ++n) mean += n * out.matrix(n, n).real();
    CHECK(std::abs(mean - 0.36) < 1e-10);
  }

  SUBCASE("transmittance domain is open") {
    const auto in = fock::coherent_vector(1.0, policy);
    CHECK_THROWS_AS(fock::apply_loss(in, 0.0), std::domain_error);
    CHECK_THROWS_AS(fock::apply_loss(in, 1.0), std::domain_error);
    CHECK_THROWS_AS(fock::apply_loss(in, 1.5), std::domain_error);
  }
}

TEST_CASE("loss channel properties over random coherent inputs") {
  RandomStream rng(271828);
  const fock::TruncationPolicy policy{40, 1e-12};
  for (int i = 0; i < 40; ++i) {
    const Complex a = random_amplitude(rng, 1.8);
    const double t1 = rng.uniform(0.1, 0.9);
    const double t2 = rng.uniform(0.1, 0.9);
    const auto in = fock::coherent_vector(a, policy);

    const auto once = fock::apply_loss(in, t1);
    CHECK(std::abs(once.matrix.trace().real() - 1.0) < 1e-10);

    // Composition law: two cascaded channels equal one with T1*T2.
    const auto twice = fock::apply_loss(once, t2);
    const auto direct = fock::apply_loss(in, t1 * t2);
    CHECK(fock::trace_distance(twice, direct) < 1e-9);
  }
}

TEST_CASE("multilinear utilities") {
  fock::Vector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  const auto rho = fock::pure_density(bell, {2, 2});

  SUBCASE("trace distance of identical states vanishes") {
    CHECK(fock::trace_distance(rho, rho) == 0.0);
  }

  SUBCASE("fidelity of a pure state with itself is one") {
    CHECK(fock::fidelity_to(rho, bell) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("Bell-state marginal is maximally mixed") {
    const auto marginal = fock::partial_trace(rho, 1);
    CHECK(marginal.factor_dims.size() == 1);
    CHECK(std::abs(marginal.matrix(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(marginal.matrix(1, 1).real() - 0.5) < 1e-14);
    CHECK(std::abs(marginal.matrix(0, 1)) < 1e-14);
    CHECK(std::abs(marginal.matrix.trace().real() - 1.0) < 1e-12);
  }

  SUBCASE("partial trace preserves the trace on random products") {
    RandomStream rng(99);
    fock::Matrix m = fock::Matrix::Zero(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m(r, c) = rng.normal_complex();
    }
    fock::FockOperator a{m * m.adjoint(), {3}};
    a.matrix /= a.matrix.trace();
    const auto joint = fock::tensor(a, fock::FockOperator{rho.matrix, {4}});
    const auto reduced = fock::partial_trace(joint, 1);
    CHECK(std::abs(reduced.matrix.trace().real() - 1.0) < 1e-12);
    CHECK(fock::trace_distance(reduced, a) < 1e-12);
  }

  SUBCASE("dimension mismatch is rejected") {
    fock::FockOperator bad{fock::Matrix::Identity(3, 3), {2}};
    CHECK_THROWS_AS(bad.validate_shape(), std::invalid_argument);
    CHECK_THROWS_AS(fock::trace_distance(rho, fock::FockOperator{fock::Matrix::Identity(2, 2), {2}}),
                    std::invalid_argument);
  }
}

TEST_CASE("density validation catches broken operators") {
  fock::Vector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  auto rho = fock::pure_density(bell, {2, 2});
  CHECK(fock::is_density(rho));
  rho.matrix(0, 0) += 0.1;
  CHECK_FALSE(fock::is_density(rho));
}
