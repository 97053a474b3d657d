#include "entgen/verifier.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "entgen/qubit.hpp"

namespace entgen::verify {

namespace {

constexpr std::size_t kMaxFailureDumps = 32;

enum InequalityIndex {
  kFidelityFloor = 0,   // F >= 1/2
  kTriangle,            // (Ps, Ps F) in triangle X0 X1 X2
  kBellCoefficients,    // a_k^2 + |b_k|^2 <= 1
  kFidelityCap,         // F <= (1 + u^{(1-T)/T}) / 2
  kGNonnegative,        // g(Ps) >= 0
  kSuccessCap,          // Ps <= (1-u^2) / (1 + u sqrt(1-zs^2))
  kTradeoff,            // Ps F <= linear cap
  kPhaseErrorOnly,      // <Psi+-| tau |Psi+-> = 0
  kMarginalDiagonal,    // Alice marginal of rho_k diagonal
  kConservation,        // Alice marginal bookkeeping across branches
  kInequalityCount
};

const char* kInequalityNames[kInequalityCount] = {
    "fidelity_floor",   "triangle_containment", "bell_coefficient_disc",
    "fidelity_cap",     "g_nonnegative",        "success_probability_cap",
    "psf_tradeoff",     "phase_error_only",     "marginal_diagonal",
    "marginal_conservation"};

struct TrialDraw {
  protocol::ProtocolParams params;
  int n_outcomes = 1;
};

TrialDraw draw_trial(RandomStream& rng, const TrialConfig& config) {
  TrialDraw draw;
  const double amp = rng.uniform(config.alpha.lo, config.alpha.hi);
  const double half_angle = rng.uniform(config.theta.lo, config.theta.hi);
  double q0 = rng.uniform(config.q0.lo, config.q0.hi);
  const double transmittance =
      rng.uniform(config.transmittance.lo, config.transmittance.hi);
  if (config.strategy == StrategyKind::usd) q0 = 0.5;
  draw.params =
      protocol::ProtocolParams::phase_rotation(q0, amp, half_angle, transmittance);
  draw.params.theta0 = rng.uniform(0.0, 2.0 * M_PI);
  draw.params.theta1 = rng.uniform(0.0, 2.0 * M_PI);
  draw.n_outcomes =
      1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(config.max_outcomes));
  return draw;
}

// Signed margins for one evaluated trial; nonnegative means the inequality
// holds. NaN marks a check that does not apply to the trial.
std::array<double, kInequalityCount> trial_margins(
    const protocol::ProtocolParams& params,
    const strategies::StrategyEvaluation& eval, bool is_trivial) {
  std::array<double, kInequalityCount> margins;
  margins.fill(std::numeric_limits<double>::quiet_NaN());

  const double u = is_trivial ? std::abs(params.pulse_overlap()) : eval.pulse_overlap;
  const double transmittance = params.transmittance;
  const auto& point = eval.point;
  const auto& marg = eval.marginals;

  if (!point.vacuous()) {
    margins[kFidelityFloor] = point.fidelity() - 0.5;
    margins[kFidelityCap] = bounds::fidelity_cap(u, transmittance) - point.fidelity();
  }
  margins[kTriangle] =
      bounds::triangle(u, transmittance).containment_margin(point);

  double bell_margin = std::numeric_limits<double>::infinity();
  double phase_err = 0.0;
  double diag_err = 0.0;
  const auto psi_plus = qubit::psi_plus();
  const auto psi_minus = qubit::psi_minus();
  for (const auto& rec : eval.outcomes) {
    bell_margin = std::min(
        bell_margin, 1.0 - (rec.bell_a * rec.bell_a + std::norm(rec.bell_b)));
    phase_err = std::max(phase_err,
                         std::real(psi_plus.dot(rec.tau * psi_plus)));
    phase_err = std::max(phase_err,
                         std::real(psi_minus.dot(rec.tau * psi_minus)));
    const strategies::Matrix2 alice_marg =
        rec.rho.block<2, 2>(0, 0) + rec.rho.block<2, 2>(2, 2);
    diag_err = std::max(diag_err, std::abs(alice_marg(0, 1)));
  }
  if (!eval.outcomes.empty()) {
    margins[kBellCoefficients] = bell_margin;
    margins[kPhaseErrorOnly] = -phase_err;
    margins[kMarginalDiagonal] = -diag_err;
  }

  // The trade-off family is derived for non-degenerate preparations; the
  // always-succeed protocol sits at |z0| = 1 where it does not apply.
  const bool nondegenerate = !is_trivial && std::abs(marg.z0) < 1.0 - 1e-12 &&
                             u < 1.0 - 1e-12;
  if (nondegenerate) {
    margins[kGNonnegative] =
        bounds::g_polynomial(point.ps, marg.z0, marg.success_z, u);
    const double zs = std::clamp(marg.success_z, -1.0, 1.0);
    margins[kSuccessCap] =
        (1.0 - u * u) / (1.0 + u * std::sqrt(1.0 - zs * zs)) - point.ps;
    margins[kTradeoff] =
        bounds::tradeoff_max_psf(point.ps, u, transmittance) - point.ps_f;
  }

  const double failure_p = 1.0 - point.ps;
  const double cons = std::max(
      {std::abs(marg.x0 - failure_p * marg.failure_x),
       std::abs(marg.y0 - failure_p * marg.failure_y),
       std::abs(marg.z0 - point.ps * marg.success_z - failure_p * marg.failure_z)});
  margins[kConservation] = -cons;
  return margins;
}

nlohmann::json params_to_json(const protocol::ProtocolParams& params) {
  return {{"q0", params.q0},
          {"theta0", params.theta0},
          {"theta1", params.theta1},
          {"alpha0", {params.alpha0.real(), params.alpha0.imag()}},
          {"alpha1", {params.alpha1.real(), params.alpha1.imag()}},
          {"T", params.transmittance}};
}

}  // namespace

void TrialConfig::validate() const {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be positive");
  if (!(transmittance.lo > 0.0 && transmittance.hi < 1.0 &&
        transmittance.lo <= transmittance.hi)) {
    throw std::invalid_argument("transmittance range must lie inside (0,1)");
  }
  if (!(q0.lo >= 0.0 && q0.hi <= 1.0 && q0.lo <= q0.hi)) {
    throw std::invalid_argument("q0 range must lie inside [0,1]");
  }
  if (!(alpha.lo > 0.0 && alpha.lo <= alpha.hi)) {
    throw std::invalid_argument("alpha range must be positive");
  }
  if (!(theta.lo > 0.0 && theta.hi < M_PI && theta.lo <= theta.hi)) {
    throw std::invalid_argument("theta range must lie inside (0, pi)");
  }
  if (max_outcomes < 1) throw std::invalid_argument("max_outcomes must be >= 1");
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json ineqs = nlohmann::json::array();
  for (const auto& stat : inequalities) {
    ineqs.push_back({{"name", stat.name},
                     {"passes", stat.passes},
                     {"applicable", stat.applicable},
                     {"worst_margin", stat.worst_margin},
                     {"worst_trial", stat.worst_trial}});
  }
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& dump : failures) {
    fails.push_back({{"trial", dump.trial},
                     {"inequality", dump.inequality},
                     {"margin", dump.margin},
                     {"n_outcomes", dump.n_outcomes},
                     {"params", params_to_json(dump.params)}});
  }
  return {{"trials", trials},
          {"inequalities", ineqs},
          {"cross_check_max", cross_check_max},
          {"seed", seed},
          {"all_passed", all_passed()},
          {"failures", fails}};
}

VerificationReport run_monte_carlo(const TrialConfig& config) {
  config.validate();
  VerificationReport report;
  report.trials = config.n_trials;
  report.seed = config.seed;
  report.inequalities.resize(kInequalityCount);
  for (int i = 0; i < kInequalityCount; ++i) {
    report.inequalities[i].name = kInequalityNames[i];
  }

  const std::int64_t cross_stride =
      config.n_cross_checks > 0
          ? std::max<std::int64_t>(1, config.n_trials / config.n_cross_checks)
          : 0;

  for (std::int64_t trial = 0; trial < config.n_trials; ++trial) {
    RandomStream rng = RandomStream::substream(config.seed, trial);
    const TrialDraw draw = draw_trial(rng, config);

    strategies::MeasurementStrategy strategy;
    switch (config.strategy) {
      case StrategyKind::usd:
        strategy = strategies::usd_strategy(draw.params);
        break;
      case StrategyKind::trivial:
        strategy = strategies::trivial_strategy();
        break;
      case StrategyKind::random_compliant:
        strategy = strategies::sample_compliant_strategy(
            rng, draw.n_outcomes,
            fock::coherent_overlap(draw.params.transmitted_amplitude(0),
                                   draw.params.transmitted_amplitude(1)));
        break;
    }

    std::array<double, kInequalityCount> margins;
    try {
      const auto eval = strategies::evaluate_strategy(draw.params, strategy);
      margins = trial_margins(draw.params, eval, strategy.trivial);
    } catch (const std::exception& e) {
      if (report.failures.size() < kMaxFailureDumps) {
        report.failures.push_back({trial, std::string("evaluation_error: ") + e.what(),
                                   0.0, draw.params, draw.n_outcomes});
      }
      continue;
    }

    for (int i = 0; i < kInequalityCount; ++i) {
      if (std::isnan(margins[i])) continue;
      InequalityStat& stat = report.inequalities[i];
      ++stat.applicable;
      if (margins[i] >= -config.inequality_tol) {
        ++stat.passes;
      } else if (report.failures.size() < kMaxFailureDumps) {
        report.failures.push_back(
            {trial, stat.name, margins[i], draw.params, draw.n_outcomes});
      }
      if (margins[i] < stat.worst_margin) {
        stat.worst_margin = margins[i];
        stat.worst_trial = trial;
      }
    }

    if (cross_stride > 0 && trial % cross_stride == 0 &&
        config.strategy != StrategyKind::trivial) {
      fock::TruncationPolicy policy{config.cross_check_cutoff, 1e-12};
      if (config.cross_check_cutoff <= 0) {
        std::vector<fock::Complex> amps;
        for (int j = 0; j < 2; ++j) {
          amps.push_back(draw.params.transmitted_amplitude(j));
          amps.push_back(draw.params.environment_amplitude(j));
        }
        policy = fock::TruncationPolicy::for_amplitudes(
            std::span<const fock::Complex>(amps.data(), amps.size()));
      }
      const double dev =
          cross_validate_representations(draw.params, strategy, policy);
      report.cross_check_max = std::max(report.cross_check_max, dev);
      if (dev > config.cross_check_tol &&
          report.failures.size() < kMaxFailureDumps) {
        report.failures.push_back({trial, "representation_cross_check", -dev,
                                   draw.params, draw.n_outcomes});
      }
    }
  }
  return report;
}

double cross_validate_representations(const protocol::ProtocolParams& params,
                                      const strategies::MeasurementStrategy& strategy,
                                      const fock::TruncationPolicy& policy) {
  params.validate();
  if (strategy.trivial) return 0.0;

  const auto component = strategies::evaluate_strategy(params, strategy);

  const int dim = policy.cutoff;
  for (int j = 0; j < 2; ++j) {
    policy.require(params.transmitted_amplitude(j));
    policy.require(params.environment_amplitude(j));
  }

  // Memory-pulse-environment state of the physical picture (preparation
  // phases only; the dephasing lives in the traced environment).
  fock::Vector psi = fock::Vector::Zero(2 * dim * dim);
  const std::array<double, 2> weights{params.q0, params.q1()};
  const std::array<double, 2> phases{params.theta0, params.theta1};
  for (int j = 0; j < 2; ++j) {
    const fock::Vector pulse =
        fock::coherent_vector(params.transmitted_amplitude(j), policy).amplitudes;
    const fock::Vector env =
        fock::coherent_vector(params.environment_amplitude(j), policy).amplitudes;
    psi.segment(static_cast<Eigen::Index>(j) * dim * dim, dim * dim) =
        std::polar(std::sqrt(weights[j]), phases[j]) * fock::tensor(pulse, env);
  }
  Eigen::Map<const Eigen::Matrix<fock::Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      reshaped(psi.data(), 2 * dim, dim);
  const fock::Matrix rho_ab = reshaped * reshaped.adjoint();

  // Orthonormalize the truncated pulse states to lift the 2x2 maps.
  fock::Vector u0 = fock::coherent_vector(params.transmitted_amplitude(0), policy).amplitudes;
  fock::Vector u1 = fock::coherent_vector(params.transmitted_amplitude(1), policy).amplitudes;
  u0.normalize();
  u1 -= u0.dot(u1) * u0;
  u1.normalize();
  Eigen::Matrix<fock::Complex, Eigen::Dynamic, 2> span(dim, 2);
  span.col(0) = u0;
  span.col(1) = u1;

  // Span geometry and coefficients in the exact component representation,
  // used to rebuild the outcome-conditioned corrections.
  const protocol::EquivalentPicture pic = protocol::equivalent_state(params);
  const fock::Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                                 params.transmitted_amplitude(1));
  strategies::Vector2 u0c, u1c;
  u0c << 1.0, 0.0;
  u1c << w, std::sqrt(1.0 - std::norm(w));

  const auto phi_plus = qubit::phi_plus();
  double max_dev = 0.0;
  for (const auto& rec : component.outcomes) {
    const strategies::Matrix2& m = strategy.success_maps[rec.k];
    const Eigen::Matrix<fock::Complex, 2, Eigen::Dynamic> lifted =
        m * span.adjoint();
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(4, 2 * dim);
    big.block(0, 0, 2, dim) = lifted;
    big.block(2, dim, 2, dim) = lifted;
    const Eigen::Matrix4cd sigma = big * rho_ab * big.adjoint();
    const double p = sigma.trace().real();
    max_dev = std::max(max_dev, std::abs(p - rec.probability));
    if (p <= 0.0) continue;

    // Same outcome-conditioned correction as the component path.
    const strategies::CorrectionPair corr = strategies::correction_unitaries(
        pic.memory_coefficients[0] * (m * u0c),
        pic.memory_coefficients[1] * (m * u1c));
    const Eigen::Matrix4cd correction =
        Eigen::kroneckerProduct(corr.alice, corr.bob);
    const Eigen::Matrix4cd tau = correction * (sigma / p) * correction.adjoint();
    const double fidelity = std::real(phi_plus.dot(tau * phi_plus));
    max_dev = std::max(max_dev, std::abs(fidelity - rec.fidelity));
  }
  return max_dev;
}

double hull_check(double transmittance, int grid_size) {
  if (grid_size < 100) throw std::invalid_argument("grid_size must be >= 100");
  std::vector<std::array<double, 2>> samples;
  samples.reserve(grid_size + 1);
  for (int i = 0; i < grid_size; ++i) {
    const double ps = static_cast<double>(i) / (grid_size - 1);
    samples.push_back({ps, ps * bounds::f_sym(ps, transmittance)});
  }
  samples.push_back({1.0, 0.5});  // the always-succeed protocol
  const auto hull = bounds::upper_convex_hull(std::move(samples));
  double max_dev = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double ps = static_cast<double>(i) / (grid_size - 1);
    const double hull_y = bounds::polyline_value(hull, ps);
    max_dev = std::max(max_dev,
                       std::abs(hull_y - ps * bounds::f_opt(ps, transmittance)));
  }
  return max_dev;
}

}  // namespace entgen::verify
