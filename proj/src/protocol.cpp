#include "entgen/protocol.hpp"

#include <cmath>

namespace entgen::protocol {

ProtocolParams ProtocolParams::phase_rotation(double q0, double alpha, double theta,
                                              double transmittance) {
  ProtocolParams p;
  p.q0 = q0;
  p.alpha0 = std::polar(alpha, theta);
  p.alpha1 = std::polar(alpha, -theta);
  p.transmittance = transmittance;
  return p;
}

void ProtocolParams::validate() const {
  if (!(q0 >= 0.0 && q0 <= 1.0)) {
    throw std::domain_error("q0 must lie in [0,1]");
  }
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw std::domain_error("transmittance must lie in (0,1)");
  }
}

Complex ProtocolParams::transmitted_amplitude(int branch) const {
  return std::sqrt(transmittance) * (branch == 0 ? alpha0 : alpha1);
}

Complex ProtocolParams::environment_amplitude(int branch) const {
  return std::sqrt(1.0 - transmittance) * (branch == 0 ? alpha0 : alpha1);
}

Complex ProtocolParams::pulse_overlap() const {
  return fock::coherent_overlap(transmitted_amplitude(1), transmitted_amplitude(0));
}

Complex ProtocolParams::env_overlap() const {
  return fock::coherent_overlap(environment_amplitude(1), environment_amplitude(0));
}

Complex JointState::pulse_overlap() const {
  return fock::coherent_overlap(components[1].b_amplitude, components[0].b_amplitude);
}

Complex JointState::env_overlap() const {
  return fock::coherent_overlap(components[1].e_amplitude, components[0].e_amplitude);
}

JointState build_joint_state(const ProtocolParams& params) {
  params.validate();
  JointState state;
  const std::array<double, 2> weights{params.q0, params.q1()};
  const std::array<double, 2> phases{params.theta0, params.theta1};
  for (int j = 0; j < 2; ++j) {
    state.components[j] = {j, std::polar(std::sqrt(weights[j]), phases[j]),
                           params.transmitted_amplitude(j),
                           params.environment_amplitude(j)};
  }
  return state;
}

double phase_flip_f(const ProtocolParams& params) {
  params.validate();
  return 0.5 * (1.0 + std::abs(params.env_overlap()));
}

EquivalentPicture equivalent_state(const ProtocolParams& params) {
  params.validate();
  EquivalentPicture pic;
  const Complex env = params.env_overlap();
  pic.f = 0.5 * (1.0 + std::abs(env));
  pic.phi = 0.5 * std::arg(env);  // principal branch
  const std::array<double, 2> weights{params.q0, params.q1()};
  const std::array<double, 2> phases{params.theta0 + pic.phi, params.theta1 - pic.phi};
  for (int j = 0; j < 2; ++j) {
    pic.memory_coefficients[j] = std::polar(std::sqrt(weights[j]), phases[j]);
    pic.pulse_amplitudes[j] = params.transmitted_amplitude(j);
  }
  return pic;
}

fock::FockOperator apply_phase_flip(const fock::FockOperator& rho, double f) {
  rho.validate_shape();
  if (rho.factor_dims.empty() || rho.factor_dims[0] != 2) {
    throw std::invalid_argument("apply_phase_flip: leading factor must be a qubit");
  }
  if (!(f >= 0.5 && f <= 1.0)) {
    throw std::domain_error("phase-flip weight must lie in [1/2, 1]");
  }
  const Eigen::Index half = rho.dim() / 2;
  fock::Matrix flipped = rho.matrix;
  // sigma_z x 1 conjugation flips the sign of the qubit-off-diagonal blocks.
  flipped.block(0, half, half, half) *= -1.0;
  flipped.block(half, 0, half, half) *= -1.0;
  return {f * rho.matrix + (1.0 - f) * flipped, rho.factor_dims};
}

double equivalence_check(const ProtocolParams& params,
                         const fock::TruncationPolicy& policy) {
  params.validate();
  for (int j = 0; j < 2; ++j) {
    policy.require(params.transmitted_amplitude(j));
    policy.require(params.environment_amplitude(j));
  }
  const int dim = policy.cutoff;
  const JointState joint = build_joint_state(params);

  // Lossy-channel picture: build the memory-pulse-environment pure state and
  // trace out the environment.
  fock::Vector psi = fock::Vector::Zero(2 * dim * dim);
  for (int j = 0; j < 2; ++j) {
    const auto& comp = joint.components[j];
    const fock::Vector pulse =
        fock::coherent_vector(comp.b_amplitude, policy).amplitudes;
    const fock::Vector env = fock::coherent_vector(comp.e_amplitude, policy).amplitudes;
    psi.segment(static_cast<Eigen::Index>(j) * dim * dim, dim * dim) =
        comp.coefficient * fock::tensor(pulse, env);
  }
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      reshaped(psi.data(), 2 * dim, dim);
  fock::FockOperator traced{reshaped * reshaped.adjoint(), {2, dim}};

  // Equivalent picture: pure memory-pulse state followed by dephasing.
  const EquivalentPicture pic = equivalent_state(params);
  fock::Vector psi_prime = fock::Vector::Zero(2 * dim);
  for (int j = 0; j < 2; ++j) {
    psi_prime.segment(static_cast<Eigen::Index>(j) * dim, dim) =
        pic.memory_coefficients[j] *
        fock::coherent_vector(pic.pulse_amplitudes[j], policy).amplitudes;
  }
  const fock::FockOperator dephased =
      apply_phase_flip(fock::pure_density(psi_prime, {2, dim}), pic.f);

  return fock::trace_distance(traced, dephased);
}

}  // namespace entgen::protocol
