#pragma once

#include <array>
#include <complex>

#include "entgen/fock.hpp"

namespace entgen::protocol {

using fock::Complex;

// Preparation and channel parameters of one entanglement-generation run.
// The memory-pulse interaction is parameterized by its output amplitudes
// alpha0, alpha1; phase_rotation() provides the common model where the memory
// imprints opposite phase rotations on a shared amplitude.
struct ProtocolParams {
  double q0 = 0.5;       // weight of the |0> memory branch
  double theta0 = 0.0;   // preparation phases (radians)
  double theta1 = 0.0;
  Complex alpha0{0.0, 0.0};
  Complex alpha1{0.0, 0.0};
  double transmittance = 0.5;

  static ProtocolParams phase_rotation(double q0, double alpha, double theta,
                                       double transmittance);

  void validate() const;
  double q1() const { return 1.0 - q0; }

  Complex transmitted_amplitude(int branch) const;   // sqrt(T) alpha_j
  Complex environment_amplitude(int branch) const;   // sqrt(1-T) alpha_j

  // <u1|u0> and <v1|v0>, exact coherent-state overlaps.
  Complex pulse_overlap() const;
  Complex env_overlap() const;
};

// One branch of the tripartite memory-pulse-environment state.
struct JointComponent {
  int label = 0;
  Complex coefficient{0.0, 0.0};
  Complex b_amplitude{0.0, 0.0};
  Complex e_amplitude{0.0, 0.0};
};

// Exact coherent-component form of the state arriving at Bob, entangled with
// the channel environment.
struct JointState {
  std::array<JointComponent, 2> components;

  Complex pulse_overlap() const;  // <u1|u0>
  Complex env_overlap() const;    // <v1|v0>
};

// Two-component memory-pulse pure state that, followed by the phase-flip
// channel on the memory, reproduces the lossy-channel output exactly.
struct EquivalentPicture {
  std::array<Complex, 2> memory_coefficients;  // sqrt(q_j) e^{i(theta_j +- phi)}
  std::array<Complex, 2> pulse_amplitudes;     // sqrt(T) alpha_j
  double f = 1.0;    // phase-flip weight
  double phi = 0.0;  // half the argument of <v1|v0>
};

JointState build_joint_state(const ProtocolParams& params);

// f = (1 + |<v1|v0>|) / 2, the weight of the identity branch of the
// equivalent dephasing channel.
double phase_flip_f(const ProtocolParams& params);

EquivalentPicture equivalent_state(const ProtocolParams& params);

// f rho + (1-f) (sigma_z x 1) rho (sigma_z x 1); factor 0 must be a qubit.
fock::FockOperator apply_phase_flip(const fock::FockOperator& rho, double f);

// Trace distance between the traced lossy-channel output and the dephased
// equivalent picture, both built in the Fock oracle. Contract: < 1e-10 for
// every valid parameter set the policy admits.
double equivalence_check(const ProtocolParams& params,
                         const fock::TruncationPolicy& policy);

}  // namespace entgen::protocol
