#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entgen/bounds.hpp"
#include "entgen/protocol.hpp"
#include "entgen/rng.hpp"

namespace entgen::strategies {

using protocol::Complex;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

// Bob's measurement, described by the success Kraus maps restricted to the
// two-dimensional span of the candidate pulse states. Maps are written in the
// orthonormalized basis (e0 = u0, e1 along u1 orthogonal to u0); the
// orthogonal complement of the span is routed to failure, and the remaining
// failure completion is 1 - sum M up(k) M(k).
//
// Compliance (orthogonal images of u0 and u1 under every success map) is what
// restricts the final states to the phase-error-only subspace.
struct MeasurementStrategy {
  std::vector<Matrix2> success_maps;
  // "Declare success all the time": memories set to |00>, no pulse used.
  bool trivial = false;
};

// One declared success outcome.
struct OutcomeRecord {
  int k = 0;
  double probability = 0.0;
  Matrix4 rho;        // corrected two-qubit state before dephasing
  Matrix4 tau;        // final state after the memory dephasing channel
  double fidelity = 0.5;  // <Phi+| tau |Phi+>, computed from tau
  double bell_a = 0.0;    // Bell-diagonal asymmetry of rho
  Complex bell_b{0.0, 0.0};  // Phi+/Phi- coherence of rho
  double alice_z = 0.0;   // z-component of Alice's marginal, lab frame
};

// Bloch-vector bookkeeping of Alice's marginal across the measurement.
struct MarginalDecomposition {
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;      // before the measurement
  double success_z = 0.0;                   // probability-averaged over outcomes
  double failure_x = 0.0, failure_y = 0.0, failure_z = 0.0;
};

struct StrategyEvaluation {
  std::vector<OutcomeRecord> outcomes;
  bounds::PerformancePoint point;
  MarginalDecomposition marginals;
  double pulse_overlap = 0.0;  // |<u1|u0>|
  double env_overlap = 0.0;    // |<v1|v0>|
  double phase_flip = 1.0;     // f
};

// Local correction for a success outcome |0>w0 + |1>w1 with orthogonal w0,
// w1: unitaries that rotate it onto c0'|00> + c1'|11> with c0' >= c1' >= 0.
struct CorrectionPair {
  Matrix2 alice;
  Matrix2 bob;
};

CorrectionPair correction_unitaries(const Vector2& w0, const Vector2& w1);

// Optimal unambiguous discrimination of the two pulse states, run coherently
// so the conclusive branch maps them onto orthogonal memory states. Single
// success outcome; requires a symmetric preparation (q0 = 1/2) and
// distinguishable pulses (|<u1|u0>| < 1).
MeasurementStrategy usd_strategy(const protocol::ProtocolParams& params);

// Always-succeed protocol realizing (Ps, F) = (1, 1/2).
MeasurementStrategy trivial_strategy();

// Random strategy with n_outcomes success maps, each compliant with the span
// geometry fixed by pulse_overlap = <u0|u1>. Raw Gaussian draws are projected
// onto the compliance constraint and rescaled so the failure completion stays
// positive semidefinite.
MeasurementStrategy sample_compliant_strategy(RandomStream& rng, int n_outcomes,
                                              Complex pulse_overlap);

// Full outcome evaluation in the exact coherent-component representation.
// Validates compliance and completeness, applies the local correction and the
// dephasing channel per outcome, and checks the closed-form fidelity against
// the direct density-matrix value.
StrategyEvaluation evaluate_strategy(const protocol::ProtocolParams& params,
                                     const MeasurementStrategy& strategy);

}  // namespace entgen::strategies
