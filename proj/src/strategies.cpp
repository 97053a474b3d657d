#include "entgen/strategies.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "entgen/qubit.hpp"

namespace entgen::strategies {

namespace {

constexpr double kDegenerateOverlap = 1.0 - 1e-12;

struct SpanBasis {
  Complex w;   // <u0|u1>
  double s;    // sqrt(1 - |w|^2)
  Vector2 u0;  // (1, 0)
  Vector2 u1;  // (w, s)
};

SpanBasis span_basis(Complex pulse_overlap) {
  const double u = std::abs(pulse_overlap);
  if (u >= kDegenerateOverlap) {
    throw std::invalid_argument("pulse states are indistinguishable (overlap ~ 1)");
  }
  SpanBasis basis;
  basis.w = pulse_overlap;
  basis.s = std::sqrt(1.0 - u * u);
  basis.u0 << 1.0, 0.0;
  basis.u1 << pulse_overlap, basis.s;
  return basis;
}

double min_eigenvalue_2x2(const Matrix2& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(hermitian);
  return solver.eigenvalues().minCoeff();
}

void validate_strategy(const MeasurementStrategy& strategy, const SpanBasis& basis) {
  Matrix2 sum = Matrix2::Zero();
  for (const Matrix2& m : strategy.success_maps) {
    const Vector2 img0 = m * basis.u0;
    const Vector2 img1 = m * basis.u1;
    const double limit = kTol.compliance * img0.norm() * img1.norm();
    if (std::abs(img0.dot(img1)) > limit + 1e-300) {
      throw std::invalid_argument("non-compliant strategy: success images not orthogonal");
    }
    sum += m.adjoint() * m;
  }
  if (min_eigenvalue_2x2(Matrix2::Identity() - sum) < -kTol.completeness) {
    throw std::invalid_argument("strategy exceeds completeness: sum M^t M > 1");
  }
}

StrategyEvaluation evaluate_trivial() {
  StrategyEvaluation eval;
  OutcomeRecord rec;
  rec.k = 0;
  rec.probability = 1.0;
  rec.rho = Matrix4::Zero();
  rec.rho(0, 0) = 1.0;  // |00><00|
  rec.tau = rec.rho;
  rec.fidelity = 0.5;
  rec.bell_a = 0.0;
  rec.bell_b = 1.0;
  rec.alice_z = 1.0;
  eval.outcomes.push_back(rec);
  eval.point = {1.0, 0.5};
  eval.marginals = {0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0};
  eval.pulse_overlap = 1.0;
  eval.env_overlap = 1.0;
  eval.phase_flip = 1.0;
  return eval;
}

}  // namespace

CorrectionPair correction_unitaries(const Vector2& w0, const Vector2& w1) {
  const double n0 = w0.norm();
  const double n1 = w1.norm();
  if (n0 <= 0.0 && n1 <= 0.0) {
    throw std::invalid_argument("correction_unitaries: zero outcome state");
  }
  if (n0 > 0.0 && n1 > 0.0 &&
      std::abs(w0.dot(w1)) > kTol.compliance * n0 * n1) {
    throw std::invalid_argument("correction_unitaries: branches not orthogonal");
  }
  Vector2 hat0, hat1;
  if (n0 > 0.0 && n1 > 0.0) {
    hat0 = w0 / n0;
    hat1 = w1 / n1;
  } else if (n0 > 0.0) {
    hat0 = w0 / n0;
    hat1 << -std::conj(hat0(1)), std::conj(hat0(0));
  } else {
    hat1 = w1 / n1;
    hat0 << -std::conj(hat1(1)), std::conj(hat1(0));
  }
  CorrectionPair corr;
  // Rows <hat_j| send w_j to ||w_j|| |j> with nonnegative amplitude, which
  // absorbs all phases on Bob's side.
  corr.bob.row(0) = hat0.adjoint();
  corr.bob.row(1) = hat1.adjoint();
  corr.alice = Matrix2::Identity();
  if (n1 > n0) {
    corr.alice = qubit::sigma_x();
    corr.bob = qubit::sigma_x() * corr.bob;
  }
  return corr;
}

MeasurementStrategy usd_strategy(const protocol::ProtocolParams& params) {
  params.validate();
  if (std::abs(params.q0 - 0.5) > 1e-12) {
    throw std::invalid_argument("usd_strategy requires a symmetric preparation");
  }
  const Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                           params.transmitted_amplitude(1));
  const double u = std::abs(w);
  if (u >= kDegenerateOverlap) {
    throw std::invalid_argument("usd_strategy: no discrimination possible at unit overlap");
  }
  const SpanBasis basis = span_basis(w);
  // Conclusive branch of the Ivanovic-Dieks-Peres measurement: the scaled
  // dual basis sends u0 -> |0>, u1 -> |1> with success amplitude sqrt(1-u).
  Matrix2 map;
  map << 1.0, -w / basis.s,
         0.0, 1.0 / basis.s;
  map *= std::sqrt(1.0 - u);
  MeasurementStrategy strategy;
  strategy.success_maps.push_back(map);
  return strategy;
}

MeasurementStrategy trivial_strategy() {
  MeasurementStrategy strategy;
  strategy.trivial = true;
  return strategy;
}

MeasurementStrategy sample_compliant_strategy(RandomStream& rng, int n_outcomes,
                                              Complex pulse_overlap) {
  if (n_outcomes < 1) throw std::invalid_argument("need at least one outcome");
  const SpanBasis basis = span_basis(pulse_overlap);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Matrix2> maps;
    maps.reserve(n_outcomes);
    for (int k = 0; k < n_outcomes; ++k) {
      Matrix2 m;
      m << rng.normal_complex(), rng.normal_complex(),
           rng.normal_complex(), rng.normal_complex();
      const Vector2 img0 = m * basis.u0;
      const double n0 = img0.squaredNorm();
      if (n0 > 1e-24) {
        // One-parameter correction: remove the component of M u1 along M u0
        // by subtracting (c img0) times the dual row of u1.
        const Complex c = img0.dot(m * basis.u1) / n0;
        m.col(1) -= c * img0 / basis.s;
      }
      maps.push_back(m);
    }
    Matrix2 sum = Matrix2::Zero();
    for (const Matrix2& m : maps) sum += m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix2> solver(sum);
    const double top = solver.eigenvalues().maxCoeff();
    if (!(top > 1e-12)) continue;  // all-zero draw, retry
    if (top > 1.0) {
      const double scale = 1.0 / std::sqrt(top);
      for (Matrix2& m : maps) m *= scale;
    }
    MeasurementStrategy strategy;
    strategy.success_maps = std::move(maps);
    return strategy;
  }
  throw std::runtime_error("sample_compliant_strategy: rescaling failed repeatedly");
}

StrategyEvaluation evaluate_strategy(const protocol::ProtocolParams& params,
                                     const MeasurementStrategy& strategy) {
  params.validate();
  if (strategy.trivial) return evaluate_trivial();

  const Complex w = fock::coherent_overlap(params.transmitted_amplitude(0),
                                           params.transmitted_amplitude(1));
  const SpanBasis basis = span_basis(w);
  validate_strategy(strategy, basis);

  const protocol::EquivalentPicture pic = protocol::equivalent_state(params);
  const Complex c0 = pic.memory_coefficients[0];
  const Complex c1 = pic.memory_coefficients[1];
  const double f = pic.f;
  const double env_abs = 2.0 * f - 1.0;

  StrategyEvaluation eval;
  eval.pulse_overlap = std::abs(w);
  eval.env_overlap = env_abs;
  eval.phase_flip = f;

  const Vector4 phi_plus = qubit::phi_plus();
  const Vector4 phi_minus = qubit::phi_minus();
  const Matrix4 z_on_alice =
      Eigen::kroneckerProduct(qubit::sigma_z(), Matrix2::Identity());

  double total_p = 0.0;
  double total_pf = 0.0;
  double success_z_weighted = 0.0;
  for (std::size_t k = 0; k < strategy.success_maps.size(); ++k) {
    const Matrix2& m = strategy.success_maps[k];
    const Vector2 w0 = c0 * (m * basis.u0);
    const Vector2 w1 = c1 * (m * basis.u1);
    const double p = w0.squaredNorm() + w1.squaredNorm();
    if (p < 1e-30) continue;

    OutcomeRecord rec;
    rec.k = static_cast<int>(k);
    rec.probability = p;
    // Lab-frame marginal of the outcome is diagonal by compliance; its
    // z-component enters the conservation bookkeeping before any relabeling.
    rec.alice_z = (w0.squaredNorm() - w1.squaredNorm()) / p;

    Vector4 raw;
    raw << w0(0), w0(1), w1(0), w1(1);
    raw /= std::sqrt(p);
    const CorrectionPair corr = correction_unitaries(w0, w1);
    const Vector4 corrected =
        Eigen::kroneckerProduct(corr.alice, corr.bob) * raw;
    rec.rho = corrected * corrected.adjoint();
    rec.tau = f * rec.rho + (1.0 - f) * z_on_alice * rec.rho * z_on_alice;

    rec.bell_a = std::real(phi_plus.dot(rec.rho * phi_plus) -
                           phi_minus.dot(rec.rho * phi_minus));
    rec.bell_b = 2.0 * phi_plus.dot(rec.rho * phi_minus);
    rec.fidelity = std::real(phi_plus.dot(rec.tau * phi_plus));

    const double closed_form = 0.5 * (1.0 + env_abs * rec.bell_a);
    if (std::abs(rec.fidelity - closed_form) > kTol.inequality) {
      throw std::logic_error("outcome fidelity disagrees with closed form");
    }

    total_p += p;
    total_pf += p * rec.fidelity;
    success_z_weighted += p * rec.alice_z;
    eval.outcomes.push_back(std::move(rec));
  }

  eval.point = {total_p, total_pf};

  MarginalDecomposition& marg = eval.marginals;
  marg.z0 = params.q0 - params.q1();
  const Complex off = c0 * std::conj(c1) * std::conj(w);  // <u1|u0> = conj(w)
  marg.x0 = 2.0 * off.real();
  marg.y0 = -2.0 * off.imag();
  marg.success_z = total_p > 0.0 ? success_z_weighted / total_p : 0.0;

  Matrix2 defect = Matrix2::Identity();
  for (const Matrix2& m : strategy.success_maps) defect -= m.adjoint() * m;
  const Complex fail00 = params.q0 * basis.u0.dot(defect * basis.u0);
  const Complex fail11 = params.q1() * basis.u1.dot(defect * basis.u1);
  const Complex fail01 = c0 * std::conj(c1) * basis.u1.dot(defect * basis.u0);
  const double failure_p = std::real(fail00 + fail11);
  if (failure_p > 1e-12) {
    marg.failure_x = 2.0 * fail01.real() / failure_p;
    marg.failure_y = -2.0 * fail01.imag() / failure_p;
    marg.failure_z = std::real(fail00 - fail11) / failure_p;
  }
  return eval;
}

}  // namespace entgen::strategies
