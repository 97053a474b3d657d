#include "entgen/fock.hpp"

#include <algorithm>
#include <cmath>

namespace entgen::fock {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_transmittance(double transmittance) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw std::domain_error("transmittance must lie in (0,1)");
  }
}

}  // namespace

double TruncationPolicy::tail_mass(Complex amplitude) const {
  const double mean = std::norm(amplitude);
  if (mean == 0.0) return 0.0;
  // Sum the Poisson pmf upward from the cutoff; stable for tiny tails where
  // 1 - cdf would cancel.
  double term = std::exp(cutoff * std::log(mean) - mean - std::lgamma(cutoff + 1.0));
  double sum = 0.0;
  for (int n = cutoff; n < cutoff + 4096; ++n) {
    sum += term;
    term *= mean / (n + 1);
    if (term < sum * 1e-18 + 1e-300) break;
  }
  return sum;
}

bool TruncationPolicy::admits(Complex amplitude) const {
  return tail_mass(amplitude) < tail_tol;
}

void TruncationPolicy::require(Complex amplitude) const {
  if (!admits(amplitude)) {
    throw TruncationError("cutoff " + std::to_string(cutoff) +
                          " too small for coherent amplitude of modulus " +
                          std::to_string(std::abs(amplitude)));
  }
}

TruncationPolicy TruncationPolicy::for_amplitudes(std::span<const Complex> amplitudes,
                                                  double tail_tol) {
  double max_mean = 0.0;
  for (const Complex& a : amplitudes) max_mean = std::max(max_mean, std::norm(a));
  const int cutoff =
      static_cast<int>(std::ceil(max_mean + 10.0 * std::sqrt(max_mean + 1.0) + 20.0));
  return {cutoff, tail_tol};
}

TruncationPolicy TruncationPolicy::for_amplitudes(std::initializer_list<Complex> amplitudes,
                                                  double tail_tol) {
  return for_amplitudes(std::span<const Complex>(amplitudes.begin(), amplitudes.size()),
                        tail_tol);
}

void FockOperator::validate_shape() const {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("operator matrix must be square");
  }
  Eigen::Index prod = 1;
  for (Eigen::Index d : factor_dims) prod *= d;
  if (prod != matrix.rows()) {
    throw std::invalid_argument("factor dimensions do not match matrix size");
  }
}

PulseState coherent_vector(Complex alpha, const TruncationPolicy& policy) {
  if (policy.cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  policy.require(alpha);
  Vector amps(policy.cutoff);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < policy.cutoff; ++n) {
    amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  }
  return {std::move(amps)};
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) + std::conj(alpha) * beta);
}

Matrix loss_isometry(double transmittance, int dim) {
  require_transmittance(transmittance);
  const double log_t = std::log(transmittance);
  const double log_r = std::log1p(-transmittance);
  Matrix iso = Matrix::Zero(static_cast<Eigen::Index>(dim) * dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double log_p = log_binomial(n, k) + k * log_t + (n - k) * log_r;
      iso(static_cast<Eigen::Index>(k) * dim + (n - k), n) = std::exp(0.5 * log_p);
    }
  }
  return iso;
}

Vector apply_loss_joint(const PulseState& state, double transmittance) {
  require_transmittance(transmittance);
  if (std::abs(state.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("apply_loss expects a normalized input state");
  }
  return loss_isometry(transmittance, state.dim()) * state.amplitudes;
}

FockOperator apply_loss(const PulseState& state, double transmittance) {
  const Vector joint = apply_loss_joint(state, transmittance);
  const int dim = state.dim();
  // Reshape [b, E] and contract the environment index.
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      psi(joint.data(), dim, dim);
  Matrix rho = psi * psi.adjoint();
  return {std::move(rho), {dim}};
}

FockOperator apply_loss(const FockOperator& density, double transmittance) {
  density.validate_shape();
  if (density.factor_dims.size() != 1) {
    throw std::invalid_argument("apply_loss expects a single-mode operator");
  }
  const int dim = static_cast<int>(density.dim());
  const Matrix iso = loss_isometry(transmittance, dim);
  // Kraus form of the traced channel: one operator per environment photon number.
  Matrix out = Matrix::Zero(dim, dim);
  Matrix kraus(dim, dim);
  for (int e = 0; e < dim; ++e) {
    for (int k = 0; k < dim; ++k) {
      kraus.row(k) = iso.row(static_cast<Eigen::Index>(k) * dim + e);
    }
    out.noalias() += kraus * density.matrix * kraus.adjoint();
  }
  return {std::move(out), {dim}};
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  a.validate_shape();
  b.validate_shape();
  Matrix out(a.dim() * b.dim(), a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.matrix(i, j) * b.matrix;
    }
  }
  std::vector<Eigen::Index> dims = a.factor_dims;
  dims.insert(dims.end(), b.factor_dims.begin(), b.factor_dims.end());
  return {std::move(out), std::move(dims)};
}

FockOperator pure_density(const Vector& state, std::vector<Eigen::Index> factor_dims) {
  FockOperator op{state * state.adjoint(), std::move(factor_dims)};
  op.validate_shape();
  return op;
}

FockOperator partial_trace(const FockOperator& op, std::size_t factor) {
  op.validate_shape();
  if (factor >= op.factor_dims.size()) {
    throw std::invalid_argument("partial_trace: no such factor");
  }
  Eigen::Index left = 1, right = 1;
  for (std::size_t i = 0; i < factor; ++i) left *= op.factor_dims[i];
  for (std::size_t i = factor + 1; i < op.factor_dims.size(); ++i) {
    right *= op.factor_dims[i];
  }
  const Eigen::Index mid = op.factor_dims[factor];
  Matrix out = Matrix::Zero(left * right, left * right);
  for (Eigen::Index lr = 0; lr < left; ++lr) {
    for (Eigen::Index lc = 0; lc < left; ++lc) {
      for (Eigen::Index rr = 0; rr < right; ++rr) {
        for (Eigen::Index rc = 0; rc < right; ++rc) {
          Complex sum = 0.0;
          for (Eigen::Index s = 0; s < mid; ++s) {
            sum += op.matrix((lr * mid + s) * right + rr, (lc * mid + s) * right + rc);
          }
          out(lr * right + rr, lc * right + rc) = sum;
        }
      }
    }
  }
  std::vector<Eigen::Index> dims;
  for (std::size_t i = 0; i < op.factor_dims.size(); ++i) {
    if (i != factor) dims.push_back(op.factor_dims[i]);
  }
  if (dims.empty()) dims.push_back(1);
  return {std::move(out), std::move(dims)};
}

double trace_distance(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const Matrix diff = a.matrix - b.matrix;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((diff + diff.adjoint()) / 2.0);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double fidelity_to(const FockOperator& rho, const Vector& pure_target) {
  if (rho.dim() != pure_target.size()) {
    throw std::invalid_argument("fidelity_to: dimension mismatch");
  }
  const Complex value = (pure_target.adjoint() * rho.matrix * pure_target)(0, 0);
  return value.real();
}

bool is_density(const FockOperator& op, const Tolerances& tol) {
  op.validate_shape();
  if ((op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() > tol.hermiticity) {
    return false;
  }
  if (std::abs(op.matrix.trace().real() - 1.0) > tol.unit_trace) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix);
  return solver.eigenvalues().minCoeff() >= tol.min_eigenvalue;
}

}  // namespace entgen::fock
