#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "entgen/tolerances.hpp"

namespace entgen::fock {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// A coherent amplitude was requested that the configured cutoff cannot
// represent to the policy's tail tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Photon-number truncation: states live on photon numbers 0..cutoff-1 and the
// neglected Poisson tail of every coherent amplitude must stay below tail_tol.
struct TruncationPolicy {
  int cutoff = 1;
  double tail_tol = 1e-12;

  // Probability mass of |amplitude|^2-mean Poisson statistics at n >= cutoff.
  double tail_mass(Complex amplitude) const;
  bool admits(Complex amplitude) const;
  void require(Complex amplitude) const;  // throws TruncationError

  // Smallest cutoff n with n >= m + 10*sqrt(m+1) + 20 where m is the largest
  // |amplitude|^2; keeps the tail below 1e-12 for |amplitude| <= 3.
  static TruncationPolicy for_amplitudes(std::span<const Complex> amplitudes,
                                         double tail_tol = 1e-12);
  static TruncationPolicy for_amplitudes(std::initializer_list<Complex> amplitudes,
                                         double tail_tol = 1e-12);
};

// Single-mode pulse in the truncated photon-number basis.
struct PulseState {
  Vector amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

// Dense operator over one or more tensor factors.
struct FockOperator {
  Matrix matrix;
  std::vector<Eigen::Index> factor_dims;

  Eigen::Index dim() const { return matrix.rows(); }
  void validate_shape() const;  // square, factor_dims product == dim
};

// |alpha> truncated at policy.cutoff; throws TruncationError when the policy
// does not admit alpha.
PulseState coherent_vector(Complex alpha, const TruncationPolicy& policy);

// <alpha|beta> = exp(-(|alpha|^2+|beta|^2)/2 + conj(alpha) beta), exact.
Complex coherent_overlap(Complex alpha, Complex beta);

// Isometry of the loss channel with transmittance T: maps the input mode into
// transmitted (b) and environment (E) modes, |n> -> binomial splitting with
// vacuum ancilla. Shape (dim*dim) x dim; output factors ordered [b, E].
Matrix loss_isometry(double transmittance, int dim);

// Joint pure output of the loss channel, factors [b, E].
Vector apply_loss_joint(const PulseState& state, double transmittance);

// Loss channel with the environment traced out.
FockOperator apply_loss(const PulseState& state, double transmittance);
FockOperator apply_loss(const FockOperator& density, double transmittance);

// Multilinear utilities.
Vector tensor(const Vector& a, const Vector& b);
FockOperator tensor(const FockOperator& a, const FockOperator& b);
FockOperator pure_density(const Vector& state, std::vector<Eigen::Index> factor_dims);
FockOperator partial_trace(const FockOperator& op, std::size_t factor);
double trace_distance(const FockOperator& a, const FockOperator& b);
double fidelity_to(const FockOperator& rho, const Vector& pure_target);

// Density-operator sanity per the central tolerance record.
bool is_density(const FockOperator& op, const Tolerances& tol = kTol);

}  // namespace entgen::fock
