#pragma once

#include <Eigen/Dense>

namespace entgen::qubit {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;

inline Matrix2cd sigma_x() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2cd sigma_y() {
  Matrix2cd m;
  m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  return m;
}

inline Matrix2cd sigma_z() {
  Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// Two-qubit basis order |00>, |01>, |10>, |11>.
inline Vector4cd phi_plus() {
  Vector4cd v;
  v << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  return v;
}

inline Vector4cd phi_minus() {
  Vector4cd v;
  v << 1 / std::sqrt(2.0), 0, 0, -1 / std::sqrt(2.0);
  return v;
}

inline Vector4cd psi_plus() {
  Vector4cd v;
  v << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  return v;
}

inline Vector4cd psi_minus() {
  Vector4cd v;
  v << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  return v;
}

}  // namespace entgen::qubit
