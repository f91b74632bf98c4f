// Copyright 2026 The ontlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Exact quantum predictions for the one-parameter family of two-qubit states
//
//     |psi(theta)> = sin(theta/2)|00> + cos(theta/2)|11>,   theta in [0, pi/2],
//
// with spin observables sigma.a (x) sigma.b.  Coordinate convention used
// throughout the project: the particles propagate along y-hat, measurement
// settings live in the x-z plane by default, and sigma_z corresponds to the
// z-hat direction (in-plane azimuth alpha = pi/2).  |0> and |1> are the +1
// and -1 eigenvectors of sigma_z.

#ifndef ONTLAB_QUANTUM_HPP
#define ONTLAB_QUANTUM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace ontlab {

inline constexpr double kPi = std::numbers::pi;

enum class Party { A, B };

/// Pure state sin(theta/2)|00> + cos(theta/2)|11>.
class TwoQubitState {
 public:
  explicit TwoQubitState(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= kPi / 2.0))
      throw std::domain_error("mixing angle must lie in [0, pi/2]");
  }

  double theta() const { return theta_; }

  /// Amplitudes in the product basis {|00>, |01>, |10>, |11>}.
  Eigen::Vector4cd amplitudes() const {
    Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();
    amp(0) = std::sin(theta_ / 2.0);
    amp(3) = std::cos(theta_ / 2.0);
    return amp;
  }

 private:
  double theta_;
};

inline TwoQubitState make_state(double theta) { return TwoQubitState(theta); }

/// A measurement direction: a unit 3-vector, by default in the x-z plane.
class Setting {
 public:
  /// Unit vector cos(alpha) x-hat + sin(alpha) z-hat in the measurement plane.
  static Setting in_plane(double alpha) {
    return Setting(Eigen::Vector3d(std::cos(alpha), 0.0, std::sin(alpha)));
  }

  /// Normalizes v; throws if it is too short to define a direction.
  static Setting from_vector(const Eigen::Vector3d& v) {
    const double norm = v.norm();
    if (norm < 1e-12) throw std::domain_error("setting vector has near-zero norm");
    return Setting(v / norm);
  }

  const Eigen::Vector3d& vector() const { return v_; }

  /// Azimuth in the x-z plane (undefined direction for vectors along y-hat).
  double alpha() const { return std::atan2(v_.z(), v_.x()); }

  bool is_in_plane(double tol = 1e-12) const { return std::fabs(v_.y()) <= tol; }

  Setting operator-() const { return Setting(-v_); }

 private:
  explicit Setting(const Eigen::Vector3d& v) : v_(v) {}
  Eigen::Vector3d v_;
};

/// sigma . n for a (not necessarily unit) real 3-vector n.
inline Eigen::Matrix2cd pauli_dot(const Eigen::Vector3d& n) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  m << n.z(), n.x() - 1i * n.y(),  //
      n.x() + 1i * n.y(), -n.z();
  return m;
}

inline Eigen::Matrix2cd pauli_x() { return pauli_dot({1, 0, 0}); }
inline Eigen::Matrix2cd pauli_y() { return pauli_dot({0, 1, 0}); }
inline Eigen::Matrix2cd pauli_z() { return pauli_dot({0, 0, 1}); }

/// <psi| sigma.s (x) I |psi> for party A, <psi| I (x) sigma.s |psi> for B.
/// Both marginals of the state family reduce to the same closed form
/// -cos(theta) * s_z; the dense-matrix oracle below pins this down in tests.
inline double local_expectation(const TwoQubitState& psi, const Setting& s, Party) {
  return -std::cos(psi.theta()) * s.vector().z();
}

/// <psi| sigma.a (x) sigma.b |psi>
///   = sin(theta) (a_x b_x - a_y b_y) + a_z b_z.
inline double correlation_qm(const TwoQubitState& psi, const Setting& a,
                             const Setting& b) {
  const Eigen::Vector3d& u = a.vector();
  const Eigen::Vector3d& v = b.vector();
  return std::sin(psi.theta()) * (u.x() * v.x() - u.y() * v.y()) + u.z() * v.z();
}

/// <psi| op_a (x) op_b |psi> by direct 4x4 tensor-product algebra.  This is
/// the independent route against which the closed forms above are checked;
/// it must stay free of them.
inline double oracle_expectation(const TwoQubitState& psi,
                                 const Eigen::Matrix2cd& op_a,
                                 const Eigen::Matrix2cd& op_b) {
  auto hermitian = [](const Eigen::Matrix2cd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12;
  };
  if (!hermitian(op_a) || !hermitian(op_b))
    throw std::invalid_argument("oracle_expectation requires Hermitian operators");

  Eigen::Matrix4cd tensor;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      tensor.block<2, 2>(2 * i, 2 * j) = op_a(i, j) * op_b;

  const Eigen::Vector4cd amp = psi.amplitudes();
  return (amp.adjoint() * tensor * amp).value().real();
}

}  // namespace ontlab

#endif  // ONTLAB_QUANTUM_HPP
