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

#include "ontlab/quantum.hpp"

#include <cmath>

#include "doctest.h"
#include "ontlab/rng.hpp"

using namespace ontlab;

namespace {

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

Setting random_direction(RngStream& rng) {
  // Gaussian-free uniform direction: rejection-free via spherical angles.
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Setting::from_vector({r * std::cos(phi), r * std::sin(phi), z});
}

}  // namespace

TEST_CASE("state amplitudes at half-angle values") {
  const auto at = [](double theta, int i) { return make_state(theta).amplitudes()(i); };
  CHECK(std::abs(at(0.0, 0)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(at(0.0, 3) - 1.0) < 1e-15);
  CHECK(std::abs(at(kPi / 2.0, 0) - std::sqrt(2.0) / 2.0) < 1e-15);
  CHECK(std::abs(at(kPi / 2.0, 3) - std::sqrt(2.0) / 2.0) < 1e-15);
  CHECK(std::abs(at(kPi / 3.0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(at(kPi / 3.0, 3) - std::sqrt(3.0) / 2.0) < 1e-15);

  for (double theta : {0.0, 0.7, kPi / 2.0}) {
    const auto amp = make_state(theta).amplitudes();
    CHECK(std::abs(amp.squaredNorm() - 1.0) < 1e-12);
    CHECK(amp(1) == std::complex<double>(0.0));
    CHECK(amp(2) == std::complex<double>(0.0));
  }
}

TEST_CASE("mixing angle domain is enforced") {
  CHECK_THROWS_AS(make_state(-0.1), std::domain_error);
  CHECK_THROWS_AS(make_state(kPi / 2.0 + 0.1), std::domain_error);
  CHECK_THROWS_AS(make_state(std::nan("")), std::domain_error);
}

TEST_CASE("dense-matrix oracle basics") {
  const auto psi = make_state(kPi / 3.0);
  CHECK(oracle_expectation(psi, identity2(), identity2()) == doctest::Approx(1.0));
  CHECK(oracle_expectation(make_state(0.0), pauli_z(), identity2()) ==
        doctest::Approx(-1.0));
  CHECK(oracle_expectation(psi, pauli_x(), pauli_x()) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  Eigen::Matrix2cd not_hermitian;
  not_hermitian << 0.0, std::complex<double>(0.0, 1.0),
      std::complex<double>(0.0, 1.0), 0.0;
  CHECK_THROWS_AS(oracle_expectation(psi, not_hermitian, identity2()),
                  std::invalid_argument);
}

TEST_CASE("local expectation spot values") {
  CHECK(local_expectation(make_state(0.0), Setting::in_plane(kPi / 2.0), Party::A) ==
        doctest::Approx(-1.0));
  CHECK(std::fabs(local_expectation(make_state(kPi / 2.0), Setting::in_plane(0.7),
                                    Party::A)) < 1e-12);
  // Oracle value for <I x sigma_z> on the theta = pi/3 state.
  const auto psi = make_state(kPi / 3.0);
  const double oracle = oracle_expectation(psi, identity2(), pauli_z());
  CHECK(oracle == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(local_expectation(psi, Setting::in_plane(kPi / 2.0), Party::B) ==
        doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("correlation spot values") {
  const Setting zhat = Setting::in_plane(kPi / 2.0);
  const Setting xhat = Setting::in_plane(0.0);
  for (double theta : {0.0, 0.9, kPi / 2.0})
    CHECK(correlation_qm(make_state(theta), zhat, zhat) == doctest::Approx(1.0));
  CHECK(correlation_qm(make_state(kPi / 2.0), xhat, xhat) == doctest::Approx(1.0));
  CHECK(std::fabs(correlation_qm(make_state(0.0), xhat, zhat)) < 1e-12);
}

TEST_CASE("closed forms agree with the oracle on random inputs") {
  RngStream rng(20261201, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto psi = make_state(rng.uniform(0.0, kPi / 2.0));
    const Setting a = random_direction(rng);
    const Setting b = random_direction(rng);

    const double oracle_a =
        oracle_expectation(psi, pauli_dot(a.vector()), identity2());
    const double oracle_b =
        oracle_expectation(psi, identity2(), pauli_dot(b.vector()));
    const double oracle_ab =
        oracle_expectation(psi, pauli_dot(a.vector()), pauli_dot(b.vector()));

    CHECK(std::fabs(local_expectation(psi, a, Party::A) - oracle_a) < 1e-10);
    CHECK(std::fabs(local_expectation(psi, b, Party::B) - oracle_b) < 1e-10);
    CHECK(std::fabs(correlation_qm(psi, a, b) - oracle_ab) < 1e-10);
    CHECK(std::fabs(correlation_qm(psi, a, b)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("local expectation is exactly antisymmetric in the setting") {
  RngStream rng(5, 1);
  for (int i = 0; i < 100; ++i) {
    const auto psi = make_state(rng.uniform(0.0, kPi / 2.0));
    const Setting a = random_direction(rng);
    CHECK(local_expectation(psi, -a, Party::A) ==
          -local_expectation(psi, a, Party::A));
  }
}

TEST_CASE("setting construction") {
  const Setting s = Setting::in_plane(0.3);
  CHECK(s.vector().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.is_in_plane());
  CHECK(s.alpha() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(Setting::from_vector(Eigen::Vector3d::Zero()), std::domain_error);
  const Setting t = Setting::from_vector({0.0, 2.0, 0.0});
  CHECK(t.vector().y() == doctest::Approx(1.0));
  CHECK_FALSE(t.is_in_plane());
}
