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

#include "ontlab/models.hpp"

#include <cmath>

#include "doctest.h"

using namespace ontlab;

namespace {

const Setting kZ = Setting::in_plane(kPi / 2.0);
const Setting kX = Setting::in_plane(0.0);

}  // namespace

TEST_CASE("outcome cap half-angles") {
  CHECK(outcome_cap_half_angle(make_state(0.0), kZ, Party::A) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(outcome_cap_half_angle(make_state(kPi / 2.0), Setting::in_plane(1.2),
                               Party::A) == doctest::Approx(kPi / 2.0));
  CHECK(outcome_cap_half_angle(make_state(kPi / 3.0), kZ, Party::A) ==
        doctest::Approx(kPi / 3.0).epsilon(1e-12));
  // Settings with positive local expectation give caps beyond a hemisphere.
  CHECK(outcome_cap_half_angle(make_state(0.0), -kZ, Party::A) ==
        doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("support axis separation inverts the hemisphere overlap") {
  // Maximal entanglement: both caps are hemispheres, the model correlation is
  // 1 - 2 omega / pi, so omega = pi (1 - E)/2 with E = cos(angle(a, b)).
  const auto psi = make_state(kPi / 2.0);
  const BellGeneralizedModel bell;
  for (double angle : {0.0, 0.4, kPi / 2.0, 2.5}) {
    const Setting b = Setting::in_plane(kPi / 2.0 - angle);
    const Setting axis = bell.support_axis(psi, kZ, b);
    const double omega =
        std::fabs(std::remainder(axis.alpha() - b.alpha(), 2.0 * kPi));
    CHECK(omega == doctest::Approx(kPi * (1.0 - std::cos(angle)) / 2.0)
                       .epsilon(1e-7));
  }

  // Perfect correlation requires coinciding caps.
  const Setting axis_same = bell.support_axis(psi, kZ, kZ);
  CHECK((axis_same.vector() - kZ.vector()).norm() < 1e-9);
}

TEST_CASE("support axis keeps a's side of b") {
  const auto psi = make_state(kPi / 2.0);
  const BellGeneralizedModel bell;
  const Setting b = Setting::in_plane(0.3);
  const Setting a_left = Setting::in_plane(0.3 - 1.0);
  const Setting a_right = Setting::in_plane(0.3 + 1.0);
  const double left = std::remainder(bell.support_axis(psi, a_left, b).alpha() - 0.3,
                                     2.0 * kPi);
  const double right = std::remainder(
      bell.support_axis(psi, a_right, b).alpha() - 0.3, 2.0 * kPi);
  CHECK(left < 0.0);
  CHECK(right > 0.0);
  CHECK(std::fabs(left) == doctest::Approx(std::fabs(right)).epsilon(1e-9));
}

TEST_CASE("unreachable correlations raise the reported range") {
  const auto psi = make_state(kPi / 3.0);
  CHECK_THROWS_AS(
      BellGeneralizedModel::solve_axis_separation(psi, kZ, kX, 1.5, 1e-10),
      NoSolutionError);
  try {
    BellGeneralizedModel::solve_axis_separation(psi, kZ, kX, -1.5, 1e-10);
    FAIL("expected NoSolutionError");
  } catch (const NoSolutionError& err) {
    CHECK(err.required() == doctest::Approx(-1.5));
    CHECK(err.reachable_min() < err.reachable_max());
    CHECK(err.reachable_max() <= 1.0 + 1e-9);
  }
}

TEST_CASE("cap model pointwise outcomes") {
  const auto psi = make_state(kPi / 3.0);
  const BellGeneralizedModel bell;
  const auto prepared = bell.prepare(psi, kZ, kX);

  // Cap centers and antipodes.
  CHECK(prepared.outcome_A(OntPoint::from_vector(prepared.support_a.axis())) == 1);
  CHECK(prepared.outcome_B(OntPoint::from_vector(-kX.vector())) == -1);
  CHECK(bell.outcome_B(psi, kX, OntPoint::from_vector(-kX.vector())) == -1);

  // Every outcome is exactly +/-1.
  RngStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const OntPoint p = sample_uniform(rng);
    const int a = prepared.outcome_A(p);
    const int b = prepared.outcome_B(p);
    CHECK((a == 1 || a == -1));
    CHECK((b == 1 || b == -1));
  }
}

TEST_CASE("cap model reproduces the quantum averages") {
  const BellGeneralizedModel bell;
  const auto psi = make_state(kPi / 3.0);

  RngStream rng(17, 0);
  const auto avg =
      estimate_local_average(bell, psi, kZ, kZ, Party::A, 1'000'000, rng);
  CHECK(z_against(avg, -0.5) < 4.0);

  // The numerically constructed axis must reproduce the correlation too.
  RngStream rng2(17, 1);
  const auto corr = estimate_correlation(bell, psi, kZ, kX, 1'000'000, rng2);
  CHECK(z_against(corr, correlation_qm(psi, kZ, kX)) < 4.0);

  // Identical settings at maximal entanglement: exact correlation 1.
  RngStream rng3(17, 2);
  const auto perfect =
      estimate_correlation(bell, make_state(kPi / 2.0), kZ, kZ, 100'000, rng3);
  CHECK(perfect.mean == 1.0);
  CHECK(perfect.std_error == 0.0);
}

TEST_CASE("cap model consistency across a settings grid") {
  const BellGeneralizedModel bell;
  const double thetas[] = {0.0, kPi / 4.0, kPi / 2.0};
  const double alphas[] = {-2.0, 0.9, kPi / 2.0};
  std::uint64_t stream = 0;
  for (double theta : thetas) {
    const auto psi = make_state(theta);
    for (double alpha_a : alphas) {
      for (double alpha_b : alphas) {
        const Setting a = Setting::in_plane(alpha_a);
        const Setting b = Setting::in_plane(alpha_b);
        RngStream rng(2026, stream++);
        const auto ea = estimate_local_average(bell, psi, a, b, Party::A,
                                               200'000, rng);
        const auto eb = estimate_local_average(bell, psi, a, b, Party::B,
                                               200'000, rng);
        const auto ec = estimate_correlation(bell, psi, a, b, 200'000, rng);
        CHECK(z_against(ea, local_expectation(psi, a, Party::A)) < 5.0);
        CHECK(z_against(eb, local_expectation(psi, b, Party::B)) < 5.0);
        CHECK(z_against(ec, correlation_qm(psi, a, b)) < 5.0);
      }
    }
  }
}

TEST_CASE("negating the setting flips the cap and the average") {
  const BellGeneralizedModel bell;
  const auto psi = make_state(kPi / 3.0);
  const Setting a = Setting::in_plane(1.0);

  const double xi = outcome_cap_half_angle(psi, a, Party::A);
  const double xi_neg = outcome_cap_half_angle(psi, -a, Party::A);
  CHECK(xi + xi_neg == doctest::Approx(kPi).epsilon(1e-12));

  RngStream rng(31, 0);
  const auto avg =
      estimate_local_average(bell, psi, -a, kX, Party::A, 1'000'000, rng);
  CHECK(z_against(avg, -local_expectation(psi, a, Party::A)) < 4.0);
}

TEST_CASE("band model local averages") {
  const SaturatingSigmaZModel model;

  // |<A>| = 1: no band at all, the outcome is the sign everywhere,
  // including at tau = pi/2 exactly.
  {
    const auto psi = make_state(0.0);
    CHECK(SaturatingSigmaZModel::band_half_width(psi, kZ, Party::A) == 0.0);
    const auto prepared = model.prepare(psi, kZ, kZ);
    CHECK(prepared.outcome_A(OntPoint(kPi / 2.0 + 0.1, kPi / 2.0)) == -1);
    CHECK(prepared.outcome_A(OntPoint(0.0, 0.3)) == -1);
  }

  // theta = pi/3, sigma_z: band half-width asin(1/2) = pi/6 and the Monte
  // Carlo local average comes back to the quantum value.
  {
    const auto psi = make_state(kPi / 3.0);
    CHECK(SaturatingSigmaZModel::band_half_width(psi, kZ, Party::A) ==
          doctest::Approx(kPi / 6.0).epsilon(1e-12));
    RngStream rng(41, 0);
    const auto avg =
        estimate_local_average(model, psi, kZ, kX, Party::A, 1'000'000, rng);
    CHECK(z_against(avg, -0.5) < 4.0);
    RngStream rng_b(41, 1);
    const auto avg_b = estimate_local_average(model, psi, kZ, Setting::in_plane(0.8),
                                              Party::B, 1'000'000, rng_b);
    CHECK(z_against(avg_b, local_expectation(psi, Setting::in_plane(0.8),
                                             Party::B)) < 4.0);
  }
}

TEST_CASE("factorized model basics") {
  const FactorizedLocalModel model;
  const auto product = make_state(0.0);

  CHECK_THROWS_AS(model.prepare(make_state(0.5), kZ, kX), InvalidStateError);
  CHECK_THROWS_AS(
      model.outcome_B(make_state(0.5), kX, OntPoint(0.0, kPi / 2.0)),
      InvalidStateError);

  // |<A>| = 1: constant outcome.
  const auto prepared_z = model.prepare(product, kZ, kZ);
  CHECK(prepared_z.outcome_A(OntPoint(1.0, kPi / 2.0)) == -1);
  CHECK(prepared_z.outcome_A(OntPoint(1.0, 0.1)) == -1);

  // <A> = 0 for the x setting: halved band of width asin(1/2), average 0.
  CHECK(FactorizedLocalModel::band_half_width(product, kX, Party::A) ==
        doctest::Approx(kPi / 6.0).epsilon(1e-12));
  RngStream rng(53, 0);
  const auto avg =
      estimate_local_average(model, product, kX, kX, Party::A, 1'000'000, rng);
  CHECK(z_against(avg, 0.0) < 4.0);

  // The outcome never reads mu: equal azimuths, equal outcomes.
  const auto prepared_x = model.prepare(product, kX, kX);
  for (double tau : {0.2, 1.2, kPi / 2.0, 2.8})
    CHECK(prepared_x.outcome_A(OntPoint(0.1, tau)) ==
          prepared_x.outcome_A(OntPoint(4.0, tau)));
}

TEST_CASE("estimators reject underpowered requests") {
  const BellGeneralizedModel bell;
  RngStream rng(1, 0);
  CHECK_THROWS_AS(estimate_local_average(bell, make_state(0.3), kZ, kX, Party::A,
                                         100, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_correlation(bell, make_state(0.3), kZ, kX, 9'999, rng),
                  std::invalid_argument);
}
