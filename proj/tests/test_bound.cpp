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

#include "ontlab/bound.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace ontlab;

namespace {

const Setting kZ = Setting::in_plane(kPi / 2.0);

// Independent route to the per-n minimum for in-plane chains: each
// odd-indexed chain point appears in exactly one bracket of the alternating
// sum, so it can be maximized out in closed form,
//   max over settings u of E(u, .) pairing = sqrt(s vx^2 + vy^2)
// in coordinates p = (sqrt(s) cos alpha, sin alpha) with s = sin theta.  The
// remaining even points form a short chain solved by dense dynamic
// programming on an azimuth grid with local refinement.
double dp_min_omega(double theta, int n, int grid = 2001) {
  const double s = std::sin(theta);
  std::vector<double> px(grid), py(grid);
  for (int g = 0; g < grid; ++g) {
    const double alpha = -kPi / 2.0 + 2.0 * kPi * g / (grid - 1);
    px[g] = std::sqrt(s) * std::cos(alpha);
    py[g] = std::sin(alpha);
  }
  const auto link = [s](double ax, double ay, double bx, double by) {
    const double vx = ax + bx, vy = ay + by;
    return std::sqrt(s * vx * vx + vy * vy);
  };
  std::vector<double> value(grid), next(grid);
  for (int g = 0; g < grid; ++g) value[g] = link(0.0, 1.0, px[g], py[g]);
  for (int step = 0; step < n - 2; ++step) {
    for (int g = 0; g < grid; ++g) {
      double best = -1e300;
      for (int h = 0; h < grid; ++h)
        best = std::max(best, value[h] + link(px[h], py[h], px[g], py[g]));
      next[g] = best;
    }
    value.swap(next);
  }
  double total = -1e300;
  for (int g = 0; g < grid; ++g)
    total = std::max(total, value[g] + link(px[g], py[g], 0.0, -1.0));
  return n - 0.5 * total;
}

}  // namespace

TEST_CASE("chain construction and validation") {
  const Chain chain = Chain::equally_spaced(kZ, 3);
  CHECK(chain.settings.size() == 7);
  CHECK(chain.n() == 3);
  CHECK((chain.settings.front().vector() - kZ.vector()).norm() == 0.0);
  CHECK((chain.settings.back().vector() + kZ.vector()).norm() == 0.0);
  CHECK_NOTHROW(chain.validate(kZ));

  Chain bad = chain;
  bad.settings.pop_back();
  CHECK_THROWS_AS(bad.validate(kZ), std::invalid_argument);
  CHECK_THROWS_AS(chain.validate(Setting::in_plane(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Chain::equally_spaced(kZ, 0), std::invalid_argument);
}

TEST_CASE("omega closed forms") {
  // Maximal entanglement: correlations are cosines of azimuth differences,
  // so the equally spaced chain evaluates to n (1 - cos(pi/2n)).
  const auto psi_max = make_state(kPi / 2.0);
  for (int n = 1; n <= 16; ++n) {
    const double value = omega(psi_max, kZ, Chain::equally_spaced(kZ, n));
    CHECK(std::fabs(value - n * (1.0 - std::cos(kPi / (2.0 * n)))) < 1e-12);
  }

  // Single interior setting: omega is 1 regardless of where it points.
  for (double alpha : {0.0, 0.9, 2.0}) {
    Chain chain;
    chain.settings = {kZ, Setting::in_plane(alpha), -kZ};
    CHECK(omega(psi_max, kZ, chain) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(omega(make_state(0.4), kZ, chain) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // n = 2 equally spaced at maximal entanglement: 2 - sqrt(2).
  CHECK(omega(psi_max, kZ, Chain::equally_spaced(kZ, 2)) ==
        doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

  // Product state, sign chain with one flip: omega = 1.
  Chain sign_chain;
  sign_chain.settings = {kZ, kZ, kZ, -kZ, -kZ};
  CHECK(omega(make_state(0.0), kZ, sign_chain) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("minimizer never exceeds its equally spaced start") {
  RngStream rng(7, 0);
  MinimizeOptions opts;
  opts.restarts = 4;
  for (int i = 0; i < 6; ++i) {
    const auto psi = make_state(rng.uniform(0.0, kPi / 2.0));
    const Setting a = Setting::in_plane(rng.uniform(-kPi, kPi));
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    const auto res = minimize_omega(psi, a, n, opts, rng);
    CHECK(res.value <= omega(psi, a, Chain::equally_spaced(a, n)) + 1e-12);
    CHECK_NOTHROW(res.chain.validate(a));
  }
}

TEST_CASE("minimizer reaches the known optima") {
  MinimizeOptions opts;

  RngStream rng(8, 0);
  const auto res_max = minimize_omega(make_state(kPi / 2.0), kZ, 4, opts, rng);
  CHECK(res_max.value <= 4.0 * (1.0 - std::cos(kPi / 8.0)) + 1e-9);

  // Product state: the minimum is exactly 1 for every n.
  RngStream rng2(8, 1);
  const auto res_product = minimize_omega(make_state(0.0), kZ, 3, opts, rng2);
  CHECK(res_product.value == doctest::Approx(1.0).epsilon(1e-6));

  // Interior entanglement: the scan at n = 8 lands within 1e-3 of cos(theta).
  RngStream rng3(8, 2);
  const auto report = scan_bound(make_state(kPi / 3.0), kZ, 8, opts, rng3);
  CHECK(std::fabs(report.overall_min - 0.5) < 1e-3);
  CHECK(report.gap == doctest::Approx(report.overall_min - 0.5).epsilon(1e-12));
}

TEST_CASE("minimizer agrees with the dynamic-programming route") {
  MinimizeOptions opts;
  for (double theta : {kPi / 3.0, kPi / 5.0}) {
    RngStream rng(9, static_cast<std::uint64_t>(theta * 1000));
    const auto res = minimize_omega(make_state(theta), kZ, 4, opts, rng);
    const double dp = dp_min_omega(theta, 4);
    // The DP grid overestimates the minimum by its discretization error.
    CHECK(res.value <= dp + 1e-9);
    CHECK(std::fabs(res.value - dp) < 2e-4);
  }
}

TEST_CASE("scan bound per-n behavior") {
  MinimizeOptions opts;
  opts.restarts = 6;

  RngStream rng(10, 0);
  const auto max_report = scan_bound(make_state(kPi / 2.0), kZ, 8, opts, rng);
  for (const auto& pn : max_report.per_n)
    CHECK(std::fabs(pn.min_value -
                    pn.n * (1.0 - std::cos(kPi / (2.0 * pn.n)))) < 1e-7);
  CHECK(max_report.overall_min <= 8.0 * (1.0 - std::cos(kPi / 16.0)) + 1e-9);
  CHECK(max_report.conjecture_value == doctest::Approx(0.0).epsilon(1e-12));

  RngStream rng2(10, 1);
  const auto product_report = scan_bound(make_state(0.0), kZ, 5, opts, rng2);
  for (const auto& pn : product_report.per_n)
    CHECK(pn.min_value == doctest::Approx(1.0).epsilon(1e-6));

  // Extending the scan can only lower the overall minimum.
  RngStream rng3(10, 2);
  const auto short_scan = scan_bound(make_state(1.1), kZ, 4, opts, rng3);
  RngStream rng4(10, 2);
  const auto long_scan = scan_bound(make_state(1.1), kZ, 6, opts, rng4);
  CHECK(long_scan.overall_min <= short_scan.overall_min + 1e-12);

  // Running minimum is non-increasing within one scan.
  double running = HUGE_VAL;
  for (const auto& pn : long_scan.per_n) {
    CHECK(std::min(running, pn.min_value) <= running);
    running = std::min(running, pn.min_value);
  }
  CHECK(running == doctest::Approx(long_scan.overall_min));
}

TEST_CASE("full-sphere chains do not beat in-plane ones") {
  MinimizeOptions in_plane;
  in_plane.restarts = 6;
  MinimizeOptions full;
  full.restarts = 6;
  full.full_sphere = true;

  RngStream rng(11, 0);
  const auto flat = minimize_omega(make_state(1.2), kZ, 3, in_plane, rng);
  RngStream rng2(11, 1);
  const auto sphere = minimize_omega(make_state(1.2), kZ, 3, full, rng2);
  CHECK(sphere.value <= omega(make_state(1.2), kZ, Chain::equally_spaced(kZ, 3)) + 1e-12);
  // Measured finding: the out-of-plane freedom brings no improvement.
  CHECK(sphere.value >= flat.value - 1e-6);
}

TEST_CASE("bound right-hand side") {
  CHECK(bound_rhs(make_state(0.0), kZ) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bound_rhs(make_state(kPi / 2.0), kZ) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bound_rhs(make_state(kPi / 3.0), kZ) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("constraint verification") {
  const auto psi = make_state(kPi / 3.0);
  MinimizeOptions opts;
  opts.restarts = 4;
  RngStream rng(12, 0);
  const auto report = scan_bound(psi, kZ, 4, opts, rng);

  const auto sat = delta(psi, kZ,
                         intermediate_profile(SaturatingSigmaZModel{}, psi, kZ,
                                              Party::A));
  const auto sat_check = verify_constraint(sat, psi, kZ, report);
  CHECK(sat_check.satisfied);
  CHECK(std::fabs(sat_check.margin_vs_rhs) < 1e-8);  // attains the bound

  const auto bell = delta(psi, kZ,
                          intermediate_profile(BellGeneralizedModel{}, psi, kZ,
                                               Party::A));
  const auto bell_check = verify_constraint(bell, psi, kZ, report);
  CHECK(bell_check.satisfied);
  CHECK(bell_check.margin_vs_rhs > 1e-3);  // strictly inside

  // A fabricated variance above the bound must be flagged.
  const auto fake_check = verify_constraint({0.7, 0.0}, psi, kZ, report);
  CHECK_FALSE(fake_check.satisfied);

  // Maximal entanglement: variance and bound both vanish, 0 <= 0.
  const auto psi_max = make_state(kPi / 2.0);
  RngStream rng_max(12, 1);
  const auto report_max = scan_bound(psi_max, kZ, 2, opts, rng_max);
  const auto d_max =
      delta(psi_max, kZ,
            intermediate_profile(BellGeneralizedModel{}, psi_max, kZ, Party::A));
  CHECK(d_max.value < 1e-12);
  CHECK(std::fabs(bound_rhs(psi_max, kZ)) < 1e-12);
  CHECK(verify_constraint(d_max, psi_max, kZ, report_max).satisfied);
}
