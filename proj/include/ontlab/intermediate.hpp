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
// The intermediate level: what an observer who knows the polar angle tau of
// the ontic state (but not the azimuth mu) can predict.  For each model this
// is the mu-average of the outcome at fixed tau -- a function of tau that in
// general differs from the quantum local expectation, while its tau-average
// must reproduce it.  The variance of that function over tau measures the
// predictive deviation from quantum mechanics.

#ifndef ONTLAB_INTERMEDIATE_HPP
#define ONTLAB_INTERMEDIATE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ontlab/errors.hpp"
#include "ontlab/estimate.hpp"
#include "ontlab/models.hpp"
#include "ontlab/quadrature.hpp"
#include "ontlab/quantum.hpp"
#include "ontlab/sphere.hpp"

namespace ontlab {

/// A local average at the intermediate level: a piecewise-smooth function of
/// the polar angle with values in [-1, 1] and known kink locations.
struct IntermediateAverage {
  std::vector<double> band_edges;            // kink polar angles, sorted
  std::function<double(double)> evaluate;    // tau in [0, pi] -> [-1, 1]
};

/// Intermediate local average of a cap-supported outcome: twice the covered
/// fraction of the mu-circle minus one.  Depends on the setting only through
/// the cap half-angle, which is why knowing tau signals nothing about the
/// remote setting.
inline double cap_intermediate_average(double cap_half_angle, double tau) {
  return 2.0 * azimuthal_cap_fraction(cap_half_angle, tau) - 1.0;
}

/// Profile of the cap-support model for the given party's setting.
inline IntermediateAverage intermediate_profile(const BellGeneralizedModel&,
                                                const TwoQubitState& psi,
                                                const Setting& s, Party p) {
  const double half = outcome_cap_half_angle(psi, s, p);
  const double inner = std::fabs(kPi / 2.0 - half);
  return {{inner, kPi - inner},
          [half](double tau) { return cap_intermediate_average(half, tau); }};
}

/// Profile of the band-redistributed model: 0 on the polar band, the sign of
/// the local expectation outside it.
inline IntermediateAverage intermediate_profile(const SaturatingSigmaZModel&,
                                                const TwoQubitState& psi,
                                                const Setting& s, Party p) {
  const double eta = SaturatingSigmaZModel::band_half_width(psi, s, p);
  const double sign = sign_positive_zero(local_expectation(psi, s, p));
  return {{kPi / 2.0 - eta, kPi / 2.0 + eta}, [eta, sign](double tau) {
            return eta > 0.0 && std::fabs(tau - kPi / 2.0) <= eta ? 0.0 : sign;
          }};
}

/// Profile of the factorized local model: -sign on the halved band, +sign
/// outside; |f| = 1 everywhere.
inline IntermediateAverage intermediate_profile(const FactorizedLocalModel&,
                                                const TwoQubitState& psi,
                                                const Setting& s, Party p) {
  if (psi.theta() > 1e-12)
    throw InvalidStateError("factorized model is only valid for theta = 0");
  const double eta = FactorizedLocalModel::band_half_width(psi, s, p);
  const double sign = sign_positive_zero(local_expectation(psi, s, p));
  return {{kPi / 2.0 - eta, kPi / 2.0 + eta}, [eta, sign](double tau) {
            return eta > 0.0 && std::fabs(tau - kPi / 2.0) <= eta ? -sign : sign;
          }};
}

/// Monte Carlo intermediate local average: the chosen party's outcome
/// averaged over uniform azimuths at fixed tau.
template <ontological_model M>
Estimate intermediate_average_mc(const M& model, const TwoQubitState& psi,
                                 const Setting& a, const Setting& b, Party party,
                                 double tau, long long n, RngStream& rng) {
  if (n < kMinMcSamples)
    throw std::invalid_argument("sample count below statistical minimum");
  const auto prepared = model.prepare(psi, a, b);
  OutcomeTally tally;
  for (long long i = 0; i < n; ++i) {
    const OntPoint p = sample_mu_given_tau(rng, tau);
    tally.add(party == Party::A ? prepared.outcome_A(p) : prepared.outcome_B(p));
  }
  return tally.estimate(rng.seed());
}

/// Monte Carlo correlation at the intermediate level: the outcome product
/// averaged over uniform azimuths at fixed tau.
template <ontological_model M>
Estimate intermediate_correlation(const M& model, const TwoQubitState& psi,
                                  const Setting& a, const Setting& b, double tau,
                                  long long n, RngStream& rng) {
  if (n < kMinMcSamples)
    throw std::invalid_argument("sample count below statistical minimum");
  const auto prepared = model.prepare(psi, a, b);
  OutcomeTally tally;
  for (long long i = 0; i < n; ++i) {
    const OntPoint p = sample_mu_given_tau(rng, tau);
    tally.add(prepared.outcome_A(p) * prepared.outcome_B(p));
  }
  return tally.estimate(rng.seed());
}

/// Average of the profile over the polar angle with the sphere weight
/// sin(tau)/2.  Must reproduce the quantum local expectation.
inline double tau_average(const IntermediateAverage& f, double rel_tol = 1e-10,
                          double abs_tol = 1e-12) {
  const auto res = integrate_adaptive(
      [&f](double tau) { return f.evaluate(tau) * std::sin(tau) / 2.0; }, 0.0,
      kPi, f.band_edges, rel_tol, abs_tol);
  if (!res.converged)
    throw QuadratureError("tau_average did not reach tolerance", res.error);
  return res.value;
}

/// Variance of an intermediate average over tau.
struct DeltaResult {
  double value = 0.0;
  double quadrature_error = 0.0;
};

/// Variance of the profile around the quantum local expectation.  The
/// variance reading presumes the profile actually averages to the quantum
/// value; that is checked first and violated means the profile (or its
/// tabulation) is inconsistent.
inline DeltaResult delta(const TwoQubitState& psi, const Setting& s,
                         const IntermediateAverage& f, Party p = Party::A,
                         double mean_tol = 1e-6) {
  const double qm = local_expectation(psi, s, p);
  const double mean = tau_average(f);
  if (std::fabs(mean - qm) > mean_tol)
    throw PreconditionError("profile tau-average deviates from the quantum value by " +
                            std::to_string(mean - qm));
  const auto res = integrate_adaptive(
      [&](double tau) {
        const double dev = f.evaluate(tau) - qm;
        return dev * dev * std::sin(tau) / 2.0;
      },
      0.0, kPi, f.band_edges, 1e-10, 1e-12);
  if (!res.converged)
    throw QuadratureError("delta quadrature did not reach tolerance", res.error);
  return {std::max(res.value, 0.0), res.error};
}

/// MC-tabulated profile on a uniform tau-grid aligned with the given band
/// edges, linearly interpolated.  Fallback for models without an analytic
/// profile; the grid must hold at least 512 points.
template <ontological_model M>
IntermediateAverage tabulate_intermediate_average(
    const M& model, const TwoQubitState& psi, const Setting& a, const Setting& b,
    Party party, std::size_t grid_points, long long samples_per_point,
    RngStream& rng, std::vector<double> band_edges_hint = {}) {
  if (grid_points < 512)
    throw std::invalid_argument("tabulation grid must hold at least 512 points");
  std::vector<double> taus;
  taus.reserve(grid_points + band_edges_hint.size());
  for (std::size_t i = 0; i < grid_points; ++i)
    taus.push_back(kPi * static_cast<double>(i) / static_cast<double>(grid_points - 1));
  for (double edge : band_edges_hint)
    if (edge > 0.0 && edge < kPi) taus.push_back(edge);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<double> values;
  values.reserve(taus.size());
  for (double tau : taus)
    values.push_back(
        intermediate_average_mc(model, psi, a, b, party, tau, samples_per_point, rng)
            .mean);

  auto evaluate = [taus, values](double tau) {
    if (tau <= taus.front()) return values.front();
    if (tau >= taus.back()) return values.back();
    const auto it = std::upper_bound(taus.begin(), taus.end(), tau);
    const std::size_t hi = static_cast<std::size_t>(it - taus.begin());
    const double t = (tau - taus[hi - 1]) / (taus[hi] - taus[hi - 1]);
    return (1.0 - t) * values[hi - 1] + t * values[hi];
  };
  return {std::move(band_edges_hint), std::move(evaluate)};
}

/// One tau-row of a non-signalling scan: the least compatible pair of
/// remote settings.
struct NonSignallingWorstPair {
  double tau = 0.0;
  std::size_t first_b = 0;
  std::size_t second_b = 0;
  double mean_difference = 0.0;
  double combined_std_error = 0.0;
  double z = 0.0;
  bool compatible = true;
};

struct NonSignallingReport {
  bool compatible = true;
  NonSignallingWorstPair worst;
  std::vector<NonSignallingWorstPair> per_tau;
};

/// Checks that the intermediate local average of party A is statistically
/// independent of the remote setting: for every tau in the grid, the MC
/// estimates across the b-grid must agree pairwise within z_threshold
/// combined standard errors.
template <ontological_model M>
NonSignallingReport check_nonsignalling(const M& model, const TwoQubitState& psi,
                                        const Setting& a,
                                        const std::vector<Setting>& b_grid,
                                        const std::vector<double>& tau_grid,
                                        long long n, RngStream& rng,
                                        double z_threshold = 5.0) {
  if (b_grid.size() < 3)
    throw std::invalid_argument("non-signalling scan needs at least 3 remote settings");
  NonSignallingReport report;
  for (double tau : tau_grid) {
    std::vector<Estimate> estimates;
    estimates.reserve(b_grid.size());
    for (const Setting& b : b_grid)
      estimates.push_back(
          intermediate_average_mc(model, psi, a, b, Party::A, tau, n, rng));

    NonSignallingWorstPair worst;
    worst.tau = tau;
    worst.z = -1.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      for (std::size_t j = i + 1; j < estimates.size(); ++j) {
        const double z = z_difference(estimates[i], estimates[j]);
        if (z > worst.z) {
          worst.first_b = i;
          worst.second_b = j;
          worst.mean_difference = std::fabs(estimates[i].mean - estimates[j].mean);
          worst.combined_std_error =
              std::hypot(estimates[i].std_error, estimates[j].std_error);
          worst.z = z;
        }
      }
    }
    worst.compatible = worst.z <= z_threshold;
    report.compatible = report.compatible && worst.compatible;
    if (report.per_tau.empty() || worst.z > report.worst.z) report.worst = worst;
    report.per_tau.push_back(worst);
  }
  return report;
}

/// One link of the chain argument at fixed tau: the difference of the two
/// parties' intermediate averages is bounded by one minus their intermediate
/// correlation.  Checked with independent MC estimates.
struct ChainStepReport {
  Estimate f;
  Estimate g;
  Estimate correlation;
  double lhs = 0.0;           // |f - g|
  double rhs = 0.0;           // 1 - E
  double slack = 0.0;         // rhs - lhs
  double combined_std_error = 0.0;
  bool holds = true;
};

template <ontological_model M>
ChainStepReport chain_step_check(const M& model, const TwoQubitState& psi,
                                 const Setting& gamma_j, const Setting& gamma_j1,
                                 double tau, long long n, RngStream& rng,
                                 double z_threshold = 5.0) {
  ChainStepReport report;
  report.f = intermediate_average_mc(model, psi, gamma_j, gamma_j1, Party::A, tau,
                                     n, rng);
  report.g = intermediate_average_mc(model, psi, gamma_j, gamma_j1, Party::B, tau,
                                     n, rng);
  report.correlation =
      intermediate_correlation(model, psi, gamma_j, gamma_j1, tau, n, rng);
  report.lhs = std::fabs(report.f.mean - report.g.mean);
  report.rhs = 1.0 - report.correlation.mean;
  report.slack = report.rhs - report.lhs;
  report.combined_std_error =
      std::sqrt(report.f.std_error * report.f.std_error +
                report.g.std_error * report.g.std_error +
                report.correlation.std_error * report.correlation.std_error);
  report.holds = report.lhs <= report.rhs + z_threshold * report.combined_std_error;
  return report;
}

}  // namespace ontlab

#endif  // ONTLAB_INTERMEDIATE_HPP
