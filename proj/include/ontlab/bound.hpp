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
// The chain bound.  For a chain of 2n+1 settings gamma_0 = a, ...,
// gamma_2n = -a, the quantity
//
//   Omega(a, n) = n - (1/2) sum_k [ E(gamma_2k, gamma_2k+1)
//                                   + E(gamma_2k+2, gamma_2k+1) ]
//
// (E = quantum correlation, parties alternating along the chain) upper-bounds
// the tau-average of |f| for every deterministic non-signalling completion.
// Minimizing Omega over the interior chain settings and the chain length
// tightens the bound; numerically the minimum tracks cos(theta).

#ifndef ONTLAB_BOUND_HPP
#define ONTLAB_BOUND_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ontlab/intermediate.hpp"
#include "ontlab/nelder_mead.hpp"
#include "ontlab/quantum.hpp"
#include "ontlab/rng.hpp"

namespace ontlab {

/// Ordered measurement chain gamma_0 .. gamma_2n with gamma_0 = a and
/// gamma_2n = -a.
struct Chain {
  std::vector<Setting> settings;

  int n() const { return (static_cast<int>(settings.size()) - 1) / 2; }

  /// Throws unless the chain has odd length >= 3 and the required endpoints.
  void validate(const Setting& a) const {
    const auto size = settings.size();
    if (size < 3 || size % 2 == 0)
      throw std::invalid_argument("chain must hold 2n+1 settings with n >= 1");
    if ((settings.front().vector() - a.vector()).norm() > 1e-9 ||
        (settings.back().vector() + a.vector()).norm() > 1e-9)
      throw std::invalid_argument("chain endpoints must be a and -a");
  }

  /// In-plane chain with uniform azimuth steps pi/(2n) from a to -a.
  static Chain equally_spaced(const Setting& a, int n) {
    if (n < 1) throw std::invalid_argument("chain length parameter must be >= 1");
    Chain chain;
    chain.settings.reserve(2 * n + 1);
    const double alpha_a = a.alpha();
    for (int j = 0; j <= 2 * n; ++j)
      chain.settings.push_back(Setting::in_plane(alpha_a + kPi * j / (2.0 * n)));
    chain.settings.front() = a;
    chain.settings.back() = -a;
    return chain;
  }
};

/// Omega for a fixed chain, by the alternating-party pairing.
inline double omega(const TwoQubitState& psi, const Setting& a, const Chain& chain) {
  chain.validate(a);
  const int n = chain.n();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += correlation_qm(psi, chain.settings[2 * k], chain.settings[2 * k + 1]);
    sum += correlation_qm(psi, chain.settings[2 * k + 2], chain.settings[2 * k + 1]);
  }
  return n - 0.5 * sum;
}

struct MinimizeOptions {
  int restarts = 8;       // total descent starts, equally-spaced start included
  double tol = 1e-9;      // objective tolerance for each descent
  int max_iters = 4000;   // iteration cap per descent round
  bool full_sphere = false;  // also vary elevations out of the measurement plane
};

struct MinimizeResult {
  double value = 0.0;
  Chain chain;
  int restarts_used = 0;
  bool converged = false;
};

namespace detail {

inline Setting chain_setting(double azimuth, double elevation, bool full_sphere) {
  if (!full_sphere) return Setting::in_plane(azimuth);
  return Setting::from_vector(
      Eigen::Vector3d(std::cos(elevation) * std::cos(azimuth), std::sin(elevation),
                      std::cos(elevation) * std::sin(azimuth)));
}

inline Chain chain_from_params(const Setting& a, const Eigen::VectorXd& params,
                               bool full_sphere) {
  const int interior = full_sphere ? static_cast<int>(params.size()) / 2
                                   : static_cast<int>(params.size());
  Chain chain;
  chain.settings.reserve(interior + 2);
  chain.settings.push_back(a);
  for (int j = 0; j < interior; ++j) {
    const double azimuth = params(full_sphere ? 2 * j : j);
    const double elevation = full_sphere ? params(2 * j + 1) : 0.0;
    chain.settings.push_back(chain_setting(azimuth, elevation, full_sphere));
  }
  chain.settings.push_back(-a);
  return chain;
}

inline Eigen::VectorXd params_from_chain(const Chain& chain, bool full_sphere) {
  const int interior = static_cast<int>(chain.settings.size()) - 2;
  Eigen::VectorXd params(full_sphere ? 2 * interior : interior);
  for (int j = 0; j < interior; ++j) {
    const Setting& s = chain.settings[j + 1];
    if (full_sphere) {
      params(2 * j) = s.alpha();
      params(2 * j + 1) = std::asin(std::clamp(s.vector().y(), -1.0, 1.0));
    } else {
      params(j) = s.alpha();
    }
  }
  return params;
}

// Unwrap in-plane azimuths so consecutive values differ by less than pi;
// keeps warm starts on the same branch as the endpoints.
inline std::vector<double> unwrapped_azimuths(const Chain& chain) {
  std::vector<double> alphas;
  alphas.reserve(chain.settings.size());
  for (const auto& s : chain.settings) {
    double alpha = s.alpha();
    if (!alphas.empty()) {
      while (alpha - alphas.back() > kPi) alpha -= 2.0 * kPi;
      while (alpha - alphas.back() < -kPi) alpha += 2.0 * kPi;
    }
    alphas.push_back(alpha);
  }
  return alphas;
}

}  // namespace detail

/// Minimizes Omega over the 2n-1 interior chain settings (azimuths only by
/// default, azimuth+elevation pairs in full-sphere mode).  Descents start
/// from the equally-spaced chain, an optional warm-start chain, and jittered
/// restarts; the result never exceeds the equally-spaced evaluation.
inline MinimizeResult minimize_omega(const TwoQubitState& psi, const Setting& a,
                                     int n, const MinimizeOptions& opts,
                                     RngStream& rng,
                                     const Chain* warm_start = nullptr) {
  if (n < 1) throw std::invalid_argument("chain length parameter must be >= 1");

  const auto objective = [&](const Eigen::VectorXd& params) {
    const Chain chain = detail::chain_from_params(a, params, opts.full_sphere);
    const int len = chain.n();
    double sum = 0.0;
    for (int k = 0; k < len; ++k) {
      sum += correlation_qm(psi, chain.settings[2 * k], chain.settings[2 * k + 1]);
      sum += correlation_qm(psi, chain.settings[2 * k + 2], chain.settings[2 * k + 1]);
    }
    return len - 0.5 * sum;
  };

  std::vector<Eigen::VectorXd> starts;
  const Chain equal = Chain::equally_spaced(a, n);
  starts.push_back(detail::params_from_chain(equal, opts.full_sphere));
  if (warm_start != nullptr && warm_start->n() == n)
    starts.push_back(detail::params_from_chain(*warm_start, opts.full_sphere));
  const double alpha_a = a.alpha();
  while (static_cast<int>(starts.size()) < std::max(1, opts.restarts)) {
    // Jittered monotone paths: random perturbations of the uniform spacing.
    Eigen::VectorXd params = starts.front();
    const int interior = 2 * n - 1;
    for (int j = 0; j < interior; ++j) {
      const double jitter = rng.uniform(-1.0, 1.0) * kPi / (2.0 * n);
      const double azimuth = alpha_a + kPi * (j + 1) / (2.0 * n) + 2.0 * jitter;
      if (opts.full_sphere) {
        params(2 * j) = azimuth;
        params(2 * j + 1) = rng.uniform(-0.3, 0.3);
      } else {
        params(j) = azimuth;
      }
    }
    starts.push_back(params);
  }

  MinimizeResult best;
  best.value = HUGE_VAL;
  best.restarts_used = static_cast<int>(starts.size());
  for (const auto& start : starts) {
    NelderMeadOptions nm;
    nm.tol = opts.tol;
    nm.max_iters = opts.max_iters;
    Eigen::VectorXd x = start;
    bool converged = false;
    // Re-descend with a shrinking initial simplex; plain simplex descent in
    // 10+ dimensions stalls without this.
    for (double step : {0.4, 0.08, 0.01}) {
      nm.initial_step = step;
      const auto r = nelder_mead(objective, x, nm);
      x = r.x;
      converged = r.converged;
    }
    const double value = objective(x);
    if (value < best.value) {
      best.value = value;
      best.chain = detail::chain_from_params(a, x, opts.full_sphere);
      best.converged = converged;
    }
  }
  return best;
}

/// Scan report: per-n minima plus the running minimum and its distance to
/// the conjectured limit cos(theta).
struct BoundReport {
  struct PerN {
    int n = 0;
    double min_value = 0.0;
    Chain chain;
    int restarts_used = 0;
    bool converged = false;
  };
  std::vector<PerN> per_n;
  double overall_min = 0.0;
  double conjecture_value = 0.0;  // cos(theta)
  double gap = 0.0;               // overall_min - conjecture_value
};

namespace detail {

// Warm start for n+1: previous argmin with azimuth midpoints inserted into
// its two widest steps.
inline Chain refined_chain(const Chain& prev, const Setting& a) {
  auto alphas = unwrapped_azimuths(prev);
  for (int extra = 0; extra < 2; ++extra) {
    std::size_t widest = 0;
    double width = -1.0;
    for (std::size_t j = 0; j + 1 < alphas.size(); ++j) {
      const double w = std::fabs(alphas[j + 1] - alphas[j]);
      if (w > width) {
        width = w;
        widest = j;
      }
    }
    alphas.insert(alphas.begin() + widest + 1,
                  0.5 * (alphas[widest] + alphas[widest + 1]));
  }
  Chain chain;
  chain.settings.reserve(alphas.size());
  for (double alpha : alphas) chain.settings.push_back(Setting::in_plane(alpha));
  chain.settings.front() = a;
  chain.settings.back() = -a;
  return chain;
}

}  // namespace detail

/// Runs minimize_omega for n = 1..n_max, warm-starting each n from the
/// refined argmin of the previous one.
inline BoundReport scan_bound(const TwoQubitState& psi, const Setting& a,
                              int n_max, const MinimizeOptions& opts,
                              RngStream& rng) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  BoundReport report;
  report.conjecture_value = std::cos(psi.theta());
  report.overall_min = HUGE_VAL;
  const Chain* warm = nullptr;
  Chain warm_chain;
  for (int n = 1; n <= n_max; ++n) {
    const auto res = minimize_omega(psi, a, n, opts, rng, warm);
    report.per_n.push_back({n, res.value, res.chain, res.restarts_used, res.converged});
    report.overall_min = std::min(report.overall_min, res.value);
    if (n < n_max && !opts.full_sphere) {
      warm_chain = detail::refined_chain(res.chain, a);
      warm = &warm_chain;
    } else {
      warm = nullptr;
    }
  }
  report.gap = report.overall_min - report.conjecture_value;
  return report;
}

/// Right-hand side of the conjectured variance constraint,
/// cos(theta) - <A(a)>^2.
inline double bound_rhs(const TwoQubitState& psi, const Setting& a) {
  const double mean = local_expectation(psi, a, Party::A);
  return std::cos(psi.theta()) - mean * mean;
}

/// Margins of a computed variance against both forms of the bound.
struct ConstraintReport {
  double delta_value = 0.0;
  double margin_vs_scan = 0.0;  // overall_min - <A>^2 - delta
  double margin_vs_rhs = 0.0;   // cos(theta) - <A>^2 - delta
  bool satisfied = false;
};

inline ConstraintReport verify_constraint(const DeltaResult& delta_result,
                                          const TwoQubitState& psi, const Setting& a,
                                          const BoundReport& report) {
  const double mean = local_expectation(psi, a, Party::A);
  ConstraintReport out;
  out.delta_value = delta_result.value;
  out.margin_vs_scan = report.overall_min - mean * mean - delta_result.value;
  out.margin_vs_rhs = bound_rhs(psi, a) - delta_result.value;
  out.satisfied = out.margin_vs_scan >= -1e-6 && out.margin_vs_rhs >= -1e-6;
  return out;
}

}  // namespace ontlab

#endif  // ONTLAB_BOUND_HPP
