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
// Deterministic outcome functions on the ontic sphere.  Every model maps
// (state, settings, sphere point) to outcomes in {-1, +1}; averaging the
// outcomes over the uniform sphere measure must reproduce the quantum local
// expectations, and for the cap-support model also the quantum correlations.
//
// Models are value types.  prepare(state, a, b) resolves everything that
// depends on the settings once (including the numerically constructed
// support axis of the cap model) and returns a small evaluator struct whose
// outcome_A / outcome_B are cheap enough for tight Monte Carlo loops.

#ifndef ONTLAB_MODELS_HPP
#define ONTLAB_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <utility>

#include "ontlab/errors.hpp"
#include "ontlab/estimate.hpp"
#include "ontlab/quantum.hpp"
#include "ontlab/rng.hpp"
#include "ontlab/sphere.hpp"

namespace ontlab {

/// Half-angle of the cap supporting the +1 outcome, arccos(-<local>).
/// The cap area (1 - cos)/2 then equals the +1 outcome probability
/// (1 + <local>)/2, so the local average is reproduced by construction.
inline double outcome_cap_half_angle(const TwoQubitState& psi, const Setting& s,
                                     Party p) {
  return std::acos(std::clamp(-local_expectation(psi, s, p), -1.0, 1.0));
}

/// sign with sign(0) = +1, the tie convention used by the band models.
inline double sign_positive_zero(double x) { return x < 0.0 ? -1.0 : 1.0; }

namespace detail {

inline double wrap_to_2pi(double angle) {
  angle = std::fmod(angle, 2.0 * kPi);
  return angle < 0.0 ? angle + 2.0 * kPi : angle;
}

}  // namespace detail

/// Cap-support model for arbitrary entanglement.  The +1 supports are caps:
/// party B's cap sits on b with half-angle arccos(-<B(b)>); party A's cap has
/// half-angle arccos(-<A(a)>) but its axis is rotated away from b, in the
/// plane of a and b, by exactly the separation that makes the joint
/// cap-overlap probability reproduce the quantum correlation.  The separation
/// is found by bisection; no closed form for the axis is assumed.
class BellGeneralizedModel {
 public:
  explicit BellGeneralizedModel(double root_tolerance = 1e-10)
      : root_tolerance_(root_tolerance) {}

  double root_tolerance() const { return root_tolerance_; }

  struct Prepared {
    Cap support_a;
    Cap support_b;

    int outcome_A(const OntPoint& p) const {
      return support_a.contains(p.vector()) ? 1 : -1;
    }
    int outcome_B(const OntPoint& p) const {
      return support_b.contains(p.vector()) ? 1 : -1;
    }
  };

  /// The constructed axis for party A's support cap.
  Setting support_axis(const TwoQubitState& psi, const Setting& a,
                       const Setting& b) const {
    return Setting::in_plane(support_axis_alpha(psi, a, b));
  }

  Prepared prepare(const TwoQubitState& psi, const Setting& a,
                   const Setting& b) const {
    const double xi = outcome_cap_half_angle(psi, a, Party::A);
    const double chi = outcome_cap_half_angle(psi, b, Party::B);
    return Prepared{Cap(support_axis(psi, a, b).vector(), xi),
                    Cap(b.vector(), chi)};
  }

  int outcome_A(const TwoQubitState& psi, const Setting& a, const Setting& b,
                const OntPoint& p) const {
    return prepare(psi, a, b).outcome_A(p);
  }

  int outcome_B(const TwoQubitState& psi, const Setting& b,
                const OntPoint& p) const {
    const Cap cap(b.vector(), outcome_cap_half_angle(psi, b, Party::B));
    return cap.contains(p.vector()) ? 1 : -1;
  }

  /// Axis separation omega in [0, pi] between party A's support cap and b
  /// such that the model correlation equals required_correlation.  The model
  /// correlation as a function of omega is 4 P(+,+) - 1 - <A> - <B> with
  /// P(+,+) the cap overlap; it decreases monotonically from omega = 0, so
  /// the root is found by bisection to root_tolerance in correlation units.
  /// Throws NoSolutionError when the target lies outside the reachable range.
  static double solve_axis_separation(const TwoQubitState& psi, const Setting& a,
                                      const Setting& b,
                                      double required_correlation,
                                      double root_tolerance) {
    const double xi = outcome_cap_half_angle(psi, a, Party::A);
    const double chi = outcome_cap_half_angle(psi, b, Party::B);
    const double mean_a = local_expectation(psi, a, Party::A);
    const double mean_b = local_expectation(psi, b, Party::B);
    const double alpha_b = b.alpha();

    const auto model_correlation = [&](double omega) {
      const Cap cap_a(Setting::in_plane(alpha_b + omega).vector(), xi);
      const Cap cap_b(b.vector(), chi);
      // The bisection needs the overlap a good deal tighter than the root
      // tolerance in correlation units.
      const double overlap =
          cap_overlap_fraction(cap_a, cap_b, 1e-12, 0.02 * root_tolerance);
      return 4.0 * overlap - 1.0 - mean_a - mean_b;
    };

    const double at_zero = model_correlation(0.0);  // maximal overlap
    const double at_pi = model_correlation(kPi);    // minimal overlap
    if (required_correlation > at_zero + root_tolerance ||
        required_correlation < at_pi - root_tolerance)
      throw NoSolutionError(required_correlation, at_pi, at_zero);

    if (std::fabs(at_zero - required_correlation) <= root_tolerance) return 0.0;
    if (std::fabs(at_pi - required_correlation) <= root_tolerance) return kPi;

    double omega = 0.0;
    double lo = 0.0, hi = kPi;  // correlation decreases from lo to hi
    for (int iter = 0; iter < 200; ++iter) {
      omega = 0.5 * (lo + hi);
      const double value = model_correlation(omega);
      if (std::fabs(value - required_correlation) <= root_tolerance) break;
      if (value > required_correlation)
        lo = omega;
      else
        hi = omega;
      if (hi - lo < 1e-15) break;
    }
    return omega;
  }

 private:
  double support_axis_alpha(const TwoQubitState& psi, const Setting& a,
                            const Setting& b) const {
    if (!a.is_in_plane(1e-9) || !b.is_in_plane(1e-9))
      throw PreconditionError("cap-support model requires in-plane settings");
    const double omega = solve_axis_separation(psi, a, b,
                                               correlation_qm(psi, a, b),
                                               root_tolerance_);
    // Place the axis on a's side of b; for collinear settings rotate by +omega.
    const double side =
        sign_positive_zero(std::remainder(a.alpha() - b.alpha(), 2.0 * kPi));
    return b.alpha() + side * omega;
  }

  double root_tolerance_;
};

/// Band-redistributed supports saturating the intermediate-level variance
/// bound for the sigma_z observable.  Party A outputs -sign<A(a)> on the
/// half-circle of azimuths starting at a's azimuth intersected with the
/// polar band |tau - pi/2| <= eta, where sin(eta) = 1 - |<A(a)>|; elsewhere
/// it outputs +sign<A(a)>.  Party B is built the same way from b.
class SaturatingSigmaZModel {
 public:
  /// Band half-width eta (zeta for party B).
  static double band_half_width(const TwoQubitState& psi, const Setting& s,
                                Party p) {
    const double mean = local_expectation(psi, s, p);
    return std::asin(std::clamp(1.0 - std::fabs(mean), 0.0, 1.0));
  }

  struct Prepared {
    double mu_a, eta, sign_a;
    double mu_b, zeta, sign_b;

    static int band_outcome(const OntPoint& p, double mu_ref, double half_width,
                            double sign) {
      const bool in_half_circle =
          detail::wrap_to_2pi(p.mu() - mu_ref) < kPi;  // [0, pi)
      // half_width = 0 means no redistribution at all (empty band).
      const bool in_band =
          half_width > 0.0 && std::fabs(p.tau() - kPi / 2.0) <= half_width;
      const double out = (in_half_circle && in_band) ? -sign : sign;
      return out > 0.0 ? 1 : -1;
    }

    int outcome_A(const OntPoint& p) const {
      return band_outcome(p, mu_a, eta, sign_a);
    }
    int outcome_B(const OntPoint& p) const {
      return band_outcome(p, mu_b, zeta, sign_b);
    }
  };

  Prepared prepare(const TwoQubitState& psi, const Setting& a,
                   const Setting& b) const {
    if (!a.is_in_plane(1e-9) || !b.is_in_plane(1e-9))
      throw PreconditionError("band model requires in-plane settings");
    return Prepared{a.alpha(), band_half_width(psi, a, Party::A),
                    sign_positive_zero(local_expectation(psi, a, Party::A)),
                    b.alpha(), band_half_width(psi, b, Party::B),
                    sign_positive_zero(local_expectation(psi, b, Party::B))};
  }

  int outcome_A(const TwoQubitState& psi, const Setting& a, const Setting& b,
                const OntPoint& p) const {
    return prepare(psi, a, b).outcome_A(p);
  }

  int outcome_B(const TwoQubitState& psi, const Setting& b,
                const OntPoint& p) const {
    return Prepared::band_outcome(
        p, b.alpha(), band_half_width(psi, b, Party::B),
        sign_positive_zero(local_expectation(psi, b, Party::B)));
  }
};

/// Local model for the product state (theta = 0): outcomes depend on tau
/// only, with -sign<A(a)> on the polar band |tau - pi/2| <= eta' where
/// sin(eta') = (1 - |<A(a)>|)/2.  The halved band makes the tau-average come
/// out right even though the outcome never depends on mu.
class FactorizedLocalModel {
 public:
  static double band_half_width(const TwoQubitState& psi, const Setting& s,
                                Party p) {
    const double mean = local_expectation(psi, s, p);
    return std::asin(std::clamp(0.5 * (1.0 - std::fabs(mean)), 0.0, 1.0));
  }

  struct Prepared {
    double eta_a, sign_a;
    double eta_b, sign_b;

    static int band_outcome(const OntPoint& p, double half_width, double sign) {
      const bool in_band =
          half_width > 0.0 && std::fabs(p.tau() - kPi / 2.0) <= half_width;
      return (in_band ? -sign : sign) > 0.0 ? 1 : -1;
    }

    int outcome_A(const OntPoint& p) const { return band_outcome(p, eta_a, sign_a); }
    int outcome_B(const OntPoint& p) const { return band_outcome(p, eta_b, sign_b); }
  };

  Prepared prepare(const TwoQubitState& psi, const Setting& a,
                   const Setting& b) const {
    require_product_state(psi);
    return Prepared{band_half_width(psi, a, Party::A),
                    sign_positive_zero(local_expectation(psi, a, Party::A)),
                    band_half_width(psi, b, Party::B),
                    sign_positive_zero(local_expectation(psi, b, Party::B))};
  }

  int outcome_A(const TwoQubitState& psi, const Setting& a, const Setting& b,
                const OntPoint& p) const {
    return prepare(psi, a, b).outcome_A(p);
  }

  int outcome_B(const TwoQubitState& psi, const Setting& b,
                const OntPoint& p) const {
    require_product_state(psi);
    return Prepared::band_outcome(
        p, band_half_width(psi, b, Party::B),
        sign_positive_zero(local_expectation(psi, b, Party::B)));
  }

 private:
  static void require_product_state(const TwoQubitState& psi) {
    if (psi.theta() > 1e-12)
      throw InvalidStateError("factorized model is only valid for theta = 0");
  }
};

/// Anything that can resolve a pair of settings into +/-1 outcome evaluators.
template <class M>
concept ontological_model =
    requires(const M& m, const TwoQubitState& psi, const Setting& a,
             const Setting& b, const OntPoint& p) {
      { m.prepare(psi, a, b).outcome_A(p) } -> std::convertible_to<int>;
      { m.prepare(psi, a, b).outcome_B(p) } -> std::convertible_to<int>;
    };

static_assert(ontological_model<BellGeneralizedModel>);
static_assert(ontological_model<SaturatingSigmaZModel>);
static_assert(ontological_model<FactorizedLocalModel>);

/// Monte Carlo local average of one party's outcome over uniform sphere
/// points.  Requires at least kMinMcSamples samples.
template <ontological_model M>
Estimate estimate_local_average(const M& model, const TwoQubitState& psi,
                                const Setting& a, const Setting& b, Party party,
                                long long n, RngStream& rng) {
  if (n < kMinMcSamples)
    throw std::invalid_argument("sample count below statistical minimum");
  const auto prepared = model.prepare(psi, a, b);
  OutcomeTally tally;
  for (long long i = 0; i < n; ++i) {
    const OntPoint p = sample_uniform(rng);
    tally.add(party == Party::A ? prepared.outcome_A(p) : prepared.outcome_B(p));
  }
  return tally.estimate(rng.seed());
}

/// Monte Carlo correlation (product of outcomes) over uniform sphere points.
template <ontological_model M>
Estimate estimate_correlation(const M& model, const TwoQubitState& psi,
                              const Setting& a, const Setting& b, long long n,
                              RngStream& rng) {
  if (n < kMinMcSamples)
    throw std::invalid_argument("sample count below statistical minimum");
  const auto prepared = model.prepare(psi, a, b);
  OutcomeTally tally;
  for (long long i = 0; i < n; ++i) {
    const OntPoint p = sample_uniform(rng);
    tally.add(prepared.outcome_A(p) * prepared.outcome_B(p));
  }
  return tally.estimate(rng.seed());
}

}  // namespace ontlab

#endif  // ONTLAB_MODELS_HPP
