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
// Geometry of the ontic sphere.  Spherical coordinates are poled on the
// propagation axis y-hat: tau in [0, pi] is the polar angle from y-hat and
// mu in [0, 2pi) the azimuth measured in the x-z plane, so that
//
//     v(mu, tau) = sin(tau) (cos(mu) x-hat + sin(mu) z-hat) + cos(tau) y-hat.
//
// Under the uniform sphere measure, cos(tau) is uniform on [-1, 1]
// (density sin(tau)/2 in tau) and mu is uniform on [0, 2pi) at every tau.

#ifndef ONTLAB_SPHERE_HPP
#define ONTLAB_SPHERE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "ontlab/quadrature.hpp"
#include "ontlab/quantum.hpp"
#include "ontlab/rng.hpp"

namespace ontlab {

/// A point on the unit sphere in (mu, tau) coordinates.
class OntPoint {
 public:
  OntPoint(double mu, double tau)
      : mu_(wrap_mu(mu)),
        tau_(tau),
        v_(std::sin(tau) * std::cos(mu_), std::cos(tau), std::sin(tau) * std::sin(mu_)) {}

  static OntPoint from_vector(const Eigen::Vector3d& v) {
    const Eigen::Vector3d u = v.normalized();
    const double tau = std::acos(std::clamp(u.y(), -1.0, 1.0));
    const double mu = std::atan2(u.z(), u.x());
    return OntPoint(mu, tau);
  }

  double mu() const { return mu_; }
  double tau() const { return tau_; }
  const Eigen::Vector3d& vector() const { return v_; }

 private:
  static double wrap_mu(double mu) {
    mu = std::fmod(mu, 2.0 * kPi);
    return mu < 0.0 ? mu + 2.0 * kPi : mu;
  }

  double mu_;
  double tau_;
  Eigen::Vector3d v_;
};

/// Spherical cap { v : axis . v >= cos(half_angle) }.
class Cap {
 public:
  Cap(const Eigen::Vector3d& axis, double half_angle)
      : axis_(axis.normalized()),
        half_angle_(half_angle),
        cos_half_(std::cos(half_angle)) {}

  const Eigen::Vector3d& axis() const { return axis_; }
  double half_angle() const { return half_angle_; }
  double cos_half() const { return cos_half_; }

  bool contains(const Eigen::Vector3d& v) const { return axis_.dot(v) >= cos_half_; }

  /// Fraction of the whole sphere covered, (1 - cos h) / 2.
  double area_fraction() const { return 0.5 * (1.0 - cos_half_); }

 private:
  Eigen::Vector3d axis_;
  double half_angle_;
  double cos_half_;
};

/// Uniform point on the sphere.  Consumes exactly two variates, mu first.
inline OntPoint sample_uniform(RngStream& rng) {
  const double mu = rng.uniform(0.0, 2.0 * kPi);
  const double cos_tau = rng.uniform(-1.0, 1.0);
  return OntPoint(mu, std::acos(std::clamp(cos_tau, -1.0, 1.0)));
}

/// Uniform azimuth on the circle of fixed polar angle tau.  One variate.
inline OntPoint sample_mu_given_tau(RngStream& rng, double tau) {
  return OntPoint(rng.uniform(0.0, 2.0 * kPi), tau);
}

/// Below this scale a mu-circle (or a boundary clearance) is treated as
/// degenerate; comparable to the rounding noise of cos(pi/2) and sin(pi).
inline constexpr double kDegenerateCircle = 1e-12;

/// Half-width (radians, in [0, pi]) of the azimuthal arc cut by the cap out
/// of the mu-circle at polar angle tau.  With the cap axis decomposed into an
/// in-plane part of norm r at azimuth phi and a polar component a_y, the
/// membership condition reads r sin(tau) cos(mu - phi) >= cos(h) - a_y cos(tau).
/// Degenerate circles (poles, polar axes) take the continuous limit: 0 or pi
/// depending on the side, pi/2 when the cap boundary grazes the circle.
inline double cap_arc_half_width(const Cap& cap, double tau) {
  const double axis_y = cap.axis().y();
  const double r = std::hypot(cap.axis().x(), cap.axis().z());
  const double numer = cap.cos_half() - axis_y * std::cos(tau);
  const double denom = r * std::sin(tau);
  if (denom <= kDegenerateCircle) {
    if (numer > kDegenerateCircle) return 0.0;
    if (numer < -kDegenerateCircle) return kPi;
    return kPi / 2.0;
  }
  return std::acos(std::clamp(numer / denom, -1.0, 1.0));
}

/// Fraction of the mu-circle at polar angle tau lying inside the cap.
inline double azimuthal_cap_fraction(const Cap& cap, double tau) {
  return cap_arc_half_width(cap, tau) / kPi;
}

/// Same for an in-plane cap axis, where only the half-angle matters:
/// arccos(clip(cos h / sin tau)) / pi.
inline double azimuthal_cap_fraction(double half_angle, double tau) {
  return azimuthal_cap_fraction(Cap(Eigen::Vector3d::UnitX(), half_angle), tau);
}

/// Polar angles at which the cap boundary circle is tangent to a mu-circle.
/// Between them the arc width varies smoothly; at them it has a square-root
/// kink, so they must be quadrature breakpoints.
inline std::array<double, 2> cap_tau_kinks(const Cap& cap) {
  const double beta = std::acos(std::clamp(cap.axis().y(), -1.0, 1.0));
  const double lo = std::fabs(beta - cap.half_angle());
  double hi = beta + cap.half_angle();
  if (hi > kPi) hi = 2.0 * kPi - hi;
  return {std::min(lo, hi), std::max(lo, hi)};
}

/// Length of the intersection of two arcs on the unit circle: arc 1 centered
/// at 0 with half-width w1, arc 2 centered at d in [0, pi] with half-width w2
/// (both half-widths in [0, pi]).  The intersection has at most two
/// components; the second appears when arc 2 wraps past +pi.
inline double circle_arc_overlap(double d, double w1, double w2) {
  double len = std::max(0.0, std::min(w1, d + w2) - std::max(-w1, d - w2));
  if (d + w2 > kPi)
    len += std::max(0.0, std::min(w1, d + w2 - 2.0 * kPi) + w1);
  return len;
}

/// Fraction of the sphere lying inside both caps, by adaptive quadrature of
/// the azimuthal arc overlap over the polar angle.  Monotone non-increasing
/// in the angle between the axes.
inline double cap_overlap_fraction(const Cap& cap1, const Cap& cap2,
                                   double rel_tol = 1e-9, double abs_tol = 1e-12) {
  const double phi1 = std::atan2(cap1.axis().z(), cap1.axis().x());
  const double phi2 = std::atan2(cap2.axis().z(), cap2.axis().x());
  const double d = std::fabs(std::remainder(phi1 - phi2, 2.0 * kPi));

  const auto integrand = [&](double tau) {
    const double w1 = cap_arc_half_width(cap1, tau);
    const double w2 = cap_arc_half_width(cap2, tau);
    return circle_arc_overlap(d, w1, w2) / (2.0 * kPi) * std::sin(tau) / 2.0;
  };

  const auto k1 = cap_tau_kinks(cap1);
  const auto k2 = cap_tau_kinks(cap2);
  const std::array<double, 4> breaks = {k1[0], k1[1], k2[0], k2[1]};
  const auto res = integrate_adaptive(integrand, 0.0, kPi, breaks, rel_tol, abs_tol);
  return std::clamp(res.value, 0.0, 1.0);
}

}  // namespace ontlab

#endif  // ONTLAB_SPHERE_HPP
