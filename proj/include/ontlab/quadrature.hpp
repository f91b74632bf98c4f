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

#ifndef ONTLAB_QUADRATURE_HPP
#define ONTLAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace ontlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = false;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double gauss = kGaussWeights[3] * f_center;
  double kronrod = kKronrodWeights[7] * f_center;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGk15Nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  gauss *= half;
  kronrod *= half;
  double err = std::fabs(kronrod - gauss);
  err = std::min(err, std::pow(200.0 * err, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::fabs(kronrod));
  return {lo, hi, kronrod, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [lo, hi].
/// Interior breakpoints become mandatory initial subdivision points; pass the
/// kink locations of piecewise-smooth integrands here, the error estimate is
/// unreliable across a kink.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi,
                                    std::span<const double> breakpoints = {},
                                    double rel_tol = 1e-10, double abs_tol = 1e-12,
                                    int max_intervals = 4096) {
  QuadratureResult res;
  if (!(lo < hi)) {
    res.converged = true;
    return res;
  }

  std::vector<double> edges;
  edges.push_back(lo);
  for (double b : breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<detail::Panel> heap;
  heap.reserve(64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    heap.push_back(detail::gauss_kronrod_15(f, edges[i], edges[i + 1]));
  std::make_heap(heap.begin(), heap.end());

  auto sums = [&heap]() {
    double value = 0.0, error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = sums();
  int since_resum = 0;
  while (static_cast<int>(heap.size()) < max_intervals) {
    if (error <= std::max(abs_tol, rel_tol * std::fabs(value))) {
      // Incremental sums drift; confirm against an exact pass.
      std::tie(value, error) = sums();
      if (error <= std::max(abs_tol, rel_tol * std::fabs(value))) break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel worst = heap.back();
    heap.pop_back();
    if (worst.hi - worst.lo <= 16.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, std::fabs(worst.lo))) {
      // Cannot split further in double precision; keep the panel as-is.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = detail::gauss_kronrod_15(f, worst.lo, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.hi);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (++since_resum >= 128) {
      std::tie(value, error) = sums();
      since_resum = 0;
    }
  }

  std::tie(value, error) = sums();
  res.value = value;
  res.error = error;
  res.intervals = static_cast<int>(heap.size());
  res.converged = error <= std::max(abs_tol, rel_tol * std::fabs(value));
  return res;
}

}  // namespace ontlab

#endif  // ONTLAB_QUADRATURE_HPP
