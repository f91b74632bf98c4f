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

#ifndef ONTLAB_NELDER_MEAD_HPP
#define ONTLAB_NELDER_MEAD_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ontlab {

struct NelderMeadOptions {
  double tol = 1e-9;       // convergence threshold on the simplex f-spread
  int max_iters = 4000;    // iteration cap per descent
  double initial_step = 0.3;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Simplex descent with the dimension-adaptive expansion/contraction
/// coefficients of Gao & Han.  Deterministic for a given start; never
/// returns a value above f(x0).
template <class F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opts = {}) {
  const int dim = static_cast<int>(x0.size());
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dim;
  const double rho = 0.75 - 0.5 / dim;
  const double sigma = dim > 1 ? 1.0 - 1.0 / dim : 0.5;

  std::vector<Eigen::VectorXd> xs(dim + 1, x0);
  std::vector<double> fs(dim + 1);
  for (int i = 0; i < dim; ++i) xs[i + 1](i) += opts.initial_step;
  for (int i = 0; i <= dim; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(dim + 1);
  NelderMeadResult result;
  for (result.iterations = 0; result.iterations < opts.max_iters;
       ++result.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return fs[i] < fs[j]; });
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[dim - 1];

    if (fs[worst] - fs[best] <= opts.tol) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i <= dim; ++i)
      if (i != worst) centroid += xs[i];
    centroid /= dim;

    const Eigen::VectorXd reflected = centroid + alpha * (centroid - xs[worst]);
    const double f_reflected = f(reflected);

    if (f_reflected < fs[best]) {
      const Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        xs[worst] = expanded;
        fs[worst] = f_expanded;
      } else {
        xs[worst] = reflected;
        fs[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fs[second_worst]) {
      xs[worst] = reflected;
      fs[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < fs[worst];
    Eigen::VectorXd contracted;
    if (outside)
      contracted = centroid + rho * (reflected - centroid);
    else
      contracted = centroid - rho * (centroid - xs[worst]);
    const double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, fs[worst])) {
      xs[worst] = contracted;
      fs[worst] = f_contracted;
      continue;
    }

    for (int i = 0; i <= dim; ++i) {
      if (i == best) continue;
      xs[i] = xs[best] + sigma * (xs[i] - xs[best]);
      fs[i] = f(xs[i]);
    }
  }

  const auto best_it = std::min_element(fs.begin(), fs.end());
  result.value = *best_it;
  result.x = xs[static_cast<std::size_t>(best_it - fs.begin())];
  return result;
}

}  // namespace ontlab

#endif  // ONTLAB_NELDER_MEAD_HPP
