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

#ifndef ONTLAB_ERRORS_HPP
#define ONTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ontlab {

/// The support construction has no axis separation reproducing the requested
/// correlation; carries the reachable range for diagnostics.
class NoSolutionError : public std::runtime_error {
 public:
  NoSolutionError(double required, double reachable_min, double reachable_max)
      : std::runtime_error("no support axis reproduces correlation " +
                           std::to_string(required) + "; reachable range [" +
                           std::to_string(reachable_min) + ", " +
                           std::to_string(reachable_max) + "]"),
        required_(required),
        reachable_min_(reachable_min),
        reachable_max_(reachable_max) {}

  double required() const { return required_; }
  double reachable_min() const { return reachable_min_; }
  double reachable_max() const { return reachable_max_; }

 private:
  double required_;
  double reachable_min_;
  double reachable_max_;
};

/// A model was asked to handle a state outside its validity domain.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented caller obligation was violated.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature stopped before reaching the requested tolerance;
/// carries the error estimate actually achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error " +
                           std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace ontlab

#endif  // ONTLAB_ERRORS_HPP
