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

#ifndef ONTLAB_VERIFY_HPP
#define ONTLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ontlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;   // measured values, z-scores or margins
  double severity = 0.0;  // z-score or tolerance ratio; ranks the worst offender
};

struct VerifyOptions {
  std::vector<double> theta_grid;  // defaults to 5 points on [0, pi/2]
  long long samples = 1'000'000;
  std::uint64_t seed = 1;
};

/// Statistical-compatibility threshold used by the consistency suite
/// (acceptance tests use tighter, criterion-specific values).
inline constexpr double kVerifyZThreshold = 5.0;

/// Runs the full consistency suite: quantum reproduction by the cap-support
/// model, intermediate averages against their closed forms, tau-marginals,
/// non-signalling scans, variance bounds and chain-step inequalities.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

}  // namespace ontlab

#endif  // ONTLAB_VERIFY_HPP
