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

#ifndef ONTLAB_ESTIMATE_HPP
#define ONTLAB_ESTIMATE_HPP

#include <cassert>
#include <cmath>
#include <cstdint>

namespace ontlab {

/// Monte Carlo estimates below this sample count have no statistical power
/// for the 4-5 sigma compatibility checks used throughout; estimators reject
/// smaller requests.
inline constexpr long long kMinMcSamples = 10'000;

/// Result of a Monte Carlo average: std_error is the sample standard
/// deviation divided by sqrt(count).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long count = 0;
  std::uint64_t seed = 0;
};

/// Tally for +/-1 outcomes.  The sample variance of +/-1 data has the closed
/// form n (1 - mean^2) / (n - 1), so only the positive count is stored.
class OutcomeTally {
 public:
  void add(int outcome) {
    assert(outcome == 1 || outcome == -1);
    positives_ += outcome > 0 ? 1 : 0;
    ++total_;
  }

  long long count() const { return total_; }

  Estimate estimate(std::uint64_t seed) const {
    assert(total_ > 0);
    const double mean = (2.0 * static_cast<double>(positives_) -
                         static_cast<double>(total_)) /
                        static_cast<double>(total_);
    double variance = 0.0;
    if (total_ > 1)
      variance = std::max(0.0, 1.0 - mean * mean) * static_cast<double>(total_) /
                 static_cast<double>(total_ - 1);
    return {mean, std::sqrt(variance / static_cast<double>(total_)), total_, seed};
  }

 private:
  long long positives_ = 0;
  long long total_ = 0;
};

/// z-score of the difference of two estimates; infinite when both standard
/// errors vanish but the means differ.
inline double z_difference(const Estimate& x, const Estimate& y) {
  const double diff = std::fabs(x.mean - y.mean);
  const double se = std::hypot(x.std_error, y.std_error);
  if (se == 0.0) return diff == 0.0 ? 0.0 : HUGE_VAL;
  return diff / se;
}

/// z-score of an estimate against an exact reference value.
inline double z_against(const Estimate& x, double reference) {
  const double diff = std::fabs(x.mean - reference);
  if (x.std_error == 0.0) return diff == 0.0 ? 0.0 : HUGE_VAL;
  return diff / x.std_error;
}

}  // namespace ontlab

#endif  // ONTLAB_ESTIMATE_HPP
