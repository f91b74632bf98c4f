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
// Structured outputs: CSV curves, JSON scan reports and run manifests.
// Data files are byte-deterministic for a given (command, parameters, seed,
// tool version); the wall-clock timestamp lives only in the manifest sidecar.

#ifndef ONTLAB_REPORT_HPP
#define ONTLAB_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ontlab/bound.hpp"

namespace ontlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to reproduce an output file.  Written next to each
/// output as <output>.manifest.json.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // ISO-8601 UTC; informational only
};

RunManifest make_manifest(std::string command,
                          std::map<std::string, std::string> parameters,
                          std::uint64_t seed);

std::string manifest_to_json(const RunManifest& manifest);

void write_manifest_sidecar(const std::filesystem::path& output_path,
                            const RunManifest& manifest);

/// Shortest representation with the given number of significant digits.
std::string format_significant(double value, int digits = 12);

/// One row of the entanglement sweep: the conjectured variance bound next to
/// the variances realized by the cap-support and band-redistributed models.
struct CurvePoint {
  double theta = 0.0;
  double bound = 0.0;
  double delta_bell = 0.0;
  double delta_saturating = 0.0;
};

/// theta from 0 to pi/2 inclusive in theta_steps points; the local setting is
/// the in-plane direction at azimuth alpha_a.
std::vector<CurvePoint> fig2_curve(int theta_steps, double alpha_a);

void write_fig2_csv(std::ostream& out, std::span<const CurvePoint> points);

enum class ModelKind { Bell, Saturating, Factorized };

/// Parses "bell", "saturating" or "factorized".
ModelKind parse_model_kind(const std::string& name);

/// One tau-row of the intermediate-level exploration.
struct IntermediateRow {
  double tau = 0.0;
  double f_analytic = 0.0;
  double f_mc = 0.0;
  double f_mc_stderr = 0.0;
  double g_analytic = 0.0;
  double e_tau = 0.0;
  double e_tau_stderr = 0.0;
};

std::vector<IntermediateRow> intermediate_rows(ModelKind kind, double theta,
                                               double alpha_a, double alpha_b,
                                               int tau_steps, long long samples,
                                               std::uint64_t seed);

void write_intermediate_csv(std::ostream& out,
                            std::span<const IntermediateRow> rows);

/// JSON body of a chain-bound scan (no manifest inside; see the sidecar).
std::string bound_report_to_json(const BoundReport& report, bool full_sphere);

}  // namespace ontlab

#endif  // ONTLAB_REPORT_HPP
