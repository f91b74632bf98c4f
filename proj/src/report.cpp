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

#include "ontlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "ontlab/intermediate.hpp"
#include "ontlab/models.hpp"

namespace ontlab {

RunManifest make_manifest(std::string command,
                          std::map<std::string, std::string> parameters,
                          std::uint64_t seed) {
  RunManifest manifest;
  manifest.command = std::move(command);
  manifest.parameters = std::move(parameters);
  manifest.seed = seed;
  manifest.tool_version = kToolVersion;

  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  manifest.timestamp = buffer;
  return manifest;
}

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["parameters"] = manifest.parameters;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["timestamp"] = manifest.timestamp;
  return j.dump(2) + "\n";
}

void write_manifest_sidecar(const std::filesystem::path& output_path,
                            const RunManifest& manifest) {
  std::filesystem::path sidecar = output_path;
  sidecar += ".manifest.json";
  std::ofstream out(sidecar, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + sidecar.string());
  out << manifest_to_json(manifest);
}

std::string format_significant(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

std::vector<CurvePoint> fig2_curve(int theta_steps, double alpha_a) {
  if (theta_steps < 2) throw std::invalid_argument("theta sweep needs at least 2 steps");
  const Setting a = Setting::in_plane(alpha_a);
  const BellGeneralizedModel bell;
  const SaturatingSigmaZModel saturating;

  std::vector<CurvePoint> points;
  points.reserve(theta_steps);
  for (int i = 0; i < theta_steps; ++i) {
    const double theta = (kPi / 2.0) * static_cast<double>(i) /
                         static_cast<double>(theta_steps - 1);
    const TwoQubitState psi = make_state(theta);
    CurvePoint p;
    p.theta = theta;
    p.bound = bound_rhs(psi, a);
    p.delta_bell = delta(psi, a, intermediate_profile(bell, psi, a, Party::A)).value;
    p.delta_saturating =
        delta(psi, a, intermediate_profile(saturating, psi, a, Party::A)).value;
    points.push_back(p);
  }
  return points;
}

void write_fig2_csv(std::ostream& out, std::span<const CurvePoint> points) {
  out << "theta,bound,delta_bell,delta_saturating\n";
  for (const auto& p : points) {
    out << format_significant(p.theta) << ',' << format_significant(p.bound) << ','
        << format_significant(p.delta_bell) << ','
        << format_significant(p.delta_saturating) << '\n';
  }
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "bell") return ModelKind::Bell;
  if (name == "saturating") return ModelKind::Saturating;
  if (name == "factorized") return ModelKind::Factorized;
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected bell, saturating or factorized)");
}

namespace {

template <ontological_model M>
std::vector<IntermediateRow> rows_for_model(const M& model, double theta,
                                            double alpha_a, double alpha_b,
                                            int tau_steps, long long samples,
                                            std::uint64_t seed) {
  if (tau_steps < 2) throw std::invalid_argument("tau sweep needs at least 2 steps");
  const TwoQubitState psi = make_state(theta);
  const Setting a = Setting::in_plane(alpha_a);
  const Setting b = Setting::in_plane(alpha_b);
  const auto profile_a = intermediate_profile(model, psi, a, Party::A);
  const auto profile_b = intermediate_profile(model, psi, b, Party::B);

  std::vector<IntermediateRow> rows;
  rows.reserve(tau_steps);
  for (int i = 0; i < tau_steps; ++i) {
    const double tau =
        kPi * static_cast<double>(i) / static_cast<double>(tau_steps - 1);
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    IntermediateRow row;
    row.tau = tau;
    row.f_analytic = profile_a.evaluate(tau);
    row.g_analytic = profile_b.evaluate(tau);
    const Estimate f =
        intermediate_average_mc(model, psi, a, b, Party::A, tau, samples, rng);
    row.f_mc = f.mean;
    row.f_mc_stderr = f.std_error;
    const Estimate e = intermediate_correlation(model, psi, a, b, tau, samples, rng);
    row.e_tau = e.mean;
    row.e_tau_stderr = e.std_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<IntermediateRow> intermediate_rows(ModelKind kind, double theta,
                                               double alpha_a, double alpha_b,
                                               int tau_steps, long long samples,
                                               std::uint64_t seed) {
  switch (kind) {
    case ModelKind::Bell:
      return rows_for_model(BellGeneralizedModel{}, theta, alpha_a, alpha_b,
                            tau_steps, samples, seed);
    case ModelKind::Saturating:
      return rows_for_model(SaturatingSigmaZModel{}, theta, alpha_a, alpha_b,
                            tau_steps, samples, seed);
    case ModelKind::Factorized:
      return rows_for_model(FactorizedLocalModel{}, theta, alpha_a, alpha_b,
                            tau_steps, samples, seed);
  }
  throw std::logic_error("unreachable model kind");
}

void write_intermediate_csv(std::ostream& out,
                            std::span<const IntermediateRow> rows) {
  out << "tau,f_analytic,f_mc,f_mc_stderr,g_analytic,E_tau,E_tau_stderr\n";
  for (const auto& r : rows) {
    out << format_significant(r.tau) << ',' << format_significant(r.f_analytic)
        << ',' << format_significant(r.f_mc) << ','
        << format_significant(r.f_mc_stderr) << ','
        << format_significant(r.g_analytic) << ',' << format_significant(r.e_tau)
        << ',' << format_significant(r.e_tau_stderr) << '\n';
  }
}

std::string bound_report_to_json(const BoundReport& report, bool full_sphere) {
  nlohmann::json j;
  j["overall_min"] = report.overall_min;
  j["conjecture_value"] = report.conjecture_value;
  j["gap"] = report.gap;
  bool all_converged = true;
  nlohmann::json per_n = nlohmann::json::array();
  for (const auto& pn : report.per_n) {
    nlohmann::json entry;
    entry["n"] = pn.n;
    entry["min_value"] = pn.min_value;
    entry["restarts_used"] = pn.restarts_used;
    entry["converged"] = pn.converged;
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& s : pn.chain.settings) {
      if (full_sphere) {
        chain.push_back({s.alpha(), std::asin(std::clamp(s.vector().y(), -1.0, 1.0))});
      } else {
        chain.push_back(s.alpha());
      }
    }
    entry["argmin_chain"] = std::move(chain);
    per_n.push_back(std::move(entry));
    all_converged = all_converged && pn.converged;
  }
  j["per_n"] = std::move(per_n);
  j["converged"] = all_converged;
  j["full_sphere"] = full_sphere;
  return j.dump(2) + "\n";
}

}  // namespace ontlab
