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
// ontlab command-line tool.  Subcommands:
//   verify        consistency suite (quantum reproduction, non-signalling,
//                 intermediate averages, variance bounds)
//   fig2          entanglement sweep of the variance bound and the realized
//                 model variances, as CSV
//   bound         chain-bound scan with per-n minima, as JSON
//   intermediate  intermediate-level averages over the polar angle, as CSV
// Every output file gets a <output>.manifest.json sidecar; outputs are
// byte-identical across reruns with the same parameters and seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ontlab/bound.hpp"
#include "ontlab/report.hpp"
#include "ontlab/verify.hpp"

namespace {

using namespace ontlab;

double to_radians(double value, bool degrees) {
  return degrees ? value * kPi / 180.0 : value;
}

std::map<std::string, std::string> base_parameters(std::uint64_t /*seed*/,
                                                   long long samples) {
  return {{"samples", std::to_string(samples)}};
}

int cmd_verify(std::vector<double> theta_grid, long long samples,
               std::uint64_t seed, bool degrees) {
  if (samples < kMinMcSamples) {
    std::printf(
        "FAIL statistical power insufficient: %lld samples (need at least %lld "
        "for the 5-sigma suite)\n",
        samples, kMinMcSamples);
    return 1;
  }
  VerifyOptions options;
  options.samples = samples;
  options.seed = seed;
  for (double theta : theta_grid)
    options.theta_grid.push_back(to_radians(theta, degrees));

  const auto results = run_verify_suite(options);
  std::size_t failed = 0;
  const CheckResult* worst = nullptr;
  for (const auto& r : results) {
    std::printf("[%s] %-42s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.passed) {
      ++failed;
      if (worst == nullptr || r.severity > worst->severity) worst = &r;
    }
  }
  std::printf("%zu/%zu checks passed (seed %llu, %lld samples)\n",
              results.size() - failed, results.size(),
              static_cast<unsigned long long>(seed), samples);
  if (worst != nullptr)
    std::printf("worst offender: %s (%s)\n", worst->name.c_str(),
                worst->detail.c_str());
  return failed == 0 ? 0 : 1;
}

int cmd_fig2(int theta_steps, double alpha_a, long long samples,
             std::uint64_t seed, const std::string& output) {
  const auto points = fig2_curve(theta_steps, alpha_a);
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return 1;
  }
  write_fig2_csv(out, points);

  auto params = base_parameters(seed, samples);
  params["theta_steps"] = std::to_string(theta_steps);
  params["alpha_a"] = format_significant(alpha_a);
  params["output"] = output;
  write_manifest_sidecar(output, make_manifest("fig2", params, seed));
  std::printf("wrote %s (%zu rows)\n", output.c_str(), points.size());
  return 0;
}

int cmd_bound(double theta, double alpha_a, int n_max, int restarts, double tol,
              int max_iters, bool full_sphere, std::uint64_t seed,
              const std::string& output) {
  MinimizeOptions opts;
  opts.restarts = restarts;
  opts.tol = tol;
  opts.max_iters = max_iters;
  opts.full_sphere = full_sphere;
  RngStream rng(seed, 0);
  const auto report =
      scan_bound(make_state(theta), Setting::in_plane(alpha_a), n_max, opts, rng);

  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return 1;
  }
  out << bound_report_to_json(report, full_sphere);

  std::map<std::string, std::string> params;
  params["theta"] = format_significant(theta);
  params["alpha_a"] = format_significant(alpha_a);
  params["n_max"] = std::to_string(n_max);
  params["restarts"] = std::to_string(restarts);
  params["tol"] = format_significant(tol);
  params["max_iters"] = std::to_string(max_iters);
  params["full_sphere"] = full_sphere ? "true" : "false";
  params["output"] = output;
  write_manifest_sidecar(output, make_manifest("bound", params, seed));

  std::printf("overall min %.9f, cos(theta) %.9f, gap %.3e -> %s\n",
              report.overall_min, report.conjecture_value, report.gap,
              output.c_str());
  return 0;
}

int cmd_intermediate(const std::string& model, double theta, double alpha_a,
                     double alpha_b, int tau_steps, long long samples,
                     std::uint64_t seed, const std::string& output) {
  const ModelKind kind = parse_model_kind(model);
  const auto rows =
      intermediate_rows(kind, theta, alpha_a, alpha_b, tau_steps, samples, seed);
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return 1;
  }
  write_intermediate_csv(out, rows);

  auto params = base_parameters(seed, samples);
  params["model"] = model;
  params["theta"] = format_significant(theta);
  params["alpha_a"] = format_significant(alpha_a);
  params["alpha_b"] = format_significant(alpha_b);
  params["tau_steps"] = std::to_string(tau_steps);
  params["output"] = output;
  write_manifest_sidecar(output, make_manifest("intermediate", params, seed));
  std::printf("wrote %s (%zu rows)\n", output.c_str(), rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ontlab: deterministic hidden-variable models of a two-qubit system, "
      "their intermediate-level averages and the chain bound"};
  app.require_subcommand(1);
  app.fallthrough();  // global options are accepted after the subcommand too

  std::uint64_t seed = 12345;
  long long samples = 1'000'000;
  bool degrees = false;
  app.add_option("--seed", seed, "RNG seed (default 12345)");
  app.add_option("--samples", samples, "Monte Carlo samples per estimate");
  app.add_flag("--degrees", degrees, "interpret angle options in degrees");

  auto* verify = app.add_subcommand("verify", "run the consistency suite");
  std::vector<double> theta_grid;
  verify->add_option("--theta-grid", theta_grid,
                     "mixing angles to check (default: 5 points on [0, pi/2])");

  auto* fig2 = app.add_subcommand(
      "fig2", "variance bound and model variances versus entanglement (CSV)");
  int theta_steps = 49;
  double fig2_alpha_a = kPi / 2.0;
  std::string fig2_output = "fig2.csv";
  fig2->add_option("--theta-steps", theta_steps, "grid points on [0, pi/2]");
  fig2->add_option("--alpha-a", fig2_alpha_a,
                   "in-plane azimuth of the local setting (default pi/2, sigma_z)");
  fig2->add_option("--output", fig2_output, "CSV path");

  auto* bound = app.add_subcommand("bound", "chain-bound scan (JSON)");
  double bound_theta = kPi / 3.0;
  double bound_alpha_a = kPi / 2.0;
  int n_max = 8;
  int restarts = 8;
  double tol = 1e-9;
  int max_iters = 4000;
  bool full_sphere = false;
  std::string bound_output = "bound.json";
  bound->add_option("--theta", bound_theta, "mixing angle");
  bound->add_option("--alpha-a", bound_alpha_a, "in-plane azimuth of a");
  bound->add_option("--n-max", n_max, "largest chain parameter n");
  bound->add_option("--restarts", restarts, "descent starts per n");
  bound->add_option("--tol", tol, "objective tolerance");
  bound->add_option("--max-iters", max_iters, "iteration cap per descent");
  bound->add_flag("--full-sphere", full_sphere,
                  "let chain settings leave the measurement plane");
  bound->add_option("--output", bound_output, "JSON path");

  auto* intermediate = app.add_subcommand(
      "intermediate", "intermediate-level averages over the polar angle (CSV)");
  std::string model = "bell";
  double int_theta = kPi / 3.0;
  double int_alpha_a = kPi / 2.0;
  double int_alpha_b = 0.0;
  int tau_steps = 65;
  std::string int_output = "intermediate.csv";
  intermediate->add_option("--model", model, "bell | saturating | factorized");
  intermediate->add_option("--theta", int_theta, "mixing angle");
  intermediate->add_option("--alpha-a", int_alpha_a, "in-plane azimuth of a");
  intermediate->add_option("--alpha-b", int_alpha_b, "in-plane azimuth of b");
  intermediate->add_option("--tau-steps", tau_steps, "polar-angle grid points");
  intermediate->add_option("--output", int_output, "CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed())
      return cmd_verify(theta_grid, samples, seed, degrees);
    if (fig2->parsed())
      return cmd_fig2(theta_steps, to_radians(fig2_alpha_a, degrees), samples,
                      seed, fig2_output);
    if (bound->parsed())
      return cmd_bound(to_radians(bound_theta, degrees),
                       to_radians(bound_alpha_a, degrees), n_max, restarts, tol,
                       max_iters, full_sphere, seed, bound_output);
    if (intermediate->parsed())
      return cmd_intermediate(model, to_radians(int_theta, degrees),
                              to_radians(int_alpha_a, degrees),
                              to_radians(int_alpha_b, degrees), tau_steps,
                              samples, seed, int_output);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
