// Copyright 2026 The chi2cavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chi2cavity/hamiltonian.hpp"
#include "chi2cavity/observables.hpp"

namespace chi2 {

enum class SweepParameter { Delta, G, Kappa2, DriveStrength, DeltaF };
std::string_view to_string(SweepParameter p) noexcept;
SweepParameter parse_sweep_parameter(std::string_view name);
void set_parameter(SystemParams& p, SweepParameter which, double value);

enum class Output { G2aa = 0, G2bb = 1, Na = 2, Nb = 3 };
inline constexpr std::size_t kOutputCount = 4;
std::string_view to_string(Output o) noexcept;
Output parse_output(std::string_view name);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::Delta;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  /// Evenly spaced, endpoints included.
  std::vector<double> values() const;
};

struct Cutoffs {
  int na_cut = 6;
  int nb_cut = 3;

  Cutoffs doubled() const { return {2 * na_cut, 2 * nb_cut}; }
  friend bool operator==(const Cutoffs&, const Cutoffs&) = default;
};

struct SweepSpec {
  std::string name;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  SystemParams fixed;
  /// Drive ports to evaluate; empty means {fixed.direction}.
  std::vector<DriveDirection> directions;
  std::vector<Output> outputs{Output::G2aa, Output::G2bb, Output::Na, Output::Nb};
  Cutoffs cutoffs;
  /// Re-solve every point at doubled cutoffs and report relative changes.
  bool convergence_check = false;
  /// Add a column with optimal_g(kappa1, kappa2, F) at each grid point.
  bool optimal_g_overlay = false;

  /// count >= 2 and start != stop per axis, distinct axis parameters,
  /// non-empty outputs, valid fixed parameters and cutoffs.
  void validate() const;
  std::vector<DriveDirection> effective_directions() const;
};

enum class PointStatus { Ok, VacuumUndefined, SolverFailure };
std::string_view to_string(PointStatus s) noexcept;

struct SweepRow {
  DriveDirection direction = DriveDirection::Left;
  double axis1 = 0.0;
  std::optional<double> axis2;
  std::array<std::optional<double>, kOutputCount> values;       ///< indexed by Output
  std::array<std::optional<double>, kOutputCount> rel_change;   ///< convergence check
  std::optional<double> optimal_g;
  PointStatus status = PointStatus::Ok;
  std::string message;  ///< error text for failed points

  std::optional<double> value(Output o) const { return values[static_cast<std::size_t>(o)]; }
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  ///< direction-major, then axis1, then axis2

  bool has_solver_failure() const;
};

/// Steady-state photon statistics of a single parameter point. Solver errors
/// are rethrown with the parameter values prepended to the message; vacuum
/// modes give empty g2 entries.
PhotonStatistics run_point(const SystemParams& p, const Cutoffs& cutoffs = {});

/// Evaluates every grid point, on up to `threads` workers (0 = hardware
/// concurrency). Row order and values do not depend on scheduling.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

enum class FigurePreset { Fig4a, Fig4b, Fig5, Fig6, Fig7a, Fig7b, Fig8a, Fig8b };
std::string_view to_string(FigurePreset f) noexcept;
FigurePreset parse_figure_preset(std::string_view name);

/// Default heatmap resolution of the two-axis presets.
inline constexpr int kHeatmapResolution = 101;

/// Parameter grids of the published figures, in units of kappa1:
///   fig4a/b  (delta, g) heatmap of g2_aa / g2_bb, kappa2 = 1, F = 0.05, no rotation
///   fig5     g in [0.1, 3] at delta = 0, 200 points, g2_bb
///   fig6     (kappa2, g) heatmap of g2_bb at delta = delta_f = 0, optimal-g overlay
///   fig7a/b  delta in [-4, 4], delta_f = sqrt(2) g / 4, both ports, g2_aa / g2_bb
///   fig8a/b  same grids as fig7, n_a / n_b
/// a-panels use g = 5, b-panels g = optimal_g(1, 1, 0.05). fig4's caption
/// reads "kappa2 = kappa2"; the presets take it as kappa2 = kappa1.
SweepSpec figure_preset(FigurePreset preset);

// Extremum location on a sampled curve: grid argmin/argmax (first index wins
// ties, i.e. the smaller parameter for ascending xs) followed by a parabola
// through the neighbouring samples. Endpoints are not refined.
struct Extremum {
  std::size_t index = 0;
  double x = 0.0;
  double value = 0.0;
};
Extremum refine_argmin(std::span<const double> xs, std::span<const double> ys);
Extremum refine_argmax(std::span<const double> xs, std::span<const double> ys);
/// Interior samples strictly greater than both neighbours.
std::vector<Extremum> local_maxima(std::span<const double> xs, std::span<const double> ys);

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view name);

/// Header row, then one row per grid point. Columns: `direction` (only with
/// more than one port), axis names, requested outputs, `<output>_rel_change`
/// when the convergence check ran, `optimal_g` with the overlay, `status`.
/// Numbers use 12 significant digits; undefined values are empty fields.
std::string to_csv(const SweepResult& result);

/// {"metadata": {"spec": ..., "generated_at": ...}, "rows": [...]}; undefined
/// values are null. The timestamp only appears in the metadata.
std::string to_json(const SweepResult& result);

void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path);

std::string sweep_spec_to_json(const SweepSpec& spec);
/// Parses a JSON SweepSpec; missing fields keep their defaults, so a config
/// can be partial. Throws InvalidArgument on malformed input.
SweepSpec parse_sweep_spec_json(std::string_view text, SweepSpec base = {});

/// Round to 12 significant digits, the precision used by every emitter.
double round_significant12(double x);

}  // namespace chi2
