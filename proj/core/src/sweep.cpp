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

#include "chi2cavity/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>

#include "chi2cavity/amplitude.hpp"
#include "chi2cavity/dynamics.hpp"
#include "chi2cavity/errors.hpp"

namespace chi2 {

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 5> kParameterNames{{
    {SweepParameter::Delta, "delta"},
    {SweepParameter::G, "g"},
    {SweepParameter::Kappa2, "kappa2"},
    {SweepParameter::DriveStrength, "drive_strength"},
    {SweepParameter::DeltaF, "delta_f"},
}};

constexpr std::array<std::pair<Output, std::string_view>, kOutputCount> kOutputNames{{
    {Output::G2aa, "g2_aa"},
    {Output::G2bb, "g2_bb"},
    {Output::Na, "n_a"},
    {Output::Nb, "n_b"},
}};

constexpr std::array<std::pair<FigurePreset, std::string_view>, 8> kPresetNames{{
    {FigurePreset::Fig4a, "fig4a"},
    {FigurePreset::Fig4b, "fig4b"},
    {FigurePreset::Fig5, "fig5"},
    {FigurePreset::Fig6, "fig6"},
    {FigurePreset::Fig7a, "fig7a"},
    {FigurePreset::Fig7b, "fig7b"},
    {FigurePreset::Fig8a, "fig8a"},
    {FigurePreset::Fig8b, "fig8b"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum e) {
  for (const auto& [key, name] : table) {
    if (key == e) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum parse_name(const std::array<std::pair<Enum, std::string_view>, N>& table, std::string_view text,
                const char* what) {
  for (const auto& [key, name] : table) {
    if (name == text) return key;
  }
  std::string choices;
  for (const auto& [key, name] : table) {
    if (!choices.empty()) choices += "|";
    choices += name;
  }
  throw InvalidArgument("unknown " + std::string(what) + " '" + std::string(text) + "' (expected " +
                        choices + ")");
}

std::string describe(const SystemParams& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "delta=%.6g g=%.6g kappa2=%.6g F=%.6g delta_f=%.6g direction=%s", p.delta,
                p.g, p.kappa2, p.drive_strength, p.delta_f, std::string(to_string(p.direction)).c_str());
  return buf;
}

std::optional<double> pick(const PhotonStatistics& s, Output o) {
  switch (o) {
    case Output::G2aa: return s.g2_aa;
    case Output::G2bb: return s.g2_bb;
    case Output::Na: return s.n_a;
    case Output::Nb: return s.n_b;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SweepParameter p) noexcept { return name_of(kParameterNames, p); }
SweepParameter parse_sweep_parameter(std::string_view name) {
  return parse_name(kParameterNames, name, "sweep parameter");
}

void set_parameter(SystemParams& p, SweepParameter which, double value) {
  switch (which) {
    case SweepParameter::Delta: p.delta = value; break;
    case SweepParameter::G: p.g = value; break;
    case SweepParameter::Kappa2: p.kappa2 = value; break;
    case SweepParameter::DriveStrength: p.drive_strength = value; break;
    case SweepParameter::DeltaF: p.delta_f = value; break;
  }
}

std::string_view to_string(Output o) noexcept { return name_of(kOutputNames, o); }
Output parse_output(std::string_view name) { return parse_name(kOutputNames, name, "output"); }

std::string_view to_string(PointStatus s) noexcept {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::VacuumUndefined: return "vacuum-undefined";
    case PointStatus::SolverFailure: return "solver-failure";
  }
  return "?";
}

std::string_view to_string(FigurePreset f) noexcept { return name_of(kPresetNames, f); }
FigurePreset parse_figure_preset(std::string_view name) {
  return parse_name(kPresetNames, name, "figure preset");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  if (count < 1) return v;
  v.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    v.push_back(start);
    return v;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) v.push_back(i + 1 == count ? stop : start + step * i);
  return v;
}

std::vector<DriveDirection> SweepSpec::effective_directions() const {
  return directions.empty() ? std::vector<DriveDirection>{fixed.direction} : directions;
}

void SweepSpec::validate() const {
  auto check_axis = [](const SweepAxis& axis, const char* label) {
    if (axis.count < 2) {
      throw InvalidArgument(std::string(label) + " needs at least 2 points, got " + std::to_string(axis.count));
    }
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) {
      throw InvalidArgument(std::string(label) + " bounds must be finite");
    }
    if (axis.start == axis.stop) throw InvalidArgument(std::string(label) + " has start == stop");
  };
  check_axis(axis1, "axis1");
  if (axis2) {
    check_axis(*axis2, "axis2");
    if (axis2->parameter == axis1.parameter) throw InvalidArgument("axis1 and axis2 sweep the same parameter");
  }
  if (outputs.empty()) throw InvalidArgument("at least one output is required");
  if (cutoffs.na_cut < 1 || cutoffs.nb_cut < 1) throw InvalidArgument("cutoffs must be >= 1");

  // Every corner of the grid must be a valid parameter point.
  const auto ends1 = std::array{axis1.start, axis1.stop};
  const auto ends2 = axis2 ? std::vector<double>{axis2->start, axis2->stop} : std::vector<double>{0.0};
  for (double x : ends1) {
    for (double y : ends2) {
      SystemParams p = fixed;
      set_parameter(p, axis1.parameter, x);
      if (axis2) set_parameter(p, axis2->parameter, y);
      p.validate();
    }
  }
}

bool SweepResult::has_solver_failure() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status == PointStatus::SolverFailure; });
}

PhotonStatistics run_point(const SystemParams& p, const Cutoffs& cutoffs) {
  p.validate();
  const FockBasis basis(cutoffs.na_cut, cutoffs.nb_cut);
  try {
    const ModeOperator a = annihilator_a(basis);
    const ModeOperator b = annihilator_b(basis);
    const Liouvillian l = build_liouvillian(build_h_eff(p, basis), a, b, p.kappa1, p.kappa2);
    return photon_statistics(steady_state(l));
  } catch (const NonUniqueSteadyState& e) {
    throw NonUniqueSteadyState("at " + describe(p) + ": " + e.what());
  } catch (const SolverFailure& e) {
    throw SolverFailure("at " + describe(p) + ": " + e.what());
  }
}

namespace {

SweepRow evaluate_row(const SweepSpec& spec, DriveDirection direction, double x, std::optional<double> y) {
  SweepRow row;
  row.direction = direction;
  row.axis1 = x;
  row.axis2 = y;

  SystemParams p = spec.fixed;
  p.direction = direction;
  set_parameter(p, spec.axis1.parameter, x);
  if (spec.axis2) set_parameter(p, spec.axis2->parameter, *y);
  if (spec.optimal_g_overlay) row.optimal_g = optimal_g(p.kappa1, p.kappa2, p.drive_strength);

  try {
    const PhotonStatistics stats = run_point(p, spec.cutoffs);
    for (Output o : spec.outputs) {
      const auto v = pick(stats, o);
      row.values[static_cast<std::size_t>(o)] = v;
      if (!v) row.status = PointStatus::VacuumUndefined;
    }
    if (spec.convergence_check) {
      const PhotonStatistics fine = run_point(p, spec.cutoffs.doubled());
      for (Output o : spec.outputs) {
        const auto coarse_v = pick(stats, o);
        const auto fine_v = pick(fine, o);
        if (!coarse_v || !fine_v) continue;
        const double diff = std::abs(*fine_v - *coarse_v);
        row.rel_change[static_cast<std::size_t>(o)] = *fine_v != 0.0 ? diff / std::abs(*fine_v) : diff;
      }
    }
  } catch (const std::exception& e) {
    row.values = {};
    row.rel_change = {};
    row.status = PointStatus::SolverFailure;
    row.message = e.what();
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto directions = spec.effective_directions();
  const auto xs = spec.axis1.values();
  const auto ys = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
  const std::size_t ny = spec.axis2 ? ys.size() : 1;
  const std::size_t per_direction = xs.size() * ny;
  const std::size_t total = directions.size() * per_direction;

  SweepResult result{spec, std::vector<SweepRow>(total)};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t d = k / per_direction;
      const std::size_t i = (k % per_direction) / ny;
      const std::size_t j = k % ny;
      const std::optional<double> y = spec.axis2 ? std::optional<double>(ys[j]) : std::nullopt;
      result.rows[k] = evaluate_row(spec, directions[d], xs[i], y);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

SweepSpec figure_preset(FigurePreset preset) {
  SweepSpec spec;
  spec.name = std::string(to_string(preset));
  spec.fixed.kappa1 = 1.0;
  spec.fixed.kappa2 = 1.0;
  spec.fixed.drive_strength = 0.05;
  spec.fixed.delta = 0.0;
  spec.fixed.delta_f = 0.0;
  spec.fixed.direction = DriveDirection::Left;

  const double g_fundamental = 5.0;
  const double g_harmonic = optimal_g(1.0, 1.0, 0.05);
  auto nonreciprocal = [&](double g, Output out) {
    spec.fixed.g = g;
    spec.fixed.delta_f = resonance_angular_condition(g);
    spec.axis1 = {SweepParameter::Delta, -4.0, 4.0, 401};
    spec.directions = {DriveDirection::Left, DriveDirection::Right};
    spec.outputs = {out};
  };

  switch (preset) {
    case FigurePreset::Fig4a:
    case FigurePreset::Fig4b:
      spec.axis1 = {SweepParameter::Delta, -5.0, 5.0, kHeatmapResolution};
      spec.axis2 = SweepAxis{SweepParameter::G, 0.1, 10.0, kHeatmapResolution};
      spec.outputs = {preset == FigurePreset::Fig4a ? Output::G2aa : Output::G2bb};
      break;
    case FigurePreset::Fig5:
      spec.axis1 = {SweepParameter::G, 0.1, 3.0, 200};
      spec.outputs = {Output::G2bb};
      break;
    case FigurePreset::Fig6:
      spec.axis1 = {SweepParameter::Kappa2, 0.1, 3.0, kHeatmapResolution};
      spec.axis2 = SweepAxis{SweepParameter::G, 0.1, 3.0, kHeatmapResolution};
      spec.outputs = {Output::G2bb};
      spec.optimal_g_overlay = true;
      break;
    case FigurePreset::Fig7a: nonreciprocal(g_fundamental, Output::G2aa); break;
    case FigurePreset::Fig7b: nonreciprocal(g_harmonic, Output::G2bb); break;
    case FigurePreset::Fig8a: nonreciprocal(g_fundamental, Output::Na); break;
    case FigurePreset::Fig8b: nonreciprocal(g_harmonic, Output::Nb); break;
  }
  return spec;
}

namespace {

Extremum refine_at(std::span<const double> xs, std::span<const double> ys, std::size_t i) {
  Extremum e{i, xs[i], ys[i]};
  if (i == 0 || i + 1 >= xs.size()) return e;
  const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  if (!std::isfinite(y0) || !std::isfinite(y2)) return e;
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double qa = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double qb = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  const double qc = (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y1 + x0 * x1 * (x0 - x1) * y2) / denom;
  if (qa == 0.0 || !std::isfinite(qa)) return e;
  const double xv = std::clamp(-qb / (2.0 * qa), std::min(x0, x2), std::max(x0, x2));
  e.x = xv;
  e.value = (qa * xv + qb) * xv + qc;
  return e;
}

void check_samples(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DimensionMismatch("xs and ys differ in length");
  if (xs.empty()) throw InvalidArgument("cannot locate an extremum of an empty curve");
}

}  // namespace

Extremum refine_argmin(std::span<const double> xs, std::span<const double> ys) {
  check_samples(xs, ys);
  std::size_t best = xs.size();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    if (best == xs.size() || ys[i] < ys[best] || (ys[i] == ys[best] && xs[i] < xs[best])) best = i;
  }
  if (best == xs.size()) throw InvalidArgument("curve has no finite samples");
  return refine_at(xs, ys, best);
}

Extremum refine_argmax(std::span<const double> xs, std::span<const double> ys) {
  check_samples(xs, ys);
  std::vector<double> negated(ys.size());
  std::transform(ys.begin(), ys.end(), negated.begin(), [](double v) { return -v; });
  Extremum e = refine_argmin(xs, negated);
  e.value = -e.value;
  return e;
}

std::vector<Extremum> local_maxima(std::span<const double> xs, std::span<const double> ys) {
  check_samples(xs, ys);
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] > ys[i - 1] && ys[i] > ys[i + 1]) out.push_back(refine_at(xs, ys, i));
  }
  return out;
}

}  // namespace chi2
