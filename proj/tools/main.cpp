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

// chi2cavity command-line front end. Rates and frequencies are in units of
// kappa1 (kappa1 = 1) except where a subcommand says otherwise.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chi2cavity/amplitude.hpp"
#include "chi2cavity/errors.hpp"
#include "chi2cavity/hamiltonian.hpp"
#include "chi2cavity/sweep.hpp"

namespace {

using namespace chi2;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitSolver = 2;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Flags shared by point, sweep and figure. Unset optionals leave the base spec alone.
struct ParamFlags {
  std::optional<double> delta, g, kappa2, drive_strength, delta_f;
  std::optional<std::string> direction;
  std::optional<int> na_cut, nb_cut;

  void attach(CLI::App* app) {
    app->add_option("--delta", delta, "Detuning omega1 - omega_L");
    app->add_option("--g", g, "chi(2) coupling");
    app->add_option("--kappa2", kappa2, "Second-harmonic loss rate");
    app->add_option("--drive-strength", drive_strength, "Drive amplitude F");
    app->add_option("--delta-f", delta_f, "Fizeau shift magnitude");
    app->add_option("--direction", direction, "Drive port: left|right");
    app->add_option("--na-cut", na_cut, "Fundamental-mode cutoff");
    app->add_option("--nb-cut", nb_cut, "Second-harmonic cutoff");
  }

  void apply(SystemParams& p, Cutoffs& c) const {
    if (delta) p.delta = *delta;
    if (g) p.g = *g;
    if (kappa2) p.kappa2 = *kappa2;
    if (drive_strength) p.drive_strength = *drive_strength;
    if (delta_f) p.delta_f = *delta_f;
    if (direction) p.direction = parse_direction(*direction);
    if (na_cut) c.na_cut = *na_cut;
    if (nb_cut) c.nb_cut = *nb_cut;
  }
};

struct OutputFlags {
  std::string format = "csv";
  std::string out;
  bool convergence_check = false;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "Output format: csv|json")->capture_default_str();
    app->add_option("--out", out, "Output file (default: stdout)");
    app->add_flag("--convergence-check", convergence_check, "Re-solve at doubled cutoffs");
  }
};

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

SweepAxis parse_axis(const std::string& text) {
  // name:start:stop:count
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 4) throw InvalidArgument("axis '" + text + "' must look like name:start:stop:count");
  SweepAxis axis;
  axis.parameter = parse_sweep_parameter(parts[0]);
  try {
    std::size_t used = 0;
    axis.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    axis.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    axis.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::logic_error&) {
    throw InvalidArgument("axis '" + text + "' has a malformed number");
  }
  return axis;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int finish_sweep(const SweepSpec& spec, const OutputFlags& of, unsigned threads) {
  const OutputFormat format = parse_output_format(of.format);
  const SweepResult result = run_sweep(spec, threads);
  const std::string text = format == OutputFormat::Csv ? to_csv(result) : to_json(result);
  write_text(text, of.out);
  if (result.has_solver_failure()) {
    std::size_t failed = 0;
    for (const SweepRow& row : result.rows) failed += row.status == PointStatus::SolverFailure;
    std::cerr << "chi2cavity: solver failed at " << failed << " of " << result.rows.size() << " grid points\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_point_command(const ParamFlags& pf, const OutputFlags& of) {
  SystemParams p;
  Cutoffs cutoffs;
  pf.apply(p, cutoffs);
  const OutputFormat format = parse_output_format(of.format);
  p.validate();

  PhotonStatistics stats;
  std::optional<PhotonStatistics> fine;
  try {
    stats = run_point(p, cutoffs);
    if (of.convergence_check) fine = run_point(p, cutoffs.doubled());
  } catch (const SolverFailure& e) {
    std::cerr << "chi2cavity: " << e.what() << "\n";
    return kExitSolver;
  }
  const bool vacuum = !stats.g2_aa || !stats.g2_bb;
  const std::vector<std::pair<std::string, std::optional<double>>> values{
      {"g2_aa", stats.g2_aa}, {"g2_bb", stats.g2_bb}, {"n_a", stats.n_a}, {"n_b", stats.n_b}};
  auto fine_value = [&](std::size_t k) -> std::optional<double> {
    const std::optional<double> f[] = {fine->g2_aa, fine->g2_bb, fine->n_a, fine->n_b};
    return f[k];
  };

  if (format == OutputFormat::Json) {
    json j{{"delta", p.delta},
           {"g", p.g},
           {"kappa1", p.kappa1},
           {"kappa2", p.kappa2},
           {"drive_strength", p.drive_strength},
           {"delta_f", p.delta_f},
           {"direction", to_string(p.direction)},
           {"na_cut", cutoffs.na_cut},
           {"nb_cut", cutoffs.nb_cut}};
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto& [name, v] = values[k];
      j[name] = v ? json(round_significant12(*v)) : json(nullptr);
      if (fine) {
        const auto f = fine_value(k);
        j[name + "_rel_change"] = v && f ? json(round_significant12(std::abs(*f - *v) / (*f != 0 ? std::abs(*f) : 1.0)))
                                         : json(nullptr);
      }
    }
    j["status"] = vacuum ? "vacuum-undefined" : "ok";
    write_text(j.dump(2) + "\n", of.out);
    return kExitOk;
  }

  std::string header = "delta,g,kappa2,drive_strength,delta_f,direction";
  std::string row = fmt12(p.delta) + "," + fmt12(p.g) + "," + fmt12(p.kappa2) + "," + fmt12(p.drive_strength) +
                    "," + fmt12(p.delta_f) + "," + std::string(to_string(p.direction));
  for (const auto& [name, v] : values) {
    header += "," + name;
    row += "," + (v ? fmt12(*v) : std::string());
  }
  if (fine) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto& [name, v] = values[k];
      const auto f = fine_value(k);
      header += "," + name + "_rel_change";
      row += "," + (v && f ? fmt12(std::abs(*f - *v) / (*f != 0 ? std::abs(*f) : 1.0)) : std::string());
    }
  }
  header += ",status";
  row += vacuum ? ",vacuum-undefined" : ",ok";
  write_text(header + "\n" + row + "\n", of.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state photon statistics of a rotating chi(2) two-mode cavity"};
  app.require_subcommand(1);

  ParamFlags point_params;
  OutputFlags point_out;
  CLI::App* point = app.add_subcommand("point", "Evaluate g2 and photon numbers at one parameter point");
  point_params.attach(point);
  point_out.attach(point);

  ParamFlags sweep_params;
  OutputFlags sweep_out;
  std::string axis1_text, axis2_text, config_path, outputs_text, directions_text;
  unsigned sweep_threads = 0;
  bool overlay = false;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one or two parameters");
  sweep->add_option("--axis1", axis1_text, "First axis as name:start:stop:count");
  sweep->add_option("--axis2", axis2_text, "Optional second axis as name:start:stop:count");
  sweep->add_option("--config", config_path, "JSON sweep spec; flags override its fields");
  sweep->add_option("--outputs", outputs_text, "Comma-separated subset of g2_aa,g2_bb,n_a,n_b");
  sweep->add_option("--directions", directions_text, "Comma-separated drive ports, e.g. left,right");
  sweep->add_flag("--optimal-g", overlay, "Add the closed-form optimal g column");
  sweep->add_option("--threads", sweep_threads, "Worker threads (0: hardware concurrency)");
  sweep_params.attach(sweep);
  sweep_out.attach(sweep);

  ParamFlags figure_params;
  OutputFlags figure_out;
  std::string figure_name;
  int resolution = kHeatmapResolution;
  unsigned figure_threads = 0;
  bool print_spec = false;
  CLI::App* figure = app.add_subcommand("figure", "Run a figure preset: fig4a fig4b fig5 fig6 fig7a fig7b fig8a fig8b");
  figure->add_option("name", figure_name, "Preset name")->required();
  figure->add_option("--resolution", resolution, "Points per axis for the heatmap presets")->capture_default_str();
  figure->add_option("--threads", figure_threads, "Worker threads (0: hardware concurrency)");
  figure->add_flag("--print-spec", print_spec, "Print the preset as a JSON sweep spec and exit");
  figure_params.attach(figure);
  figure_out.attach(figure);

  ParamFlags eigen_params;
  std::optional<double> omega1;
  std::size_t levels = 6;
  CLI::App* eigen = app.add_subcommand("eigen", "Lowest eigenlevels of the Hamiltonian");
  eigen->add_option("--omega1", omega1, "Use the lab-frame Hamiltonian with this fundamental frequency");
  eigen->add_option("--levels", levels, "Number of levels")->capture_default_str();
  eigen_params.attach(eigen);

  double og_kappa2 = 1.0, og_drive = 0.05;
  CLI::App* optimal = app.add_subcommand("optimal-g", "Closed-form coupling that cancels two-photon second-harmonic amplitude");
  optimal->add_option("--kappa2", og_kappa2, "Second-harmonic loss rate")->capture_default_str();
  optimal->add_option("--drive-strength", og_drive, "Drive amplitude F")->capture_default_str();

  FizeauParams fp;
  std::string fizeau_direction = "left";
  std::optional<double> kappa1_si, power, g_resonance;
  CLI::App* fizeau = app.add_subcommand("fizeau", "Fizeau shift and drive strength in SI units");
  fizeau->add_option("--n", fp.n, "Refractive index")->capture_default_str();
  fizeau->add_option("--radius", fp.r, "Resonator radius [m]")->capture_default_str();
  fizeau->add_option("--omega-rot", fp.omega_rot, "Angular velocity [rad/s]")->capture_default_str();
  fizeau->add_option("--wavelength", fp.lambda, "Vacuum wavelength [m]")->capture_default_str();
  fizeau->add_option("--dn-dlambda", fp.dn_dlambda, "Dispersion dn/dlambda [1/m]")->capture_default_str();
  fizeau->add_option("--direction", fizeau_direction, "Drive port: left|right")->capture_default_str();
  fizeau->add_option("--kappa1", kappa1_si, "Fundamental loss rate kappa1 [rad/s]; adds results in kappa1 units");
  fizeau->add_option("--power", power, "Pump power [W]; needs --kappa1");
  fizeau->add_option("--g", g_resonance, "Coupling [kappa1] for the resonance condition delta_f = sqrt(2) g / 4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*point) return run_point_command(point_params, point_out);

    if (*sweep) {
      SweepSpec spec;
      spec.name = "sweep";
      if (!config_path.empty()) spec = parse_sweep_spec_json(read_file(config_path), spec);
      sweep_params.apply(spec.fixed, spec.cutoffs);
      if (!axis1_text.empty()) spec.axis1 = parse_axis(axis1_text);
      else if (config_path.empty()) throw InvalidArgument("sweep needs --axis1 or --config");
      if (!axis2_text.empty()) spec.axis2 = parse_axis(axis2_text);
      if (!outputs_text.empty()) {
        spec.outputs.clear();
        std::stringstream in(outputs_text);
        for (std::string o; std::getline(in, o, ',');) spec.outputs.push_back(parse_output(o));
      }
      if (!directions_text.empty()) {
        spec.directions.clear();
        std::stringstream in(directions_text);
        for (std::string d; std::getline(in, d, ',');) spec.directions.push_back(parse_direction(d));
      }
      if (overlay) spec.optimal_g_overlay = true;
      if (sweep_out.convergence_check) spec.convergence_check = true;
      return finish_sweep(spec, sweep_out, sweep_threads);
    }

    if (*figure) {
      SweepSpec spec = figure_preset(parse_figure_preset(figure_name));
      if (spec.axis2) {
        spec.axis1.count = resolution;
        spec.axis2->count = resolution;
      }
      figure_params.apply(spec.fixed, spec.cutoffs);
      if (figure_out.convergence_check) spec.convergence_check = true;
      if (print_spec) {
        write_text(sweep_spec_to_json(spec) + "\n", figure_out.out);
        return kExitOk;
      }
      return finish_sweep(spec, figure_out, figure_threads);
    }

    if (*eigen) {
      SystemParams p;
      Cutoffs cutoffs;
      eigen_params.apply(p, cutoffs);
      p.validate();
      const FockBasis basis(cutoffs.na_cut, cutoffs.nb_cut);
      const Matrix h = omega1 ? build_h_lab(*omega1, p, basis) : build_h_eff(p, basis);
      const EigenLevels lv = eigenlevels(h, levels);
      std::cout << "level,energy,leading_state,weight\n";
      for (std::size_t k = 0; k < lv.energies.size(); ++k) {
        Eigen::Index lead = 0;
        const double weight = lv.states.col(static_cast<Eigen::Index>(k)).cwiseAbs2().maxCoeff(&lead);
        const auto [na, nb] = basis.occupation(static_cast<std::size_t>(lead));
        std::cout << k << "," << fmt12(lv.energies[k]) << ",|" << na << "," << nb << ">," << fmt12(weight) << "\n";
      }
      return kExitOk;
    }

    if (*optimal) {
      std::cout << fmt12(optimal_g(1.0, og_kappa2, og_drive)) << "\n";
      return kExitOk;
    }

    if (*fizeau) {
      fp.validate();
      fp.omega1 = 2.0 * std::numbers::pi * kSpeedOfLight / fp.lambda;
      const double shift = fizeau_shift(fp, parse_direction(fizeau_direction));
      std::cout << "delta_f_rad_per_s," << fmt12(shift) << "\n";
      if (kappa1_si) {
        if (!(*kappa1_si > 0.0)) throw InvalidArgument("--kappa1 must be > 0");
        std::cout << "delta_f_kappa1," << fmt12(shift / *kappa1_si) << "\n";
      }
      if (power) {
        if (!kappa1_si) throw InvalidArgument("--power needs --kappa1");
        const double f = drive_strength_from_power(*kappa1_si, *power, fp.omega1);
        std::cout << "drive_strength_rad_per_s," << fmt12(f) << "\n";
        std::cout << "drive_strength_kappa1," << fmt12(f / *kappa1_si) << "\n";
      }
      if (g_resonance) std::cout << "resonance_delta_f_kappa1," << fmt12(resonance_angular_condition(*g_resonance)) << "\n";
      return kExitOk;
    }
  } catch (const SolverFailure& e) {
    std::cerr << "chi2cavity: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "chi2cavity: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
