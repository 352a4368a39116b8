#include "dissgeo/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dissgeo/bath.hpp"
#include "dissgeo/fivelevel.hpp"
#include "dissgeo/fourlevel.hpp"
#include "dissgeo/geomphase.hpp"
#include "dissgeo/lindblad.hpp"
#include "dissgeo/sweep.hpp"

namespace dissgeo::cli {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

using json = nlohmann::json;

struct RunConfig {
  double r = 0.0, r1 = 0.0, r2 = 0.0;
  double gamma = 1.0, gamma1 = 1.0, gamma2 = 1.0;
  double phidot = 1e-3;
  double step = 0.0;
  int loops = 1;
  int points = 10000;
  double tmax = 50.0;
  double phi0 = 0.0;
  std::optional<double> phi0_2;
  double theta = 0.0;
  int initial = 0;
  bool down = false;
  std::vector<double> phidot_list;
  std::size_t stride = 0;
  std::string csv;
  std::uint64_t seed = 0;
  int draws = 100;
  int jobs = 0;
};

// Echo of the resolved flags, stored under "config".
class ConfigEcho {
 public:
  explicit ConfigEcho(std::string command) : text_(std::move(command)) {}
  ConfigEcho& add(const std::string& flag, double value) {
    text_ += " --" + flag + " " + format_double(value);
    return *this;
  }
  ConfigEcho& add(const std::string& flag, const std::string& value) {
    text_ += " --" + flag + " " + value;
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

void emit_summary(std::ostream& out, const json& summary) { out << summary.dump(2) << "\n"; }

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ArgumentError("cannot open output file '" + path + "'");
  return file;
}

void write_trajectory_csv(std::ostream& os, const lindblad::Trajectory& traj) {
  os << "t";
  for (const auto& name : traj.names) os << ",re_" << name << ",im_" << name;
  os << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]);
    for (const auto& series : traj.observables)
      os << "," << format_double(series[k].real()) << "," << format_double(series[k].imag());
    os << "\n";
  }
}

// Writes to --csv when given, otherwise to `out`.
template <class Writer>
void write_table(const RunConfig& cfg, std::ostream& out, Writer&& writer) {
  if (cfg.csv.empty()) {
    writer(out);
    return;
  }
  auto file = open_output(cfg.csv);
  writer(file);
}

int cmd_four_level(const RunConfig& cfg, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  const auto p = bath::make_squeezing(cfg.r, cfg.phi0, cfg.gamma);
  const auto sched = bath::make_schedule(cfg.phi0, cfg.phidot, cfg.loops);
  const auto run = fourlevel::run_full_loop(p, sched, cfg.step, cfg.stride);
  const auto loop = geomphase::dark_state_loop(cfg.r, cfg.points);
  const double berry = geomphase::discrete_berry_phase(loop);

  if (!cfg.csv.empty()) {
    auto file = open_output(cfg.csv);
    write_trajectory_csv(file, run.trajectory);
  }
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  ConfigEcho echo("four-level");
  echo.add("r", cfg.r).add("gamma", cfg.gamma).add("phidot", cfg.phidot)
      .add("loops", cfg.loops).add("phi0", cfg.phi0).add("step", run.step)
      .add("stride", static_cast<double>(cfg.stride)).add("points", cfg.points);
  json summary;
  summary["chi_measured"] = run.phase.geometric_phase;
  summary["chi_analytic"] = geomphase::analytic_chi(cfg.r);
  summary["chi_berry_integral"] = berry;
  summary["visibility"] = run.phase.visibility;
  summary["visibility_predicted"] = run.phase.prediction_visibility;
  summary["closure_residual"] = run.closure_residual;
  summary["runtime_seconds"] = runtime;
  summary["config"] = echo.str();
  emit_summary(out, summary);
  return kExitOk;
}

int cmd_five_level(const RunConfig& cfg, std::ostream& out) {
  const auto p1 = bath::make_squeezing(cfg.r1, cfg.phi0, cfg.gamma1);
  const auto p2 = bath::make_squeezing(cfg.r2, cfg.phi0_2.value_or(cfg.phi0), cfg.gamma2);
  const auto sched = bath::make_schedule(cfg.phi0, cfg.phidot, cfg.loops);
  const auto run = fivelevel::run_full_loop5(p1, p2, sched, cfg.step, cfg.phi0_2, cfg.stride);

  if (!cfg.csv.empty()) {
    auto file = open_output(cfg.csv);
    write_trajectory_csv(file, run.trajectory);
  }

  ConfigEcho echo("five-level");
  echo.add("r1", cfg.r1).add("r2", cfg.r2).add("gamma1", cfg.gamma1).add("gamma2", cfg.gamma2)
      .add("phidot", cfg.phidot).add("loops", cfg.loops).add("phi0", cfg.phi0)
      .add("phi0-2", run.phi0_2).add("step", run.step)
      .add("stride", static_cast<double>(cfg.stride))
      .add("polarization-basis", std::string("R=(H+iV)/sqrt2,L=(H-iV)/sqrt2"));
  const double measured = run.phase.geometric_phase;
  json summary;
  summary["delta_chi_measured"] = measured;
  summary["delta_chi_magnitude"] = std::abs(measured);
  summary["delta_chi_analytic"] = geomphase::analytic_chi(cfg.r1) - geomphase::analytic_chi(cfg.r2);
  summary["polarization_angle"] = run.polarization_angle;
  summary["visibility"] = run.phase.visibility;
  summary["closure_residual"] = run.closure_residual;
  summary["config"] = echo.str();
  emit_summary(out, summary);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto p = bath::make_squeezing(cfg.r, 0.0, cfg.gamma);
  sweep::StepRule rule = sweep::default_step_rule;
  if (cfg.step > 0.0) rule = [step = cfg.step](const bath::SqueezingParams&, double) { return step; };
  const auto rows = sweep::adiabatic_sweep(p, cfg.phidot_list, rule, cfg.jobs);
  write_table(cfg, out, [&](std::ostream& os) {
    os << "phidot,phase_error,visibility_loss,predicted_loss\n";
    for (const auto& row : rows)
      os << format_double(row.phi_dot) << "," << format_double(row.phase_error) << ","
         << format_double(row.visibility_loss) << "," << format_double(row.predicted_loss) << "\n";
  });
  return kExitOk;
}

int cmd_steady(const RunConfig& cfg, std::ostream& out) {
  const auto p = bath::make_squeezing(cfg.r, cfg.phi0, cfg.gamma);
  if (cfg.initial < -1 || cfg.initial > 1) throw ArgumentError("--initial must be -1, 0 or 1");
  const auto rho0 = lindblad::pure_state(bath::basis_state(3, cfg.initial + 1));
  const auto report = lindblad::steady_state_report(p, rho0, cfg.tmax, cfg.step, cfg.stride);
  write_table(cfg, out, [&](std::ostream& os) {
    os << "t,fidelity\n";
    for (std::size_t k = 0; k < report.times.size(); ++k)
      os << format_double(report.times[k]) << "," << format_double(report.fidelity[k]) << "\n";
  });
  return kExitOk;
}

int cmd_berry(const RunConfig& cfg, std::ostream& out) {
  const auto loop = geomphase::dark_state_loop(cfg.r, cfg.points);
  json summary;
  summary["berry_phase"] = geomphase::discrete_berry_phase(loop);
  summary["chi_analytic"] = geomphase::analytic_chi(cfg.r);
  summary["config"] =
      ConfigEcho("berry").add("r", cfg.r).add("points", cfg.points).str();
  emit_summary(out, summary);
  return kExitOk;
}

int cmd_spin_half(const RunConfig& cfg, std::ostream& out) {
  const auto loop = geomphase::spin_loop({cfg.theta, cfg.points}, !cfg.down);
  const double half = std::sin(0.5 * cfg.theta);
  json summary;
  summary["berry_phase"] = geomphase::discrete_berry_phase(loop);
  summary["expected"] = cfg.down ? -kTwoPi * (1.0 - half * half) : -kTwoPi * half * half;
  summary["config"] = ConfigEcho("spin-half")
                          .add("theta", cfg.theta)
                          .add("points", cfg.points)
                          .add("state", std::string(cfg.down ? "down" : "up"))
                          .str();
  emit_summary(out, summary);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto report = sweep::verify_identities(cfg.seed, cfg.draws, cfg.jobs);
  json summary;
  for (const auto& check : report.checks) {
    summary[check.name + "_max_residual"] = check.max_residual;
    summary[check.name] = check.passed() ? "pass" : "fail";
  }
  summary["result"] = report.all_passed() ? "pass" : "fail";
  summary["config"] = ConfigEcho("verify")
                          .add("seed", static_cast<double>(cfg.seed))
                          .add("draws", cfg.draws)
                          .str();
  emit_summary(out, summary);
  return report.all_passed() ? kExitOk : kExitNumericFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Geometric phases from cyclically steered dissipation", "dissgeo"};
  app.require_subcommand(1);

  const auto positive = CLI::PositiveNumber;
  const auto amplitude = CLI::Range(0.0, bath::kMaxSqueezing);

  auto* four = app.add_subcommand("four-level", "Dark state + reference level, one squeezing loop");
  four->add_option("--r", cfg.r, "Squeezing amplitude")->required()->check(amplitude);
  four->add_option("--gamma", cfg.gamma, "Bare decay rate")->check(positive);
  four->add_option("--phidot", cfg.phidot, "Squeezing phase velocity")->check(positive);
  four->add_option("--loops", cfg.loops, "Number of loops")->check(CLI::PositiveNumber);
  four->add_option("--phi0", cfg.phi0, "Initial squeezing phase");
  four->add_option("--step", cfg.step, "RK4 step (default 1e-2/gamma_tilde)")->check(positive);
  four->add_option("--stride", cfg.stride, "Record every n-th step (default: <= 1e4 samples)");
  four->add_option("--points", cfg.points, "Samples for the Berry connection integral")
      ->check(CLI::Range(3, 100000000));
  four->add_option("--csv", cfg.csv, "Trajectory CSV output path");

  auto* five = app.add_subcommand("five-level", "Two squeezed channels, phase difference readout");
  five->add_option("--r1", cfg.r1, "Channel 1 squeezing amplitude")->required()->check(amplitude);
  five->add_option("--r2", cfg.r2, "Channel 2 squeezing amplitude")->required()->check(amplitude);
  five->add_option("--gamma1", cfg.gamma1, "Channel 1 decay rate")->check(positive);
  five->add_option("--gamma2", cfg.gamma2, "Channel 2 decay rate")->check(positive);
  five->add_option("--phidot", cfg.phidot, "Common phase velocity")->check(positive);
  five->add_option("--loops", cfg.loops, "Number of loops")->check(CLI::PositiveNumber);
  five->add_option("--phi0", cfg.phi0, "Channel 1 initial phase");
  five->add_option("--phi0-2", cfg.phi0_2, "Channel 2 initial phase (default: --phi0)");
  five->add_option("--step", cfg.step, "RK4 step (default 1e-2/max gamma_tilde)")->check(positive);
  five->add_option("--stride", cfg.stride, "Record every n-th step");
  five->add_option("--csv", cfg.csv, "Trajectory CSV output path");

  auto* sweep_cmd = app.add_subcommand("sweep", "Visibility loss and phase error versus phidot");
  sweep_cmd->add_option("--r", cfg.r, "Squeezing amplitude")->required()->check(amplitude);
  sweep_cmd->add_option("--gamma", cfg.gamma, "Bare decay rate")->check(positive);
  sweep_cmd->add_option("--phidot-list", cfg.phidot_list, "Comma-separated phase velocities")
      ->required()
      ->delimiter(',')
      ->check(positive);
  sweep_cmd->add_option("--step", cfg.step, "Fixed RK4 step (default 1e-2/gamma_tilde)")
      ->check(positive);
  sweep_cmd->add_option("--jobs", cfg.jobs, "Concurrent sweep points")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--csv", cfg.csv, "Output path (default: stdout)");

  auto* steady = app.add_subcommand("steady", "Relaxation toward the dark state");
  steady->add_option("--r", cfg.r, "Squeezing amplitude")->required()->check(amplitude);
  steady->add_option("--gamma", cfg.gamma, "Bare decay rate")->check(positive);
  steady->add_option("--phi0", cfg.phi0, "Squeezing phase");
  steady->add_option("--tmax", cfg.tmax, "Final time")->check(positive);
  steady->add_option("--initial", cfg.initial, "Initial level: -1, 0 or 1");
  steady->add_option("--stride", cfg.stride, "Record every n-th step");
  steady->add_option("--csv", cfg.csv, "Output path (default: stdout)");
  double steady_step = 1e-2;
  steady->add_option("--step", steady_step, "RK4 step")->check(positive);

  auto* berry = app.add_subcommand("berry", "Discrete Berry phase of the dark-state loop");
  berry->add_option("--r", cfg.r, "Squeezing amplitude")->required()->check(amplitude);
  berry->add_option("--points", cfg.points, "Loop samples")->check(CLI::Range(3, 100000000));

  auto* spin = app.add_subcommand("spin-half", "Discrete Berry phase of a spin-1/2 loop");
  spin->add_option("--theta", cfg.theta, "Polar angle")->required()->check(CLI::Range(0.0, kPi));
  spin->add_option("--points", cfg.points, "Loop samples")->check(CLI::Range(3, 100000000));
  spin->add_flag("--down", cfg.down, "Use the anti-aligned eigenstate");

  auto* verify = app.add_subcommand("verify", "Randomized operator-identity checks");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--draws", cfg.draws, "Number of random draws")->check(CLI::PositiveNumber);
  verify->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << target->help();
    return kExitInvalidArguments;
  }

  try {
    if (four->parsed()) return cmd_four_level(cfg, out);
    if (five->parsed()) return cmd_five_level(cfg, out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
    if (steady->parsed()) {
      RunConfig steady_cfg = cfg;
      steady_cfg.step = steady_step;
      return cmd_steady(steady_cfg, out);
    }
    if (berry->parsed()) return cmd_berry(cfg, out);
    if (spin->parsed()) return cmd_spin_half(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidArguments;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const ResolutionError& e) {
    err << "resolution failure: " << e.what() << "\n";
    return kExitNumericFailure;
  }
  err << app.help();
  return kExitInvalidArguments;
}

}  // namespace dissgeo::cli
