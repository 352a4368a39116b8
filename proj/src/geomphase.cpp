#include "dissgeo/geomphase.hpp"

#include <string>

namespace dissgeo::geomphase {

double wrap_phase(double angle) {
  double w = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (w <= -kPi) w += kTwoPi;
  return w;
}

std::pair<StateVector, StateVector> spin_half_eigenstates(double theta, double phi) {
  const double ch = std::cos(0.5 * theta);
  const double sh = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  StateVector up(2), down(2);
  up << ch, e * sh;
  down << sh, -e * ch;
  return {up, down};
}

std::vector<StateVector> spin_loop(const SpinLoop& loop, bool up) {
  if (loop.phi_samples < 2) throw ArgumentError("spin_loop: need at least 2 samples");
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(loop.phi_samples) + 1);
  for (int k = 0; k < loop.phi_samples; ++k) {
    const double phi = kTwoPi * k / loop.phi_samples;
    auto [u, d] = spin_half_eigenstates(loop.theta, phi);
    states.push_back(up ? u : d);
  }
  states.push_back(states.front());
  return states;
}

double discrete_berry_phase(std::span<const StateVector> states) {
  if (states.size() < 3) throw ArgumentError("discrete_berry_phase: need at least 3 states");
  if ((states.front() - states.back()).norm() > 1e-12)
    throw ArgumentError("discrete_berry_phase: loop is not closed");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const Complex overlap = states[k].dot(states[k + 1]);
    if (std::abs(overlap) < kMinOverlap)
      throw ResolutionError("discrete_berry_phase: overlap between samples " + std::to_string(k) +
                            " and " + std::to_string(k + 1) +
                            " vanishes; increase the number of samples");
    total -= std::arg(overlap);
  }
  return total;
}

double analytic_chi(double r) {
  if (!(r >= 0.0)) throw ArgumentError("analytic_chi: r must be non-negative");
  const double sh = std::sinh(r);
  return kTwoPi * sh * sh / std::cosh(2.0 * r);
}

PhaseResult extract_phase(Complex v_initial, Complex v_final) {
  if (v_initial == Complex(0.0, 0.0)) throw ArgumentError("extract_phase: v_initial is zero");
  const Complex ratio = v_final / v_initial;
  PhaseResult out;
  out.geometric_phase = std::arg(ratio);
  out.visibility = std::abs(ratio);
  out.accumulated_phase = out.geometric_phase;
  return out;
}

double unwrap_accumulated(std::span<const Complex> series) {
  if (series.empty()) throw ArgumentError("unwrap_accumulated: empty series");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    if (series[k] == Complex(0.0, 0.0) || series[k + 1] == Complex(0.0, 0.0))
      throw ResolutionError("unwrap_accumulated: series passes through zero");
    const double step = std::arg(series[k + 1] / series[k]);
    if (std::abs(step) > 0.75 * kPi)
      throw ResolutionError("unwrap_accumulated: argument jump of " + std::to_string(step) +
                            " rad between samples " + std::to_string(k) + " and " +
                            std::to_string(k + 1));
    total += step;
  }
  return total;
}

}  // namespace dissgeo::geomphase

#include "dissgeo/bath.hpp"

namespace dissgeo::geomphase {

std::vector<StateVector> dark_state_loop(double r, int samples) {
  if (samples < 2) throw ArgumentError("dark_state_loop: need at least 2 samples");
  const auto p = bath::make_squeezing(r, 0.0, 1.0);
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(samples) + 1);
  for (int k = 0; k < samples; ++k)
    states.push_back(bath::dark_state(bath::with_phase(p, kTwoPi * k / samples)));
  states.push_back(states.front());
  return states;
}

}  // namespace dissgeo::geomphase
