#pragma once

// Geometric phases: Pancharatnam products over closed state families,
// phase/visibility extraction from tracked coherences, and the spin-1/2
// reference loop.
//
// Sign conventions. The Berry connection integral i \oint <psi|d psi> of the
// dark-state family evaluates to -2 pi s^2. The protected coherence
// <a|rho|psi_DF> on the other hand picks up arg = +2 pi s^2 over one loop,
// because rho carries psi_DF on its bra side. Both values are reported as
// computed; callers compare them with the relation observed = -(connection).

#include <span>
#include <utility>
#include <vector>

#include "dissgeo/qcore.hpp"

namespace dissgeo::geomphase {

inline constexpr double kMinOverlap = 1e-8;

struct PhaseResult {
  double geometric_phase = 0.0;    // (-pi, pi]
  double visibility = 1.0;
  double accumulated_phase = 0.0;  // unwrapped over the run
  double prediction_phase = 0.0;
  double prediction_visibility = 1.0;
};

struct SpinLoop {
  double theta = 0.0;
  int phi_samples = 1000;  // distinct points; the returned loop repeats the first
};

/// Reduces an angle to (-pi, pi].
double wrap_phase(double angle);

/// |up_n>, |down_n> for the direction (theta, phi).
std::pair<StateVector, StateVector> spin_half_eigenstates(double theta, double phi);

/// Closed family of |up_n> (or |down_n>) at fixed theta over phi in [0, 2 pi].
std::vector<StateVector> spin_loop(const SpinLoop& loop, bool up = true);

/// -sum_k arg <psi_k|psi_{k+1}>. Equivalent to -arg of the Pancharatnam
/// product, with the branch fixed by following the loop step by step.
/// Throws ResolutionError if a consecutive overlap is below kMinOverlap and
/// ArgumentError if the list is not closed or too short.
double discrete_berry_phase(std::span<const StateVector> states);

/// 2 pi sinh^2 r / cosh 2r.
double analytic_chi(double r);

/// Phase and visibility of v_final relative to v_initial.
PhaseResult extract_phase(Complex v_initial, Complex v_final);

/// Total continuous change in arg over a sampled series. A step whose
/// argument increment comes within pi/4 of the branch cut is considered
/// unresolved and raises ResolutionError.
double unwrap_accumulated(std::span<const Complex> series);

}  // namespace dissgeo::geomphase

namespace dissgeo::geomphase {

/// Closed loop of three-level dark states at amplitude r over phi in [0, 2 pi].
std::vector<StateVector> dark_state_loop(double r, int samples);

}  // namespace dissgeo::geomphase
