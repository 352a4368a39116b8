#pragma once

// Broadband squeezed-vacuum reservoir: squeezing parameters, bath moments,
// ladder and dressed jump operators, dark/orthogonal states, loop schedules.
//
// Basis orders used throughout the project:
//   3 levels: |-1>, |0>, |1>
//   4 levels: |-1>, |0>, |1>, |a>
//   5 levels: |-1>, |0>, |1>, |-1'>, |1'>

#include "dissgeo/qcore.hpp"

namespace dissgeo::bath {

inline constexpr double kMaxSqueezing = 10.0;

struct SqueezingParams {
  double r = 0.0;      // squeezing amplitude
  double phi = 0.0;    // squeezing phase [rad]
  double gamma = 1.0;  // bare decay rate
  double c = 1.0;      // cosh r / sqrt(cosh 2r)
  double s = 0.0;      // sinh r / sqrt(cosh 2r)
  double gamma_tilde = 1.0;  // gamma * cosh 2r, decay rate of the bright state
};

/// Throws ArgumentError unless 0 <= r <= 10 and gamma > 0.
SqueezingParams make_squeezing(double r, double phi, double gamma);

/// Same amplitude and rate, different phase.
SqueezingParams with_phase(const SqueezingParams& p, double phi);

struct BathMoments {
  double n_thermal = 0.0;   // <a^dag a> = sinh^2 r
  Complex m_anomalous{};    // <a a> = e^{i phi} sinh r cosh r
};

BathMoments bath_moments(const SqueezingParams& p);

struct LoopSchedule {
  double phi0 = 0.0;
  double phi_dot = 1e-3;
  int n_loops = 1;

  double duration() const { return n_loops * kTwoPi / phi_dot; }
};

/// Throws ArgumentError unless phi_dot > 0 and n_loops >= 1.
LoopSchedule make_schedule(double phi0, double phi_dot, int n_loops = 1);

/// phi0 + phi_dot * t, not reduced mod 2 pi. Requires 0 <= t <= duration.
double phase_at(const LoopSchedule& sched, double t);

/// Lowering operator S of a channel: |-1><0| + |0><1| (channel 1) or
/// |-1'><0| + |0><1'| (channel 2, five levels only). level_count is 3, 4 or 5.
ComplexMatrix ladder_operator(int level_count, int channel = 1);

/// R = S cosh r + e^{i phi} S^dag sinh r.
ComplexMatrix dressed_operator(const SqueezingParams& p, const ComplexMatrix& s_op);

/// |psi_DF> = c|-1> - e^{i phi} s|1> on the given channel's levels.
StateVector dark_state(const SqueezingParams& p, int level_count = 3, int channel = 1);

/// |psi_perp> = s|-1> + e^{i phi} c|1>.
StateVector orthogonal_state(const SqueezingParams& p, int level_count = 3, int channel = 1);

/// d/dphi of dark_state and orthogonal_state.
StateVector dark_state_dphi(const SqueezingParams& p, int level_count = 3, int channel = 1);
StateVector orthogonal_state_dphi(const SqueezingParams& p, int level_count = 3,
                                  int channel = 1);

/// Basis vector |k> of the given dimension.
StateVector basis_state(int dim, int index);

}  // namespace dissgeo::bath
