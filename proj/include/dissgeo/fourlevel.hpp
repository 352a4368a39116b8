#pragma once

// Three squeezed-bath levels plus a decoupled reference |a>. The coherences
// v = (<a|rho|psi_DF>, <a|rho|psi_perp>) obey the closed linear system
// dv/dt = -i G v while the squeezing phase is ramped.

#include <vector>

#include "dissgeo/bath.hpp"
#include "dissgeo/geomphase.hpp"
#include "dissgeo/lindblad.hpp"

namespace dissgeo::fourlevel {

inline constexpr int kDim = 4;
inline constexpr int kReference = 3;  // index of |a>

struct ReducedSystemG {
  ComplexMatrix matrix;  // [[-pd s^2, pd s c], [pd s c, -pd c^2 - i gt/2]]
  bath::SqueezingParams params;
  double phi_dot = 0.0;
};

ReducedSystemG build_G(const bath::SqueezingParams& p, double phi_dot);

/// exp(-i G T) v0.
ComplexVector reduced_solve(const ReducedSystemG& g, const ComplexVector& v0, double T);

/// 1e-2 / gamma_tilde.
double default_step(const bath::SqueezingParams& p);

/// Single channel (gamma, R(r, phi(t))) on the four-level space.
lindblad::LindbladGenerator make_generator(const bath::SqueezingParams& p,
                                           const bath::LoopSchedule& sched);

/// "v_dark" = <a|rho|psi_DF(t)>, "v_perp" = <a|rho|psi_perp(t)>, "pop_a" = <a|rho|a>.
std::vector<lindblad::TrackedCoherence> tracked_coherences(const bath::SqueezingParams& p,
                                                           const bath::LoopSchedule& sched);

/// (|a> + |psi_DF(phi0)>) / sqrt 2 as a density matrix.
ComplexMatrix initial_state(const bath::SqueezingParams& p, double phi0);

struct FourLevelRun {
  bath::SqueezingParams params;
  bath::LoopSchedule schedule;
  double step = 0.0;
  lindblad::Trajectory trajectory;
  geomphase::PhaseResult phase;
  ReducedSystemG reduced_system;
  std::vector<ComplexVector> reduced;  // exp(-iGt) v(0) at every sample time
  double max_reduced_deviation = 0.0;
  double closure_residual = 0.0;
  double max_reference_drift = 0.0;  // max |<a|rho|a> - 1/2|
};

/// Full master-equation run over the schedule (p.phi is replaced by the
/// schedule's phase). step <= 0 selects default_step(p); stride 0 keeps at
/// most 10^4 samples.
FourLevelRun run_full_loop(const bath::SqueezingParams& p, const bath::LoopSchedule& sched,
                           double step = 0.0, std::size_t stride = 0);

/// max_t |dv/dt + i G v| with dv/dt taken exactly from the master equation.
double closure_residual(const FourLevelRun& run);

}  // namespace dissgeo::fourlevel
