#pragma once

// Two three-level ladders sharing |0>, each coupled to its own squeezed
// reservoir. The cross coherences
//   v = (<psi1|rho|psi2>, <psi1|rho|psi2_perp>, <psi1_perp|rho|psi2>, <psi1_perp|rho|psi2_perp>)
// obey dv/dt = -i K v with K = 1 (x) G2 + G1 (x) 1, G1 = -conj(G(p1)), G2 = G(p2).

#include <optional>
#include <vector>

#include "dissgeo/bath.hpp"
#include "dissgeo/fourlevel.hpp"
#include "dissgeo/geomphase.hpp"
#include "dissgeo/lindblad.hpp"

namespace dissgeo::fivelevel {

inline constexpr int kDim = 5;

struct ReducedSystemK {
  ComplexMatrix matrix;
  ComplexMatrix g1;  // bra-side block, -conj(G(p1))
  ComplexMatrix g2;  // ket-side block, G(p2)
  bath::SqueezingParams params1;
  bath::SqueezingParams params2;
  double phi_dot = 0.0;
};

/// Assembled from the Kronecker-sum structure.
ReducedSystemK build_K(const bath::SqueezingParams& p1, const bath::SqueezingParams& p2,
                       double phi_dot);

/// K written out entry by entry. The (3,3) damping is -i gt1/2, which is
/// what the Kronecker sum requires.
ComplexMatrix explicit_K(const bath::SqueezingParams& p1, const bath::SqueezingParams& p2,
                         double phi_dot);

double default_step(const bath::SqueezingParams& p1, const bath::SqueezingParams& p2);

lindblad::LindbladGenerator make_generator(const bath::SqueezingParams& p1,
                                           const bath::SqueezingParams& p2, double phi0_1,
                                           double phi0_2, double phi_dot);

/// Names: "v11" = <psi1|rho|psi2>, "v1p" = <psi1|rho|psi2_perp>,
/// "vp1" = <psi1_perp|rho|psi2>, "vpp" = <psi1_perp|rho|psi2_perp>.
std::vector<lindblad::TrackedCoherence> tracked_coherences(const bath::SqueezingParams& p1,
                                                           const bath::SqueezingParams& p2,
                                                           double phi0_1, double phi0_2,
                                                           double phi_dot);

struct FiveLevelRun {
  bath::SqueezingParams params1;
  bath::SqueezingParams params2;
  bath::LoopSchedule schedule;  // phi0 is channel 1's base phase
  double phi0_2 = 0.0;
  double step = 0.0;
  lindblad::Trajectory trajectory;
  geomphase::PhaseResult phase;  // of <psi1|rho|psi2>
  ReducedSystemK reduced_system;
  std::vector<ComplexVector> reduced;
  double max_reduced_deviation = 0.0;
  double closure_residual = 0.0;
  double polarization_angle = 0.0;
};

/// Full master-equation run with both channels sharing phi_dot. Channel 2
/// starts at phi0_2 (default: the schedule's phi0).
FiveLevelRun run_full_loop5(const bath::SqueezingParams& p1, const bath::SqueezingParams& p2,
                            const bath::LoopSchedule& sched, double step = 0.0,
                            std::optional<double> phi0_2 = std::nullopt,
                            std::size_t stride = 0);

/// Plane of linear polarization of |R> + e^{i delta}|L>, in [0, pi), with
/// |R> = (|H> + i|V>)/sqrt 2 and |L> = (|H> - i|V>)/sqrt 2.
double polarization_readout(double delta_phase);

/// Relative phase of the superposition psi1 + e^{i delta} psi2 implied by a
/// measured phase of <psi1|rho|psi2>.
inline double superposition_phase(double coherence_phase) { return -coherence_phase; }

/// max_t |dv/dt + i K v| along a completed run.
double closure_residual5(const FiveLevelRun& run);

/// Largest residual among the operator identities that close the reduced
/// system: R_i psi_i = 0, R_i psi_j = R_i psi_j_perp = 0 and the same for
/// R_i^dag (i != j), R_i^dag R_i psi_i_perp = cosh 2 r_i psi_i_perp.
double operator_identity_residual5(const bath::SqueezingParams& p1,
                                   const bath::SqueezingParams& p2);

}  // namespace dissgeo::fivelevel
