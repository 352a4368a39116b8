#pragma once

// Embarrassingly parallel drivers: adiabaticity sweeps over phi_dot and
// randomized identity verification. Each has an OpenMP kernel and a serial
// reference that must produce identical results.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dissgeo/bath.hpp"

namespace dissgeo::sweep {

struct SweepRow {
  double phi_dot = 0.0;
  double phase_error = 0.0;      // measured phase - diagonalized-G prediction
  double visibility_loss = 0.0;  // 1 - measured visibility
  double predicted_loss = 0.0;   // 1 - diagonalized-G visibility
};

using StepRule = std::function<double(const bath::SqueezingParams&, double phi_dot)>;

/// 1e-2 / gamma_tilde, independent of phi_dot.
double default_step_rule(const bath::SqueezingParams& p, double phi_dot);

/// One four-level loop per phi_dot. Rows come back in input order.
/// jobs <= 0 uses the OpenMP default thread count.
std::vector<SweepRow> adiabatic_sweep(const bath::SqueezingParams& p,
                                      std::span<const double> phi_dots,
                                      const StepRule& step_rule = default_step_rule,
                                      int jobs = 0);

std::vector<SweepRow> adiabatic_sweep_serial(const bath::SqueezingParams& p,
                                             std::span<const double> phi_dots,
                                             const StepRule& step_rule = default_step_rule);

struct IdentityCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

struct VerifyReport {
  int draws = 0;
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Randomized checks of the algebraic identities the reduced systems rest
/// on. Draws: r, r2 in [0, 3], phases in [0, 2 pi), gamma in [0.5, 2],
/// phi_dot in [1e-4, 1e-1], all from a mt19937_64 seeded with `seed`.
VerifyReport verify_identities(std::uint64_t seed, int draws, int jobs = 0);
VerifyReport verify_identities_serial(std::uint64_t seed, int draws);

}  // namespace dissgeo::sweep
