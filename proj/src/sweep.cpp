#include "dissgeo/sweep.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <random>

#include <omp.h>

#include "dissgeo/fivelevel.hpp"
#include "dissgeo/fourlevel.hpp"
#include "dissgeo/lindblad.hpp"

namespace dissgeo::sweep {

using bath::SqueezingParams;

double default_step_rule(const SqueezingParams& p, double) { return fourlevel::default_step(p); }

namespace {

SweepRow sweep_point(const SqueezingParams& p, double phi_dot, const StepRule& step_rule) {
  const auto sched = bath::make_schedule(0.0, phi_dot, 1);
  const auto run = fourlevel::run_full_loop(p, sched, step_rule(p, phi_dot));
  return {phi_dot, run.phase.geometric_phase - run.phase.prediction_phase,
          1.0 - run.phase.visibility, 1.0 - run.phase.prediction_visibility};
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<SweepRow> adiabatic_sweep_serial(const SqueezingParams& p,
                                             std::span<const double> phi_dots,
                                             const StepRule& step_rule) {
  std::vector<SweepRow> rows;
  rows.reserve(phi_dots.size());
  for (double pd : phi_dots) rows.push_back(sweep_point(p, pd, step_rule));
  return rows;
}

std::vector<SweepRow> adiabatic_sweep(const SqueezingParams& p, std::span<const double> phi_dots,
                                      const StepRule& step_rule, int jobs) {
  for (double pd : phi_dots)
    if (!(pd > 0.0)) throw ArgumentError("adiabatic_sweep: every phi_dot must be positive");

  const auto n = static_cast<std::int64_t>(phi_dots.size());
  std::vector<SweepRow> rows(phi_dots.size());
  std::vector<std::exception_ptr> errors(phi_dots.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = sweep_point(p, phi_dots[k], step_rule);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return rows;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

namespace {

struct Draw {
  double r, phi, gamma, r2, phi2, gamma2, phi_dot;
};

constexpr std::array<const char*, 9> kCheckNames = {
    "dark_state_kernel",      // |R psi_DF|
    "bright_state_eigen",     // |R^dag R psi_perp - cosh 2r psi_perp|
    "dark_bright_orthogonal", // |<psi_DF|psi_perp>|
    "dark_state_norm",        // | |psi_DF| - 1 |
    "bath_moment_identity",   // ||M|^2 - N(N+1)| / max(1, N(N+1))
    "dark_state_stationary",  // |D(|psi_DF><psi_DF|)|
    "five_level_operators",   // operator_identity_residual5
    "tensor_structure",       // |K_kron - K_explicit|_max / max(1, |K|_max)
    "kronecker_spectrum",     // eig(K) vs pairwise eig(G1) + eig(G2), relative
};
constexpr std::array<double, 9> kCheckTolerances = {1e-12, 1e-12, 1e-12, 1e-12, 1e-10,
                                                    1e-12, 1e-12, 1e-14, 1e-10};

std::vector<Draw> make_draws(std::uint64_t seed, int draws) {
  if (draws < 1) throw ArgumentError("verify: draws must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.0, 3.0), phase(0.0, kTwoPi), rate(0.5, 2.0),
      log_speed(-4.0, -1.0);
  std::vector<Draw> out(static_cast<std::size_t>(draws));
  for (Draw& d : out) {
    d.r = amp(rng);
    d.phi = phase(rng);
    d.gamma = rate(rng);
    d.r2 = amp(rng);
    d.phi2 = phase(rng);
    d.gamma2 = rate(rng);
    d.phi_dot = std::pow(10.0, log_speed(rng));
  }
  return out;
}

double spectrum_mismatch(const fivelevel::ReducedSystemK& k) {
  const auto ek = qcore::eig_small(k.matrix).values;
  const auto e1 = qcore::eig_small(k.g1).values;
  const auto e2 = qcore::eig_small(k.g2).values;
  std::vector<Complex> sums;
  for (Eigen::Index i = 0; i < e1.size(); ++i)
    for (Eigen::Index j = 0; j < e2.size(); ++j) sums.push_back(e1(i) + e2(j));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ek.size(); ++i) {
    auto nearest = std::min_element(sums.begin(), sums.end(), [&](Complex a, Complex b) {
      return std::abs(a - ek(i)) < std::abs(b - ek(i));
    });
    worst = std::max(worst, std::abs(*nearest - ek(i)) / std::max(1.0, std::abs(ek(i))));
    sums.erase(nearest);
  }
  return worst;
}

std::array<double, 9> evaluate(const Draw& d) {
  const auto p = bath::make_squeezing(d.r, d.phi, d.gamma);
  const auto p2 = bath::make_squeezing(d.r2, d.phi2, d.gamma2);
  const ComplexMatrix r = bath::dressed_operator(p, bath::ladder_operator(3));
  const StateVector dark = bath::dark_state(p);
  const StateVector perp = bath::orthogonal_state(p);
  const auto moments = bath::bath_moments(p);
  const double nn1 = moments.n_thermal * (moments.n_thermal + 1.0);
  const lindblad::Channel channel{p.gamma, r};

  const auto k = fivelevel::build_K(p, p2, d.phi_dot);
  const ComplexMatrix k_explicit = fivelevel::explicit_K(p, p2, d.phi_dot);

  return {
      (r * dark).norm(),
      (r.adjoint() * r * perp - std::cosh(2.0 * p.r) * perp).norm(),
      std::abs(dark.dot(perp)),
      std::abs(dark.norm() - 1.0),
      std::abs(std::norm(moments.m_anomalous) - nn1) / std::max(1.0, nn1),
      lindblad::dissipator_apply(lindblad::pure_state(dark), std::span(&channel, 1))
          .cwiseAbs()
          .maxCoeff(),
      fivelevel::operator_identity_residual5(p, p2),
      (k.matrix - k_explicit).cwiseAbs().maxCoeff() /
          std::max(1.0, k.matrix.cwiseAbs().maxCoeff()),
      spectrum_mismatch(k),
  };
}

VerifyReport reduce(const std::vector<std::array<double, 9>>& residuals) {
  VerifyReport report;
  report.draws = static_cast<int>(residuals.size());
  for (std::size_t c = 0; c < kCheckNames.size(); ++c) {
    IdentityCheck check{kCheckNames[c], 0.0, kCheckTolerances[c]};
    for (const auto& row : residuals) check.max_residual = std::max(check.max_residual, row[c]);
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace

VerifyReport verify_identities_serial(std::uint64_t seed, int draws) {
  const auto all = make_draws(seed, draws);
  std::vector<std::array<double, 9>> residuals;
  residuals.reserve(all.size());
  for (const Draw& d : all) residuals.push_back(evaluate(d));
  return reduce(residuals);
}

VerifyReport verify_identities(std::uint64_t seed, int draws, int jobs) {
  const auto all = make_draws(seed, draws);
  const auto n = static_cast<std::int64_t>(all.size());
  std::vector<std::array<double, 9>> residuals(all.size());
  std::vector<std::exception_ptr> errors(all.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      residuals[k] = evaluate(all[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return reduce(residuals);
}

}  // namespace dissgeo::sweep
