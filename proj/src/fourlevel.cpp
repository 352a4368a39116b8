#include "dissgeo/fourlevel.hpp"

#include <algorithm>

namespace dissgeo::fourlevel {

using bath::LoopSchedule;
using bath::SqueezingParams;

ReducedSystemG build_G(const SqueezingParams& p, double phi_dot) {
  if (!(phi_dot > 0.0)) throw ArgumentError("build_G: phi_dot must be positive");
  ComplexMatrix g(2, 2);
  g(0, 0) = -phi_dot * p.s * p.s;
  g(0, 1) = phi_dot * p.s * p.c;
  g(1, 0) = g(0, 1);
  g(1, 1) = Complex(-phi_dot * p.c * p.c, -0.5 * p.gamma_tilde);
  return {g, p, phi_dot};
}

ComplexVector reduced_solve(const ReducedSystemG& g, const ComplexVector& v0, double T) {
  if (!(T >= 0.0)) throw ArgumentError("reduced_solve: T must be non-negative");
  return qcore::matrix_exp_action(g.matrix, T, v0);
}

double default_step(const SqueezingParams& p) { return 1e-2 / p.gamma_tilde; }

lindblad::LindbladGenerator make_generator(const SqueezingParams& p, const LoopSchedule& sched) {
  lindblad::LindbladGenerator gen(kDim);
  gen.add_channel({p.gamma, bath::ladder_operator(kDim), p.r, sched.phi0, sched.phi_dot});
  return gen;
}

std::vector<lindblad::TrackedCoherence> tracked_coherences(const SqueezingParams& p,
                                                           const LoopSchedule& sched) {
  auto at_time = [p, sched](double t) { return bath::with_phase(p, sched.phi0 + sched.phi_dot * t); };
  const double pd = sched.phi_dot;
  const lindblad::StateFamily ref = lindblad::StateFamily::constant(bath::basis_state(kDim, kReference));
  lindblad::StateFamily dark{
      [at_time](double t) { return bath::dark_state(at_time(t), kDim); },
      [at_time, pd](double t) -> StateVector { return pd * bath::dark_state_dphi(at_time(t), kDim); }};
  lindblad::StateFamily perp{
      [at_time](double t) { return bath::orthogonal_state(at_time(t), kDim); },
      [at_time, pd](double t) -> StateVector {
        return pd * bath::orthogonal_state_dphi(at_time(t), kDim);
      }};
  return {{"v_dark", ref, dark}, {"v_perp", ref, perp}, {"pop_a", ref, ref}};
}

ComplexMatrix initial_state(const SqueezingParams& p, double phi0) {
  const StateVector u = (bath::basis_state(kDim, kReference) +
                         bath::dark_state(bath::with_phase(p, phi0), kDim)) /
                        std::sqrt(2.0);
  return lindblad::pure_state(u);
}

double closure_residual(const FourLevelRun& run) {
  if (run.trajectory.states.empty())
    throw ArgumentError("closure_residual: run has no stored states");
  const auto gen = make_generator(run.params, run.schedule);
  const auto tracked = tracked_coherences(run.params, run.schedule);
  const auto& dark = run.trajectory.observable("v_dark");
  const auto& perp = run.trajectory.observable("v_perp");
  double worst = 0.0;
  for (std::size_t k = 0; k < run.trajectory.times.size(); ++k) {
    const double t = run.trajectory.times[k];
    const ComplexMatrix& rho = run.trajectory.states[k];
    ComplexVector v(2), dv(2);
    v << dark[k], perp[k];
    dv << lindblad::coherence_rate(gen, t, rho, tracked[0]),
        lindblad::coherence_rate(gen, t, rho, tracked[1]);
    worst = std::max(worst, (dv + kI * (run.reduced_system.matrix * v)).norm());
  }
  return worst;
}

FourLevelRun run_full_loop(const SqueezingParams& p, const LoopSchedule& sched, double step,
                           std::size_t stride) {
  FourLevelRun run;
  run.params = bath::with_phase(p, sched.phi0);
  run.schedule = sched;
  run.step = step > 0.0 ? step : default_step(p);
  run.reduced_system = build_G(run.params, sched.phi_dot);

  const auto gen = make_generator(run.params, sched);
  const auto tracked = tracked_coherences(run.params, sched);
  lindblad::EvolveOptions opts;
  opts.step = run.step;
  opts.stride = stride;
  run.trajectory = lindblad::evolve_me(gen, initial_state(run.params, sched.phi0), 0.0,
                                       sched.duration(), opts, tracked);

  const auto& dark = run.trajectory.observable("v_dark");
  const auto& perp = run.trajectory.observable("v_perp");
  const auto& pop = run.trajectory.observable("pop_a");
  ComplexVector v0(2);
  v0 << dark.front(), perp.front();

  run.reduced.reserve(run.trajectory.times.size());
  for (std::size_t k = 0; k < run.trajectory.times.size(); ++k) {
    ComplexVector v(2);
    v << dark[k], perp[k];
    run.reduced.push_back(reduced_solve(run.reduced_system, v0, run.trajectory.times[k]));
    run.max_reduced_deviation =
        std::max(run.max_reduced_deviation, (v - run.reduced.back()).cwiseAbs().maxCoeff());
    run.max_reference_drift = std::max(run.max_reference_drift, std::abs(pop[k] - 0.5));
  }

  run.phase = geomphase::extract_phase(dark.front(), dark.back());
  run.phase.accumulated_phase = geomphase::unwrap_accumulated(dark);
  const geomphase::PhaseResult predicted =
      geomphase::extract_phase(v0(0), run.reduced.back()(0));
  run.phase.prediction_phase = predicted.geometric_phase;
  run.phase.prediction_visibility = predicted.visibility;
  run.closure_residual = closure_residual(run);
  return run;
}

}  // namespace dissgeo::fourlevel
