#include "dissgeo/fivelevel.hpp"

#include <algorithm>

namespace dissgeo::fivelevel {

using bath::LoopSchedule;
using bath::SqueezingParams;

ReducedSystemK build_K(const SqueezingParams& p1, const SqueezingParams& p2, double phi_dot) {
  const ComplexMatrix g1 = -fourlevel::build_G(p1, phi_dot).matrix.conjugate();
  const ComplexMatrix g2 = fourlevel::build_G(p2, phi_dot).matrix;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return {qcore::kron(id, g2) + qcore::kron(g1, id), g1, g2, p1, p2, phi_dot};
}

ComplexMatrix explicit_K(const SqueezingParams& p1, const SqueezingParams& p2, double phi_dot) {
  if (!(phi_dot > 0.0)) throw ArgumentError("explicit_K: phi_dot must be positive");
  const double s1 = p1.s, c1 = p1.c, s2 = p2.s, c2 = p2.c;
  const double pd = phi_dot;
  const double d1 = 0.5 * p1.gamma_tilde;
  const double d2 = 0.5 * p2.gamma_tilde;
  ComplexMatrix k = ComplexMatrix::Zero(4, 4);
  k(0, 0) = pd * (s1 * s1 - s2 * s2);
  k(0, 1) = pd * s2 * c2;
  k(0, 2) = -pd * s1 * c1;
  k(1, 0) = pd * s2 * c2;
  k(1, 1) = Complex(pd * (s1 * s1 - c2 * c2), -d2);
  k(1, 3) = -pd * s1 * c1;
  k(2, 0) = -pd * s1 * c1;
  k(2, 2) = Complex(pd * (c1 * c1 - s2 * s2), -d1);
  k(2, 3) = pd * s2 * c2;
  k(3, 1) = -pd * s1 * c1;
  k(3, 2) = pd * s2 * c2;
  k(3, 3) = Complex(pd * (c1 * c1 - c2 * c2), -(d1 + d2));
  return k;
}

double default_step(const SqueezingParams& p1, const SqueezingParams& p2) {
  return 1e-2 / std::max(p1.gamma_tilde, p2.gamma_tilde);
}

lindblad::LindbladGenerator make_generator(const SqueezingParams& p1, const SqueezingParams& p2,
                                           double phi0_1, double phi0_2, double phi_dot) {
  lindblad::LindbladGenerator gen(kDim);
  gen.add_channel({p1.gamma, bath::ladder_operator(kDim, 1), p1.r, phi0_1, phi_dot});
  gen.add_channel({p2.gamma, bath::ladder_operator(kDim, 2), p2.r, phi0_2, phi_dot});
  return gen;
}

namespace {

lindblad::StateFamily family(const SqueezingParams& p, int channel, double phi0, double phi_dot,
                             bool dark) {
  auto at_time = [p, phi0, phi_dot](double t) { return bath::with_phase(p, phi0 + phi_dot * t); };
  if (dark)
    return {[at_time, channel](double t) { return bath::dark_state(at_time(t), kDim, channel); },
            [at_time, channel, phi_dot](double t) -> StateVector {
              return phi_dot * bath::dark_state_dphi(at_time(t), kDim, channel);
            }};
  return {[at_time, channel](double t) { return bath::orthogonal_state(at_time(t), kDim, channel); },
          [at_time, channel, phi_dot](double t) -> StateVector {
            return phi_dot * bath::orthogonal_state_dphi(at_time(t), kDim, channel);
          }};
}

}  // namespace

std::vector<lindblad::TrackedCoherence> tracked_coherences(const SqueezingParams& p1,
                                                           const SqueezingParams& p2,
                                                           double phi0_1, double phi0_2,
                                                           double phi_dot) {
  const auto psi1 = family(p1, 1, phi0_1, phi_dot, true);
  const auto perp1 = family(p1, 1, phi0_1, phi_dot, false);
  const auto psi2 = family(p2, 2, phi0_2, phi_dot, true);
  const auto perp2 = family(p2, 2, phi0_2, phi_dot, false);
  return {{"v11", psi1, psi2}, {"v1p", psi1, perp2}, {"vp1", perp1, psi2}, {"vpp", perp1, perp2}};
}

double polarization_readout(double delta_phase) {
  double angle = std::fmod(0.5 * delta_phase, kPi);
  if (angle < 0.0) angle += kPi;
  if (angle >= kPi) angle -= kPi;
  return angle;
}

namespace {

ComplexVector sample_vector(const lindblad::Trajectory& traj, std::size_t k) {
  ComplexVector v(4);
  v << traj.observables[0][k], traj.observables[1][k], traj.observables[2][k],
      traj.observables[3][k];
  return v;
}

}  // namespace

double closure_residual5(const FiveLevelRun& run) {
  if (run.trajectory.states.empty())
    throw ArgumentError("closure_residual5: run has no stored states");
  const double pd = run.schedule.phi_dot;
  const auto gen = make_generator(run.params1, run.params2, run.schedule.phi0, run.phi0_2, pd);
  const auto tracked =
      tracked_coherences(run.params1, run.params2, run.schedule.phi0, run.phi0_2, pd);
  double worst = 0.0;
  for (std::size_t k = 0; k < run.trajectory.times.size(); ++k) {
    const double t = run.trajectory.times[k];
    const ComplexMatrix& rho = run.trajectory.states[k];
    ComplexVector dv(4);
    for (int i = 0; i < 4; ++i)
      dv(i) = lindblad::coherence_rate(gen, t, rho, tracked[static_cast<std::size_t>(i)]);
    worst = std::max(worst, (dv + kI * (run.reduced_system.matrix * sample_vector(run.trajectory, k))).norm());
  }
  return worst;
}

double operator_identity_residual5(const SqueezingParams& p1, const SqueezingParams& p2) {
  const ComplexMatrix r1 = bath::dressed_operator(p1, bath::ladder_operator(kDim, 1));
  const ComplexMatrix r2 = bath::dressed_operator(p2, bath::ladder_operator(kDim, 2));
  const StateVector psi1 = bath::dark_state(p1, kDim, 1);
  const StateVector psi2 = bath::dark_state(p2, kDim, 2);
  const StateVector perp1 = bath::orthogonal_state(p1, kDim, 1);
  const StateVector perp2 = bath::orthogonal_state(p2, kDim, 2);

  const double residuals[] = {
      (r1 * psi1).norm(),
      (r2 * psi2).norm(),
      (r1 * psi2).norm(),
      (r2 * psi1).norm(),
      (r1 * perp2).norm(),
      (r2 * perp1).norm(),
      (r1.adjoint() * perp2).norm(),
      (r2.adjoint() * perp1).norm(),
      (r1.adjoint() * psi2).norm(),
      (r2.adjoint() * psi1).norm(),
      (r1.adjoint() * r1 * perp1 - std::cosh(2.0 * p1.r) * perp1).norm(),
      (r2.adjoint() * r2 * perp2 - std::cosh(2.0 * p2.r) * perp2).norm(),
  };
  return *std::max_element(std::begin(residuals), std::end(residuals));
}

FiveLevelRun run_full_loop5(const SqueezingParams& p1, const SqueezingParams& p2,
                            const LoopSchedule& sched, double step, std::optional<double> phi0_2,
                            std::size_t stride) {
  FiveLevelRun run;
  run.schedule = sched;
  run.phi0_2 = phi0_2.value_or(sched.phi0);
  run.params1 = bath::with_phase(p1, sched.phi0);
  run.params2 = bath::with_phase(p2, run.phi0_2);
  run.step = step > 0.0 ? step : default_step(p1, p2);
  run.reduced_system = build_K(run.params1, run.params2, sched.phi_dot);

  const auto gen =
      make_generator(run.params1, run.params2, sched.phi0, run.phi0_2, sched.phi_dot);
  const auto tracked =
      tracked_coherences(run.params1, run.params2, sched.phi0, run.phi0_2, sched.phi_dot);

  const StateVector psi0 =
      (bath::dark_state(run.params1, kDim, 1) + bath::dark_state(run.params2, kDim, 2)) /
      std::sqrt(2.0);
  lindblad::EvolveOptions opts;
  opts.step = run.step;
  opts.stride = stride;
  run.trajectory = lindblad::evolve_me(gen, lindblad::pure_state(psi0), 0.0, sched.duration(),
                                       opts, tracked);

  const ComplexVector v0 = sample_vector(run.trajectory, 0);
  run.reduced.reserve(run.trajectory.times.size());
  for (std::size_t k = 0; k < run.trajectory.times.size(); ++k) {
    run.reduced.push_back(
        qcore::matrix_exp_action(run.reduced_system.matrix, run.trajectory.times[k], v0));
    run.max_reduced_deviation =
        std::max(run.max_reduced_deviation,
                 (sample_vector(run.trajectory, k) - run.reduced.back()).cwiseAbs().maxCoeff());
  }

  const auto& v11 = run.trajectory.observable("v11");
  run.phase = geomphase::extract_phase(v11.front(), v11.back());
  run.phase.accumulated_phase = geomphase::unwrap_accumulated(v11);
  const auto predicted = geomphase::extract_phase(v0(0), run.reduced.back()(0));
  run.phase.prediction_phase = predicted.geometric_phase;
  run.phase.prediction_visibility = predicted.visibility;
  run.polarization_angle = polarization_readout(superposition_phase(run.phase.geometric_phase));
  run.closure_residual = closure_residual5(run);
  return run;
}

}  // namespace dissgeo::fivelevel
