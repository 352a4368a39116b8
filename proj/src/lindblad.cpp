#include "dissgeo/lindblad.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace dissgeo::lindblad {

ComplexMatrix dissipator_apply(const ComplexMatrix& rho, std::span<const Channel> channels) {
  if (rho.rows() != rho.cols()) throw ArgumentError("dissipator_apply: rho not square");
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const Channel& ch : channels) {
    if (ch.jump.rows() != rho.rows() || ch.jump.cols() != rho.cols())
      throw ArgumentError("dissipator_apply: jump operator dimension mismatch");
    const ComplexMatrix jdj = ch.jump.adjoint() * ch.jump;
    out += -0.5 * ch.rate * (jdj * rho + rho * jdj) +
           ch.rate * (ch.jump * rho * ch.jump.adjoint());
  }
  return out;
}

LindbladGenerator::LindbladGenerator(int dim) : dim_(dim) {
  if (dim < 1) throw ArgumentError("LindbladGenerator: dimension must be positive");
}

void LindbladGenerator::add_channel(const DrivenChannel& channel) {
  if (!(channel.rate > 0.0) || !std::isfinite(channel.rate))
    throw ArgumentError("channel rate must be finite and positive");
  if (channel.lowering.rows() != dim_ || channel.lowering.cols() != dim_)
    throw ArgumentError("channel operator dimension mismatch");
  if (!(channel.r >= 0.0) || channel.r > bath::kMaxSqueezing)
    throw ArgumentError("channel squeezing amplitude out of range");
  terms_.push_back({channel.rate, std::cosh(channel.r) * channel.lowering,
                    std::sinh(channel.r) * channel.lowering.adjoint(), channel.phi0,
                    channel.phi_dot});
}

void LindbladGenerator::add_static_channel(double rate, const ComplexMatrix& jump) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw ArgumentError("channel rate must be finite and positive");
  if (jump.rows() != dim_ || jump.cols() != dim_)
    throw ArgumentError("channel operator dimension mismatch");
  terms_.push_back({rate, jump, ComplexMatrix::Zero(dim_, dim_), 0.0, 0.0});
}

void LindbladGenerator::jump_at(const Term& term, double t, ComplexMatrix& out) const {
  out = term.fixed;
  if (term.rotating.isZero(0.0)) return;
  out += std::polar(1.0, term.phi0 + term.phi_dot * t) * term.rotating;
}

std::vector<Channel> LindbladGenerator::channels_at(double t) const {
  std::vector<Channel> out;
  out.reserve(terms_.size());
  for (const Term& term : terms_) {
    Channel ch{term.rate, {}};
    jump_at(term, t, ch.jump);
    out.push_back(std::move(ch));
  }
  return out;
}

void LindbladGenerator::apply(double t, const ComplexMatrix& rho, ComplexMatrix& out,
                              Workspace& ws) const {
  out.setZero(dim_, dim_);
  for (const Term& term : terms_) {
    jump_at(term, t, ws.jump);
    ws.jump_dag_jump.noalias() = ws.jump.adjoint() * ws.jump;
    out.noalias() -= (0.5 * term.rate) * (ws.jump_dag_jump * rho);
    out.noalias() -= (0.5 * term.rate) * (rho * ws.jump_dag_jump);
    ws.tmp.noalias() = ws.jump * rho;
    out.noalias() += term.rate * (ws.tmp * ws.jump.adjoint());
  }
}

ComplexMatrix LindbladGenerator::apply(double t, const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw ArgumentError("LindbladGenerator::apply: rho dimension mismatch");
  Workspace ws;
  ComplexMatrix out;
  apply(t, rho, out, ws);
  return out;
}

Physicality physicality(const ComplexMatrix& rho) {
  Physicality p;
  p.trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
  p.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  p.min_eigenvalue = solver.eigenvalues().minCoeff();
  return p;
}

void PhysicalityStats::absorb(const Physicality& p) {
  max_trace_drift = std::max(max_trace_drift, p.trace_drift);
  max_hermiticity = std::max(max_hermiticity, p.hermiticity);
  min_eigenvalue = std::min(min_eigenvalue, p.min_eigenvalue);
}

void PhysicalityStats::absorb(const PhysicalityStats& other) {
  max_trace_drift = std::max(max_trace_drift, other.max_trace_drift);
  max_hermiticity = std::max(max_hermiticity, other.max_hermiticity);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
}

bool PhysicalityStats::within(double trace_tol, double herm_tol, double positivity_tol) const {
  return max_trace_drift <= trace_tol && max_hermiticity <= herm_tol &&
         min_eigenvalue >= -positivity_tol;
}

void require_density_matrix(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw ArgumentError("density matrix must be square and non-empty");
  if (!rho.allFinite()) throw ArgumentError("density matrix has non-finite entries");
  const Physicality p = physicality(rho);
  if (p.hermiticity > kHermiticityTol) throw ArgumentError("density matrix is not Hermitian");
  if (p.trace_drift > kTraceTol) throw ArgumentError("density matrix trace differs from 1");
  if (p.min_eigenvalue < -kPositivityTol)
    throw ArgumentError("density matrix has a negative eigenvalue");
}

ComplexMatrix pure_state(const StateVector& psi) { return psi * psi.adjoint(); }

ComplexMatrix maximally_mixed(int dim) {
  if (dim < 1) throw ArgumentError("maximally_mixed: dimension must be positive");
  return ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

StateFamily StateFamily::constant(const StateVector& psi) {
  const StateVector zero = StateVector::Zero(psi.size());
  return {[psi](double) { return psi; }, [zero](double) { return zero; }};
}

const std::vector<Complex>& Trajectory::observable(std::string_view name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return observables[k];
  throw ArgumentError("no tracked observable named '" + std::string(name) + "'");
}

std::size_t auto_stride(std::size_t n_steps, std::size_t max_samples) {
  if (max_samples == 0) max_samples = 1;
  return std::max<std::size_t>(1, (n_steps + max_samples - 1) / max_samples);
}

Complex coherence(const ComplexMatrix& rho, const StateVector& bra, const StateVector& ket) {
  return bra.dot(rho * ket);
}

Trajectory evolve_me(const LindbladGenerator& gen, const ComplexMatrix& rho0, double t0,
                     double t1, const EvolveOptions& opts,
                     std::span<const TrackedCoherence> tracked) {
  require_density_matrix(rho0);
  if (rho0.rows() != gen.dim()) throw ArgumentError("evolve_me: rho0 dimension mismatch");
  if (!(opts.step > 0.0)) throw ArgumentError("evolve_me: step must be positive");

  const std::size_t n_steps = qcore::rk4_step_count(t0, t1, opts.step);
  const std::size_t stride = opts.stride == 0 ? auto_stride(n_steps) : opts.stride;

  Trajectory traj;
  const std::size_t expected = n_steps / stride + 2;
  traj.times.reserve(expected);
  if (opts.keep_states) traj.states.reserve(expected);
  for (const TrackedCoherence& tc : tracked) {
    traj.names.push_back(tc.name);
    traj.observables.emplace_back().reserve(expected);
  }

  LindbladGenerator::Workspace ws;
  auto rhs = [&](double t, const ComplexMatrix& rho, ComplexMatrix& out) {
    gen.apply(t, rho, out, ws);
  };
  auto observe = [&](std::size_t, double t, const ComplexMatrix& rho) {
    const Physicality p = physicality(rho);
    if (p.trace_drift > opts.abort_trace_drift || p.min_eigenvalue < opts.abort_min_eigenvalue)
      throw NumericError("evolve_me: density matrix left the physical set at t = " +
                             std::to_string(t),
                         t);
    traj.physicality.absorb(p);
    traj.times.push_back(t);
    if (opts.keep_states) traj.states.push_back(rho);
    for (std::size_t k = 0; k < tracked.size(); ++k)
      traj.observables[k].push_back(coherence(rho, tracked[k].bra.at(t), tracked[k].ket.at(t)));
  };
  qcore::rk4_integrate(rhs, ComplexMatrix(rho0), t0, t1, opts.step, stride, observe);
  return traj;
}

Complex coherence_rate(const LindbladGenerator& gen, double t, const ComplexMatrix& rho,
                       const TrackedCoherence& tracked) {
  const StateVector bra = tracked.bra.at(t);
  const StateVector ket = tracked.ket.at(t);
  Complex rate = coherence(gen.apply(t, rho), bra, ket);
  if (tracked.bra.rate) rate += coherence(rho, tracked.bra.rate(t), ket);
  if (tracked.ket.rate) rate += coherence(rho, bra, tracked.ket.rate(t));
  return rate;
}

double fidelity_pure(const ComplexMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size())
    throw ArgumentError("fidelity_pure: dimension mismatch");
  const double f = coherence(rho, psi, psi).real();
  return std::clamp(f, 0.0, 1.0);
}

SteadyStateReport steady_state_report(const bath::SqueezingParams& p, const ComplexMatrix& rho0,
                                      double t_max, double step, std::size_t stride) {
  if (rho0.rows() != 3) throw ArgumentError("steady_state_report: expects a three-level state");
  LindbladGenerator gen(3);
  gen.add_static_channel(p.gamma, bath::dressed_operator(p, bath::ladder_operator(3)));
  const StateVector dark = bath::dark_state(p);

  EvolveOptions opts;
  opts.step = step;
  opts.stride = stride;
  opts.keep_states = true;
  const Trajectory traj = evolve_me(gen, rho0, 0.0, t_max, opts);

  SteadyStateReport report;
  report.times = traj.times;
  report.fidelity.reserve(traj.states.size());
  for (const ComplexMatrix& rho : traj.states) report.fidelity.push_back(fidelity_pure(rho, dark));
  report.final_fidelity = report.fidelity.back();
  report.physicality = traj.physicality;
  return report;
}

ComplexMatrix liouvillian_matrix(std::span<const Channel> channels, int dim) {
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix out = ComplexMatrix::Zero(dim * dim, dim * dim);
  // vec(A rho B) = (B^T (x) A) vec(rho)
  for (const Channel& ch : channels) {
    if (ch.jump.rows() != dim || ch.jump.cols() != dim)
      throw ArgumentError("liouvillian_matrix: jump operator dimension mismatch");
    const ComplexMatrix jdj = ch.jump.adjoint() * ch.jump;
    out += ch.rate * qcore::kron(ch.jump.conjugate(), ch.jump);
    out -= 0.5 * ch.rate * qcore::kron(id, jdj);
    out -= 0.5 * ch.rate * qcore::kron(jdj.transpose(), id);
  }
  return out;
}

int stationary_state_count(std::span<const Channel> channels, int dim, double tol) {
  const ComplexMatrix l = liouvillian_matrix(channels, dim);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(l, false);
  if (solver.info() != Eigen::Success)
    throw NumericError("stationary_state_count: eigensolver did not converge", 0.0);
  int count = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    if (std::abs(solver.eigenvalues()(k)) < tol) ++count;
  return count;
}

}  // namespace dissgeo::lindblad
