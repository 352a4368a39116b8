#include "dissgeo/bath.hpp"

#include <string>

namespace dissgeo::bath {

namespace {

struct ChannelLevels {
  int lower;  // |-1> or |-1'>
  int middle;
  int upper;  // |1> or |1'>
};

ChannelLevels channel_levels(int level_count, int channel) {
  if (level_count != 3 && level_count != 4 && level_count != 5)
    throw ArgumentError("level_count must be 3, 4 or 5, got " + std::to_string(level_count));
  if (channel == 1) return {0, 1, 2};
  if (channel == 2 && level_count == 5) return {3, 1, 4};
  throw ArgumentError("channel " + std::to_string(channel) + " is not defined for " +
                      std::to_string(level_count) + " levels");
}

}  // namespace

SqueezingParams make_squeezing(double r, double phi, double gamma) {
  if (!(r >= 0.0) || r > kMaxSqueezing)
    throw ArgumentError("squeezing amplitude r must lie in [0, 10], got " + std::to_string(r));
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ArgumentError("gamma must be positive, got " + std::to_string(gamma));
  if (!std::isfinite(phi)) throw ArgumentError("squeezing phase must be finite");

  SqueezingParams p;
  p.r = r;
  p.phi = phi;
  p.gamma = gamma;
  const double norm = std::sqrt(std::cosh(2.0 * r));
  p.c = std::cosh(r) / norm;
  p.s = std::sinh(r) / norm;
  p.gamma_tilde = gamma * std::cosh(2.0 * r);
  return p;
}

SqueezingParams with_phase(const SqueezingParams& p, double phi) {
  SqueezingParams q = p;
  q.phi = phi;
  return q;
}

BathMoments bath_moments(const SqueezingParams& p) {
  const double sh = std::sinh(p.r);
  return {sh * sh, std::polar(sh * std::cosh(p.r), p.phi)};
}

LoopSchedule make_schedule(double phi0, double phi_dot, int n_loops) {
  if (!(phi_dot > 0.0) || !std::isfinite(phi_dot))
    throw ArgumentError("phi_dot must be positive, got " + std::to_string(phi_dot));
  if (n_loops < 1) throw ArgumentError("n_loops must be at least 1");
  if (!std::isfinite(phi0)) throw ArgumentError("phi0 must be finite");
  return {phi0, phi_dot, n_loops};
}

double phase_at(const LoopSchedule& sched, double t) {
  const double T = sched.duration();
  const double slack = 1e-12 * T;
  if (t < -slack || t > T + slack)
    throw ArgumentError("phase_at: t = " + std::to_string(t) + " outside [0, " +
                        std::to_string(T) + "]");
  return sched.phi0 + sched.phi_dot * t;
}

ComplexMatrix ladder_operator(int level_count, int channel) {
  const ChannelLevels lv = channel_levels(level_count, channel);
  ComplexMatrix s = ComplexMatrix::Zero(level_count, level_count);
  s(lv.lower, lv.middle) = 1.0;
  s(lv.middle, lv.upper) = 1.0;
  return s;
}

ComplexMatrix dressed_operator(const SqueezingParams& p, const ComplexMatrix& s_op) {
  return std::cosh(p.r) * s_op + std::polar(std::sinh(p.r), p.phi) * s_op.adjoint();
}

StateVector dark_state(const SqueezingParams& p, int level_count, int channel) {
  const ChannelLevels lv = channel_levels(level_count, channel);
  StateVector v = StateVector::Zero(level_count);
  v(lv.lower) = p.c;
  v(lv.upper) = -std::polar(p.s, p.phi);
  return v;
}

StateVector orthogonal_state(const SqueezingParams& p, int level_count, int channel) {
  const ChannelLevels lv = channel_levels(level_count, channel);
  StateVector v = StateVector::Zero(level_count);
  v(lv.lower) = p.s;
  v(lv.upper) = std::polar(p.c, p.phi);
  return v;
}

StateVector dark_state_dphi(const SqueezingParams& p, int level_count, int channel) {
  const ChannelLevels lv = channel_levels(level_count, channel);
  StateVector v = StateVector::Zero(level_count);
  v(lv.upper) = -kI * std::polar(p.s, p.phi);
  return v;
}

StateVector orthogonal_state_dphi(const SqueezingParams& p, int level_count, int channel) {
  const ChannelLevels lv = channel_levels(level_count, channel);
  StateVector v = StateVector::Zero(level_count);
  v(lv.upper) = kI * std::polar(p.c, p.phi);
  return v;
}

StateVector basis_state(int dim, int index) {
  if (index < 0 || index >= dim) throw ArgumentError("basis_state: index out of range");
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace dissgeo::bath
