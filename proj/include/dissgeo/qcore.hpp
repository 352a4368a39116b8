#pragma once

// Small dense complex linear algebra and a fixed-step RK4 integrator.
// Everything here works on dims <= 8; no attempt is made to scale.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dissgeo/errors.hpp"

namespace dissgeo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace qcore {

inline constexpr double kEigResidualTol = 1e-10;
inline constexpr double kExpConditionLimit = 1e8;
inline constexpr std::size_t kMaxEigDim = 8;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Kronecker product a (x) b, with b varying fastest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  ComplexVector values;   // descending imaginary part, then ascending real part
  ComplexMatrix vectors;  // column k pairs with values[k]
};

/// Eigendecomposition of a small square matrix. Throws NumericError (carrying
/// the worst residual) when the solver fails or a pair misses
/// ||a v - lambda v|| <= residual_tol * ||a||.
EigenDecomposition eig_small(const ComplexMatrix& a,
                             double residual_tol = kEigResidualTol);

/// exp(-i a t) v0. Uses the eigenbasis of `a` unless it is ill-conditioned
/// (cond(V) > cond_limit), in which case it switches to expm_series.
ComplexVector matrix_exp_action(const ComplexMatrix& a, double t,
                                const ComplexVector& v0,
                                double cond_limit = kExpConditionLimit);

/// exp(m) by scaling and squaring of a truncated Taylor series.
ComplexMatrix expm_series(const ComplexMatrix& m);

/// Ratio of extreme singular values.
double condition_number(const ComplexMatrix& m);

/// Default integration step: min(0.01 / gamma_tilde_max, (t1 - t0) / 1e5).
double default_step(double gamma_tilde_max, double t0, double t1);

/// Number of RK4 steps rk4_integrate takes for the given span.
std::size_t rk4_step_count(double t0, double t1, double step);

namespace detail {
template <class State>
bool all_finite(const State& y) {
  return y.allFinite();
}
inline bool all_finite(const Complex& y) {
  return std::isfinite(y.real()) && std::isfinite(y.imag());
}
}  // namespace detail

/// Classical fixed-step RK4 on dy/dt = rhs(t, y). The last step is shortened
/// so the run ends exactly on t1. `observe(k, t, y)` fires at step 0, every
/// `stride` steps and at the final step. `rhs(t, y, dy)` writes into dy.
template <class State, class Rhs, class Observer>
State rk4_integrate(Rhs&& rhs, State y, double t0, double t1, double step,
                    std::size_t stride, Observer&& observe) {
  if (!(step > 0.0)) throw ArgumentError("rk4: step must be positive");
  if (!(t1 > t0)) throw ArgumentError("rk4: t1 must exceed t0");
  if (stride == 0) stride = 1;

  const std::size_t n = rk4_step_count(t0, t1, step);
  State k1 = y, k2 = y, k3 = y, k4 = y, tmp = y;
  observe(std::size_t{0}, t0, y);
  for (std::size_t k = 0; k < n; ++k) {
    const double ta = t0 + static_cast<double>(k) * step;
    const double tb = (k + 1 == n) ? t1 : t0 + static_cast<double>(k + 1) * step;
    const double h = tb - ta;
    const double tm = ta + 0.5 * h;

    rhs(ta, y, k1);
    tmp = y + (0.5 * h) * k1;
    rhs(tm, tmp, k2);
    tmp = y + (0.5 * h) * k2;
    rhs(tm, tmp, k3);
    tmp = y + h * k3;
    rhs(tb, tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!detail::all_finite(y))
      throw NumericError("rk4: non-finite state at t = " + std::to_string(tb), tb);
    if ((k + 1) % stride == 0 || k + 1 == n) observe(k + 1, tb, y);
  }
  return y;
}

template <class State>
struct Samples {
  std::vector<double> times;
  std::vector<State> values;
};

using LinearRhs = std::function<void(double, const ComplexVector&, ComplexVector&)>;

/// Integrates a vector ODE and records samples every `stride` steps
/// (always including both endpoints).
Samples<ComplexVector> rk4_evolve(const LinearRhs& rhs, const ComplexVector& y0,
                                  double t0, double t1, double step,
                                  std::size_t stride = 1);

}  // namespace qcore
}  // namespace dissgeo
