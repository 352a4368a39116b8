#pragma once

// Lindblad dissipator and master-equation evolution in the interaction
// picture: d rho/dt = sum_i -(g_i/2) {R_i^dag R_i rho + rho R_i^dag R_i - 2 R_i rho R_i^dag}.
// There is no Hamiltonian term.

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dissgeo/bath.hpp"
#include "dissgeo/qcore.hpp"

namespace dissgeo::lindblad {

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = 1e-9;

struct Channel {
  double rate = 0.0;
  ComplexMatrix jump;
};

/// Right-hand side of the master equation for a fixed set of channels.
ComplexMatrix dissipator_apply(const ComplexMatrix& rho, std::span<const Channel> channels);

/// Channel whose jump operator follows a linear squeezing-phase ramp:
/// R(t) = S cosh r + e^{i (phi0 + phi_dot t)} S^dag sinh r.
struct DrivenChannel {
  double rate = 1.0;
  ComplexMatrix lowering;
  double r = 0.0;
  double phi0 = 0.0;
  double phi_dot = 0.0;
};

class LindbladGenerator {
 public:
  struct Workspace {
    ComplexMatrix jump, jump_dag_jump, tmp;
  };

  explicit LindbladGenerator(int dim);

  int dim() const { return dim_; }
  std::size_t channel_count() const { return terms_.size(); }

  void add_channel(const DrivenChannel& channel);
  void add_static_channel(double rate, const ComplexMatrix& jump);

  std::vector<Channel> channels_at(double t) const;

  /// out = d rho/dt at time t. Jump operators are rebuilt for every call.
  void apply(double t, const ComplexMatrix& rho, ComplexMatrix& out, Workspace& ws) const;
  ComplexMatrix apply(double t, const ComplexMatrix& rho) const;

 private:
  struct Term {
    double rate;
    ComplexMatrix fixed;    // S cosh r
    ComplexMatrix rotating; // S^dag sinh r, multiplied by e^{i phi(t)}
    double phi0;
    double phi_dot;
  };
  void jump_at(const Term& term, double t, ComplexMatrix& out) const;

  int dim_;
  std::vector<Term> terms_;
};

struct Physicality {
  double trace_drift = 0.0;     // |tr rho - 1|
  double hermiticity = 0.0;     // max_ij |rho_ij - conj(rho_ji)|
  double min_eigenvalue = 0.0;  // of the Hermitian part
};

Physicality physicality(const ComplexMatrix& rho);

struct PhysicalityStats {
  double max_trace_drift = 0.0;
  double max_hermiticity = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();

  void absorb(const Physicality& p);
  void absorb(const PhysicalityStats& other);
  bool within(double trace_tol = kTraceTol, double herm_tol = kHermiticityTol,
              double positivity_tol = kPositivityTol) const;
};

/// Throws ArgumentError if rho violates the density-matrix invariants.
void require_density_matrix(const ComplexMatrix& rho);

ComplexMatrix pure_state(const StateVector& psi);
ComplexMatrix maximally_mixed(int dim);

/// A time-dependent state together with its time derivative. `rate` may be
/// left empty for constant families.
struct StateFamily {
  std::function<StateVector(double)> at;
  std::function<StateVector(double)> rate;

  static StateFamily constant(const StateVector& psi);
};

/// Observable <bra(t)| rho(t) |ket(t)>.
struct TrackedCoherence {
  std::string name;
  StateFamily bra;
  StateFamily ket;
};

struct EvolveOptions {
  double step = 0.0;
  std::size_t stride = 0;  // 0: pick one that keeps <= 10^4 samples
  bool keep_states = true;
  double abort_trace_drift = 1e-6;
  double abort_min_eigenvalue = -1e-6;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;  // empty when keep_states is false
  std::vector<std::string> names;
  std::vector<std::vector<Complex>> observables;  // observables[k][sample]
  PhysicalityStats physicality;

  const std::vector<Complex>& observable(std::string_view name) const;
};

/// Stride that records at most `max_samples` points (plus the endpoint).
std::size_t auto_stride(std::size_t n_steps, std::size_t max_samples = 10000);

/// RK4 integration of the master equation from t0 to t1. Physicality is
/// checked at every sample; a violation beyond the abort thresholds throws
/// NumericError carrying the time.
Trajectory evolve_me(const LindbladGenerator& gen, const ComplexMatrix& rho0, double t0,
                     double t1, const EvolveOptions& opts,
                     std::span<const TrackedCoherence> tracked = {});

Complex coherence(const ComplexMatrix& rho, const StateVector& bra, const StateVector& ket);

/// Exact time derivative of a tracked coherence, from the master equation
/// and the analytic rates of the bra and ket families.
Complex coherence_rate(const LindbladGenerator& gen, double t, const ComplexMatrix& rho,
                       const TrackedCoherence& tracked);

/// <psi| rho |psi>, clamped to [0, 1].
double fidelity_pure(const ComplexMatrix& rho, const StateVector& psi);

struct SteadyStateReport {
  std::vector<double> times;
  std::vector<double> fidelity;
  double final_fidelity = 0.0;
  PhysicalityStats physicality;
};

/// Relaxation of a three-level state under the static channel (gamma, R(p)),
/// scored against the dark state of p.
SteadyStateReport steady_state_report(const bath::SqueezingParams& p, const ComplexMatrix& rho0,
                                      double t_max, double step, std::size_t stride = 0);

/// Column-stacked superoperator L with vec(d rho/dt) = L vec(rho).
ComplexMatrix liouvillian_matrix(std::span<const Channel> channels, int dim);

/// Number of Liouvillian eigenvalues with modulus below tol.
int stationary_state_count(std::span<const Channel> channels, int dim, double tol = 1e-9);

}  // namespace dissgeo::lindblad
