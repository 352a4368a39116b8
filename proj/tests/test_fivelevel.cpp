#include <doctest.h>

#include <random>

#include "dissgeo/bath.hpp"
#include "dissgeo/fivelevel.hpp"
#include "dissgeo/fourlevel.hpp"
#include "dissgeo/geomphase.hpp"
#include "test_support.hpp"

using namespace dissgeo;
using namespace dissgeo::fivelevel;
using dissgeo::test::max_abs;

namespace {

const bath::SqueezingParams kR1 = bath::make_squeezing(1.0, 0.0, 1.0);
const bath::SqueezingParams kR05 = bath::make_squeezing(0.5, 0.0, 1.0);

const FiveLevelRun& fast_run() {
  static const FiveLevelRun run = run_full_loop5(kR1, kR05, bath::make_schedule(0.0, 1e-2, 1));
  return run;
}

// Linear-polarization angle of a Jones vector (H, V) after removing the global phase.
double jones_angle(Complex h, Complex v) {
  const Complex global = std::abs(h) > std::abs(v) ? h / std::abs(h) : v / std::abs(v);
  double angle = std::atan2((v / global).real(), (h / global).real());
  if (angle < 0) angle += kPi;
  if (angle >= kPi) angle -= kPi;
  return angle;
}

}  // namespace

TEST_CASE("build_K") {
  const auto same = build_K(kR1, kR1, 1e-3);
  CHECK(std::abs(same.matrix(0, 0)) == 0.0);

  const auto k = build_K(kR1, kR05, 1e-3);
  CHECK(std::abs(k.matrix(0, 0) - 1.911260224149029e-4) <= 1e-15);
  CHECK(max_abs(k.g1 + fourlevel::build_G(kR1, 1e-3).matrix.conjugate()) == 0.0);
  CHECK(max_abs(k.g2 - fourlevel::build_G(kR05, 1e-3).matrix) == 0.0);
  CHECK_THROWS_AS(build_K(kR1, kR05, 0.0), ArgumentError);
}

TEST_CASE("K spectrum is the set of pairwise sums") {
  const auto k = build_K(kR1, kR05, 1e-2);
  const auto ek = qcore::eig_small(k.matrix).values;
  const auto e1 = qcore::eig_small(k.g1).values;
  const auto e2 = qcore::eig_small(k.g2).values;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      double nearest = 1e300;
      for (Eigen::Index m = 0; m < 4; ++m) nearest = std::min(nearest, std::abs(ek(m) - (e1(i) + e2(j))));
      CHECK(nearest <= 1e-10);
    }
}

TEST_CASE("Kronecker sum matches the explicit K over random draws") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> r(0.0, 2.0), g(0.5, 2.0), lpd(-4.0, -1.0);
  for (int k = 0; k < 100; ++k) {
    const auto p1 = bath::make_squeezing(r(rng), 0.0, g(rng));
    const auto p2 = bath::make_squeezing(r(rng), 0.0, g(rng));
    const double pd = std::pow(10.0, lpd(rng));
    const auto kron = build_K(p1, p2, pd).matrix;
    CHECK(max_abs(kron - explicit_K(p1, p2, pd)) <= 1e-14 * std::max(1.0, max_abs(kron)));
  }
}

TEST_CASE("printed K differs from the Kronecker sum only in the (3,3) damping") {
  const auto p1 = bath::make_squeezing(1.0, 0.0, 1.0);
  const auto p2 = bath::make_squeezing(0.5, 0.0, 1.0);
  ComplexMatrix printed = explicit_K(p1, p2, 1e-3);
  printed(2, 2) = Complex(printed(2, 2).real(), -0.5 * p2.gamma_tilde);
  ComplexMatrix diff = printed - build_K(p1, p2, 1e-3).matrix;
  CHECK(std::abs(diff(2, 2)) == doctest::Approx(0.5 * (p1.gamma_tilde - p2.gamma_tilde)));
  diff(2, 2) = 0.0;
  CHECK(max_abs(diff) <= 1e-15);
}

TEST_CASE("polarization_readout") {
  CHECK(polarization_readout(0.0) == 0.0);
  CHECK(polarization_readout(kPi) == doctest::Approx(kPi / 2));
  CHECK(polarization_readout(1.2008802158569939) == doctest::Approx(0.60044010792849696));
  CHECK(polarization_readout(-1.0) == doctest::Approx(kPi - 0.5));

  // |R> = (|H> + i|V>)/sqrt2, |L> = (|H> - i|V>)/sqrt2
  for (double delta : {0.0, 0.4, 1.20088, kPi, 4.0, -2.5}) {
    const Complex e = std::polar(1.0, delta);
    const Complex h = (1.0 + e) / std::sqrt(2.0);
    const Complex v = (kI - kI * e) / std::sqrt(2.0);
    CHECK(std::abs(geomphase::wrap_phase(2 * (jones_angle(h, v) - polarization_readout(delta))) ) <= 1e-12);
  }
}

TEST_CASE("operator identities behind the reduced system") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> r(0.0, 3.0), phi(0.0, kTwoPi);
  for (int k = 0; k < 100; ++k) {
    const auto p1 = bath::make_squeezing(r(rng), phi(rng), 1.0);
    const auto p2 = bath::make_squeezing(r(rng), phi(rng), 1.0);
    CHECK(operator_identity_residual5(p1, p2) <= 1e-12);
  }
}

TEST_CASE("identical channels give no relative phase") {
  const auto run = run_full_loop5(kR1, kR1, bath::make_schedule(0.0, 1e-2, 1));
  CHECK(std::abs(run.phase.geometric_phase) <= 1e-6);
  CHECK(run.polarization_angle <= 1e-6);
}

TEST_CASE("five-level run follows exp(-iKt) v(0)") {
  const auto& run = fast_run();
  CHECK(run.max_reduced_deviation <= 1e-6);
  CHECK(run.closure_residual <= 1e-8);
  CHECK(closure_residual5(run) == run.closure_residual);
  CHECK(run.trajectory.physicality.within());
  CHECK(std::abs(run.trajectory.observable("v11").front() - 0.5) <= 1e-15);

  const double delta = geomphase::analytic_chi(1.0) - geomphase::analytic_chi(0.5);
  CHECK(std::abs(run.phase.geometric_phase + delta) <= 1e-3);
  CHECK(std::abs(run.polarization_angle - polarization_readout(delta)) <= 5e-4);
}

TEST_CASE("visibility loss adds over channels") {
  const auto& run = fast_run();
  ComplexVector e0(2);
  e0 << 1.0, 0.0;
  const double t = kTwoPi / 1e-2;
  const double loss1 = 1.0 - std::abs(fourlevel::reduced_solve(fourlevel::build_G(kR1, 1e-2), e0, t)(0));
  const double loss2 = 1.0 - std::abs(fourlevel::reduced_solve(fourlevel::build_G(kR05, 1e-2), e0, t)(0));
  const double loss = 1.0 - run.phase.visibility;
  CHECK(std::abs(loss - (loss1 + loss2)) <= 0.05 * (loss1 + loss2));
}

TEST_CASE("measured phase is independent of the base phases") {
  const auto shifted = run_full_loop5(kR1, kR05, bath::make_schedule(0.4, 1e-2, 1), 0.0, 2.1);
  CHECK(std::abs(shifted.phase.geometric_phase - fast_run().phase.geometric_phase) <= 1e-6);
  CHECK(shifted.closure_residual <= 1e-8);
}
