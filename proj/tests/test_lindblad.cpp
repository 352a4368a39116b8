#include <doctest.h>

#include <random>

#include "dissgeo/bath.hpp"
#include "dissgeo/lindblad.hpp"
#include "test_support.hpp"

using namespace dissgeo;
using namespace dissgeo::lindblad;
using dissgeo::test::max_abs;

namespace {

std::vector<Channel> static_channels(const bath::SqueezingParams& p) {
  return {{p.gamma, bath::dressed_operator(p, bath::ladder_operator(3))}};
}

// vec(rho) column-stacked
ComplexVector vec(const ComplexMatrix& m) { return Eigen::Map<const ComplexVector>(m.data(), m.size()); }

}  // namespace

TEST_CASE("dissipator annihilates the dark state") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> r(0.0, 3.0), phi(0.0, kTwoPi), g(0.1, 5.0);
  for (int k = 0; k < 100; ++k) {
    const auto p = bath::make_squeezing(r(rng), phi(rng), g(rng));
    const auto out = dissipator_apply(pure_state(bath::dark_state(p)), static_channels(p));
    CHECK(max_abs(out) <= 1e-12);
  }
}

TEST_CASE("zero squeezing is a pure lowering cascade") {
  const auto p = bath::make_squeezing(0.0, 0.0, 0.7);
  const auto out = dissipator_apply(pure_state(bath::basis_state(3, 2)), static_channels(p));
  CHECK(out(2, 2).real() == doctest::Approx(-0.7));
  CHECK(out(1, 1).real() == doctest::Approx(0.7));
  CHECK(std::abs(out(0, 0)) == 0.0);
}

TEST_CASE("dissipator output is traceless and Hermitian") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> r(0.0, 3.0), phi(0.0, kTwoPi);
  for (int k = 0; k < 100; ++k) {
    const auto p = bath::make_squeezing(r(rng), phi(rng), 1.0);
    const ComplexMatrix rho = dissgeo::test::random_density(rng, 3);
    const ComplexMatrix out = dissipator_apply(rho, static_channels(p));
    CHECK(std::abs(out.trace()) <= 1e-12);
    CHECK(max_abs(out - out.adjoint()) <= 1e-12);
  }
  CHECK_THROWS_AS(dissipator_apply(ComplexMatrix::Identity(4, 4) / 4.0,
                                   static_channels(bath::make_squeezing(1, 0, 1))),
                  ArgumentError);
}

TEST_CASE("superoperator route agrees with the matrix route") {
  std::mt19937_64 rng(33);
  const auto p = bath::make_squeezing(0.9, 2.1, 1.3);
  const auto channels = static_channels(p);
  const ComplexMatrix rho = dissgeo::test::random_density(rng, 3);
  const ComplexVector via_super = liouvillian_matrix(channels, 3) * vec(rho);
  CHECK((via_super - vec(dissipator_apply(rho, channels))).norm() <= 1e-12);
}

TEST_CASE("three-level manifold has a unique stationary state") {
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    const auto p = bath::make_squeezing(r, 0.6, 1.0);
    CHECK(stationary_state_count(static_channels(p), 3) == 1);
  }
}

TEST_CASE("generator rebuilds jumps along the phase ramp") {
  const auto p = bath::make_squeezing(0.8, 0.0, 1.2);
  LindbladGenerator gen(3);
  gen.add_channel({p.gamma, bath::ladder_operator(3), p.r, 0.25, 0.1});
  const double t = 3.0;
  const auto at_t = bath::with_phase(p, 0.25 + 0.1 * t);
  const auto channels = gen.channels_at(t);
  REQUIRE(channels.size() == 1);
  CHECK(max_abs(channels[0].jump - bath::dressed_operator(at_t, bath::ladder_operator(3))) <= 1e-15);

  std::mt19937_64 rng(34);
  const ComplexMatrix rho = dissgeo::test::random_density(rng, 3);
  CHECK(max_abs(gen.apply(t, rho) - dissipator_apply(rho, channels)) <= 1e-14);

  CHECK_THROWS_AS(gen.add_channel({0.0, bath::ladder_operator(3), 0.1, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(gen.add_channel({1.0, bath::ladder_operator(5), 0.1, 0, 0}), ArgumentError);
}

TEST_CASE("fidelity_pure") {
  const auto psi = bath::dark_state(bath::make_squeezing(1.0, 0.3, 1.0));
  CHECK(fidelity_pure(pure_state(psi), psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity_pure(maximally_mixed(3), psi) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto perp = bath::orthogonal_state(bath::make_squeezing(1.0, 0.3, 1.0));
  CHECK(fidelity_pure(pure_state(perp), psi) <= 1e-15);
  CHECK_THROWS_AS(fidelity_pure(maximally_mixed(4), psi), ArgumentError);
}

TEST_CASE("evolve_me") {
  SUBCASE("no channels leaves rho unchanged") {
    std::mt19937_64 rng(35);
    const ComplexMatrix rho = dissgeo::test::random_density(rng, 3);
    LindbladGenerator gen(3);
    EvolveOptions opts;
    opts.step = 0.1;
    const auto traj = evolve_me(gen, rho, 0.0, 2.0, opts);
    CHECK(max_abs(traj.states.back() - rho) == 0.0);
  }
  SUBCASE("relaxation into the dark state") {
    const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
    LindbladGenerator gen(3);
    gen.add_static_channel(p.gamma, bath::dressed_operator(p, bath::ladder_operator(3)));
    EvolveOptions opts;
    opts.step = 1e-2;
    const auto traj = evolve_me(gen, pure_state(bath::basis_state(3, 1)), 0.0, 50.0, opts);
    // exp(L t) of the vectorized Liouvillian, evaluated independently; the
    // slowest relaxation rate is gamma e^{-2r}, so |0> is not yet at 0.999 here
    CHECK(fidelity_pure(traj.states.back(), bath::dark_state(p)) ==
          doctest::Approx(0.9988692951614296).epsilon(1e-9));
    CHECK(traj.physicality.within());
  }
  SUBCASE("dark state is stationary") {
    const auto p = bath::make_squeezing(0.7, 1.9, 1.0);
    LindbladGenerator gen(3);
    gen.add_static_channel(p.gamma, bath::dressed_operator(p, bath::ladder_operator(3)));
    EvolveOptions opts;
    opts.step = 1e-2;
    opts.stride = 10;
    const auto dark = bath::dark_state(p);
    const auto traj = evolve_me(gen, pure_state(dark), 0.0, 20.0, opts);
    for (const auto& rho : traj.states) CHECK(fidelity_pure(rho, dark) >= 1.0 - 1e-9);
  }
  SUBCASE("tracked coherence sampling and lookup") {
    LindbladGenerator gen(3);
    EvolveOptions opts;
    opts.step = 0.1;
    opts.stride = 5;
    const std::vector<TrackedCoherence> tracked = {
        {"p00", StateFamily::constant(bath::basis_state(3, 0)), StateFamily::constant(bath::basis_state(3, 0))}};
    const auto traj = evolve_me(gen, pure_state(bath::basis_state(3, 0)), 0.0, 1.0, opts, tracked);
    CHECK(traj.times.size() == 3);
    CHECK(traj.observable("p00").back() == Complex(1.0, 0.0));
    CHECK_THROWS_AS(traj.observable("missing"), ArgumentError);
  }
  SUBCASE("invalid inputs") {
    LindbladGenerator gen(3);
    EvolveOptions opts;
    opts.step = 0.1;
    CHECK_THROWS_AS(evolve_me(gen, ComplexMatrix::Identity(3, 3), 0.0, 1.0, opts), ArgumentError);
    opts.step = 0.0;
    CHECK_THROWS_AS(evolve_me(gen, maximally_mixed(3), 0.0, 1.0, opts), ArgumentError);
  }
  SUBCASE("a step far too large trips the physicality guard") {
    const auto p = bath::make_squeezing(2.0, 0.0, 1.0);
    LindbladGenerator gen(3);
    gen.add_static_channel(p.gamma, bath::dressed_operator(p, bath::ladder_operator(3)));
    EvolveOptions opts;
    opts.step = 2.0;
    CHECK_THROWS_AS(evolve_me(gen, pure_state(bath::basis_state(3, 1)), 0.0, 40.0, opts), NumericError);
  }
}

TEST_CASE("steady_state_report") {
  const auto vac = steady_state_report(bath::make_squeezing(0.0, 0.0, 1.0), pure_state(bath::basis_state(3, 0)),
                                       10.0, 1e-2);
  CHECK(vac.final_fidelity == doctest::Approx(1.0).epsilon(1e-12));

  const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
  // Liouvillian-exponential reference fidelities at t = 50 for |-1>, |0>, |1>
  const double expected[] = {0.9995694309014296, 0.9988692951614296, 0.999257672324743};
  for (int level : {0, 1, 2}) {
    const auto report = steady_state_report(p, pure_state(bath::basis_state(3, level)), 50.0, 1e-2);
    CHECK(report.final_fidelity == doctest::Approx(expected[level]).epsilon(1e-9));
    CHECK(report.times.back() == 50.0);
    CHECK(report.fidelity.size() == report.times.size());
    CHECK(report.physicality.within());
  }
  const auto longer = steady_state_report(p, pure_state(bath::basis_state(3, 1)), 60.0, 1e-2);
  CHECK(longer.final_fidelity == doctest::Approx(0.9997078569335692).epsilon(1e-9));
}

TEST_CASE("auto_stride bounds the sample count") {
  CHECK(auto_stride(100) == 1);
  CHECK(auto_stride(10000) == 1);
  CHECK(auto_stride(10001) == 2);
  CHECK(auto_stride(2'363'000) == 237);
}
