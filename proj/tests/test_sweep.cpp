#include <doctest.h>

#include <vector>

#include "dissgeo/bath.hpp"
#include "dissgeo/sweep.hpp"

using namespace dissgeo;
using namespace dissgeo::sweep;

TEST_CASE("parallel sweep matches the serial reference bit for bit") {
  const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
  const std::vector<double> speeds = {4e-2, 1e-2, 2e-2};
  const auto serial = adiabatic_sweep_serial(p, speeds);
  for (int jobs : {1, 3}) {
    const auto parallel = adiabatic_sweep(p, speeds, default_step_rule, jobs);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(parallel[i].phi_dot == speeds[i]);
      CHECK(parallel[i].phase_error == serial[i].phase_error);
      CHECK(parallel[i].visibility_loss == serial[i].visibility_loss);
      CHECK(parallel[i].predicted_loss == serial[i].predicted_loss);
    }
  }
}

TEST_CASE("visibility loss is linear in phi_dot") {
  const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
  const std::vector<double> speeds = {1e-2, 2e-2};
  const auto rows = adiabatic_sweep(p, speeds);
  const double ratio = rows[1].visibility_loss / rows[0].visibility_loss;
  CHECK(ratio >= 1.9);
  CHECK(ratio <= 2.1);
  for (const auto& row : rows) {
    CHECK(std::abs(row.phase_error) <= 1e-6);
    CHECK(std::abs(row.visibility_loss - row.predicted_loss) <= 1e-6);
  }
}

TEST_CASE("no squeezing, no loss") {
  const auto p = bath::make_squeezing(0.0, 0.0, 1.0);
  const std::vector<double> speeds = {2e-2, 4e-2};
  for (const auto& row : adiabatic_sweep(p, speeds)) {
    CHECK(row.visibility_loss <= 1e-9);
    CHECK(std::abs(row.phase_error) <= 1e-9);
  }
}

TEST_CASE("sweep rejects bad speeds") {
  const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
  const std::vector<double> speeds = {1e-2, 0.0};
  CHECK_THROWS_AS(adiabatic_sweep(p, speeds), ArgumentError);
  CHECK(adiabatic_sweep(p, std::vector<double>{}).empty());
}

TEST_CASE("verify_identities") {
  const auto report = verify_identities(7, 100, 4);
  CHECK(report.draws == 100);
  CHECK(report.checks.size() == 9);
  CHECK(report.all_passed());
  for (const auto& c : report.checks) CHECK_MESSAGE(c.passed(), c.name << " " << c.max_residual);

  const auto serial = verify_identities_serial(7, 100);
  for (std::size_t i = 0; i < serial.checks.size(); ++i)
    CHECK(serial.checks[i].max_residual == report.checks[i].max_residual);

  CHECK(verify_identities(8, 10).checks[0].max_residual !=
        verify_identities(7, 10).checks[0].max_residual);
  CHECK_THROWS_AS(verify_identities(7, 0), ArgumentError);
}
