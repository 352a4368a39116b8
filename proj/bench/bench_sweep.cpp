// Serial reference vs OpenMP kernels for the sweep and verify drivers.
// Usage: bench_sweep [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "dissgeo/bath.hpp"
#include "dissgeo/sweep.hpp"

using namespace dissgeo;

template <class F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  const auto p = bath::make_squeezing(1.0, 0.0, 1.0);
  const std::vector<double> speeds = {1e-2, 1.5e-2, 2e-2, 3e-2, 4e-2, 5e-2, 6e-2, 8e-2};

  std::vector<sweep::SweepRow> a, b;
  const double ts = seconds([&] { a = sweep::adiabatic_sweep_serial(p, speeds); });
  const double tp = seconds([&] { b = sweep::adiabatic_sweep(p, speeds, sweep::default_step_rule, threads); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a[i].visibility_loss == b[i].visibility_loss && a[i].phase_error == b[i].phase_error;
  std::printf("sweep   %zu points  serial %.3f s  parallel(%d) %.3f s  speedup %.2fx  %s\n",
              speeds.size(), ts, threads, tp, ts / tp, same ? "identical" : "MISMATCH");

  sweep::VerifyReport vs, vp;
  const double vts = seconds([&] { vs = sweep::verify_identities_serial(7, 2000); });
  const double vtp = seconds([&] { vp = sweep::verify_identities(7, 2000, threads); });
  bool vsame = true;
  for (std::size_t i = 0; i < vs.checks.size(); ++i)
    vsame = vsame && vs.checks[i].max_residual == vp.checks[i].max_residual;
  std::printf("verify  2000 draws  serial %.3f s  parallel(%d) %.3f s  speedup %.2fx  %s\n", vts,
              threads, vtp, vts / vtp, vsame ? "identical" : "MISMATCH");
  return same && vsame ? 0 : 1;
}
