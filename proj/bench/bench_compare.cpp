// Times the OpenMP kernels against the serial reference implementations.
// The parallel paths are written to be bitwise deterministic, so the delta
// column must read exactly 0 for any thread count.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "groen/densities.hpp"
#include "groen/kernel_check.hpp"
#include "groen/quantizer.hpp"
#include "groen/spectra.hpp"

using namespace groen;

namespace {

double time_best(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count());
  }
  return best;
}

// The same phase-space sampling quantize_general uses for a uniform box,
// rebuilt here so the assembly kernels can be timed in isolation.
std::vector<detail::PhasePoint> box_points(int n_max) {
  GeneralDensity box = uniform_box_density(1.0, 1.0);
  RulePair rules = default_rule_pair(box.support_box, n_max);
  std::vector<detail::PhasePoint> points;
  const double beta = 1.0, gamma = 1.0, hbar = 1.0;
  for (std::size_t i = 0; i < rules.q_rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rules.p_rule.nodes.size(); ++j) {
      double q = rules.q_rule.nodes[i], p = rules.p_rule.nodes[j];
      double w = rules.q_rule.weights[i] * rules.p_rule.weights[j] * box.evaluate(q, p);
      if (w == 0.0) continue;
      std::complex<double> alpha(std::sqrt(gamma / beta) * q, std::sqrt(beta / gamma) * p);
      points.push_back({alpha / std::sqrt(2.0 * hbar), w});
    }
  return points;
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n\n");
#endif
  std::printf("%-34s %10s %10s %12s\n", "kernel", "serial", "parallel", "max |delta|");

  {
    const int n_max = 16;
    std::vector<detail::PhasePoint> points = box_points(n_max);
    detail::AssemblyResult serial, parallel;
    double ts = time_best([&] { serial = detail::assemble_fock_matrix_serial(points, n_max); }, 3);
    double tp = time_best([&] { parallel = detail::assemble_fock_matrix_omp(points, n_max); }, 3);
    double delta = 0.0;
    for (std::size_t i = 0; i < serial.entries.size(); ++i)
      delta = std::max(delta, std::abs(serial.entries[i] - parallel.entries[i]));
    std::printf("%-34s %9.4fs %9.4fs %12g\n", "fock assembly (dim 17, box)", ts, tp, delta);
  }
  {
    KernelGrid grid = default_grid(1.0, 1.0, 1.0);
    std::vector<double> serial, parallel;
    double ts = time_best([&] { serial = apply_kernel_serial(8, 1.0, 1.0, 1.0, grid); }, 3);
    double tp = time_best([&] { parallel = apply_kernel(8, 1.0, 1.0, 1.0, grid); }, 3);
    double delta = 0.0;
    for (std::size_t i = 0; i < serial.size(); ++i)
      delta = std::max(delta, std::abs(serial[i] - parallel[i]));
    std::printf("%-34s %9.4fs %9.4fs %12g\n", "integral kernel (n=8, 2048 pts)", ts, tp, delta);
  }
  {
    std::vector<double> grid(8);
    for (int i = 0; i < 8; ++i) grid[i] = (double((7 - i)) * 1.0 + i * 30.0) / 7.0;
    SweepResult one, two;
    double ts = time_best([&] { one = sweep(Family::uniform, grid, 384, 1); }, 2);
    double tp = time_best([&] { two = sweep(Family::uniform, grid, 384, 2); }, 2);
    double delta = 0.0;
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
      delta = std::max(delta, std::abs(one.rows[i].min_bound - two.rows[i].min_bound));
      delta = std::max(delta, std::abs(one.rows[i].max_bound - two.rows[i].max_bound));
    }
    std::printf("%-34s %9.4fs %9.4fs %12g\n", "bound sweep (8 rows, jobs 1 vs 2)", ts, tp, delta);
  }
  return 0;
}
