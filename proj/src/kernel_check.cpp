#include "groen/kernel_check.hpp"

#include <cmath>
#include <stdexcept>

#include "groen/errors.hpp"
#include "groen/spectra.hpp"
#include "groen/special_functions.hpp"

namespace groen {

KernelGrid KernelGrid::make(double half_width, int count) {
  if (!(half_width > 0.0)) throw std::invalid_argument("KernelGrid: half_width must be positive");
  if (count < 2) throw std::invalid_argument("KernelGrid: need at least two points");
  KernelGrid g;
  g.half_width = half_width;
  g.count = count;
  g.points.resize(count);
  const double h = 2.0 * half_width / (count - 1);
  for (int i = 0; i < count / 2; ++i) {
    double x = -half_width + i * h;
    g.points[i] = x;
    g.points[count - 1 - i] = -x; // exact mirror symmetry
  }
  if (count % 2 == 1) g.points[count / 2] = 0.0;
  return g;
}

KernelGrid default_grid(double beta, double gamma, double hbar) {
  double ell = std::sqrt(beta * hbar / gamma);
  return KernelGrid::make(8.0 * std::max(ell, beta), 2048);
}

double coordinate_kernel(double x, double y, double beta, double gamma, double hbar) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("coordinate_kernel: scales must be positive");
  double sum = x + y, diff = x - y;
  return std::exp(-sum * sum / (4.0 * beta * beta) -
                  gamma * gamma * diff * diff / (4.0 * hbar * hbar)) /
         (beta * std::sqrt(M_PI));
}

namespace {

// shared trapezoid machinery; `parallel` switches the OpenMP driver on
std::vector<double> apply_kernel_impl(int n, double beta, double gamma, double hbar,
                                      const KernelGrid& grid, bool parallel) {
  if (n < 0) throw std::invalid_argument("apply_kernel: negative index");
  const int count = grid.count;
  if (count < 2 || int(grid.points.size()) != count)
    throw std::invalid_argument("apply_kernel: malformed grid");
  const double ell = std::sqrt(beta * hbar / gamma);
  const double h = grid.step();

  std::vector<double> phi(count);
  for (int i = 0; i < count; ++i)
    phi[i] = oscillator_eigenfunction(n, grid.points[i], ell);

  // gate: the grid must resolve and contain phi_n
  double norm = 0.0;
  for (int i = 0; i < count; ++i) {
    double w = (i == 0 || i == count - 1) ? 0.5 : 1.0;
    norm += w * phi[i] * phi[i];
  }
  norm *= h;
  if (std::abs(norm - 1.0) > 1e-8)
    throw numerical_error("apply_kernel: grid fails the eigenfunction normalisation gate");

  std::vector<double> out(count);
  auto row = [&](int i) {
    double acc = 0.0;
    double x = grid.points[i];
    for (int j = 0; j < count; ++j) {
      double w = (j == 0 || j == count - 1) ? 0.5 : 1.0;
      acc += w * coordinate_kernel(x, grid.points[j], beta, gamma, hbar) * phi[j];
    }
    return acc * h;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) out[i] = row(i);
  } else {
    for (int i = 0; i < count; ++i) out[i] = row(i);
  }
  return out;
}

} // namespace

std::vector<double> apply_kernel(int n, double beta, double gamma, double hbar,
                                 const KernelGrid& grid) {
#ifdef _OPENMP
  return apply_kernel_impl(n, beta, gamma, hbar, grid, true);
#else
  return apply_kernel_impl(n, beta, gamma, hbar, grid, false);
#endif
}

std::vector<double> apply_kernel_serial(int n, double beta, double gamma, double hbar,
                                        const KernelGrid& grid) {
  return apply_kernel_impl(n, beta, gamma, hbar, grid, false);
}

double hermite_identity_residual(int n, double s, const KernelGrid& grid) {
  if (!(s > 0.0)) throw std::invalid_argument("hermite_identity_residual: s must be positive");
  const double beta = std::sqrt(s), gamma = std::sqrt(s), hbar = 1.0;
  std::vector<double> applied = apply_kernel(n, beta, gamma, hbar, grid);
  const double lambda = gaussian_eigenvalue(n, s);
  const double ell = std::sqrt(beta * hbar / gamma);
  double worst = 0.0, peak = 0.0;
  for (int i = 0; i < grid.count; ++i) {
    double phi = oscillator_eigenfunction(n, grid.points[i], ell);
    worst = std::max(worst, std::abs(applied[i] - lambda * phi));
    peak = std::max(peak, std::abs(phi));
  }
  return worst / peak;
}

} // namespace groen
