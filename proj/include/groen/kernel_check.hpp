#pragma once
#include <vector>

namespace groen {

// Symmetric coordinate grid used to discretise the integral operator check.
struct KernelGrid {
  std::vector<double> points; // strictly increasing, symmetric about 0
  double half_width = 0.0;
  int count = 0;

  static KernelGrid make(double half_width, int count);
  double step() const { return points[1] - points[0]; }
};

// Grid sized for the Gaussian of parameters (beta, gamma, hbar):
// half-width 8 max(l, beta) with l = sqrt(beta hbar / gamma), 2048 points.
KernelGrid default_grid(double beta, double gamma, double hbar);

// Coordinate-space kernel of the quantised Gaussian:
//   rho_K(x,y) = (beta sqrt(pi))^{-1} e^{-(x+y)^2/(4 beta^2)} e^{-gamma^2 (x-y)^2/(4 hbar^2)}.
double coordinate_kernel(double x, double y, double beta, double gamma, double hbar);

// Trapezoid evaluation of integral rho_K(x,y) phi_n(y) dy at every grid point.
// The grid is validated first (phi_n normalisation within 1e-8); failure
// raises numerical_error.  _serial is the reference kept for testing.
std::vector<double> apply_kernel(int n, double beta, double gamma, double hbar,
                                 const KernelGrid& grid);
std::vector<double> apply_kernel_serial(int n, double beta, double gamma, double hbar,
                                        const KernelGrid& grid);

// max over the grid of |apply_kernel(n) - lambda_n phi_n| / max|phi_n| for the
// canonical Gaussian beta = gamma = sqrt(s), hbar = 1.  Checks the eigenvalue
// identity against the closed form through a channel that never touches the
// Fock-basis machinery.
double hermite_identity_residual(int n, double s, const KernelGrid& grid);

} // namespace groen
