#pragma once
#include <vector>

namespace groen {

// Upward three-term recurrences are reliable in double precision up to roughly
// this degree; beyond it we refuse rather than silently lose digits.
inline constexpr int kRecurrenceCeiling = 200;

// Associated Laguerre polynomial L_n^k(x), integer k >= -n.
double laguerre(int n, int k, double x);

// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

// L^2-normalised harmonic-oscillator eigenfunction
//   phi_n(x) = (sqrt(pi) 2^n n! l)^{-1/2} H_n(x/l) exp(-x^2/(2 l^2)),
// evaluated through a recurrence on phi_n itself so large n cannot overflow.
double oscillator_eigenfunction(int n, double x, double lengthscale);

struct QuadratureRule {
  enum class Domain { finite, semi_infinite };
  std::vector<double> nodes;
  std::vector<double> weights;
  Domain domain = Domain::finite;
  double a = 0.0; // finite-interval endpoints (unused for semi_infinite)
  double b = 0.0;

  template <class F> double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

// Gauss-Legendre rule mapped to [a,b]; exact for polynomials of degree 2n-1.
QuadratureRule finite_rule(int npoints, double a, double b);

// Gauss-Laguerre rule: sum w_i f(x_i) ~ integral_0^inf e^{-t} f(t) dt,
// exact for polynomial f of degree 2n-1.
QuadratureRule semi_infinite_rule(int npoints);

namespace detail {
// Eigen-decomposition of a symmetric tridiagonal matrix (implicit-shift QL),
// updating only the first row of the eigenvector matrix -- all that
// Golub-Welsch weight extraction needs.  diag/offdiag are overwritten;
// on return diag holds eigenvalues and first_row the matching first
// eigenvector components.
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                       std::vector<double>& first_row);

// Plain-Laguerre ladder L_0..L_n at fixed x, no degree ceiling.  Reserved for
// internal batch evaluation in regimes where the upward recurrence is benign
// (|L_n(x)| <= e^{x/2}); public callers go through laguerre().
void laguerre_ladder(int n, double x, std::vector<double>& out);
} // namespace detail

} // namespace groen
