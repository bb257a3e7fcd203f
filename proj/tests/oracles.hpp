// Independent recomputation routes used to pin expected values.  Everything
// here is deliberately naive (explicit sums, Simpson panels, proved
// recurrences) and shares no code with the library paths under test.
#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double binom(int top, int bottom) {
  // product form; handles the small arguments used here exactly
  if (bottom < 0 || bottom > top) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= bottom; ++i) r *= double(top - bottom + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// L_n^k(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!, k >= 0, small n only.
// cancellation reports the largest |term|: the sum itself is only good to
// about 1e-16 * cancellation, which the caller must fold into its tolerance.
inline double laguerre_sum(int n, int k, double x, double& cancellation) {
  if (k < 0) throw std::invalid_argument("laguerre_sum oracle needs k >= 0");
  double acc = 0.0, xp = 1.0;
  cancellation = 0.0;
  for (int i = 0; i <= n; ++i) {
    double term = binom(n + k, n - i) * xp / factorial(i);
    cancellation = std::max(cancellation, std::abs(term));
    acc += (i % 2 == 0) ? term : -term;
    xp *= x;
  }
  return acc;
}

inline double laguerre_sum(int n, int k, double x) {
  double scratch;
  return laguerre_sum(n, k, x, scratch);
}

// H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!)
inline double hermite_sum(int n, double x) {
  double acc = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    double term = factorial(n) / (factorial(m) * factorial(n - 2 * m)) *
                  std::pow(2.0 * x, n - 2 * m);
    acc += (m % 2 == 0) ? term : -term;
  }
  return acc;
}

// Direct normalised eigenfunction via H_n and an explicit factorial constant;
// only safe for small n, which is all an oracle needs.
inline double eigenfunction_direct(int n, double x, double ell) {
  double xi = x / ell;
  double norm = 1.0 / std::sqrt(std::sqrt(M_PI) * std::pow(2.0, n) * factorial(n) * ell);
  return norm * hermite_sum(n, xi) * std::exp(-0.5 * xi * xi);
}

template <class F>
auto simpson(F&& f, double a, double b, int panels) -> decltype(f(a)) {
  // composite Simpson with 2*panels+1 samples
  using R = decltype(f(a));
  const int n = 2 * panels;
  const double h = (b - a) / n;
  R acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * (h / 3.0);
}

// Coordinate-representation route to the displaced-parity matrix element:
// the kernel <x|Delta(q,p)|y> = 2 delta(x+y-2q) e^{ip(x-y)/hbar} collapses one
// integral, leaving
//   <n|Delta|m> = 2 int phi_n(x) e^{2ip(x-q)/hbar} phi_m(2q-x) dx.
inline std::complex<double> displacement_element_coordinate(int n, int m, double q,
                                                            double p, double beta,
                                                            double gamma, double hbar) {
  const double ell = std::sqrt(beta * hbar / gamma);
  const double spread = 10.0 * ell * std::sqrt(double(std::max(n, m)) + 1.0);
  const double lo = std::min(0.0, 2.0 * q) - spread;
  const double hi = std::max(0.0, 2.0 * q) + spread;
  auto f = [&](double x) {
    double phase = 2.0 * p * (x - q) / hbar;
    return eigenfunction_direct(n, x, ell) * eigenfunction_direct(m, 2.0 * q - x, ell) *
           std::complex<double>(std::cos(phase), std::sin(phase));
  };
  return 2.0 * simpson(f, lo, hi, 4000);
}

// Proved recurrence for J_n(s) = int_0^s e^{-t} L_n(2t) dt:
//   d/dt[e^{-t}(L_{n+1}(2t)-L_n(2t))] = -e^{-t}(L_{n+1}(2t)+L_n(2t))
// integrates to J_{n+1} = -J_n - e^{-s}(L_{n+1}(2s)-L_n(2s)), J_0 = 1-e^{-s}.
// The uniform-family eigenvalue is lambda_n = (2/s)(-1)^n J_n.
inline std::vector<double> uniform_eigenvalues_recurrence(double s, int n_max) {
  // plain Laguerre ladder at fixed argument 2s
  std::vector<double> L(std::size_t(n_max) + 2);
  L[0] = 1.0;
  if (n_max + 1 >= 1) L[1] = 1.0 - 2.0 * s;
  for (int j = 1; j <= n_max; ++j)
    L[j + 1] = ((2.0 * j + 1.0 - 2.0 * s) * L[j] - double(j) * L[j - 1]) / (j + 1.0);
  const double es = std::exp(-s);
  std::vector<double> lam(std::size_t(n_max) + 1);
  double J = 1.0 - es;
  for (int j = 0; j <= n_max; ++j) {
    lam[j] = (2.0 / s) * ((j % 2 == 0) ? J : -J);
    J = -J - es * (L[j + 1] - L[j]);
  }
  return lam;
}

// Gaussian pair overlap for centred densities:
// integral rho rho' = 1 / (pi sqrt((b^2+b'^2)(g^2+g'^2))).
inline double gaussian_pair_overlap(double b1, double g1, double b2, double g2) {
  return 1.0 / (M_PI * std::sqrt((b1 * b1 + b2 * b2) * (g1 * g1 + g2 * g2)));
}

} // namespace oracle
