#include "groen/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "groen/errors.hpp"

namespace groen {

namespace {

void check_degree(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": negative degree");
  if (n > kRecurrenceCeiling)
    throw std::invalid_argument(std::string(what) +
                                ": degree beyond the documented recurrence ceiling");
}

} // namespace

double laguerre(int n, int k, double x) {
  check_degree(n, "laguerre");
  if (k < -n) throw std::invalid_argument("laguerre: order k must satisfy k >= -n");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  check_degree(n, "hermite");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int j = 1; j < n; ++j) {
    double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double oscillator_eigenfunction(int n, double x, double lengthscale) {
  if (n < 0) throw std::invalid_argument("oscillator_eigenfunction: negative index");
  if (!(lengthscale > 0.0))
    throw std::invalid_argument("oscillator_eigenfunction: lengthscale must be positive");
  const double xi = x / lengthscale;
  // phi_0 and the normalised ladder keep every intermediate O(1).
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) / std::sqrt(lengthscale) * std::exp(-0.5 * xi * xi);
  for (int j = 0; j < n; ++j) {
    double next = xi * std::sqrt(2.0 / (j + 1.0)) * cur - std::sqrt(j / (j + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

void laguerre_ladder(int n, double x, std::vector<double>& out) {
  out.resize(std::size_t(n) + 1);
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 1.0 - x;
  for (int j = 1; j < n; ++j)
    out[j + 1] = ((2.0 * j + 1.0 - x) * out[j] - double(j) * out[j - 1]) / (j + 1.0);
}

void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  z.assign(n, 0.0);
  if (n == 0) return;
  z[0] = 1.0;
  e.resize(n, 0.0); // convergence sentinel at the end
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    for (;;) {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter++ == 60) throw numerical_error("tridiagonal eigensolve did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double si = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = si * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) { // deflate
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        si = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * si + 2.0 * c * b;
        p = si * r;
        d[i + 1] = g + p;
        g = c * r - b;
        double zi = z[i], zi1 = z[i + 1];
        z[i + 1] = si * zi + c * zi1;
        z[i] = c * zi - si * zi1;
      }
      if (i >= l) continue; // deflated mid-sweep; restart this l
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

} // namespace detail

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the recurrence,
// weights mu0 * (first eigenvector component)^2.
QuadratureRule rule_from_jacobi(std::vector<double> diag, std::vector<double> offdiag,
                                double mu0, bool allow_underflow) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> first_row;
  detail::tridiagonal_eigen(diag, offdiag, first_row);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = diag[order[i]];
    rule.weights[i] = mu0 * first_row[order[i]] * first_row[order[i]];
  }
  for (int i = 1; i < n; ++i)
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw numerical_error("quadrature nodes not strictly increasing");
  // Laguerre weights near the last node fall below the smallest subnormal
  // once npoints is a few hundred; a weight rounded to 0 just drops that node.
  for (double w : rule.weights) {
    if (w < 0.0) throw numerical_error("negative quadrature weight");
    if (w == 0.0 && !allow_underflow) throw numerical_error("non-positive quadrature weight");
  }
  return rule;
}

} // namespace

QuadratureRule finite_rule(int npoints, double a, double b) {
  if (npoints < 1) throw std::invalid_argument("finite_rule: need at least one point");
  if (!(a < b)) throw std::invalid_argument("finite_rule: degenerate interval");
  std::vector<double> diag(npoints, 0.0);
  std::vector<double> off(npoints > 1 ? npoints - 1 : 0);
  for (int i = 1; i < npoints; ++i) off[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
  QuadratureRule canon = rule_from_jacobi(std::move(diag), std::move(off), 2.0, false);
  // Legendre nodes come in +/- pairs; verify and then symmetrise exactly so
  // mapped rules are reproducible bit for bit.
  for (int i = 0; i < npoints / 2; ++i) {
    int j = npoints - 1 - i;
    if (std::abs(canon.nodes[i] + canon.nodes[j]) > 1e-13)
      throw numerical_error("Legendre node symmetry broken");
    double x = 0.5 * (canon.nodes[j] - canon.nodes[i]);
    canon.nodes[i] = -x;
    canon.nodes[j] = x;
    double w = 0.5 * (canon.weights[i] + canon.weights[j]);
    canon.weights[i] = canon.weights[j] = w;
  }
  if (npoints % 2 == 1) canon.nodes[npoints / 2] = 0.0;
  QuadratureRule rule;
  rule.domain = QuadratureRule::Domain::finite;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < npoints; ++i) {
    rule.nodes[i] = mid + half * canon.nodes[i];
    rule.weights[i] = half * canon.weights[i];
  }
  return rule;
}

QuadratureRule semi_infinite_rule(int npoints) {
  if (npoints < 1) throw std::invalid_argument("semi_infinite_rule: need at least one point");
  std::vector<double> diag(npoints);
  std::vector<double> off(npoints > 1 ? npoints - 1 : 0);
  for (int i = 0; i < npoints; ++i) diag[i] = 2.0 * i + 1.0;
  for (int i = 1; i < npoints; ++i) off[i - 1] = double(i);
  QuadratureRule rule = rule_from_jacobi(std::move(diag), std::move(off), 1.0, true);
  rule.domain = QuadratureRule::Domain::semi_infinite;
  return rule;
}

} // namespace groen
